"""Multisets of Brauer classes standing for direct sums of twisted Tate motives.

A ``MotiveSum`` records, with multiplicity, the Brauer classes of the simple
summands.  Two sums are isomorphic exactly when they have the same cardinality
and, prime by prime, the same multiset of p-primary parts; the Tate twists
themselves carry no information here, so they are not stored.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .brauer import BrauerClass, BrauerGroup, GroupMismatchError, prime_factors


@dataclass(frozen=True)
class MotiveSum:
    """A finite multiset of Brauer classes over a single group model."""

    group: BrauerGroup
    classes: tuple[BrauerClass, ...]

    def __post_init__(self) -> None:
        for c in self.classes:
            if c.group != self.group:
                raise GroupMismatchError("class outside the declared group model")
        object.__setattr__(
            self,
            "classes",
            tuple(sorted(self.classes, key=lambda c: c.sort_key())),
        )

    @classmethod
    def of(cls, group: BrauerGroup, classes: Iterable[BrauerClass]) -> "MotiveSum":
        return cls(group, tuple(classes))

    def __len__(self) -> int:
        return len(self.classes)

    def multiplicities(self) -> Counter:
        return Counter(self.classes)

    def primes(self) -> tuple[int, ...]:
        ps: set[int] = set()
        for c in self.classes:
            ps.update(prime_factors(c.order()))
        return tuple(sorted(ps))

    def p_signature(self, p: int) -> Counter:
        """Multiset of p-primary parts of the summands."""
        return Counter(c.p_part(p) for c in self.classes)

    def signature(self) -> tuple:
        """Hashable invariant that decides isomorphism.

        Cardinality plus, for each prime dividing some summand's order, the
        sorted multiset of p-parts.
        """
        parts = []
        for p in self.primes():
            sig = tuple(
                sorted(
                    self.p_signature(p).items(),
                    key=lambda kv: kv[0].sort_key(),
                )
            )
            parts.append((p, sig))
        return (len(self.classes), tuple(parts))

    def to_payload(self) -> dict:
        counts = self.multiplicities()
        return {
            "classes": [
                {**c.to_payload(), "mult": counts[c]}
                for c in sorted(counts, key=lambda c: c.sort_key())
            ]
        }


def _common_group(x: MotiveSum, y: MotiveSum) -> BrauerGroup:
    if x.group != y.group:
        raise GroupMismatchError("mixed group models")
    return x.group


def direct_sum(x: MotiveSum, y: MotiveSum) -> MotiveSum:
    """Multiset union; models the direct sum of motives."""
    return MotiveSum(_common_group(x, y), x.classes + y.classes)


def tensor(x: MotiveSum, y: MotiveSum) -> MotiveSum:
    """Pairwise class sums with multiplicity products; models the product."""
    group = _common_group(x, y)
    return MotiveSum(group, tuple(a + b for a in x.classes for b in y.classes))


def is_isomorphic(x: MotiveSum, y: MotiveSum) -> bool:
    """Same cardinality and, for every prime, equal multisets of p-parts."""
    if _common_group(x, y) and len(x) != len(y):
        return False
    for p in set(x.primes()) | set(y.primes()):
        if x.p_signature(p) != y.p_signature(p):
            return False
    return True


def cancel_common(x: MotiveSum, y: MotiveSum, n: MotiveSum) -> bool:
    """Decide x ≅ y and check it agrees with (x ⊕ n) ≅ (y ⊕ n).

    Cancelling a common direct summand never changes the answer; this asserts
    that fact on the given triple as a guard and returns the cancelled verdict.
    """
    before = is_isomorphic(direct_sum(x, n), direct_sum(y, n))
    after = is_isomorphic(x, y)
    if before != after:
        raise AssertionError(
            "direct-sum cancellation failed on this triple; "
            "the isomorphism invariant is inconsistent"
        )
    return after
