"""The quotient of the integral group ring of a Brauer group where measures live.

Z[Br(k)] is divided by the relations [k] + [A ⊗ A'] = [A] + [A'] for algebras
of coprime index.  Every class then rewrites into its p-primary parts:

    [c]  ->  sum over primes p | ord(c) of [c_p]  -  (nu - 1) [identity]

with nu the number of primes dividing ord(c).  Elements are kept in the normal
form spanned by the identity and the classes of prime-power order; equality in
the quotient is literal equality of normal forms.  The verification suites
check this against raw breadth-first rewriting on finite models.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

from .brauer import (
    BrauerClass,
    BrauerGroup,
    GroupMismatchError,
    class_primes,
)

Term = Tuple[BrauerClass, int]


def _expand(c: BrauerClass) -> list[Term]:
    """Rewrite a single class into prime-power-order basis classes."""
    primes = class_primes(c)
    if not primes:
        return [(c, 1)]
    out: list[Term] = [(c.p_part(p), 1) for p in primes]
    if len(primes) > 1:
        out.append((c.group.identity(), 1 - len(primes)))
    return out


@dataclass(frozen=True)
class RingElement:
    """An element of the quotient ring, stored in normal form."""

    group: BrauerGroup
    terms: tuple[Term, ...]

    def __post_init__(self) -> None:
        acc: dict[BrauerClass, int] = {}
        for c, k in self.terms:
            if c.group != self.group:
                raise GroupMismatchError("class outside the declared group model")
            if not isinstance(k, int):
                raise ValueError(f"coefficients must be integers, got {k!r}")
            for b, j in _expand(c):
                acc[b] = acc.get(b, 0) + k * j
        object.__setattr__(
            self,
            "terms",
            tuple(
                sorted(
                    ((c, k) for c, k in acc.items() if k),
                    key=lambda t: t[0].sort_key(),
                )
            ),
        )

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.group, self.terms + other.terms)

    def __neg__(self) -> "RingElement":
        return RingElement(self.group, tuple((c, -k) for c, k in self.terms))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        raw = [
            (c1 + c2, k1 * k2)
            for c1, k1 in self.terms
            for c2, k2 in other.terms
        ]
        return RingElement(self.group, tuple(raw))

    def scaled(self, k: int) -> "RingElement":
        return RingElement(self.group, tuple((c, k * j) for c, j in self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "RingElement") -> None:
        if self.group != other.group:
            raise GroupMismatchError("mixed group models")

    def to_payload(self) -> dict:
        return {
            "terms": [
                {"class": c.to_payload(), "coeff": k} for c, k in self.terms
            ]
        }


def zero(group: BrauerGroup) -> RingElement:
    return RingElement(group, ())


def from_class(c: BrauerClass) -> RingElement:
    """The basis element [c]."""
    return RingElement(c.group, ((c, 1),))


def from_terms(group: BrauerGroup, terms: Iterable[Term]) -> RingElement:
    return RingElement(group, tuple(terms))


def normalize(x: RingElement) -> RingElement:
    """Identity on this representation; kept as the public projection map."""
    return RingElement(x.group, x.terms)


def add(x: RingElement, y: RingElement) -> RingElement:
    return x + y


def mul(x: RingElement, y: RingElement) -> RingElement:
    return x * y


def augmentation(x: RingElement) -> int:
    """Sum of coefficients; rewriting preserves it, so it is well defined."""
    return sum(k for _, k in x.terms)


def equal(x: RingElement, y: RingElement) -> bool:
    """Equality in the quotient ring: identical normal forms."""
    if x.group != y.group:
        raise GroupMismatchError("mixed group models")
    return x.terms == y.terms


def from_motive_sum(ms) -> RingElement:
    """Image of a direct sum of twisted Tate motives: sum of its classes."""
    return RingElement(ms.group, tuple((c, 1) for c in ms.classes))
