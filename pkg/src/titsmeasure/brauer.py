"""Finite models of Brauer groups and central simple algebra bookkeeping.

Two interchangeable backends:

- ``AbstractGroup``: a finite abelian group ``Z/n_1 x ... x Z/n_k`` whose
  elements stand for Brauer classes.  Everything is enumerable, which is what
  the verification suites need.
- ``RATIONALS`` / ``RationalClass``: Br(Q) presented by local invariants, a
  finitely supported map from places of Q to exact residues in [0,1) summing
  to 0 mod 1.  Constructed by the Hilbert-symbol layer in ``rationals``.

Both class kinds support addition, negation, order, p-primary parts and a
canonical sort key, which is all the rest of the library relies on.

Index policy: by default the index of a class is its order (period), which is
exact over number fields; abstract models may carry an oracle table asserting
larger indexes (used to model unlinked quaternion pairs over other fields).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union


def prime_factors(n: int) -> dict[int, int]:
    """Factor a positive integer by trial division: {prime: exponent}."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# Places of Q: the string "real" or a prime number.
Place = Union[str, int]

REAL_PLACE: Place = "real"


def check_place(v: Place) -> Place:
    if v == REAL_PLACE:
        return v
    if isinstance(v, int) and is_prime(v):
        return v
    raise ValueError(f"not a place of Q: {v!r} (use 'real' or a prime)")


def place_sort_key(v: Place) -> tuple[int, int]:
    return (0, 0) if v == REAL_PLACE else (1, v)


class GroupMismatchError(ValueError):
    """Operands live in different Brauer-group models."""


def _same_group(a: "BrauerClass", b: "BrauerClass") -> None:
    if a.group != b.group:
        raise GroupMismatchError(f"mixed group models: {a.group} vs {b.group}")


@dataclass(frozen=True)
class AbstractGroup:
    """Finite abelian group ⊕_i Z/orders[i] serving as a Brauer-group model.

    ``index_oracle`` optionally maps element coords to an asserted index;
    entries must be multiples of the class order with the same prime support.
    """

    orders: tuple[int, ...]
    index_oracle: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self) -> None:
        if not all(isinstance(n, int) and n >= 1 for n in self.orders):
            raise ValueError(f"cyclic orders must be positive integers: {self.orders}")
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        canon = []
        for coords, idx in self.index_oracle:
            cls = self.element(coords)
            per = cls.order()
            if idx % per != 0 or set(prime_factors(idx)) != set(prime_factors(per)):
                raise ValueError(
                    f"index oracle entry {idx} for {coords} incompatible with period {per}"
                )
            canon.append((cls.coords, int(idx)))
        object.__setattr__(self, "index_oracle", tuple(sorted(canon)))

    @property
    def kind(self) -> str:
        return "abstract"

    def identity(self) -> "AbstractClass":
        return AbstractClass(self, (0,) * len(self.orders))

    def element(self, coords: Sequence[int]) -> "AbstractClass":
        if len(coords) != len(self.orders):
            raise ValueError(
                f"expected {len(self.orders)} coordinates, got {len(coords)}"
            )
        return AbstractClass(
            self, tuple(int(c) % n for c, n in zip(coords, self.orders))
        )

    def elements(self) -> Iterator["AbstractClass"]:
        for coords in itertools.product(*(range(n) for n in self.orders)):
            yield AbstractClass(self, coords)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    def primes(self) -> tuple[int, ...]:
        return tuple(sorted(prime_factors(self.exponent)))

    def index_of(self, cls: "AbstractClass") -> int:
        if cls.group != self:
            raise GroupMismatchError("class does not belong to this group")
        for coords, idx in self.index_oracle:
            if coords == cls.coords:
                return idx
        return cls.order()

    def to_payload(self) -> dict:
        payload: dict = {"kind": "abstract", "orders": list(self.orders)}
        if self.index_oracle:
            payload["index_oracle"] = [
                {"coords": list(coords), "index": idx}
                for coords, idx in self.index_oracle
            ]
        return payload


@dataclass(frozen=True)
class _RationalGroup:
    """Br(Q) backend marker; classes carry their own invariant data."""

    @property
    def kind(self) -> str:
        return "rational"

    def identity(self) -> "RationalClass":
        return RationalClass(())

    def index_of(self, cls: "RationalClass") -> int:
        # Over a number field period equals index.
        if cls.group != self:
            raise GroupMismatchError("class does not belong to this group")
        return cls.order()

    def to_payload(self) -> dict:
        return {"kind": "rational"}


RATIONALS = _RationalGroup()

BrauerGroup = Union[AbstractGroup, _RationalGroup]


def _crt_p_component(c: int, n: int, p: int) -> int:
    """The p-primary component of c in Z/n: ≡ c mod p^a, ≡ 0 mod n/p^a."""
    a = 0
    m = n
    while m % p == 0:
        m //= p
        a += 1
    if a == 0:
        return 0
    pa = p**a
    return (c * m * pow(m, -1, pa)) % n


@dataclass(frozen=True)
class AbstractClass:
    group: AbstractGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != len(self.group.orders):
            raise ValueError("coordinate arity does not match the group")
        object.__setattr__(
            self,
            "coords",
            tuple(int(c) % n for c, n in zip(self.coords, self.group.orders)),
        )

    def __add__(self, other: "AbstractClass") -> "AbstractClass":
        _same_group(self, other)
        return AbstractClass(
            self.group,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    def __neg__(self) -> "AbstractClass":
        return AbstractClass(self.group, tuple(-c for c in self.coords))

    def __sub__(self, other: "AbstractClass") -> "AbstractClass":
        return self + (-other)

    def __mul__(self, k: int) -> "AbstractClass":
        return AbstractClass(self.group, tuple(k * c for c in self.coords))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return all(c == 0 for c in self.coords)

    def order(self) -> int:
        return math.lcm(
            *(n // math.gcd(n, c) for c, n in zip(self.coords, self.group.orders)),
            1,
        )

    def p_part(self, p: int) -> "AbstractClass":
        if not is_prime(p):
            raise ValueError(f"not a prime: {p}")
        return AbstractClass(
            self.group,
            tuple(_crt_p_component(c, n, p) for c, n in zip(self.coords, self.group.orders)),
        )

    def sort_key(self):
        return self.coords

    def to_payload(self) -> dict:
        return {"coords": list(self.coords)}


def _validate_invariants(
    invariants: Iterable[tuple[Place, Fraction]],
) -> tuple[tuple[Place, Fraction], ...]:
    seen: dict[Place, Fraction] = {}
    for v, inv in invariants:
        v = check_place(v)
        inv = Fraction(inv) % 1
        if v in seen:
            raise ValueError(f"duplicate place {v!r}")
        if v == REAL_PLACE and inv not in (Fraction(0), Fraction(1, 2)):
            raise ValueError(f"real invariant must be 0 or 1/2, got {inv}")
        if inv:
            seen[v] = inv
    total = sum(seen.values(), Fraction(0))
    if total.denominator != 1:
        raise ValueError(f"local invariants must sum to 0 mod 1, got {total}")
    return tuple(sorted(seen.items(), key=lambda kv: place_sort_key(kv[0])))


@dataclass(frozen=True)
class RationalClass:
    """A Brauer class of Q given by its nonzero local invariants."""

    invariants: tuple[tuple[Place, Fraction], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "invariants", _validate_invariants(self.invariants))

    @property
    def group(self) -> _RationalGroup:
        return RATIONALS

    def invariant_at(self, v: Place) -> Fraction:
        for place, inv in self.invariants:
            if place == v:
                return inv
        return Fraction(0)

    def ramified_places(self) -> tuple[Place, ...]:
        return tuple(v for v, _ in self.invariants)

    def __add__(self, other: "RationalClass") -> "RationalClass":
        _same_group(self, other)
        acc: dict[Place, Fraction] = dict(self.invariants)
        for v, inv in other.invariants:
            acc[v] = (acc.get(v, Fraction(0)) + inv) % 1
        return RationalClass(tuple(acc.items()))

    def __neg__(self) -> "RationalClass":
        return RationalClass(tuple((v, (-inv) % 1) for v, inv in self.invariants))

    def __sub__(self, other: "RationalClass") -> "RationalClass":
        return self + (-other)

    def __mul__(self, k: int) -> "RationalClass":
        return RationalClass(tuple((v, (k * inv) % 1) for v, inv in self.invariants))

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not self.invariants

    def order(self) -> int:
        return math.lcm(*(inv.denominator for _, inv in self.invariants), 1)

    def p_part(self, p: int) -> "RationalClass":
        if not is_prime(p):
            raise ValueError(f"not a prime: {p}")
        parts = []
        for v, inv in self.invariants:
            den = inv.denominator
            a = 0
            m = den
            while m % p == 0:
                m //= p
                a += 1
            if a == 0:
                continue
            pa = p**a
            parts.append((v, Fraction(inv.numerator * m * pow(m, -1, pa), den) % 1))
        return RationalClass(tuple(parts))

    def sort_key(self):
        return tuple(
            (*place_sort_key(v), inv.numerator, inv.denominator)
            for v, inv in self.invariants
        )

    def to_payload(self) -> dict:
        return {
            "invariants": [
                {"place": v, "inv": str(inv)} for v, inv in self.invariants
            ]
        }


BrauerClass = Union[AbstractClass, RationalClass]


def p_part(c: BrauerClass, p: int) -> BrauerClass:
    """The p-primary component of a Brauer class (identity if p ∤ order)."""
    return c.p_part(p)


def order(c: BrauerClass) -> int:
    """Order of the class in the group model (the period of the algebra)."""
    return c.order()


def class_primes(c: BrauerClass) -> tuple[int, ...]:
    return tuple(sorted(prime_factors(c.order())))


def generated_subgroup(
    cs: Sequence[BrauerClass], *, group: BrauerGroup | None = None
) -> frozenset[BrauerClass]:
    """Subgroup generated by the given classes, as a frozen set of classes.

    The group model is inferred from the classes; for an empty sequence it
    must be passed explicitly.
    """
    if cs:
        group = cs[0].group
        for c in cs[1:]:
            if c.group != group:
                raise GroupMismatchError("mixed group models")
    elif group is None:
        raise ValueError("empty generating set needs an explicit group")
    identity = group.identity()
    known = {identity}
    frontier = [identity]
    gens = {c for c in cs} | {-c for c in cs}
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y not in known:
                    known.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(known)


@dataclass(frozen=True)
class CSA:
    """A central simple algebra presented by its Brauer class and degree."""

    brauer_class: BrauerClass
    degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 1:
            raise ValueError(f"degree must be a positive integer, got {self.degree}")
        per = self.brauer_class.order()
        if self.degree % per != 0:
            raise ValueError(
                f"period {per} does not divide degree {self.degree}"
            )
        if self.degree % self.index() != 0:
            raise ValueError(
                f"index {self.index()} does not divide degree {self.degree}"
            )

    @property
    def group(self) -> BrauerGroup:
        return self.brauer_class.group

    def period(self) -> int:
        return self.brauer_class.order()

    def index(self) -> int:
        return self.group.index_of(self.brauer_class)

    def to_payload(self) -> dict:
        return {"degree": self.degree, "class": self.brauer_class.to_payload()}


def coprime_indexes(a: CSA, b: CSA) -> bool:
    """True when ind(A) and ind(B) are coprime (the splitting hypothesis)."""
    if a.group != b.group:
        raise GroupMismatchError("mixed group models")
    return math.gcd(a.index(), b.index()) == 1
