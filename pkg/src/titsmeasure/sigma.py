"""Binomial copy-counting sums for products of quadrics, in exact arithmetic.

The sums count copies of a Brauer class among the 2^m subset products of m
even Clifford classes, stratified by how many factors (l) lie outside a fixed
linearly independent set, with separate shapes for even and odd form
dimension n:

    sigma1_*(m, n, l)  lowest  possible copy count on one side,
    sigma2_*(m, n, l)  highest possible copy count on the other side.

``sigma1`` splits as ``sigma11 + sigma12``; the split pieces satisfy clean
one-step recurrences in m which drive the induction for the product-of-quadrics
comparison theorem.  All internal arithmetic is over Fraction because the
recurrences are exercised at grid edges where (n-2) appears with a negative
exponent against a nonzero binomial coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable

KINDS = (
    "1even",
    "1odd",
    "2even",
    "2odd",
    "11even",
    "11odd",
    "12even",
    "12odd",
)


def _canon_kind(kind: str) -> str:
    k = kind.strip().lower().replace("sigma", "").replace("_", "").replace("-", "")
    if k not in KINDS:
        raise ValueError(f"unknown sigma kind {kind!r}; expected one of {KINDS}")
    return k


def _check_domain(m: int, n: int, l: int) -> None:
    if not (isinstance(m, int) and isinstance(n, int) and isinstance(l, int)):
        raise ValueError("m, n, l must be integers")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n < 3:
        raise ValueError(f"form dimension n must be >= 3, got {n}")
    if l < 0:
        raise ValueError(f"l must be >= 0, got {l}")


def _pow(base: int, e: int) -> Fraction:
    # Fraction handles the negative exponents that occur at grid edges.
    return Fraction(base) ** e


def sigma_fraction(kind: str, m: int, n: int, l: int) -> Fraction:
    """The sum as an exact rational, defined for every l >= 0."""
    kind = _canon_kind(kind)
    _check_domain(m, n, l)
    q = n - 2
    total = Fraction(0)
    for r in range(l // 2 + 1):
        even_part = comb(l, 2 * r)
        odd_part = comb(l, 2 * r + 1)
        if kind == "11even":
            total += even_part * 2 ** (2 * r + 1) * _pow(q, m - (2 * r + 1))
        elif kind == "11odd":
            total += even_part * _pow(q, m - (2 * r + 1))
        elif kind == "12even":
            total += odd_part * Fraction(2) ** (m - l + (2 * r + 1)) * _pow(
                q, l - (2 * r + 1)
            )
        elif kind == "12odd":
            total += odd_part * _pow(q, l - (2 * r + 1))
        elif kind == "1even":
            total += even_part * 2 ** (2 * r + 1) * _pow(q, m - (2 * r + 1))
            total += odd_part * Fraction(2) ** (m - l + (2 * r + 1)) * _pow(
                q, l - (2 * r + 1)
            )
        elif kind == "1odd":
            total += even_part * _pow(q, m - (2 * r + 1))
            total += odd_part * _pow(q, l - (2 * r + 1))
        elif kind == "2even":
            total += (even_part * 2 ** (2 * r + 2) + odd_part * 2 ** (2 * r + 1)) * _pow(
                q, m - (2 * r + 2)
            )
        elif kind == "2odd":
            total += (even_part + odd_part) * _pow(q, m - (2 * r + 2))
    return total


def sigma(kind: str, m: int, n: int, l: int) -> int:
    """The sum as an integer; raises when the exact value is not integral."""
    value = sigma_fraction(kind, m, n, l)
    if value.denominator != 1:
        raise ValueError(
            f"sigma {kind}({m},{n},{l}) = {value} is not an integer on this input"
        )
    return value.numerator


# The split pieces each scale by a fixed factor when m drops by one.  The
# factor is a Fraction in n so it can be compared exactly.
RECURRENCE_FACTORS = {
    "11even": lambda n: Fraction(n - 2),
    "11odd": lambda n: Fraction(n - 2),
    "12even": lambda n: Fraction(2),
    "12odd": lambda n: Fraction(1),
    "2even": lambda n: Fraction(n - 2),
    "2odd": lambda n: Fraction(n - 2),
}


def recurrence_violations(
    n_values: Iterable[int],
    m_values: Iterable[int],
    kinds: Iterable[str] | None = None,
) -> list[dict]:
    """Check sigma(m-1) * factor == sigma(m) for the split kinds on a grid.

    Returns one record per failure; an empty list means every relation holds
    exactly.  l ranges over 0..m-1 for each m.
    """
    if kinds is None:
        table = RECURRENCE_FACTORS
    else:
        table = {}
        for kind in kinds:
            k = _canon_kind(kind)
            if k not in RECURRENCE_FACTORS:
                raise ValueError(f"no one-step recurrence for sigma kind {kind!r}")
            table[k] = RECURRENCE_FACTORS[k]
    bad: list[dict] = []
    for n in n_values:
        for m in m_values:
            if m < 2:
                continue
            for l in range(m):
                for kind, factor in table.items():
                    lhs = sigma_fraction(kind, m - 1, n, l)
                    rhs = sigma_fraction(kind, m, n, l) / factor(n)
                    if lhs != rhs:
                        bad.append(
                            {
                                "kind": kind,
                                "m": m,
                                "n": n,
                                "l": l,
                                "lhs": str(lhs),
                                "rhs": str(rhs),
                            }
                        )
    return bad


def extra_condition(m: int, n: int) -> bool:
    """Whether sigma1 > sigma2 for every 2 <= l <= m-3 (parity of n picks the
    variant).  Only meaningful for m >= 6; smaller m raises."""
    failures = extra_condition_failures(m, n)
    return not failures


def extra_condition_failures(m: int, n: int) -> list[int]:
    """The l values in 2..m-3 where the strict inequality fails."""
    if m < 6:
        raise ValueError(
            f"the copy-count condition only gates the m >= 6 case, got m={m}"
        )
    if n < 3:
        raise ValueError(f"form dimension n must be >= 3, got {n}")
    suffix = "even" if n % 2 == 0 else "odd"
    out = []
    for l in range(2, m - 2):
        if not sigma_fraction("1" + suffix, m, n, l) > sigma_fraction(
            "2" + suffix, m, n, l
        ):
            out.append(l)
    return out
