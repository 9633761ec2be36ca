"""Descriptors for twisted flag varieties, their measures, and deductions.

Four families plus finite products.  Each descriptor knows the multiset of
Brauer classes of its distinguished algebras; from that we get

- the class-sum measure into the group-ring quotient (``tits_measure``), and
- the integer rank measure (``rank_measure``), its augmentation.

``deduce`` turns an asserted Grothendieck-class equality into the conclusions
the classification literature licenses per family, checking the computed
measures first so a false assertion is flagged instead of silently used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence, Union

from .brauer import (
    CSA,
    BrauerClass,
    BrauerGroup,
    GroupMismatchError,
    generated_subgroup,
)
from .measure_ring import RingElement, augmentation, from_motive_sum
from .motives import MotiveSum, is_isomorphic, tensor
from .quadforms import FormShadow, QuadraticForm, even_clifford_class, signed_discriminant
from .sigma import extra_condition_failures


@lru_cache(maxsize=None)
def box_weight_counts(d: int, e: int) -> tuple[int, ...]:
    """Number of Young diagrams in a d x e box by weight (Gaussian binomial)."""
    if d == 0 or e == 0:
        return (1,)
    smaller = box_weight_counts(d - 1, e)
    shifted = box_weight_counts(d, e - 1)
    out = [0] * (d * e + 1)
    for w, c in enumerate(smaller):
        out[w] += c
    for w, c in enumerate(shifted):
        out[w + d] += c
    return tuple(out)


@dataclass(frozen=True)
class SeveriBrauer:
    alg: CSA

    family = "severi-brauer"

    @property
    def group(self) -> BrauerGroup:
        return self.alg.group

    @property
    def dim(self) -> int:
        return self.alg.degree - 1

    def jt_classes(self) -> MotiveSum:
        a = self.alg.brauer_class
        return MotiveSum.of(self.group, (i * a for i in range(self.alg.degree)))


@dataclass(frozen=True)
class Grassmannian:
    d: int
    alg: CSA

    family = "grassmannian"

    def __post_init__(self) -> None:
        if not 1 <= self.d < self.alg.degree:
            raise ValueError(
                f"Grassmannian parameter must satisfy 1 <= d < deg, "
                f"got d={self.d}, deg={self.alg.degree}"
            )

    @property
    def group(self) -> BrauerGroup:
        return self.alg.group

    @property
    def dim(self) -> int:
        return self.d * (self.alg.degree - self.d)

    def jt_classes(self) -> MotiveSum:
        a = self.alg.brauer_class
        counts = box_weight_counts(self.d, self.alg.degree - self.d)
        classes = []
        for w, c in enumerate(counts):
            classes.extend([w * a] * c)
        return MotiveSum.of(self.group, classes)


@dataclass(frozen=True)
class Quadric:
    form: Union[QuadraticForm, FormShadow]

    family = "quadric"

    def __post_init__(self) -> None:
        if isinstance(self.form, QuadraticForm):
            if self.form.dim < 3:
                raise ValueError("quadric needs form dimension >= 3")
            if signed_discriminant(self.form) != 1:
                raise ValueError(
                    "quadric family requires trivial signed discriminant"
                )
        elif not isinstance(self.form, FormShadow):
            raise ValueError("quadric takes a QuadraticForm or a FormShadow")

    @property
    def form_dim(self) -> int:
        return self.form.dim

    @property
    def clifford_class(self) -> BrauerClass:
        if isinstance(self.form, QuadraticForm):
            return even_clifford_class(self.form)
        return self.form.clifford_class

    @property
    def i3_zero(self) -> bool:
        return isinstance(self.form, FormShadow) and self.form.i3_zero

    @property
    def group(self) -> BrauerGroup:
        return self.clifford_class.group

    @property
    def dim(self) -> int:
        return self.form_dim - 2

    def jt_classes(self) -> MotiveSum:
        n = self.form_dim
        c = self.clifford_class
        zero = self.group.identity()
        copies = 2 if n % 2 == 0 else 1
        return MotiveSum.of(self.group, [zero] * (n - 2) + [c] * copies)


@dataclass(frozen=True)
class Involution:
    """Variety of isotropic right ideals of an algebra with involution.

    The stored component classes must satisfy the degree-dependent relations:
    for deg = 2 mod 4 the classes cplus, cminus = 3 cplus are 4-torsion with
    2 cplus = [A]; for deg = 0 mod 4 both are 2-torsion with sum [A].
    """

    deg: int
    alg_class: BrauerClass
    cplus: BrauerClass
    cminus: BrauerClass

    family = "involution"

    def __post_init__(self) -> None:
        if self.deg % 2 or self.deg < 6:
            raise ValueError(f"involution degree must be even and >= 6, got {self.deg}")
        g = self.alg_class.group
        if self.cplus.group != g or self.cminus.group != g:
            raise GroupMismatchError("component classes outside the algebra's group")
        if self.deg % 4 == 2:
            ok = (
                2 * self.cplus == self.alg_class
                and self.cminus == 3 * self.cplus
                and (4 * self.cplus).is_identity()
            )
        else:
            ok = (
                (2 * self.cplus).is_identity()
                and (2 * self.cminus).is_identity()
                and self.cplus + self.cminus == self.alg_class
            )
        if not ok:
            raise ValueError(
                "component classes violate the degree mod 4 relations"
            )

    @property
    def group(self) -> BrauerGroup:
        return self.alg_class.group

    @property
    def dim(self) -> int:
        return self.deg

    def jt_classes(self) -> MotiveSum:
        zero = self.group.identity()
        half = (self.deg - 2) // 2
        return MotiveSum.of(
            self.group,
            [zero] * half + [self.alg_class] * half + [self.cplus, self.cminus],
        )


@dataclass(frozen=True)
class Product:
    children: tuple["VarietyDescriptor", ...]

    family = "product"

    def __post_init__(self) -> None:
        if not self.children:
            raise ValueError("product needs at least one factor")
        g = self.children[0].group
        for child in self.children[1:]:
            if child.group != g:
                raise GroupMismatchError("product factors use mixed group models")

    @property
    def group(self) -> BrauerGroup:
        return self.children[0].group

    @property
    def dim(self) -> int:
        return sum(child.dim for child in self.children)

    def jt_classes(self) -> MotiveSum:
        out = self.children[0].jt_classes()
        for child in self.children[1:]:
            out = tensor(out, child.jt_classes())
        return out


VarietyDescriptor = Union[SeveriBrauer, Grassmannian, Quadric, Involution, Product]


@dataclass(frozen=True)
class MeasureReport:
    jt: RingElement
    jt_effective: MotiveSum
    rho: int
    dim: int

    def to_payload(self) -> dict:
        return {
            "jt": self.jt.to_payload(),
            "jt_effective": self.jt_effective.to_payload(),
            "rho": self.rho,
            "dim": self.dim,
        }


def tits_measure(v: VarietyDescriptor) -> MeasureReport:
    ms = v.jt_classes()
    jt = from_motive_sum(ms)
    rho = len(ms)
    if augmentation(jt) != rho:
        raise AssertionError("augmentation drifted from the class count")
    return MeasureReport(jt=jt, jt_effective=ms, rho=rho, dim=v.dim)


def rank_measure(v: VarietyDescriptor) -> int:
    return tits_measure(v).rho


@dataclass(frozen=True)
class ComparisonVerdict:
    measures_equal: bool
    rho_equal: bool
    dims_equal: bool
    subgroups_equal: bool

    def to_payload(self) -> dict:
        return {
            "measures_equal": self.measures_equal,
            "rho_equal": self.rho_equal,
            "dims_equal": self.dims_equal,
            "subgroups_equal": self.subgroups_equal,
        }


def compare(x: VarietyDescriptor, y: VarietyDescriptor) -> ComparisonVerdict:
    if x.group != y.group:
        raise GroupMismatchError("mixed group models")
    mx, my = tits_measure(x), tits_measure(y)
    sub_x = generated_subgroup(mx.jt_effective.classes, group=x.group)
    sub_y = generated_subgroup(my.jt_effective.classes, group=y.group)
    return ComparisonVerdict(
        measures_equal=is_isomorphic(mx.jt_effective, my.jt_effective),
        rho_equal=mx.rho == my.rho,
        dims_equal=mx.dim == my.dim,
        subgroups_equal=sub_x == sub_y,
    )


@dataclass(frozen=True)
class Conclusion:
    statement: str
    rule: str

    def to_payload(self) -> dict:
        return {"statement": self.statement, "rule": self.rule}


@dataclass(frozen=True)
class DeductionReport:
    family: str
    assumed: bool
    refuted: bool
    verdict: ComparisonVerdict
    conclusions: tuple[Conclusion, ...] = ()
    notes: tuple[str, ...] = ()

    def to_payload(self) -> dict:
        return {
            "family": self.family,
            "assumed": self.assumed,
            "refuted": self.refuted,
            "verdict": self.verdict.to_payload(),
            "conclusions": [c.to_payload() for c in self.conclusions],
            "notes": list(self.notes),
        }


def _family_key(x: VarietyDescriptor, y: VarietyDescriptor) -> str:
    if x.family != y.family:
        raise ValueError("deduction rules do not cover this family combination")
    if x.family != "product":
        return x.family
    for side in (x, y):
        kinds = {child.family for child in side.children}
        if len(kinds) != 1:
            raise ValueError("deduction rules do not cover mixed products")
    kind = x.children[0].family
    if kind != y.children[0].family:
        raise ValueError("deduction rules do not cover this family combination")
    if kind == "severi-brauer":
        if any(c.alg.degree != 2 for c in x.children + y.children):
            raise ValueError("product deduction for this family needs degree-2 factors")
        if len(x.children) != 2 or len(y.children) != 2:
            raise ValueError("conic-product deduction needs exactly two factors per side")
        return "conic-product"
    if kind == "quadric":
        dims = {c.form_dim for c in x.children} | {c.form_dim for c in y.children}
        if len(dims) != 1:
            raise ValueError("product-of-quadrics deduction needs one common form dimension")
        if dims.pop() < 5:
            raise ValueError("product-of-quadrics deduction needs form dimension >= 5")
        return "quadric-product"
    raise ValueError("deduction rules do not cover this family combination")


def deduce(
    x: VarietyDescriptor,
    y: VarietyDescriptor,
    assuming_equal: bool,
    *,
    i3_zero: bool = False,
) -> DeductionReport:
    """Conclusions licensed by an asserted Grothendieck-class equality.

    ``i3_zero`` asserts the ambient field satisfies I^3 = 0 (a modeling flag,
    never computed); quadric shadows may also carry it per form.
    """
    family = _family_key(x, y)
    verdict = compare(x, y)
    base = dict(family=family, assumed=assuming_equal, verdict=verdict)
    if not assuming_equal:
        return DeductionReport(
            refuted=False,
            notes=("class equality not asserted; nothing to deduce",),
            **base,
        )
    if not verdict.measures_equal:
        return DeductionReport(
            refuted=True,
            notes=(
                "computed measures differ, so the asserted class equality "
                "cannot hold",
            ),
            **base,
        )

    conclusions: list[Conclusion] = []
    notes: list[str] = []
    subgroup_rule = "measure equality preserves the generated Brauer subgroup"

    if family == "severi-brauer":
        n = x.alg.degree
        conclusions.append(
            Conclusion(f"degrees agree: deg = {n}", "rank measure equals the degree")
        )
        conclusions.append(
            Conclusion("generated subgroups <[A]> agree", subgroup_rule)
        )
        per = x.alg.period()
        if per <= 2:
            conclusions.append(
                Conclusion(
                    "varieties are isomorphic",
                    "a 2-torsion class with fixed degree determines the "
                    "algebra (Wedderburn)",
                )
            )
        elif per in (3, 4, 5, 6):
            notes.append(
                f"period {per}: varieties are birational by the known cases "
                "of the Amitsur problem (Roquette; Tregub) - cited, not computed"
            )
    elif family == "grassmannian":
        n = x.alg.degree
        conclusions.append(
            Conclusion(
                f"degrees agree: deg = {n}, and d' = d or deg - d",
                "binomial rank count",
            )
        )
        conclusions.append(
            Conclusion("generated subgroups <[A]> agree", subgroup_rule)
        )
        if x.alg.period() <= 2:
            conclusions.append(
                Conclusion(
                    "varieties are isomorphic",
                    "a 2-torsion class with fixed degree determines the "
                    "algebra (Wedderburn)",
                )
            )
    elif family == "quadric":
        n = x.form_dim
        conclusions.append(
            Conclusion(f"form dimensions agree: n = {n}", "rank measure fixes n")
        )
        conclusions.append(
            Conclusion(
                "even Clifford classes agree",
                "the class multiset determines the nonzero entry",
            )
        )
        if x.clifford_class != y.clifford_class:
            raise AssertionError("equal measures but unequal Clifford classes")
        both_i3 = i3_zero or (x.i3_zero and y.i3_zero)
        if n == 6:
            conclusions.append(
                Conclusion(
                    "quadrics are isomorphic",
                    "six-dimensional forms with trivial discriminant are "
                    "similar iff their even Clifford classes agree",
                )
            )
        elif both_i3:
            conclusions.append(
                Conclusion(
                    "quadrics are isomorphic",
                    "dimension, discriminant and Clifford invariant classify "
                    "forms over fields with I^3 = 0",
                )
            )
        else:
            notes.append(
                "no isomorphism rule applies (n != 6 and I^3 = 0 not asserted)"
            )
    elif family == "involution":
        n = x.deg
        conclusions.append(
            Conclusion(f"degrees agree: deg = {n}", "rank measure equals the degree")
        )
        pair_x = sorted((x.cplus.sort_key(), x.cminus.sort_key()))
        pair_y = sorted((y.cplus.sort_key(), y.cminus.sort_key()))
        if pair_x != pair_y:
            raise AssertionError("equal measures but unequal component pairs")
        conclusions.append(
            Conclusion(
                "component-class pairs {c+, c-} agree",
                "the class multiset determines the pair",
            )
        )
        if n == 6:
            conclusions.append(
                Conclusion(
                    "involution varieties are isomorphic",
                    "degree-6 correspondence with six-dimensional forms",
                )
            )
        elif i3_zero:
            conclusions.append(
                Conclusion(
                    "involution varieties are isomorphic",
                    "classification of the underlying forms when I^3 = 0",
                )
            )
        else:
            notes.append(
                "no isomorphism rule applies (deg != 6 and I^3 = 0 not asserted)"
            )
    elif family == "conic-product":
        qx = [c.alg.brauer_class for c in x.children]
        qy = [c.alg.brauer_class for c in y.children]
        common = [c for c in qx if c in qy]
        if not common:
            raise AssertionError("equal measures but no shared conic class")
        conclusions.append(
            Conclusion(
                "the sides share a common conic",
                "2-torsion subgroup generation forces a shared class",
            )
        )
        pair_class = qx[0] + qx[1]
        if x.group.index_of(pair_class) == 4:
            conclusions.append(
                Conclusion(
                    "products are isomorphic",
                    "unlinked quaternion pairs (Albert) force the pairwise "
                    "matching",
                )
            )
        else:
            notes.append(
                "pair not asserted unlinked (index of the product class "
                "is not 4); only the shared conic is concluded"
            )
    elif family == "quadric-product":
        n = x.children[0].form_dim
        m = len(x.children)
        conclusions.append(
            Conclusion(
                f"the factor counts agree: m = {m}",
                "total dimension is m(n-2)",
            )
        )
        conclusions.append(
            Conclusion(
                "generated subgroups of the Clifford classes agree",
                subgroup_rule,
            )
        )
        both_i3 = i3_zero or (
            all(c.i3_zero for c in x.children) and all(c.i3_zero for c in y.children)
        )
        if n == 6 and m <= 5:
            conclusions.append(
                Conclusion(
                    "products are isomorphic",
                    "factor matching plus cancellation via the "
                    "six-dimensional classification",
                )
            )
        elif both_i3 and m <= 5:
            conclusions.append(
                Conclusion(
                    "products are isomorphic",
                    "factor matching plus cancellation via the I^3 = 0 "
                    "classification",
                )
            )
        elif m >= 6:
            failures = extra_condition_failures(m, n)
            if failures:
                notes.append(
                    "no conclusion: the copy-count condition fails at "
                    f"l = {failures}"
                )
            elif both_i3:
                conclusions.append(
                    Conclusion(
                        "products are isomorphic",
                        "copy-count inequalities make the factor matching "
                        "injective under the I^3 = 0 classification",
                    )
                )
            else:
                notes.append(
                    "no conclusion: isomorphism for m >= 6 needs the "
                    "I^3 = 0 hypothesis"
                )
        else:
            notes.append(
                "no isomorphism rule applies (n != 6 and I^3 = 0 not asserted)"
            )

    return DeductionReport(
        refuted=False,
        conclusions=tuple(conclusions),
        notes=tuple(notes),
        **base,
    )
