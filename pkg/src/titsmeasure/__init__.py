"""Exact motivic measures of twisted projective homogeneous varieties.

Brauer classes live in finite abstract models or in the rational Brauer
group; varieties carry multisets of classes whose image in the Burnside-style
quotient ring is the measure.  Everything is exact integer and Fraction
arithmetic, so equality verdicts are decisions, not approximations.
"""

from .brauer import (
    CSA,
    RATIONALS,
    AbstractClass,
    AbstractGroup,
    GroupMismatchError,
    RationalClass,
    coprime_indexes,
    generated_subgroup,
)
from .measure_ring import RingElement, augmentation, from_motive_sum
from .motives import MotiveSum, cancel_common, direct_sum, is_isomorphic, tensor
from .quadforms import (
    FormShadow,
    QuadraticForm,
    even_clifford_class,
    hasse_invariant,
    shadow_of,
    signed_discriminant,
    similar_under_classification,
)
from .clifford import even_clifford_class_by_structure
from .rationals import (
    distinct_conic_family,
    hilbert_symbol,
    quaternion_class,
    ramified_places,
)
from .sigma import extra_condition, recurrence_violations, sigma, sigma_fraction
from .varieties import (
    Grassmannian,
    Involution,
    Product,
    Quadric,
    SeveriBrauer,
    compare,
    deduce,
    rank_measure,
    tits_measure,
)
from .verify import (
    ResourceLimitError,
    verify_normal_form_confluence,
    verify_quadric_product_matching,
    verify_relation_equivalence,
    verify_sum_cancellation,
    verify_tensor_cancellation,
)
from .version import VERSION as __version__

__all__ = [
    "CSA",
    "RATIONALS",
    "AbstractClass",
    "AbstractGroup",
    "GroupMismatchError",
    "RationalClass",
    "coprime_indexes",
    "generated_subgroup",
    "RingElement",
    "augmentation",
    "from_motive_sum",
    "MotiveSum",
    "cancel_common",
    "direct_sum",
    "is_isomorphic",
    "tensor",
    "FormShadow",
    "QuadraticForm",
    "even_clifford_class",
    "even_clifford_class_by_structure",
    "hasse_invariant",
    "shadow_of",
    "signed_discriminant",
    "similar_under_classification",
    "distinct_conic_family",
    "hilbert_symbol",
    "quaternion_class",
    "ramified_places",
    "extra_condition",
    "recurrence_violations",
    "sigma",
    "sigma_fraction",
    "Grassmannian",
    "Involution",
    "Product",
    "Quadric",
    "SeveriBrauer",
    "compare",
    "deduce",
    "rank_measure",
    "tits_measure",
    "ResourceLimitError",
    "verify_normal_form_confluence",
    "verify_quadric_product_matching",
    "verify_relation_equivalence",
    "verify_sum_cancellation",
    "verify_tensor_cancellation",
    "__version__",
]
