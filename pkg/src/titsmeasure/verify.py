"""Brute-force replay of the structural lemmas on enumerated finite models.

Each suite enumerates (or samples with a fixed seed) configurations on a
finite abstract Brauer-group model, checks the claimed property, and returns a
certificate.  Counterexample witnesses are emitted in replayable form; reruns
with the same parameters are byte-identical.
"""

from __future__ import annotations

import itertools
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .brauer import AbstractClass, AbstractGroup, class_primes, prime_factors
from .measure_ring import RingElement, from_terms
from .motives import MotiveSum, direct_sum, is_isomorphic, tensor
from .version import VERSION


class ResourceLimitError(RuntimeError):
    """The requested enumeration exceeds the configured size frontier."""


@dataclass(frozen=True)
class VerificationRun:
    suite: str
    params: dict
    outcome: str  # "pass" or "counterexample"
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def to_payload(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "outcome": self.outcome,
            "witness": self.witness,
            "details": self.details,
            "version": VERSION,
        }


def _multisets(elements: Sequence[AbstractClass], card: int):
    return itertools.combinations_with_replacement(elements, card)


def _state_key(classes: Iterable[AbstractClass]) -> tuple:
    return tuple(sorted(c.coords for c in classes))


def _state_payload(classes: Iterable[AbstractClass]) -> list:
    return [list(c.coords) for c in sorted(classes, key=lambda c: c.sort_key())]


# ---------------------------------------------------------------------------
# Relation equivalence: per-prime permutation identifications versus the
# coprime-splitting relations, compared as partitions of fixed-size multisets.
# ---------------------------------------------------------------------------

def _coprime_splits(group: AbstractGroup, delta: AbstractClass):
    """All (a, a') with a + a' = delta, both nonzero, coprime orders."""
    for a in group.elements():
        if a.is_identity():
            continue
        b = delta - a
        if b.is_identity():
            continue
        if math.gcd(a.order(), b.order()) == 1:
            yield a, b


def verify_relation_equivalence(group: AbstractGroup, m_max: int) -> VerificationRun:
    """The split relations generate exactly per-prime multiset equality.

    For every multiset size up to m_max, the partition of multisets into
    breadth-first components under pair rewrites {b, o} -> {b+a, b+a'} (where
    o - b = a + a' splits into nonzero parts of coprime order) must coincide
    with the partition by per-prime p-part signatures.
    """
    params = {"group": group.to_payload(), "m_max": m_max}
    if group.order > 100:
        raise ResourceLimitError(
            f"relation equivalence needs group order <= 100, got {group.order}"
        )
    elements = list(group.elements())
    splits = {e.coords: list(_coprime_splits(group, e)) for e in elements}
    states_checked: dict[str, int] = {}

    for m in range(1, m_max + 1):
        states = [tuple(ms) for ms in _multisets(elements, m)]
        states_checked[str(m)] = len(states)
        index = {_state_key(s): i for i, s in enumerate(states)}

        def neighbors(state):
            out = []
            for i, j in itertools.combinations(range(len(state)), 2):
                for base_i, other_i in ((i, j), (j, i)):
                    base, other = state[base_i], state[other_i]
                    for a, b in splits[(other - base).coords]:
                        rest = list(state)
                        del rest[max(i, j)], rest[min(i, j)]
                        rest.extend((base + a, base + b))
                        out.append(_state_key(rest))
            return out

        # BFS components under the split rewrites.
        component = {}
        for start in range(len(states)):
            if start in component:
                continue
            queue = [start]
            component[start] = start
            while queue:
                cur = queue.pop()
                for key in neighbors(states[cur]):
                    nxt = index[key]
                    if nxt not in component:
                        component[nxt] = start
                        queue.append(nxt)

        signature = {
            i: MotiveSum.of(group, s).signature() for i, s in enumerate(states)
        }
        by_component: dict[int, set] = {}
        by_signature: dict[tuple, set] = {}
        for i in range(len(states)):
            by_component.setdefault(component[i], set()).add(i)
            by_signature.setdefault(signature[i], set()).add(i)
        blocks_a = {frozenset(v) for v in by_component.values()}
        blocks_b = {frozenset(v) for v in by_signature.values()}
        if blocks_a != blocks_b:
            # A signature block split across components (or vice versa).
            for sig_block in by_signature.values():
                comps = {component[i] for i in sig_block}
                if len(comps) > 1:
                    picks = sorted(
                        (min(i for i in sig_block if component[i] == c) for c in comps)
                    )[:2]
                    return VerificationRun(
                        suite="relation-equivalence",
                        params=params,
                        outcome="counterexample",
                        witness={
                            "m": m,
                            "same_signature_not_connected": [
                                _state_payload(states[p]) for p in picks
                            ],
                        },
                    )
            for comp_block in by_component.values():
                sigs = {signature[i] for i in comp_block}
                if len(sigs) > 1:
                    picks = sorted(comp_block)[:2]
                    return VerificationRun(
                        suite="relation-equivalence",
                        params=params,
                        outcome="counterexample",
                        witness={
                            "m": m,
                            "connected_but_different_signature": [
                                _state_payload(states[p]) for p in picks
                            ],
                        },
                    )
    return VerificationRun(
        suite="relation-equivalence",
        params=params,
        outcome="pass",
        details={"states_checked": states_checked},
    )


# ---------------------------------------------------------------------------
# Direct-sum cancellation.
# ---------------------------------------------------------------------------

def verify_sum_cancellation(
    group: AbstractGroup,
    *,
    card_max: int = 3,
    trials: int = 200,
    seed: int = 7,
) -> VerificationRun:
    """x + n iso y + n exactly when x iso y, on enumerated multisets.

    Exhaustive part: for every pair (x, n) of multisets of size <= card_max,
    bucket x by the signature of x + n; each bucket must be a single
    signature class of x.  Random part: seeded triples re-checked through the
    full multiset construction in both directions.
    """
    params = {
        "group": group.to_payload(),
        "card_max": card_max,
        "trials": trials,
        "seed": seed,
    }
    elements = list(group.elements())
    states: list[tuple[AbstractClass, ...]] = []
    for m in range(card_max + 1):
        states.extend(tuple(ms) for ms in _multisets(elements, m))

    def merged_signature(x, n):
        # Signature of the concatenation; same computation the motive layer
        # performs, on the concatenated tuple.
        return MotiveSum.of(group, x + n).signature()

    base_sig = {i: MotiveSum.of(group, s).signature() for i, s in enumerate(states)}
    for n_state in states:
        buckets: dict[tuple, dict] = {}
        for i, x_state in enumerate(states):
            key = merged_signature(x_state, n_state)
            bucket = buckets.setdefault(key, {})
            bucket.setdefault(base_sig[i], i)
            if len(bucket) > 1:
                i1, i2 = sorted(bucket.values())
                return VerificationRun(
                    suite="sum-cancellation",
                    params=params,
                    outcome="counterexample",
                    witness={
                        "x": _state_payload(states[i1]),
                        "y": _state_payload(states[i2]),
                        "n": _state_payload(n_state),
                    },
                )

    rng = random.Random(seed)
    for _ in range(trials):
        x = MotiveSum.of(group, [rng.choice(elements) for _ in range(rng.randint(0, card_max))])
        y = MotiveSum.of(group, [rng.choice(elements) for _ in range(len(x))])
        n = MotiveSum.of(group, [rng.choice(elements) for _ in range(rng.randint(0, card_max))])
        if is_isomorphic(direct_sum(x, n), direct_sum(y, n)) != is_isomorphic(x, y):
            return VerificationRun(
                suite="sum-cancellation",
                params=params,
                outcome="counterexample",
                witness={
                    "x": _state_payload(x.classes),
                    "y": _state_payload(y.classes),
                    "n": _state_payload(n.classes),
                },
            )
    return VerificationRun(suite="sum-cancellation", params=params, outcome="pass")


# ---------------------------------------------------------------------------
# Tensor cancellation by a quadric factor.
# ---------------------------------------------------------------------------

def quadric_motive(group: AbstractGroup, c: AbstractClass, n_dim: int) -> MotiveSum:
    """The class multiset of a dimension-n quadric with Clifford class c."""
    if c.order() > 2:
        raise ValueError("quadric Clifford class must be 2-torsion")
    copies = 2 if n_dim % 2 == 0 else 1
    return MotiveSum.of(
        group, [group.identity()] * (n_dim - 2) + [c] * copies
    )


def _tensor_cancellation_holds(
    group: AbstractGroup, n_dim: int, card_max: int
) -> tuple[bool, dict | None]:
    elements = list(group.elements())
    two_torsion = [c for c in elements if c.order() <= 2]
    states: list[tuple[AbstractClass, ...]] = []
    for m in range(1, card_max + 1):
        states.extend(tuple(ms) for ms in _multisets(elements, m))
    for c in two_torsion:
        qc = quadric_motive(group, c, n_dim)
        buckets: dict[tuple, dict] = {}
        for i, x_state in enumerate(states):
            x = MotiveSum.of(group, x_state)
            key = tensor(x, qc).signature()
            bucket = buckets.setdefault(key, {})
            bucket.setdefault(x.signature(), i)
            if len(bucket) > 1:
                i1, i2 = sorted(bucket.values())
                return False, {
                    "c": list(c.coords),
                    "n_dim": n_dim,
                    "x": _state_payload(states[i1]),
                    "y": _state_payload(states[i2]),
                }
    return True, None


def verify_tensor_cancellation(
    group: AbstractGroup, n_dim: int, *, card_max: int = 3
) -> VerificationRun:
    """Tensoring by a quadric multiset is injective on iso classes (n >= 5).

    Also runs the same enumeration at form dimension 4 and reports the result
    without asserting it; the hypothesis excludes that case and the probe
    documents why.
    """
    params = {"group": group.to_payload(), "n_dim": n_dim, "card_max": card_max}
    if n_dim < 5:
        raise ValueError(f"tensor cancellation is asserted only for n >= 5, got {n_dim}")
    ok, witness = _tensor_cancellation_holds(group, n_dim, card_max)
    probe_ok, probe_witness = _tensor_cancellation_holds(group, 4, card_max)
    details = {
        "n4_probe": {"holds": probe_ok, "witness": probe_witness},
    }
    if not ok:
        return VerificationRun(
            suite="tensor-cancellation",
            params=params,
            outcome="counterexample",
            witness=witness,
            details=details,
        )
    return VerificationRun(
        suite="tensor-cancellation", params=params, outcome="pass", details=details
    )


# ---------------------------------------------------------------------------
# Quadric product matching: the subset-decomposition multiset determines the
# family of Clifford classes, for m <= 5.
# ---------------------------------------------------------------------------

def verify_quadric_product_matching(
    d_max: int, m: int, n_dim: int, *, family_limit: int = 2_000_000
) -> VerificationRun:
    """Distinct class families give distinct product decompositions.

    Enumerates all size-m multisets of classes in (Z/2)^d_max; for each, the
    product of m quadrics of dimension n_dim decomposes over subsets S with
    copies^|S| (n_dim-2)^(m-|S|) summands of the subset sum.  The decomposition
    key must be injective across families, which is exactly the class-level
    form of the matching statement.
    """
    params = {"d_max": d_max, "m": m, "n_dim": n_dim}
    if n_dim < 5:
        raise ValueError(f"product matching applies to form dimension >= 5, got {n_dim}")
    if m < 1 or m > 5:
        raise ValueError(f"product matching is proved for 1 <= m <= 5, got {m}")
    if d_max < 0 or d_max > 6:
        raise ResourceLimitError(f"d_max must be between 0 and 6, got {d_max}")
    size = 1 << d_max
    n_families = math.comb(size + m - 1, m)
    if n_families > family_limit:
        raise ResourceLimitError(
            f"{n_families} families exceed the configured limit {family_limit}"
        )

    copies = 2 if n_dim % 2 == 0 else 1
    q = n_dim - 2
    # weight for subset index: subsets of {1..m} are bitmasks of width m.
    weight = [copies ** bin(s).count("1") * q ** (m - bin(s).count("1")) for s in range(1 << m)]

    import array

    seen: dict[bytes, tuple[int, ...]] = {}
    count = 0
    for family in itertools.combinations_with_replacement(range(size), m):
        xors = [0]
        for e in family:
            xors += [x ^ e for x in xors]
        acc = [0] * size
        for idx, x in enumerate(xors):
            acc[x] += weight[idx]
        key = array.array("q", acc).tobytes()
        other = seen.get(key)
        if other is not None and other != family:
            return VerificationRun(
                suite="quadric-product-matching",
                params=params,
                outcome="counterexample",
                witness={
                    "family_a": [list(_bits(e, d_max)) for e in other],
                    "family_b": [list(_bits(e, d_max)) for e in family],
                },
            )
        if other is None:
            seen[key] = family
        count += 1
    return VerificationRun(
        suite="quadric-product-matching",
        params=params,
        outcome="pass",
        details={"families": count},
    )


def _bits(e: int, width: int) -> tuple[int, ...]:
    return tuple((e >> i) & 1 for i in range(width))


# ---------------------------------------------------------------------------
# Normal-form confluence: random rewrite orders all reach the same endpoint.
# ---------------------------------------------------------------------------

def _random_raw_element(group: AbstractGroup, rng: random.Random) -> dict:
    out: dict = {}
    elements = list(group.elements())
    for _ in range(rng.randint(1, 4)):
        c = rng.choice(elements)
        k = rng.choice([-3, -2, -1, 1, 2, 3])
        out[c] = out.get(c, 0) + k
    return {c: k for c, k in out.items() if k}


def _rewrite_once(group: AbstractGroup, raw: dict, rng: random.Random) -> bool:
    """Apply one random coprime-split rewrite in place; False when none apply."""
    candidates = [c for c, k in raw.items() if k and len(class_primes(c)) >= 2]
    if not candidates:
        return False
    c = rng.choice(candidates)
    primes = class_primes(c)
    cut = rng.randint(1, len(primes) - 1)
    chosen = rng.sample(primes, cut)
    a = group.identity()
    for p in chosen:
        a = a + c.p_part(p)
    b = c - a
    sign = 1 if raw[c] > 0 else -1
    for cls, delta in ((c, -sign), (a, sign), (b, sign), (group.identity(), -sign)):
        raw[cls] = raw.get(cls, 0) + delta
        if not raw[cls]:
            del raw[cls]
    return True


def verify_normal_form_confluence(
    group: AbstractGroup, trials: int = 1000, seed: int = 11
) -> VerificationRun:
    """Random rewrite sequences terminate at the canonical normal form."""
    params = {"group": group.to_payload(), "trials": trials, "seed": seed}
    rng = random.Random(seed)
    for t in range(trials):
        raw = _random_raw_element(group, rng)
        expected = dict(from_terms(group, tuple(raw.items())).terms)
        work = dict(raw)
        steps = 0
        while _rewrite_once(group, work, rng):
            steps += 1
            if steps > 10_000:
                raise AssertionError("rewriting failed to terminate")
        if work != expected:
            return VerificationRun(
                suite="normal-form-confluence",
                params=params,
                outcome="counterexample",
                witness={
                    "trial": t,
                    "start": [[list(c.coords), k] for c, k in sorted(raw.items(), key=lambda t: t[0].sort_key())],
                    "reached": [[list(c.coords), k] for c, k in sorted(work.items(), key=lambda t: t[0].sort_key())],
                    "expected": [[list(c.coords), k] for c, k in sorted(expected.items(), key=lambda t: t[0].sort_key())],
                },
            )
    return VerificationRun(
        suite="normal-form-confluence", params=params, outcome="pass"
    )
