"""Command line front end.

Subcommands: measure, compare, deduce, sigma, sigma-check, verify,
conic-family.  Documents come in as a file path or inline JSON; output is
deterministic (stable key order, fixed seeds) so reruns are byte-identical.

Exit codes: 0 success, 1 malformed input or domain error, 2 a check found a
counterexample, 3 a configured resource frontier was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import jsonio
from .brauer import AbstractGroup
from .rationals import distinct_conic_family
from .sigma import KINDS, RECURRENCE_FACTORS, recurrence_violations, sigma
from .varieties import compare, deduce, tits_measure
from .verify import (
    ResourceLimitError,
    verify_normal_form_confluence,
    verify_quadric_product_matching,
    verify_relation_equivalence,
    verify_sum_cancellation,
    verify_tensor_cancellation,
)
from .version import VERSION

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_RESOURCE = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage, which collides with the
    # counterexample code; route usage errors to the malformed-input code.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_MALFORMED, f"{self.prog}: error: {message}\n")


def _load_document(text: str) -> Any:
    """INPUT is inline JSON when it looks like JSON, else a file path."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key in sorted(payload):
        value = payload[key]
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True)
        print(f"{key}: {value}")


def _parse_group_spec(spec: str) -> AbstractGroup:
    try:
        orders = tuple(int(part) for part in spec.split(","))
    except ValueError:
        raise ValueError(f"bad group spec {spec!r}; expected e.g. 2,2 or 6")
    return AbstractGroup(orders)


def _cmd_measure(args) -> int:
    group, variety = jsonio.parse_measure_request(_load_document(args.input))
    report = tits_measure(variety)
    _emit(
        {
            "group": group.to_payload(),
            "variety": jsonio.descriptor_payload(variety),
            "measure": report.to_payload(),
        },
        args.format,
    )
    return EXIT_OK


def _cmd_compare(args) -> int:
    group, x, y = jsonio.parse_pair_request(_load_document(args.input))
    verdict = compare(x, y)
    _emit(
        {
            "group": group.to_payload(),
            "x": jsonio.descriptor_payload(x),
            "y": jsonio.descriptor_payload(y),
            "verdict": verdict.to_payload(),
        },
        args.format,
    )
    return EXIT_OK


def _cmd_deduce(args) -> int:
    doc = _load_document(args.input)
    group, x, y = jsonio.parse_pair_request(doc)
    i3_zero = bool(doc.get("i3_zero", False)) or args.i3_zero
    report = deduce(x, y, args.assume_equal, i3_zero=i3_zero)
    _emit(
        {
            "group": group.to_payload(),
            "x": jsonio.descriptor_payload(x),
            "y": jsonio.descriptor_payload(y),
            "report": report.to_payload(),
        },
        args.format,
    )
    return EXIT_OK


def _resolve_sigma_args(args) -> tuple[str, int, int, int]:
    positional = args.args
    if positional:
        if len(positional) != 4:
            raise ValueError("positional form is: sigma KIND M N L")
        if any(v is not None for v in (args.kind, args.m, args.n, args.l)):
            raise ValueError("give either positional KIND M N L or flags, not both")
        kind = positional[0]
        try:
            m, n, l = (int(v) for v in positional[1:])
        except ValueError:
            raise ValueError("sigma M N L must be integers")
        return kind, m, n, l
    missing = [
        name
        for name, v in (("--kind", args.kind), ("--m", args.m), ("--n", args.n), ("--l", args.l))
        if v is None
    ]
    if missing:
        raise ValueError(f"sigma needs {' '.join(missing)} (or the positional form)")
    return args.kind, args.m, args.n, args.l


def _cmd_sigma(args) -> int:
    kind, m, n, l = _resolve_sigma_args(args)
    value = sigma(kind, m, n, l)
    if args.format == "json":
        _emit({"kind": kind, "m": m, "n": n, "l": l, "value": value}, "json")
    else:
        print(value)
    return EXIT_OK


def _cmd_sigma_check(args) -> int:
    kinds = tuple(args.kinds.split(",")) if args.kinds else tuple(RECURRENCE_FACTORS)
    n_values = range(args.n_min, args.n_max + 1)
    m_values = range(args.m_min, args.m_max + 1)
    violations = recurrence_violations(n_values, m_values, kinds)
    payload = {
        "kinds": list(kinds),
        "n_range": [args.n_min, args.n_max],
        "m_range": [args.m_min, args.m_max],
        "violations": violations,
        "ok": not violations,
    }
    _emit(payload, args.format)
    return EXIT_OK if not violations else EXIT_COUNTEREXAMPLE


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    return cfg


def _pick(args, cfg: dict, name: str, default):
    """Parameter precedence: CLI flag, then config file, then the default."""
    value = getattr(args, name.replace("-", "_"))
    if value is not None:
        return value
    return cfg.get(name, default)


def _cmd_verify(args) -> int:
    cfg = _load_config(args.config)
    suite = args.suite

    def need_group() -> AbstractGroup:
        spec = args.group if args.group is not None else cfg.get("group")
        if spec is None:
            raise ValueError(f"suite {suite} needs --group")
        return _parse_group_spec(str(spec))

    if suite == "relation-equivalence":
        run = verify_relation_equivalence(need_group(), _pick(args, cfg, "m-max", 3))
    elif suite == "sum-cancellation":
        run = verify_sum_cancellation(
            need_group(),
            card_max=_pick(args, cfg, "card-max", 3),
            trials=_pick(args, cfg, "trials", 200),
            seed=_pick(args, cfg, "seed", 7),
        )
    elif suite == "tensor-cancellation":
        run = verify_tensor_cancellation(
            need_group(),
            _pick(args, cfg, "n", 6),
            card_max=_pick(args, cfg, "card-max", 3),
        )
    elif suite == "quadric-product-matching":
        run = verify_quadric_product_matching(
            _pick(args, cfg, "d-max", 4),
            _pick(args, cfg, "m", 3),
            _pick(args, cfg, "n", 6),
            family_limit=_pick(args, cfg, "family-limit", 2_000_000),
        )
    elif suite == "normal-form-confluence":
        run = verify_normal_form_confluence(
            need_group(),
            trials=_pick(args, cfg, "trials", 1000),
            seed=_pick(args, cfg, "seed", 11),
        )
    else:
        raise ValueError(f"unknown suite {suite!r}")

    _emit(run.to_payload(), args.format)
    return EXIT_OK if run.passed else EXIT_COUNTEREXAMPLE


def _cmd_conic_family(args) -> int:
    try:
        primes = [int(p) for p in args.primes.split(",")]
    except ValueError:
        raise ValueError(f"bad primes spec {args.primes!r}; expected e.g. 3,7,11")
    classes = distinct_conic_family(primes)
    payload = {
        "family": [
            {
                "prime": p,
                "class": c.to_payload(),
                "ramified_places": [str(v) for v in c.ramified_places()],
            }
            for p, c in zip(primes, classes)
        ],
        "pairwise_distinct": True,
    }
    _emit(payload, args.format)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="titsmeasure", description=__doc__)
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("measure", parents=[fmt], help="measure a variety document")
    p.add_argument("input", help="file path or inline JSON")
    p.set_defaults(fn=_cmd_measure)

    p = sub.add_parser("compare", parents=[fmt], help="compare two varieties")
    p.add_argument("input", help="file path or inline JSON")
    p.set_defaults(fn=_cmd_compare)

    p = sub.add_parser("deduce", parents=[fmt], help="geometric consequences of equal measures")
    p.add_argument("input", help="file path or inline JSON")
    p.add_argument(
        "--assume-equal",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="treat measure equality as a hypothesis to exploit",
    )
    p.add_argument("--i3-zero", action="store_true", help="both sides have trivial I^3")
    p.set_defaults(fn=_cmd_deduce)

    p = sub.add_parser("sigma", parents=[fmt], help="evaluate a copy-count sum")
    p.add_argument("args", nargs="*", metavar="KIND M N L")
    p.add_argument("--kind", choices=KINDS)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--l", type=int)
    p.set_defaults(fn=_cmd_sigma)

    p = sub.add_parser("sigma-check", parents=[fmt], help="recheck the sum recurrences")
    p.add_argument("--kinds", help="comma list, default all six split kinds")
    p.add_argument("--n-min", type=int, default=5)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--m-min", type=int, default=2)
    p.add_argument("--m-max", type=int, default=12)
    p.set_defaults(fn=_cmd_sigma_check)

    p = sub.add_parser("verify", parents=[fmt], help="run a brute-force checking suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=(
            "relation-equivalence",
            "sum-cancellation",
            "tensor-cancellation",
            "quadric-product-matching",
            "normal-form-confluence",
        ),
    )
    p.add_argument("--group", help="cyclic orders, e.g. 2,2 or 12")
    p.add_argument("--n", type=int, help="quadric form dimension")
    p.add_argument("--m", type=int, help="number of product factors")
    p.add_argument("--m-max", type=int, help="multiset size frontier")
    p.add_argument("--d-max", type=int, help="class coordinate frontier")
    p.add_argument("--card-max", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--family-limit", type=int)
    p.add_argument("--config", help="JSON file with frontier/seed defaults")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("conic-family", parents=[fmt], help="pairwise distinct conic classes")
    p.add_argument("--primes", required=True, help="comma list of primes = 3 mod 4")
    p.set_defaults(fn=_cmd_conic_family)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
