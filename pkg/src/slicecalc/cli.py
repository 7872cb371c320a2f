"""Command-line front end: verify, decompose, classify.

Reports are JSON with rationals serialized as "p/q" strings, never floats,
and are byte-identical across runs for a fixed seed and configuration.
Exit codes: 0 all checks passed, 1 mathematical failure (with a witness in
the report), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from .algebra import sample_units
from .campaign import CHECKS, CampaignConfig, CampaignReport, run_campaign
from .errors import (
    FunctionSpecError,
    NotPolyanalyticOfOrderError,
    SliceCalcError,
)
from .named import BUILTIN_NAMES, builtin_function
from .polyanalytic import classify, decompose
from .sampling import rand_plane_point, rng_for
from .serialize import (
    domain_to_json,
    function_spec_from_json,
    signature_to_json,
    stem_to_json,
    witness_to_json,
)
from .slicefn import SliceFunction

EXIT_OK = 0
EXIT_MATH_FAILURE = 1
EXIT_USAGE = 2


def _default_seed() -> int:
    raw = os.environ.get("SLICECALC_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise FunctionSpecError(f"SLICECALC_SEED must be an integer, got {raw!r}")


def _load_input(path_or_name: str):
    """Builtin name first, then a JSON spec file path."""
    if path_or_name in BUILTIN_NAMES:
        return builtin_function(path_or_name)
    path = Path(path_or_name)
    if not path.exists():
        raise FunctionSpecError(
            f"{path_or_name!r} is neither a builtin ({', '.join(BUILTIN_NAMES)}) "
            "nor an existing file"
        )
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FunctionSpecError(f"cannot parse {path}: {exc}") from exc
    return function_spec_from_json(payload)


def _emit(report: dict, json_path: Optional[str]) -> None:
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if json_path:
        Path(json_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _campaign_report_json(report: CampaignReport) -> dict:
    checks = []
    for r in report.results:
        entry = {
            "id": r.check_id,
            "inputs_digest": r.inputs_digest,
            "passed": r.passed,
            "detail": r.detail,
        }
        if r.witness is not None:
            entry["witness"] = r.witness
        checks.append(entry)
    cfg = report.config
    return {
        "config": {
            "seed": cfg.seed,
            "unit_samples": cfg.unit_samples,
            "point_samples": cfg.point_samples,
            "max_order": cfg.max_order,
            "select": sorted(cfg.select) if cfg.select else sorted(CHECKS),
        },
        "checks": checks,
        "all_passed": report.all_passed,
    }


def cmd_verify(args) -> int:
    select = ()
    if args.select:
        select = tuple(s.strip() for s in args.select.split(",") if s.strip())
    try:
        config = CampaignConfig(
            seed=args.seed,
            unit_samples=args.units,
            point_samples=args.points,
            max_order=args.max_order,
            select=select,
        )
        report = run_campaign(config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for r in report.results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.check_id}")
    _emit(_campaign_report_json(report), args.json)
    return EXIT_OK if report.all_passed else EXIT_MATH_FAILURE


def cmd_decompose(args) -> int:
    f = _load_input(args.input)
    if not isinstance(f, SliceFunction):
        raise FunctionSpecError("decompose needs a stem-represented (slice) function")
    if args.order < 1:
        raise FunctionSpecError("--order must be >= 1")
    try:
        dec = decompose(f, args.order)
    except NotPolyanalyticOfOrderError as exc:
        report = {
            "input": args.input,
            "order": args.order,
            "error": "not-polyanalytic-of-order",
            "residual_stem": stem_to_json(exc.residual),
        }
        _emit(report, args.json)
        return EXIT_MATH_FAILURE
    recomposed = dec.recompose()
    report = {
        "input": args.input,
        "order": args.order,
        "signature": signature_to_json(f.signature),
        "domain": domain_to_json(f.domain),
        "components": [stem_to_json(c.stem) for c in dec.components],
        "component_count": dec.order,
        "recomposition_verified": recomposed.stem == f.stem,
    }
    _emit(report, args.json)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = _load_input(args.input)
    if isinstance(g, SliceFunction):
        g = g.to_point_function()
    units = sample_units(g.signature, args.seed, min(args.units, 12))
    rng = rng_for(args.seed, "classify-points")
    points = [rand_plane_point(rng, g.domain) for _ in range(min(args.points, 16))]
    report_obj = classify(g, args.max_order, units, points)
    report = {
        "input": args.input,
        "signature": signature_to_json(g.signature),
        "sbs_order": report_obj.sbs_polyanalytic_order,
        "is_slice": report_obj.is_slice,
        "global_order": report_obj.global_order,
        "evidence": {k: str(v) for k, v in report_obj.evidence.items()},
    }
    if report_obj.slice_witness is not None:
        report["witness"] = witness_to_json(report_obj.slice_witness)
    if report_obj.decomposition is not None:
        report["components"] = [
            stem_to_json(c.stem) for c in report_obj.decomposition.components
        ]
    _emit(report, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slicecalc",
        description=(
            "Exact slice-function computer algebra: verification campaigns, "
            "polyanalytic decomposition and classification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the identity/invariant campaigns")
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--units", type=int, default=64, help="unit sample pool size")
    p_verify.add_argument("--points", type=int, default=128, help="trial budget per check")
    p_verify.add_argument("--max-order", type=int, default=4)
    p_verify.add_argument(
        "--select",
        default="",
        help="comma-separated check ids: " + ", ".join(sorted(CHECKS)),
    )
    p_verify.add_argument("--json", default=None, help="write the JSON report here")
    p_verify.set_defaults(func=cmd_verify)

    p_dec = sub.add_parser("decompose", help="decompose a slice function")
    p_dec.add_argument("--input", required=True, help="builtin name or JSON spec file")
    p_dec.add_argument("--order", type=int, required=True)
    p_dec.add_argument("--json", default=None)
    p_dec.set_defaults(func=cmd_decompose)

    p_cls = sub.add_parser("classify", help="classify a function")
    p_cls.add_argument("--input", required=True, help="builtin name or JSON spec file")
    p_cls.add_argument("--seed", type=int, default=None)
    p_cls.add_argument("--units", type=int, default=8)
    p_cls.add_argument("--points", type=int, default=8)
    p_cls.add_argument("--max-order", type=int, default=4)
    p_cls.add_argument("--json", default=None)
    p_cls.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if getattr(args, "seed", None) is None and hasattr(args, "seed"):
            args.seed = _default_seed()
        return args.func(args)
    except FunctionSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SliceCalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MATH_FAILURE


if __name__ == "__main__":
    sys.exit(main())
