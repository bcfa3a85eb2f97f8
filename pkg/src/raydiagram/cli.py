"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 precondition violation.  Human
output is stable `key: value` lines with exact rationals; --json switches
the body to JSON (rationals as strings).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bounds_mod
from . import catalog as catalog_mod
from .classifier import (
    Classification,
    DiagramClass,
    OracleBoundError,
    PreconditionError,
    classify,
    oracle_classify,
    semi_elliptic_decomposition,
)
from .raygraph import (
    ParseError,
    RaySetError,
    diameter,
    distance,
    distance_A,
    parse_rayset,
)
from .shapes import ShapeError, lint_special_structure, shape_type, special_components
from .vinberg import PolytopeError, parse_polytope, vinberg_check

PARSE_ERROR, PRECONDITION_ERROR = 2, 3


def _mixed(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    whole, rem = divmod(value.numerator, value.denominator)
    if whole:
        return f"{whole} {rem}/{value.denominator}"
    return f"{value.numerator}/{value.denominator}"


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, DiagramClass):
        return value.value
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if value == float("inf"):
        return "inf"
    return str(value)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.body = {}

    def add(self, key, value):
        self.body[key] = value
        return self

    def emit(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(
                {"command": self.command, **_jsonable(self.body)}, indent=2
            )
        lines = []
        for key, value in self.body.items():
            lines.append(f"{key}: {_human(value)}")
        return "\n".join(lines)


def _human(value) -> str:
    if isinstance(value, Fraction):
        return _mixed(value)
    if isinstance(value, DiagramClass):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(_human(v) for v in value)
    if isinstance(value, dict):
        return "; ".join(f"{k}={_human(v)}" for k, v in value.items())
    if value == float("inf"):
        return "inf"
    return str(value)


def _load_rayset(path: str, expect_mode):
    rs = parse_rayset(Path(path).read_text(encoding="utf-8"))
    if expect_mode and rs.mode != expect_mode:
        raise PreconditionError(
            f"file is in {rs.mode} mode, --mode {expect_mode} was requested"
        )
    return rs


def _classification_body(report: Report, got: Classification):
    report.add("class", got.label)
    if got.witness is not None:
        report.add("witness", list(got.witness.coefficients))
        report.add("signs", list(got.witness.signs))
    if got.kernel is not None:
        report.add("kernel", list(got.kernel.coefficients))
    if got.decomposition is not None:
        for idx, part in enumerate(got.decomposition.parabolic_parts):
            report.add(f"parabolic_part_{idx}", list(part))
        report.add("elliptic_part", list(got.decomposition.elliptic_part))
    if got.reason:
        report.add("reason", got.reason)
    report.add("semi_elliptic", got.is_semi_elliptic)


def cmd_classify(args) -> Report:
    rs = _load_rayset(args.path, args.mode)
    report = Report("classify")
    if args.oracle:
        label = oracle_classify(rs)
        report.add("class", label)
        report.add("oracle", True)
        return report
    _classification_body(report, classify(rs))
    return report


def cmd_decompose(args) -> Report:
    rs = _load_rayset(args.path, args.mode)
    report = Report("decompose")
    decomp = semi_elliptic_decomposition(rs)
    if decomp is None:
        report.add("semi_elliptic", False)
        report.add("decomposition", "none")
        return report
    report.add("semi_elliptic", True)
    for idx, part in enumerate(decomp.parabolic_parts):
        report.add(f"parabolic_part_{idx}", list(part))
    report.add("elliptic_part", list(decomp.elliptic_part))
    return report


def cmd_shape(args) -> Report:
    rs = _load_rayset(args.path, args.mode)
    report = Report("shape")
    comps = special_components(rs)
    report.add(
        "special_components",
        [f"{c.type.value}{c.n}@{','.join(map(str, c.vertices))}" for c in comps],
    )
    if not rs.dotted:
        try:
            kind, why = shape_type(rs)
            report.add("shape", kind.value)
            report.add("shape_reason", why)
        except ShapeError as exc:
            report.add("shape", "n/a")
            report.add("shape_reason", str(exc))
    warnings = lint_special_structure(rs)
    report.add("lint_warnings", warnings if warnings else ["none"])
    return report


def cmd_distance(args) -> Report:
    rs = _load_rayset(args.path, args.mode)
    report = Report("distance")
    if args.src is not None and args.dst is not None:
        report.add("rho", distance(rs, args.src, args.dst))
        report.add("rho_A", distance_A(rs, args.src, args.dst))
        return report
    for i in range(rs.n):
        report.add(f"rho_{i}", [distance(rs, i, j) for j in range(rs.n)])
    for i in range(rs.n):
        report.add(f"rhoA_{i}", [distance_A(rs, i, j) for j in range(rs.n)])
    report.add("diameter", diameter(rs))
    return report


def cmd_catalog(args) -> Report:
    report = Report("catalog")
    if args.family == "list":
        for name, table in catalog_mod.family_table():
            report.add(name, f"table {table}")
        return report
    if args.sweep:
        max_n, max_weight = args.sweep
        disagreements = []
        total = 0
        for spec, rs, predicted in catalog_mod.enumerate_families(max_n, max_weight):
            total += 1
            actual = classify(rs).label
            if actual is not predicted:
                disagreements.append(f"{spec}: predicted {predicted.value}, got {actual.value}")
        report.add("instances", total)
        report.add("disagreements", len(disagreements))
        for line in disagreements[:50]:
            report.add("disagree", line)
        return report
    if not args.family:
        raise PreconditionError("need a family name, 'list', or --sweep")
    params = {}
    for key in ("n", "k", "a", "b", "t12", "t21", "t23", "t32",
                "t13", "t31", "t34", "t43", "t45", "t54"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.chains:
        params["chains"] = args.chains
    spec = catalog_mod.FamilySpec.make(args.family, **params)
    rs = catalog_mod.build_family(spec)
    predicted = catalog_mod.predicted_class(spec)
    actual = classify(rs).label
    report.add("family", str(spec))
    for i, row in enumerate(rs.m):
        report.add(f"matrix_{i}", list(row))
    report.add("predicted", predicted)
    report.add("actual", actual)
    report.add("agree", predicted is actual)
    return report


def cmd_constants(args) -> Report:
    report = Report("constants")
    consts = bounds_mod.extract_constants(args.max_n, args.max_weight, args.e0_cap)
    for key in ("q", "d", "d_A", "n_D", "n_C", "n_A"):
        report.add(key, getattr(consts, key))
    report.add("C1", consts.C1)
    report.add("C2", consts.C2)
    report.add("C_A", consts.C_A)
    report.add("observed_c1", consts.observed_c1)
    report.add("observed_c2", consts.observed_c2)
    report.add("observed_ca", consts.observed_ca)
    for key, value in sorted(consts.attained_by.items()):
        report.add(f"witness[{key}]", value)
    if args.quasi:
        quasi = bounds_mod.extract_constants_quasi(
            args.quasi_max_n, args.max_weight, q_cy=consts.q
        )
        report.add("quasi_max_size", quasi.max_size)
        report.add("quasi_max_diam", quasi.max_diameter)
        report.add("quasi_count", quasi.count)
        report.add("quasi_q", quasi.q)
        report.add("quasi_d", quasi.max_diameter)
        report.add("quasi_d_A", quasi.d_A)
        report.add("quasi_n_D", quasi.n_D)
        report.add("quasi_n_C", quasi.n_C)
        report.add("quasi_n_A", quasi.n_A)
        report.add("quasi_C1", quasi.C1)
        report.add("quasi_C2", quasi.C2)
        report.add("quasi_C_A", quasi.C_A)
        for key, value in sorted(quasi.attained_by.items()):
            report.add(f"quasi_witness[{key}]", value)
    return report


def _load_preset(name: str) -> dict:
    path = Path(__file__).parent / "data" / f"{name}.json"
    if not path.exists():
        raise PreconditionError(f"unknown preset {name!r}")
    return json.loads(path.read_text(encoding="utf-8"))


def cmd_bounds(args) -> Report:
    report = Report("bounds")
    if args.preset:
        preset = _load_preset(args.preset)
        c1, c2 = Fraction(preset["c1"]), Fraction(preset["c2"])
        basic = bounds_mod.bound_basic(c1, c2, headline=preset["headline_basic"])
        report.add("basic", basic.value)
        report.add("basic_headline", basic.headline)
        report.add("basic_ok", basic.headline_ok)
        if "constants" in preset:
            cdata = preset["constants"]
            consts = bounds_mod.ConstantsReport(
                q=cdata["q"], d=cdata["d"], d_A=cdata["d_A"],
                n_D=cdata["n_D"], n_C=cdata["n_C"], n_A=cdata["n_A"],
                C1=Fraction(cdata["C1"]), C2=Fraction(cdata["C2"]),
                C_A=Fraction(cdata["C_A"]),
                observed_c1=Fraction(0), observed_c2=Fraction(0),
                observed_ca=Fraction(0), enumeration_bounds=(0, 0),
            )
            best_refined = None
            best_strength = None
            for k in range(0, 3):
                for l2 in range(0, 3 - k):
                    ref = bounds_mod.bound_refined(
                        k, l2, consts, headline=preset.get("headline_refined")
                    )
                    if best_refined is None or ref.value > best_refined.value:
                        best_refined = ref
                    st = bounds_mod.bound_strengthened(k, l2)
                    if best_strength is None or st.value > best_strength.value:
                        best_strength = st
            report.add("refined", best_refined.value)
            report.add("refined_coarse", best_refined.alternate)
            report.add("refined_ok", best_refined.headline_ok)
            report.add("strengthened_29", best_strength.value)
            report.add("strengthened_30", best_strength.alternate)
            report.add("strengthened_ok", best_strength.headline_ok)
            report.add("strengthened_note", best_strength.note)
        return report
    if args.c1 is None or args.c2 is None:
        raise PreconditionError("need --preset or both --c1 and --c2")
    basic = bounds_mod.bound_basic(Fraction(args.c1), Fraction(args.c2))
    report.add("basic", basic.value)
    if args.k is not None and args.l2 is not None:
        st = bounds_mod.bound_strengthened(args.k, args.l2)
        report.add("strengthened_29", st.value)
        report.add("strengthened_30", st.alternate)
        report.add("strengthened_ok", st.headline_ok)
    return report


def cmd_vinberg(args) -> Report:
    report = Report("vinberg")
    poly = parse_polytope(Path(args.path).read_text(encoding="utf-8"))
    got = vinberg_check(poly, Fraction(args.C), Fraction(args.D))
    report.add("condition1", "PASS" if got.vertex_condition_ok else
               f"FAIL vertex#{got.failed_vertex}")
    report.add("condition2", "PASS" if got.face_condition_ok else
               f"FAIL face#{got.failed_face}")
    if got.bound is not None:
        report.add("bound", f"n < {_mixed(got.bound)}")
    return report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raydiagram",
        description="classify extremal-ray intersection diagrams and reproduce "
                    "the Picard-number bounds",
    )
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--mode", choices=("cy", "general"),
                        help="require the input file to be in this mode")
    parser.add_argument("--oracle", action="store_true",
                        help="classify through the brute-force feasibility oracle")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a rayset file")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decompose", help="semi-elliptic decomposition")
    p.add_argument("path")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("shape", help="special components and grammar type")
    p.add_argument("path")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("distance", help="oriented and pruned distances")
    p.add_argument("path")
    p.add_argument("--from", dest="src", type=int)
    p.add_argument("--to", dest="dst", type=int)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("catalog", help="build families, list them, or sweep")
    p.add_argument("family", nargs="?", default="")
    p.add_argument("--sweep", nargs=2, type=int, metavar=("MAX_N", "MAX_WEIGHT"))
    for key in ("n", "k", "a", "b", "t12", "t21", "t23", "t32",
                "t13", "t31", "t34", "t43", "t45", "t54"):
        p.add_argument(f"--{key}", type=int)
    p.add_argument("--chains", help="type B chain spec, e.g. 'A3:1,B2:4'")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("constants", help="extract the diagram-method constants")
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--max-weight", type=int, default=6)
    p.add_argument("--e0-cap", type=int, default=4)
    p.add_argument("--quasi", action="store_true")
    p.add_argument("--quasi-max-n", type=int, default=11)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bounds", help="evaluate the bound formulas")
    p.add_argument("--preset", choices=("cy", "verygood"))
    p.add_argument("--c1")
    p.add_argument("--c2")
    p.add_argument("--k", type=int)
    p.add_argument("--l2", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("vinberg", help="check a weighted polytope")
    p.add_argument("path")
    p.add_argument("--C", required=True)
    p.add_argument("--D", default="0")
    p.set_defaults(func=cmd_vinberg)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (ParseError, PolytopeError, RaySetError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    except (PreconditionError, OracleBoundError, ShapeError, ValueError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return PRECONDITION_ERROR
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return PARSE_ERROR
    print(report.emit(args.json))
    return 0


if __name__ == "__main__":
    sys.exit(main())
