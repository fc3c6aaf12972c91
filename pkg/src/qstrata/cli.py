"""Command-line frontend.

Exit codes: 0 success, 1 usage error, 2 domain error (invalid index,
bad signature, out-of-catalogue stratum, ...), 3 when `audit` finds
pairing/oracle mismatches.  Output is JSON with --json, otherwise an
aligned table; identical inputs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classes import (
    QdInput,
    audit,
    logan_class,
    qd_class,
    qg_class,
    solve_qg_coefficients,
    weierstrass_class,
)
from .errors import DomainError
from .levelgraphs import DualGraph, enumerate_level_graphs, eval_pnk, grc_admissible, validate_twisted
from .picard import DivisorClass, format_rational, pair
from .strata import Signature, multidegree, quad_components
from .testcurves import TestCurveSpec, curve_functional


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError("expected a comma-separated integer list, got %r" % text)


def _complex_list(text: str) -> list[complex]:
    try:
        return [complex(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise UsageError("expected a comma-separated list of complex numbers, got %r" % text)


def _build_parser() -> _Parser:
    p = _Parser(prog="qstrata", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="emit JSON instead of a table")
        return sp

    sp = with_json(sub.add_parser("class", help="print a divisor class"))
    sp.add_argument("which", choices=["qg", "qd", "logan", "weierstrass"])
    sp.add_argument("--g", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--d", type=str)

    sp = with_json(sub.add_parser("curve", help="print a test-curve functional"))
    sp.add_argument("--curve", required=True, help="FAMILY:i:s, e.g. A:1:2")
    sp.add_argument("--g", type=int, required=True)

    sp = with_json(sub.add_parser("pair", help="pair a test curve with a class"))
    sp.add_argument("--curve", required=True, help="FAMILY:i:s, e.g. A:1:2")
    sp.add_argument("--class", dest="klass", required=True,
                    help="qg:G | qd:G:N:d1,... | logan:G:N:d1,... | weierstrass | JSON file")

    sp = with_json(sub.add_parser("audit", help="pairing-vs-oracle audit at genus g"))
    sp.add_argument("--g", type=int, required=True)

    sp = with_json(sub.add_parser("solve", help="solve the coefficient system at genus g"))
    sp.add_argument("--g", type=int, required=True)

    sp = with_json(sub.add_parser("classify-stratum", help="component count of a quadratic stratum"))
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--mu", type=str, required=True)

    sp = with_json(sub.add_parser("multidegree", help="degree of the tuple-to-Picard map"))
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--d", type=str, required=True)

    sp = with_json(sub.add_parser("levelgraphs", help="enumerate/evaluate level graphs"))
    sp.add_argument("--input", required=True, help="dual-graph JSON file")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--list", action="store_true", help="list level graphs only")
    mode.add_argument("--admissible", action="store_true",
                      help="evaluate residue admissibility per level graph")

    sp = with_json(sub.add_parser("pnk", help="evaluate the root-sum product polynomial"))
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--R", type=str, required=True, help="comma-separated residues")
    sp.add_argument("--budget", type=int, default=4096)

    return p


def _need(args, names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError("--%s is required here" % name)


def _class_from_args(args) -> DivisorClass:
    if args.which == "qg":
        _need(args, ["g"])
        return qg_class(args.g)
    if args.which == "qd":
        _need(args, ["g", "n", "d"])
        return qd_class(QdInput(args.g, args.n, tuple(_int_list(args.d))))
    if args.which == "logan":
        _need(args, ["g", "n", "d"])
        return logan_class(args.g, args.n, _int_list(args.d))
    return weierstrass_class()


def _class_from_spec(text: str) -> DivisorClass:
    if text == "weierstrass":
        return weierstrass_class()
    parts = text.split(":")
    if parts[0] == "qg" and len(parts) == 2:
        return qg_class(int(parts[1]))
    if parts[0] == "qd" and len(parts) == 4:
        return qd_class(QdInput(int(parts[1]), int(parts[2]), tuple(_int_list(parts[3]))))
    if parts[0] == "logan" and len(parts) == 4:
        return logan_class(int(parts[1]), int(parts[2]), _int_list(parts[3]))
    path = Path(text)
    if path.exists():
        try:
            return DivisorClass.from_json(path.read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError("cannot read class file %s: %s" % (path, exc))
    raise UsageError("cannot parse class spec %r" % text)


def _class_table(d) -> str:
    kind = "functional" if hasattr(d, "pair") else "class"
    lines = ["%s on Mbar_{%d,%d}" % (kind, d.g, d.n)]
    lines.append("  lambda  %s" % format_rational(d.lam))
    for j, c in enumerate(d.psi, start=1):
        lines.append("  psi_%-3d %s" % (j, format_rational(c)))
    lines.append("  delta_0 %s" % format_rational(d.delta0))
    for idx, c in sorted(d.boundary.items()):
        lines.append("  %-20s %s" % (idx, format_rational(c)))
    return "\n".join(lines)


def _emit(args, jsonable, table: str) -> None:
    if args.json:
        print(json.dumps(jsonable))
    else:
        print(table)


def _parse_curve(text: str):
    try:
        family, i, s = text.split(":")
        return family.upper(), int(i), int(s)
    except ValueError:
        raise UsageError("--curve must look like A:1:2, got %r" % text)


def _run(args) -> int:
    if args.command == "class":
        cls = _class_from_args(args)
        _emit(args, cls.to_jsonable(), _class_table(cls))
        return 0

    if args.command == "curve":
        family, i, s = _parse_curve(args.curve)
        f = curve_functional(TestCurveSpec(family, args.g, i, s))
        _emit(args, f.to_jsonable(), _class_table(f))
        return 0

    if args.command == "pair":
        family, i, s = _parse_curve(args.curve)
        cls = _class_from_spec(args.klass)
        if cls.n != 2 * cls.g - 2:
            raise UsageError("test curves live on Mbar_{g,2g-2}; class has n=%d" % cls.n)
        spec = TestCurveSpec(family, cls.g, i, s)
        value = pair(curve_functional(spec), cls)
        _emit(
            args,
            {"curve": {"family": family, "i": i, "s": s}, "g": cls.g,
             "pairing": format_rational(value)},
            "%s . class = %s" % (spec, format_rational(value)),
        )
        return 0

    if args.command == "audit":
        report = audit(args.g)
        _emit(args, report.to_jsonable(), report.table())
        return 0 if report.all_match else 3

    if args.command == "solve":
        sol = solve_qg_coefficients(args.g)
        if args.json:
            print(json.dumps(sol.to_jsonable()))
        else:
            lines = ["c_psi = %s" % format_rational(sol.c_psi)]
            for (i, s), c in sorted(sol.coefficients.items()):
                lines.append("c_{%d:%d} = %s" % (i, s, format_rational(c)))
            for i, s in sol.free:
                lines.append("c_{%d:%d} free (not determined by the system)" % (i, s))
            lines.append("rank %d, %d unknowns, %d equations; excluded: %s"
                         % (sol.rank, sol.n_unknowns, sol.n_equations, sol.excluded))
            for (fam, i, s), r in sorted(sol.residuals.items()):
                if r:
                    lines.append("cross-check %s_{%d:%d} residual %s"
                                 % (fam, i, s, format_rational(r)))
            print("\n".join(lines))
        return 0

    if args.command == "classify-stratum":
        mu = _int_list(args.mu)
        expected = args.k * (2 * args.g - 2)
        if sum(mu) != expected:
            raise UsageError(
                "--mu sums to %d but k(2g-2) = %d for --g %d" % (sum(mu), expected, args.g)
            )
        out = quad_components(Signature(args.k, args.g, tuple(mu)))
        jsonable = {"count": out.count, "kind": out.kind, "notes": out.notes}
        _emit(args, jsonable,
              "count %d  kind %s\n%s" % (out.count, out.kind, out.notes))
        return 0

    if args.command == "multidegree":
        value = multidegree(args.g, _int_list(args.d))
        _emit(args, {"g": args.g, "multidegree": value}, str(value))
        return 0

    if args.command == "levelgraphs":
        try:
            text = Path(args.input).read_text()
            graph, residues = DualGraph.from_json(text)
        except DomainError:
            raise
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError("cannot read dual graph %s: %s" % (args.input, exc))
        rel = validate_twisted(graph)
        graphs = enumerate_level_graphs(rel)
        rows = []
        for lg in graphs:
            row = {"levels": list(lg.levels)}
            if not args.list:
                verdict = grc_admissible(lg, residues)
                row["status"] = verdict.status
                row["conditions"] = list(verdict.conditions)
                if verdict.reason:
                    row["reason"] = verdict.reason
            rows.append(row)
        if args.admissible:
            rows = [r for r in rows if r["status"] == "admissible"]
        if args.json:
            print(json.dumps({"k": graph.k, "count": len(rows), "graphs": rows}))
        else:
            lines = ["%d level graph(s)" % len(rows)]
            for row in rows:
                desc = "levels " + ",".join(map(str, row["levels"]))
                if "status" in row:
                    desc += "  " + row["status"]
                    for cond in row["conditions"]:
                        desc += "\n    " + cond
                lines.append(desc)
            print("\n".join(lines))
        return 0

    if args.command == "pnk":
        value = eval_pnk(_complex_list(args.R), args.k, budget=args.budget)
        out = "%.12g%+.12gj" % (value.real, value.imag)
        _emit(args, {"k": args.k, "value": {"re": value.real, "im": value.imag}}, out)
        return 0

    raise UsageError("unknown command")


_LIST_FLAGS = ("--mu", "--d", "--R")


def _merge_list_flags(argv):
    """Join `--mu -1,-1,6` into `--mu=-1,-1,6` so argparse does not read
    a leading minus sign as an option."""
    out = []
    skip = False
    for pos, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _LIST_FLAGS and pos + 1 < len(argv):
            out.append("%s=%s" % (tok, argv[pos + 1]))
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    try:
        args = parser.parse_args(_merge_list_flags(list(argv)))
        return _run(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except DomainError as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
