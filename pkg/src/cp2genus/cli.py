"""Command line front end.

Exit codes: 0 success, 1 usage or parse error, 2 computation error,
3 failed check.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

from . import bounds, closed, oracle
from .bounds import CONVENTIONS, DEFAULT_PRIMES, BoundReport, cp2_report
from .invariants import (
    DEFAULT_TOL,
    InvariantRecord,
    SingularAtOmega,
    invariant_record,
    is_odd_prime,
)
from .knots import KnotError, parse_knot, print_knot

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_CHECK = 0, 1, 2, 3
FORMATS = ("text", "json", "csv", "markdown")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class EngineConfig:
    backend: str = "float"
    tol: float = DEFAULT_TOL
    primes: tuple[int, ...] = DEFAULT_PRIMES
    window: int | None = None


def _primes(text: str) -> tuple[int, ...]:
    try:
        ps = tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    bad = [p for p in ps if not is_odd_prime(p)]
    if bad or not ps:
        raise argparse.ArgumentTypeError(f"not odd primes: {bad or text}")
    return ps


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _markdown(header, rows) -> str:
    lines = ["| " + " | ".join(map(str, header)) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join("" if c is None else str(c) for c in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _text_table(header, rows) -> str:
    cells = [list(map(str, header))] + [["-" if c is None else str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def _table(fmt: str, header, rows) -> str:
    if fmt == "csv":
        return _csv(header, rows)
    if fmt == "markdown":
        return _markdown(header, rows)
    return _text_table(header, rows)


def _banner() -> str:
    return "conventions: " + "; ".join(CONVENTIONS.values()) + "\n"


def _sigma_values(rec: InvariantRecord, primes) -> dict[int, int | str]:
    out: dict[int, int | str] = {}
    for p in primes:
        try:
            out[p] = rec.sigma_p(p)
        except SingularAtOmega:
            out[p] = "singular"
    return out


def invariants_json(knot, rec: InvariantRecord, primes) -> dict:
    return {
        "alexander": str(rec.alexander),
        "signature": rec.signature,
        "sigma_p": {str(p): v for p, v in _sigma_values(rec, primes).items()},
        "arf": rec.arf,
        "tau": {"value": rec.tau.value, "provenance": rec.tau.describe()},
        "g4": {"lower": rec.g4_lower, "upper": rec.g4_upper},
    }


def render_invariants(knot, rec: InvariantRecord, cfg: EngineConfig, fmt: str) -> str:
    inv = invariants_json(knot, rec, cfg.primes)
    if fmt == "json":
        return _dumps({"knot": print_knot(knot), "conventions": CONVENTIONS, "invariants": inv})
    tau = "unknown" if inv["tau"]["value"] is None else inv["tau"]["value"]
    rows = [("knot", print_knot(knot)), ("alexander", inv["alexander"]),
            ("signature", inv["signature"])]
    rows += [(f"sigma_{p}", v) for p, v in inv["sigma_p"].items()]
    rows += [("arf", inv["arf"]), ("tau", f"{tau} ({inv['tau']['provenance']})"),
             ("g4", f"[{inv['g4']['lower']}, {inv['g4']['upper']}]")]
    if fmt == "csv":
        return _csv(("invariant", "value"), rows)
    body = _table(fmt, ("invariant", "value"), rows)
    return (_banner() + "\n" if fmt == "text" else f"_{_banner().strip()}_\n\n") + body


def report_json(rep: BoundReport, cfg: EngineConfig) -> dict:
    return {
        "knot": print_knot(rep.knot),
        "conventions": CONVENTIONS,
        "invariants": invariants_json(rep.knot, rep.record, cfg.primes),
        "degree_rows": [r.as_json() for r in rep.rows],
        "upper_bounds": [c.as_json() for c in rep.upper_candidates],
        "smooth": {"lower": rep.smooth_lower, "upper": rep.smooth_upper},
        "topological": {"lower": rep.topological[0], "upper": rep.topological[1]},
        "notes": rep.notes,
    }


def render_report(rep: BoundReport, cfg: EngineConfig, fmt: str) -> str:
    if fmt == "json":
        return _dumps(report_json(rep, cfg))
    primes = sorted({p for r in rep.rows for p in r.prime_bounds})
    header = ["d", "tau", "even"] + [f"prime_{p}" for p in primes] + ["combined"]
    rows = [[r.d, r.tau_bound, r.even_bound] + [r.prime_bounds.get(p) for p in primes]
            + [r.combined] for r in rep.rows]
    ups = [[c.tag.value, c.degree, c.genus] for c in rep.upper_candidates]
    summary = [["smooth", rep.smooth_lower, rep.smooth_upper],
               ["topological", rep.topological[0], rep.topological[1]]]
    if fmt == "csv":
        return "\n".join([_csv(header, rows), _csv(("tag", "degree", "genus"), ups),
                          _csv(("genus", "lower", "upper"), summary)])
    parts = []
    if fmt == "markdown":
        parts.append(f"## {print_knot(rep.knot)}\n\n_{_banner().strip()}_\n")
    else:
        parts.append(f"knot: {print_knot(rep.knot)}\n" + _banner())
    parts.append(_table(fmt, header, rows))
    parts.append(_table(fmt, ("construction", "degree", "genus"), ups))
    parts.append(_table(fmt, ("genus", "lower", "upper"), summary))
    if rep.notes:
        parts.append("notes:\n" + "".join(f"- {n}\n" for n in rep.notes))
    return "\n".join(parts)


def table_rows(kind: str, max_n: int):
    if kind == "thom":
        return ("d", "G"), [(d, closed.thom_genus(d)) for d in range(max_n + 1)]
    if kind == "corollary":
        return (("n", "trick_genus", "g4", "difference"),
                [(n, closed.trick_genus(n, 0), closed.torus_g4(n), closed.corollary_difference(n))
                 for n in range(1, max_n + 1)])
    if kind == "twocp2":
        header = ("n", "d", "gtilde_sum", "trick_genus", "naive_upper", "best_upper",
                  "difference_rhs", "significant", "difference_achieved")
        rows = []
        for n in range(1, max_n + 1):
            for d in range(n):
                r = closed.closed_report(n, d)
                rows.append((r.n, r.d, r.gtilde_sum, r.trick_genus, r.naive_upper, r.best_upper,
                             r.difference_rhs, str(r.significant).lower(), r.difference_achieved))
        return header, rows
    raise UsageError(f"unknown table {kind!r}")


def render_table(kind: str, max_n: int, fmt: str) -> str:
    header, rows = table_rows(kind, max_n)
    if fmt == "json":
        return _dumps({"table": kind, "max": max_n, "columns": list(header),
                       "rows": [[_jsonable(c) for c in r] for r in rows]})
    return _table(fmt, header, rows)


def _jsonable(c):
    return {"true": True, "false": False}.get(c, c) if isinstance(c, str) else c


# ---------------------------------------------------------------------------
# Cross-checks
# ---------------------------------------------------------------------------

def paper_check(golden=None) -> tuple[bool, str]:
    lines = []
    ok_all = True

    def record(name, failures, total):
        nonlocal ok_all
        ok = not failures
        ok_all &= ok
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name} ({total - len(failures)}/{total})")
        lines.extend(f"      {f}" for f in failures[:5])

    golden_results = oracle.run_golden_suite(path=golden)
    record("golden table", [f"{e.describe()} [{e.provenance}]: got {a}"
                            for e, ok, a in golden_results if not ok], len(golden_results))
    record("difference identity, 0 <= d < n <= 50", oracle.difference_identity(50),
           50 * 51 // 2)
    corpus = oracle.corpus_matrices()
    record("backend agreement, float vs exact signatures", oracle.backend_agreement(),
           len(corpus) * len(oracle.AGREEMENT_PRIMES))
    records = oracle.random_records()
    record("oracle agreement, windowed vs brute-force degree search",
           oracle.oracle_agreement(records), len(records))
    lines.append(f"overall: {'PASS' if ok_all else 'FAIL'}")
    return ok_all, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--sigma-backend", choices=("float", "exact"), default="float")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES,
                        help="comma-separated odd primes for sigma_p columns")
    common.add_argument("--golden", default=None, help="alternate golden table file")

    parser = _Parser(prog="cp2genus", description="Genus bounds for knots in punctured CP^2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("invariants", parents=[common], help="abelian invariants and tau")
    p.add_argument("expr")
    p = sub.add_parser("cp2", parents=[common], help="CP^2-genus bound report")
    p.add_argument("expr")
    p.add_argument("--window", type=_positive, default=None,
                   help="search at least this many degrees (never narrows the window)")
    p = sub.add_parser("tables", parents=[common], help="closed-surface genus tables")
    p.add_argument("kind", choices=("thom", "twocp2", "corollary"))
    p.add_argument("--max", type=_positive, default=10, dest="max_n")
    sub.add_parser("paper-check", parents=[common], help="run every cross-check")
    return parser


def _shield_expression(argv: list[str]) -> list[str]:
    """Insert ``--`` so a leading-minus knot expression is not read as a flag."""
    if len(argv) >= 2 and argv[0] in ("invariants", "cp2") and argv[1].startswith("-") \
            and not argv[1].startswith("--") and argv[1] not in ("-h",):
        return [argv[0]] + argv[2:] + ["--", argv[1]]
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_shield_expression(argv))
    cfg = EngineConfig(args.sigma_backend, args.tol, args.primes, getattr(args, "window", None))
    out, err = sys.stdout, sys.stderr
    try:
        if args.command in ("invariants", "cp2"):
            try:
                knot = parse_knot(args.expr)
            except KnotError as exc:
                print(f"cp2genus: parse error: {exc}", file=err)
                return EXIT_USAGE
            rec = invariant_record(knot, backend=cfg.backend, tol=cfg.tol)
            if args.command == "invariants":
                out.write(render_invariants(knot, rec, cfg, args.format))
            else:
                rep = cp2_report(knot, record=rec, window=cfg.window, primes_at_zero=cfg.primes)
                out.write(render_report(rep, cfg, args.format))
            return EXIT_OK
        if args.command == "tables":
            out.write(render_table(args.kind, args.max_n, args.format))
            return EXIT_OK
        ok, text = paper_check(args.golden)
        out.write(text)
        return EXIT_OK if ok else EXIT_CHECK
    except (ArithmeticError, ValueError, bounds.BoundsConsistencyError,
            closed.DifferenceIdentityError, OSError) as exc:
        print(f"cp2genus: computation error: {exc}", file=err)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
