"""Command-line front end.

Exit codes: 0 all observations consistent, 1 a fixture or prediction
mismatch (or a not-CI report under --expect-ci), 2 usage or parse error,
3 a budget/size refusal.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from typing import Sequence

from . import autengine, digraph
from .autengine import EngineLimitExceeded
from .cache import CertificateCache, default_cache_path
from .citester import (
    DEFINITIONAL_BUDGET, BudgetExceeded, SweepResult, cayley_of, is_ci, m_dci_status,
)
from .fixtures import builtin_fixtures
from .grouplib import GroupSpec, format_set, parse_group, parse_set
from .permgroup import DEFAULT_CAP, GroupTooLarge

REPORT_FIELDS = ["group", "n", "valency", "mode", "set", "verdict", "method", "aut_order",
                 "normal", "witness", "rival_order"]
SWEEP_FIELDS = ["group", "n", "valency", "mode", "connected_only", "total_sets", "ci_count",
                "counterexamples", "raw_total", "raw_ci", "predicted", "observed", "match", "sets"]

ELEMENT_HELP = """\
element syntax: 1 (or e), a, a^i, a^i*b, b; exponents are reduced mod n and
whitespace is ignored.  A connection set is a comma-separated element list,
e.g. "a,a^-1,a^2*b,b".  Groups: dihedral:N or D2N, cyclic:N or ZN.
"""

REFUSALS = (BudgetExceeded, GroupTooLarge, EngineLimitExceeded)
log = logging.getLogger("cayleyci")


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'3..9', '5,7,11', '4' or a mix like '3..5,9'."""
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


# ---------------------------------------------------------------------------
# rendering


def _emit(rows: list[dict], fields: list[str], fmt: str, out) -> None:
    if fmt == "jsonl":
        for r in rows:
            out.write(json.dumps({k: r[k] for k in fields}) + "\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fields, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    else:
        cells = [[str(r[k]) for k in fields] for r in rows]
        widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fields)]
        out.write("  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip() + "\n")
        for c in cells:
            out.write("  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip() + "\n")


def _yn(v):
    return "n/a" if v is None else ("pass" if v else "fail")


def sweep_record(res: SweepResult) -> dict:
    return {
        "group": res.group.kind, "n": res.n, "valency": res.valency, "mode": res.mode,
        "connected_only": res.connected_only, "total_sets": res.total_sets,
        "ci_count": res.ci_count, "counterexamples": len(res.counterexamples),
        "raw_total": res.raw_total, "raw_ci": res.raw_ci,
        "predicted": _yn(res.predicted), "observed": _yn(res.has_property),
        "match": {None: "n/a", True: "yes", False: "NO"}[res.matches_prediction],
        "sets": ";".join(format_set(c.set, res.group) for c in res.counterexamples),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_report(args, out) -> int:
    spec = parse_group(args.group)
    S = parse_set(args.set, spec)
    rep = is_ci(spec, S, method=args.method, budget=args.budget, cap=args.cap)
    rec = rep.as_record()
    _emit([rec], REPORT_FIELDS, args.format, out)
    if args.format == "table":
        if rep.witness_isomorphism is not None:
            out.write(f"witness isomorphism: {list(rep.witness_isomorphism)}\n")
        if rep.rival_subgroup is not None:
            gens = "; ".join(str(list(g)) for g in rep.rival_subgroup.generators)
            out.write(f"rival regular subgroup generators: {gens}\n")
        nontrivial = [x for x in rep.conjugator_examples if not x.is_identity()]
        for alpha in nontrivial[:1] if rep.is_ci else []:
            out.write(f"conjugator onto R(G): {list(alpha)}\n")
    if args.expect_ci and not rep.is_ci:
        return 1
    return 0


def _open_cache(args):
    if args.no_cache:
        return None
    path = args.cache or default_cache_path()
    return CertificateCache(path, verify_fraction=0.01 if args.verify_cache else 0.0)


def cmd_sweep(args, out) -> int:
    kind = args.group
    if kind not in ("dihedral", "cyclic"):
        raise UsageError("--group must be 'dihedral' or 'cyclic'")
    ns = parse_range(args.n)
    ks = parse_range(args.valency)
    if min(ks) < 1:
        raise UsageError("valency must be positive")
    workers = args.workers or os.cpu_count() or 1
    cache = _open_cache(args)
    results, status = [], 0
    try:
        for n in ns:
            spec = GroupSpec(kind, n)
            for k in ks:
                try:
                    res = m_dci_status(spec, k, args.mode, connected_only=args.connected_only,
                                       verify=not args.no_verify, budget=args.budget,
                                       cap=args.cap, cache=cache, workers=workers)
                except REFUSALS as exc:
                    print(f"refused {spec} valency {k}: {exc}", file=sys.stderr)
                    status = status or 3
                    continue
                results.append(res)
                if args.format == "table":
                    r = sweep_record(res)
                    print(f"{spec} k={k} {args.mode}: {r['ci_count']}/{r['total_sets']} orbits CI,"
                          f" predicted {r['predicted']}, observed {r['observed']}", file=sys.stderr)
                if res.matches_prediction is False:
                    status = 1
    finally:
        if cache is not None:
            print(f"cache: {cache.hits}/{cache.lookups} hits ({100 * cache.hit_rate:.1f}%),"
                  f" {cache.verified} verified, {cache.repaired} repaired", file=sys.stderr)
            cache.close()
    rows = [sweep_record(r) for r in results]
    fields = SWEEP_FIELDS if args.format != "table" else SWEEP_FIELDS[:-1]
    _emit(rows, fields, args.format, out)
    if args.format == "table":
        for r in results:
            for c in r.counterexamples:
                out.write(f"  {r.group} k={r.valency}: {format_set(c.set, r.group)}"
                          f" ~ {format_set(c.witness_T, r.group)} (orbit size {c.orbit_size})\n")
    return 1 if status == 1 else status


def cmd_fixtures(args, out) -> int:
    rows, ok = [], True
    for fx in builtin_fixtures():
        observed, passed = fx.run()
        ok &= passed
        rows.append({"fixture": fx.name, "expected": fx.expected, "observed": observed,
                     "status": "PASS" if passed else "FAIL"})
    _emit(rows, ["fixture", "expected", "observed", "status"], args.format, out)
    return 0 if ok else 1


def cmd_export(args, out) -> int:
    spec = parse_group(args.group)
    g = cayley_of(spec, parse_set(args.set, spec))
    text = digraph.dumps(g)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return 0


def cmd_import(args, out) -> int:
    with open(args.file) as fh:
        g = digraph.read(fh)
    res = autengine.analyze(g)
    rec = {"vertices": g.vertex_count, "arcs": g.arc_count(), "graph": digraph.is_graph(g),
           "strongly_connected": digraph.strongly_connected(g), "aut_order": res.order}
    fields = list(rec)
    if args.against:
        with open(args.against) as fh:
            h = digraph.read(fh)
        phi = autengine.isomorphism(g, h)
        rec["isomorphic"] = phi is not None
        rec["isomorphism"] = " ".join(map(str, phi)) if phi is not None else ""
        fields += ["isomorphic", "isomorphism"]
    _emit([rec], fields, args.format, out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayleyci", description="CI-subset testing for Cayley digraphs "
                                "on dihedral and cyclic groups.", epilog=ELEMENT_HELP,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["table", "csv", "jsonl"], default="table")

    def budgets(sp):
        sp.add_argument("--budget", type=int, default=DEFINITIONAL_BUDGET,
                        help="max candidate subsets for the definitional route")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="max permutations materialized for the Babai route")

    r = sub.add_parser("report", help="decide one connection set", epilog=ELEMENT_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    r.add_argument("--group", required=True)
    r.add_argument("--set", required=True)
    r.add_argument("--method", choices=["both", "definitional", "babai"], default="both")
    r.add_argument("--expect-ci", action="store_true", help="exit 1 if the verdict is not-CI")
    common(r)
    budgets(r)
    r.set_defaults(func=cmd_report)

    s = sub.add_parser("sweep", help="test every connection set of given valencies")
    s.add_argument("--group", required=True, choices=["dihedral", "cyclic"])
    s.add_argument("--n", required=True, help="e.g. 3..9 or 5,7,11")
    s.add_argument("--valency", default="4", help="e.g. 4 or 1..3")
    s.add_argument("--mode", choices=["digraph", "graph"], default="digraph")
    s.add_argument("--connected-only", action="store_true")
    s.add_argument("--workers", type=int, default=0, help="worker processes (default: all cores)")
    s.add_argument("--no-verify", action="store_true",
                   help="skip re-checking counterexamples with the Babai route")
    s.add_argument("--cache", help=f"cache file (default {default_cache_path()})")
    s.add_argument("--no-cache", action="store_true")
    s.add_argument("--verify-cache", action="store_true", help="recompute 1%% of cache hits")
    common(s)
    budgets(s)
    s.set_defaults(func=cmd_sweep)

    f = sub.add_parser("fixtures", help="run the built-in expected-vs-observed checks")
    common(f)
    f.set_defaults(func=cmd_fixtures)

    e = sub.add_parser("export", help="write Cay(G,S) in the text digraph format")
    e.add_argument("--group", required=True)
    e.add_argument("--set", required=True)
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)

    i = sub.add_parser("import", help="read a text digraph; print Aut order, optionally test isomorphism")
    i.add_argument("file")
    i.add_argument("--against", help="second digraph file")
    common(i)
    i.set_defaults(func=cmd_import)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 1) < 0:
        parser.error("--workers must be >= 0")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except REFUSALS as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
