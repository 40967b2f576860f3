"""Command-line interface: analyze, table, molien, verify, catalog.

Exit codes: 0 success, 1 usage or invalid input, 2 a computed value
disagreed with a reference expectation or a verification check failed,
3 a budget ran out.  Exponents render as X^{p/q} in markdown output and as
bare fractions in CSV; the epsilon in every exponent is understood and never
printed.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .bounds import BoundReport, analyze_group, exponent_str, schmidt_exponent
from .catalog import CatalogEntry, find_entry, load_catalog
from .config import RunConfig
from .errors import (BudgetError, CatalogError, CycleParseError,
                     PolyParseError)
from .invariants import (PrimarySet, VerificationFailure, secondary_data,
                         verify_primary)
from .molien import (DegreeVector, default_truncation, molien_series,
                     scan_candidates)
from .perm import PermGroup
from .poly import parse_polynomial

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_BUDGET = 3


def _add_common(ap: argparse.ArgumentParser):
    ap.add_argument("--base-degree", type=int, default=1, metavar="L",
                    help="degree l of the base field (default 1)")
    ap.add_argument("--seed", type=int, default=0,
                    help="selection-stream seed (default 0)")
    ap.add_argument("--budget-seconds", type=float, default=600.0,
                    help="wall-clock budget per group (default 600)")
    ap.add_argument("--step-budget", type=int, default=2_000_000_000,
                    help="Groebner monomial-operation budget per run")
    ap.add_argument("--max-candidates", type=int, default=64)
    ap.add_argument("--format", choices=("md", "csv"), default="md",
                    help="table output format")
    ap.add_argument("--order", type=int, default=None, metavar="N",
                    help="Molien truncation override")
    ap.add_argument("--catalog", default=None, metavar="FILE",
                    help="alternate catalog file")


def _config(args) -> RunConfig:
    return RunConfig(truncation=args.order,
                     max_candidates=args.max_candidates,
                     step_budget=args.step_budget,
                     wall_seconds=args.budget_seconds,
                     seed=args.seed,
                     base_degree=args.base_degree,
                     out_format=args.format,
                     workers=getattr(args, "workers", 1))


def _resolve_group(args, entries) -> tuple[str, PermGroup]:
    if args.gens:
        if not args.degree:
            raise SystemExit2("-n/--degree is required with --gens")
        gens = [s.strip() for s in args.gens.split(";") if s.strip()]
        G = PermGroup.from_cycle_strings(gens, args.degree)
        return (args.label or "custom", G)
    if not args.label:
        raise SystemExit2("need a catalog label or --gens")
    entry = find_entry(entries, args.label)
    return (entry.label, entry.group())


class SystemExit2(Exception):
    """Usage-level error: message printed, exit code 1."""


def cmd_analyze(args) -> int:
    entries = load_catalog(args.catalog)
    label, G = _resolve_group(args, entries)
    if not G.is_transitive():
        print(f"error: group {label} is not transitive", file=sys.stderr)
        return EXIT_USAGE
    config = _config(args)
    rep = analyze_group(G, label, config)
    _print_report(rep, config)
    if rep.error:
        return EXIT_BUDGET
    return EXIT_OK


def _print_report(rep: BoundReport, config: RunConfig):
    print(f"group {rep.label or '(unnamed)'}: degree {rep.n}, order {rep.order}")
    print(f"  subfield: {rep.subfield_degree} (t = {rep.t})")
    if rep.error:
        print(f"  budget: {rep.error}")
    if rep.degrees is not None:
        print(f"  invariant degrees: {rep.degrees.render()}")
    if rep.secondary is not None and not rep.is_full_symmetric:
        sec = rep.secondary
        flag = " (degree matches a product of primary degrees)" \
            if sec.g2_degree_ambiguous else ""
        print(f"  secondary invariants: {sec.count}, degrees "
              f"{','.join(str(d) for d in sec.degrees)}; "
              f"g2 degree {sec.g2_degree}{flag}")
    if rep.is_full_symmetric:
        print("  full symmetric group: no secondary invariant, "
              "sieve savings unavailable")
    if rep.theorem_exponent is not None:
        kind = "recovery" if rep.is_full_symmetric else "theorem"
        print(f"  result ({kind}, l={config.base_degree}): "
              f"{exponent_str(rep.theorem_exponent)}")
    print(f"  malle: {exponent_str(rep.malle_a)}  (b_Q = {rep.malle_b_Q})")
    print(f"  schmidt: {exponent_str(rep.schmidt_exponent)}")


TABLE_COLUMNS = ("#", "Order", "Subfield?", "Invariant Degrees", "Result",
                 "Malle", "Schmidt", "Status")


def _row_cells(entry: CatalogEntry, rep: BoundReport, fmt: str) -> list[str]:
    degrees = rep.degrees.render() if rep.degrees else ""
    if fmt == "md":
        result = exponent_str(rep.theorem_exponent) if rep.theorem_exponent \
            is not None else ""
        malle = exponent_str(rep.malle_a)
        schmidt = exponent_str(rep.schmidt_exponent)
    else:
        result = str(rep.theorem_exponent) if rep.theorem_exponent is not None else ""
        malle = str(rep.malle_a)
        schmidt = str(rep.schmidt_exponent)
    order = entry.order_display or str(rep.order)
    return [entry.label, order, rep.subfield_degree, degrees, result, malle,
            schmidt]


def _row_status(entry: CatalogEntry, rep: BoundReport) -> str:
    if rep.error:
        return "budget"
    bad = []
    if entry.expected_order is not None and rep.order != entry.expected_order:
        bad.append("order")
    t = entry.expected_t()
    if t is not None and rep.t != t:
        bad.append("subfield")
    if entry.expected_degrees is not None and rep.degrees is not None \
            and rep.degrees != entry.expected_degrees:
        bad.append("degrees")
    if entry.expected_result is not None \
            and rep.theorem_exponent != entry.expected_result:
        bad.append("result")
    if entry.expected_malle is not None and rep.malle_a != entry.expected_malle:
        bad.append("malle")
    return "MISMATCH(" + ",".join(bad) + ")" if bad else "ok"


def _analyze_entry(payload) -> tuple[int, BoundReport]:
    idx, degree, label, gens, cfg_kwargs = payload
    config = RunConfig(**cfg_kwargs)
    G = PermGroup.from_cycle_strings(list(gens), degree)
    return idx, analyze_group(G, label, config)


def cmd_table(args) -> int:
    entries = [e for e in load_catalog(args.catalog) if e.degree == args.n]
    if not entries:
        print(f"error: no catalog entries of degree {args.n}", file=sys.stderr)
        return EXIT_USAGE
    config = _config(args)
    cfg_kwargs = dict(truncation=config.truncation,
                      max_candidates=config.max_candidates,
                      step_budget=config.step_budget,
                      wall_seconds=config.wall_seconds,
                      seed=config.seed,
                      base_degree=config.base_degree,
                      out_format=config.out_format)
    payloads = [(i, e.degree, e.label, e.generators, cfg_kwargs)
                for i, e in enumerate(entries)]
    reports: list[BoundReport | None] = [None] * len(entries)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            for idx, rep in pool.map(_analyze_entry, payloads):
                reports[idx] = rep
    else:
        for payload in payloads:
            idx, rep = _analyze_entry(payload)
            reports[idx] = rep

    statuses = [_row_status(e, r) for e, r in zip(entries, reports)]
    rows = [_row_cells(e, r, config.out_format) + [s]
            for e, r, s in zip(entries, reports, statuses)]
    if config.out_format == "csv":
        print(",".join(c.lower().replace(" ", "_").rstrip("?")
                       for c in TABLE_COLUMNS))
        for row in rows:
            print(",".join('"%s"' % c.replace('"', '""') if "," in c else c
                           for c in row))
    else:
        widths = [max(len(TABLE_COLUMNS[i]), *(len(r[i]) for r in rows))
                  for i in range(len(TABLE_COLUMNS))]
        header = " | ".join(c.ljust(w) for c, w in zip(TABLE_COLUMNS, widths))
        rule = "-|-".join("-" * w for w in widths)
        print("| " + header + " |")
        print("|-" + rule + "-|")
        for row in rows:
            print("| " + " | ".join(c.ljust(w) for c, w in zip(row, widths))
                  + " |")
    if any(s.startswith("MISMATCH") for s in statuses):
        return EXIT_MISMATCH
    if any(s == "budget" for s in statuses):
        return EXIT_BUDGET
    return EXIT_OK


def cmd_molien(args) -> int:
    entries = load_catalog(args.catalog)
    label, G = _resolve_group(args, entries)
    if not G.is_transitive():
        print(f"error: group {label} is not transitive", file=sys.stderr)
        return EXIT_USAGE
    N = args.order or default_truncation(G.degree)
    N = max(N, default_truncation(G.degree))
    H = molien_series(G, N)
    print(f"molien series of {label} through degree {H.truncation}:")
    print("  " + H.render())
    records = scan_candidates(G, H, args.max_candidates)
    accepted = [r for r in records if r.accepted]
    by_product = sorted(accepted,
                        key=lambda r: (r.vector.product(), r.vector.degrees))
    product_rank = {r.vector: i + 1 for i, r in enumerate(by_product)}
    print(f"accepted candidate vectors ({len(accepted)}), by ascending "
          f"degree sum (product-order rank in brackets):")
    for i, r in enumerate(accepted, start=1):
        print(f"  {i:3d}. {r.vector.render()}  sum={r.vector.total()} "
              f"product={r.vector.product()} "
              f"secondaries={r.numerator.secondary_count} "
              f"[product rank {product_rank[r.vector]}]")
    rejected = [r for r in records if not r.accepted]
    print(f"rejected vectors ({len(rejected)}):")
    for r in rejected:
        print(f"  {r.vector.render()}: {r.status}")
    return EXIT_OK


def cmd_verify(args) -> int:
    entries = load_catalog(args.catalog)
    entry = find_entry(entries, args.label)
    G = entry.group()
    try:
        text = open(args.file).read()
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    try:
        polys = PrimarySet.parse_polys(text, G.degree)
    except PolyParseError as err:
        print(f"parse error in {args.file}: {err}", file=sys.stderr)
        return EXIT_USAGE
    config = _config(args)
    result = verify_primary(G, polys, step_budget=config.step_budget)
    if isinstance(result, VerificationFailure):
        print(f"REJECTED ({result.check}): {result.witness}")
        return EXIT_MISMATCH
    print(f"verified primary invariants for {entry.label}:")
    print(f"  degrees: {','.join(str(d) for d in result.degrees)}")
    print(f"  homogeneous: yes; invariant: yes; zero-dimensional: yes")
    pure = result.pure_power_degrees()
    if pure:
        staircase = ", ".join(f"x{v}^{e}" for v, e in sorted(pure.items()))
        print(f"  pure powers in the staircase: {staircase}")
    H = molien_series(G, max(default_truncation(G.degree),
                             sum(result.degrees)))
    P = PrimarySet(tuple(polys), DegreeVector(result.degrees), result)
    sec = secondary_data(P, G, H)
    print(f"  secondary invariants: {sec.count}; degrees "
          f"{','.join(str(d) for d in sec.degrees)}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = load_catalog(args.catalog)
    if args.action == "list":
        for e in entries:
            cols = [e.label, str(e.degree), e.order_display,
                    e.expected_subfield or "?",
                    e.expected_degrees.render() if e.expected_degrees else "?",
                    str(e.expected_result) if e.expected_result is not None else "?",
                    e.isom]
            print("  ".join(c.ljust(w) for c, w in
                            zip(cols, (6, 2, 8, 7, 20, 6, 0))))
        return EXIT_OK
    if args.action == "validate":
        problems = []
        for e in entries:
            problems.extend(e.validate())
        for p in problems:
            print("FAIL:", p)
        if problems:
            return EXIT_MISMATCH
        print(f"all {len(entries)} entries validate (order, transitivity)")
        return EXIT_OK
    return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gextbounds",
        description="Exact invariant-theory exponent tables for transitive "
                    "permutation groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one group")
    p.add_argument("label", nargs="?", help="catalog label, e.g. 7T5")
    p.add_argument("--gens", help="semicolon-separated cycle strings")
    p.add_argument("-n", "--degree", type=int, help="degree for --gens")
    _add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("table", help="emit a full degree-n table")
    p.add_argument("n", type=int)
    p.add_argument("--workers", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("molien", help="series and candidate degree vectors")
    p.add_argument("label", nargs="?")
    p.add_argument("--gens", help="semicolon-separated cycle strings")
    p.add_argument("-n", "--degree", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_molien)

    p = sub.add_parser("verify", help="verify a primary-invariant file")
    p.add_argument("label")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="catalog utilities")
    p.add_argument("action", choices=("list", "validate"))
    _add_common(p)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (CycleParseError, PolyParseError, CatalogError, KeyError,
            ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as err:
        print(f"budget: {err}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
