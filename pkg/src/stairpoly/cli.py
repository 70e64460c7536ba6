"""Command-line front end: ``stairpoly <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import arrays, decomp, ehrhart, facets, latticeoracle, transfer
from .cache import ResultCache, default_cache_path, make_key
from .exactcore import positive_real_root_count
from .transfer import GuardExceeded
from .verify import EXIT_GUARD, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, RunConfig, verify_all

log = logging.getLogger("stairpoly")


def _emit(args, payload, pretty_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in pretty_lines:
            print(line)


def _cache(args):
    if args.no_cache:
        return None
    return ResultCache(args.cache or default_cache_path())


def cmd_transfer(args):
    tm = transfer.build_transfer_matrix(args.t, force=args.force)
    payload = tm.to_json()
    lines = [f"partitions: {[list(p) for p in tm.index.parts]}"]
    lines += [" ".join(str(v) for v in row) for row in tm.entries]
    if args.char_poly:
        f = transfer.char_poly_ft(args.t, force=args.force)
        payload["char_poly"] = f.to_json()
        payload["positive_real_roots"] = positive_real_root_count(f)
        lines.append(f"f_{args.t}(lambda) = {f.pretty('lambda')}")
    if args.eval is not None:
        v = transfer.evaluate_e(args.eval, args.t, force=args.force)
        payload["e"] = {"n": args.eval, "t": args.t, "value": str(v)}
        lines.append(f"e(P_{args.eval},{args.t}) = {v}")
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_zero(text):
    try:
        r, s = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,s but got {text!r}")
    return r, s


def cmd_count(args):
    spec = latticeoracle.FaceSpec(args.n, args.zero or ())
    cache = _cache(args)
    if args.interior:
        kind = "interior"
        thunk = lambda: latticeoracle.count_interior(args.n, args.t, force=args.force)
    elif args.brute:
        kind = "brute"
        thunk = lambda: latticeoracle.count_points_bruteforce(spec, args.t, force=args.force)
    else:
        kind = "face"
        thunk = lambda: latticeoracle.count_points_dp(spec, args.t)
    key = make_key(kind, args.n, args.t, spec.forced_zeros)
    value = cache.get_or_compute(key, thunk) if cache else thunk()
    if cache:
        cache.save()
    _emit(args, {"kind": kind, "n": args.n, "t": args.t,
                 "zeros": [list(z) for z in spec.key()], "count": str(value)}, [str(value)])
    return EXIT_OK


def cmd_ehrhart(args):
    cache = _cache(args)
    if cache is not None and args.verify_cache:
        bad = cache.verify_sample(_recompute_entry, seed=args.seed)
        if bad:
            print(f"cache entries disagree with recomputation: {bad}", file=sys.stderr)
            return EXIT_MISMATCH
    res = ehrhart.ehrhart_poly(args.n, heavy=args.heavy, cache=cache)
    if cache is not None:
        cache.save()
    payload = res.to_json()
    payload["catalan_product"] = str(ehrhart.catalan_product(args.n))
    payload["volume_formula_holds"] = res.relative_volume == ehrhart.catalan_product(args.n)
    lines = [f"e(P_{args.n},t) = {res.poly.pretty()}"]
    if args.n >= 2:
        rep = ehrhart.factor_checks(args.n, result=res)
        payload["factor_checks"] = {"rising": rep.rising_divides, "square": rep.square_divides}
        if rep.rising_divides:
            lines = [rep.pretty()]
    lines.append(f"relative volume = {res.relative_volume}"
                 f" (Catalan product {payload['catalan_product']})")
    _emit(args, payload, lines)
    return EXIT_OK if payload["volume_formula_holds"] else EXIT_MISMATCH


def _recompute_entry(key):
    kind, n, t, zs = key.split("|")
    n, t = int(n), int(t)
    zeros = [tuple(int(v) for v in z.split(",")) for z in zs.split(";") if z]
    if kind == "e":
        return transfer.evaluate_e_truncated(n, t, force=True)
    if kind == "face":
        return latticeoracle.count_points_dp(latticeoracle.FaceSpec(n, zeros), t)
    if kind == "brute":
        return latticeoracle.count_points_bruteforce(latticeoracle.FaceSpec(n, zeros), t, force=True)
    if kind == "interior":
        return latticeoracle.count_interior(n, t, force=True)
    raise ValueError(f"unknown cache kind {kind}")


def cmd_arrays(args):
    n, j = args.n, args.j
    payload = {"n": n, "j": j, "count": str(arrays.count_arrays(n, j)),
               "formula": str(arrays.array_product_formula(n, j))}
    lines = [f"|A_{n}^{j}| = {payload['count']}  (product formula {payload['formula']})"]
    if args.refine:
        rep = arrays.check_narayana_refinement(n)
        payload["profile"] = {str(k): str(v) for k, v in rep["counts"].items()}
        payload["narayana_ok"] = rep["ok"]
        lines.append(f"equality profile: {rep['counts']}  divisor {rep['divisor']}"
                     f"  Narayana match: {rep['ok']}")
    if args.kostant:
        k = arrays.kostant_count(n, force=args.force)
        payload["kostant"] = str(k)
        lines.append(f"Kostant count for A_{n - 1} target: {k}")
    if args.list:
        listed = list(arrays.enumerate_arrays(n, j, heavy=args.heavy))
        payload["arrays"] = [a.format_inline() for a in listed]
        for a in listed:
            lines += ["", a.format_triangle()]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_decomp(args):
    n = args.n
    payload = {"n": n}
    lines = []
    if args.alpha:
        alpha = arrays.TriArray.parse(args.alpha)
        n = payload["n"] = alpha.n
        tri, stages, plan = decomp.build_linear_map(alpha, record=True)
        det = decomp.det_exact(tri.coefficient_matrix())
        style = "letters" if args.letters else "rc"
        payload.update({"alpha": alpha.format_inline(), "det": det,
                        "triangle": tri.format(style)})
        lines.append(f"alpha = {alpha.format_inline()}   det = {det}")
        if args.dump_triangle:
            for k, st in sorted(stages.items()):
                lines += [f"-- after columns 2..{k}", st.dump(style)]
        else:
            lines.append(tri.dump(style))
    if args.tiling_samples:
        rep = decomp.tiling_report(n, args.tiling_samples, args.seed, force=args.force,
                                   strict=False)
        payload["tiling"] = rep.to_json()
        lines.append(f"tiling: {rep.to_json()}")
        if not rep.ok:
            _emit(args, payload, lines)
            return EXIT_MISMATCH
    if not args.alpha and not args.tiling_samples:
        dec = decomp.decomposition(n, force=args.force)
        payload["simplices"] = len(dec.alphas)
        payload["dets"] = sorted(set(dec.dets))
        lines.append(f"{len(dec.alphas)} simplices, determinants {sorted(set(dec.dets))}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_facets(args):
    cache = _cache(args)
    table = facets.facet_table(args.n, heavy=args.heavy, cache=cache)
    if cache is not None:
        cache.save()
    data = facets.load_published(args.fixtures)
    payload = table.to_json()
    lines = [" ".join(str(v) for v in row) for row in table.triangle()]
    checks = {}
    want = args.checks
    if want in ("all", "rect"):
        checks["rectangular"] = facets.check_rectangular(table)["ok"]
    if want in ("all", "vertex"):
        checks["vertex_sum"] = facets.check_vertex_sum(table)["ok"]
    if want in ("all", "c2a"):
        checks["diagonal_relations_published"] = facets.check_diagonal_relations(
            facets.published_diagonals(data))["ok"]
        checks["a_n_computed"] = facets.check_diagonal_relations(
            {args.n: table.diagonal()}, b_range=())["ok"]
    if want == "all":
        checks["symmetries"] = not facets.check_symmetries(table)
        checks["anti_diagonal"] = not facets.check_antidiagonal(table)
    mismatches = facets.compare_with_published(table, data)
    payload["checks"] = checks
    payload["published_mismatches"] = mismatches
    lines += [f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()]
    lines += [f"mismatch: {m}" for m in mismatches]
    _emit(args, payload, lines)
    return EXIT_OK if all(checks.values()) and not mismatches else EXIT_MISMATCH


def cmd_verify(args):
    cfg = RunConfig(heavy=args.heavy, seed=args.seed,
                    cache_path=None if args.no_cache else str(args.cache or default_cache_path()),
                    output="json" if args.json else "pretty", fixtures=args.fixtures,
                    samples=args.samples, only=tuple(args.only or ()))
    status, results = verify_all(cfg, log=None if args.json else print)
    if args.json:
        print(json.dumps([{"name": r.name, "ok": r.ok, "failures": r.failures, "note": r.note}
                          for r in results], indent=2))
    return status


def _load_config(path):
    with open(path) as fh:
        return json.load(fh)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output")
    fmt.add_argument("--pretty", action="store_true", help="human-readable output (default)")
    common.add_argument("--heavy", action="store_true", help="enable the slow tier")
    common.add_argument("--force", action="store_true", help="override desk-scale guards")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cache", type=Path, help="result cache file")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--fixtures", help="alternative published-data JSON file")
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="stairpoly", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("transfer", parents=[common], help="transfer matrix for dilation t")
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--char-poly", action="store_true")
    s.add_argument("--eval", type=int, metavar="N")
    s.set_defaults(func=cmd_transfer)

    s = sub.add_parser("count", parents=[common], help="lattice points of t*P_n or a face")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--zero", type=_parse_zero, action="append", metavar="R,S")
    s.add_argument("--interior", action="store_true")
    s.add_argument("--brute", action="store_true")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("ehrhart", parents=[common], help="Ehrhart polynomial and volume of P_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--verify-cache", action="store_true",
                   help="recompute a 5%% sample of cached counts first")
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("arrays", parents=[common], help="triangular array counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--refine", action="store_true")
    s.add_argument("--kostant", action="store_true")
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_arrays)

    s = sub.add_parser("decomp", parents=[common], help="simplicial decomposition")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--alpha", help='array rows, e.g. "0; 0 1; 0 0 2; 0 0 1 2"')
    s.add_argument("--tiling-samples", type=int, default=0)
    s.add_argument("--dump-triangle", action="store_true")
    s.add_argument("--letters", action="store_true", help="name variables A, B, ... when possible")
    s.set_defaults(func=cmd_decomp)

    s = sub.add_parser("facets", parents=[common], help="facet volume table")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--checks", choices=["all", "rect", "vertex", "c2a"], default="all")
    s.set_defaults(func=cmd_facets)

    s = sub.add_parser("verify", parents=[common], help="run the full verification suite")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--only", action="append",
                   help="restrict to named checks (transfer, values, closed-forms, ...)")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(argv)
    if args.config:
        try:
            defaults = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"cannot read config: {exc}", file=sys.stderr)
            return EXIT_USAGE
        parser.set_defaults(**defaults)
        for sp in parser._subparsers._group_actions[0].choices.values():
            sp.set_defaults(**{k: v for k, v in defaults.items()})
        args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
