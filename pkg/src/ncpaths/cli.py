"""Command-line interface.

Subcommands: gen, solve, verify, bench, subdivide, check.
Exit codes: 0 ok, 1 usage, 2 invalid instance, 3 audit/walk failure.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import bench as bench_mod
from . import embedding as emb_mod
from .errors import (
    Disconnected, EnclosesOuterFace, ImbalancedScan, MalformedRotation,
    ModeUnavailable, NcpathsError, NonPositiveWeight, NotAClosedWalk,
    NotAPath, NotPlanar, NotWellFormed, OuterNotAFace, OuterNotSimple,
    ParamOutOfRange, ParseError, RootNotOnOuterFace, RootsNotClockwise,
    SpliceEndpointNotOnParent, TerminalNotOnBoundary, WalkEscaped,
    WeightCapExceeded,
)
from .generate import (corner_pair, disk_instance, grid_instance,
                       nested_pairs, random_weights)
from .pathunion import format_result
from .pipeline import solve as solve_pipeline
from .svg import save_svg
from .terminals import check_well_formed
from .verify import audit, check_isp_preservation
from .weights import DEFAULT_WEIGHT_CAP, subdivide_weights

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_AUDIT = 3

_INSTANCE_ERRORS = (
    ParseError, MalformedRotation, NotPlanar, Disconnected, OuterNotAFace,
    OuterNotSimple, TerminalNotOnBoundary, NotWellFormed, ParamOutOfRange,
    NonPositiveWeight, WeightCapExceeded, RootNotOnOuterFace,
    RootsNotClockwise, ImbalancedScan, OSError,
)
_ANALYSIS_ERRORS = (WalkEscaped, SpliceEndpointNotOnParent, NotAClosedWalk,
                    EnclosesOuterFace, NotAPath)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits 2; usage is 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ncpaths",
                description="non-crossing shortest paths on unweighted "
                            "planar graphs, with verification oracles")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate an instance and pairs files")
    g.add_argument("--kind", choices=("grid", "disk"), required=True)
    g.add_argument("--width", type=int, help="grid width")
    g.add_argument("--height", type=int, help="grid height")
    g.add_argument("--n", type=int, help="disk vertex count")
    g.add_argument("--k", type=int, default=1, help="number of pairs")
    g.add_argument("--pair-model", choices=("nested", "corners"),
                   default="nested")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--weight-max", type=int, default=0,
                   help="emit random integer edge weights in [1, W]")
    g.add_argument("--instance-out", required=True)
    g.add_argument("--pairs-out", required=True)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("instance")
    s.add_argument("pairs")
    s.add_argument("--mode", choices=("reference", "incremental"),
                   default="reference")
    s.add_argument("--out", help="result file (stdout when omitted)")
    s.add_argument("--no-paths", action="store_true",
                   help="omit per-pair vertex paths from the result file")
    s.add_argument("--render", metavar="PATH",
                   help="write an SVG figure (needs coords)")
    s.add_argument("--cw-rotations", action="store_true",
                   help="input rotation lists are clockwise; reverse on load")

    v = sub.add_parser("verify", help="solve and audit against the oracles")
    v.add_argument("instance")
    v.add_argument("pairs")
    v.add_argument("--mode", choices=("reference", "incremental"),
                   default="reference")
    v.add_argument("--samples", type=int, default=200,
                   help="sampled distance-preservation triples")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--exhaustive-isp", action="store_true",
                   help="check every face and vertex pair of every X_i")
    v.add_argument("--cw-rotations", action="store_true")

    c = sub.add_parser("check", help="validate instance (and pairs) files")
    c.add_argument("instance")
    c.add_argument("pairs", nargs="?")
    c.add_argument("--cw-rotations", action="store_true")

    d = sub.add_parser("subdivide",
                       help="expand integer weights into unit-length chains")
    d.add_argument("instance", help="instance file with a weights section")
    d.add_argument("--out", required=True)
    d.add_argument("--map-out", help="write 'v v_new' lines")
    d.add_argument("--max-total", type=int, default=DEFAULT_WEIGHT_CAP)

    b = sub.add_parser("bench", help="scaling benchmark on grids")
    b.add_argument("--sizes", required=True,
                   help="comma-separated vertex counts, e.g. 1e4,4e4")
    b.add_argument("--mode", choices=("reference", "incremental"),
                   default="reference")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--k-rule", default="sqrt")
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--out", required=True, help="CSV output path")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ModeUnavailable as exc:
        print(f"ncpaths: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _ANALYSIS_ERRORS as exc:
        print(f"ncpaths: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    except _INSTANCE_ERRORS as exc:
        print(f"ncpaths: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NcpathsError as exc:
        print(f"ncpaths: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _dispatch(args) -> int:
    if args.cmd == "gen":
        return _cmd_gen(args)
    if args.cmd == "solve":
        return _cmd_solve(args)
    if args.cmd == "verify":
        return _cmd_verify(args)
    if args.cmd == "check":
        return _cmd_check(args)
    if args.cmd == "subdivide":
        return _cmd_subdivide(args)
    if args.cmd == "bench":
        return _cmd_bench(args)
    raise AssertionError(args.cmd)


def _cmd_gen(args) -> int:
    if args.kind == "grid":
        if args.width is None or args.height is None:
            raise ParamOutOfRange("grid needs --width and --height")
        raw = grid_instance(args.width, args.height)
    else:
        if args.n is None:
            raise ParamOutOfRange("disk needs --n")
        raw = disk_instance(args.n, seed=args.seed)
    if args.pair_model == "corners":
        if args.kind != "grid":
            raise ParamOutOfRange("--pair-model corners needs a grid")
        pairs = corner_pair(args.width, args.height)
    else:
        pairs = nested_pairs(raw.outer, args.k, seed=args.seed)
    if args.weight_max:
        raw.weights = random_weights(raw.rotations, args.weight_max,
                                     seed=args.seed + 1)
    emb_mod.save_instance(args.instance_out, raw.rotations, raw.outer,
                          coords=raw.coords, weights=raw.weights)
    emb_mod.save_pairs(args.pairs_out, pairs)
    print(f"wrote {args.instance_out} (n={len(raw.rotations)}) and "
          f"{args.pairs_out} (k={len(pairs)})")
    return EXIT_OK


def _cmd_solve(args) -> int:
    emb, _ = emb_mod.load_instance(args.instance,
                                   cw_rotations=args.cw_rotations)
    pairs = emb_mod.load_pairs(args.pairs)
    art = solve_pipeline(emb, pairs, mode=args.mode)
    text = format_result(art.result, include_paths=not args.no_paths)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.render:
        save_svg(args.render, emb, art.result)
    return EXIT_OK


def _cmd_verify(args) -> int:
    emb, _ = emb_mod.load_instance(args.instance,
                                   cw_rotations=args.cw_rotations)
    pairs = emb_mod.load_pairs(args.pairs)
    art = solve_pipeline(emb, pairs, mode=args.mode)
    report = audit(art.result, art.inst, art.genealogy, emb)
    k = art.inst.k
    if k:
        dist_cache: dict = {}
        region_cache: set = set()
        if args.exhaustive_isp:
            levels = range(1, k + 1)
            per_level = 0
        else:
            rng = random.Random(args.seed)
            levels = sorted({k} | {rng.randint(1, k) for _ in range(3)})
            per_level = max(1, args.samples // len(levels))
        for i in levels:
            rep = check_isp_preservation(
                emb, art.timeline, i, samples=per_level,
                seed=args.seed + i, exhaustive=args.exhaustive_isp,
                dist_cache=dist_cache, region_cache=region_cache)
            report.merge(rep)
    sys.stdout.write(report.lines())
    print(f"summary: {'PASS' if report.ok else 'FAIL'} "
          f"({sum(c.passed for c in report.checks)}/{len(report.checks)} "
          f"checks)")
    return EXIT_OK if report.ok else EXIT_AUDIT


def _cmd_check(args) -> int:
    emb, weights = emb_mod.load_instance(args.instance,
                                         cw_rotations=args.cw_rotations)
    print(f"instance ok: n={emb.n} m={emb.m} faces={emb.n_faces} "
          f"boundary={emb.boundary_len()}"
          + (" weighted" if weights else ""))
    if args.pairs:
        pairs = emb_mod.load_pairs(args.pairs)
        witness = check_well_formed(emb, pairs)
        if witness is not None:
            print(f"pairs NOT well-formed: pairs {witness[0]} and "
                  f"{witness[1]} interleave")
            return EXIT_INVALID
        print(f"pairs ok: k={len(pairs)} well-formed")
    return EXIT_OK


def _cmd_subdivide(args) -> int:
    with open(args.instance, "r", encoding="utf-8") as fh:
        rotations, outer, coords, weights = emb_mod.parse_instance_text(
            fh.read(), args.instance)
    if weights is None:
        raise NonPositiveWeight("instance has no weights section")
    new_rot, new_outer, vmap = subdivide_weights(rotations, outer, weights,
                                                 cap=args.max_total)
    emb_mod.save_instance(args.out, new_rot, new_outer)
    if args.map_out:
        with open(args.map_out, "w", encoding="utf-8") as fh:
            for v, nv in enumerate(vmap):
                fh.write(f"{v} {nv}\n")
    print(f"wrote {args.out}: n={len(new_rot)} "
          f"(+{len(new_rot) - len(rotations)} subdivision vertices)")
    return EXIT_OK


def _cmd_bench(args) -> int:
    sizes = [int(float(tok)) for tok in args.sizes.split(",") if tok]
    records = bench_mod.run_bench(sizes, mode=args.mode, reps=args.reps,
                                  seed=args.seed, k_rule=args.k_rule)
    bench_mod.save_csv(args.out, records)
    summary = bench_mod.scaling_summary(records)
    for key, val in summary.items():
        print(f"{key}: {val:.4f}")
    print(f"wrote {args.out} ({len(records)} rows)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
