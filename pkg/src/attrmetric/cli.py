"""Command-line driver: generate sets, compute distances, run the metric, sweep.

Exit codes: 0 success, 1 runtime/validation failure, 2 usage error.  All
randomness flows from --seed (default fixed, never time-based).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .calibrate import (
    DEFAULT_GRID,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EvalConfig,
    evaluate_meaningfulness,
    gen_noise,
    pipeline_split,
)
from .errors import AttrMetricError
from .matio import load_manifest, read_matrix, write_matrix, write_report
from .solver import DEFAULT_MAX_ITER, DEFAULT_TOL, distance
from .sweep import compute_sweep, sweep_table
from .synth import (
    MixtureSpec,
    hull_combination_set,
    mixture_set,
    planted_flip_set,
    structured_meaningful_set,
)

KINDS = ("lsq", "cvx", "jp")


def _parse_grid(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


def _add_solver_flags(p):
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="attrmetric",
        description="Meaningfulness scoring for binary attribute sets.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate synthetic attribute sets")
    g.add_argument(
        "--kind",
        required=True,
        choices=("noise", "planted", "hull", "mixture", "meaningful", "split"),
    )
    g.add_argument("--n", type=int, help="number of images (noise/meaningful)")
    g.add_argument("--k", type=int, help="number of attributes to generate")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--s", help="source meaningful set (planted/hull/mixture/split)")
    g.add_argument("--flip-rate", type=float, default=0.1)
    g.add_argument("--fraction", type=float, help="meaningful fraction (mixture)")
    g.add_argument("--support", type=int, default=3, help="nonzeros per hull column")
    g.add_argument("--ratio", type=float, default=0.5, help="S1 share (split)")
    g.add_argument("--out", required=True, help="output matrix path (S1 for split)")
    g.add_argument("--out2", help="second output path (S2 for split)")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("dist", help="distances between two attribute files")
    d.add_argument("--s", required=True, help="meaningful set file")
    d.add_argument("--d", required=True, help="discovered set file")
    d.add_argument("--kind", default="all", choices=KINDS + ("all",))
    d.add_argument("--verbose", action="store_true", help="per-column stats")
    d.add_argument("--table", help="also write a tab-delimited table here")
    _add_solver_flags(d)
    d.set_defaults(func=cmd_dist)

    m = sub.add_parser("metric", help="full meaningfulness evaluation")
    m.add_argument("--manifest", help="JSON manifest with s, d and config")
    m.add_argument("--s", help="meaningful set file")
    m.add_argument("--d", help="discovered set file")
    m.add_argument("--seed", type=int, default=DEFAULT_SEED)
    m.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    m.add_argument("--grid", type=_parse_grid, default=DEFAULT_GRID)
    m.add_argument("--ratio", type=float, default=0.5)
    m.add_argument("--full-delta", action="store_true",
                   help="also report distances against the full meaningful set")
    m.add_argument("--out", required=True, help="report JSON path")
    m.add_argument("--plot", action="store_true",
                   help="render calibration figures next to the report")
    _add_solver_flags(m)
    m.set_defaults(func=cmd_metric)

    w = sub.add_parser("sweep", help="noise-injection sweep table")
    w.add_argument("--s", required=True, help="meaningful set file")
    w.add_argument("--d", action="append", default=[],
                   help="discovered set file (repeatable)")
    w.add_argument("--madd", type=_parse_grid, default=(0, 8, 16, 32, 64, 128, 256),
                   help="added-noise grid")
    w.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    w.add_argument("--kind", default="both", choices=KINDS + ("both", "all"))
    w.add_argument("--seed", type=int, default=DEFAULT_SEED)
    w.add_argument("--ratio", type=float, default=0.5)
    w.add_argument("--out", required=True, help="output table path")
    w.add_argument("--plot", action="store_true",
                   help="render sweep figures next to the table")
    _add_solver_flags(w)
    w.set_defaults(func=cmd_sweep)
    return ap


def _require(ap_error, cond, msg):
    if not cond:
        ap_error(msg)


def cmd_gen(args, parser) -> int:
    kind = args.kind
    if kind in ("noise", "meaningful"):
        _require(parser.error, args.n and args.k, f"--kind {kind} needs --n and --k")
    if kind in ("planted", "hull", "mixture"):
        _require(parser.error, args.s and args.k, f"--kind {kind} needs --s and --k")
    if kind == "mixture":
        _require(parser.error, args.fraction is not None, "--kind mixture needs --fraction")
    if kind == "split":
        _require(parser.error, args.s and args.out2, "--kind split needs --s and --out2")

    if kind == "noise":
        out = gen_noise(args.n, args.k, args.seed)
    elif kind == "meaningful":
        out = structured_meaningful_set(args.n, args.k, seed=args.seed)
    elif kind == "planted":
        out = planted_flip_set(read_matrix(args.s), args.k, args.flip_rate, args.seed)
    elif kind == "hull":
        out = hull_combination_set(read_matrix(args.s), args.k, args.support, args.seed)
    elif kind == "mixture":
        spec = MixtureSpec(args.fraction, args.k, args.flip_rate, args.seed)
        out, realized = mixture_set(read_matrix(args.s), spec)
        print(f"mixture: realized meaningful fraction {realized}")
    else:  # split
        cfg = EvalConfig(ratio=args.ratio, seed=args.seed)
        split = pipeline_split(read_matrix(args.s), cfg)
        write_matrix(split.s1, args.out)
        write_matrix(split.s2, args.out2)
        print(
            f"split: wrote S1 ({split.s1.n_attrs} cols) to {args.out}, "
            f"S2 ({split.s2.n_attrs} cols) to {args.out2}"
        )
        return 0
    write_matrix(out, args.out)
    print(f"gen {kind}: wrote {out.n_images}x{out.n_attrs} matrix to {args.out}")
    return 0


def cmd_dist(args, parser) -> int:
    s = read_matrix(args.s)
    d = read_matrix(args.d)
    kinds = KINDS if args.kind == "all" else (args.kind,)
    results = [distance(k, s, d, args.tol, args.max_iter) for k in kinds]
    for dv in results:
        print(f"delta_{dv.kind} = {dv.value}")
        if args.verbose:
            pc = dv.per_column
            print(
                f"  per-column: min={pc.min()} max={pc.max()} "
                f"mean={pc.mean()} n={pc.size}"
            )
    if args.table:
        lines = ["kind\tvalue"] + [f"{dv.kind}\t{dv.value!r}" for dv in results]
        Path(args.table).write_text("\n".join(lines) + "\n")
    return 0


def cmd_metric(args, parser) -> int:
    if args.manifest:
        manifest = load_manifest(args.manifest)
        s = read_matrix(manifest.s_path)
        d = read_matrix(manifest.d_path)
        config = manifest.config
    else:
        _require(parser.error, args.s and args.d, "metric needs --manifest or --s/--d")
        s = read_matrix(args.s)
        d = read_matrix(args.d)
        config = EvalConfig(
            ratio=args.ratio,
            seed=args.seed,
            grid=tuple(args.grid),
            trials=args.trials,
            tol=args.tol,
            max_iter=args.max_iter,
            include_full_delta=args.full_delta,
        )
    report = evaluate_meaningfulness(s, d, config)
    write_report(report, args.out)
    saturated = any(r.saturated for r in report.results.values())
    print(
        f"gamma_cvx={report.gamma_cvx:.4f} gamma_jp={report.gamma_jp:.4f} "
        f"gamma_tilde={report.gamma_tilde:.4f} saturated={saturated} "
        f"degraded={report.degraded}"
    )
    if args.plot:
        from .plots import plot_report

        fig_path = Path(args.out).with_suffix(".png")
        plot_report(report, fig_path)
        print(f"figure written to {fig_path}")
    return 0


def cmd_sweep(args, parser) -> int:
    s = read_matrix(args.s)
    if args.kind in ("both", "all"):
        kinds = ("cvx", "jp") if args.kind == "both" else KINDS
    else:
        kinds = (args.kind,)
    split = pipeline_split(s, EvalConfig(ratio=args.ratio, seed=args.seed))
    d_sets = [(Path(p).stem, read_matrix(p)) for p in args.d]
    result = compute_sweep(
        split,
        d_sets,
        grid=args.madd,
        trials=args.trials,
        kinds=kinds,
        seed=args.seed,
        tol=args.tol,
        max_iter=args.max_iter,
    )
    Path(args.out).write_text(sweep_table(result))
    print(
        f"sweep: {len(result.labels)} sets x {len(kinds)} kinds x "
        f"{len(result.grid)} grid points written to {args.out}"
    )
    if args.plot:
        from .plots import plot_sweep

        fig_path = Path(args.out).with_suffix(".png")
        plot_sweep(result, fig_path)
        print(f"figure written to {fig_path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except AttrMetricError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
