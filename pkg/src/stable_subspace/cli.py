"""Command line entry point.

Exit status: 0 success, 1 usage error, 2 data error, 3 numeric failure.
"""

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import io
from .config import RefineConfig, thread_count
from .errors import StableSubspaceError
from .experiments import convergence_curve, fraction_sweep, parse_grid
from .metrics import evaluate
from .pipeline import refine
from .synth import MultiSubspaceSpec, SingleClusterSpec, gen_multi_subspace, gen_single_cluster

log = logging.getLogger("stable_subspace")

EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_json(path, payload):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _single_spec(args):
    ratio = None if args.outlier_energy_ratio <= 0 else args.outlier_energy_ratio
    return SingleClusterSpec(
        n=args.n,
        d=args.d,
        true_dim=args.true_dim,
        alpha=args.alpha,
        seed=args.seed,
        outlier_energy_ratio=ratio,
    )


def _add_single_flags(p):
    p.add_argument("--n", type=int, default=100, help="points in the cluster")
    p.add_argument("--d", type=int, default=100, help="ambient dimension")
    p.add_argument("--true-dim", type=int, default=10)
    p.add_argument("--alpha", type=float, default=0.05, help="outlier fraction")
    p.add_argument(
        "--outlier-energy-ratio",
        type=float,
        default=1.6,
        help="outlier share of singular-value mass as a multiple of alpha; <= 0 matches norms instead",
    )
    p.add_argument("--seed", type=int, default=0)


def cmd_refine(args):
    data = io.load_data(args.data)
    labels = io.load_labels(args.labels)
    truth = io.load_labels(args.truth) if args.truth else None
    cfg = RefineConfig(
        energy_fraction=args.rho_energy,
        sample_fraction=args.rho_sample,
        eta=args.eta,
        p_norm=args.p,
        max_iter=args.max_iter,
        convergence_tol=args.tol,
        min_cluster_size=args.min_cluster_size,
        seed=args.seed,
        rounds=args.rounds,
    )
    report = refine(data, labels, cfg, truth=truth, threads=thread_count())
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    io.save_labels(out / "refined_labels.txt", report.after)
    _write_json(out / "report.json", report.to_dict())
    moved = int(np.sum(report.before != report.after))
    print(f"moved {moved} of {report.before.size} points; wrote {out}")
    return 0


def cmd_synth(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.kind == "single":
        x, mask = gen_single_cluster(_single_spec(args))
        io.save_data(out / "data.csv", x)
        io.save_labels(out / "inlier_mask.txt", mask.astype(np.int64))
    else:
        spec = MultiSubspaceSpec(
            n_clusters=args.clusters,
            points_per_cluster=args.points_per_cluster,
            d=args.d,
            true_dim=args.true_dim,
            noise_sigma=args.noise,
            corruption_fraction=args.corruption,
            seed=args.seed,
        )
        x, truth, corrupted = gen_multi_subspace(spec)
        io.save_data(out / "data.csv", x)
        io.save_labels(out / "true_labels.txt", truth)
        io.save_labels(out / "corrupted_labels.txt", corrupted)
    print(f"wrote {out}")
    return 0


def _write_csv(path, header, rows):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])


def cmd_fig1(args):
    curve = convergence_curve(
        _single_spec(args),
        max_iter=args.max_iter,
        energy_fraction=args.rho_energy,
        sample_fraction=args.rho_sample,
        threads=thread_count(),
    )
    pca = curve["pca_error_vs_oracle"]
    rows = [(i, e, pca) for i, e in zip(curve["iter"], curve["stable_error_vs_oracle"])]
    _write_csv(args.out, ["iter", "stable_error_vs_oracle", "pca_error_vs_oracle"], rows)
    print(f"final stable error {rows[-1][1]:.6g}, PCA error {pca:.6g}; wrote {args.out}")
    return 0


def cmd_fig2(args):
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(f"--grid: {exc}") from None
    if not grid or any(not 0 < g <= 1 for g in grid):
        raise UsageError("--grid values must lie in (0, 1]")
    sweep = fraction_sweep(
        _single_spec(args),
        grid,
        max_iter=args.max_iter,
        energy_fraction=args.rho_energy,
        threads=thread_count(),
    )
    _write_csv(args.out, ["fraction", "steady_state_error"], sweep)
    best = min(sweep, key=lambda r: r[1])
    print(f"argmin fraction {best[0]:g}; wrote {args.out}")
    return 0


def cmd_eval(args):
    pred = io.load_labels(args.pred)
    truth = io.load_labels(args.truth)
    before = io.load_labels(args.before) if args.before else None
    report = evaluate(pred, truth, before=before)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def build_parser():
    parser = _Parser(
        prog="stable-subspace",
        description="Refine subspace-clustering labels with stable residual projections.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("refine", help="refine preliminary cluster labels")
    p.add_argument("--data", required=True, help="CSV, one point per row")
    p.add_argument("--labels", required=True, help="preliminary labels, one per line")
    p.add_argument("--truth", help="ground-truth labels for evaluation")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--rho-energy", type=float, default=0.9)
    p.add_argument("--rho-sample", type=float, default=0.9)
    p.add_argument("--eta", type=float, default=0.5)
    p.add_argument("--p", type=float, default=1.5)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--min-cluster-size", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rounds", type=int, default=1)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("synth", help="write a synthetic data set")
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    single = kinds.add_parser("single", help="one cluster with outliers")
    _add_single_flags(single)
    single.add_argument("--out", required=True)
    single.set_defaults(func=cmd_synth)
    multi = kinds.add_parser("multi", help="union of subspaces with corrupted labels")
    multi.add_argument("--clusters", type=int, default=3)
    multi.add_argument("--points-per-cluster", type=int, default=60)
    multi.add_argument("--d", type=int, default=30)
    multi.add_argument("--true-dim", type=int, default=4)
    multi.add_argument("--noise", type=float, default=0.01)
    multi.add_argument("--corruption", type=float, default=0.1)
    multi.add_argument("--seed", type=int, default=0)
    multi.add_argument("--out", required=True)
    multi.set_defaults(func=cmd_synth)

    p = sub.add_parser("fig1", help="stable vs PCA projector error per iteration")
    _add_single_flags(p)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--rho-energy", type=float, help="default: 1 - alpha")
    p.add_argument("--rho-sample", type=float, help="default: 1 - alpha")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("fig2", help="steady-state error vs subset fraction")
    _add_single_flags(p)
    p.add_argument("--grid", default="0.5:0.05:1.0", help="start:step:stop or a comma list")
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--rho-energy", type=float, help="hold the energy fraction fixed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("eval", help="score labels against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--before", help="labels before refinement, for move counts")
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StableSubspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC if isinstance(exc, np.linalg.LinAlgError) else EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
