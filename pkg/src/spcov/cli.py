"""Command line front end.

Subcommands: ruler, graph-ruler, make-instance, estimate, sweep,
toeplitz-bound, lower-bound.  All randomness is controlled by --seed (and
--stream where applicable); no environment variables are consulted.  File
and stdout output is byte-deterministic for fixed flags.

Exit codes: 0 success, 2 usage error (bad flags or values), 1 runtime error
such as a non-PSD instance or a disconnected graph.
"""

import argparse
import os
import sys

from spcov import bench, jsonio, toeplitz
from spcov.errors import SpcovError
from spcov.estimator import EstimatorConfig, estimate
from spcov.graphs import graph_sparse_ruler, make_graph
from spcov.rulers import sqrt_ruler
from spcov.sampling import GaussianSampler, SeededRng

MODE_NAMES = {"single": "single_pair", "averaged": "averaged"}


class UsageError(Exception):
    """Flag-level mistake: reported with exit code 2."""


def _add_graph_flags(parser) -> None:
    parser.add_argument("--graph", required=True,
                        choices=["path", "cycle", "star", "grid",
                                 "complete", "edges"],
                        help="graph family")
    parser.add_argument("--d", type=int, help="node count (path/cycle/complete/edges)")
    parser.add_argument("--branches", type=int, help="star branch count")
    parser.add_argument("--depth", type=int, help="star branch depth")
    parser.add_argument("--rows", type=int, help="grid rows")
    parser.add_argument("--cols", type=int, help="grid cols")
    parser.add_argument("--edges-file", help="JSON file with [[i,j],...] edges")


def _graph_from_args(args):
    kind = args.graph
    try:
        if kind in ("path", "cycle", "complete"):
            if args.d is None:
                raise UsageError(f"--graph {kind} requires --d")
            return make_graph(kind, d=args.d)
        if kind == "star":
            if args.branches is None or args.depth is None:
                raise UsageError("--graph star requires --branches and --depth")
            return make_graph(kind, branches=args.branches, depth=args.depth)
        if kind == "grid":
            if args.rows is None or args.cols is None:
                raise UsageError("--graph grid requires --rows and --cols")
            return make_graph(kind, rows=args.rows, cols=args.cols)
        if args.d is None or args.edges_file is None:
            raise UsageError("--graph edges requires --d and --edges-file")
        return make_graph(kind, d=args.d, edges=jsonio.load_json(args.edges_file))
    except SpcovError as exc:
        # parameter-shape mistakes are usage errors; connectivity failures
        # and the like stay runtime errors
        from spcov.errors import NotConnectedError

        if isinstance(exc, NotConnectedError):
            raise
        raise UsageError(str(exc)) from exc


def cmd_ruler(args) -> int:
    if args.D < 0:
        raise UsageError("--D must be >= 0")
    r = sqrt_ruler(args.D)
    print(jsonio.dumps_canonical(jsonio.ruler_to_obj(r)))
    return 0


def cmd_graph_ruler(args) -> int:
    g = _graph_from_args(args)
    from spcov.graphs import all_pairs_shortest_paths

    t = all_pairs_shortest_paths(g)
    gr = graph_sparse_ruler(g, t, sqrt_ruler(t.diameter))
    print(jsonio.dumps_canonical({
        "D": gr.diameter,
        "esc": gr.size,
        "marks": list(gr.positions),
        "nodes": list(gr.nodes),
    }))
    return 0


def _base_vector(args, diameter: int):
    if (args.decay is None) == (args.a_file is None):
        raise UsageError("provide exactly one of --decay or --a-file")
    if args.decay is not None:
        return [args.decay ** s for s in range(diameter + 1)]
    a = jsonio.load_json(args.a_file)
    if not isinstance(a, list):
        raise UsageError("--a-file must contain a JSON array")
    return [float(v) for v in a]


def cmd_make_instance(args) -> int:
    g = _graph_from_args(args)
    from spcov.graphs import all_pairs_shortest_paths
    from spcov.model import make_psd_instance

    t = all_pairs_shortest_paths(g)
    inst = make_psd_instance(g, _base_vector(args, t.diameter))
    jsonio.write_json(args.out, jsonio.instance_to_obj(inst))
    return 0


def cmd_estimate(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if args.seed < 0 or args.stream < 0:
        raise UsageError("--seed and --stream must be >= 0")
    inst = jsonio.instance_from_obj(jsonio.load_json(args.instance))
    table = inst.distances
    ruler = sqrt_ruler(table.diameter)
    gr = graph_sparse_ruler(inst.graph, table, ruler)
    mask = tuple(sorted(gr.nodes))
    sampler = GaussianSampler(inst)
    rng = SeededRng(args.seed, stream=args.stream)
    samples = sampler.draw_masked_batch(rng, args.n, mask)
    cfg = EstimatorConfig(n=args.n, mode=MODE_NAMES[args.mode],
                          seed=args.seed, stream=args.stream)
    report = estimate(samples, gr, table, cfg, sigma_true=inst.sigma)

    obj = {
        "a_hat": list(report.a_hat),
        "esc": report.esc,
        "vsc": report.vsc,
        "spectral_rel_err": report.spectral_rel_err,
        "frob_rel_err": report.frob_rel_err,
        "max_entry_err": report.max_entry_err,
    }
    if inst.graph.kind == "path":
        if args.eps <= 0:
            raise UsageError("--eps must be > 0")
        obj["toeplitz_bound"] = toeplitz.circulant_spectral_bound(report.a_hat)
        obj["le_certificate"] = toeplitz.le_certificate(inst.a - report.a_hat)
        obj["kappa"] = toeplitz.kappa(inst, ruler, args.eps)
    jsonio.write_json(args.out, obj)
    print(f"esc={report.esc} vsc={report.vsc} "
          f"spectral_rel={jsonio.fmt_float(report.spectral_rel_err)}")
    return 0


def _parse_n_list(text):
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--n must be a comma-separated integer list: {text!r}") from exc


def cmd_sweep(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.seed < 0:
        raise UsageError("--seed must be >= 0")
    inst = jsonio.instance_from_obj(jsonio.load_json(args.instance))
    try:
        cfg = bench.SweepConfig(instance=inst, n_list=_parse_n_list(args.n),
                                trials=args.trials, seed=args.seed,
                                mode=MODE_NAMES[args.mode], timing=args.timing)
    except SpcovError as exc:
        raise UsageError(str(exc)) from exc
    rows, aggregates = bench.run_sweep(cfg)
    with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(jsonio.sweep_rows_to_csv(rows))
    jsonio.write_json(_aggregate_path(args.out), {"aggregates": aggregates})
    return 0


def _aggregate_path(csv_path: str) -> str:
    base, ext = os.path.splitext(csv_path)
    return base + ".agg.json" if ext == ".csv" else csv_path + ".agg.json"


def cmd_toeplitz_bound(args) -> int:
    a = jsonio.load_json(args.a)
    if not isinstance(a, list) or not a:
        raise UsageError("--a must point to a nonempty JSON array")
    bound = toeplitz.circulant_spectral_bound([float(v) for v in a])
    print(jsonio.dumps_canonical({"toeplitz_bound": bound}))
    return 0


def cmd_lower_bound(args) -> int:
    if args.d < 1 or not 1 <= args.s <= args.d:
        raise UsageError("need --d >= 1 and 1 <= --s <= --d")
    if args.eps < 0:
        raise UsageError("--eps must be >= 0")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    report = bench.lower_bound_report(args.d, args.s, args.eps, args.n)
    print(jsonio.dumps_canonical({
        "kl": report.kl,
        "tv_upper": report.tv_upper,
        "distinguishable": report.distinguishable,
        "n_star": report.n_star,
        "spectral_gap": report.spectral_gap,
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spcov",
        description="Shortest-path covariance estimation with graph sparse rulers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ruler", help="print the sqrt-size ruler for span D")
    p.add_argument("--D", type=int, required=True)
    p.set_defaults(func=cmd_ruler)

    p = sub.add_parser("graph-ruler",
                       help="place the ruler on a graph's diameter path")
    _add_graph_flags(p)
    p.set_defaults(func=cmd_graph_ruler)

    p = sub.add_parser("make-instance",
                       help="generate a PSD covariance instance JSON")
    _add_graph_flags(p)
    p.add_argument("--decay", type=float,
                   help="base vector a_s = decay^s before PSD shrinkage")
    p.add_argument("--a-file", help="JSON array with the base vector")
    p.add_argument("--out", required=True, help="output instance path")
    p.set_defaults(func=cmd_make_instance)

    p = sub.add_parser("estimate", help="run the masked-sample estimator")
    p.add_argument("--instance", required=True)
    p.add_argument("--n", type=int, required=True, help="vector sample count")
    p.add_argument("--mode", choices=sorted(MODE_NAMES), default="single")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--eps", type=float, default=1.0,
                   help="target relative error for the kappa diagnostic")
    p.add_argument("--out", required=True, help="output report path")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("sweep", help="error sweep over sample counts and trials")
    p.add_argument("--instance", required=True)
    p.add_argument("--n", required=True, help="comma-separated ascending sample counts")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=sorted(MODE_NAMES), default="single")
    p.add_argument("--timing", action="store_true",
                   help="record real wall times (breaks byte reproducibility)")
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("toeplitz-bound",
                       help="circulant spectral bound for a Toeplitz first row")
    p.add_argument("--a", required=True, help="JSON array file")
    p.set_defaults(func=cmd_toeplitz_bound)

    p = sub.add_parser("lower-bound",
                       help="spiked-pair distinguishability diagnostics")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lower_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (SpcovError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
