"""Command-line interface: quantify, compare, generate, evaluate.

Exit codes: 0 success, 1 domain/evaluation error, 2 I/O or parse error.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import baselines, evaluation, generators
from .core import QuantizationParams, ddqc_distance, quantify
from .degree_stats import from_graph
from .errors import DDQCError, ParseError
from .generators import MODELS, LabeledGraph, ModelSpec
from .graph_io import read_edge_list
from .manifest import load_corpus, write_corpus

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2
SWEEP_ALPHAS = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
SWEEP_GAMMAS = tuple(round(i / 10, 1) for i in range(1, 21))


def _floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _methods(text: str) -> list[str]:
    if text == "all":
        return list(evaluation.METHODS)
    out = [m.strip() for m in text.split(",") if m.strip()]
    bad = [m for m in out if m not in evaluation.METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {evaluation.METHODS} or 'all'")
    return out


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0, help="region width multiplier (default 1)")
    p.add_argument("--beta", type=int, default=3, help="granularity exponent, 2**beta intervals per region (default 3)")
    p.add_argument("--gamma", type=float, default=0.8, help="granularity discount (default 0.8)")


def _params(args) -> QuantizationParams:
    return QuantizationParams(args.alpha, args.beta, args.gamma)


# --- quantify / compare ------------------------------------------------------


def cmd_quantify(args, out) -> int:
    dd = from_graph(read_edge_list(args.graph))
    q = quantify(dd, _params(args))
    summary = {"n": dd.n_nodes, "mean": dd.mean, "std": dd.std,
               "min": dd.min_degree, "max": dd.max_degree}
    if args.format == "json":
        out.write(json.dumps({**summary, **q.to_dict()}) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(list(summary) + ["alpha", "beta"] + [f"idp_{i}" for i in range(len(q.idp))])
        w.writerow([repr(v) if isinstance(v, float) else v for v in summary.values()]
                   + [repr(q.alpha), q.beta] + [repr(x) for x in q.idp.tolist()])
    return EXIT_OK


def compare_distributions(dd1, dd2, method: str, params: QuantizationParams, allow_degenerate_fit=False) -> float:
    if method == "ddqc":
        return ddqc_distance(quantify(dd1, params), quantify(dd2, params), params.gamma)
    if method == "ks":
        return baselines.ks_distance(dd1, dd2)
    if method == "powerlaw":
        return baselines.powerlaw_distance(dd1, dd2, allow_degenerate_fit)
    if method == "percentiles":
        return baselines.percentiles_distance(baselines.percentiles_quantify(dd1), baselines.percentiles_quantify(dd2))
    raise ValueError(f"unknown method {method!r}")


def cmd_compare(args, out) -> int:
    dd1 = from_graph(read_edge_list(args.graph_a))
    dd2 = from_graph(read_edge_list(args.graph_b))
    value = compare_distributions(dd1, dd2, args.method, _params(args), args.allow_degenerate_fit)
    out.write(f"{value!r}\n")
    return EXIT_OK


# --- generate ----------------------------------------------------------------


def _model_name(text: str) -> str:
    name = text.upper()
    if name not in MODELS:
        raise argparse.ArgumentTypeError(f"unknown model {text!r}; choose from {MODELS}")
    return name


def _explicit_spec(args) -> ModelSpec:
    m, n = args.model, args.n
    if n is None:
        raise DDQCError("--n is required unless --sample or --dataset is given")

    def need(name):
        value = getattr(args, name)
        if value is None:
            raise DDQCError(f"model {m} needs --{name.replace('_', '-')}")
        return value

    params: dict
    if m == "BA":
        params = {"k": need("k")}
    elif m == "CM":
        params = {"k": need("k"), "beta": need("beta_cm")}
    elif m == "ER":
        params = {"density": need("density")}
    elif m == "FF":
        params = {"p": need("p"), "pb": args.pb}
    elif m == "KG":
        init = _floats(need("initiator"))
        if len(init) != 4:
            raise DDQCError("--initiator takes four comma-separated values")
        k_power = need("k_power")
        params = {"initiator": [init[:2], init[2:]], "k_power": k_power}
        n = 2**k_power
    elif m == "RP":
        params = {"gamma": need("gamma_exp")}
    elif m == "WS":
        params = {"k": need("k"), "rewire": args.rewire}
    else:
        params = {"k": need("k")}
    return ModelSpec(m, params, n, args.seed)


def cmd_generate(args, out) -> int:
    n_range = (args.n_min, args.n_max)
    if args.dataset:
        models = [_model_name(x) for x in args.models.split(",")] if args.models else list(MODELS)
        items = generators.generate_dataset(models, args.per_model, args.seed, n_range, args.workers)
    else:
        if args.model is None:
            raise DDQCError("--model is required unless --dataset is given")
        if args.sample:
            spec = generators.instance_spec(args.model, 0, args.seed, n_range)
        else:
            spec = _explicit_spec(args)
        items = [LabeledGraph(spec.build(), spec.model, f"{spec.model}_0000", spec)]
    manifest = write_corpus(items, args.out)
    out.write(f"{manifest}\n")
    return EXIT_OK


# --- evaluate ----------------------------------------------------------------


def _snapshot_order(items) -> list[str]:
    snaps = [it for it in items if it.timestamp]

    def key(it):
        try:
            return (0, float(it.timestamp), it.instance_id)
        except ValueError:
            return (1, it.timestamp, it.instance_id)

    return [it.instance_id for it in sorted(snaps, key=key)]


def run_evaluation(items, experiment: str, methods, params: QuantizationParams, *, ks=(5,),
                   subset_size=None, iterations=100, seed=0, sizes=(), repeats=1,
                   alphas=SWEEP_ALPHAS, gammas=SWEEP_GAMMAS, allow_degenerate_fit=False):
    report = evaluation.EvaluationReport()
    report.meta = {"experiment": experiment, "n_items": len(items), "alpha": params.alpha,
                   "beta": params.beta, "gamma": params.gamma, "seed": seed}
    if experiment == "sweep":
        cells = evaluation.parameter_sweep(items, alphas, gammas, params.beta)
        report.meta["sweep_grid"] = [
            {"alpha": c.alpha, "gamma": c.gamma, "intra": c.intra, "inter": c.inter} for c in cells
        ]
        for c in cells:
            report.add("sweep", "ddqc", f"alpha={c.alpha!r};gamma={c.gamma!r}", c.separation)
        return report

    for method in methods:
        m = evaluation.pairwise_distances(items, method, params, allow_degenerate_fit)
        if experiment == "knn":
            for K in ks:
                if subset_size:
                    acc = evaluation.subset_knn_experiment(m, subset_size, iterations, K, seed)
                else:
                    acc = evaluation.knn_accuracy(m, K)
                report.add("knn", method, f"K={K}", acc)
        elif experiment == "interintra":
            intra, inter = evaluation.intra_inter(evaluation.normalize_zscores(m))
            report.add("interintra", method, "intra", intra)
            report.add("interintra", method, "inter", inter)
        elif experiment == "temporal":
            order = _snapshot_order(items)
            series = evaluation.temporal_neighbor_distance(evaluation.normalize_zscores(m), order)
            for sid in order:
                report.add("temporal", method, sid, series[sid])
        elif experiment == "stability":
            for size, (intra, inter) in evaluation.stability(m, sizes, seed, repeats).items():
                report.add("stability_intra", method, f"size={size}", intra)
                report.add("stability_inter", method, f"size={size}", inter)
        else:
            raise DDQCError(f"unknown experiment {experiment!r}")
    return report


def cmd_evaluate(args, out) -> int:
    items = load_corpus(args.manifest)
    if args.experiment == "stability" and not args.sizes:
        raise DDQCError("--sizes is required for the stability experiment")
    report = run_evaluation(
        items, args.experiment, args.method, _params(args),
        ks=args.k, subset_size=args.subset_size, iterations=args.iterations, seed=args.seed,
        sizes=args.sizes or (), repeats=args.repeats, alphas=args.alphas, gammas=args.gammas,
        allow_degenerate_fit=args.allow_degenerate_fit,
    )
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    json_path = prefix.with_name(prefix.name + ".json")
    csv_path = prefix.with_name(prefix.name + ".csv")
    json_path.write_text(report.to_json(), encoding="utf-8")
    csv_path.write_text(report.to_csv(), encoding="utf-8")
    out.write(report.to_json() if args.format == "json" else report.to_csv())
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ddqc", description="Degree distribution quantification and comparison.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quantify", help="quantify one edge-list file")
    p.add_argument("graph")
    _add_params(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_quantify)

    p = sub.add_parser("compare", help="distance between two edge-list files")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    _add_params(p)
    p.add_argument("--method", choices=evaluation.METHODS, default="ddqc")
    p.add_argument("--allow-degenerate-fit", action="store_true",
                   help="fit a power law even when only one positive degree occurs")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("generate", help="synthesize graphs and a manifest")
    p.add_argument("--model", type=_model_name)
    p.add_argument("--sample", action="store_true", help="draw model parameters from the corpus ranges")
    p.add_argument("--dataset", action="store_true", help="generate every model (or --models) --per-model times")
    p.add_argument("--models", help="comma-separated model subset for --dataset")
    p.add_argument("--per-model", type=int, default=5)
    p.add_argument("--n", type=int)
    p.add_argument("--n-min", type=int, default=generators.DEFAULT_N_RANGE[0])
    p.add_argument("--n-max", type=int, default=generators.DEFAULT_N_RANGE[1])
    p.add_argument("--k", type=int)
    p.add_argument("--beta-cm", type=float, help="copying model uniform-choice probability")
    p.add_argument("--density", type=float)
    p.add_argument("--p", type=float, help="forest fire forward burning probability")
    p.add_argument("--pb", type=float, default=generators.FF_BACKWARD_RATIO)
    p.add_argument("--initiator", help="Kronecker initiator as a,b,c,d (row-major)")
    p.add_argument("--k-power", type=int)
    p.add_argument("--gamma-exp", type=float, help="random power-law exponent")
    p.add_argument("--rewire", type=float, default=generators.WS_REWIRE)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="run an evaluation experiment over a manifest")
    p.add_argument("manifest")
    p.add_argument("--experiment", choices=("knn", "interintra", "temporal", "sweep", "stability"), required=True)
    p.add_argument("--method", type=_methods, default=["ddqc"], help="method list, comma-separated, or 'all'")
    _add_params(p)
    p.add_argument("--k", type=_ints, default=[5], help="kNN K values, comma-separated")
    p.add_argument("--subset-size", type=int, default=None)
    p.add_argument("--iterations", type=int, default=100)
    p.add_argument("--sizes", type=_ints, default=None)
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--alphas", type=_floats, default=list(SWEEP_ALPHAS))
    p.add_argument("--gammas", type=_floats, default=list(SWEEP_GAMMAS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--allow-degenerate-fit", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default="report", help="report path prefix; writes PREFIX.json and PREFIX.csv")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (OSError, ParseError) as exc:
        print(f"ddqc: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DDQCError, ValueError) as exc:
        print(f"ddqc: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
