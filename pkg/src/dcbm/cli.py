"""Command-line interface.

Subcommands: generate (sample a graph from a parameter file), detect
(run a detection method on a graph file), simulate (scenario sweep with
CSV/figure output), testlab (Monte-Carlo testing-problem study), info
(information quantities for a parameter file).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

import numpy as np

from . import harness
from .errors import ConfigError, DcbmError
from .graph import read_edge_list, read_labels, write_edge_list, write_labels
from .info import ExponentInputs, exponent_I, exponent_J, j_t, t_star
from .losses import misclassification, weighted_misclassification
from .model import load_params, sample_adjacency
from .oracles import MleProblem, mle_search
from .refine import detect_provable, refine_iterated
from .spectral import InitConfig, initialize
from .testlab import TestingInstance, error_bound, simulate_errors


def _add_init_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau", type=float, default=None, help="explicit trim threshold")
    p.add_argument("--c1", type=float, default=5.0, help="data-driven trim multiplier")
    p.add_argument("--restarts", type=int, default=10)
    p.add_argument("--max-iters", type=int, default=100)


def _init_config(args, seed: int) -> InitConfig:
    return InitConfig(tau=args.tau, c1=args.c1, restarts=args.restarts,
                      max_iters=args.max_iters, seed=seed)


def cmd_generate(args) -> int:
    pf = load_params(args.params)
    seed = args.seed if args.seed is not None else pf.seed
    A = sample_adjacency(pf.params, seed)
    write_edge_list(A, args.out)
    if args.labels_out:
        write_labels(pf.params.z, args.labels_out)
    print(json.dumps({"n": A.n, "edges": A.edge_count(), "seed": seed, "out": args.out}))
    return 0


def cmd_detect(args) -> int:
    A = read_edge_list(args.graph)
    k = args.k
    cfg = _init_config(args, args.seed)
    if args.method == "init":
        zhat = initialize(A, k, cfg)
    elif args.method == "refine":
        zhat = refine_iterated(A, initialize(A, k, cfg), k, iterations=1)
    elif args.method == "refine10":
        zhat = refine_iterated(A, initialize(A, k, cfg), k, iterations=10)
    elif args.method == "provable":
        zhat = detect_provable(A, k, cfg)
    elif args.method == "score":
        zhat = harness.score_baseline(A, k, args.seed)
    elif args.method == "mle":
        if args.p is None or args.q is None:
            raise ConfigError("--method mle requires --p and --q")
        theta = (np.loadtxt(args.theta_file, ndmin=1) if args.theta_file
                 else np.ones(A.n))
        zhat = mle_search(MleProblem(A=A, theta=theta, p=args.p, q=args.q,
                                     k=k, beta=args.beta, delta=args.delta))
    else:
        raise ConfigError(f"unknown method {args.method!r}")

    out: dict = {"method": args.method, "n": A.n, "k": k}
    if args.out:
        write_labels(zhat, args.out)
        out["labels_out"] = args.out
    else:
        out["labels"] = zhat.labels.tolist()
    if args.truth:
        z = read_labels(args.truth, k=k)
        out["loss"] = misclassification(zhat, z).value
        out["weighted_loss"] = weighted_misclassification(
            zhat, z, np.ones(A.n)).value
    print(json.dumps(out))
    return 0


def _scenario_from_config(doc: dict) -> harness.ScenarioConfig:
    overrides = {}
    for key in ("repetitions", "seed"):
        if key in doc:
            overrides[key] = int(doc[key])
    if "methods" in doc:
        overrides["methods"] = tuple(doc["methods"])
    name = doc.get("scenario")
    if name == "scenario1":
        return harness.scenario1(**overrides)
    if name == "scenario2":
        return harness.scenario2(**overrides)
    if name is not None:
        raise ConfigError(f"unknown built-in scenario {name!r}")
    try:
        return harness.ScenarioConfig(
            name=doc["name"], n=int(doc["n"]), k=int(doc["k"]),
            sizes=tuple(int(s) for s in doc["sizes"]),
            p=float(doc["p"]), q=float(doc["q"]),
            theta_law=doc.get("theta_law", {"constant": {}}),
            **overrides,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid scenario config: {exc}") from exc


def cmd_simulate(args) -> int:
    try:
        doc = json.loads(open(args.config, encoding="utf-8").read())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    config = _scenario_from_config(doc)
    results = harness.run_scenario(config)
    harness.write_csv(results, args.out, include_timing=args.timing)
    artifacts = {"csv": args.out}
    summaries = harness.summarize(results)
    if args.svg:
        harness.emit_boxplot_svg(summaries, args.svg)
        artifacts["svg"] = args.svg
    if args.png:
        harness.emit_boxplot_png(results, args.png)
        artifacts["png"] = args.png
    print(json.dumps({
        "scenario": config.name,
        "rows": len(results),
        "failed": sum(1 for r in results if r.error is not None),
        "summaries": [asdict(s) for s in summaries],
        "artifacts": artifacts,
    }))
    return 0


def cmd_testlab(args) -> int:
    theta = np.ones(args.m + args.m1)
    instance = TestingInstance(theta0=args.theta0, theta=theta, m=args.m,
                               m1=args.m1, p=args.p, q=args.q)
    est = simulate_errors(instance, args.test, args.reps, args.seed)
    print(json.dumps({
        "test": args.test, "error": est.error, "se": est.se,
        "type1": est.type1, "type2": est.type2,
        "bound": error_bound(args.theta0, args.m, args.p, args.q),
    }))
    return 0


def cmd_info(args) -> int:
    pf = load_params(args.params)
    params = pf.params
    k = params.k
    offdiag = params.B[~np.eye(k, dtype=bool)]
    p = float(params.B.diagonal().min())
    q = float(offdiag.max()) if offdiag.size else 0.0
    sizes = tuple(int(s) for s in params.z.community_sizes())
    inputs = ExponentInputs(theta=params.theta, p=p, q=q, k=k,
                            beta=args.beta, sizes=sizes)
    ts = t_star(sizes)
    print(json.dumps({
        "I": exponent_I(inputs),
        "J": exponent_J(inputs),
        "t_star": ts,
        "J_t_star": j_t(ts, p, q),
    }))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcbm",
                                     description="Degree-corrected block model toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample a graph from a parameter file")
    g.add_argument("--params", required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--labels-out")
    g.add_argument("--seed", type=int, default=None)
    g.set_defaults(func=cmd_generate)

    d = sub.add_parser("detect", help="run a detection method on a graph file")
    d.add_argument("graph")
    d.add_argument("--method", required=True,
                   choices=["init", "refine", "refine10", "provable", "score", "mle"])
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--truth", help="label file; emits loss when provided")
    d.add_argument("--out", help="write estimated labels to this file")
    _add_init_flags(d)
    d.add_argument("--p", type=float, default=None, help="within probability (mle)")
    d.add_argument("--q", type=float, default=None, help="cross probability (mle)")
    d.add_argument("--beta", type=float, default=1.0)
    d.add_argument("--delta", type=float, default=0.1)
    d.add_argument("--theta-file", help="one theta value per line (mle)")
    d.set_defaults(func=cmd_detect)

    s = sub.add_parser("simulate", help="run a scenario sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True, help="CSV output path")
    s.add_argument("--svg", help="boxplot SVG output path")
    s.add_argument("--png", help="boxplot PNG output path (matplotlib)")
    s.add_argument("--timing", action="store_true",
                   help="record wall time in the CSV (breaks byte determinism)")
    s.set_defaults(func=cmd_simulate)

    t = sub.add_parser("testlab", help="Monte-Carlo testing-problem study")
    t.add_argument("--m", type=int, required=True)
    t.add_argument("--m1", type=int, default=None)
    t.add_argument("--p", type=float, required=True)
    t.add_argument("--q", type=float, required=True)
    t.add_argument("--theta0", type=float, default=1.0)
    t.add_argument("--reps", type=int, default=10000)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--test", choices=["counting", "lrt"], default="counting")
    t.set_defaults(func=cmd_testlab)

    i = sub.add_parser("info", help="information quantities for a parameter file")
    i.add_argument("--params", required=True)
    i.add_argument("--beta", type=float, default=1.0)
    i.set_defaults(func=cmd_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "m1", None) is None and args.command == "testlab":
        args.m1 = args.m
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DcbmError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
