"""Experiment driver: scenario configs, the SCORE baseline, result
persistence, and figure emission.

Scenario 1: n=300, k=2, sizes (100, 200), p=0.1, q=0.03, folded-normal
degree parameters. Scenario 2: n=800, k=4, equal sizes, same (p, q),
Pareto degree parameters. Each repetition draws fresh theta and a fresh
graph, runs every requested method, and records the loss against the
ground truth.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from sklearn.cluster import KMeans

from .errors import DegenerateSpectrumError, EmptyResultsError
from .graph import AdjacencyMatrix, LabelVector, labels_from_sizes
from .losses import misclassification, weighted_misclassification
from .model import DcbmParams, sample_adjacency, sample_theta_halfnormal, sample_theta_pareto
from .oracles import MleProblem, mle_search
from .refine import detect_provable, refine_iterated
from .seeding import splitmix64
from .spectral import InitConfig, initialize

CSV_HEADER = "scenario,method,rep,seed,loss,weighted_loss,wall_time_ms"
KNOWN_METHODS = ("init", "refine1", "refine10", "provable", "score", "mle")


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation sweep."""

    name: str
    n: int
    k: int
    sizes: tuple[int, ...]
    p: float
    q: float
    theta_law: dict = field(default_factory=lambda: {"constant": {}})
    repetitions: int = 100
    seed: int = 0
    methods: tuple[str, ...] = ("init", "refine1", "refine10")
    init: InitConfig = InitConfig()

    def __post_init__(self):
        if sum(self.sizes) != self.n:
            raise ValueError(f"sizes sum {sum(self.sizes)} != n {self.n}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        unknown = set(self.methods) - set(KNOWN_METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")


def scenario1(repetitions: int = 100, seed: int = 0,
              methods: tuple[str, ...] = ("init", "refine1", "refine10", "score")) -> ScenarioConfig:
    """Unequal two-community benchmark with folded-normal theta."""
    return ScenarioConfig(
        name="scenario1", n=300, k=2, sizes=(100, 200), p=0.1, q=0.03,
        theta_law={"halfnormal": {"sd": 0.5}},
        repetitions=repetitions, seed=seed, methods=methods,
    )


def scenario2(repetitions: int = 100, seed: int = 0,
              methods: tuple[str, ...] = ("init", "refine1", "refine10", "score")) -> ScenarioConfig:
    """Four equal communities with Pareto theta."""
    return ScenarioConfig(
        name="scenario2", n=800, k=4, sizes=(200, 200, 200, 200), p=0.1, q=0.03,
        theta_law={"pareto": {"shape": 5.0, "scale": 0.8}},
        repetitions=repetitions, seed=seed, methods=methods,
    )


@dataclass(frozen=True)
class RunResult:
    """One (repetition, method) outcome."""

    scenario: str
    method: str
    rep: int
    seed: int
    loss: float | None
    weighted_loss: float | None
    wall_time_ms: float | None
    error: str | None = None


def _draw_theta(law: dict, n: int, seed: int) -> np.ndarray:
    if "halfnormal" in law:
        return sample_theta_halfnormal(n, float(law["halfnormal"]["sd"]), seed)
    if "pareto" in law:
        return sample_theta_pareto(
            n, float(law["pareto"]["shape"]), float(law["pareto"]["scale"]), seed
        )
    if "constant" in law:
        return np.ones(n)
    raise ValueError(f"unknown theta law {sorted(law)}")


def score_baseline(A: AdjacencyMatrix, k: int, seed: int) -> LabelVector:
    """Spectral ratio clustering baseline.

    Takes the k eigenvectors of largest |eigenvalue| of A, forms entrywise
    ratios against the leading one (clipped to +-log n; near-zero leading
    entries are clamped before dividing), and runs k-means on the ratio
    features.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    n = A.n
    try:
        eigvals, eigvecs = np.linalg.eigh(A.matrix.astype(float))
    except np.linalg.LinAlgError as exc:
        raise DegenerateSpectrumError(f"eigendecomposition failed: {exc}") from exc
    order = sorted(range(n), key=lambda i: (-abs(eigvals[i]), -eigvals[i], i))
    U = eigvecs[:, order[:k]]
    u1 = U[:, 0]
    if u1[np.argmax(np.abs(u1))] < 0:
        u1 = -u1
    tol = 1e-10 * max(1.0, float(np.abs(u1).max()))
    denom = np.where(np.abs(u1) < tol, np.where(u1 < 0, -tol, tol), u1)
    T = np.log(max(n, 3))
    feats = np.clip(U[:, 1:] / denom[:, None], -T, T)
    km = KMeans(n_clusters=k, n_init=10, random_state=seed % (2**32))
    labels = km.fit_predict(feats)
    return LabelVector(labels + 1, k)


def run_method(
    method: str,
    A: AdjacencyMatrix,
    params: DcbmParams,
    init_config: InitConfig,
    seed: int,
    p: float,
    q: float,
) -> LabelVector:
    """Dispatch one detection method on one draw."""
    cfg = replace(init_config, seed=seed)
    k = params.k
    if method == "init":
        return initialize(A, k, cfg)
    if method == "refine1":
        return refine_iterated(A, initialize(A, k, cfg), k, iterations=1)
    if method == "refine10":
        return refine_iterated(A, initialize(A, k, cfg), k, iterations=10)
    if method == "provable":
        return detect_provable(A, k, cfg)
    if method == "score":
        return score_baseline(A, k, seed)
    if method == "mle":
        return mle_search(MleProblem(A=A, theta=params.theta, p=p, q=q, k=k))
    raise ValueError(f"unknown method {method!r}")


def run_scenario(config: ScenarioConfig) -> list[RunResult]:
    """Run every (repetition, method) pair; failures become failed rows."""
    z = labels_from_sizes(config.sizes)
    B = np.full((config.k, config.k), config.q)
    np.fill_diagonal(B, config.p)
    results: list[RunResult] = []
    for rep in range(config.repetitions):
        rep_seed = splitmix64(config.seed, rep)
        theta = _draw_theta(config.theta_law, config.n, splitmix64(rep_seed, 0))
        params = DcbmParams(theta=theta, B=B, z=z, clip_probabilities=True)
        A = sample_adjacency(params, splitmix64(rep_seed, 1))
        # init, refine1 and refine10 share one initialization run (seeded
        # independently of the method list, so adding methods never shifts
        # existing results).
        init_seed = splitmix64(rep_seed, 2)
        other_seed = splitmix64(rep_seed, 3)
        cached_z0 = None
        cached_init_ms = 0.0
        for method in config.methods:
            shares_init = method in ("init", "refine1", "refine10")
            method_seed = init_seed if shares_init else other_seed
            start = time.perf_counter()
            try:
                if shares_init:
                    if cached_z0 is None:
                        cfg = replace(config.init, seed=init_seed)
                        t_init = time.perf_counter()
                        cached_z0 = initialize(A, config.k, cfg)
                        cached_init_ms = (time.perf_counter() - t_init) * 1000.0
                        extra_ms = 0.0
                    else:
                        extra_ms = cached_init_ms
                    if method == "init":
                        zhat = cached_z0
                    else:
                        iters = 1 if method == "refine1" else 10
                        zhat = refine_iterated(A, cached_z0, config.k, iterations=iters)
                else:
                    extra_ms = 0.0
                    zhat = run_method(method, A, params, config.init,
                                      method_seed, config.p, config.q)
                elapsed = (time.perf_counter() - start) * 1000.0 + extra_ms
                results.append(RunResult(
                    scenario=config.name, method=method, rep=rep, seed=method_seed,
                    loss=misclassification(zhat, z).value,
                    weighted_loss=weighted_misclassification(zhat, z, theta).value,
                    wall_time_ms=elapsed,
                ))
            except Exception as exc:  # record and continue the sweep
                elapsed = (time.perf_counter() - start) * 1000.0
                results.append(RunResult(
                    scenario=config.name, method=method, rep=rep, seed=method_seed,
                    loss=None, weighted_loss=None, wall_time_ms=elapsed,
                    error=f"{type(exc).__name__}: {exc}",
                ))
    return results


def write_csv(results: list[RunResult], path: str | Path, include_timing: bool = False) -> None:
    """Fixed-schema CSV sink.

    Wall time is nondeterministic, so the column is left empty unless
    ``include_timing`` is set; with it off, output is byte-identical
    across runs with the same seed.
    """
    lines = [CSV_HEADER]
    for r in results:
        loss = "" if r.loss is None else repr(r.loss)
        wl = "" if r.weighted_loss is None else repr(r.weighted_loss)
        wt = f"{r.wall_time_ms:.3f}" if (include_timing and r.wall_time_ms is not None) else ""
        lines.append(f"{r.scenario},{r.method},{r.rep},{r.seed},{loss},{wl},{wt}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class MethodSummary:
    """Order statistics of the loss for one method."""

    method: str
    count: int
    median: float
    q1: float
    q3: float
    mean: float
    sd: float
    minimum: float
    maximum: float


def summarize(results: list[RunResult]) -> list[MethodSummary]:
    """Per-method loss summaries, methods in first-seen order.

    Median and quartiles are exact order statistics (lower median for
    even counts). Failed rows are skipped.
    """
    by_method: dict[str, list[float]] = {}
    for r in results:
        if r.loss is not None:
            by_method.setdefault(r.method, []).append(r.loss)
    if not by_method:
        raise EmptyResultsError("no successful results to summarize")
    out = []
    for method, losses in by_method.items():
        s = sorted(losses)
        n = len(s)
        out.append(MethodSummary(
            method=method, count=n,
            median=s[(n - 1) // 2],
            q1=s[(n - 1) // 4],
            q3=s[(3 * (n - 1)) // 4],
            mean=float(np.mean(s)),
            sd=float(np.std(s, ddof=1)) if n > 1 else 0.0,
            minimum=s[0], maximum=s[-1],
        ))
    return out


def emit_boxplot_svg(summaries: list[MethodSummary], path: str | Path) -> None:
    """Standalone SVG boxplot, byte-deterministic given the input.

    One box per method: quartile box, median line, whiskers at min/max.
    """
    if not summaries:
        raise EmptyResultsError("no summaries to plot")
    width_per = 110
    left, top, plot_h = 60, 20, 260
    width = left + width_per * len(summaries) + 20
    height = top + plot_h + 50
    vmax = max(max(s.maximum for s in summaries), 1e-9)

    def y(v: float) -> str:
        return f"{top + plot_h * (1.0 - v / vmax):.2f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + plot_h}" stroke="black"/>',
        f'<line x1="{left}" y1="{top + plot_h}" x2="{width - 20}" y2="{top + plot_h}" stroke="black"/>',
        f'<text x="10" y="{top + 5}" font-size="11">{vmax:.3f}</text>',
        f'<text x="10" y="{top + plot_h + 4}" font-size="11">0</text>',
    ]
    for idx, s in enumerate(summaries):
        cx = left + width_per * idx + width_per // 2
        bw = 40
        parts += [
            f'<line x1="{cx}" y1="{y(s.minimum)}" x2="{cx}" y2="{y(s.q1)}" stroke="black"/>',
            f'<line x1="{cx}" y1="{y(s.q3)}" x2="{cx}" y2="{y(s.maximum)}" stroke="black"/>',
            f'<line x1="{cx - 12}" y1="{y(s.minimum)}" x2="{cx + 12}" y2="{y(s.minimum)}" stroke="black"/>',
            f'<line x1="{cx - 12}" y1="{y(s.maximum)}" x2="{cx + 12}" y2="{y(s.maximum)}" stroke="black"/>',
            f'<rect x="{cx - bw // 2}" y="{y(s.q3)}" width="{bw}" '
            f'height="{float(y(s.q1)) - float(y(s.q3)):.2f}" fill="none" stroke="black"/>',
            f'<line x1="{cx - bw // 2}" y1="{y(s.median)}" x2="{cx + bw // 2}" y2="{y(s.median)}" '
            f'stroke="black" stroke-width="2"/>',
            f'<text x="{cx}" y="{top + plot_h + 20}" font-size="12" '
            f'text-anchor="middle">{s.method}</text>',
        ]
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def emit_boxplot_png(results: list[RunResult], path: str | Path) -> None:
    """Matplotlib boxplot of raw per-method losses, rendered to a file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_method: dict[str, list[float]] = {}
    for r in results:
        if r.loss is not None:
            by_method.setdefault(r.method, []).append(r.loss)
    if not by_method:
        raise EmptyResultsError("no successful results to plot")
    fig, ax = plt.subplots(figsize=(1.4 * len(by_method) + 2, 4))
    ax.boxplot(list(by_method.values()), tick_labels=list(by_method.keys()), whis=(0, 100))
    ax.set_ylabel("misclassification proportion")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
