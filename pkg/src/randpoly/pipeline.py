"""End-to-end orchestration: generate f-vector datasets, analyze, report.

Two-phase workflow: `generate` runs the expensive sample -> hull -> f-vector
loop and persists a CSV (one f-vector per row, header f0,f1,...); `analyze`
whitens the dataset and computes the projection Kolmogorov statistic, so
the statistical step can be re-run with a different M, seed, or eigenvalue
threshold without recomputing hulls.
"""

import csv
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fvector, gausstest, stats
from .errors import (
    DegenerateCovariance,
    DegenerateInput,
    MalformedDataset,
    RandpolyError,
    TooManyDegenerateResamples,
    ValidationError,
)
from .hull import convex_hull
from .rng import DistributionKind, StreamKey, derive_seed, make_stream, sample

THREADS_ENV_VAR = "RANDPOLY_THREADS"


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV_VAR, "").strip()
    if env:
        return max(1, int(env))
    return min(os.cpu_count() or 1, 8)


@dataclass(frozen=True)
class RunConfig:
    kind: DistributionKind
    d: int
    n: int
    N: int  # replicates / f-vector sample size
    M: int = 100_000  # projection directions
    seed: int = 0
    rel_tol: float = stats.DEFAULT_REL_TOL
    threads: int | None = None
    max_resamples: int = 3

    def __post_init__(self):
        object.__setattr__(self, "kind", DistributionKind(self.kind))
        if self.d < 2:
            raise ValidationError(f"d must be >= 2, got {self.d}")
        if self.n < self.d + 1:
            raise ValidationError(f"n must be >= d+1 = {self.d + 1}, got {self.n}")
        if self.N < 2:
            raise ValidationError(f"N must be >= 2, got {self.N}")
        if self.M < 1:
            raise ValidationError(f"M must be >= 1, got {self.M}")
        if self.rel_tol <= 0:
            raise ValidationError("rel_tol must be positive")
        if self.max_resamples < 0:
            raise ValidationError("max_resamples must be >= 0")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "d": self.d,
            "n": self.n,
            "N": self.N,
            "M": self.M,
            "seed": self.seed,
            "rel_tol": self.rel_tol,
            "max_resamples": self.max_resamples,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RunConfig":
        known = {
            k: obj[k]
            for k in ("kind", "d", "n", "N", "M", "seed", "rel_tol",
                      "threads", "max_resamples")
            if k in obj
        }
        return cls(**known)


@dataclass
class GenerateResult:
    path: str
    N: int
    resample_count: int
    wall_time: float


def one_fvector(config: RunConfig, replicate: int) -> tuple:
    """f-vector of replicate k; resamples with a fresh sub-stream on degeneracy.

    Returns (counts tuple, resamples used).
    """
    for attempt in range(config.max_resamples + 1):
        stream = make_stream(
            StreamKey(config.seed, replicate, "points", attempt)
        )
        points = sample(config.kind, stream, config.d, config.n)
        try:
            hull = convex_hull(points)
        except DegenerateInput:
            continue
        fv = fvector.f_vector_from_facets(config.d, hull.facet_vertices)
        if not (fv.euler_ok() and fv.ridge_facet_ok()):
            # combinatorially impossible for a valid simplicial hull
            raise RandpolyError(
                f"identity violation in replicate {replicate}: {fv.counts}"
            )
        return fv.counts, attempt
    raise TooManyDegenerateResamples(
        f"replicate {replicate} stayed degenerate after "
        f"{config.max_resamples + 1} attempts"
    )


def generate(config: RunConfig, out_path: str) -> GenerateResult:
    """Write N f-vectors to CSV; byte-identical for any thread count."""
    t0 = time.perf_counter()
    threads = config.threads or default_threads()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda k: one_fvector(config, k), range(config.N)))
    else:
        results = [one_fvector(config, k) for k in range(config.N)]
    resamples = sum(r[1] for r in results)
    with open(out_path, "w", newline="") as fh:
        fh.write(",".join(f"f{i}" for i in range(config.d)) + "\n")
        for counts, _ in results:
            fh.write(",".join(str(c) for c in counts) + "\n")
    meta = {
        "config": config.to_dict(),
        "resample_count": resamples,
    }
    with open(out_path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2)
        fh.write("\n")
    return GenerateResult(
        path=out_path,
        N=config.N,
        resample_count=resamples,
        wall_time=time.perf_counter() - t0,
    )


def load_dataset(path: str) -> np.ndarray:
    """Read an f-vector CSV; returns an (N, d) float array."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        rows = [row for row in reader if row]
    if len(rows) < 2:
        raise MalformedDataset(f"{path}: need a header and at least one row")
    header = rows[0]
    width = len(header)
    if width < 2 or not header[0].startswith("f"):
        raise MalformedDataset(f"{path}: unexpected header {header!r}")
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:]])
    except ValueError as exc:
        raise MalformedDataset(f"{path}: non-numeric entry ({exc})") from None
    if data.ndim != 2 or data.shape[1] != width:
        raise MalformedDataset(f"{path}: ragged rows")
    if not np.all(np.isfinite(data)):
        raise MalformedDataset(f"{path}: non-finite entries")
    return data


def _load_meta(dataset_path: str) -> dict:
    meta_path = dataset_path + ".meta.json"
    if os.path.exists(meta_path):
        with open(meta_path) as fh:
            return json.load(fh)
    return {}


@dataclass
class RunSummary:
    config: dict
    mean_fvector: list
    eigenvalues: list
    p: int
    D_K: float
    per_direction_quantiles: dict
    worst_directions: list
    wall_time: float
    resample_count: int
    whitening: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "mean_fvector": self.mean_fvector,
            "eigenvalues": self.eigenvalues,
            "p": self.p,
            "D_K": self.D_K,
            "per_direction_quantiles": self.per_direction_quantiles,
            "worst_directions": self.worst_directions,
            "wall_time": self.wall_time,
            "resample_count": self.resample_count,
            "whitening": self.whitening,
        }


def analyze(
    dataset_path: str,
    M: int,
    seed: int,
    rel_tol: float = stats.DEFAULT_REL_TOL,
    out_path: str | None = None,
) -> RunSummary:
    """Whiten a dataset and compute D_K over M random projections."""
    t0 = time.perf_counter()
    if M < 1:
        raise ValidationError(f"M must be >= 1, got {M}")
    data = load_dataset(dataset_path)
    if data.shape[0] < 2:
        raise MalformedDataset(f"{dataset_path}: need N >= 2 rows")
    mean = stats.sample_mean(data)
    cov = stats.sample_covariance(data)
    eig = stats.sym_eigen(cov)
    if eig.eigenvalues[0] <= 0.0:
        raise DegenerateCovariance("dataset rows are all identical")
    wmap = stats.build_whitening(mean, eig, rel_tol)
    whitened = wmap.transform(data)
    stream = make_stream(StreamKey(seed, 0, "directions"))
    ks = gausstest.dk_statistic(whitened, M, stream)
    meta = _load_meta(dataset_path)
    config = dict(meta.get("config", {}))
    config.update({"dataset": dataset_path, "M": M, "analyze_seed": seed,
                   "rel_tol": rel_tol, "N": int(data.shape[0]),
                   "d": int(data.shape[1])})
    summary = RunSummary(
        config=config,
        mean_fvector=mean.tolist(),
        eigenvalues=eig.eigenvalues.tolist(),
        p=wmap.p,
        D_K=ks.D_K,
        per_direction_quantiles=ks.quantiles(),
        worst_directions=[
            {"index": i, "d_K": dk, "direction": vec.tolist()}
            for i, dk, vec in ks.worst
        ],
        wall_time=time.perf_counter() - t0,
        resample_count=int(meta.get("resample_count", 0)),
        whitening=wmap.to_dict(),
    )
    if out_path is not None:
        with open(out_path, "w") as fh:
            json.dump(summary.to_dict(), fh, indent=2)
            fh.write("\n")
    return summary


def _fd_bin_edges(values: np.ndarray) -> np.ndarray:
    # Freedman-Diaconis; falls back when the IQR collapses
    edges = np.histogram_bin_edges(values, bins="fd")
    if edges.shape[0] < 2 or edges[0] == edges[-1]:
        edges = np.histogram_bin_edges(values, bins="sturges")
    return edges


def report(dataset_path: str, summary_path: str, out_dir: str) -> list:
    """Emit plot-ready CSVs: per-component histograms and the whitened scatter."""
    data = load_dataset(dataset_path)
    with open(summary_path) as fh:
        summary = json.load(fh)
    wmap = stats.WhiteningMap.from_dict(summary["whitening"])
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for j in range(data.shape[1]):
        edges = _fd_bin_edges(data[:, j])
        counts, edges = np.histogram(data[:, j], bins=edges)
        path = os.path.join(out_dir, f"hist_f{j}.csv")
        with open(path, "w", newline="") as fh:
            fh.write("bin_left,bin_right,count\n")
            for b in range(counts.shape[0]):
                fh.write(
                    f"{float(edges[b])!r},{float(edges[b + 1])!r},{int(counts[b])}\n"
                )
        written.append(path)
    whitened = wmap.transform(data)
    scatter_path = os.path.join(out_dir, "whitened_scatter.csv")
    with open(scatter_path, "w", newline="") as fh:
        fh.write(",".join(f"w{i}" for i in range(whitened.shape[1])) + "\n")
        for row in whitened:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    written.append(scatter_path)
    meta_path = os.path.join(out_dir, "report_meta.json")
    with open(meta_path, "w") as fh:
        json.dump(
            {
                "dataset": dataset_path,
                "summary": summary_path,
                "binning": "freedman-diaconis (sturges fallback on zero IQR)",
                "p": wmap.p,
                "N": int(data.shape[0]),
            },
            fh,
            indent=2,
        )
        fh.write("\n")
    written.append(meta_path)
    return written


# ---------------------------------------------------------------------------
# table presets
# ---------------------------------------------------------------------------

def _scaled_rows(kind: str, dims) -> list:
    return [
        {"kind": kind, "d": d, "n": 2000, "N": 2000, "M": 1000} for d in dims
    ]


# Full-scale rows mirror the published experiment grid; multi-hour runs.
_FULL_ROWS = {
    "cube": [(5, 64000, 25000), (6, 64000, 25000), (7, 8000, 25000), (8, 1000, 3125)],
    "l1ball": [(5, 64000, 25000), (6, 64000, 25000), (7, 4000, 25000), (8, 1000, 2000)],
    "l2ball": [(5, 64000, 25000), (6, 64000, 25000), (7, 2000, 25000), (8, 1000, 940)],
    "gaussian": [(5, 64000, 25000), (6, 64000, 25000), (7, 64000, 25000), (8, 32000, 1000)],
    "halfball": [(5, 64000, 25000), (6, 4000, 25000), (7, 500, 12500)],
}

PRESETS = {
    "paper-table-1-scaled": _scaled_rows("cube", (5, 6)),
    "paper-table-2-scaled": _scaled_rows("l1ball", (5, 6, 7, 8)),
    "paper-table-3-scaled": _scaled_rows("l2ball", (5, 6, 7, 8)),
    "paper-table-4-scaled": _scaled_rows("gaussian", (5, 6, 7, 8)),
    "paper-table-5-scaled": _scaled_rows("halfball", (5, 6, 7)),
}
PRESETS.update(
    {
        f"paper-table-{i}-full": [
            {"kind": kind, "d": d, "n": n, "N": N, "M": 100_000}
            for d, n, N in rows
        ]
        for i, (kind, rows) in enumerate(_FULL_ROWS.items(), start=1)
    }
)


@dataclass
class TableRow:
    kind: str
    d: int
    n: int
    N: int
    M: int
    p: int
    D_K: float
    wall_time: float


def table(
    configs: list,
    work_dir: str,
    seed: int = 0,
    out_csv: str | None = None,
) -> list:
    """Run generate + analyze per config and aggregate one row per config."""
    os.makedirs(work_dir, exist_ok=True)
    rows = []
    for i, cfg in enumerate(configs):
        if not isinstance(cfg, RunConfig):
            cfg = RunConfig.from_dict({"seed": derive_seed(seed, i), **cfg})
        t0 = time.perf_counter()
        dataset = os.path.join(
            work_dir, f"{cfg.kind.value}_d{cfg.d}_n{cfg.n}_N{cfg.N}.csv"
        )
        generate(cfg, dataset)
        summary = analyze(
            dataset,
            M=cfg.M,
            seed=derive_seed(cfg.seed, 1_000_000),
            rel_tol=cfg.rel_tol,
            out_path=dataset.replace(".csv", ".summary.json"),
        )
        rows.append(
            TableRow(
                kind=cfg.kind.value,
                d=cfg.d,
                n=cfg.n,
                N=cfg.N,
                M=cfg.M,
                p=summary.p,
                D_K=summary.D_K,
                wall_time=time.perf_counter() - t0,
            )
        )
    if out_csv is not None:
        with open(out_csv, "w", newline="") as fh:
            fh.write("distribution,d,n,N,M,p,D_K,wall_time\n")
            for r in rows:
                fh.write(
                    f"{r.kind},{r.d},{r.n},{r.N},{r.M},{r.p},"
                    f"{r.D_K!r},{r.wall_time:.3f}\n"
                )
    return rows
