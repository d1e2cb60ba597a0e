"""Random-projection Kolmogorov test against the standard normal.

Project the whitened sample onto M uniform directions on the sphere; for
each direction compute the exact sup-distance between the projection's
empirical CDF and Phi, and report the maximum over directions.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

from .errors import EmptySample

_SQRT2 = math.sqrt(2.0)
_CLAMP = 8.3  # |Phi(t) - {0,1}| < 1e-16 beyond this


def normal_cdf(t: float) -> float:
    """Standard normal CDF via erfc; clamped to {0,1} beyond +-8.3."""
    if t > _CLAMP:
        return 1.0
    if t < -_CLAMP:
        return 0.0
    return 0.5 * math.erfc(-t / _SQRT2)


def random_direction(stream: np.random.Generator, p: int) -> np.ndarray:
    """Uniform point on S^{p-1}: normalized Gaussian, retry on a zero draw."""
    while True:
        v = stream.standard_normal(p)
        norm = np.linalg.norm(v)
        if norm > 0.0:
            return v / norm


def random_directions(stream: np.random.Generator, p: int, count: int) -> np.ndarray:
    """(count, p) matrix of uniform unit vectors."""
    v = stream.standard_normal((count, p))
    norms = np.linalg.norm(v, axis=1)
    bad = norms == 0.0
    while np.any(bad):  # measure-zero; retried for completeness
        v[bad] = stream.standard_normal((int(bad.sum()), p))
        norms = np.linalg.norm(v, axis=1)
        bad = norms == 0.0
    return v / norms[:, None]


def ks_distance(projections: np.ndarray) -> float:
    """Exact sup_t |F_N(t) - Phi(t)| for the step ECDF of the sample."""
    x = np.sort(np.asarray(projections, dtype=np.float64))
    n = x.shape[0]
    if n == 0:
        raise EmptySample("ks_distance needs at least one value")
    cdf = ndtr(x)
    steps = np.arange(1, n + 1) / n
    d_plus = np.max(steps - cdf)
    d_minus = np.max(cdf - (steps - 1.0 / n))
    return float(max(d_plus, d_minus))


def _ks_columns(proj: np.ndarray) -> np.ndarray:
    """ks_distance per column of an (N, B) projection matrix, vectorized."""
    n = proj.shape[0]
    xs = np.sort(proj, axis=0)
    cdf = ndtr(xs)
    steps = (np.arange(1, n + 1) / n)[:, None]
    d_plus = np.max(steps - cdf, axis=0)
    d_minus = np.max(cdf - (steps - 1.0 / n), axis=0)
    return np.maximum(d_plus, d_minus)


@dataclass
class KSResult:
    M: int
    per_direction: np.ndarray  # d_K per direction, in draw order
    argmax_direction: int
    D_K: float
    worst: list = field(default_factory=list)  # [(index, d_K, unit vector), ...]

    def quantiles(self, qs=(0.5, 0.9, 0.99, 1.0)) -> dict:
        return {str(q): float(np.quantile(self.per_direction, q)) for q in qs}


def dk_statistic(
    whitened: np.ndarray,
    M: int,
    stream: np.random.Generator,
    batch_size: int = 512,
    keep_worst: int = 10,
) -> KSResult:
    """Max Kolmogorov distance over M random projections of the whitened data.

    Directions are drawn from `stream` in a fixed order and processed in
    batches, so the result is a deterministic function of (data, M, stream).
    """
    whitened = np.asarray(whitened, dtype=np.float64)
    if whitened.ndim != 2 or whitened.shape[0] < 1:
        raise EmptySample("whitened data must be a nonempty 2-D array")
    p = whitened.shape[1]
    per_direction = np.empty(M)
    worst: list = []
    done = 0
    while done < M:
        b = min(batch_size, M - done)
        dirs = random_directions(stream, p, b)
        dks = _ks_columns(whitened @ dirs.T)
        per_direction[done : done + b] = dks
        for j in np.argsort(dks)[-keep_worst:]:
            worst.append((done + int(j), float(dks[j]), dirs[j].copy()))
        worst.sort(key=lambda w: -w[1])
        del worst[keep_worst:]
        done += b
    argmax = int(np.argmax(per_direction))
    return KSResult(
        M=M,
        per_direction=per_direction,
        argmax_direction=argmax,
        D_K=float(per_direction[argmax]),
        worst=worst,
    )
