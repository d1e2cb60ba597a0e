"""Seedable, splittable random streams and the five point distributions.

Every random quantity in the pipeline is drawn from a stream derived from a
(master seed, replicate, purpose, attempt) key, so replicates are mutually
independent and results do not depend on scheduling order.  Streams are
Philox counter-based generators: distinct 128-bit keys give statistically
independent sequences, and the mapping key -> sequence is pure.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InsufficientPoints, InvalidDimension, ValidationError

_REPLICATE_BITS = 48
_PURPOSE_BITS = 8
_ATTEMPT_BITS = 8

_PURPOSE_IDS = {"points": 1, "directions": 2, "other": 3}


class DistributionKind(str, Enum):
    """The five input distributions for the random point clouds."""

    CUBE = "cube"
    L1BALL = "l1ball"
    L2BALL = "l2ball"
    GAUSSIAN = "gaussian"
    HALFBALL = "halfball"


@dataclass(frozen=True)
class StreamKey:
    """Identifies one independent random stream.

    master is a 64-bit seed; (replicate, purpose, attempt) are packed into
    the second Philox key word.  attempt distinguishes resamples after a
    degenerate-hull event.
    """

    master: int
    replicate: int = 0
    purpose: str = "other"
    attempt: int = 0

    def __post_init__(self):
        if not 0 <= self.master < 2**64:
            raise ValidationError("master seed must fit in 64 bits")
        if not 0 <= self.replicate < 2**_REPLICATE_BITS:
            raise ValidationError("replicate index out of range")
        if self.purpose not in _PURPOSE_IDS:
            raise ValidationError(f"unknown stream purpose {self.purpose!r}")
        if not 0 <= self.attempt < 2**_ATTEMPT_BITS:
            raise ValidationError("attempt index out of range")

    def _packed_word(self) -> int:
        return (
            self.replicate
            | (_PURPOSE_IDS[self.purpose] << _REPLICATE_BITS)
            | (self.attempt << (_REPLICATE_BITS + _PURPOSE_BITS))
        )


def make_stream(key: StreamKey) -> np.random.Generator:
    """Deterministic generator for a stream key; distinct keys never share state."""
    words = np.array([key.master, key._packed_word()], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=words))


def derive_seed(master: int, index: int) -> int:
    """Mix a master seed with an index into a fresh 64-bit seed (splitmix64)."""
    z = (master + (index + 1) * 0x9E3779B97F4A7C15) % 2**64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2**64
    return z ^ (z >> 31)


def standard_normal(stream: np.random.Generator) -> float:
    """One exact standard-normal variate (ziggurat, untruncated)."""
    return float(stream.standard_normal())


def _laplace(stream: np.random.Generator, shape) -> np.ndarray:
    # Inverse CDF from a single uniform per variate: sign + exponential tail.
    u = stream.random(shape)
    u = np.maximum(u, 1e-300)  # u == 0.0 would map to -inf
    return np.where(u < 0.5, np.log(2.0 * u), -np.log(np.maximum(2.0 * (1.0 - u), 1e-300)))


def sample(
    kind: DistributionKind, stream: np.random.Generator, d: int, n: int
) -> np.ndarray:
    """Draw n i.i.d. points in R^d from one of the five distributions.

    Returns an (n, d) float array.  Constructions:
      cube      - each coordinate uniform in [0, 1]
      l2ball    - Z in R^{d+2} standard normal, X = Z[:d] / ||Z||_2
      l1ball    - Z in R^{d+1} i.i.d. Laplace, X = Z[:d] / ||Z||_1
      gaussian  - d i.i.d. standard normals
      halfball  - l2ball, then first coordinate replaced by its absolute value
    """
    kind = DistributionKind(kind)
    if d < 2:
        raise InvalidDimension(f"need d >= 2, got {d}")
    if n < d + 1:
        raise InsufficientPoints(f"need n >= d+1 = {d + 1}, got {n}")

    if kind is DistributionKind.CUBE:
        return stream.random((n, d))
    if kind is DistributionKind.GAUSSIAN:
        return stream.standard_normal((n, d))
    if kind is DistributionKind.L1BALL:
        z = _laplace(stream, (n, d + 1))
        return z[:, :d] / np.sum(np.abs(z), axis=1, keepdims=True)
    # l2ball / halfball
    z = stream.standard_normal((n, d + 2))
    x = z[:, :d] / np.linalg.norm(z, axis=1, keepdims=True)
    if kind is DistributionKind.HALFBALL:
        x[:, 0] = np.abs(x[:, 0])
    return x
