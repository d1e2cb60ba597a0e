"""f-vectors of simplicial polytopes from their facet lists.

Every k-face of a simplicial polytope is a (k+1)-subset of some facet's
vertex set, so the fast path counts distinct vertex subsets across facets.
The inductive pairwise-intersection method (facet pairs give ridges, ridge
pairs give the next level down, and so on) is kept as a quadratic oracle.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import MalformedFacet


@dataclass(frozen=True)
class FVector:
    d: int
    counts: tuple  # (f_0, ..., f_{d-1})

    def __post_init__(self):
        if len(self.counts) != self.d:
            raise MalformedFacet("f-vector length must equal d")

    def euler_ok(self) -> bool:
        alt = sum((-1) ** i * c for i, c in enumerate(self.counts))
        return alt == 1 - (-1) ** self.d

    def ridge_facet_ok(self) -> bool:
        return 2 * self.counts[self.d - 2] == self.d * self.counts[self.d - 1]


def _as_facet_array(d: int, facets) -> np.ndarray:
    arr = np.asarray(facets, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != d or arr.shape[0] == 0:
        raise MalformedFacet(f"facets must be a nonempty list of {d}-tuples")
    arr = np.sort(arr, axis=1)
    if d > 1 and np.any(arr[:, 1:] == arr[:, :-1]):
        raise MalformedFacet("facet with duplicate vertex indices")
    return arr


def _count_distinct_rows(subs: np.ndarray, bits: int) -> int:
    """Distinct rows of a sorted-row subset array.

    Rows that fit in 63 bits are packed into int64 scalars (np.unique on a
    1-D array is much faster than axis=0 on rows); otherwise lexsort the
    rows and count changes.
    """
    size = subs.shape[1]
    if size * bits <= 63:
        keys = subs[:, 0].astype(np.int64)
        for c in range(1, size):
            keys = (keys << bits) | subs[:, c]
        return int(np.unique(keys).size)
    order = np.lexsort(subs.T)
    s = subs[order]
    return 1 + int(np.count_nonzero(np.any(s[1:] != s[:-1], axis=1)))


def f_vector_from_facets(d: int, facets) -> FVector:
    """f-vector by counting distinct vertex subsets of each size."""
    arr = _as_facet_array(d, facets)
    m = arr.shape[0]
    bits = max(1, int(arr.max())).bit_length()
    counts = [0] * d
    counts[d - 1] = m
    for size in range(1, d):
        cols = list(combinations(range(d), size))
        subs = np.concatenate([arr[:, c] for c in cols], axis=0)
        counts[size - 1] = _count_distinct_rows(subs, bits)
    return FVector(d=d, counts=tuple(counts))


def pairwise_intersection_fvector(d: int, facets) -> FVector:
    """f-vector via distinct pairwise intersections, level by level.

    Quadratic per level; oracle for small instances.
    """
    arr = _as_facet_array(d, facets)
    counts = [0] * d
    level = {frozenset(int(v) for v in row) for row in arr}
    counts[d - 1] = len(level)
    for k in range(d - 2, -1, -1):
        faces = list(level)
        nxt = set()
        for i in range(len(faces)):
            for j in range(i + 1, len(faces)):
                inter = faces[i] & faces[j]
                if len(inter) == k + 1:
                    nxt.add(inter)
        counts[k] = len(nxt)
        level = nxt
    return FVector(d=d, counts=tuple(counts))


def check_identities(f: FVector) -> dict:
    """Euler relation and the ridge-facet count 2 f_{d-2} = d f_{d-1}."""
    return {"euler_ok": f.euler_ok(), "ridge_facet_ok": f.ridge_facet_ok()}
