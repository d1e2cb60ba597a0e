"""Sample moments, Jacobi eigendecomposition, and the whitening map.

Whitening standardizes an f-vector sample to mean zero and identity
covariance after dropping the eigendirections whose variance is
combinatorially forced to zero (the covariance of simplicial-polytope
f-vectors is rank floor(d/2)).
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateCovariance,
    DimensionMismatch,
    EmptySample,
    NoConvergence,
)

DEFAULT_REL_TOL = 1e-8
_SYMMETRY_RTOL = 1e-12
_OFF_DIAG_TOL = 1e-13
_SWEEP_CAP = 100


def sample_mean(data: np.ndarray) -> np.ndarray:
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 1:
        raise EmptySample("need at least one row")
    return data.mean(axis=0)


def sample_covariance(data: np.ndarray) -> np.ndarray:
    """Unbiased covariance, 1/(N-1) normalization."""
    data = np.asarray(data, dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < 2:
        raise EmptySample("covariance needs N >= 2 rows")
    centered = data - data.mean(axis=0)
    return centered.T @ centered / (data.shape[0] - 1)


@dataclass(frozen=True)
class EigenDecomp:
    eigenvalues: np.ndarray  # descending
    vectors: np.ndarray  # orthonormal columns, vectors[:, i] <-> eigenvalues[i]


def sym_eigen(S: np.ndarray, sweep_cap: int = _SWEEP_CAP) -> EigenDecomp:
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm drops below
    1e-13 * ||S||_F.  Eigenvalues sorted descending; each eigenvector's
    largest-magnitude entry is made positive for reproducible output.
    """
    S = np.asarray(S, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("matrix must be square")
    fro = np.linalg.norm(S)
    if np.linalg.norm(S - S.T) > _SYMMETRY_RTOL * max(fro, 1.0):
        raise ValueError("matrix is not symmetric")
    d = S.shape[0]
    A = 0.5 * (S + S.T)
    V = np.eye(d)
    if fro == 0.0:
        return EigenDecomp(np.zeros(d), V)
    converged = False
    for _sweep in range(sweep_cap):
        # norm of the off-diagonal part, computed directly (the textbook
        # sum(A^2) - sum(diag^2) form cancels catastrophically near
        # convergence and reports zero while entries are still ~1e-9)
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= _OFF_DIAG_TOL * fro:
            converged = True
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                if abs(apq) <= _OFF_DIAG_TOL * fro / (d * d):
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    if not converged:
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off > _OFF_DIAG_TOL * fro:
            raise NoConvergence(f"Jacobi did not converge in {sweep_cap} sweeps")
    eigenvalues = np.diag(A).copy()
    order = np.argsort(-eigenvalues)
    eigenvalues = eigenvalues[order]
    V = V[:, order]
    for i in range(d):
        j = np.argmax(np.abs(V[:, i]))
        if V[j, i] < 0:
            V[:, i] = -V[:, i]
    return EigenDecomp(eigenvalues, V)


@dataclass(frozen=True)
class WhiteningMap:
    """Affine map f -> D*^{-1/2} U*^T (f - mean) onto the retained subspace."""

    mean: np.ndarray
    eigenvalues: np.ndarray  # kept, descending, all > rel_tol * lambda_1
    vectors: np.ndarray  # d x p, orthonormal columns
    rel_tol: float

    @property
    def p(self) -> int:
        return int(self.eigenvalues.shape[0])

    def transform(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f, dtype=np.float64)
        if f.shape[-1] != self.mean.shape[0]:
            raise DimensionMismatch(
                f"expected vectors of length {self.mean.shape[0]}, got {f.shape[-1]}"
            )
        return (f - self.mean) @ self.vectors / np.sqrt(self.eigenvalues)

    def to_dict(self) -> dict:
        return {
            "mean": self.mean.tolist(),
            "eigenvalues": self.eigenvalues.tolist(),
            "vectors": self.vectors.tolist(),
            "rel_tol": self.rel_tol,
            "p": self.p,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "WhiteningMap":
        return cls(
            mean=np.asarray(obj["mean"], dtype=np.float64),
            eigenvalues=np.asarray(obj["eigenvalues"], dtype=np.float64),
            vectors=np.asarray(obj["vectors"], dtype=np.float64),
            rel_tol=float(obj["rel_tol"]),
        )


def build_whitening(
    mean: np.ndarray, eig: EigenDecomp, rel_tol: float = DEFAULT_REL_TOL
) -> WhiteningMap:
    """Keep eigenpairs with lambda_i > rel_tol * lambda_1."""
    lam = eig.eigenvalues
    if lam[0] <= 0.0:
        raise DegenerateCovariance("no positive eigenvalue; all samples identical?")
    p = int(np.sum(lam > rel_tol * lam[0]))
    return WhiteningMap(
        mean=np.asarray(mean, dtype=np.float64),
        eigenvalues=lam[:p].copy(),
        vectors=eig.vectors[:, :p].copy(),
        rel_tol=rel_tol,
    )


def apply_whitening(wmap: WhiteningMap, f: np.ndarray) -> np.ndarray:
    return wmap.transform(f)


def numerical_rank(eig: EigenDecomp, rel_tol: float = DEFAULT_REL_TOL) -> int:
    lam = eig.eigenvalues
    if lam[0] <= 0.0:
        return 0
    return int(np.sum(lam > rel_tol * lam[0]))
