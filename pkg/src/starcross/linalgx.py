"""Small dense linear-algebra helpers used across the workbench."""

from __future__ import annotations

import numpy as np

__all__ = [
    "rank_qr",
    "nullspace",
    "pivoted_basis",
    "orthonormal_range",
    "polar_unitary",
    "IncrementalRank",
]


def rank_qr(mat: np.ndarray, tol: float = 1e-9) -> int:
    """Numerical rank via an unpivoted QR; adequate for well-separated spectra."""
    mat = np.asarray(mat, complex)
    if mat.size == 0:
        return 0
    if mat.shape[0] < mat.shape[1]:
        mat = mat.conj().T
    r = np.linalg.qr(mat, mode="r")
    diag = np.abs(np.diag(r))
    scale = max(1.0, diag.max() if diag.size else 0.0)
    return int(np.sum(diag > tol * scale))


def nullspace(mat: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal rows spanning the (right) null space."""
    mat = np.asarray(mat, complex)
    if mat.size == 0:
        return np.eye(mat.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(mat, full_matrices=True)
    scale = max(1.0, s[0] if s.size else 0.0)
    padded = np.concatenate([s, np.zeros(vh.shape[0] - s.size)])
    return vh[padded <= tol * scale]


def orthonormal_range(vectors: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal rows spanning the row space of ``vectors``."""
    vectors = np.asarray(vectors, complex)
    if vectors.size == 0:
        return vectors.reshape(0, vectors.shape[-1])
    _, s, vh = np.linalg.svd(vectors, full_matrices=False)
    scale = max(1.0, s[0] if s.size else 0.0)
    return vh[s > tol * scale]


def pivoted_basis(vectors: np.ndarray, tol: float = 1e-9) -> list[int]:
    """Indices of a maximal linearly independent subfamily (greedy Gram-Schmidt)."""
    vectors = np.asarray(vectors, complex)
    picked: list[int] = []
    q: list[np.ndarray] = []
    scale = max(1.0, float(np.max(np.abs(vectors))) if vectors.size else 0.0)
    for idx, v in enumerate(vectors):
        w = v.astype(complex)
        for u in q:
            w = w - (u.conj() @ w) * u
        # re-orthogonalize once for numerical safety
        for u in q:
            w = w - (u.conj() @ w) * u
        norm = np.linalg.norm(w)
        if norm > tol * scale:
            q.append(w / norm)
            picked.append(idx)
    return picked


def polar_unitary(mat: np.ndarray) -> np.ndarray:
    """The unitary factor of the polar decomposition (via SVD)."""
    u, _, vh = np.linalg.svd(np.asarray(mat, complex))
    return u @ vh


class IncrementalRank:
    """Grow an orthonormal span vector-by-vector, reporting when rank increases."""

    def __init__(self, dim: int, tol: float = 1e-9):
        self.dim = dim
        self.tol = tol
        self._q: list[np.ndarray] = []
        self._scale = 1.0

    @property
    def rank(self) -> int:
        return len(self._q)

    def add(self, v: np.ndarray) -> bool:
        v = np.asarray(v, complex).ravel()
        self._scale = max(self._scale, float(np.max(np.abs(v))) if v.size else 0.0)
        w = v.copy()
        for u in self._q:
            w -= (u.conj() @ w) * u
        for u in self._q:
            w -= (u.conj() @ w) * u
        norm = np.linalg.norm(w)
        if norm > self.tol * self._scale * np.sqrt(self.dim):
            self._q.append(w / norm)
            return True
        return False
