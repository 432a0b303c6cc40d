"""Magic bases and magic unitaries (grids of projections) built from Hadamard matrices.

Projections follow the outer-product convention ``P[a, b] = x[a] * conj(x[b]) / |x|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exceptions import NotPartitionOfUnity, NotRankOne, ShapeMismatch
from .hadamard import HadamardMatrix

DEFAULT_TOL = 1e-9
COMMUTE_TOL = 1e-8
NONCOMMUTE_MIN = 0.1


@dataclass(frozen=True)
class MagicBasis:
    """``xi[i, j]`` is the vector ``h_j / h_i`` (entrywise quotient of rows)."""

    xi: np.ndarray  # shape (n, n, n)

    @property
    def n(self) -> int:
        return self.xi.shape[0]

    def max_residual(self) -> float:
        """Deviation of every row and column of ``xi`` from an orthogonal basis."""
        n = self.n
        if n == 0:
            return 0.0
        rows = np.einsum("ija,ika->ijk", self.xi, self.xi.conj())
        cols = np.einsum("ija,kja->jik", self.xi, self.xi.conj())
        target = n * np.eye(n)
        return float(max(np.abs(rows - target).max(), np.abs(cols - target).max()) / n)


@dataclass(frozen=True)
class ProjectionGrid:
    """A square grid of ``d x d`` matrices, stored as an array of shape (n, n, d, d).

    ``vectors`` is kept when every cell is the projection onto a known unit
    vector; it lets :func:`commutation_profile` work from inner products.
    """

    P: np.ndarray
    vectors: np.ndarray | None = None

    def __post_init__(self):
        P = np.asarray(self.P, dtype=complex)
        if P.ndim != 4 or P.shape[0] != P.shape[1] or P.shape[2] != P.shape[3]:
            raise ShapeMismatch(f"expected shape (n, n, d, d), got {P.shape}")
        object.__setattr__(self, "P", P)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def dim(self) -> int:
        return self.P.shape[2]

    def __getitem__(self, ij) -> np.ndarray:
        return self.P[ij]


def magic_basis(h: HadamardMatrix) -> MagicBasis:
    a = h.array
    return MagicBasis(a[None, :, :] / a[:, None, :])


def projection_grid(xi: MagicBasis | HadamardMatrix) -> ProjectionGrid:
    if isinstance(xi, HadamardMatrix):
        xi = magic_basis(xi)
    v = xi.xi / np.sqrt(xi.n)
    P = np.einsum("ija,ijb->ijab", v, v.conj())
    return ProjectionGrid(P, vectors=v)


@dataclass
class MagicValidation:
    max_idempotent: float
    max_selfadjoint: float
    max_row_sum: float
    max_col_sum: float
    ok: bool
    cell_idempotent: np.ndarray
    cell_selfadjoint: np.ndarray

    @property
    def max_residual(self) -> float:
        return max(self.max_idempotent, self.max_selfadjoint, self.max_row_sum, self.max_col_sum)


def validate_magic_unitary(P, tol: float = DEFAULT_TOL) -> MagicValidation:
    """Check that every cell is a projection and rows and columns sum to the identity.

    Residuals are spectral-free Frobenius norms: ``|P^2 - P|``, ``|P - P*|`` per
    cell and ``|sum - I|`` per row and column.
    """
    if not isinstance(P, ProjectionGrid):
        P = ProjectionGrid(np.asarray(P, dtype=complex))
    A = P.P
    eye = np.eye(P.dim)
    idem = np.linalg.norm(A @ A - A, axis=(2, 3))
    adj = np.linalg.norm(A - A.conj().swapaxes(2, 3), axis=(2, 3))
    rows = np.linalg.norm(A.sum(axis=1) - eye, axis=(1, 2)) if P.n else np.zeros(0)
    cols = np.linalg.norm(A.sum(axis=0) - eye, axis=(1, 2)) if P.n else np.zeros(0)

    def top(x):
        return float(x.max()) if x.size else 0.0

    res = (top(idem), top(adj), top(rows), top(cols))
    return MagicValidation(*res, ok=max(res) <= tol, cell_idempotent=idem, cell_selfadjoint=adj)


def _check_partition(E: np.ndarray, tol: float):
    d = E.shape[1]
    for k, e in enumerate(E):
        if np.linalg.norm(e @ e - e) > tol or np.linalg.norm(e - e.conj().T) > tol:
            raise NotPartitionOfUnity(f"E[{k}] is not a projection")
        if abs(np.trace(e) - 1) > tol:
            raise NotRankOne(f"E[{k}] has trace {np.trace(e).real:.6g}")
    if np.linalg.norm(E.sum(axis=0) - np.eye(d)) > tol:
        raise NotPartitionOfUnity("projections do not sum to the identity")


def e_sigma(E: Sequence[np.ndarray], sigma, tol: float = DEFAULT_TOL) -> ProjectionGrid:
    """Grid with cell ``(i, j)`` equal to ``E[sigma[i][j]]``.

    ``E`` must be a partition of unity made of rank one projections.
    """
    E = np.asarray(E, dtype=complex)
    s = np.asarray(getattr(sigma, "sigma", sigma), dtype=int)
    if E.ndim != 3 or E.shape[0] != s.shape[0] or s.shape[0] != s.shape[1]:
        raise ShapeMismatch(f"{E.shape[0]} projections for a {s.shape} square")
    _check_partition(E, tol)
    return ProjectionGrid(E[s])


def block_concat(U: ProjectionGrid, V: ProjectionGrid) -> ProjectionGrid:
    """Diagonal concatenation of two magic unitaries acting on the same space."""
    if U.dim != V.dim:
        raise ShapeMismatch(f"cell sizes {U.dim} and {V.dim} differ")
    n, m, d = U.n, V.n, U.dim
    P = np.zeros((n + m, n + m, d, d), dtype=complex)
    P[:n, :n] = U.P
    P[n:, n:] = V.P
    return ProjectionGrid(P)


@dataclass
class CommutationProfile:
    max_norm: float

    @property
    def commutative(self) -> bool | None:
        """True, False, or None when the norm falls in the indeterminate gap."""
        if self.max_norm <= COMMUTE_TOL:
            return True
        if self.max_norm >= NONCOMMUTE_MIN:
            return False
        return None

    @property
    def status(self) -> str:
        return {True: "commutative", False: "noncommutative", None: "indeterminate"}[self.commutative]


def _max_commutator_from_vectors(v: np.ndarray) -> float:
    # for unit u, w: |[uu*, ww*]|_F = sqrt(2) |<u,w>| |w - <u,w> u|;
    # the orthogonal part is formed explicitly, 1 - |<u,w>|^2 cancels badly
    flat = v.reshape(-1, v.shape[-1])
    flat = flat / np.linalg.norm(flat, axis=1)[:, None]
    c = flat.conj() @ flat.T  # c[a, b] = <u_a, u_b>
    best = 0.0
    for a in range(len(flat)):
        perp = flat - c[a][:, None] * flat[a][None, :]
        vals = np.sqrt(2) * np.abs(c[a]) * np.linalg.norm(perp, axis=1)
        best = max(best, float(vals.max()))
    return best


def _max_commutator_dense(A: np.ndarray, chunk: int = 64) -> float:
    N, d = A.shape[0], A.shape[1]
    Y = A.transpose(1, 0, 2).reshape(d, N * d)
    best = 0.0
    for start in range(0, N, chunk):
        block = A[start : start + chunk]
        left = (block.reshape(-1, d) @ Y).reshape(len(block), d, N, d)  # P_a P_b
        right = np.einsum("bij,ajk->aibk", A, block)  # P_b P_a
        norms = np.sqrt((np.abs(left - right) ** 2).sum(axis=(1, 3)))
        best = max(best, float(norms.max()))
    return best


def commutation_profile(P: ProjectionGrid) -> CommutationProfile:
    """Largest Frobenius norm of ``P_ij P_kl - P_kl P_ij`` over all pairs of cells."""
    if P.n == 0:
        return CommutationProfile(0.0)
    if P.vectors is not None:
        return CommutationProfile(_max_commutator_from_vectors(P.vectors))
    A = P.P.reshape(-1, P.dim, P.dim)
    return CommutationProfile(_max_commutator_dense(A))
