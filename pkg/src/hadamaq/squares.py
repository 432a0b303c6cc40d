"""Magic squares: normalization, extraction from commuting projection grids, rows as permutations."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import NotCommutativeStructure, NotMagic
from .groups import Perm
from .magic import ProjectionGrid

log = logging.getLogger(__name__)

MATCH_TOL = 1e-6


def _is_magic(s: np.ndarray) -> bool:
    n = s.shape[0]
    full = np.arange(n)
    return all((np.sort(s[i]) == full).all() and (np.sort(s[:, i]) == full).all() for i in range(n))


@dataclass(frozen=True)
class MagicSquare:
    """Normalized magic square over ``0..n-1``: row 0 is the identity, the diagonal is 0.

    ``row_perm`` records the row permutation applied when the square had to
    be renormalized after extraction; None otherwise.
    """

    sigma: np.ndarray
    row_perm: tuple[int, ...] | None = None

    def __post_init__(self):
        s = np.array(self.sigma, dtype=int)
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise NotMagic(f"expected a square grid, got shape {s.shape}")
        if not _is_magic(s):
            raise NotMagic("rows and columns must be permutations of 0..n-1")
        n = s.shape[0]
        if n and ((s[0] != np.arange(n)).any() or (np.diag(s) != 0).any()):
            raise NotMagic("square is not normalized; use normalize()")
        s.setflags(write=False)
        object.__setattr__(self, "sigma", s)

    @property
    def n(self) -> int:
        return self.sigma.shape[0]

    def __getitem__(self, ij) -> int:
        return int(self.sigma[ij])

    def __eq__(self, other) -> bool:
        if not isinstance(other, MagicSquare):
            return NotImplemented
        return np.array_equal(self.sigma, other.sigma)

    def __hash__(self) -> int:
        return hash(self.sigma.tobytes())

    def tolist(self) -> list[list[int]]:
        return self.sigma.tolist()


def normalize(raw) -> tuple[MagicSquare, tuple[int, ...], tuple[int, ...]]:
    """Permute columns so row 0 is the identity, then rows so the diagonal is 0.

    Returns ``(square, row_perm, col_perm)`` with
    ``square[i][j] = raw[row_perm[i]][col_perm[j]]``.
    """
    s = np.array(raw, dtype=int)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or not _is_magic(s):
        raise NotMagic("rows and columns must be permutations of 0..n-1")
    col_perm = np.argsort(s[0], kind="stable")
    s = s[:, col_perm]
    # column i of s holds 0 in exactly one row; that row moves to position i
    row_perm = np.argmin(s, axis=0)
    return (
        MagicSquare(s[row_perm]),
        tuple(int(x) for x in row_perm),
        tuple(int(x) for x in col_perm),
    )


def extract_square(P: ProjectionGrid, tol: float = MATCH_TOL) -> MagicSquare:
    """Find ``sigma`` with ``P[i, j] == P[0, sigma[i, j]]`` cell by cell.

    Each cell is matched to its nearest first-row projection in Frobenius
    distance; the match must be within ``tol`` and the runner-up must be
    farther than ``2 * tol``.
    """
    n = P.n
    first = P.P[0]
    if n > 1:
        sep = np.linalg.norm(first[:, None] - first[None, :], axis=(2, 3))
        np.fill_diagonal(sep, np.inf)
        if sep.min() <= 2 * tol:
            raise NotCommutativeStructure("first-row projections are not pairwise distinct")
    dist = np.linalg.norm(P.P[:, :, None] - first[None, None], axis=(3, 4))  # (n, n, n)
    order = np.argsort(dist, axis=2)
    raw = order[:, :, 0]
    best = np.take_along_axis(dist, order[:, :, :1], axis=2)[..., 0]
    if (best > tol).any():
        i, j = np.argwhere(best > tol)[0]
        raise NotCommutativeStructure(f"cell ({i}, {j}) matches no first-row projection")
    if n > 1:
        second = np.take_along_axis(dist, order[:, :, 1:2], axis=2)[..., 0]
        if (second <= 2 * tol).any():
            i, j = np.argwhere(second <= 2 * tol)[0]
            raise NotCommutativeStructure(f"cell ({i}, {j}) matches several first-row projections")
    if not _is_magic(raw):
        raise NotCommutativeStructure("matched indices do not form a magic square")
    n_idx = np.arange(n)
    if (raw[0] == n_idx).all() and (np.diag(raw) == 0).all():
        return MagicSquare(raw)
    square, row_perm, col_perm = normalize(raw)
    log.info("extracted square renormalized: rows %s, columns %s", row_perm, col_perm)
    return MagicSquare(square.sigma, row_perm=row_perm)


def rows_as_permutations(s: MagicSquare) -> list[Perm]:
    """Row ``i`` as the permutation ``j -> sigma[i, j]``."""
    return [Perm(tuple(int(x) for x in row)) for row in s.sigma]


def circulant(n: int) -> MagicSquare:
    """``sigma[i, j] = (j - i) mod n``."""
    i = np.arange(n)
    return MagicSquare((i[None, :] - i[:, None]) % n)
