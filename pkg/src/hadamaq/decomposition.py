"""Deciding whether a Hadamard matrix is equivalent to a tensor product of Fourier matrices.

Rows of a dephased matrix, taken modulo constants, must be closed under
entrywise quotients for the projection grid to commute.  When they are, they
form a finite abelian group ``X``; choosing independent generators of ``X``
and reading each column as a character of ``X`` gives an explicit
equivalence with ``F_d1 x F_d2 x ...`` where ``d1 | d2 | ...`` are the
invariant factors of ``X``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import NotClosed, NotCommutative, SnapFailure
from .groups import abelian_basis
from .hadamard import (
    DEFAULT_MAX_ORDER,
    EquivalenceWitness,
    HadamardMatrix,
    apply_equivalence,
    is_dephased,
    tensor_fourier,
)
from .phase import Exact, snap_to_root, vec_equal_mod_scalar

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class FourierDecomposition:
    factor_sizes: tuple[int, ...]
    witness: EquivalenceWitness
    quotient_table: np.ndarray

    @property
    def n(self) -> int:
        return math.prod(self.factor_sizes)


def _dephase_scaling(h: HadamardMatrix):
    """Phases ``r, c`` with ``r[i] * c[j] * h[i][j]`` equal to one on row 0 and column 0."""
    e = h.entries
    r = [e[0][0] * e[i][0].conjugate() for i in range(h.n)]
    c = [e[0][j].conjugate() for j in range(h.n)]
    return r, c


def _dephased_exponents(h: HadamardMatrix, max_order: int) -> tuple[np.ndarray, int]:
    r, c = _dephase_scaling(h)
    grid = [[r[i] * c[j] * h.entries[i][j] for j in range(h.n)] for i in range(h.n)]
    snapped = []
    for i, row in enumerate(grid):
        out = []
        for j, z in enumerate(row):
            s = z if isinstance(z, Exact) else snap_to_root(z, max_order)
            if s is None:
                raise SnapFailure(f"dephased entry ({i}, {j}) is not a root of unity of order <= {max_order}")
            out.append(s)
        snapped.append(out)
    m = HadamardMatrix(snapped, check=False)
    return m.exponents


def _table_from_exponents(k: np.ndarray, order: int) -> np.ndarray:
    n = k.shape[0]
    index = {tuple(row): i for i, row in enumerate(k.tolist())}
    t = np.empty((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            q = tuple(((k[j] - k[i]) % order).tolist())
            hit = index.get(q)
            if hit is None:
                raise NotClosed(i, j)
            t[i, j] = hit
    return t


def quotient_table(h: HadamardMatrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``t[i, j]`` with ``h_j / h_i`` proportional to ``h_t[i, j]``, for dephased ``h``.

    Raises :class:`NotClosed` naming the first quotient that is no row.
    """
    if not is_dephased(h, tol):
        raise ValueError("quotient_table expects a dephased matrix (first row and column ones)")
    if h.mode == "exact":
        k, order = h.exponents
        return _table_from_exponents(k, order)
    n = h.n
    rows = h.entries
    t = np.empty((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            q = [a / b for a, b in zip(rows[j], rows[i])]
            hit = next((s for s in range(n) if vec_equal_mod_scalar(q, rows[s], tol) is not None), None)
            if hit is None:
                raise NotClosed(i, j)
            t[i, j] = hit
    return t


def decompose(h: HadamardMatrix, max_order: int = DEFAULT_MAX_ORDER) -> FourierDecomposition:
    """Witness ``h ~ F_d1 x ... x F_dk`` or raise :class:`NotCommutative`.

    Approximate input is dephased and then snapped to roots of unity of order
    at most ``max_order``; failure to snap raises :class:`SnapFailure`.
    """
    n = h.n
    k, order = _dephased_exponents(h, max_order)
    try:
        table = _table_from_exponents(k, order)
    except NotClosed as exc:
        raise NotCommutative(str(exc), exc.pair) from None

    classes = [tuple(row) for row in k.tolist()]
    add = lambda a, b: tuple((x + y) % order for x, y in zip(a, b))  # noqa: E731
    zero = classes[0]
    basis = abelian_basis(classes, add, zero)[::-1]  # ascending: d1 | d2 | ...
    sizes = tuple(d for _, d in basis)

    row_of = {c: i for i, c in enumerate(classes)}
    row_perm = []
    for idx in itertools.product(*(range(d) for d in sizes)):
        v = zero
        for (b, _), e in zip(basis, idx):
            v = add(v, tuple(e * x % order for x in b))
        row_perm.append(row_of[v])

    # column c evaluates generator b at exp(2 pi i b[c] / order) = w_d ** (b[c] * d / order)
    col_of = {}
    for c in range(n):
        key = tuple((b[c] * d // order) % d for b, d in basis)
        if key in col_of:
            raise NotCommutative(f"columns {col_of[key]} and {c} give the same character")
        col_of[key] = c
    col_perm = [col_of[idx] for idx in itertools.product(*(range(d) for d in sizes))]

    r, c = _dephase_scaling(h)
    witness = EquivalenceWitness(
        tuple(row_perm),
        tuple(col_perm),
        tuple(r[i] for i in row_perm),
        tuple(c[j] for j in col_perm),
    )
    return FourierDecomposition(sizes, witness, table)


def verify_decomposition(h: HadamardMatrix, d: FourierDecomposition) -> tuple[bool, float]:
    """Apply the witness and compare with the tensor product of Fourier matrices.

    Exact matrices are compared entry by entry and must agree exactly (the
    residual is then 0.0 or the numeric gap); approximate ones within 1e-9.
    """
    if d.n != h.n:
        return False, math.inf
    image = apply_equivalence(h, d.witness)
    target = tensor_fourier(d.factor_sizes)
    residual = float(np.abs(image.array - target.array).max()) if h.n else 0.0
    if image.mode == "exact":
        return image.entries == target.entries, 0.0 if image.entries == target.entries else residual
    return residual <= DEFAULT_TOL, residual
