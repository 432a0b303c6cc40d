"""Complex Hadamard matrices: construction, validation and equivalence.

Indices are 0-based throughout, so ``fourier(n)`` is the dephased matrix
``F[i, j] = w**(i*j)`` with ``i, j`` in ``0..n-1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import NamedTuple, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .exceptions import DimensionMismatch, NonSquare, NotHadamard, UnknownName
from .phase import (
    I,
    MINUS_ONE,
    ONE,
    Approx,
    Exact,
    Phase,
    as_phase,
    parse_phase,
    snap_to_root,
)

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ORDER = 48


@dataclass(frozen=True)
class HadamardMatrix:
    """An ``n x n`` grid of phases with mutually orthogonal rows."""

    entries: tuple[tuple[Phase, ...], ...]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        entries = tuple(tuple(as_phase(z) for z in row) for row in self.entries)
        object.__setattr__(self, "entries", entries)
        if any(len(row) != len(entries) for row in entries):
            raise NonSquare(f"rows of lengths {[len(r) for r in entries]}")
        if self.check:
            report = validate(self)
            if not report.is_hadamard:
                raise NotHadamard(f"row residual {report.max_row_residual:.3g}")

    @classmethod
    def from_complex(cls, a, check: bool = True) -> HadamardMatrix:
        return cls(tuple(tuple(row) for row in np.asarray(a, dtype=complex)), check=check)

    @classmethod
    def from_exponents(cls, k, order: int, check: bool = True) -> HadamardMatrix:
        """Matrix with entries ``exp(2*pi*i*k[a, b]/order)``."""
        k = np.asarray(k, dtype=int)
        return cls(tuple(tuple(Exact(int(x), order) for x in row) for row in k), check=check)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def mode(self) -> str:
        exact = all(isinstance(z, Exact) for row in self.entries for z in row)
        return "exact" if exact else "approx"

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array([[complex(z) for z in row] for row in self.entries], dtype=complex)
        a.setflags(write=False)
        return a

    @cached_property
    def exponents(self) -> tuple[np.ndarray, int]:
        """``(k, order)`` with entries ``exp(2*pi*i*k/order)``; exact mode only."""
        if self.mode != "exact":
            raise ValueError("exponents are only defined in exact mode")
        order = math.lcm(*(z.l for row in self.entries for z in row)) if self.n else 1
        k = np.array([[z.k * (order // z.l) for z in row] for row in self.entries], dtype=int)
        k.setflags(write=False)
        return k, order

    def row(self, i: int) -> tuple[Phase, ...]:
        return self.entries[i]

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{str(z):>8}" for z in row) for row in self.entries)


@dataclass
class ValidationReport:
    unit_modulus: np.ndarray
    max_row_residual: float
    max_col_residual: float
    is_hadamard: bool

    @property
    def max_residual(self) -> float:
        return max(self.max_row_residual, self.max_col_residual)


def _gram_residual(a: np.ndarray) -> float:
    n = a.shape[0]
    if n == 0:
        return 0.0
    gram = a @ a.conj().T
    return float(np.abs(gram - n * np.eye(n)).max() / n)


def validate(m, tol: float = DEFAULT_TOL) -> ValidationReport:
    """Check unit modulus of every entry and orthogonality of rows and columns.

    Residuals are ``max |<h_i, h_j> - n delta_ij| / n``; columns are checked
    too even though they follow from the rows.
    """
    if isinstance(m, HadamardMatrix):
        a = m.array
    else:
        rows = [[complex(z) for z in row] for row in m]
        if any(len(r) != len(rows) for r in rows):
            raise NonSquare("matrix is not square")
        a = np.array(rows, dtype=complex).reshape(len(rows), len(rows))
    unit = np.abs(np.abs(a) - 1.0) <= tol
    row_res = _gram_residual(a)
    col_res = _gram_residual(a.T)
    ok = bool(unit.all()) and row_res <= tol and col_res <= tol
    return ValidationReport(unit, row_res, col_res, ok)


# -- catalogue ---------------------------------------------------------------


def fourier(n: int, one_based: bool = False) -> HadamardMatrix:
    """Fourier matrix; ``one_based=True`` gives ``w**((i+1)(j+1))``."""
    if n < 1:
        raise ValueError("n must be positive")
    s = 1 if one_based else 0
    return HadamardMatrix(
        tuple(tuple(Exact((i + s) * (j + s), n) for j in range(n)) for i in range(n)),
        check=False,
    )


def mq(q) -> HadamardMatrix:
    """The one-parameter 4x4 family ``M_q``; ``q`` is any unit scalar."""
    try:
        q = as_phase(q)
    except ValueError as exc:
        raise ValueError(f"q must have modulus one: {exc}") from None
    o, m = ONE, MINUS_ONE
    return HadamardMatrix(
        (
            (o, o, o, o),
            (o, q, m, -q),
            (o, m, o, m),
            (o, -q, m, q),
        )
    )


def haagerup() -> HadamardMatrix:
    pattern = [
        "i+++++",
        "+i+--+",
        "++i+--",
        "+-+i+-",
        "+--+i+",
        "++--+i",
    ]
    sym = {"+": ONE, "-": MINUS_ONE, "i": I}
    return HadamardMatrix(tuple(tuple(sym[c] for c in row) for row in pattern))


def tao() -> HadamardMatrix:
    powers = [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 2, 2],
        [0, 1, 0, 2, 2, 1],
        [0, 1, 2, 0, 1, 2],
        [0, 2, 2, 1, 0, 1],
        [0, 2, 1, 2, 1, 0],
    ]
    return HadamardMatrix.from_exponents(powers, 3)


def sylvester(s: int) -> HadamardMatrix:
    """``s``-fold tensor power of ``fourier(2)``."""
    return reduce(tensor, [fourier(2)] * s, fourier(1))


def _parse_q(text: str):
    return parse_phase(text)


CATALOGUE = {
    "fourier": (fourier, int, "fourier:<n>"),
    "mq": (mq, _parse_q, "mq:<k>/<l>"),
    "haagerup": (haagerup, None, "haagerup"),
    "tao": (tao, None, "tao"),
    "sylvester": (sylvester, int, "sylvester:<s>"),
}


def catalogue(name: str, *params) -> HadamardMatrix:
    """Build a named matrix, e.g. ``catalogue("fourier", 6)``.

    ``name`` may also be a full spec string such as ``"fourier:6"``,
    ``"mq:1/4"`` or a comma separated tensor product ``"fourier:2,fourier:3"``.
    """
    if not params and ("," in name or ":" in name):
        return from_spec(name)
    try:
        ctor, _, _ = CATALOGUE[name]
    except KeyError:
        raise UnknownName(f"unknown matrix {name!r}; known: {sorted(CATALOGUE)}") from None
    return ctor(*params)


def from_spec(spec: str) -> HadamardMatrix:
    parts = [p.strip() for p in spec.split(",")]
    mats = []
    for part in parts:
        name, _, arg = part.partition(":")
        if name not in CATALOGUE:
            raise UnknownName(f"unknown matrix {name!r}; known: {sorted(CATALOGUE)}")
        ctor, parse, _ = CATALOGUE[name]
        if parse is None:
            if arg:
                raise UnknownName(f"{name} takes no parameters")
            mats.append(ctor())
        else:
            if not arg:
                raise UnknownName(f"{name} needs a parameter")
            mats.append(ctor(parse(arg)))
    return reduce(tensor, mats)


# -- equivalence -------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceWitness:
    """``target[i][j] = row_phases[i] * col_phases[j] * source[row_perm[i]][col_perm[j]]``."""

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    row_phases: tuple[Phase, ...]
    col_phases: tuple[Phase, ...]

    def __post_init__(self):
        for name in ("row_perm", "col_perm", "row_phases", "col_phases"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        n = len(self.row_perm)
        if not (len(self.col_perm) == len(self.row_phases) == len(self.col_phases) == n):
            raise DimensionMismatch("witness components differ in length")
        if sorted(self.row_perm) != list(range(n)) or sorted(self.col_perm) != list(range(n)):
            raise ValueError("row_perm and col_perm must be permutations")

    @property
    def n(self) -> int:
        return len(self.row_perm)

    @classmethod
    def identity(cls, n: int) -> EquivalenceWitness:
        return cls(tuple(range(n)), tuple(range(n)), (ONE,) * n, (ONE,) * n)

    @classmethod
    def random(
        cls, n: int, rng: np.random.Generator, max_order: int = 12, exact: bool = True
    ) -> EquivalenceWitness:
        """Random permutations and phases; exact phases have order <= max_order."""

        def phases():
            if exact:
                out = []
                for _ in range(n):
                    l = int(rng.integers(1, max_order + 1))
                    out.append(Exact(int(rng.integers(0, l)), l))
                return tuple(out)
            return tuple(Approx.from_complex(np.exp(2j * np.pi * t)) for t in rng.random(n))

        return cls(
            tuple(int(x) for x in rng.permutation(n)),
            tuple(int(x) for x in rng.permutation(n)),
            phases(),
            phases(),
        )

    def is_identity(self) -> bool:
        return self == EquivalenceWitness.identity(self.n)


def apply_equivalence(h: HadamardMatrix, w: EquivalenceWitness) -> HadamardMatrix:
    if w.n != h.n:
        raise DimensionMismatch(f"witness of size {w.n} for matrix of size {h.n}")
    e = h.entries
    return HadamardMatrix(
        tuple(
            tuple(
                w.row_phases[i] * w.col_phases[j] * e[w.row_perm[i]][w.col_perm[j]]
                for j in range(h.n)
            )
            for i in range(h.n)
        ),
        check=False,
    )


def scramble(h: HadamardMatrix, seed: int, exact: bool = True) -> HadamardMatrix:
    return apply_equivalence(h, EquivalenceWitness.random(h.n, np.random.default_rng(seed), exact=exact))


class Dephased(NamedTuple):
    matrix: HadamardMatrix
    witness: EquivalenceWitness
    diagonal_incomplete: bool


def _is_one(z: Phase, tol: float) -> bool:
    if isinstance(z, Exact):
        return z == ONE
    return abs(complex(z) - 1) <= tol


def dephase(h: HadamardMatrix, tol: float = DEFAULT_TOL) -> Dephased:
    """Normalize the first row and column to ones, then try the diagonal.

    Rows are scaled first (making column 0 all ones), then columns.  The
    diagonal is set to ones by a column permutation fixing column 0 when one
    exists; otherwise ``diagonal_incomplete`` is set and columns stay put.
    """
    n = h.n
    if n == 0:
        return Dephased(h, EquivalenceWitness.identity(0), False)
    e = h.entries
    row_ph = [e[i][0].conjugate() for i in range(n)]
    col_ph = [(row_ph[0] * e[0][j]).conjugate() for j in range(n)]
    scaled = [[row_ph[i] * col_ph[j] * e[i][j] for j in range(n)] for i in range(n)]

    perm = list(range(n))
    incomplete = False
    if not all(_is_one(scaled[i][i], tol) for i in range(n)):
        # rows 1..n-1 against columns 1..n-1, edges where the entry is one
        rows, cols = [], []
        for i in range(1, n):
            for j in range(1, n):
                if _is_one(scaled[i][j], tol):
                    rows.append(i - 1)
                    cols.append(j - 1)
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n - 1, n - 1))
        match = maximum_bipartite_matching(graph, perm_type="column")
        if (match >= 0).all():
            perm = [0] + [int(c) + 1 for c in match]
        else:
            incomplete = True

    witness = EquivalenceWitness(tuple(range(n)), tuple(perm), tuple(row_ph), tuple(col_ph[p] for p in perm))
    out = HadamardMatrix(tuple(tuple(scaled[i][perm[j]] for j in range(n)) for i in range(n)), check=False)
    return Dephased(out, witness, incomplete)


def is_dephased(h: HadamardMatrix, tol: float = DEFAULT_TOL) -> bool:
    """First row and first column all ones (the diagonal is not required)."""
    return all(_is_one(z, tol) for z in h.entries[0]) and all(_is_one(r[0], tol) for r in h.entries)


def butson_level(h: HadamardMatrix, max_order: int = DEFAULT_MAX_ORDER, tol: float = 1e-6):
    """Smallest ``l <= max_order`` with every entry an ``l``-th root of unity, else ``math.inf``."""
    level = 1
    for row in h.entries:
        for z in row:
            r = snap_to_root(z, max_order, tol)
            if r is None:
                return math.inf
            level = math.lcm(level, r.l)
            if level > max_order:
                return math.inf
    return level


def tensor(h: HadamardMatrix, k: HadamardMatrix) -> HadamardMatrix:
    """Kronecker product with lexicographic double indices ``(i, a) -> i*m + a``."""
    m = k.n
    return HadamardMatrix(
        tuple(
            tuple(h.entries[i][j] * k.entries[a][b] for j in range(h.n) for b in range(m))
            for i in range(h.n)
            for a in range(m)
        ),
        check=False,
    )


def tensor_fourier(sizes: Sequence[int]) -> HadamardMatrix:
    return reduce(tensor, (fourier(d) for d in sizes), fourier(1))


def find_equivalence(
    source: HadamardMatrix, target: HadamardMatrix, tol: float = DEFAULT_TOL
) -> EquivalenceWitness | None:
    """Brute-force search over all row and column permutations.

    For each pair of permutations the entrywise ratio target/source must be a
    rank one phase pattern ``r_i c_j``; the first hit is returned.  Only
    practical for small ``n`` (``(n!)**2`` candidates).
    """
    n = source.n
    if target.n != n:
        return None
    a, b = source.array, target.array
    for rp in itertools.permutations(range(n)):
        ar = a[list(rp)]
        for cp in itertools.permutations(range(n)):
            ratio = b / ar[:, list(cp)]
            fit = np.outer(ratio[:, 0] / ratio[0, 0], ratio[0, :])
            if np.abs(ratio - fit).max() <= tol:
                s, t = source.entries, target.entries
                col = tuple(t[0][j] / s[rp[0]][cp[j]] for j in range(n))
                row = tuple((t[i][0] / s[rp[i]][cp[0]]) / col[0] for i in range(n))
                return EquivalenceWitness(rp, cp, row, col)
    return None
