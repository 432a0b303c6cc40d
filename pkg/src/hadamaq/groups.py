"""Finite groups of permutations or monomial matrices, built by closure.

Elements are hashable and exact, so groups are plain Python sets; no
floating point comparison is ever needed.  The algorithms here are brute force
and meant for groups of at most a few thousand elements.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence, TypeVar, Union

import numpy as np

from .exceptions import CapExceeded, NotAbelian
from .phase import ONE, Exact, as_phase, snap_to_root

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class Perm:
    """Permutation ``j -> images[j]``; ``(a * b)(j) = a(b(j))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, j: int) -> int:
        return self.images[j]

    def __mul__(self, other: Perm) -> Perm:
        return Perm(tuple(self.images[j] for j in other.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for j, x in enumerate(self.images):
            inv[x] = j
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == x for j, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc, j = [], start
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"


@dataclass(frozen=True)
class Monomial:
    """Monomial matrix: column ``c`` holds ``phases[c]`` in row ``perm[c]``.

    Phases must be exact, which makes equality and hashing structural.
    """

    perm: tuple[int, ...]
    phases: tuple[Exact, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", Perm(self.perm).images)
        object.__setattr__(self, "phases", tuple(self.phases))
        if len(self.phases) != len(self.perm):
            raise ValueError("perm and phases differ in length")
        if not all(isinstance(p, Exact) for p in self.phases):
            raise ValueError("monomial phases must be exact")

    @classmethod
    def identity(cls, n: int) -> Monomial:
        return cls(tuple(range(n)), (ONE,) * n)

    @classmethod
    def from_matrix(cls, m, max_order: int = 48) -> Monomial:
        """From a grid with one nonzero unit entry per row and column.

        Entries may be :class:`Exact` phases, ``0``/``None`` for zeros, or
        complex numbers that are snapped to roots of unity.
        """
        rows = [list(r) for r in m]
        n = len(rows)
        perm, phases = [None] * n, [None] * n
        for r in range(n):
            for c in range(n):
                z = rows[r][c]
                if z is None or (not isinstance(z, Exact) and abs(complex(z)) < 0.5):
                    continue
                if perm[c] is not None:
                    raise ValueError(f"column {c} has more than one nonzero entry")
                p = z if isinstance(z, Exact) else snap_to_root(as_phase(z), max_order)
                if p is None:
                    raise ValueError(f"entry ({r}, {c}) is not a root of unity")
                perm[c], phases[c] = r, p
        if None in perm:
            raise ValueError("a column has no nonzero entry")
        return cls(tuple(perm), tuple(phases))

    @property
    def degree(self) -> int:
        return len(self.perm)

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(
            tuple(self.perm[p] for p in other.perm),
            tuple(self.phases[p] * ph for p, ph in zip(other.perm, other.phases)),
        )

    def __neg__(self) -> Monomial:
        return Monomial(self.perm, tuple(-p for p in self.phases))

    def scale(self, z: Exact) -> Monomial:
        return Monomial(self.perm, tuple(z * p for p in self.phases))

    def inverse(self) -> Monomial:
        inv_perm = [0] * len(self.perm)
        inv_ph = [ONE] * len(self.perm)
        for c, r in enumerate(self.perm):
            inv_perm[r] = c
            inv_ph[r] = self.phases[c].conjugate()
        return Monomial(tuple(inv_perm), tuple(inv_ph))

    def is_identity(self) -> bool:
        return all(c == r for c, r in enumerate(self.perm)) and all(p == ONE for p in self.phases)

    def is_scalar(self) -> bool:
        return all(c == r for c, r in enumerate(self.perm)) and len(set(self.phases)) <= 1

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.degree, self.degree), dtype=complex)
        for c, (r, p) in enumerate(zip(self.perm, self.phases)):
            a[r, c] = complex(p)
        return a

    def __pow__(self, e: int) -> Monomial:
        return power(self, e)


class ProjectiveMonomial(Monomial):
    """Monomial matrix modulo scalars, normalized so the column 0 phase is one."""

    def __post_init__(self):
        super().__post_init__()
        z = self.phases[0].conjugate() if self.phases else ONE
        if z != ONE:
            object.__setattr__(self, "phases", tuple(z * p for p in self.phases))

    @classmethod
    def of(cls, m: Monomial) -> ProjectiveMonomial:
        return cls(m.perm, m.phases)

    def __mul__(self, other):
        return ProjectiveMonomial.of(Monomial.__mul__(self, other))

    def inverse(self):
        return ProjectiveMonomial.of(Monomial.inverse(self))


GroupElement = Union[Perm, Monomial]
T = TypeVar("T", bound=Hashable)


def power(g, e: int):
    if e < 0:
        g, e = g.inverse(), -e
    result = type(g).identity(g.degree)
    base = g
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def element_order(g) -> int:
    k, x = 1, g
    while not x.is_identity():
        x = x * g
        k += 1
    return k


class FiniteGroup:
    """A closed set of elements in breadth-first discovery order."""

    def __init__(self, elements: Sequence, gens: Sequence | None = None):
        self.elements = list(elements)
        self.gens = list(gens) if gens is not None else list(self.elements)
        self._set = set(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def identity(self):
        return next(g for g in self.elements if g.is_identity())

    @cached_property
    def orders(self) -> dict:
        return {g: element_order(g) for g in self.elements}

    def is_abelian(self) -> bool:
        gens = self.gens
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1 :])

    def center(self) -> list:
        return [g for g in self.elements if all(g * s == s * g for s in self.gens)]


def generate(gens: Iterable, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Closure of ``gens`` under composition, breadth first from the identity.

    Closure under products already yields inverses in a finite group.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    e = type(gens[0]).identity(gens[0].degree)
    seen = {e}
    order = [e]
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if len(order) > cap:
                        raise CapExceeded(f"closure exceeds {cap} elements")
        frontier = nxt
    return FiniteGroup(order, gens)


# -- abelian structure -------------------------------------------------------


def abelian_basis(
    elements: Sequence[T], mul: Callable[[T, T], T], identity: T
) -> list[tuple[T, int]]:
    """Independent generators ``(b, d)`` of a finite abelian group, ``d`` descending.

    Each step takes an element of maximal order in the quotient by the
    subgroup spanned so far and corrects its lift so that its order in the
    group equals its order in the quotient, which makes the new cyclic factor
    a direct summand.
    """
    span: dict = {identity: ()}  # element -> exponent vector over the basis
    basis: list[tuple[T, int]] = []

    def pw(g, e):
        out = identity
        for _ in range(e):
            out = mul(out, g)
        return out

    def quotient_order(g):
        e, x = 1, g
        while x not in span:
            x = mul(x, g)
            e += 1
        return e, x

    while len(span) < len(elements):
        best, best_e, best_x = None, 0, None
        for g in elements:
            if g in span:
                continue
            e, x = quotient_order(g)
            if e > best_e:
                best, best_e, best_x = g, e, x
        g = best
        for (b, d), t in zip(basis, span[best_x]):
            if t % best_e:
                raise NotAbelian("set is not an abelian group under the given product")
            g = mul(g, pw(b, (-(t // best_e)) % d))
        new_span = {}
        x = identity
        for k in range(best_e):
            for y, ex in span.items():
                new_span[mul(y, x)] = ex + (k,)
            x = mul(x, g)
        span = new_span
        basis.append((g, best_e))
    return basis


def invariant_factors(G: FiniteGroup) -> list[int]:
    """``[d1, d2, ...]`` with ``d1 | d2 | ...`` and ``G = Z_d1 x Z_d2 x ...``."""
    if not G.is_abelian():
        raise NotAbelian("group is not abelian")
    basis = abelian_basis(G.elements, lambda a, b: a * b, G.identity)
    return sorted(d for _, d in basis)


# -- naming ------------------------------------------------------------------


@dataclass(frozen=True)
class GroupLabel:
    """A named isomorphism type.

    family is one of ``cyclic`` (params ``(n,)``), ``abelian`` (invariant
    factors), ``dihedral`` (``(m,)`` for ``Z_m x| Z_2``), ``semidirect_z4``
    (``(m,)`` for ``Z_m x| Z_4``), ``symmetric`` (``(n,)``) or
    ``infinite_dihedral``.
    """

    family: str
    params: tuple[int, ...] = ()

    @property
    def order(self) -> float:
        f, p = self.family, self.params
        if f == "cyclic":
            return p[0]
        if f == "abelian":
            return math.prod(p)
        if f == "dihedral":
            return 2 * p[0]
        if f == "semidirect_z4":
            return 4 * p[0]
        if f == "symmetric":
            return math.factorial(p[0])
        return math.inf

    def canonical(self) -> GroupLabel:
        """Same group under the preferred name (small cases collapse to abelian ones)."""
        f, p = self.family, self.params
        if f == "dihedral" and p[0] <= 2:
            return GroupLabel("cyclic", (2,)) if p[0] == 1 else GroupLabel("abelian", (2, 2))
        if f == "semidirect_z4" and p[0] == 1:
            return GroupLabel("cyclic", (4,))
        if f == "abelian" and len(p) == 1:
            return GroupLabel("cyclic", p)
        if f == "abelian" and not p:
            return GroupLabel("cyclic", (1,))
        return self

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f == "cyclic":
            return f"Z{p[0]}"
        if f == "abelian":
            return "×".join(f"Z{d}" for d in p) or "Z1"
        if f == "dihedral":
            return f"Z{p[0]}⋊Z2"
        if f == "semidirect_z4":
            return f"Z{p[0]}⋊Z4"
        if f == "symmetric":
            return f"S{p[0]}"
        return "Z⋊Z2"


def _span_size(G: FiniteGroup, gens: Sequence) -> int:
    return len(generate(gens, cap=len(G)))


def dihedral_generators(G: FiniteGroup):
    """``(r, s)`` with ``r^m = s^2 = 1``, ``s r s = r^-1``, generating ``G`` of order ``2m``; else None."""
    if len(G) % 2:
        return None
    m = len(G) // 2
    orders = G.orders
    for r in G.elements:
        if orders[r] != m:
            continue
        cyc = set(generate([r]).elements)
        r_inv = r.inverse()
        for s in G.elements:
            if orders[s] == 2 and s not in cyc and s * r * s == r_inv:
                return r, s
    return None


def semidirect_z4_generators(G: FiniteGroup):
    """``(r, s)`` with ``r^m = s^4 = 1``, ``s r s^-1`` in ``{r, r^-1}``, generating ``G`` of order ``4m``."""
    if len(G) % 4:
        return None
    m = len(G) // 4
    orders = G.orders
    for r in G.elements:
        if orders[r] != m:
            continue
        r_inv = r.inverse()
        for s in G.elements:
            if orders[s] != 4:
                continue
            conj = s * r * s.inverse()
            if conj != r and conj != r_inv:
                continue
            if _span_size(G, [r, s]) == len(G):
                return r, s
    return None


def _involutions_in_symmetric(k: int) -> int:
    return sum(
        math.factorial(k) // (math.factorial(j) * math.factorial(k - 2 * j) * 2**j)
        for j in range(1, k // 2 + 1)
    )


def match_named(G: FiniteGroup) -> GroupLabel | None:
    """Best-effort identification; None means unrecognized."""
    N = len(G)
    orders = G.orders
    if max(orders.values()) == N:
        return GroupLabel("cyclic", (N,))
    if G.is_abelian():
        return GroupLabel("abelian", tuple(invariant_factors(G)))
    if dihedral_generators(G) is not None:
        return GroupLabel("dihedral", (N // 2,))
    if semidirect_z4_generators(G) is not None:
        return GroupLabel("semidirect_z4", (N // 4,))
    k = next((k for k in range(3, 9) if math.factorial(k) == N), None)
    if k is not None:
        degree = G.identity.degree
        if isinstance(G.identity, Perm) and degree == k:
            return GroupLabel("symmetric", (k,))
        involutions = sum(1 for o in orders.values() if o == 2)
        if len(G.center()) == 1 and involutions == _involutions_in_symmetric(k):
            return GroupLabel("symmetric", (k,))
    return None


@dataclass
class GroupFingerprint:
    order: int
    abelian: bool
    element_orders: dict[int, int]
    center_order: int
    label: GroupLabel | None = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            "order": self.order,
            "abelian": self.abelian,
            "element_orders": {str(k): v for k, v in sorted(self.element_orders.items())},
            "center_order": self.center_order,
            "label": str(self.label) if self.label else None,
            "label_family": self.label.family if self.label else None,
            "label_params": list(self.label.params) if self.label else None,
        }
        out.update(self.extra)
        return out


def fingerprint(G: FiniteGroup, name: bool = True) -> GroupFingerprint:
    abelian = G.is_abelian()
    return GroupFingerprint(
        order=len(G),
        abelian=abelian,
        element_orders=dict(Counter(G.orders.values())),
        center_order=len(G) if abelian else len(G.center()),
        label=match_named(G) if name else None,
    )
