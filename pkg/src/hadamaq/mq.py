"""The 4x4 family ``M_q``: predicted group, explicit generators, realized group, factorization checks.

With ``n`` the order of ``q**2`` written ``n = 2**s * m`` (``m`` odd) the
predicted groups are ``Z_2n x| Z_2`` for ``s = 0``, ``Z_(n/2) x| Z_4`` for
``s = 1``, ``Z_n x| Z_4`` for ``s >= 2`` and ``Z x| Z_2`` for ``q`` of infinite
order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import IndexOutOfRange, InfiniteCase
from .groups import (
    DEFAULT_CAP,
    GroupFingerprint,
    GroupLabel,
    Monomial,
    ProjectiveMonomial,
    dihedral_generators,
    fingerprint,
    generate,
    semidirect_z4_generators,
)
from .phase import I, ONE, Exact, Phase, as_phase, snap_to_root

FACTOR_TOL = 1e-10

ALPHA = Monomial((1, 0, 3, 2), (ONE,) * 4)
BETA = Monomial((2, 3, 0, 1), (ONE,) * 4)
GAMMA = Monomial((3, 2, 1, 0), (ONE,) * 4)
# delta has ones at (0,1), (1,2), (2,3), (3,0): column c lands in row c - 1
DELTA = Monomial((3, 0, 1, 2), (ONE,) * 4)


@dataclass(frozen=True)
class MqCase:
    q: Phase
    n: float  # order of q**2, math.inf when not a root of unity
    s: int | None
    m: int | None

    @property
    def case_id(self) -> str:
        if self.n == math.inf:
            return "infinite"
        return {0: "s0", 1: "s1"}.get(self.s, "s2plus")

    @property
    def finite(self) -> bool:
        return self.n != math.inf


def classify(q, max_order: int = 48, tol: float = 1e-6) -> MqCase:
    q = as_phase(q)
    if not isinstance(q, Exact):
        snapped = snap_to_root(q, max_order, tol)
        if snapped is None:
            return MqCase(q, math.inf, None, None)
        q = snapped
    n = (q * q).l
    s = (n & -n).bit_length() - 1
    return MqCase(q, n, s, n >> s)


def predicted_group(c: MqCase) -> GroupLabel:
    if not c.finite:
        return GroupLabel("infinite_dihedral")
    n = int(c.n)
    if c.s == 0:
        return GroupLabel("dihedral", (2 * n,))
    if c.s == 1:
        return GroupLabel("semidirect_z4", (n // 2,))
    return GroupLabel("semidirect_z4", (n,))


@dataclass
class Generators:
    """Generators for the case, plus the (possibly sign-flipped) ``q`` they use."""

    case_id: str
    q: Exact
    q_flipped: bool
    elements: dict[str, Monomial] = field(default_factory=dict)

    @property
    def group_generators(self) -> list[Monomial]:
        if self.case_id == "s0":
            return [self.elements["alpha"], self.elements["sigma"]]
        if self.case_id == "s1":
            return [self.elements["delta"], self.elements["nu"]]
        return [self.elements["delta"], self.elements["w_tau"]]


def adjusted_q(c: MqCase) -> tuple[Exact, bool]:
    """``q`` or ``-q``: ``q**n = 1`` for s = 0, ``(-i q)**(n/2) = 1`` for s = 1."""
    q, n = c.q, int(c.n)
    if c.s == 0 and q**n != ONE:
        return -q, True
    if c.s == 1 and (Exact(3, 4) * q) ** (n // 2) != ONE:
        return -q, True
    return q, False


def sigma_matrix(q: Exact) -> Monomial:
    qi = q.conjugate()
    # entries q at (0,2), (2,0) and q^-1 at (1,3), (3,1)
    return Monomial((2, 3, 0, 1), (q, qi, q, qi))


def tau_matrix(q: Exact) -> Monomial:
    return Monomial((0, 1, 2, 3), (-q, q.conjugate(), -q, q.conjugate()))


def generators(c: MqCase) -> Generators:
    if not c.finite:
        raise InfiniteCase("no finite generators for q of infinite order")
    q, flipped = adjusted_q(c)
    g = Generators(c.case_id, q, flipped)
    if c.case_id == "s0":
        g.elements.update(alpha=ALPHA, beta=BETA, gamma=GAMMA, sigma=sigma_matrix(q))
    else:
        tau = tau_matrix(q)
        g.elements.update(delta=DELTA, tau=tau)
        if c.case_id == "s1":
            g.elements["nu"] = tau.scale(I)
        else:
            g.elements["w_tau"] = tau.scale(Exact(1, 2 * int(c.n)))
    return g


def relations(c: MqCase) -> dict[str, bool]:
    """Exact generator relations used in the factorization argument."""
    g = generators(c)
    e = g.elements
    n = int(c.n)
    one = Monomial.identity(4)
    if c.case_id == "s0":
        a, s = e["alpha"], e["sigma"]
        return {
            "alpha^2 = 1": a * a == one,
            "(alpha sigma)^2 = 1": (a * s) ** 2 == one,
            "sigma^2n = 1": s ** (2 * n) == one,
            "sigma^n = beta": s**n == BETA,
        }
    d, t = e["delta"], e["tau"]
    out = {
        "delta^4 = 1": d**4 == one,
        "tau delta tau = -delta": t * d * t == -d,
    }
    if c.case_id == "s1":
        out["nu^(n/2) = 1"] = e["nu"] ** (n // 2) == one
    else:
        out["tau^n = -1"] = t**n == -one
        out["(w tau)^n = 1"] = e["w_tau"] ** n == one
    return out


@dataclass
class RealizedGroup:
    fingerprint: GroupFingerprint
    predicted: GroupLabel
    presentation: tuple | None
    projective: GroupFingerprint

    @property
    def matches_prediction(self) -> bool:
        return self.fingerprint.order == self.predicted.order and self.presentation is not None


def realized_group(c: MqCase, cap: int = DEFAULT_CAP) -> RealizedGroup:
    """Close the generators into a group and compare with :func:`predicted_group`.

    ``presentation`` holds the ``(r, s)`` pair exhibiting the predicted
    semidirect structure, or None when no such pair exists.
    ``projective`` fingerprints the image modulo scalar matrices.
    """
    pred = predicted_group(c)
    G = generate(generators(c).group_generators, cap=cap)
    fp = fingerprint(G)
    if pred.family == "dihedral" and len(G) == pred.order:
        pres = dihedral_generators(G)
    elif pred.family == "semidirect_z4" and len(G) == pred.order:
        pres = semidirect_z4_generators(G)
    else:
        pres = None
    P = generate([ProjectiveMonomial.of(g) for g in G.gens], cap=cap)
    return RealizedGroup(fp, pred, pres, fingerprint(P))


def rho(q: Phase, k: int, sign: int) -> np.ndarray:
    """``(1, +-q^k, (-1)^k, +-(-q)^k)``."""
    qc = complex(q)
    return np.array([1, sign * qc**k, (-1) ** k, sign * (-qc) ** k], dtype=complex)


def factorization_check(c: MqCase, k: int, sign: int) -> tuple[bool, float]:
    """Compare the projection onto ``rho_k`` with the product of group elements.

    s = 0: ``(1 + (-1)^k sigma^n)(1 +- (-1)^k alpha sigma^k) / 4``;
    otherwise ``(1 + (-1)^k delta^2)(1 +- delta tau^k) / 4``.  Each bracket is
    twice a projection, hence the factor 1/4.
    """
    if not c.finite:
        raise InfiniteCase("factorization is only checked for finite order")
    n = int(c.n)
    if not 0 <= k < 2 * n:
        raise IndexOutOfRange(f"k={k} outside 0..{2 * n - 1}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    g = generators(c)
    x = rho(g.q, k, sign)
    lhs = np.outer(x, x.conj()) / 4
    one = np.eye(4)
    pm = (-1) ** k
    if c.case_id == "s0":
        a, s = g.elements["alpha"], g.elements["sigma"]
        rhs = (one + pm * (s**n).to_array()) @ (one + sign * pm * (a * s**k).to_array()) / 4
    else:
        d, t = g.elements["delta"], g.elements["tau"]
        rhs = (one + pm * (d * d).to_array()) @ (one + sign * (d * t**k).to_array()) / 4
    res = float(np.linalg.norm(lhs - rhs))
    return res <= FACTOR_TOL, res


def check_all(c: MqCase) -> list[tuple[int, int, bool, float]]:
    n = int(c.n)
    return [(k, sign, *factorization_check(c, k, sign)) for k in range(2 * n) for sign in (1, -1)]
