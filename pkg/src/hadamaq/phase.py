"""Unit-circle scalars, exact (roots of unity) or approximate (floating point).

An :class:`Exact` phase ``Exact(k, l)`` stands for ``exp(2*pi*i*k/l)`` and is
kept in reduced form, so two exact phases are equal iff they are the same
complex number.  An :class:`Approx` phase is a plain float pair.  Mixing the
two degrades to :class:`Approx`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

UNIT_TOL = 1e-9
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Exact:
    k: int
    l: int

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"order must be positive, got {self.l}")
        k = self.k % self.l
        g = math.gcd(k, self.l)
        object.__setattr__(self, "k", k // g)
        object.__setattr__(self, "l", self.l // g)

    @property
    def order(self) -> int:
        return self.l

    @property
    def angle(self) -> float:
        return TWO_PI * self.k / self.l

    def __complex__(self) -> complex:
        # exact values for the quarter turns keep residuals at zero
        if 4 % self.l == 0:
            return (1 + 0j, 1j, -1 + 0j, -1j)[self.k * (4 // self.l)]
        return cmath.exp(1j * self.angle)

    def conjugate(self) -> Exact:
        return Exact(-self.k, self.l)

    def __pow__(self, e: int) -> Exact:
        return Exact(self.k * e, self.l)

    def __neg__(self) -> Exact:
        return self * MINUS_ONE

    def __mul__(self, other):
        return phase_mul(self, other)

    def __truediv__(self, other):
        return phase_quot(self, other)

    def __str__(self) -> str:
        return f"{self.k}/{self.l}"


@dataclass(frozen=True)
class Approx:
    re: float
    im: float

    def __post_init__(self):
        if abs(self.re * self.re + self.im * self.im - 1.0) > UNIT_TOL:
            raise ValueError(f"({self.re}, {self.im}) is not on the unit circle")

    @classmethod
    def from_complex(cls, z: complex) -> Approx:
        return cls(float(z.real), float(z.imag))

    @property
    def angle(self) -> float:
        return math.atan2(self.im, self.re) % TWO_PI

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def conjugate(self) -> Approx:
        return Approx(self.re, -self.im)

    def __pow__(self, e: int) -> Approx:
        return Approx.from_complex(complex(self) ** e)

    def __neg__(self) -> Approx:
        return Approx(-self.re, -self.im)

    def __mul__(self, other):
        return phase_mul(self, other)

    def __truediv__(self, other):
        return phase_quot(self, other)

    def __str__(self) -> str:
        return f"{self.re!r},{self.im!r}"


Phase = Union[Exact, Approx]
UnitVector = Sequence[Phase]

ONE = Exact(0, 1)
MINUS_ONE = Exact(1, 2)
I = Exact(1, 4)


def as_phase(z) -> Phase:
    """Coerce a phase, or a unit-modulus complex number, into a Phase."""
    if isinstance(z, (Exact, Approx)):
        return z
    z = complex(z)
    if z == 1:
        return ONE
    if z == -1:
        return MINUS_ONE
    if z == 1j:
        return I
    if z == -1j:
        return Exact(3, 4)
    return Approx.from_complex(z)


def parse_phase(text: str) -> Phase:
    """Parse ``"k/l"`` as an exact phase, ``"re,im"`` as an approximate one."""
    text = text.strip()
    if "/" in text:
        k, l = text.split("/")
        return Exact(int(k), int(l))
    if "," in text:
        re, im = text.split(",")
        return Approx(float(re), float(im))
    return as_phase(complex(text))


def phase_mul(a: Phase, b: Phase) -> Phase:
    if isinstance(a, Exact) and isinstance(b, Exact):
        l = a.l * b.l // math.gcd(a.l, b.l)
        return Exact(a.k * (l // a.l) + b.k * (l // b.l), l)
    return Approx.from_complex(complex(a) * complex(b))


def phase_quot(a: Phase, b: Phase) -> Phase:
    return phase_mul(a, b.conjugate())


def _circular_distance(x: float, y: float) -> float:
    d = abs(x - y) % TWO_PI
    return min(d, TWO_PI - d)


def snap_to_root(a: Phase, max_order: int = 48, tol: float = 1e-6) -> Exact | None:
    """Nearest root of unity of order at most ``max_order``, or None.

    None means no such root lies within ``tol`` radians of ``a``.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if isinstance(a, Exact) and a.l <= max_order:
        return a
    theta = a.angle
    best, best_dist = None, math.inf
    for l in range(1, max_order + 1):
        k = round(theta * l / TWO_PI) % l
        dist = _circular_distance(theta, TWO_PI * k / l)
        if dist < best_dist - 1e-15:
            best, best_dist = Exact(k, l), dist
    if best_dist <= tol:
        return best
    return None


def vec_equal_mod_scalar(v: UnitVector, w: UnitVector, tol: float = UNIT_TOL) -> Phase | None:
    """Return ``lam`` with ``v == lam * w`` entrywise, or None if there is none.

    Exact vectors are compared structurally, anything else within ``tol``.
    """
    if len(v) != len(w):
        raise ValueError("vectors differ in length")
    if not v:
        return ONE
    lam = phase_quot(v[0], w[0])
    exact = isinstance(lam, Exact) and all(isinstance(x, Exact) for x in (*v, *w))
    for x, y in zip(v, w):
        if exact:
            if x != lam * y:
                return None
        elif abs(complex(x) - complex(lam) * complex(y)) > tol:
            return None
    return lam
