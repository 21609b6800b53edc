"""Closed-form algebra of Gaussian symbols under the smoothing transform.

The symbol family

    g(z) = A * exp(-lam/4 * sum_j (z_j + conj(z_j))^2),   z in C^n,

depends only on Re(z) and is closed under the coherent-state smoothing
transform with Gaussian weight (alpha/pi)^n * exp(-alpha*|z|^2): the width
contracts as lam -> alpha*lam/(alpha + lam) and the amplitude picks up the
factor (alpha/(alpha + lam))^(n/2).  On this family the transform coincides
with the heat semigroup exp(t*Lap/4) at t = 1/alpha, where
Lap = 4 * sum_j d/dz_j d/dconj(z_j); `heat_evolve` exposes that reading.

The amplitude is carried as a free linear parameter throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

__all__ = [
    "ComplexPoint",
    "GaussianSymbol",
    "QuantParams",
    "as_point",
    "berezin_transform_closed",
    "evaluate",
    "gaussian_moment",
    "heat_evolve",
    "odd_moment_vanishes",
    "scaled",
    "taylor_remainder",
    "transform_compose",
]

PointLike = Union["ComplexPoint", complex, float, Sequence[complex]]


@dataclass(frozen=True)
class ComplexPoint:
    """A point z in C^n with the convention z_j = x_j + i*y_j.

    The associated measure is Lebesgue area dA = prod_j dx_j dy_j.
    """

    coords: tuple

    def __post_init__(self):
        coords = tuple(complex(c) for c in self.coords)
        if not coords:
            raise ValueError("a point needs at least one coordinate")
        for c in coords:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError(f"non-finite coordinate {c!r}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def origin(cls, dim: int) -> "ComplexPoint":
        return cls((0j,) * dim)


def as_point(z: PointLike, dim: int | None = None) -> ComplexPoint:
    """Normalize z (scalar, sequence, or ComplexPoint) and check its dimension."""
    if isinstance(z, ComplexPoint):
        point = z
    elif isinstance(z, (int, float, complex)):
        point = ComplexPoint((complex(z),))
    else:
        point = ComplexPoint(tuple(z))
    if dim is not None and point.dim != dim:
        raise ValueError(f"dimension mismatch: point has dim {point.dim}, expected {dim}")
    return point


@dataclass(frozen=True)
class QuantParams:
    """The quantum parameter alpha = 1/h; alpha -> infinity is the classical limit."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and a > 0.0):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def h(self) -> float:
        return 1.0 / self.alpha


@dataclass(frozen=True)
class GaussianSymbol:
    """A * exp(-compression/4 * sum_j (z_j + conj(z_j))^2) on C^dim.

    Invariant under pure imaginary shifts: the value depends only on Re(z).
    """

    dim: int
    amplitude: float = 1.0
    compression: float = 0.0

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        amp = float(self.amplitude)
        lam = float(self.compression)
        if not (math.isfinite(amp) and amp > 0.0):
            raise ValueError(f"amplitude must be positive and finite, got {self.amplitude!r}")
        if not (math.isfinite(lam) and lam >= 0.0):
            raise ValueError(f"compression must be non-negative and finite, got {self.compression!r}")
        object.__setattr__(self, "amplitude", amp)
        object.__setattr__(self, "compression", lam)

    def __call__(self, z: PointLike) -> float:
        return evaluate(self, z)


def _real_square_sum(point: ComplexPoint) -> float:
    # sum_j (z_j + conj(z_j))^2 = sum_j (2*Re z_j)^2
    total = 0.0
    for c in point.coords:
        t = 2.0 * c.real
        total += t * t
    return total


def _half_power(x: float, n: int) -> float:
    # x**(n/2) with a single square root; exact for dyadic x at small n
    out = x ** (n // 2)
    if n % 2:
        out *= math.sqrt(x)
    return out


def evaluate(g: GaussianSymbol, z: PointLike) -> float:
    """Evaluate the symbol at z; the result is real and positive."""
    point = as_point(z, g.dim)
    return g.amplitude * math.exp(-0.25 * g.compression * _real_square_sum(point))


def scaled(g: GaussianSymbol, factor: float) -> GaussianSymbol:
    """Multiply the amplitude by a positive factor."""
    return GaussianSymbol(dim=g.dim, amplitude=g.amplitude * factor, compression=g.compression)


def berezin_transform_closed(g: GaussianSymbol, q: QuantParams) -> GaussianSymbol:
    """Closed form of the smoothing transform on the Gaussian family.

    amplitude' = amplitude * (alpha/(alpha + lam))^(n/2)
    compression' = alpha*lam/(alpha + lam)

    Linear in the amplitude; compression 0 is a fixed point.
    """
    ratio = q.alpha / (q.alpha + g.compression)
    return GaussianSymbol(
        dim=g.dim,
        amplitude=g.amplitude * _half_power(ratio, g.dim),
        compression=g.compression * ratio,
    )


def heat_evolve(g: GaussianSymbol, q: QuantParams) -> GaussianSymbol:
    """Heat flow exp(t*Lap/4) of the symbol at time t = 1/alpha.

    On this family the flow coincides with the smoothing transform, so this
    delegates to the same arithmetic path and agrees bit-for-bit with
    `berezin_transform_closed`.
    """
    return berezin_transform_closed(g, q)


def transform_compose(g: GaussianSymbol, q1: QuantParams, q2: QuantParams) -> GaussianSymbol:
    """Apply the transform twice; reciprocal widths add:

    1/lam'' = 1/lam + 1/alpha_1 + 1/alpha_2   (for lam > 0).
    """
    return berezin_transform_closed(berezin_transform_closed(g, q1), q2)


def taylor_remainder(g: GaussianSymbol, q: QuantParams, z: PointLike) -> float:
    """Deviation of the transform from its first order in 1/alpha at z.

    Compares (with amplitude fixed to 1) the closed-form transform against

        [1 + lam^2*u^2/(4*alpha) - (n/2)*(lam/alpha)] * exp(-lam*u^2/4),

    u^2 = sum_j (z_j + conj(z_j))^2.  The remainder decays as O(alpha^-2).
    """
    point = as_point(z, g.dim)
    lam = g.compression
    a = q.alpha
    n = g.dim
    u2 = _real_square_sum(point)
    unit = GaussianSymbol(dim=n, amplitude=1.0, compression=lam)
    exact = evaluate(berezin_transform_closed(unit, q), point)
    approx = (1.0 + lam * lam * u2 / (4.0 * a) - 0.5 * n * lam / a) * math.exp(-0.25 * lam * u2)
    return abs(exact - approx)


def gaussian_moment(k: int, a: float) -> float:
    """integral of x^k * exp(-a*x^2) over the real line, for even k >= 0.

    Equals 1*3*5***(k-1) * sqrt(pi) / (2^(k/2) * a^((k+1)/2)); k = 0 gives
    sqrt(pi/a).  Odd k raises (see `odd_moment_vanishes`).
    """
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    if k % 2:
        raise ValueError(f"odd power k={k}: the moment vanishes by symmetry (use odd_moment_vanishes)")
    a = float(a)
    if not (math.isfinite(a) and a > 0.0):
        raise ValueError(f"a must be positive and finite, got {a!r}")
    if k == 0:
        return math.sqrt(math.pi / a)
    double_factorial = 1.0
    for odd in range(1, k, 2):
        double_factorial *= odd
    return double_factorial * math.sqrt(math.pi) / (2.0 ** (k // 2) * a ** (k // 2) * math.sqrt(a))


def odd_moment_vanishes(k: int) -> bool:
    """True when x^k * exp(-a*x^2) integrates to zero by symmetry (odd k)."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a non-negative integer, got {k!r}")
    return bool(k % 2)
