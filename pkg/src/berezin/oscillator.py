"""Harmonic-oscillator spectrum checks and the uncertainty equality.

The spectral solver discretizes the one-dimensional operator

    H = x^2 - d^2/dx^2 + (h - 1)

with second-order central differences and Dirichlet ends; its eigenvalues
are 2j + h (even spacing, ground energy h), and multiplying by the
dimension gives the n-dimensional diagonal levels n*(2j + h).  The same
operator form follows from the ladder factorization H = 2*zbar_hat*z_hat + h
with z_hat = (x_hat + i*p_hat)/sqrt(2) and p_hat = -i*d/dx.

`ladder_identity_residual` and `commutator_residual` instead keep h inside
the momentum operator (p_hat = -i*h*d/dx, so [x, p] = i*h) and verify the
operator identities H = x^2 - h^2 d^2/dx^2 = 2*zbar_hat*z_hat + h at the
finite-difference level; both conventions are checked independently.

The uncertainty functions work with the compressed Gaussian state
psi = K * exp(-lam*x^2 / (2*(1+lam))) and second moments taken against the
unnormalized density psi^2; the product of variances equals the squared
half-commutator expectation exactly for every lam > 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from .quadrature import gauss_hermite, integrate

__all__ = [
    "GridSpec",
    "OscillatorSpec",
    "UncertaintyReport",
    "commutator_residual",
    "eigenstate_residual",
    "ground_state_residual",
    "ladder_identity_residual",
    "spectrum",
    "uncertainty_quadrature",
    "uncertainty_report",
]

SPECTRAL_MIN_POINTS = 500
SPECTRAL_MIN_HALF_WIDTH = 6.0


@dataclass(frozen=True)
class OscillatorSpec:
    dim: int = 1
    h: float = 1.0

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        h = float(self.h)
        if not (math.isfinite(h) and h > 0.0):
            raise ValueError(f"h must be positive and finite, got {self.h!r}")
        object.__setattr__(self, "h", h)


@dataclass(frozen=True)
class GridSpec:
    """Interior points of [-L, L] with Dirichlet boundaries."""

    half_width: float
    points: int

    def __post_init__(self):
        if not isinstance(self.points, int) or self.points < 3:
            raise ValueError(f"points must be an integer >= 3, got {self.points!r}")
        half_width = float(self.half_width)
        if not (math.isfinite(half_width) and half_width > 0.0):
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        object.__setattr__(self, "half_width", half_width)

    def coordinates(self) -> tuple[np.ndarray, float]:
        spacing = 2.0 * self.half_width / (self.points + 1)
        x = -self.half_width + spacing * np.arange(1, self.points + 1)
        return x, spacing


def _warn_if_coarse(grid: GridSpec) -> None:
    if grid.points < SPECTRAL_MIN_POINTS or grid.half_width < SPECTRAL_MIN_HALF_WIDTH:
        warnings.warn(
            f"grid (L={grid.half_width}, N={grid.points}) is below the spectral-claim "
            f"resolution (L >= {SPECTRAL_MIN_HALF_WIDTH}, N >= {SPECTRAL_MIN_POINTS}); "
            "results may miss the stated tolerances",
            stacklevel=3,
        )


def spectrum(spec: OscillatorSpec, grid: GridSpec, levels: int) -> np.ndarray:
    """Lowest eigenvalues of the discretized oscillator, ascending.

    For dim = 1 these approximate 2j + h; higher dimensions scale the
    one-dimensional levels by dim (diagonal levels n*(2j + h)).  Coarse
    grids produce a warning-carrying result.
    """
    if not isinstance(levels, int) or not 1 <= levels <= 10:
        raise ValueError(f"levels must be an integer in [1, 10], got {levels!r}")
    _warn_if_coarse(grid)
    x, dx = grid.coordinates()
    diagonal = x * x + 2.0 / dx**2 + (spec.h - 1.0)
    off_diagonal = np.full(grid.points - 1, -1.0 / dx**2)
    values = eigvalsh_tridiagonal(diagonal, off_diagonal, select="i", select_range=(0, levels - 1))
    if not np.all(np.isfinite(values)):
        raise ArithmeticError("eigenvalue solve produced non-finite values")
    return spec.dim * np.sort(values)


def _second_diff(psi: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(psi)
    out[1:-1] = (psi[2:] - 2.0 * psi[1:-1] + psi[:-2]) / dx**2
    out[0] = (psi[1] - 2.0 * psi[0]) / dx**2
    out[-1] = (psi[-2] - 2.0 * psi[-1]) / dx**2
    return out


def _first_diff(psi: np.ndarray, dx: float) -> np.ndarray:
    out = np.empty_like(psi)
    out[1:-1] = (psi[2:] - psi[:-2]) / (2.0 * dx)
    out[0] = psi[1] / (2.0 * dx)
    out[-1] = -psi[-2] / (2.0 * dx)
    return out


def _sample_state(state, x: np.ndarray) -> np.ndarray:
    psi = np.asarray(state(x) if callable(state) else state, dtype=complex)
    if psi.shape != x.shape:
        raise ValueError(f"state samples have shape {psi.shape}, expected {x.shape}")
    return psi


def _norm_guard(psi: np.ndarray, dx: float) -> float:
    norm = float(np.linalg.norm(psi)) * math.sqrt(dx)
    if norm < 1e-10:
        raise ValueError("state has negligible norm on the grid")
    return float(np.linalg.norm(psi))


def eigenstate_residual(
    grid: GridSpec,
    state: Callable[[np.ndarray], np.ndarray],
    energy: float,
    h: float = 1.0,
) -> float:
    """||H psi - E psi|| / ||psi|| for the discretized H = x^2 - d2 + (h-1)."""
    x, dx = grid.coordinates()
    psi = _sample_state(state, x)
    norm = _norm_guard(psi, dx)
    h_psi = (x * x + (h - 1.0)) * psi - _second_diff(psi, dx)
    return float(np.linalg.norm(h_psi - energy * psi)) / norm


def ground_state_residual(spec: OscillatorSpec, grid: GridSpec) -> float:
    """Eigen-residual of the Gaussian ground state exp(-x^2/2) at E_0 = h.

    Limited by the second-order discretization; refine the grid to shrink it.
    """
    if spec.dim != 1:
        raise ValueError("the grid solver is one-dimensional")
    return eigenstate_residual(grid, lambda x: np.exp(-x * x / 2.0), spec.h, h=spec.h)


def ladder_identity_residual(
    test_states: Sequence[Callable[[np.ndarray], np.ndarray]],
    grid: GridSpec,
    h: float = 1.0,
) -> float:
    """Worst residual of H psi = 2*zbar_hat(z_hat psi) + h*psi over the states.

    Here H = x^2 - h^2 d^2/dx^2 and z_hat = (x_hat + i*p_hat)/sqrt(2) with
    p_hat = -i*h*d/dx, all applied by central differences; the identity is
    operator-level, so the residual is pure discretization error.
    """
    if not test_states:
        raise ValueError("need at least one test state")
    x, dx = grid.coordinates()
    worst = 0.0
    for state in test_states:
        psi = _sample_state(state, x)
        norm = _norm_guard(psi, dx)
        h_psi = x * x * psi - h * h * _second_diff(psi, dx)
        z_psi = (x * psi + h * _first_diff(psi, dx)) / math.sqrt(2.0)
        ladder = math.sqrt(2.0) * (x * z_psi - h * _first_diff(z_psi, dx)) + h * psi
        worst = max(worst, float(np.linalg.norm(h_psi - ladder)) / norm)
    return worst


_COMMUTATOR_STATES = (
    lambda x: np.exp(-x * x / 2.0),
    lambda x: x * np.exp(-x * x / 2.0),
    lambda x: x * x * np.exp(-x * x / 2.0),
    lambda x: np.cos(x) * np.exp(-x * x / 2.0),
)


def commutator_residual(grid: GridSpec, h: float = 1.0, pair: str = "xp") -> float:
    """Worst canonical-commutator residual over a fixed smooth family.

    pair "xp" checks ||(x p - p x) psi - i h psi|| / ||psi|| with
    p = -i*h*d/dx by central differences; "xx" and "pp" check the vanishing
    self-commutators.
    """
    if pair not in ("xp", "xx", "pp"):
        raise ValueError(f"pair must be one of 'xp', 'xx', 'pp', got {pair!r}")
    x, dx = grid.coordinates()
    worst = 0.0
    for state in _COMMUTATOR_STATES:
        psi = _sample_state(state, x)
        norm = _norm_guard(psi, dx)
        if pair == "xp":
            p_psi = -1j * h * _first_diff(psi, dx)
            p_x_psi = -1j * h * _first_diff(x * psi, dx)
            residual = x * p_psi - p_x_psi - 1j * h * psi
        elif pair == "xx":
            residual = x * (x * psi) - x * (x * psi)
        else:
            p_psi = -1j * h * _first_diff(psi, dx)
            residual = -1j * h * _first_diff(p_psi, dx) - (-1j * h * _first_diff(p_psi, dx))
        worst = max(worst, float(np.linalg.norm(residual)) / norm)
    return worst


@dataclass(frozen=True)
class UncertaintyReport:
    """Variances and the two sides of the uncertainty identity.

    Second moments are taken against the unnormalized density psi^2 (both
    sides scale as K^4, so the ratio is normalization-free); `norm_sq` lets
    callers form conventional variances var/||psi||^2.
    """

    lam: float
    amplitude: float
    var_x: float
    var_p: float
    rhs: float
    ratio: float
    norm_sq: float

    def __post_init__(self):
        for name in ("lam", "amplitude", "var_x", "var_p", "rhs", "ratio", "norm_sq"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if self.ratio < 1.0 - 1e-12:
            raise ValueError(f"uncertainty ratio {self.ratio!r} violates the lower bound 1")

    @property
    def var_x_normalized(self) -> float:
        return self.var_x / self.norm_sq

    @property
    def var_p_normalized(self) -> float:
        return self.var_p / self.norm_sq


def _validate_uncertainty_args(lam: float, amplitude: float) -> tuple[float, float]:
    lam = float(lam)
    amplitude = float(amplitude)
    if not (math.isfinite(lam) and lam > 0.0):
        raise ValueError(f"compression must be positive, got {lam!r}")
    if not (math.isfinite(amplitude) and amplitude > 0.0):
        raise ValueError(f"amplitude must be positive, got {amplitude!r}")
    return lam, amplitude


def uncertainty_report(lam: float, amplitude: float = 1.0) -> UncertaintyReport:
    """Closed-form moments of psi = K exp(-lam*x^2/(2*(1+lam))).

    var_x = K^2 sqrt(pi) (1+lam)^(3/2) / (2 lam^(3/2)),
    var_p = K^2 sqrt(pi) lam^(1/2) / (2 (1+lam)^(1/2)),
    rhs   = K^4 pi (1+lam) / (4 lam);  var_x*var_p = rhs identically.
    """
    lam, amplitude = _validate_uncertainty_args(lam, amplitude)
    k2 = amplitude * amplitude
    sqrt_pi = math.sqrt(math.pi)
    one = 1.0 + lam
    var_x = k2 * sqrt_pi * one * math.sqrt(one) / (2.0 * lam * math.sqrt(lam))
    var_p = k2 * sqrt_pi * math.sqrt(lam) / (2.0 * math.sqrt(one))
    rhs = k2 * k2 * math.pi * one / (4.0 * lam)
    norm_sq = k2 * math.sqrt(math.pi * one / lam)
    return UncertaintyReport(
        lam=lam,
        amplitude=amplitude,
        var_x=var_x,
        var_p=var_p,
        rhs=rhs,
        ratio=var_x * var_p / rhs,
        norm_sq=norm_sq,
    )


def uncertainty_quadrature(lam: float, amplitude: float = 1.0, order: int = 80) -> UncertaintyReport:
    """Recompute the uncertainty moments by Gauss-Hermite quadrature.

    Integrates x^2 psi^2, (d psi/dx)^2 (analytic derivative), and psi^2
    directly; an independent route to the closed forms.
    """
    lam, amplitude = _validate_uncertainty_args(lam, amplitude)
    k2 = amplitude * amplitude
    a = lam / (1.0 + lam)
    rules = [gauss_hermite(order)]
    second_moment = float(integrate(lambda u: u * u, rules, scale=a))
    mass = float(integrate(lambda u: np.ones_like(u), rules, scale=a))
    var_x = k2 * second_moment
    var_p = k2 * a * a * second_moment
    rhs = 0.25 * (k2 * mass) ** 2
    return UncertaintyReport(
        lam=lam,
        amplitude=amplitude,
        var_x=var_x,
        var_p=var_p,
        rhs=rhs,
        ratio=var_x * var_p / rhs,
        norm_sq=k2 * mass,
    )
