"""Weighted Bergman (Segal-Bargmann) space machinery on C^n.

Weight, reproducing kernel, the inner-product trace functional, and the
purity index of the squared transformed symbol:

    rho(z) = (alpha/pi)^n * exp(-alpha * z . conj(z))      (total mass 1)
    K(z, w) = exp(alpha * z . conj(w))                      (reproducing)
    Tr(g)  = (alpha/pi)^n * int g(z) exp(-alpha*|z|^2) dA(z)

For the Gaussian family the trace closes: Tr(A*exp(-lam*(Re z)^2 summed))
= A * (alpha/(alpha + lam))^(n/2).  The purity index is the normalized
trace (alpha/(alpha + 3*lam))^(n/2) of the squared transformed symbol; it
tends to 1 in the classical limit alpha -> infinity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import tree_sum
from .gaussian_calculus import (
    GaussianSymbol,
    PointLike,
    QuantParams,
    _half_power,
    as_point,
    berezin_transform_closed,
)
from .quadrature import QuadratureRule1D, gauss_hermite, integrate
from .semiclassics import PolynomialSymbol

__all__ = [
    "TraceReport",
    "WeightSpec",
    "kernel",
    "purity_index",
    "reproducing_residual",
    "trace",
    "trace_numeric",
    "weight",
    "weight_mass_numeric",
]


@dataclass(frozen=True)
class WeightSpec:
    """Dimension and quantum parameter of the Gaussian weight rho."""

    dim: int
    alpha: float

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim!r}")
        QuantParams(self.alpha)  # validates alpha
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def quant(self) -> QuantParams:
        return QuantParams(self.alpha)


@dataclass(frozen=True)
class TraceReport:
    """Trace data of the squared transformed symbol (amplitude fixed to 1)."""

    raw_trace: float
    normalized_trace: float
    alpha: float
    lam: float
    dim: int

    def __post_init__(self):
        if not (0.0 < self.normalized_trace <= 1.0):
            raise ValueError(f"normalized trace must lie in (0, 1], got {self.normalized_trace!r}")
        if not (math.isfinite(self.raw_trace) and self.raw_trace > 0.0):
            raise ValueError(f"raw trace must be positive and finite, got {self.raw_trace!r}")


def kernel(z: PointLike, w: PointLike, q: QuantParams) -> complex:
    """Reproducing kernel K(z, w) = exp(alpha * sum_j z_j * conj(w_j)).

    Hermitian: kernel(z, w) = conj(kernel(w, z)); the diagonal is positive.
    """
    zp = as_point(z)
    wp = as_point(w, zp.dim)
    inner = sum(zc * wc.conjugate() for zc, wc in zip(zp.coords, wp.coords))
    return cmath.exp(q.alpha * inner)


def weight(z: PointLike, q: QuantParams) -> float:
    """Gaussian weight rho(z) = (alpha/pi)^n * exp(-alpha * |z|^2)."""
    point = as_point(z)
    sq = sum(c.real * c.real + c.imag * c.imag for c in point.coords)
    return (q.alpha / math.pi) ** point.dim * math.exp(-q.alpha * sq)


def weight_mass_numeric(spec: WeightSpec, order: int = 60) -> float:
    """Quadrature check of the weight's total mass (should be 1); n <= 2."""
    if spec.dim > 2:
        raise ValueError("mass check by tensor quadrature supports n <= 2")
    rules = [gauss_hermite(order)] * (2 * spec.dim)
    value = integrate(lambda *coords: np.ones(np.broadcast(*coords).shape), rules, scale=spec.alpha)
    return (spec.alpha / math.pi) ** spec.dim * float(value)


def trace(g: GaussianSymbol, q: QuantParams) -> float:
    """Closed-form inner-product trace of a Gaussian symbol.

    Tr(g) = amplitude * (alpha/(alpha + lam))^(n/2); constants trace to their
    amplitude, and Tr -> g(0) as alpha -> infinity.
    """
    return g.amplitude * _half_power(q.alpha / (q.alpha + g.compression), g.dim)


def _trace_pair_numeric(lam: float, alpha: float, order: int) -> float:
    # one complex coordinate: (alpha/pi) * int exp(-lam*x^2 - alpha*(x^2+y^2)) dx dy
    rules = [gauss_hermite(order)] * 2
    value = integrate(lambda x, y: np.exp(-lam * x * x) * np.ones_like(y), rules, scale=alpha)
    return alpha / math.pi * float(value)


def trace_numeric(g: GaussianSymbol, q: QuantParams, order: int = 80) -> float:
    """Quadrature evaluation of the trace integral (oracle for `trace`).

    Full tensor grids for n <= 2; for n > 2 the integrand factorizes per
    complex coordinate, so the value is the one-coordinate quadrature raised
    to the n-th power (still a purely numeric route).
    """
    if g.dim <= 2:
        rules = [gauss_hermite(order)] * (2 * g.dim)
        if g.dim == 1:
            fn = lambda x, y: np.exp(-g.compression * x * x) * np.ones_like(y)
        else:
            fn = lambda x1, y1, x2, y2: np.exp(
                -g.compression * (x1 * x1 + x2 * x2)
            ) * np.ones_like(y1 + y2)
        value = integrate(fn, rules, scale=q.alpha)
        return g.amplitude * (q.alpha / math.pi) ** g.dim * float(value)
    pair = _trace_pair_numeric(g.compression, q.alpha, order)
    return g.amplitude * pair**g.dim


def purity_index(lam: float, q: QuantParams, dim: int = 1) -> TraceReport:
    """Trace data of the squared transformed Gaussian with compression lam.

    normalized_trace = (alpha/(alpha + 3*lam))^(n/2); raw_trace is the trace
    of the squared transform computed from the transformed symbol (A = 1).
    """
    lam = float(lam)
    if not (math.isfinite(lam) and lam > 0.0):
        raise ValueError(f"compression must be positive, got {lam!r}")
    transformed = berezin_transform_closed(GaussianSymbol(dim=dim, amplitude=1.0, compression=lam), q)
    squared = GaussianSymbol(
        dim=dim,
        amplitude=transformed.amplitude**2,
        compression=2.0 * transformed.compression,
    )
    raw = trace(squared, q)
    normalized = _half_power(q.alpha / (q.alpha + 3.0 * lam), dim)
    return TraceReport(raw_trace=raw, normalized_trace=normalized, alpha=q.alpha, lam=lam, dim=dim)


def purity_raw_numeric(lam: float, q: QuantParams, dim: int = 1, order: int = 80) -> float:
    """Quadrature cross-check of the raw squared-transform trace (n <= 2 tensor)."""
    transformed = berezin_transform_closed(GaussianSymbol(dim=dim, amplitude=1.0, compression=lam), q)
    squared = GaussianSymbol(
        dim=dim,
        amplitude=transformed.amplitude**2,
        compression=2.0 * transformed.compression,
    )
    return trace_numeric(squared, q, order=order)


def reproducing_residual(
    p: PolynomialSymbol,
    z: PointLike,
    q: QuantParams,
    rule: QuadratureRule1D,
) -> float:
    """| int p(w) K(z, w) rho(w) dA(w)  -  p(z) | for holomorphic p.

    The kernel reproduces holomorphic polynomials; non-holomorphic input
    (any conj-coordinate power) is rejected.  Tensor quadrature limits the
    dimension to n <= 2 and the degree to the rule's exactness budget.
    """
    if p.degree_zbar > 0:
        raise ValueError("reproducing property requires a holomorphic polynomial (no conj powers)")
    point = as_point(z, p.dim)
    n = p.dim
    if n > 2:
        raise ValueError("tensor quadrature supports n <= 2")
    if 2 * p.degree > 2 * rule.order - 1:
        raise ValueError(f"degree {p.degree} exceeds the exactness budget of an order-{rule.order} rule")
    alpha = q.alpha
    scaled_nodes = rule.nodes / math.sqrt(alpha)
    if n == 1:
        coords = (scaled_nodes[:, None] + 1j * scaled_nodes[None, :],)
        wgrid = rule.weights[:, None] * rule.weights[None, :]
    else:
        coords = (
            scaled_nodes[:, None, None, None] + 1j * scaled_nodes[None, None, :, None],
            scaled_nodes[None, :, None, None] + 1j * scaled_nodes[None, None, None, :],
        )
        wgrid = (
            rule.weights[:, None, None, None]
            * rule.weights[None, :, None, None]
            * rule.weights[None, None, :, None]
            * rule.weights[None, None, None, :]
        )
    phase = np.zeros(coords[0].shape if n == 1 else np.broadcast(*coords).shape, dtype=complex)
    for zc, wc in zip(point.coords, coords):
        phase = phase + alpha * zc * np.conj(wc)
    vals = p.eval_many(coords) * np.exp(phase)
    total = tree_sum(vals * wgrid) / math.pi**n
    return abs(total - p.eval_point(point))
