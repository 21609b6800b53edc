"""Independent numerical-integration oracle.

Gauss-Hermite rules are built from the Jacobi matrix of the Hermite
recurrence (Golub-Welsch): the nodes are the eigenvalues of the symmetric
tridiagonal matrix with off-diagonal sqrt(k/2), and the weights are
sqrt(pi) times the squared first components of the normalized eigenvectors.
An order-m rule integrates t^k * exp(-t^2) exactly for k <= 2m-1.

`berezin_transform_numeric` evaluates the smoothing-transform integral

    (1/K(z,z)) * int f(w) |K(z,w)|^2 rho(w) dA(w),
    rho(w) = (alpha/pi)^n exp(-alpha*|w|^2),  K(z,w) = exp(alpha * z . conj(w)),

by tensor quadrature over R^(2n) after absorbing exp(-alpha*|w|^2) into the
rule through the change of variables t = sqrt(alpha) * coordinate.  It is an
oracle: it never consults the closed-form width map.  A seeded Monte-Carlo
estimator provides a second, statistically independent route.

All reductions use a fixed deterministic order (pairwise folding), so
results are reproducible run-to-run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import _kernels
from ._kernels import tree_sum
from .gaussian_calculus import GaussianSymbol, PointLike, QuantParams, as_point

__all__ = [
    "MonteCarloConfig",
    "QuadratureRule1D",
    "berezin_transform_numeric",
    "gauss_hermite",
    "integrate",
    "monte_carlo_transform",
    "tree_sum",
]

MAX_RULE_ORDER = 512
MAX_TENSOR_DIM = 4


@dataclass(frozen=True)
class QuadratureRule1D:
    """Nodes and positive weights of a Gauss-Hermite rule of given order."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        if nodes.shape != (self.order,) or weights.shape != (self.order,):
            raise ValueError("nodes/weights must both have length equal to the order")
        if not np.all(np.isfinite(nodes)) or not np.all(np.isfinite(weights)):
            raise ValueError("non-finite rule data")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)


@dataclass(frozen=True)
class MonteCarloConfig:
    """Sample count and seed for the Monte-Carlo oracle.

    The seed fully determines the sample stream; estimates quote at least
    10^3 samples.
    """

    samples: int
    seed: int

    def __post_init__(self):
        if not isinstance(self.samples, int) or self.samples < 1000:
            raise ValueError(f"samples must be an integer >= 1000, got {self.samples!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in an unsigned 64-bit integer, got {self.seed!r}")


def gauss_hermite(order: int) -> QuadratureRule1D:
    """Build the order-m Gauss-Hermite rule for the weight exp(-t^2).

    Nodes are symmetrized about 0 in exact arithmetic; the weights sum to
    sqrt(pi) up to round-off.
    """
    if not isinstance(order, int) or not 1 <= order <= MAX_RULE_ORDER:
        raise ValueError(f"order must be an integer in [1, {MAX_RULE_ORDER}], got {order!r}")
    if order == 1:
        return QuadratureRule1D(np.zeros(1), np.array([math.sqrt(math.pi)]), 1)
    off_diagonal = np.sqrt(np.arange(1, order, dtype=np.float64) / 2.0)
    # bisection + inverse iteration keeps the tiny extreme first components
    # positive (the default stemr driver flushes them to zero at high order)
    nodes, vectors = eigh_tridiagonal(np.zeros(order), off_diagonal, lapack_driver="stebz")
    weights = math.sqrt(math.pi) * vectors[0, :] ** 2
    # enforce the exact +/- symmetry of the rule
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    if order % 2:
        nodes[order // 2] = 0.0
    return QuadratureRule1D(nodes, weights, order)


def _normalize_scales(scale, d: int) -> np.ndarray:
    scales = np.broadcast_to(np.asarray(scale, dtype=np.float64), (d,)).copy()
    if not np.all(np.isfinite(scales)) or np.any(scales <= 0.0):
        raise ValueError(f"scales must be positive and finite, got {scale!r}")
    return scales


def _raise_non_finite(flat_index: int, shape, axes) -> None:
    idx = np.unravel_index(flat_index, shape)
    node = tuple(float(axis[i]) for axis, i in zip(axes, idx))
    raise ValueError(f"integrand is non-finite at node {node}")


def integrate(fn: Callable, rules: Sequence[QuadratureRule1D], scale=1.0):
    """Tensor quadrature of  int fn(x) * prod_i exp(-scale_i * x_i^2) dx  on R^d.

    `fn` must accept d broadcastable coordinate arrays and evaluate
    vectorized.  The Gaussian factor is handled analytically by node
    scaling; d <= 4.  Non-finite integrand values raise, naming the node.
    """
    rules = list(rules)
    d = len(rules)
    if not 1 <= d <= MAX_TENSOR_DIM:
        raise ValueError(f"tensor integration supports 1 <= d <= {MAX_TENSOR_DIM}, got {d}")
    scales = _normalize_scales(scale, d)
    axes = [rule.nodes / math.sqrt(s) for rule, s in zip(rules, scales)]
    weight_axes = [rule.weights for rule in rules]
    norm = float(np.prod([1.0 / math.sqrt(s) for s in scales]))

    if d <= 2:
        grids = np.meshgrid(*axes, indexing="ij", sparse=True)
        shape = tuple(axis.size for axis in axes)
        vals = np.broadcast_to(np.asarray(fn(*grids)), shape)
        bad = ~np.isfinite(vals)
        if np.any(bad):
            _raise_non_finite(int(np.flatnonzero(bad.ravel())[0]), shape, axes)
        wprod = weight_axes[0]
        if d == 2:
            wprod = weight_axes[0][:, None] * weight_axes[1][None, :]
        return tree_sum(vals * wprod) * norm

    # d in {3, 4}: chunk over the first axis to bound memory
    rest_axes = axes[1:]
    rest_shape = tuple(axis.size for axis in rest_axes)
    grids = np.meshgrid(*rest_axes, indexing="ij", sparse=True)
    wrest = weight_axes[1]
    for wa in weight_axes[2:]:
        wrest = wrest[..., None] * wa
    chunks = []
    for i, x0 in enumerate(axes[0]):
        vals = np.broadcast_to(np.asarray(fn(x0, *grids)), rest_shape)
        bad = ~np.isfinite(vals)
        if np.any(bad):
            flat = int(np.flatnonzero(bad.ravel())[0])
            idx = np.unravel_index(flat, rest_shape)
            node = (float(x0),) + tuple(float(axis[k]) for axis, k in zip(rest_axes, idx))
            raise ValueError(f"integrand is non-finite at node {node}")
        chunks.append(weight_axes[0][i] * tree_sum(vals * wrest))
    return tree_sum(np.array(chunks)) * norm


def _growth_bound_check(f, alpha: float) -> None:
    lam = getattr(f, "compression", None)
    if lam is not None and lam <= -alpha:
        raise ValueError(
            f"integrand grows faster than the Gaussian weight decays "
            f"(compression {lam} <= -alpha {-alpha}); the transform integral diverges"
        )


def berezin_transform_numeric(
    f: Union[GaussianSymbol, Callable],
    z: PointLike,
    q: QuantParams,
    order: int = 80,
) -> complex:
    """Evaluate the smoothing transform of f at z by tensor Gauss-Hermite.

    For a GaussianSymbol the hot tensor sum runs through the compiled kernel
    path (see `_kernels`); a generic callable f receives n complex coordinate
    arrays and must evaluate vectorized.  Limited to n <= 2 (tensor grids on
    R^(2n)); use order >= 40 for reported results.
    """
    point = as_point(z)
    n = point.dim
    if n > 2:
        raise ValueError(f"numeric transform supports n <= 2, got n = {n}")
    alpha = q.alpha
    _growth_bound_check(f, alpha)
    rule = gauss_hermite(order)
    scaled_nodes = rule.nodes / math.sqrt(alpha)
    zre = np.array([c.real for c in point.coords])
    zim = np.array([c.imag for c in point.coords])

    if isinstance(f, GaussianSymbol):
        if f.dim != n:
            raise ValueError(f"dimension mismatch: symbol dim {f.dim}, point dim {n}")
        total = _kernels.gauss_transform_sum(
            scaled_nodes, rule.weights, zre, zim, alpha, f.compression
        )
        return complex(f.amplitude * total / math.pi**n)

    # generic path: fold the coherent-kernel factor exp(2*alpha*(x_j*u + y_j*v)
    # - alpha*(x_j^2 + y_j^2)) into per-axis weights, then tensor-sum f
    axis_weights = []
    for j in range(n):
        axis_weights.append(rule.weights * np.exp(2.0 * alpha * zre[j] * scaled_nodes - alpha * zre[j] ** 2))
    for j in range(n):
        axis_weights.append(rule.weights * np.exp(2.0 * alpha * zim[j] * scaled_nodes - alpha * zim[j] ** 2))

    if n == 1:
        w_grid = axis_weights[0][:, None] * axis_weights[1][None, :]
        coords = (scaled_nodes[:, None] + 1j * scaled_nodes[None, :],)
        vals = np.broadcast_to(np.asarray(f(*coords)), w_grid.shape)
        bad = ~np.isfinite(vals)
        if np.any(bad):
            _raise_non_finite(
                int(np.flatnonzero(bad.ravel())[0]), w_grid.shape, [scaled_nodes, scaled_nodes]
            )
        return complex(tree_sum(vals * w_grid) / math.pi**n)

    # n == 2: chunk over the first real axis; rest grid has axes (u2, v1, v2)
    m = order
    wrest = (
        axis_weights[1][:, None, None]
        * axis_weights[2][None, :, None]
        * axis_weights[3][None, None, :]
    )
    u2 = scaled_nodes[:, None, None]
    v1 = scaled_nodes[None, :, None]
    v2 = scaled_nodes[None, None, :]
    chunks = []
    for i in range(m):
        c1 = scaled_nodes[i] + 1j * v1
        c2 = u2 + 1j * v2
        vals = np.broadcast_to(np.asarray(f(c1, c2)), (m, m, m))
        bad = ~np.isfinite(vals)
        if np.any(bad):
            flat = int(np.flatnonzero(bad.ravel())[0])
            idx = np.unravel_index(flat, (m, m, m))
            node = (
                float(scaled_nodes[i]),
                float(scaled_nodes[idx[0]]),
                float(scaled_nodes[idx[1]]),
                float(scaled_nodes[idx[2]]),
            )
            raise ValueError(f"integrand is non-finite at node {node}")
        chunks.append(axis_weights[0][i] * tree_sum(vals * wrest))
    return complex(tree_sum(np.array(chunks)) / math.pi**n)


def _eval_on_samples(f, coords):
    if isinstance(f, GaussianSymbol):
        if f.dim != len(coords):
            raise ValueError(f"dimension mismatch: symbol dim {f.dim}, point dim {len(coords)}")
        expo = np.zeros(coords[0].shape, dtype=np.float64)
        for c in coords:
            expo -= f.compression * np.real(c) ** 2
        return f.amplitude * np.exp(expo)
    return np.asarray(f(*coords))


def monte_carlo_transform(
    f: Union[GaussianSymbol, Callable],
    z: PointLike,
    q: QuantParams,
    cfg: MonteCarloConfig,
) -> tuple[complex, float]:
    """Monte-Carlo estimate of the smoothing transform of f at z.

    The transform kernel (1/K(z,z)) |K(z,w)|^2 rho(w) is exactly the
    Gaussian probability density (alpha/pi)^n exp(-alpha*|w-z|^2), so the
    estimator importance-samples w from it and averages f(w).  Returns
    (mean, standard error); a fixed seed reproduces the estimate
    bit-for-bit.
    """
    point = as_point(z)
    _growth_bound_check(f, q.alpha)
    rng = np.random.default_rng(cfg.seed)
    sigma = math.sqrt(1.0 / (2.0 * q.alpha))
    offsets = rng.normal(0.0, sigma, size=(cfg.samples, 2 * point.dim))
    coords = tuple(
        point.coords[j] + offsets[:, 2 * j] + 1j * offsets[:, 2 * j + 1]
        for j in range(point.dim)
    )
    values = _eval_on_samples(f, coords)
    if not np.all(np.isfinite(values)):
        bad = int(np.flatnonzero(~np.isfinite(np.ravel(values)))[0])
        node = tuple(complex(c[bad]) for c in coords)
        raise ValueError(f"integrand is non-finite at sample {node}")
    estimate = complex(np.mean(values))
    spread = np.abs(values - estimate) ** 2
    stderr = math.sqrt(float(np.sum(spread)) / (cfg.samples * (cfg.samples - 1)))
    return estimate, stderr
