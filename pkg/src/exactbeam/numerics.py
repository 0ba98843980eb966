"""Foundational numerics: Hermite polynomials, quadrature, finite-difference stencils.

Everything here is a pure function of its inputs; no caching, no shared
mutable state, so all routines are safe to call from parallel sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonFiniteSampleError, UnsupportedOrderError

#: Highest Hermite order the three-term recurrence is allowed to reach.
#: Beyond this the coefficients grow enough that double precision degrades.
MAX_HERMITE_ORDER = 60


def hermite(order: int, x):
    """Physicists' Hermite polynomial H_order(x).

    Evaluated with the three-term recurrence
    ``H_{k+1}(x) = 2 x H_k(x) - 2 k H_{k-1}(x)`` seeded by H_0 = 1,
    which forces H_1(x) = 2x.

    Parameters
    ----------
    order : int
        Polynomial order, ``0 <= order <= MAX_HERMITE_ORDER``.
    x : float or ndarray
        Evaluation abscissa(e).

    Returns
    -------
    float or ndarray
        H_order(x), same shape as ``x``.
    """
    if order != int(order) or order < 0:
        raise UnsupportedOrderError(f"Hermite order must be a non-negative integer, got {order!r}")
    order = int(order)
    if order > MAX_HERMITE_ORDER:
        raise UnsupportedOrderError(
            f"Hermite order {order} exceeds the supported maximum {MAX_HERMITE_ORDER}"
        )
    x = np.asarray(x, dtype=float)
    h_prev = np.zeros_like(x)
    h = np.ones_like(x)
    for k in range(order):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    if x.ndim == 0:
        return float(h)
    return h


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

SCHEMES = ("gauss-legendre-on-interval", "tanh-sinh", "trapezoid-uniform")


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product quadrature rule on a rectangle.

    ``domain`` is either a single ``(lo, hi)`` interval applied to every
    axis or a tuple of per-axis intervals.
    """

    scheme: str = "gauss-legendre-on-interval"
    node_count: int = 96
    domain: tuple = ((-8.0, 8.0),)

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.node_count < 2:
            raise ValueError(f"node_count must be >= 2, got {self.node_count}")
        dom = self.domain
        if np.isscalar(dom[0]):
            dom = (tuple(dom),)
        dom = tuple((float(lo), float(hi)) for lo, hi in dom)
        for lo, hi in dom:
            if not (np.isfinite(lo) and np.isfinite(hi)):
                raise ValueError(f"interval bounds must be finite, got ({lo}, {hi})")
            if not lo < hi:
                raise ValueError(f"interval bounds must be ordered, got ({lo}, {hi})")
        object.__setattr__(self, "domain", dom)

    def interval(self, axis: int) -> tuple[float, float]:
        if len(self.domain) == 1:
            return self.domain[0]
        return self.domain[axis]

    def with_nodes(self, node_count: int) -> "QuadratureSpec":
        return QuadratureSpec(self.scheme, node_count, self.domain)


def _nodes_weights(scheme: str, n: int, lo: float, hi: float):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    if scheme == "gauss-legendre-on-interval":
        x, w = np.polynomial.legendre.leggauss(n)
        return mid + half * x, half * w
    if scheme == "tanh-sinh":
        # uniform trapezoid in the u variable; U = 3 keeps the weight tail
        # below double-precision relevance for smooth integrands
        u = np.linspace(-3.0, 3.0, n)
        du = u[1] - u[0]
        sh = 0.5 * np.pi * np.sinh(u)
        x = mid + half * np.tanh(sh)
        w = half * (0.5 * np.pi) * np.cosh(u) / np.cosh(sh) ** 2 * du
        return x, w
    # trapezoid-uniform
    x = np.linspace(lo, hi, n)
    h = x[1] - x[0]
    w = np.full(n, h)
    w[0] = w[-1] = 0.5 * h
    return x, w


def quadrature_nodes(spec: QuadratureSpec, axis: int = 0):
    """Nodes and weights of ``spec``'s rule on the given axis interval."""
    return _nodes_weights(spec.scheme, spec.node_count, *spec.interval(axis))


def _check_finite_2d(values, x1, x2):
    bad = ~np.isfinite(values)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise NonFiniteSampleError(
            f"integrand is not finite at node ({i}, {j}): "
            f"x1={x1[i]!r}, x2={x2[j]!r}, value={values[i, j]!r}"
        )


def integrate_2d(f, spec: QuadratureSpec) -> complex:
    """Tensor-product quadrature of ``f(x1, x2)`` over ``spec``'s rectangle.

    ``f`` must accept broadcasting ndarray arguments. Raises
    :class:`NonFiniteSampleError` if any node sample is non-finite.
    """
    x1, w1 = _nodes_weights(spec.scheme, spec.node_count, *spec.interval(0))
    x2, w2 = _nodes_weights(spec.scheme, spec.node_count, *spec.interval(1))
    values = np.asarray(f(x1[:, None], x2[None, :]))
    _check_finite_2d(values, x1, x2)
    return complex(np.einsum("i,j,ij->", w1, w2, values))


def integrate_1d(f, spec: QuadratureSpec) -> complex:
    """One-dimensional counterpart of :func:`integrate_2d` (first axis of ``spec``)."""
    x, w = _nodes_weights(spec.scheme, spec.node_count, *spec.interval(0))
    values = np.asarray(f(x))
    if np.any(~np.isfinite(values)):
        i = int(np.argwhere(~np.isfinite(values))[0])
        raise NonFiniteSampleError(
            f"integrand is not finite at node {i}: x={x[i]!r}, value={values[i]!r}"
        )
    return complex(np.sum(w * values))


# ---------------------------------------------------------------------------
# finite differences
# ---------------------------------------------------------------------------

# central stencils, indexed by accuracy order
_D2_WEIGHTS = {
    2: (np.array([1.0, -2.0, 1.0]), 1),
    4: (np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0, 2),
}
_D1_WEIGHTS = {
    2: (np.array([-0.5, 0.0, 0.5]), 1),
    4: (np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0, 2),
}


@dataclass(frozen=True)
class StencilSpec:
    """Central finite-difference stencil: step size and accuracy order (2 or 4)."""

    step: float
    accuracy_order: int = 4

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError(f"step must be positive, got {self.step}")
        if self.accuracy_order not in _D2_WEIGHTS:
            raise ValueError(f"accuracy_order must be one of {sorted(_D2_WEIGHTS)}")

    @property
    def second_derivative_weights(self):
        w, _ = _D2_WEIGHTS[self.accuracy_order]
        return w / self.step**2


def _apply_stencil(f, at, step, weights, reach):
    at = np.asarray(at, dtype=float)
    total = None
    for k, w in zip(range(-reach, reach + 1), weights):
        if w == 0.0:
            continue
        term = w * np.asarray(f(at + k * step))
        total = term if total is None else total + term
    return total


def second_derivative(f, at, spec: StencilSpec):
    """Central finite-difference estimate of f'' at ``at``.

    ``f`` may return real or complex values and must accept ndarray input
    of the same shape as ``at``. Error is O(step**accuracy_order).
    """
    weights, reach = _D2_WEIGHTS[spec.accuracy_order]
    return _apply_stencil(f, at, spec.step, weights / spec.step**2, reach)


def first_derivative(f, at, spec: StencilSpec):
    """Central finite-difference estimate of f' at ``at`` (same conventions)."""
    weights, reach = _D1_WEIGHTS[spec.accuracy_order]
    return _apply_stencil(f, at, spec.step, weights / spec.step, reach)
