"""Finite-dimensional normed value spaces and weighted L_p norms.

Vector values are plain numpy arrays of shape (d,); batches stack them as
(m, d).  A NormSpec fixes the inner l_q norm on R^d and the outer Lebesgue
exponent p.  Integration is composite 16-point Gauss-Legendre with
node-aligned base panels and local dyadic refinement, so the piecewise
analytic integrands produced by vector norms converge to full accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import DomainError, ShapeError, UsageError
from .gauss_hermite import QuadratureRule, build_rule

_TAIL_MARGIN = 12.0  # beyond sqrt(2n+3) the Gaussian envelope is below 1e-16


@dataclass(frozen=True)
class NormSpec:
    """Dimension d, inner l_q exponent (q may be inf), outer L_p exponent."""

    d: int = 1
    q: float = 2.0
    p: float = 2.0

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError("dimension must be >= 1")
        if not self.q >= 1.0:
            raise DomainError("inner exponent q must be >= 1")
        if not self.p >= 1.0:
            raise DomainError("outer exponent p must be >= 1")

    @property
    def p_conjugate(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)


def norm_x(v, spec: NormSpec):
    """l_q norm of a vector (d,) or of each row of a batch (..., d)."""
    v = np.asarray(v, dtype=float)
    if v.shape[-1] != spec.d:
        raise ShapeError(f"expected last axis {spec.d}, got {v.shape[-1]}")
    if math.isinf(spec.q):
        out = np.max(np.abs(v), axis=-1)
    elif spec.q == 1.0:
        out = np.sum(np.abs(v), axis=-1)
    elif spec.q == 2.0:
        out = np.sqrt(np.sum(v * v, axis=-1))
    else:
        out = np.sum(np.abs(v) ** spec.q, axis=-1) ** (1.0 / spec.q)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FunctionHandle:
    """A vectorized map t -> R^d: fn takes a (m,) array, returns (m, d).

    envelope declares the decay profile: "gaussian" means the values decay
    at least like (polynomial) * exp(-t^2/2), "bounded" merely that they
    stay bounded, "none" makes no claim.  Integral norms require the
    Gaussian profile; expansion coefficients accept bounded profiles too.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    d: int = 1
    envelope: str = "gaussian"

    def __post_init__(self) -> None:
        if self.envelope not in ("gaussian", "bounded", "none"):
            raise UsageError(f"unknown envelope class {self.envelope!r}")

    @property
    def gaussian_envelope(self) -> bool:
        return self.envelope == "gaussian"

    def __call__(self, ts) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.asarray(self.fn(ts), dtype=float)
        if out.ndim == 1:
            out = out[:, None]
        if out.shape != (ts.size, self.d):
            raise ShapeError(f"handle returned {out.shape}, expected ({ts.size}, {self.d})")
        return out


def scalar_handle(fn: Callable[[np.ndarray], np.ndarray], envelope: str = "gaussian") -> FunctionHandle:
    """Wrap a scalar vectorized function as a 1-dimensional handle."""
    return FunctionHandle(fn=lambda ts: np.asarray(fn(ts), dtype=float)[:, None],
                          d=1, envelope=envelope)


@lru_cache(maxsize=1)
def _gl16() -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(16)
    return x, w


def _panel_values(f: Callable[[np.ndarray], np.ndarray], lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """16-point Gauss-Legendre estimates for a batch of panels."""
    x, w = _gl16()
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    pts = mid[:, None] + half[:, None] * x[None, :]
    vals = f(pts.ravel()).reshape(pts.shape)
    return half * (vals @ w)


def panel_integrate(f: Callable[[np.ndarray], np.ndarray], edges,
                    rel_tol: float = 1e-10, abs_tol: float = 0.0,
                    max_depth: int = 48) -> float:
    """Adaptive composite Gauss-Legendre integration over given base panels.

    Each panel is accepted once splitting it changes its value by less than
    its width-proportional share of the tolerance; refinement therefore
    concentrates around kinks.  The final sum is accumulated in a fixed
    order, independent of evaluation order.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise UsageError("panel edges must be strictly increasing with >= 2 entries")
    lo = edges[:-1].copy()
    hi = edges[1:].copy()
    total_width = edges[-1] - edges[0]
    coarse = _panel_values(f, lo, hi)
    scale = float(np.sum(np.abs(coarse))) + abs_tol

    accepted: list[tuple[float, float]] = []
    depth = 0
    while lo.size:
        if depth >= max_depth:
            accepted.extend(zip(lo, coarse))
            break
        mid = 0.5 * (lo + hi)
        left = _panel_values(f, lo, mid)
        right = _panel_values(f, mid, hi)
        fine = left + right
        budget = (rel_tol * scale + abs_tol) * (hi - lo) / total_width
        done = (np.abs(fine - coarse) <= budget) | (hi - lo <= 1e-15 * total_width)
        accepted.extend(zip(lo[done], fine[done]))
        keep = ~done
        lo = np.concatenate([lo[keep], mid[keep]])
        hi = np.concatenate([mid[keep], hi[keep]])
        coarse = np.concatenate([left[keep], right[keep]])
        depth += 1

    accepted.sort(key=lambda ab: ab[0])
    vals = np.array([v for _, v in accepted])
    # pairwise tree reduction for a bit-stable, order-canonical sum
    while vals.size > 1:
        if vals.size % 2:
            vals = np.concatenate([vals, [0.0]])
        vals = vals[0::2] + vals[1::2]
    return float(vals[0]) if vals.size else 0.0


def _norm_power_integrand(g: FunctionHandle, spec: NormSpec) -> Callable[[np.ndarray], np.ndarray]:
    def f(ts: np.ndarray) -> np.ndarray:
        return norm_x(g(ts), spec) ** spec.p

    return f


def _base_edges(rule: QuadratureRule, lo: float, hi: float, presplit: int) -> np.ndarray:
    inner = rule.nodes[(rule.nodes > lo) & (rule.nodes < hi)]
    edges = np.unique(np.concatenate([[lo, hi], inner]))
    for _ in range(presplit):
        edges = np.unique(np.concatenate([edges, 0.5 * (edges[:-1] + edges[1:])]))
    return edges


def weighted_lp_norm(g: FunctionHandle, spec: NormSpec, n_hint: int, *,
                     rel_tol: float = 1e-10, domain: tuple[float, float] | None = None,
                     presplit: int = 0) -> float:
    """(integral of ||g(t)||_q^p dt)^(1/p) for Gaussian-envelope integrands.

    The domain is [-T, T] with T = sqrt(2*n_hint+3) + 12 unless overridden;
    base panels are aligned with the quadrature nodes of the degree-n_hint
    rule, which tracks the O(n) sign changes of worst-case integrands.
    """
    if not g.gaussian_envelope:
        raise UsageError("handle does not declare Gaussian-envelope decay; norm may diverge")
    if math.isinf(spec.p):
        raise UsageError("p = inf is not supported by the integral norm")
    if n_hint < 0:
        raise DomainError("degree hint must be >= 0")
    cutoff = math.sqrt(2.0 * n_hint + 3.0) + _TAIL_MARGIN
    lo, hi = (-cutoff, cutoff) if domain is None else domain
    if not lo < hi:
        raise DomainError("empty integration domain")
    edges = _base_edges(build_rule(n_hint), lo, hi, presplit)
    raw = panel_integrate(_norm_power_integrand(g, spec), edges, rel_tol=rel_tol)
    return raw ** (1.0 / spec.p)


def unweighted_lp_norm(g: FunctionHandle, spec: NormSpec, n_hint: int, *,
                       rel_tol: float = 1e-9, tail_rel: float = 1e-8,
                       max_blocks: int = 60) -> float:
    """(integral of ||g(t)||_q^p dt)^(1/p) without assuming Gaussian decay.

    Starts from the envelope window of the degree hint and keeps appending
    doubling blocks until their contribution is negligible, so slowly
    decaying integrands (power-law tails) are integrated to tolerance.
    """
    if math.isinf(spec.p):
        raise UsageError("p = inf is not supported by the integral norm")
    f = _norm_power_integrand(g, spec)
    t0 = math.sqrt(2.0 * n_hint + 3.0) + _TAIL_MARGIN
    edges = _base_edges(build_rule(n_hint), -t0, t0, 0)
    total = panel_integrate(f, edges, rel_tol=rel_tol)
    t_lo = t0
    for _ in range(max_blocks):
        t_hi = 2.0 * t_lo
        block_edges = np.linspace(t_lo, t_hi, 9)
        block = panel_integrate(f, block_edges, rel_tol=rel_tol) \
            + panel_integrate(f, -block_edges[::-1], rel_tol=rel_tol)
        total += block
        if block <= tail_rel * abs(total):
            break
        t_lo = t_hi
    return total ** (1.0 / spec.p)


def sample_at_nodes(f, rule: QuadratureRule):
    """Evaluate a function at the rule's nodes, returning NodeValues.

    A FunctionHandle is taken to evaluate the weighted profile
    g(t) = f(t) exp(-t^2/2), so its node values are stored as the weighted
    samples directly; a plain vectorized callable is taken as the raw
    (unweighted) function.
    """
    from .interpolation import NodeValues

    if isinstance(f, FunctionHandle):
        return NodeValues.from_weighted(rule, f(rule.nodes))
    values = np.asarray(f(rule.nodes), dtype=float)
    if values.ndim == 1:
        values = values[:, None]
    if values.shape[0] != rule.size:
        raise ShapeError("sample count does not match rule size")
    return NodeValues.from_samples(rule, values)
