"""Hermite-series operators and reproducing kernels.

Coefficients a_j = integral f(t) H_j(t) dt feed the partial-sum, Cesaro and
de la Vallee Poussin operators, which all act as Fourier multipliers on the
coefficient array.  The kernels exist for the bound experiments only: the
pointwise kernel uses the Christoffel-Darboux quotient away from the
diagonal and the direct sum near it, and the scan operations integrate or
sum |kernel| against grids of second arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError, UsageError
from .function_space import FunctionHandle, _gl16
from .gauss_hermite import QuadratureRule, build_rule
from .hermite_core import hermite_sequence

_CD_SWITCH = 1e-6
_POINT_CHUNK = 8192


@dataclass(frozen=True, eq=False)
class HermiteCoefficients:
    """Coefficients a_0..a_degree of an expansion in Hermite functions."""

    degree: int
    coefficients: np.ndarray  # (degree+1, d)

    def __post_init__(self) -> None:
        if self.coefficients.shape[0] != self.degree + 1:
            raise ShapeError("coefficient count must equal degree + 1")

    @property
    def d(self) -> int:
        return self.coefficients.shape[1]


def _coerce_coeffs(array) -> np.ndarray:
    array = np.asarray(array, dtype=float)
    if array.ndim == 1:
        array = array[:, None]
    return array


def make_coefficients(array) -> HermiteCoefficients:
    """Wrap an explicit (degree+1, d) or (degree+1,) coefficient array."""
    array = _coerce_coeffs(array)
    return HermiteCoefficients(degree=array.shape[0] - 1, coefficients=array)


def _series_window_edges(n: int, presplit: int) -> np.ndarray:
    cutoff = math.sqrt(2.0 * n + 3.0) + 12.0
    nodes = build_rule(n).nodes
    edges = np.unique(np.concatenate([[-cutoff, cutoff], nodes]))
    for _ in range(presplit):
        edges = np.unique(np.concatenate([edges, 0.5 * (edges[:-1] + edges[1:])]))
    return edges


def _coefficient_pass(f: FunctionHandle, n: int, edges: np.ndarray) -> np.ndarray:
    x, w = _gl16()
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wts = (half[:, None] * w[None, :]).ravel()
    acc = np.zeros((n + 1, f.d))
    for start in range(0, pts.size, _POINT_CHUNK):
        t_blk = pts[start:start + _POINT_CHUNK]
        w_blk = wts[start:start + _POINT_CHUNK]
        basis = hermite_sequence(n, t_blk)          # (n+1, m)
        acc += basis @ (w_blk[:, None] * f(t_blk))  # (n+1, d)
    return acc


def coefficients(f: FunctionHandle, n: int, rel_tol: float = 1e-10,
                 abs_tol: float = 1e-10) -> HermiteCoefficients:
    """Expansion coefficients a_0..a_n of f in the Hermite-function basis.

    Panel integration on the envelope window of degree n, refined until two
    passes agree; the declared decay class of the handle must make f
    integrable against Hermite functions.
    """
    if n < 0:
        raise DomainError("degree must be >= 0")
    if f.envelope == "none":
        raise UsageError("handle declares no decay; coefficients may diverge")
    prev = None
    for level in range(5):
        est = _coefficient_pass(f, n, _series_window_edges(n, level))
        if prev is not None:
            gap = float(np.max(np.abs(est - prev)))
            if gap <= max(abs_tol, rel_tol * float(np.max(np.abs(est)))):
                break
        prev = est
    return HermiteCoefficients(degree=n, coefficients=est)


def _eval_series(coeffs: np.ndarray, t):
    scalar = np.ndim(t) == 0
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    basis = hermite_sequence(coeffs.shape[0] - 1, ts)
    out = basis.T @ coeffs
    return out[0] if scalar else out


def partial_sum(c: HermiteCoefficients, m: int, t):
    """Value of the order-m partial sum sum_{j<=m} a_j H_j at t."""
    if m < 0:
        raise DomainError("order must be >= 0")
    if m > c.degree:
        raise UsageError(f"order {m} exceeds coefficient degree {c.degree}")
    return _eval_series(c.coefficients[:m + 1], t)


def cesaro_multipliers(m: int, degree: int) -> np.ndarray:
    """Fourier multipliers (1 - j/m)_+ of the first Cesaro mean, j <= degree."""
    j = np.arange(degree + 1)
    return np.maximum(1.0 - j / m, 0.0)


def cesaro_mean(c: HermiteCoefficients, m: int, t):
    """First Cesaro mean sigma_m = average of the partial sums P_0..P_{m-1}."""
    if m < 1:
        raise UsageError("Cesaro order must be >= 1")
    if m - 1 > c.degree:
        raise UsageError(f"Cesaro order {m} needs coefficients up to {m - 1}")
    weights = cesaro_multipliers(m, c.degree)
    return _eval_series(c.coefficients * weights[:, None], t)


def vallee_poussin_multipliers(n: int, degree: int) -> np.ndarray:
    """Trapezoidal multipliers of V_{2n}: 1 up to 2n, linear to 0 at 4n."""
    j = np.arange(degree + 1, dtype=float)
    return np.clip((4.0 * n - j) / (2.0 * n), 0.0, 1.0)


def vallee_poussin(c: HermiteCoefficients, n: int, t):
    """De la Vallee Poussin mean V_{2n} = 2 sigma_{4n} - sigma_{2n}.

    Reproduces every expansion of degree <= 2n; needs coefficients up to
    4n-1 because the multiplier support ends there.
    """
    if n < 1:
        raise UsageError("mean order must be >= 1")
    if c.degree < 4 * n - 1:
        raise UsageError(f"need coefficients up to {4 * n - 1}, have {c.degree}")
    weights = vallee_poussin_multipliers(n, c.degree)
    return _eval_series(c.coefficients * weights[:, None], t)


def kernel(j: int, t: float, s: float) -> float:
    """Reproducing kernel K_j(t, s) = sum_{i<=j} H_i(t) H_i(s).

    Away from the diagonal the Christoffel-Darboux quotient gives the value
    in O(1) extra work on top of two endpoint evaluations; near t = s the
    quotient cancels catastrophically and the direct sum is used.
    """
    if j < 0:
        raise DomainError("kernel order must be >= 0")
    if j == 0 or abs(t - s) < _CD_SWITCH * (1.0 + abs(t)):
        vt = hermite_sequence(j, t)
        vs = hermite_sequence(j, s)
        return float(vt @ vs)
    ht = hermite_sequence(j + 1, t)
    hs = hermite_sequence(j + 1, s)
    factor = math.sqrt((j + 1) / 2.0)
    return float(factor * (ht[j + 1] * hs[j] - ht[j] * hs[j + 1]) / (t - s))


def cesaro_kernel(m: int, t: float, s: float) -> float:
    """Kernel of the Cesaro mean, K^m(t,s) = (1/m) sum_{j<m} K_j(t,s)."""
    if m < 1:
        raise UsageError("Cesaro order must be >= 1")
    vt = hermite_sequence(m - 1, t)
    vs = hermite_sequence(m - 1, s)
    return float((cesaro_multipliers(m, m - 1) * vt) @ vs)


def default_scan_grid(cap: float, points: int = 129) -> np.ndarray:
    """Chebyshev-spaced scan grid on [-sqrt(cap)-2, sqrt(cap)+2]."""
    half = math.sqrt(cap) + 2.0
    k = np.arange(points)
    return -half * np.cos(math.pi * k / (points - 1)) if points > 1 else np.zeros(1)


def _abs_kernel_rows(m: int, t_pts: np.ndarray, s_grid: np.ndarray,
                     weights: np.ndarray) -> np.ndarray:
    """sum_t weights_t |K^m(t, s)| for every s in the grid."""
    mult = cesaro_multipliers(m, m - 1)
    basis_s = hermite_sequence(m - 1, s_grid) * mult[:, None]  # (m, n_s)
    acc = np.zeros(s_grid.size)
    for start in range(0, t_pts.size, _POINT_CHUNK):
        t_blk = t_pts[start:start + _POINT_CHUNK]
        w_blk = weights[start:start + _POINT_CHUNK]
        basis_t = hermite_sequence(m - 1, t_blk)               # (m, n_t)
        acc += w_blk @ np.abs(basis_t.T @ basis_s)
    return acc


def freud_poiani_scan(m: int, s_grid) -> float:
    """max over the grid of integral |K^m(t, s)| dt.

    The t-integration uses Gauss-Legendre panels at half the oscillation
    scale of order m, globally refined until the scan value stabilizes; the
    |.| kinks make plain panels first-order, so a few levels are needed.
    """
    if m < 1:
        raise UsageError("Cesaro order must be >= 1")
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.size == 0:
        raise UsageError("empty scan grid")
    cap = 2.0 * (m - 1) + 3.0
    cutoff = math.sqrt(cap) + 12.0
    panels = max(32, int(math.ceil(4.0 * cutoff * math.sqrt(cap) / math.pi)))
    prev = None
    for level in range(6):
        edges = np.linspace(-cutoff, cutoff, panels * 2 ** level + 1)
        x, w = _gl16()
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        pts = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        wts = (half[:, None] * w[None, :]).ravel()
        vals = _abs_kernel_rows(m, pts, s_grid, wts)
        best = float(np.max(vals))
        if prev is not None and abs(best - prev) <= 1e-6 * abs(best):
            return best
        prev = best
    return best


def discrete_kernel_scan(rule: QuadratureRule, m: int, delta: float, s_grid) -> float:
    """max over the grid of sum_{|t_j| <= delta sqrt(N)} mu_j |K^m(t_j, s)|."""
    if m < 1:
        raise UsageError("Cesaro order must be >= 1")
    if m > 4 * rule.n:
        raise UsageError(f"order {m} outside the validity range m <= 4n = {4 * rule.n}")
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)")
    s_grid = np.asarray(s_grid, dtype=float)
    if s_grid.size == 0:
        raise UsageError("empty scan grid")
    mask = np.abs(rule.nodes) <= delta * math.sqrt(rule.cap)
    vals = _abs_kernel_rows(m, rule.nodes[mask], s_grid, rule.mu[mask])
    return float(np.max(vals))
