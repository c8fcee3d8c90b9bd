"""Weighted Lagrange interpolation at Hermite zeros and discrete norms.

All interpolant evaluation happens in weighted form: node data is held as
w_j = f(t_j) exp(-t_j^2/2) and the interpolant is evaluated as

    g(t) = H_{n+1}(t) * sum_j w_j / (H'_{n+1}(t_j) (t - t_j)),

which is q(t) exp(-t^2/2) for the degree-n interpolating polynomial q.  No
raw polynomial value is ever formed, so nothing overflows.  The removable
singularity at each node is handled by a Taylor form of the basis factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, ShapeError, UsageError
from .function_space import FunctionHandle, NormSpec, norm_x
from .gauss_hermite import QuadratureRule
from .hermite_core import hermite_pair, hermite_sequence

_NEAR_FACTOR = 1e-8   # |t - t_j| below this times the local spacing: Taylor form
_EVAL_CHUNK = 4096


@lru_cache(maxsize=None)
def _node_derivatives(rule: QuadratureRule) -> np.ndarray:
    """H'_{n+1} at the rule's nodes (signs alternate, magnitude sqrt(2/mu))."""
    _, dv = hermite_pair(rule.n + 1, rule.nodes)
    dv.flags.writeable = False
    return dv


@lru_cache(maxsize=None)
def _local_spacing(rule: QuadratureRule) -> np.ndarray:
    """Distance from each node to its nearest neighbour."""
    nodes = rule.nodes
    if nodes.size == 1:
        out = np.array([1.0])
    else:
        gaps = -np.diff(nodes)
        out = np.empty(nodes.size)
        out[0] = gaps[0]
        out[-1] = gaps[-1]
        out[1:-1] = np.minimum(gaps[:-1], gaps[1:])
    out.flags.writeable = False
    return out


def _series_chunk(coefficients: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """Accumulate sum_k c_k H_k(ts) without materializing the basis matrix.

    Runs the same exponent-tracked recurrence as hermite_sequence; while any
    point still carries a non-zero exponent its true term value comes from
    ldexp (underflowing to zero where genuinely negligible).
    """
    from .hermite_core import _RESCALE_STRIDE, _rescale, _start_state

    degree = coefficients.shape[0] - 1
    out = np.zeros((ts.size, coefficients.shape[1]))
    h_prev, bits = _start_state(ts)
    all_live = bool(np.all(bits == 0))

    def accumulate(values: np.ndarray, k: int) -> None:
        term = values if all_live else np.ldexp(values, bits)
        out[:, :] += term[:, None] * coefficients[k][None, :]

    accumulate(h_prev, 0)
    if degree == 0:
        return out
    h_curr = math.sqrt(2.0) * ts * h_prev
    accumulate(h_curr, 1)
    for k in range(1, degree):
        a = math.sqrt(2.0 / (k + 1))
        b = math.sqrt(k / (k + 1.0))
        h_prev, h_curr = h_curr, a * ts * h_curr - b * h_prev
        if not all_live and k % _RESCALE_STRIDE == 0:
            all_live = _rescale(h_curr, h_prev, bits)
        accumulate(h_curr, k + 1)
    return out


@dataclass(frozen=True, eq=False)
class NodeValues:
    """Samples of a function at the nodes of a rule.

    The canonical storage is the weighted samples w_j = v_j exp(-t_j^2/2),
    which stay representable at every supported degree; the raw samples are
    reconstructed on demand.
    """

    rule: QuadratureRule
    weighted: np.ndarray  # (n+1, d)

    @classmethod
    def from_samples(cls, rule: QuadratureRule, values) -> "NodeValues":
        values = cls._coerce(rule, values)
        with np.errstate(under="ignore"):
            weighted = values * np.exp(-0.5 * rule.nodes * rule.nodes)[:, None]
        return cls(rule=rule, weighted=weighted)

    @classmethod
    def from_weighted(cls, rule: QuadratureRule, weighted) -> "NodeValues":
        return cls(rule=rule, weighted=cls._coerce(rule, weighted))

    @staticmethod
    def _coerce(rule: QuadratureRule, values) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2 or values.shape[0] != rule.size:
            raise ShapeError(f"expected ({rule.size}, d) node values, got {values.shape}")
        values = values.copy()
        values.flags.writeable = False
        return values

    @property
    def values(self) -> np.ndarray:
        """Raw samples v_j = w_j exp(+t_j^2/2); overflows once t_j^2 > ~1400."""
        return self.weighted * np.exp(0.5 * self.rule.nodes * self.rule.nodes)[:, None]

    @property
    def d(self) -> int:
        return self.weighted.shape[1]


def weighted_lagrange_basis(rule: QuadratureRule, j: int, t: float) -> float:
    """Basis factor multiplying w_j in the weighted interpolant, at a point.

    Equals H_{n+1}(t) / (H'_{n+1}(t_j) (t - t_j)) away from t_j, with the
    removable singularity filled by its limit 1; j is 1-based to match the
    node ordering.
    """
    if not 1 <= j <= rule.size:
        raise UsageError(f"node index {j} outside 1..{rule.size}")
    tj = rule.nodes[j - 1]
    dvj = _node_derivatives(rule)[j - 1]
    delta = t - tj
    if abs(delta) < _NEAR_FACTOR * _local_spacing(rule)[j - 1]:
        return 1.0 - (rule.cap - tj * tj) * delta * delta / 6.0
    value, _ = hermite_pair(rule.n + 1, t)
    return value / (dvj * delta)


class WeightedPolyEval:
    """Evaluable t -> q(t) exp(-t^2/2) for an R^d-valued polynomial q.

    Built either from node values on a rule (Lagrange form) or from
    coefficients in the orthonormal Hermite-function basis.
    """

    def __init__(self, *, rule: QuadratureRule | None = None,
                 weighted_values: np.ndarray | None = None,
                 coefficients: np.ndarray | None = None):
        if (rule is None) == (coefficients is None):
            raise UsageError("provide either a rule with node values or coefficients")
        self.rule = rule
        if rule is not None:
            if weighted_values is None or weighted_values.shape[0] != rule.size:
                raise ShapeError("node values must match the rule size")
            self.weighted_values = weighted_values
            self.coefficients = None
            self.degree = rule.n
            self._ratios = weighted_values / _node_derivatives(rule)[:, None]
        else:
            coefficients = np.asarray(coefficients, dtype=float)
            if coefficients.ndim == 1:
                coefficients = coefficients[:, None]
            self.coefficients = coefficients
            self.weighted_values = None
            self.degree = coefficients.shape[0] - 1

    @classmethod
    def from_nodes(cls, rule: QuadratureRule, nv: NodeValues) -> "WeightedPolyEval":
        return cls(rule=rule, weighted_values=nv.weighted)

    @classmethod
    def from_coefficients(cls, coefficients) -> "WeightedPolyEval":
        return cls(coefficients=np.asarray(coefficients, dtype=float))

    @property
    def d(self) -> int:
        if self.coefficients is not None:
            return self.coefficients.shape[1]
        return self.weighted_values.shape[1]

    def __call__(self, ts) -> np.ndarray:
        scalar = np.ndim(ts) == 0
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        parts = [self._eval_chunk(ts[i:i + _EVAL_CHUNK])
                 for i in range(0, ts.size, _EVAL_CHUNK)]
        out = np.concatenate(parts, axis=0) if parts else np.empty((0, self.d))
        return out[0] if scalar else out

    def _eval_chunk(self, ts: np.ndarray) -> np.ndarray:
        if self.coefficients is not None:
            return _series_chunk(self.coefficients, ts)
        rule = self.rule
        values = hermite_pair(rule.n + 1, ts)[0]
        diff = ts[:, None] - rule.nodes[None, :]
        # nearest node per point via the ascending view, then the Taylor
        # switch applies only where that single distance is tiny
        ascending = rule.nodes[::-1]
        pos = np.searchsorted(ascending, ts)
        lo = np.clip(pos - 1, 0, rule.n)
        hi = np.clip(pos, 0, rule.n)
        pick_hi = np.abs(ascending[hi] - ts) < np.abs(ascending[lo] - ts)
        nearest_asc = np.where(pick_hi, hi, lo)
        near_cols_all = rule.n - nearest_asc
        gap = np.abs(ts - rule.nodes[near_cols_all])
        near = gap < _NEAR_FACTOR * _local_spacing(rule)[near_cols_all]
        near_rows = np.nonzero(near)[0]
        near_cols = near_cols_all[near_rows]
        if near_rows.size:
            diff[near_rows, near_cols] = 1.0
        out = (1.0 / diff) @ self._ratios
        out *= values[:, None]
        for i, j in zip(near_rows, near_cols):
            tj = rule.nodes[j]
            delta = ts[i] - tj
            wj = self.weighted_values[j]
            if delta == 0.0:
                out[i] = wj
                continue
            taylor = 1.0 - (rule.cap - tj * tj) * delta * delta / 6.0
            rest = (1.0 / (ts[i] - rule.nodes)) @ self._ratios
            rest -= self._ratios[j] / delta
            out[i] = wj * taylor + values[i] * rest
        return out

    def as_handle(self) -> FunctionHandle:
        return FunctionHandle(fn=self.__call__, d=self.d, envelope="gaussian")


def interpolate(rule: QuadratureRule, nv: NodeValues) -> WeightedPolyEval:
    """Weighted Lagrange interpolant through the node samples."""
    if nv.rule.n != rule.n:
        raise ShapeError("node values were sampled on a different rule")
    return WeightedPolyEval.from_nodes(rule, nv)


def _weighted_node_norms(rule: QuadratureRule, nv: NodeValues, spec: NormSpec) -> np.ndarray:
    if nv.rule.n != rule.n:
        raise ShapeError("node values were sampled on a different rule")
    if nv.d != spec.d:
        raise ShapeError(f"node values have dimension {nv.d}, spec expects {spec.d}")
    return norm_x(nv.weighted, spec)


def discrete_mz_norm(rule: QuadratureRule, nv: NodeValues, spec: NormSpec) -> float:
    """Weighted discrete norm (sum_j mu_j ||w_j||^p)^(1/p).

    For p = inf this degenerates to max_j ||w_j|| with the weights omitted,
    mirroring the L_inf limit.
    """
    norms = _weighted_node_norms(rule, nv, spec)
    if math.isinf(spec.p):
        return float(np.max(norms))
    return float(np.sum(rule.mu * norms ** spec.p) ** (1.0 / spec.p))


def restricted_mz_norm(rule: QuadratureRule, nv: NodeValues, spec: NormSpec,
                       delta: float) -> float:
    """Discrete norm restricted to the nodes with |t_j| <= delta * sqrt(N)."""
    if not 0.0 < delta < 1.0:
        raise DomainError("delta must lie in (0, 1)")
    norms = _weighted_node_norms(rule, nv, spec)
    mask = np.abs(rule.nodes) <= delta * math.sqrt(rule.cap)
    if math.isinf(spec.p):
        return float(np.max(norms[mask])) if np.any(mask) else 0.0
    return float(np.sum(rule.mu[mask] * norms[mask] ** spec.p) ** (1.0 / spec.p))
