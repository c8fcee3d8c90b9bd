"""Gauss quadrature at the zeros of Hermite polynomials.

A rule with degree parameter n has n+1 nodes, the zeros of H_{n+1}, stored
in descending order.  Gaussian weights come from the derivative formula
lambda_j = 2 exp(-t_j^2) / H'_{n+1}(t_j)^2 written in weighted-function
form; mu_j = lambda_j exp(t_j^2) is kept separately because it stays
representable at every n while lambda_j underflows for edge nodes once
t_j^2 exceeds ~700.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, DomainError, NumericalError, ShapeError, UsageError
from .hermite_core import hermite_pair

_N_CEILING = 100_000
_EPS = 2.0 ** -52


def _tridiag_eigenvalues(diag: list[float], off: list[float]) -> list[float]:
    """Eigenvalues of a symmetric tridiagonal matrix, ascending.

    Implicit-shift QL iteration, eigenvalues only.
    """
    d = list(diag)
    e = list(off) + [0.0]
    n = len(d)
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > 50:
                raise NumericalError("QL iteration failed to converge")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    d.sort()
    return d


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and weights of the (n+1)-point rule at the zeros of H_{n+1}.

    nodes are strictly descending and exactly antisymmetric; lam are the
    Gaussian weights, mu = lam * exp(nodes^2) the exponential-free weights.
    Instances compare by identity; build_rule caches them per degree.
    """

    n: int
    cap: float          # 2n+3; sqrt(cap) bounds the nodes
    nodes: np.ndarray
    lam: np.ndarray
    mu: np.ndarray

    @property
    def size(self) -> int:
        return self.n + 1


def _newton_polish(n: int, x: np.ndarray) -> np.ndarray:
    """Refine approximate zeros of H_{n+1} by Newton steps in weighted form."""
    for _ in range(8):
        v, dv = hermite_pair(n + 1, x)
        step = v / dv
        x = x - step
        if np.max(np.abs(step)) <= 1e-15 * (1.0 + np.max(np.abs(x))):
            v, dv = hermite_pair(n + 1, x)
            x = x - v / dv
            break
    return x


@lru_cache(maxsize=None)
def build_rule(n: int) -> QuadratureRule:
    """Construct the quadrature rule with degree parameter n.

    Initial node guesses are eigenvalues of the Jacobi matrix (zero
    diagonal, off-diagonal sqrt(k/2)); Newton steps on the weighted Hermite
    function restore full double accuracy.  Only non-negative nodes are
    computed; the rest are mirrored so antisymmetry is exact.
    """
    if n < 0:
        raise DomainError("degree parameter must be >= 0")
    if n > _N_CEILING:
        raise CapacityError(f"degree parameter {n} exceeds ceiling {_N_CEILING}")

    m = n + 1
    if m == 1:
        positive = np.empty(0)
    else:
        off = [math.sqrt(k / 2.0) for k in range(1, m)]
        eig = _tridiag_eigenvalues([0.0] * m, off)
        positive = np.array(eig[(m + 1) // 2:], dtype=float)
        positive = _newton_polish(n, positive)
        positive = np.sort(positive)[::-1]

    has_zero = m % 2 == 1
    nonneg = np.concatenate([positive, [0.0]]) if has_zero else positive
    _, dv = hermite_pair(n + 1, nonneg)
    mu_half = 2.0 / (dv * dv)
    with np.errstate(under="ignore"):
        lam_half = mu_half * np.exp(-nonneg * nonneg)

    if has_zero:
        nodes = np.concatenate([positive, [0.0], -positive[::-1]])
        lam = np.concatenate([lam_half, lam_half[-2::-1]])
        mu = np.concatenate([mu_half, mu_half[-2::-1]])
    else:
        nodes = np.concatenate([positive, -positive[::-1]])
        lam = np.concatenate([lam_half, lam_half[::-1]])
        mu = np.concatenate([mu_half, mu_half[::-1]])

    for arr in (nodes, lam, mu):
        arr.flags.writeable = False
    return QuadratureRule(n=n, cap=2.0 * n + 3.0, nodes=nodes, lam=lam, mu=mu)


def integrate_gaussian(rule: QuadratureRule, samples) -> float:
    """Sum lambda_j * samples_j; exact for samples of a polynomial of
    degree <= 2n+1 against the weight exp(-t^2)."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape != (rule.size,):
        raise ShapeError(f"expected {rule.size} samples, got shape {samples.shape}")
    return float(rule.lam @ samples)


def zeros_interlace(rule_hi: QuadratureRule, rule_lo: QuadratureRule) -> bool:
    """True iff the nodes of the larger rule strictly separate the smaller's.

    The two degree parameters must differ by exactly 1; arguments may come
    in either order.
    """
    if abs(rule_hi.n - rule_lo.n) != 1:
        raise UsageError("degree parameters must differ by exactly 1")
    if rule_hi.n < rule_lo.n:
        rule_hi, rule_lo = rule_lo, rule_hi
    hi, lo = rule_hi.nodes, rule_lo.nodes
    return bool(np.all(lo < hi[:-1]) and np.all(hi[1:] < lo))
