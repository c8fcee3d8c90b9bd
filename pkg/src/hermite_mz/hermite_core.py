"""Stable evaluation of L2-normalized Hermite functions and related asymptotics.

Everything here works with the weighted functions H_n(t) = h_n(t) * exp(-t^2/2)
(h_n the orthonormal Hermite polynomials), never with the raw polynomials:
the weighted functions are uniformly bounded, so upward recurrence cannot
overflow.  Intermediate values in the classically forbidden region can
underflow double precision, so the recurrence carries a power-of-two
exponent per evaluation point and rescales on the fly.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

# log(H_0(t)) below this triggers exponent bookkeeping from the start
_RESCALE_LOG = -350.0
# stored magnitudes above 2**300 are folded back into the exponent
_BIG = math.ldexp(1.0, 300)
_LN2 = math.log(2.0)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _check_finite(t: np.ndarray) -> None:
    if not np.all(np.isfinite(t)):
        raise DomainError("abscissa must be finite")


def _start_state(t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stored value of H_0 at t plus the power-of-two exponent it carries."""
    log_h0 = -0.25 * math.log(math.pi) - 0.5 * t * t
    bits = np.zeros(t.shape, dtype=np.int64)
    deep = log_h0 < _RESCALE_LOG
    if np.any(deep):
        bits[deep] = np.floor((log_h0[deep] - _RESCALE_LOG) / _LN2).astype(np.int64)
    h0 = np.exp(log_h0 - bits * _LN2)
    return h0, bits


def _rescale(curr: np.ndarray, prev: np.ndarray, bits: np.ndarray) -> bool:
    """Fold grown magnitudes back into the exponent, in place.

    Returns True once every point's exponent is back to zero, after which
    the caller may stop checking: stored values equal the true values and
    stay bounded.  Growth per recurrence step is at most |t| sqrt(2), so
    with |t| <= 1e3 a check every 16 steps keeps stored magnitudes far from
    the double-precision ceiling.
    """
    mask = (np.abs(curr) > _BIG) & (bits < 0)
    if np.any(mask):
        shift = np.minimum(-bits[mask], 300).astype(np.int64)
        curr[mask] = np.ldexp(curr[mask], -shift)
        prev[mask] = np.ldexp(prev[mask], -shift)
        bits[mask] += shift
    return bool(np.all(bits == 0))


_RESCALE_STRIDE = 16


def hermite_sequence(n_max: int, t) -> np.ndarray:
    """Evaluate H_0(t) .. H_{n_max}(t).

    Parameters
    ----------
    n_max : int
        Largest index, >= 0.
    t : float or 1-d array
        Evaluation point(s); must be finite.

    Returns
    -------
    ndarray of shape (n_max+1,) + shape(t).  Entries whose true magnitude
    is below the double-precision range come out as 0.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    _check_finite(t_arr)

    out = np.empty((n_max + 1,) + t_arr.shape)
    h_prev, bits = _start_state(t_arr)
    all_live = bool(np.all(bits == 0))
    out[0] = h_prev if all_live else np.ldexp(h_prev, bits)
    if n_max == 0:
        return out if np.ndim(t) else out[:, 0]

    h_curr = math.sqrt(2.0) * t_arr * h_prev
    out[1] = h_curr if all_live else np.ldexp(h_curr, bits)
    for k in range(1, n_max):
        a = math.sqrt(2.0 / (k + 1))
        b = math.sqrt(k / (k + 1.0))
        h_prev, h_curr = h_curr, a * t_arr * h_curr - b * h_prev
        if not all_live and k % _RESCALE_STRIDE == 0:
            all_live = _rescale(h_curr, h_prev, bits)
        out[k + 1] = h_curr if all_live else np.ldexp(h_curr, bits)
    return out if np.ndim(t) else out[:, 0]


def hermite_pair(n: int, t):
    """Evaluate (H_n(t), H_n'(t)).

    The derivative uses H_n' = sqrt(2n) H_{n-1} - t H_n, which is exact to
    rounding given the two function values.  Accepts a scalar or array t and
    returns matching shapes.
    """
    if n < 0:
        raise DomainError("index must be >= 0")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    _check_finite(t_arr)

    h_prev, bits = _start_state(t_arr)
    all_live = bool(np.all(bits == 0))
    if n == 0:
        value = np.ldexp(h_prev, bits)
        deriv = -t_arr * value
    else:
        h_curr = math.sqrt(2.0) * t_arr * h_prev
        for k in range(1, n):
            a = math.sqrt(2.0 / (k + 1))
            b = math.sqrt(k / (k + 1.0))
            h_prev, h_curr = h_curr, a * t_arr * h_curr - b * h_prev
            if not all_live and k % _RESCALE_STRIDE == 0:
                all_live = _rescale(h_curr, h_prev, bits)
        value = np.ldexp(h_curr, bits)
        deriv = np.ldexp(math.sqrt(2.0 * n) * h_prev - t_arr * h_curr, bits)
    if np.ndim(t):
        return value, deriv
    return float(value[0]), float(deriv[0])


def phi(x):
    """Phase-scale function on [0, 1], closed form of its defining integral.

    Satisfies (2/3) phi(x)^{3/2} = integral_x^1 sqrt(1-s^2) ds; phi(1) = 0,
    phi is decreasing, and phi(x)/(1-x^2) stays within [2^{-2/3}, 2^{2/3}].
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(x_arr)) or np.any(x_arr < 0.0) or np.any(x_arr > 1.0):
        raise DomainError("argument must lie in [0, 1]")
    tail = math.pi / 4.0 - np.arcsin(x_arr) / 2.0 - x_arr * np.sqrt(1.0 - x_arr * x_arr) / 2.0
    # rounding can leave a tiny negative tail at x = 1
    tail = np.maximum(tail, 0.0)
    val = (1.5 * tail) ** (2.0 / 3.0)
    return val if np.ndim(x) else float(val[0])


def envelope_scale(n: int, t: float) -> float:
    """Local amplitude scale n^{-1/8} (sqrt(N) - |t|)^{-1/4}, N = 2n+3."""
    if n < 1:
        raise DomainError("index must be >= 1")
    root_n_cap = math.sqrt(2.0 * n + 3.0)
    if not math.isfinite(t) or abs(t) >= root_n_cap:
        raise DomainError("abscissa must satisfy |t| < sqrt(2n+3)")
    return n ** (-0.125) * (root_n_cap - abs(t)) ** (-0.25)


def local_sup_abs(n: int, a: float, b: float) -> float:
    """Largest |H_{n+1}| over [a, b].

    Dense sampling (64 points per oscillation-normalized unit of the
    interval, so every lobe is seen) followed by golden-section refinement
    around the best sample, to 1e-10 relative.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError("interval endpoints must be finite with a < b")
    if b - a < 1e-14:
        return abs(hermite_pair(n + 1, a)[0])

    osc = math.pi / math.sqrt(2.0 * n + 3.0)
    n_samples = max(64, 64 * int(math.ceil((b - a) / osc)))
    grid = np.linspace(a, b, n_samples + 1)
    vals = np.abs(hermite_sequence(n + 1, grid)[n + 1])
    best = int(np.argmax(vals))

    lo = grid[max(best - 1, 0)]
    hi = grid[min(best + 1, n_samples)]

    def f(t: float) -> float:
        return abs(hermite_pair(n + 1, t)[0])

    # golden-section maximization on [lo, hi]
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(200):
        if hi - lo <= 1e-13 * (1.0 + abs(lo) + abs(hi)):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
    return max(vals[best], f1, f2)
