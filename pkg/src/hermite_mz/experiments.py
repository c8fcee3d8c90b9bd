"""Experiment engine: ratio sweeps, growth exponents, divergence witnesses.

Each experiment returns an ExperimentReport: per-parameter rows, log-log
regression fits over an asymptotic tail window (plus the whole range), and
named pass/fail verdicts.  Reports are deterministic functions of their
parameters and seed: randomness comes from a counter-based generator keyed
by (seed, experiment id, n, trial), so parallel execution order cannot
change any value.
"""

from __future__ import annotations

import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UsageError
from .expansion import (HermiteCoefficients, cesaro_kernel, coefficients,
                        default_scan_grid, discrete_kernel_scan, freud_poiani_scan)
from .function_space import (FunctionHandle, NormSpec, sample_at_nodes,
                             unweighted_lp_norm, weighted_lp_norm)
from .gauss_hermite import build_rule, zeros_interlace
from .hermite_core import hermite_pair, hermite_sequence
from .interpolation import NodeValues, WeightedPolyEval, discrete_mz_norm, interpolate

#: geometric ladder with ratio ~sqrt(2); all default sweeps use it
DEFAULT_N_LIST = (16, 23, 32, 45, 64, 91, 128, 181, 256, 362, 512)

_MAX_LOG_RESIDUAL = 0.1


@dataclass(frozen=True)
class RegressionFit:
    """Least-squares line through (log x, log y) with its worst residual."""

    name: str
    slope: float
    intercept: float
    residual: float
    points: int

    def as_dict(self) -> dict:
        return {"name": self.name, "slope": self.slope, "intercept": self.intercept,
                "residual": self.residual, "points": self.points}


@dataclass
class ExperimentReport:
    """Tabulated measurements, fitted exponents and verdicts."""

    id: str
    params: dict
    rows: list = field(default_factory=list)
    fits: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)

    def fit(self, name: str) -> dict | None:
        for f in self.fits:
            if f["name"] == name:
                return f
        return None

    def verdict(self, name: str) -> bool | None:
        for v in self.verdicts:
            if v["name"] == name:
                return bool(v["pass"])
        return None


def _loglog_fit(name: str, xs, ys, points: int | None = None) -> dict | None:
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    good = (ys > 0) & np.isfinite(ys)
    xs, ys = xs[good], ys[good]
    if xs.size < 4:
        return None
    lx, ly = np.log(xs), np.log(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = float(np.max(np.abs(ly - (slope * lx + intercept))))
    return RegressionFit(name, float(slope), float(intercept), residual,
                         int(xs.size if points is None else points)).as_dict()


def _tail(xs):
    """Asymptotic window: the top half of the range, at least 4 points."""
    n = len(xs)
    keep = max(4, n - n // 2)
    return slice(n - keep, n)


def add_loglog_fits(report: ExperimentReport, x_key: str, y_key: str) -> None:
    """Attach tail-window and whole-range fits of y against x."""
    xs = [row[x_key] for row in report.rows]
    ys = [row[y_key] for row in report.rows]
    w = _tail(xs)
    fit = _loglog_fit(y_key, xs[w], ys[w])
    if fit is not None:
        report.fits.append(fit)
    full = _loglog_fit(y_key + "_full", xs, ys)
    if full is not None:
        report.fits.append(full)


def _slope_verdict(report: ExperimentReport, name: str, fit_name: str, check) -> None:
    fit = report.fit(fit_name)
    ok = fit is not None and fit["residual"] < _MAX_LOG_RESIDUAL and check(fit["slope"])
    report.verdicts.append({"name": name, "pass": bool(ok)})


def _parallel(fn, items, threads: int):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def cell_rng(seed: int, experiment_id: str, n: int, trial: int) -> np.random.Generator:
    """Counter-based generator for one experiment cell; order-independent."""
    tag = f"{seed}|{experiment_id}|{n}|{trial}".encode()
    digest = hashlib.blake2b(tag, digest_size=16).digest()
    key = np.frombuffer(digest, dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _check_n_list(n_list) -> list[int]:
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise UsageError("empty n list")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise UsageError("n list must be strictly ascending")
    return n_list


# ---------------------------------------------------------------------------
# Marcinkiewicz-Zygmund ratio sweeps


def _ratio_pair(spec: NormSpec, n: int, coeffs: np.ndarray) -> tuple[float, float]:
    rule = build_rule(n)
    nv = NodeValues.from_weighted(
        rule, WeightedPolyEval.from_coefficients(coeffs)(rule.nodes))
    discrete = discrete_mz_norm(rule, nv, spec)
    # evaluate the integral norm through the interpolant: identical values by
    # polynomial reproduction, far cheaper per integration point
    poly = interpolate(rule, nv)
    continuous = weighted_lp_norm(poly.as_handle(), spec, n)
    return continuous / discrete, discrete / continuous


def mz_ratio_sweep(spec: NormSpec, n_list=DEFAULT_N_LIST, trials: int = 4,
                   seed: int = 0, threads: int = 1) -> ExperimentReport:
    """Two-sided continuous/discrete norm ratios over random polynomials.

    Random polynomials draw i.i.d. standard normal coefficients in the
    Hermite basis per component; the deterministic witness is the top basis
    polynomial itself, whose ratio grows without bound once p > 4.
    """
    if math.isinf(spec.p):
        raise UsageError("sup-norm sweeps are not supported")
    n_list = _check_n_list(n_list)
    if trials < 1:
        raise UsageError("trials must be >= 1")
    report = ExperimentReport(
        id="mz-ratio",
        params={"p": spec.p, "q": spec.q, "d": spec.d, "trials": trials,
                "seed": seed, "n_list": list(n_list)})

    def run_cell(n: int) -> dict:
        upper, lower = 0.0, 0.0
        for trial in range(trials):
            rng = cell_rng(seed, "mz-ratio", n, trial)
            coeffs = rng.standard_normal((n + 1, spec.d))
            up, low = _ratio_pair(spec, n, coeffs)
            upper, lower = max(upper, up), max(lower, low)
        witness = np.zeros((n + 1, spec.d))
        witness[n, 0] = 1.0
        wit_up, _ = _ratio_pair(spec, n, witness)
        return {"n": n, "ratio_upper": upper, "ratio_lower": lower,
                "witness_upper": wit_up}

    report.rows = _parallel(run_cell, n_list, threads)
    for key in ("ratio_upper", "ratio_lower", "witness_upper"):
        add_loglog_fits(report, "n", key)
    _slope_verdict(report, "upper_ratio_flat", "ratio_upper", lambda s: abs(s) <= 0.03)
    _slope_verdict(report, "lower_ratio_flat", "ratio_lower", lambda s: abs(s) <= 0.03)
    if spec.p > 4.0:
        want = 0.5 * witness_ratio_slope(spec.p)
        _slope_verdict(report, "witness_grows", "witness_upper", lambda s: s >= want)
    return report


def witness_ratio_slope(p: float) -> float:
    """Growth exponent of the continuous/discrete ratio on the top basis
    polynomial for p > 4: the gap between the edge-dominated integral norm
    exponent -1/(6p)-1/12 and the discrete exponent 1/(2p)-1/4."""
    return 1.0 / 6.0 - 2.0 / (3.0 * p)


# ---------------------------------------------------------------------------
# Growth of Hermite-function norms and the discrete witness


def hermite_norm_growth(p: float, n_list=DEFAULT_N_LIST, threads: int = 1) -> ExperimentReport:
    """Fit the growth exponent of the integral p-norm of the n-th basis function.

    For p = 4 a second fit removes the (log n)^{1/4} factor and both
    residuals are reported, since the pure power law is off by that factor.
    """
    if p < 1.0 or math.isinf(p):
        raise DomainError("p must be finite and >= 1")
    n_list = _check_n_list(n_list)
    report = ExperimentReport(id="hermite-norm-growth",
                              params={"p": p, "n_list": list(n_list)})
    spec = NormSpec(d=1, q=2.0, p=p)

    def run_cell(n: int) -> dict:
        handle = WeightedPolyEval.from_coefficients(_unit_coeffs(n)).as_handle()
        return {"n": n, "norm": weighted_lp_norm(handle, spec, n)}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "norm")
    if p == 4.0:
        ns = [row["n"] for row in report.rows]
        corrected = [row["norm"] / math.log(row["n"]) ** 0.25 for row in report.rows]
        w = _tail(ns)
        fit = _loglog_fit("norm_log_corrected", ns[w], corrected[w])
        if fit is not None:
            report.fits.append(fit)
    expected = expected_norm_slope(p)
    _slope_verdict(report, "slope_matches", "norm",
                   lambda s: abs(s - expected) <= 0.02)
    return report


def expected_norm_slope(p: float) -> float:
    """Growth exponent of the basis-function p-norm: bulk below p=4, edge above."""
    if p < 4.0:
        return 1.0 / (2.0 * p) - 0.25
    return -1.0 / (6.0 * p) - 1.0 / 12.0


def _unit_coeffs(n: int) -> np.ndarray:
    coeffs = np.zeros((n + 1, 1))
    coeffs[n, 0] = 1.0
    return coeffs


def mz_witness_hn(p: float, n_list=DEFAULT_N_LIST, threads: int = 1) -> ExperimentReport:
    """Discrete norm of the top basis polynomial, by two independent routes.

    The direct route samples the function at the nodes; the closed form
    (n+1)^{-1/2} (sum_j mu_j^{1-p/2})^{1/p} uses the rule weights alone.
    Both must agree to 1e-10; the growth exponent approaches 1/(2p) - 1/4.
    """
    if p < 1.0 or math.isinf(p):
        raise DomainError("p must be finite and >= 1")
    n_list = _check_n_list(n_list)
    report = ExperimentReport(id="mz-witness", params={"p": p, "n_list": list(n_list)})
    spec = NormSpec(d=1, q=2.0, p=p)

    def run_cell(n: int) -> dict:
        rule = build_rule(n)
        values = hermite_sequence(n, rule.nodes)[n]
        direct = discrete_mz_norm(rule, NodeValues.from_weighted(rule, values), spec)
        closed = (n + 1) ** -0.5 * float(np.sum(rule.mu ** (1.0 - p / 2.0))) ** (1.0 / p)
        gap = abs(direct - closed) / closed
        return {"n": n, "direct": direct, "closed_form": closed, "relative_gap": gap}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "direct")
    report.verdicts.append({
        "name": "closed_form_matches",
        "pass": bool(all(row["relative_gap"] <= 1e-10 for row in report.rows))})
    expected = 1.0 / (2.0 * p) - 0.25
    _slope_verdict(report, "slope_matches", "direct",
                   lambda s: abs(s - expected) <= 0.02)
    return report


# ---------------------------------------------------------------------------
# Divergence witness and convergence sweeps for the interpolation operator


def counterexample_growth(p: float, alpha: float, n_list=DEFAULT_N_LIST,
                          threads: int = 1) -> ExperimentReport:
    """Norm growth of the interpolant of the sign-flipping edge witness.

    Node data carries weighted magnitude (1+|t_j|)^{-alpha} with the sign of
    H'_{n+1}(t_j) on the non-positive nodes and zero elsewhere; the measured
    quantity is the weighted p-norm of the interpolant over [0, sqrt(N)].
    A positive fitted slope witnesses divergence.
    """
    if p < 1.0 or math.isinf(p):
        raise DomainError("p must be finite and >= 1")
    n_list = _check_n_list(n_list)
    warning = None
    if not (p > 4.0 and 1.0 / p < alpha < 0.25):
        warning = "outside divergence regime (needs p > 4 and 1/p < alpha < 1/4)"
    report = ExperimentReport(
        id="counterexample",
        params={"p": p, "alpha": alpha, "n_list": list(n_list),
                "regime_warning": warning})
    spec = NormSpec(d=1, q=2.0, p=p)

    def run_cell(n: int) -> dict:
        rule = build_rule(n)
        signs = np.sign(hermite_pair(n + 1, rule.nodes)[1])
        weighted = np.where(rule.nodes <= 0.0,
                            signs * (1.0 + np.abs(rule.nodes)) ** -alpha, 0.0)
        poly = interpolate(rule, NodeValues.from_weighted(rule, weighted[:, None]))
        norm = weighted_lp_norm(poly.as_handle(), spec, n,
                                domain=(0.0, math.sqrt(rule.cap)))
        return {"n": n, "norm": norm}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "norm")
    _slope_verdict(report, "divergence_witnessed", "norm", lambda s: s > 0.0)
    return report


def interpolation_convergence(f: FunctionHandle, spec: NormSpec, alpha: float,
                              n_list=DEFAULT_N_LIST, threads: int = 1) -> ExperimentReport:
    """Weighted p-norm interpolation error per degree.

    The handle evaluates the weighted profile g(t) = f(t) exp(-t^2/2); the
    row for degree n holds the norm of g minus the weighted interpolant.
    Slowly decaying profiles are integrated with tail extension so the
    truncation window cannot masquerade as convergence.
    """
    if math.isinf(spec.p):
        raise UsageError("sup-norm convergence is not supported")
    n_list = _check_n_list(n_list)
    warning = None
    if not alpha > 1.0 / spec.p:
        warning = "decay exponent alpha <= 1/p: convergence not guaranteed"
    report = ExperimentReport(
        id="interp-convergence",
        params={"p": spec.p, "q": spec.q, "d": spec.d, "alpha": alpha,
                "n_list": list(n_list), "regime_warning": warning})

    def run_cell(n: int) -> dict:
        rule = build_rule(n)
        poly = interpolate(rule, sample_at_nodes(f, rule))
        diff = FunctionHandle(fn=lambda ts: f(ts) - poly(ts), d=spec.d,
                              envelope=f.envelope)
        if f.gaussian_envelope:
            error = weighted_lp_norm(diff, spec, n)
        else:
            error = unweighted_lp_norm(diff, spec, n)
        return {"n": n, "error": error}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "error")
    first, last = report.rows[0]["error"], report.rows[-1]["error"]
    report.verdicts.append({"name": "errors_shrink", "pass": bool(last < first / 4.0)})
    return report


def expansion_convergence(f: FunctionHandle, spec: NormSpec,
                          n_list=DEFAULT_N_LIST, threads: int = 1) -> ExperimentReport:
    """Unweighted L_p error of the partial expansion sums, per order.

    The convergence verdict is only attached for p strictly inside
    (4/3, 4); outside that range the errors are recorded for inspection.
    """
    if math.isinf(spec.p):
        raise UsageError("sup-norm convergence is not supported")
    n_list = _check_n_list(n_list)
    report = ExperimentReport(
        id="expansion-convergence",
        params={"p": spec.p, "q": spec.q, "d": spec.d, "n_list": list(n_list)})
    series = coefficients(f, n_list[-1])

    def run_cell(n: int) -> dict:
        part = WeightedPolyEval.from_coefficients(series.coefficients[:n + 1])
        diff = FunctionHandle(fn=lambda ts: f(ts) - part(ts), d=spec.d,
                              envelope=f.envelope)
        return {"n": n, "error": unweighted_lp_norm(diff, spec, n)}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "error")
    if 4.0 / 3.0 < spec.p < 4.0:
        first, last = report.rows[0]["error"], report.rows[-1]["error"]
        report.verdicts.append({"name": "errors_shrink",
                                "pass": bool(last < first / 4.0)})
    return report


# ---------------------------------------------------------------------------
# Kernel-bound scans


def kernel_bound_scan(m_list, threads: int = 1) -> ExperimentReport:
    """Scan of integral |K^m(., s)| over orders m; bounded per Freud/Poiani."""
    m_list = _check_n_list(m_list)
    report = ExperimentReport(id="kernel-bound", params={"m_list": list(m_list)})

    def run_cell(m: int) -> dict:
        grid = default_scan_grid(2.0 * (m - 1) + 3.0)
        return {"m": m, "scan": freud_poiani_scan(m, grid)}

    report.rows = _parallel(run_cell, m_list, threads)
    add_loglog_fits(report, "m", "scan")
    _slope_verdict(report, "scan_bounded", "scan", lambda s: abs(s) <= 0.05)
    return report


def kernel_bound_scan_discrete(n: int, delta: float, m_list,
                               threads: int = 1) -> ExperimentReport:
    """Discrete analogue on the restricted nodes of one rule, m <= 4n."""
    m_list = _check_n_list(m_list)
    rule = build_rule(n)
    report = ExperimentReport(id="kernel-bound-discrete",
                              params={"n": n, "delta": delta, "m_list": list(m_list)})
    grid = default_scan_grid(rule.cap)

    def run_cell(m: int) -> dict:
        return {"m": m, "scan": discrete_kernel_scan(rule, m, delta, grid)}

    report.rows = _parallel(run_cell, m_list, threads)
    add_loglog_fits(report, "m", "scan")
    _slope_verdict(report, "scan_bounded", "scan", lambda s: abs(s) <= 0.05)
    return report


def kernel_diagonal_growth(n_list=DEFAULT_N_LIST, factor: float = 1.5,
                           threads: int = 1) -> ExperimentReport:
    """Growth of mu_1 K^m(t_1, t_1) at m = ceil(factor * n).

    Grows like n^{1/3}, which is exactly why the discrete kernel bound needs
    the delta-restriction away from the extreme nodes.
    """
    n_list = _check_n_list(n_list)
    report = ExperimentReport(id="kernel-diagonal",
                              params={"factor": factor, "n_list": list(n_list)})

    def run_cell(n: int) -> dict:
        rule = build_rule(n)
        m = int(math.ceil(factor * n))
        t1 = float(rule.nodes[0])
        return {"n": n, "value": float(rule.mu[0]) * abs(cesaro_kernel(m, t1, t1))}

    report.rows = _parallel(run_cell, n_list, threads)
    add_loglog_fits(report, "n", "value")
    _slope_verdict(report, "cube_root_growth", "value",
                   lambda s: abs(s - 1.0 / 3.0) <= 0.07)
    return report


# ---------------------------------------------------------------------------
# Hilbert-matrix link


def hilbert_section_deviation(n_list=DEFAULT_N_LIST, threads: int = 1) -> ExperimentReport:
    """Compare scaled node-difference reciprocals with the shifted Hilbert matrix.

    For each n the zeros of consecutive Hermite polynomials inside [-1, 1]
    (enumerated ascending) give b_ij = 1/(sqrt(N)(t_i - s_j)); the deviation
    from 1/(pi(i-j+1/2)), scaled by (i-j+1/2)^2, stays bounded, and the
    same-index node gap approaches pi/(2 sqrt(N)) at rate 1/n.
    """
    n_list = _check_n_list(n_list)
    if n_list[0] < 8:
        raise DomainError("needs n >= 8")
    report = ExperimentReport(id="hilbert-deviation", params={"n_list": list(n_list)})

    def run_cell(n: int) -> dict:
        rule_hi = build_rule(n)
        rule_lo = build_rule(n - 1)
        root_cap = math.sqrt(rule_hi.cap)
        lo = rule_lo.nodes[::-1]          # ascending
        hi = rule_hi.nodes[::-1]
        sel_i = np.nonzero(np.abs(lo) <= 1.0)[0]
        sel_j = np.nonzero(np.abs(hi) <= 1.0)[0]
        diff = lo[sel_i][:, None] - hi[sel_j][None, :]
        b = 1.0 / (root_cap * diff)
        offs = (sel_i + 1)[:, None] - (sel_j + 1)[None, :] + 0.5
        dev = np.abs(b - 1.0 / (math.pi * offs)) * offs * offs
        shared = np.intersect1d(sel_i, sel_j)
        gaps = lo[shared] - hi[shared]
        gap_dev = np.abs(gaps - math.pi / (2.0 * root_cap)) * n
        return {"n": n, "size_i": int(sel_i.size), "size_j": int(sel_j.size),
                "max_scaled_deviation": float(np.max(dev)),
                "max_gap_deviation_scaled": float(np.max(gap_dev)),
                "interlaced": int(zeros_interlace(rule_hi, rule_lo))}

    report.rows = _parallel(run_cell, n_list, threads)
    for key in ("size_i", "size_j", "max_scaled_deviation", "max_gap_deviation_scaled"):
        add_loglog_fits(report, "n", key)
    _slope_verdict(report, "index_sets_grow_sqrt", "size_i",
                   lambda s: abs(s - 0.5) <= 0.05)
    _slope_verdict(report, "deviation_bounded", "max_scaled_deviation",
                   lambda s: s <= 0.05)
    _slope_verdict(report, "gap_error_scales", "max_gap_deviation_scaled",
                   lambda s: s <= 0.05)
    report.verdicts.append({"name": "interlacing_holds",
                            "pass": bool(all(row["interlaced"] for row in report.rows))})
    return report


def _shifted_hilbert_matrix(size: int) -> np.ndarray:
    idx = np.arange(1, size + 1, dtype=float)
    return 1.0 / (idx[:, None] - idx[None, :] + 0.5)


def _dual_map(y: np.ndarray, p: float) -> np.ndarray:
    out = np.sign(y) * np.abs(y) ** (p - 1.0)
    norm = np.sum(np.abs(out) ** (p / (p - 1.0))) ** ((p - 1.0) / p)
    return out / norm if norm > 0 else out


def hilbert_matrix_norm(p: float, size: int) -> float:
    """Operator-norm estimate of the shifted Hilbert matrix section on l_p.

    p = 2 uses power iteration on the Gram matrix (a certified lower bound
    converging to the top singular value); other p take the best of all
    coordinate vectors and a fixed-point iteration through the duality
    maps, again a lower bound.
    """
    if size < 2:
        raise DomainError("section size must be >= 2")
    if p < 1.0 or math.isinf(p):
        raise DomainError("p must be finite and >= 1")
    a = _shifted_hilbert_matrix(size)
    if p == 2.0:
        v = np.ones(size) / math.sqrt(size)
        estimate = 0.0
        for _ in range(5000):
            w = a.T @ (a @ v)
            norm = math.sqrt(float(w @ w))
            if norm == 0.0:
                break
            v_next = w / norm
            new_estimate = float(np.linalg.norm(a @ v_next))
            if abs(new_estimate - estimate) <= 1e-13 * max(new_estimate, 1.0):
                return new_estimate
            estimate, v = new_estimate, v_next
        return estimate

    def ratio(x: np.ndarray) -> float:
        xn = np.sum(np.abs(x) ** p) ** (1.0 / p)
        return float(np.sum(np.abs(a @ x) ** p) ** (1.0 / p) / xn)

    best = max(ratio(col) for col in np.eye(size))
    if p > 1.0:
        x = np.ones(size) / size ** (1.0 / p)
        for _ in range(200):
            y = _dual_map(a @ x, p)
            x_next = _dual_map(a.T @ y, p / (p - 1.0))
            if np.allclose(x_next, x, rtol=1e-12, atol=1e-15):
                x = x_next
                break
            x = x_next
        best = max(best, ratio(x))
    return best


def hilbert_matrix_norms(p: float, sizes, threads: int = 1) -> ExperimentReport:
    """Section-norm estimates over a ladder of sizes, with a log-size fit."""
    sizes = _check_n_list(sizes)
    report = ExperimentReport(id="hilbert-norm", params={"p": p, "sizes": list(sizes)})

    def run_cell(size: int) -> dict:
        return {"size": size, "estimate": hilbert_matrix_norm(p, size)}

    report.rows = _parallel(run_cell, sizes, threads)
    log_sizes = np.log([row["size"] for row in report.rows])
    estimates = np.array([row["estimate"] for row in report.rows])
    slope, intercept = np.polyfit(log_sizes, estimates, 1)
    residual = float(np.max(np.abs(estimates - (slope * log_sizes + intercept))))
    report.fits.append({"name": "estimate_vs_log_size", "slope": float(slope),
                        "intercept": float(intercept), "residual": residual,
                        "points": int(len(sizes))})
    if p == 1.0:
        report.verdicts.append({"name": "log_growth", "pass": bool(slope >= 0.5)})
    if p == 2.0:
        top = report.rows[-1]["estimate"]
        report.verdicts.append({"name": "below_pi",
                                "pass": bool(top <= math.pi + 1e-6)})
    return report
