"""
Monte-Carlo checks of the schemes: noiseless/noisy decoding statistics and
DoF estimates from the slope of sum rate against log2 of transmit power.
"""

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import stats

from .channel import NoiseConfig, PowerConfig, sample_channel
from .errors import AltCsitError, InvalidDimension, InvalidSweep
from .schemes import build_plan, construction, dof_count, observation_map, run, solve
from .schemes.decoding import decoding_condition

CHUNK = 2500
EXACT_TOL = 1e-8
NOISE_SIGMAS = 5.0


@dataclass
class TrialReport:
    scheme: str
    pattern: str
    trials: int
    successes: int
    max_residual: float
    condition_quantiles: tuple  # (p50, p95, max) over all receivers and trials
    identifiability_failures: int
    condition_median_per_rx: tuple = ()
    seed: int = 0
    noise_variance: float = 0.0

    @property
    def success_rate(self):
        return self.successes / self.trials

    def as_dict(self):
        return {
            "scheme": self.scheme, "pattern": self.pattern, "trials": self.trials,
            "successes": self.successes, "max_residual": self.max_residual,
            "condition_quantiles": list(self.condition_quantiles),
            "condition_median_per_rx": list(self.condition_median_per_rx),
            "identifiability_failures": self.identifiability_failures,
            "seed": self.seed, "noise_variance": self.noise_variance,
        }


def _chunk_seed(seed, index):
    return [int(seed), int(index)]


def _channel(c, n, seed, index, distribution):
    return sample_channel(c.n_rx, c.n_tx, c.n_slots, seed=_chunk_seed(seed, index),
                          batch=n, distribution=distribution)


def run_trials(scheme, trials, noise=NoiseConfig(), seed=0, pattern=None,
               distribution="gaussian", chunk=CHUNK):
    """
    Decode ``trials`` independent realizations of ``scheme``.

    A trial succeeds when every receiver's desired symbols are identifiable
    and recovered to relative error ``1e-8`` (noiseless), or when every
    symbol error stays within five noise standard deviations after the
    decoder's combining (noisy).

    Parameters
    ----------
    scheme : SchemeId
    trials : int
        At least one.
    noise : NoiseConfig
    seed : int
        Fixes channels, symbols and noise; equal inputs give equal reports.
    pattern : CsitPattern or str, optional
        Defaults to the scheme's minimal pattern.
    chunk : int
        Realizations evaluated per vectorized batch.
    """
    if int(trials) != trials or trials < 1:
        raise InvalidDimension("trials must be a positive integer")
    c = construction(scheme)
    pattern = c.pattern if pattern is None else pattern
    successes = failures = 0
    residual = 0.0
    conds = [[] for _ in range(c.n_rx)]
    for index, start in enumerate(range(0, trials, chunk)):
        n = min(chunk, trials - start)
        channel = _channel(c, n, seed, index, distribution)
        plan = build_plan(scheme, pattern, channel)
        ledger = run(plan, channel, noise, rng_stream=_chunk_seed(seed, index))
        ok = np.ones(n, bool)
        ident = np.ones(n, bool)
        for rx in range(c.n_rx):
            desired = plan.desired(rx)
            A = observation_map(plan, channel, rx)
            sol = solve(A, ledger.values[..., rx, :], desired)
            x = plan.symbols.values[..., desired]
            err = sol.estimate - x
            rel = np.linalg.norm(err, axis=-1) / np.linalg.norm(x, axis=-1)
            residual = max(residual, float(np.nanmax(rel)))
            if noise.enabled:
                bound = NOISE_SIGMAS * np.sqrt(noise.variance) * np.linalg.norm(sol.combiner, axis=-1)
                good = np.all(np.abs(err) <= bound, axis=-1)
            else:
                good = rel <= EXACT_TOL
            ident &= sol.identifiable
            ok &= good & sol.identifiable
            conds[rx].append(decoding_condition(A, desired))
        successes += int(ok.sum())
        failures += int((~ident).sum())
    per_rx = [np.concatenate(cs) for cs in conds]
    pooled = np.concatenate(per_rx)
    return TrialReport(
        scheme=str(scheme), pattern=str(pattern), trials=int(trials), successes=successes,
        max_residual=residual,
        condition_quantiles=tuple(float(q) for q in (np.median(pooled), np.quantile(pooled, 0.95), pooled.max())),
        identifiability_failures=failures,
        condition_median_per_rx=tuple(float(np.median(v)) for v in per_rx),
        seed=seed, noise_variance=noise.variance,
    )


@dataclass
class SlopeEstimate:
    scheme: str
    snr_points: list  # (P, mean sum rate, std) in bits per slot
    slope: float
    r_squared: float
    intercept: float
    fit_points: int
    target: Fraction = field(default=None)

    def as_dict(self):
        return {
            "scheme": self.scheme,
            "snr_points": [list(p) for p in self.snr_points],
            "slope": self.slope, "r_squared": self.r_squared,
            "intercept": self.intercept, "fit_points": self.fit_points,
            "target": str(self.target),
        }


def _validate_sweep(powers):
    p = np.asarray(powers, dtype=float)
    if p.ndim != 1 or p.size < 3:
        raise InvalidSweep("a sweep needs at least three power points")
    if not np.all(np.isfinite(p)) or np.any(p <= 0):
        raise InvalidSweep("powers must be positive and finite")
    if np.any(np.diff(p) <= 0):
        raise InvalidSweep("powers must be strictly increasing")
    if p[-1] / p[0] < 1e3 * (1 - 1e-12):
        raise InvalidSweep("a sweep must span at least three decades")
    return p


def slot_gains(plan):
    """
    Common per-slot amplitude that caps every transmitter at unit average
    power for unit-power symbols.
    """
    G = plan.precoder()
    per_tx = np.sum(np.abs(G) ** 2, axis=-1)  # (..., t, j)
    peak = per_tx.max(axis=-1)
    return np.where(peak > 0, 1.0 / np.sqrt(np.where(peak > 0, peak, 1.0)), 1.0)


def stream_noise_gains(scheme, channel, pattern=None, normalize=True):
    """
    Squared combiner norms ``||w_k||^2`` of every desired stream.

    With unit noise and per-symbol power ``P``, stream ``k`` sees
    ``SINR = P / ||w_k||^2`` after zero-forcing.
    """
    c = construction(scheme)
    plan = build_plan(scheme, c.pattern if pattern is None else pattern, channel)
    gain = slot_gains(plan) if normalize else None
    out = []
    for rx in range(c.n_rx):
        A = observation_map(plan, channel, rx, gain)
        sol = solve(A, np.zeros(A.shape[:-1], complex), plan.desired(rx))
        out.append(np.sum(np.abs(sol.combiner) ** 2, axis=-1))
    return np.concatenate(out, axis=-1), c.n_slots


def rate_slope(scheme, powers, trials_per_point=200, seed=0, power=PowerConfig(1.0, True),
               pattern=None, distribution="gaussian"):
    """
    Estimate the DoF of ``scheme`` as the slope of mean sum rate in log2 P.

    Every power point reuses the same channel draws. Per trial the sum rate
    is ``sum_k log2(1 + P/||w_k||^2) / n_slots``. The fit uses all points
    unless ``r^2 < 0.99``, in which case only the three highest powers are
    used.

    Raises
    ------
    InvalidSweep
    """
    p = _validate_sweep(powers)
    if int(trials_per_point) != trials_per_point or trials_per_point < 1:
        raise InvalidDimension("trials_per_point must be a positive integer")
    c = construction(scheme)
    channel = _channel(c, int(trials_per_point), seed, 0, distribution)
    w2, n_slots = stream_noise_gains(scheme, channel, pattern, power.normalize_precoders)
    rates = np.log2(1.0 + p[:, None, None] * power.power / w2[None]).sum(-1) / n_slots
    mean, std = rates.mean(-1), rates.std(-1)
    x = np.log2(p)
    fit = stats.linregress(x, mean)
    used = len(p)
    if fit.rvalue ** 2 < 0.99:
        fit = stats.linregress(x[-3:], mean[-3:])
        used = 3
    return SlopeEstimate(
        scheme=str(scheme),
        snr_points=[(float(a), float(b), float(s)) for a, b, s in zip(p, mean, std)],
        slope=float(fit.slope), r_squared=float(min(1.0, fit.rvalue ** 2)),
        intercept=float(fit.intercept), fit_points=used, target=dof_count(scheme),
    )


@dataclass(frozen=True)
class BaselineRow:
    k: int
    scheme_bound: Fraction
    delayed_bound: Fraction

    @property
    def gain(self):
        return self.scheme_bound - self.delayed_bound


def compare_baselines(k):
    """
    Sum-DoF of the K-user scheme against the best delayed-CSIT-only result.

    Raises
    ------
    AltCsitError
        If the scheme bound fails to exceed the delayed-CSIT bound.
    """
    if int(k) != k or k < 2:
        raise InvalidDimension("K must be an integer >= 2")
    k = int(k)
    row = BaselineRow(k, Fraction(2 * k, k + 1), Fraction(4, 3) - Fraction(2, 3 * (3 * k - 1)))
    if not row.scheme_bound > row.delayed_bound:
        raise AltCsitError(f"scheme bound {row.scheme_bound} does not exceed {row.delayed_bound} at K={k}")
    return row


def _delimited(rows, delimiter):
    buf = io.StringIO()
    csv.writer(buf, delimiter=delimiter, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def sweep_rows(estimate, delimiter=","):
    """Delimited rows ``power, mean_rate, std_rate`` and a summary comment."""
    rows = [("power", "mean_rate", "std_rate")]
    rows += [(repr(p), repr(m), repr(s)) for p, m, s in estimate.snr_points]
    return _delimited(rows, delimiter) + (
        f"# summary slope={estimate.slope!r} r_squared={estimate.r_squared!r} "
        f"fit_points={estimate.fit_points} target={estimate.target}\n")


def report_rows(report, delimiter=","):
    """One header and one data row for a :class:`TrialReport`."""
    cols = ("scheme", "pattern", "trials", "successes", "max_residual", "cond_p50",
            "cond_p95", "cond_max", "identifiability_failures", "seed")
    q = report.condition_quantiles
    vals = (report.scheme, report.pattern, report.trials, report.successes,
            repr(report.max_residual), repr(q[0]), repr(q[1]), repr(q[2]),
            report.identifiability_failures, report.seed)
    return _delimited([cols, vals], delimiter)
