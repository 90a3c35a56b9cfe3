"""Two-parameter latency/bandwidth model: fit, prediction, efficiency points.

Per-invocation time is modeled as t(B) = T0 + B / Wmax. Fitting is an
ordinary least-squares line in the time domain (t against bytes B),
optionally weighted by 1/t^2 for relative-error fitting.
"""

import warnings
from dataclasses import dataclass

import numpy as np


class ModelFitError(ValueError):
    """The samples cannot be fit by the latency/bandwidth model."""


@dataclass(frozen=True)
class ModelFit:
    t0: float       # fixed launch cost, seconds
    wmax: float     # asymptotic bandwidth, bytes/second
    r2: float       # coefficient of determination of the time-domain fit
    n_points: int
    clamped_t0: bool = False


def fit_model(samples, weighted: bool = False) -> ModelFit:
    """Fit (T0, Wmax) to a list of BandwidthSample by OLS of t = elapsed/trials vs bytes.

    The regression is computed in centered form, which is algebraically the
    same line but keeps both parameters accurate to near machine precision
    for exact-model data.
    """
    b = np.asarray([s.bytes for s in samples], dtype=np.float64)
    t = np.asarray([s.elapsed / s.trials for s in samples], dtype=np.float64)
    if np.unique(b).size < 2:
        raise ModelFitError(
            f"need at least 2 samples with distinct byte counts, got {b.size}")

    w = 1.0 / (t * t) if weighted else np.ones_like(t)
    wsum = w.sum()
    b_mean = (w * b).sum() / wsum
    t_mean = (w * t).sum() / wsum
    db = b - b_mean
    dt = t - t_mean
    slope = (w * db * dt).sum() / (w * db * db).sum()
    if slope <= 0:
        raise ModelFitError(
            f"fitted slope {slope} is not positive; data is inconsistent "
            "with a latency/bandwidth model")
    intercept = t_mean - slope * b_mean

    resid = t - (intercept + slope * b)
    ss_res = (w * resid * resid).sum()
    ss_tot = (w * dt * dt).sum()
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot

    clamped = False
    if intercept < 0.0:
        warnings.warn(f"negative fitted launch cost {intercept:.3e}s clamped to 0")
        intercept = 0.0
        clamped = True

    return ModelFit(t0=intercept, wmax=1.0 / slope, r2=r2,
                    n_points=int(b.size), clamped_t0=clamped)


def w_eff(fit: ModelFit, nbytes: float) -> float:
    """Modeled effective bandwidth (bytes/s) when streaming `nbytes` bytes."""
    if nbytes < 0:
        raise ValueError(f"byte count must be non-negative, got {nbytes}")
    if nbytes == 0.0:
        return fit.wmax if fit.t0 == 0.0 else 0.0
    return nbytes / (fit.t0 + nbytes / fit.wmax)


def efficiency_point(fit: ModelFit, f: float = 0.8) -> float:
    """Bytes that must be moved to reach the fraction f of asymptotic bandwidth.

    Equals (f / (1 - f)) * T0 * Wmax; at f = 0.8 this is 4 * T0 * Wmax.
    """
    if not 0.0 < f < 1.0:
        raise ValueError(f"efficiency fraction must lie in (0, 1), got {f}")
    return (f / (1.0 - f)) * fit.t0 * fit.wmax
