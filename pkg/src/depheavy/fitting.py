"""Distribution fits for edge-heaviness histograms and component sizes.

Both families are fitted by least squares in their linearizing coordinates
(log-PMF against h^beta, log-frequency against log-size), which keeps the
fits closed-form and deterministic.  The stretched-exponential shape
parameter is found by a fixed grid search plus one golden-section
refinement pass.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

STRETCHED_EXPONENTIAL = "stretched-exponential"
POWER_LAW = "power-law"

BETA_GRID_LO = 0.05
BETA_GRID_HI = 1.5
BETA_GRID_STEP = 0.01
_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FitResult:
    family: str
    params: dict[str, float]
    r_squared: float
    points_used: int
    points_dropped: int


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Least-squares line fit; returns (slope, intercept, sse)."""
    xm, ym = x.mean(), y.mean()
    dx = x - xm
    denom = float(dx @ dx)
    slope = float(dx @ (y - ym)) / denom if denom > 0 else 0.0
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    return slope, intercept, float(resid @ resid)


def fit_stretched_exponential(histogram) -> FitResult:
    """Fit log p(h) = log c - lambda * h^beta to a value -> frequency map.

    Count-like inputs (total > 1) are normalized to an empirical PMF;
    inputs that already form a (sub-)probability mass are fitted as given,
    so the scale parameter c is recovered exactly from model-generated
    data.  Zero-frequency bins are excluded (their log is undefined).
    """
    pairs = [(float(h), float(f)) for h, f in histogram.items() if f > 0]
    dropped = len(histogram) - len(pairs)
    if len({h for h, _ in pairs}) < 3:
        raise DomainError("stretched-exponential fit needs >= 3 support points")
    pairs.sort()
    h = np.array([v for v, _ in pairs])
    freq = np.array([f for _, f in pairs])
    total = float(freq.sum())
    y = np.log(freq / total if total > 1.0 + 1e-9 else freq)

    def sse_at(beta: float) -> tuple[float, float, float]:
        return _ols(h ** beta, y)

    best_beta, best = None, None
    steps = int(round((BETA_GRID_HI - BETA_GRID_LO) / BETA_GRID_STEP))
    for i in range(steps + 1):
        beta = BETA_GRID_LO + i * BETA_GRID_STEP
        fit = sse_at(beta)
        if best is None or fit[2] < best[2]:
            best_beta, best = beta, fit

    lo = max(BETA_GRID_LO, best_beta - BETA_GRID_STEP)
    hi = min(BETA_GRID_HI, best_beta + BETA_GRID_STEP)
    a, b = lo, hi
    c_pt = b - _GOLDEN * (b - a)
    d_pt = a + _GOLDEN * (b - a)
    fc, fd = sse_at(c_pt), sse_at(d_pt)
    for _ in range(60):
        if fc[2] <= fd[2]:
            b, d_pt, fd = d_pt, c_pt, fc
            c_pt = b - _GOLDEN * (b - a)
            fc = sse_at(c_pt)
        else:
            a, c_pt, fc = c_pt, d_pt, fd
            d_pt = a + _GOLDEN * (b - a)
            fd = sse_at(d_pt)
        cand_beta, cand = (c_pt, fc) if fc[2] <= fd[2] else (d_pt, fd)
        if cand[2] < best[2]:
            best_beta, best = cand_beta, cand

    slope, intercept, sse = best
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return FitResult(
        family=STRETCHED_EXPONENTIAL,
        params={"c": float(np.exp(intercept)), "lambda": -slope, "beta": best_beta},
        r_squared=r2,
        points_used=len(pairs),
        points_dropped=dropped,
    )


def fit_power_law(sizes=None, *, histogram=None, drop_top: int = 5) -> FitResult:
    """Fit log freq = log scale - exponent * log size to a size-frequency
    histogram, after removing the drop_top largest distinct size values.

    Pass either a raw sequence of sizes (a histogram is built from it) or a
    prebuilt size -> frequency mapping.
    """
    if (sizes is None) == (histogram is None):
        raise DomainError("pass exactly one of sizes or histogram")
    if histogram is None:
        histogram = Counter(sizes)
    pairs = [(float(s), float(f)) for s, f in histogram.items() if f > 0 and s > 0]
    pairs.sort()
    skipped = len(histogram) - len(pairs)
    if drop_top > 0:
        dropped_pairs = pairs[-drop_top:] if drop_top <= len(pairs) else pairs
        pairs = pairs[:-drop_top] if drop_top < len(pairs) else []
        skipped += len(dropped_pairs)
    if len(pairs) < 3:
        raise DomainError("power-law fit needs >= 3 distinct sizes after dropping")
    x = np.log(np.array([s for s, _ in pairs]))
    y = np.log(np.array([f for _, f in pairs]))
    slope, intercept, sse = _ols(x, y)
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - sse / sst if sst > 0 else 1.0
    return FitResult(
        family=POWER_LAW,
        params={"exponent": -slope, "scale": float(np.exp(intercept))},
        r_squared=r2,
        points_used=len(pairs),
        points_dropped=skipped,
    )


def fitted_curve(fit: FitResult, values) -> list[tuple[float, float]]:
    """(value, fitted probability/frequency) points for export plotting."""
    out = []
    for v in values:
        v = float(v)
        if fit.family == STRETCHED_EXPONENTIAL:
            c, lam, beta = fit.params["c"], fit.params["lambda"], fit.params["beta"]
            out.append((v, c * float(np.exp(-lam * v ** beta))))
        else:
            out.append((v, fit.params["scale"] * v ** (-fit.params["exponent"])))
    return out
