"""Rank-stabilized heaviness variants and penalty selection.

Raw heaviness distributions have the longest tails at small fan-out, so
ranking by raw values favors packages with tiny impact.  The adjustments
down-weight small fan-out: max-from-parents values are rescaled by
(n_k + shift) / n_max, and per-child / per-indirect means are multiplied by
K / (K + a) for a positive penalty a.  Absolute adjusted values carry no
meaning; only the induced ranking does.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

MHP_SHIFT = 30          # numerator shift in the max-heaviness zooming factor
HC_PENALTY = 10         # shipped penalty for heaviness on children
HID_PENALTY = 6         # shipped penalty for heaviness on indirect downstream
RANK_WINDOW = 50


def adjusted_mhp(h_max: int, n_k: int, n_max: int, shift: int = MHP_SHIFT) -> Fraction:
    """h_max * (n_k + shift) / n_max."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    return Fraction(h_max) * Fraction(n_k + shift, n_max)


def adjusted_penalized(h, k: int, a: int) -> Fraction:
    """h * k / (k + a); 0 when k == 0.  Used for both HC and HID."""
    if a <= 0:
        raise DomainError("penalty a must be a positive integer")
    if k == 0:
        return Fraction(0)
    return Fraction(h) * Fraction(k, k + a)


@dataclass
class StabilityCurve:
    a_values: list[int]
    s_values: list[Fraction]          # one entry per a >= a_values[1]
    rank_window: int = RANK_WINDOW

    def pairs(self) -> list[tuple[int, Fraction]]:
        return list(zip(self.a_values[1:], self.s_values))


def _rank(values: dict[str, Fraction]) -> dict[str, int]:
    # Descending by adjusted value, ties by package name, dense ranks 1..N.
    ordered = sorted(values, key=lambda name: (-values[name], name))
    return {name: r for r, name in enumerate(ordered, 1)}


def stability_curve(
    metric_by_package: dict,
    k_by_package: dict,
    a_range=range(1, 31),
    window: int = RANK_WINDOW,
) -> StabilityCurve:
    """Fraction of packages whose rank moves by at most `window` between
    consecutive penalty values."""
    if set(metric_by_package) != set(k_by_package):
        raise DomainError("metric and k maps must share the same keys")
    n = len(metric_by_package)
    if n == 0:
        raise DomainError("stability curve of an empty population")
    a_values = list(a_range)
    if len(a_values) < 2:
        raise DomainError("a_range must contain at least two values")
    s_values: list[Fraction] = []
    prev = None
    for a in a_values:
        ranks = _rank({
            name: adjusted_penalized(metric_by_package[name], k_by_package[name], a)
            for name in metric_by_package
        })
        if prev is not None:
            stable = sum(1 for name in ranks if abs(ranks[name] - prev[name]) <= window)
            s_values.append(Fraction(stable, n))
        prev = ranks
    return StabilityCurve(a_values, s_values, window)


def select_penalty(curve: StabilityCurve, epsilon: float = 0.002,
                   fallback: int = HC_PENALTY) -> int:
    """Smallest a from which the curve stays flat (every later consecutive
    increase < epsilon); falls back to the shipped default, with a warning,
    when the curve never plateaus."""
    pairs = curve.pairs()
    if not pairs:
        raise DomainError("empty stability curve")
    eps = Fraction(str(epsilon))
    diffs = [(pairs[i][0], pairs[i + 1][1] - pairs[i][1])
             for i in range(len(pairs) - 1)]
    if not diffs:
        return pairs[0][0]
    for start in range(len(diffs)):
        if all(d < eps for _, d in diffs[start:]):
            return diffs[start][0]
    warnings.warn(
        f"stability curve never plateaus (epsilon={epsilon}); "
        f"falling back to a={fallback}")
    return fallback
