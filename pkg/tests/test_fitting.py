import math

import pytest

from depheavy import DomainError, fit_power_law, fit_stretched_exponential

# Reference shape of an ecosystem edge-heaviness distribution; used to
# generate noiseless synthetic data for parameter recovery.
SE_C, SE_LAMBDA, SE_BETA = 0.46, 1.66, 0.37


def stretched_pmf(h):
    return SE_C * math.exp(-SE_LAMBDA * h ** SE_BETA)


class TestStretchedExponential:
    def test_recovers_known_parameters(self):
        data = {h: stretched_pmf(h) for h in range(0, 101)}
        fit = fit_stretched_exponential(data)
        assert fit.family == "stretched-exponential"
        assert fit.params["c"] == pytest.approx(SE_C, abs=0.01)
        assert fit.params["lambda"] == pytest.approx(SE_LAMBDA, abs=0.01)
        assert fit.params["beta"] == pytest.approx(SE_BETA, abs=0.01)
        assert fit.r_squared >= 0.9999
        assert fit.points_used == 101

    def test_pure_exponential_degenerates_to_beta_one(self):
        data = {h: 0.5 * math.exp(-0.8 * h) for h in range(0, 40)}
        fit = fit_stretched_exponential(data)
        assert fit.params["beta"] == pytest.approx(1.0, abs=0.01)
        assert fit.params["lambda"] == pytest.approx(0.8, abs=0.01)

    def test_counts_and_pmf_give_same_shape(self):
        pmf = {h: stretched_pmf(h) for h in range(0, 30)}
        counts = {h: p * 1e6 for h, p in pmf.items()}
        a = fit_stretched_exponential(pmf)
        b = fit_stretched_exponential(counts)
        assert a.params["beta"] == pytest.approx(b.params["beta"], abs=1e-9)
        assert a.params["lambda"] == pytest.approx(b.params["lambda"], abs=1e-9)

    def test_two_points_rejected(self):
        with pytest.raises(DomainError):
            fit_stretched_exponential({0: 0.5, 1: 0.3})

    def test_zero_frequency_bins_excluded(self):
        data = {h: stretched_pmf(h) for h in range(0, 20)}
        data[21] = 0.0
        fit = fit_stretched_exponential(data)
        assert fit.points_dropped == 1
        assert fit.points_used == 20

    def test_residual_no_worse_than_grid(self):
        import numpy as np
        data = {h: stretched_pmf(h) * (1 + 0.05 * math.sin(h)) for h in range(0, 60)}
        fit = fit_stretched_exponential(data)
        h = np.array(sorted(data))
        y = np.log(np.array([data[v] for v in sorted(data)])
                   / sum(data.values()))

        def sse(beta):
            x = h ** beta
            xm, ym = x.mean(), y.mean()
            dx = x - xm
            slope = float(dx @ (y - ym)) / float(dx @ dx)
            resid = y - (slope * x + (ym - slope * xm))
            return float(resid @ resid)

        returned = sse(fit.params["beta"])
        for i in range(146):
            assert returned <= sse(0.05 + i * 0.01) + 1e-12

    def test_deterministic(self):
        data = {h: stretched_pmf(h) for h in range(0, 50)}
        assert fit_stretched_exponential(data) == fit_stretched_exponential(data)


class TestPowerLaw:
    def test_exact_exponent_recovery(self):
        hist = {s: 1000.0 * s ** -2 for s in range(1, 21)}
        fit = fit_power_law(histogram=hist, drop_top=0)
        assert fit.family == "power-law"
        assert fit.params["exponent"] == pytest.approx(2.0, abs=1e-9)
        assert fit.params["scale"] == pytest.approx(1000.0, rel=1e-9)
        assert fit.r_squared == pytest.approx(1.0, abs=1e-12)

    def test_constant_frequencies_flat(self):
        fit = fit_power_law(histogram={s: 7.0 for s in range(1, 15)}, drop_top=0)
        assert fit.params["exponent"] == pytest.approx(0.0, abs=1e-12)

    def test_sizes_sequence_input(self):
        # exact inverse-square counts: 144 / s^2 at s in {1, 2, 3, 4, 6, 12}
        sizes = [1] * 144 + [2] * 36 + [3] * 16 + [4] * 9 + [6] * 4 + [12] * 1
        fit = fit_power_law(sizes, drop_top=0)
        assert fit.params["exponent"] == pytest.approx(2.0, abs=1e-9)

    def test_drop_top_removes_largest_distinct_sizes(self):
        hist = {s: 1000.0 * s ** -2 for s in range(1, 21)}
        hist[100] = 500.0       # off-model outlier at the top
        hist[90] = 400.0
        fit = fit_power_law(histogram=hist, drop_top=2)
        assert fit.points_dropped == 2
        assert fit.params["exponent"] == pytest.approx(2.0, abs=1e-9)

    def test_insufficient_support_rejected(self):
        with pytest.raises(DomainError):
            fit_power_law(histogram={1: 5.0, 2: 3.0, 3: 2.0, 4: 1.0}, drop_top=5)
        with pytest.raises(DomainError):
            fit_power_law([1, 1, 2], drop_top=0)

    def test_scale_equivariance(self):
        hist = {s: 123.0 * s ** -1.7 for s in range(1, 30)}
        a = fit_power_law(histogram=hist, drop_top=3)
        b = fit_power_law(histogram={s: 10 * f for s, f in hist.items()}, drop_top=3)
        assert a.params["exponent"] == pytest.approx(b.params["exponent"], abs=1e-12)
        assert a.r_squared == pytest.approx(b.r_squared, abs=1e-12)
        assert b.params["scale"] == pytest.approx(10 * a.params["scale"], rel=1e-9)

    def test_exactly_one_input_required(self):
        with pytest.raises(DomainError):
            fit_power_law([1, 2, 3], histogram={1: 1.0})
        with pytest.raises(DomainError):
            fit_power_law()
