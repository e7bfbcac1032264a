import math

import mpmath
import numpy as np
import pytest

from graphgen.distributions import (
    DegreeModel,
    connectivity_edge_count,
    default_degree_model,
    discretized_pmf,
    edge_probability_thresholds,
    expected_node_probability,
    model_pmf,
    poisson_pmf,
    sample_degree,
    sample_degrees,
    truncation_k,
)
from graphgen.errors import InvalidParameterError


def mp_poisson(d, lam):
    lam = mpmath.mpf(lam)
    return float(mpmath.e ** (-lam) * lam**d / mpmath.factorial(d))


class TestPoissonPmf:
    def test_zero(self):
        assert poisson_pmf(0, 2.0) == pytest.approx(math.exp(-2.0))

    def test_two(self):
        assert poisson_pmf(2, 2.0) == pytest.approx(2.0 * math.exp(-2.0))

    def test_large_d_no_overflow(self):
        val = poisson_pmf(150, 2.0)
        assert 0.0 < val < 1e-200
        assert val == pytest.approx(mp_poisson(150, 2.0), rel=1e-10)

    def test_rejects_bad_lambda(self):
        with pytest.raises(InvalidParameterError):
            poisson_pmf(1, 0.0)
        with pytest.raises(InvalidParameterError):
            poisson_pmf(1, -1.0)

    def test_mass_sums_to_one(self):
        for lam in (0.5, 1.0, 4.0, 12.0, 20.0):
            total = poisson_pmf(np.arange(201), lam).sum()
            assert 1.0 - 1e-9 <= total <= 1.0 + 1e-12


class TestTruncationK:
    def test_tie_at_lambda_one(self):
        # P(1|1) equals P(0|1) exactly, so strictness pushes k to 2.
        assert truncation_k(1.0) == 2

    def test_lambda_two(self):
        assert truncation_k(2.0) == 4

    def test_lambda_half(self):
        assert truncation_k(0.5) == 1

    def test_matches_enumeration_oracle(self):
        # Includes real-corpus average degrees alongside round values.
        for lam in (0.1, 0.5, 1.0, 2.0, 3.86, 8.89, 20.0):
            k = 1
            while mpmath.mpf(lam) ** k / mpmath.factorial(k) >= 1:
                k += 1
            assert truncation_k(lam) == k

    def test_monotone_in_lambda(self):
        grid = np.arange(0.1, 20.01, 0.1)
        ks = [truncation_k(float(lam)) for lam in grid]
        assert all(a <= b for a, b in zip(ks, ks[1:]))


class TestSampleDegree:
    def test_poisson_capped_frequencies(self):
        rng = np.random.default_rng(0)
        cap = 3
        draws = sample_degrees(DegreeModel.poisson(2.0), rng, cap, 100_000)
        assert draws.min() >= 0 and draws.max() <= cap
        pmf = poisson_pmf(np.arange(cap + 1), 2.0)
        pmf = pmf / pmf.sum()
        for d in range(cap + 1):
            freq = (draws == d).mean()
            sigma = math.sqrt(pmf[d] * (1 - pmf[d]) / len(draws))
            assert abs(freq - pmf[d]) < 3 * sigma + 1e-4

    def test_uniform_equiprobable(self):
        rng = np.random.default_rng(1)
        cap = 6
        model = DegreeModel.uniform(0, cap)
        draws = sample_degrees(model, rng, cap, 60_000)
        # CDF differences put equal mass on 1..cap and none on 0.
        assert (draws == 0).sum() == 0
        for d in range(1, cap + 1):
            freq = (draws == d).mean()
            sigma = math.sqrt((1 / cap) * (1 - 1 / cap) / len(draws))
            assert abs(freq - 1 / cap) < 3 * sigma + 1e-4

    def test_pareto_never_exceeds_cap(self):
        rng = np.random.default_rng(2)
        model = DegreeModel.pareto(2.0, 1.0)
        draws = [sample_degree(model, rng, 8) for _ in range(2000)]
        assert max(draws) <= 8

    def test_poisson_uncapped_mean(self):
        rng = np.random.default_rng(3)
        lam = 3.0
        draws = sample_degrees(DegreeModel.poisson(lam), rng, int(10 * lam), 1_000_000)
        assert abs(draws.mean() - lam) / lam < 0.01

    def test_discretized_pmf_normalized(self):
        for kind in ("uniform", "normal", "exponential", "gamma", "pareto"):
            model = default_degree_model(kind, 50, 150, d_max=10)
            pmf = discretized_pmf(model, 10)
            assert pmf.sum() == pytest.approx(1.0)
            assert (pmf >= 0).all()


class TestModelDefaults:
    def test_parameter_table(self):
        n, m, d_max = 100, 300, 10
        avg = 6.0
        assert default_degree_model("poisson", n, m).params["lam"] == avg
        normal = default_degree_model("normal", n, m)
        assert normal.params == {"mu": avg, "sigma": 1.0}
        assert default_degree_model("exponential", n, m).params["rate"] == avg
        gamma = default_degree_model("gamma", n, m)
        assert gamma.params["alpha"] == avg
        assert gamma.params["beta"] == pytest.approx(300 / 4950)
        pareto = default_degree_model("pareto", n, m)
        assert pareto.params == {"shape": avg, "x_min": 1.0}
        uniform = default_degree_model("uniform", n, m, d_max)
        assert (uniform.params["a"], uniform.params["b"]) == (0.0, 10.0)

    def test_validation(self):
        with pytest.raises(InvalidParameterError):
            DegreeModel.poisson(0.0)
        with pytest.raises(InvalidParameterError):
            DegreeModel.uniform(3, 3)
        with pytest.raises(InvalidParameterError):
            DegreeModel("weird", {})

    def test_normal_pmf_is_cdf_difference(self):
        model = DegreeModel.normal(2.0, 1.0)
        from scipy.stats import norm

        d = np.arange(0, 8)
        expected = norm.cdf(d, 2.0, 1.0) - norm.cdf(d - 1, 2.0, 1.0)
        np.testing.assert_allclose(model_pmf(model, d), expected)


class TestClosedForms:
    def test_connectivity_examples(self):
        assert connectivity_edge_count(100, 0.0) == 230
        assert connectivity_edge_count(2, 0.0) == 0
        assert connectivity_edge_count(1000, 0.5) == 3953

    def test_thresholds(self):
        p2, p3, p4 = edge_probability_thresholds(101, 5.0)
        assert p2 == pytest.approx(0.05)
        assert p3 == pytest.approx(math.log(101) / 100)
        assert p4 == pytest.approx(2 * p3)

    def test_expected_node_probability_integer(self):
        # Integer average degree reduces the gamma factor to a plain factorial.
        val = expected_node_probability(20, 2.0)
        assert val == pytest.approx(math.exp(-2) * 3 * 4 / (20 * 2))
        assert val == pytest.approx(0.040601, abs=1e-6)

    def test_integer_gamma_equals_factorial_form(self):
        for n, d in ((10, 1), (50, 3), (7, 5)):
            direct = math.exp(-d) * (d + 1) * d**d / (n * math.factorial(d))
            assert expected_node_probability(n, float(d)) == pytest.approx(direct, rel=1e-12)

    def test_crossover_claims(self):
        # Sparsity 0.2358 at n=20 pushes selection above uniform 1/n.
        d_bar = 0.2358 * 19
        assert expected_node_probability(20, d_bar) > 1 / 20
        # The no-isolated-nodes regime does the same from n=142 up.
        assert expected_node_probability(142, 2 * math.log(142)) >= 1 / 142

    def test_against_mpmath_oracle(self):
        for n, d in ((20, 0.2358 * 19), (142, 2 * math.log(142)), (33, 4.7)):
            d_mp = mpmath.mpf(d)
            oracle = float(
                mpmath.e ** (-d_mp) * (d_mp + 1) * d_mp**d_mp / (n * mpmath.gamma(d_mp + 1))
            )
            assert expected_node_probability(n, d) == pytest.approx(oracle, rel=1e-9)
