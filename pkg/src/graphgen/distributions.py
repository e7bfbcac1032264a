"""Degree-distribution models and the closed-form selection/connectivity formulas.

Poisson is the primary model; Uniform, Normal, Exponential, Gamma and Pareto
are the ablation alternatives. Continuous models are discretized onto integer
degrees via CDF differences P{x = d} = P{d-1 < x <= d}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special, stats

from .errors import DegenerateSupportError, InvalidParameterError

KINDS = ("poisson", "uniform", "normal", "exponential", "gamma", "pareto")


@dataclass(frozen=True)
class DegreeModel:
    """A named degree distribution with its parameter record.

    Parameter keys by kind:
        poisson:     lam
        uniform:     a, b            (a < b)
        normal:      mu, sigma
        exponential: rate
        gamma:       alpha, beta     (shape, rate)
        pareto:      shape, x_min
    """

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidParameterError(f"unknown degree model kind {self.kind!r}")
        p = self.params
        positive = {
            "poisson": ["lam"],
            "uniform": [],
            "normal": ["sigma"],
            "exponential": ["rate"],
            "gamma": ["alpha", "beta"],
            "pareto": ["shape", "x_min"],
        }[self.kind]
        for name in positive:
            if name not in p:
                raise InvalidParameterError(f"{self.kind} model missing {name!r}")
            if not p[name] > 0:
                raise InvalidParameterError(f"{self.kind} parameter {name}={p[name]} must be > 0")
        if self.kind == "uniform":
            if "a" not in p or "b" not in p or not p["a"] < p["b"]:
                raise InvalidParameterError("uniform model requires a < b")
        if self.kind == "normal" and "mu" not in p:
            raise InvalidParameterError("normal model missing 'mu'")

    @classmethod
    def poisson(cls, lam: float) -> "DegreeModel":
        return cls("poisson", {"lam": float(lam)})

    @classmethod
    def uniform(cls, a: float, b: float) -> "DegreeModel":
        return cls("uniform", {"a": float(a), "b": float(b)})

    @classmethod
    def normal(cls, mu: float, sigma: float = 1.0) -> "DegreeModel":
        return cls("normal", {"mu": float(mu), "sigma": float(sigma)})

    @classmethod
    def exponential(cls, rate: float) -> "DegreeModel":
        return cls("exponential", {"rate": float(rate)})

    @classmethod
    def gamma(cls, alpha: float, beta: float) -> "DegreeModel":
        return cls("gamma", {"alpha": float(alpha), "beta": float(beta)})

    @classmethod
    def pareto(cls, shape: float, x_min: float = 1.0) -> "DegreeModel":
        return cls("pareto", {"shape": float(shape), "x_min": float(x_min)})

    def pmf(self, d) -> np.ndarray:
        """Probability of integer degree(s) d under the discretized model."""
        return model_pmf(self, d)


def default_degree_model(kind: str, n: int, m: int, d_max: int | None = None) -> DegreeModel:
    """Model with the stock parameterization derived from the target (n, m).

    Average degree 2m/n drives every kind; gamma's rate uses the edge
    probability m / C(n, 2); uniform spans 0..d_max (or 0..n-1).
    """
    avg = 2.0 * m / n
    if kind == "poisson":
        return DegreeModel.poisson(avg)
    if kind == "uniform":
        upper = d_max if d_max is not None else n - 1
        return DegreeModel.uniform(0.0, float(max(upper, 1)))
    if kind == "normal":
        return DegreeModel.normal(avg, 1.0)
    if kind == "exponential":
        return DegreeModel.exponential(avg)
    if kind == "gamma":
        edge_p = m / (n * (n - 1) / 2.0)
        return DegreeModel.gamma(avg, edge_p)
    if kind == "pareto":
        return DegreeModel.pareto(avg, 1.0)
    raise InvalidParameterError(f"unknown degree model kind {kind!r}")


def poisson_log_pmf(d, lam: float):
    """log P(X = d) for X ~ Poisson(lam), safe for large d."""
    if not lam > 0:
        raise InvalidParameterError(f"poisson rate must be positive, got {lam}")
    d = np.asarray(d, dtype=np.float64)
    return d * math.log(lam) - lam - special.gammaln(d + 1.0)


def poisson_pmf(d, lam: float):
    """P(X = d) = e^-lam * lam^d / d!, evaluated in log space."""
    out = np.exp(poisson_log_pmf(d, lam))
    if np.ndim(out) == 0:
        return float(out)
    return out


def truncation_k(lam: float) -> int:
    """Smallest integer k >= 1 with P(k | lam) strictly below P(0 | lam).

    Degrees of k and above are treated as non-occurring by the generator's
    stage-1 cap. The comparison reduces to lam^k / k! < 1, done in log space
    so the exact tie at lam = 1, k = 1 is preserved (and skipped).
    """
    if not lam > 0:
        raise InvalidParameterError(f"poisson rate must be positive, got {lam}")
    log_lam = math.log(lam)
    k = 1
    while k * log_lam - math.lgamma(k + 1) >= 0.0:
        k += 1
    return k


def model_pmf(model: DegreeModel, d) -> np.ndarray:
    """Discretized probability of integer degree(s) d.

    Poisson evaluates its pmf directly; continuous kinds use the CDF
    difference over (d-1, d].
    """
    d = np.atleast_1d(np.asarray(d, dtype=np.float64))
    p = model.params
    if model.kind == "poisson":
        out = np.where(d >= 0, np.exp(poisson_log_pmf(np.maximum(d, 0), p["lam"])), 0.0)
        return out

    if model.kind == "uniform":
        dist = stats.uniform(loc=p["a"], scale=p["b"] - p["a"])
    elif model.kind == "normal":
        dist = stats.norm(loc=p["mu"], scale=p["sigma"])
    elif model.kind == "exponential":
        dist = stats.expon(scale=1.0 / p["rate"])
    elif model.kind == "gamma":
        dist = stats.gamma(a=p["alpha"], scale=1.0 / p["beta"])
    else:  # pareto
        dist = stats.pareto(b=p["shape"], scale=p["x_min"])
    return dist.cdf(d) - dist.cdf(d - 1.0)


def discretized_pmf(model: DegreeModel, support_cap: int) -> np.ndarray:
    """Normalized pmf of the model restricted to degrees 0..support_cap."""
    if support_cap < 1:
        raise InvalidParameterError(f"support_cap must be >= 1, got {support_cap}")
    raw = model_pmf(model, np.arange(support_cap + 1))
    raw = np.clip(raw, 0.0, None)
    total = raw.sum()
    if total <= 0.0:
        raise DegenerateSupportError(
            f"{model.kind} model has no mass on degrees 0..{support_cap}"
        )
    return raw / total


def sample_degrees(
    model: DegreeModel, rng: np.random.Generator, support_cap: int, size: int
) -> np.ndarray:
    """Integer degrees in [0, support_cap], drawn as a batch.

    Poisson draws directly and rejects values above the cap (falling back to
    the explicit truncated pmf if rejection drags on); continuous models
    sample their discretized pmf.
    """
    if support_cap < 1:
        raise InvalidParameterError(f"support_cap must be >= 1, got {support_cap}")
    if model.kind == "poisson":
        out = rng.poisson(model.params["lam"], size).astype(np.int64)
        for _ in range(50):
            bad = out > support_cap
            n_bad = int(bad.sum())
            if n_bad == 0:
                return out
            out[bad] = rng.poisson(model.params["lam"], n_bad)
        # Cap far below the mean: sample the conditional distribution exactly.
        bad = out > support_cap
        pmf = discretized_pmf(model, support_cap)
        out[bad] = rng.choice(support_cap + 1, size=int(bad.sum()), p=pmf)
        return out
    pmf = discretized_pmf(model, support_cap)
    return rng.choice(support_cap + 1, size=size, p=pmf).astype(np.int64)


def sample_degree(model: DegreeModel, rng: np.random.Generator, support_cap: int) -> int:
    """One integer degree in [0, support_cap] from the capped model."""
    return int(sample_degrees(model, rng, support_cap, 1)[0])


def connectivity_edge_count(n: int, epsilon: float = 0.0) -> int:
    """Integer part of (1/2) n ln n + epsilon * n, floored at zero."""
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    value = 0.5 * n * math.log(n) + epsilon * n
    return max(0, int(value))


def edge_probability_thresholds(n: int, avg_degree: float) -> tuple[float, float, float]:
    """The three selection-probability regimes for an n-node random graph.

    Returns (p2, p3, p4): plain selection of avg_degree edges per node,
    the few-isolated-nodes threshold log n / (n-1), and the no-isolated-nodes
    threshold at twice that.
    """
    if n < 2:
        raise InvalidParameterError(f"need n >= 2, got {n}")
    p2 = avg_degree / (n - 1)
    p3 = math.log(n) / (n - 1)
    return p2, p3, 2.0 * p3


def expected_node_probability(n: int, avg_degree: float) -> float:
    """Expected selection probability e^-D (D+1) D^D / (n * D!) at D = avg_degree.

    D! generalizes through the gamma function so non-integer average degrees
    are admissible; the whole expression is evaluated in log space.
    """
    if n < 1:
        raise InvalidParameterError(f"need n >= 1, got {n}")
    if not avg_degree > 0:
        raise InvalidParameterError(f"avg_degree must be positive, got {avg_degree}")
    d = avg_degree
    log_val = (
        -d
        + math.log(d + 1.0)
        + d * math.log(d)
        - math.log(n)
        - math.lgamma(d + 1.0)
    )
    return math.exp(log_val)
