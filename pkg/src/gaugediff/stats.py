"""Goodness-of-fit tools used to compare simulated and exact laws."""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np
from scipy import special
from scipy.stats import chi2

__all__ = [
    "DEFAULT_LEVEL",
    "TestReport",
    "ecdf",
    "ks_statistic",
    "ks_one_sample",
    "ks_two_sample",
    "chi_square",
    "tv_distance",
    "max_abs_correlation",
    "reference_cdf",
    "exp_cdf",
    "gamma_cdf",
    "beta_cdf",
    "effective_sample_size",
]

DEFAULT_LEVEL = 0.01


@dataclass
class TestReport:
    """Outcome of one check.  ``p_value`` is ``None`` for tolerance checks."""

    __test__ = False  # not a pytest class

    name: str
    statistic: float
    p_value: float | None
    n_effective: float | None
    verdict: bool
    context: str = ""

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "pass" if self.verdict else "fail"
        return d

    def line(self) -> str:
        p = "" if self.p_value is None else f" p={self.p_value:.4g}"
        ne = "" if self.n_effective is None else f" n_eff={self.n_effective:.0f}"
        return f"[{'PASS' if self.verdict else 'FAIL'}] {self.name}: stat={self.statistic:.4g}{p}{ne} {self.context}".rstrip()


def ecdf(samples) -> tuple[np.ndarray, np.ndarray]:
    x = np.sort(np.asarray(samples, dtype=float))
    return x, np.arange(1, len(x) + 1) / len(x)


def ks_statistic(samples, cdf: Callable) -> float:
    x = np.sort(np.asarray(samples, dtype=float))
    n = len(x)
    f = cdf(x)
    return float(max(np.max(np.arange(1, n + 1) / n - f), np.max(f - np.arange(n) / n)))


def ks_one_sample(samples, cdf: Callable, n_effective: float | None = None,
                  level: float = DEFAULT_LEVEL, name: str = "ks", context: str = "") -> TestReport:
    """``D = sup |ECDF - CDF|`` with an asymptotic Kolmogorov p-value at ``n_effective``.

    ``n_effective`` defaults to the sample count; pass an ESS for correlated
    samples.
    """
    samples = np.asarray(samples, dtype=float).ravel()
    if len(samples) < 10:
        raise ValueError("ks_one_sample needs at least 10 samples")
    d = ks_statistic(samples, cdf)
    ne = float(len(samples) if n_effective is None else n_effective)
    if np.all(samples == samples[0]):
        context = (context + " degenerate: all samples equal").strip()
    p = float(special.kolmogorov(np.sqrt(ne) * d)) if ne > 0 else 0.0
    return TestReport(name, d, p, ne, p > level, context)


def ks_two_sample(a, b, n_eff_a: float | None = None, n_eff_b: float | None = None,
                  level: float = DEFAULT_LEVEL, name: str = "ks2", context: str = "") -> TestReport:
    a = np.sort(np.asarray(a, dtype=float).ravel())
    b = np.sort(np.asarray(b, dtype=float).ravel())
    if len(a) < 10 or len(b) < 10:
        raise ValueError("ks_two_sample needs at least 10 samples per side")
    grid = np.concatenate([a, b])
    fa = np.searchsorted(a, grid, side="right") / len(a)
    fb = np.searchsorted(b, grid, side="right") / len(b)
    d = float(np.max(np.abs(fa - fb)))
    na = float(len(a) if n_eff_a is None else n_eff_a)
    nb = float(len(b) if n_eff_b is None else n_eff_b)
    ne = na * nb / (na + nb)
    p = float(special.kolmogorov(np.sqrt(ne) * d))
    return TestReport(name, d, p, ne, p > level, context)


def chi_square(counts, probs, n_effective: float | None = None,
               level: float = DEFAULT_LEVEL, name: str = "chi2", context: str = "") -> TestReport:
    """Pearson test of category counts against ``probs``; counts rescaled to ``n_effective``."""
    counts = np.asarray(counts, dtype=float)
    probs = np.asarray(probs, dtype=float)
    total = counts.sum()
    ne = total if n_effective is None else float(n_effective)
    obs = counts / total * ne
    exp = probs * ne
    stat = float(np.sum((obs - exp) ** 2 / exp))
    p = float(chi2.sf(stat, len(probs) - 1))
    return TestReport(name, stat, p, ne, p > level, context)


def tv_distance(p, q) -> float:
    """``0.5 * sum |p_i - q_i|``."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ValueError(f"support mismatch: {p.shape} vs {q.shape}")
    for v in (p, q):
        if abs(v.sum() - 1) > 1e-9:
            raise ValueError("probability vectors must sum to 1")
    return float(0.5 * np.abs(p - q).sum())


def max_abs_correlation(samples) -> float:
    """Largest off-diagonal ``|rho|`` among the columns of ``samples``."""
    c = np.corrcoef(np.asarray(samples, dtype=float).T)
    if c.ndim == 0:
        return 0.0
    return float(np.max(np.abs(c[~np.eye(len(c), dtype=bool)]))) if len(c) > 1 else 0.0


def exp_cdf(t, rate: float):
    if rate <= 0:
        raise ValueError("rate must be positive")
    t = np.asarray(t, dtype=float)
    return np.where(t > 0, -np.expm1(-rate * np.maximum(t, 0)), 0.0)


def gamma_cdf(t, shape: float, rate: float):
    if shape <= 0 or rate <= 0:
        raise ValueError("shape and rate must be positive")
    t = np.asarray(t, dtype=float)
    return np.where(t > 0, special.gammainc(shape, rate * np.maximum(t, 0)), 0.0)


def beta_cdf(t, a: float, b: float):
    if a <= 0 or b <= 0:
        raise ValueError("Beta parameters must be positive")
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    return special.betainc(a, b, t)


_CDFS = {"exp": exp_cdf, "gamma": gamma_cdf, "beta": beta_cdf}


def reference_cdf(kind: str, t, *params):
    """``reference_cdf("exp", t, rate)``, ``("gamma", t, shape, rate)``, ``("beta", t, a, b)``."""
    try:
        fn = _CDFS[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown distribution {kind!r}; expected one of {sorted(_CDFS)}") from None
    return fn(t, *params)


def _autocov(x: np.ndarray) -> np.ndarray:
    """Autocovariance of each row (chain) of ``x`` via FFT, biased estimator."""
    m, n = x.shape
    xc = x - x.mean(axis=1, keepdims=True)
    size = 1 << (2 * n - 1).bit_length()
    f = np.fft.rfft(xc, size, axis=1)
    return np.fft.irfft(f * np.conj(f), size, axis=1)[:, :n] / n


def effective_sample_size(samples) -> float:
    """ESS via Geyer's initial positive sequence.

    ``samples`` is a 1-D series or a ``(chains, draws)`` array; for several
    chains the autocovariances are averaged and combined with the
    between-chain variance.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim == 1:
        x = x[None, :]
    m, n = x.shape
    if m * n < 100:
        raise ValueError("effective_sample_size needs at least 100 samples")
    acov = _autocov(x)
    w = acov[:, 0].mean() * n / max(n - 1, 1)
    var_plus = w * (n - 1) / n
    if m > 1:
        var_plus += x.mean(axis=1).var(ddof=1)
    if var_plus <= 0:
        warnings.warn("constant sequence: effective sample size is 0", RuntimeWarning, stacklevel=2)
        return 0.0
    rho = 1.0 - (w - acov.mean(axis=0)) / var_plus
    rho[0] = 1.0
    tau = -1.0
    for k in range(0, n - 1, 2):
        pair = rho[k] + rho[k + 1]
        if pair <= 0:
            break
        tau += 2.0 * pair
    tau = max(tau, 1.0 / np.log10(m * n))
    return float(m * n / tau)
