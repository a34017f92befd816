"""Ordering laws of the gravity model ``beta_ij = m_i m_j``.

Permutations are 0-based tuples listing particles from lowest to highest
position: ``pi[0]`` is the particle of rank 1.  Ranks are 1-based.

Every routine accepts ``fractions.Fraction`` (or int) inputs and then works
in exact rational arithmetic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np
from scipy.special import betainc, gammaln

from .errors import EnumerationLimitError

__all__ = [
    "PERM_LIMIT",
    "PermLaw",
    "RankLaw",
    "one_line",
    "f_profile",
    "perm_pmf",
    "conditional_spacing_rates",
    "rank_pmf",
    "urn_pmf",
    "beta_limit_distance",
    "mode_check",
]

#: Largest n for which S_n is enumerated.
PERM_LIMIT = 9


def _is_exact(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def _check_perm(pi, n: int) -> tuple[int, ...]:
    pi = tuple(int(p) for p in pi)
    if sorted(pi) != list(range(n)):
        raise ValueError(f"{pi} is not a permutation of 0..{n - 1}")
    return pi


def f_profile(pi: Sequence[int], masses) -> list:
    """Cumulative mass fractions ``F_i = (m[pi[0]] + ... + m[pi[i-1]]) / M``, ``i = 1..n-1``."""
    m = list(masses)
    pi = _check_perm(pi, len(m))
    if any(v <= 0 for v in m):
        raise ValueError("masses must be positive")
    total = sum(m)
    out, acc = [], 0
    for p in pi[:-1]:
        acc += m[p]
        out.append(acc / total if not _is_exact(m) else Fraction(acc) / total)
    return out


def conditional_spacing_rates(pi: Sequence[int], masses) -> list:
    """``M^2 F_i (1 - F_i)`` for the spacing between ranks ``i`` and ``i+1``."""
    m = list(masses)
    total = sum(m)
    return [total * total * f * (1 - f) for f in f_profile(pi, m)]


@dataclass(frozen=True)
class PermLaw:
    n: int
    masses: tuple
    table: dict
    normalizer: object

    def probability(self, pi) -> float:
        return self.table[tuple(pi)]

    def rank_marginal(self, particle: int = 0) -> list:
        """``P(rank of particle = j)``, ``j = 1..n``."""
        out = [0] * self.n
        for pi, p in self.table.items():
            out[pi.index(particle)] += p
        return out

    def entropy(self) -> float:
        p = np.array([float(v) for v in self.table.values()])
        return float(-np.sum(p * np.log(p)))

    def mode(self) -> tuple[int, ...]:
        """First most likely ordering (enumeration order); see :meth:`modes` for ties."""
        return max(self.table, key=lambda k: self.table[k])

    def modes(self, rtol: float = 1e-12) -> list[tuple[int, ...]]:
        top = max(self.table.values())
        return [pi for pi, p in self.table.items() if p >= top * (1 - rtol)]

    def tv_from_uniform(self) -> float:
        u = 1.0 / math.factorial(self.n)
        return 0.5 * sum(abs(float(p) - u) for p in self.table.values())

    def summary(self) -> dict:
        """Entropy, all modes (one-line notation) and TV distance from the uniform law."""
        return {
            "n": self.n,
            "masses": [float(v) for v in self.masses],
            "entropy": self.entropy(),
            "mode": [one_line(pi) for pi in self.modes()],
            "tv_vs_uniform": self.tv_from_uniform(),
        }

    def rows(self) -> list[list]:
        """``[one_line(pi), probability]`` in enumeration order."""
        return [[one_line(pi), float(p)] for pi, p in self.table.items()]


def one_line(pi: Sequence[int]) -> str:
    """One-line notation of a 0-based ordering: ``(1, 0, 2)`` -> ``"213"``.

    Digit ``i`` is the (1-based) particle of rank ``i``; unambiguous because
    enumeration stops at ``PERM_LIMIT = 9``.
    """
    return "".join(str(p + 1) for p in pi)


def perm_pmf(masses) -> PermLaw:
    """``P(pi) = C(m) prod_i 1 / (F_i(pi) (1 - F_i(pi)))`` by full enumeration.

    Exact when all masses are rational (int or Fraction); floats are handled
    in log space.

    Raises
    ------
    EnumerationLimitError
        If ``n > PERM_LIMIT``.
    """
    m = tuple(masses)
    n = len(m)
    if n < 1:
        raise ValueError("need at least one particle")
    if n > PERM_LIMIT:
        raise EnumerationLimitError(f"n={n} > {PERM_LIMIT}: n! orderings are too many to enumerate")
    if any(v <= 0 for v in m):
        raise ValueError("masses must be positive")
    perms = list(itertools.permutations(range(n)))
    if _is_exact(m):
        weights = []
        for pi in perms:
            w = Fraction(1)
            for f in f_profile(pi, m):
                w /= f * (1 - f)
            weights.append(w)
        total = sum(weights)
        return PermLaw(n, m, {pi: w / total for pi, w in zip(perms, weights)}, 1 / total)
    mf = np.asarray(m, dtype=float)
    logw = np.empty(len(perms))
    for k, pi in enumerate(perms):
        f = np.cumsum(mf[list(pi)])[:-1] / mf.sum()
        logw[k] = -np.sum(np.log(f) + np.log1p(-f))
    shift = logw.max()
    w = np.exp(logw - shift)
    total = w.sum()
    return PermLaw(n, m, {pi: float(v / total) for pi, v in zip(perms, w)}, float(np.exp(-shift) / total))


@dataclass(frozen=True)
class RankLaw:
    n: int
    alpha: object
    pmf: tuple

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.pmf])

    def summary(self) -> dict:
        """Entropy, all modal ranks and TV distance from the uniform law on ``1..n``."""
        p = self.as_array()
        nz = p[p > 0]
        top = p.max()
        return {
            "n": self.n,
            "alpha": float(self.alpha),
            "entropy": float(-np.sum(nz * np.log(nz))),
            "mode": [int(j) + 1 for j in np.flatnonzero(p >= top * (1 - 1e-12))],
            "tv_vs_uniform": float(0.5 * np.abs(p - 1.0 / self.n).sum()),
        }


def _rising(a, k: int):
    out = 1
    for i in range(k):
        out *= a + i
    return out


def rank_pmf(n: int, alpha) -> RankLaw:
    """Law of the rank of a particle of mass ``alpha`` among ``n - 1`` unit masses.

    ``P(j) ∝ C(n-1, j-1) alpha^(n-j) alpha^(j-1)`` with ``a^(k)`` the rising
    factorial.  Exact for rational ``alpha``; log-gamma otherwise.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if isinstance(alpha, Rational):
        a = Fraction(alpha)
        w = [math.comb(n - 1, j - 1) * _rising(a, n - j) * _rising(a, j - 1) for j in range(1, n + 1)]
        total = sum(w)
        return RankLaw(n, a, tuple(v / total for v in w))
    a = float(alpha)
    j = np.arange(1, n + 1)
    logw = (
        gammaln(n) - gammaln(j) - gammaln(n - j + 1)
        + gammaln(a + n - j) + gammaln(a + j - 1) - 2 * gammaln(a)
    )
    w = np.exp(logw - logw.max())
    return RankLaw(n, a, tuple((w / w.sum()).tolist()))


def urn_pmf(n: int, a) -> list:
    """Number of red draws in ``n - 1`` Polya-urn steps starting from ``a`` red and ``a`` black.

    Dynamic programming over (draws made, reds drawn); entry ``r`` of the
    result is ``P(r red draws)``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if a <= 0:
        raise ValueError("a must be positive")
    if isinstance(a, Rational):
        a = Fraction(a)
    probs = [1 + 0 * a]
    for t in range(n - 1):
        nxt = [0 * a] * (t + 2)
        total = 2 * a + t
        for r, p in enumerate(probs):
            red = a + r
            nxt[r + 1] += p * red / total
            nxt[r] += p * (total - red) / total
        probs = nxt
    return probs


def beta_limit_distance(n: int, alpha, a) -> float:
    """Kolmogorov distance between the law of ``rank / n`` and Beta(a, a)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = rank_pmf(n, alpha).as_array()
    upper = np.cumsum(p)
    lower = np.concatenate([[0.0], upper[:-1]])
    t = np.arange(1, n + 1) / n
    b = betainc(float(a), float(a), t)
    return float(max(np.max(np.abs(upper - b)), np.max(np.abs(lower - b))))


def mode_check(n: int, alpha, rtol: float = 1e-12) -> tuple[int, ...]:
    """All ranks attaining the maximum of :func:`rank_pmf` (1-based)."""
    if alpha == 1:
        raise ValueError("alpha = 1 gives the uniform law; every rank is a mode")
    law = rank_pmf(n, alpha)
    if isinstance(law.alpha, Fraction):
        top = max(law.pmf)
        return tuple(j + 1 for j, p in enumerate(law.pmf) if p == top)
    p = law.as_array()
    return tuple(int(j) + 1 for j in np.flatnonzero(p >= p.max() * (1 - rtol)))
