"""Exact invariant laws.

Rate convention: a rate ``r`` always means the density ``r * exp(-r * t)`` on
``t >= 0``.

Under the invariant law ``exp(-2 k(x)) dx`` of a Coxeter gauge with a free
orbit, the variables ``<eta_i, A x>`` (``A`` the element bringing ``x`` into
the fundamental cone, ``eta_i`` the cone normals) are independent
Exponentials with rates ``2 alpha_i``.  For the standard parameter chambers
these are

* A (rank model, ``lam = -delta``): spacings ``X[j+1] - X[j]``, rates ``2 alpha_j``,
* B: ``|X|[1]`` and ``|X|[j+1] - |X|[j]``, rates ``2 sum_{s>=j} lam_s``,
* D: ``H[1] + H[2]``, ``H[2] - H[1]``, ``H[j] - H[j-1]`` for the D-representative ``H(X)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import groups
from .cones import ConeBasis, cone_basis
from .errors import NotRecurrentError
from .gauge import CoxeterGauge, RankGauge, argmax_element, rank_alphas
from .groups import GroupElement
from .permlaw import conditional_spacing_rates, perm_pmf
from .streams import exponential

__all__ = [
    "ExponentialCoordinates",
    "exponential_coordinates",
    "exponential_variables",
    "closed_form_rates_A",
    "closed_form_rates_B",
    "closed_form_rates_D",
    "closed_form_rates",
    "hmap_D",
    "hmap_D_procedure",
    "exact_sample",
    "exact_sample_rank",
    "exact_sample_centered_graph",
    "rate_table_rows",
]


@dataclass(frozen=True)
class ExponentialCoordinates:
    basis: ConeBasis
    rates: np.ndarray
    family: str
    variable_names: tuple[str, ...]

    @property
    def coefficients(self) -> np.ndarray:
        return self.basis.coefficients


_REP_SYMBOL = {"A": "X", "B": "|X|", "D": "H"}


def _describe(v: np.ndarray, sym: str) -> str:
    terms = []
    for i in np.flatnonzero(np.abs(v) > 1e-12):
        c = v[i]
        mag = "" if abs(abs(c) - 1) < 1e-12 else f"{abs(c):g}*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}{sym}[{i + 1}]"))
    # put positive terms first so spacings read X[j+1]-X[j]
    terms.sort(key=lambda t: t[0] == "-")
    text = "".join(s + t for s, t in terms)
    return text[1:] if text.startswith("+") else text


def exponential_coordinates(model: CoxeterGauge) -> ExponentialCoordinates:
    """Cone normals, coefficients and rates computed from the orbit of ``lam``.

    Orbit differences ``lam - A lam`` -> extreme rays -> expansion of ``lam``.

    Raises
    ------
    StabilizerError
        If ``lam`` has a non-trivial stabilizer.
    """
    cb = cone_basis(model.lam, model.family)
    sym = _REP_SYMBOL[model.family.family]
    names = tuple(_describe(g, sym) for g in cb.generators)
    return ExponentialCoordinates(cb, 2.0 * cb.coefficients, model.family.family, names)


def exponential_variables(model: CoxeterGauge, coords: ExponentialCoordinates, x) -> np.ndarray:
    """``Y_i = alpha_i <eta_i, A x>``; iid Exp(2) under the invariant law.

    For family A the state is centered first.
    """
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if model.family.family == "A":
        x = x - x.mean(axis=1, keepdims=True)
    elems, _ = model._elements
    perms = np.array([g.perm for g in elems])
    signs = np.array([g.signs for g in elems], dtype=float)
    idx = model.argmax_index(x)
    rep = signs[idx] * np.take_along_axis(x, perms[idx], axis=1)
    return coords.coefficients * (rep @ coords.basis.generators.T)


def closed_form_rates_A(delta) -> np.ndarray:
    """Spacing rates ``2 alpha_k`` of the rank model.

    Raises
    ------
    NotRecurrentError
        If some ``alpha_k <= 0``.
    """
    alphas = rank_alphas(delta)
    if np.any(alphas <= 0):
        raise NotRecurrentError(
            f"rank drifts {np.asarray(delta, dtype=float).tolist()} give alpha={alphas.tolist()}; "
            "recurrence needs alpha_k > 0 for all k = 1..n-1"
        )
    return 2.0 * alphas


def closed_form_rates_B(lam) -> np.ndarray:
    """Rates ``2 sum_{s>=j} lam_s`` of ``|X|[1], |X|[2]-|X|[1], ...``."""
    lam = np.asarray(lam, dtype=float)
    if np.any(lam < 0) or np.any(np.diff(lam) < 0) or not np.any(lam > 0):
        raise ValueError(f"family B needs 0 <= lam_1 <= ... <= lam_n, lam != 0; got {lam.tolist()}")
    return 2.0 * np.cumsum(lam[::-1])[::-1]


def closed_form_rates_D(lam) -> np.ndarray:
    """Rates ``(sum lam, -lam_1 + sum_{s>=2} lam_s, 2 sum_{s>=j} lam_s for j >= 3)``."""
    lam = np.asarray(lam, dtype=float)
    if len(lam) < 2:
        raise ValueError("family D needs n >= 2")
    if lam[0] + lam[1] < 0 or np.any(np.diff(lam) < 0):
        raise ValueError(
            f"family D needs lam_1 + lam_2 >= 0 and lam_1 <= lam_2 <= ... <= lam_n; got {lam.tolist()}"
        )
    tail = 2.0 * np.cumsum(lam[::-1])[::-1]
    return np.concatenate([[lam.sum(), lam[1:].sum() - lam[0]], tail[2:]])


def closed_form_rates(family: str, params) -> np.ndarray:
    """Dispatch: ``params`` is ``delta`` for A and ``lam`` for B and D."""
    return {"A": closed_form_rates_A, "B": closed_form_rates_B, "D": closed_form_rates_D}[family](params)


def hmap_D(x) -> np.ndarray:
    """Representative of ``x`` in the D chamber ``{x_1 + x_2 >= 0, x_1 <= ... <= x_n}``.

    Sort the absolute values; when the number of negative entries is odd the
    smallest one keeps a minus sign.
    """
    x = np.asarray(x, dtype=float)
    out = np.sort(np.abs(x), axis=-1)
    odd = (np.sum(x < 0, axis=-1) % 2) == 1
    out[..., 0] = np.where(odd, -out[..., 0], out[..., 0])
    return out


def hmap_D_procedure(x) -> np.ndarray:
    """Step-by-step version of :func:`hmap_D` for a single vector.

    Even count of negatives: flip them all and sort.  Odd count: flip all but
    the negative entry of least magnitude and sort; if that entry outweighs
    the smallest positive entry, flip both.
    """
    x = np.array(x, dtype=float)
    neg = np.flatnonzero(x < 0)
    if len(neg) % 2 == 0:
        return np.sort(np.abs(x))
    keep = neg[np.argmin(np.abs(x[neg]))]
    y = np.abs(x)
    y[keep] = x[keep]
    y = np.sort(y)
    # y[0] is the kept negative entry; y[1] the smallest of the rest
    if y[0] + y[1] < 0:
        y[0], y[1] = -y[0], -y[1]
        y = np.sort(y)
    return y


def _element_arrays(fam):
    elems = list(groups.enumerate_group(fam))
    return np.array([g.perm for g in elems]), np.array([g.signs for g in elems], dtype=float)


def exact_sample(model, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Draws from the invariant law, shape ``(size, n)``.

    CoxeterGauge: iid Exp(2) coordinates solved inside the fundamental cone,
    then moved by a uniformly random group element.  For family A (and for a
    :class:`RankGauge`) the draws lie on the centered hyperplane.
    """
    if isinstance(model, RankGauge):
        return exact_sample_rank(model.delta, rng, size)
    cb = cone_basis(model.lam, model.family)
    y = exponential(rng, (size, cb.dim), rate=2.0)
    z = y / cb.coefficients
    inner = np.linalg.solve(cb.intrinsic_transform(), z.T).T @ cb.basis.T
    perms, signs = _element_arrays(model.family)
    idx = rng.integers(len(perms), size=size)
    return signs[idx] * np.take_along_axis(inner, perms[idx], axis=1)


def exact_sample_rank(delta, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Centered draws of the rank model: uniform ordering, spacings Exp(2 alpha_k)."""
    rates = closed_form_rates_A(delta)
    n = len(rates) + 1
    spacings = exponential(rng, (size, n - 1)) / rates
    sorted_pos = np.concatenate([np.zeros((size, 1)), np.cumsum(spacings, axis=1)], axis=1)
    order = np.argsort(rng.random((size, n)), axis=1)
    x = np.empty_like(sorted_pos)
    np.put_along_axis(x, order, sorted_pos, axis=1)
    return x - x.mean(axis=1, keepdims=True)


def exact_sample_centered_graph(masses, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Centered draws of the gravity model with ``beta_ij = m_i m_j``.

    The ordering follows :func:`perm_pmf`; given the ordering the spacings
    are independent with rates ``M^2 F_i (1 - F_i)`` evaluated at the
    effective masses ``sqrt(2) m`` (the factor 2 of the density
    ``exp(-2k)``), i.e. twice :func:`conditional_spacing_rates`.
    """
    m = np.asarray(masses, dtype=float)
    law = perm_pmf(m)
    perms = list(law.table)
    probs = np.array([law.table[p] for p in perms], dtype=float)
    rates = np.array([conditional_spacing_rates(p, np.sqrt(2.0) * m) for p in perms])
    idx = rng.choice(len(perms), size=size, p=probs / probs.sum())
    n = len(m)
    spacings = exponential(rng, (size, n - 1)) / rates[idx]
    sorted_pos = np.concatenate([np.zeros((size, 1)), np.cumsum(spacings, axis=1)], axis=1)
    order = np.array(perms)[idx]
    x = np.empty_like(sorted_pos)
    np.put_along_axis(x, order, sorted_pos, axis=1)
    return x - x.mean(axis=1, keepdims=True)


def rate_table_rows(coords: ExponentialCoordinates, parameter) -> list[dict]:
    param = ",".join(repr(float(v)) for v in np.asarray(parameter, dtype=float))
    return [
        {"variable_name": name, "rate": float(rate), "family": coords.family, "parameter_vector": param}
        for name, rate in zip(coords.variable_names, coords.rates)
    ]
