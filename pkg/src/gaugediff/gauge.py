"""Gauge functions ``k`` and drifts ``b = -grad k`` for the model families.

Four model variants share the same small interface (``n``, ``evaluate_k``,
``drift``, ``translation_invariant``):

``CoxeterGauge(lam, family)``
    ``k(x) = max_{A in G} <lam, A x>`` for G of type A, B or D.
``RankGauge(delta)``
    ``k(x) = -sum_i delta_i x[i]`` with ``x[1] <= ... <= x[n]``; the particle
    of rank ``i`` receives drift ``delta_i``.
``GraphGauge(beta)``
    ``k(x) = sum_{i<j} beta_ij |x_i - x_j|``; attraction along weighted edges.
``MassGauge(masses)``
    Graph gauge with ``beta_ij = m_i m_j``.

All functions accept a single vector or a batch with the coordinates on the
last axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Union

import numpy as np
from scipy.special import ndtri

from . import groups
from .groups import GroupElement, GroupFamily

__all__ = [
    "CoxeterGauge",
    "RankGauge",
    "GraphGauge",
    "MassGauge",
    "SplitGauge",
    "GaugeModel",
    "evaluate_k",
    "drift",
    "argmax_element",
    "recurrence_constant",
    "rank_alphas",
    "split_project",
    "centered_basis",
    "sphere_mesh",
]

# Relative slack when deciding ties in argmax_element.
_TIE_TOL = 1e-12


def centered_basis(n: int) -> np.ndarray:
    """Orthonormal basis of ``{x : sum(x) = 0}`` as columns of an ``n x (n-1)`` array.

    Helmert construction: column ``k`` is ``(1, ..., 1, -k, 0, ..., 0)``
    normalized, with ``k`` leading ones.
    """
    u = np.zeros((n, n - 1))
    for k in range(1, n):
        u[:k, k - 1] = 1.0
        u[k, k - 1] = -float(k)
        u[:, k - 1] /= np.sqrt(k * (k + 1))
    return u


@dataclass(frozen=True, eq=False)
class CoxeterGauge:
    """``k(x) = max_A <lam, A x>`` for a family of signed permutations."""

    lam: np.ndarray
    family: GroupFamily
    translation_invariant: bool = field(default=False, init=False)

    def __post_init__(self):
        lam = np.array(self.lam, dtype=float)
        lam.setflags(write=False)
        object.__setattr__(self, "lam", lam)
        if lam.shape != (self.family.n,):
            raise ValueError(f"lambda has length {len(lam)}, expected {self.family.n}")
        if not np.any(lam != 0):
            raise ValueError("lambda must be non-zero")

    @classmethod
    def from_spec(cls, family: str, lam) -> "CoxeterGauge":
        lam = np.asarray(lam, dtype=float)
        return cls(lam, GroupFamily(family, len(lam)))

    @property
    def n(self) -> int:
        return self.family.n

    @cached_property
    def orbit(self) -> np.ndarray:
        return groups.orbit(self.family, self.lam)

    @cached_property
    def _elements(self) -> tuple[list[GroupElement], np.ndarray]:
        # Row g holds inverse(g) @ lam, so <lam, g x> = rows[g] @ x.
        elems = sorted(groups.enumerate_group(self.family), key=GroupElement.sort_key)
        rows = np.array([groups.apply(groups.inverse(g), self.lam) for g in elems])
        return elems, rows

    def evaluate_k(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        return np.max(x @ self.orbit.T, axis=-1)

    def argmax_index(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        _, rows = self._elements
        vals = x @ rows.T
        best = vals.max(axis=-1, keepdims=True)
        slack = _TIE_TOL * np.maximum(1.0, np.abs(best))
        # first index (lexicographic element order) reaching the maximum
        return np.argmax(vals >= best - slack, axis=-1)

    def drift(self, x) -> np.ndarray:
        _, rows = self._elements
        return -rows[self.argmax_index(x)]

    def __repr__(self):
        return f"CoxeterGauge(family={self.family.family!r}, lam={self.lam.tolist()})"


@dataclass(frozen=True, eq=False)
class RankGauge:
    """Rank-based drifts: the ``i``-th lowest particle receives ``delta[i]``."""

    delta: np.ndarray
    translation_invariant: bool = field(default=True, init=False)

    def __post_init__(self):
        d = np.array(self.delta, dtype=float)
        if d.ndim != 1 or len(d) < 2:
            raise ValueError("delta must be a vector of length >= 2")
        d.setflags(write=False)
        object.__setattr__(self, "delta", d)

    @property
    def n(self) -> int:
        return len(self.delta)

    def evaluate_k(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        return -np.sort(x, axis=-1) @ self.delta

    def drift(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        order = np.argsort(x, axis=-1, kind="stable")
        out = np.empty_like(x)
        np.put_along_axis(out, order, np.broadcast_to(self.delta, x.shape), axis=-1)
        return out

    def __repr__(self):
        return f"RankGauge(delta={self.delta.tolist()})"


@dataclass(frozen=True, eq=False)
class GraphGauge:
    """``k(x) = sum_{i<j} beta_ij |x_i - x_j|`` for a connected weighted graph."""

    beta: np.ndarray
    translation_invariant: bool = field(default=True, init=False)

    def __post_init__(self):
        b = np.array(self.beta, dtype=float)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] < 2:
            raise ValueError("beta must be a square matrix of size >= 2")
        if not np.allclose(b, b.T, rtol=0, atol=0):
            raise ValueError("beta must be symmetric")
        if np.any(np.diag(b) != 0):
            raise ValueError("beta must have a zero diagonal")
        if np.any(b < 0):
            raise ValueError("beta must be nonnegative")
        if not _connected(b > 0):
            raise ValueError("the graph with edges beta_ij > 0 must be connected")
        b.setflags(write=False)
        object.__setattr__(self, "beta", b)

    @property
    def n(self) -> int:
        return self.beta.shape[0]

    def evaluate_k(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        diff = np.abs(x[..., :, None] - x[..., None, :])
        return 0.5 * np.sum(self.beta * diff, axis=(-2, -1))

    def drift(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        # sign(0) = 0: coincident particles exert no force on each other
        s = np.sign(x[..., None, :] - x[..., :, None])
        return np.sum(self.beta * s, axis=-1)

    def __repr__(self):
        return f"GraphGauge(beta={self.beta.tolist()})"


class MassGauge(GraphGauge):
    """Gravity model: ``beta_ij = m_i m_j`` for positive masses."""

    def __init__(self, masses):
        m = np.array(masses, dtype=float)
        if m.ndim != 1 or len(m) < 2 or np.any(m <= 0):
            raise ValueError("masses must be a vector of >= 2 positive numbers")
        beta = np.outer(m, m)
        np.fill_diagonal(beta, 0.0)
        super().__init__(beta)
        m.setflags(write=False)
        object.__setattr__(self, "masses", m)

    def __repr__(self):
        return f"MassGauge(masses={self.masses.tolist()})"


GaugeModel = Union[CoxeterGauge, RankGauge, GraphGauge, MassGauge]


@dataclass(frozen=True, eq=False)
class SplitGauge:
    """Irreducible modification ``k'(x) = k(Px) + max_j |<x, d_j>|``.

    ``P`` projects onto the centered hyperplane H and the ``d_j`` (columns of
    ``k2_basis``) are an orthogonal basis of its complement.  The law of
    ``P X`` under ``exp(-2 k')`` equals the invariant law of the projected
    diffusion driven by ``base``.
    """

    base: GaugeModel
    k2_basis: np.ndarray = None

    def __post_init__(self):
        if not self.base.translation_invariant:
            raise ValueError("SplitGauge needs a translation-invariant base model")
        if self.k2_basis is None:
            object.__setattr__(self, "k2_basis", np.ones((self.base.n, 1)))

    @property
    def n(self) -> int:
        return self.base.n

    translation_invariant = False

    def evaluate_k(self, x) -> np.ndarray:
        x = _as_points(x, self.n)
        y = split_project(self.base, x)
        return self.base.evaluate_k(y) + np.max(np.abs((x - y) @ self.k2_basis), axis=-1)


def _as_points(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise ValueError(f"dimension mismatch: model has n={n}, got vector of length {x.shape[-1]}")
    return x


def _connected(adj: np.ndarray) -> bool:
    n = adj.shape[0]
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(adj[i]):
            if j not in seen:
                seen.add(int(j))
                stack.append(int(j))
    return len(seen) == n


def evaluate_k(model, x):
    """Gauge value ``k(x)``; returns a float for a single vector."""
    out = model.evaluate_k(x)
    return float(out) if np.ndim(out) == 0 else out


def drift(model, x) -> np.ndarray:
    """Drift ``b(x) = -grad k(x)``."""
    return model.drift(x)


def argmax_element(model: CoxeterGauge, x) -> GroupElement:
    """Element ``A`` with ``<lam, A x> = k(x)``, so ``A x`` lies in the fundamental cone.

    Ties on cone boundaries go to the lexicographically smallest
    ``(perm, signs)``.
    """
    if not isinstance(model, CoxeterGauge):
        raise TypeError("argmax_element needs a CoxeterGauge")
    x = _as_points(x, model.n)
    if x.ndim != 1:
        raise ValueError("argmax_element takes a single vector")
    elems, _ = model._elements
    return elems[int(model.argmax_index(x))]


def rank_alphas(delta) -> np.ndarray:
    """``alpha_k = sum_{i<=k} (delta_i - mean(delta))`` for ``k = 1..n-1``.

    The rank model is recurrent iff every entry is positive.
    """
    d = np.asarray(delta, dtype=float)
    if len(d) < 2:
        raise ValueError("need at least two particles")
    return np.cumsum(d - d.mean())[:-1]


def split_project(model, x) -> np.ndarray:
    """Project onto the centered hyperplane (translation-invariant models only)."""
    if not getattr(model, "translation_invariant", False):
        raise ValueError(
            f"{type(model).__name__} is not translation invariant; projection onto H is not used"
        )
    x = _as_points(x, model.n)
    return x - x.mean(axis=-1, keepdims=True)


def sphere_mesh(dim: int, resolution: int) -> np.ndarray:
    """Deterministic points on the unit sphere of ``R**dim``.

    ``dim == 1`` gives ``{-1, +1}``; ``dim == 2`` gives ``resolution`` equally
    spaced angles starting at 0; higher dimensions use ``resolution**(dim-1)``
    points of a golden-ratio (Kronecker) lattice pushed through the Gaussian
    quantile function and normalized.  The ``2*dim`` signed axes are always
    included.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    axes = np.vstack([np.eye(dim), -np.eye(dim)])
    if dim == 1:
        return axes
    if dim == 2:
        t = 2 * np.pi * np.arange(resolution) / resolution
        pts = np.column_stack([np.cos(t), np.sin(t)])
    else:
        count = resolution ** (dim - 1)
        # generalized golden ratio: root of x**(d+1) = x + 1
        phi = 2.0
        for _ in range(64):
            phi = (1 + phi) ** (1.0 / (dim + 1))
        steps = (1.0 / phi) ** np.arange(1, dim + 1)
        u = (0.5 + np.outer(np.arange(1, count + 1), steps)) % 1.0
        pts = ndtri(u)
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return np.vstack([axes, pts])


_MAX_MESH_DIM = 6


def recurrence_constant(model, resolution: int = 64) -> float:
    """Mesh estimate of ``c1 = inf_{|y|=1} k(y)``, clipped below at 0.

    For translation-invariant models the infimum runs over unit vectors of
    the centered hyperplane.  The mesh value bounds the true infimum from
    above; a positive value indicates an irreducible gauge up to mesh error.
    """
    if resolution < 2:
        raise ValueError("resolution must be >= 2")
    if model.translation_invariant:
        basis = centered_basis(model.n)
    else:
        basis = np.eye(model.n)
    dim = basis.shape[1]
    if dim > _MAX_MESH_DIM:
        raise ValueError(f"mesh search limited to dimension {_MAX_MESH_DIM}, got {dim}")
    pts = sphere_mesh(dim, resolution) @ basis.T
    vals = np.concatenate([model.evaluate_k(chunk) for chunk in np.array_split(pts, max(1, len(pts) // 20000))])
    return max(0.0, float(vals.min()))
