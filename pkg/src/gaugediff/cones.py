"""Conic geometry of piecewise-linear gauges.

The unit ball ``{k <= 1}`` of a Coxeter or graph gauge is a simplicial
polytope.  Each of its cones ``C_i`` carries an invertible transform ``B_i``
onto the nonnegative orthant and coefficients ``alpha(i)`` with
``k(x) = sum_j alpha_j(i) (B_i x)_j`` on ``C_i``.  The piece
``{k <= 1} & C_i`` is then the simplex with vertices ``B_i^{-1} e_j / alpha_j(i)``.

Translation-invariant models (family A, graph gauges) live on the centered
hyperplane H; their decompositions are expressed in the orthonormal basis
returned by :func:`gaugediff.gauge.centered_basis`, so transforms are square
of size ``n - 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import groups
from .errors import EnumerationLimitError, GaugeDiffError, StabilizerError
from .gauge import centered_basis
from .groups import GroupElement, GroupFamily
from .streams import exponential

__all__ = [
    "ConeBasis",
    "Cone",
    "SimplicialDecomposition",
    "DegenerateConeError",
    "extreme_rays",
    "cone_residual",
    "expand_in_generators",
    "fundamental_cone_contains",
    "cone_basis",
    "build_decomposition",
    "build_graph_decomposition",
    "triangulation_probabilities",
    "sample_uniform_polytope",
    "sample_gibbs_k",
]

FEASIBILITY_TOL = 1e-9
BOUNDARY_TOL = 1e-10
_MAX_RAY_DIM = 8
_MAX_GRAPH_N = 9


class DegenerateConeError(GaugeDiffError):
    """A cone or simplex is degenerate (singular system, nonpositive coefficient, zero volume)."""


def extreme_rays(vectors) -> np.ndarray:
    """Minimal generating set (unit-norm rows) of the cone spanned by ``vectors``.

    Candidates are eliminated one at a time: a normalized candidate is
    dropped when a nonnegative combination of the candidates still kept
    reproduces it to within ``FEASIBILITY_TOL`` (L1 residual, see
    :func:`cone_residual`).  Removing a redundant
    generator leaves the cone unchanged, so the survivors span the same cone
    even when the input contains near-parallel copies.  Zero vectors are
    ignored.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    if v.size == 0:
        raise ValueError("no input vectors")
    d = v.shape[1]
    if d > _MAX_RAY_DIM:
        raise ValueError(f"extreme ray search limited to dimension {_MAX_RAY_DIM}, got {d}")
    norms = np.linalg.norm(v, axis=1)
    v = v[norms > 1e-14] / norms[norms > 1e-14, None]
    if len(v) == 0:
        raise ValueError("all input vectors are zero")
    if np.linalg.matrix_rank(v, tol=1e-9) < d:
        raise ValueError("input vectors do not span the ambient space")

    unique: list[np.ndarray] = []
    for row in v:
        if not any(np.max(np.abs(row - u)) < FEASIBILITY_TOL for u in unique):
            unique.append(row)
    cand = np.array(unique)

    alive = np.ones(len(cand), dtype=bool)
    for i in range(len(cand)):
        alive[i] = False
        others = cand[alive]
        if len(others) == 0:
            alive[i] = True
            continue
        if cone_residual(others, cand[i]) > FEASIBILITY_TOL:
            alive[i] = True
    return cand[alive]


def cone_residual(generators, target) -> float:
    """``min ||G^T a - target||_1`` over ``a >= 0``, solved as a linear program.

    The residual is recomputed from the returned coefficients, so a solver
    that stops early can only overstate it.
    """
    g = np.atleast_2d(np.asarray(generators, dtype=float))
    t = np.asarray(target, dtype=float)
    m, d = g.shape
    # variables: a (m), s_plus (d), s_minus (d)
    cost = np.concatenate([np.zeros(m), np.ones(2 * d)])
    a_eq = np.hstack([g.T, np.eye(d), -np.eye(d)])
    res = linprog(cost, A_eq=a_eq, b_eq=t, bounds=(0, None), method="highs")
    if res.status != 0:
        raise DegenerateConeError(f"cone residual LP failed: {res.message}")
    a = np.maximum(res.x[:m], 0.0)
    return float(np.abs(g.T @ a - t).sum())


def expand_in_generators(lam, generators) -> np.ndarray:
    """Coefficients ``a`` with ``lam = sum_i a_i generators[i]``; all must be positive."""
    g = np.atleast_2d(np.asarray(generators, dtype=float))
    lam = np.asarray(lam, dtype=float)
    if g.shape[0] != g.shape[1] or g.shape[1] != lam.shape[0]:
        raise DegenerateConeError(
            f"need a square system: {g.shape[0]} generators in dimension {g.shape[1]}, "
            f"vector of length {lam.shape[0]}"
        )
    if abs(np.linalg.det(g)) < 1e-12 * max(1.0, np.abs(g).max()) ** g.shape[0]:
        raise DegenerateConeError("generators are linearly dependent")
    coef = np.linalg.solve(g.T, lam)
    scale = np.abs(coef).max()
    if np.any(coef <= 1e-12 * scale):
        raise DegenerateConeError(
            f"nonpositive coefficient in {coef.tolist()}: lambda lies on the boundary of the "
            "generator cone (non-trivial stabilizer or wrong generators)"
        )
    return coef


def fundamental_cone_contains(lam, fam: GroupFamily, x, tol: float = BOUNDARY_TOL) -> bool:
    """True iff ``<lam, x> >= <A lam, x>`` for all ``A`` (closed cone, absolute tolerance)."""
    orb = groups.orbit(fam, lam)
    x = np.asarray(x, dtype=float)
    return bool(np.dot(lam, x) >= np.max(orb @ x) - tol)


@dataclass(frozen=True)
class ConeBasis:
    """Inequality normals of the fundamental cone and the expansion of ``lam``.

    ``generators`` holds the normals as ambient rows, scaled so that the
    smallest nonzero absolute entry is 1 (``e_1``, ``e_{i+1} - e_i``,
    ``e_1 + e_2``, ...).  ``basis`` maps intrinsic coordinates to ambient
    ones (identity for B and D, the centered basis for A).
    """

    lam: np.ndarray
    family: GroupFamily
    generators: np.ndarray
    coefficients: np.ndarray
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def intrinsic_transform(self) -> np.ndarray:
        return self.generators @ self.basis


def _canonical_scale(v: np.ndarray) -> np.ndarray:
    nz = np.abs(v[np.abs(v) > 1e-9])
    out = v / nz.min()
    # snap to the nearest integers when the ray is integral up to rounding
    r = np.round(out)
    return np.where(np.abs(out - r) < 1e-9, r, out) + 0.0


def _generator_key(v: np.ndarray):
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    return (nz[-1], -np.sign(v[nz[0]]), tuple(-v))


def cone_basis(lam, fam: GroupFamily) -> ConeBasis:
    """Generators of the conic hull of ``{lam - A lam}`` and the positive coefficients of ``lam``.

    For family A the vector is centered first; the geometry is that of the
    gauge restricted to the centered hyperplane.
    """
    lam = np.asarray(lam, dtype=float)
    if fam.family == "A":
        if fam.n < 2:
            raise ValueError("family A needs n >= 2 on the centered hyperplane")
        lam = lam - lam.mean()
        basis = centered_basis(fam.n)
    else:
        basis = np.eye(fam.n)
    if not np.any(np.abs(lam) > 1e-14):
        raise ValueError("lambda must be non-zero (after centering for family A)")
    if not groups.stabilizer_is_trivial(fam, lam):
        raise StabilizerError(
            f"lambda={lam.tolist()} has a non-trivial stabilizer in {fam}; "
            "perturb it to a generic vector to obtain a simplicial decomposition"
        )
    diffs = lam - groups.orbit(fam, lam)
    rays = extreme_rays(diffs @ basis) @ basis.T
    rays = np.array(sorted((_canonical_scale(r) for r in rays), key=_generator_key))
    if len(rays) != basis.shape[1]:
        raise DegenerateConeError(f"expected {basis.shape[1]} generators, found {len(rays)}")
    coef = expand_in_generators(lam @ basis, rays @ basis)
    return ConeBasis(lam, fam, rays, coef, basis)


@dataclass(frozen=True)
class Cone:
    """One simplicial cone: ``z = transform @ y`` maps it onto the orthant (``y`` intrinsic)."""

    label: str
    transform: np.ndarray
    alphas: np.ndarray

    @property
    def volume(self) -> float:
        """Volume of ``{k <= 1} & C``, i.e. ``|det(B^-1 diag(1/alpha))| / d!``."""
        d = len(self.alphas)
        det = abs(np.linalg.det(self.transform)) * float(np.prod(self.alphas))
        if det == 0 or not np.isfinite(det):
            raise DegenerateConeError(f"cone {self.label} has a degenerate simplex")
        return 1.0 / (det * math.factorial(d))


@dataclass(frozen=True)
class SimplicialDecomposition:
    """Cones covering the space plus the map from intrinsic to ambient coordinates."""

    cones: tuple[Cone, ...]
    basis: np.ndarray
    elements: tuple[GroupElement, ...] | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def volumes(self) -> np.ndarray:
        return np.array([c.volume for c in self.cones])

    @property
    def total_volume(self) -> float:
        return float(self.volumes.sum())

    def to_intrinsic(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.basis

    def coordinates(self, x) -> np.ndarray:
        """``B_i y`` for every cone ``i``; shape ``(..., K, d)``."""
        y = self.to_intrinsic(x)
        mats = np.array([c.transform for c in self.cones])
        return np.einsum("kij,...j->...ki", mats, y)

    def locate(self, x, tol: float = BOUNDARY_TOL) -> np.ndarray:
        """Index of the first cone whose coordinates are all ``>= -tol``; ``-1`` if none."""
        z = self.coordinates(x)
        inside = np.all(z >= -tol, axis=-1)
        return np.where(inside.any(axis=-1), np.argmax(inside, axis=-1), -1)

    def gauge(self, x) -> np.ndarray:
        """``k(x)`` recovered from the decomposition: ``sum_j alpha_j (B_i y)_j`` in the cone of ``x``."""
        z = self.coordinates(x)
        alphas = np.array([c.alphas for c in self.cones])
        return np.max(np.sum(alphas * z, axis=-1), axis=-1)

    def rows(self) -> list[dict]:
        """Export table: one row per cone."""
        out = []
        for i, c in enumerate(self.cones):
            out.append(
                {
                    "cone_id": i,
                    "group_element_encoding": c.label,
                    "transform": ";".join(",".join(repr(float(v)) for v in row) for row in c.transform),
                    "alpha": ",".join(repr(float(a)) for a in c.alphas),
                    "volume": c.volume,
                }
            )
        return out


def build_decomposition(lam, fam: GroupFamily) -> SimplicialDecomposition:
    """One cone ``{x : A x in C}`` per group element ``A`` (lexicographic order).

    The cone index of ``x`` equals the position of
    ``gauge.argmax_element(x)`` in the sorted element list.

    Raises
    ------
    StabilizerError
        If ``lam`` has a non-trivial stabilizer.
    """
    cb = cone_basis(lam, fam)
    elems = sorted(groups.enumerate_group(fam), key=GroupElement.sort_key)
    cones = []
    for g in elems:
        transform = cb.generators @ g.matrix() @ cb.basis
        cones.append(Cone(g.encode(), transform, cb.coefficients.copy()))
    return SimplicialDecomposition(tuple(cones), cb.basis, tuple(elems))


def build_graph_decomposition(beta) -> SimplicialDecomposition:
    """Ordering cones of a graph gauge on the centered hyperplane.

    For the ordering ``pi`` (lowest particle first) the coordinates are the
    spacings ``x[pi[i+1]] - x[pi[i]]`` and the coefficient of spacing ``i`` is
    the total weight of edges crossing it.
    """
    beta = np.asarray(beta, dtype=float)
    n = beta.shape[0]
    if n > _MAX_GRAPH_N:
        raise EnumerationLimitError(f"n={n} exceeds the ordering enumeration guard n <= {_MAX_GRAPH_N}")
    basis = centered_basis(n)
    cones = []
    for pi in itertools.permutations(range(n)):
        gens = np.zeros((n - 1, n))
        alphas = np.empty(n - 1)
        for i in range(n - 1):
            gens[i, pi[i + 1]] = 1.0
            gens[i, pi[i]] = -1.0
            low, high = list(pi[: i + 1]), list(pi[i + 1:])
            alphas[i] = beta[np.ix_(low, high)].sum()
        label = ",".join(str(p + 1) for p in pi)
        cones.append(Cone(label, gens @ basis, alphas))
    return SimplicialDecomposition(tuple(cones), basis)


def triangulation_probabilities(dec: SimplicialDecomposition) -> np.ndarray:
    """``P(I = i) = vol(S_i) / sum_j vol(S_j)``."""
    vols = dec.volumes
    return vols / vols.sum()


def _map_back(dec: SimplicialDecomposition, idx: np.ndarray, z: np.ndarray) -> np.ndarray:
    inv = np.array([np.linalg.inv(c.transform) for c in dec.cones])
    y = np.einsum("kij,kj->ki", inv[idx], z)
    return y @ dec.basis.T


def sample_uniform_polytope(dec: SimplicialDecomposition, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Uniform points of ``{k <= 1}``, shape ``(size, n)``.

    A simplex is chosen with the triangulation probabilities and a uniform
    point of the unit simplex is pushed through its affine map.
    """
    d = dec.dim
    probs = triangulation_probabilities(dec)
    idx = rng.choice(len(probs), size=size, p=probs)
    e = exponential(rng, (size, d + 1))
    w = e[:, :d] / e.sum(axis=1, keepdims=True)
    alphas = np.array([c.alphas for c in dec.cones])[idx]
    return _map_back(dec, idx, w / alphas)


def sample_gibbs_k(dec: SimplicialDecomposition, rate: float, rng: np.random.Generator, size: int = 1) -> np.ndarray:
    """Draws from the density proportional to ``exp(-rate * k(x))``, shape ``(size, n)``.

    ``k(X) ~ Gamma(d, rate)`` independently of ``X / k(X)``, whose law is the
    cone measure (simplex chosen by volume, uniform point on its outer face).
    """
    if rate <= 0:
        raise ValueError("rate must be positive")
    d = dec.dim
    probs = triangulation_probabilities(dec)
    idx = rng.choice(len(probs), size=size, p=probs)
    e = exponential(rng, (size, d))
    w = e / e.sum(axis=1, keepdims=True)
    r = rng.gamma(d, 1.0 / rate, size=size)
    alphas = np.array([c.alphas for c in dec.cones])[idx]
    return _map_back(dec, idx, r[:, None] * w / alphas)


def brute_force_extreme(vectors) -> np.ndarray:
    """Exhaustive extreme-ray oracle for small inputs.

    A normalized vector is redundant when it lies in the cone of some
    linearly independent subset (size <= d) of the other vectors
    (Caratheodory); every subset is tried.  Intended for tests with d <= 3.
    """
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    norms = np.linalg.norm(v, axis=1)
    v = v[norms > 1e-14] / norms[norms > 1e-14, None]
    uniq: list[np.ndarray] = []
    for row in v:
        if not any(np.max(np.abs(row - u)) < FEASIBILITY_TOL for u in uniq):
            uniq.append(row)
    v = np.array(uniq)
    d = v.shape[1]
    keep = []
    for i, target in enumerate(v):
        others = [j for j in range(len(v)) if j != i]
        redundant = False
        for size in range(1, d + 1):
            for sub in itertools.combinations(others, size):
                m = v[list(sub)].T
                if np.linalg.matrix_rank(m, tol=1e-10) < size:
                    continue
                coef, *_ = np.linalg.lstsq(m, target, rcond=None)
                if np.all(coef >= -1e-10) and np.linalg.norm(m @ coef - target) < 1e-9:
                    redundant = True
                    break
            if redundant:
                break
        if not redundant:
            keep.append(i)
    return v[keep]
