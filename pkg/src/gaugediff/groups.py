"""Finite reflection groups of type A, B and D as signed permutations.

An element ``g`` acts on a vector by ``g(x)[i] = signs[i] * x[perm[i]]``.
Indices are 0-based throughout.  The three families are

* ``A`` -- all permutations of ``n`` coordinates (``n!`` elements); this is
  the Coxeter group A_{n-1}, irreducible only on the hyperplane of centered
  vectors,
* ``B`` -- all signed permutations (``2**n * n!`` elements),
* ``D`` -- signed permutations with an even number of sign flips
  (``2**(n-1) * n!`` elements).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import EnumerationLimitError

__all__ = [
    "ENUMERATION_LIMIT",
    "FAMILIES",
    "GroupElement",
    "GroupFamily",
    "apply",
    "compose",
    "inverse",
    "identity",
    "enumerate_group",
    "orbit",
    "stabilizer_is_trivial",
    "reflections",
]

#: Largest group order that will be enumerated exhaustively.
ENUMERATION_LIMIT = 10**7

FAMILIES = ("A", "B", "D")


@dataclass(frozen=True)
class GroupElement:
    """A signed permutation.

    Parameters
    ----------
    perm : tuple of int
        A permutation of ``range(n)``.
    signs : tuple of int
        Entries in ``{+1, -1}``.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        signs = tuple(int(s) for s in self.signs)
        if len(perm) != len(signs):
            raise ValueError("perm and signs must have the same length")
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"perm {perm} is not a permutation of 0..{len(perm) - 1}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError(f"signs must be +1/-1, got {signs}")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "signs", signs)

    @property
    def n(self) -> int:
        return len(self.perm)

    def matrix(self) -> np.ndarray:
        """Dense orthogonal matrix ``M`` with ``M @ x == apply(self, x)``."""
        m = np.zeros((self.n, self.n))
        m[np.arange(self.n), self.perm] = self.signs
        return m

    def encode(self) -> str:
        """One-line text encoding, e.g. ``"2,-1,3"`` (1-based, signed)."""
        return ",".join(str(s * (p + 1)) for p, s in zip(self.perm, self.signs))

    @classmethod
    def decode(cls, text: str) -> "GroupElement":
        vals = [int(v) for v in text.split(",")]
        return cls(tuple(abs(v) - 1 for v in vals), tuple(1 if v > 0 else -1 for v in vals))

    def sort_key(self):
        return (self.perm, self.signs)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)


@dataclass(frozen=True)
class GroupFamily:
    """One of the families ``A``, ``B``, ``D`` acting on ``R**n``."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.family == "D" and self.n < 2:
            raise ValueError("family D needs n >= 2")

    @property
    def order(self) -> int:
        f = math.factorial(self.n)
        if self.family == "A":
            return f
        if self.family == "B":
            return 2**self.n * f
        return 2 ** (self.n - 1) * f

    def contains(self, g: GroupElement) -> bool:
        if g.n != self.n:
            return False
        neg = sum(1 for s in g.signs if s < 0)
        if self.family == "A":
            return neg == 0
        if self.family == "D":
            return neg % 2 == 0
        return True

    def __str__(self):
        return f"{self.family}(n={self.n})"


def identity(n: int) -> GroupElement:
    return GroupElement(tuple(range(n)), (1,) * n)


def apply(g: GroupElement, x) -> np.ndarray:
    """Act with ``g`` on ``x``; ``x`` may carry leading batch axes."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != g.n:
        raise ValueError(f"dimension mismatch: element acts on R^{g.n}, got vector of length {x.shape[-1]}")
    return np.asarray(g.signs, dtype=float) * x[..., list(g.perm)]


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """The element ``g o h``, i.e. ``apply(compose(g, h), x) == apply(g, apply(h, x))``."""
    if g.n != h.n:
        raise ValueError("cannot compose elements of different degree")
    perm = tuple(h.perm[p] for p in g.perm)
    signs = tuple(sg * h.signs[p] for sg, p in zip(g.signs, g.perm))
    return GroupElement(perm, signs)


def inverse(g: GroupElement) -> GroupElement:
    inv = [0] * g.n
    for i, p in enumerate(g.perm):
        inv[p] = i
    return GroupElement(tuple(inv), tuple(g.signs[q] for q in inv))


def enumerate_group(fam: GroupFamily) -> Iterator[GroupElement]:
    """Yield every element of ``fam`` exactly once, in a fixed order.

    Raises
    ------
    EnumerationLimitError
        If the group order exceeds :data:`ENUMERATION_LIMIT`.
    """
    if fam.order > ENUMERATION_LIMIT:
        raise EnumerationLimitError(
            f"{fam} has order {fam.order} > {ENUMERATION_LIMIT}; refusing exhaustive enumeration"
        )
    n = fam.n
    if fam.family == "A":
        sign_choices = [(1,) * n]
    else:
        sign_choices = [
            s for s in itertools.product((1, -1), repeat=n)
            if fam.family == "B" or s.count(-1) % 2 == 0
        ]
    for perm in itertools.permutations(range(n)):
        for signs in sign_choices:
            yield GroupElement(perm, signs)


def _check_nonzero(lam: np.ndarray) -> None:
    if not np.any(lam != 0):
        raise ValueError("lambda must be non-zero")


def orbit(fam: GroupFamily, lam: Sequence[float]) -> np.ndarray:
    """Distinct vectors ``{A lam : A in G}`` as rows, in enumeration order.

    Signed permutations only move and negate entries, so images are exact in
    floating point and duplicates are removed by exact comparison.
    """
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (fam.n,):
        raise ValueError(f"lambda must have length {fam.n}")
    _check_nonzero(lam)
    seen = {}
    for g in enumerate_group(fam):
        v = apply(g, lam)
        key = tuple(v + 0.0)  # folds -0.0 into 0.0
        if key not in seen:
            seen[key] = v
    return np.array(list(seen.values()))


def stabilizer_is_trivial(fam: GroupFamily, lam: Sequence[float]) -> bool:
    """True iff only the identity fixes ``lam``."""
    return len(orbit(fam, lam)) == fam.order


def reflections(fam: GroupFamily) -> Iterator[tuple[GroupElement, np.ndarray]]:
    """Yield ``(element, root)`` for every reflection in ``fam``.

    Roots are ``e_i - e_j`` (all families), ``e_i + e_j`` (B and D) and
    ``e_i`` (B only); each reflection is reported once with one of its two
    roots.
    """
    n = fam.n
    for i, j in itertools.combinations(range(n), 2):
        perm = list(range(n))
        perm[i], perm[j] = j, i
        root = np.zeros(n)
        root[i], root[j] = 1.0, -1.0
        yield GroupElement(tuple(perm), (1,) * n), root
        if fam.family in ("B", "D"):
            signs = [1] * n
            signs[i] = signs[j] = -1
            root = np.zeros(n)
            root[i] = root[j] = 1.0
            yield GroupElement(tuple(perm), tuple(signs)), root
    if fam.family == "B":
        for i in range(n):
            signs = [1] * n
            signs[i] = -1
            root = np.zeros(n)
            root[i] = 1.0
            yield GroupElement(tuple(range(n)), tuple(signs)), root
