"""The orthogonal eigenbasis of the Johnson graph indexed by top sets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

import numpy as np

from .combinatorics import (
    NotATopSet,
    SliceDomain,
    check_top_set,
    enumerate_top_sets,
    is_top_set,
    set_label,
)
from .operators import SliceVector, apply_up, apply_up_chain


@lru_cache(maxsize=None)
def _chi_values(n: int, S: tuple[int, ...]) -> np.ndarray:
    size = len(S)
    if size == 0:
        out = np.ones(1)
    elif n not in S:
        top = _chi_values(n - 1, S)
        out = np.concatenate([top, np.zeros(math.comb(n - 1, size - 1))])
    else:
        rest = S[:-1]
        below = _chi_values(n - 1, rest)
        lifted = apply_up(SliceVector(SliceDomain(n - 1, size - 1), below)).values
        out = np.concatenate([-lifted / (n - 2 * size + 1), below])
    out.setflags(write=False)
    return out


def chi(n: int, S: Iterable[int]) -> SliceVector:
    """The level-|S| vector killed by apply_down, built by splitting on coordinate n.

    Strings with x_n = 0 form the first colex block and x_n = 1 the second,
    so each step of the recursion is a concatenation of two blocks.
    """
    s = tuple(sorted(S))
    if s and s[-1] > n:
        raise ValueError(f"{set_label(s)} is not a subset of [{n}]")
    if not is_top_set(s, n, len(s)):
        raise NotATopSet(f"{set_label(s)} is not a top set (needs s_j >= 2j)")
    SliceDomain(n, len(s)).check_size()
    return SliceVector(SliceDomain(n, len(s)), _chi_values(n, s))


def chi_norm_sq(S: Iterable[int]) -> float:
    """Squared norm of chi(n, S); the product does not involve n."""
    s = check_top_set(S)
    return float(_chi_norm_sq_exact(s))


def _chi_norm_sq_exact(s: tuple[int, ...]) -> Fraction:
    out = Fraction(1)
    for i, si in enumerate(s, start=1):
        out *= Fraction(si - 2 * i + 2, si - 2 * i + 1)
    return out


def lift_norm_factor(n: int, i: int, k: int) -> int:
    """||P_up chain v||^2 / ||v||^2 for a level-i null vector lifted to level k."""
    if k < i:
        raise ValueError(f"level {k} below starting level {i}")
    if k > n - i:
        return 0
    return math.factorial(n - 2 * i) * math.factorial(k - i) // math.factorial(n - k - i)


def basis_norm_sq(n: int, k: int, S: Iterable[int]) -> float:
    s = check_top_set(S)
    return float(lift_norm_factor(n, len(s), k) * _chi_norm_sq_exact(s))


def eigenvalue(n: int, k: int, size: int) -> int:
    """Adjacency eigenvalue shared by every basis vector with |S| = size."""
    return (n - k - size) * (k - size + 1) - (n - k)


@dataclass(frozen=True, eq=False)
class BasisVector:
    index: tuple[int, ...]
    level: int
    vector: SliceVector = field(repr=False)
    norm_sq_closed: float

    @property
    def eigenvalue(self) -> int:
        return eigenvalue(self.vector.n, self.level, len(self.index))

    def normalized(self) -> np.ndarray:
        return self.vector.values / math.sqrt(self.norm_sq_closed)


def basis_vector(domain: SliceDomain, S: Iterable[int]) -> BasisVector:
    n, k = domain.n, domain.k
    s = tuple(sorted(S))
    if len(s) > domain.index_level:
        raise ValueError(
            f"|S| = {len(s)} exceeds min(k, n-k) = {domain.index_level} for slice {domain}"
        )
    domain.check_size()
    vec = apply_up_chain(chi(n, s), k)
    return BasisVector(s, k, vec, basis_norm_sq(n, k, s))


def orthonormal_basis(domain: SliceDomain) -> list[BasisVector]:
    domain.check_size()
    return [basis_vector(domain, S) for S in enumerate_top_sets(domain.n, domain.index_level)]


@lru_cache(maxsize=64)
def basis_matrix(n: int, k: int) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    """Top sets in enumeration order and the matrix whose rows are the normalised basis."""
    domain = SliceDomain(n, k)
    domain.check_size()
    sets = enumerate_top_sets(n, domain.index_level)
    rows = np.empty((len(sets), domain.cardinality()))
    for r, S in enumerate(sets):
        rows[r] = basis_vector(domain, S).normalized()
    rows.setflags(write=False)
    return sets, rows


@lru_cache(maxsize=64)
def index_positions(n: int, k: int) -> dict[tuple[int, ...], int]:
    sets = enumerate_top_sets(n, min(k, n - k))
    return {S: r for r, S in enumerate(sets)}
