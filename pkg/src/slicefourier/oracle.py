"""Dense and exhaustive reference computations for testing.

Nothing here uses the rank tables or neighbour tables of the main path: slice
elements are enumerated with itertools and sorted by a colex key, and
matrices are filled entry by entry from their definitions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable

import numpy as np

from .basis import chi
from .combinatorics import SliceDomain, is_top_set
from .operators import SliceVector


@dataclass(frozen=True, eq=False)
class DenseOperator:
    rows: int
    cols: int
    entries: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(self.rows, other.cols, self.entries @ other.entries)
        return self.entries @ np.asarray(other)

    @property
    def T(self) -> DenseOperator:
        return DenseOperator(self.cols, self.rows, self.entries.T)


def slice_elements(n: int, k: int) -> list[frozenset[int]]:
    """Weight-k subsets of [n] in colex order, by plain enumeration and sort."""
    subsets = combinations(range(1, n + 1), k)
    return [frozenset(c) for c in sorted(subsets, key=lambda c: tuple(reversed(c)))]


def _guarded(n: int, k: int) -> None:
    if 0 <= k <= n:
        SliceDomain(n, k).check_size()


def dense_up_matrix(n: int, k: int) -> DenseOperator:
    """0/1 matrix from level k to level k+1: entry (x, y) is 1 iff y is inside x."""
    _guarded(n, k)
    _guarded(n, k + 1)
    lower, upper = slice_elements(n, k), slice_elements(n, k + 1)
    m = np.zeros((len(upper), len(lower)))
    for r, x in enumerate(upper):
        for c, y in enumerate(lower):
            if y <= x:
                m[r, c] = 1.0
    return DenseOperator(len(upper), len(lower), m)


def dense_down_matrix(n: int, k: int) -> DenseOperator:
    """Level k to level k-1, the transpose of the up matrix from k-1."""
    return dense_up_matrix(n, k - 1).T


def dense_adjacency(n: int, k: int) -> DenseOperator:
    _guarded(n, k)
    elems = slice_elements(n, k)
    m = np.zeros((len(elems), len(elems)))
    for r, x in enumerate(elems):
        for c, y in enumerate(elems):
            if len(x ^ y) == 2:
                m[r, c] = 1.0
    return DenseOperator(len(elems), len(elems), m)


def dense_spectrum(n: int, k: int, decimals: int = 6) -> dict[float, int]:
    """Eigenvalue multiset of the Johnson adjacency, rounded to ``decimals``."""
    vals = np.linalg.eigvalsh(dense_adjacency(n, k).entries)
    out: dict[float, int] = {}
    for v in np.round(vals, decimals):
        key = float(v) + 0.0  # fold -0.0 into 0.0
        out[key] = out.get(key, 0) + 1
    return dict(sorted(out.items(), reverse=True))


def dense_basis_vector(n: int, k: int, S: Iterable[int]) -> np.ndarray:
    """chi(n, S) lifted to level k with dense up matrices."""
    v = chi(n, S).values
    for level in range(len(tuple(S)), k):
        v = dense_up_matrix(n, level) @ v
    return v


def _restrict_dense(values: np.ndarray, n: int, k: int, z: tuple[int, ...]):
    """Restriction by lookup: position of x o z in the full colex list."""
    i = n - len(z)
    kr = k - sum(z)
    if not 0 <= kr <= i:
        return None
    full = {x: r for r, x in enumerate(slice_elements(n, k))}
    tail = frozenset(i + 1 + j for j, b in enumerate(z) if b)
    return np.array([values[full[x | tail]] for x in slice_elements(i, kr)])


def exhaustive_estimator_mean(f: SliceVector, U: Iterable[int], i: int) -> float:
    """Exact expectation of the two-stage sampled bucket estimator.

    Sums over every suffix z with probability C(i, k-|z|)/C(n,k) and every pair
    (y1, y2) with probability |v_y1| |v_y2| / ||v||_1^2.
    """
    U = tuple(sorted(U))
    n, k = f.n, f.k
    if n > 10:
        raise ValueError("exhaustive estimator enumeration is limited to n <= 10")
    total_count = math.comb(n, k)
    mean = 0.0
    for z in product((0, 1), repeat=n - i):
        kr = k - sum(z)
        fz = _restrict_dense(f.values, n, k, z)
        if fz is None:
            continue
        p_z = math.comb(i, kr) / total_count
        if not is_top_set(U, i, min(kr, i - kr)):
            continue
        v = dense_basis_vector(i, kr, U)
        l1 = np.abs(v).sum()
        l2sq = float(v @ v)
        if l1 == 0:
            continue
        p = np.abs(v) / l1
        signed = p * np.sign(v) * fz
        # all (y1, y2) pairs, not the factored square
        pair_sum = float(np.sum(np.outer(signed, signed)))
        mean += p_z * (l1 * l1 / l2sq) * pair_sum / math.comb(i, kr)
    return mean
