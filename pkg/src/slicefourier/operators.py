"""Up, down and Johnson-adjacency operators acting on dense slice vectors.

No matrix is ever formed: each operator is a gather or scatter over a cached
table of neighbour ranks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .combinatorics import SliceDomain, binomial, binomial_table, colex_positions


@dataclass(frozen=True, eq=False)
class SliceVector:
    """A real function on a slice, stored in colex order."""

    domain: SliceDomain
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] != self.domain.cardinality():
            raise ValueError(
                f"slice {self.domain} needs {self.domain.cardinality()} values, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("slice vector entries must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, n: int, k: int) -> SliceVector:
        return cls(SliceDomain(n, k), np.zeros(binomial(n, k)))

    @classmethod
    def constant(cls, n: int, k: int, c: float = 1.0) -> SliceVector:
        return cls(SliceDomain(n, k), np.full(binomial(n, k), float(c)))

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def k(self) -> int:
        return self.domain.k

    def __len__(self):
        return self.values.shape[0]

    def norm(self, p: int = 2) -> float:
        return float(np.linalg.norm(self.values, ord=p))

    def dot(self, other: SliceVector) -> float:
        if other.domain != self.domain:
            raise ValueError(f"domains differ: {self.domain} vs {other.domain}")
        return float(self.values @ other.values)

    def scaled(self, c: float) -> SliceVector:
        return SliceVector(self.domain, c * self.values)

    def __add__(self, other: SliceVector) -> SliceVector:
        if other.domain != self.domain:
            raise ValueError(f"domains differ: {self.domain} vs {other.domain}")
        return SliceVector(self.domain, self.values + other.values)

    def __sub__(self, other: SliceVector) -> SliceVector:
        return self + other.scaled(-1.0)


def _rank_positions(pos: np.ndarray, n: int) -> np.ndarray:
    # pos rows are sorted 0-based positions; colex rank = sum C(p_j, j), j 1-based
    m = pos.shape[1]
    if m == 0:
        return np.zeros(pos.shape[0], dtype=np.int64)
    table = binomial_table(n)
    return table[pos, np.arange(1, m + 1)].sum(axis=1)


@lru_cache(maxsize=None)
def subset_table(n: int, k: int) -> np.ndarray:
    """Row x lists the level-(k-1) ranks of the k sets obtained by dropping one element of x."""
    SliceDomain(n, k).check_size()
    pos = colex_positions(n, k)
    cols = [_rank_positions(np.delete(pos, a, axis=1), n) for a in range(k)]
    table = np.stack(cols, axis=1) if cols else np.zeros((pos.shape[0], 0), dtype=np.int64)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def neighbour_table(n: int, k: int) -> np.ndarray:
    """Row x lists the ranks of the k(n-k) strings at Hamming distance 2 from x."""
    SliceDomain(n, k).check_size()
    pos = colex_positions(n, k)
    mask = np.ones((pos.shape[0], n), dtype=bool)
    if k:
        np.put_along_axis(mask, pos, False, axis=1)
    zeros = np.nonzero(mask)[1].reshape(pos.shape[0], n - k)
    cols = []
    for a in range(k):
        for b in range(n - k):
            swapped = pos.copy()
            swapped[:, a] = zeros[:, b]
            swapped.sort(axis=1)
            cols.append(_rank_positions(swapped, n))
    table = np.stack(cols, axis=1) if cols else np.zeros((pos.shape[0], 0), dtype=np.int64)
    table.setflags(write=False)
    return table


def apply_up(v: SliceVector) -> SliceVector:
    """Sum v over the k-subsets of each (k+1)-set."""
    n, k = v.n, v.k
    if k >= n:
        raise ValueError(f"no level above k={k} in dimension n={n}")
    table = subset_table(n, k + 1)
    return SliceVector(SliceDomain(n, k + 1), v.values[table].sum(axis=1))


def apply_down(v: SliceVector) -> SliceVector:
    """Sum v over the k-supersets of each (k-1)-set; the adjoint of apply_up."""
    n, k = v.n, v.k
    if k <= 0:
        raise ValueError("no level below k=0")
    table = subset_table(n, k)
    out = np.bincount(
        table.ravel(), weights=np.repeat(v.values, k), minlength=binomial(n, k - 1)
    )
    return SliceVector(SliceDomain(n, k - 1), out)


def apply_up_chain(v: SliceVector, k: int) -> SliceVector:
    if k < v.k:
        raise ValueError(f"cannot lift from level {v.k} down to {k}")
    if k > v.n:
        raise ValueError(f"target level {k} exceeds n={v.n}")
    while v.k < k:
        v = apply_up(v)
    return v


def apply_down_chain(v: SliceVector, i: int) -> SliceVector:
    if i > v.k:
        raise ValueError(f"cannot push from level {v.k} up to {i}")
    if i < 0:
        raise ValueError(f"target level {i} is negative")
    while v.k > i:
        v = apply_down(v)
    return v


def down_then_up(v: SliceVector) -> SliceVector:
    """P-vee: apply_down followed by apply_up (zero operator on level 0)."""
    if v.k == 0:
        return SliceVector.zeros(v.n, 0)
    return apply_up(apply_down(v))


def up_then_down(v: SliceVector) -> SliceVector:
    """P-wedge: apply_up followed by apply_down (zero operator on level n)."""
    if v.k == v.n:
        return SliceVector.zeros(v.n, v.n)
    return apply_down(apply_up(v))


def apply_adjacency(v: SliceVector) -> SliceVector:
    """Johnson graph adjacency: sum of v over strings differing in two coordinates."""
    table = neighbour_table(v.n, v.k)
    return SliceVector(v.domain, v.values[table].sum(axis=1))
