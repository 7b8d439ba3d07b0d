"""Indexing of slice elements and the top-set family that labels the basis.

Slice elements are handled as sorted tuples of 1-based positions of the ones.
Dense vectors over a slice are laid out in colexicographic order, so every
string with a 0 in the last coordinate comes before every string with a 1.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

INT64_MAX = 2**63 - 1
DEFAULT_SIZE_GUARD = 10**7


class DomainTooLarge(ValueError):
    """Raised when a dense representation of a slice would exceed the size guard."""


class NotATopSet(ValueError):
    pass


def binomial(n: int, k: int) -> int:
    """Exact C(n, k); zero outside 0 <= k <= n.

    Results are used as int64 array indices, so anything above 2**63 - 1
    raises OverflowError instead of being returned.
    """
    if n < 0:
        raise ValueError(f"binomial: n must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    value = math.comb(n, k)
    if value > INT64_MAX:
        raise OverflowError(f"C({n}, {k}) does not fit in a signed 64-bit integer")
    return value


def size_guard() -> int:
    raw = os.environ.get("SLICE_SIZE_GUARD")
    if raw is None:
        return DEFAULT_SIZE_GUARD
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"SLICE_SIZE_GUARD must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class SliceDomain:
    """The weight-``k`` strings of length ``n``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be nonnegative, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must satisfy 0 <= k <= n, got n={self.n}, k={self.k}")

    def cardinality(self) -> int:
        return binomial(self.n, self.k)

    @property
    def index_level(self) -> int:
        """Largest top-set size indexing the basis, min(k, n - k)."""
        return min(self.k, self.n - self.k)

    def check_size(self) -> None:
        limit = size_guard()
        if math.comb(self.n, self.k) > limit:
            raise DomainTooLarge(
                f"slice ({self.n}, {self.k}) has C(n,k) = {math.comb(self.n, self.k)} "
                f"entries, above the guard of {limit} (set SLICE_SIZE_GUARD to override)"
            )

    def elements(self) -> np.ndarray:
        """All elements as rows of 0-based one positions, in colex order."""
        return colex_positions(self.n, self.k)

    def __str__(self):
        return f"({self.n},{self.k})"


def rank_colex(x: Iterable[int]) -> int:
    """Colex rank of a set of 1-based positions: sum of C(s_j - 1, j)."""
    s = sorted(x)
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ValueError(f"repeated position {a}")
    if s and s[0] < 1:
        raise ValueError(f"positions are 1-based, got {s[0]}")
    return sum(math.comb(sj - 1, j) for j, sj in enumerate(s, start=1))


def unrank_colex(domain: SliceDomain, r: int) -> tuple[int, ...]:
    n, k = domain.n, domain.k
    total = domain.cardinality()
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range for slice {domain} of size {total}")
    out = []
    top = n
    for j in range(k, 0, -1):
        # largest s with C(s - 1, j) <= r
        s = j
        while s < top and math.comb(s, j) <= r:
            s += 1
        out.append(s)
        r -= math.comb(s - 1, j)
        top = s - 1
    return tuple(reversed(out))


def to_bits(x: Iterable[int], n: int) -> tuple[int, ...]:
    ones = set(x)
    return tuple(1 if i in ones else 0 for i in range(1, n + 1))


def from_bits(bits: Iterable[int]) -> tuple[int, ...]:
    return tuple(i for i, b in enumerate(bits, start=1) if b)


@lru_cache(maxsize=None)
def binomial_table(n: int) -> np.ndarray:
    """table[a, b] = C(a, b) for 0 <= a, b <= n, as int64."""
    t = np.zeros((n + 1, n + 2), dtype=np.int64)
    for a in range(n + 1):
        for b in range(a + 1):
            t[a, b] = math.comb(a, b)
    return t


def rank_bits(bits: np.ndarray) -> np.ndarray:
    """Vectorised colex rank of the rows of a 0/1 matrix."""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.ndim == 1:
        bits = bits[None, :]
    n = bits.shape[1]
    table = binomial_table(n)
    j = np.cumsum(bits, axis=1)
    pos = np.broadcast_to(np.arange(n), bits.shape)
    return np.where(bits == 1, table[pos, j], 0).sum(axis=1)


@lru_cache(maxsize=None)
def colex_positions(n: int, k: int) -> np.ndarray:
    """Rows of 0-based positions of all k-subsets of range(n), colex ordered."""
    if k == 0:
        out = np.zeros((1, 0), dtype=np.int64)
    elif k > n:
        out = np.zeros((0, k), dtype=np.int64)
    else:
        low = colex_positions(n - 1, k)
        high = colex_positions(n - 1, k - 1)
        high = np.hstack([high, np.full((high.shape[0], 1), n - 1, dtype=np.int64)])
        out = np.vstack([low, high]) if low.size or high.size else np.zeros((0, k), np.int64)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def colex_bits(n: int, k: int) -> np.ndarray:
    pos = colex_positions(n, k)
    bits = np.zeros((pos.shape[0], n), dtype=np.int8)
    if k:
        np.put_along_axis(bits, pos, 1, axis=1)
    bits.setflags(write=False)
    return bits


def is_top_set(S: Iterable[int], n: int, k: int) -> bool:
    """Sorted elements satisfy s_j >= 2j, at most k of them, all inside [n]."""
    s = sorted(S)
    if len(s) > k or len(set(s)) != len(s):
        return False
    if s and (s[0] < 1 or s[-1] > n):
        return False
    return all(sj >= 2 * j for j, sj in enumerate(s, start=1))


def check_top_set(S: Iterable[int]) -> tuple[int, ...]:
    s = tuple(sorted(S))
    if not is_top_set(s, max(s, default=0), len(s)):
        raise NotATopSet(f"{set_label(s)} is not a top set (needs s_j >= 2j)")
    return s


def top_set_key(S: tuple[int, ...]) -> tuple:
    """Sort key giving size-major, colex-within-size order."""
    return (len(S), tuple(reversed(S)))


@lru_cache(maxsize=None)
def enumerate_top_sets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All top sets in [n] of size at most k, size-major and colex within size.

    The caller passes min(k, n - k) for the slice (n, k); sizes above n/2
    contribute nothing since the ballot condition cannot hold there.
    """
    out = []
    for size in range(0, min(k, n // 2) + 1):
        for row in colex_positions(n, size):
            c = tuple(int(p) + 1 for p in row)
            if is_top_set(c, n, size):
                out.append(c)
    return tuple(out)


def set_label(S: Iterable[int]) -> str:
    return "{" + ",".join(str(s) for s in sorted(S)) + "}"
