"""Goldreich-Levin search for heavy Fourier coefficients on the slice.

Bucket weights W(U, i) = (1/C(n,k)) * sum over T inside {i+1..n} of
f^(U u T)^2 are either computed exactly from every restriction f_z, or
estimated from point queries with a two-stage importance sampler: a uniform
slice element supplies the suffix z, then two points y1, y2 of the restricted
slice are drawn proportionally to |v| for the restricted basis vector v.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable

import numpy as np

from .basis import basis_norm_sq, chi
from .combinatorics import (
    SliceDomain,
    binomial,
    colex_bits,
    is_top_set,
    rank_bits,
    set_label,
    top_set_key,
)
from .fourier import coefficient, transform
from .operators import SliceVector, apply_up_chain
from .restriction import restrict


class ListCapExceeded(RuntimeError):
    """The candidate list outgrew its cap, a sign the weight estimates are off."""


class QueryFunction:
    """A +-1 valued function on a slice reachable only through counted point queries.

    ``evaluator`` receives a 0/1 matrix whose rows are slice elements and returns
    one value per row.  Use :meth:`from_vector` for a stored truth table.
    """

    def __init__(self, domain: SliceDomain, evaluator: Callable[[np.ndarray], np.ndarray]):
        self.domain = domain
        self._evaluator = evaluator
        self._lock = threading.Lock()
        self._count = 0
        self._table: np.ndarray | None = None

    @classmethod
    def from_vector(cls, f: SliceVector) -> QueryFunction:
        table = np.asarray(f.values)
        if not np.all(np.abs(table) == 1):
            raise ValueError("query functions must be +-1 valued")
        return cls(f.domain, lambda bits: table[rank_bits(bits)])

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def k(self) -> int:
        return self.domain.k

    @property
    def query_count(self) -> int:
        return self._count

    def query_bits(self, bits: np.ndarray) -> np.ndarray:
        bits = np.atleast_2d(np.asarray(bits, dtype=np.int8))
        if bits.shape[1] != self.n or np.any(bits.sum(axis=1) != self.k):
            raise ValueError(f"query points must be weight-{self.k} strings of length {self.n}")
        out = np.asarray(self._evaluator(bits), dtype=np.float64)
        if out.shape != (bits.shape[0],) or not np.all(np.abs(out) == 1):
            raise ValueError("evaluator returned values other than +-1")
        with self._lock:
            self._count += bits.shape[0]
        return out

    def __call__(self, x: Iterable[int]) -> float:
        """Query at the set of 1-based positions x."""
        bits = np.zeros((1, self.n), dtype=np.int8)
        bits[0, [p - 1 for p in x]] = 1
        return float(self.query_bits(bits)[0])

    def materialize(self) -> SliceVector:
        """Truth table in colex order; queries every point the first time only."""
        if self._table is None:
            self.domain.check_size()
            self._table = self.query_bits(colex_bits(self.n, self.k))
        return SliceVector(self.domain, self._table)


@dataclass(frozen=True)
class SearchConfig:
    tau: float
    mode: str = "exact"
    samples_per_estimate: int | None = None
    seed: int = 0
    list_cap: int | None = None

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise ValueError(f"tau must lie in (0, 1], got {self.tau}")
        if self.mode not in ("exact", "sampled"):
            raise ValueError(f"mode must be 'exact' or 'sampled', got {self.mode!r}")
        if self.samples_per_estimate is not None and self.samples_per_estimate < 1:
            raise ValueError("samples_per_estimate must be at least 1")
        if self.list_cap is not None and self.list_cap < 1:
            raise ValueError("list_cap must be positive")

    @property
    def threshold(self) -> float:
        return self.tau**2 / 2

    @property
    def accuracy(self) -> float:
        return self.tau**2 / 4

    def cap(self) -> int:
        return self.list_cap if self.list_cap is not None else math.ceil(8 / self.tau**2)

    def samples(self, n: int) -> int:
        if self.samples_per_estimate is not None:
            return self.samples_per_estimate
        return default_samples(n, self.tau)


def default_samples(n: int, tau: float) -> int:
    """Hoeffding-style count giving additive error tau^2/4 per estimate."""
    return math.ceil(32 * math.log(64 * max(n, 1) / tau**2) / tau**4)


def _mask(U: Iterable[int]) -> int:
    return sum(1 << (u - 1) for u in U)


def estimate_rng(seed: int, i: int, U: Iterable[int]) -> np.random.Generator:
    """Independent stream for one estimate call, keyed by (seed, i, U)."""
    seq = np.random.SeedSequence(seed % 2**64, spawn_key=(i, _mask(U)))
    return np.random.default_rng(seq)


@dataclass(frozen=True)
class _Sampler:
    values: np.ndarray
    cdf: np.ndarray
    signs: np.ndarray
    scale: float  # ||v||_1^2 / (||v||_2^2 * C(i, k'))


@lru_cache(maxsize=4096)
def _restricted_sampler(i: int, U: tuple[int, ...], k_restricted: int) -> _Sampler | None:
    if not 0 <= k_restricted <= i:
        return None
    if not is_top_set(U, i, min(k_restricted, i - k_restricted)):
        return None
    v = apply_up_chain(chi(i, U), k_restricted).values
    absv = np.abs(v)
    l1 = absv.sum()
    if l1 == 0:
        return None
    cdf = np.cumsum(absv)
    cdf /= cdf[-1]
    l2sq = basis_norm_sq(i, k_restricted, U)
    scale = l1 * l1 / (l2sq * binomial(i, k_restricted))
    if scale > 1 + 1e-9:
        raise AssertionError(f"l1/l2 bound violated: {scale}")
    return _Sampler(v, cdf, np.sign(v), min(scale, 1.0))


def _draw(sampler: _Sampler, rng: np.random.Generator, size: int) -> np.ndarray:
    return np.searchsorted(sampler.cdf, rng.random(size), side="right")


def sample_restricted_basis_point(
    i: int, U: Iterable[int], k_restricted: int, rng: np.random.Generator
) -> tuple[tuple[int, ...], int]:
    """Draw y from the slice (i, k_restricted) with probability |v_y| / ||v||_1.

    Returns the 1-based positions of y and sign(v_y).
    """
    U = tuple(sorted(U))
    sampler = _restricted_sampler(i, U, k_restricted)
    if sampler is None:
        raise ValueError(
            f"no nonzero basis vector for {set_label(U)} on slice ({i},{k_restricted})"
        )
    r = int(_draw(sampler, rng, 1)[0])
    bits = colex_bits(i, k_restricted)[r]
    return tuple(int(p) + 1 for p in np.flatnonzero(bits)), int(sampler.signs[r])


@dataclass(frozen=True, eq=False)
class EstimatorSamples:
    """A batch of estimator draws; y ranks are -1 where the draw was degenerate."""

    z: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    value: np.ndarray


def draw_estimator_samples(
    f: QueryFunction, U: Iterable[int], i: int, count: int, rng: np.random.Generator
) -> EstimatorSamples:
    """Draw ``count`` unbiased samples of W(U, i), each in [-1, 1].

    Degenerate draws (U not an index of the restricted slice) are 0 and cost
    no queries; every other draw costs exactly two.
    """
    U = tuple(sorted(U))
    n, k = f.n, f.k
    x = np.zeros((count, n), dtype=np.int8)
    if k:
        ones = rng.random((count, n)).argsort(axis=1)[:, :k]
        np.put_along_axis(x, ones, 1, axis=1)
    z = x[:, i:]
    weights = z.sum(axis=1)
    y1 = np.full(count, -1, dtype=np.int64)
    y2 = np.full(count, -1, dtype=np.int64)
    value = np.zeros(count)
    for w in np.unique(weights):
        sel = np.flatnonzero(weights == w)
        kr = k - int(w)
        sampler = _restricted_sampler(i, U, kr)
        if sampler is None:
            continue
        r1 = _draw(sampler, rng, sel.size)
        r2 = _draw(sampler, rng, sel.size)
        table = colex_bits(i, kr)
        suffix = z[sel]
        q1 = f.query_bits(np.hstack([table[r1], suffix]))
        q2 = f.query_bits(np.hstack([table[r2], suffix]))
        value[sel] = sampler.scale * q1 * q2 * sampler.signs[r1] * sampler.signs[r2]
        y1[sel], y2[sel] = r1, r2
    return EstimatorSamples(z.copy(), y1, y2, value)


def _check_bucket_args(n: int, U: tuple[int, ...], i: int) -> None:
    if not 0 <= i <= n:
        raise ValueError(f"i must satisfy 0 <= i <= n, got i={i}, n={n}")
    if U and (U[0] < 1 or U[-1] > i):
        raise ValueError(f"{set_label(U)} is not a subset of [{i}]")


def exact_bucket_weight(f: SliceVector, U: Iterable[int], i: int) -> float:
    """W(U, i) from full transforms of all 2^(n-i) restrictions."""
    U = tuple(sorted(U))
    _check_bucket_args(f.n, U, i)
    total = 0.0
    for z in product((0, 1), repeat=f.n - i):
        c = coefficient(restrict(f, z), U)
        total += c * c
    return total / binomial(f.n, f.k)


def estimate_bucket_weight(
    f: QueryFunction,
    U: Iterable[int],
    i: int,
    cfg: SearchConfig,
    rng: np.random.Generator | None = None,
) -> float:
    U = tuple(sorted(U))
    n, k = f.n, f.k
    _check_bucket_args(n, U, i)
    if cfg.mode == "exact":
        return exact_bucket_weight(f.materialize(), U, i)
    # every completion of a non-index prefix is a non-index
    if not is_top_set(U, n, min(k, n - k)):
        return 0.0
    if rng is None:
        rng = estimate_rng(cfg.seed, i, U)
    return float(draw_estimator_samples(f, U, i, cfg.samples(n), rng).value.mean())


def find_heavy_sets(f: QueryFunction, cfg: SearchConfig) -> list[tuple[int, ...]]:
    """Sets U whose coefficient is large, found by splitting weight buckets.

    Exact mode guarantees: |f^(U)| >= tau sqrt(C(n,k)) implies U is returned,
    and every returned U has |f^(U)| >= (tau/2) sqrt(C(n,k)).  Sampled mode
    gives the same with high probability at the default sample count.
    """
    n = f.n
    cap = cfg.cap()
    candidates: list[tuple[int, ...]] = [()]
    for i in range(n):
        survivors = []
        for U in candidates:
            child = U + (i + 1,)
            if estimate_bucket_weight(f, U, i + 1, cfg) >= cfg.threshold:
                survivors.append(U)
            if estimate_bucket_weight(f, child, i + 1, cfg) >= cfg.threshold:
                survivors.append(child)
        if len(survivors) > cap:
            raise ListCapExceeded(
                f"{len(survivors)} buckets survived after fixing {i + 1} coordinates, "
                f"above the cap of {cap}; weight estimates are unreliable "
                f"(raise --samples or check the function is +-1 valued)"
            )
        candidates = survivors
    return sorted(candidates, key=top_set_key)


def true_heavy_sets(f: SliceVector, threshold: float) -> list[tuple[int, ...]]:
    """Sets whose normalised coefficient |f^(S)| / sqrt(C(n,k)) is at least threshold."""
    scale = math.sqrt(f.domain.cardinality())
    spec = transform(f)
    return [S for S, c in spec.items() if abs(c) / scale >= threshold - 1e-12]
