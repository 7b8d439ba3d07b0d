"""Restrictions obtained by fixing trailing coordinates, and the coefficient
identities that relate a function's spectrum to those of its restrictions."""

from __future__ import annotations

import math
from itertools import product
from typing import Iterable, Sequence

from .basis import index_positions
from .combinatorics import SliceDomain, binomial, is_top_set, set_label
from .fourier import EmptyFunction, coefficient, transform
from .operators import SliceVector


def restriction_slice(n: int, k: int, z: Sequence[int]) -> slice | None:
    """Ranks of the strings ending in z, a contiguous colex block; None if empty."""
    start = 0
    for b in reversed(z):
        split = binomial(n - 1, k)
        if b == 0:
            if k > n - 1:
                return None
        else:
            if k == 0:
                return None
            start += split
            k -= 1
        n -= 1
    return slice(start, start + binomial(n, k))


def restrict(f: SliceVector | EmptyFunction, z: Sequence[int]) -> SliceVector | EmptyFunction:
    """f_z(x) = f(x o z) where z fixes the last len(z) coordinates."""
    z = tuple(int(b) for b in z)
    if any(b not in (0, 1) for b in z):
        raise ValueError(f"restriction pattern must be binary, got {z}")
    if len(z) > f.n:
        raise ValueError(f"cannot fix {len(z)} coordinates of a length-{f.n} string")
    n, k = f.n - len(z), f.k - sum(z)
    if isinstance(f, EmptyFunction):
        return EmptyFunction(n, k)
    block = restriction_slice(f.n, f.k, z)
    if block is None:
        return EmptyFunction(n, k)
    return SliceVector(SliceDomain(n, k), f.values[block].copy())


def _check_pair_args(n: int, k: int, S: tuple[int, ...]) -> None:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    if len(S) > min(k, n - k):
        raise ValueError(f"|S| = {len(S)} exceeds min(k, n-k) = {min(k, n - k)}")
    if S and S[-1] > n - 1:
        raise ValueError(f"{set_label(S)} must lie inside [{n - 1}]")


def lift_pair(hat_f0_S: float, hat_f1_S: float, n: int, k: int, S: Iterable[int]):
    """Coefficients of f at S and S+{n} from those of f_0 and f_1 at S.

    Returns (f^(S), f^(S u {n})); the second entry is None when S u {n}
    is not an index (|S| >= min(k, n-k)).
    """
    S = tuple(sorted(S))
    _check_pair_args(n, k, S)
    i = len(S)
    if k == 0:
        return hat_f0_S, None
    if k == n:
        return hat_f1_S, None
    if i == k:
        return hat_f0_S, None
    if i == n - k:
        return hat_f1_S, None
    root = math.sqrt(n - 2 * i)
    a, b = math.sqrt(n - k - i), math.sqrt(k - i)
    return (a * hat_f0_S + b * hat_f1_S) / root, (-b * hat_f0_S + a * hat_f1_S) / root


def project_pair(hat_f_S: float, hat_f_Sn: float, n: int, k: int, S: Iterable[int]):
    """Inverse of lift_pair: (f_0^(S), f_1^(S)) from (f^(S), f^(S u {n}))."""
    S = tuple(sorted(S))
    _check_pair_args(n, k, S)
    i = len(S)
    if not i < min(k, n - k):
        raise ValueError(f"project_pair needs |S| < min(k, n-k), got |S|={i}, n={n}, k={k}")
    root = math.sqrt(n - 2 * i)
    a, b = math.sqrt(n - k - i), math.sqrt(k - i)
    return (a * hat_f_S - b * hat_f_Sn) / root, (a * hat_f_Sn + b * hat_f_S) / root


def lift_matrix(n: int, k: int, size: int) -> tuple[tuple[float, float], tuple[float, float]]:
    """The rotation taking (f_0^(S), f_1^(S)) to (f^(S), f^(S u {n})) in the general case."""
    root = math.sqrt(n - 2 * size)
    a, b = math.sqrt(n - k - size) / root, math.sqrt(k - size) / root
    return ((a, b), (-b, a))


def restricted_weight_exact(
    f: SliceVector, U: Iterable[int], i: int, method: str = "spectrum"
) -> float:
    """Sum of f^(U u T)^2 over all T contained in {i+1, ..., n}.

    ``method="spectrum"`` reads the sum off the full transform of f;
    ``method="restrictions"`` sums f_z^(U)^2 over every z in {0,1}^(n-i).
    """
    U = tuple(sorted(U))
    n = f.n
    if not 0 <= i <= n:
        raise ValueError(f"i must satisfy 0 <= i <= n, got i={i}, n={n}")
    if U and (U[0] < 1 or U[-1] > i):
        raise ValueError(f"{set_label(U)} is not a subset of [{i}]")
    f.domain.check_size()
    if method == "spectrum":
        spec = transform(f)
        prefix = set(range(1, i + 1))
        total = 0.0
        for S, c in spec.items():
            if tuple(s for s in S if s in prefix) == U:
                total += c * c
        return total
    if method == "restrictions":
        total = 0.0
        for z in product((0, 1), repeat=n - i):
            c = coefficient(restrict(f, z), U)
            total += c * c
        return total
    raise ValueError(f"unknown method {method!r}")


def structure_sides(f: SliceVector, S: Iterable[int], t: int) -> tuple[float, float]:
    """Both sides of the restriction identity for suffix length t.

    Left: sum over z in {0,1}^t of f_z^(S)^2.  Right: sum over T inside the
    last t coordinates of f^(S u T)^2, with non-indices contributing 0.
    """
    S = tuple(sorted(S))
    n, k = f.n, f.k
    if S and S[-1] > n - t:
        raise ValueError(f"{set_label(S)} must lie inside [{n - t}]")
    left = 0.0
    for z in product((0, 1), repeat=t):
        c = coefficient(restrict(f, z), S)
        left += c * c
    spec = transform(f)
    positions = index_positions(n, k)
    tail = range(n - t + 1, n + 1)
    right = 0.0
    for mask in product((0, 1), repeat=t):
        key = S + tuple(e for e, m in zip(tail, mask) if m)
        r = positions.get(key)
        if r is not None and is_top_set(key, n, f.domain.index_level):
            right += spec.values[r] ** 2
    return left, right
