"""Named invariant checks run by ``slicefourier verify``."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

import numpy as np

from .basis import (
    basis_matrix,
    chi,
    chi_norm_sq,
    eigenvalue,
    lift_norm_factor,
    orthonormal_basis,
)
from .combinatorics import SliceDomain, binomial, enumerate_top_sets, set_label
from .fourier import coefficient, inverse_transform, transform
from .heavy import QueryFunction, draw_estimator_samples, exact_bucket_weight
from .operators import (
    SliceVector,
    apply_adjacency,
    apply_down,
    apply_down_chain,
    apply_up,
    apply_up_chain,
    down_then_up,
    up_then_down,
)
from .oracle import dense_adjacency, dense_up_matrix, exhaustive_estimator_mean
from .restriction import lift_pair, restrict, restricted_weight_exact, structure_sides

TOL = 1e-9


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}\t{self.name}\t{self.detail}".rstrip()


class _Failure(Exception):
    pass


def _close(a, b, scale: float = 1.0, what: str = "") -> None:
    err = float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), initial=0.0))
    if err > TOL * max(1.0, scale):
        raise _Failure(f"{what}: error {err:.3e}")


def _random(rng, n, k) -> SliceVector:
    return SliceVector(SliceDomain(n, k), rng.standard_normal(binomial(n, k)))


def _null_sets(n: int):
    return [S for S in enumerate_top_sets(n, n // 2) if S]


def check_adjoint(n, rng, trials):
    for _ in range(trials):
        for k in range(n):
            u, w = _random(rng, n, k), _random(rng, n, k + 1)
            lhs, rhs = apply_up(u).dot(w), u.dot(apply_down(w))
            _close(lhs, rhs, abs(lhs) + u.norm() * w.norm(), f"level {k}")
    for i in range(n + 1):
        for k in range(i, n + 1):
            u, w = _random(rng, n, i), _random(rng, n, k)
            lhs, rhs = apply_up_chain(u, k).dot(w), u.dot(apply_down_chain(w, i))
            _close(lhs, rhs, abs(lhs) + 1.0, f"chain {i}->{k}")
    return f"levels 0..{n}"


DENSE_MAX_N = 10


def check_dense(n, rng, trials):
    if n > DENSE_MAX_N:
        return f"skipped (dense oracle limited to n <= {DENSE_MAX_N})"
    for k in range(n + 1):
        adj = dense_adjacency(n, k)
        up = dense_up_matrix(n, k) if k < n else None
        for _ in range(trials):
            v = _random(rng, n, k)
            _close(apply_adjacency(v).values, adj @ v.values, v.norm(1), f"adjacency level {k}")
            if up is not None:
                _close(apply_up(v).values, up @ v.values, v.norm(1), f"up level {k}")
            if k > 0:
                down = dense_up_matrix(n, k - 1).T
                _close(apply_down(v).values, down @ v.values, v.norm(1), f"down level {k}")
    return f"{trials} vectors per level"


def check_diffuddu(n, rng, trials):
    for k in range(n + 1):
        for _ in range(trials):
            v = _random(rng, n, k)
            lhs = down_then_up(v).values
            rhs = up_then_down(v).values - (n - 2 * k) * v.values
            _close(lhs, rhs, n * v.norm(1), f"level {k}")
    return f"{trials} vectors per level"


def check_adjacency_relation(n, rng, trials):
    for k in range(n + 1):
        for _ in range(trials):
            v = _random(rng, n, k)
            _close(apply_adjacency(v).values, up_then_down(v).values - (n - k) * v.values,
                   n * v.norm(1), f"A = P_wedge - (n-k)I at level {k}")
            _close(apply_adjacency(v).values, down_then_up(v).values - k * v.values,
                   n * v.norm(1), f"A = P_vee - kI at level {k}")
    return "A = P_wedge - (n-k)I = P_vee - kI"


def check_characnull(n, rng, trials):
    sets = _null_sets(n)
    for S in sets:
        _close(apply_down(chi(n, S)).values, 0.0, 1.0, f"chi_{set_label(S)}")
    return f"{len(sets)} top sets"


def check_characortho(n, rng, trials):
    count = 0
    for size in range(1, n // 2 + 1):
        group = [S for S in _null_sets(n) if len(S) == size]
        for S1, S2 in combinations(group, 2):
            _close(chi(n, S1).dot(chi(n, S2)), 0.0, 1.0, f"{set_label(S1)} vs {set_label(S2)}")
            count += 1
    return f"{count} pairs"


def check_normofchi(n, rng, trials):
    for S in _null_sets(n) + [()]:
        closed = chi_norm_sq(S)
        _close(chi(n, S).norm() ** 2, closed, closed, f"chi_{set_label(S)}")
    return "all top sets"


def check_nulltoeig(n, rng, trials):
    for S in _null_sets(n) + [()]:
        i = len(S)
        for k in range(i, n - i + 1):
            w = apply_up_chain(chi(n, S), k)
            scale = w.norm(1) * n * n
            _close(down_then_up(w).values, (n - k - i + 1) * (k - i) * w.values, scale,
                   f"vee, {set_label(S)} at level {k}")
            _close(up_then_down(w).values, (n - k - i) * (k - i + 1) * w.values, scale,
                   f"wedge, {set_label(S)} at level {k}")
    return "all top sets, all levels"


def _random_null_vector(n, i, rng) -> SliceVector:
    group = [S for S in enumerate_top_sets(n, i) if len(S) == i]
    vals = sum(rng.standard_normal() * chi(n, S).values for S in group)
    return SliceVector(SliceDomain(n, i), vals)


def check_normofup(n, rng, trials):
    for i in range(0, n // 2 + 1):
        for _ in range(max(1, trials // 10)):
            v = _random_null_vector(n, i, rng)
            base = v.norm() ** 2
            for k in range(i, n + 1):
                ratio = apply_up_chain(v, k).norm() ** 2 / base
                expected = lift_norm_factor(n, i, k)
                _close(ratio, expected, expected, f"level {i} -> {k}")
    return "random null vectors at every level"


def check_ortho(n, rng, trials):
    for i in range(1, n // 2 + 1):
        for _ in range(max(1, trials // 10)):
            a, b = _random_null_vector(n, i, rng), _random_null_vector(n, i, rng)
            b = b - a.scaled(a.dot(b) / a.dot(a))
            if b.norm() < 1e-6:
                continue
            for k in range(i, n + 1):
                la, lb = apply_up_chain(a, k), apply_up_chain(b, k)
                _close(la.dot(lb), 0.0, la.norm() * lb.norm(), f"level {i} -> {k}")
    return "orthogonal null pairs lifted to every level"


def check_norm(n, k, rng, trials):
    for bv in orthonormal_basis(SliceDomain(n, k)):
        closed = bv.norm_sq_closed
        _close(bv.vector.norm() ** 2, closed, closed, f"{set_label(bv.index)}")
    return f"{binomial(n, k)} basis vectors"


def check_basis(n, k, rng, trials):
    sets, rows = basis_matrix(n, k)
    if len(sets) != binomial(n, k):
        raise _Failure(f"{len(sets)} vectors, expected {binomial(n, k)}")
    _close(rows @ rows.T, np.eye(len(sets)), 1.0, "Gram matrix")
    for bv in orthonormal_basis(SliceDomain(n, k)):
        lam = eigenvalue(n, k, len(bv.index))
        v = bv.vector
        _close(apply_adjacency(v).values, lam * v.values, v.norm(1) * max(1, abs(lam)),
               f"eigenvector {set_label(bv.index)}")
    return f"{len(sets)} orthonormal eigenvectors"


def check_transform(n, k, rng, trials):
    for _ in range(trials):
        f = _random(rng, n, k)
        spec = transform(f)
        _close(spec.weight(), f.norm() ** 2, f.norm() ** 2, "Parseval")
        _close(inverse_transform(spec).values, f.values, f.norm(1), "round trip")
    return f"{trials} random functions"


def check_restrict(n, k, rng, trials):
    if n < 1:
        return "vacuous"
    m = min(k, n - k)
    for _ in range(trials):
        f = _random(rng, n, k)
        f0, f1 = restrict(f, (0,)), restrict(f, (1,))
        for S in enumerate_top_sets(n - 1, m):
            a, b = coefficient(f0, S), coefficient(f1, S)
            hat_S, hat_Sn = lift_pair(a, b, n, k, S)
            _close(coefficient(f, S), hat_S, f.norm(), f"f^({set_label(S)})")
            if len(S) < m:
                _close(coefficient(f, S + (n,)), hat_Sn, f.norm(), f"f^({set_label(S + (n,))})")
    return f"{trials} random functions"


def check_structure(n, k, rng, trials):
    for _ in range(trials):
        f = _random(rng, n, k)
        scale = f.norm() ** 2
        for t in range(n + 1):
            for S in enumerate_top_sets(n - t, (n - t) // 2):
                left, right = structure_sides(f, S, t)
                _close(left, right, scale, f"t={t}, S={set_label(S)}")
    return f"{trials} random functions, every t"


def check_estimator(n, k, rng, trials):
    f = SliceVector(SliceDomain(n, k), rng.choice([-1.0, 1.0], size=binomial(n, k)))
    q = QueryFunction.from_vector(f)
    total = binomial(n, k)
    for i in range(n + 1):
        for U in [S for S in enumerate_top_sets(i, i // 2)]:
            exact = restricted_weight_exact(f, U, i) / total
            _close(exact_bucket_weight(f, U, i), exact, 1.0, f"exact W({set_label(U)},{i})")
            if n <= 6:
                _close(exhaustive_estimator_mean(f, U, i), exact, 1.0,
                       f"estimator mean W({set_label(U)},{i})")
            if i < n:
                split = (restricted_weight_exact(f, U, i + 1)
                         + restricted_weight_exact(f, U + (i + 1,), i + 1)) / total
                _close(split, exact, 1.0, f"bucket split W({set_label(U)},{i})")
            samples = draw_estimator_samples(q, U, i, 200, rng)
            if np.any(np.abs(samples.value) > 1.0):
                raise _Failure(f"sample outside [-1,1] for W({set_label(U)},{i})")
    return "exact, exhaustive and sampled estimators"


OPERATOR_CHECKS: list[tuple[str, Callable]] = [
    ("adjoint", check_adjoint),
    ("dense_agreement", check_dense),
    ("adjacency_relation", check_adjacency_relation),
    ("diffuddu", check_diffuddu),
    ("nulltoeig", check_nulltoeig),
    ("normofup", check_normofup),
    ("ortho", check_ortho),
    ("characnull", check_characnull),
    ("characortho", check_characortho),
    ("normofchi", check_normofchi),
]

DOMAIN_CHECKS: list[tuple[str, Callable]] = [
    ("norm", check_norm),
    ("basis", check_basis),
    ("transform", check_transform),
    ("restrict", check_restrict),
    ("structure", check_structure),
    ("estimator", check_estimator),
]


def run_checks(n: int, k: int, deep: bool = False, seed: int = 0) -> list[CheckResult]:
    """Run every named check for the slice (n, k)."""
    SliceDomain(n, k).check_size()
    rng = np.random.default_rng(seed)
    trials = 100 if deep else 10
    results = []
    for name, fn in OPERATOR_CHECKS:
        results.append(_run(name, lambda: fn(n, rng, trials)))
    for name, fn in DOMAIN_CHECKS:
        domain_trials = trials if name != "structure" else (20 if deep else 3)
        results.append(_run(name, lambda: fn(n, k, rng, domain_trials)))
    return results


def _run(name: str, thunk) -> CheckResult:
    try:
        detail = thunk()
    except _Failure as exc:
        return CheckResult(name, False, str(exc))
    return CheckResult(name, True, detail or "")
