from __future__ import annotations

import numpy as np
import pytest

from slicefourier.basis import chi, lift_norm_factor
from slicefourier.combinatorics import SliceDomain, binomial
from slicefourier.operators import (
    SliceVector,
    apply_adjacency,
    apply_down,
    apply_down_chain,
    apply_up,
    apply_up_chain,
    down_then_up,
    up_then_down,
)
from slicefourier.oracle import dense_adjacency, dense_down_matrix, dense_up_matrix


def vec(n, k, values):
    return SliceVector(SliceDomain(n, k), np.asarray(values, dtype=float))


def rand(rng, n, k):
    return vec(n, k, rng.standard_normal(binomial(n, k)))


def test_up_examples():
    assert np.array_equal(apply_up(vec(2, 0, [1])).values, [1, 1])
    assert np.array_equal(apply_up(vec(3, 1, [1, 1, 1])).values, [2, 2, 2])
    got = apply_up(vec(4, 1, [-1, 1, 0, 0])).values
    assert np.array_equal(got, [0, -1, 1, -1, 1, 0])


def test_down_examples():
    assert np.array_equal(apply_down(vec(2, 1, [3.0, 5.0])).values, [8.0])
    assert np.allclose(apply_down(chi(4, (2,))).values, 0.0)


def test_down_up_on_constant_matches_dense():
    ones = SliceVector.constant(4, 1)
    got = apply_down(apply_up(ones)).values
    oracle = dense_down_matrix(4, 2) @ (dense_up_matrix(4, 1) @ np.ones(4))
    assert np.array_equal(got, oracle)
    assert np.array_equal(got, np.full(4, 6.0))


def test_level_errors():
    with pytest.raises(ValueError):
        apply_up(SliceVector.constant(3, 3))
    with pytest.raises(ValueError):
        apply_down(SliceVector.constant(3, 0))
    with pytest.raises(ValueError):
        apply_up_chain(SliceVector.constant(4, 2), 1)
    with pytest.raises(ValueError):
        apply_down_chain(SliceVector.constant(4, 2), 3)


def test_chain_identity_at_equal_levels(rng):
    v = rand(rng, 6, 3)
    assert np.array_equal(apply_up_chain(v, 3).values, v.values)
    assert np.array_equal(apply_down_chain(v, 3).values, v.values)


def test_chain_examples():
    lifted = apply_up_chain(chi(4, (2,)), 2)
    assert lifted.norm() ** 2 == pytest.approx(4.0)
    assert lift_norm_factor(4, 1, 2) * 2 == 4
    assert np.allclose(apply_up_chain(chi(4, (2,)), 4).values, 0.0)
    assert np.allclose(apply_up_chain(chi(6, (2, 4)), 5).values, 0.0)


def test_down_chain_kills_lifted_basis_vector():
    for n, S, k in [(6, (2,), 3), (7, (2, 4), 4), (8, (3, 5, 8), 5)]:
        w = apply_up_chain(chi(n, S), k)
        assert np.allclose(apply_down_chain(w, len(S) - 1).values, 0.0, atol=1e-9)


def test_chain_adjointness(rng):
    for n in range(1, 9):
        for i in range(n + 1):
            for k in range(i, n + 1):
                u, w = rand(rng, n, i), rand(rng, n, k)
                lhs = apply_up_chain(u, k).dot(w)
                rhs = u.dot(apply_down_chain(w, i))
                assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs))


def test_agreement_with_dense_oracle(rng):
    for n in range(1, 8):
        for k in range(n + 1):
            v = rand(rng, n, k)
            assert np.allclose(apply_adjacency(v).values, dense_adjacency(n, k) @ v.values, atol=1e-12)
            if k < n:
                assert np.allclose(apply_up(v).values, dense_up_matrix(n, k) @ v.values, atol=1e-12)
            if k > 0:
                assert np.allclose(apply_down(v).values, dense_down_matrix(n, k) @ v.values, atol=1e-12)


def test_up_down_commutator(rng):
    for n in range(1, 9):
        for k in range(n + 1):
            v = rand(rng, n, k)
            lhs = down_then_up(v).values
            rhs = up_then_down(v).values - (n - 2 * k) * v.values
            assert np.allclose(lhs, rhs, atol=1e-9)


def test_adjacency_examples(rng):
    for n, k in [(4, 2), (6, 1), (7, 3)]:
        got = apply_adjacency(SliceVector.constant(n, k)).values
        assert np.array_equal(got, np.full(binomial(n, k), k * (n - k)))
    v = apply_up(chi(4, (2,)))
    assert np.allclose(apply_adjacency(v).values, 0.0)
    v = rand(rng, 6, 2)
    assert np.allclose(apply_adjacency(v).values, up_then_down(v).values - 4 * v.values)
    assert np.allclose(apply_adjacency(v).values, down_then_up(v).values - 2 * v.values)


def test_operators_are_linear(rng):
    a, b = rand(rng, 7, 3), rand(rng, 7, 3)
    for op in (apply_up, apply_down, apply_adjacency):
        assert np.allclose(op(a + b.scaled(2.5)).values, op(a).values + 2.5 * op(b).values)


def test_slice_vector_validation():
    with pytest.raises(ValueError):
        vec(4, 2, [1.0] * 5)
    with pytest.raises(ValueError):
        vec(2, 1, [1.0, np.nan])
    with pytest.raises(ValueError):
        vec(2, 1, [1, 1]).dot(vec(2, 0, [1]))
