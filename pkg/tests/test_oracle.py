from __future__ import annotations

import numpy as np
import pytest

from slicefourier.combinatorics import DomainTooLarge, binomial
from slicefourier.oracle import (
    dense_adjacency,
    dense_up_matrix,
    dense_spectrum,
    exhaustive_estimator_mean,
    slice_elements,
)
from slicefourier.operators import SliceVector
from slicefourier.fourier import transform
from slicefourier.restriction import restricted_weight_exact
from slicefourier.synth import sign_of
from slicefourier.basis import basis_vector
from slicefourier.combinatorics import SliceDomain


def test_slice_elements_colex():
    assert slice_elements(4, 2) == [frozenset(s) for s in [{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}]]


def test_dense_up_examples():
    assert np.array_equal(dense_up_matrix(2, 0).entries, [[1.0], [1.0]])
    assert np.array_equal(dense_up_matrix(4, 1).entries.sum(axis=1), np.full(6, 2.0))


def test_dense_adjacency_is_regular_symmetric():
    a = dense_adjacency(6, 3).entries
    assert np.array_equal(a, a.T)
    assert np.array_equal(a.sum(axis=1), np.full(20, 9.0))


def test_dense_spectrum_examples():
    assert dense_spectrum(4, 2) == {4.0: 1, 0.0: 3, -2.0: 2}
    assert dense_spectrum(3, 1) == {2.0: 1, -1.0: 2}


def test_dense_guard(monkeypatch):
    monkeypatch.setenv("SLICE_SIZE_GUARD", "5")
    with pytest.raises(DomainTooLarge):
        dense_adjacency(4, 2)


def test_exhaustive_estimator_examples(rng):
    f = SliceVector(SliceDomain(5, 2), rng.choice([-1.0, 1.0], size=10))
    assert exhaustive_estimator_mean(f, (), 0) == pytest.approx(1.0, abs=1e-12)

    g = SliceVector(SliceDomain(6, 3), rng.choice([-1.0, 1.0], size=20))
    expected = restricted_weight_exact(g, (2,), 3) / binomial(6, 3)
    assert exhaustive_estimator_mean(g, (2,), 3) == pytest.approx(expected, abs=1e-9)

    h = sign_of(basis_vector(SliceDomain(4, 2), (2,)).vector)
    expected = transform(h)[(2,)] ** 2 / 6
    assert exhaustive_estimator_mean(h, (2,), 4) == pytest.approx(expected, abs=1e-12)
