from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slicefourier.basis import basis_vector
from slicefourier.combinatorics import SliceDomain, binomial
from slicefourier.fourier import EmptyFunction, Spectrum, coefficient, inverse_transform, transform
from slicefourier.operators import SliceVector


def test_constant_function():
    for n, k, c in [(4, 2, 2.5), (6, 3, -1.0), (5, 0, 3.0)]:
        spec = transform(SliceVector.constant(n, k, c))
        assert spec[()] == pytest.approx(c * math.sqrt(binomial(n, k)))
        rest = spec.values[1:]
        assert np.allclose(rest, 0.0, atol=1e-12)


def test_normalised_basis_vector_has_indicator_spectrum():
    d = SliceDomain(6, 3)
    for S in [(), (2,), (2, 4), (3, 5, 6)]:
        bv = basis_vector(d, S)
        spec = transform(SliceVector(d, bv.normalized()))
        expected = np.zeros(len(spec.sets))
        expected[spec.sets.index(S)] = 1.0
        assert np.allclose(spec.values, expected, atol=1e-12)


def test_two_point_slice_formula():
    a, b = 0.7, -1.9
    spec = transform(SliceVector(SliceDomain(2, 1), np.array([a, b])))
    assert spec[()] == pytest.approx((a + b) / math.sqrt(2))
    assert spec[(2,)] == pytest.approx((-a + b) / math.sqrt(2))


def test_coefficient_zero_conventions(rng):
    f = SliceVector(SliceDomain(5, 2), rng.standard_normal(10))
    assert coefficient(f, (1,)) == 0.0
    assert coefficient(f, (2, 3)) == 0.0
    assert coefficient(f, (2, 4, 5)) == 0.0
    assert coefficient(EmptyFunction(3, 4), ()) == 0.0
    ones = SliceVector.constant(4, 2)
    assert coefficient(ones, ()) == pytest.approx(math.sqrt(6))


def test_inverse_examples():
    d = SliceDomain(5, 2)
    zero = Spectrum.from_mapping(d, {})
    assert np.array_equal(inverse_transform(zero).values, np.zeros(10))
    one = Spectrum.from_mapping(d, {(): math.sqrt(10)})
    assert np.allclose(inverse_transform(one).values, 1.0)
    with pytest.raises(ValueError):
        Spectrum.from_mapping(d, {(1,): 1.0})
    with pytest.raises(ValueError):
        Spectrum.from_mapping(d, {(2, 4, 6): 1.0})


def test_round_trip_6_3(rng):
    d = SliceDomain(6, 3)
    spec = Spectrum.from_mapping(d, {})
    spec = Spectrum(d, spec.sets, rng.standard_normal(20))
    back = transform(inverse_transform(spec))
    assert np.allclose(back.values, spec.values, atol=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))), st.integers(0, 2**32 - 1))
def test_parseval_and_round_trip(nk, seed):
    n, k = nk
    rng = np.random.default_rng(seed)
    f = SliceVector(SliceDomain(n, k), rng.standard_normal(binomial(n, k)))
    spec = transform(f)
    assert spec.weight() == pytest.approx(f.norm() ** 2, rel=1e-9)
    assert np.allclose(inverse_transform(spec).values, f.values, atol=1e-9)


def test_pm1_weight_equals_cardinality(rng):
    for n, k in [(6, 3), (8, 4), (9, 2)]:
        f = SliceVector(SliceDomain(n, k), rng.choice([-1.0, 1.0], size=binomial(n, k)))
        assert transform(f).weight() == pytest.approx(binomial(n, k), rel=1e-12)


def test_spectrum_lookup():
    d = SliceDomain(4, 2)
    spec = Spectrum.from_mapping(d, {(2, 4): 0.5, (3,): -1.0})
    assert spec[(4, 2)] == 0.5
    assert spec[(1,)] == 0.0
    assert spec.as_dict()[(3,)] == -1.0
    assert [S for S, _ in spec.items()] == [(), (2,), (3,), (4,), (2, 4), (3, 4)]
