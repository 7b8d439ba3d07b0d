"""Test-function recipes: constants, random +-1 tables, and planted spectra."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .basis import basis_matrix
from .combinatorics import SliceDomain, binomial
from .fourier import Spectrum, inverse_transform, transform
from .operators import SliceVector

RECIPES = ("constant", "random-pm1", "sign-of-spectrum")


def constant(n: int, k: int, c: float = 1.0) -> SliceVector:
    return SliceVector.constant(n, k, c)


def random_pm1(n: int, k: int, rng: np.random.Generator) -> SliceVector:
    return SliceVector(SliceDomain(n, k), rng.choice([-1.0, 1.0], size=binomial(n, k)))


def sign_of(g: SliceVector) -> SliceVector:
    """Entrywise sign with sign(0) = +1; entries within 1e-12 of zero (relative) count as 0."""
    vals = g.values
    cut = 1e-12 * float(np.max(np.abs(vals), initial=0.0))
    return SliceVector(g.domain, np.where(vals >= -cut, 1.0, -1.0))


def sign_of_spectrum(spec: Spectrum) -> SliceVector:
    return sign_of(inverse_transform(spec))


def planted_spectrum(
    n: int,
    k: int,
    rng: np.random.Generator,
    planted: Iterable[int] | None = None,
    noise: float = 0.15,
    min_magnitude: float = 0.6,
    max_tries: int = 200,
) -> tuple[Spectrum, tuple[int, ...]]:
    """A spectrum whose sign function keeps normalised weight >= min_magnitude on one set.

    The planted set is drawn uniformly from the nonempty indices unless given;
    every other coefficient gets N(0, noise^2) relative to a unit planted
    coefficient.  Draws are rejected until the materialised +-1 function has
    |f^(S)| / sqrt(C(n,k)) >= min_magnitude.
    """
    domain = SliceDomain(n, k)
    sets, _ = basis_matrix(n, k)
    scale = math.sqrt(domain.cardinality())
    candidates = [S for S in sets if S] or list(sets)
    fixed = tuple(sorted(planted)) if planted is not None else None
    for _ in range(max_tries):
        S = fixed if fixed is not None else candidates[rng.integers(len(candidates))]
        coeffs = noise * rng.standard_normal(len(sets))
        coeffs[sets.index(S)] = 1.0
        spec = Spectrum(domain, sets, coeffs)
        f = sign_of_spectrum(spec)
        if abs(transform(f)[S]) / scale >= min_magnitude:
            return spec, S
    raise RuntimeError(
        f"could not plant a coefficient of magnitude {min_magnitude} on slice {domain} "
        f"after {max_tries} tries"
    )
