"""Fourier transform on the slice with respect to the normalised harmonic basis."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .basis import basis_matrix, index_positions
from .combinatorics import SliceDomain, is_top_set, set_label
from .operators import SliceVector


@dataclass(frozen=True)
class EmptyFunction:
    """Restriction whose target weight falls outside 0..n; every coefficient is 0."""

    n: int
    k: int


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Coefficients keyed by top set, held in the fixed enumeration order."""

    domain: SliceDomain
    sets: tuple[tuple[int, ...], ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (len(self.sets),):
            raise ValueError(f"{len(self.sets)} sets but values of shape {values.shape}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, domain: SliceDomain, coefficients: Mapping[Iterable[int], float]) -> Spectrum:
        """Build a full spectrum; keys not given are zero."""
        sets, _ = basis_matrix(domain.n, domain.k)
        position = index_positions(domain.n, domain.k)
        values = np.zeros(len(sets))
        for key, c in coefficients.items():
            S = tuple(sorted(key))
            if S not in position:
                raise ValueError(
                    f"{set_label(S)} is not a top set index for slice {domain}"
                )
            values[position[S]] = c
        return cls(domain, sets, values)

    def __getitem__(self, S: Iterable[int]) -> float:
        r = index_positions(self.domain.n, self.domain.k).get(tuple(sorted(S)))
        return 0.0 if r is None else float(self.values[r])

    def items(self) -> Iterator[tuple[tuple[int, ...], float]]:
        return zip(self.sets, (float(c) for c in self.values))

    def as_dict(self) -> dict[tuple[int, ...], float]:
        return dict(self.items())

    def weight(self) -> float:
        return float(self.values @ self.values)


def transform(f: SliceVector) -> Spectrum:
    sets, rows = basis_matrix(f.n, f.k)
    return Spectrum(f.domain, sets, rows @ f.values)


def inverse_transform(spec: Spectrum) -> SliceVector:
    sets, rows = basis_matrix(spec.domain.n, spec.domain.k)
    if spec.sets != sets:
        # reorder a spectrum whose keys are a subset of the index family
        spec = Spectrum.from_mapping(spec.domain, spec.as_dict())
    return SliceVector(spec.domain, rows.T @ spec.values)


def coefficient(f: SliceVector | EmptyFunction, S: Iterable[int]) -> float:
    """One coefficient, zero for non-indices and for empty functions."""
    if isinstance(f, EmptyFunction):
        return 0.0
    s = tuple(sorted(S))
    if not is_top_set(s, f.n, f.domain.index_level):
        return 0.0
    sets, rows = basis_matrix(f.n, f.k)
    return float(rows[index_positions(f.n, f.k)[s]] @ f.values)
