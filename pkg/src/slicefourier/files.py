"""Reading and writing function files.

A function file is a JSON object::

    {"n": 4, "k": 2, "encoding": "dense", "values": [1.0, -1.0, ...]}
    {"n": 4, "k": 2, "encoding": "sparse-spectrum",
     "values": [{"set": [2, 4], "coefficient": 0.5}, ...]}

``sign-of-spectrum`` uses the spectrum layout and stands for the +-1 function
sign(sum c_S v_S / |v_S|).  Dense values are in colex order.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .combinatorics import SliceDomain, binomial, is_top_set, set_label, size_guard
from .fourier import Spectrum, inverse_transform, transform
from .operators import SliceVector
from .synth import sign_of_spectrum

ENCODINGS = ("dense", "sparse-spectrum", "sign-of-spectrum")


class FileFormatError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FunctionFile:
    domain: SliceDomain
    encoding: str
    dense: SliceVector | None = None
    spectrum: Spectrum | None = None

    @classmethod
    def from_dense(cls, f: SliceVector) -> FunctionFile:
        return cls(f.domain, "dense", dense=f)

    @classmethod
    def from_spectrum(cls, spec: Spectrum, encoding: str = "sparse-spectrum") -> FunctionFile:
        return cls(spec.domain, encoding, spectrum=spec)

    def function(self) -> SliceVector:
        """The function the file denotes, materialised densely."""
        if self.encoding == "dense":
            return self.dense
        if self.encoding == "sparse-spectrum":
            return inverse_transform(self.spectrum)
        return sign_of_spectrum(self.spectrum)

    def to_spectrum(self) -> Spectrum:
        if self.encoding == "sparse-spectrum":
            return self.spectrum
        return transform(self.function())

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"n": self.domain.n, "k": self.domain.k, "encoding": self.encoding}
        if self.encoding == "dense":
            out["values"] = [float(v) for v in self.dense.values]
        else:
            out["values"] = [{"set": list(S), "coefficient": c} for S, c in self.spectrum.items()]
        return out


def dumps(ff: FunctionFile) -> str:
    """Canonical text: header fields, then one value per line.

    Floats use repr, the shortest decimal string that parses back to the same double.
    """
    obj = ff.to_json()
    head = ",\n".join(f" {json.dumps(key)}: {json.dumps(obj[key])}" for key in ("n", "k", "encoding"))
    body = ",\n".join(f"  {json.dumps(v)}" for v in obj["values"])
    return "{\n" + head + ',\n "values": [\n' + body + ("\n" if body else "") + " ]\n}\n"


def _require_int(obj: dict, key: str) -> int:
    if key not in obj:
        raise FileFormatError(f"field '{key}': missing")
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise FileFormatError(f"field '{key}': expected an integer, got {val!r}")
    return val


def _number(val, where: str) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise FileFormatError(f"{where}: expected a number, got {val!r}")
    if not math.isfinite(val):
        raise FileFormatError(f"{where}: value must be finite")
    return float(val)


def loads(text: str) -> FunctionFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise FileFormatError("top level: expected a JSON object")
    n, k = _require_int(obj, "n"), _require_int(obj, "k")
    if n < 0 or not 0 <= k <= n:
        raise FileFormatError(f"fields 'n', 'k': need 0 <= k <= n, got n={n}, k={k}")
    domain = SliceDomain(n, k)
    if math.comb(n, k) > size_guard():
        raise FileFormatError(f"fields 'n', 'k': slice {domain} exceeds the size guard")
    encoding = obj.get("encoding")
    if encoding not in ENCODINGS:
        raise FileFormatError(f"field 'encoding': expected one of {', '.join(ENCODINGS)}, got {encoding!r}")
    values = obj.get("values")
    if not isinstance(values, list):
        raise FileFormatError("field 'values': expected an array")
    if encoding == "dense":
        expected = binomial(n, k)
        if len(values) != expected:
            raise FileFormatError(f"field 'values': slice {domain} needs {expected} entries, got {len(values)}")
        vals = np.array([_number(v, f"values[{j}]") for j, v in enumerate(values)])
        return FunctionFile.from_dense(SliceVector(domain, vals))
    coeffs: dict[tuple[int, ...], float] = {}
    m = domain.index_level
    for j, entry in enumerate(values):
        if not isinstance(entry, dict) or "set" not in entry or "coefficient" not in entry:
            raise FileFormatError(f"values[{j}]: expected an object with 'set' and 'coefficient'")
        raw = entry["set"]
        if not isinstance(raw, list) or not all(isinstance(s, int) and not isinstance(s, bool) for s in raw):
            raise FileFormatError(f"values[{j}].set: expected an array of integers")
        S = tuple(sorted(raw))
        if len(set(S)) != len(S) or (S and not 1 <= S[0] <= S[-1] <= n):
            raise FileFormatError(f"values[{j}].set: {raw} is not a subset of [{n}]")
        if not is_top_set(S, n, m):
            raise FileFormatError(f"values[{j}].set: {set_label(S)} is not a top set for slice {domain}")
        if S in coeffs:
            raise FileFormatError(f"values[{j}].set: {set_label(S)} listed twice")
        coeffs[S] = _number(entry["coefficient"], f"values[{j}].coefficient")
    return FunctionFile.from_spectrum(Spectrum.from_mapping(domain, coeffs), encoding)


def read(path: str | os.PathLike) -> FunctionFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FileFormatError(f"{path}: {exc.strerror}") from None
    try:
        return loads(text)
    except FileFormatError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def write_text_atomic(path: str | os.PathLike, text: str) -> None:
    """Write to a temporary sibling and rename, so failures leave no partial file."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write(path: str | os.PathLike, ff: FunctionFile) -> None:
    write_text_atomic(path, dumps(ff))
