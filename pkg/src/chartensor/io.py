"""Instance files: parsing, validation, serialization and the bundled corpus.

Indices in ``R0`` and ``T0`` entries are 0-based.  Rationals are JSON integers
or ``"p/q"`` strings; JSON floats are refused because they are already rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .exact import DependentBasisError, Matrix, Vector, to_rational
from .subalgebra import GroupGenerators, LieSubalgebra
from .tensors import CharTriple, CurvatureTensor, Lifting, TorsionTensor

CORPUS_PACKAGE = "chartensor.corpus"


class InstanceError(ValueError):
    """Invalid instance data; ``location`` is a JSON path such as ``$.R0[2].i``."""

    def __init__(self, message: str, location: str = "$"):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.reason = message


@dataclass
class InstanceFile:
    n: int
    h_basis: list
    lam: Lifting
    R: CurvatureTensor
    T: TorsionTensor
    group_generators: list | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.metadata.get("name", ""))

    def triple(self) -> CharTriple:
        return CharTriple(self.R, self.T, self.lam)

    def subalgebra(self) -> LieSubalgebra:
        return LieSubalgebra(self.h_basis, self.n)

    def generators(self) -> GroupGenerators | None:
        if self.group_generators is None:
            return None
        return GroupGenerators(self.group_generators)

    def with_triple(self, t: CharTriple) -> "InstanceFile":
        return InstanceFile(self.n, list(self.h_basis), t.lam, t.R, t.T,
                            None if self.group_generators is None else list(self.group_generators),
                            dict(self.metadata))


def _rational(value: Any, loc: str):
    if isinstance(value, float):
        raise InstanceError(f"float {value!r} is not an exact rational; write it as \"p/q\"", loc)
    try:
        return to_rational(value)
    except (TypeError, ValueError) as exc:
        msg = str(exc)
        if "zero denominator" in msg:
            raise InstanceError(f"zero denominator in {value!r}", loc) from None
        raise InstanceError(f"malformed rational {value!r}", loc) from None


def _matrix(value: Any, n: int, loc: str) -> Matrix:
    if not isinstance(value, list) or len(value) != n:
        raise InstanceError(f"expected a {n}x{n} matrix", loc)
    rows = []
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise InstanceError(f"expected a row of length {n}", f"{loc}[{r}]")
        rows.append([_rational(x, f"{loc}[{r}][{c}]") for c, x in enumerate(row)])
    return Matrix(rows)


def _vector(value: Any, n: int, loc: str) -> Vector:
    if not isinstance(value, list) or len(value) != n:
        raise InstanceError(f"expected a vector of length {n}", loc)
    return Vector([_rational(x, f"{loc}[{c}]") for c, x in enumerate(value)])


def _matrix_list(value: Any, n: int, loc: str) -> list:
    if not isinstance(value, list):
        raise InstanceError("expected a list of matrices", loc)
    return [_matrix(m, n, f"{loc}[{a}]") for a, m in enumerate(value)]


def _index(entry: dict, key: str, n: int, loc: str) -> int:
    if key not in entry:
        raise InstanceError(f"missing field {key!r}", loc)
    v = entry[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise InstanceError("index must be an integer", f"{loc}.{key}")
    if not 0 <= v < n:
        raise InstanceError(f"index {v} out of range 0..{n - 1}", f"{loc}.{key}")
    return v


def _sparse(value: Any, n: int, loc: str, payload: str, reader) -> dict:
    if not isinstance(value, list):
        raise InstanceError("expected a list of sparse entries", loc)
    out = {}
    for p, entry in enumerate(value):
        eloc = f"{loc}[{p}]"
        if not isinstance(entry, dict):
            raise InstanceError("expected an object with keys i, j, " + payload, eloc)
        i = _index(entry, "i", n, eloc)
        j = _index(entry, "j", n, eloc)
        if not i < j:
            raise InstanceError(f"i<j required (got i={i}, j={j})", eloc)
        if (i, j) in out:
            raise InstanceError(f"duplicate entry for pair ({i}, {j})", eloc)
        if payload not in entry:
            raise InstanceError(f"missing field {payload!r}", eloc)
        out[(i, j)] = reader(entry[payload], n, f"{eloc}.{payload}")
    return out


def instance_from_dict(data: Any) -> InstanceFile:
    if not isinstance(data, dict):
        raise InstanceError("instance must be a JSON object")
    known = {"dimension", "h_basis", "lambda", "R0", "T0", "group_generators", "metadata"}
    extra = sorted(set(data) - known)
    if extra:
        raise InstanceError(f"unknown field {extra[0]!r}", f"$.{extra[0]}")
    if "dimension" not in data:
        raise InstanceError("missing field 'dimension'")
    n = data["dimension"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InstanceError("dimension must be a positive integer", "$.dimension")

    h_basis = _matrix_list(data.get("h_basis", []), n, "$.h_basis")
    if "lambda" in data:
        lam_list = _matrix_list(data["lambda"], n, "$.lambda")
        if len(lam_list) != n:
            raise InstanceError(f"expected {n} matrices, one per basis vector", "$.lambda")
        lam = Lifting(lam_list, n)
    else:
        lam = Lifting.zero(n)
    R = CurvatureTensor.from_pairs(n, _sparse(data.get("R0", []), n, "$.R0", "matrix", _matrix))
    T = TorsionTensor.from_pairs(n, _sparse(data.get("T0", []), n, "$.T0", "vector", _vector))

    gens = None
    if data.get("group_generators") is not None:
        gens = _matrix_list(data["group_generators"], n, "$.group_generators")
        for a, g in enumerate(gens):
            if g.determinant() == 0:
                raise InstanceError("group generator is singular", f"$.group_generators[{a}]")

    metadata = data.get("metadata", {})
    if not isinstance(metadata, dict):
        raise InstanceError("metadata must be an object", "$.metadata")

    inst = InstanceFile(n, h_basis, lam, R, T, gens, dict(metadata))
    try:
        inst.subalgebra()
    except DependentBasisError as exc:
        raise InstanceError("h_basis is linearly dependent", f"$.h_basis[{exc.index}]") from None
    return inst


def parse_instance(path) -> InstanceFile:
    text = Path(path).read_text()
    return parse_instance_text(text)


def parse_instance_text(text: str) -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None
    return instance_from_dict(data)


def serialize_instance(inst: InstanceFile) -> dict:
    out: dict = {
        "dimension": inst.n,
        "h_basis": [m.to_json() for m in inst.h_basis],
        "lambda": [m.to_json() for m in inst.lam.components],
        "R0": [{"i": i, "j": j, "matrix": m.to_json()} for (i, j), m in inst.R.items() if not m.is_zero()],
        "T0": [{"i": i, "j": j, "vector": v.to_json()} for (i, j), v in inst.T.items() if not v.is_zero()],
    }
    if inst.group_generators is not None:
        out["group_generators"] = [g.to_json() for g in inst.group_generators]
    if inst.metadata:
        out["metadata"] = inst.metadata
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def corpus_names() -> list[str]:
    root = resources.files(CORPUS_PACKAGE)
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_text(name: str) -> str:
    if name.endswith(".json"):
        name = name[:-5]
    res = resources.files(CORPUS_PACKAGE) / f"{name}.json"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled instance named {name!r}")
    return res.read_text()


def load_corpus(name: str) -> InstanceFile:
    return parse_instance_text(corpus_text(name))


def resolve_instance(ref: str) -> InstanceFile:
    """Read a file path, falling back to a bundled corpus name."""
    p = Path(ref)
    if p.is_file():
        return parse_instance(p)
    try:
        return load_corpus(p.name)
    except FileNotFoundError:
        raise FileNotFoundError(f"no such file or bundled instance: {ref}") from None
