"""File formats: JSON input, DOT, relation text and polytope text exports.

Poset files are ``{"name", "elements", "covers", "root"?}``.  A fixture may
bundle both forms of one lattice under the keys ``ji_poset`` (join-irreducible
poset) and ``lattice`` (raw Hasse diagram).  Every export is a pure function
of the lattice, with nodes and edges in index order, so output is
byte-stable.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .diamonds import ideal_generators
from .errors import InvalidInput
from .lattice import Lattice, from_ji_spec, from_raw
from .poset import Poset, PosetSpec

EXAMPLE_FIXTURE = "worked-example.json"


def load_json(path) -> dict:
    """Parse ``path``; errors carry the file name and line."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InvalidInput(f"{path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise InvalidInput(f"{path}: expected a JSON object at the top level")
    return data


def _section(data: dict, key: str, path) -> PosetSpec:
    sub = data.get(key, data)
    if not isinstance(sub, dict):
        raise InvalidInput(f"{path}: '{key}' must be an object")
    spec = PosetSpec.from_dict(sub)
    if not spec.name:
        spec = PosetSpec(data.get("name") or Path(path).stem, spec.elements, spec.covers,
                         spec.root)
    return spec


def _with_context(path, build):
    try:
        return build()
    except InvalidInput as e:
        e.args = (f"{path}: {e.args[0] if e.args else e}",) + e.args[1:]
        raise


def load_ji(path, max_size: int | None = None) -> Lattice:
    """Lattice of a join-irreducible poset file (or a fixture's ``ji_poset``)."""
    spec = _section(load_json(path), "ji_poset", path)
    return _with_context(path, lambda: from_ji_spec(spec, max_size=max_size))


def load_raw(path) -> Lattice:
    """Lattice from a raw Hasse-diagram file (or a fixture's ``lattice``)."""
    spec = _section(load_json(path), "lattice", path)
    return _with_context(path, lambda: from_raw(spec))


def load_auto(path, max_size: int | None = None) -> Lattice:
    """``ji_poset`` wins in fixtures; a file with only ``lattice`` is raw;
    a bare poset file is read as a join-irreducible poset."""
    data = load_json(path)
    if "ji_poset" not in data and "lattice" in data:
        return load_raw(path)
    return load_ji(path, max_size)


def example_fixture_path() -> Path:
    return Path(str(resources.files("hibilat") / "data" / EXAMPLE_FIXTURE))


def example_lattice() -> Lattice:
    """The ten-element example built from its join-irreducible poset."""
    return load_ji(example_fixture_path())


def example_raw_lattice() -> Lattice:
    """The same example read from its Hasse diagram, with its original labels."""
    return load_raw(example_fixture_path())


# exports

def _quote(s) -> str:
    return json.dumps(str(s), ensure_ascii=False)


def _dot(name: str, labels, edges) -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    lines += [f"  n{i} [label={_quote(lab)}];" for i, lab in enumerate(labels)]
    lines += [f"  n{a} -> n{b};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_dot(L: Lattice) -> str:
    """Hasse diagram of ``L``; an edge ``a -> b`` means ``b`` covers ``a``."""
    return _dot(L.name, L.labels, L.covers())


def poset_dot(P: Poset) -> str:
    return _dot(P.name, [str(e) for e in P.elements], P.covers)


def jposet_dot(L: Lattice) -> str:
    """Join-irreducibles including the minimum."""
    return poset_dot(L.j_poset())


def relations_text(L: Lattice) -> str:
    """One generator per line with integer element ids."""
    return "".join(r.format() + "\n" for r in ideal_generators(L))


def element_table(L: Lattice) -> list[dict]:
    return [{"id": i, "label": L.label(i), "ideal": L.members(i)} for i in range(len(L))]


def lattice_json(L: Lattice) -> str:
    return json.dumps(L.to_dict(), indent=2, sort_keys=True) + "\n"
