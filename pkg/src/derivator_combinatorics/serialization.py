"""
JSON readers and writers for categories, functors, simplicial sets and reports.

JSON has no tuples, so labels are frozen on the way in (lists become
tuples, recursively) and written back as arrays.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Union

import networkx as nx

from derivator_combinatorics.builder import CategoryBuilder
from derivator_combinatorics.errors import (
    CategoryLawError,
    FormatError,
    NotAPosetError,
)
from derivator_combinatorics.fincat import FinCat, Functor, build_poset
from derivator_combinatorics.simplicial import SSet, validate_sset


def freeze(value: Any) -> Any:
    """Turn JSON arrays into tuples, recursively."""
    if isinstance(value, list):
        return tuple(freeze(v) for v in value)
    return value


def thaw(value: Any) -> Any:
    """Turn tuples into lists, recursively, for ``json.dumps``."""
    if isinstance(value, (tuple, list)):
        return [thaw(v) for v in value]
    if isinstance(value, dict):
        return {k: thaw(v) for k, v in value.items()}
    return value


def read_json(filepath: Union[str, Path]) -> Any:
    """
    Load a JSON file.

    Raises:
        FormatError: If the file is missing or not valid JSON
    """
    filepath = Path(filepath)
    try:
        with open(filepath, encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise FormatError(f"file not found: {filepath}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{filepath}: invalid JSON ({exc})") from exc


def write_json(data: Any, filepath: Union[str, Path], indent: int = 2) -> None:
    filepath = Path(filepath)
    filepath.parent.mkdir(parents=True, exist_ok=True)
    with open(filepath, "w", encoding="utf-8") as f:
        json.dump(thaw(data), f, indent=indent, ensure_ascii=False, sort_keys=True)


def _require(data: Any, key: str, what: str) -> Any:
    if not isinstance(data, Mapping) or key not in data:
        raise FormatError(f"{what} needs a {key!r} field")
    return data[key]


def dump_fincat(category: FinCat) -> Dict[str, Any]:
    """
    Serialize a category.

    Posets are written with their Hasse diagram as ``covers``; anything
    else as named arrows with identities and a composition table.
    """
    if category.is_poset:
        graph = nx.DiGraph()
        graph.add_nodes_from(category.objects)
        graph.add_edges_from((m[0], m[1]) for m in category.morphisms if m[0] != m[1])
        reduced = nx.transitive_reduction(graph)
        covers = sorted(
            reduced.edges, key=lambda e: (category.position(e[0]), category.position(e[1]))
        )
        return {
            "poset": {
                "objects": thaw(list(category.objects)),
                "covers": thaw([list(edge) for edge in covers]),
            }
        }
    name = category.name
    compose = []
    for f in category.morphisms:
        for y in category.successors(f[1]):
            for g in category.hom(f[1], y):
                compose.append([name(g), name(f), name(category.compose(g, f))])
    return {
        "general": {
            "objects": thaw(list(category.objects)),
            "arrows": [[name(m), thaw(m[0]), thaw(m[1])] for m in category.morphisms],
            "identities": [[thaw(x), name(category.identity(x))] for x in category.objects],
            "compose": compose,
        }
    }


def load_fincat(data: Mapping[str, Any]) -> FinCat:
    """
    Read a category written by :func:`dump_fincat` or by hand.

    Raises:
        FormatError: If the layout is wrong
        NotAPosetError: If poset covers contain a cycle
        CategoryLawError: If a general presentation breaks a category law
    """
    if isinstance(data, Mapping) and "poset" in data:
        poset = data["poset"]
        objects = freeze(_require(poset, "objects", "poset"))
        covers = freeze(poset.get("covers", []))
        if not all(isinstance(c, tuple) and len(c) == 2 for c in covers):
            raise FormatError("poset covers must be pairs")
        return build_poset(objects, covers)
    if isinstance(data, Mapping) and "general" in data:
        general = data["general"]
        builder = CategoryBuilder()
        try:
            builder.objects(freeze(_require(general, "objects", "category")))
            identities = {freeze(obj): name for obj, name in general.get("identities", [])}
            for name, source, target in general.get("arrows", []):
                source, target = freeze(source), freeze(target)
                if source == target and identities.get(source) == name:
                    builder.identity(source, name)
                else:
                    builder.arrow(name, source, target)
            for g, f, gf in general.get("compose", []):
                builder.compose(g, f, gf)
        except (CategoryLawError, NotAPosetError):
            raise
        except (TypeError, ValueError) as exc:
            raise FormatError(f"invalid category presentation: {exc}") from exc
        return builder.build()
    raise FormatError("category JSON must have a 'poset' or 'general' key")


def dump_functor(functor: Functor) -> Dict[str, Any]:
    data = {
        "source": dump_fincat(functor.source),
        "target": dump_fincat(functor.target),
        "objects": [[thaw(x), thaw(functor(x))] for x in functor.source.objects],
    }
    if not functor.target.is_thin:
        name_source, name_target = functor.source.name, functor.target.name
        data["morphisms"] = [
            [name_source(m), name_target(functor.fmap(m))] for m in functor.source.morphisms
        ]
    if functor.name:
        data["name"] = functor.name
    return data


def load_functor(data: Mapping[str, Any]) -> Functor:
    """
    Read ``{"source", "target", "objects", "morphisms"?}``.

    Morphisms are given by display name; they may be omitted for a
    thin target.

    Raises:
        FormatError: If the layout is wrong or a name is unknown
        FunctorError: If the object map is incomplete or leaves the target
    """
    source = load_fincat(_require(data, "source", "functor"))
    target = load_fincat(_require(data, "target", "functor"))
    try:
        object_map = {freeze(x): freeze(y) for x, y in _require(data, "objects", "functor")}
        morphism_map = None
        if data.get("morphisms") is not None:
            morphism_map = {
                source.morphism_named(f): target.morphism_named(g) for f, g in data["morphisms"]
            }
    except (TypeError, ValueError, KeyError) as exc:
        raise FormatError(f"invalid functor: {exc}") from exc
    return Functor(source, target, object_map, morphism_map, name=data.get("name", ""))


def dump_sset(X: SSet) -> Dict[str, Any]:
    """Face and degeneracy index tables for every level."""
    positions = [{x: p for p, x in enumerate(X.level(k))} for k in range(X.trunc + 1)]
    faces = {
        str(k): [[positions[k - 1][X.face(x, i, k)] for x in X.level(k)] for i in range(k + 1)]
        for k in range(1, X.trunc + 1)
    }
    degeneracies = {
        str(k): [
            [positions[k + 1][X.degeneracy(x, j, k)] for x in X.level(k)] for j in range(k + 1)
        ]
        for k in range(X.trunc)
    }
    return {
        "trunc": X.trunc,
        "levels": thaw([list(X.level(k)) for k in range(X.trunc + 1)]),
        "faces": faces,
        "degeneracies": degeneracies,
    }


def _index_table(table: Any, label: str, rows: int, length: int, bound: int) -> List[List[int]]:
    """Check an index table is ``rows`` lists of ``length`` positions in ``range(bound)``."""
    shape_ok = (
        isinstance(table, list)
        and len(table) == rows
        and all(isinstance(row, list) and len(row) == length for row in table)
    )
    if not shape_ok:
        raise FormatError(f"{label} must have {rows} rows of length {length}")
    for i, row in enumerate(table):
        for p, entry in enumerate(row):
            if isinstance(entry, bool) or not isinstance(entry, int) or not 0 <= entry < bound:
                raise FormatError(
                    f"{label}[{i}][{p}] must be a position below {bound}, got {entry!r}",
                    witness=(i, p),
                )
    return table


def load_sset(data: Mapping[str, Any], validate: bool = True, seed: int = 0) -> SSet:
    """
    Rebuild a simplicial set from face and degeneracy tables.

    Raises:
        FormatError: If the tables are malformed or (with ``validate``)
            the action they define is not simplicial
    """
    trunc = _require(data, "trunc", "simplicial set")
    levels = _require(data, "levels", "simplicial set")
    if not isinstance(trunc, int) or not isinstance(levels, list) or len(levels) != trunc + 1:
        raise FormatError(f"expected {trunc!r} + 1 levels")
    if not all(isinstance(level, list) for level in levels):
        raise FormatError("every level must be a list of labels")
    levels = [list(freeze(level)) for level in levels]
    try:
        faces = {int(k): v for k, v in data.get("faces", {}).items()}
        degeneracies = {int(k): v for k, v in data.get("degeneracies", {}).items()}
    except (AttributeError, TypeError, ValueError) as exc:
        raise FormatError(f"invalid face/degeneracy tables: {exc}") from exc
    for k in range(1, trunc + 1):
        faces[k] = _index_table(faces.get(k), f"faces[{k}]", k + 1, len(levels[k]), len(levels[k - 1]))
    for k in range(trunc):
        degeneracies[k] = _index_table(
            degeneracies.get(k), f"degeneracies[{k}]", k + 1, len(levels[k]), len(levels[k + 1])
        )
    X = SSet.from_tables(trunc, levels, faces, degeneracies, name=data.get("name", ""))
    if validate:
        report = validate_sset(X, seed=seed)
        if not report.passed:
            raise FormatError(f"not a simplicial set: {report.violation}", witness=report.witness)
    return X


def dump_report(report: Any) -> str:
    """Machine-readable report with sorted keys."""
    return json.dumps(thaw(report.to_dict()), indent=2, sort_keys=True, ensure_ascii=False, default=repr)


def dump_object(data: Any, indent: Optional[int] = 2) -> str:
    return json.dumps(thaw(data), indent=indent, sort_keys=True, ensure_ascii=False, default=repr)
