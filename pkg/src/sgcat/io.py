"""JSON file formats for semigroups, actions, categories and functors."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .cat import FiniteCategory, Functor, build_karoubi, build_schutzcat
from .core import Semigroup, from_cayley_table, generate_from_transformations
from .errors import SgcatError
from .invariants import SAction, validate_action

SCHEMA = 1


class ParseError(SgcatError, ValueError):
    """Input is not well-formed JSON of the expected shape."""


def _read(source) -> tuple[Any, Path | None]:
    if isinstance(source, dict):
        return source, None
    if not isinstance(source, (str, Path)):
        raise ParseError(f"expected a path or a JSON object, got {type(source).__name__}")
    path = Path(source)
    try:
        return json.loads(path.read_text()), path
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def semigroup_from_dict(d: dict) -> Semigroup:
    if not isinstance(d, dict):
        raise ParseError("semigroup description must be a JSON object")
    if "table" in d:
        table = d["table"]
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise ParseError("'table' must be a list of lists")
        if "order" in d and d["order"] != len(table):
            raise ParseError(f"'order' is {d['order']} but table has {len(table)} rows")
        return from_cayley_table(table, d.get("names"))
    if "generators" in d:
        gens = d["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
            raise ParseError("'generators' must be a list of image lists")
        if "degree" in d and any(len(g) != d["degree"] for g in gens):
            raise ParseError("generator length differs from 'degree'")
        S, _ = generate_from_transformations(gens)
        return S
    raise ParseError("semigroup file needs 'table' or 'generators'")


def load_semigroup(source) -> Semigroup:
    """From a path, a fixture name, or an already-parsed dict."""
    if isinstance(source, str) and not Path(source).exists():
        from .corpus import FIXTURE_NAMES, fixture_path
        if source in FIXTURE_NAMES:
            source = fixture_path(source)
    d, _ = _read(source)
    return semigroup_from_dict(d)


def semigroup_to_dict(S: Semigroup) -> dict:
    return {"order": S.order, "table": [list(r) for r in S.table], "names": list(S.names)}


def load_action(source, semigroup: Semigroup | None = None) -> SAction:
    """An action from a path, an action fixture name, or a dict.

    When ``semigroup`` is given it is used and the file's own "semigroup"
    entry (optional then) is ignored.
    """
    from .corpus import ACTION_FIXTURES, action_fixture_path
    if isinstance(source, str) and not Path(source).exists() and source in ACTION_FIXTURES:
        source = action_fixture_path(source)
    d, path = _read(source)
    if not isinstance(d, dict):
        raise ParseError("action description must be a JSON object")
    try:
        qsize, table = d["qsize"], d["table"]
    except KeyError:
        raise ParseError("action file needs 'qsize' and 'table'") from None
    if semigroup is None:
        if "semigroup" not in d:
            raise ParseError("action file names no semigroup")
        sg = d["semigroup"]
        if isinstance(sg, dict):
            semigroup = semigroup_from_dict(sg)
        else:
            if path is not None and (path.parent / str(sg)).exists():
                sg = path.parent / str(sg)
            semigroup = load_semigroup(sg)
    if not isinstance(qsize, int) or not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError("'qsize' must be an integer and 'table' a list of lists")
    return validate_action(semigroup, qsize, table, d.get("states"))


def action_to_dict(A: SAction) -> dict:
    return {"semigroup": semigroup_to_dict(A.semigroup), "qsize": A.qsize,
            "states": list(A.states), "table": [list(r) for r in A.table]}


def category_to_dict(C: FiniteCategory) -> dict:
    """Objects and morphism triples; composition is recomputed on load."""
    return {"schema": SCHEMA, "kind": C.kind,
            "semigroup": None if C.semigroup is None else semigroup_to_dict(C.semigroup),
            "objects": list(C.objects),
            "morphisms": [{"dom": C.dom[m], "cod": C.cod[m], "payload": list(C.payloads[m])}
                          for m in range(C.n_morphisms)]}


def category_from_dict(d: dict) -> FiniteCategory:
    builders = {"karoubi": build_karoubi, "schutzenberger": build_schutzcat}
    if d.get("kind") not in builders or d.get("semigroup") is None:
        raise ParseError("only Karoubi and Schützenberger categories can be reloaded")
    C = builders[d["kind"]](semigroup_from_dict(d["semigroup"]))
    if [list(p) for p in C.payloads] != [m["payload"] for m in d["morphisms"]]:
        raise ParseError("stored morphisms do not match the rebuilt category")
    return C


def functor_to_dict(F: Functor, source_ref: str, target_ref: str) -> dict:
    return {"schema": SCHEMA, "source": source_ref, "target": target_ref,
            "source_kind": F.source.kind, "target_kind": F.target.kind,
            "object_map": list(F.obj), "morphism_map": list(F.mor)}


def functor_from_dict(d: dict, source: FiniteCategory, target: FiniteCategory) -> Functor:
    try:
        obj, mor = tuple(d["object_map"]), tuple(d["morphism_map"])
    except (KeyError, TypeError):
        raise ParseError("functor file needs 'object_map' and 'morphism_map'") from None
    if len(obj) != source.n_objects or len(mor) != source.n_morphisms:
        raise ParseError("functor maps do not match the source category")
    if not all(isinstance(o, int) and 0 <= o < target.n_objects for o in obj) or \
            not all(isinstance(m, int) and 0 <= m < target.n_morphisms for m in mor):
        raise ParseError("functor maps point outside the target category")
    return Functor(source, target, obj, mor)


def dumps(obj) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
