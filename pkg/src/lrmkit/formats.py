"""JSON documents for every structure, plus named generators.

A document is a dict with a ``kind`` key, a ``name`` and the tables of the
structure as dense integer arrays.  :func:`dumps` writes keys in sorted order
with one table row per line, so equal structures serialize byte-identically.
"""

from __future__ import annotations

import json
import re
from typing import Any

from .actions import SupportedAction
from .core import (
    BooleanAlgebra,
    FiniteMonoid,
    Partition,
    Semilattice,
    StructureError,
    as_table,
    as_vector,
)
from .em_sets import EMSet
from .etale import InverseView, partial_units
from .generators import (
    boolean_as_lrm,
    cyclic_group,
    full_transformation,
    powerset,
    pt,
    sym_inv,
    symmetric_group,
    trivial_plus,
)
from .matched_pair import MatchedPair
from .restriction import LeftRestrictionMonoid

KINDS = ("monoid", "semilattice", "boolean_algebra", "lrm", "matched_pair", "action", "em_set")


class ParseError(StructureError):
    """A document is malformed; the message starts with the offending field or line."""


# --------------------------------------------------------------------------
# text


def dumps(doc: dict) -> str:
    return _render(doc, 0) + "\n"


def _render(v: Any, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_render(v[k], depth + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, (list, tuple)):
        if any(isinstance(x, (dict, list, tuple)) for x in v):
            rows = [inner + _render(x, depth + 1) for x in v]
            return "[\n" + ",\n".join(rows) + "\n" + pad + "]"
        return json.dumps(list(v), separators=(",", ":"))
    return json.dumps(v)


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    return doc


# --------------------------------------------------------------------------
# values -> documents


def kind_of(obj) -> str:
    for cls, kind in ((FiniteMonoid, "monoid"), (BooleanAlgebra, "boolean_algebra"),
                      (Semilattice, "semilattice"), (LeftRestrictionMonoid, "lrm"),
                      (MatchedPair, "matched_pair"), (SupportedAction, "action"),
                      (EMSet, "em_set")):
        if isinstance(obj, cls):
            return kind
    raise StructureError(f"no document kind for {type(obj).__name__}")


def to_document(obj, name: str | None = None) -> dict:
    kind = kind_of(obj)
    doc = {"kind": kind, **_payload(obj, kind)}
    if name is not None:
        doc["name"] = name
    return doc


def _rows(t) -> list[list[int]]:
    return [list(r) for r in t]


def _payload(obj, kind: str) -> dict:
    if kind == "monoid":
        return {"table": _rows(obj.mult), "identity": obj.identity}
    if kind == "semilattice":
        return {"meet": _rows(obj.meet), "top": obj.top}
    if kind == "boolean_algebra":
        return {"meet": _rows(obj.meet), "join": _rows(obj.join),
                "complement": list(obj.complement), "top": obj.top, "bottom": obj.bottom}
    if kind == "lrm":
        out = {"table": _rows(obj.mult), "identity": obj.identity,
               "plus": list(obj.plus), "zero": obj.zero}
        if obj.labels is not None:
            out["labels"] = [_label_text(x) for x in obj.labels]
        return out
    if kind == "matched_pair":
        return {"E": to_document(obj.E), "M": to_document(obj.M),
                "act": _rows(obj.act), "cong": [list(c.blocks) for c in obj.cong]}
    if kind == "action":
        return {"over": to_document(obj.S), "act": _rows(obj.act),
                "support": list(obj.support), "boolean": obj.boolean_mode}
    if kind == "em_set":
        return {"pair": to_document(obj.pair), "act": _rows(obj.act),
                "eq": [list(c.blocks) for c in obj.eq], "boolean": obj.boolean}
    raise AssertionError(kind)


def _label_text(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, tuple) and all(v is None or isinstance(v, int) for v in x):
        return "[" + ",".join("-" if v is None else str(v) for v in x) + "]"
    return str(x)


def serialize(obj, name: str | None = None) -> str:
    return dumps(to_document(obj, name))


# --------------------------------------------------------------------------
# documents -> values


def from_document(doc: dict, path: str = "$", expect: str | None = None):
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected an object")
    kind = _field(doc, "kind", path)
    if kind not in KINDS:
        raise ParseError(f"{path}.kind: unknown kind {kind!r}")
    if expect is not None and kind != expect:
        raise ParseError(f"{path}.kind: expected {expect!r}, found {kind!r}")
    try:
        return _BUILDERS[kind](doc, path)
    except ParseError:
        raise
    except StructureError as exc:
        raise ParseError(f"{path}: {exc}") from None


def parse(text: str, expect: str | None = None):
    return from_document(loads(text), expect=expect)


def _field(doc: dict, key: str, path: str):
    if key not in doc:
        raise ParseError(f"{path}.{key}: missing")
    return doc[key]


def _table(doc, key, path, n_rows=None, n_cols=None, bound=None):
    rows = _field(doc, key, path)
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{path}.{key}: expected a list of rows")
    try:
        return as_table(rows, n_rows, n_cols, bound, f"{path}.{key}")
    except StructureError as exc:
        raise ParseError(str(exc)) from None


def _vector(doc, key, path, length=None, bound=None):
    v = _field(doc, key, path)
    if not isinstance(v, list):
        raise ParseError(f"{path}.{key}: expected a list")
    try:
        return as_vector(v, length, bound, f"{path}.{key}")
    except StructureError as exc:
        raise ParseError(str(exc).replace(f"{path}.{key}[0]", f"{path}.{key}")) from None


def _index(doc, key, path, bound, optional=False):
    v = doc.get(key) if optional else _field(doc, key, path)
    if v is None and optional:
        return None
    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < bound:
        raise ParseError(f"{path}.{key}: expected an index below {bound}, got {v!r}")
    return v


def _flag(doc, key, path) -> bool:
    v = doc.get(key, False)
    if not isinstance(v, bool):
        raise ParseError(f"{path}.{key}: expected true or false")
    return v


def _monoid(doc, path):
    t = _table(doc, "table", path)
    n = len(t)
    t = _table(doc, "table", path, n, n, n)
    return FiniteMonoid(t, _index(doc, "identity", path, n))


def _semilattice(doc, path):
    t = _table(doc, "meet", path)
    n = len(t)
    return Semilattice(_table(doc, "meet", path, n, n, n), _index(doc, "top", path, n))


def _boolean_algebra(doc, path):
    n = len(_table(doc, "meet", path))
    return BooleanAlgebra(
        _table(doc, "meet", path, n, n, n), _table(doc, "join", path, n, n, n),
        _vector(doc, "complement", path, n, n), _index(doc, "top", path, n),
        _index(doc, "bottom", path, n))


def _lrm(doc, path):
    mon = _monoid(doc, path)
    n = mon.size
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ParseError(f"{path}.labels: expected {n} labels")
    return LeftRestrictionMonoid(mon, _vector(doc, "plus", path, n, n),
                                 _index(doc, "zero", path, n, optional=True),
                                 None if labels is None else tuple(labels))


def _matched_pair(doc, path):
    Ed = _field(doc, "E", path)
    if not isinstance(Ed, dict) or Ed.get("kind") not in ("semilattice", "boolean_algebra"):
        raise ParseError(f"{path}.E: expected a semilattice or boolean_algebra document")
    E = from_document(Ed, f"{path}.E")
    M = from_document(_field(doc, "M", path), f"{path}.M", "monoid")
    act = _table(doc, "act", path, M.size, E.size, E.size)
    cong = _field(doc, "cong", path)
    if not isinstance(cong, list) or len(cong) != E.size:
        got = len(cong) if isinstance(cong, list) else type(cong).__name__
        raise ParseError(f"{path}.cong: expected {E.size} partitions (one per element of E), "
                         f"got {got}")
    parts = tuple(Partition(_vector({"c": c}, "c", f"{path}.cong[{i}]", M.size))
                  for i, c in enumerate(cong))
    return MatchedPair(E, M, act, parts)


def _action(doc, path):
    S = from_document(_field(doc, "over", path), f"{path}.over", "lrm")
    sup = _vector(doc, "support", path, None, S.size)
    act = _table(doc, "act", path, S.size, len(sup), len(sup))
    structure = None
    if _flag(doc, "boolean", path):
        structure = S.boolean if S.boolean is not None else _inverse_structure(S, path)
    return SupportedAction(S, act, sup, structure)


def _inverse_structure(S, path):
    # a Boolean inverse monoid carries its own joins
    U = partial_units(S)
    if S.zero is None or len(U.elements) != S.size:
        raise ParseError(f"{path}.boolean: the monoid is neither a Boolean LRM "
                         "nor an inverse monoid with zero")
    return InverseView(S, U)


def _em_set(doc, path):
    P = from_document(_field(doc, "pair", path), f"{path}.pair", "matched_pair")
    eq = _field(doc, "eq", path)
    if not isinstance(eq, list) or len(eq) != P.E.size:
        raise ParseError(f"{path}.eq: expected {P.E.size} partitions")
    parts = tuple(Partition(_vector({"c": c}, "c", f"{path}.eq[{i}]"))
                  for i, c in enumerate(eq))
    n = len(parts[0]) if parts else 0
    act = _table(doc, "act", path, P.M.size, n, n)
    return EMSet(P, act, parts, _flag(doc, "boolean", path))


_BUILDERS = {
    "monoid": _monoid,
    "semilattice": _semilattice,
    "boolean_algebra": _boolean_algebra,
    "lrm": _lrm,
    "matched_pair": _matched_pair,
    "action": _action,
    "em_set": _em_set,
}


# --------------------------------------------------------------------------
# generators


def _one_int(params, name):
    if len(params) != 1 or not isinstance(params[0], int):
        raise StructureError(f"{name} takes one integer parameter")
    return params[0]


GENERATORS = {
    "pt": lambda p: pt(_one_int(p, "pt")),
    "sym_inv": lambda p: sym_inv(_one_int(p, "sym_inv")),
    "powerset": lambda p: powerset(_one_int(p, "powerset")),
    "boolean_lrm": lambda p: boolean_as_lrm(_one_int(p, "boolean_lrm")),
    "transformations": lambda p: full_transformation(_one_int(p, "transformations")),
    "cyclic": lambda p: cyclic_group(_one_int(p, "cyclic")),
    "symmetric": lambda p: symmetric_group(_one_int(p, "symmetric")),
}


def generate(name: str, params=()) -> dict:
    """Document for a named generator.

    ``trivial_plus`` takes a monoid document (or a generator spec naming a
    monoid) as its parameter.
    """
    if name == "trivial_plus":
        if len(params) != 1:
            raise StructureError("trivial_plus takes one monoid")
        src = params[0]
        M = fixture(src) if isinstance(src, str) else from_document(src, expect="monoid")
        if not isinstance(M, FiniteMonoid):
            raise StructureError("trivial_plus needs a monoid")
        return to_document(trivial_plus(M), f"trivial_plus({_spec_name(src)})")
    if name not in GENERATORS:
        raise StructureError(f"unknown generator {name!r}")
    obj = GENERATORS[name](list(params))
    return to_document(obj, f"{name}({','.join(map(str, params))})")


def _spec_name(src) -> str:
    return src if isinstance(src, str) else src.get("name", "monoid")


_SPEC = re.compile(r"^([a-z_]+?)(?:\((.*)\)|(\d+))?$")


def fixture(spec: str):
    """Build a structure from a spec such as ``pt2``, ``pt(3)`` or ``trivial_plus(transformations2)``."""
    m = _SPEC.match(spec.strip())
    if not m:
        raise StructureError(f"cannot read generator spec {spec!r}")
    name, inner, digits = m.groups()
    if name == "trivial_plus":
        if not inner:
            raise StructureError("trivial_plus needs a monoid argument")
        return from_document(generate(name, [inner]))
    if digits is not None:
        params = [int(digits)]
    elif inner:
        try:
            params = [int(x) for x in inner.split(",")]
        except ValueError:
            raise StructureError(f"bad parameters in {spec!r}") from None
    else:
        params = []
    return from_document(generate(name, params))
