"""One text format for every structure kind, with a kind discriminator.

Files are JSON with a fixed field order per kind; serialization is canonical
(two-space indent, trailing newline) so parse/serialize round-trips are byte
stable.  Parse errors carry line/column positions.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Union

from .core import (
    FiniteMultigroup,
    FiniteMultiring,
    InputError,
    bits,
    multigroup_from_labels,
    multiring_from_labels,
)
from .ordering_spaces import SignSpace, make_sign_space
from .real_semigroups import RealSemigroup, make_real_semigroup
from .special_groups import SpecialGroup, make_special_group

Structure = Union[FiniteMultigroup, FiniteMultiring, SpecialGroup,
                  RealSemigroup, SignSpace]

KINDS = ("multigroup", "multiring", "special_group", "real_semigroup",
         "sign_space")


def kind_of(obj: Structure) -> str:
    if isinstance(obj, FiniteMultiring):
        return "multiring"
    if isinstance(obj, FiniteMultigroup):
        return "multigroup"
    if isinstance(obj, SpecialGroup):
        return "special_group"
    if isinstance(obj, RealSemigroup):
        return "real_semigroup"
    if isinstance(obj, SignSpace):
        return "sign_space"
    raise InputError(f"unknown structure type {type(obj).__name__}")


def to_document(obj: Structure, name: Optional[str] = None,
                provenance: Optional[str] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"kind": kind_of(obj)}
    if name:
        doc["name"] = name
    if provenance:
        doc["provenance"] = provenance
    if isinstance(obj, FiniteMultiring):
        names = obj.names
        doc["elements"] = list(names)
        doc["zero"] = names[obj.zero]
        doc["one"] = names[obj.one]
        doc["neg"] = {names[i]: names[v] for i, v in enumerate(obj.neg)}
        doc["mul"] = [[names[v] for v in row] for row in obj.mul]
        doc["add"] = [[[names[c] for c in bits(cell)] for cell in row]
                      for row in obj.add]
    elif isinstance(obj, FiniteMultigroup):
        names = obj.carrier.names
        doc["elements"] = list(names)
        doc["identity"] = names[obj.identity]
        doc["inv"] = {names[i]: names[v] for i, v in enumerate(obj.inv)}
        doc["op"] = [[[names[c] for c in bits(cell)] for cell in row]
                     for row in obj.op]
    elif isinstance(obj, SpecialGroup):
        names = obj.names
        doc["elements"] = list(names)
        doc["one"] = names[obj.one]
        doc["minus_one"] = names[obj.minus_one]
        doc["mul"] = [[names[v] for v in row] for row in obj.mul]
        doc["iso"] = sorted([names[a], names[b], names[c], names[d]]
                            for (a, b, c, d) in obj.iso)
    elif isinstance(obj, RealSemigroup):
        names = obj.names
        doc["elements"] = list(names)
        doc["one"] = names[obj.one]
        doc["zero"] = names[obj.zero]
        doc["minus_one"] = names[obj.minus_one]
        doc["mul"] = [[names[v] for v in row] for row in obj.mul]
        doc["d"] = sorted([names[a], names[b], names[c]]
                          for b in range(obj.size) for c in range(obj.size)
                          for a in bits(obj.d[b][c]))
    else:
        doc["mode"] = obj.mode
        doc["points"] = list(obj.points)
        doc["functions"] = [list(f) for f in obj.functions]
    return doc


def serialize(obj: Structure, name: Optional[str] = None,
              provenance: Optional[str] = None) -> str:
    return json.dumps(to_document(obj, name, provenance), indent=2,
                      ensure_ascii=False) + "\n"


def _require(doc: dict, key: str, kind: str) -> Any:
    if key not in doc:
        raise InputError(f"{kind} file is missing field {key!r}")
    return doc[key]


def from_document(doc: dict[str, Any]) -> Structure:
    if not isinstance(doc, dict):
        raise InputError("structure file must contain a JSON object")
    kind = _require(doc, "kind", "structure")
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of "
                         + ", ".join(KINDS))
    elements = doc.get("elements")
    if kind != "sign_space":
        if not isinstance(elements, list) or not all(
                isinstance(e, str) for e in elements):
            raise InputError("elements must be a list of labels")
    if kind == "multiring":
        return multiring_from_labels(
            elements,
            _require(doc, "add", kind),
            _require(doc, "mul", kind),
            _require(doc, "neg", kind),
            _require(doc, "zero", kind),
            _require(doc, "one", kind),
        )
    if kind == "multigroup":
        return multigroup_from_labels(
            elements,
            _require(doc, "op", kind),
            _require(doc, "inv", kind),
            _require(doc, "identity", kind),
        )
    if kind == "special_group":
        return make_special_group(
            elements,
            _require(doc, "mul", kind),
            _require(doc, "minus_one", kind),
            [tuple(q) for q in _require(doc, "iso", kind)],
            one=_require(doc, "one", kind),
        )
    if kind == "real_semigroup":
        return make_real_semigroup(
            elements,
            _require(doc, "mul", kind),
            _require(doc, "one", kind),
            _require(doc, "zero", kind),
            _require(doc, "minus_one", kind),
            [tuple(t) for t in _require(doc, "d", kind)],
        )
    return make_sign_space(
        _require(doc, "mode", kind),
        _require(doc, "points", kind),
        _require(doc, "functions", kind),
    )


def parse(text: str) -> Structure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(
            f"malformed structure file at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def read_structure(path: str) -> Structure:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def write_structure(path: str, obj: Structure, name: Optional[str] = None,
                    provenance: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj, name, provenance))


def structure_name(doc_or_path: str) -> str:
    import os
    return os.path.splitext(os.path.basename(doc_or_path))[0]


def corpus_documents() -> dict[str, Structure]:
    """The named structures shipped as files under corpus/."""
    from . import corpus as c
    out: dict[str, Structure] = {}
    out.update(c.corpus_multirings())
    for name, g in c.corpus_special_groups().items():
        out[name] = g
    for name, s in c.corpus_real_semigroups().items():
        out[name] = s
    for name, s in c.corpus_sign_spaces().items():
        out[name] = s
    return out


def write_corpus(directory: str) -> list[str]:
    import os
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, obj in sorted(corpus_documents().items()):
        path = os.path.join(directory, f"{name}.mrs")
        write_structure(path, obj, name=name)
        written.append(path)
    return written
