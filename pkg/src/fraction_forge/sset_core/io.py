"""JSON serialization for simplicial sets and finite categories.

SSet files: ``{"dim_bound": n, "cells": [[names per dim]],
"faces": {"<cell>": [[word, "<cell>"], ...]}}`` where ``word`` is the
strictly decreasing degeneracy word of the face's normal form.
Marked variants add ``"marked": [...]``.  All names are strings.
"""

import json

from .cat import FinCategory, Morphism
from .ops import surj_from_word, word_from_surj
from .sset import Simplex, SSet


class FormatError(ValueError):
    """Raised for malformed input files; message pinpoints the offender."""


def stringify(name):
    """Canonical printable form of an internal cell name."""
    if isinstance(name, str):
        return name
    if isinstance(name, (int,)):
        return str(name)
    if isinstance(name, frozenset):
        return "{" + ",".join(sorted(stringify(x) for x in name)) + "}"
    if isinstance(name, tuple):
        return "(" + ",".join(stringify(x) for x in name) + ")"
    return str(name)


def stringified_sset(X):
    """Copy of ``X`` with cell names replaced by canonical strings."""
    ren = {}
    for cs in X.cells:
        for c in cs:
            s = stringify(c)
            if s in ren.values():
                raise FormatError(f"cell name collision under stringify: {s}")
            ren[c] = s
    cells = [[ren[c] for c in cs] for cs in X.cells]
    faces = {ren[c]: [Simplex(s.op, ren[s.cell]) for s in fs]
             for c, fs in X.faces.items()}
    return SSet(X.dim_bound, cells, faces), ren


def sset_to_dict(X, marked=None):
    Y, ren = stringified_sset(X)
    d = {
        "dim_bound": Y.dim_bound,
        "cells": [list(cs) for cs in Y.cells],
        "faces": {c: [[word_from_surj(s.op), s.cell] for s in fs]
                  for c, fs in sorted(Y.faces.items())},
    }
    if marked is not None:
        d["marked"] = sorted(ren[c] for c in marked)
    return d


def sset_from_dict(d, where="<input>"):
    def fail(msg):
        raise FormatError(f"{where}: {msg}")

    if not isinstance(d, dict):
        fail("expected a JSON object")
    for key in ("dim_bound", "cells", "faces"):
        if key not in d:
            fail(f"missing key {key!r}")
    bound = d["dim_bound"]
    if not isinstance(bound, int) or bound < 0:
        fail("dim_bound must be a non-negative integer")
    cells = d["cells"]
    if not isinstance(cells, list) or any(not isinstance(cs, list) for cs in cells):
        fail("cells must be a list of per-dimension lists")
    for cs in cells:
        for c in cs:
            if not isinstance(c, str):
                fail(f"cell name {c!r} is not a string")
    dims = {c: i for i, cs in enumerate(cells) for c in cs}
    faces = {}
    for c, fs in d["faces"].items():
        if c not in dims:
            fail(f"faces given for unknown cell {c!r}")
        n = dims[c]
        if not isinstance(fs, list) or len(fs) != n + 1:
            fail(f"cell {c!r} needs exactly {n + 1} face entries")
        out = []
        for i, entry in enumerate(fs):
            if (not isinstance(entry, list) or len(entry) != 2
                    or not isinstance(entry[1], str)):
                fail(f"face {i} of {c!r} must be [word, cell]")
            word, tgt = entry
            if tgt not in dims:
                fail(f"face {i} of {c!r} targets unknown cell {tgt!r}")
            try:
                op = surj_from_word(word, n - 1)
            except ValueError as e:
                fail(f"face {i} of {c!r}: {e}")
            if len(op) - 1 - len(word) != dims[tgt]:
                fail(f"face {i} of {c!r}: word length does not match "
                     f"target dimension")
            out.append(Simplex(op, tgt))
        faces[c] = out
    for c, n in dims.items():
        if n >= 1 and c not in faces:
            fail(f"cell {c!r} lacks face data")
    try:
        return SSet(bound, cells, faces)
    except ValueError as e:
        fail(str(e))


def marked_sset_from_dict(d, where="<input>"):
    X = sset_from_dict(d, where)
    marked = d.get("marked", [])
    for c in marked:
        if not X.has_cell(c) or X.dim_of(c) != 1:
            raise FormatError(f"{where}: marked entry {c!r} is not a 1-cell")
    return X, set(marked)


def cat_to_dict(C, marked=None):
    d = {
        "objects": list(C.objects),
        "morphisms": [{"id": m.name, "dom": m.dom, "cod": m.cod}
                      for m in C.morphisms.values()],
        "identities": dict(C.identities),
        "comp": sorted([g, f, h] for (g, f), h in C.comp.items()
                       if not (C.is_identity(g) or C.is_identity(f))),
    }
    if marked is not None:
        d["marked"] = sorted(marked)
    return d


def cat_from_dict(d, where="<input>"):
    def fail(msg):
        raise FormatError(f"{where}: {msg}")

    if not isinstance(d, dict):
        fail("expected a JSON object")
    for key in ("objects", "morphisms", "identities", "comp"):
        if key not in d:
            fail(f"missing key {key!r}")
    morphs = []
    for m in d["morphisms"]:
        if not isinstance(m, dict) or set(m) - {"id", "dom", "cod"}:
            fail(f"malformed morphism entry {m!r}")
        morphs.append(Morphism(m["id"], m["dom"], m["cod"]))
    comp = {}
    for entry in d["comp"]:
        if not isinstance(entry, list) or len(entry) != 3:
            fail(f"malformed comp entry {entry!r}")
        g, f, h = entry
        comp[(g, f)] = h
    idents = d["identities"]
    names = {m.name: m for m in morphs}
    # identity composites may be omitted from the file; fill them in
    for m in morphs:
        for x, e in idents.items():
            if e not in names:
                fail(f"identity {e!r} of {x!r} is not a listed morphism")
        if m.dom in idents:
            comp.setdefault((m.name, idents[m.dom]), m.name)
        if m.cod in idents:
            comp.setdefault((idents[m.cod], m.name), m.name)
    try:
        return FinCategory(d["objects"], morphs, idents, comp)
    except ValueError as e:
        fail(str(e))


def marked_cat_from_dict(d, where="<input>"):
    C = cat_from_dict(d, where)
    marked = d.get("marked", [])
    for f in marked:
        if f not in C.morphisms:
            raise FormatError(f"{where}: marked entry {f!r} is not a morphism")
    return C, set(marked)


def load(path, kind):
    """Load and validate a JSON file of the given kind."""
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}")
    loaders = {
        "sset": sset_from_dict,
        "marked_sset": marked_sset_from_dict,
        "cat": cat_from_dict,
        "marked_cat": marked_cat_from_dict,
    }
    return loaders[kind](d, where=str(path))


def dumps(obj):
    """Canonical deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
