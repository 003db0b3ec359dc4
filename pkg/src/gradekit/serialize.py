"""Canonical JSON documents for matrices, algebras, generator sets and gradings.

Every scalar is written exactly.  A rational entry is a string "p/q" (or
"p"); any other entry is the list of its rational coefficients on
1, z, z^2, ... where z = exp(2 pi i / n) and n is the conductor.  Keys are
emitted in a fixed order, so serialising a parsed canonical document
reproduces its bytes.

Document kinds
--------------
matrix      {"kind", "conductor", "rows", "cols", "entries"}
algebra     {"kind", "conductor", "type", "m", ["K"], "dim", "name"}
generators  {"kind", "conductor", "algebra", "generators", ["candidates"]}
grading     {"kind", "conductor", "algebra", "profile", "subspaces"}
"""
from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from gradekit.autos import AlgebraMap, inner_auto, outer_auto
from gradekit.errors import GradeKitError, SchemaError
from gradekit.exactmath import (
    Cyclotomic,
    CyclotomicField,
    ScalarMatrix,
    canonicalize_raw,
    field,
)
from gradekit.gradings import Grading, profile_string
from gradekit.liealg import MatrixLieAlgebra, make_orthogonal, make_sl, make_symplectic

__all__ = [
    "dumps",
    "loads",
    "scalar_to_json",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "algebra_to_json",
    "algebra_from_json",
    "map_to_json",
    "map_from_json",
    "generators_to_json",
    "generators_from_json",
    "grading_to_json",
    "grading_from_json",
    "parse_document",
]


def dumps(doc: Any) -> str:
    """Canonical text: two-space indent, insertion-ordered keys, final newline."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError("line 1: top-level value must be an object")
    return doc


def _need(obj, key, path, typ=None):
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    if key not in obj:
        raise SchemaError(f"{path}: missing field '{key}'")
    val = obj[key]
    if typ is not None and (not isinstance(val, typ) or isinstance(val, bool)):
        raise SchemaError(f"{path}.{key}: expected {_typename(typ)}")
    return val


def _typename(typ):
    if isinstance(typ, tuple):
        return " or ".join(t.__name__ for t in typ)
    return getattr(typ, "__name__", str(typ))


class _Reader:
    """Reads scalars written at conductor ``n`` into the field of conductor
    ``target`` (a multiple of n) through zeta_n = zeta_target^(target/n)."""

    def __init__(self, n, target=None, path="$"):
        self.src = _field(n, path)
        self.fld = self.src if target is None else _field(target, path)
        if self.fld.n % self.src.n:
            raise SchemaError(
                f"{path}.conductor: document conductor {n} does not divide "
                f"the session conductor {self.fld.n}")
        self.stride = self.fld.n // self.src.n

    def entry(self, e, path) -> Cyclotomic:
        if isinstance(e, list):
            if len(e) != self.src.degree:
                raise SchemaError(
                    f"{path}: expected {self.src.degree} coefficients for conductor "
                    f"{self.src.n}, got {len(e)}")
            coeffs = [Fraction(0)] * ((len(e) - 1) * self.stride + 1)
            for i, c in enumerate(e):
                coeffs[i * self.stride] = _rational(c, f"{path}[{i}]")
            return self.fld.from_coeffs(coeffs)
        return self.fld.coerce(_rational(e, path))


def _reader_for(obj, conductor, path) -> _Reader:
    return _Reader(_need(obj, "conductor", path, int), conductor, path)


def _check_conductor(obj, rd: _Reader, path):
    n = obj.get("conductor", rd.src.n) if isinstance(obj, dict) else rd.src.n
    if n != rd.src.n:
        raise SchemaError(f"{path}.conductor: {n} differs from the document conductor {rd.src.n}")


def _rational(s, path) -> Fraction:
    if isinstance(s, bool):
        raise SchemaError(f"{path}: expected a rational string")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"{path}: expected a rational string such as \"-3/4\"")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise SchemaError(f"{path}: {s!r} is not an exact rational") from None


# ---------------------------------------------------------------- scalars

def _entry_to_json(x: Cyclotomic):
    if x.is_rational():
        return str(x.to_fraction())
    return [str(c) for c in x.coeffs]


def scalar_to_json(x: Cyclotomic) -> dict:
    return {"conductor": x.field.n, "coeffs": [str(c) for c in x.coeffs]}


def scalar_from_json(obj, conductor: int | None = None, path="$") -> Cyclotomic:
    rd = _reader_for(obj, conductor, path)
    coeffs = _need(obj, "coeffs", path, list)
    return rd.entry(coeffs, f"{path}.coeffs")


def _field(n, path) -> CyclotomicField:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError(f"{path}.conductor: expected a positive integer")
    return field(n)


# --------------------------------------------------------------- matrices

def matrix_to_json(A: ScalarMatrix) -> dict:
    return {
        "kind": "matrix",
        "conductor": A.field.n,
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[_entry_to_json(x) for x in row] for row in A.entries],
    }


def matrix_from_json(obj, conductor: int | None = None, path="$") -> ScalarMatrix:
    return _matrix(obj, _reader_for(obj, conductor, path), path)


def _matrix(obj, rd: _Reader, path) -> ScalarMatrix:
    _check_conductor(obj, rd, path)
    r = _need(obj, "rows", path, int)
    c = _need(obj, "cols", path, int)
    entries = _need(obj, "entries", path, list)
    if len(entries) != r or r < 1:
        raise SchemaError(f"{path}.entries: expected {r} rows, got {len(entries)}")
    out = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != c:
            raise SchemaError(f"{path}.entries[{i}]: expected a list of {c} entries")
        out.append([rd.entry(e, f"{path}.entries[{i}][{j}]") for j, e in enumerate(row)])
    return ScalarMatrix.of(rd.fld, out)


# --------------------------------------------------------------- algebras

def algebra_to_json(L: MatrixLieAlgebra) -> dict:
    recipe = getattr(L, "recipe", ("basis",))
    doc = {"kind": "algebra", "conductor": L.field.n}
    if recipe[0] == "sl":
        doc.update(type="sl", m=recipe[1])
    elif recipe[0] in ("o", "sp"):
        doc.update(type=recipe[0], m=L.m, K=matrix_to_json(recipe[1]))
    else:
        doc.update(type="basis", m=L.m, basis=[matrix_to_json(B) for B in L.basis])
    doc.update(dim=L.dim, name=L.name)
    return doc


def algebra_from_json(obj, conductor: int | None = None, path="$") -> MatrixLieAlgebra:
    return _algebra(obj, _reader_for(obj, conductor, path), path)


@lru_cache(maxsize=32)
def _basis_algebra(basis: tuple, name: str) -> MatrixLieAlgebra:
    return MatrixLieAlgebra(list(basis), name=name)


def _algebra(obj, rd: _Reader, path) -> MatrixLieAlgebra:
    _check_conductor(obj, rd, path)
    typ = _need(obj, "type", path, str)
    m = _need(obj, "m", path, int)
    try:
        if typ == "sl":
            L = make_sl(m, rd.fld.n)
        elif typ in ("o", "sp"):
            Kmat = _matrix(_need(obj, "K", path), rd, f"{path}.K")
            L = make_orthogonal(Kmat) if typ == "o" else make_symplectic(Kmat)
        elif typ == "basis":
            mats = _need(obj, "basis", path, list)
            name = obj.get("name", "")
            L = _basis_algebra(tuple(_matrix(B, rd, f"{path}.basis[{i}]")
                                     for i, B in enumerate(mats)), str(name))
        else:
            raise SchemaError(f"{path}.type: unknown algebra type {typ!r}")
    except SchemaError:
        raise
    except GradeKitError as e:
        raise SchemaError(f"{path}: {e}") from None
    if L.m != m:
        raise SchemaError(f"{path}.m: algebra has matrix size {L.m}, file says {m}")
    if "dim" in obj and obj["dim"] != L.dim:
        raise SchemaError(f"{path}.dim: algebra has dimension {L.dim}, file says {obj['dim']}")
    return L


# ------------------------------------------------------------ automorphisms

def map_to_json(g: AlgebraMap) -> dict:
    if g.provenance == "inner" and g.defining is not None:
        return {"type": "inner", "A": matrix_to_json(g.defining)}
    if g.provenance == "outer" and g.defining is not None:
        return {"type": "outer", "K": matrix_to_json(g.defining)}
    return {"type": "coordinates", "matrix": matrix_to_json(g.matrix)}


def map_from_json(L: MatrixLieAlgebra, obj, path="$", rd: _Reader | None = None) -> AlgebraMap:
    if rd is None:
        rd = _Reader(L.field.n)
    typ = _need(obj, "type", path, str)
    try:
        if typ == "inner":
            return inner_auto(L, _matrix(_need(obj, "A", path), rd, f"{path}.A"))
        if typ == "outer":
            return outer_auto(L, _matrix(_need(obj, "K", path), rd, f"{path}.K"))
        if typ == "coordinates":
            M = _matrix(_need(obj, "matrix", path), rd, f"{path}.matrix")
            return AlgebraMap(L, M, "user")
    except SchemaError:
        raise
    except GradeKitError as e:
        raise SchemaError(f"{path}: {e}") from None
    raise SchemaError(f"{path}.type: unknown map type {typ!r}")


def generators_to_json(L: MatrixLieAlgebra, gens: Sequence[AlgebraMap],
                       candidates: Sequence[Sequence] | None = None) -> dict:
    doc = {
        "kind": "generators",
        "conductor": L.field.n,
        "algebra": algebra_to_json(L),
        "generators": [map_to_json(g) for g in gens],
    }
    if candidates is not None:
        doc["candidates"] = [[_entry_to_json(L.field.coerce(c)) for c in cs] for cs in candidates]
    return doc


def generators_from_json(doc, conductor: int | None = None, path="$"):
    """``(algebra, generators, candidates or None)``."""
    _expect_kind(doc, "generators", path)
    rd = _reader_for(doc, conductor, path)
    L = _algebra(_need(doc, "algebra", path), rd, f"{path}.algebra")
    gens = [map_from_json(L, g, f"{path}.generators[{i}]", rd)
            for i, g in enumerate(_need(doc, "generators", path, list))]
    cands = None
    if "candidates" in doc:
        raw = _need(doc, "candidates", path, list)
        if len(raw) != len(gens):
            raise SchemaError(f"{path}.candidates: expected one list per generator")
        cands = [[rd.entry(c, f"{path}.candidates[{i}][{j}]")
                  for j, c in enumerate(cs)] for i, cs in enumerate(raw)]
    return L, gens, cands


# --------------------------------------------------------------- gradings

def _label_to_json(lab):
    if isinstance(lab, tuple) and lab and all(isinstance(x, Cyclotomic) for x in lab):
        return [_entry_to_json(x) for x in lab]
    if isinstance(lab, tuple):
        return ",".join(str(x) for x in lab)
    return str(lab)


def _label_from_json(rd: _Reader, lab, path):
    if isinstance(lab, list):
        return tuple(rd.entry(x, f"{path}[{i}]") for i, x in enumerate(lab))
    if isinstance(lab, str):
        return lab
    raise SchemaError(f"{path}: label must be a string or a list of scalars")


def grading_to_json(G: Grading) -> dict:
    L = G.algebra
    if not isinstance(L, MatrixLieAlgebra):
        raise SchemaError("only gradings of matrix algebras are serialised as grading files")
    subs = []
    for lab, S in G:
        subs.append({
            "label": _label_to_json(lab),
            "dim": S.dim,
            "basis": [[_entry_to_json(x) for x in S.basis[i]] for i in range(S.dim)],
        })
    return {
        "kind": "grading",
        "conductor": L.field.n,
        "algebra": algebra_to_json(L),
        "profile": profile_string(G),
        "subspaces": subs,
    }


def grading_from_json(doc, conductor: int | None = None, path="$") -> Grading:
    _expect_kind(doc, "grading", path)
    rd = _reader_for(doc, conductor, path)
    fld = rd.fld
    L = _algebra(_need(doc, "algebra", path), rd, f"{path}.algebra")
    subs, labels = [], []
    for j, s in enumerate(_need(doc, "subspaces", path, list)):
        p = f"{path}.subspaces[{j}]"
        basis = _need(s, "basis", p, list)
        vecs = []
        for i, v in enumerate(basis):
            if not isinstance(v, list) or len(v) != L.dim:
                raise SchemaError(f"{p}.basis[{i}]: expected {L.dim} coordinates")
            vecs.append([fld.raw_of(rd.entry(x, f"{p}.basis[{i}][{k}]"))
                         for k, x in enumerate(v)])
        S = canonicalize_raw(fld, L.dim, vecs)
        if S.dim != len(vecs) or S.dim == 0:
            raise SchemaError(f"{p}.basis: vectors are linearly dependent or empty")
        if "dim" in s and s["dim"] != S.dim:
            raise SchemaError(f"{p}.dim: basis spans {S.dim} dimensions, file says {s['dim']}")
        subs.append(S)
        labels.append(_label_from_json(rd, s.get("label", str(j)), f"{p}.label"))
    try:
        return Grading(L, subs, labels)
    except GradeKitError as e:
        raise SchemaError(f"{path}.subspaces: {e}") from None


# ------------------------------------------------------------------ dispatch

def _expect_kind(doc, kind, path):
    k = _need(doc, "kind", path, str)
    if k != kind:
        raise SchemaError(f"{path}.kind: expected {kind!r}, got {k!r}")


def parse_document(text: str, conductor: int | None = None):
    """Parse any document kind into its library object.

    With ``conductor`` given, scalars are read into that (larger) field.
    """
    doc = loads(text)
    kind = _need(doc, "kind", "$", str)
    if kind == "matrix":
        return matrix_from_json(doc, conductor)
    if kind == "algebra":
        return algebra_from_json(doc, conductor)
    if kind == "generators":
        return generators_from_json(doc, conductor)
    if kind == "grading":
        return grading_from_json(doc, conductor)
    raise SchemaError(f"$.kind: unknown document kind {kind!r}")
