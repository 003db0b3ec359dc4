import json
from fractions import Fraction

import pytest
from hypothesis import given

from gradekit.catalog import build_entry, entry_names
from gradekit.errors import SchemaError
from gradekit.exactmath import ScalarMatrix, field
from gradekit.serialize import (
    algebra_from_json,
    algebra_to_json,
    dumps,
    generators_from_json,
    generators_to_json,
    grading_from_json,
    grading_to_json,
    loads,
    matrix_from_json,
    matrix_to_json,
    parse_document,
    scalar_from_json,
    scalar_to_json,
)
from strategies import scalars


def conductor_for(name):
    return 12 if name.startswith("sl3") else 4


@pytest.mark.parametrize("name", entry_names())
def test_grading_roundtrip_is_byte_identical(name):
    G = build_entry(name, conductor_for(name))[0]
    text = dumps(grading_to_json(G))
    H = grading_from_json(loads(text))
    assert H == G
    assert dumps(grading_to_json(H)) == text


@pytest.mark.parametrize("name", ["sl4.pauli", "sp4.cartan", "sl2.pauli"])
def test_generator_roundtrip(name):
    G, gens, cands = build_entry(name)
    text = dumps(generators_to_json(G.algebra, gens, cands))
    L, gens2, cands2 = generators_from_json(loads(text))
    assert L is G.algebra
    assert [g.matrix for g in gens2] == [g.matrix for g in gens]
    assert dumps(generators_to_json(L, gens2, cands2)) == text


@given(scalars())
def test_scalar_roundtrip(x):
    assert scalar_from_json(json.loads(json.dumps(scalar_to_json(x)))) == x


def test_rational_entries_survive():
    f = field(4)
    A = ScalarMatrix.of(f, [[Fraction(1, 3), 0], [f.zeta(), Fraction(-5, 7)]])
    doc = matrix_to_json(A)
    assert doc["entries"][0][0] == "1/3"
    assert matrix_from_json(loads(dumps(doc))) == A


def test_algebra_roundtrip():
    for name in ("sl4.cartan", "sp4.cartan", "o4.pauli_x_pauli"):
        L = build_entry(name)[0].algebra
        assert algebra_from_json(algebra_to_json(L)) is L


def test_mixed_conductor_rejected():
    doc = grading_to_json(build_entry("sl2.pauli")[0])
    # outer document says 4, embedded algebra says 3
    doc["algebra"]["conductor"] = 3
    with pytest.raises(SchemaError):
        grading_from_json(doc)


def test_lifting_to_a_multiple_conductor():
    G = build_entry("sl4.pauli")[0]
    H = grading_from_json(grading_to_json(G), conductor=12)
    assert H.algebra.field.n == 12 and H.dims == G.dims
    with pytest.raises(SchemaError):
        grading_from_json(grading_to_json(G), conductor=6)


def test_schema_errors_carry_locations():
    with pytest.raises(SchemaError) as e:
        loads('{"kind": "matrix",\n "rows": 2,,}')
    assert "line 2" in str(e.value)
    bad = matrix_to_json(ScalarMatrix.identity(field(4), 2))
    bad["entries"][1][0] = "x/y"
    with pytest.raises(SchemaError) as e:
        matrix_from_json(bad)
    assert "entries" in str(e.value)
    with pytest.raises(SchemaError):
        parse_document('{"kind": "nonsense"}')


def test_ragged_matrix_rejected():
    bad = matrix_to_json(ScalarMatrix.identity(field(4), 2))
    bad["entries"][1] = ["1"]
    with pytest.raises(SchemaError):
        matrix_from_json(bad)
