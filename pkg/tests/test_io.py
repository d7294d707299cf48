from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from modan import fixtures, io
from modan.algebra import NotAssociative
from modan.exactlin import Matrix, Subspace
from modan.multiplier import module_multiplier_space, multiplier_space

from conftest import rationals


@pytest.mark.parametrize("name", ["A0", "A1", "A2", "A3", "M2", "M2r2", "AD3"])
def test_fixture_files_match_builders(fixture_dir, name):
    ws = io.load_workspace(fixture_dir / f"{name}.json")
    if name in fixtures.MODULES:
        mod = fixtures.MODULES[name]()
        assert ws.module == mod
        assert ws.module.free_rank == mod.free_rank
    elif name == "A0":
        assert ws.algebra.dim == 0 and ws.module is None
    else:
        assert ws.algebra == fixtures.ALGEBRAS[name]()


def test_broken_file(fixture_dir):
    with pytest.raises(NotAssociative):
        io.load_workspace(fixture_dir / "broken_assoc.json")


def test_workspace_round_trip(M2r2):
    raw = json.loads(io.dumps(io.workspace_json(M2r2.base, M2r2)))
    ws = io.parse_workspace(raw)
    assert ws.module == M2r2 and ws.module.free_rank == 2


@pytest.mark.parametrize("bad", [
    {},
    {"algebra": []},
    {"algebra": {"basis": ["e"], "products": [[[1.0]]]}},
    {"algebra": {"basis": ["e"], "products": [[[True]]]}},
    {"algebra": {"basis": ["e", "e"], "products": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}},
    {"algebra": {"basis": ["e"], "products": [[["1/0"]]]}},
    {"algebra": {"basis": ["e"], "products": [[[1]]]}, "module": {"basis": ["m"], "action": []}},
])
def test_parse_errors(bad):
    with pytest.raises(io.ParseError):
        io.parse_workspace(bad)


def test_invalid_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(io.ParseError):
        io.read_json(p)


def test_parse_potential_forms():
    a = io.parse_potential({"1": [[1, 0], [0, 1]]}, 2)
    b = io.parse_potential([[1, [[1, 0], [0, 1]]]], 2)
    assert a == b == {1: Matrix.identity(2)}
    with pytest.raises(io.ParseError):
        io.parse_potential({"x": [[1]]}, 1)


def test_parse_matrix_shape():
    with pytest.raises(io.ParseError):
        io.parse_matrix([[1, 2]], (2, 2))
    with pytest.raises(io.ParseError):
        io.parse_matrix([[1, 2], [3]])


@pytest.mark.parametrize("name", ["A2", "A3"])
def test_emitted_bases_reparse(name):
    sp = multiplier_space(fixtures.ALGEBRAS[name]())
    raw = json.loads(io.dumps(io.subspace_json(sp.space)))
    assert io.subspace_from_json(raw) == sp.space


def test_emitted_pair_bases_reparse(AD3):
    sp = module_multiplier_space(AD3)
    assert io.subspace_from_json(json.loads(io.dumps(io.subspace_json(sp.space)))) == sp.space


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=3))
def test_matrix_round_trip(rows):
    m = Matrix(rows, 3)
    assert io.parse_matrix(json.loads(json.dumps(io.matrix_json(m)))) == m


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), max_size=4))
def test_subspace_round_trip(vectors):
    s = Subspace.span(vectors, 3)
    assert io.subspace_from_json(json.loads(io.dumps(io.subspace_json(s)))) == s
