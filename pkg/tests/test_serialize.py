import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoalg import (CrossedModule, FiniteAlgebra, ParseError, check_crossed_module, from_ideal, parse, psi,
                    serialize)
from twoalg.corpus import build, bundled_files, filename
from twoalg.serialize import dump, load, to_dict

MINIMAL_Z2 = '{"kind": "algebra", "modulus": 2, "rank": 1, "mul": [[0, 0, 0, 1]], "unit": [1]}'


def mutate(text, path, value):
    data = json.loads(text)
    node = data
    for key in path[:-1]:
        node = node[key]
    node[path[-1]] = value
    return json.dumps(data)


class TestParse:
    def test_minimal_algebra(self):
        A = parse(MINIMAL_Z2)
        assert isinstance(A, FiniteAlgebra) and A.rank == 1 and A == FiniteAlgebra.scalars(2)

    def test_ideal_inclusion_file(self):
        X = parse(bundled_files()["example1.xmod"])
        assert isinstance(X, CrossedModule)
        assert check_crossed_module(X).ok

    def test_value_equal_to_modulus(self):
        with pytest.raises(ParseError) as info:
            parse(mutate(MINIMAL_Z2, ["mul", 0, 3], 2))
        assert info.value.location == "$.mul[0][3]"

    def test_out_of_range_in_nested_map(self):
        text = mutate(bundled_files()["example1.xmod"], ["boundary", 1, 0], 5)
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.location == "$.boundary[1][0]"

    def test_nested_algebra_location(self):
        text = mutate(bundled_files()["example1.xmod"], ["R", "unit"], [1, 2])
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.location == "$.R.unit[1]"

    def test_malformed_json(self):
        with pytest.raises(ParseError) as info:
            parse('{\n  "kind": "algebra",\n  "modulus": 2,,\n}')
        assert info.value.location.startswith("line 3")

    @pytest.mark.parametrize("patch,where", [
        ((["kind"], "ring"), "$.kind"),
        ((["modulus"], 1), "$.modulus"),
        ((["rank"], -1), "$.rank"),
        ((["unit"], [1, 0]), "$.unit"),
        ((["mul"], [[0, 0, 0, 1], [0, 0, 0, 1]]), "$.mul[1]"),
        ((["mul"], [[0, 0, 1, 1]]), "$.mul[0][2]"),
        ((["mul"], [[0, 0, 0]]), "$.mul[0]"),
        ((["labels"], ["a", "b"]), "$.labels"),
    ])
    def test_rejections_name_the_field(self, patch, where):
        with pytest.raises(ParseError) as info:
            parse(mutate(MINIMAL_Z2, *patch))
        assert info.value.location == where

    def test_missing_field(self):
        data = json.loads(MINIMAL_Z2)
        del data["mul"]
        with pytest.raises(ParseError, match="mul"):
            parse(json.dumps(data))

    def test_embedded_kind_checked(self):
        text = mutate(bundled_files()["example1.xmod"], ["C", "kind"], "xmod")
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.location == "$.C.kind"

    def test_embedded_modulus_checked(self):
        data = json.loads(bundled_files()["example1.xmod"])
        data["C"]["modulus"] = 3
        with pytest.raises(ParseError) as info:
            parse(json.dumps(data))
        assert info.value.location == "$.C"


class TestSerialize:
    @pytest.mark.parametrize("name", sorted(bundled_files()))
    def test_corpus_round_trip(self, name):
        text = bundled_files()[name]
        assert serialize(parse(text)) == text

    def test_bundled_files_match_builders(self):
        files = bundled_files()
        for name, obj in build().items():
            assert files[filename(name, obj)] == serialize(obj)

    def test_equal_algebras_identical_bytes(self):
        c = np.zeros((2, 2, 2), dtype=np.int64)
        c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
        explicit = FiniteAlgebra(2, c, unit=[1, 0], labels=["1", "x"])
        assert serialize(explicit) == serialize(FiniteAlgebra.truncated_poly(2, 2))

    def test_semidirect_reproducible(self, D):
        first = serialize(psi(from_ideal(D, [[0, 1]])))
        second = serialize(psi(from_ideal(FiniteAlgebra.truncated_poly(2, 2), [[0, 1]])))
        assert first == second

    def test_sparse_entries_sorted(self):
        d = to_dict(FiniteAlgebra.truncated_poly(3, 3))
        assert d["mul"] == sorted(d["mul"])
        assert all(entry[3] != 0 for entry in d["mul"])

    def test_file_helpers(self, tmp_path, D):
        path = tmp_path / "d.alg"
        dump(D, path)
        assert load(path) == D

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            serialize(object())


@st.composite
def algebras(draw):
    m = draw(st.sampled_from([2, 3, 4, 6]))
    d = draw(st.integers(0, 3))
    entries = draw(st.lists(st.integers(0, m - 1), min_size=d**3, max_size=d**3))
    unit = draw(st.none() | st.lists(st.integers(0, m - 1), min_size=d, max_size=d))
    labels = draw(st.none() | st.lists(st.text("abcxyz", min_size=1, max_size=3), min_size=d, max_size=d))
    return FiniteAlgebra(m, np.array(entries, dtype=np.int64).reshape(d, d, d), unit=unit, labels=labels)


@settings(max_examples=200, deadline=None)
@given(algebras())
def test_parse_inverts_serialize(A):
    text = serialize(A)
    B = parse(text)
    assert B == A and B.labels == A.labels
    assert serialize(B) == text
