import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockcat import algebraic as alg
from fockcat.errors import InvariantViolation, ParseError
from fockcat.jsonio import (
    dump_matrix,
    load_matrix,
    load_presentation,
    matrix_from_json,
    matrix_to_json,
    object_from_json,
    object_to_json,
    presentation_from_json,
    presentation_to_json,
)
from fockcat.tensorlinalg import (
    UNIT,
    ZERO,
    Morphism,
    base,
    biproduct_obj,
    dual_obj,
    fock_obj,
    max_abs_diff,
    sym_obj,
    tensor_obj,
)

from strategies import complex_arrays


def write(tmp_path, obj, name="m.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return p


def test_load_vector(tmp_path):
    p = write(tmp_path, {"rows": 2, "cols": 1, "data": [[1, 0], [0, 0.5]]})
    v = load_matrix(p)
    assert v.dom == UNIT and v.cod == base(2)
    np.testing.assert_array_equal(v.entries[:, 0], [1, 0.5j])


def test_wrong_length(tmp_path):
    with pytest.raises(ParseError):
        load_matrix(write(tmp_path, {"rows": 2, "cols": 2, "data": [[1, 0]] * 3}))


def test_nan_entry(tmp_path):
    with pytest.raises(InvariantViolation):
        load_matrix(write(tmp_path, '{"rows": 1, "cols": 1, "data": [[NaN, 0]]}'))


@pytest.mark.parametrize("bad", [
    "not json",
    '{"rows": 1, "cols": 1}',
    '{"rows": -1, "cols": 1, "data": []}',
    '{"rows": 1, "cols": 1, "data": [[1]]}',
    '{"rows": 1, "cols": 1, "data": [["a", 0]]}',
    '{"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]], "cod": {"dim": 3, "structure": "base"}}',
])
def test_malformed(tmp_path, bad):
    with pytest.raises(ParseError):
        load_matrix(write(tmp_path, bad))


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        load_matrix(tmp_path / "nope.json")


def test_object_format_is_exact():
    A = fock_obj(base(2), 3)
    assert object_to_json(A) == {
        "dim": 10,
        "structure": {"fock": {"base": {"dim": 2, "structure": "base"}, "cutoff": 3}},
    }
    assert object_to_json(UNIT) == {"dim": 1, "structure": "unit"}
    assert object_to_json(ZERO) == {"dim": 0, "structure": {"biproduct": []}}


def test_declared_dim_must_match():
    with pytest.raises(ParseError):
        object_from_json({"dim": 4, "structure": {"fock": {"base": {"dim": 2, "structure": "base"}, "cutoff": 1}}})
    with pytest.raises(ParseError):
        object_from_json({"dim": 2, "structure": {"mystery": []}})


objects = st.recursive(
    st.one_of(st.integers(0, 3).map(base), st.just(UNIT)),
    lambda kids: st.one_of(
        st.lists(kids, min_size=2, max_size=3).map(lambda ps: tensor_obj(*ps)),
        st.lists(kids, max_size=3).map(lambda ps: biproduct_obj(*ps)),
        st.tuples(kids, st.integers(0, 2)).map(lambda t: fock_obj(*t)),
        st.tuples(kids, st.integers(0, 3)).map(lambda t: sym_obj(*t)),
        kids.map(dual_obj),
    ),
    max_leaves=4,
)


@given(objects)
def test_object_round_trip(A):
    assert object_from_json(json.loads(json.dumps(object_to_json(A)))) == A


@given(complex_arrays((3, 2)))
def test_matrix_round_trip_is_bit_exact(M):
    f = Morphism(base(2), tensor_obj(base(3), UNIT), M)
    back = matrix_from_json(json.loads(dump_matrix(f)))
    assert back.dom == f.dom and back.cod == f.cod
    assert back.entries.tobytes() == f.entries.tobytes()


def test_untyped_dump():
    f = Morphism(base(2), base(2), np.eye(2))
    assert set(matrix_to_json(f, typed=False)) == {"rows", "cols", "data"}


@pytest.mark.parametrize("p", [alg.cyclic_group_monoid(3), alg.diagonal_comonoid(2)])
def test_presentation_round_trip(p, tmp_path):
    path = write(tmp_path, presentation_to_json(p))
    q = load_presentation(path)
    assert type(q) is type(p) and q.carrier == p.carrier
    pairs = [("mult", "unit")] if hasattr(p, "mult") else [("comult", "counit")]
    for a, b in pairs:
        assert max_abs_diff(getattr(q, a), getattr(p, a)) == 0.0
        assert max_abs_diff(getattr(q, b), getattr(p, b)) == 0.0


def test_untyped_presentation_is_retagged():
    mono = alg.elementwise_monoid(2)
    raw = {
        "carrier": {"dim": 2, "structure": "base"},
        "mult": matrix_to_json(mono.mult, typed=False),
        "unit": matrix_to_json(mono.unit, typed=False),
    }
    got = presentation_from_json(raw)
    assert got.mult.dom == tensor_obj(base(2), base(2))
    with pytest.raises(ParseError):
        presentation_from_json({"carrier": raw["carrier"], "mult": raw["mult"]})
