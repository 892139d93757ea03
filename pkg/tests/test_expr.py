import numpy as np
import pytest
from hypothesis import given, strategies as st

from fockcat import fock as fk
from fockcat.errors import ExprSyntaxError, ExprTypeError
from fockcat.expr import (
    Binary,
    Builtin,
    Environment,
    Ident,
    IndexOp,
    Scale,
    StateOp,
    Unary,
    With,
    eval_expr,
    parse_expr,
    pretty,
    typecheck,
)
from fockcat.tensorlinalg import UNIT, base, fock_obj, max_abs_diff, state, tensor


@pytest.fixture
def env():
    return Environment({
        "phi": state(base(2), [0.6, 0.8j]),
        "psi": state(base(2), [0.2 - 0.1j, 0.9]),
    }, dim=2, cutoff=3)


def test_compose_reads_left_to_right():
    assert parse_expr("vac ; raise(phi)") == Binary(";", Builtin("vac"), StateOp("raise", "phi"))


def test_precedence():
    e = parse_expr("a ; b + c * x")
    assert e == Binary(";", Ident("a"), Binary("+", Ident("b"), Binary("*", Ident("c"), Ident("x"))))
    assert parse_expr("(coh(phi) * coh(phi)) ; dag(d)") == parse_expr("coh(phi)*coh(phi);dag(d)")


def test_builtin_forms():
    assert parse_expr("d[4]") == Builtin("d", 4)
    assert parse_expr("proj(2)") == IndexOp("proj", 2)
    assert parse_expr("scale(-1, 0.5, e)") == Scale(-1.0, 0.5, Builtin("e"))
    assert parse_expr("with(N=4, d=1){vac}") == With((("N", 4), ("d", 1)), Builtin("vac"))
    assert parse_expr("name(dag(id))") == Unary("name", Unary("dag", Builtin("id")))


@pytest.mark.parametrize("text,col", [
    ("raise(", 7),
    ("vac ;", 6),
    ("vac ; ; e", 7),
    ("(vac", 5),
    ("sym(x)", 5),
    ("vac $ e", 5),
    ("with(q=1){vac}", 6),
    ("raise(e)", 7),
    ("vac e", 5),
])
def test_syntax_errors_report_column(text, col):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.column == col
    assert info.value.line == 1


def test_syntax_error_line_numbers():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("vac ;\n  raise(")
    assert (info.value.line, info.value.column) == (2, 9)


def test_vacuum_overlap_is_one(env):
    for ctx in (env, env.with_context(dim=1, cutoff=0), env.with_context(dim=3, cutoff=4)):
        out = eval_expr("vac ; e", ctx)
        assert out.dom == UNIT and out.cod == UNIT
        assert out.entries[0, 0] == 1


def test_two_particles_have_no_vacuum_component(env):
    assert np.max(np.abs(eval_expr("vac ; raise(phi) ; raise(phi) ; e", env).entries)) == 0.0


def test_eigenstate_expression(env):
    N = env.cutoff
    lhs = eval_expr("coh(phi) ; lower(psi)", env)
    overlap = complex((env.bindings["psi"].dag @ env.bindings["phi"]).entries[0, 0])
    rhs = eval_expr(f"scale({overlap.real!r}, {overlap.imag!r}, coh(phi))", env)
    assert max_abs_diff(fk.restrict_total_degree(lhs, N - 1, "cod"), fk.restrict_total_degree(rhs, N - 1, "cod")) < 1e-12


def test_copy_law_expression(env):
    left = eval_expr("coh(phi) ; d", env)
    right = eval_expr("coh(phi) * coh(phi)", env)
    assert max_abs_diff(fk.restrict_total_degree(left, 3, "cod"), fk.restrict_total_degree(right, 3, "cod")) < 1e-12


def test_eta_then_eps_is_identity(env):
    out = eval_expr("eta ; eps", env)
    assert max_abs_diff(out, state(base(2), [1, 0]) @ state(base(2), [1, 0]).dag + state(base(2), [0, 1]) @ state(base(2), [0, 1]).dag) < 1e-14


def test_structural_builtins(env):
    F = fock_obj(base(2), 2)
    small = env.with_context(cutoff=2)
    snake = eval_expr("(zeta * id) ; (id * theta)", small)
    assert snake.dom == F and snake.cod == F
    assert np.array_equal(snake.entries, np.eye(F.dim))
    assert np.array_equal(eval_expr("swap ; swap", small).entries, np.eye(F.dim ** 2))
    assert np.array_equal(eval_expr("inj(2) ; proj(2)", env).entries, np.eye(3))
    assert eval_expr("sym(3)", env).shape == (4, 8)
    assert eval_expr("name(id)", env).cod.dim == 100
    assert eval_expr("fock(eps)", small).dom == fock_obj(F, 2)


def test_with_scopes_the_context(env):
    out = eval_expr("with(d=1, N=2){vac ; raise(one)}", env.bind(one=state(base(1), [1.0])))
    assert out.cod == fock_obj(base(1), 2)
    np.testing.assert_array_equal(out.entries[:, 0], [0, 1, 0])


def test_type_errors_name_both_objects(env):
    with pytest.raises(ExprTypeError) as info:
        eval_expr("vac ; vac", env)
    err = info.value
    assert err.subexpr == "vac ; vac"
    assert err.left == fock_obj(base(2), 3) and err.right == UNIT
    with pytest.raises(ExprTypeError):
        eval_expr("vac + e", env)
    with pytest.raises(ExprTypeError):
        eval_expr("raise(nobody)", env)
    with pytest.raises(ExprTypeError):
        eval_expr("proj(4)", env)
    with pytest.raises(ExprTypeError):
        eval_expr("raise(phi)", env.with_context(dim=3))


def test_typecheck_annotates_every_node(env):
    typed = typecheck(parse_expr("coh(phi) ; (d + d) ; dag(d)"), env)
    stack = [typed]
    while stack:
        node = stack.pop()
        assert node.dom is not None and node.cod is not None
        for attr in ("left", "right", "body"):
            if hasattr(node, attr):
                stack.append(getattr(node, attr))


def test_eval_is_referentially_transparent(env):
    text = "coh(phi) ; raise(psi) ; lower(phi) ; d"
    a = eval_expr(text, env).entries.tobytes()
    b = eval_expr(parse_expr(text), env).entries.tobytes()
    assert a == b


def test_environment_rejects_reserved_names():
    with pytest.raises(ValueError):
        Environment({"vac": state(base(2), [1, 0])})
    with pytest.raises(TypeError):
        Environment({"x": [1, 0]})


def test_tensor_of_terms(env):
    out = eval_expr("raise(phi) * e", env)
    F = fk.fock_space(base(2), 3)
    want = tensor(fk.raising(F, env.bindings["phi"]), fk.counit_e(F))
    assert max_abs_diff(out, want) == 0.0


# ---- round trip -------------------------------------------------------------

idents = st.sampled_from(["phi", "psi", "f_1", "X"])
nums = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
leaves = st.one_of(
    idents.map(Ident),
    st.sampled_from(["d", "e", "eps", "eta", "vac", "swap", "zeta", "theta", "id"]).map(Builtin),
    st.integers(0, 9).map(lambda n: Builtin("d", n)),
    st.tuples(st.sampled_from(["raise", "lower", "coh"]), idents).map(lambda t: StateOp(*t)),
    st.tuples(st.sampled_from(["sym", "proj", "inj"]), st.integers(0, 12)).map(lambda t: IndexOp(*t)),
)
exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.tuples(st.sampled_from([";", "+", "*"]), kids, kids).map(lambda t: Binary(*t)),
        st.tuples(st.sampled_from(["dag", "name", "fock"]), kids).map(lambda t: Unary(*t)),
        st.tuples(nums, nums, kids).map(lambda t: Scale(*t)),
        st.tuples(st.integers(0, 4), st.integers(0, 4), kids).map(
            lambda t: With((("N", t[0]), ("d", t[1])), t[2])),
    ),
    max_leaves=8,
)


@given(exprs)
def test_pretty_parse_round_trip(e):
    text = pretty(e)
    assert parse_expr(text) == e
    assert pretty(parse_expr(text)) == text


@given(exprs)
def test_parser_ignores_whitespace(e):
    text = pretty(e)
    squeezed = text.replace(" ; ", ";").replace(" + ", "+").replace(" * ", "*")
    assert parse_expr(squeezed) == e
    assert parse_expr("\n  " + text.replace(" ", "\t ") + "  \n") == e
