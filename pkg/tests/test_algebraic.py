from math import e as E, factorial

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from fockcat import algebraic as alg
from fockcat import fock as fk
from fockcat.errors import DomainMismatch, LawViolation
from fockcat.tensorlinalg import (
    UNIT,
    Morphism,
    base,
    identity,
    name_of,
    max_abs_diff,
    state,
    tensor,
    tensor_obj,
    unname,
    zero_morphism,
)

from strategies import cgauss, complex_arrays


def expm_scaling_squaring(M, terms=20):
    """Independent oracle: halve until small, Taylor, then square back."""
    norm = np.linalg.norm(M, 1)
    s = max(0, int(np.ceil(np.log2(norm))) + 4) if norm > 0 else 0
    X = M / 2 ** s
    out = np.eye(len(M), dtype=complex)
    term = np.eye(len(M), dtype=complex)
    for k in range(1, terms + 1):
        term = term @ X / k
        out = out + term
    for _ in range(s):
        out = out @ out
    return out


def test_presentations_are_type_checked():
    A = base(2)
    with pytest.raises(DomainMismatch):
        alg.ComonoidPresentation(A, identity(A), zero_morphism(A, UNIT))
    with pytest.raises(DomainMismatch):
        alg.MonoidPresentation(A, zero_morphism(tensor_obj(A, A), A), zero_morphism(A, A))


@pytest.mark.parametrize("make", [
    lambda: alg.diagonal_comonoid(3),
    lambda: alg.unit_comonoid(),
    lambda: alg.dagger_flip(alg.cyclic_group_monoid(4)),
    lambda: fk.fock_comonoid(fk.fock_space(base(2), 3)),
])
def test_comonoid_laws(make):
    res = alg.comonoid_residuals(make())
    assert max(res.values()) < 1e-12


def test_flipped_elementwise_is_copying_comonoid():
    co = alg.dagger_flip(alg.elementwise_monoid(3))
    diag = alg.diagonal_comonoid(3)
    assert max_abs_diff(co.comult, diag.comult) == 0.0
    assert max_abs_diff(co.counit, diag.counit) == 0.0


def test_dagger_flip_is_involution():
    m = alg.cyclic_group_monoid(3)
    back = alg.dagger_flip(alg.dagger_flip(m))
    assert max_abs_diff(back.mult, m.mult) == 0.0 and max_abs_diff(back.unit, m.unit) == 0.0
    with pytest.raises(TypeError):
        alg.dagger_flip(identity(base(2)))


def test_corrupted_comonoid_is_rejected():
    co = alg.diagonal_comonoid(2)
    bad = alg.ComonoidPresentation(co.carrier, 2 * co.comult, co.counit)
    with pytest.raises(LawViolation):
        alg.require_comonoid(bad)


def test_iterated_comultiplication():
    co = alg.diagonal_comonoid(2)
    assert max_abs_diff(alg.iterated_comult(co.comult, co.counit, 0), co.counit) == 0.0
    assert max_abs_diff(alg.iterated_comult(co.comult, co.counit, 1), identity(co.carrier)) == 0.0
    g3 = alg.iterated_comult(co.comult, co.counit, 3)
    # copying: e_i -> e_i ⊗ e_i ⊗ e_i
    np.testing.assert_array_equal(np.flatnonzero(g3.entries[:, 1]), [7])


def test_elementwise_exponential():
    mono = alg.elementwise_monoid(2)
    x = state(base(2), [1.0, 0.0])
    got = alg.monoid_exp(mono, x, 20).entries[:, 0]
    np.testing.assert_allclose(got, [E, 1.0], atol=1e-15)
    y = state(base(2), [0.3 - 0.4j, -0.8])
    np.testing.assert_allclose(alg.monoid_exp(mono, y, 25).entries[:, 0], np.exp([0.3 - 0.4j, -0.8]), atol=1e-14)


def test_cyclic_group_exponential_against_expm(rng):
    n = 3
    mono = alg.cyclic_group_monoid(n)
    v = cgauss(rng, n) / 3
    # left multiplication by v in C[Z/3] is a circulant matrix
    circ = np.array([[v[(i - j) % n] for j in range(n)] for i in range(n)])
    oracle = scipy.linalg.expm(circ)[:, 0]
    got = alg.monoid_exp(mono, state(base(n), v), 25).entries[:, 0]
    np.testing.assert_allclose(got, oracle, atol=1e-13)


def test_exp_requires_commutative_monoid():
    endo = alg.endo_monoid(base(2))
    with pytest.raises(LawViolation):
        alg.monoid_exp(endo, zero_morphism(UNIT, endo.carrier), 3)


def test_exp_of_zero_is_unit():
    for mono in (alg.elementwise_monoid(3), alg.cyclic_group_monoid(4)):
        got = alg.monoid_exp(mono, zero_morphism(UNIT, mono.carrier), 10)
        assert max_abs_diff(got, mono.unit) == 0.0


def test_endo_exp_nilpotent():
    f = Morphism(base(2), base(2), [[0, 1], [0, 0]])
    np.testing.assert_array_equal(alg.endo_exp(f, 30).entries, [[1, 1], [0, 1]])


def test_endo_exp_diagonal():
    f = Morphism(base(2), base(2), np.diag([1.0, 2.0]))
    got = alg.endo_exp(f, 30).entries
    np.testing.assert_allclose(got, np.diag(np.exp([1.0, 2.0])), atol=1e-12)
    np.testing.assert_allclose(got, scipy.linalg.expm(f.entries), atol=1e-12)


def test_endo_exp_type_checked():
    with pytest.raises(DomainMismatch):
        alg.endo_exp(zero_morphism(base(2), base(3)), 4)


@given(complex_arrays((3, 3)))
def test_endo_exp_matches_oracles(M):
    n = np.linalg.norm(M, 2)
    if n > 2:
        M = M * (2 / n)
    f = Morphism(base(3), base(3), M)
    got = alg.endo_exp(f, 30).entries
    assert np.max(np.abs(got - expm_scaling_squaring(M))) < 1e-8
    assert np.max(np.abs(got - scipy.linalg.expm(M))) < 1e-8


def test_endo_monoid_multiplication_is_composition(rng):
    A = base(2)
    endo = alg.endo_monoid(A)
    f, g = Morphism(A, A, cgauss(rng, 2, 2)), Morphism(A, A, cgauss(rng, 2, 2))
    got = endo.mult @ tensor(name_of(g), name_of(f))
    assert max_abs_diff(got, name_of(g @ f)) < 1e-12
    assert max_abs_diff(endo.unit, name_of(identity(A))) == 0.0


@pytest.mark.parametrize("mono", [
    alg.elementwise_monoid(2),
    alg.cyclic_group_monoid(3),
    alg.conjugated_monoid(alg.elementwise_monoid(2), np.array([[1.0, 2.0], [0.5j, -1.0]])),
])
def test_monoid_embedding(mono, rng):
    m = alg.monoid_embed(mono)
    res = alg.monoid_morphism_residuals(m, mono, alg.endo_monoid(mono.carrier))
    assert max(res.values()) < 1e-12
    assert max_abs_diff(alg.monoid_retraction(mono) @ m, identity(mono.carrier)) < 1e-12


def test_conjugated_monoid_keeps_laws():
    T = np.array([[1.0, 2.0], [0.5j, -1.0]])
    mono = alg.conjugated_monoid(alg.elementwise_monoid(2), T)
    assert max(alg.monoid_residuals(mono).values()) < 1e-12


def test_noncommutative_exp_via_embedding():
    # exp in the endomorphism monoid of an element lying in a commutative submonoid
    mono = alg.elementwise_monoid(2)
    x = state(base(2), [0.5, -1.5j])
    named = alg.exp_noncommutative(mono, x, alg.monoid_embed(mono), 25)
    op = unname(named, base(2), base(2))
    np.testing.assert_allclose(op.entries, scipy.linalg.expm(np.diag([0.5, -1.5j])), atol=1e-12)


# components in [-1/2, 1/2] keep the eigenvalues of u + v within [-2, 2], where an
# order-20 series is accurate far below the tolerance
@given(st.floats(-0.5, 0.5), st.floats(-0.5, 0.5), st.floats(-0.5, 0.5), st.floats(-0.5, 0.5))
def test_exp_additive_property(a, b, c, d):
    mono = alg.cyclic_group_monoid(2)
    u, v = state(base(2), [a, b]), state(base(2), [c, d])
    lhs = mono.mult @ tensor(alg.monoid_exp(mono, u, 20), alg.monoid_exp(mono, v, 20))
    assert max_abs_diff(lhs, alg.monoid_exp(mono, u + v, 20)) < 1e-10


def test_additive_law_needs_enough_terms():
    # the truncation error is real: eigenvalue 4 at order 20 leaves about 1e-7
    mono = alg.cyclic_group_monoid(2)
    u = state(base(2), [1.0, 1.0])
    lhs = mono.mult @ tensor(alg.monoid_exp(mono, u, 20), alg.monoid_exp(mono, u, 20))
    assert max_abs_diff(lhs, alg.monoid_exp(mono, u + u, 20)) > 1e-8
    assert max_abs_diff(lhs, alg.monoid_exp(mono, u + u, 40)) < 1e-10


def test_partial_sums_count_terms():
    # order M keeps exactly M+1 terms
    mono = alg.elementwise_monoid(1)
    got = alg.monoid_exp(mono, state(base(1), [1.0]), 4).entries[0, 0]
    assert abs(got - sum(1 / factorial(k) for k in range(5))) < 1e-15
