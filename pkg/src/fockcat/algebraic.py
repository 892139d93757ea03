"""Internal monoids and comonoids, morphism exponentials, endomorphism monoids."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .errors import DomainMismatch, LawViolation
from .tensorlinalg import (
    DEFAULT_TOL,
    UNIT,
    Morphism,
    SpaceObject,
    base,
    cast,
    dagger,
    dual_obj,
    duality_pair,
    identity,
    injection,
    max_abs_diff,
    projection,
    sum_morphisms,
    swap,
    tensor,
    tensor_apply,
    tensor_obj,
    transpose_of,
)


@dataclass(frozen=True, eq=False)
class ComonoidPresentation:
    """Carrier ``A`` with comultiplication ``A -> A ⊗ A`` and counit ``A -> I``."""

    carrier: SpaceObject
    comult: Morphism
    counit: Morphism

    def __post_init__(self):
        A = self.carrier
        if self.comult.dom != A or self.comult.cod != tensor_obj(A, A):
            raise DomainMismatch(f"comultiplication must be {A} -> {tensor_obj(A, A)}")
        if self.counit.dom != A or self.counit.cod != UNIT:
            raise DomainMismatch(f"counit must be {A} -> I")


@dataclass(frozen=True, eq=False)
class MonoidPresentation:
    """Carrier ``A`` with multiplication ``A ⊗ A -> A`` and unit ``I -> A``."""

    carrier: SpaceObject
    mult: Morphism
    unit: Morphism
    commutative: bool = True

    def __post_init__(self):
        A = self.carrier
        if self.mult.cod != A or self.mult.dom != tensor_obj(A, A):
            raise DomainMismatch(f"multiplication must be {tensor_obj(A, A)} -> {A}")
        if self.unit.cod != A or self.unit.dom != UNIT:
            raise DomainMismatch(f"unit must be I -> {A}")


def dagger_flip(p):
    """Swap a comonoid for the monoid of its adjoints, and vice versa."""
    if isinstance(p, ComonoidPresentation):
        return MonoidPresentation(p.carrier, dagger(p.comult), dagger(p.counit), commutative=True)
    if isinstance(p, MonoidPresentation):
        return ComonoidPresentation(p.carrier, dagger(p.mult), dagger(p.unit))
    raise TypeError(f"cannot flip {type(p).__name__}")


def comonoid_residuals(co: ComonoidPresentation) -> dict:
    """Max-abs residual of each comonoid law (coassociativity, counit, cocommutativity)."""
    A, g, u = co.carrier, co.comult, co.counit
    idA = identity(A)
    left = tensor_apply([g, idA], g)
    right = tensor_apply([idA, g], g)
    return {
        "coassociativity": max_abs_diff(left, right),
        "counit_left": max_abs_diff(cast(tensor_apply([u, idA], g), cod=A), idA),
        "counit_right": max_abs_diff(cast(tensor_apply([idA, u], g), cod=A), idA),
        "cocommutativity": max_abs_diff(swap(A, A) @ g, g),
    }


def monoid_residuals(mono: MonoidPresentation) -> dict:
    """Residuals of the monoid laws, obtained by flipping to the comonoid side.

    Dagger is an isometric involution on matrices, so each residual equals the
    corresponding monoid law residual exactly.
    """
    res = comonoid_residuals(dagger_flip(mono))
    return {
        "associativity": res["coassociativity"],
        "unit_left": res["counit_left"],
        "unit_right": res["counit_right"],
        "commutativity": res["cocommutativity"],
    }


def require_comonoid(co: ComonoidPresentation, tol: float = DEFAULT_TOL):
    bad = {k: v for k, v in comonoid_residuals(co).items() if v > tol}
    if bad:
        raise LawViolation(f"comonoid laws fail: {bad}")


def require_commutative_monoid(mono: MonoidPresentation, tol: float = DEFAULT_TOL):
    if not mono.commutative:
        raise LawViolation("exponential needs a commutative monoid")
    bad = {k: v for k, v in monoid_residuals(mono).items() if v > tol}
    if bad:
        raise LawViolation(f"monoid laws fail: {bad}")


def iterated_comult(g: Morphism, u: Morphism, n: int) -> Morphism:
    """``g^{n-1}: A -> A^{⊗n}``; ``n = 0`` gives the counit, ``n = 1`` the identity."""
    A = g.dom
    if u.dom != A or u.cod != UNIT or g.cod != tensor_obj(A, A):
        raise DomainMismatch("iterated_comult needs comonoid data (A, A -> A⊗A, A -> I)")
    if n == 0:
        return u
    out = identity(A)
    idA = identity(A)
    for k in range(1, n):
        out = tensor_apply([g] + [idA] * (k - 1), out)
    return out


def iterated_mult(g: Morphism, u: Morphism, n: int) -> Morphism:
    """``g^{n-1}: A^{⊗n} -> A`` for monoid data, the adjoint pattern of :func:`iterated_comult`."""
    return dagger(iterated_comult(dagger(g), dagger(u), n))


def monoid_exp(mono: MonoidPresentation, phi: Morphism, order: int, check: bool = True) -> Morphism:
    """Truncated exponential ``Σ_{m≤order} (1/m!) g^{m-1} ∘ phi^{⊗m}`` of an element.

    Terms are accumulated as ``x_{m+1} = g ∘ (x_m ⊗ phi)`` so only vectors of
    the carrier's size are ever formed.
    """
    A = mono.carrier
    if phi.dom != UNIT or phi.cod != A:
        raise DomainMismatch(f"element must be a state I -> {A}, got {phi.dom} -> {phi.cod}")
    if check:
        require_commutative_monoid(mono)
    G = mono.mult.entries
    v = phi.entries[:, 0]
    total = mono.unit.entries[:, 0].copy()
    term = None
    for m in range(1, order + 1):
        term = v.copy() if m == 1 else G @ np.kron(term, v)
        total = total + term / factorial(m)
    return Morphism(UNIT, A, total.reshape(-1, 1))


def exp_noncommutative(comm: MonoidPresentation, alpha: Morphism, embedding: Morphism, order: int) -> Morphism:
    """Exponential in a noncommutative monoid, computed in ``comm`` and pushed along ``embedding``."""
    return embedding @ monoid_exp(comm, alpha, order)


def endo_monoid(A: SpaceObject) -> MonoidPresentation:
    """Names of endomorphisms of ``A``: multiplication is composition, unit is ``⌜id⌝``."""
    zeta, theta = duality_pair(A)
    idA = identity(A)
    mult = tensor(idA, theta, identity(dual_obj(A)))
    return MonoidPresentation(tensor_obj(A, dual_obj(A)), mult, zeta, commutative=False)


def monoid_embed(mono: MonoidPresentation) -> Morphism:
    """``m = (k ⊗ id_{N*}) ∘ (id_N ⊗ ζ_N): N -> N ⊗ N*``, a monic monoid morphism."""
    N = mono.carrier
    zeta, _ = duality_pair(N)
    return tensor_apply([mono.mult, identity(dual_obj(N))], tensor(identity(N), zeta))


def monoid_retraction(mono: MonoidPresentation) -> Morphism:
    """``id_N ⊗ s*``; a left inverse of :func:`monoid_embed`."""
    N = mono.carrier
    return tensor(identity(N), transpose_of(mono.unit))


def monoid_morphism_residuals(m: Morphism, src: MonoidPresentation, tgt: MonoidPresentation) -> dict:
    lhs = tgt.mult @ tensor(m, m)
    rhs = m @ src.mult
    return {
        "multiplication": max_abs_diff(lhs, rhs),
        "unit": max_abs_diff(m @ src.unit, tgt.unit),
    }


def endo_exp(f: Morphism, order: int) -> Morphism:
    """Truncated power series ``Σ_{m≤order} f^m / m!`` of an endomorphism."""
    if f.dom != f.cod:
        raise DomainMismatch(f"endo_exp needs an endomorphism, got {f.dom} -> {f.cod}")
    F = f.entries
    total = np.eye(F.shape[0], dtype=np.complex128)
    term = total
    for m in range(1, order + 1):
        term = term @ F / m
        total = total + term
    return Morphism(f.dom, f.cod, total)


def diagonal_comonoid(d: int) -> ComonoidPresentation:
    """Copying comonoid on ``C^d = I ⊕ ... ⊕ I`` assembled from the biproduct injections."""
    parts = [UNIT] * d
    A = base(d)
    terms = []
    for i in range(d):
        inj = cast(injection(parts, i), cod=A)
        proj = cast(projection(parts, i), dom=A)
        terms.append(tensor(inj, inj) @ proj)
    comult = sum_morphisms(terms, A, tensor_obj(A, A))
    counit = sum_morphisms([cast(projection(parts, i), dom=A) for i in range(d)], A, UNIT)
    return ComonoidPresentation(A, comult, counit)


def elementwise_monoid(d: int) -> MonoidPresentation:
    """Pointwise product on ``C^d`` with unit ``(1, ..., 1)``."""
    A = base(d)
    G = np.zeros((d, d * d), dtype=np.complex128)
    for i in range(d):
        G[i, i * d + i] = 1.0
    return MonoidPresentation(A, Morphism(tensor_obj(A, A), A, G), Morphism(UNIT, A, np.ones((d, 1))))


def cyclic_group_monoid(n: int) -> MonoidPresentation:
    """Group algebra of ``Z/n``: ``e_i · e_j = e_{(i+j) mod n}``, unit ``e_0``."""
    A = base(n)
    G = np.zeros((n, n * n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            G[(i + j) % n, i * n + j] = 1.0
    u = np.zeros((n, 1))
    u[0, 0] = 1.0
    return MonoidPresentation(A, Morphism(tensor_obj(A, A), A, G), Morphism(UNIT, A, u))


def conjugated_monoid(mono: MonoidPresentation, T: np.ndarray) -> MonoidPresentation:
    """Transport a monoid along an invertible ``T``: ``T g (T^{-1} ⊗ T^{-1})``, ``T u``."""
    A = mono.carrier
    Ti = np.linalg.inv(T)
    G = T @ mono.mult.entries @ np.kron(Ti, Ti)
    return MonoidPresentation(
        A,
        Morphism(tensor_obj(A, A), A, G),
        Morphism(UNIT, A, T @ mono.unit.entries),
        commutative=mono.commutative,
    )


def unit_comonoid() -> ComonoidPresentation:
    """The trivial comonoid ``I_×`` on the monoidal unit."""
    return ComonoidPresentation(UNIT, identity(UNIT), identity(UNIT))
