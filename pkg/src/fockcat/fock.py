"""Truncated symmetric Fock spaces and the ladder-style oscillator structure.

A :class:`FockSpace` is ``F(A) = S_0(A) ⊕ ... ⊕ S_N(A)``.  Every operator
below keeps exactly those terms whose intermediate sector indices stay within
the cutoff, so the algebraic laws hold exactly on the sectors they can reach;
:func:`restrict_total_degree` expresses those sector restrictions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb, factorial, sqrt
from typing import Optional

import numpy as np

from .algebraic import (
    ComonoidPresentation,
    MonoidPresentation,
    dagger_flip,
    iterated_comult,
    require_comonoid,
    unit_comonoid,
)
from .errors import DomainMismatch, IndexOutOfRange
from .symtensor import sym_embed_matrix, sym_project_apply, sym_power, sym_state
from .tensorlinalg import (
    UNIT,
    ZERO,
    Morphism,
    SpaceObject,
    biproduct_obj,
    dagger,
    fock_obj,
    identity,
    sym_dim,
    sym_obj,
    tensor,
    tensor_obj,
)


@dataclass(frozen=True)
class LadderCoefficients:
    """Scalars ``B(m, n)``, ``C``, ``K(n)`` and ``L`` of a ladder-style adjunction.

    The defaults are ``B(m, n) = sqrt((m+n)!/(m! n!))``, ``C = L = 1`` and
    ``K(n) = 1/sqrt(n!)``.  ``b_overrides`` replaces individual ``B`` values,
    which is how the negative controls corrupt the structure.
    """

    C: complex = 1.0
    L: complex = 1.0
    b_overrides: tuple = ()

    def B(self, m: int, n: int) -> complex:
        for mm, nn, value in self.b_overrides:
            if (mm, nn) == (m, n):
                return value
        return sqrt(comb(m + n, m))

    def K(self, n: int) -> complex:
        if n == 0:
            return np.conj(self.C)
        return np.conj(self.L) ** n / sqrt(factorial(n))

    def with_B(self, m: int, n: int, value: complex) -> "LadderCoefficients":
        kept = tuple(t for t in self.b_overrides if (t[0], t[1]) != (m, n))
        return LadderCoefficients(self.C, self.L, kept + ((m, n, value),))

    def constraint_residuals(self, N: int) -> dict:
        """How far the coefficients are from the oscillator constraints up to degree ``N``."""
        b = max(
            (abs(abs(self.B(m, n)) ** 2 - comb(m + n, m)) for m in range(N + 1) for n in range(N + 1 - m)),
            default=0.0,
        )
        k = max(
            (abs((n + 1) * abs(self.K(n + 1)) ** 2 - abs(self.K(n)) ** 2) for n in range(N)),
            default=0.0,
        )
        return {
            "C_unitary": abs(abs(self.C) - 1.0),
            "L_unitary": abs(abs(self.L) - 1.0),
            "B_norm": b,
            "K0_is_C_dagger": abs(self.K(0) - np.conj(self.C)),
            "K1_is_L_dagger": abs(self.K(1) - np.conj(self.L)),
            "K_recursion": k,
        }


DEFAULT_COEFFICIENTS = LadderCoefficients()


@dataclass(frozen=True)
class FockSpace:
    """``⊕_{n≤cutoff} S_n(base)`` with its sector layout and ladder coefficients."""

    base: SpaceObject
    cutoff: int
    coefficients: LadderCoefficients = DEFAULT_COEFFICIENTS

    def __post_init__(self):
        if self.cutoff < 0:
            raise IndexOutOfRange("cutoff must be non-negative")

    @cached_property
    def sector_dims(self) -> tuple:
        return tuple(sym_dim(self.base.dim, n) for n in range(self.cutoff + 1))

    @cached_property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for dim in self.sector_dims:
            out.append(acc)
            acc += dim
        return tuple(out)

    @cached_property
    def object(self) -> SpaceObject:
        return fock_obj(self.base, self.cutoff)

    @property
    def dim(self) -> int:
        return self.object.dim

    def sector_slice(self, n: int) -> slice:
        if not 0 <= n <= self.cutoff:
            raise IndexOutOfRange(f"sector {n} outside 0..{self.cutoff}")
        return slice(self.offsets[n], self.offsets[n] + self.sector_dims[n])

    def sector_of_index(self) -> np.ndarray:
        """Particle number of every basis vector, in layout order."""
        return np.repeat(np.arange(self.cutoff + 1), self.sector_dims)


def fock_space(A: SpaceObject, N: int, coefficients: Optional[LadderCoefficients] = None) -> FockSpace:
    return FockSpace(A, N, coefficients or DEFAULT_COEFFICIENTS)


def fock_from_object(obj: SpaceObject, coefficients: Optional[LadderCoefficients] = None) -> FockSpace:
    if obj.kind != "fock" or obj.dual:
        raise DomainMismatch(f"{obj} is not a Fock object")
    return fock_space(obj.base, obj.cutoff, coefficients)


def sector_projection(F: FockSpace, n: int) -> Morphism:
    """``p^n: F(A) -> S_n(A)``."""
    sl = F.sector_slice(n)
    M = np.zeros((F.sector_dims[n], F.dim), dtype=np.complex128)
    M[:, sl] = np.eye(F.sector_dims[n])
    return Morphism(F.object, sym_obj(F.base, n), M)


def sector_injection(F: FockSpace, n: int) -> Morphism:
    return dagger(sector_projection(F, n))


def fock_map(F_dom: FockSpace, F_cod: FockSpace, f: Morphism) -> Morphism:
    """``F(f) = ⊕_n S_n(f)``."""
    if f.dom != F_dom.base or f.cod != F_cod.base:
        raise DomainMismatch(f"{f.dom} -> {f.cod} does not map {F_dom.base} to {F_cod.base}")
    if F_dom.cutoff != F_cod.cutoff:
        raise DomainMismatch("Fock spaces must share a cutoff")
    M = np.zeros((F_cod.dim, F_dom.dim), dtype=np.complex128)
    for n in range(F_dom.cutoff + 1):
        M[F_cod.sector_slice(n), F_dom.sector_slice(n)] = sym_power(f, n).entries
    return Morphism(F_dom.object, F_cod.object, M)


def fmap(f: Morphism, N: int, coefficients: Optional[LadderCoefficients] = None) -> Morphism:
    """Shorthand for :func:`fock_map` between the Fock spaces over ``f``'s endpoints."""
    return fock_map(fock_space(f.dom, N, coefficients), fock_space(f.cod, N, coefficients), f)


def _pair_rows(F: FockSpace, G: FockSpace, m: int, n: int) -> np.ndarray:
    """Row indices of the ``(m, n)`` sector block inside ``F ⊗ G``."""
    left = np.arange(F.offsets[m], F.offsets[m] + F.sector_dims[m])
    right = np.arange(G.offsets[n], G.offsets[n] + G.sector_dims[n])
    return (left[:, None] * G.dim + right[None, :]).ravel()


def _split_sector(d_left: int, d_right: int, m: int, n: int, X: np.ndarray) -> np.ndarray:
    """Apply ``s^m ⊗ s^n`` to columns of ``X`` living in ``(C^a)^{⊗m} ⊗ (C^b)^{⊗n}``."""
    cols = X.shape[1]
    if X.size == 0:
        return np.zeros((sym_dim(d_left, m) * sym_dim(d_right, n), cols), dtype=np.complex128)
    Y = X.reshape(d_left ** m, d_right ** n, cols)
    Y = sym_project_apply(d_left, m, Y.reshape(d_left ** m, -1)).reshape(-1, d_right ** n, cols)
    Y = np.moveaxis(Y, 1, 0).reshape(d_right ** n, -1)
    Y = sym_project_apply(d_right, n, Y).reshape(sym_dim(d_right, n), -1, cols)
    return np.moveaxis(Y, 0, 1).reshape(-1, cols)


@lru_cache(maxsize=64)
def comultiplication(F: FockSpace) -> Morphism:
    """``d_A: F(A) -> F(A) ⊗ F(A)``, the sum over ``m+n ≤ N`` of ``B(m,n)`` splitting blocks."""
    d, N = F.base.dim, F.cutoff
    out = np.zeros((F.dim * F.dim, F.dim), dtype=np.complex128)
    for total in range(N + 1):
        embedded = sym_embed_matrix(d, total)
        for m in range(total + 1):
            n = total - m
            block = _split_sector(d, d, m, n, embedded)
            sl = F.sector_slice(total)
            out[np.ix_(_pair_rows(F, F, m, n), np.arange(sl.start, sl.stop))] = F.coefficients.B(m, n) * block
    return Morphism(F.object, tensor_obj(F.object, F.object), out)


def counit_e(F: FockSpace) -> Morphism:
    """``e_A = C · p^0: F(A) -> I``."""
    return F.coefficients.C * sector_projection(F, 0)


def epsilon_single(F: FockSpace) -> Morphism:
    """``ε_A = L · p^1: F(A) -> A``; needs a cutoff of at least one."""
    if F.cutoff < 1:
        raise IndexOutOfRange("single-particle sector needs cutoff >= 1")
    return F.coefficients.L * sector_projection(F, 1)


def vacuum_state(F: FockSpace) -> Morphism:
    return dagger(counit_e(F))


def fock_comonoid(F: FockSpace) -> ComonoidPresentation:
    return ComonoidPresentation(F.object, comultiplication(F), counit_e(F))


def fock_monoid(F: FockSpace) -> MonoidPresentation:
    """The dagger-flipped Fock comonoid ``(F(A), d^†, e^†)``."""
    return dagger_flip(fock_comonoid(F))


def eta_comonoid(co: ComonoidPresentation, N: int, coefficients: Optional[LadderCoefficients] = None,
                 check: bool = True) -> Morphism:
    """``Rη = Σ_{n≤N} K(n) · p^n† ∘ s^n ∘ g^{n-1}: A -> F(A)`` for a cocommutative comonoid."""
    if check:
        require_comonoid(co)
    F = fock_space(co.carrier, N, coefficients)
    D = co.carrier.dim
    out = np.zeros((F.dim, D), dtype=np.complex128)
    for n in range(N + 1):
        g = iterated_comult(co.comult, co.counit, n).entries
        out[F.sector_slice(n), :] = F.coefficients.K(n) * sym_project_apply(D, n, g)
    return Morphism(co.carrier, F.object, out)


def k_decompose(A: SpaceObject, B: SpaceObject, N: int,
                coefficients: Optional[LadderCoefficients] = None) -> Morphism:
    """``k_{A,B}: F(A ⊕ B) -> F(A) ⊗ F(B)``, truncated to total degree ``N``.

    On the symmetric subspace every ordering of the factors is equivalent, so
    the A-factors are taken to be the first ``p`` tensor positions.
    """
    AB = biproduct_obj(A, B)
    FAB, FA, FB = fock_space(AB, N, coefficients), fock_space(A, N, coefficients), fock_space(B, N, coefficients)
    da, db, dab = A.dim, B.dim, AB.dim
    out = np.zeros((FA.dim * FB.dim, FAB.dim), dtype=np.complex128)
    for total in range(N + 1):
        embedded = sym_embed_matrix(dab, total)
        cols = embedded.shape[1]
        T = embedded.reshape([dab] * total + [cols])
        sl = FAB.sector_slice(total)
        for p in range(total + 1):
            q = total - p
            index = tuple([slice(0, da)] * p + [slice(da, dab)] * q + [slice(None)])
            X = T[index].reshape(da ** p * db ** q, cols)
            block = _split_sector(da, db, p, q, X)
            out[np.ix_(_pair_rows(FA, FB, p, q), np.arange(sl.start, sl.stop))] = FAB.coefficients.B(p, q) * block
    return Morphism(FAB.object, tensor_obj(FA.object, FB.object), out)


def k_zero(N: int) -> Morphism:
    """``k_0: F(0) -> I``; the Fock space over the zero object is one-dimensional."""
    F0 = fock_space(ZERO, N)
    return Morphism(F0.object, UNIT, [[1.0]])


def lowering_transformation(F: FockSpace) -> Morphism:
    """Stage ``a_A = (id ⊗ ε) ∘ d: F(A) -> F(A) ⊗ A``."""
    return tensor(identity(F.object), epsilon_single(F)) @ comultiplication(F)


def raising(F: FockSpace, phi: Morphism) -> Morphism:
    """``a†_φ = d^† ∘ (id ⊗ ε^† φ)``: add one particle in state ``phi``."""
    _require_state(F, phi)
    one_particle = dagger(epsilon_single(F)) @ phi
    return dagger(comultiplication(F)) @ tensor(identity(F.object), one_particle)


def lowering(F: FockSpace, phi: Morphism) -> Morphism:
    """``a_φ = (id ⊗ φ^†) ∘ a_A``: remove one particle, weighted by overlap with ``phi``."""
    _require_state(F, phi)
    return tensor(identity(F.object), dagger(phi)) @ lowering_transformation(F)


def raising_componentwise(F: FockSpace, phi: Morphism) -> Morphism:
    """``Σ_{n<N} sqrt(n+1) · p^{n+1}† ∘ s^{n+1} ∘ (id ⊗ s^n†) ∘ (φ ⊗ p^n)``, block by block."""
    _require_state(F, phi)
    d = F.base.dim
    v = phi.entries[:, 0]
    M = np.zeros((F.dim, F.dim), dtype=np.complex128)
    for n in range(F.cutoff):
        up = np.kron(v.reshape(d, 1), sym_embed_matrix(d, n))
        M[F.sector_slice(n + 1), F.sector_slice(n)] = sqrt(n + 1) * sym_project_apply(d, n + 1, up)
    return Morphism(F.object, F.object, M)


def coherent_state(F: FockSpace, phi: Morphism) -> Morphism:
    """``Coh(φ)`` with sector components ``s^n(φ^{⊗n}) / sqrt(n!)``."""
    _require_state(F, phi)
    v = np.zeros((F.dim, 1), dtype=np.complex128)
    for n in range(F.cutoff + 1):
        v[F.sector_slice(n), 0] = F.coefficients.K(n) * sym_state(phi, n)
    return Morphism(UNIT, F.object, v)


def coherent_state_by_adjunction(F: FockSpace, phi: Morphism) -> Morphism:
    """``Coh(φ) = F(φ) ∘ Rη_{I_×}`` evaluated literally."""
    _require_state(F, phi)
    eta = eta_comonoid(unit_comonoid(), F.cutoff, F.coefficients)
    FI = fock_space(UNIT, F.cutoff, F.coefficients)
    return fock_map(FI, F, phi) @ eta


def monoid_exp_by_adjunction(mono: MonoidPresentation, phi: Morphism, N: int) -> Morphism:
    """Exponential evaluated inside the oscillator structure: ``(Rη_{flip})^† ∘ F(φ) ∘ Rη_{I_×}``."""
    F = fock_space(mono.carrier, N)
    eta_plus = dagger(eta_comonoid(dagger_flip(mono), N))
    return eta_plus @ coherent_state_by_adjunction(F, phi)


def _require_state(F: FockSpace, phi: Morphism):
    if phi.dom != UNIT or phi.cod != F.base:
        raise DomainMismatch(f"expected a state I -> {F.base}, got {phi.dom} -> {phi.cod}")


def degree_vector(obj: SpaceObject) -> np.ndarray:
    """Total particle number of each basis vector of ``obj``.

    Fock factors contribute their sector index; every other factor counts as
    degree zero.
    """
    if obj.kind == "fock":
        return FockSpace(obj.base, obj.cutoff).sector_of_index()
    if obj.kind == "tensor":
        out = np.zeros(1, dtype=np.int64)
        for p in obj.parts:
            out = np.add.outer(out, degree_vector(p)).ravel()
        return out
    return np.zeros(obj.dim, dtype=np.int64)


def degree_projector(obj: SpaceObject, k: int) -> np.ndarray:
    """0/1 mask of basis vectors of total degree at most ``k``."""
    return (degree_vector(obj) <= k).astype(float)


def restrict_total_degree(M: Morphism, k: int, side: str = "dom") -> Morphism:
    """Zero every component of total degree above ``k`` on ``side`` ('dom', 'cod' or 'both')."""
    E = M.entries
    if side in ("dom", "both"):
        E = E * degree_projector(M.dom, k)[None, :]
    if side in ("cod", "both"):
        E = E * degree_projector(M.cod, k)[:, None]
    if side not in ("dom", "cod", "both"):
        raise ValueError(f"side must be 'dom', 'cod' or 'both', not {side!r}")
    return Morphism(M.dom, M.cod, E)


__all__ = [
    "DEFAULT_COEFFICIENTS",
    "FockSpace",
    "LadderCoefficients",
    "coherent_state",
    "coherent_state_by_adjunction",
    "comultiplication",
    "counit_e",
    "degree_vector",
    "epsilon_single",
    "eta_comonoid",
    "fmap",
    "fock_comonoid",
    "fock_from_object",
    "fock_map",
    "fock_monoid",
    "fock_space",
    "k_decompose",
    "k_zero",
    "lowering",
    "lowering_transformation",
    "monoid_exp_by_adjunction",
    "raising",
    "raising_componentwise",
    "restrict_total_degree",
    "sector_injection",
    "sector_projection",
    "vacuum_state",
]
