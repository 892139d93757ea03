"""Executable law checks with sector-restricted, exact comparisons.

Every ``check_*`` function evaluates a family of identities, records the
largest absolute deviation of each one in ``details`` and folds them into a
single :class:`LawReport`.  Laws that only hold on part of a truncated Fock
space are compared after :func:`~fockcat.fock.restrict_total_degree`, so a
deviation outside the stated sectors never counts against the law.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from math import factorial
from typing import Optional, Sequence

import numpy as np

from . import algebraic as alg
from . import fock as fk
from . import symtensor as st
from . import tensorlinalg as tl
from .tensorlinalg import DEFAULT_TOL, UNIT, Morphism, base, identity, max_abs_diff, state, tensor, tensor_obj

# law_id -> the statements (detail keys) it is allowed to report
LAW_MANIFEST = {
    "tensor_category": (
        "bilinearity", "interchange", "snake_left", "snake_right", "dagger_biproduct",
        "biproduct_orthogonality", "biproduct_completeness", "scalars_commute",
        "name_composition", "transpose_involution", "dagger_is_conjugate_transpose",
    ),
    "symmetric_powers": ("dimension", "coisometry", "symmetrizer_average", "naturality", "functoriality"),
    "ladder_coefficients": (
        "C_unitary", "L_unitary", "B_norm", "K0_is_C_dagger", "K1_is_L_dagger", "K_recursion",
    ),
    "comonoid": ("coassociativity", "counit_left", "counit_right", "cocommutativity"),
    "bialgebra": ("compatibility", "unit_counit", "unit_copy", "counit_mult"),
    "additivity": ("additivity",),
    "orthonormality": ("eps_isometry", "vacuum_normalised", "vacuum_orthogonal", "single_particle_split"),
    "product_preservation": (
        "k_isometry", "k_range_projector", "projection_left", "projection_right",
        "counit_via_k0", "comult_via_k",
    ),
    "ccr": ("ccr", "raising_commute", "lowering_commute", "lowering_is_adjoint", "closed_form_raising"),
    "coherent": ("copy", "delete", "eigen", "eigen_top_sector", "norm_partial_sum", "by_adjunction"),
    "adjunction": ("counit_triangle", "eta_comonoid_morphism", "unit_triangle"),
    "exponentials": (
        "coherent_as_exp", "raising_exp", "raising_exp_name", "exp_zero", "naturality", "additive",
        "via_adjunction",
    ),
    "embedding": ("multiplication", "unit", "retraction"),
}

# Residuals reported for information only; they never decide pass/fail.
INFO_PREFIX = "info."


@dataclass(frozen=True)
class LawReport:
    law_id: str
    case: str
    max_abs_deviation: float
    sector_restriction: str
    passed: bool
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self, include_timing: bool = False) -> dict:
        out = asdict(self)
        if not include_timing:
            del out["elapsed"]
        return out


def _report(law_id: str, case: str, details: dict, restriction: str, tol: float, started: float) -> LawReport:
    allowed = set(LAW_MANIFEST[law_id])
    unmapped = [k for k in details if not k.startswith(INFO_PREFIX) and k not in allowed]
    if unmapped:
        raise KeyError(f"{law_id}: statements {unmapped} missing from LAW_MANIFEST")
    counted = [v for k, v in details.items() if not k.startswith(INFO_PREFIX)]
    worst = max(counted, default=0.0)
    clean = {k: float(v) for k, v in sorted(details.items())}
    return LawReport(law_id, case, float(worst), restriction, bool(worst <= tol),
                     time.perf_counter() - started, clean)


def _merge(details: dict, key: str, value: float):
    details[key] = max(details.get(key, 0.0), float(value))


def _zero_like(M: Morphism) -> Morphism:
    return tl.zero_morphism(M.dom, M.cod)


def random_state(rng: np.random.Generator, A: tl.SpaceObject) -> Morphism:
    """Complex-Gaussian state of ``A`` normalised to unit length."""
    v = rng.normal(size=A.dim) + 1j * rng.normal(size=A.dim)
    n = np.linalg.norm(v)
    return state(A, v / n if n > 0 else v)


def random_morphism(rng: np.random.Generator, A: tl.SpaceObject, B: tl.SpaceObject,
                    normalise: bool = True) -> Morphism:
    """Complex-Gaussian map ``A -> B``, scaled to unit spectral norm by default."""
    M = rng.normal(size=(B.dim, A.dim)) + 1j * rng.normal(size=(B.dim, A.dim))
    if normalise and M.size:
        M = M / np.linalg.norm(M, 2)
    return Morphism(A, B, M)


def sample_states(rng: np.random.Generator, A: tl.SpaceObject, count: int) -> list:
    """``count`` random unit states plus the zero vector and every basis vector."""
    out = [random_state(rng, A) for _ in range(count)]
    out.append(tl.zero_morphism(UNIT, A))
    for i in range(A.dim):
        out.append(state(A, np.eye(A.dim)[i]))
    return out


# ---------------------------------------------------------------- module 1/2


def check_tensor_category(d: int, rng: np.random.Generator, tol: float = DEFAULT_TOL) -> LawReport:
    t0 = time.perf_counter()
    A, B = base(d), base(d + 1)
    det = {}
    f, f2 = random_morphism(rng, A, B, False), random_morphism(rng, A, B, False)
    g, h, k = random_morphism(rng, B, A, False), random_morphism(rng, B, B, False), random_morphism(rng, A, A, False)
    _merge(det, "bilinearity", max_abs_diff(g @ (f + f2), g @ f + g @ f2))
    _merge(det, "bilinearity", max_abs_diff((h + h) @ f, h @ f + h @ f))
    k2 = random_morphism(rng, A, A, False)
    _merge(det, "interchange", max_abs_diff(tensor(h, k) @ tensor(f, k2), tensor(h @ f, k @ k2)))
    zeta, theta = tl.duality_pair(A)
    idA, idAs = identity(A), identity(tl.dual_obj(A))
    _merge(det, "snake_left", max_abs_diff(tensor(idA, theta) @ tensor(zeta, idA), idA))
    _merge(det, "snake_right", max_abs_diff(tensor(theta, idAs) @ tensor(idAs, zeta), idAs))
    parts = [A, B, UNIT]
    total = tl.biproduct_obj(*parts)
    acc = tl.zero_morphism(total, total)
    for m in range(len(parts)):
        inj = tl.injection(parts, m)
        _merge(det, "dagger_biproduct", max_abs_diff(tl.projection(parts, m), inj.dag))
        for n in range(len(parts)):
            got = tl.projection(parts, n) @ inj
            want = identity(parts[m]) if m == n else tl.zero_morphism(parts[m], parts[n])
            _merge(det, "biproduct_orthogonality", max_abs_diff(got, want))
        acc = acc + inj @ tl.projection(parts, m)
    _merge(det, "biproduct_completeness", max_abs_diff(acc, identity(total)))
    s, t = tl.scalar(complex(*rng.normal(size=2))), tl.scalar(complex(*rng.normal(size=2)))
    _merge(det, "scalars_commute", max_abs_diff(s @ t, t @ s))
    # ⌜k∘h⌝ = (id ⊗ θ ⊗ id)(⌜k⌝ ⊗ ⌜h⌝)
    glue = tensor(identity(A), tl.duality_pair(B)[1], idAs)
    _merge(det, "name_composition", max_abs_diff(glue @ tensor(tl.name_of(g), tl.name_of(f)), tl.name_of(g @ f)))
    _merge(det, "transpose_involution",
           max_abs_diff(tl.cast(tl.transpose_of(tl.transpose_of(f)), dom=A, cod=B), f))
    _merge(det, "dagger_is_conjugate_transpose",
           max_abs_diff(tl.cast(tl.conjugate(tl.transpose_of(f)), dom=B, cod=A), f.dag))
    return _report("tensor_category", f"d={d}", det, "all entries", tol, t0)


def check_symmetric_powers(d: int, max_degree: int, rng: np.random.Generator,
                           tol: float = DEFAULT_TOL, brute_force_degree: int = 4) -> LawReport:
    t0 = time.perf_counter()
    A = base(d)
    det = {}
    f = random_morphism(rng, A, A)
    g = random_morphism(rng, A, A)
    for n in range(max_degree + 1):
        counted = len(st.multiset_basis(d, n))
        _merge(det, "dimension", abs(counted - tl.sym_dim(d, n)))
        sd = st.sym_isometry_dag(A, n)
        _merge(det, "coisometry", max_abs_diff(sd.dag @ sd, identity(sd.dom)))
        P = st.symmetrizer(A, n)
        if n <= brute_force_degree:
            _merge(det, "symmetrizer_average", max_abs_diff(P, st.symmetrizer_by_averaging(A, n)))
        fn = st.tensor_power(f, n)
        _merge(det, "naturality", max_abs_diff(fn @ P, P @ fn))
        _merge(det, "functoriality", max_abs_diff(st.sym_power(g @ f, n), st.sym_power(g, n) @ st.sym_power(f, n)))
    return _report("symmetric_powers", f"d={d},n<={max_degree}", det,
                   f"symmetrizer brute force for n<={brute_force_degree}", tol, t0)


def check_ladder_coefficients(coefficients: fk.LadderCoefficients, N: int, tol: float = DEFAULT_TOL) -> LawReport:
    t0 = time.perf_counter()
    return _report("ladder_coefficients", f"N={N}", coefficients.constraint_residuals(N),
                   f"indices up to {N}", tol, t0)


# ---------------------------------------------------------------- Fock structure


def check_comonoid(co: alg.ComonoidPresentation, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    return _report("comonoid", case or str(co.carrier), alg.comonoid_residuals(co), "all sectors", tol, t0)


def _degree_limit(obj: tl.SpaceObject) -> int:
    if obj.kind == "fock":
        return obj.cutoff
    return 0


def check_bialgebra(co: alg.ComonoidPresentation, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    """Compatibility of ``(d, e)`` with ``(d^†, e^†)`` on inputs of total degree ``≤ N``.

    The four-legged diagram is evaluated column by column on the restricted
    inputs, contracting each leg separately instead of forming ``d ⊗ d``.
    """
    t0 = time.perf_counter()
    A, g, u = co.carrier, co.comult, co.counit
    N = _degree_limit(A)
    D = A.dim
    det = {}
    AA = tensor_obj(A, A)
    lhs = g @ g.dag
    cols = np.flatnonzero(fk.degree_projector(AA, N))
    G = g.entries.reshape(D, D, D)          # [a1, a2, x]
    H = g.dag.entries.reshape(D, D, D)      # [c, a, b] of the multiplication
    xi, yi = np.divmod(cols, D)
    Dx = np.moveaxis(G[:, :, xi], 2, 0)     # [p, a1, a2]
    Dy = np.moveaxis(G[:, :, yi], 2, 0)     # [p, b1, b2]
    T = np.einsum("cab,pax->pcxb", H, Dx, optimize=True)
    U = np.einsum("pcxb,pby->pcxy", T, Dy, optimize=True)
    R = np.einsum("pcxy,exy->pce", U, H, optimize=True).reshape(len(cols), D * D)
    if len(cols):
        det["compatibility"] = float(np.max(np.abs(lhs.entries[:, cols] - R.T)))
    else:
        det["compatibility"] = 0.0
    _merge(det, "unit_counit", max_abs_diff(u @ u.dag, identity(UNIT)))
    _merge(det, "unit_copy", max_abs_diff(g @ u.dag, tensor(u.dag, u.dag)))
    counit_mult = tl.cast(tensor(u, u), dom=AA)
    _merge(det, "counit_mult", max_abs_diff(fk.restrict_total_degree(u @ g.dag, N),
                                            fk.restrict_total_degree(counit_mult, N)))
    return _report("bialgebra", case or str(A), det, f"inputs of total degree <= {N}", tol, t0)


def check_additivity(F: fk.FockSpace, pairs: Sequence, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    det = {}
    d = fk.comultiplication(F)
    for f, g in pairs:
        G = fk.fock_space(f.cod, F.cutoff, F.coefficients)
        lhs = fk.fock_map(F, G, f + g)
        Ff, Fg = fk.fock_map(F, G, f), fk.fock_map(F, G, g)
        rhs = fk.comultiplication(G).dag @ tl.tensor_apply([Ff, Fg], d)
        _merge(det, "additivity", max_abs_diff(lhs, rhs))
    return _report("additivity", case or _fcase(F), det, "all sectors", tol, t0)


def check_orthonormality(F: fk.FockSpace, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    e, eps, d = fk.counit_e(F), fk.epsilon_single(F), fk.comultiplication(F)
    det = {
        "eps_isometry": max_abs_diff(eps @ eps.dag, identity(F.base)),
        "vacuum_normalised": max_abs_diff(e @ e.dag, identity(UNIT)),
        "vacuum_orthogonal": max_abs_diff(e @ eps.dag, tl.zero_morphism(F.base, UNIT)),
        "single_particle_split": max_abs_diff(d @ eps.dag, tensor(eps.dag, e.dag) + tensor(e.dag, eps.dag)),
    }
    return _report("orthonormality", case or _fcase(F), det, "all sectors", tol, t0)


def check_product_preservation(A: tl.SpaceObject, B: tl.SpaceObject, N: int, tol: float = DEFAULT_TOL,
                               coefficients: Optional[fk.LadderCoefficients] = None, case: str = "") -> LawReport:
    """``k_{A,B}`` is an isometry mediating the product structure; ``e`` and ``d`` factor through it."""
    t0 = time.perf_counter()
    k = fk.k_decompose(A, B, N, coefficients)
    FA, FB = fk.fock_space(A, N, coefficients), fk.fock_space(B, N, coefficients)
    AB = tl.biproduct_obj(A, B)
    FAB = fk.fock_space(AB, N, coefficients)
    det = {
        "k_isometry": max_abs_diff(k.dag @ k, identity(k.dom)),
        "k_range_projector": max_abs_diff(k @ k.dag, fk.restrict_total_degree(identity(k.cod), N)),
    }
    piA, piB = tl.projection([A, B], 0), tl.projection([A, B], 1)
    left = tl.tensor_apply([identity(FA.object), fk.counit_e(FB)], k)
    right = tl.tensor_apply([fk.counit_e(FA), identity(FB.object)], k)
    det["projection_left"] = max_abs_diff(left, fk.fock_map(FAB, FA, tl.cast(piA, dom=AB)))
    det["projection_right"] = max_abs_diff(right, fk.fock_map(FAB, FB, tl.cast(piB, dom=AB)))
    F0 = fk.fock_space(tl.ZERO, N, coefficients)
    e_via = fk.k_zero(N) @ fk.fock_map(FA, F0, tl.zero_morphism(A, tl.ZERO))
    det["counit_via_k0"] = max_abs_diff(e_via, fk.counit_e(FA))
    kAA = fk.k_decompose(A, A, N, coefficients)
    FAA = fk.fock_space(tl.biproduct_obj(A, A), N, coefficients)
    d_via = kAA @ fk.fock_map(FA, FAA, tl.diagonal(A))
    det["comult_via_k"] = max_abs_diff(d_via, fk.comultiplication(FA))
    return _report("product_preservation", case or f"dA={A.dim},dB={B.dim},N={N}", det,
                   "k compared as an isometry onto total degree <= N", tol, t0)


def check_ccr(F: fk.FockSpace, phi: Morphism, psi: Morphism, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    N = F.cutoff
    a_phi, a_psi = fk.lowering(F, phi), fk.lowering(F, psi)
    ad_phi, ad_psi = fk.raising(F, phi), fk.raising(F, psi)
    overlap = (phi.dag @ psi).entries[0, 0]
    comm = a_phi @ ad_psi - ad_psi @ a_phi - overlap * identity(F.object)
    det = {
        "ccr": max_abs_diff(fk.restrict_total_degree(comm, N - 1), _zero_like(comm)),
        INFO_PREFIX + "ccr_unrestricted": max_abs_diff(comm, _zero_like(comm)),
        "raising_commute": max_abs_diff(fk.restrict_total_degree(ad_phi @ ad_psi, N - 2),
                                        fk.restrict_total_degree(ad_psi @ ad_phi, N - 2)),
        "lowering_commute": max_abs_diff(a_phi @ a_psi, a_psi @ a_phi),
        "lowering_is_adjoint": max_abs_diff(a_phi, ad_phi.dag),
        "closed_form_raising": max_abs_diff(ad_phi, fk.raising_componentwise(F, phi)),
    }
    return _report("ccr", case or _fcase(F), det,
                   f"ccr on sectors <= {N - 1}; raising pair on sectors <= {N - 2}", tol, t0)


def coherent_norm_partial_sum(norm_sq: float, N: int) -> float:
    """``Σ_{n≤N} x^n / n!``, the squared norm of a truncated coherent state."""
    return float(sum(norm_sq ** n / factorial(n) for n in range(N + 1)))


def check_coherent(F: fk.FockSpace, phi: Morphism, psi: Optional[Morphism] = None,
                   tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    N = F.cutoff
    psi = phi if psi is None else psi
    coh = fk.coherent_state(F, phi)
    d, e = fk.comultiplication(F), fk.counit_e(F)
    det = {}
    det["copy"] = max_abs_diff(fk.restrict_total_degree(d @ coh, N, "cod"),
                               fk.restrict_total_degree(tensor(coh, coh), N, "cod"))
    det["delete"] = max_abs_diff(e @ coh, identity(UNIT))
    lowered = fk.lowering(F, psi) @ coh
    overlap = (psi.dag @ phi).entries[0, 0]
    det["eigen"] = max_abs_diff(fk.restrict_total_degree(lowered, N - 1, "cod"),
                                fk.restrict_total_degree(overlap * coh, N - 1, "cod"))
    top = lowered.entries[F.sector_slice(N), 0]
    det["eigen_top_sector"] = float(np.max(np.abs(top), initial=0.0))
    norm_sq = float(np.vdot(phi.entries, phi.entries).real)
    det["norm_partial_sum"] = abs(float(np.vdot(coh.entries, coh.entries).real) - coherent_norm_partial_sum(norm_sq, N))
    det["by_adjunction"] = max_abs_diff(coh, fk.coherent_state_by_adjunction(F, phi))
    return _report("coherent", case or _fcase(F), det,
                   f"copy on total degree <= {N}; eigen on sectors <= {N - 1}", tol, t0)


def check_adjunction(F: fk.FockSpace, co: alg.ComonoidPresentation, tol: float = DEFAULT_TOL,
                     triangle_limit: int = 5000, case: str = "") -> LawReport:
    """Triangle identities and the comonoid-morphism property of ``Rη``.

    The unit triangle needs ``F(F(A))``, whose size grows like ``dim(F(A))^N``;
    it is evaluated only when that product stays under ``triangle_limit``.
    """
    t0 = time.perf_counter()
    N = F.cutoff
    det = {}
    eta = fk.eta_comonoid(co, N, F.coefficients)
    Fc = fk.fock_space(co.carrier, N, F.coefficients)
    det["counit_triangle"] = max_abs_diff(fk.epsilon_single(Fc) @ eta, identity(co.carrier))
    lhs = fk.comultiplication(Fc) @ eta
    rhs = tensor(eta, eta) @ co.comult
    det["eta_comonoid_morphism"] = max_abs_diff(fk.restrict_total_degree(lhs, N, "cod"),
                                                fk.restrict_total_degree(rhs, N, "cod"))
    restriction = f"comonoid morphism on total degree <= {N}"
    if F.dim ** N <= triangle_limit:
        outer = fk.eta_comonoid(fk.fock_comonoid(F), N, F.coefficients)
        FF = fk.fock_space(F.object, N, F.coefficients)
        back = fk.fock_map(FF, F, fk.epsilon_single(F)) @ outer
        det["unit_triangle"] = max_abs_diff(back, identity(F.object))
    else:
        restriction += "; unit triangle skipped (F(F(A)) too large)"
    return _report("adjunction", case or f"{_fcase(F)},co={co.carrier}", det, restriction, tol, t0)


def check_exponentials(F: fk.FockSpace, phi: Morphism, rng: Optional[np.random.Generator] = None,
                       order: int = 20, tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    rng = rng or np.random.default_rng(0)
    N = F.cutoff
    det = {}
    coh = fk.coherent_state(F, phi)
    qplus = fk.fock_monoid(F)
    eps = fk.epsilon_single(F)
    det["coherent_as_exp"] = max_abs_diff(alg.monoid_exp(qplus, eps.dag @ phi, N, check=False), coh)
    expa = alg.endo_exp(fk.raising(F, phi), N)
    det["raising_exp"] = max_abs_diff(expa @ fk.vacuum_state(F), coh)
    named = tl.unname(alg.monoid_embed(qplus) @ coh, F.object, F.object)
    det["raising_exp_name"] = max_abs_diff(named, expa)
    det["exp_zero"] = max_abs_diff(alg.monoid_exp(qplus, tl.zero_morphism(UNIT, F.object), N, check=False),
                                   fk.vacuum_state(F))
    # F(f) is a morphism of the flipped Fock monoids
    f = random_morphism(rng, F.base, F.base)
    Ff = fk.fock_map(F, F, f)
    x = eps.dag @ phi
    det["naturality"] = max_abs_diff(alg.monoid_exp(qplus, Ff @ x, N, check=False),
                                     Ff @ alg.monoid_exp(qplus, x, N, check=False))
    for mono in (alg.elementwise_monoid(2), alg.cyclic_group_monoid(3)):
        A = mono.carrier
        # a unit element only bounds the series when the multiplication is contractive
        shrink = 1.0 / max(1.0, float(np.linalg.norm(mono.mult.entries, 2)))
        u, v = shrink * random_state(rng, A), shrink * random_state(rng, A)
        u = float(rng.uniform(0.1, 1.0)) * u
        lhs = mono.mult @ tensor(alg.monoid_exp(mono, u, order), alg.monoid_exp(mono, v, order))
        _merge(det, "additive", max_abs_diff(lhs, alg.monoid_exp(mono, u + v, order)))
        _merge(det, "exp_zero", max_abs_diff(alg.monoid_exp(mono, tl.zero_morphism(UNIT, A), order), mono.unit))
        _merge(det, "via_adjunction", max_abs_diff(fk.monoid_exp_by_adjunction(mono, u, N),
                                                   alg.monoid_exp(mono, u, N)))
    ew = alg.elementwise_monoid(2)
    first = Morphism(base(2), base(1), [[1.0, 0.0]])
    w = random_state(rng, base(2))
    _merge(det, "naturality", max_abs_diff(alg.monoid_exp(alg.elementwise_monoid(1), first @ w, N),
                                           first @ alg.monoid_exp(ew, w, N)))
    return _report("exponentials", case or _fcase(F), det,
                   f"Fock exponentials at order {N}; additive law at order {order}", tol, t0)


def check_embedding(mono: alg.MonoidPresentation, rng: np.random.Generator, samples: int = 5,
                    tol: float = DEFAULT_TOL, case: str = "") -> LawReport:
    t0 = time.perf_counter()
    N = mono.carrier
    m = alg.monoid_embed(mono)
    endo = alg.endo_monoid(N)
    det = {"unit": max_abs_diff(m @ mono.unit, endo.unit),
           "retraction": max_abs_diff(alg.monoid_retraction(mono) @ m, identity(N))}
    for _ in range(samples):
        x, y = random_state(rng, N), random_state(rng, N)
        lhs = endo.mult @ tensor(m @ x, m @ y)
        rhs = m @ mono.mult @ tensor(x, y)
        _merge(det, "multiplication", max_abs_diff(lhs, rhs))
    return _report("embedding", case or str(N), det, "sampled elements", tol, t0)


def _fcase(F: fk.FockSpace) -> str:
    return f"d={F.base.dim},N={F.cutoff}"


# ---------------------------------------------------------------- suite


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple = (1, 2, 3)
    cutoffs: tuple = (2, 3, 4)
    seed: int = 0
    n_random: int = 5
    tol: float = DEFAULT_TOL
    coefficients: fk.LadderCoefficients = fk.DEFAULT_COEFFICIENTS
    triangle_limit: int = 5000


def _grid_checks(d: int, N: int, cfg: SuiteConfig) -> list:
    rng = np.random.default_rng([cfg.seed, d, N])
    A = base(d)
    F = fk.fock_space(A, N, cfg.coefficients)
    tol = cfg.tol
    case = _fcase(F)
    reports = [
        check_comonoid(fk.fock_comonoid(F), tol, case),
        check_bialgebra(fk.fock_comonoid(F), tol, case),
        check_orthonormality(F, tol, case),
    ]
    pairs = [(random_morphism(rng, A, A), random_morphism(rng, A, A)) for _ in range(cfg.n_random)]
    reports.append(check_additivity(F, pairs, tol, case))
    states = sample_states(rng, A, cfg.n_random)
    ccr = [check_ccr(F, p, q, tol, case) for p, q in zip(states, states[1:] + states[:1])]
    reports.append(_fold(ccr))
    reports.append(_fold([check_coherent(F, p, q, tol, case) for p, q in zip(states, states[::-1])]))
    comonoids = [alg.unit_comonoid(), alg.diagonal_comonoid(2), alg.dagger_flip(alg.cyclic_group_monoid(3))]
    adj = [check_adjunction(F, co, tol, cfg.triangle_limit, case) for co in comonoids]
    reports.append(_fold(adj))
    if d <= 2 and N <= 3:
        reports.append(check_product_preservation(A, A, N, tol, cfg.coefficients, case))
        reports.append(check_product_preservation(A, base(1), N, tol, cfg.coefficients, case))
    reports.append(_fold([check_exponentials(F, p, rng, tol=tol, case=case) for p in states[:cfg.n_random]]))
    return reports


def _fold(reports: Sequence[LawReport]) -> LawReport:
    """Combine reports of one law and case into a single worst-case report."""
    first = reports[0]
    det = {}
    for r in reports:
        for k, v in r.details.items():
            _merge(det, k, v)
    worst = max(r.max_abs_deviation for r in reports)
    restriction = "; ".join(dict.fromkeys(r.sector_restriction for r in reports))
    return LawReport(first.law_id, first.case, worst, restriction, all(r.passed for r in reports),
                     sum(r.elapsed for r in reports), dict(sorted(det.items())))


def run_suite(config: Optional[SuiteConfig] = None) -> list:
    """Run every law over the configured grid; reports sorted by ``(law_id, case)``."""
    cfg = config or SuiteConfig()
    reports = []
    for d in cfg.dims:
        reports.append(check_tensor_category(d, np.random.default_rng([cfg.seed, d]), cfg.tol))
        reports.append(check_symmetric_powers(d, max(cfg.cutoffs), np.random.default_rng([cfg.seed, d, 99]),
                                              cfg.tol))
        for N in cfg.cutoffs:
            reports.extend(_grid_checks(d, N, cfg))
    for N in cfg.cutoffs:
        reports.append(check_ladder_coefficients(cfg.coefficients, N, cfg.tol))
    rng = np.random.default_rng([cfg.seed, 7])
    T = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    monoids = {
        "elementwise C2": alg.elementwise_monoid(2),
        "random conjugate C2": alg.conjugated_monoid(alg.elementwise_monoid(2), T),
        "cyclic Z3": alg.cyclic_group_monoid(3),
    }
    for name, mono in monoids.items():
        reports.append(check_embedding(mono, rng, cfg.n_random, cfg.tol, name))
    missing = set(LAW_MANIFEST) - {r.law_id for r in reports}
    if missing:
        raise KeyError(f"laws never exercised by the suite: {sorted(missing)}")
    return sorted(reports, key=lambda r: (r.law_id, r.case))


def reports_to_json(reports: Sequence[LawReport], include_timing: bool = False) -> str:
    return json.dumps([r.to_dict(include_timing) for r in reports], indent=2, sort_keys=True)


def all_passed(reports: Sequence[LawReport]) -> bool:
    return all(r.passed for r in reports)
