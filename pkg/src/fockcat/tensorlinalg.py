"""Finite-dimensional dagger compact category with biproducts.

Objects are :class:`SpaceObject` values describing how a finite dimensional
complex space was built; morphisms are :class:`Morphism` values wrapping a
dense ``complex128`` matrix of shape ``(cod.dim, dom.dim)``.

Index conventions are fixed once and for all:

* tensor products use the row-major composite index ``i * dim(right) + j``
  (``numpy.kron`` order);
* a biproduct index is ``offset(part) + local index``.

Tensor objects are flattened and unit factors dropped when they are built,
so associators and unitors are literally identities and never need to be
inserted by hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import comb, prod
from typing import Optional, Sequence

import numpy as np

from .errors import DomainMismatch, IndexOutOfRange, InvariantViolation

DEFAULT_TOL = 1e-10

_KINDS = ("base", "unit", "tensor", "biproduct", "fock", "sym")


@dataclass(frozen=True)
class SpaceObject:
    """A finite-dimensional space together with the recipe that built it.

    Use the factory functions (:func:`base`, :data:`UNIT`, :func:`tensor_obj`,
    :func:`biproduct_obj`, :func:`fock_obj`, :func:`sym_obj`, :func:`dual_obj`)
    rather than calling the constructor directly; they enforce the dimension
    invariants and the normalisation of tensor products.
    """

    kind: str
    dim: int
    parts: tuple = ()
    cutoff: Optional[int] = None
    degree: Optional[int] = None
    dual: bool = False

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InvariantViolation(f"unknown object kind {self.kind!r}")
        if self.dim < 0:
            raise InvariantViolation("dimension must be non-negative")

    @property
    def base(self) -> "SpaceObject":
        """Underlying single-particle object of a Fock or symmetric object."""
        if self.kind not in ("fock", "sym"):
            raise AttributeError(f"{self.kind} object has no base")
        return self.parts[0]

    def __str__(self):
        star = "*" if self.dual else ""
        if self.kind == "unit":
            return "I"
        if self.kind == "base":
            return f"C{self.dim}{star}"
        if self.kind == "tensor":
            return "(" + " ⊗ ".join(map(str, self.parts)) + ")"
        if self.kind == "biproduct":
            if not self.parts:
                return "0"
            return "(" + " ⊕ ".join(map(str, self.parts)) + ")" + star
        if self.kind == "fock":
            return f"F[{self.parts[0]}; N={self.cutoff}]{star}"
        return f"S{self.degree}[{self.parts[0]}]{star}"


UNIT = SpaceObject("unit", 1)
ZERO = SpaceObject("biproduct", 0, ())


def base(d: int) -> SpaceObject:
    """A plain space ``C^d`` with no further structure."""
    return SpaceObject("base", int(d))


def tensor_obj(*objs: SpaceObject) -> SpaceObject:
    """Strict tensor product: nested tensors are flattened, units dropped."""
    flat = []
    for o in objs:
        if o.kind == "tensor":
            flat.extend(o.parts)
        elif o.kind != "unit":
            flat.append(o)
    if not flat:
        return UNIT
    if len(flat) == 1:
        return flat[0]
    return SpaceObject("tensor", prod(p.dim for p in flat), tuple(flat))


def tensor_power_obj(A: SpaceObject, n: int) -> SpaceObject:
    return tensor_obj(*([A] * n))


def biproduct_obj(*objs: SpaceObject) -> SpaceObject:
    return SpaceObject("biproduct", sum(o.dim for o in objs), tuple(objs))


def sym_dim(d: int, n: int) -> int:
    if n == 0:
        return 1
    return comb(d + n - 1, n)


def sym_obj(A: SpaceObject, n: int) -> SpaceObject:
    """The n-th symmetric power; degree 0 is the unit and degree 1 is ``A``."""
    if n < 0:
        raise IndexOutOfRange("symmetric degree must be non-negative")
    if n == 0:
        return UNIT
    if n == 1:
        return A
    return SpaceObject("sym", sym_dim(A.dim, n), (A,), degree=n)


def fock_obj(A: SpaceObject, cutoff: int) -> SpaceObject:
    if cutoff < 0:
        raise IndexOutOfRange("cutoff must be non-negative")
    dim = sum(sym_dim(A.dim, n) for n in range(cutoff + 1))
    return SpaceObject("fock", dim, (A,), cutoff=cutoff)


def dual_obj(A: SpaceObject) -> SpaceObject:
    """``A*``.  The unit is self-dual; duals of tensors are taken factorwise."""
    if A.kind == "unit":
        return A
    if A.kind == "tensor":
        return tensor_obj(*(dual_obj(p) for p in A.parts))
    return SpaceObject(A.kind, A.dim, A.parts, A.cutoff, A.degree, not A.dual)


def _as_matrix(entries, shape) -> np.ndarray:
    arr = np.array(entries, dtype=np.complex128)
    if arr.shape != shape:
        if arr.size == prod(shape) and arr.ndim <= 1:
            arr = arr.reshape(shape)
        else:
            raise InvariantViolation(f"entries have shape {arr.shape}, expected {shape}")
    if not np.all(np.isfinite(arr)):
        raise InvariantViolation("morphism entries must be finite")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Morphism:
    """A typed linear map ``dom -> cod``; ``entries`` is ``cod.dim x dom.dim``.

    ``g @ f`` is composition ``g ∘ f``, ``f + g`` the biproduct sum and
    ``s * f`` the scalar multiple.  Instances are immutable.
    """

    dom: SpaceObject
    cod: SpaceObject
    entries: np.ndarray

    # make numpy scalars defer to __rmul__ instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "entries", _as_matrix(self.entries, (self.cod.dim, self.dom.dim)))

    @property
    def shape(self):
        return self.entries.shape

    @property
    def dag(self) -> "Morphism":
        return dagger(self)

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def __add__(self, other: "Morphism") -> "Morphism":
        return add(self, other)

    def __sub__(self, other: "Morphism") -> "Morphism":
        return add(self, scalar_mul(-1.0, other))

    def __neg__(self) -> "Morphism":
        return scalar_mul(-1.0, self)

    def __rmul__(self, s) -> "Morphism":
        return scalar_mul(s, self)

    def __repr__(self):
        return f"Morphism({self.dom} -> {self.cod}, shape={self.entries.shape})"


def _check_same_type(f: Morphism, g: Morphism, what: str):
    if f.dom != g.dom or f.cod != g.cod:
        raise DomainMismatch(
            f"{what}: {f.dom} -> {f.cod} is not parallel to {g.dom} -> {g.cod}"
        )


def cast(f: Morphism, dom: Optional[SpaceObject] = None, cod: Optional[SpaceObject] = None) -> Morphism:
    """Re-tag ``f`` with new (equal-dimensional) domain and/or codomain."""
    dom = f.dom if dom is None else dom
    cod = f.cod if cod is None else cod
    if dom.dim != f.dom.dim or cod.dim != f.cod.dim:
        raise DomainMismatch(f"cannot cast {f.dom} -> {f.cod} to {dom} -> {cod}")
    return Morphism(dom, cod, f.entries)


def identity(A: SpaceObject) -> Morphism:
    return Morphism(A, A, np.eye(A.dim, dtype=np.complex128))


def zero_morphism(A: SpaceObject, B: SpaceObject) -> Morphism:
    return Morphism(A, B, np.zeros((B.dim, A.dim), dtype=np.complex128))


def scalar(z: complex) -> Morphism:
    """The 1x1 morphism ``I -> I`` with value ``z``."""
    return Morphism(UNIT, UNIT, [[z]])


def state(A: SpaceObject, vector) -> Morphism:
    """A state ``I -> A`` from a length ``dim(A)`` vector."""
    v = np.asarray(vector, dtype=np.complex128).reshape(A.dim, 1)
    return Morphism(UNIT, A, v)


def compose(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f``; requires ``g.dom == f.cod`` structurally."""
    if g.dom != f.cod:
        raise DomainMismatch(f"cannot compose: codomain {f.cod} of first map != domain {g.dom} of second")
    return Morphism(f.dom, g.cod, g.entries @ f.entries)


def compose_all(*fs: Morphism) -> Morphism:
    """``compose_all(h, g, f) == h ∘ g ∘ f``."""
    return reduce(compose, fs)


def tensor(*fs: Morphism) -> Morphism:
    if not fs:
        return identity(UNIT)
    entries = reduce(np.kron, (f.entries for f in fs))
    return Morphism(tensor_obj(*(f.dom for f in fs)), tensor_obj(*(f.cod for f in fs)), entries)


def _factor_dims(obj: SpaceObject, n: int) -> list:
    if n == 1:
        return [obj.dim]
    if obj.kind == "tensor" and len(obj.parts) == n:
        return [p.dim for p in obj.parts]
    raise DomainMismatch(f"{obj} does not split into {n} tensor factors")


def tensor_apply(fs: Sequence[Morphism], g: Morphism) -> Morphism:
    """``(f_1 ⊗ ... ⊗ f_k) ∘ g`` without materialising the Kronecker product.

    Each factor is contracted against its own axis of ``g``'s codomain,
    which keeps memory linear in the size of the result.
    """
    target = tensor_obj(*(f.dom for f in fs))
    if target != g.cod:
        raise DomainMismatch(f"cannot compose: codomain {g.cod} != domain {target}")
    cols = g.dom.dim
    # unit factors keep a length-1 axis so every f owns exactly one axis
    X = g.entries.reshape([f.dom.dim for f in fs] + [cols])
    for k, f in enumerate(fs):
        X = np.moveaxis(np.tensordot(f.entries, X, axes=([1], [k])), 0, k)
    cod = tensor_obj(*(f.cod for f in fs))
    return Morphism(g.dom, cod, X.reshape(cod.dim, cols))


def apply_tensor_power(f: Morphism, X: np.ndarray, n: int) -> np.ndarray:
    """Apply ``f^{⊗n}`` to the columns of a raw ``(dom.dim**n, k)`` array."""
    d_in, d_out = f.dom.dim, f.cod.dim
    cols = X.shape[1]
    if n == 0:
        return X.copy()
    Y = X.reshape([d_in] * n + [cols])
    for k in range(n):
        Y = np.moveaxis(np.tensordot(f.entries, Y, axes=([1], [k])), 0, k)
    return Y.reshape(d_out ** n, cols)


def add(f: Morphism, g: Morphism) -> Morphism:
    _check_same_type(f, g, "add")
    return Morphism(f.dom, f.cod, f.entries + g.entries)


def sum_morphisms(fs: Sequence[Morphism], dom: SpaceObject, cod: SpaceObject) -> Morphism:
    out = zero_morphism(dom, cod)
    for f in fs:
        out = add(out, f)
    return out


def scalar_mul(s, f: Morphism) -> Morphism:
    """``s · f`` where ``s`` is a number or a 1x1 scalar morphism."""
    if isinstance(s, Morphism):
        if s.dom != UNIT or s.cod != UNIT:
            raise DomainMismatch("scalar multiple needs a morphism I -> I")
        s = s.entries[0, 0]
    return Morphism(f.dom, f.cod, complex(s) * f.entries)


def direct_sum(*fs: Morphism) -> Morphism:
    """Block-diagonal ``f_1 ⊕ ... ⊕ f_k`` between biproduct objects."""
    dom = biproduct_obj(*(f.dom for f in fs))
    cod = biproduct_obj(*(f.cod for f in fs))
    out = np.zeros((cod.dim, dom.dim), dtype=np.complex128)
    r = c = 0
    for f in fs:
        out[r:r + f.cod.dim, c:c + f.dom.dim] = f.entries
        r += f.cod.dim
        c += f.dom.dim
    return Morphism(dom, cod, out)


def swap(A: SpaceObject, B: SpaceObject) -> Morphism:
    """Symmetry ``A ⊗ B -> B ⊗ A``."""
    da, db = A.dim, B.dim
    idx = np.arange(da * db).reshape(da, db).T.ravel()
    P = np.zeros((da * db, da * db), dtype=np.complex128)
    P[np.arange(da * db), idx] = 1.0
    return Morphism(tensor_obj(A, B), tensor_obj(B, A), P)


def injection(parts: Sequence[SpaceObject], n: int) -> Morphism:
    if not 0 <= n < len(parts):
        raise IndexOutOfRange(f"part {n} of a {len(parts)}-fold biproduct")
    total = biproduct_obj(*parts)
    offset = sum(p.dim for p in parts[:n])
    M = np.zeros((total.dim, parts[n].dim), dtype=np.complex128)
    M[offset:offset + parts[n].dim, :] = np.eye(parts[n].dim)
    return Morphism(parts[n], total, M)


def projection(parts: Sequence[SpaceObject], n: int) -> Morphism:
    return dagger(injection(parts, n))


def diagonal(A: SpaceObject, k: int = 2) -> Morphism:
    """``Δ: A -> A ⊕ ... ⊕ A`` (k copies), the sum of the injections."""
    parts = [A] * k
    total = biproduct_obj(*parts)
    return sum_morphisms([injection(parts, i) for i in range(k)], A, total)


def codiagonal(A: SpaceObject, k: int = 2) -> Morphism:
    return dagger(diagonal(A, k))


def dagger(f: Morphism) -> Morphism:
    return Morphism(f.cod, f.dom, f.entries.conj().T)


def conjugate(f: Morphism) -> Morphism:
    """The conjugation functor ``f_*: A* -> B*`` (entrywise conjugate)."""
    return Morphism(dual_obj(f.dom), dual_obj(f.cod), f.entries.conj())


def transpose_of(f: Morphism) -> Morphism:
    """``f*: B* -> A*`` for ``f: A -> B``; plain matrix transpose."""
    return Morphism(dual_obj(f.cod), dual_obj(f.dom), f.entries.T)


def duality_pair(A: SpaceObject):
    """Return ``(zeta, theta)`` with ``zeta: I -> A ⊗ A*`` and ``theta: A* ⊗ A -> I``."""
    d = A.dim
    v = np.eye(d, dtype=np.complex128).reshape(d * d, 1)
    zeta = Morphism(UNIT, tensor_obj(A, dual_obj(A)), v)
    theta = Morphism(tensor_obj(dual_obj(A), A), UNIT, v.T)
    return zeta, theta


def name_of(f: Morphism) -> Morphism:
    """``⌜f⌝: I -> B ⊗ A*``, the row-major vectorisation of ``f: A -> B``."""
    cod = tensor_obj(f.cod, dual_obj(f.dom))
    return Morphism(UNIT, cod, f.entries.reshape(-1, 1))


def unname(v: Morphism, dom: SpaceObject, cod: SpaceObject) -> Morphism:
    """Inverse of :func:`name_of`: bend the dual wire of ``v: I -> B ⊗ A*`` back."""
    expected = tensor_obj(cod, dual_obj(dom))
    if v.dom != UNIT or v.cod != expected:
        raise DomainMismatch(f"expected a state of {expected}, got {v.dom} -> {v.cod}")
    return Morphism(dom, cod, v.entries.reshape(cod.dim, dom.dim))


def trace(f: Morphism) -> complex:
    if f.dom != f.cod:
        raise DomainMismatch("trace needs an endomorphism")
    return complex(np.trace(f.entries))


def max_abs_diff(f: Morphism, g: Morphism) -> float:
    """Largest absolute entrywise deviation between two parallel morphisms."""
    _check_same_type(f, g, "comparison")
    if f.entries.size == 0:
        return 0.0
    return float(np.max(np.abs(f.entries - g.entries)))


def allclose(f: Morphism, g: Morphism, tol: float = DEFAULT_TOL) -> bool:
    return max_abs_diff(f, g) <= tol
