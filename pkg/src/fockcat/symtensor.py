"""Tensor powers, symmetric powers and their occupation-number bases."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import factorial, prod
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange
from .tensorlinalg import (
    Morphism,
    SpaceObject,
    apply_tensor_power,
    identity,
    sym_dim,
    sym_obj,
    tensor,
    tensor_power_obj,
    UNIT,
)


@dataclass(frozen=True)
class MultisetBasis:
    """Lexicographically ordered multisets of size ``degree`` over ``range(base_dim)``.

    Each element is a non-decreasing index tuple; the position of a tuple in
    ``elements`` is its index in the occupation-number basis of ``S_n(C^d)``.
    """

    base_dim: int
    degree: int
    elements: tuple = field(repr=False)

    def __len__(self):
        return len(self.elements)

    def index(self, multiset: Sequence[int]) -> int:
        return _position_table(self.base_dim, self.degree)[tuple(sorted(multiset))]

    def multiplicities(self, k: int) -> tuple:
        """Occupation numbers ``(m_0, ..., m_{d-1})`` of the ``k``-th element."""
        counts = [0] * self.base_dim
        for i in self.elements[k]:
            counts[i] += 1
        return tuple(counts)


@lru_cache(maxsize=None)
def multiset_basis(d: int, n: int) -> MultisetBasis:
    if d < 0 or n < 0:
        raise IndexOutOfRange("dimension and degree must be non-negative")
    return MultisetBasis(d, n, tuple(combinations_with_replacement(range(d), n)))


@lru_cache(maxsize=None)
def _position_table(d: int, n: int) -> dict:
    return {t: k for k, t in enumerate(multiset_basis(d, n).elements)}


def orbit_size(multiset: Sequence[int]) -> int:
    """Number of distinct orderings, ``n! / prod(m_i!)``."""
    counts = {}
    for i in multiset:
        counts[i] = counts.get(i, 0) + 1
    return factorial(len(multiset)) // prod(factorial(c) for c in counts.values())


@lru_cache(maxsize=None)
def _product_to_multiset(d: int, n: int):
    """For every product-basis index of ``(C^d)^{⊗n}``: its multiset index and weight.

    The weight is ``1/sqrt(M)`` with ``M`` the orbit size of the multiset, i.e.
    the entry of ``s^†`` linking that product vector to its multiset column.
    """
    size = d ** n
    if n == 0:
        return np.zeros(1, dtype=np.intp), np.ones(1)
    if size == 0:
        return np.zeros(0, dtype=np.intp), np.zeros(0)
    digits = np.indices([d] * n).reshape(n, size).T
    digits = np.sort(digits, axis=1)
    table = _position_table(d, n)
    index = np.fromiter((table[tuple(row)] for row in digits), dtype=np.intp, count=size)
    orbit = np.array([orbit_size(t) for t in multiset_basis(d, n).elements], dtype=float)
    weight = 1.0 / np.sqrt(orbit[index])
    index.flags.writeable = False
    weight.flags.writeable = False
    return index, weight


def sym_embed_matrix(d: int, n: int) -> np.ndarray:
    """Raw matrix of ``s^†``: columns are normalised symmetrised basis tensors."""
    index, weight = _product_to_multiset(d, n)
    out = np.zeros((d ** n, sym_dim(d, n)), dtype=np.complex128)
    out[np.arange(d ** n), index] = weight
    return out


def sym_project_apply(d: int, n: int, X: np.ndarray) -> np.ndarray:
    """``s · X`` for a raw ``(d**n, k)`` array, without building ``s``."""
    index, weight = _product_to_multiset(d, n)
    out = np.zeros((sym_dim(d, n), X.shape[1]), dtype=np.complex128)
    np.add.at(out, index, weight[:, None] * X)
    return out


def sym_embed_apply(d: int, n: int, Y: np.ndarray) -> np.ndarray:
    """``s^† · Y`` for a raw ``(sym_dim, k)`` array."""
    index, weight = _product_to_multiset(d, n)
    return weight[:, None] * Y[index]


def permutation_unitary(A: SpaceObject, perm: Sequence[int]) -> Morphism:
    """Unitary on ``A^{⊗n}`` moving tensor factor ``i`` to position ``perm[i]``."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise IndexOutOfRange(f"{perm!r} is not a permutation of range({n})")
    obj = tensor_power_obj(A, n)
    d = A.dim
    inverse = [0] * n
    for i, p in enumerate(perm):
        inverse[p] = i
    flat = np.arange(d ** n).reshape([d] * n) if n else np.arange(1)
    source = np.transpose(flat, inverse).ravel() if n else flat
    U = np.zeros((d ** n, d ** n), dtype=np.complex128)
    U[np.arange(d ** n), source] = 1.0
    return Morphism(obj, obj, U)


def sym_isometry_dag(A: SpaceObject, n: int) -> Morphism:
    """``s^†: S_n(A) -> A^{⊗n}``, an isometry onto the symmetric subspace."""
    return Morphism(sym_obj(A, n), tensor_power_obj(A, n), sym_embed_matrix(A.dim, n))


def sym_projection(A: SpaceObject, n: int) -> Morphism:
    """``s: A^{⊗n} -> S_n(A)``, the coisometry with ``s ∘ s^† = id``."""
    return sym_isometry_dag(A, n).dag


def symmetrizer(A: SpaceObject, n: int) -> Morphism:
    """Orthogonal projector ``s^† ∘ s`` onto the symmetric tensors of ``A^{⊗n}``."""
    sd = sym_isometry_dag(A, n)
    return sd @ sd.dag


def symmetrizer_by_averaging(A: SpaceObject, n: int) -> Morphism:
    """``(1/n!) Σ_π U_π`` over the whole symmetric group; brute force."""
    obj = tensor_power_obj(A, n)
    acc = np.zeros((obj.dim, obj.dim), dtype=np.complex128)
    for perm in permutations(range(n)):
        acc += permutation_unitary(A, perm).entries
    return Morphism(obj, obj, acc / factorial(n))


def tensor_power(f: Morphism, n: int) -> Morphism:
    if n < 0:
        raise IndexOutOfRange("tensor power must be non-negative")
    if n == 0:
        return identity(UNIT)
    return tensor(*([f] * n))


def sym_power(f: Morphism, n: int) -> Morphism:
    """``S_n(f) = s_B ∘ f^{⊗n} ∘ s_A^†``, computed factor by factor."""
    A, B = f.dom, f.cod
    cols = sym_embed_matrix(A.dim, n)
    image = apply_tensor_power(f, cols, n)
    entries = sym_project_apply(B.dim, n, image)
    return Morphism(sym_obj(A, n), sym_obj(B, n), entries)


def sym_state(phi: Morphism, n: int) -> np.ndarray:
    """Raw vector ``s^n(phi^{⊗n})`` for a state ``phi: I -> A``."""
    v = phi.entries[:, 0]
    acc = np.ones(1, dtype=np.complex128)
    for _ in range(n):
        acc = np.kron(acc, v)
    return sym_project_apply(phi.cod.dim, n, acc.reshape(-1, 1))[:, 0]
