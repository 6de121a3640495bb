"""Arithmetic in the group ring KG with dense coefficient vectors.

Single elements are :class:`GroupRingElement` values. The ``batch_*``
functions work on integer arrays of shape ``(N, |G|)`` holding ``N``
coefficient vectors at once; the checkers and the unit search use them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, ContractError, InputError
from .groups import Group
from .morphisms import InvolutionSpec
from .rings import CoefficientRing

FULL_ENUMERATION_BOUND = 2**16


@lru_cache(maxsize=256)
def _left_division(G: Group) -> np.ndarray:
    """``div[g, k] = g^-1 k``: the partner of ``g`` in a product landing on ``k``."""
    return G.table[G.inverses]


def batch_mul(G: Group, K: CoefficientRing, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """Row-wise convolution: ``out[i, k] = sum_{g h = k} X[i, g] * Y[i, h]``."""
    div = _left_division(G)
    add, mul = K.add, K.mul
    out = np.zeros(np.broadcast_shapes(X.shape, Y.shape), dtype=np.int64)
    for g in range(G.order):
        out = add[out, mul[X[..., g, None], Y[..., div[g]]]]
    return out


def batch_add(K: CoefficientRing, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return K.add[X, Y]


def batch_sub(K: CoefficientRing, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return K.add[X, K.neg_table[Y]]


def batch_involution(spec: InvolutionSpec, X: np.ndarray) -> np.ndarray:
    """Coefficient of ``sigma(g)`` in ``x^sigma`` is ``alpha_g f(g)``."""
    _require_compatible(spec)
    scaled = spec.ring.mul[X, spec.f.array]
    out = np.empty_like(scaled)
    out[..., spec.sigma.array] = scaled
    return out


def batch_power(G: Group, K: CoefficientRing, X: np.ndarray, e: int) -> np.ndarray:
    result = np.zeros_like(X)
    result[..., 0] = K.one
    base = X
    while e:
        if e & 1:
            result = batch_mul(G, K, result, base)
        e >>= 1
        if e:
            base = batch_mul(G, K, base, base)
    return result


def _require_compatible(spec: InvolutionSpec) -> None:
    if not spec.compatible:
        g = spec.validation[1]
        raise ContractError(f"x -> x^sigma is not an involution: f(g sigma(g)) != 1 at g = {g}")


@dataclass(frozen=True)
class GroupRingElement:
    group: Group
    ring: CoefficientRing
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = tuple(int(x) for x in self.coeffs)
        if len(c) != self.group.order:
            raise InputError(f"expected {self.group.order} coefficients, got {len(c)}")
        if any(not (0 <= x < self.ring.size) for x in c):
            raise InputError(f"coefficients must be elements of {self.ring.label}")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls, G: Group, K: CoefficientRing) -> GroupRingElement:
        return cls(G, K, (0,) * G.order)

    @classmethod
    def one(cls, G: Group, K: CoefficientRing) -> GroupRingElement:
        return cls.basis(G, K, 0)

    @classmethod
    def basis(cls, G: Group, K: CoefficientRing, g: int, coeff: int = 1) -> GroupRingElement:
        c = [0] * G.order
        c[g] = coeff
        return cls(G, K, c)

    @classmethod
    def from_terms(cls, G: Group, K: CoefficientRing, terms: dict[int, int]) -> GroupRingElement:
        c = [0] * G.order
        for g, a in terms.items():
            c[g] = int(K.add[c[g], a])
        return cls(G, K, c)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _same(self, other: GroupRingElement) -> None:
        if other.group is not self.group or other.ring is not self.ring:
            raise InputError("group ring elements live in different rings")

    def _wrap(self, arr: np.ndarray) -> GroupRingElement:
        return GroupRingElement(self.group, self.ring, tuple(arr.tolist()))

    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._same(other)
        return self._wrap(batch_add(self.ring, self.array, other.array))

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        self._same(other)
        return self._wrap(batch_sub(self.ring, self.array, other.array))

    def __neg__(self) -> GroupRingElement:
        return self._wrap(self.ring.neg_table[self.array])

    def __mul__(self, other: GroupRingElement) -> GroupRingElement:
        self._same(other)
        return self._wrap(batch_mul(self.group, self.ring, self.array, other.array))

    def scale(self, a: int) -> GroupRingElement:
        return self._wrap(self.ring.mul[a, self.array])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> list[int]:
        return [g for g, a in enumerate(self.coeffs) if a]

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        terms = [f"{a}*g{g}" for g, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) if terms else "0"


def add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x + y


def mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


def apply_involution(spec: InvolutionSpec, x: GroupRingElement) -> GroupRingElement:
    if x.group is not spec.group or x.ring is not spec.ring:
        raise InputError("element and involution live over different rings")
    return x._wrap(batch_involution(spec, x.array))


def normality_defect(spec: InvolutionSpec, x: GroupRingElement) -> GroupRingElement:
    """``x x^sigma - x^sigma x``."""
    xs = apply_involution(spec, x)
    return x * xs - xs * x


def enumerate_elements(G: Group, K: CoefficientRing, bound: int = FULL_ENUMERATION_BOUND) -> np.ndarray:
    """Every coefficient vector of KG, in lexicographic order, as an ``(|K|^|G|, |G|)`` array."""
    total = K.size**G.order
    if total > bound:
        raise CapabilityError(f"|K|^|G| = {total} exceeds the enumeration bound {bound}")
    return np.array(list(itertools.product(range(K.size), repeat=G.order)), dtype=np.int64).reshape(total, G.order)


def enumerate_units(G: Group, K: CoefficientRing, bound: int = FULL_ENUMERATION_BOUND) -> tuple[np.ndarray, np.ndarray]:
    """All units of KG and their inverses, as two aligned arrays.

    ``x`` is a unit exactly when its left-multiplication matrix is invertible,
    and then ``x^E = 1`` for any multiple ``E`` of the exponent of ``GL_|G|(K)``.
    So ``x^E = 1`` decides invertibility and ``x^(E-1)`` is the inverse.
    """
    X = enumerate_elements(G, K, bound)
    E = K.gl_exponent(G.order)
    one = np.zeros(G.order, dtype=np.int64)
    one[0] = K.one
    chunks_u, chunks_i = [], []
    for start in range(0, len(X), 4096):
        block = X[start : start + 4096]
        inv = batch_power(G, K, block, E - 1)
        prod = batch_mul(G, K, block, inv)
        ok = np.all(prod == one, axis=1)
        chunks_u.append(block[ok])
        chunks_i.append(inv[ok])
    return np.concatenate(chunks_u), np.concatenate(chunks_i)
