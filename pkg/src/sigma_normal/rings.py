"""Finite commutative coefficient rings held as addition/multiplication tables.

Supported labels are ``Z2`` .. ``Z9`` and the fields ``F4``, ``F8``, ``F9``.
Elements are integers ``0..size-1`` with ``0`` the zero and ``1`` the unity.

Field encodings (the integer literal of an element):

* ``F4 = F2[x]/(x^2 + x + 1)``: bit ``i`` of the literal is the coefficient of ``x^i``.
* ``F8 = F2[x]/(x^3 + x + 1)``: same bit encoding.
* ``F9 = F3[x]/(x^2 + 1)``: ``u + v*x`` has literal ``u + 3*v``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import InputError

RING_LABELS = ("Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "F4", "F8", "F9")

# (prime, degree, modulus coefficients c_0..c_{d-1} with x^d = -(sum c_i x^i))
_FIELDS = {
    "F4": (2, 2, (1, 1)),
    "F8": (2, 3, (1, 1, 0)),
    "F9": (3, 2, (1, 0)),
}


@dataclass(frozen=True, eq=False)
class CoefficientRing:
    label: str
    add: np.ndarray
    mul: np.ndarray
    prime_factors: tuple[int, ...]
    size: int = field(init=False)
    zero: int = field(init=False, default=0)
    one: int = field(init=False, default=1)
    characteristic: int = field(init=False)
    units: frozenset[int] = field(init=False)
    neg_table: np.ndarray = field(init=False)
    inv_table: dict = field(init=False)

    def __post_init__(self) -> None:
        add = np.array(self.add, dtype=np.int64)
        mul = np.array(self.mul, dtype=np.int64)
        add.setflags(write=False)
        mul.setflags(write=False)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)
        n = add.shape[0]
        object.__setattr__(self, "size", n)
        _check_ring_axioms(add, mul)
        char, x = 1, 1
        while x != 0:
            x = int(add[x, 1])
            char += 1
        object.__setattr__(self, "characteristic", char)
        neg = np.argmin(add, axis=1).astype(np.int64)
        neg.setflags(write=False)
        object.__setattr__(self, "neg_table", neg)
        inv = {}
        for a in range(n):
            hits = np.nonzero(mul[a] == 1)[0]
            if len(hits):
                inv[a] = int(hits[0])
        object.__setattr__(self, "inv_table", inv)
        object.__setattr__(self, "units", frozenset(inv))

    def __repr__(self) -> str:
        return f"CoefficientRing({self.label})"

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not (0 <= x < self.size):
                raise InputError(f"{x} is not an element of {self.label}")

    def plus(self, x: int, y: int) -> int:
        return int(self.add[x, y])

    def times(self, x: int, y: int) -> int:
        return int(self.mul[x, y])

    def neg(self, x: int) -> int:
        self._check(x)
        return int(self.neg_table[x])

    def minus(self, x: int, y: int) -> int:
        return int(self.add[x, self.neg_table[y]])

    def inverse(self, x: int) -> int:
        if x not in self.inv_table:
            raise InputError(f"{x} is not a unit of {self.label}")
        return self.inv_table[x]

    @property
    def minus_one(self) -> int:
        return int(self.neg_table[1])

    def is_minus_one_equal_one(self) -> bool:
        return self.characteristic == 2

    def unit_order(self, u: int) -> int:
        k, x = 1, u
        while x != 1:
            x = int(self.mul[x, u])
            k += 1
        return k

    def gl_exponent(self, n: int) -> int:
        """A multiple of the exponent of ``GL_n`` over this ring."""
        return _gl_exponent(self, n)

    def parse_literal(self, text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise InputError(f"bad ring literal {text!r} for {self.label}") from None
        self._check(v)
        return v


def _check_ring_axioms(add: np.ndarray, mul: np.ndarray) -> None:
    n = add.shape[0]
    r = np.arange(n)
    if not (np.array_equal(add, add.T) and np.array_equal(mul, mul.T)):
        raise InputError("ring tables must be commutative")
    if not (np.array_equal(add[0], r) and np.array_equal(mul[1], r)):
        raise InputError("0 must be the additive and 1 the multiplicative identity")
    if not np.all(np.sort(add, axis=1) == r):
        raise InputError("addition is not a group operation")
    for op in (add, mul):
        if not np.array_equal(op[op, :], op[r[:, None, None], op[None, :, :]]):
            raise InputError("ring operation is not associative")
    # a(b + c) = ab + ac
    lhs = mul[r[:, None, None], add[None, :, :]]
    rhs = add[mul[:, :, None], mul[:, None, :]]
    if not np.array_equal(lhs, rhs):
        raise InputError("multiplication does not distribute over addition")


def _zmod(n: int) -> CoefficientRing:
    r = np.arange(n)
    primes = tuple(p for p in range(2, n + 1) if n % p == 0 and all(p % d for d in range(2, p)))
    return CoefficientRing(f"Z{n}", (r[:, None] + r[None, :]) % n, (r[:, None] * r[None, :]) % n, primes)


def _galois_field(label: str) -> CoefficientRing:
    p, d, modulus = _FIELDS[label]
    q = p**d
    vecs = [tuple((k // p**i) % p for i in range(d)) for k in range(q)]

    def encode(v) -> int:
        return sum(int(c) * p**i for i, c in enumerate(v))

    def polymul(a, b):
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            prod[k] = 0
            for i, m in enumerate(modulus):
                prod[k - d + i] -= c * m
        return tuple(x % p for x in prod[:d])

    add = np.array([[encode([(x + y) % p for x, y in zip(a, b)]) for b in vecs] for a in vecs])
    mul = np.array([[encode(polymul(a, b)) for b in vecs] for a in vecs])
    return CoefficientRing(label, add, mul, (p,))


# prime fields are also accepted under their field names
_ALIASES = {"F2": "Z2", "F3": "Z3", "F5": "Z5", "F7": "Z7"}


@lru_cache(maxsize=None)
def make_ring(label: str) -> CoefficientRing:
    if label in _ALIASES:
        return make_ring(_ALIASES[label])
    if label in _FIELDS:
        return _galois_field(label)
    if label.startswith("Z") and label[1:].isdigit() and 2 <= int(label[1:]) <= 9:
        return _zmod(int(label[1:]))
    raise InputError(f"unknown ring label {label!r}; expected one of {', '.join(RING_LABELS)}")


def neg(K: CoefficientRing, x: int) -> int:
    return K.neg(x)


def is_minus_one_equal_one(K: CoefficientRing) -> bool:
    return K.is_minus_one_equal_one()


def _gl_exponent(K: CoefficientRing, n: int) -> int:
    """A multiple of the exponent of ``GL_n(K)``.

    Over ``F_q`` every invertible matrix is semisimple times unipotent: the
    semisimple part has eigenvalues in some ``F_{q^i}``, ``i <= n``, and the
    unipotent part is killed by the least power of ``p`` that is ``>= n``.
    Over ``Z/p^e`` the kernel of reduction mod ``p`` has exponent dividing
    ``p^(e-1)``. ``Z/m`` splits over its prime-power factors.
    """
    if K.label in _FIELDS:
        p, d, _ = _FIELDS[K.label]
        return _gl_field_exponent(p, d, n)
    m = K.size
    out = 1
    for p in K.prime_factors:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out = math.lcm(out, p ** (e - 1) * _gl_field_exponent(p, 1, n))
    return out


def _gl_field_exponent(p: int, d: int, n: int) -> int:
    q = p**d
    semisimple = 1
    for i in range(1, n + 1):
        semisimple = math.lcm(semisimple, q**i - 1)
    unipotent = 1
    while unipotent < n:
        unipotent *= p
    return semisimple * unipotent
