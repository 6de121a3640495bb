"""Finite groups as explicit Cayley tables.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
A :class:`Group` is immutable once built; the constructors in this module
(cyclic, dihedral, quaternion, elementary abelian, direct/central products,
quotients) all return canonically indexed tables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError

MAX_ORDER = 64


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its multiplication table.

    ``table[g, h]`` is the index of ``g*h``. ``generators`` is an optional
    generating tuple recorded by the catalog constructors; builtin
    involutions use it.
    """

    table: np.ndarray
    name: str = "G"
    generators: tuple[int, ...] = ()
    order: int = field(init=False)
    identity: int = field(init=False, default=0)
    inverses: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        table = np.array(self.table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise InputError("Cayley table must be a non-empty square array")
        n = table.shape[0]
        if n > MAX_ORDER:
            raise InputError(f"group order {n} exceeds the supported bound {MAX_ORDER}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "order", n)
        _check_group_axioms(table)
        inverses = np.argmin(table, axis=1).astype(np.int64)
        inverses.setflags(write=False)
        object.__setattr__(self, "inverses", inverses)
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))

    def __repr__(self) -> str:
        return f"Group({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def _check(self, *elements: int) -> None:
        for g in elements:
            if not (0 <= g < self.order):
                raise InputError(f"element index {g} out of range for {self.name} (order {self.order})")

    def mul(self, g: int, h: int) -> int:
        self._check(g, h)
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        self._check(g)
        return int(self.inverses[g])

    def product(self, *elements: int) -> int:
        out = 0
        for g in elements:
            out = int(self.table[out, g])
        return out

    def power(self, g: int, k: int) -> int:
        self._check(g)
        if k < 0:
            g, k = int(self.inverses[g]), -k
        out = 0
        for _ in range(k):
            out = int(self.table[out, g])
        return out

    def commutator(self, g: int, h: int) -> int:
        """Return ``g^-1 h^-1 g h``."""
        self._check(g, h)
        inv = self.inverses
        return self.product(int(inv[g]), int(inv[h]), g, h)

    def conjugate(self, g: int, x: int) -> int:
        """Return ``x^-1 g x``."""
        return self.product(int(self.inverses[x]), g, x)

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.table[x, g])
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, g: int) -> int:
        self._check(g)
        return self.element_orders[g]

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def commutator_table(self) -> np.ndarray:
        t, inv = self.table, self.inverses
        # (g, h) -> g^-1 h^-1 g h = (h g)^-1 (g h)
        out = t[inv[t.T], t]
        out.setflags(write=False)
        return out

    def elements(self) -> range:
        return range(self.order)


def _check_group_axioms(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise InputError("Cayley table entries must be indices in 0..order-1")
    expected = np.arange(n)
    if not (np.array_equal(table[0], expected) and np.array_equal(table[:, 0], expected)):
        raise InputError("index 0 must be the identity: row 0 and column 0 must be 0..order-1")
    srt_rows = np.sort(table, axis=1)
    srt_cols = np.sort(table, axis=0)
    if not (np.all(srt_rows == expected) and np.all(srt_cols == expected[:, None])):
        raise InputError("Cayley table is not a Latin square")
    left = table[table, :]  # left[g, h, k] = (g h) k
    right = table[np.arange(n)[:, None, None], table[None, :, :]]  # g (h k)
    if not np.array_equal(left, right):
        g, h, k = (int(v[0]) for v in np.nonzero(left != right))
        raise InputError(f"associativity fails for ({g}, {h}, {k})")


def multiply(G: Group, g: int, h: int) -> int:
    return G.mul(g, h)


def commutator(G: Group, g: int, h: int) -> int:
    return G.commutator(g, h)


def _from_elements(elements: Sequence, op, name: str, generators: Iterable = ()) -> Group:
    """Build a table from an explicit element list (identity first) and a binary op."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            table[i, j] = index[op(x, y)]
    return Group(table, name=name, generators=tuple(index[g] for g in generators))


def cyclic(n: int) -> Group:
    if n < 1:
        raise InputError("cyclic group needs n >= 1")
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return Group(table, name=f"C{n}", generators=(1,) if n > 1 else ())


def dihedral(n: int) -> Group:
    """Dihedral group of order ``2n``: element ``r^i s^j`` has index ``i + n*j``.

    Generators are ``(r, s)``.
    """
    if n < 1:
        raise InputError("dihedral group needs n >= 1")
    elements = [(i, j) for j in range(2) for i in range(n)]

    def op(x, y):
        (i, j), (k, l) = x, y
        return ((i + (-1) ** j * k) % n, (j + l) % 2)

    gens = [(1 % n, 0), (0, 1)] if n > 1 else [(0, 1)]
    return _from_elements(elements, op, f"D{n}", gens)


def quaternion(m: int) -> Group:
    """Generalized quaternion group of order ``m`` (8 or 16).

    ``a`` has order ``m/2``, ``b^2 = a^(m/4)`` and ``b^-1 a b = a^-1``.
    Element ``a^i b^j`` has index ``i + (m/2)*j``; generators are ``(a, b)``.
    """
    if m not in (8, 16):
        raise InputError("quaternion groups are supported for m in {8, 16}")
    k = m // 2
    half = k // 2
    elements = [(i, j) for j in range(2) for i in range(k)]

    def op(x, y):
        (i, j), (p, l) = x, y
        if j == 0:
            return ((i + p) % k, l)
        if l == 0:
            return ((i - p) % k, 1)
        return ((i - p + half) % k, 0)

    return _from_elements(elements, op, f"Q{m}", [(1, 0), (0, 1)])


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def elementary_abelian(p: int, k: int) -> Group:
    if not _is_prime(p) or k < 1:
        raise InputError("elementary abelian group needs p prime and k >= 1")
    if p**k > MAX_ORDER:
        raise InputError(f"order {p**k} exceeds {MAX_ORDER}")
    elements = list(itertools.product(range(p), repeat=k))
    elements.sort(key=lambda v: v[::-1])

    def op(x, y):
        return tuple((a + b) % p for a, b in zip(x, y))

    gens = [tuple(int(i == j) for i in range(k)) for j in range(k)]
    return _from_elements(elements, op, f"C{p}^{k}", gens)


def direct_product(A: Group, B: Group, name: str | None = None) -> Group:
    """Element ``(a, b)`` gets index ``a*|B| + b``."""
    nb = B.order
    ta, tb = A.table, B.table
    table = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(A.order * nb, A.order * nb)
    gens = tuple(a * nb for a in A.generators) + tuple(B.generators)
    return Group(table, name=name or f"{A.name}x{B.name}", generators=gens)


def embed_left(A: Group, B: Group, a: int) -> int:
    return a * B.order


def embed_right(A: Group, B: Group, b: int) -> int:
    return b


def quotient(G: Group, N: Iterable[int], name: str | None = None) -> tuple[Group, tuple[int, ...]]:
    """Return the coset group ``G/N`` and the projection ``g -> coset index``.

    Cosets are ordered by their smallest element, so the identity coset is 0.
    """
    members = frozenset(int(x) for x in N)
    if 0 not in members or any(not (0 <= x < G.order) for x in members):
        raise InputError("N must be a subset of G containing the identity")
    t = G.table
    for x in members:
        for y in members:
            if int(t[x, y]) not in members:
                raise InputError("N is not closed under multiplication")
    inv = G.inverses
    for g in range(G.order):
        for x in members:
            if int(t[t[inv[g], x], g]) not in members:
                raise InputError(f"N is not normal: conjugating by {g} leaves N")
    proj = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if proj[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        for x in members:
            proj[int(t[g, x])] = idx
    m = len(reps)
    table = np.empty((m, m), dtype=np.int64)
    for i, g in enumerate(reps):
        for j, h in enumerate(reps):
            table[i, j] = proj[int(t[g, h])]
    gens = tuple(dict.fromkeys(proj[g] for g in G.generators if proj[g] != 0))
    return Group(table, name=name or f"{G.name}/N{len(members)}", generators=gens), tuple(proj)


def central_product(
    A: Group,
    B: Group,
    ZA: Iterable[int],
    ZB: Iterable[int],
    theta: Mapping[int, int],
    name: str | None = None,
) -> Group:
    """Amalgamate ``ZA <= Z(A)`` with ``ZB <= Z(B)`` along the isomorphism ``theta``.

    Returns ``(A x B)/{(z, theta(z)^-1)}``.
    """
    za, zb = sorted(set(ZA)), sorted(set(ZB))
    for z in za:
        if not np.array_equal(A.table[z], A.table[:, z]):
            raise InputError(f"element {z} of ZA is not central in {A.name}")
    for z in zb:
        if not np.array_equal(B.table[z], B.table[:, z]):
            raise InputError(f"element {z} of ZB is not central in {B.name}")
    if sorted(theta) != za or sorted(theta.values()) != zb or len(za) != len(zb):
        raise InputError("theta must be a bijection ZA -> ZB")
    for x in za:
        for y in za:
            xy = A.mul(x, y)
            if xy not in theta or theta[xy] != B.mul(theta[x], theta[y]):
                raise InputError("theta is not a homomorphism (or ZA is not a subgroup)")
    P = direct_product(A, B)
    nb = B.order
    N = [z * nb + int(B.inverses[theta[z]]) for z in za]
    Q, _ = quotient(P, N, name=name or f"{A.name}Y{B.name}")
    return Q


def parse_cayley_table(text: str, name: str = "G") -> Group:
    """Parse the text format: order on line 1, then one row of indices per element."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise InputError("empty Cayley table")
    try:
        n = int(lines[0][0])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
    except ValueError as exc:
        raise InputError(f"non-integer entry in Cayley table: {exc}") from None
    if len(lines[0]) != 1 or n < 1:
        raise InputError("first line must hold the group order")
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InputError(f"expected {n} rows of {n} entries")
    return Group(np.array(rows), name=name)


def format_cayley_table(G: Group) -> str:
    rows = [str(G.order)] + [" ".join(str(int(v)) for v in row) for row in G.table]
    return "\n".join(rows) + "\n"
