"""Subgroup computations over a Cayley table.

Subsets of a group are plain ``frozenset``\\ s of element indices. Results
that are expensive (subgroup lattices, index-two subgroups) are cached per
group object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable

import numpy as np

from .errors import CapabilityError, InputError
from .groups import Group, quotient

LATTICE_MAX_ORDER = 32


def center(G: Group) -> frozenset[int]:
    t = G.table
    return frozenset(int(g) for g in range(G.order) if np.array_equal(t[g], t[:, g]))


def centralizer(G: Group, S: Iterable[int]) -> frozenset[int]:
    cols = sorted(set(S))
    if not cols:
        return frozenset(G.elements())
    t = G.table
    ok = np.all(t[:, cols] == t[cols, :].T, axis=1)
    return frozenset(int(g) for g in np.nonzero(ok)[0])


def generated_subgroup(G: Group, gens: Iterable[int]) -> frozenset[int]:
    gens = [int(g) for g in set(gens) if g != 0]
    t = G.table
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for g in gens:
                y = int(row[g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_subgroup(G: Group, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if 0 not in S:
        return False
    idx = sorted(S)
    return set(G.table[np.ix_(idx, idx)].ravel().tolist()) <= S


def is_normal(G: Group, S: Iterable[int]) -> bool:
    S = frozenset(S)
    if not is_subgroup(G, S):
        raise InputError("is_normal needs a subgroup")
    t, inv = G.table, G.inverses
    idx = np.array(sorted(S))
    for g in range(G.order):
        conj = t[t[inv[g], idx], g]
        if not set(conj.tolist()) <= S:
            return False
    return True


def commutator_subgroup(G: Group, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
    """The subgroup generated by all ``(a, b)`` with ``a in A`` and ``b in B``."""
    A, B = sorted(set(A)), sorted(set(B))
    comms = G.commutator_table[np.ix_(A, B)].ravel().tolist()
    return generated_subgroup(G, comms)


def derived_subgroup(G: Group) -> frozenset[int]:
    return generated_subgroup(G, G.commutator_table.ravel().tolist())


def lower_central_series(G: Group) -> list[frozenset[int]]:
    """``[gamma_1, gamma_2, ...]`` up to and including the first repeated term."""
    everything = frozenset(G.elements())
    series = [everything]
    while True:
        nxt = commutator_subgroup(G, series[-1], everything)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def nilpotency_class(G: Group) -> int | None:
    """Nilpotency class, or ``None`` when the lower central series stalls above 1."""
    series = lower_central_series(G)
    if len(series[-1]) != 1:
        return None
    return len(series) - 1


def exponent(G: Group) -> int:
    return reduce(math.lcm, G.element_orders, 1)


def is_elementary_abelian_2(G: Group) -> tuple[bool, int]:
    """``(True, rank)`` when ``G`` is abelian of exponent at most 2."""
    if not G.is_abelian or exponent(G) > 2:
        return False, 0
    return True, G.order.bit_length() - 1


def quotient_elementary_abelian_2(G: Group, N: Iterable[int]) -> tuple[bool, int]:
    Q, _ = quotient(G, N)
    return is_elementary_abelian_2(Q)


def product_set(G: Group, A: Iterable[int], B: Iterable[int]) -> frozenset[int]:
    A, B = sorted(set(A)), sorted(set(B))
    return frozenset(G.table[np.ix_(A, B)].ravel().tolist())


def subgroup_as_group(G: Group, S: Iterable[int], name: str | None = None) -> tuple[Group, tuple[int, ...]]:
    """Re-index a subgroup as a standalone :class:`Group`.

    Returns the group and the tuple mapping new indices to indices of ``G``
    (identity first, then increasing).
    """
    members = sorted(set(S))
    if not is_subgroup(G, members):
        raise InputError("subset is not a subgroup")
    pos = {g: i for i, g in enumerate(members)}
    sub = G.table[np.ix_(members, members)]
    table = np.vectorize(pos.__getitem__)(sub) if members else sub
    return Group(table, name=name or f"sub({G.name})"), tuple(members)


@dataclass(frozen=True)
class SubgroupLattice:
    parent: Group
    subgroups: tuple[frozenset[int], ...]
    maximal: tuple[bool, ...]

    def maximal_subgroups(self) -> list[frozenset[int]]:
        return [s for s, m in zip(self.subgroups, self.maximal) if m]


@lru_cache(maxsize=256)
def subgroup_lattice(G: Group) -> SubgroupLattice:
    """All subgroups, found by joining cyclic subgroups breadth first."""
    if G.order > LATTICE_MAX_ORDER:
        raise CapabilityError(f"subgroup lattice limited to order <= {LATTICE_MAX_ORDER}")
    cyclic = {generated_subgroup(G, [g]) for g in G.elements()}
    found = set(cyclic)
    frontier = list(cyclic)
    cyc = sorted(cyclic, key=len)
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyc:
                if C <= S:
                    continue
                J = generated_subgroup(G, S | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    subs = sorted(found, key=lambda s: (len(s), sorted(s)))
    whole = frozenset(G.elements())
    proper = [s for s in subs if s != whole]
    maximal = tuple(
        s != whole and not any(s < t for t in proper) for s in subs
    )
    return SubgroupLattice(G, tuple(subs), maximal)


def frattini_subgroup(G: Group) -> frozenset[int]:
    """Intersection of the maximal subgroups (``G`` itself when trivial)."""
    lattice = subgroup_lattice(G)
    maxes = lattice.maximal_subgroups()
    if not maxes:
        return frozenset(G.elements())
    return reduce(frozenset.intersection, maxes)


def frattini_of_subgroup(G: Group, S: Iterable[int]) -> frozenset[int]:
    H, back = subgroup_as_group(G, S)
    return frozenset(back[x] for x in frattini_subgroup(H))


def center_of_subgroup(G: Group, S: Iterable[int]) -> frozenset[int]:
    S = frozenset(S)
    return S & centralizer(G, S)


@lru_cache(maxsize=256)
def index_two_subgroups(G: Group) -> tuple[frozenset[int], ...]:
    """Kernels of the surjections ``G -> C2``, i.e. all subgroups of index 2.

    Every index-2 subgroup contains all squares, so it is a maximal subgroup
    of ``G`` lying over ``<G^2, G'>``; we enumerate them through the
    elementary abelian quotient by that subgroup.
    """
    if G.order % 2:
        return ()
    t = G.table
    squares = {int(t[g, g]) for g in G.elements()}
    base = generated_subgroup(G, squares | set(G.commutator_table.ravel().tolist()))
    Q, proj = quotient(G, base)
    # Q is elementary abelian 2; index-2 subgroups of Q are kernels of nonzero
    # linear functionals, one per nonzero vector of the dual.
    ok, rank = is_elementary_abelian_2(Q)
    assert ok
    basis = _f2_basis(Q)
    out = []
    coords = _f2_coordinates(Q, basis)
    for mask in range(1, 2**rank):
        kernel_q = {
            q for q in Q.elements() if bin(coords[q] & mask).count("1") % 2 == 0
        }
        out.append(frozenset(g for g in G.elements() if proj[g] in kernel_q))
    out.sort(key=lambda s: sorted(s))
    return tuple(out)


def _f2_basis(Q: Group) -> list[int]:
    basis: list[int] = []
    span = frozenset([0])
    for q in Q.elements():
        if q not in span:
            basis.append(q)
            span = generated_subgroup(Q, basis)
    return basis


def _f2_coordinates(Q: Group, basis: list[int]) -> dict[int, int]:
    coords = {0: 0}
    for i, b in enumerate(basis):
        for q, c in list(coords.items()):
            coords[Q.mul(q, b)] = c | (1 << i)
    return coords
