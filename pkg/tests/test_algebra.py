from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigma_normal.algebra import (
    GroupRingElement,
    add,
    apply_involution,
    batch_mul,
    enumerate_elements,
    enumerate_units,
    mul,
    normality_defect,
)
from sigma_normal.catalog import spec_from_sources
from sigma_normal.errors import CapabilityError, ContractError, InputError
from sigma_normal.groups import cyclic, dihedral, quaternion
from sigma_normal.morphisms import InvolutionSpec, UnitHomomorphism, enumerate_antiautomorphisms_order2
from sigma_normal.rings import make_ring


def naive_mul(x, y):
    G, K = x.group, x.ring
    out = [0] * G.order
    for g, h in itertools.product(G.elements(), repeat=2):
        out[G.mul(g, h)] = K.plus(out[G.mul(g, h)], K.times(x.coeffs[g], y.coeffs[h]))
    return out


def test_mul_examples():
    G, K = dihedral(4), make_ring("Z3")
    for g, h in itertools.product(G.elements(), repeat=2):
        assert mul(GroupRingElement.basis(G, K, g), GroupRingElement.basis(G, K, h)) == GroupRingElement.basis(G, K, G.mul(g, h))
    C2, Z2 = cyclic(2), make_ring("Z2")
    x = GroupRingElement(C2, Z2, (1, 1))
    assert (x * x).is_zero()
    y = GroupRingElement(G, K, (1, 2, 0, 1, 0, 0, 2, 1))
    assert y * GroupRingElement.one(G, K) == y
    with pytest.raises(InputError):
        add(x, y)
    with pytest.raises(InputError):
        GroupRingElement(C2, Z2, (1, 2))


ELEMENTS = st.sampled_from([(quaternion(8), "Z4"), (dihedral(3), "F4"), (cyclic(5), "Z3"), (dihedral(4), "F9")])


@settings(max_examples=100, deadline=None)
@given(ELEMENTS, st.data())
def test_ring_laws(GK, data):
    G, label = GK
    K = make_ring(label)
    draw = lambda: GroupRingElement(G, K, data.draw(st.lists(st.integers(0, K.size - 1), min_size=G.order, max_size=G.order)))
    x, y, z = draw(), draw(), draw()
    assert list((x * y).coeffs) == naive_mul(x, y)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x - x).is_zero()
    assert -x + x == GroupRingElement.zero(G, K)


def test_apply_involution_examples():
    G, K = dihedral(4), make_ring("Z3")
    spec = spec_from_sources(G, K, "builtin:classical", "builtin:trivial")
    for g in G.elements():
        assert apply_involution(spec, GroupRingElement.basis(G, K, g)) == GroupRingElement.basis(G, K, G.inv(g))
    S3 = dihedral(3)
    s3 = spec_from_sources(S3, K, "builtin:theorem-i", "builtin:sign")
    r = S3.generators[0]
    assert apply_involution(s3, GroupRingElement.basis(S3, K, r)) == GroupRingElement.basis(S3, K, S3.mul(r, r))


def test_incompatible_spec_is_rejected():
    C4, Z5 = cyclic(4), make_ring("Z5")
    ident = next(s for s in enumerate_antiautomorphisms_order2(C4) if s.map == (0, 1, 2, 3))
    spec = InvolutionSpec(ident, UnitHomomorphism(C4, Z5, [1, 2, 4, 3]))
    with pytest.raises(ContractError):
        apply_involution(spec, GroupRingElement.one(C4, Z5))


def test_normality_defect_examples():
    G = dihedral(4)
    a, b = G.generators
    K3 = make_ring("Z3")
    spec = spec_from_sources(G, K3, "builtin:classical", "builtin:trivial")
    x = GroupRingElement.from_terms(G, K3, {a: 1, b: 1})
    # 2ab - 2a^3 b
    ab, a3b = G.mul(a, b), G.mul(G.power(a, 3), b)
    assert normality_defect(spec, x) == GroupRingElement.from_terms(G, K3, {ab: 2, a3b: 1})
    K2 = make_ring("Z2")
    spec2 = spec_from_sources(G, K2, "builtin:classical", "builtin:trivial")
    assert normality_defect(spec2, GroupRingElement.from_terms(G, K2, {a: 1, b: 1})).is_zero()
    C5 = cyclic(5)
    spec5 = spec_from_sources(C5, K3, "builtin:classical", "builtin:trivial")
    x5 = GroupRingElement(C5, K3, (1, 2, 0, 1, 1))
    assert normality_defect(spec5, x5).is_zero()


def brute_units(G, K):
    X = enumerate_elements(G, K)
    one = np.zeros(G.order, dtype=np.int64)
    one[0] = 1
    out = []
    for x in X:
        prods = batch_mul(G, K, np.broadcast_to(x, X.shape), X)
        hits = np.nonzero(np.all(prods == one, axis=1))[0]
        if len(hits):
            out.append(tuple(x.tolist()))
    return sorted(out)


@pytest.mark.parametrize("label,ring", [("cyclic:2", "Z2"), ("cyclic:3", "Z2"), ("cyclic:2", "Z4"), ("dihedral:3", "Z2"), ("cyclic:4", "Z3")])
def test_units_match_brute_force(label, ring):
    from sigma_normal.catalog import group_from_label

    G, K = group_from_label(label), make_ring(ring)
    U, Uinv = enumerate_units(G, K)
    assert sorted(tuple(u.tolist()) for u in U) == brute_units(G, K)
    one = np.zeros(G.order, dtype=np.int64)
    one[0] = 1
    assert np.all(batch_mul(G, K, U, Uinv) == one)
    assert np.all(batch_mul(G, K, Uinv, U) == one)


def test_units_example_and_bound():
    U, _ = enumerate_units(cyclic(2), make_ring("Z2"))
    assert sorted(map(tuple, U.tolist())) == [(0, 1), (1, 0)]
    with pytest.raises(CapabilityError):
        enumerate_units(quaternion(16), make_ring("Z3"))
