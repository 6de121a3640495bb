from __future__ import annotations

import itertools

import numpy as np
import pytest

from sigma_normal.catalog import group_from_label
from sigma_normal.errors import CapabilityError, InputError
from sigma_normal.groups import cyclic, dihedral, direct_product, quaternion
from sigma_normal.morphisms import (
    AntiAutomorphism,
    InvolutionSpec,
    UnitHomomorphism,
    automorphisms,
    classical_involution,
    compatible_homomorphisms,
    enumerate_antiautomorphisms_order2,
    enumerate_unit_homomorphisms,
    extend_antihomomorphism,
    format_involution_spec,
    parse_involution_spec,
    sign_homomorphism,
    trivial_homomorphism,
    validate_involution_spec,
)
from sigma_normal.rings import make_ring


def brute_antiautomorphisms(G):
    """All order <= 2 anti-automorphisms, by testing every permutation fixing 0."""
    t = G.table
    found = []
    for rest in itertools.permutations(range(1, G.order)):
        m = np.array((0,) + rest)
        if np.array_equal(m[m], np.arange(G.order)) and np.array_equal(m[t], t.T[m[:, None], m[None, :]]):
            found.append(tuple(int(x) for x in m))
    return sorted(found)


@pytest.mark.parametrize("label", ["cyclic:4", "dihedral:3", "elementary:2,2", "cyclic:6", "dihedral:4", "quaternion:8", "elementary:2,3"])
def test_antiautomorphisms_match_brute_force(label):
    G = group_from_label(label)
    assert [s.map for s in enumerate_antiautomorphisms_order2(G)] == brute_antiautomorphisms(G)


def test_known_counts():
    assert len(automorphisms(dihedral(4))) == 8
    assert len(automorphisms(quaternion(8))) == 24
    assert len(automorphisms(group_from_label("elementary:2,4"))) == 20160
    assert len(enumerate_antiautomorphisms_order2(cyclic(4))) == 2
    assert len(enumerate_antiautomorphisms_order2(dihedral(4))) == 6
    assert len(enumerate_antiautomorphisms_order2(quaternion(8))) == 10
    assert len(enumerate_antiautomorphisms_order2(group_from_label("central:D4YD4"))) == 124
    with pytest.raises(CapabilityError):
        automorphisms(direct_product(quaternion(16), cyclic(3)))


def brute_homomorphisms(G, K):
    units = sorted(K.units)
    out = []
    for vals in itertools.product(units, repeat=G.order):
        v = np.array(vals)
        if np.array_equal(v[G.table], K.mul[v[:, None], v[None, :]]):
            out.append(vals)
    return sorted(out)


@pytest.mark.parametrize("label,ring", [("cyclic:2", "Z3"), ("cyclic:4", "Z5"), ("dihedral:3", "F4"), ("dihedral:3", "Z7"), ("elementary:2,2", "Z9"), ("cyclic:6", "F4")])
def test_homomorphisms_match_brute_force(label, ring):
    G, K = group_from_label(label), make_ring(ring)
    homs = enumerate_unit_homomorphisms(G, K)
    assert [f.values for f in homs] == brute_homomorphisms(G, K)
    assert homs[0].is_trivial


def test_homomorphism_examples():
    assert len(enumerate_unit_homomorphisms(cyclic(2), make_ring("Z3"))) == 2
    assert len(enumerate_unit_homomorphisms(dihedral(3), make_ring("F4"))) == 1


def test_anti_automorphism_validation():
    G = dihedral(3)
    with pytest.raises(InputError):
        AntiAutomorphism(G, [0, 1, 2, 3, 4, 4])
    with pytest.raises(InputError):
        AntiAutomorphism(G, list(range(6)))  # identity is not anti-multiplicative on S3
    C3 = cyclic(3)
    assert AntiAutomorphism(C3, [0, 1, 2]) == AntiAutomorphism(C3, (0, 1, 2))


def test_unit_homomorphism_validation():
    G, K = cyclic(2), make_ring("Z4")
    with pytest.raises(InputError):
        UnitHomomorphism(G, K, [1, 2])
    with pytest.raises(InputError):
        UnitHomomorphism(G, make_ring("Z5"), [1, 2])
    f = UnitHomomorphism(G, K, [1, 3])
    assert f.kernel() == {0}


def test_compatibility():
    G, K = dihedral(4), make_ring("Z3")
    sigma = classical_involution(G)
    sign = sign_homomorphism(G, K, frozenset({0, 1, 2, 3}))
    # g sigma(g) = 1 for inversion: every f is compatible
    assert validate_involution_spec(sigma, sign) == (True, None)
    C4, Z5 = cyclic(4), make_ring("Z5")
    ident = enumerate_antiautomorphisms_order2(C4)
    ident_sigma = next(s for s in ident if s.map == (0, 1, 2, 3))
    f = UnitHomomorphism(C4, Z5, [1, 2, 4, 3])
    ok, g = validate_involution_spec(ident_sigma, f)
    assert not ok and g == 1
    assert [i for i, _ in compatible_homomorphisms(ident_sigma, Z5)] == [0, 3]


def test_extend_and_roundtrip():
    Q8 = quaternion(8)
    a, b = Q8.generators
    sigma = extend_antihomomorphism(Q8, [a, b], [Q8.mul(a, 2), Q8.mul(b, 2)])
    assert sigma == classical_involution(Q8)
    with pytest.raises(InputError):
        extend_antihomomorphism(Q8, [a, b], [a, a])
    K = make_ring("F4")
    spec = InvolutionSpec(sigma, trivial_homomorphism(Q8, K))
    back = parse_involution_spec(format_involution_spec(spec), Q8, K)
    assert back.sigma == spec.sigma and back.f == spec.f
    with pytest.raises(InputError):
        parse_involution_spec("0 1 2", Q8, K)
