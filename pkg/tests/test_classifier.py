from __future__ import annotations

import json

import pytest

from sigma_normal.catalog import catalog_labels, group_from_label, spec_from_sources
from sigma_normal.checker import check_pairwise
from sigma_normal.classifier import (
    CERTIFICATE_SCHEMA,
    classify,
    detect_sigma_group,
    fixed_and_moved_sets,
    lemma2_case,
)
from sigma_normal.errors import CapabilityError, InputError
from sigma_normal.morphisms import (
    InvolutionSpec,
    classical_involution,
    compatible_homomorphisms,
    enumerate_antiautomorphisms_order2,
    extend_antihomomorphism,
    trivial_homomorphism,
)
from sigma_normal.rings import make_ring
from sigma_normal.subgroups import (
    center,
    centralizer,
    derived_subgroup,
    generated_subgroup,
    index_two_subgroups,
    product_set,
    quotient_elementary_abelian_2,
)


def spec(label, ring, sigma="builtin:classical", f="builtin:trivial"):
    return spec_from_sources(group_from_label(label), make_ring(ring), sigma, f)


def test_fixed_and_moved_examples():
    Q8 = group_from_label("quaternion:8")
    R, W, HW = fixed_and_moved_sets(Q8, classical_involution(Q8))
    assert R == {0, 2} and len(W) == 6 and all(Q8.element_orders[w] == 4 for w in W)
    assert HW == frozenset(range(8))
    s3 = spec("dihedral:3", "Z3", "builtin:theorem-i", "builtin:sign")
    R, W, HW = fixed_and_moved_sets(s3.group, s3.sigma)
    assert W == {1, 2} and R == {0, 3, 4, 5} and HW == {0, 1, 2}
    C6 = group_from_label("cyclic:6")
    ident = next(s for s in enumerate_antiautomorphisms_order2(C6) if s.map == tuple(range(6)))
    assert fixed_and_moved_sets(C6, ident)[1] == frozenset()


def test_pair_case_examples():
    s3 = spec("dihedral:3", "Z3", "builtin:theorem-i", "builtin:sign")
    r, s = s3.group.generators
    assert lemma2_case(s3, r, s) == "i"
    assert lemma2_case(s3, s, r) == "ii"
    q8 = spec("quaternion:8", "Z3")
    assert lemma2_case(q8, *q8.group.generators) == "iv"
    d4 = spec("dihedral:4", "Z3")
    assert lemma2_case(d4, *d4.group.generators) == "violation"
    with pytest.raises(InputError):
        lemma2_case(d4, 1, 2)


def test_square_relation_fails_for_two_reflections():
    """Two fixed reflections with f = -1 break (ab)^2 = (ba)^2 although KS3 is normal."""
    s3 = spec("dihedral:3", "Z5", "builtin:theorem-i", "builtin:sign")
    assert check_pairwise(s3).normal
    assert lemma2_case(s3, 3, 4) == "violation"
    assert lemma2_case(s3, 3, 4, strict=False) == "iii"


def test_detect_sigma_group_examples():
    Q8 = group_from_label("quaternion:8")
    w = detect_sigma_group(Q8, classical_involution(Q8), *Q8.generators)
    assert w is not None and w.commutator_c == 2 and w.members == frozenset(range(8))
    assert w.frattini_equals_center and w.center_equals_fixed and w.sigma_action_ok
    D4 = group_from_label("dihedral:4")
    assert detect_sigma_group(D4, classical_involution(D4), *D4.generators) is None
    assert detect_sigma_group(Q8, classical_involution(Q8), 1, 3) is None


def test_classify_examples():
    s3 = classify(spec("dihedral:3", "Z3", "builtin:theorem-i", "builtin:sign"))
    assert s3.case == "case_i" and s3.witnesses["H"] == {0, 1, 2} and s3.witnesses["b"] == 3
    q8 = classify(spec("quaternion:8", "Z3"))
    assert q8.case == "case_ii_a"
    assert q8.fixed_set == center(group_from_label("quaternion:8"))
    dd = classify(spec("central:D4YD4", "Z2", "builtin:case-iii"))
    assert dd.case == "case_iii_a" and dd.witnesses["n"] == 2
    G = group_from_label("central:D4YD4")
    assert quotient_elementary_abelian_2(G, center(G)) == (True, 4)
    assert classify(spec("central:D4YD4", "Z3", "builtin:case-iii")).case == "not_normal"
    assert classify(spec("cyclic:6", "Z3")).case == "commutative"
    with pytest.raises(CapabilityError):
        classify(spec("quaternion:16*cyclic:3", "Z2"))


def test_certificate_json():
    cert = classify(spec("quaternion:8", "F4"))
    data = json.loads(json.dumps(cert.to_json()))
    assert data["schema"] == CERTIFICATE_SCHEMA
    assert data["case"] == "case_ii_a"
    wit = data["witnesses"]["sigma_groups"][0]
    assert wit["c"] == 2 and wit["frattini_equals_center"]
    rej = classify(spec("dihedral:4", "Z3")).to_json()
    assert rej["case"] == "not_normal" and rej["reason"]


def reverify(spec_, cert):
    """Check each certificate field with independent subgroup calls."""
    G, K, s, f = spec_.group, spec_.ring, spec_.sigma, spec_.f
    if cert.case == "commutative":
        assert G.is_abelian
        return
    assert all(v in (K.one, K.minus_one) for v in f.values)
    if cert.case == "case_i":
        H, b = cert.witnesses["H"], cert.witnesses["b"]
        assert H in index_two_subgroups(G) and b not in H
        assert all(G.mul(x, y) == G.mul(y, x) for x in H for y in H)
        assert f(b) == K.minus_one and s(b) == b and all(f(h) == K.one for h in H)
        assert all(s(h) == G.conjugate(h, b) == G.conjugate(h, G.inv(b)) for h in H)
        return
    ws = cert.sigma_groups
    c = ws[0].commutator_c
    assert derived_subgroup(G) == {0, c} and c in center(G)
    S = generated_subgroup(G, [x for w in ws for x in (w.a, w.b)])
    C = cert.witnesses["C"]
    assert C == centralizer(G, S)
    assert product_set(G, S, C) == frozenset(G.elements())
    assert all(G.mul(x, y) == G.mul(y, x) for x in C for y in C)
    for w in ws:
        assert s(w.a) == G.mul(w.a, c) and s(w.b) == G.mul(w.b, c)
        assert all(f(h) == K.one for h in w.members)
    Z = center(G)
    Z0 = Z & cert.fixed_set
    if cert.case.endswith("_a"):
        assert all(s(d) == d for d in C)
        assert quotient_elementary_abelian_2(G, Z) == (True, 2 * len(ws))
    else:
        d = cert.witnesses["d"]
        assert d in C and s(d) == G.mul(d, c)
        assert 2 * len(Z0) == len(Z)
        assert quotient_elementary_abelian_2(G, Z0) == (True, 2 * len(ws) + 1)
    if cert.case.startswith("case_iii"):
        assert K.characteristic == 2 and f.is_trivial and len(ws) >= 2


@pytest.mark.parametrize("label", [l for l in catalog_labels(16) if not group_from_label(l).is_abelian] + ["central:D4YD4"])
def test_certificates_reverify(label):
    G = group_from_label(label)
    for ring in ("Z2", "Z3", "F4"):
        K = make_ring(ring)
        for sigma in enumerate_antiautomorphisms_order2(G):
            for _, f in compatible_homomorphisms(sigma, K):
                s = InvolutionSpec(sigma, f)
                cert = classify(s)
                if cert.normal:
                    reverify(s, cert)


def mixed_d4yd4():
    """sigma-group type on the first D4 factor, inversion on the second."""
    G = group_from_label("central:D4YD4")
    g0, g1, g2, g3 = G.generators
    c = 2
    sigma = extend_antihomomorphism(G, G.generators, [G.mul(g0, c), G.mul(g1, c), G.inv(g2), G.inv(g3)])
    return G, sigma


def arf_invariant(G, sigma):
    """Arf invariant of ``q`` with ``sigma(g) = g c^q(g)`` on ``G / Z(G)``: the majority value."""
    Z = center(G)
    cosets = {frozenset(G.mul(g, z) for z in Z) for g in G.elements()}
    ones = sum(sigma(min(cs)) != min(cs) for cs in cosets)
    return int(ones > len(cosets) // 2)


def test_arf_one_form_is_outside_case_iii():
    """A normal char-2 instance whose quadratic form no central product of sigma-groups realizes."""
    G, sigma = mixed_d4yd4()
    s = InvolutionSpec(sigma, trivial_homomorphism(G, make_ring("Z2")))
    assert check_pairwise(s).normal
    assert arf_invariant(G, sigma) == 1
    builtin = spec("central:D4YD4", "Z2", "builtin:case-iii")
    assert arf_invariant(G, builtin.sigma) == 0
    assert classify(s).case == "not_normal"
