from __future__ import annotations

from sigma_normal.catalog import group_from_label, spec_from_sources
from sigma_normal.lemmas import moved_suite, pairs_suite, run_suites, sigma_groups_suite, units_suite
from sigma_normal.rings import make_ring


def spec(label, ring, sigma="builtin:classical", f="builtin:trivial"):
    return spec_from_sources(group_from_label(label), make_ring(ring), sigma, f)


def test_q8_all_suites_pass():
    results = run_suites(spec("quaternion:8", "Z3"))
    assert [r.name for r in results] == ["units", "pairs", "moved", "sigma_groups"]
    assert all(r.passed for r in results)
    assert results[0].skipped  # 3^8 > 2^12
    units = units_suite(spec("quaternion:8", "Z2"))
    assert units.passed and units.checked == 128


def test_commutative_instance_is_vacuous():
    s = spec("cyclic:4", "Z3")
    u = units_suite(s)
    assert u.passed and u.checked == 32  # Z3 C4 = F3 x F3 x F9
    assert pairs_suite(s).checked == 0
    assert sigma_groups_suite(s).checked == 0
    assert moved_suite(s).passed


def test_s3_moved_subgroup():
    m = moved_suite(spec("dihedral:3", "Z2", "builtin:theorem-i", "builtin:sign"))
    assert m.passed and m.notes["moved_subgroup"] == [0, 1, 2] and m.notes["abelian"]


def test_unit_suite_catches_non_normal_instance():
    """The identity can fail once normality is dropped (KS3 over Z3, inversion)."""
    u = units_suite(spec("dihedral:3", "Z3"))
    assert not u.passed


def test_large_instance_skips_units():
    u = units_suite(spec("central:D4YD4", "Z2", "builtin:case-iii"))
    assert u.skipped and u.passed
