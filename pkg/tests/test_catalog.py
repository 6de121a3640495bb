from __future__ import annotations

import pytest

from sigma_normal.catalog import (
    acceptance_labels,
    builtin_f,
    builtin_sigma,
    catalog_labels,
    f_from_source,
    group_from_label,
    sigma_from_source,
)
from sigma_normal.errors import InputError
from sigma_normal.groups import format_cayley_table
from sigma_normal.rings import make_ring


def test_labels_and_orders():
    labels = catalog_labels(16)
    assert labels == sorted(labels)
    assert all(group_from_label(l).order <= 16 for l in labels)
    for need in ("dihedral:8", "quaternion:16", "quaternion:8*cyclic:2", "elementary:2,4", "central:D4YC4"):
        assert need in labels
    acc = acceptance_labels()
    assert {"central:D4YD4", "central:Q8YQ8"} <= set(acc)
    assert group_from_label("central:Q8YQ8").order == 32
    assert group_from_label("dihedral:3*cyclic:2").order == 12


def test_bad_labels():
    for bad in ("foo:3", "cyclic:x", "central:D8YD8", "quaternion:12"):
        with pytest.raises(InputError):
            group_from_label(bad)


def test_file_label(tmp_path):
    p = tmp_path / "s3.txt"
    p.write_text(format_cayley_table(group_from_label("dihedral:3")))
    G = group_from_label(f"file:{p}")
    assert G.order == 6 and not G.is_abelian
    with pytest.raises(InputError):
        group_from_label(f"file:{tmp_path / 'missing.txt'}")


def test_builtins():
    S3 = group_from_label("dihedral:3")
    K = make_ring("Z3")
    sigma = builtin_sigma(S3, "theorem-i")
    r, s = S3.generators
    assert sigma(r) == S3.inv(r) and sigma(s) == s
    assert builtin_f(S3, K, "sign").values == (1, 1, 1, 2, 2, 2)
    with pytest.raises(InputError):
        builtin_sigma(group_from_label("cyclic:3"), "theorem-i")
    with pytest.raises(InputError):
        builtin_sigma(group_from_label("dihedral:3"), "case-iii")
    with pytest.raises(InputError):
        builtin_sigma(S3, "nope")
    with pytest.raises(InputError):
        builtin_f(S3, K, "nope")


def test_sources(tmp_path):
    D4 = group_from_label("dihedral:4")
    K = make_ring("Z3")
    first = sigma_from_source(D4, "index:0")
    assert sigma_from_source(D4, ",".join(map(str, first.map))) == first
    with pytest.raises(InputError):
        sigma_from_source(D4, "0 1 2 3 4 5 6 7")
    assert f_from_source(D4, K, "index:0").is_trivial
    with pytest.raises(InputError):
        sigma_from_source(D4, "index:99")
    with pytest.raises(InputError):
        sigma_from_source(D4, "0 1 2")
    p = tmp_path / "spec.txt"
    p.write_text("0 3 2 1 4 5 6 7\n1 1 1 1 1 1 1 1\n")
    assert sigma_from_source(D4, f"file:{p}") == builtin_sigma(D4, "classical")
    assert f_from_source(D4, K, f"file:{p}").is_trivial
