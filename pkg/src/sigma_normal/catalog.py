"""Named groups, builtin involutions and the parsers for CLI sources.

Group labels::

    cyclic:N  dihedral:N  quaternion:M  elementary:P,K
    central:D4YC4  central:D4YD4  central:Q8YQ8
    A*B                 direct product of two labels, e.g. dihedral:4*cyclic:2
    file:PATH           Cayley table text file

Builtin involutions (``builtin:NAME``):

* sigma ``classical``: inversion.
* sigma ``theorem-i``: for the first abelian index-2 subgroup ``H`` and the
  first ``b`` outside it for which the formula gives an anti-automorphism,
  ``sigma(h) = b^-1 h b`` on ``H`` and ``sigma`` fixes ``Hb`` pointwise.
* sigma ``case-iii`` (alias ``sigma-group``): ``sigma(x) = x c`` on the
  non-central recorded generators and ``sigma(x) = x`` on central ones,
  where ``G' = {1, c}``.
* f ``trivial``; f ``sign``: ``+1`` on the ``H`` used by ``theorem-i``, ``-1`` off it.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import InputError
from .groups import (
    Group,
    central_product,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    parse_cayley_table,
    quaternion,
)
from .morphisms import (
    AntiAutomorphism,
    InvolutionSpec,
    UnitHomomorphism,
    classical_involution,
    enumerate_antiautomorphisms_order2,
    enumerate_unit_homomorphisms,
    extend_antihomomorphism,
    sign_homomorphism,
    trivial_homomorphism,
)
from .rings import CoefficientRing
from .subgroups import center, derived_subgroup, index_two_subgroups

CENTRAL_PRODUCTS = ("D4YC4", "D4YD4", "Q8YQ8")
SIGMA_BUILTINS = ("classical", "theorem-i", "case-iii", "sigma-group")
F_BUILTINS = ("trivial", "sign")


def _central(name: str) -> Group:
    parts = {"D4": dihedral(4), "Q8": quaternion(8), "C4": cyclic(4)}
    left, right = name.split("Y")
    A, B = parts[left], parts[right]
    ZA = sorted(center(A))
    # D4 and Q8 have center {0, 2}; C4 contributes its subgroup {0, 2}
    theta = {0: 0, 2: 2}
    if ZA != [0, 2]:
        raise InputError(f"unexpected center for {left}")
    return central_product(A, B, [0, 2], [0, 2], theta, name=name)


def _atom(label: str) -> Group:
    kind, _, arg = label.partition(":")
    try:
        if kind == "cyclic":
            return cyclic(int(arg))
        if kind == "dihedral":
            return dihedral(int(arg))
        if kind == "quaternion":
            return quaternion(int(arg))
        if kind == "elementary":
            p, k = (int(v) for v in arg.split(","))
            return elementary_abelian(p, k)
    except ValueError:
        raise InputError(f"bad parameters in group label {label!r}") from None
    if kind == "central":
        if arg not in CENTRAL_PRODUCTS:
            raise InputError(f"unknown central product {arg!r}; expected one of {', '.join(CENTRAL_PRODUCTS)}")
        return _central(arg)
    raise InputError(f"unknown group label {label!r}")


@lru_cache(maxsize=None)
def group_from_label(label: str) -> Group:
    """Build a group from its catalog label (see the module docstring)."""
    if label.startswith("file:"):
        path = Path(label[5:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read Cayley table {path}: {exc}") from None
        return parse_cayley_table(text, name=path.stem)
    factors = label.split("*")
    G = _atom(factors[0])
    for lab in factors[1:]:
        G = direct_product(G, _atom(lab))
    return Group(G.table, name=label, generators=G.generators)


def _base_labels() -> list[str]:
    labels = [f"cyclic:{n}" for n in range(1, 17)]
    labels += [f"dihedral:{n}" for n in range(3, 9)]
    labels += ["quaternion:8", "quaternion:16"]
    labels += ["elementary:2,2", "elementary:2,3", "elementary:2,4", "elementary:3,2"]
    return labels


def _order_of(label: str) -> int:
    return group_from_label(label).order


def catalog_labels(max_order: int = 16, central: bool = True) -> list[str]:
    """Catalog labels up to ``max_order``, sorted.

    Products with ``C2`` and ``C3`` are taken over non-cyclic bases and over
    cyclic bases whose order shares the factor (so the product is not cyclic).
    The central products have order 16 or 32 and are included when
    ``central`` is set and they fit under ``max_order``.
    """
    base = _base_labels()
    out = {lab for lab in base if _order_of(lab) <= max_order}
    for lab in base:
        n = _order_of(lab)
        for k in (2, 3):
            if n * k > max_order or n == 1:
                continue
            if lab.startswith("cyclic:") and n % k:
                continue
            out.add(f"{lab}*cyclic:{k}")
    if central:
        for name in CENTRAL_PRODUCTS:
            lab = f"central:{name}"
            if _order_of(lab) <= max_order:
                out.add(lab)
    return sorted(out)


def catalog_groups(max_order: int = 16, central: bool = True) -> list[tuple[str, Group]]:
    return [(lab, group_from_label(lab)) for lab in catalog_labels(max_order, central)]


def acceptance_labels() -> list[str]:
    """Order <= 16 catalog plus the three central products."""
    labels = set(catalog_labels(16, central=True))
    labels.update(f"central:{name}" for name in CENTRAL_PRODUCTS)
    return sorted(labels)


@lru_cache(maxsize=None)
def theorem_i_data(G: Group) -> tuple[frozenset[int], int, AntiAutomorphism] | None:
    """``(H, b, sigma)`` for the builtin ``theorem-i`` involution, or ``None``."""
    t, inv = G.table, G.inverses
    for H in index_two_subgroups(G):
        hs = sorted(H)
        block = t[np.ix_(hs, hs)]
        if not np.array_equal(block, block.T):
            continue
        for b in sorted(set(range(G.order)) - H):
            m = list(range(G.order))
            ok = True
            for h in hs:
                y = int(t[t[inv[b], h], b])
                if y != int(t[t[b, h], inv[b]]):
                    ok = False
                    break
                m[h] = y
            if not ok:
                continue
            try:
                return H, b, AntiAutomorphism(G, m)
            except InputError:
                continue
    return None


def case_iii_sigma(G: Group) -> AntiAutomorphism:
    D = derived_subgroup(G)
    if len(D) != 2:
        raise InputError("case-iii sigma needs a derived subgroup of order 2")
    (c,) = D - {0}
    if not G.generators:
        raise InputError("case-iii sigma needs recorded generators")
    Z = center(G)
    images = [g if g in Z else G.mul(g, c) for g in G.generators]
    return extend_antihomomorphism(G, G.generators, images)


def builtin_sigma(G: Group, name: str) -> AntiAutomorphism:
    if name == "classical":
        return classical_involution(G)
    if name == "theorem-i":
        data = theorem_i_data(G)
        if data is None:
            raise InputError(f"{G.name} has no abelian index-2 subgroup supporting the theorem-i involution")
        return data[2]
    if name in ("case-iii", "sigma-group"):
        return case_iii_sigma(G)
    raise InputError(f"unknown builtin sigma {name!r}; expected one of {', '.join(SIGMA_BUILTINS)}")


def builtin_f(G: Group, K: CoefficientRing, name: str) -> UnitHomomorphism:
    if name == "trivial":
        return trivial_homomorphism(G, K)
    if name == "sign":
        data = theorem_i_data(G)
        if data is None:
            raise InputError(f"{G.name} has no abelian index-2 subgroup for the sign homomorphism")
        return sign_homomorphism(G, K, data[0])
    raise InputError(f"unknown builtin f {name!r}; expected one of {', '.join(F_BUILTINS)}")


def _values(text: str) -> list[str]:
    return [v for v in text.replace(",", " ").split() if v]


def sigma_from_source(G: Group, source: str) -> AntiAutomorphism:
    """``builtin:NAME``, ``index:N`` (enumeration order), ``file:PATH`` or inline images."""
    if source.startswith("builtin:"):
        return builtin_sigma(G, source[8:])
    if source.startswith("index:"):
        sigmas = enumerate_antiautomorphisms_order2(G)
        i = _parse_index(source[6:], len(sigmas), "sigma")
        return sigmas[i]
    if source.startswith("file:"):
        lines = [ln for ln in _read(source[5:]).splitlines() if ln.strip()]
        source = lines[0] if lines else ""
    try:
        images = [int(v) for v in _values(source)]
    except ValueError:
        raise InputError(f"bad sigma source {source!r}") from None
    if len(images) != G.order:
        raise InputError(f"sigma needs {G.order} images, got {len(images)}")
    return AntiAutomorphism(G, images)


def f_from_source(G: Group, K: CoefficientRing, source: str) -> UnitHomomorphism:
    """``builtin:NAME``, ``index:N`` (enumeration order), ``file:PATH`` or inline ring literals."""
    if source.startswith("builtin:"):
        return builtin_f(G, K, source[8:])
    if source.startswith("index:"):
        homs = enumerate_unit_homomorphisms(G, K)
        return homs[_parse_index(source[6:], len(homs), "f")]
    if source.startswith("file:"):
        lines = [ln for ln in _read(source[5:]).splitlines() if ln.strip()]
        source = lines[-1] if lines else ""
    values = [K.parse_literal(v) for v in _values(source)]
    return UnitHomomorphism(G, K, values)


def spec_from_sources(G: Group, K: CoefficientRing, sigma: str, f: str) -> InvolutionSpec:
    return InvolutionSpec(sigma_from_source(G, sigma), f_from_source(G, K, f))


def _parse_index(text: str, n: int, what: str) -> int:
    try:
        i = int(text)
    except ValueError:
        raise InputError(f"bad {what} index {text!r}") from None
    if not 0 <= i < n:
        raise InputError(f"{what} index {i} out of range (0..{n - 1})")
    return i


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
