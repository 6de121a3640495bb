"""Structural classification of sigma-normal group rings.

:func:`classify` decides normality from group-theoretic data alone (fixed
points of ``sigma``, values of ``f``, centralizers, centers, elementary
abelian quotients) and returns a certificate naming the structural case:

* ``commutative``: ``G`` abelian.
* ``case_i``: an abelian subgroup ``H`` of index 2 and ``b`` outside it with
  ``f(b) = -1``, ``f|H = 1``, ``sigma(b) = b``, ``sigma(h) = b^-1 h b = b h b^-1``.
* ``case_ii_a`` / ``case_ii_b``: ``G = <a,b> Y C`` with ``<a,b>`` a sigma-group
  and ``C`` abelian, with ``sigma`` fixing ``C`` or moving some ``d`` in ``C`` to ``dc``.
* ``case_iii_a`` / ``case_iii_b``: characteristic 2, ``f`` trivial and ``G`` a
  central product of ``n >= 2`` sigma-groups and an abelian group.

Quotients "by the fixed points" are taken modulo the subgroup of
sigma-fixed central elements; the full fixed set is not a subgroup once
``sigma`` moves a central element or ``n >= 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable

import numpy as np

from .errors import CapabilityError, InputError
from .groups import Group
from .morphisms import AntiAutomorphism, InvolutionSpec
from .subgroups import (
    center,
    center_of_subgroup,
    centralizer,
    commutator_subgroup,
    derived_subgroup,
    frattini_of_subgroup,
    generated_subgroup,
    index_two_subgroups,
    product_set,
    quotient_elementary_abelian_2,
)

CLASSIFY_MAX_ORDER = 32
CERTIFICATE_SCHEMA = "sigma-normal-certificate/1"

CASES = ("commutative", "case_i", "case_ii_a", "case_ii_b", "case_iii_a", "case_iii_b", "not_normal")


def fixed_and_moved_sets(G: Group, sigma: AntiAutomorphism) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """``(R, W, <W>)``: fixed points, moved points and the subgroup the moved points generate."""
    s = sigma.array
    fixed = frozenset(int(g) for g in np.nonzero(s == np.arange(G.order))[0])
    moved = frozenset(G.elements()) - fixed
    return fixed, moved, generated_subgroup(G, moved)


def _commute(G: Group, x: int, y: int) -> bool:
    return G.table[x, y] == G.table[y, x]


def _is_abelian_subset(G: Group, S: Iterable[int]) -> bool:
    idx = sorted(S)
    block = G.table[np.ix_(idx, idx)]
    return bool(np.array_equal(block, block.T))


def lemma2_case(spec: InvolutionSpec, a: int, b: int, strict: bool = True) -> str:
    """Which two-generator pattern the non-commuting pair ``(a, b)`` follows.

    Returns ``"i"``, ``"ii"``, ``"iii"``, ``"iv"`` or ``"violation"``. In
    pattern ``ii`` (the mirror of ``i`` with the roles of ``a`` and ``b``
    exchanged) ``sigma(b) = (b,a) b``. With ``strict=False`` pattern ``iii``
    drops the relation ``(ab)^2 = (ba)^2``, which fails for two reflections
    of a dihedral group even when the group ring is sigma-normal.
    """
    G, K = spec.group, spec.ring
    if _commute(G, a, b):
        raise InputError(f"elements {a} and {b} commute")
    s, f = spec.sigma, spec.f
    one, m1 = K.one, K.minus_one
    P, comm = G.product, G.commutator
    c = comm(a, b)
    c_inv2 = G.power(c, -2)
    ab_sq_eq = P(a, b, a, b) == P(b, a, b, a)
    a2, b2 = P(a, a), P(b, b)

    if (
        f(a) == one and f(b) == m1
        and s(a) == P(c, a) and s(b) == b
        and comm(b2, a) == 0 and ab_sq_eq
        and comm(c, a) == 0 and comm(c, b) == c_inv2
    ):
        return "i"
    d = comm(b, a)
    d_inv2 = G.power(d, -2)
    if (
        f(a) == m1 and f(b) == one
        and s(a) == a and s(b) == P(d, b)
        and comm(b, a2) == 0 and ab_sq_eq
        and comm(d, b) == 0 and comm(d, a) == d_inv2
    ):
        return "ii"
    if (
        f(a) == m1 and f(b) == m1
        and s(a) == a and s(b) == b
        and comm(a2, b) == 0 and comm(a, b2) == 0 and (ab_sq_eq or not strict)
        and comm(c, P(a, b)) == 0
    ):
        return "iii"
    if f(a) == one and f(b) == one and s(a) == P(c, a) and s(b) == P(c, b):
        H = generated_subgroup(G, [a, b])
        gamma2 = commutator_subgroup(G, H, H)
        if len(gamma2) == 2 and commutator_subgroup(G, gamma2, H) == frozenset([0]):
            return "iv"
    return "violation"


@lru_cache(maxsize=4096)
def _frattini(G: Group, members: frozenset[int]) -> frozenset[int]:
    return frattini_of_subgroup(G, members)


@dataclass(frozen=True, eq=False)
class SigmaGroupWitness:
    """A non-commuting pair ``(a, b)`` generating a sigma-group."""

    group: Group
    sigma: AntiAutomorphism
    a: int
    b: int
    commutator_c: int
    members: frozenset[int]

    @cached_property
    def center(self) -> frozenset[int]:
        return center_of_subgroup(self.group, self.members)

    @cached_property
    def frattini(self) -> frozenset[int]:
        return _frattini(self.group, self.members)

    @cached_property
    def fixed(self) -> frozenset[int]:
        return frozenset(g for g in self.members if self.sigma(g) == g)

    @property
    def frattini_equals_center(self) -> bool:
        return self.frattini == self.center

    @property
    def center_equals_fixed(self) -> bool:
        return self.center == self.fixed

    @cached_property
    def sigma_action_ok(self) -> bool:
        """``sigma(g) = g`` on the center of ``<a,b>`` and ``g c`` off it."""
        G, c = self.group, self.commutator_c
        return all(
            self.sigma(g) == (g if g in self.center else int(G.table[g, c])) for g in self.members
        )

    def to_json(self, with_structure: bool = True) -> dict:
        out: dict[str, Any] = {
            "a": self.a,
            "b": self.b,
            "c": self.commutator_c,
            "order": len(self.members),
        }
        if with_structure:
            out["frattini_equals_center"] = self.frattini_equals_center
            out["center_equals_fixed"] = self.center_equals_fixed
            out["sigma_action_ok"] = self.sigma_action_ok
        return out


def detect_sigma_group(G: Group, sigma: AntiAutomorphism, a: int, b: int) -> SigmaGroupWitness | None:
    """A witness when ``<a,b>`` is non-abelian of class 2 with derived subgroup ``{1, c}``,
    ``c = (a,b)``, ``sigma(a) = a c`` and ``sigma(b) = b c``; otherwise ``None``.

    The equalities ``Phi(<a,b>) = Z(<a,b>) = fixed points in <a,b>`` are
    reported on the witness, not required by it.
    """
    if _commute(G, a, b):
        return None
    c = G.commutator(a, b)
    t = G.table
    if sigma(a) != t[a, c] or sigma(b) != t[b, c]:
        return None
    H = generated_subgroup(G, [a, b])
    gamma2 = commutator_subgroup(G, H, H)
    if gamma2 != frozenset([0, c]):
        return None
    if commutator_subgroup(G, gamma2, H) != frozenset([0]):
        return None
    return SigmaGroupWitness(G, sigma, a, b, c, H)


@dataclass
class ClassificationCertificate:
    case: str
    fixed_set: frozenset[int]
    moved_set: frozenset[int]
    moved_subgroup: frozenset[int]
    witnesses: dict[str, Any] = field(default_factory=dict)
    reason: str = ""

    @property
    def normal(self) -> bool:
        return self.case != "not_normal"

    @property
    def sigma_groups(self) -> list[SigmaGroupWitness]:
        return list(self.witnesses.get("sigma_groups", []))

    def to_json(self) -> dict:
        wit: dict[str, Any] = {}
        for k, v in self.witnesses.items():
            if k == "sigma_groups":
                wit[k] = [w.to_json() for w in v]
            elif isinstance(v, (frozenset, set)):
                wit[k] = sorted(v)
            else:
                wit[k] = v
        return {
            "schema": CERTIFICATE_SCHEMA,
            "case": self.case,
            "reason": self.reason,
            "fixed_set": sorted(self.fixed_set),
            "moved_set": sorted(self.moved_set),
            "moved_subgroup": sorted(self.moved_subgroup),
            "witnesses": wit,
        }


def _spans(G: Group, gens: Iterable[int], N: frozenset[int]) -> bool:
    return len(generated_subgroup(G, set(gens) | N)) == G.order


def _case_i(spec: InvolutionSpec) -> tuple[frozenset[int], int] | None:
    G, K = spec.group, spec.ring
    s, f = spec.sigma, spec.f
    t, inv = G.table, G.inverses
    for H in index_two_subgroups(G):
        if not _is_abelian_subset(G, H) or any(f(h) != K.one for h in H):
            continue
        hs = np.array(sorted(H))
        for b in sorted(set(G.elements()) - H):
            if f(b) != K.minus_one or s(b) != b:
                continue
            conj = t[t[inv[b], hs], b]  # b^-1 h b
            conj2 = t[t[b, hs], inv[b]]  # b h b^-1
            if np.array_equal(s.array[hs], conj) and np.array_equal(conj, conj2):
                return H, b
    return None


def _sigma_group_choices(
    G: Group, sigma: AntiAutomorphism, pool: frozenset[int], moved: frozenset[int], c: int
) -> list[SigmaGroupWitness]:
    """One witness per distinct sigma-group subgroup generated by moved elements of ``pool``."""
    cands = sorted(pool & moved)
    seen: set[frozenset[int]] = set()
    out = []
    t = G.table
    for i, x in enumerate(cands):
        for y in cands[i + 1 :]:
            if t[x, y] == t[y, x] or G.commutator(x, y) != c:
                continue
            w = detect_sigma_group(G, sigma, x, y)
            if w is not None and w.members not in seen:
                seen.add(w.members)
                out.append(w)
    return out


def classify(spec: InvolutionSpec) -> ClassificationCertificate:
    """Name the structural case for ``(G, K, sigma, f)``, or reject with a reason."""
    G, K = spec.group, spec.ring
    if G.order > CLASSIFY_MAX_ORDER:
        raise CapabilityError(f"classification limited to order <= {CLASSIFY_MAX_ORDER}")
    sigma, f = spec.sigma, spec.f
    R, W, HW = fixed_and_moved_sets(G, sigma)

    def cert(case: str, reason: str = "", **witnesses) -> ClassificationCertificate:
        return ClassificationCertificate(case, R, W, HW, witnesses, reason)

    if G.is_abelian:
        return cert("commutative")
    one, m1 = K.one, K.minus_one
    if any(v not in (one, m1) for v in f.values):
        return cert("not_normal", "f takes a value outside {1, -1}")

    if _is_abelian_subset(G, HW):
        found = _case_i(spec)
        if found is None:
            return cert("not_normal", "<W> is abelian but no abelian index-2 subgroup H and b realize case (i)")
        H, b = found
        return cert("case_i", H=H, b=b)

    moved = sorted(W)
    t = G.table
    a, b = next((x, y) for i, x in enumerate(moved) for y in moved[i + 1 :] if t[x, y] != t[y, x])
    first = detect_sigma_group(G, sigma, a, b)
    if first is None:
        return cert("not_normal", f"moved pair ({a}, {b}) does not generate a sigma-group")
    c = first.commutator_c
    Z = center(G)
    if derived_subgroup(G) != frozenset([0, c]) or c not in Z:
        return cert("not_normal", "G' is not {1, c} with c central")
    if any(f(h) != one for h in first.members):
        return cert("not_normal", "<a,b> is not inside Ker f")
    C = centralizer(G, first.members)
    if len(product_set(G, first.members, C)) != G.order:
        return cert("not_normal", "G != <a,b> C_G(<a,b>)")
    Z0 = Z & R
    tc = t[:, c]

    if _is_abelian_subset(G, C):
        if (
            all(sigma(d) == d and f(d) == one for d in C)
            and R == Z
            and quotient_elementary_abelian_2(G, Z) == (True, 2)
            and _spans(G, [a, b], Z)
        ):
            return cert("case_ii_a", sigma_groups=[first], C=C)
        if (
            2 * len(Z0) == len(Z)
            and all(f(z) == one for z in C & R)
            and quotient_elementary_abelian_2(G, Z0) == (True, 3)
        ):
            for d in sorted(C):
                if sigma(d) == tc[d] and f(d) == m1 and _spans(G, [a, b, d], Z0):
                    return cert("case_ii_b", sigma_groups=[first], C=C, d=d)
        return cert("not_normal", "C_G(<a,b>) is abelian but neither sub-case of (ii) holds")

    if K.characteristic != 2:
        return cert("not_normal", "C_G(<a,b>) is non-abelian and char(K) != 2")
    if not f.is_trivial:
        return cert("not_normal", "case (iii) needs G = Ker f")
    if not quotient_elementary_abelian_2(G, Z0)[0]:
        return cert("not_normal", "G / (fixed central elements) is not elementary abelian")

    def finish(pairs: list[SigmaGroupWitness], resid: frozenset[int]) -> ClassificationCertificate | None:
        n = len(pairs)
        gens = [x for w in pairs for x in (w.a, w.b)]
        S = generated_subgroup(G, gens)
        if len(product_set(G, S, resid)) != G.order:
            return None
        if all(sigma(d) == d for d in resid) and Z0 == Z:
            if quotient_elementary_abelian_2(G, Z) == (True, 2 * n) and _spans(G, gens, Z):
                return cert("case_iii_a", sigma_groups=pairs, C=resid, n=n)
        if 2 * len(Z0) == len(Z) and quotient_elementary_abelian_2(G, Z0) == (True, 2 * n + 1):
            for d in sorted(resid):
                if sigma(d) == tc[d] and _spans(G, gens + [d], Z0):
                    return cert("case_iii_b", sigma_groups=pairs, C=resid, n=n, d=d)
        return None

    def extract(pairs: list[SigmaGroupWitness], resid: frozenset[int]) -> ClassificationCertificate | None:
        if pairs and _is_abelian_subset(G, resid):
            return finish(pairs, resid)
        for w in _sigma_group_choices(G, sigma, resid, W, c):
            out = extract(pairs + [w], resid & centralizer(G, w.members))
            if out is not None:
                return out
        return None

    # the first pair only decided between (ii) and (iii); search every first factor
    result = extract([], frozenset(G.elements()))
    if result is None:
        return cert("not_normal", "no central decomposition into sigma-groups and an abelian group fits case (iii)")
    return result
