"""Property suites for the structural facts about sigma-normal group rings.

Each suite takes a validated spec (normally one already known to be
sigma-normal) and returns a :class:`SuiteResult`:

* ``units``: for every unit ``a`` of KG, ``t = a^-1 a^sigma`` commutes with
  ``a`` and ``t^sigma = t^-1``. Only run when ``|K|^|G| <= 2^12``.
* ``pairs``: :func:`lemma2_case` gives a non-violation tag to every ordered
  non-commuting pair.
* ``moved``: ``<W>`` is normal; when it is abelian the classifier says ``case_i``.
* ``sigma_groups``: every non-commuting pair of moved elements generates a
  sigma-group with ``Phi = Z = fixed points`` and the expected sigma action,
  and every element of its centralizer is fixed or multiplied by ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .algebra import batch_involution, batch_mul, enumerate_units
from .classifier import classify, detect_sigma_group, fixed_and_moved_sets, lemma2_case
from .morphisms import InvolutionSpec
from .subgroups import centralizer, is_normal

UNIT_SUITE_BOUND = 2**12
SUITES = ("units", "pairs", "moved", "sigma_groups")


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int = 0
    skipped: bool = False
    failures: list[Any] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": self.failures[:10],
            "notes": self.notes,
        }


def units_suite(spec: InvolutionSpec, bound: int = UNIT_SUITE_BOUND) -> SuiteResult:
    G, K = spec.group, spec.ring
    if K.size**G.order > bound:
        return SuiteResult("units", True, skipped=True, notes={"reason": f"|K|^|G| > {bound}"})
    U, Uinv = enumerate_units(G, K, bound)
    T = batch_mul(G, K, Uinv, batch_involution(spec, U))
    commutes = np.all(batch_mul(G, K, T, U) == batch_mul(G, K, U, T), axis=1)
    one = np.zeros(G.order, dtype=np.int64)
    one[0] = K.one
    inverse_ok = np.all(batch_mul(G, K, batch_involution(spec, T), T) == one, axis=1)
    bad = np.nonzero(~(commutes & inverse_ok))[0]
    return SuiteResult("units", not len(bad), len(U), failures=[U[i].tolist() for i in bad[:10]])


def pairs_suite(spec: InvolutionSpec) -> SuiteResult:
    G = spec.group
    t = G.table
    xs, ys = np.nonzero(t != t.T)
    failures = []
    tags: dict[str, int] = {}
    relaxed = 0
    for a, b in zip(xs.tolist(), ys.tolist()):
        tag = lemma2_case(spec, a, b)
        tags[tag] = tags.get(tag, 0) + 1
        if tag == "violation":
            failures.append([a, b])
            relaxed += lemma2_case(spec, a, b, strict=False) == "violation"
    notes = {"tags": dict(sorted(tags.items())), "violations_without_square_relation": relaxed}
    return SuiteResult("pairs", not failures, len(xs), failures=failures, notes=notes)


def moved_suite(spec: InvolutionSpec) -> SuiteResult:
    G = spec.group
    _, W, HW = fixed_and_moved_sets(G, spec.sigma)
    failures = []
    normal = is_normal(G, HW)
    if not normal:
        failures.append("<W> is not normal")
    block = G.table[np.ix_(sorted(HW), sorted(HW))]
    abelian = bool(np.array_equal(block, block.T))
    if abelian and not G.is_abelian:
        case = classify(spec).case
        if case != "case_i":
            failures.append(f"<W> abelian but classified {case}")
    notes = {"moved_subgroup": sorted(HW), "normal": normal, "abelian": abelian}
    return SuiteResult("moved", not failures, 1, failures=failures, notes=notes)


def sigma_groups_suite(spec: InvolutionSpec) -> SuiteResult:
    G, sigma = spec.group, spec.sigma
    _, W, _ = fixed_and_moved_sets(G, sigma)
    t = G.table
    moved = sorted(W)
    failures = []
    checked = 0
    seen: set[frozenset[int]] = set()
    for i, a in enumerate(moved):
        for b in moved[i + 1 :]:
            if t[a, b] == t[b, a]:
                continue
            checked += 1
            w = detect_sigma_group(G, sigma, a, b)
            if w is None:
                failures.append({"pair": [a, b], "problem": "not a sigma-group"})
                continue
            if w.members in seen:
                continue
            seen.add(w.members)
            problems = [
                name
                for name, ok in (
                    ("frattini != center", w.frattini_equals_center),
                    ("center != fixed", w.center_equals_fixed),
                    ("sigma action", w.sigma_action_ok),
                )
                if not ok
            ]
            c = w.commutator_c
            if any(sigma(d) not in (d, int(t[c, d])) for d in centralizer(G, w.members)):
                problems.append("centralizer element neither fixed nor multiplied by c")
            if problems:
                failures.append({"pair": [a, b], "problem": "; ".join(problems)})
    return SuiteResult("sigma_groups", not failures, checked, failures=failures, notes={"subgroups": len(seen)})


def run_suites(spec: InvolutionSpec, unit_bound: int = UNIT_SUITE_BOUND) -> list[SuiteResult]:
    return [units_suite(spec, unit_bound), pairs_suite(spec), moved_suite(spec), sigma_groups_suite(spec)]
