"""Decide whether ``x x^sigma = x^sigma x`` holds for every ``x`` in KG.

Pair reduction
--------------
For ``x = sum_g a_g g`` the defect ``x x^sigma - x^sigma x`` equals::

    sum_g      a_g^2   * f(g) (g sigma(g) - sigma(g) g)
  + sum_{g<h}  a_g a_h * [ f(h) (g sigma(h) - sigma(h) g) + f(g) (h sigma(g) - sigma(g) h) ]

a quadratic form in the coefficients with values in KG. It vanishes
identically exactly when every diagonal term and every cross term is zero:
sufficiency is immediate, and necessity follows by evaluating at
``x = g`` (diagonal term) and at ``x = g + h`` (diagonal terms plus the
cross term). The diagonal term vanishes iff ``g`` commutes with
``sigma(g)`` in ``G``, since ``f(g)`` is a unit. The exhaustive checker
re-derives every verdict from the definition on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .algebra import (
    FULL_ENUMERATION_BOUND,
    GroupRingElement,
    _require_compatible,
    batch_involution,
    batch_mul,
    batch_sub,
    enumerate_elements,
)
from .errors import CapabilityError
from .morphisms import InvolutionSpec


@dataclass(frozen=True)
class NormalityVerdict:
    normal: bool
    method: str
    witness_kind: str | None = None  # "element" | "pair" | "ring_element"
    witness: Any = None

    def witness_element(self, spec: InvolutionSpec) -> GroupRingElement | None:
        """The ``x`` in KG whose defect is nonzero, rebuilt from the witness."""
        G, K = spec.group, spec.ring
        if self.witness_kind == "element":
            return GroupRingElement.basis(G, K, self.witness)
        if self.witness_kind == "pair":
            g, h = self.witness
            return GroupRingElement.from_terms(G, K, {g: K.one, h: K.one})
        if self.witness_kind == "ring_element":
            return GroupRingElement(G, K, self.witness)
        return None

    def to_json(self) -> dict:
        w = self.witness
        if isinstance(w, tuple):
            w = list(w)
        return {"normal": self.normal, "method": self.method, "witness_kind": self.witness_kind, "witness": w}


def diagonal_failures(spec: InvolutionSpec) -> np.ndarray:
    """Elements ``g`` with ``g sigma(g) != sigma(g) g``."""
    G = spec.group
    t, s = G.table, spec.sigma.array
    idx = np.arange(G.order)
    return np.nonzero(t[idx, s] != t[s, idx])[0]


def cross_term_failures(spec: InvolutionSpec) -> np.ndarray:
    """Unordered pairs ``(g, h)``, ``g < h``, whose cross term is nonzero, in lexicographic order."""
    G, K = spec.group, spec.ring
    t, s, f = G.table, spec.sigma.array, spec.f.array
    g, h = np.triu_indices(G.order, k=1)
    elems = np.stack([t[g, s[h]], t[s[h], g], t[h, s[g]], t[s[g], h]], axis=1)
    fg, fh = f[g], f[h]
    neg = K.neg_table
    coeffs = np.stack([fh, neg[fh], fg, neg[fg]], axis=1)
    # net coefficient sitting on each of the four group elements
    net = np.zeros_like(coeffs)
    for j in range(4):
        same = elems == elems[:, j : j + 1]
        contrib = np.where(same, coeffs[:, j : j + 1], 0)
        net = K.add[net, contrib]
    bad = np.any(net != 0, axis=1)
    return np.stack([g[bad], h[bad]], axis=1)


def check_pairwise(spec: InvolutionSpec) -> NormalityVerdict:
    _require_compatible(spec)
    diag = diagonal_failures(spec)
    if len(diag):
        return NormalityVerdict(False, "pairwise", "element", int(diag[0]))
    cross = cross_term_failures(spec)
    if len(cross):
        g, h = cross[0]
        return NormalityVerdict(False, "pairwise", "pair", (int(g), int(h)))
    return NormalityVerdict(True, "pairwise")


def check_exhaustive(spec: InvolutionSpec, bound: int = FULL_ENUMERATION_BOUND) -> NormalityVerdict:
    """Evaluate the defect on every element of KG (``|K|^|G| <= bound``)."""
    _require_compatible(spec)
    G, K = spec.group, spec.ring
    if K.size**G.order > bound:
        raise CapabilityError(f"|K|^|G| = {K.size ** G.order} exceeds the exhaustive bound {bound}")
    X = enumerate_elements(G, K, bound)
    for start in range(0, len(X), 8192):
        block = X[start : start + 8192]
        Xs = batch_involution(spec, block)
        defect = batch_sub(K, batch_mul(G, K, block, Xs), batch_mul(G, K, Xs, block))
        bad = np.nonzero(np.any(defect != 0, axis=1))[0]
        if len(bad):
            return NormalityVerdict(False, "exhaustive", "ring_element", tuple(int(v) for v in block[bad[0]]))
    return NormalityVerdict(True, "exhaustive")
