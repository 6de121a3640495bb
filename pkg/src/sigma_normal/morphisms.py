"""Anti-automorphisms of order at most two, unit-valued homomorphisms, and
the compatibility condition that makes ``x -> x^sigma`` an involution of KG.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import CapabilityError, InputError
from .groups import Group
from .rings import CoefficientRing
from .subgroups import generated_subgroup

ENUMERATION_MAX_ORDER = 32


@dataclass(frozen=True, eq=False)
class AntiAutomorphism:
    group: Group
    map: tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(int(x) for x in self.map)
        object.__setattr__(self, "map", m)
        G = self.group
        if sorted(m) != list(range(G.order)):
            raise InputError("sigma must be a permutation of the group elements")
        arr = np.array(m)
        t = G.table
        # sigma(g h) == sigma(h) sigma(g)
        bad = arr[t] != t.T[arr[:, None], arr[None, :]]
        if bad.any():
            g, h = (int(v[0]) for v in np.nonzero(bad))
            raise InputError(f"sigma is not anti-multiplicative at ({g}, {h})")
        if not np.array_equal(arr[arr], np.arange(G.order)):
            g = int(np.nonzero(arr[arr] != np.arange(G.order))[0][0])
            raise InputError(f"sigma does not have order <= 2 (fails at {g})")

    def __call__(self, g: int) -> int:
        return self.map[g]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.map, dtype=np.int64)
        a.setflags(write=False)
        return a

    def __eq__(self, other) -> bool:
        return isinstance(other, AntiAutomorphism) and other.group is self.group and other.map == self.map

    def __hash__(self) -> int:
        return hash((id(self.group), self.map))


@dataclass(frozen=True, eq=False)
class UnitHomomorphism:
    group: Group
    ring: CoefficientRing
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        v = tuple(int(x) for x in self.values)
        object.__setattr__(self, "values", v)
        G, K = self.group, self.ring
        if len(v) != G.order:
            raise InputError(f"f needs {G.order} values, got {len(v)}")
        for g, x in enumerate(v):
            if x not in K.units:
                raise InputError(f"f({g}) = {x} is not a unit of {K.label}")
        arr = np.array(v)
        if not np.array_equal(arr[G.table], K.mul[arr[:, None], arr[None, :]]):
            raise InputError("f is not multiplicative")

    def __call__(self, g: int) -> int:
        return self.values[g]

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array(self.values, dtype=np.int64)
        a.setflags(write=False)
        return a

    @property
    def is_trivial(self) -> bool:
        return all(x == 1 for x in self.values)

    def kernel(self) -> frozenset[int]:
        return frozenset(g for g, x in enumerate(self.values) if x == 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UnitHomomorphism)
            and other.group is self.group
            and other.ring is self.ring
            and other.values == self.values
        )

    def __hash__(self) -> int:
        return hash((id(self.group), self.ring.label, self.values))


def validate_involution_spec(sigma: AntiAutomorphism, f: UnitHomomorphism) -> tuple[bool, int | None]:
    """``(True, None)`` iff ``f(g sigma(g)) = 1`` for every ``g``; otherwise the first failing ``g``."""
    if sigma.group is not f.group:
        raise InputError("sigma and f are defined on different groups")
    G = sigma.group
    prods = G.table[np.arange(G.order), sigma.array]
    bad = np.nonzero(f.array[prods] != 1)[0]
    if len(bad):
        return False, int(bad[0])
    return True, None


@dataclass(frozen=True, eq=False)
class InvolutionSpec:
    """The data ``(sigma, f)`` defining ``x -> x^sigma`` on KG."""

    sigma: AntiAutomorphism
    f: UnitHomomorphism

    def __post_init__(self) -> None:
        if self.sigma.group is not self.f.group:
            raise InputError("sigma and f are defined on different groups")

    @cached_property
    def validation(self) -> tuple[bool, int | None]:
        return validate_involution_spec(self.sigma, self.f)

    @property
    def compatible(self) -> bool:
        return self.validation[0]

    @property
    def group(self) -> Group:
        return self.sigma.group

    @property
    def ring(self) -> CoefficientRing:
        return self.f.ring


def classical_involution(G: Group) -> AntiAutomorphism:
    return AntiAutomorphism(G, tuple(int(x) for x in G.inverses))


def identity_map(G: Group) -> tuple[int, ...]:
    return tuple(range(G.order))


def trivial_homomorphism(G: Group, K: CoefficientRing) -> UnitHomomorphism:
    return UnitHomomorphism(G, K, (K.one,) * G.order)


def sign_homomorphism(G: Group, K: CoefficientRing, kernel: frozenset[int]) -> UnitHomomorphism:
    """``+1`` on ``kernel`` (an index-2 subgroup) and ``-1`` elsewhere."""
    if 2 * len(kernel) != G.order:
        raise InputError("sign homomorphism needs an index-2 subgroup")
    return UnitHomomorphism(G, K, tuple(K.one if g in kernel else K.minus_one for g in G.elements()))


def generating_set(G: Group) -> tuple[int, ...]:
    """A short generating tuple: greedily add the highest-order element outside the span."""
    ranked = sorted(G.elements(), key=lambda g: (-G.element_orders[g], g))
    gens: list[int] = []
    span = frozenset([0])
    for g in ranked:
        if len(span) == G.order:
            break
        if g not in span:
            gens.append(g)
            span = generated_subgroup(G, gens)
    return tuple(gens)


def _extend(
    G: Group,
    gens: Sequence[int],
    images: Sequence,
    start: dict,
    combine: Callable,
) -> dict | None:
    """Extend ``start`` (a partial map on a subgroup) along right multiplication by ``gens``.

    ``combine(image_x, image_g)`` gives the image of ``x*g``. Returns ``None``
    on inconsistency.
    """
    t = G.table
    out = dict(start)
    frontier = list(out)
    while frontier:
        nxt = []
        for x in frontier:
            ix = out[x]
            row = t[x]
            for g, ig in zip(gens, images):
                y = int(row[g])
                iy = combine(ix, ig)
                prev = out.get(y)
                if prev is None:
                    out[y] = iy
                    nxt.append(y)
                elif prev != iy:
                    return None
        frontier = nxt
    return out


@lru_cache(maxsize=64)
def automorphisms(G: Group) -> tuple[tuple[int, ...], ...]:
    """All automorphisms, by backtracking over images of a generating tuple."""
    if G.order > ENUMERATION_MAX_ORDER:
        raise CapabilityError(f"automorphism enumeration limited to order <= {ENUMERATION_MAX_ORDER}")
    gens = generating_set(G)
    orders = G.element_orders
    by_order: dict[int, list[int]] = {}
    for g in G.elements():
        by_order.setdefault(orders[g], []).append(g)
    t = G.table
    found: list[tuple[int, ...]] = []

    def combine(ix, ig):
        return int(t[ix, ig])

    def search(level: int, partial: dict, images: list[int]) -> None:
        if level == len(gens):
            if len(partial) == G.order and len(set(partial.values())) == G.order:
                found.append(tuple(partial[g] for g in G.elements()))
            return
        image_span = set(partial.values())
        for y in by_order[orders[gens[level]]]:
            if y in image_span:
                continue
            imgs = images + [y]
            ext = _extend(G, gens[: level + 1], imgs, partial, combine)
            if ext is None or len(set(ext.values())) != len(ext):
                continue
            search(level + 1, ext, imgs)

    search(0, {0: 0}, [])
    found.sort()
    return tuple(found)


@lru_cache(maxsize=64)
def enumerate_antiautomorphisms_order2(G: Group) -> tuple[AntiAutomorphism, ...]:
    """Every anti-automorphism ``sigma`` with ``sigma^2 = 1``, as ``inversion o alpha``."""
    inv = G.inverses
    out = []
    for alpha in automorphisms(G):
        m = inv[np.array(alpha)]
        if np.array_equal(m[m], np.arange(G.order)):
            out.append(tuple(int(x) for x in m))
    out.sort()
    return tuple(AntiAutomorphism(G, m) for m in out)


@lru_cache(maxsize=256)
def enumerate_unit_homomorphisms(G: Group, K: CoefficientRing) -> tuple[UnitHomomorphism, ...]:
    """Every homomorphism ``G -> U(K)``, by backtracking over generator images."""
    if G.order > ENUMERATION_MAX_ORDER:
        raise CapabilityError(f"homomorphism enumeration limited to order <= {ENUMERATION_MAX_ORDER}")
    gens = generating_set(G)
    orders = G.element_orders
    units = sorted(K.units)
    unit_orders = {u: K.unit_order(u) for u in units}
    mul = K.mul
    found: list[tuple[int, ...]] = []

    def combine(ix, ig):
        return int(mul[ix, ig])

    def search(level: int, partial: dict, images: list[int]) -> None:
        if level == len(gens):
            found.append(tuple(partial[g] for g in G.elements()))
            return
        for u in units:
            if orders[gens[level]] % unit_orders[u]:
                continue
            imgs = images + [u]
            ext = _extend(G, gens[: level + 1], imgs, partial, combine)
            if ext is not None:
                search(level + 1, ext, imgs)

    search(0, {0: K.one}, [])
    found.sort()
    return tuple(UnitHomomorphism(G, K, v) for v in found)


def compatible_homomorphisms(sigma: AntiAutomorphism, K: CoefficientRing) -> list[tuple[int, UnitHomomorphism]]:
    """``(index, f)`` for the enumerated homomorphisms compatible with ``sigma``."""
    return [
        (i, f)
        for i, f in enumerate(enumerate_unit_homomorphisms(sigma.group, K))
        if validate_involution_spec(sigma, f)[0]
    ]


def extend_antihomomorphism(G: Group, gens: Sequence[int], images: Sequence[int]) -> AntiAutomorphism:
    """The anti-automorphism with ``sigma(gens[i]) = images[i]``.

    Raises :class:`InputError` when the assignment does not extend to an
    order-2 anti-automorphism of ``G``.
    """
    if generated_subgroup(G, gens) != frozenset(G.elements()):
        raise InputError("gens do not generate the group")
    t = G.table

    def combine(ix, ig):
        # sigma(x g) = sigma(g) sigma(x)
        return int(t[ig, ix])

    ext = _extend(G, list(gens), list(images), {0: 0}, combine)
    if ext is None:
        raise InputError("generator images do not extend to an anti-homomorphism")
    return AntiAutomorphism(G, tuple(ext[g] for g in G.elements()))


def parse_involution_spec(text: str, G: Group, K: CoefficientRing) -> InvolutionSpec:
    """Parse two lines: sigma images (0-based indices) and f values (ring literals)."""
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 2:
        raise InputError("involution spec needs exactly two lines (sigma, then f)")
    try:
        sigma_map = [int(v) for v in lines[0]]
    except ValueError:
        raise InputError("sigma line must hold integers") from None
    if len(sigma_map) != G.order:
        raise InputError(f"sigma line needs {G.order} entries")
    values = [K.parse_literal(v) for v in lines[1]]
    return InvolutionSpec(AntiAutomorphism(G, sigma_map), UnitHomomorphism(G, K, values))


def format_involution_spec(spec: InvolutionSpec) -> str:
    return " ".join(map(str, spec.sigma.map)) + "\n" + " ".join(map(str, spec.f.values)) + "\n"
