"""Pfaffian ideals of ladders as Groebner-basis objects.

Generator enumeration, membership, ideal equality, and Krull dimension of
``K[Y]/I`` read off the initial ideal: the dimension is the size of the
largest variable set containing the support of no leading monomial, so the
codimension is the size of a minimum hitting set of those supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import DomainError
from .groebner import DEFAULT_BUDGET, Budget, GroebnerBasis, buchberger
from .ladder import LadderSpec, cells
from .pfaffian import _Expander
from .polyring import QQ, Field, PolyRing, Polynomial, TermOrder


@dataclass(frozen=True)
class GeneratorSet:
    """Polynomials with provenance ``(corner k, index tuple)``; k is 1-based."""

    ring: PolyRing
    polys: tuple[Polynomial, ...]
    provenance: tuple[tuple[int, tuple[int, ...]] | None, ...] = field(default=())

    @classmethod
    def from_polys(cls, polys: Iterable[Polynomial], ring: PolyRing | None = None) -> "GeneratorSet":
        polys = tuple(polys)
        if ring is None:
            if not polys:
                raise DomainError("an empty generator list needs an explicit ring")
            ring = polys[0].ring
        return cls(ring, polys, (None,) * len(polys))

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def change_ring(self, ring: PolyRing) -> "GeneratorSet":
        return GeneratorSet(ring, tuple(f.change_ring(ring) for f in self.polys), self.provenance)


def ladder_ring(spec: LadderSpec, order="degrevlex", field: Field = QQ) -> PolyRing:
    """``K[Y]`` for the cells of the ladder."""
    return PolyRing.from_cells(cells(spec), order, field)


def generators(spec: LadderSpec, ring: PolyRing | None = None, order="degrevlex",
               field: Field = QQ) -> GeneratorSet:
    """All ``2t_k``-pfaffians with sorted indices inside square ``k``, deduplicated."""
    if ring is None:
        ring = ladder_ring(spec, order, field)
    ex = _Expander(ring)
    seen = set()
    polys = []
    prov = []
    for k, (c, tk) in enumerate(zip(spec.corners, spec.t), 1):
        for idx in combinations(range(c.a, c.b + 1), 2 * tk):
            if idx in seen:
                continue
            seen.add(idx)
            polys.append(Polynomial._from_scaled(ring, ex(idx), 1))
            prov.append((k, idx))
    return GeneratorSet(ring, tuple(polys), tuple(prov))


def groebner(gens: GeneratorSet | Sequence[Polynomial], order=None,
             budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    """Reduced Groebner basis, optionally after switching the term order."""
    if not isinstance(gens, GeneratorSet):
        gens = GeneratorSet.from_polys(gens)
    ring = gens.ring
    if order is not None and TermOrder.parse(order) != ring.order:
        ring = ring.with_order(order)
        gens = gens.change_ring(ring)
    return buchberger(gens.polys, ring, budget)


def reduce_mod(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(f)


def _common_ring(a: PolyRing, b: PolyRing, order) -> PolyRing:
    if a.field != b.field:
        raise DomainError("generator sets use different coefficient fields")
    order = TermOrder.parse(order) if order is not None else a.order
    return PolyRing(a.variables + b.variables, order, a.field)


def ideals_equal(a: GeneratorSet, b: GeneratorSet, order="degrevlex",
                 budget: Budget = DEFAULT_BUDGET) -> bool:
    """Equality of ideals by comparing reduced Groebner bases in a common ring."""
    ring = _common_ring(a.ring, b.ring, order)
    ga = buchberger(a.change_ring(ring).polys, ring, budget)
    gb = buchberger(b.change_ring(ring).polys, ring, budget)
    return ga.polys == gb.polys


# ---------------------------------------------------------------------------
# dimension

def _minimal_edges(edges: Iterable[int]) -> list[int]:
    edges = sorted(set(edges), key=lambda e: (bin(e).count("1"), e))
    out: list[int] = []
    for e in edges:
        if not any(f & e == f for f in out):
            out.append(e)
    return out


def min_hitting_set(edges: Iterable[int]) -> int:
    """Size of a smallest variable set meeting every support (bitmask) in ``edges``."""
    edges = _minimal_edges(edges)
    if not edges:
        return 0
    if 0 in edges:
        raise DomainError("the unit ideal has no finite codimension here")
    best = bin(_greedy_cover(edges)).count("1")

    def lower_bound(rem):
        used = 0
        count = 0
        for e in rem:
            if not e & used:
                used |= e
                count += 1
        return count

    def search(rem, size):
        nonlocal best
        if not rem:
            best = min(best, size)
            return
        if size + lower_bound(rem) >= best:
            return
        e = min(rem, key=lambda x: bin(x).count("1"))
        bits = e
        tried = 0
        while bits:
            v = bits & -bits
            bits ^= v
            # excluding earlier siblings avoids revisiting the same cover
            rest = [f for f in rem if not f & v]
            if any(f & ~tried == 0 for f in rest):
                tried |= v
                continue
            search([f & ~tried for f in rest], size + 1)
            tried |= v

    search(edges, 0)
    return best


def _greedy_cover(edges: list[int]) -> int:
    chosen = 0
    rem = list(edges)
    while rem:
        counts: dict[int, int] = {}
        for e in rem:
            bits = e
            while bits:
                v = bits & -bits
                bits ^= v
                counts[v] = counts.get(v, 0) + 1
        v = max(counts, key=lambda x: (counts[x], -x))
        chosen |= v
        rem = [e for e in rem if not e & v]
    return chosen


def max_independent_exhaustive(edges: Iterable[int], nvars: int, limit: int = 24) -> int:
    """Largest variable subset containing no edge, by enumeration (oracle)."""
    if nvars > limit:
        raise DomainError(f"exhaustive dimension search is capped at {limit} variables")
    edges = _minimal_edges(edges)
    for size in range(nvars, -1, -1):
        for combo in combinations(range(nvars), size):
            s = 0
            for v in combo:
                s |= 1 << v
            if not any(e & s == e for e in edges):
                return size
    return 0


def leading_supports(gb: GroebnerBasis) -> list[int]:
    k = kernels.active
    ctx = gb.ring.ctx()
    return [k.support_mask(ctx, g._mons[0]) for g in gb.polys]


def krull_dimension(gb: GroebnerBasis) -> int:
    return gb.ring.nvars - min_hitting_set(leading_supports(gb))


def codim_from_gb(gb: GroebnerBasis) -> int:
    return min_hitting_set(leading_supports(gb))


def codim_gb(spec: LadderSpec, order="degrevlex", field: Field = QQ,
             budget: Budget = DEFAULT_BUDGET) -> int:
    """Codimension of ``I_2t(Y)`` in ``K[Y]`` from a Groebner basis."""
    ring = ladder_ring(spec, order, field)
    gens = generators(spec, ring)
    if not gens.polys:
        return 0
    return codim_from_gb(buchberger(gens.polys, ring, budget))
