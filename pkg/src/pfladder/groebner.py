"""Buchberger's algorithm with the Gebauer-Moeller pair update.

Pairs are selected by the normal strategy (smallest lcm first).  Over the
rationals the computation is fraction-free on primitive integer
polynomials.  A :class:`Budget` bounds the work; when it runs out the engine
raises :class:`BudgetExhausted` rather than returning a partial basis.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import BudgetExhausted, DomainError
from .polyring import Monomial, PolyRing, Polynomial


@dataclass(frozen=True)
class Budget:
    max_pairs: int = 200_000
    max_coeff_bits: int = 4096
    max_basis: int = 20_000


DEFAULT_BUDGET = Budget()


@dataclass
class Stats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    basis_peak: int = 0


def _coeff_bits(coeffs) -> int:
    return max((abs(c).bit_length() for c in coeffs), default=0)


def buchberger_raw(ctx, polys: Iterable, budget: Budget = DEFAULT_BUDGET, stats: Stats | None = None):
    """Reduced Groebner basis of raw kernel polynomials.

    Returns normalized raw polynomials (primitive / monic) sorted by
    increasing leading monomial.
    """
    k = kernels.active
    stats = stats if stats is not None else Stats()
    store: list = []        # every polynomial ever added, by index
    leads: list[int] = []
    active: list[int] = []  # indices currently in the basis
    pairs: dict[tuple[int, int], int] = {}
    heap: list = []

    def lcm(i, j):
        return k.mon_lcm(ctx, leads[i], leads[j])

    def update(h):
        nonlocal active
        lh = leads[h]
        cands = [(i, lcm(i, h)) for i in active]
        kept = []
        while cands:
            i, l_ih = cands.pop(0)
            if (k.mon_coprime(ctx, leads[i], lh)
                    or not (any(k.mon_divides(ctx, l2, l_ih) for _, l2 in cands)
                            or any(k.mon_divides(ctx, l2, l_ih) for _, l2 in kept))):
                kept.append((i, l_ih))
        new = [(i, l) for i, l in kept if not k.mon_coprime(ctx, leads[i], lh)]
        # drop old pairs made redundant by h
        for (i, j), l_ij in list(pairs.items()):
            if (k.mon_divides(ctx, lh, l_ij) and lcm(i, h) != l_ij and lcm(j, h) != l_ij):
                del pairs[(i, j)]
        for i, l in new:
            key = (i, h)
            pairs[key] = l
            heapq.heappush(heap, (l, i, h))
        active = [i for i in active if not k.mon_divides(ctx, lh, leads[i])] + [h]
        stats.basis_peak = max(stats.basis_peak, len(active))
        if len(active) > budget.max_basis:
            raise BudgetExhausted(f"basis grew beyond {budget.max_basis} elements")

    def add(f):
        f, _ = k.normalize(ctx, f)
        if not ctx.p and _coeff_bits(f[1]) > budget.max_coeff_bits:
            raise BudgetExhausted(f"coefficients exceed {budget.max_coeff_bits} bits")
        store.append(f)
        leads.append(f[0][0])
        update(len(store) - 1)

    def reduce_against_active(f):
        divs = [store[i] for i in active]
        r, _ = k.reduce(ctx, f, divs, True, False)
        return r

    inputs = [(list(m), list(c)) for m, c in polys if m]
    inputs.sort(key=lambda f: f[0][0])
    for f in inputs:
        r = reduce_against_active(f)
        if r[0]:
            add(r)

    while heap:
        l, i, j = heapq.heappop(heap)
        if pairs.get((i, j)) != l:
            continue
        del pairs[(i, j)]
        stats.pairs_total += 1
        if stats.pairs_total > budget.max_pairs:
            raise BudgetExhausted(f"more than {budget.max_pairs} critical pairs")
        s = k.spoly(ctx, store[i], store[j])
        if not s[0]:
            stats.zero_reductions += 1
            continue
        r = reduce_against_active(s)
        stats.pairs_reduced += 1
        if not r[0]:
            stats.zero_reductions += 1
            continue
        add(r)

    # active is minimal; tail-reduce every element against the others
    basis = [store[i] for i in active]
    out = []
    for pos, g in enumerate(basis):
        others = basis[:pos] + basis[pos + 1:]
        r, _ = k.reduce(ctx, g, others, True, False)
        r, _ = k.normalize(ctx, r)
        out.append(r)
    out.sort(key=lambda f: f[0][0])
    return out


class GroebnerBasis:
    """Reduced Groebner basis; elements primitive (Q) or monic (F_p)."""

    def __init__(self, ring: PolyRing, polys: Sequence[Polynomial], stats: Stats | None = None):
        self.ring = ring
        self.polys = tuple(polys)
        self.stats = stats

    @classmethod
    def compute(cls, polys: Iterable[Polynomial], ring: PolyRing | None = None,
                budget: Budget = DEFAULT_BUDGET) -> "GroebnerBasis":
        polys = list(polys)
        if ring is None:
            if not polys:
                raise DomainError("need a ring for an empty generating set")
            ring = polys[0].ring
        for f in polys:
            if f.ring != ring:
                raise DomainError("generators belong to a different ring")
        ctx = ring.ctx()
        stats = Stats()
        try:
            raw = buchberger_raw(ctx, [f._raw() for f in polys if f], budget, stats)
        except kernels.MonomialOverflow as exc:
            raise BudgetExhausted(f"monomial exponent overflow: {exc}") from None
        unit = Fraction(1) if ring.is_rational else 1
        return cls(ring, [Polynomial(ring, m, c, unit) for m, c in raw], stats)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.polys == other.polys

    def __hash__(self):
        return hash((self.ring, self.polys))

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial() for g in self.polys]

    def _check(self, f: Polynomial):
        if f.ring != self.ring:
            raise DomainError("polynomial and basis live in different rings (order/field/variables)")

    def reduce(self, f: Polynomial) -> Polynomial:
        """Unique normal form of ``f`` modulo the ideal."""
        self._check(f)
        if not f or not self.polys:
            return f
        ctx = self.ring.ctx()
        raw, mult = kernels.active.reduce(ctx, f._raw(), [g._raw() for g in self.polys], True, True)
        if self.ring.is_rational:
            return Polynomial._from_scaled(self.ring, raw, Fraction(f.unit) / mult)
        return Polynomial._from_scaled(self.ring, raw, f.unit)

    def contains(self, f: Polynomial) -> bool:
        self._check(f)
        if not f or not self.polys:
            return not f
        ctx = self.ring.ctx()
        raw, _ = kernels.active.reduce(ctx, f._raw(), [g._raw() for g in self.polys], True, False)
        return not raw[0]

    def is_groebner(self) -> bool:
        """All S-polynomials reduce to zero."""
        k = kernels.active
        ctx = self.ring.ctx()
        raws = [g._raw() for g in self.polys]
        for i in range(len(raws)):
            for j in range(i + 1, len(raws)):
                if k.mon_coprime(ctx, raws[i][0][0], raws[j][0][0]):
                    continue
                s = k.spoly(ctx, raws[i], raws[j])
                if s[0] and k.reduce(ctx, s, raws, True, False)[0][0]:
                    return False
        return True

    def is_reduced(self) -> bool:
        k = kernels.active
        ctx = self.ring.ctx()
        leads = [g._mons[0] for g in self.polys]
        for pos, g in enumerate(self.polys):
            if not g.is_sorted():
                return False
            for m in g._mons:
                for q, l in enumerate(leads):
                    if q != pos and k.mon_divides(ctx, l, m):
                        return False
            normal, _ = k.normalize(ctx, g._raw())
            if list(normal[1]) != list(g._coeffs) or g.unit != 1:
                return False
        return list(leads) == sorted(leads)


def buchberger(polys: Iterable[Polynomial], ring: PolyRing | None = None,
               budget: Budget = DEFAULT_BUDGET) -> GroebnerBasis:
    return GroebnerBasis.compute(polys, ring, budget)
