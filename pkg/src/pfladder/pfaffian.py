"""Pfaffians of the generic skew-symmetric matrix.

Index tuples follow antisymmetric tuple semantics: ``[u_1,...,u_2p]`` equals
the sign of the sorting permutation times the pfaffian of the sorted
indices, and vanishes when an index repeats.  This is what makes identities
written with unsorted, colliding index lists literally true.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import kernels
from .errors import DomainError
from .polyring import PolyRing, Polynomial, VarId


@dataclass(frozen=True)
class IndexTuple:
    """An even-length list of row/column indices, repeats allowed."""

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        idx = tuple(int(u) for u in indices)
        if len(idx) % 2:
            raise DomainError(f"pfaffian index tuple {list(idx)} has odd length; even length required")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def canonical(self) -> tuple[int, tuple[int, ...]]:
        """``(sign, sorted)``; sign is 0 when an index repeats."""
        idx = self.indices
        if len(set(idx)) != len(idx):
            return 0, tuple(sorted(idx))
        return permutation_sign(idx), tuple(sorted(idx))

    def check_range(self, n: int):
        for u in self.indices:
            if not 1 <= u <= n:
                raise DomainError(f"index {u} outside [1,{n}]")


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    pos = {v: k for k, v in enumerate(sorted(seq))}
    for start in range(len(seq)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = pos[seq[k]]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _as_tuple(tu) -> IndexTuple:
    return tu if isinstance(tu, IndexTuple) else IndexTuple(tu)


def _ring_for(n: int, ring: PolyRing | None) -> PolyRing:
    return ring if ring is not None else PolyRing.full(n)


# ---------------------------------------------------------------------------
# expansion along the first index

class _Expander:
    """Packed-term pfaffian expansion with a per-call cache."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.k = kernels.active
        self.ctx = ring.ctx()
        self.cache: dict[tuple[int, ...], tuple[list, list]] = {(): ([self.ctx.one], [1])}
        self.var = {}
        for v, pos in ring.index.items():
            exps = [0] * ring.nvars
            exps[pos] = 1
            self.var[(v.row, v.col)] = self.k.pack(self.ctx, exps)

    def __call__(self, idx: tuple[int, ...]):
        hit = self.cache.get(idx)
        if hit is not None:
            return hit
        k, ctx = self.k, self.ctx
        first = idx[0]
        acc = ([], [])
        for h in range(1, len(idx)):
            var = self.var.get((first, idx[h]))
            if var is None:
                raise DomainError(f"x[{first},{idx[h]}] is not a variable of the ring")
            rest = idx[1:h] + idx[h + 1:]
            sub = self(rest)
            if not sub[0]:
                continue
            # (-1)^h in 1-based positions equals (-1)^(h+1) here
            term = k.mul_term(ctx, sub, var, 1 if h % 2 else -1)
            acc = k.lincomb(ctx, 1, acc, 1, term)
        self.cache[idx] = acc
        return acc


def pfaffian(tu, n: int, ring: PolyRing | None = None) -> Polynomial:
    """Pfaffian ``[u_1,...,u_2p]`` by recursive first-index expansion."""
    tu = _as_tuple(tu)
    tu.check_range(n)
    ring = _ring_for(n, ring)
    sign, idx = tu.canonical()
    if sign == 0:
        return ring.zero()
    raw = _Expander(ring)(idx)
    return Polynomial._from_scaled(ring, raw, sign)


def pfaffians(tuples: Iterable[Sequence[int]], n: int, ring: PolyRing | None = None) -> list[Polynomial]:
    """Several pfaffians sharing one subpfaffian cache."""
    ring = _ring_for(n, ring)
    ex = _Expander(ring)
    out = []
    for tu in tuples:
        tu = _as_tuple(tu)
        tu.check_range(n)
        sign, idx = tu.canonical()
        out.append(ring.zero() if sign == 0 else Polynomial._from_scaled(ring, ex(idx), sign))
    return out


# ---------------------------------------------------------------------------
# perfect-matching oracle

def perfect_matchings(items: Sequence[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first = items[0]
    for h in range(1, len(items)):
        rest = list(items[1:h]) + list(items[h + 1:])
        for m in perfect_matchings(rest):
            yield [(first, items[h])] + m


def crossings(matching: Sequence[tuple[int, int]]) -> int:
    """Number of crossing pairs of arcs when the points sit on a line."""
    count = 0
    for x in range(len(matching)):
        a, b = sorted(matching[x])
        for y in range(x + 1, len(matching)):
            c, d = sorted(matching[y])
            if a < c < b < d or c < a < d < b:
                count += 1
    return count


def pfaffian_matchings(tu, n: int, ring: PolyRing | None = None) -> Polynomial:
    """Pfaffian as the crossing-signed sum over perfect matchings."""
    tu = _as_tuple(tu)
    tu.check_range(n)
    ring = _ring_for(n, ring)
    sign, idx = tu.canonical()
    if sign == 0:
        return ring.zero()
    terms: dict = {}
    for m in perfect_matchings(idx):
        s = -sign if crossings(m) % 2 else sign
        key = tuple(sorted((VarId(min(a, b), max(a, b)), 1) for a, b in m))
        terms[key] = terms.get(key, 0) + s
    return ring.from_dict(terms)


# ---------------------------------------------------------------------------
# De Concini-Procesi quadratic relation

def dcp_terms(c: Sequence[int], d: Sequence[int]):
    """The bracket products of the identity as ``(coeff, left, right)`` triples.

    Left-hand side minus right-hand side; the identity states their sum is 0.
    """
    c = list(c)
    d = list(d)
    out = [(1, tuple(c), tuple(d))]
    for h in range(len(c)):
        left = c[:h] + [d[0]] + c[h + 1:]
        right = [c[h]] + d[1:]
        out.append((-1, tuple(left), tuple(right)))
    for k in range(1, len(d)):
        # k is 0-based; (-1)^(k_1based - 1) with k_1based = k + 1
        s = -1 if k % 2 else 1
        left = [d[k], d[0]] + c
        right = d[1:k] + d[k + 1:]
        out.append((-s, tuple(left), tuple(right)))
    return out


def dcp_residual(c, d, n: int, ring: PolyRing | None = None) -> Polynomial:
    """LHS - RHS of the De Concini-Procesi relation; always the zero polynomial."""
    c = _as_tuple(c)
    d = _as_tuple(d)
    c.check_range(n)
    d.check_range(n)
    if len(d) == 0:
        raise DomainError("the second tuple must be nonempty")
    ring = _ring_for(n, ring)
    ex_cache = {}
    total = ring.zero()
    for coeff, left, right in dcp_terms(c.indices, d.indices):
        pl = ex_cache.get(left)
        if pl is None:
            pl = ex_cache[left] = pfaffian(left, n, ring)
        pr = ex_cache.get(right)
        if pr is None:
            pr = ex_cache[right] = pfaffian(right, n, ring)
        if pl and pr:
            total = total + (pl * pr).scale(coeff)
    return total
