"""Ladders of a skew-symmetric matrix given by upper corners and sizes.

A :class:`LadderSpec` lists upper corners ``(a_k, b_k)`` and a size vector
``t``.  Square ``k`` covers rows and columns ``a_k..b_k`` and contributes the
``2*t_k``-pfaffians with indices in that range.  Corners are numbered from 1
in reports, matching the usual indexing of the corner list.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable

from .errors import DomainError


@dataclass(frozen=True, order=True)
class UpperCorner:
    a: int
    b: int

    def __iter__(self):
        return iter((self.a, self.b))


@dataclass(frozen=True)
class LadderSpec:
    n: int
    corners: tuple[UpperCorner, ...]
    t: tuple[int, ...]

    def __init__(self, n: int, corners: Iterable, t: Iterable[int]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "corners", tuple(
            c if isinstance(c, UpperCorner) else UpperCorner(int(c[0]), int(c[1])) for c in corners))
        object.__setattr__(self, "t", tuple(int(x) for x in t))

    @property
    def s(self) -> int:
        return len(self.corners)

    def is_empty(self) -> bool:
        return not self.corners

    def to_json(self) -> dict:
        return {"n": self.n, "corners": [[c.a, c.b] for c in self.corners], "t": list(self.t)}

    @classmethod
    def from_json(cls, data: dict) -> "LadderSpec":
        if not isinstance(data, dict):
            raise DomainError("ladder spec must be a JSON object")
        missing = {"n", "corners", "t"} - set(data)
        if missing:
            raise DomainError(f"ladder spec is missing keys: {sorted(missing)}")
        extra = set(data) - {"n", "corners", "t"}
        if extra:
            raise DomainError(f"ladder spec has unknown keys: {sorted(extra)}")
        n, corners, t = data["n"], data["corners"], data["t"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise DomainError("'n' must be an integer")
        if not isinstance(corners, list) or not all(
                isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c) for c in corners):
            raise DomainError("'corners' must be a list of [a, b] integer pairs")
        if not isinstance(t, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in t):
            raise DomainError("'t' must be a list of integers")
        return cls(n, corners, t)

    @classmethod
    def loads(cls, text: str) -> "LadderSpec":
        return cls.from_json(json.loads(text))

    def __str__(self):
        cs = ",".join(f"({c.a},{c.b})" for c in self.corners)
        return f"n={self.n} corners={{{cs}}} t={self.t}"


# ---------------------------------------------------------------------------
# validation

@dataclass
class Violation:
    index: int | None  # 1-based corner number, None for spec-level problems
    rule: str
    message: str

    def __str__(self):
        where = f"corner {self.index}: " if self.index is not None else ""
        return f"{where}{self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, index, rule, message):
        self.violations.append(Violation(index, rule, message))

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "violations": [{"corner": v.index, "rule": v.rule, "message": v.message}
                               for v in self.violations]}

    def __str__(self):
        if self.ok:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def validate(spec: LadderSpec) -> ValidationReport:
    rep = ValidationReport()
    n = spec.n
    if n < 2:
        rep.add(None, "n", f"matrix size n={n} must be at least 2")
    if len(spec.t) != len(spec.corners):
        rep.add(None, "t-length", f"t has {len(spec.t)} entries for {len(spec.corners)} corners")
    for k, c in enumerate(spec.corners, 1):
        if not (1 <= c.a <= n and 1 <= c.b <= n):
            rep.add(k, "bounds", f"({c.a},{c.b}) lies outside 1..{n}")
        if not c.a < c.b:
            rep.add(k, "a<b", f"({c.a},{c.b}) violates a_k<b_k")
    for k in range(1, len(spec.corners)):
        prev, cur = spec.corners[k - 1], spec.corners[k]
        if cur.a < prev.a:
            rep.add(k + 1, "a-monotone", f"a_{k + 1}={cur.a} < a_{k}={prev.a} (a_1<=...<=a_s required)")
        if cur.b < prev.b:
            rep.add(k + 1, "b-monotone", f"b_{k + 1}={cur.b} < b_{k}={prev.b} (b_1<=...<=b_s required)")
    seen = {}
    for k, c in enumerate(spec.corners, 1):
        if c in seen:
            rep.add(k, "distinct", f"({c.a},{c.b}) coincides with corner {seen[c]}")
        else:
            seen[c] = k
    half = n // 2
    for k, tk in enumerate(spec.t, 1):
        if not 1 <= tk <= half:
            rep.add(k, "t-bounds", f"t_{k}={tk} outside 1..floor(n/2)={half}")
    if rep.ok:
        sym = symmetric_cells(cells(spec))
        for msg in ladder_axiom_failures(sym):
            rep.add(None, "ladder-axiom", msg)
    return rep


# ---------------------------------------------------------------------------
# cells

class CellSet(frozenset):
    """Upper-triangle positions ``(i, j)``, ``i < j``, of a ladder."""

    @property
    def variables(self):
        from .polyring import VarId
        return tuple(VarId(i, j) for i, j in sorted(self))


def square_cells(a: int, b: int) -> set[tuple[int, int]]:
    return {(i, j) for i in range(a, b + 1) for j in range(i + 1, b + 1)}


def cells(spec: LadderSpec) -> CellSet:
    out: set[tuple[int, int]] = set()
    for c in spec.corners:
        out |= square_cells(c.a, c.b)
    return CellSet(out)


def symmetric_cells(cs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    """Full ladder positions: both triangles plus the diagonals of each square."""
    out = set()
    for i, j in cs:
        out.update({(i, j), (j, i), (i, i), (j, j)})
    return out


def ladder_axiom_failures(pos: set[tuple[int, int]]) -> list[str]:
    """Symmetry, the four-point closure on upper-triangle pairs, and staircase closure.

    The four-point rule is only applied when both positions lie above the
    diagonal; applied to mixed pairs it would reject ordinary ladders.
    """
    bad = []
    for i, j in sorted(pos):
        if (j, i) not in pos:
            bad.append(f"({i},{j}) present but ({j},{i}) missing")
    for (i, j), (h, k) in permutations(sorted(pos), 2):
        if not (i < h and j > k):
            continue
        needs = [(i, k), (h, j)]
        if i < j and h < k:
            needs += [(i, h), (j, k)]
        for need in needs:
            if need not in pos:
                bad.append(f"({i},{j}),({h},{k}) present but {need} missing")
    return bad


# ---------------------------------------------------------------------------
# normalization

def _drop(spec: LadderSpec, k: int) -> LadderSpec:
    return LadderSpec(spec.n, spec.corners[:k] + spec.corners[k + 1:], spec.t[:k] + spec.t[k + 1:])


def _normalize_once(spec: LadderSpec) -> LadderSpec | None:
    cs, t = spec.corners, spec.t
    # empty squares first
    for k, c in enumerate(cs):
        if 2 * t[k] > c.b - c.a + 1:
            return _drop(spec, k)
    for k in range(1, len(cs)):
        prev, cur = cs[k - 1], cs[k]
        if prev == cur:
            return _drop(spec, k if t[k] >= t[k - 1] else k - 1)
        prev_in_cur = cur.a - prev.a <= t[k - 1] - t[k]
        cur_in_prev = cur.b - prev.b <= t[k] - t[k - 1]
        if prev_in_cur and cur_in_prev:
            return _drop(spec, k if t[k] >= t[k - 1] else k - 1)
        if prev_in_cur:
            return _drop(spec, k - 1)
        if cur_in_prev:
            return _drop(spec, k)
    return None


def normalize(spec: LadderSpec) -> LadderSpec:
    """Drop squares whose ideal is zero or contained in a neighbour's, to a fixpoint."""
    while True:
        nxt = _normalize_once(spec)
        if nxt is None:
            return spec
        spec = nxt


def is_normalized(spec: LadderSpec) -> bool:
    return _normalize_once(spec) is None


def corner_ladder_L(spec: LadderSpec) -> LadderSpec:
    """The ladder with corners ``(a_k+t_k-1, b_k-t_k+1)``, all sizes 1."""
    if not is_normalized(spec):
        raise DomainError("corner_ladder_L needs a normalized spec")
    corners = [UpperCorner(c.a + tk - 1, c.b - tk + 1) for c, tk in zip(spec.corners, spec.t)]
    for k, c in enumerate(corners):
        if not c.a < c.b:
            raise DomainError(f"L-corner {k + 1} ({c.a},{c.b}) is degenerate")
        if k and not (c.a > corners[k - 1].a and c.b > corners[k - 1].b):
            raise DomainError(f"L-corners {k} and {k + 1} are not strictly increasing")
    return LadderSpec(spec.n, corners, [1] * len(corners))


def height_formula(spec: LadderSpec) -> int:
    """Codimension from the corner ladder: number of its cells above the diagonal."""
    spec = normalize(spec)
    if spec.is_empty():
        return 0
    return len(cells(corner_ladder_L(spec)))
