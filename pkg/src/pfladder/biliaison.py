"""Elementary G-biliaison steps between ladder pfaffian varieties.

From a ladder spec ``V`` with a maximal size ``t_k >= 2`` we build

* ``V'``: corner ``k`` shrunk to ``(a_k+1, b_k-1)`` with size ``t_k - 1``;
* ``W``: corner ``k`` split into ``(a_k, b_k-1)`` and ``(a_k+1, b_k)`` with
  size ``t_k`` on both, minus the squares that contribute nothing new;

and the witness fraction ``[a_k,u,b_k] / [u]`` for the leftmost interior
tuple ``u``.  Iterating on ``V'`` reaches sizes all 1, i.e. an ideal of
variables.  :func:`verify_step` machine-checks each claim about a step.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import AlreadyLinear, BudgetExhausted, DomainError
from .groebner import DEFAULT_BUDGET, Budget, GroebnerBasis, buchberger
from .ideal import codim_from_gb, generators, ladder_ring
from .ladder import (LadderSpec, UpperCorner, corner_ladder_L, height_formula, is_normalized,
                     normalize, validate)
from .pfaffian import pfaffian
from .polyring import QQ, Field, PolyRing, Polynomial

FORMULA_ONLY = "formula-only"
FULL_GB = "full-gb"
LEVELS = (FORMULA_ONLY, FULL_GB)

EXHAUSTIVE_LIMIT = 200
SAMPLE_SIZE = 50
DEFAULT_SEED = 0
DEFAULT_MAX_VARS = 16


# ---------------------------------------------------------------------------
# construction

def select_pivot(spec: LadderSpec) -> int:
    """Smallest 1-based ``k`` with ``t_k`` maximal; requires ``t_k >= 2``."""
    if not spec.t or max(spec.t) < 2:
        raise AlreadyLinear("all sizes are 1: the ideal is generated by variables")
    top = max(spec.t)
    return spec.t.index(top) + 1


def _replace(spec: LadderSpec, k: int, corners, sizes) -> LadderSpec:
    i = k - 1
    return LadderSpec(spec.n,
                      spec.corners[:i] + tuple(corners) + spec.corners[i + 1:],
                      spec.t[:i] + tuple(sizes) + spec.t[i + 1:])


def _check_pivot(spec: LadderSpec, k: int):
    if not 1 <= k <= spec.s:
        raise DomainError(f"pivot {k} outside 1..{spec.s}")
    if spec.t[k - 1] < 2:
        raise DomainError(f"pivot {k} has size {spec.t[k - 1]} < 2")


def construct_vprime(spec: LadderSpec, k: int) -> LadderSpec:
    _check_pivot(spec, k)
    c = spec.corners[k - 1]
    out = _replace(spec, k, [UpperCorner(c.a + 1, c.b - 1)], [spec.t[k - 1] - 1])
    if not is_normalized(out) or not validate(out).ok:
        raise DomainError(f"V' = {out} violates the normalization inequalities")
    return out


def w_cases(spec: LadderSpec, k: int) -> set[int]:
    """Which of the three degenerate situations occur when splitting corner ``k``."""
    _check_pivot(spec, k)
    i = k - 1
    c = spec.corners[i]
    tk = spec.t[i]
    fired = set()
    if 2 * tk == c.b - c.a + 1:
        fired.add(1)
    if i + 1 < spec.s and spec.corners[i + 1].a - (c.a + 1) == tk - spec.t[i + 1]:
        fired.add(2)
    if i > 0 and (c.b - 1) - spec.corners[i - 1].b == tk - spec.t[i - 1]:
        fired.add(3)
    return fired


def construct_w(spec: LadderSpec, k: int) -> LadderSpec:
    c = spec.corners[k - 1]
    tk = spec.t[k - 1]
    fired = w_cases(spec, k)
    first = UpperCorner(c.a, c.b - 1)
    second = UpperCorner(c.a + 1, c.b)
    if 1 in fired or {2, 3} <= fired:
        return _replace(spec, k, [], [])
    if 2 in fired:
        return _replace(spec, k, [first], [tk])
    if 3 in fired:
        return _replace(spec, k, [second], [tk])
    return _replace(spec, k, [first, second], [tk, tk])


@dataclass(frozen=True)
class BiliaisonStep:
    v_spec: LadderSpec
    vprime_spec: LadderSpec
    w_spec: LadderSpec
    pivot: int
    witness_u: tuple[int, ...]
    height: int

    @property
    def numerator(self) -> tuple[int, ...]:
        c = self.v_spec.corners[self.pivot - 1]
        return (c.a,) + self.witness_u + (c.b,)

    @property
    def denominator(self) -> tuple[int, ...]:
        return self.witness_u

    def witness_polys(self, ring: PolyRing | None = None) -> tuple[Polynomial, Polynomial]:
        ring = ring if ring is not None else ladder_ring(self.v_spec)
        n = self.v_spec.n
        return pfaffian(self.numerator, n, ring), pfaffian(self.denominator, n, ring)

    def to_json(self) -> dict:
        num, den = self.witness_polys()
        return {
            "v": self.v_spec.to_json(),
            "vprime": self.vprime_spec.to_json(),
            "w": self.w_spec.to_json(),
            "pivot": self.pivot,
            "w_cases": sorted(w_cases(self.v_spec, self.pivot)),
            "witness": {
                "u": list(self.witness_u),
                "numerator": list(self.numerator),
                "denominator": list(self.denominator),
                "numerator_poly": str(num),
                "denominator_poly": str(den),
                "height": self.height,
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "BiliaisonStep":
        try:
            w = data["witness"]
            step = cls(LadderSpec.from_json(data["v"]), LadderSpec.from_json(data["vprime"]),
                       LadderSpec.from_json(data["w"]), int(data["pivot"]),
                       tuple(int(x) for x in w["u"]), int(w["height"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed biliaison step: {exc}") from None
        for name, spec in (("V", step.v_spec), ("V'", step.vprime_spec), ("W", step.w_spec)):
            rep = validate(spec)
            if not rep.ok:
                raise DomainError(f"step spec {name} is invalid: {rep}")
        _check_pivot(step.v_spec, step.pivot)
        return step


def build_step(spec: LadderSpec) -> BiliaisonStep:
    spec = normalize(spec)
    k = select_pivot(spec)
    c = spec.corners[k - 1]
    tk = spec.t[k - 1]
    u = tuple(range(c.a + 1, c.a + 2 * tk - 1))
    step = BiliaisonStep(spec, construct_vprime(spec, k), construct_w(spec, k), k, u, 0)
    num, den = step.witness_polys()
    return BiliaisonStep(step.v_spec, step.vprime_spec, step.w_spec, k, u, num.degree() - den.degree())


# ---------------------------------------------------------------------------
# verification

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class ItemResult:
    status: str
    detail: str = ""
    reason: str = ""  # for skipped items: "level" or "budget"

    def to_json(self) -> dict:
        out = {"status": self.status, "detail": self.detail}
        if self.reason:
            out["reason"] = self.reason
        return out


ITEM_NAMES = {
    "a": "codim(V) = codim(V')",
    "b": "codim(W) = codim(V) - 1",
    "c": "I_W contained in I_V and I_V'",
    "d": "witness congruence modulo I_W",
    "e": "witness height = 1",
}


@dataclass
class StepReport:
    level: str
    items: dict[str, ItemResult] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.items.values())

    @property
    def all_pass(self) -> bool:
        return all(r.status == PASS for r in self.items.values())

    @property
    def budget_exhausted(self) -> bool:
        return any(r.status == SKIPPED and r.reason == "budget" for r in self.items.values())

    def to_json(self) -> dict:
        return {"level": self.level, "ok": self.ok,
                "items": {k: v.to_json() for k, v in sorted(self.items.items())}}

    def lines(self) -> list[str]:
        return [f"  ({k}) {ITEM_NAMES[k]}: {r.status}" + (f" [{r.detail}]" if r.detail else "")
                for k, r in sorted(self.items.items())]


def interior_tuples(step: BiliaisonStep, seed: int = DEFAULT_SEED) -> tuple[list[tuple[int, ...]], bool]:
    """Interior tuples ``v`` to test; ``(tuples, exhaustive)``."""
    c = step.v_spec.corners[step.pivot - 1]
    size = 2 * step.v_spec.t[step.pivot - 1] - 2
    pool = range(c.a + 1, c.b)
    total = comb(len(pool), size)
    if total <= EXHAUSTIVE_LIMIT:
        return list(combinations(pool, size)), True
    rng = random.Random(seed)
    picked = set()
    while len(picked) < SAMPLE_SIZE:
        picked.add(tuple(sorted(rng.sample(list(pool), size))))
    return sorted(picked), False


def congruence_poly(step: BiliaisonStep, v: tuple[int, ...], ring: PolyRing) -> Polynomial:
    """``[v][a,u,b] - [a,v,b][u]``, which must vanish modulo ``I_W``."""
    c = step.v_spec.corners[step.pivot - 1]
    n = step.v_spec.n
    num, den = step.witness_polys(ring)
    return pfaffian(v, n, ring) * num - pfaffian((c.a,) + tuple(v) + (c.b,), n, ring) * den


def _check_height(step: BiliaisonStep) -> ItemResult:
    c = step.v_spec.corners[step.pivot - 1]
    u = step.witness_u
    tk = step.v_spec.t[step.pivot - 1]
    interior = (len(u) == 2 * tk - 2 and all(c.a < x < c.b for x in u)
                and all(x < y for x, y in zip(u, u[1:])))
    if not interior:
        return ItemResult(FAIL, f"u={list(u)} is not an increasing interior tuple of size {2 * tk - 2}")
    num, den = step.witness_polys()
    computed = num.degree() - den.degree()
    ok = step.height == computed == 1
    return ItemResult(PASS if ok else FAIL, f"height {computed}" + ("" if step.height == computed
                                                                    else f", recorded {step.height}"))


def verify_step(step: BiliaisonStep, level: str = FORMULA_ONLY, *, field: Field = QQ,
                order="degrevlex", budget: Budget = DEFAULT_BUDGET,
                max_vars: int = DEFAULT_MAX_VARS, seed: int = DEFAULT_SEED) -> StepReport:
    if level not in LEVELS:
        raise DomainError(f"unknown verification level {level!r}")
    rep = StepReport(level)
    h_v = height_formula(step.v_spec)
    h_vp = height_formula(step.vprime_spec)
    h_w = height_formula(step.w_spec)
    rep.items["a"] = ItemResult(PASS if h_v == h_vp else FAIL, f"formula {h_v} vs {h_vp}")
    rep.items["b"] = ItemResult(PASS if h_w == h_v - 1 else FAIL, f"formula {h_w} vs {h_v} - 1")
    rep.items["e"] = _check_height(step)
    if level == FORMULA_ONLY:
        rep.items["c"] = ItemResult(SKIPPED, "needs full-gb", "level")
        rep.items["d"] = ItemResult(SKIPPED, "needs full-gb", "level")
        return rep

    ring = ladder_ring(step.v_spec, order, field)
    if ring.nvars > max_vars:
        msg = f"{ring.nvars} variables exceed the full-gb cap of {max_vars}"
        for key in "cd":
            rep.items[key] = ItemResult(SKIPPED, msg, "budget")
        for key in "ab":
            rep.items[key].detail += f"; GB skipped: {msg}"
        return rep

    def gb_of(spec):
        gens = generators(spec, ring)
        return gens, (buchberger(gens.polys, ring, budget) if gens.polys else GroebnerBasis(ring, []))

    try:
        gens_v, gb_v = gb_of(step.v_spec)
        gens_vp, gb_vp = gb_of(step.vprime_spec)
        gens_w, gb_w = gb_of(step.w_spec)
    except BudgetExhausted as exc:
        for key in "cd":
            rep.items[key] = ItemResult(SKIPPED, str(exc), "budget")
        for key in "ab":
            rep.items[key].detail += f"; GB skipped: {exc}"
        return rep

    c_v, c_vp, c_w = codim_from_gb(gb_v), codim_from_gb(gb_vp), codim_from_gb(gb_w)
    a = rep.items["a"]
    a.detail += f"; GB {c_v} vs {c_vp}"
    if not (c_v == c_vp == h_v):
        a.status = FAIL
    b = rep.items["b"]
    b.detail += f"; GB {c_w} vs {c_v} - 1"
    if not (c_w == c_v - 1 == h_w):
        b.status = FAIL

    missing = [str(g) for g in gens_w if not gb_v.contains(g)]
    missing_p = [str(g) for g in gens_w if not gb_vp.contains(g)]
    if missing or missing_p:
        rep.items["c"] = ItemResult(FAIL, f"{len(missing)} not in I_V, {len(missing_p)} not in I_V'")
    else:
        rep.items["c"] = ItemResult(PASS, f"{len(gens_w)} generators of I_W checked")

    tuples, exhaustive = interior_tuples(step, seed)
    bad = [v for v in tuples if not gb_w.contains(congruence_poly(step, v, ring))]
    how = "exhaustive" if exhaustive else f"sample seed={seed}"
    if bad:
        rep.items["d"] = ItemResult(FAIL, f"{len(bad)}/{len(tuples)} tuples fail ({how}); first {list(bad[0])}")
    else:
        rep.items["d"] = ItemResult(PASS, f"{len(tuples)} tuples ({how})")
    return rep


# ---------------------------------------------------------------------------
# chains

@dataclass
class BiliaisonChain:
    initial: LadderSpec
    steps: list[BiliaisonStep]
    terminal: LadderSpec
    reports: list[StepReport | None] = field(default_factory=list)
    level: str | None = None
    seed: int = DEFAULT_SEED

    @property
    def expected_length(self) -> int:
        return sum(self.initial.t) - self.initial.s

    def structural_checks(self) -> dict[str, bool]:
        checks = {
            "length": len(self.steps) == self.expected_length,
            "terminal-linear": all(x == 1 for x in self.terminal.t),
            "linked": all(self.steps[i].vprime_spec == self.steps[i + 1].v_spec
                          for i in range(len(self.steps) - 1)),
            "starts-at-initial": not self.steps or self.steps[0].v_spec == self.initial,
            "ends-at-terminal": (self.steps[-1].vprime_spec if self.steps else self.initial) == self.terminal,
            "intermediates-normalized": all(is_normalized(s.v_spec) and validate(s.v_spec).ok
                                            for s in self.steps) and is_normalized(self.terminal),
        }
        if self.initial.is_empty():
            checks["terminal-is-L"] = self.terminal.is_empty()
        else:
            checks["terminal-is-L"] = self.terminal == corner_ladder_L(self.initial)
        return checks

    @property
    def ok(self) -> bool:
        return all(self.structural_checks().values()) and all(r is None or r.ok for r in self.reports)

    @property
    def budget_exhausted(self) -> bool:
        return any(r is not None and r.budget_exhausted for r in self.reports)

    def to_json(self) -> dict:
        steps = []
        for step, rep in zip(self.steps, self.reports or [None] * len(self.steps)):
            d = step.to_json()
            if rep is not None:
                d["report"] = rep.to_json()
            steps.append(d)
        return {
            "kind": "chain",
            "version": 1,
            "spec": self.initial.to_json(),
            "level": self.level,
            "seed": self.seed,
            "length": len(self.steps),
            "expected_length": self.expected_length,
            "g_links": 2 * len(self.steps),
            "steps": steps,
            "terminal": self.terminal.to_json(),
            "structural_checks": self.structural_checks(),
            "ok": self.ok,
        }

    def render(self) -> str:
        out = [f"initial: {self.initial}",
               f"steps: {len(self.steps)} (sum(t) - s = {self.expected_length}; {2 * len(self.steps)} G-links)"]
        for i, step in enumerate(self.steps, 1):
            out.append(f"step {i}: pivot k={step.pivot}")
            out.append(f"  V  : {step.v_spec}")
            out.append(f"  V' : {step.vprime_spec}")
            out.append(f"  W  : {step.w_spec}")
            num = ",".join(map(str, step.numerator))
            den = ",".join(map(str, step.denominator))
            out.append(f"  witness [{num}] / [{den}], height {step.height}")
            if i - 1 < len(self.reports) and self.reports[i - 1] is not None:
                out.extend(self.reports[i - 1].lines())
        out.append(f"terminal: {self.terminal}")
        for name, good in self.structural_checks().items():
            out.append(f"check {name}: {'pass' if good else 'fail'}")
        return "\n".join(out)


def chain(spec: LadderSpec, verify: str | None = FORMULA_ONLY, **verify_kwargs) -> BiliaisonChain:
    """Descend ``spec`` to a linear ladder, verifying each step at ``verify`` level."""
    rep = validate(spec)
    if not rep.ok:
        raise DomainError(f"invalid ladder spec: {rep}")
    current = normalize(spec)
    initial = current
    steps = []
    reports = []
    while current.t and max(current.t) >= 2:
        step = build_step(current)
        steps.append(step)
        reports.append(verify_step(step, verify, **verify_kwargs) if verify else None)
        current = step.vprime_spec
    return BiliaisonChain(initial, steps, current, reports, verify,
                          verify_kwargs.get("seed", DEFAULT_SEED))
