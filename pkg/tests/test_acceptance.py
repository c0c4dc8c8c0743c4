"""Acceptance gate: one check per criterion, reported as a pass/fail line.

Run under pytest (the summary lines appear at the end of the session) or
directly with ``python3 tests/test_acceptance.py``.
"""

import json
import random
import subprocess
import sys
from itertools import combinations, permutations, product
from pathlib import Path

from pfladder.biliaison import FULL_GB, BiliaisonStep, build_step, chain, verify_step
from pfladder.cli import main as cli_main
from pfladder.data import fixture_names, fixture_path, load_fixture
from pfladder.ideal import GeneratorSet, codim_gb, generators, ideals_equal
from pfladder.ladder import (LadderSpec, cells, height_formula, is_normalized, normalize,
                             validate)
from pfladder.pfaffian import dcp_residual, permutation_sign, pfaffian, pfaffian_matchings
from pfladder.polyring import PolyRing

GOLDEN = LadderSpec(7, [(1, 2), (1, 4), (3, 4), (3, 6), (4, 7)], (1, 2, 1, 2, 2))
GOLDEN_LISTED = [
    "x[1,2]",
    "-x[1,3]*x[2,4] + x[1,4]*x[2,3]",
    "x[3,4]",
    "-x[3,5]*x[4,6] + x[3,6]*x[4,5]",
    "x[4,5]*x[6,7] - x[4,6]*x[5,7] + x[4,7]*x[5,6]",
]

RESULTS: dict[int, tuple[str, bool, str]] = {}


def criterion(number, title):
    def wrap(func):
        def run():
            try:
                detail = func() or ""
            except AssertionError as exc:
                RESULTS[number] = (title, False, str(exc).splitlines()[0] if str(exc) else "assertion failed")
                raise
            RESULTS[number] = (title, True, detail)
        run.__name__ = func.__name__
        run.number = number
        return run
    return wrap


def _cli(argv):
    return cli_main([str(a) for a in argv])


# ---------------------------------------------------------------------------

@criterion(1, "golden example: 14 variables, listed generators, codimension 5")
def test_criterion_1_golden_example():
    gens = generators(GOLDEN)
    assert gens.ring.nvars == 14 == len(cells(GOLDEN)), "variable count"
    listed = GeneratorSet.from_polys([gens.ring.parse(t) for t in GOLDEN_LISTED])
    assert ideals_equal(gens, listed, "degrevlex"), "ideal differs from the listed generators"
    assert height_formula(GOLDEN) == 5, "height_formula"
    assert codim_gb(GOLDEN) == 5, "codim_gb"
    return "nvars=14, reduced GBs identical, height_formula=codim_gb=5"


EXTRA_SPECS = [
    LadderSpec(5, [(1, 3), (2, 5)], [1, 2]),
    LadderSpec(6, [(1, 4), (3, 6)], [2, 2]),
    LadderSpec(7, [(1, 4), (3, 7)], [2, 2]),
    LadderSpec(7, [(1, 3), (2, 5), (4, 7)], [1, 2, 1]),
    LadderSpec(8, [(1, 4), (3, 6), (5, 8)], [2, 2, 2]),
    LadderSpec(7, [(1, 5), (4, 7)], [2, 1]),
    LadderSpec(6, [(1, 5), (2, 6)], [2, 2]),
    LadderSpec(8, [(1, 2), (2, 5), (4, 8)], [1, 2, 2]),
]


@criterion(2, "height_formula = codim_gb on normalized specs with <= 16 variables")
def test_criterion_2_formula_vs_groebner():
    specs = [load_fixture(name) for name in fixture_names()] + EXTRA_SPECS
    rng = random.Random(2)
    while len(specs) < 30:
        n = rng.randint(4, 9)
        s = rng.randint(1, 3)
        spec = LadderSpec(n, list(zip(sorted(rng.randint(1, n) for _ in range(s)),
                                      sorted(rng.randint(1, n) for _ in range(s)))),
                          [rng.randint(1, n // 2) for _ in range(s)])
        if validate(spec).ok and len(cells(spec)) <= 16:
            spec = normalize(spec)
            if not spec.is_empty() and spec not in specs:
                specs.append(spec)
    for spec in specs:
        assert validate(spec).ok and is_normalized(spec), f"{spec} not normalized"
        assert len(cells(spec)) <= 16, f"{spec} too large"
        h, c = height_formula(spec), codim_gb(spec)
        assert h == c, f"{spec}: formula {h} vs GB {c}"
    return f"{len(specs)} specs including {len(fixture_names())} fixtures"


@criterion(3, "pfaffian expansion = perfect-matching oracle; antisymmetry; zero on repeat")
def test_criterion_3_pfaffian_oracle():
    n = 8
    ring = PolyRing.full(n)
    count = 0
    for size in range(0, 9, 2):
        for idx in combinations(range(1, n + 1), size):
            assert pfaffian(idx, n, ring) == pfaffian_matchings(idx, n, ring), f"mismatch at {idx}"
            count += 1
    perms = 0
    for size in (2, 4, 6):
        for base in combinations(range(1, n + 1), size):
            ref = pfaffian(base, n, ring)
            for perm in permutations(base):
                assert pfaffian(perm, n, ring) == ref.scale(permutation_sign(perm)), f"sign at {perm}"
                perms += 1
    repeats = 0
    for size in (2, 4, 6):
        for tu in product(range(1, 5), repeat=size):
            if len(set(tu)) < size:
                assert not pfaffian(tu, n, ring), f"nonzero with repeat {tu}"
                repeats += 1
    return f"{count} sorted tuples, {perms} permutations, {repeats} repeated tuples"


@criterion(4, "quadratic pfaffian identity residual is zero")
def test_criterion_4_dcp_identity():
    n = 4
    ring = PolyRing.full(n)
    exhaustive = 0
    for c in product(range(1, n + 1), repeat=2):
        for d in product(range(1, n + 1), repeat=2):
            assert not dcp_residual(c, d, n, ring), f"nonzero at c={c} d={d}"
            exhaustive += 1
    rng = random.Random(4)
    overlapping = 0
    sampled = 0
    for _ in range(80):
        n = rng.randint(4, 8)
        p, m = rng.choice([2, 4]), rng.choice([2, 4])
        c = rng.sample(range(1, n + 1), p)
        d = rng.sample(range(1, n + 1), m)
        overlapping += bool(set(c) & set(d))
        assert not dcp_residual(c, d, n), f"nonzero at c={c} d={d} n={n}"
        sampled += 1
    assert overlapping >= 10, "too few overlapping instances"
    return f"{exhaustive} exhaustive (2,2,4) pairs, {sampled} seeded ({overlapping} overlapping)"


@criterion(5, "single-corner closed form (n-2t+2)(n-2t+1)/2")
def test_criterion_5_closed_form():
    for n, t in [(4, 2), (5, 2), (6, 2), (6, 3)]:
        spec = LadderSpec(n, [(1, n)], [t])
        expected = (n - 2 * t + 2) * (n - 2 * t + 1) // 2
        assert height_formula(spec) == expected, f"formula at {(n, t)}"
        assert codim_gb(spec) == expected, f"GB at {(n, t)}"
    return "(4,2)=1 (5,2)=3 (6,2)=6 (6,3)=1"


@criterion(6, "biliaison chains: lengths 3/1/2 and every full-gb item passes")
def test_criterion_6_chains():
    cases = [(GOLDEN, 3), (LadderSpec(6, [(1, 6)], [2]), 1), (LadderSpec(6, [(1, 6)], [3]), 2)]
    for spec, length in cases:
        ch = chain(spec, FULL_GB)
        assert len(ch.steps) == length == ch.expected_length, f"{spec}: {len(ch.steps)} steps"
        assert 2 * len(ch.steps) == ch.to_json()["g_links"]
        assert all(ch.structural_checks().values()), f"{spec}: structural check failed"
        for i, rep in enumerate(ch.reports, 1):
            assert rep.all_pass, f"{spec} step {i}: {rep.lines()}"
    assert chain(LadderSpec(6, [(1, 6)], [3])).terminal == LadderSpec(6, [(3, 4)], [1])
    return "golden 3 steps (6 G-links), (1,6) t=2: 1 step, t=3: 2 steps"


NORMALIZATION_SPECS = [
    # (spec, rule expected to fire)
    (LadderSpec(6, [(1, 2), (1, 6)], [2, 2]), "empty"),
    (LadderSpec(7, [(1, 3), (2, 7)], [2, 2]), "empty"),
    (LadderSpec(7, [(1, 4), (3, 5), (4, 7)], [1, 2, 1]), "empty"),
    (LadderSpec(7, [(1, 6), (2, 7)], [3, 2]), "prev_in_cur"),
    (LadderSpec(8, [(1, 6), (1, 8)], [2, 2]), "prev_in_cur"),
    (LadderSpec(8, [(1, 6), (2, 8)], [3, 2]), "prev_in_cur"),
    (LadderSpec(7, [(1, 6), (2, 7)], [2, 3]), "cur_in_prev"),
    (LadderSpec(8, [(1, 7), (3, 7)], [2, 2]), "cur_in_prev"),
    (LadderSpec(8, [(1, 6), (2, 6)], [2, 2]), "cur_in_prev"),
]


def _fired(spec):
    cs, t = spec.corners, spec.t
    fired = set()
    for k, c in enumerate(cs):
        if 2 * t[k] > c.b - c.a + 1:
            fired.add("empty")
        if k:
            if c.a - cs[k - 1].a <= t[k - 1] - t[k]:
                fired.add("prev_in_cur")
            if c.b - cs[k - 1].b <= t[k] - t[k - 1]:
                fired.add("cur_in_prev")
    return fired


@criterion(7, "normalization is idempotent and preserves the ideal")
def test_criterion_7_normalization():
    seen = set()
    for spec, rule in NORMALIZATION_SPECS:
        assert validate(spec).ok, f"{spec} invalid"
        assert rule in _fired(spec), f"{spec} does not trigger {rule}"
        seen.add(rule)
        norm = normalize(spec)
        assert norm != spec and normalize(norm) == norm, f"{spec} not idempotent"
        a = generators(spec)
        b = generators(norm, a.ring)
        assert ideals_equal(a, b), f"{spec}: ideal changed"
    assert seen == {"empty", "prev_in_cur", "cur_in_prev"}
    return f"{len(NORMALIZATION_SPECS)} specs covering every rule"


@criterion(8, "negative controls fail with exit 1")
def test_criterion_8_negative_controls(tmp_path=None):
    tmp = Path(tmp_path) if tmp_path else Path(__import__("tempfile").mkdtemp())
    # corrupted W: the pivot corner is not deleted in case (1), so W = V
    step = build_step(GOLDEN)
    corrupt = BiliaisonStep(step.v_spec, step.vprime_spec, step.v_spec, step.pivot,
                            step.witness_u, step.height)
    assert verify_step(corrupt, FULL_GB).items["b"].status == "fail", "library: item (b) passed"
    trace = tmp / "trace.json"
    assert _cli(["chain", "--level", FULL_GB, "--input", fixture_path("example_1_2"),
                 "--out", trace, "--format", "json"]) == 0
    data = json.loads(trace.read_text())
    data["steps"][0]["w"] = data["steps"][0]["v"]
    bad_trace = tmp / "trace_bad.json"
    bad_trace.write_text(json.dumps(data))
    report = tmp / "report.json"
    assert _cli(["verify", "--input", bad_trace, "--out", report, "--format", "json"]) == 1
    failed = json.loads(report.read_text())["failed"]
    assert "step 1 (b)" in failed, f"unexpected failures {failed}"

    # perturbed generator: a certificate listing the golden generators verifies,
    # the same certificate with one sign flipped does not
    cert = tmp / "cert.json"
    assert _cli(["gb", "--input", fixture_path("example_1_2"), "--out", cert, "--format", "json"]) == 0
    data = json.loads(cert.read_text())
    data["generators"] = [{"poly": p} for p in GOLDEN_LISTED]
    good = tmp / "cert_listed.json"
    good.write_text(json.dumps(data))
    assert _cli(["verify", "--input", good, "--format", "json"]) == 0, "listed generators rejected"
    data["generators"][4] = {"poly": "x[4,5]*x[6,7] + x[4,6]*x[5,7] + x[4,7]*x[5,6]"}
    bad = tmp / "cert_perturbed.json"
    bad.write_text(json.dumps(data))
    assert _cli(["verify", "--input", bad, "--out", report, "--format", "json"]) == 1
    assert json.loads(report.read_text())["failed"] == ["generators"]
    gens = generators(GOLDEN)
    perturbed = GeneratorSet.from_polys([gens.ring.parse(p["poly"]) for p in data["generators"]])
    assert not ideals_equal(gens, perturbed), "perturbed generators still equal"
    return "corrupted W fails item (b); perturbed generator fails ideal equality; both exit 1"


ALL = [test_criterion_1_golden_example, test_criterion_2_formula_vs_groebner,
       test_criterion_3_pfaffian_oracle, test_criterion_4_dcp_identity,
       test_criterion_5_closed_form, test_criterion_6_chains, test_criterion_7_normalization,
       test_criterion_8_negative_controls]


def format_results():
    lines = []
    for number in sorted(RESULTS):
        title, ok, detail = RESULTS[number]
        lines.append(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}" + (f" ({detail})" if detail else ""))
    return lines


def test_cli_subprocess_exit_codes():
    """The console entry point behaves like the in-process calls."""
    proc = subprocess.run([sys.executable, "-m", "pfladder", "codim", "--input",
                           str(fixture_path("example_1_2"))], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"


if __name__ == "__main__":
    failures = 0
    for check in ALL:
        try:
            check()
        except AssertionError:
            failures += 1
    print("\n".join(format_results()))
    sys.exit(1 if failures else 0)
