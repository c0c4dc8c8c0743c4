from itertools import combinations

import pytest

from pfladder.data import fixture_names, load_fixture
from pfladder.errors import BudgetExhausted, DomainError
from pfladder.groebner import Budget, buchberger
from pfladder.ideal import (GeneratorSet, codim_from_gb, codim_gb, generators, groebner,
                            ideals_equal, krull_dimension, ladder_ring, leading_supports,
                            max_independent_exhaustive, min_hitting_set, reduce_mod)
from pfladder.ladder import LadderSpec, cells, height_formula
from pfladder.pfaffian import pfaffian
from pfladder.polyring import GF, PolyRing

from .conftest import GOLDEN, GOLDEN_LISTED, random_specs
from .oracles import sympy, sympy_reduced_gb, to_sympy


def test_generator_examples():
    gens = generators(LadderSpec(4, [(1, 4)], [2]))
    assert gens.provenance == ((1, (1, 2, 3, 4)),)
    assert len(generators(LadderSpec(4, [(1, 2)], [2]))) == 0
    gens = generators(GOLDEN)
    assert len(gens.ring.variables) == 14
    # overlapping squares (3,4) and (3,6) share no index tuple of equal size, (1,2) and (1,4) neither
    assert len({idx for _, idx in gens.provenance}) == len(gens)


def test_generators_are_deduplicated():
    spec = LadderSpec(6, [(1, 5), (2, 6)], [2, 2])
    gens = generators(spec)
    idx = [p[1] for p in gens.provenance]
    assert len(idx) == len(set(idx))
    expected = set(combinations(range(1, 6), 4)) | set(combinations(range(2, 7), 4))
    assert set(idx) == expected


def test_buchberger_examples(backend):
    ring = PolyRing.full(4)
    x12 = ring.parse("x[1,2]")
    assert buchberger([x12]).polys == (x12,)
    gb = buchberger([x12, pfaffian([1, 2, 3, 4], 4, ring)])
    assert [str(g) for g in gb.polys] == ["x[1,2]", "x[1,4]*x[2,3] - x[1,3]*x[2,4]"]


def test_golden_ideal_equals_listed_generators(backend):
    gens = generators(GOLDEN)
    listed = GeneratorSet.from_polys([gens.ring.parse(t) for t in GOLDEN_LISTED])
    assert ideals_equal(gens, listed)
    assert ideals_equal(gens, gens)


def test_ideals_equal_negative():
    ring = PolyRing.full(4)
    a = GeneratorSet.from_polys([ring.parse("x[1,2]")])
    b = GeneratorSet.from_polys([ring.parse("x[1,3]")])
    assert not ideals_equal(a, b)


def test_reduce_mod_examples():
    ring = PolyRing.full(4)
    gb = buchberger([ring.parse("x[1,2]")])
    g = ring.parse("x[1,3]^2 - 3*x[2,4] + 1")
    assert not reduce_mod(ring.parse("x[1,2]") * g, gb)
    assert reduce_mod(ring.parse("x[1,3]"), gb) == ring.parse("x[1,3]")
    gens = generators(GOLDEN)
    gb7 = groebner(gens)
    assert not reduce_mod(pfaffian([1, 2, 3, 4], 7, gens.ring), gb7)
    with pytest.raises(DomainError):
        reduce_mod(ring.with_order("lex").parse("x[1,2]"), gb)


@pytest.mark.parametrize("name", fixture_names())
@pytest.mark.parametrize("order", ["degrevlex", "lex"])
def test_reduced_gb_matches_sympy(name, order):
    spec = load_fixture(name)
    ring = ladder_ring(spec, order)
    gens = generators(spec, ring)
    ours = buchberger(gens.polys, ring)
    ref, sym = sympy_reduced_gb(gens.polys, ring)
    assert len(ref.exprs) == len(ours)
    mine = {sympy.expand(to_sympy(g.monic(), sym)) for g in ours}
    assert mine == {sympy.expand(e) for e in ref.exprs}


def test_reduced_gb_over_finite_field_matches_sympy():
    spec = load_fixture("example_1_2")
    ring = ladder_ring(spec, field=GF(101))
    gens = generators(spec, ring)
    ours = buchberger(gens.polys, ring)
    ref, sym = sympy_reduced_gb(gens.polys, ring)
    assert len(ref.exprs) == len(ours)


@pytest.mark.parametrize("name", fixture_names())
def test_gb_invariants(name, backend):
    spec = load_fixture(name)
    gens = generators(spec)
    gb = groebner(gens)
    assert gb.is_groebner() and gb.is_reduced()
    assert buchberger(gb.polys, gb.ring).polys == gb.polys
    assert all(gb.contains(f) for f in gens)


def test_lex_and_degrevlex_agree_on_dimension():
    for name in fixture_names():
        spec = load_fixture(name)
        assert codim_gb(spec, "lex") == codim_gb(spec, "degrevlex")


def test_codim_examples():
    assert codim_gb(GOLDEN) == 5
    ones = LadderSpec(7, [(1, 3), (2, 5), (4, 7)], [1, 1, 1])
    assert codim_gb(ones) == len(cells(ones))
    assert codim_gb(LadderSpec(6, [(1, 6)], [2])) == 6
    assert codim_gb(LadderSpec(4, [(1, 2)], [2])) == 0


def test_single_corner_codim_by_brute_force():
    """codim of (1,6), t=2 from the exhaustive independent-set oracle on 15 variables."""
    gb = groebner(generators(LadderSpec(6, [(1, 6)], [2])))
    dim = max_independent_exhaustive(leading_supports(gb), gb.ring.nvars)
    assert gb.ring.nvars - dim == 6 == codim_from_gb(gb)
    assert krull_dimension(gb) == dim


def test_hitting_set_matches_exhaustive_oracle():
    import random
    rng = random.Random(8)
    for _ in range(300):
        nv = rng.randint(1, 12)
        edges = [sum(1 << v for v in rng.sample(range(nv), rng.randint(1, min(3, nv))))
                 for _ in range(rng.randint(0, 10))]
        assert min_hitting_set(edges) == nv - max_independent_exhaustive(edges, nv)


def test_exhaustive_oracle_is_capped():
    with pytest.raises(DomainError):
        max_independent_exhaustive([1], 25)


def test_codim_matches_formula_on_random_specs():
    for spec in random_specs(21, 60, max_vars=16, normalized=True):
        assert codim_gb(spec) == height_formula(spec), spec


def test_normalize_preserves_ideal_on_random_specs():
    from pfladder.ladder import normalize
    for spec in random_specs(22, 40, max_vars=16):
        norm = normalize(spec)
        a = generators(spec)
        b = generators(norm, a.ring)
        assert ideals_equal(a, b)


def test_expansion_containment_in_smaller_pfaffian_ideal():
    """Every 2t-pfaffian of the split squares lies in the (2t-2)-pfaffian ideal of the shrunk square."""
    for n, t in [(6, 2), (7, 2), (7, 3)]:
        shrunk = LadderSpec(n, [(2, n - 1)], [t - 1])
        ring = PolyRing.full(n)
        gb = groebner(generators(shrunk, ring))
        for lo, hi in [(1, n - 1), (2, n)]:
            for idx in combinations(range(lo, hi + 1), 2 * t):
                assert gb.contains(pfaffian(idx, n, ring))


def test_budget_exhaustion_is_reported():
    gens = generators(LadderSpec(7, [(1, 7)], [2]))
    with pytest.raises(BudgetExhausted):
        groebner(gens, budget=Budget(max_pairs=3))
    with pytest.raises(BudgetExhausted):
        groebner(gens, budget=Budget(max_basis=4))


def test_monomial_overflow_becomes_budget_exhaustion():
    # in lex, reducing x12^2 by x12 - x13^127 needs x13^254, beyond the packed width
    ring = PolyRing.full(3, "lex")
    f = ring.parse("x[1,2]^2")
    g = ring.parse("x[1,2] - x[1,3]^127")
    with pytest.raises(BudgetExhausted):
        buchberger([f, g])
