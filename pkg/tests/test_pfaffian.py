from itertools import combinations, permutations

import pytest

from pfladder.errors import DomainError
from pfladder.pfaffian import (IndexTuple, crossings, dcp_residual, dcp_terms, perfect_matchings,
                               permutation_sign, pfaffian, pfaffian_matchings, pfaffians)
from pfladder.polyring import PolyRing

from .oracles import sympy, sym_vars, to_sympy


def test_spec_values():
    r4, r7 = PolyRing.full(4), PolyRing.full(7)
    assert pfaffian([1, 2], 4) == r4.parse("x[1,2]")
    assert pfaffian([4, 5, 6, 7], 7) == r7.parse("x[4,5]*x[6,7] - x[4,6]*x[5,7] + x[4,7]*x[5,6]")
    assert pfaffian([2, 1], 4) == r4.parse("-x[1,2]")
    assert not pfaffian([1, 1, 2, 3], 4)
    assert pfaffian([1, 2, 3, 4], 4) == r4.parse("x[1,2]*x[3,4] - x[1,3]*x[2,4] + x[1,4]*x[2,3]")
    assert pfaffian([], 4) == PolyRing.full(4).one()
    assert str(pfaffian_matchings([], 4)) == "1"


def test_errors():
    with pytest.raises(DomainError, match="even length required"):
        IndexTuple([1, 2, 3])
    with pytest.raises(DomainError):
        pfaffian([1, 9], 4)
    with pytest.raises(DomainError):
        pfaffian_matchings([0, 1], 4)


def test_matchings_and_crossings():
    assert len(list(perfect_matchings([1, 2, 3, 4, 5, 6]))) == 15
    assert crossings([(1, 3), (2, 4)]) == 1
    assert crossings([(1, 2), (3, 4)]) == 0
    assert crossings([(1, 4), (2, 3)]) == 0


def test_permutation_sign():
    assert permutation_sign([1, 2, 3]) == 1
    assert permutation_sign([2, 1, 3]) == -1
    assert permutation_sign([3, 1, 2]) == 1


def test_expansion_equals_matching_oracle(backend):
    n = 8
    ring = PolyRing.full(n)
    for size in (0, 2, 4, 6, 8):
        for idx in combinations(range(1, n + 1), size):
            assert pfaffian(idx, n, ring) == pfaffian_matchings(idx, n, ring)


def test_pfaffian_squared_is_determinant():
    """Independent check through sympy: pf(A)^2 = det(A) on a 6x6 generic matrix."""
    n = 6
    ring = PolyRing.full(n)
    gens = sym_vars(ring)
    sym = {(v.row, v.col): g for v, g in zip(ring.variables, gens)}
    mat = sympy.Matrix(n, n, lambda i, j: sym.get((i + 1, j + 1), 0) - sym.get((j + 1, i + 1), 0))
    pf = to_sympy(pfaffian(range(1, n + 1), n, ring), gens)
    assert sympy.expand(pf ** 2 - mat.det(method="berkowitz")) == 0


def test_degree_and_term_count():
    double_factorial = {2: 1, 4: 3, 6: 15, 8: 105}
    for size, count in double_factorial.items():
        f = pfaffian(range(1, size + 1), size)
        assert len(f) == count
        assert f.is_homogeneous() and f.degree() == size // 2


def test_antisymmetry_and_repeats():
    n = 6
    ring = PolyRing.full(n)
    for size in (2, 4, 6):
        base = tuple(range(1, size + 1))
        ref = pfaffian(base, n, ring)
        for perm in permutations(base):
            assert pfaffian(perm, n, ring) == ref.scale(permutation_sign(perm))
    for tu in ([1, 1], [1, 2, 2, 3], [3, 1, 4, 1, 5, 6]):
        assert not pfaffian(tu, n, ring)


def test_batch_helper_matches_single():
    tuples = [(1, 2, 3, 4), (2, 3, 4, 5), (1, 2)]
    assert pfaffians(tuples, 5) == [pfaffian(t, 5) for t in tuples]


@pytest.mark.parametrize("c,d,n", [([1, 2], [3, 4], 4), ([1, 2], [3, 4, 5, 6], 6),
                                   ([1, 2, 3, 4], [1, 2, 5, 6], 6)])
def test_dcp_examples(c, d, n):
    assert not dcp_residual(c, d, n)


def test_dcp_terms_shape():
    terms = dcp_terms([1, 2], [3, 4, 5, 6])
    # one product, |c| exchange terms, |d|-1 terms of the second sum
    assert len(terms) == 1 + 2 + 3
    assert terms[0] == (1, (1, 2), (3, 4, 5, 6))


def test_dcp_nonzero_when_a_term_is_dropped():
    """The identity genuinely needs every term: removing one leaves a nonzero residual."""
    c, d, n = [1, 2], [3, 4, 5, 6], 6
    ring = PolyRing.full(n)
    total = ring.zero()
    for coeff, left, right in dcp_terms(c, d)[:-1]:
        total = total + (pfaffian(left, n, ring) * pfaffian(right, n, ring)).scale(coeff)
    assert total
