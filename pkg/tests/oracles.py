"""Independent reference computations used by the tests (sympy-based)."""

from fractions import Fraction

import pytest

sympy = pytest.importorskip("sympy")


def sym_vars(ring):
    return [sympy.Symbol(f"x_{v.row}_{v.col}") for v in ring.variables]


def to_sympy(f, gens):
    ring = f.ring
    expr = sympy.Integer(0)
    for mon, c in f.terms():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for v, e in mon.exponents:
            term *= gens[ring.index[v]] ** e
        expr += term
    return sympy.expand(expr)


def sympy_reduced_gb(polys, ring):
    gens = sym_vars(ring)
    order = "grevlex" if ring.order.value == "degrevlex" else "lex"
    exprs = [to_sympy(f, gens) for f in polys]
    if ring.field.characteristic:
        gb = sympy.groebner(exprs, *gens, order=order, modulus=ring.field.characteristic)
    else:
        gb = sympy.groebner(exprs, *gens, order=order, domain=sympy.QQ)
    return gb, gens
