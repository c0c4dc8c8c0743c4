"""Exact sparse polynomials in the entries of a generic skew-symmetric matrix.

The indeterminates are ``x[i,j]`` with ``i < j``; entry ``(j, i)`` of the
matrix is ``-x[i,j]`` and the diagonal is zero.  Polynomials live in a
:class:`PolyRing`, which fixes the variables, the term order and the
coefficient field.  Arithmetic is delegated to :mod:`pfladder.kernels`.

Rational polynomials are stored in primitive integer form (content 1,
positive leading coefficient) together with a rational unit; over ``F_p``
they are stored monic with the leading coefficient as unit.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import kernels
from .errors import DomainError


# ---------------------------------------------------------------------------
# variables

@dataclass(frozen=True, order=True)
class VarId:
    """Canonical indeterminate ``x[row,col]`` with ``row < col``."""

    row: int
    col: int

    def __post_init__(self):
        if not (1 <= self.row < self.col):
            raise DomainError(f"invalid variable index ({self.row},{self.col})")

    def __str__(self):
        return f"x[{self.row},{self.col}]"


@dataclass(frozen=True)
class SignedVar:
    """Entry of the skew-symmetric matrix: ``sign * var`` or zero."""

    var: VarId | None
    sign: int = 0

    @property
    def is_zero(self) -> bool:
        return self.var is None


ZERO_ENTRY = SignedVar(None, 0)


def make_var(i: int, j: int, n: int) -> SignedVar:
    """Canonical signed representative of entry ``(i, j)`` of an ``n x n`` matrix."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise DomainError(f"entry ({i},{j}) outside a {n}x{n} matrix")
    if i == j:
        return ZERO_ENTRY
    if i < j:
        return SignedVar(VarId(i, j), 1)
    return SignedVar(VarId(j, i), -1)


def all_variables(n: int) -> tuple[VarId, ...]:
    return tuple(VarId(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1))


# ---------------------------------------------------------------------------
# orders and fields

class TermOrder(enum.Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"

    @classmethod
    def parse(cls, value: "TermOrder | str") -> "TermOrder":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown term order {value!r}") from None


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """Coefficient field: rationals (characteristic 0) or ``F_p``."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise DomainError(f"{p} is not prime")

    @classmethod
    def parse(cls, text: "Field | str") -> "Field":
        if isinstance(text, cls):
            return text
        text = str(text).strip().lower()
        if text in ("rat", "qq", "q"):
            return QQ
        if text.startswith("fp:"):
            try:
                return cls(int(text[3:]))
            except ValueError:
                raise DomainError(f"bad field {text!r}") from None
        raise DomainError(f"unknown field {text!r} (expected 'rat' or 'fp:P')")

    def __str__(self):
        return "rat" if self.characteristic == 0 else f"fp:{self.characteristic}"


QQ = Field(0)
DEFAULT_PRIME = 32003


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


# ---------------------------------------------------------------------------
# ring

class PolyRing:
    """Polynomial ring over a sorted set of skew-matrix indeterminates."""

    def __init__(self, variables: Iterable[VarId], order="degrevlex", field: Field = QQ):
        vs = tuple(sorted(set(variables)))
        self.variables = vs
        self.order = TermOrder.parse(order)
        self.field = Field.parse(field)
        self.index = {v: k for k, v in enumerate(vs)}
        self._ctx = {}

    @classmethod
    def full(cls, n: int, order="degrevlex", field: Field = QQ) -> "PolyRing":
        return cls(all_variables(n), order, field)

    @classmethod
    def from_cells(cls, cells: Iterable[tuple[int, int]], order="degrevlex",
                   field: Field = QQ) -> "PolyRing":
        return cls((VarId(i, j) for i, j in cells), order, field)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_rational(self) -> bool:
        return self.field.characteristic == 0

    def ctx(self):
        mod = kernels.active
        c = self._ctx.get(mod)
        if c is None:
            c = mod.Ctx(self.nvars, self.order is TermOrder.LEX, self.field.characteristic)
            self._ctx[mod] = c
        return c

    def _key(self):
        return (self.variables, self.order, self.field)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"PolyRing({self.nvars} vars, {self.order.value}, {self.field})"

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.variables, order, self.field)

    def union(self, other: "PolyRing") -> "PolyRing":
        if self.order != other.order or self.field != other.field:
            raise DomainError("rings differ in order or field")
        return PolyRing(self.variables + other.variables, self.order, self.field)

    # -- element constructors ------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, [], [], 0)

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        return Polynomial._from_scaled(self, ([self.ctx().one], [1]), self._coerce(c))

    def gen(self, v: VarId) -> "Polynomial":
        try:
            k = self.index[v]
        except KeyError:
            raise DomainError(f"{v} is not a variable of this ring") from None
        exps = [0] * self.nvars
        exps[k] = 1
        return Polynomial(self, [kernels.active.pack(self.ctx(), exps)], [1], 1)

    def entry(self, i: int, j: int, n: int | None = None) -> "Polynomial":
        """Entry ``(i, j)`` of the skew-symmetric matrix as a polynomial."""
        sv = make_var(i, j, n if n is not None else max(i, j))
        if sv.is_zero:
            return self.zero()
        g = self.gen(sv.var)
        return g if sv.sign > 0 else -g

    def from_dict(self, terms: Mapping[Mapping[VarId, int] | tuple, object]) -> "Polynomial":
        """Build from ``{monomial: coeff}``; a monomial is a ``{VarId: exp}`` map."""
        k = kernels.active
        ctx = self.ctx()
        acc: dict[int, Fraction] = {}
        for mon, c in terms.items():
            exps = [0] * self.nvars
            items = mon.items() if isinstance(mon, Mapping) else mon
            for v, e in items:
                if v not in self.index:
                    raise DomainError(f"{v} is not a variable of this ring")
                exps[self.index[v]] += e
            m = k.pack(ctx, exps)
            acc[m] = acc.get(m, 0) + self._coerce(c)
        return Polynomial._from_rational_terms(self, acc)

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def _coerce(self, c):
        if self.is_rational:
            if isinstance(c, float):
                raise DomainError("floating-point coefficients are not supported")
            return Fraction(c)
        p = self.field.characteristic
        c = Fraction(c)
        return c.numerator * pow(c.denominator, p - 2, p) % p


# ---------------------------------------------------------------------------
# monomials and polynomials

@dataclass(frozen=True)
class Monomial:
    """Power product as sorted ``(VarId, exponent)`` pairs, zero exponents dropped."""

    exponents: tuple[tuple[VarId, int], ...]

    @cached_property
    def degree(self) -> int:
        return sum(e for _, e in self.exponents)

    def as_dict(self) -> dict[VarId, int]:
        return dict(self.exponents)

    def __str__(self):
        if not self.exponents:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.exponents)


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a // gcd(a, b) * b


class Polynomial:
    """Immutable sparse polynomial; value is ``unit * sum(coeffs[i] * mons[i])``."""

    __slots__ = ("ring", "_mons", "_coeffs", "_unit", "_hash")

    def __init__(self, ring: PolyRing, mons: Sequence[int], coeffs: Sequence[int], unit):
        self.ring = ring
        self._mons = tuple(mons)
        self._coeffs = tuple(coeffs)
        self._unit = unit
        self._hash = None

    # -- internal constructors -------------------------------------------------
    @classmethod
    def _from_scaled(cls, ring: PolyRing, raw, scale) -> "Polynomial":
        """``scale * raw`` where raw holds integer (or F_p) coefficients."""
        k = kernels.active
        mons, coeffs = raw
        if not mons:
            return cls(ring, [], [], 0)
        ctx = ring.ctx()
        if ring.is_rational:
            scale = Fraction(scale)
            if scale == 0:
                return cls(ring, [], [], 0)
            (mons, coeffs), g = k.normalize(ctx, (list(mons), list(coeffs)))
            return cls(ring, mons, coeffs, scale * g)
        p = ring.field.characteristic
        scale = ring._coerce(scale)
        if scale == 0:
            return cls(ring, [], [], 0)
        (mons, coeffs), lc = k.normalize(ctx, (list(mons), [c % p for c in coeffs]))
        return cls(ring, mons, coeffs, scale * lc % p)

    @classmethod
    def _from_rational_terms(cls, ring: PolyRing, acc: Mapping[int, object]) -> "Polynomial":
        items = sorted(((m, c) for m, c in acc.items() if c), reverse=True)
        if not items:
            return ring.zero()
        if not ring.is_rational:
            return cls._from_scaled(ring, ([m for m, _ in items], [c for _, c in items]), 1)
        den = 1
        for _, c in items:
            den = _lcm(den, Fraction(c).denominator)
        coeffs = [int(Fraction(c) * den) for _, c in items]
        return cls._from_scaled(ring, ([m for m, _ in items], coeffs), Fraction(1, den))

    def _raw(self):
        return (list(self._mons), list(self._coeffs))

    # -- inspection ------------------------------------------------------------
    @property
    def unit(self):
        return self._unit

    def is_zero(self) -> bool:
        return not self._mons

    def __bool__(self):
        return bool(self._mons)

    def __len__(self):
        return len(self._mons)

    def _monomial(self, m: int) -> Monomial:
        exps = kernels.active.unpack(self.ring.ctx(), m)
        return Monomial(tuple((v, e) for v, e in zip(self.ring.variables, exps) if e))

    def _coeff(self, c):
        if self.ring.is_rational:
            return self._unit * c
        return self._unit * c % self.ring.field.characteristic

    def terms(self) -> list[tuple[Monomial, object]]:
        """Terms in decreasing order, coefficients as field elements."""
        return [(self._monomial(m), self._coeff(c)) for m, c in zip(self._mons, self._coeffs)]

    def as_dict(self) -> dict[Monomial, object]:
        return dict(self.terms())

    def leading_monomial(self) -> Monomial:
        if not self._mons:
            raise DomainError("the zero polynomial has no leading monomial")
        return self._monomial(self._mons[0])

    def leading_coefficient(self):
        if not self._mons:
            raise DomainError("the zero polynomial has no leading coefficient")
        return self._coeff(self._coeffs[0])

    def degree(self) -> int:
        if not self._mons:
            raise DomainError("the degree of the zero polynomial is undefined")
        ctx = self.ring.ctx()
        return max(kernels.active.degree(ctx, m) for m in self._mons)

    def is_homogeneous(self) -> bool:
        ctx = self.ring.ctx()
        return len({kernels.active.degree(ctx, m) for m in self._mons}) <= 1

    def is_sorted(self) -> bool:
        """Terms strictly decreasing, no zero coefficient."""
        ms = self._mons
        return all(ms[i] > ms[i + 1] for i in range(len(ms) - 1)) and all(self._coeffs)

    def variables(self) -> set[VarId]:
        out = set()
        for m in self._mons:
            exps = kernels.active.unpack(self.ring.ctx(), m)
            out.update(v for v, e in zip(self.ring.variables, exps) if e)
        return out

    def monic(self) -> "Polynomial":
        if not self._mons:
            return self
        if self.ring.is_rational:
            return Polynomial(self.ring, self._mons, self._coeffs, Fraction(1, self._coeffs[0]))
        return Polynomial(self.ring, self._mons, self._coeffs, 1)

    def primitive(self) -> "Polynomial":
        """Associate with unit 1 (content-free integer form, or monic mod p)."""
        if not self._mons:
            return self
        return Polynomial(self.ring, self._mons, self._coeffs, Fraction(1) if self.ring.is_rational else 1)

    def change_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-express in another ring containing all variables used."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise DomainError("cannot change coefficient field")
        k = kernels.active
        src = self.ring.ctx()
        dst = ring.ctx()
        acc = {}
        for m, c in zip(self._mons, self._coeffs):
            exps = [0] * ring.nvars
            for v, e in zip(self.ring.variables, k.unpack(src, m)):
                if e:
                    if v not in ring.index:
                        raise DomainError(f"{v} is not a variable of the target ring")
                    exps[ring.index[v]] = e
            acc[k.pack(dst, exps)] = c
        items = sorted(acc.items(), reverse=True)
        return Polynomial(ring, [m for m, _ in items], [c for _, c in items], self._unit)

    # -- arithmetic --------------------------------------------------------------
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise DomainError("polynomials belong to different rings")

    def _lift(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _add(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return _add(self, other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        if not self._mons:
            return self
        u = -self._unit
        if not self.ring.is_rational:
            u %= self.ring.field.characteristic
        return Polynomial(self.ring, self._mons, self._coeffs, u)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        if not self._mons or not other._mons:
            return self.ring.zero()
        ctx = self.ring.ctx()
        raw = kernels.active.mul(ctx, self._raw(), other._raw())
        return Polynomial._from_scaled(self.ring, raw, self._unit * other._unit)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not polynomials")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c) -> "Polynomial":
        c = self.ring._coerce(c)
        if not c or not self._mons:
            return self.ring.zero()
        if self.ring.is_rational:
            return Polynomial(self.ring, self._mons, self._coeffs, self._unit * c)
        return Polynomial(self.ring, self._mons, self._coeffs, self._unit * c % self.ring.field.characteristic)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.ring == other.ring and self._mons == other._mons
                and self._coeffs == other._coeffs and self._unit == other._unit)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self._mons, self._coeffs, self._unit))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def _add(f: Polynomial, g: Polynomial, sign: int) -> Polynomial:
    ring = f.ring
    if not g._mons:
        return f
    if not f._mons:
        return g if sign > 0 else -g
    ctx = ring.ctx()
    k = kernels.active
    if ring.is_rational:
        uf = Fraction(f._unit)
        ug = Fraction(g._unit) * sign
        den = _lcm(uf.denominator, ug.denominator)
        a = uf.numerator * (den // uf.denominator)
        b = ug.numerator * (den // ug.denominator)
        raw = k.lincomb(ctx, a, f._raw(), b, g._raw())
        return Polynomial._from_scaled(ring, raw, Fraction(1, den))
    p = ring.field.characteristic
    raw = k.lincomb(ctx, f._unit, f._raw(), sign * g._unit % p, g._raw())
    return Polynomial._from_scaled(ring, raw, 1)


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    return f * g


def normal_form(f: Polynomial, divisors: Sequence[Polynomial]) -> Polynomial:
    """Remainder of ``f`` on division by ``divisors`` (first divisor wins).

    ``f - normal_form(f, D)`` lies in the ideal of ``D`` and no term of the
    result is divisible by a leading monomial of ``D``.
    """
    for d in divisors:
        f._check(d)
        if not d:
            raise DomainError("division by the zero polynomial")
    if not f:
        return f
    ring = f.ring
    raw, mult = kernels.active.reduce(ring.ctx(), f._raw(), [d._raw() for d in divisors],
                                      True, True)
    if ring.is_rational:
        return Polynomial._from_scaled(ring, raw, Fraction(f._unit) / mult)
    return Polynomial._from_scaled(ring, raw, f._unit)


# ---------------------------------------------------------------------------
# text format:  c*x[i,j]*x[k,l]^2 + ... - ...

def _format_coeff(c) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_poly(f: Polynomial) -> str:
    if not f:
        return "0"
    parts = []
    p = f.ring.field.characteristic
    for k, (mon, c) in enumerate(f.terms()):
        neg = False
        if p == 0 and c < 0:
            neg, c = True, -c
        body = str(mon)
        if mon.exponents:
            term = body if c == 1 else f"{_format_coeff(c)}*{body}"
        else:
            term = _format_coeff(c)
        if k == 0:
            parts.append(("-" if neg else "") + term)
        else:
            parts.append((" - " if neg else " + ") + term)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<op>[+-])|(?P<num>\d+(?:/\d+)?)|"
                    r"(?P<var>x\[\s*(?P<row>\d+)\s*,\s*(?P<col>\d+)\s*\](?:\^(?P<exp>\d+))?)|(?P<star>\*))")


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse the text format produced by :func:`format_poly`."""
    pos = 0
    text = text.strip()
    terms: dict = {}
    sign = 1
    coeff = None
    mon: dict[VarId, int] = {}
    expect_factor = True
    seen_any = False

    def flush():
        nonlocal coeff, mon, sign
        c = Fraction(1) if coeff is None else coeff
        key = tuple(sorted(mon.items()))
        terms[key] = terms.get(key, 0) + sign * c
        coeff, mon, sign = None, {}, 1

    if text == "0":
        return ring.zero()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError(f"cannot parse polynomial at column {pos + 1}: {text!r}")
        pos = m.end()
        if m.group("op"):
            if seen_any and not expect_factor:
                flush()
                expect_factor = True
            elif seen_any or coeff is not None or mon:
                raise DomainError(f"unexpected sign at column {pos}")
            if m.group("op") == "-":
                sign = -sign
        elif m.group("star"):
            if expect_factor:
                raise DomainError(f"unexpected '*' at column {pos}")
            expect_factor = True
        else:
            if not expect_factor:
                raise DomainError(f"missing operator before column {pos}")
            if m.group("num"):
                if coeff is not None or mon:
                    raise DomainError(f"coefficient must lead its term (column {pos})")
                coeff = Fraction(m.group("num"))
            else:
                i, j = int(m.group("row")), int(m.group("col"))
                e = int(m.group("exp") or 1)
                v = VarId(i, j)
                mon[v] = mon.get(v, 0) + e
            expect_factor = False
            seen_any = True
    if expect_factor:
        raise DomainError("polynomial text ends unexpectedly")
    flush()
    return ring.from_dict(dict(terms))
