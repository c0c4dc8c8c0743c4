"""Pure-Python polynomial kernels.

A polynomial is a pair ``(mons, coeffs)`` of parallel lists sorted by
strictly decreasing monomial.  Monomials are packed into Python ints, one
8-bit field per variable (7 value bits plus a guard bit), laid out so that
plain integer comparison is the term order:

* degrevlex: ``deg << (8*N) | sum((127 - e_i) << 8*i)``
* lex:       ``sum(e_i << 8*(N-1-i))``

Variable 0 is the largest variable.  Coefficients are Python ints, either
exact integers (``p == 0``, fraction-free arithmetic) or residues mod ``p``.

The compiled extension implements the same functions with the same
signatures; ``pfladder.kernels`` picks one at import time.
"""

from math import gcd

WIDTH = 8
FIELD_MAX = 127


class MonomialOverflow(ArithmeticError):
    """An exponent exceeded the packed field width."""


class Ctx:
    """Packing parameters for one ring."""

    __slots__ = ("nvars", "lex", "p", "base", "guard", "ones", "fieldmask", "one")

    def __init__(self, nvars, lex=False, p=0):
        self.nvars = nvars
        self.lex = bool(lex)
        self.p = p
        guard = 0
        ones = 0
        base = 0
        for i in range(nvars):
            guard |= 0x80 << (WIDTH * i)
            ones |= 0x01 << (WIDTH * i)
            base |= FIELD_MAX << (WIDTH * i)
        self.guard = guard
        self.ones = ones
        self.fieldmask = (1 << (WIDTH * nvars)) - 1
        self.base = base
        self.one = 0 if self.lex else base

    def __reduce__(self):
        return (Ctx, (self.nvars, self.lex, self.p))


# ---------------------------------------------------------------------------
# monomials

def pack(ctx, exps):
    n = ctx.nvars
    if len(exps) != n:
        raise ValueError("exponent vector has wrong length")
    m = 0
    if ctx.lex:
        for i, e in enumerate(exps):
            if e < 0 or e > FIELD_MAX:
                raise MonomialOverflow(e)
            m |= e << (WIDTH * (n - 1 - i))
        return m
    deg = 0
    for i, e in enumerate(exps):
        if e < 0 or e > FIELD_MAX:
            raise MonomialOverflow(e)
        deg += e
        m |= (FIELD_MAX - e) << (WIDTH * i)
    return m | (deg << (WIDTH * n))


def unpack(ctx, m):
    n = ctx.nvars
    if ctx.lex:
        return tuple((m >> (WIDTH * (n - 1 - i))) & 0xFF for i in range(n))
    return tuple(FIELD_MAX - ((m >> (WIDTH * i)) & 0xFF) for i in range(n))


def degree(ctx, m):
    if ctx.lex:
        return sum(unpack(ctx, m))
    return m >> (WIDTH * ctx.nvars)


def mon_mul(ctx, a, b):
    c = a + b - ctx.one
    if c & ctx.guard:
        raise MonomialOverflow("exponent overflow in product")
    return c


def mon_divides(ctx, a, b):
    """True iff monomial ``a`` divides ``b``."""
    g = ctx.guard
    if ctx.lex:
        return ((b | g) - a) & g == g
    return ((a | g) - b) & g == g


def mon_div(ctx, b, a):
    """Quotient ``b / a``; caller guarantees divisibility."""
    return b - a + ctx.one


def mon_lcm(ctx, a, b):
    ea = unpack(ctx, a)
    eb = unpack(ctx, b)
    return pack(ctx, [x if x > y else y for x, y in zip(ea, eb)])


def mon_coprime(ctx, a, b):
    for x, y in zip(unpack(ctx, a), unpack(ctx, b)):
        if x and y:
            return False
    return True


def support_mask(ctx, m):
    mask = 0
    for i, e in enumerate(unpack(ctx, m)):
        if e:
            mask |= 1 << i
    return mask


# ---------------------------------------------------------------------------
# coefficient helpers

def _inv(c, p):
    return pow(c, p - 2, p)


def content(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def normalize(ctx, f):
    """Primitive form with positive leading coefficient (Z) or monic (F_p).

    Returns ``(poly, unit)`` with ``f == unit * poly``.  ``unit`` is an int
    for F_p and a pair ``(num, den)`` for Z (always ``den == 1`` here, the
    divisor is the content).
    """
    mons, coeffs = f
    if not mons:
        return f, 0
    p = ctx.p
    if p:
        lc = coeffs[0]
        if lc == 1:
            return f, 1
        inv = _inv(lc, p)
        return (mons, [c * inv % p for c in coeffs]), lc
    g = content(coeffs)
    if coeffs[0] < 0:
        g = -g
    if g == 1:
        return f, 1
    return (mons, [c // g for c in coeffs]), g


# ---------------------------------------------------------------------------
# polynomial arithmetic

def _check_shift(dm, q, one, g_bits):
    for y in dm:
        if (y + q - one) & g_bits:
            raise MonomialOverflow("exponent overflow in reduction")


def lincomb(ctx, a, f, b, g):
    """Return ``a*f + b*g`` by a sorted merge."""
    fm, fc = f
    gm, gc = g
    p = ctx.p
    rm = []
    rc = []
    i = j = 0
    nf = len(fm)
    ng = len(gm)
    while i < nf and j < ng:
        x = fm[i]
        y = gm[j]
        if x > y:
            c = a * fc[i]
            if p:
                c %= p
            if c:
                rm.append(x)
                rc.append(c)
            i += 1
        elif x < y:
            c = b * gc[j]
            if p:
                c %= p
            if c:
                rm.append(y)
                rc.append(c)
            j += 1
        else:
            c = a * fc[i] + b * gc[j]
            if p:
                c %= p
            if c:
                rm.append(x)
                rc.append(c)
            i += 1
            j += 1
    while i < nf:
        c = a * fc[i]
        if p:
            c %= p
        if c:
            rm.append(fm[i])
            rc.append(c)
        i += 1
    while j < ng:
        c = b * gc[j]
        if p:
            c %= p
        if c:
            rm.append(gm[j])
            rc.append(c)
        j += 1
    return rm, rc


def mul_term(ctx, f, mon, c):
    fm, fc = f
    one = ctx.one
    guard = ctx.guard
    p = ctx.p
    rm = []
    rc = []
    for x, d in zip(fm, fc):
        y = x + mon - one
        if y & guard:
            raise MonomialOverflow("exponent overflow in product")
        rm.append(y)
        if p:
            rc.append(d * c % p)
        else:
            rc.append(d * c)
    return rm, rc


def mul(ctx, f, g):
    fm, fc = f
    gm, gc = g
    if not fm or not gm:
        return [], []
    if len(fm) < len(gm):
        fm, fc, gm, gc = gm, gc, fm, fc
    one = ctx.one
    guard = ctx.guard
    p = ctx.p
    acc = {}
    get = acc.get
    for y, d in zip(gm, gc):
        shift = y - one
        for x, c in zip(fm, fc):
            z = x + shift
            acc[z] = get(z, 0) + c * d
    for z in acc:
        if z & guard:
            raise MonomialOverflow("exponent overflow in product")
    keys = sorted(acc, reverse=True)
    rm = []
    rc = []
    for z in keys:
        c = acc[z]
        if p:
            c %= p
        if c:
            rm.append(z)
            rc.append(c)
    return rm, rc


def spoly(ctx, f, g):
    """S-polynomial of ``f`` and ``g`` (fraction-free over Z)."""
    fm, fc = f
    gm, gc = g
    lcm = mon_lcm(ctx, fm[0], gm[0])
    qf = mon_div(ctx, lcm, fm[0])
    qg = mon_div(ctx, lcm, gm[0])
    p = ctx.p
    if p:
        a = gc[0]
        b = fc[0]
    else:
        d = gcd(fc[0], gc[0])
        a = gc[0] // d
        b = fc[0] // d
    sf = mul_term(ctx, (fm[1:], fc[1:]), qf, a)
    sg = mul_term(ctx, (gm[1:], gc[1:]), qg, b)
    return lincomb(ctx, 1, sf, -1, sg)


def reduce(ctx, f, divisors, full=True, track=False):
    """Normal form of ``f`` with respect to ``divisors``.

    Each step uses the first divisor (in list order) whose leading monomial
    divides the current leading term.  Returns ``(r, mult)`` where
    ``mult * f - r`` lies in the ideal of the divisors.  Over F_p ``mult`` is
    always 1.  With ``track=False`` the running pair is kept primitive and
    ``mult`` is meaningless (returned as 0).  With ``full=False`` only the
    leading term is reduced.
    """
    fm, fc = f
    fm = list(fm)
    fc = list(fc)
    p = ctx.p
    one = ctx.one
    g_bits = ctx.guard
    lex = ctx.lex
    leads = [d[0][0] for d in divisors]
    nd = len(divisors)
    rm = []
    rc = []
    mult = 1
    steps = 0
    i = 0
    while i < len(fm):
        m = fm[i]
        c = fc[i]
        k = 0
        while k < nd:
            a = leads[k]
            if lex:
                if ((m | g_bits) - a) & g_bits == g_bits:
                    break
            elif ((a | g_bits) - m) & g_bits == g_bits:
                break
            k += 1
        if k == nd:
            if not full:
                break
            rm.append(m)
            rc.append(c)
            i += 1
            continue
        dm, dc = divisors[k]
        q = m - leads[k] + one
        lc = dc[0]
        if p:
            b = c * _inv(lc, p) % p
            # f <- f - b*q*d, skipping the cancelled lead
            nm = []
            nc = []
            x_i = i + 1
            y_i = 1
            nf = len(fm)
            ndm = len(dm)
            while x_i < nf and y_i < ndm:
                x = fm[x_i]
                y = dm[y_i] + q - one
                if x > y:
                    nm.append(x)
                    nc.append(fc[x_i])
                    x_i += 1
                elif x < y:
                    nm.append(y)
                    nc.append(-b * dc[y_i] % p)
                    y_i += 1
                else:
                    cc = (fc[x_i] - b * dc[y_i]) % p
                    if cc:
                        nm.append(x)
                        nc.append(cc)
                    x_i += 1
                    y_i += 1
            if x_i < nf:
                nm.extend(fm[x_i:])
                nc.extend(fc[x_i:])
            while y_i < ndm:
                nm.append(dm[y_i] + q - one)
                nc.append(-b * dc[y_i] % p)
                y_i += 1
        else:
            d = gcd(c, lc)
            a = lc // d
            b = c // d
            if a < 0:
                a = -a
                b = -b
            nm = []
            nc = []
            x_i = i + 1
            y_i = 1
            nf = len(fm)
            ndm = len(dm)
            while x_i < nf and y_i < ndm:
                x = fm[x_i]
                y = dm[y_i] + q - one
                if x > y:
                    nm.append(x)
                    nc.append(a * fc[x_i])
                    x_i += 1
                elif x < y:
                    nm.append(y)
                    nc.append(-b * dc[y_i])
                    y_i += 1
                else:
                    cc = a * fc[x_i] - b * dc[y_i]
                    if cc:
                        nm.append(x)
                        nc.append(cc)
                    x_i += 1
                    y_i += 1
            while x_i < nf:
                nm.append(fm[x_i])
                nc.append(a * fc[x_i])
                x_i += 1
            while y_i < ndm:
                nm.append(dm[y_i] + q - one)
                nc.append(-b * dc[y_i])
                y_i += 1
            if a != 1:
                rc = [a * v for v in rc]
                mult *= a
            steps += 1
            if not track and steps % 16 == 0:
                g = content(nc)
                g = gcd(g, content(rc))
                if g > 1:
                    nc = [v // g for v in nc]
                    rc = [v // g for v in rc]
        _check_shift(dm, q, one, g_bits)
        fm = nm
        fc = nc
        i = 0
    if not full:
        rm.extend(fm[i:])
        rc.extend(fc[i:])
    return (rm, rc), (mult if track else 0)
