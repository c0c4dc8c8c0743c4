# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels.

Same data layout and the same functions as ``_pykernels``; see that module
for the representation.  Monomials stay Python ints (they can be wider
than a machine word), so the gains here come from typed loops, C-level
coefficient arithmetic over F_p, and word-parallel lcm/coprimality tests.
"""

from math import gcd

from ._pykernels import MonomialOverflow

WIDTH = 8
FIELD_MAX = 127


cdef class Ctx:
    cdef public Py_ssize_t nvars
    cdef public bint lex
    cdef public long long p
    cdef public object base, guard, ones, fieldmask, one
    cdef public object sevens
    cdef public Py_ssize_t nbytes

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
        self.base = base
        self.sevens = base
        self.fieldmask = (1 << (WIDTH * nvars)) - 1
        self.one = 0 if self.lex else base
        self.nbytes = nvars

    def __reduce__(self):
        return (Ctx, (self.nvars, self.lex, self.p))


# ---------------------------------------------------------------------------
# monomials

def pack(Ctx ctx, exps):
    cdef Py_ssize_t n = ctx.nvars, i
    cdef long e, deg = 0
    if len(exps) != n:
        raise ValueError("exponent vector has wrong length")
    cdef bytearray buf = bytearray(n)
    for i in range(n):
        e = exps[i]
        if e < 0 or e > FIELD_MAX:
            raise MonomialOverflow(e)
        deg += e
        if ctx.lex:
            buf[i] = e
        else:
            buf[n - 1 - i] = FIELD_MAX - e
    m = int.from_bytes(buf, "big")
    if ctx.lex:
        return m
    return m | (deg << (WIDTH * n))


def unpack(Ctx ctx, m):
    cdef Py_ssize_t n = ctx.nvars, i
    cdef bytes raw = (m & ctx.fieldmask).to_bytes(n, "big")
    cdef const unsigned char[:] v = raw
    if ctx.lex:
        return tuple([v[i] for i in range(n)])
    return tuple([FIELD_MAX - <int>v[n - 1 - i] for i in range(n)])


cdef inline long _field_sum(Ctx ctx, object m):
    cdef bytes raw = (m & ctx.fieldmask).to_bytes(ctx.nbytes, "big")
    cdef const unsigned char[:] v = raw
    cdef long s = 0
    cdef Py_ssize_t i
    for i in range(ctx.nbytes):
        s += v[i]
    return s


def degree(Ctx ctx, m):
    if ctx.lex:
        return _field_sum(ctx, m)
    return m >> (WIDTH * ctx.nvars)


def mon_mul(Ctx ctx, a, b):
    c = a + b - ctx.one
    if c & ctx.guard:
        raise MonomialOverflow("exponent overflow in product")
    return c


def mon_divides(Ctx ctx, a, b):
    g = ctx.guard
    if ctx.lex:
        return ((b | g) - a) & g == g
    return ((a | g) - b) & g == g


def mon_div(Ctx ctx, b, a):
    return b - a + ctx.one


cdef inline object _exp_fields(Ctx ctx, object m):
    # per-field exponents, lex layout for lex and reversed-field layout otherwise
    if ctx.lex:
        return m
    return ctx.base - (m & ctx.fieldmask)


cdef inline object _nonzero_guards(Ctx ctx, object e):
    return (e + ctx.sevens) & ctx.guard


def mon_lcm(Ctx ctx, a, b):
    g = ctx.guard
    ea = _exp_fields(ctx, a)
    eb = _exp_fields(ctx, b)
    # guard bit set where ea >= eb, widened to a full-field select mask
    sel = ((ea | g) - eb) & g
    mask = sel - (sel >> 7)
    mask |= sel
    e = (ea & mask) | (eb & ~mask & ctx.fieldmask)
    if ctx.lex:
        return e
    deg = _field_sum(ctx, e)
    return (deg << (WIDTH * ctx.nvars)) | (ctx.base - e)


def mon_coprime(Ctx ctx, a, b):
    na = _nonzero_guards(ctx, _exp_fields(ctx, a))
    nb = _nonzero_guards(ctx, _exp_fields(ctx, b))
    return not (na & nb)


def support_mask(Ctx ctx, m):
    nz = _nonzero_guards(ctx, _exp_fields(ctx, m))
    cdef Py_ssize_t n = ctx.nvars, i
    cdef bytes raw = nz.to_bytes(n, "big")
    cdef const unsigned char[:] v = raw
    mask = 0
    for i in range(n):
        if v[i]:
            # field position counted from the low end
            pos = n - 1 - i
            if ctx.lex:
                mask |= 1 << (n - 1 - pos)
            else:
                mask |= 1 << pos
    return mask


# ---------------------------------------------------------------------------
# coefficient helpers

cdef inline long long _invp(long long c, long long p):
    cdef long long r = 1, e = p - 2
    c %= p
    if c < 0:
        c += p
    while e:
        if e & 1:
            r = r * c % p
        c = c * c % p
        e >>= 1
    return r


def _inv(c, p):
    return pow(c, p - 2, p)


def content(coeffs):
    g = 0
    for c in coeffs:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def normalize(Ctx ctx, f):
    mons, coeffs = f
    if not mons:
        return f, 0
    cdef long long p = ctx.p, inv, lc
    cdef list out
    if p:
        lc = coeffs[0]
        if lc == 1:
            return f, 1
        inv = _invp(lc, p)
        out = [(<long long>c) * inv % p for c in coeffs]
        return (mons, out), lc
    g = content(coeffs)
    if coeffs[0] < 0:
        g = -g
    if g == 1:
        return f, 1
    return (mons, [c // g for c in coeffs]), g


# ---------------------------------------------------------------------------
# polynomial arithmetic

cdef inline long long _modp(long long x, long long p):
    x %= p
    if x < 0:
        x += p
    return x


def lincomb(Ctx ctx, a, f, b, g):
    cdef list fm = f[0], fc = f[1], gm = g[0], gc = g[1]
    cdef list rm = [], rc = []
    cdef Py_ssize_t i = 0, j = 0, nf = len(fm), ng = len(gm)
    cdef long long p = ctx.p, ap = 0, bp = 0, cp
    if p:
        ap = _modp(a, p)
        bp = _modp(b, p)
        while i < nf and j < ng:
            x = fm[i]
            y = gm[j]
            if x > y:
                cp = ap * <long long>fc[i] % p
                if cp:
                    rm.append(x)
                    rc.append(cp)
                i += 1
            elif x < y:
                cp = bp * <long long>gc[j] % p
                if cp:
                    rm.append(y)
                    rc.append(cp)
                j += 1
            else:
                cp = (ap * <long long>fc[i] + bp * <long long>gc[j]) % p
                if cp:
                    rm.append(x)
                    rc.append(cp)
                i += 1
                j += 1
        while i < nf:
            cp = ap * <long long>fc[i] % p
            if cp:
                rm.append(fm[i])
                rc.append(cp)
            i += 1
        while j < ng:
            cp = bp * <long long>gc[j] % p
            if cp:
                rm.append(gm[j])
                rc.append(cp)
            j += 1
        return rm, rc
    while i < nf and j < ng:
        x = fm[i]
        y = gm[j]
        if x > y:
            c = a * fc[i]
            if c:
                rm.append(x)
                rc.append(c)
            i += 1
        elif x < y:
            c = b * gc[j]
            if c:
                rm.append(y)
                rc.append(c)
            j += 1
        else:
            c = a * fc[i] + b * gc[j]
            if c:
                rm.append(x)
                rc.append(c)
            i += 1
            j += 1
    while i < nf:
        c = a * fc[i]
        if c:
            rm.append(fm[i])
            rc.append(c)
        i += 1
    while j < ng:
        c = b * gc[j]
        if c:
            rm.append(gm[j])
            rc.append(c)
        j += 1
    return rm, rc


def mul_term(Ctx ctx, f, mon, c):
    cdef list fm = f[0], fc = f[1]
    cdef list rm = [], rc = []
    cdef Py_ssize_t i, n = len(fm)
    cdef long long p = ctx.p, cp
    shift = mon - ctx.one
    guard = ctx.guard
    if p:
        cp = _modp(c, p)
        for i in range(n):
            y = fm[i] + shift
            if y & guard:
                raise MonomialOverflow("exponent overflow in product")
            rm.append(y)
            rc.append(<long long>fc[i] * cp % p)
        return rm, rc
    for i in range(n):
        y = fm[i] + shift
        if y & guard:
            raise MonomialOverflow("exponent overflow in product")
        rm.append(y)
        rc.append(fc[i] * c)
    return rm, rc


def mul(Ctx ctx, f, g):
    cdef list fm = f[0], fc = f[1], gm = g[0], gc = g[1]
    if not fm or not gm:
        return [], []
    if len(fm) < len(gm):
        fm, fc, gm, gc = gm, gc, fm, fc
    cdef Py_ssize_t i, j, nf = len(fm), ng = len(gm)
    cdef long long p = ctx.p
    cdef dict acc = {}
    one = ctx.one
    guard = ctx.guard
    for j in range(ng):
        shift = gm[j] - one
        d = gc[j]
        for i in range(nf):
            z = fm[i] + shift
            prev = acc.get(z)
            if prev is None:
                acc[z] = fc[i] * d
            else:
                acc[z] = prev + fc[i] * d
    for z in acc:
        if z & guard:
            raise MonomialOverflow("exponent overflow in product")
    cdef list keys = sorted(acc, reverse=True)
    cdef list rm = [], rc = []
    for z in keys:
        c = acc[z]
        if p:
            c %= p
        if c:
            rm.append(z)
            rc.append(c)
    return rm, rc


def spoly(Ctx ctx, f, g):
    fm, fc = f
    gm, gc = g
    lcm = mon_lcm(ctx, fm[0], gm[0])
    qf = mon_div(ctx, lcm, fm[0])
    qg = mon_div(ctx, lcm, gm[0])
    if ctx.p:
        a = gc[0]
        b = fc[0]
    else:
        d = gcd(fc[0], gc[0])
        a = gc[0] // d
        b = fc[0] // d
    sf = mul_term(ctx, (fm[1:], fc[1:]), qf, a)
    sg = mul_term(ctx, (gm[1:], gc[1:]), qg, b)
    return lincomb(ctx, 1, sf, -1, sg)


cdef inline bint _divides(bint lex, object a, object m, object g):
    if lex:
        return ((m | g) - a) & g == g
    return ((a | g) - m) & g == g


def reduce(Ctx ctx, f, divisors, full=True, track=False):
    cdef list fm = list(f[0]), fc = list(f[1])
    cdef long long p = ctx.p, bp, lcp, cc
    cdef bint lex = ctx.lex, do_full = full, do_track = track
    cdef list leads = [d[0][0] for d in divisors]
    cdef Py_ssize_t nd = len(divisors), k, i = 0, x_i, y_i, nf, ndm
    cdef list rm = [], rc = [], nm, nc, dm, dc
    cdef long steps = 0
    one = ctx.one
    g_bits = ctx.guard
    mult = 1
    while i < len(fm):
        m = fm[i]
        c = fc[i]
        k = 0
        while k < nd:
            if _divides(lex, leads[k], m, g_bits):
                break
            k += 1
        if k == nd:
            if not do_full:
                break
            rm.append(m)
            rc.append(c)
            i += 1
            continue
        dm = divisors[k][0]
        dc = divisors[k][1]
        shift = m - leads[k]
        for y in dm:
            if (y + shift) & g_bits:
                raise MonomialOverflow("exponent overflow in reduction")
        nm = []
        nc = []
        x_i = i + 1
        y_i = 1
        nf = len(fm)
        ndm = len(dm)
        if p:
            lcp = dc[0]
            bp = (<long long>c) * _invp(lcp, p) % p
            while x_i < nf and y_i < ndm:
                x = fm[x_i]
                y = dm[y_i] + shift
                if x > y:
                    nm.append(x)
                    nc.append(fc[x_i])
                    x_i += 1
                elif x < y:
                    nm.append(y)
                    nc.append(_modp(-bp * <long long>dc[y_i], p))
                    y_i += 1
                else:
                    cc = _modp(<long long>fc[x_i] - bp * <long long>dc[y_i], p)
                    if cc:
                        nm.append(x)
                        nc.append(cc)
                    x_i += 1
                    y_i += 1
            if x_i < nf:
                nm.extend(fm[x_i:])
                nc.extend(fc[x_i:])
            while y_i < ndm:
                nm.append(dm[y_i] + shift)
                nc.append(_modp(-bp * <long long>dc[y_i], p))
                y_i += 1
        else:
            lc = dc[0]
            d = gcd(c, lc)
            a = lc // d
            b = c // d
            if a < 0:
                a = -a
                b = -b
            while x_i < nf and y_i < ndm:
                x = fm[x_i]
                y = dm[y_i] + shift
                if x > y:
                    nm.append(x)
                    nc.append(a * fc[x_i])
                    x_i += 1
                elif x < y:
                    nm.append(y)
                    nc.append(-b * dc[y_i])
                    y_i += 1
                else:
                    cz = a * fc[x_i] - b * dc[y_i]
                    if cz:
                        nm.append(x)
                        nc.append(cz)
                    x_i += 1
                    y_i += 1
            while x_i < nf:
                nm.append(fm[x_i])
                nc.append(a * fc[x_i])
                x_i += 1
            while y_i < ndm:
                nm.append(dm[y_i] + shift)
                nc.append(-b * dc[y_i])
                y_i += 1
            if a != 1:
                rc = [a * v for v in rc]
                mult *= a
            steps += 1
            if not do_track and steps % 16 == 0:
                g = gcd(content(nc), content(rc))
                if g > 1:
                    nc = [v // g for v in nc]
                    rc = [v // g for v in rc]
        fm = nm
        fc = nc
        i = 0
    if not do_full:
        rm.extend(fm[i:])
        rc.extend(fc[i:])
    return (rm, rc), (mult if do_track else 0)
