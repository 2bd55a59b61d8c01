# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled kernel: identical data layout and semantics as ``_pure``.

Coefficients stay arbitrary-precision Python ints; the win comes from typed
merge loops, C-level term comparisons, and avoiding per-term closure calls.
"""

from math import gcd

KERNEL = "c"


cdef inline tuple _norm(object num, object den):
    cdef object g
    if den < 0:
        num = -num
        den = -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def frac_add(n1, d1, n2, d2):
    return _norm(n1 * d2 + n2 * d1, d1 * d2)


def frac_mul(n1, d1, n2, d2):
    return _norm(n1 * n2, d1 * d2)


def frac_div(n1, d1, n2, d2):
    return _norm(n1 * d2, d1 * n2)


cpdef bint expo_divides(tuple a, tuple b):
    """True when monomial a divides monomial b (componentwise <=)."""
    cdef Py_ssize_t i, n = len(a)
    for i in range(n):
        if <long> a[i] > <long> b[i]:
            return False
    return True


cpdef tuple expo_sub(tuple b, tuple a):
    cdef Py_ssize_t i, n = len(b)
    return tuple([<long> b[i] - <long> a[i] for i in range(n)])


cpdef tuple expo_add(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    return tuple([<long> a[i] + <long> b[i] for i in range(n)])


cpdef tuple expo_lcm(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    cdef long x, y
    out = []
    for i in range(n):
        x = <long> a[i]
        y = <long> b[i]
        out.append(x if x > y else y)
    return tuple(out)


cpdef long cmp_terms(long p1, tuple e1, long p2, tuple e2, tuple weights, long nelim, long possplit):
    """Three-way comparison of module monomials; positive when the first is larger."""
    cdef long b1, b2, s1, s2, w1, w2, x1, x2
    cdef Py_ssize_t i, n = len(e1)
    if possplit:
        b1 = 1 if p1 < possplit else 0
        b2 = 1 if p2 < possplit else 0
        if b1 != b2:
            return b1 - b2
    if nelim:
        s1 = 0
        s2 = 0
        for i in range(nelim):
            s1 += <long> e1[i]
            s2 += <long> e2[i]
        if s1 != s2:
            return s1 - s2
    w1 = <long> weights[p1]
    w2 = <long> weights[p2]
    for i in range(n):
        w1 += <long> e1[i]
        w2 += <long> e2[i]
    if w1 != w2:
        return w1 - w2
    for i in range(n - 1, -1, -1):
        x1 = <long> e1[i]
        x2 = <long> e2[i]
        if x1 != x2:
            # grevlex: smaller exponent at the rightmost difference wins
            return x2 - x1
    return p2 - p1


def sort_key(pos, expo, weights, nelim, possplit):
    """Tuple key realizing cmp_terms for max()/sort()."""
    blk = 1 if (possplit and pos < possplit) else 0
    elim = sum(expo[:nelim]) if nelim else 0
    wdeg = sum(expo) + weights[pos]
    return (blk, elim, wdeg, tuple([-e for e in reversed(expo)]), -pos)


def canon(terms, tuple weights, long nelim, long possplit):
    """Merge duplicates, drop zeros, sort descending; returns a canonical poly."""
    cdef dict acc = {}
    cdef tuple key
    for pos, expo, num, den in terms:
        if num == 0:
            continue
        key = (pos, expo)
        if key in acc:
            n0, d0 = acc[key]
            n, d = _norm(n0 * den + num * d0, d0 * den)
            if n == 0:
                del acc[key]
            else:
                acc[key] = (n, d)
        else:
            acc[key] = _norm(num, den)
    out = [(pos_e[0], pos_e[1], nd[0], nd[1]) for pos_e, nd in acc.items()]
    out.sort(key=lambda t: sort_key(t[0], t[1], weights, nelim, possplit), reverse=True)
    return tuple(out)


def neg(f):
    return tuple([(t[0], t[1], -t[2], t[3]) for t in f])


def scale(f, num, den):
    if num == 0:
        return ()
    num, den = _norm(num, den)
    out = []
    for t in f:
        n, d = _norm(t[2] * num, t[3] * den)
        out.append((t[0], t[1], n, d))
    return tuple(out)


def mul_term(f, tuple expo, num, den):
    """Multiply by a ring term; order-preserving, so no re-sort."""
    if num == 0:
        return ()
    num, den = _norm(num, den)
    out = []
    for t in f:
        n, d = _norm(t[2] * num, t[3] * den)
        out.append((t[0], expo_add(t[1], expo), n, d))
    return tuple(out)


cdef list _merge(object f, object g, tuple weights, long nelim, long possplit):
    """Sum of two canonical polys via a sorted two-pointer merge."""
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0, nf = len(f), ng = len(g)
    cdef long c
    cdef tuple tf, tg
    while i < nf and j < ng:
        tf = f[i]
        tg = g[j]
        c = cmp_terms(<long> tf[0], <tuple> tf[1], <long> tg[0], <tuple> tg[1], weights, nelim, possplit)
        if c > 0:
            out.append(tf)
            i += 1
        elif c < 0:
            out.append(tg)
            j += 1
        else:
            n, d = _norm(tf[2] * tg[3] + tg[2] * tf[3], tf[3] * tg[3])
            if n != 0:
                out.append((tf[0], tf[1], n, d))
            i += 1
            j += 1
    while i < nf:
        out.append(f[i])
        i += 1
    while j < ng:
        out.append(g[j])
        j += 1
    return out


def add(f, g, tuple weights, long nelim, long possplit):
    return tuple(_merge(f, g, weights, nelim, possplit))


def sub(f, g, tuple weights, long nelim, long possplit):
    return tuple(_merge(f, neg(g), weights, nelim, possplit))


def mul(f, g, tuple weights, long nelim, long possplit):
    """Product of a ring poly f (all positions 0) with a module poly g."""
    cdef dict acc = {}
    cdef tuple key
    for tf in f:
        for tg in g:
            key = (tg[0], expo_add(<tuple> tf[1], <tuple> tg[1]))
            n2, d2 = _norm(tf[2] * tg[2], tf[3] * tg[3])
            if key in acc:
                n0, d0 = acc[key]
                n2, d2 = _norm(n0 * d2 + n2 * d0, d0 * d2)
            if n2 == 0:
                acc.pop(key, None)
            else:
                acc[key] = (n2, d2)
    out = [(pos_e[0], pos_e[1], nd[0], nd[1]) for pos_e, nd in acc.items()]
    out.sort(key=lambda t: sort_key(t[0], t[1], weights, nelim, possplit), reverse=True)
    return tuple(out)


def reduce(f, basis, tuple weights, long nelim, long possplit, bint track=False):
    """Full normal form of f modulo basis (first matching divisor wins).

    Returns (remainder, cofactors) where cofactors[i] is the ring poly q_i with
    f = sum q_i basis_i + remainder; cofactors is None unless track is set.
    """
    cdef list cofs = [[] for _ in basis] if track else None
    cdef list out = []
    cdef list work = list(f)
    cdef Py_ssize_t wi = 0, hit, i, nb = len(basis)
    cdef long pos
    cdef tuple t, lt, qe, expo
    while wi < len(work):
        t = work[wi]
        pos = <long> t[0]
        expo = <tuple> t[1]
        hit = -1
        for i in range(nb):
            lt = (<tuple> basis[i])[0]
            if <long> lt[0] == pos and expo_divides(<tuple> lt[1], expo):
                hit = i
                break
        if hit < 0:
            out.append(t)
            wi += 1
            continue
        b = basis[hit]
        lt = (<tuple> b)[0]
        qe = expo_sub(expo, <tuple> lt[1])
        qn, qd = _norm(t[2] * lt[3], t[3] * lt[2])
        if track:
            cofs[hit].append((qe, qn, qd))
        scaled = mul_term(b, qe, -qn, qd)
        work = _merge(work[wi:], scaled, weights, nelim, possplit)
        wi = 0
    if track:
        cofs = [canon([(0, e, n, d) for e, n, d in c], (0,), nelim, 0) for c in cofs]
    return tuple(out), cofs


def spoly(f, g, tuple weights, long nelim, long possplit):
    """S-polynomial of two polys whose leading terms share a position."""
    cdef tuple tf = f[0], tg = g[0]
    if tf[0] != tg[0]:
        raise ValueError("spoly requires leading terms in the same position")
    lcm = expo_lcm(<tuple> tf[1], <tuple> tg[1])
    a = mul_term(f, expo_sub(lcm, <tuple> tf[1]), tf[3], tf[2])
    b = mul_term(g, expo_sub(lcm, <tuple> tg[1]), tg[3], tg[2])
    return sub(a, b, weights, nelim, possplit)
