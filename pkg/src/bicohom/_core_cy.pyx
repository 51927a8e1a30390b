# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Integer matrix kernels, compiled twin of _core_py.

Same functions, same contracts, same algorithms.  Entries remain Python ints
(arbitrary precision is part of the contract); the compilation only removes
interpreter overhead from the loop and index handling, which is where the
time goes on the small dense matrices this package works with.
"""

from math import gcd as _gcd
from itertools import combinations as _combinations

BACKEND = "cython"


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g == a*x + b*y."""
    # Maintain the invariants:
    #   x * a + y * b == r
    #   u * a + v * b == s
    r, s = a, b
    x, y = 1, 0
    u, v = 0, 1
    while s:
        q = r // s
        r, s = s, r - q * s
        x, u = u, x - q * u
        y, v = v, y - q * v
    if r < 0:
        return -r, -x, -y
    return r, x, y


def identity(Py_ssize_t n):
    cdef Py_ssize_t i, j
    cdef list out = []
    cdef list row
    for i in range(n):
        row = [0] * n
        row[i] = 1
        out.append(row)
    return out


def mat_mul(list a, list b):
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t inner = len(<list>a[0]) if m else 0
    if m and inner != len(b):
        raise ValueError("dimension mismatch in mat_mul")
    cdef Py_ssize_t ncols = len(<list>b[0]) if len(b) else 0
    cdef Py_ssize_t i, t, j
    cdef list out = [], ai, oi, bt
    cdef object e, btj
    for i in range(m):
        out.append([0] * ncols)
    for i in range(m):
        ai = <list>a[i]
        oi = <list>out[i]
        for t in range(inner):
            e = ai[t]
            if e:
                bt = <list>b[t]
                for j in range(ncols):
                    btj = bt[j]
                    if btj:
                        oi[j] = oi[j] + e * btj
    return out


cdef void _swap_cols(list mat, Py_ssize_t j, Py_ssize_t k):
    cdef list row
    for row in mat:
        row[j], row[k] = row[k], row[j]


def snf_transforms(list a):
    """Smith normal form with all four transforms; see _core_py for contract."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(<list>a[0]) if m else 0
    cdef list d = [list(row) for row in a]
    cdef list u = identity(m)
    cdef list uinv = identity(m)
    cdef list v = identity(n)
    cdef list vinv = identity(n)
    cdef Py_ssize_t kmax = m if m < n else n
    cdef Py_ssize_t t = 0, i, j, pr, pc, offender
    cdef list di, row, dt, ut, ui, vt, vj
    cdef object e, best, p, q, g, x, y, pg, eg, aj, bj, at, bi, ac

    while t < kmax:
        best = 0
        pr = -1
        pc = -1
        for i in range(t, m):
            di = <list>d[i]
            for j in range(t, n):
                e = di[j]
                if e:
                    if e < 0:
                        e = -e
                    if best == 0 or e < best:
                        best = e
                        pr = i
                        pc = j
                        if best == 1:
                            break
            if best == 1:
                break
        if pr < 0:
            break
        if pr != t:
            d[pr], d[t] = d[t], d[pr]
            u[pr], u[t] = u[t], u[pr]
            for row in uinv:
                row[pr], row[t] = row[t], row[pr]
        if pc != t:
            _swap_cols(d, pc, t)
            _swap_cols(v, pc, t)
            vinv[pc], vinv[t] = vinv[t], vinv[pc]
        while True:
            for i in range(t + 1, m):
                e = (<list>d[i])[t]
                if e:
                    p = (<list>d[t])[t]
                    if e % p == 0:
                        q = -(e // p)
                        dt = <list>d[t]
                        di = <list>d[i]
                        for j in range(n):
                            if dt[j]:
                                di[j] = di[j] + q * dt[j]
                        ut = <list>u[t]
                        ui = <list>u[i]
                        for j in range(m):
                            if ut[j]:
                                ui[j] = ui[j] + q * ut[j]
                        for row in uinv:
                            if row[i]:
                                row[t] = row[t] - q * row[i]
                    else:
                        g, x, y = xgcd(p, e)
                        pg = p // g
                        eg = e // g
                        dt = <list>d[t]
                        di = <list>d[i]
                        for j in range(n):
                            aj = dt[j]
                            bj = di[j]
                            dt[j] = x * aj + y * bj
                            di[j] = pg * bj - eg * aj
                        ut = <list>u[t]
                        ui = <list>u[i]
                        for j in range(m):
                            aj = ut[j]
                            bj = ui[j]
                            ut[j] = x * aj + y * bj
                            ui[j] = pg * bj - eg * aj
                        for row in uinv:
                            at = row[t]
                            bi = row[i]
                            row[t] = pg * at + eg * bi
                            row[i] = x * bi - y * at
            for j in range(t + 1, n):
                e = (<list>d[t])[j]
                if e:
                    p = (<list>d[t])[t]
                    if e % p == 0:
                        q = -(e // p)
                        for row in d:
                            if row[t]:
                                row[j] = row[j] + q * row[t]
                        for row in v:
                            if row[t]:
                                row[j] = row[j] + q * row[t]
                        vj = <list>vinv[j]
                        vt = <list>vinv[t]
                        for i in range(n):
                            if vj[i]:
                                vt[i] = vt[i] - q * vj[i]
                    else:
                        g, x, y = xgcd(p, e)
                        pg = p // g
                        eg = e // g
                        for row in d:
                            at = row[t]
                            bj = row[j]
                            row[t] = x * at + y * bj
                            row[j] = pg * bj - eg * at
                        for row in v:
                            at = row[t]
                            bj = row[j]
                            row[t] = x * at + y * bj
                            row[j] = pg * bj - eg * at
                        vt = <list>vinv[t]
                        vj = <list>vinv[j]
                        for i in range(n):
                            at = vt[i]
                            bj = vj[i]
                            vt[i] = pg * at + eg * bj
                            vj[i] = x * bj - y * at
            e = 0
            for i in range(t + 1, m):
                if (<list>d[i])[t]:
                    e = 1
                    break
            if e:
                continue
            for j in range(t + 1, n):
                if (<list>d[t])[j]:
                    e = 1
                    break
            if e:
                continue
            p = (<list>d[t])[t]
            offender = -1
            for i in range(t + 1, m):
                di = <list>d[i]
                for j in range(t + 1, n):
                    if di[j] % p:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            # pull the offending row up so the next pass shrinks the pivot
            dt = <list>d[t]
            di = <list>d[offender]
            for j in range(n):
                if di[j]:
                    dt[j] = dt[j] + di[j]
            ut = <list>u[t]
            ui = <list>u[offender]
            for j in range(m):
                if ui[j]:
                    ut[j] = ut[j] + ui[j]
            for row in uinv:
                if row[t]:
                    row[offender] = row[offender] - row[t]
        if (<list>d[t])[t] < 0:
            d[t] = [-e for e in <list>d[t]]
            u[t] = [-e for e in <list>u[t]]
            for row in uinv:
                row[t] = -row[t]
        t += 1
    return u, d, v, uinv, vinv


def col_echelon(list a, bint want_transform=True):
    """Column echelon form by unimodular column ops; see _core_py for contract."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(<list>a[0]) if m else 0
    cdef list h = [list(row) for row in a]
    cdef list w = identity(n) if want_transform else None
    cdef list pivots = []
    cdef Py_ssize_t c = 0, r, j, jp
    cdef list row
    cdef object p, e, g, x, y, pg, eg, ac, bj, q

    for r in range(m):
        if c == n:
            break
        jp = -1
        for j in range(c, n):
            if (<list>h[r])[j]:
                jp = j
                break
        if jp < 0:
            continue
        if jp != c:
            _swap_cols(h, jp, c)
            if w is not None:
                _swap_cols(w, jp, c)
        for j in range(c + 1, n):
            e = (<list>h[r])[j]
            if e:
                p = (<list>h[r])[c]
                if e % p == 0:
                    q = -(e // p)
                    for row in h:
                        if row[c]:
                            row[j] = row[j] + q * row[c]
                    if w is not None:
                        for row in w:
                            if row[c]:
                                row[j] = row[j] + q * row[c]
                else:
                    g, x, y = xgcd(p, e)
                    pg = p // g
                    eg = e // g
                    for row in h:
                        ac = row[c]
                        bj = row[j]
                        row[c] = x * ac + y * bj
                        row[j] = pg * bj - eg * ac
                    if w is not None:
                        for row in w:
                            ac = row[c]
                            bj = row[j]
                            row[c] = x * ac + y * bj
                            row[j] = pg * bj - eg * ac
        if (<list>h[r])[c] < 0:
            for row in h:
                row[c] = -row[c]
            if w is not None:
                for row in w:
                    row[c] = -row[c]
        pivots.append((r, c))
        c += 1
    return h, w, pivots


def reduce_columns(list h, list pivots, vec):
    """Canonical residue of vec modulo the column lattice of echelon h."""
    cdef Py_ssize_t m = len(h)
    cdef list v = list(vec)
    cdef list coeffs = [0] * len(pivots)
    cdef Py_ssize_t k, r, c, i
    cdef object p, q, hic
    for k in range(len(pivots)):
        r, c = pivots[k]
        p = (<list>h[r])[c]
        q = v[r] // p
        if q:
            coeffs[k] = q
            for i in range(r, m):
                hic = (<list>h[i])[c]
                if hic:
                    v[i] = v[i] - q * hic
    return v, coeffs


def det(list a):
    """Exact determinant of a square integer matrix (Bareiss)."""
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return 1
    if len(<list>a[0]) != n:
        raise ValueError("det of a non-square matrix")
    cdef list mat = [list(row) for row in a]
    cdef Py_ssize_t k, i, j
    cdef int sign = 1
    cdef object prev = 1, pkk, mik
    cdef list mi, mk
    for k in range(n - 1):
        if (<list>mat[k])[k] == 0:
            for i in range(k + 1, n):
                if (<list>mat[i])[k]:
                    mat[k], mat[i] = mat[i], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pkk = (<list>mat[k])[k]
        for i in range(k + 1, n):
            mi = <list>mat[i]
            mk = <list>mat[k]
            mik = mi[k]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pkk - mik * mk[j]) // prev
            mi[k] = 0
        prev = pkk
    if sign > 0:
        return (<list>mat[n - 1])[n - 1]
    return -(<list>mat[n - 1])[n - 1]


def minor_gcds(list a):
    """gcd of all k-by-k minors for k = 1 .. min(rows, cols)."""
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t n = len(<list>a[0]) if m else 0
    cdef Py_ssize_t kmax = m if m < n else n
    cdef list out = []
    cdef dict prev = {((), ()): 1}, cur
    cdef Py_ssize_t k, t
    cdef object g, e, minor, total
    cdef tuple rows, cols, sub
    cdef list ar
    for k in range(1, kmax + 1):
        cur = {}
        g = 0
        for rows in _combinations(range(m), k):
            sub = rows[:-1]
            ar = <list>a[rows[k - 1]]
            for cols in _combinations(range(n), k):
                total = 0
                for t in range(k):
                    e = ar[cols[t]]
                    if e:
                        minor = prev[(sub, cols[:t] + cols[t + 1:])]
                        if minor:
                            if (k - 1 + t) % 2:
                                total = total - e * minor
                            else:
                                total = total + e * minor
                cur[(rows, cols)] = total
                if total:
                    g = _gcd(g, total)
        out.append(g)
        if g == 0:
            out.extend([0] * (kmax - k))
            return out
        prev = cur
    return out
