# cython: language_level=3
"""Compiled int64 versions of the DP kernels.

Mirror images of _kernels_py; the dispatch layer guarantees every
intermediate value fits in a signed 64-bit integer before calling in
here, and identical tie-breaking keeps reconstructed sets equal to the
pure Python ones.
"""

from libc.stdlib cimport free, malloc


def min_cover_solve(r, obj, long long need):
    cdef Py_ssize_t n = len(r)
    cdef Py_ssize_t i, k
    cdef long long s, s2, ri, oi, take, skip, INF
    if need <= 0:
        return 0, ()
    cdef long long *rc = <long long *> malloc(n * sizeof(long long))
    cdef long long *oc = <long long *> malloc(n * sizeof(long long))
    # full table kept for reconstruction: (n+1) rows of (need+1) cells
    cdef long long *f = <long long *> malloc((n + 1) * (need + 1) * sizeof(long long))
    if rc == NULL or oc == NULL or f == NULL:
        free(rc); free(oc); free(f)
        raise MemoryError
    INF = 1
    for i in range(n):
        rc[i] = r[i]
        oc[i] = obj[i]
        INF += oc[i]
    f[n * (need + 1)] = 0
    for s in range(1, need + 1):
        f[n * (need + 1) + s] = INF
    for i in range(n - 1, -1, -1):
        ri = rc[i]
        oi = oc[i]
        f[i * (need + 1)] = 0
        for s in range(1, need + 1):
            skip = f[(i + 1) * (need + 1) + s]
            s2 = s - ri if s > ri else 0
            take = oi + f[(i + 1) * (need + 1) + s2]
            f[i * (need + 1) + s] = take if take < skip else skip
    if f[need] >= INF:
        free(rc); free(oc); free(f)
        return None, ()
    chosen = []
    s = need
    for i in range(n):
        if s == 0:
            break
        s2 = s - rc[i] if s > rc[i] else 0
        if oc[i] + f[(i + 1) * (need + 1) + s2] == f[i * (need + 1) + s]:
            chosen.append(i)
            s = s2
    value = f[need]
    free(rc); free(oc); free(f)
    return value, tuple(chosen)


def max_profit_solve(cost, r, long long budget, long long target):
    cdef Py_ssize_t n = len(cost)
    cdef Py_ssize_t i
    cdef long long b, ci, ri, take, t
    cdef long long *cc = <long long *> malloc(n * sizeof(long long))
    cdef long long *rc = <long long *> malloc(n * sizeof(long long))
    cdef long long *g = <long long *> malloc((n + 1) * (budget + 1) * sizeof(long long))
    if cc == NULL or rc == NULL or g == NULL:
        free(cc); free(rc); free(g)
        raise MemoryError
    for i in range(n):
        cc[i] = cost[i]
        rc[i] = r[i]
    for b in range(budget + 1):
        g[n * (budget + 1) + b] = 0
    for i in range(n - 1, -1, -1):
        ci = cc[i]
        ri = rc[i]
        for b in range(budget + 1):
            take = g[(i + 1) * (budget + 1) + b]
            if ci <= b:
                t = ri + g[(i + 1) * (budget + 1) + b - ci]
                if t > take:
                    take = t
            g[i * (budget + 1) + b] = take
    minreach = None
    for b in range(budget + 1):
        if g[b] >= target:
            minreach = b
            break
    if minreach is None:
        free(cc); free(rc); free(g)
        return None, ()
    chosen = []
    b = minreach
    t = target
    for i in range(n):
        if t <= 0:
            break
        ci = cc[i]
        if ci <= b and g[(i + 1) * (budget + 1) + b - ci] >= t - rc[i]:
            chosen.append(i)
            b -= ci
            t -= rc[i]
    free(cc); free(rc); free(g)
    return minreach, tuple(chosen)


def kc_best_subset(r, a, long long X, long long q):
    cdef Py_ssize_t n = len(r)
    cdef Py_ssize_t i
    cdef unsigned long long m, mm, low, total, best_mask, full
    cdef long long bq, acc, ri, best
    cdef bint have = 0
    total = 1ULL << n
    cdef long long *rc = <long long *> malloc(n * sizeof(long long))
    cdef long long *ac = <long long *> malloc(n * sizeof(long long))
    cdef long long *sum_r = <long long *> malloc(total * sizeof(long long))
    if rc == NULL or ac == NULL or sum_r == NULL:
        free(rc); free(ac); free(sum_r)
        raise MemoryError
    for i in range(n):
        rc[i] = r[i]
        ac[i] = a[i]
    sum_r[0] = 0
    for m in range(1, total):
        low = m & (~m + 1)
        i = 0
        while (low >> i) != 1:
            i += 1
        sum_r[m] = sum_r[m ^ low] + rc[i]
    best = 0
    best_mask = 0
    full = total - 1
    for m in range(total):
        bq = q - sum_r[m]
        if bq <= 0:
            continue
        acc = bq * X
        mm = full ^ m
        while mm:
            low = mm & (~mm + 1)
            i = 0
            while (low >> i) != 1:
                i += 1
            ri = rc[i]
            acc -= (ri if ri < bq else bq) * ac[i]
            mm ^= low
        if (not have) or acc > best:
            have = 1
            best = acc
            best_mask = m
    free(rc); free(ac); free(sum_r)
    return best, best_mask
