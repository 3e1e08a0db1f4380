# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the functions in ``_pykernels``.

Hyperplane masks must fit in 64 bits; the dispatcher in ``kernels`` checks this.
"""
from array import array

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc


def count_complement(forms, int n, long q):
    cdef int nforms = len(forms)
    if nforms == 0:
        return q ** n
    cdef long *coef = <long *> malloc(nforms * n * sizeof(long))
    cdef long *inv_last = <long *> malloc(nforms * sizeof(long))
    cdef char *root_seen = <char *> calloc(q, sizeof(char))
    cdef long *roots = <long *> malloc(nforms * sizeof(long))
    cdef long *prefix = <long *> calloc(n, sizeof(long))
    if coef == NULL or inv_last == NULL or root_seen == NULL or roots == NULL or prefix == NULL:
        free(coef); free(inv_last); free(root_seen); free(roots); free(prefix)
        raise MemoryError()
    cdef int f, i, nroots, dead, pos
    cdef long s, c
    cdef int64_t total = 0
    try:
        for f in range(nforms):
            row = forms[f]
            for i in range(n):
                coef[f * n + i] = (<long> row[i]) % q
            c = coef[f * n + n - 1]
            inv_last[f] = pow(c, q - 2, q) if c else 0
        while True:
            nroots = 0
            dead = 0
            for f in range(nforms):
                s = 0
                for i in range(n - 1):
                    s = (s + coef[f * n + i] * prefix[i]) % q
                if inv_last[f]:
                    c = ((q - s) % q * inv_last[f]) % q
                    if not root_seen[c]:
                        root_seen[c] = 1
                        roots[nroots] = c
                        nroots += 1
                elif s == 0:
                    dead = 1
                    break
            if not dead:
                total += q - nroots
            for i in range(nroots):
                root_seen[roots[i]] = 0
            # odometer over the first n - 1 coordinates
            pos = n - 2
            while pos >= 0:
                prefix[pos] += 1
                if prefix[pos] < q:
                    break
                prefix[pos] = 0
                pos -= 1
            if pos < 0:
                break
    finally:
        free(coef); free(inv_last); free(root_seen); free(roots); free(prefix)
    return total


def join_table(masks):
    cdef Py_ssize_t nf = len(masks)
    cdef uint64_t *m = <uint64_t *> malloc(max(nf, 1) * sizeof(uint64_t))
    if m == NULL:
        raise MemoryError()
    cdef Py_ssize_t a, b, c
    cdef uint64_t u
    out = array("i", bytes(4 * nf * nf))
    cdef int[:] t = out
    try:
        for a in range(nf):
            m[a] = <uint64_t> masks[a]
        for a in range(nf):
            for b in range(a, nf):
                u = m[a] | m[b]
                c = b
                while c < nf and (m[c] & u) != u:
                    c += 1
                if c == nf:
                    raise ValueError("masks do not form a lattice in rank order")
                t[a * nf + b] = <int> c
                t[b * nf + a] = <int> c
    finally:
        free(m)
    return out


def join_map_is_isomorphism(join, int nflats, masks, factors, int target, Py_ssize_t target_size, int bottom):
    cdef int k = len(factors)
    cdef Py_ssize_t size = 1
    for fac in factors:
        size *= len(fac)
    if size != target_size:
        return False
    cdef const int[:] jt = join
    cdef uint64_t *m = <uint64_t *> malloc(max(nflats, 1) * sizeof(uint64_t))
    cdef int *lens = <int *> malloc(max(k, 1) * sizeof(int))
    cdef int *offs = <int *> malloc(max(k, 1) * sizeof(int))
    cdef int *flat_f = NULL
    cdef int *tup = <int *> malloc(max(size * k, 1) * sizeof(int))
    cdef uint64_t *img = <uint64_t *> malloc(max(size, 1) * sizeof(uint64_t))
    cdef char *seen = <char *> calloc(max(nflats, 1), sizeof(char))
    cdef int *idx = <int *> calloc(max(k, 1), sizeof(int))
    cdef Py_ssize_t total_len = 0, p, i, j
    cdef int d, acc, y, pos
    cdef uint64_t mt, mi
    cdef bint ok = True
    if m == NULL or lens == NULL or offs == NULL or tup == NULL or img == NULL or seen == NULL or idx == NULL:
        free(m); free(lens); free(offs); free(tup); free(img); free(seen); free(idx)
        raise MemoryError()
    try:
        for i in range(nflats):
            m[i] = <uint64_t> masks[i]
        for d in range(k):
            lens[d] = len(factors[d])
            offs[d] = total_len
            total_len += lens[d]
        flat_f = <int *> malloc(max(total_len, 1) * sizeof(int))
        if flat_f == NULL:
            raise MemoryError()
        for d in range(k):
            fac = factors[d]
            for i in range(lens[d]):
                flat_f[offs[d] + i] = fac[i]
        mt = m[target]
        for p in range(size):
            acc = bottom
            for d in range(k):
                y = flat_f[offs[d] + idx[d]]
                tup[p * k + d] = y
                acc = jt[acc * nflats + y]
            if seen[acc] or (m[acc] & ~mt):
                ok = False
                break
            seen[acc] = 1
            img[p] = m[acc]
            pos = k - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] < lens[pos]:
                    break
                idx[pos] = 0
                pos -= 1
        if ok:
            for i in range(size):
                mi = img[i]
                for j in range(size):
                    if i != j and (mi & ~img[j]) == 0:
                        for d in range(k):
                            if m[tup[i * k + d]] & ~m[tup[j * k + d]]:
                                ok = False
                                break
                        if not ok:
                            break
                if not ok:
                    break
    finally:
        free(m); free(lens); free(offs); free(flat_f); free(tup); free(img); free(seen); free(idx)
    return ok
