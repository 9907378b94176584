# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.

Same contracts as qtorb._core_py; all arithmetic runs in C int64.  The
dispatcher only routes work here after proving that every intermediate
fits in 64 bits, so no overflow checks are needed in the loops.
"""

from libc.stdlib cimport free, malloc


cdef long long* _alloc(Py_ssize_t count) except NULL:
    cdef long long* buf = <long long*> malloc(count * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    return buf


cdef void _fill_vec(long long* buf, object seq):
    cdef Py_ssize_t i
    for i in range(len(seq)):
        buf[i] = seq[i]


cdef void _fill_mat(long long* buf, object rows, Py_ssize_t ncols):
    cdef Py_ssize_t i, j
    for i in range(len(rows)):
        row = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = row[j]


def count_in_dilate(lo, hi, vt, adj, long long det_g, long long level, vmat):
    cdef Py_ssize_t n = len(lo)
    cdef Py_ssize_t d = len(vt)
    cdef long long* clo = _alloc(n)
    cdef long long* chi = _alloc(n)
    cdef long long* cx = _alloc(n)
    cdef long long* cvt = _alloc(d * n)
    cdef long long* cadj = _alloc(d * d)
    cdef long long* cv = _alloc(n * d)
    cdef long long* w = _alloc(d)
    cdef long long* c = _alloc(d)
    cdef long long count = 0, acc, total
    cdef Py_ssize_t i, j
    cdef bint ok
    try:
        _fill_vec(clo, lo)
        _fill_vec(chi, hi)
        _fill_mat(cvt, vt, n)
        _fill_mat(cadj, adj, d)
        _fill_mat(cv, vmat, d)
        for i in range(n):
            cx[i] = clo[i]
        while True:
            for i in range(d):
                acc = 0
                for j in range(n):
                    acc += cvt[i * n + j] * cx[j]
                w[i] = acc
            ok = True
            total = 0
            for i in range(d):
                acc = 0
                for j in range(d):
                    acc += cadj[i * d + j] * w[j]
                if acc < 0:
                    ok = False
                    break
                c[i] = acc
                total += acc
            if ok and total == level:
                for i in range(n):
                    acc = 0
                    for j in range(d):
                        acc += cv[i * d + j] * c[j]
                    if acc != det_g * cx[i]:
                        ok = False
                        break
                if ok:
                    count += 1
            i = 0
            while i < n and cx[i] == chi[i]:
                cx[i] = clo[i]
                i += 1
            if i == n:
                break
            cx[i] += 1
        return count
    finally:
        free(clo)
        free(chi)
        free(cx)
        free(cvt)
        free(cadj)
        free(cv)
        free(w)
        free(c)


def box_solutions(cols_mod, long long r):
    cdef Py_ssize_t k = len(cols_mod)
    cdef Py_ssize_t n = len(cols_mod[0]) if k else 0
    cdef long long* cols = _alloc(k * n if k else 1)
    cdef long long* t = _alloc(k if k else 1)
    cdef long long* total = _alloc(n if n else 1)
    cdef Py_ssize_t i, j
    cdef bint zero
    sols = []
    try:
        _fill_mat(cols, cols_mod, n)
        for i in range(k):
            t[i] = 0
        for j in range(n):
            total[j] = 0
        zero = True
        for j in range(n):
            if total[j] != 0:
                zero = False
                break
        if zero:
            sols.append(tuple([t[i] for i in range(k)]))
        while True:
            i = 0
            while i < k and t[i] == r - 1:
                t[i] = 0
                for j in range(n):
                    total[j] = (total[j] + cols[i * n + j]) % r
                i += 1
            if i == k:
                break
            t[i] += 1
            for j in range(n):
                total[j] = (total[j] + cols[i * n + j]) % r
            zero = True
            for j in range(n):
                if total[j] != 0:
                    zero = False
                    break
            if zero:
                sols.append(tuple([t[i] for i in range(k)]))
        return sols
    finally:
        free(cols)
        free(t)
        free(total)
