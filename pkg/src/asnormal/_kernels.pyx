# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gaussian elimination kernels; see _kernels_py for the contract."""

ctypedef long long i64

PREFERS_TABLES = True


cdef i64 _inv_mod(i64 a, i64 p):
    cdef i64 result = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


cdef void _swap(i64[:, ::1] a, Py_ssize_t r1, Py_ssize_t r2, Py_ssize_t start):
    cdef Py_ssize_t c
    cdef i64 tmp
    for c in range(start, a.shape[1]):
        tmp = a[r1, c]
        a[r1, c] = a[r2, c]
        a[r2, c] = tmp


def echelon_prime(i64[:, ::1] a, i64 p, bint reduced=False):
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t pr = 0, col, r, c, start
    cdef i64 piv, f
    pivots = []
    for col in range(ncols):
        if pr == nrows:
            break
        r = pr
        while r < nrows and a[r, col] == 0:
            r += 1
        if r == nrows:
            continue
        if r != pr:
            _swap(a, pr, r, col)
        piv = a[pr, col]
        if piv != 1:
            f = _inv_mod(piv, p)
            for c in range(col, ncols):
                a[pr, c] = a[pr, c] * f % p
        start = 0 if reduced else pr + 1
        for r in range(start, nrows):
            if r == pr:
                continue
            f = a[r, col]
            if f == 0:
                continue
            f = p - f
            for c in range(col, ncols):
                if a[pr, c] != 0:
                    a[r, c] = (a[r, c] + f * a[pr, c]) % p
        pivots.append(col)
        pr += 1
    return pivots


def echelon_table(i64[:, ::1] a, i64[:, ::1] add, i64[:, ::1] mul,
                  i64[::1] neg, i64[::1] inv, bint reduced=False):
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t pr = 0, col, r, c, start
    cdef i64 piv, f
    pivots = []
    for col in range(ncols):
        if pr == nrows:
            break
        r = pr
        while r < nrows and a[r, col] == 0:
            r += 1
        if r == nrows:
            continue
        if r != pr:
            _swap(a, pr, r, col)
        piv = a[pr, col]
        if piv != 1:
            f = inv[piv]
            for c in range(col, ncols):
                a[pr, c] = mul[f, a[pr, c]]
        start = 0 if reduced else pr + 1
        for r in range(start, nrows):
            if r == pr:
                continue
            f = a[r, col]
            if f == 0:
                continue
            f = neg[f]
            for c in range(col, ncols):
                if a[pr, c] != 0:
                    a[r, c] = add[a[r, c], mul[f, a[pr, c]]]
        pivots.append(col)
        pr += 1
    return pivots
