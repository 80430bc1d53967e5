"""Pure-Python (numpy) Gaussian elimination kernels.

Same contract as the compiled ``_kernels`` module: the int64 matrix ``a`` is
brought to row echelon form in place (reduced form when ``reduced``), pivot
rows are scaled to 1, and the list of pivot columns is returned.  Pivots are
the first nonzero entry scanning down each column, columns left to right.
"""

import numpy as np


def echelon_prime(a, p, reduced=False):
    nrows, ncols = a.shape
    pivots = []
    pr = 0
    for col in range(ncols):
        if pr == nrows:
            break
        nz = np.flatnonzero(a[pr:, col])
        if nz.size == 0:
            continue
        r = pr + int(nz[0])
        if r != pr:
            a[[pr, r]] = a[[r, pr]]
        piv = int(a[pr, col])
        if piv != 1:
            a[pr, col:] = a[pr, col:] * pow(piv, p - 2, p) % p
        if reduced:
            targets = np.flatnonzero(a[:, col])
            targets = targets[targets != pr]
        else:
            targets = pr + 1 + np.flatnonzero(a[pr + 1:, col])
        if targets.size:
            row = a[pr, col:]
            f = a[targets, col][:, None]
            a[targets, col:] = (a[targets, col:] - f * row) % p
        pivots.append(col)
        pr += 1
    return pivots


def echelon_table(a, add, mul, neg, inv, reduced=False):
    nrows, ncols = a.shape
    pivots = []
    pr = 0
    for col in range(ncols):
        if pr == nrows:
            break
        nz = np.flatnonzero(a[pr:, col])
        if nz.size == 0:
            continue
        r = pr + int(nz[0])
        if r != pr:
            a[[pr, r]] = a[[r, pr]]
        piv = int(a[pr, col])
        if piv != 1:
            a[pr, col:] = mul[inv[piv], a[pr, col:]]
        if reduced:
            targets = np.flatnonzero(a[:, col])
            targets = targets[targets != pr]
        else:
            targets = pr + 1 + np.flatnonzero(a[pr + 1:, col])
        if targets.size:
            row = a[pr, col:]
            f = neg[a[targets, col]][:, None]
            a[targets, col:] = add[a[targets, col:], mul[f, row[None, :]]]
        pivots.append(col)
        pr += 1
    return pivots
