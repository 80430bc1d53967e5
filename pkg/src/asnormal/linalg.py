"""Dense matrices over GF(p^k): rank, kernel dimension, column-space solving.

Entries are int codes of field elements (see ``gf``).  Elimination runs in a
compiled kernel when the ``_kernels`` extension is importable and in a numpy
fallback otherwise; set ``ASNORMAL_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import FieldMismatch
from .gf import TABLE_CAP, FieldElement, FieldSpec

from . import _kernels_py

if os.environ.get("ASNORMAL_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"


def _storage_dtype(q: int):
    if q <= 1 << 8:
        return np.uint8
    if q <= 1 << 16:
        return np.uint16
    return np.int64


class GfMatrix:
    """rows x cols matrix of field codes. Treated as immutable."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data: np.ndarray):
        data = np.asarray(data)
        if data.ndim != 2:
            raise ValueError("matrix data must be 2-dimensional")
        if data.size and (data.min() < 0 or data.max() >= field.q):
            raise ValueError(f"entries out of range for GF({field.q})")
        self.field = field
        self.data = data.astype(_storage_dtype(field.q), copy=False)
        self.data.flags.writeable = False

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "GfMatrix":
        return cls(field, np.zeros((rows, cols), dtype=_storage_dtype(field.q)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "GfMatrix":
        return cls(field, np.eye(n, dtype=_storage_dtype(field.q)))

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> "GfMatrix":
        codes = [[_code(field, x) for x in row] for row in rows]
        ncols = len(codes[0]) if codes else 0
        return cls(field, np.array(codes, dtype=np.int64).reshape(len(codes), ncols))

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, columns: Iterable[Mapping[int, int]]) -> "GfMatrix":
        """Build from sparse columns given as ``{row: code}`` dicts."""
        columns = list(columns)
        data = np.zeros((nrows, len(columns)), dtype=_storage_dtype(field.q))
        for c, col in enumerate(columns):
            for r, v in col.items():
                data[r, c] = v
        return cls(field, data)

    def entry(self, r: int, c: int) -> FieldElement:
        return self.field.element(int(self.data[r, c]))

    def transpose(self) -> "GfMatrix":
        return GfMatrix(self.field, self.data.T.copy())

    def column(self, c: int) -> list[int]:
        return [int(v) for v in self.data[:, c]]

    def matvec(self, vec: Sequence) -> list[FieldElement]:
        F = self.field
        codes = [_code(F, x) for x in vec]
        if len(codes) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for r in range(self.rows):
            acc = 0
            for c, x in enumerate(codes):
                v = int(self.data[r, c])
                if v and x:
                    acc = F.add(acc, F.mul(v, x))
            out.append(F.element(acc))
        return out

    def __eq__(self, other):
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.data, other.data)

    def __repr__(self):
        return f"GfMatrix(GF({self.field.q}), {self.rows}x{self.cols})"


def _code(field: FieldSpec, x) -> int:
    if isinstance(x, FieldElement):
        if x.spec != field:
            raise FieldMismatch(f"{x.spec!r} vs {field!r}")
        return x.value
    x = int(x)
    if not 0 <= x < field.q:
        raise ValueError(f"code {x} out of range for GF({field.q})")
    return x


def _echelon(field: FieldSpec, a: np.ndarray, reduced: bool, backend: Optional[str]) -> list[int]:
    """Run the elimination kernel on the int64 array ``a`` in place."""
    kern = BACKENDS[backend or DEFAULT_BACKEND]
    if a.size == 0:
        return []
    # Table lookups beat `%` in compiled loops; numpy is faster with arithmetic.
    use_tables = field.k > 1 or (getattr(kern, "PREFERS_TABLES", False) and field.q <= TABLE_CAP)
    if not use_tables:
        return kern.echelon_prime(a, field.p, reduced)
    t = field.tables()
    return kern.echelon_table(a, t.add, t.mul, t.neg, t.inv, reduced)


def _peel_singletons(nz: np.ndarray) -> tuple[int, np.ndarray, np.ndarray]:
    """Peel off columns with a single nonzero entry.

    Such a column is a multiple of a unit vector e_r, so e_r lies in the
    column space and row r can be dropped from every other column.  Returns
    the number of rows covered and the surviving row/column masks.
    """
    row_alive = np.ones(nz.shape[0], dtype=bool)
    col_alive = nz.any(axis=0)
    covered = 0
    while True:
        sub = nz[row_alive][:, col_alive]
        counts = sub.sum(axis=0)
        single = counts == 1
        if not single.any():
            col_idx = np.flatnonzero(col_alive)
            col_alive[col_idx[counts == 0]] = False
            break
        row_idx = np.flatnonzero(row_alive)
        hit = np.unique(np.argmax(sub[:, single], axis=0))
        covered += hit.size
        row_alive[row_idx[hit]] = False
        col_idx = np.flatnonzero(col_alive)
        col_alive[col_idx[single | (counts == 0)]] = False
    return covered, row_alive, col_alive


def rank(M: GfMatrix, backend: Optional[str] = None, peel: bool = True) -> int:
    """Exact rank.

    With ``peel`` (the default), unit-vector columns are taken as pivots first
    and only the remaining core is eliminated.  The rank is the same either
    way; peeling just avoids eliminating the many single-term products that
    multiplication matrices consist of.
    """
    if M.rows == 0 or M.cols == 0:
        return 0
    if peel:
        covered, rows, cols = _peel_singletons(M.data != 0)
        core = M.data[rows][:, cols]
    else:
        covered, core = 0, M.data
    if core.size == 0:
        return covered
    a = np.ascontiguousarray(core, dtype=np.int64)
    return covered + len(_echelon(M.field, a, False, backend))


def kernel_dim(M: GfMatrix, backend: Optional[str] = None) -> int:
    return M.cols - rank(M, backend)


def is_surjective_onto_rows(M: GfMatrix, backend: Optional[str] = None) -> bool:
    return rank(M, backend) == M.rows


def solve_in_column_space(M: GfMatrix, target: Sequence, backend: Optional[str] = None) -> Optional[list[FieldElement]]:
    """A vector c with M c = target, or None.

    The solution is read off the reduced echelon form of ``[M | target]``
    with every free variable set to zero.
    """
    F = M.field
    t = [_code(F, x) for x in target]
    if len(t) != M.rows:
        raise ValueError("target length must equal the row count")
    a = np.zeros((M.rows, M.cols + 1), dtype=np.int64)
    a[:, : M.cols] = M.data
    a[:, M.cols] = t
    pivots = _echelon(F, a, True, backend)
    if pivots and pivots[-1] == M.cols:
        return None
    sol = [0] * M.cols
    for r, col in enumerate(pivots):
        sol[col] = int(a[r, M.cols])
    return [F.element(v) for v in sol]
