"""Exact dense linear algebra: echelon kernels and minimal polynomials.

Kernel matrices follow the ``matker`` convention: the number of trailing
zeros of column j is strictly decreasing in j, and we additionally scale
each column so that its last nonzero entry is 1.  With that convention
the leftmost kernel column is the unique normalized kernel vector whose
last nonzero coordinate is as early as possible.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ReducibleModulusError
from .fields import Field, FieldScalar, PrimeField
from .poly import Polynomial

# Gauss-Jordan over F_p switches to int64 numpy rows above this many
# entries, provided (p-1)^2 fits comfortably in an int64.
_NUMPY_MIN_ENTRIES = 400
_NUMPY_MAX_P = 2**31


class Matrix:
    """Row-major dense matrix of raw field values."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows, ncols=None):
        self.field = field
        self.rows = [[field.convert(c) for c in row] for row in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix rows")
        self.ncols = ncols

    @classmethod
    def from_raw(cls, field, rows, ncols):
        obj = cls.__new__(cls)
        obj.field = field
        obj.rows = rows
        obj.nrows = len(rows)
        obj.ncols = ncols
        return obj

    @classmethod
    def from_columns(cls, field, columns, nrows):
        rows = [[col[i] for col in columns] for i in range(nrows)]
        return cls.from_raw(field, rows, len(columns))

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return FieldScalar(self.field, self.rows[i][j])

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        K = self.field
        add, mul = K.add, K.mul
        out = []
        for row in self.rows:
            new = []
            for j in range(other.ncols):
                acc = K.zero
                for k, a in enumerate(row):
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = add(acc, mul(a, b))
                new.append(acc)
            out.append(new)
        return Matrix.from_raw(K, out, other.ncols)

    def is_zero(self):
        return not any(c for row in self.rows for c in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __repr__(self):
        body = "; ".join(", ".join(self.field.format(c) for c in row) for row in self.rows)
        return f"Matrix({self.field}, {self.nrows}x{self.ncols}, [{body}])"


def _rref_generic(rows, ncols, K):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = K.inv(prow[c])
        prow[c:] = [K.mul(x, inv) for x in prow[c:]]
        for i, row in enumerate(rows):
            if i != r and row[c]:
                f = row[c]
                row[c:] = [K.sub(x, K.mul(f, y)) if y else x for x, y in zip(row[c:], prow[c:])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _rref_prime_ints(rows, ncols, p):
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = pow(prow[c], -1, p)
        prow[c:] = [x * inv % p for x in prow[c:]]
        tail = prow[c:]
        for i, row in enumerate(rows):
            if i != r and row[c]:
                f = row[c]
                row[c:] = [(x - f * y) % p for x, y in zip(row[c:], tail)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _rref_prime_numpy(rows, ncols, p):
    A = np.array(rows, dtype=np.int64).reshape(len(rows), ncols)
    nrows = A.shape[0]
    pivots = []
    r = 0
    for c in range(ncols):
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = A[r, c:] * inv % p
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            # Entries stay below p < 2^31, so the products fit in int64.
            A[:, c:] -= np.outer(factors, A[r, c:])
            A[:, c:] %= p
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A.tolist(), pivots


def rref(m: Matrix):
    """Reduced row echelon form (Gauss-Jordan, first nonzero pivot).

    Returns ``(rows, pivot_columns)`` with raw entries.
    """
    K = m.field
    if isinstance(K, PrimeField):
        if K.p < _NUMPY_MAX_P and m.nrows * m.ncols >= _NUMPY_MIN_ENTRIES:
            return _rref_prime_numpy(m.rows, m.ncols, K.p)
        return _rref_prime_ints(m.rows, m.ncols, K.p)
    return _rref_generic(m.rows, m.ncols, K)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_echelon(m: Matrix) -> Matrix:
    """Right kernel basis of ``m`` in echelon form.

    The returned matrix has ``m.ncols`` rows and one column per free
    variable.  Column k has its last nonzero entry (equal to 1) at the
    k-th free column index, so trailing-zero counts strictly decrease
    from left to right.
    """
    K = m.field
    rows, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    columns = []
    for f in free:
        v = [K.zero] * m.ncols
        v[f] = K.one
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            if rows[i][f]:
                v[pc] = K.neg(rows[i][f])
        columns.append(v)
    return Matrix.from_columns(K, columns, m.ncols)


def leftmost_kernel_vector(m: Matrix):
    """First column of :func:`kernel_echelon`, or None for a trivial kernel."""
    Z = kernel_echelon(m)
    if Z.ncols == 0:
        return None
    return Z.column(0)


def last_nonzero(v) -> int:
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            return i
    return -1


def minimal_polynomial(alpha) -> Polynomial:
    """Minimal polynomial over K of an element of a simple extension K[t]/T.

    Forms the d x (d+1) matrix whose columns are 1, alpha, ..., alpha^d
    on the power basis and reads the monic relation off the leftmost
    echelon kernel column.
    """
    L = alpha.parent
    K = L.field
    d = L.degree
    columns = []
    power = L.one()
    for _ in range(d + 1):
        columns.append(power.vector())
        power = power * alpha
    z = leftmost_kernel_vector(Matrix.from_columns(K, columns, d))
    deg = last_nonzero(z)
    X = Polynomial.from_raw(K, z[: deg + 1])
    if d % X.degree:
        raise ReducibleModulusError(
            f"minimal polynomial of degree {X.degree} does not divide {d}; the modulus is reducible"
        )
    return X
