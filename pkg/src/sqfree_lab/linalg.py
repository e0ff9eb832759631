"""Exact dense linear algebra over QQ and GF(p).

Matrices are lists of rows; rows are lists of field representatives
(`Fraction` over QQ, ints in [0, p) over GF(p)).  Over GF(p) the row
reduction runs on int64 numpy arrays (all intermediate values stay below
2**63 for p < 2**31), over QQ it is plain Fraction arithmetic.  Pivoting is
always "first nonzero row", so every result is deterministic and the RREF
is canonical.

Functions that must cope with empty inputs take the column count
explicitly: a 3x0 matrix and a 0x3 matrix are both `[]`-ish and shape
cannot be recovered from the data alone.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import FieldSpec

Matrix = list  # list of rows
Vector = list


def zeros(m: int, n: int, field: FieldSpec) -> Matrix:
    z = field.zero
    return [[z] * n for _ in range(m)]


def identity(n: int, field: FieldSpec) -> Matrix:
    one, zero = field.one, field.zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(A: Matrix, ncols: int) -> Matrix:
    return [[row[j] for row in A] for j in range(ncols)]


def from_columns(cols: list, nrows: int) -> Matrix:
    return [[col[i] for col in cols] for i in range(nrows)]


def columns(A: Matrix, ncols: int) -> list:
    return [[row[j] for row in A] for j in range(ncols)]


def matmul(A: Matrix, B: Matrix, ncols_b: int, field: FieldSpec) -> Matrix:
    """A (m x k) times B (k x ncols_b)."""
    m = len(A)
    k = len(B)
    p = field.characteristic
    if p and m and k and ncols_b and k * (p - 1) ** 2 < 2 ** 62:
        a = np.array(A, dtype=np.int64)
        b = np.array(B, dtype=np.int64)
        return ((a @ b) % p).tolist()
    out = zeros(m, ncols_b, field)
    for i, arow in enumerate(A):
        orow = out[i]
        for t, a in enumerate(arow):
            if a == 0:
                continue
            brow = B[t]
            for j in range(ncols_b):
                b = brow[j]
                if b != 0:
                    orow[j] = field.add(orow[j], field.mul(a, b))
    return out


def matvec(A: Matrix, v: Vector, field: FieldSpec) -> Vector:
    out = []
    for row in A:
        acc = field.zero
        for a, b in zip(row, v):
            if a != 0 and b != 0:
                acc = field.add(acc, field.mul(a, b))
        out.append(acc)
    return out


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))


def _rref_modp(A: Matrix, ncols: int, p: int):
    M = np.array([x for row in A for x in row], dtype=np.int64).reshape(len(A), ncols)
    M %= p
    m = len(A)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        a = int(M[r, c])
        if a != 1:
            M[r] = M[r] * pow(a, -1, p) % p
        col = M[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            M[rows] = (M[rows] - np.outer(col[rows], M[r])) % p
        pivots.append(c)
        r += 1
    return [[int(x) for x in M[i]] for i in range(r)], pivots


def _rref_rat(A: Matrix, ncols: int):
    M = [[Fraction(x) for x in row] for row in A]
    m = len(M)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        pivot_row = None
        for i in range(r, m):
            if M[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        a = M[r][c]
        if a != 1:
            inv = 1 / a
            M[r] = [x * inv for x in M[r]]
        Mr = M[r]
        for i in range(m):
            if i == r:
                continue
            f = M[i][c]
            if f != 0:
                Mi = M[i]
                M[i] = [x - f * y for x, y in zip(Mi, Mr)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(A: Matrix, ncols: int, field: FieldSpec):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not A:
        return [], []
    if field.characteristic:
        return _rref_modp(A, ncols, field.characteristic)
    return _rref_rat(A, ncols)


def rank(A: Matrix, ncols: int, field: FieldSpec) -> int:
    return len(rref(A, ncols, field)[1])


def right_kernel(A: Matrix, ncols: int, field: FieldSpec) -> list:
    """Basis of {v : A v = 0}, one vector per free column, ascending."""
    R, pivots = rref(A, ncols, field)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [field.zero] * ncols
        v[f] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(R[r][f])
        basis.append(v)
    return basis


def solve_matrix(A: Matrix, B: Matrix, ncols_a: int, ncols_b: int, field: FieldSpec):
    """X with A X = B (A: m x ncols_a, B: m x ncols_b), or None if unsolvable.

    When solvable the returned X is the solution with zeros in all free
    coordinates, hence deterministic.
    """
    aug = [list(ra) + list(rb) for ra, rb in zip(A, B)]
    R, pivots = rref(aug, ncols_a + ncols_b, field)
    if any(pc >= ncols_a for pc in pivots):
        return None
    X = zeros(ncols_a, ncols_b, field)
    for r, pc in enumerate(pivots):
        X[pc] = R[r][ncols_a:]
    return X


def solve(A: Matrix, b: Vector, ncols: int, field: FieldSpec):
    X = solve_matrix(A, [[x] for x in b], ncols, 1, field)
    if X is None:
        return None
    return [row[0] for row in X]


class Echelon:
    """Incrementally maintained echelon span, for membership and extension.

    Rows are kept with normalized leading ones at distinct pivot columns;
    insertion order never affects which later vectors count as new, so
    greedy extension is deterministic.
    """

    def __init__(self, ncols: int, field: FieldSpec):
        self.ncols = ncols
        self.field = field
        self.rows: list = []
        self.pivots: list = []

    def residue(self, v: Vector) -> Vector:
        f = self.field
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c != 0:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def insert(self, v: Vector) -> bool:
        """Add v to the span; True if it enlarged the span."""
        f = self.field
        r = self.residue(v)
        for pc, c in enumerate(r):
            if c != 0:
                inv = f.inv(c)
                r = [f.mul(inv, x) for x in r]
                self.rows.append(r)
                self.pivots.append(pc)
                return True
        return False

    def contains(self, v: Vector) -> bool:
        return all(x == 0 for x in self.residue(v))

    @property
    def dim(self) -> int:
        return len(self.rows)
