"""Exact dense linear algebra over F_q plus monomial-witness algebra.

Matrices are small and dense; Gaussian elimination with first-nonzero
pivoting is all we need over an exact field.  Permutations are kept as
image arrays and only materialized to matrices at serialization
boundaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DimensionMismatch, Singular
from .gf import Field


class Mat:
    """Dense matrix over F_q; entries are field ints, row-major."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: list[list[int]], cols: int | None = None):
        self.field = field
        self.data = data
        self.rows = len(data)
        if self.rows:
            self.cols = len(data[0])
        else:
            if cols is None:
                raise ValueError("0-row matrix needs an explicit column count")
            self.cols = cols
        for row in data:
            if len(row) != self.cols:
                raise DimensionMismatch("ragged rows")

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, field, n):
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls(field, data, n)

    def copy(self):
        return Mat(self.field, [row[:] for row in self.data], self.cols)

    def transpose(self):
        return Mat(
            self.field,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.rows,
        )

    def mul(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.shape()} x {other.shape()}")
        F = self.field
        add, mul = F.add, F.mul
        bt = other.transpose().data
        out = []
        for row in self.data:
            out_row = []
            for col in bt:
                acc = 0
                for a, b in zip(row, col):
                    if a and b:
                        acc = add(acc, mul(a, b))
                out_row.append(acc)
            out.append(out_row)
        return Mat(F, out, other.cols)

    def matvec(self, v) -> list[int]:
        F = self.field
        add, mul = F.add, F.mul
        out = []
        for row in self.data:
            acc = 0
            for a, b in zip(row, v):
                if a and b:
                    acc = add(acc, mul(a, b))
            out.append(acc)
        return out

    def col(self, j) -> list[int]:
        return [row[j] for row in self.data]

    def is_zero(self):
        return all(all(x == 0 for x in row) for row in self.data)

    def shape(self):
        return (self.rows, self.cols)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape() == other.shape()
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, tuple(tuple(r) for r in self.data), self.cols))

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols} over {self.field})"


def rref(M: Mat):
    """Reduced row echelon form: returns (R, pivot columns, rank)."""
    F = M.field
    sub, mul, inv = F.sub, F.mul, F.inv
    data = [row[:] for row in M.data]
    pivots = []
    r = 0
    for j in range(M.cols):
        piv = None
        for i in range(r, M.rows):
            if data[i][j]:
                piv = i
                break
        if piv is None:
            continue
        data[r], data[piv] = data[piv], data[r]
        s = inv(data[r][j])
        if s != 1:
            data[r] = [mul(s, x) for x in data[r]]
        prow = data[r]
        for i in range(M.rows):
            if i != r and data[i][j]:
                c = data[i][j]
                data[i] = [sub(x, mul(c, y)) for x, y in zip(data[i], prow)]
        pivots.append(j)
        r += 1
        if r == M.rows:
            break
    return Mat(F, data, M.cols), pivots, r


def rank(M: Mat) -> int:
    return rref(M)[2]


def row_basis(M: Mat) -> Mat:
    """Nonzero rows of the RREF: a canonical basis of the row space."""
    R, _, rk = rref(M)
    return Mat(M.field, R.data[:rk], M.cols)


def row_space_equal(A: Mat, B: Mat) -> bool:
    return row_basis(A).data == row_basis(B).data and A.cols == B.cols


def row_space_contains(A: Mat, B: Mat) -> bool:
    """True when every row of B lies in the row space of A."""
    if A.cols != B.cols:
        return False
    ra = rank(A)
    stacked = Mat(A.field, A.data + B.data, A.cols)
    return rank(stacked) == ra


def kernel(M: Mat) -> Mat:
    """Basis of the right null space {v : M v = 0}, one row per basis vector.

    Rows are normalized so their first nonzero entry is 1.
    """
    F = M.field
    R, pivots, rk = rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * M.cols
        v[j] = 1
        for i, pj in enumerate(pivots):
            v[pj] = F.neg(R.data[i][j])
        for x in v:
            if x:
                if x != 1:
                    s = F.inv(x)
                    v = [F.mul(s, y) for y in v]
                break
        basis.append(v)
    return Mat(F, basis, M.cols)


def solve(M: Mat, b: list[int]):
    """One solution x of M x = b, or None when the system is inconsistent."""
    F = M.field
    aug = Mat(F, [row + [bv] for row, bv in zip(M.data, b)], M.cols + 1)
    R, pivots, rk = rref(aug)
    if M.cols in pivots:
        return None
    x = [0] * M.cols
    for i, pj in enumerate(pivots):
        x[pj] = R.data[i][M.cols]
    return x


def invert(M: Mat) -> Mat:
    if M.rows != M.cols:
        raise Singular("only square matrices invert")
    n = M.rows
    F = M.field
    aug = Mat(F, [row + irow for row, irow in zip(M.data, Mat.identity(F, n).data)], 2 * n)
    R, pivots, rk = rref(aug)
    if rk < n or pivots[:n] != list(range(n)):
        raise Singular("matrix is singular")
    return Mat(F, [row[n:] for row in R.data[:n]], n)


def is_invertible(M: Mat) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def perm_matrix(field: Field, perm: list[int]) -> Mat:
    """Permutation matrix P with P[i][perm[i]] = 1."""
    n = len(perm)
    data = [[0] * n for _ in range(n)]
    for i, j in enumerate(perm):
        data[i][j] = 1
    return Mat(field, data, n)


def diag_matrix(field: Field, diag: list[int]) -> Mat:
    n = len(diag)
    data = [[0] * n for _ in range(n)]
    for i, d in enumerate(diag):
        data[i][i] = d
    return Mat(field, data, n)


@dataclass
class MonomialWitness:
    """An equivalence witness (A, D, P): G' = A * G * D * P.

    D is stored as its diagonal, P as an image array (column i of G*D
    lands at column perm[i] of the product).
    """

    A: Mat
    diag: list[int]
    perm: list[int]

    @property
    def field(self):
        return self.A.field

    def n(self):
        return len(self.diag)

    def validate(self):
        F = self.A.field
        if not is_invertible(self.A):
            raise Singular("A is singular")
        if any(d == 0 for d in self.diag):
            raise Singular("D has a zero diagonal entry")
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("P is not a permutation")
        if len(self.diag) != len(self.perm):
            raise DimensionMismatch("D and P sizes differ")
        return True

    def D_matrix(self) -> Mat:
        return diag_matrix(self.field, self.diag)

    def P_matrix(self) -> Mat:
        return perm_matrix(self.field, self.perm)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialWitness)
            and self.A == other.A
            and self.diag == other.diag
            and self.perm == other.perm
        )


def identity_witness(field: Field, k: int, n: int) -> MonomialWitness:
    return MonomialWitness(Mat.identity(field, k), [1] * n, list(range(n)))


def compose_witness(w1: MonomialWitness, w2: MonomialWitness) -> MonomialWitness:
    """Witness equal to applying w1 first, then w2."""
    F = w1.field
    if w1.n() != w2.n() or w1.A.rows != w2.A.rows:
        raise DimensionMismatch("witness sizes differ")
    A = w2.A.mul(w1.A)
    diag = [F.mul(d1, w2.diag[s1]) for d1, s1 in zip(w1.diag, w1.perm)]
    perm = [w2.perm[s1] for s1 in w1.perm]
    return MonomialWitness(A, diag, perm)


def random_invertible(field: Field, k: int, seed) -> Mat:
    """Seeded rejection sampling; identical seeds give identical matrices."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        data = [[field.sample(rng) for _ in range(k)] for _ in range(k)]
        M = Mat(field, data, k)
        if rank(M) == k:
            return M


def random_witness(field: Field, k: int, n: int, seed) -> MonomialWitness:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    A = random_invertible(field, k, rng)
    diag = [field.sample_nonzero(rng) for _ in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    return MonomialWitness(A, diag, perm)
