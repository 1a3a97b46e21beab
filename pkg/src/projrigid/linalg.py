"""Dense exact matrices over Q(i, sqrt(d)).

Elimination always pivots on the first nonzero entry found scanning columns
left to right and, inside a column, rows top to bottom.  Every subspace is
stored through its reduced row echelon basis, so two ``Subspace`` objects
are equal exactly when they span the same space.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .field import FieldElement, FieldMismatchError

__all__ = [
    "Matrix",
    "SingularMatrixError",
    "Subspace",
    "rref",
    "rank",
    "kernel",
    "image",
    "cokernel_dim",
    "solve",
    "membership",
]

Entry = Union[int, Fraction, FieldElement]
Vector = tuple  # tuple of FieldElement


class SingularMatrixError(ArithmeticError):
    pass


def _fe(x: Entry, d: int) -> FieldElement:
    if isinstance(x, FieldElement):
        if x.d != d:
            raise FieldMismatchError(f"entry over d={x.d} in a matrix over d={d}")
        return x
    f = Fraction(x)
    return FieldElement(f, d=d)


class Matrix:
    __slots__ = ("rows", "cols", "d", "_data", "_hash")

    def __init__(self, data: Sequence[Sequence[Entry]], d: int = 1,
                 cols: Optional[int] = None):
        rows = [[_fe(x, d) for x in row] for row in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix data")
        self.rows = len(rows)
        self.cols = cols
        self.d = d
        self._data = rows
        self._hash = None

    @classmethod
    def _wrap(cls, rows: list, cols: int, d: int) -> Matrix:
        m = cls.__new__(cls)
        m.rows, m.cols, m.d, m._data, m._hash = len(rows), cols, d, rows, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, d: int = 1) -> Matrix:
        z = FieldElement.zero(d)
        return cls._wrap([[z] * cols for _ in range(rows)], cols, d)

    @classmethod
    def identity(cls, n: int, d: int = 1) -> Matrix:
        z, o = FieldElement.zero(d), FieldElement.one(d)
        return cls._wrap([[o if i == j else z for j in range(n)] for i in range(n)], n, d)

    @classmethod
    def diag(cls, values: Sequence[Entry], d: int = 1) -> Matrix:
        n = len(values)
        m = cls.zeros(n, n, d)
        for i, v in enumerate(values):
            m._data[i][i] = _fe(v, d)
        return m

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[FieldElement]], d: int,
                     rows: Optional[int] = None) -> Matrix:
        if not columns:
            return cls.zeros(rows or 0, 0, d)
        n = len(columns[0])
        return cls._wrap([[_fe(c[i], d) for c in columns] for i in range(n)],
                         len(columns), d)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        """Assemble a matrix from a grid of equally sized blocks."""
        d = blocks[0][0].d
        out = []
        for brow in blocks:
            h = brow[0].rows
            for i in range(h):
                line = []
                for b in brow:
                    line.extend(b._data[i])
                out.append(line)
        return cls._wrap(out, sum(b.cols for b in blocks[0]), d)

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return tuple(self._data[i])

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, tuple(tuple(r) for r in self._data)))
        return self._hash

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self._data)
        return f"Matrix([{body}], d={self.d})"

    # arithmetic
    def _check(self, other: Matrix):
        if other.d != self.d:
            raise FieldMismatchError("matrices over different fields")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap([[x + y for x, y in zip(r, s)]
                             for r, s in zip(self._data, other._data)], self.cols, self.d)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Matrix._wrap([[x - y for x, y in zip(r, s)]
                             for r, s in zip(self._data, other._data)], self.cols, self.d)

    def __neg__(self) -> Matrix:
        return Matrix._wrap([[-x for x in r] for r in self._data], self.cols, self.d)

    def scale(self, c: Entry) -> Matrix:
        c = _fe(c, self.d)
        return Matrix._wrap([[c * x for x in r] for r in self._data], self.cols, self.d)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __matmul__(self, other: Matrix) -> Matrix:
        return self.matmul(other)

    def matmul(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = FieldElement.zero(self.d)
        ocols = other.cols
        odata = other._data
        out = []
        for r in self._data:
            acc = [zero] * ocols
            for k, x in enumerate(r):
                if not x:
                    continue
                orow = odata[k]
                for j in range(ocols):
                    y = orow[j]
                    if y:
                        acc[j] = acc[j] + x * y
            out.append(acc)
        return Matrix._wrap(out, ocols, self.d)

    def apply(self, v: Sequence[FieldElement]) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        zero = FieldElement.zero(self.d)
        out = []
        for r in self._data:
            acc = zero
            for x, y in zip(r, v):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def transpose(self) -> Matrix:
        if not self.rows:
            return Matrix.zeros(self.cols, 0, self.d)
        return Matrix._wrap([list(c) for c in zip(*self._data)], self.rows, self.d)

    T = property(transpose)

    def trace(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = FieldElement.zero(self.d)
        for i in range(self.rows):
            t = t + self._data[i][i]
        return t

    def conj_i(self) -> Matrix:
        return Matrix._wrap([[x.conj_i() for x in r] for r in self._data], self.cols, self.d)

    def is_zero(self) -> bool:
        return not any(x for r in self._data for x in r)

    def det(self) -> FieldElement:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        a = self.tolist()
        n = self.rows
        det = FieldElement.one(self.d)
        for c in range(n):
            p = next((i for i in range(c, n) if a[i][c]), None)
            if p is None:
                return FieldElement.zero(self.d)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det = det * piv
            inv = piv.inv()
            for i in range(c + 1, n):
                f = a[i][c]
                if f:
                    f = f * inv
                    row_c = a[c]
                    a[i] = [x - f * y if y else x for x, y in zip(a[i], row_c)]
        return det

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = [r + list(e) for r, e in zip(self._data, Matrix.identity(n, self.d)._data)]
        red, pivots = _rref_rows(aug, 2 * n, limit=n)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise SingularMatrixError("matrix is singular")
        return Matrix._wrap([r[n:] for r in red[:n]], n, self.d)

    def power(self, k: int) -> Matrix:
        if k < 0:
            return self.inverse().power(-k)
        result = Matrix.identity(self.rows, self.d)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def to_complex(self):
        return [[x.to_float() for x in r] for r in self._data]


def _rref_rows(rows: list, ncols: int, limit: Optional[int] = None):
    """Reduced row echelon form of a list of rows (copied).

    ``limit`` restricts pivot search to the first ``limit`` columns, which is
    what augmented systems need.  Returns the reduced rows and pivot columns.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots: list[int] = []
    prow = 0
    last = ncols if limit is None else limit
    for c in range(last):
        if prow == nrows:
            break
        p = next((i for i in range(prow, nrows) if a[i][c]), None)
        if p is None:
            continue
        if p != prow:
            a[prow], a[p] = a[p], a[prow]
        piv = a[prow][c]
        if piv != 1:
            inv = piv.inv()
            a[prow] = [x * inv if x else x for x in a[prow]]
        pr = a[prow]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(nrows):
            if i == prow:
                continue
            f = a[i][c]
            if not f:
                continue
            ri = a[i][:]
            for j in nz:
                ri[j] = ri[j] - f * pr[j]
            a[i] = ri
        pivots.append(c)
        prow += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    red, pivots = _rref_rows(m._data, m.cols)
    return Matrix._wrap(red, m.cols, m.d), pivots


def rank(m: Matrix) -> int:
    return len(_rref_rows(m._data, m.cols)[1])


def cokernel_dim(m: Matrix) -> int:
    return m.rows - rank(m)


class Subspace:
    """A linear subspace of F^n held by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "d", "basis", "pivots")

    def __init__(self, vectors: Iterable[Sequence[FieldElement]], ambient_dim: int,
                 d: int = 1):
        vecs = [tuple(_fe(x, d) for x in v) for v in vectors]
        if any(len(v) != ambient_dim for v in vecs):
            raise ValueError("vector length does not match the ambient dimension")
        red, pivots = _rref_rows(vecs, ambient_dim)
        self.ambient_dim = ambient_dim
        self.d = d
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in red[:len(pivots)])
        self.pivots = tuple(pivots)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    def __contains__(self, v) -> bool:
        return membership(self, v)

    def reduce(self, v: Sequence[FieldElement]) -> Vector:
        """Canonical representative of ``v`` modulo this subspace."""
        w = list(v)
        for b, p in zip(self.basis, self.pivots):
            f = w[p]
            if f:
                w = [x - f * y if y else x for x, y in zip(w, b)]
        return tuple(w)

    def coordinates(self, v: Sequence[FieldElement]) -> Optional[tuple]:
        """Coordinates of ``v`` in the canonical basis, or None if v is outside."""
        coords = tuple(v[p] for p in self.pivots)
        if any(self.reduce(v)):
            return None
        return coords

    def sum(self, other: Subspace) -> Subspace:
        return Subspace(self.basis + other.basis, self.ambient_dim, self.d)

    def intersection(self, other: Subspace) -> Subspace:
        if not self.basis or not other.basis:
            return Subspace([], self.ambient_dim, self.d)
        # solve sum a_i b_i = sum c_j c_j
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        ker = kernel(Matrix.from_columns(cols, self.d))
        out = []
        for k in ker.basis:
            coeffs = k[:self.dim]
            vec = [FieldElement.zero(self.d)] * self.ambient_dim
            for c, b in zip(coeffs, self.basis):
                if c:
                    vec = [x + c * y for x, y in zip(vec, b)]
            out.append(vec)
        return Subspace(out, self.ambient_dim, self.d)

    def complement_basis(self, inside: Subspace) -> list[Vector]:
        """Vectors of ``inside``'s canonical basis extending this subspace to it.

        Greedy over the canonical basis of ``inside`` so the choice is
        deterministic.
        """
        chosen: list[Vector] = []
        current = self
        for v in inside.basis:
            if not membership(current, v):
                chosen.append(v)
                current = Subspace(current.basis + (v,), self.ambient_dim, self.d)
        return chosen


def kernel(m: Matrix) -> Subspace:
    red, pivots = _rref_rows(m._data, m.cols)
    zero, one = FieldElement.zero(m.d), FieldElement.one(m.d)
    pivset = set(pivots)
    vecs = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(pivots):
            x = red[r][f]
            if x:
                v[p] = -x
        vecs.append(v)
    return Subspace(vecs, m.cols, m.d)


def image(m: Matrix) -> Subspace:
    return Subspace([m.col(j) for j in range(m.cols)], m.rows, m.d)


def solve(m: Matrix, b: Sequence[FieldElement]) -> Optional[Vector]:
    """A particular solution of ``m x = b`` (free variables zero), or None."""
    if len(b) != m.rows:
        raise ValueError(f"right-hand side of length {len(b)} for a {m.shape} matrix")
    aug = [list(r) + [_fe(x, m.d)] for r, x in zip(m._data, b)]
    red, pivots = _rref_rows(aug, m.cols + 1, limit=m.cols)
    for r in range(len(pivots), m.rows):
        if red[r][m.cols]:
            return None
    x = [FieldElement.zero(m.d)] * m.cols
    for r, p in enumerate(pivots):
        x[p] = red[r][m.cols]
    return tuple(x)


def membership(s: Subspace, v: Sequence[FieldElement]) -> bool:
    if len(v) != s.ambient_dim:
        raise ValueError(f"vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    return not any(s.reduce([_fe(x, s.d) for x in v]))
