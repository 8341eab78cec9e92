"""Dense square matrices over an exact field, plus the linear algebra the checks need."""

from __future__ import annotations

import bisect
from typing import Iterable, Sequence

from .errors import DimensionMismatch, DivisionByZero, MixedFields
from .fields import Field, Scalar
from .poly import Polynomial


class Matrix:
    """Immutable dim x dim matrix; ``rows`` holds raw field values."""

    __slots__ = ("field", "dim", "rows", "_hash")

    def __init__(self, field: Field, rows: Iterable[Iterable]):
        rows = tuple(tuple(field.coerce(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrices must have dimension >= 1")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DimensionMismatch(f"row {i + 1} has {len(row)} entries, expected {n}")
        self._set(field, rows)

    def _set(self, field, rows):
        self.field = field
        self.dim = len(rows)
        self.rows = rows
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, rows) -> "Matrix":
        m = cls.__new__(cls)
        m._set(field, tuple(tuple(r) for r in rows))
        return m

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls.scalar_matrix(field, n, field.one)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Matrix":
        return cls._raw(field, [[field.zero] * n for _ in range(n)])

    @classmethod
    def scalar_matrix(cls, field: Field, n: int, c) -> "Matrix":
        z = field.zero
        return cls._raw(field, [[c if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, field: Field, values) -> "Matrix":
        vals = [field.coerce(v) for v in values]
        n = len(vals)
        return cls._raw(field, [[vals[i] if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, field: Field, n: int, i: int, j: int) -> "Matrix":
        """The matrix unit E_ij (0-based indices)."""
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = field.one
        return cls._raw(field, rows)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.field, self.rows[i][j])

    def _check(self, other: "Matrix") -> None:
        if other.field != self.field:
            raise MixedFields(f"{self.field} vs {other.field}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"{self.dim}x{self.dim} vs {other.dim}x{other.dim}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.field.add
        return Matrix._raw(self.field, [tuple(map(add, a, b)) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        sub = self.field.sub
        return Matrix._raw(self.field, [tuple(map(sub, a, b)) for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._raw(self.field, [tuple(map(neg, r)) for r in self.rows])

    def scale(self, c) -> "Matrix":
        F = self.field
        c = F.coerce(c)
        return Matrix._raw(F, [tuple(F.mul(c, v) for v in r) for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        dot = self.field.dot
        cols = tuple(zip(*other.rows))
        return Matrix._raw(self.field, [tuple(dot(r, c) for c in cols) for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            raise ValueError("negative matrix power")
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result @ base
            k >>= 1
            if k:
                base = base @ base
        return Matrix.identity(self.field, self.dim) if result is None else result

    def apply(self, v: Sequence) -> list:
        """Matrix times a column vector of raw values."""
        dot = self.field.dot
        return [dot(r, v) for r in self.rows]

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, zip(*self.rows))

    def trace(self) -> Scalar:
        F = self.field
        acc = F.zero
        for i in range(self.dim):
            acc = F.add(acc, self.rows[i][i])
        return Scalar(F, acc)

    def vec(self) -> tuple:
        return tuple(v for r in self.rows for v in r)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(v == z for r in self.rows for v in r)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.field, self.dim)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.rows))
        return self._hash

    def to_strings(self, compact: bool = True) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(v, compact=compact) for v in r] for r in self.rows]

    def __str__(self) -> str:
        cells = self.to_strings()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)

    def __repr__(self) -> str:
        return f"Matrix({self.field.describe()}, {self.to_strings()})"


# ---------------------------------------------------------------------------
# echelon machinery on raw vectors

class Echelon:
    """Incrementally maintained row-echelon basis of a span of raw vectors."""

    def __init__(self, field: Field, length: int):
        self.field = field
        self.length = length
        self.pivots: list[int] = []
        self.rows: dict[int, list] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, v) -> list:
        F = self.field
        v = list(v)
        for p in self.pivots:
            c = v[p]
            if not F.is_zero(c):
                row = self.rows[p]
                for k in range(p, self.length):
                    if not F.is_zero(row[k]):
                        v[k] = F.sub(v[k], F.mul(c, row[k]))
        return v

    def contains(self, v) -> bool:
        F = self.field
        return all(F.is_zero(x) for x in self.reduce(v))

    def add(self, v) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        F = self.field
        r = self.reduce(v)
        for p, x in enumerate(r):
            if not F.is_zero(x):
                inv = F.inv(x)
                self.rows[p] = [F.mul(inv, y) for y in r]
                bisect.insort(self.pivots, p)
                return True
        return False


def rref(field: Field, rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a (possibly rectangular) raw matrix."""
    F = field
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if not F.is_zero(A[i][c])), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, x) for x in A[r]]
        for i in range(len(A)):
            if i != r and not F.is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M: Matrix) -> int:
    return len(rref(M.field, M.rows)[1])


def inverse(M: Matrix) -> Matrix:
    F, n = M.field, M.dim
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(M.rows)]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return Matrix._raw(F, [r[n:] for r in red])


class Subspace:
    """A subspace of field^ambient, stored by its reduced echelon basis (canonical)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field: Field, ambient: int, vectors: Iterable[Sequence] = ()):
        vecs = [[field.coerce(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, pivots = rref(field, vecs) if vecs else ([], [])
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, [[field.one if i == j else field.zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def is_proper_nonzero(self) -> bool:
        return 0 < self.dim < self.ambient

    def _echelon(self) -> Echelon:
        ech = Echelon(self.field, self.ambient)
        for p, row in zip(self.pivots, self.basis):
            ech.rows[p] = list(row)
            ech.pivots.append(p)
        return ech

    def contains(self, v: Sequence) -> bool:
        return self._echelon().contains([self.field.coerce(x) for x in v])

    def is_invariant(self, matrices: Iterable[Matrix]) -> bool:
        ech = self._echelon()
        return all(ech.contains(g.apply(v)) for g in matrices for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.field, self.ambient, self.basis) == (other.field, other.ambient, other.basis)

    def __hash__(self) -> int:
        return hash((self.field, self.ambient, self.basis))

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x, compact=True) for x in v] for v in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim} in {self.ambient}, basis={self.to_strings()})"


def kernel(M: Matrix) -> Subspace:
    F, n = M.field, M.dim
    red, pivots = rref(F, M.rows)
    free = [c for c in range(n) if c not in pivots]
    vecs = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for row, p in zip(red, pivots):
            v[p] = F.neg(row[f])
        vecs.append(v)
    return Subspace(F, n, vecs)


def spin_up(seed: Subspace, generators: Sequence[Matrix]) -> Subspace:
    """Smallest subspace containing ``seed`` and stable under every generator."""
    F, n = seed.field, seed.ambient
    for g in generators:
        if g.dim != n:
            raise DimensionMismatch(f"generator of size {g.dim} acting on dimension {n}")
        if g.field != F:
            raise MixedFields(f"{g.field} vs {F}")
    ech = Echelon(F, n)
    queue = []
    for v in seed.basis:
        if ech.add(v):
            queue.append(v)
    while queue and len(ech) < n:
        v = queue.pop()
        for g in generators:
            w = g.apply(v)
            if ech.add(w):
                queue.append(w)
    return Subspace(F, n, [ech.rows[p] for p in ech.pivots])


def char_poly(M: Matrix) -> Polynomial:
    """det(t*I - M) by Berkowitz's division-free recurrence.

    Each step borders the leading principal submatrix by one row and column and
    multiplies the running coefficient vector by a lower-triangular Toeplitz
    matrix whose first column is (1, -a, -R c, -R A c, ..., -R A^(r-1) c).
    """
    F, n, A = M.field, M.dim, M.rows
    poly = [F.one, F.neg(A[0][0])]  # highest degree first
    for r in range(1, n):
        row = A[r][:r]
        v = [A[i][r] for i in range(r)]
        items = [F.one, F.neg(A[r][r])]
        for k in range(r):
            items.append(F.neg(F.dot(row, v)))
            if k < r - 1:
                v = [F.dot(A[i][:r], v) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = F.zero
            for j in range(min(i, r) + 1):
                acc = F.add(acc, F.mul(items[i - j], poly[j]))
            new.append(acc)
        poly = new
    return Polynomial(F, reversed(poly))


def min_poly(M: Matrix) -> Polynomial:
    """First linear dependence among vec(I), vec(M), vec(M^2), ...

    Each power is reduced against the echelon basis of the lower powers while
    tracking the combination; the dependency found is monic by construction.
    """
    F, n = M.field, M.dim
    length = n * n
    pivots: list[int] = []
    rows: dict[int, tuple[list, list]] = {}
    power = Matrix.identity(F, n)
    for k in range(n + 1):
        v = list(power.vec())
        expr = [F.zero] * k + [F.one]
        for p in pivots:
            c = v[p]
            if not F.is_zero(c):
                row, rexpr = rows[p]
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
                for j, e in enumerate(rexpr):
                    expr[j] = F.sub(expr[j], F.mul(c, e))
        lead = next((i for i in range(length) if not F.is_zero(v[i])), None)
        if lead is None:
            return Polynomial(F, expr)
        inv = F.inv(v[lead])
        rows[lead] = ([F.mul(inv, x) for x in v], [F.mul(inv, e) for e in expr])
        bisect.insort(pivots, lead)
        power = power @ M
    raise AssertionError("Cayley-Hamilton bound exceeded")  # unreachable
