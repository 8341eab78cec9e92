"""The split algebra A = k^d, linear maps phi: A -> End(M), and their text format.

A map is stored by the images of the orthogonal idempotents, alphas[i] = phi(e_i);
everything else follows by linearity.

Document format::

    # comment
    field gf 7            # or: field rational / field cyclotomic 3
    d 2
    dim 2
    matrix 1
    1 1
    0 0
    matrix 2
    0 1
    0 1

Matrix rows are split on whitespace, or on commas when the row contains one
(needed for cyclotomic entries written with internal spaces).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, MixedFields, ParseError
from .fields import Field, Scalar, parse_field
from .matrix import Matrix
from .poly import Polynomial


@dataclass(frozen=True)
class AlgebraElement:
    """a = sum_i coords[i] e_i, coordinates held as raw field values."""

    field: Field
    coords: tuple

    @classmethod
    def of(cls, field: Field, values: Sequence) -> "AlgebraElement":
        if len(values) < 1:
            raise DimensionMismatch("d must be at least 1")
        return cls(field, tuple(field.coerce(v) for v in values))

    @classmethod
    def one(cls, field: Field, d: int) -> "AlgebraElement":
        return cls(field, (field.one,) * d)

    @classmethod
    def idempotent(cls, field: Field, d: int, i: int) -> "AlgebraElement":
        """e_i, 0-based."""
        return cls(field, tuple(field.one if j == i else field.zero for j in range(d)))

    @property
    def d(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> Scalar:
        return Scalar(self.field, self.coords[i])

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.field, tuple(map(self.field.mul, self.coords, other.coords)))

    def __pow__(self, k: int) -> "AlgebraElement":
        return AlgebraElement(self.field, tuple(self.field.pow(c, k) for c in self.coords))

    def is_one(self) -> bool:
        return all(c == self.field.one for c in self.coords)


@dataclass(frozen=True)
class LinearMap:
    field: Field
    alphas: tuple

    def __post_init__(self):
        alphas = tuple(self.alphas)
        if not alphas:
            raise DimensionMismatch("a linear map needs d >= 1 matrices")
        dim = alphas[0].dim
        for i, a in enumerate(alphas):
            if a.field != self.field:
                raise MixedFields(f"matrix {i + 1} is over {a.field}, map is over {self.field}")
            if a.dim != dim:
                raise DimensionMismatch(f"matrix {i + 1} has size {a.dim}, expected {dim}")
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def from_rows(cls, field: Field, matrices) -> "LinearMap":
        return cls(field, tuple(m if isinstance(m, Matrix) else Matrix(field, m) for m in matrices))

    @property
    def d(self) -> int:
        return len(self.alphas)

    @property
    def dim(self) -> int:
        return self.alphas[0].dim

    def conjugate(self, P: Matrix, P_inv: Matrix) -> "LinearMap":
        return LinearMap(self.field, tuple(P @ a @ P_inv for a in self.alphas))

    def image_of_one(self) -> Matrix:
        total = self.alphas[0]
        for a in self.alphas[1:]:
            total = total + a
        return total


def apply(phi: LinearMap, a: AlgebraElement) -> Matrix:
    """phi(a) = sum_i a_i alpha_i."""
    if a.field != phi.field:
        raise MixedFields(f"{a.field} vs {phi.field}")
    if a.d != phi.d:
        raise DimensionMismatch(f"element has {a.d} coordinates, map has d={phi.d}")
    F, n = phi.field, phi.dim
    rows = [[F.zero] * n for _ in range(n)]
    for c, alpha in zip(a.coords, phi.alphas):
        if F.is_zero(c):
            continue
        for i, arow in enumerate(alpha.rows):
            row = rows[i]
            for j, x in enumerate(arow):
                if not F.is_zero(x):
                    row[j] = F.add(row[j], F.mul(c, x))
    return Matrix._raw(F, rows)


def char_poly_element(a: AlgebraElement) -> Polynomial:
    """Characteristic polynomial of left multiplication by a on k^d."""
    return Polynomial.from_roots(a.field, a.coords)


def min_poly_element(a: AlgebraElement) -> Polynomial:
    distinct = list(dict.fromkeys(a.coords))
    return Polynomial.from_roots(a.field, distinct)


def regular_matrix(a: AlgebraElement) -> Matrix:
    return Matrix.diagonal(a.field, a.coords)


# ---------------------------------------------------------------------------
# text format

def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _header_int(value: str, name: str, lineno: int) -> int:
    try:
        v = int(value)
    except ValueError:
        raise ParseError(f"{name} must be an integer, got {value!r}", lineno) from None
    if v < 1:
        raise DimensionMismatch(f"line {lineno}: {name} must be >= 1, got {v}")
    return v


def parse_linear_map(document: str, field_override: Field | None = None) -> LinearMap:
    """Parse the line-oriented document format into a validated :class:`LinearMap`."""
    lines = [(no, _strip(raw)) for no, raw in enumerate(document.splitlines(), start=1)]
    lines = [(no, text) for no, text in lines if text]
    field = d = dim = None
    pos = 0
    while pos < len(lines):
        no, text = lines[pos]
        key, _, rest = text.partition(" ")
        rest = rest.strip()
        if key == "field":
            field = parse_field(rest) if rest else None
            if field is None:
                raise ParseError("missing field description", no)
        elif key == "d":
            d = _header_int(rest, "d", no)
        elif key == "dim":
            dim = _header_int(rest, "dim", no)
        elif key == "matrix":
            break
        else:
            raise ParseError(f"unexpected header line {text!r}", no, 1)
        pos += 1
    for name, val in (("field", field), ("d", d), ("dim", dim)):
        if val is None:
            raise ParseError(f"missing '{name}' header")
    if field_override is not None:
        field = field_override

    matrices: dict[int, Matrix] = {}
    while pos < len(lines):
        no, text = lines[pos]
        key, _, rest = text.partition(" ")
        if key != "matrix":
            raise ParseError(f"expected 'matrix i', got {text!r}", no, 1)
        try:
            idx = int(rest)
        except ValueError:
            raise ParseError(f"bad matrix index {rest!r}", no) from None
        if not 1 <= idx <= d:
            raise ParseError(f"matrix index {idx} outside 1..{d}", no)
        if idx in matrices:
            raise ParseError(f"matrix {idx} given twice", no)
        pos += 1
        rows = []
        for _ in range(dim):
            if pos >= len(lines) or lines[pos][1].split()[0] == "matrix":
                raise DimensionMismatch(f"matrix {idx} has fewer than {dim} rows")
            rno, rtext = lines[pos]
            tokens = [t for t in rtext.split(",")] if "," in rtext else rtext.split()
            if len(tokens) != dim:
                raise DimensionMismatch(f"line {rno}: row has {len(tokens)} entries, expected {dim}")
            rows.append([field.parse(t, rno) for t in tokens])
            pos += 1
        matrices[idx] = Matrix._raw(field, rows)
    missing = [i for i in range(1, d + 1) if i not in matrices]
    if missing:
        raise ParseError(f"missing matrices {missing}")
    return LinearMap(field, tuple(matrices[i] for i in range(1, d + 1)))


def format_linear_map(phi: LinearMap) -> str:
    F = phi.field
    out = [f"field {F.describe()}", f"d {phi.d}", f"dim {phi.dim}"]
    for i, a in enumerate(phi.alphas, start=1):
        out.append(f"matrix {i}")
        cells = a.to_strings(compact=True)
        width = max(len(c) for r in cells for c in r)
        out.extend(" ".join(c.rjust(width) for c in r) for r in cells)
    return "\n".join(out) + "\n"
