"""Dense univariate polynomials over an exact field (variable ``t``)."""

from __future__ import annotations

from typing import Iterable

from .errors import DivisionByZero, MixedFields
from .fields import Field, Scalar


class Polynomial:
    """Coefficients are raw field values, lowest degree first, trailing zeros stripped.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        self.field = field
        cs = [field.coerce(c) if isinstance(c, (Scalar, str, int)) else c for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, field: Field, roots) -> "Polynomial":
        """Monic product of (t - r) over the given roots."""
        p = cls(field, [field.one])
        for r in roots:
            r = field.coerce(r)
            p = p * cls(field, [field.neg(r), field.one])
        return p

    @classmethod
    def monomial(cls, field: Field, k: int) -> "Polynomial":
        return cls(field, [field.zero] * k + [field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def coefficient(self, k: int) -> Scalar:
        v = self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero
        return Scalar(self.field, v)

    def _check(self, other: "Polynomial") -> None:
        if other.field != self.field:
            raise MixedFields(f"{self.field} vs {other.field}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(F, [F.add(x, b[i]) if i < len(b) else x for i, x in enumerate(a)])

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        F = self.field
        if isinstance(other, (Scalar, int)):
            c = F.coerce(other)
            return Polynomial(F, [F.mul(x, c) for x in self.coeffs])
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Polynomial(F)
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Polynomial(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial(self.field, [self.field.one])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial"):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        dn = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        quot = [F.zero] * max(len(rem) - dn, 0)
        for k in range(len(rem) - 1, dn - 1, -1):
            c = F.mul(rem[k], lead_inv)
            quot[k - dn] = c
            if not F.is_zero(c):
                for j, b in enumerate(other.coeffs):
                    rem[k - dn + j] = F.sub(rem[k - dn + j], F.mul(c, b))
        return Polynomial(F, quot), Polynomial(F, rem[:dn] if dn > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "Polynomial") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Polynomial":
        inv = self.field.inv(self.coeffs[-1])
        return Polynomial(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def __call__(self, x):
        """Horner evaluation at a Scalar, or at a square :class:`Matrix`."""
        from .matrix import Matrix

        F = self.field
        if isinstance(x, Matrix):
            if x.field != F:
                raise MixedFields(f"{x.field} vs {F}")
            acc = Matrix.zero(F, x.dim)
            for c in reversed(self.coeffs):
                acc = acc @ x + Matrix.scalar_matrix(F, x.dim, c)
            return acc
        v = F.coerce(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, v), c)
        return Scalar(F, acc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __str__(self) -> str:
        F = self.field
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if F.is_zero(c):
                continue
            s = F.format(c, compact=True)
            neg = s.startswith("-") and ("+" not in s[1:] and "-" not in s[1:])
            if neg:
                s = s[1:]
            elif any(ch in s[1:] for ch in "+-"):
                s = f"({s})"
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.field.describe()}: {self})"
