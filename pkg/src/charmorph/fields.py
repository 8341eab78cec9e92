"""Exact base fields: the rationals, cyclotomic fields Q(z)/(Phi_n) and prime fields.

Field objects double as field descriptors.  They operate on *raw* values
(``mpq`` for Q, tuples of ``mpq`` for Q(zeta_n), ``int`` for F_p) so that the
matrix layer can run tight loops without wrapping every entry;
:class:`Scalar` is the checked, user-facing wrapper around a raw value.
"""

from __future__ import annotations

import functools
import operator
import re
from typing import Any

from gmpy2 import mpq

from .errors import DivisionByZero, FieldMismatch, MixedFields, NoSuchRoot, ParseError

MAX_PRIME = 2**31

_FRAC_RE = re.compile(r"([+-]?\d+)(?:/(\d+))?\Z")
_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_CYCLO_TERM_RE = re.compile(r"(?:(\d+(?:/\d+)?)\*?)?(z)(?:\^(\d+))?\Z|(\d+(?:/\d+)?)\Z")

MPQ_ZERO = mpq(0)
MPQ_ONE = mpq(1)


def _normalize_text(text: str) -> str:
    return "".join(text.replace("−", "-").split())


def _parse_fraction(text: str, line=None) -> mpq:
    m = _FRAC_RE.match(text)
    if not m:
        raise ParseError(f"not a rational number: {text!r}", line)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}", line)
    return mpq(num, den)


def _format_fraction(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def is_prime(p: int) -> bool:
    """Deterministic trial division; adequate for word-sized moduli."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    f = 5
    while f * f <= p:
        if p % f == 0 or p % (f + 2) == 0:
            return False
        f += 6
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _divisors(n: int) -> list[int]:
    return [m for m in range(1, n + 1) if n % m == 0]


@functools.lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Computed by exact division of z^n - 1 by Phi_m for every proper divisor m.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for m in _divisors(n)[:-1]:
        num = _exact_divide_monic(num, cyclotomic_coefficients(m))
    return tuple(num)


def _exact_divide_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        quot[k - dn] = c
        if c:
            for j, b in enumerate(den):
                num[k - dn + j] -= c * b
    if any(num[:dn]):
        raise ArithmeticError("division is not exact")
    return quot


def cyclotomic_polynomial(n: int):
    """Phi_n as a :class:`~charmorph.poly.Polynomial` over Q (integer coefficients)."""
    from .poly import Polynomial

    return Polynomial(QQ, [mpq(c) for c in cyclotomic_coefficients(n)])


class Field:
    """Common interface.  Subclasses implement the raw-value operations."""

    kind: str = ""
    characteristic: int = 0

    @property
    def param(self) -> int | None:
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.param if self.param is not None else ''})"

    def __str__(self) -> str:
        return self.describe()

    def describe(self) -> str:
        """Header text used by input documents, e.g. ``gf 7``."""
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.kind, self.param) == (other.kind, other.param)

    def __hash__(self) -> int:
        return hash((self.kind, self.param))

    # scalar-level helpers built on the raw operations
    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def zero_scalar(self) -> "Scalar":
        return Scalar(self, self.zero)

    def one_scalar(self) -> "Scalar":
        return Scalar(self, self.one)

    def eq(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        return x == self.zero

    def pow(self, x, k: int):
        if k < 0:
            x, k = self.inv(x), -k
        result, base = self.one, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise MixedFields(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        return self._coerce_number(value)


class RationalField(Field):
    kind = "rational"
    characteristic = 0
    zero = MPQ_ZERO
    one = MPQ_ONE

    def describe(self) -> str:
        return "rational"

    add = staticmethod(operator.add)
    sub = staticmethod(operator.sub)
    mul = staticmethod(operator.mul)
    neg = staticmethod(operator.neg)

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of zero")
        return 1 / x

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys), MPQ_ZERO)

    def from_int(self, k: int):
        return mpq(k)

    def _coerce_number(self, value):
        try:
            return mpq(value)
        except (TypeError, ValueError) as exc:
            raise FieldMismatch(f"cannot interpret {value!r} as a rational") from exc

    def parse(self, text: str, line=None):
        s = _normalize_text(text)
        if "z" in s:
            raise FieldMismatch(f"{text!r} is not a rational number", line)
        return _parse_fraction(s, line)

    def format(self, x, compact: bool = False) -> str:
        return _format_fraction(x)

    def random(self, rng, bound: int = 3):
        num = rng.randint(-bound, bound)
        den = rng.choice((1, 1, 1, 2))
        return mpq(num, den)


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"{p!r} is not a prime")
        if p >= MAX_PRIME:
            raise ValueError(f"prime {p} exceeds the supported word size")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    @property
    def param(self) -> int:
        return self.p

    def describe(self) -> str:
        return f"gf {self.p}"

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def neg(self, x):
        return -x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(x, -1, self.p)

    def dot(self, xs, ys):
        return sum(map(operator.mul, xs, ys)) % self.p

    def from_int(self, k: int):
        return k % self.p

    def _coerce_number(self, value):
        if isinstance(value, int):
            return value % self.p
        try:
            q = mpq(value)
        except (TypeError, ValueError) as exc:
            raise FieldMismatch(f"cannot interpret {value!r} in {self}") from exc
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise FieldMismatch(f"{value!r} has a denominator divisible by {self.p}")
        return num * pow(den, -1, self.p) % self.p

    def parse(self, text: str, line=None):
        s = _normalize_text(text)
        if "z" in s:
            raise FieldMismatch(f"{text!r} is not an element of {self}", line)
        m = _FRAC_RE.match(s)
        if not m:
            raise ParseError(f"not a residue: {text!r}", line)
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den % self.p == 0:
            raise FieldMismatch(f"denominator of {text!r} vanishes mod {self.p}", line)
        return num * pow(den, -1, self.p) % self.p

    def format(self, x, compact: bool = False) -> str:
        return str(x)

    def random(self, rng, bound: int = 3):
        return rng.randrange(self.p)


class CyclotomicField(Field):
    """Q(zeta_n) modelled as Q[z]/(Phi_n(z)); elements are coefficient tuples."""

    kind = "cyclotomic"
    characteristic = 0

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError("cyclotomic order must be a positive integer")
        self.n = n
        self.modulus = cyclotomic_coefficients(n)
        self.degree = deg = len(self.modulus) - 1
        self.zero = (MPQ_ZERO,) * deg
        self.one = (MPQ_ONE,) + (MPQ_ZERO,) * (deg - 1)
        # z^k mod Phi_n for deg <= k <= 2*deg - 2
        red, cur = {}, [0] * deg
        if deg:
            cur = [-c for c in self.modulus[:deg]]  # z^deg
        for k in range(deg, 2 * deg - 1):
            red[k] = tuple(cur)
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(deg):
                    cur[j] -= top * self.modulus[j]
        self._reduction = red

    @property
    def param(self) -> int:
        return self.n

    def describe(self) -> str:
        return f"cyclotomic {self.n}"

    def add(self, x, y):
        return tuple(map(operator.add, x, y))

    def sub(self, x, y):
        return tuple(map(operator.sub, x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def _reduce(self, prod):
        deg = self.degree
        out = list(prod[:deg])
        for k in range(deg, len(prod)):
            c = prod[k]
            if c:
                for j, r in enumerate(self._reduction[k]):
                    if r:
                        out[j] += c * r
        return tuple(out)

    def _convolve_into(self, acc, x, y):
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        acc[i + j] += a * b

    def mul(self, x, y):
        acc = [MPQ_ZERO] * (2 * self.degree - 1)
        self._convolve_into(acc, x, y)
        return self._reduce(acc)

    def dot(self, xs, ys):
        acc = [MPQ_ZERO] * (2 * self.degree - 1)
        for x, y in zip(xs, ys):
            self._convolve_into(acc, x, y)
        return self._reduce(acc)

    def inv(self, x):
        if not any(x):
            raise DivisionByZero("inverse of zero")
        deg = self.degree
        # columns: x * z^j; solve (mult-by-x) y = 1
        cols, basis = [], list(self.one)
        for j in range(deg):
            e = [MPQ_ZERO] * deg
            e[j] = MPQ_ONE
            cols.append(self.mul(x, tuple(e)))
        aug = [[cols[j][i] for j in range(deg)] + [basis[i]] for i in range(deg)]
        for c in range(deg):
            piv = next(r for r in range(c, deg) if aug[r][c])
            aug[c], aug[piv] = aug[piv], aug[c]
            pv = aug[c][c]
            aug[c] = [v / pv for v in aug[c]]
            for r in range(deg):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
        return tuple(aug[i][deg] for i in range(deg))

    def from_int(self, k: int):
        return (mpq(k),) + (MPQ_ZERO,) * (self.degree - 1)

    def generator(self) -> "Scalar":
        """The class of z."""
        return Scalar(self, self.generator_raw())

    def generator_raw(self):
        if self.degree == 1:
            # z is rational here: Phi_1 = z - 1, Phi_2 = z + 1
            return (mpq(-self.modulus[0]),)
        out = [MPQ_ZERO] * self.degree
        out[1] = MPQ_ONE
        return tuple(out)

    def _coerce_number(self, value):
        if isinstance(value, tuple):
            if len(value) != self.degree:
                raise FieldMismatch(f"expected {self.degree} coefficients")
            return tuple(mpq(v) for v in value)
        try:
            return (mpq(value),) + (MPQ_ZERO,) * (self.degree - 1)
        except (TypeError, ValueError) as exc:
            raise FieldMismatch(f"cannot interpret {value!r} in {self}") from exc

    def parse(self, text: str, line=None):
        s = _normalize_text(text)
        if not s:
            raise ParseError("empty scalar", line)
        pos, acc = 0, self.zero
        for m in _TERM_RE.finditer(s):
            if m.start() != pos:
                break
            pos = m.end()
            sign, body = m.groups()
            t = _CYCLO_TERM_RE.match(body)
            if not t:
                raise ParseError(f"bad term {body!r} in {text!r}", line, m.start() + 1)
            if t.group(2):
                coeff = _parse_fraction(t.group(1) or "1", line)
                exp = int(t.group(3) or 1)
                term = self.mul(self.pow(self.generator_raw(), exp), self._coerce_number(coeff))
            else:
                term = self._coerce_number(_parse_fraction(t.group(4), line))
            acc = self.sub(acc, term) if sign == "-" else self.add(acc, term)
        if pos != len(s):
            raise ParseError(f"cannot parse {text!r}", line, pos + 1)
        return acc

    def format(self, x, compact: bool = False) -> str:
        terms = []
        for k in range(len(x) - 1, -1, -1):
            c = x[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = _format_fraction(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{_format_fraction(mag)}*{mono}"
            terms.append((sign, body))
        if not terms:
            return "0"
        sep = "" if compact else " "
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f"{sep}{sign}{sep}{body}"
        return out

    def random(self, rng, bound: int = 2):
        return tuple(mpq(rng.randint(-bound, bound)) if rng.random() < 0.5 else MPQ_ZERO
                     for _ in range(self.degree))


QQ = RationalField()


@functools.lru_cache(maxsize=None)
def prime(p: int) -> PrimeField:
    return PrimeField(p)


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> CyclotomicField:
    return CyclotomicField(n)


def rational() -> RationalField:
    return QQ


def parse_field(text: str) -> Field:
    """Parse ``rational``, ``cyclotomic 3``, ``gf 7`` (``:`` also accepted as separator)."""
    parts = text.replace(":", " ").split()
    if not parts:
        raise ParseError("empty field description")
    kind = parts[0].lower()
    try:
        if kind in ("rational", "q", "qq") and len(parts) == 1:
            return QQ
        if kind in ("cyclotomic", "cyclo") and len(parts) == 2:
            return cyclotomic(int(parts[1]))
        if kind in ("gf", "prime", "fp") and len(parts) == 2:
            return prime(int(parts[1]))
    except ValueError as exc:
        raise ParseError(f"bad field description {text!r}: {exc}") from exc
    raise ParseError(f"unknown field description {text!r}")


def _has_order(F: Field, g, n: int) -> bool:
    if F.pow(g, n) != F.one:
        return False
    return all(F.pow(g, n // q) != F.one for q in _prime_factors(n))


def primitive_root_of_unity(F: Field, n: int) -> "Scalar":
    """A primitive n-th root of unity in ``F``; raises :class:`NoSuchRoot` if none exists.

    For Q(zeta_m) the generator z has order m, or 2m when m is odd (via -z).
    Over F_p the smallest residue of exact order n is returned.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(F, RationalField):
        if n == 1:
            return F.one_scalar()
        if n == 2:
            return F.scalar(-1)
        raise NoSuchRoot(f"Q has no primitive {n}-th root of unity")
    if isinstance(F, CyclotomicField):
        g, order = F.generator_raw(), F.n
        if order % n and F.n % 2 == 1:
            g, order = F.neg(g), 2 * F.n
        if order % n:
            raise NoSuchRoot(f"{F} has no primitive {n}-th root of unity")
        return Scalar(F, F.pow(g, order // n))
    if isinstance(F, PrimeField):
        if (F.p - 1) % n:
            raise NoSuchRoot(f"{n} does not divide {F.p} - 1")
        for g in range(1, F.p):
            if _has_order(F, g, n):
                return Scalar(F, g)
    raise NoSuchRoot(f"no primitive {n}-th root of unity in {F}")


class Scalar:
    """An exact field element bound to its field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value: Any):
        self.field = field
        self.value = value

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(o, self.field.inv(self.value)))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return Scalar(self.field, self.field.pow(self.value, k))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __str__(self) -> str:
        return self.field.format(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.field.describe()}, {self.field.format(self.value)})"
