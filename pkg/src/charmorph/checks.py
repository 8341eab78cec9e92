"""Certification procedures for a linear map phi: k^d -> End(M).

Every check returns a :class:`CheckReport`; the verdict is derived from the
violation list, so ``pass`` and "no violations" can never disagree.
"""

from __future__ import annotations

import functools
import itertools
import math
import time
import warnings
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from .algebra import AlgebraElement, LinearMap, apply
from .errors import CharacteristicTooSmall, NoSuchMode, NTooSmall
from .fields import Field, Scalar, cyclotomic, parse_field, primitive_root_of_unity
from .matrix import Matrix, kernel, Subspace

FULL_TORSION_LIMIT = 10**6


@dataclass
class Violation:
    kind: str
    index: tuple | None
    witness: Matrix | Scalar

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, Matrix):
            witness = w.to_strings()
        else:
            witness = str(w)
        return {"kind": self.kind, "index": _jsonable(self.index), "witness": witness}

    @classmethod
    def from_dict(cls, data: dict, field: Field) -> "Violation":
        w = data["witness"]
        witness = Matrix(field, w) if isinstance(w, list) else field.scalar(w)
        return cls(data["kind"], _tupled(data["index"]), witness)


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _tupled(x):
    if isinstance(x, list):
        return tuple(_tupled(v) for v in x)
    return x


@dataclass
class CheckReport:
    check_name: str
    field: Field
    violations: list = dc_field(default_factory=list)
    stats: dict = dc_field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "check": self.check_name,
            "field": self.field.describe(),
            "verdict": self.verdict,
            "violations": [v.to_dict() for v in self.violations],
            "stats": self.stats,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CheckReport":
        F = parse_field(data["field"])
        report = cls(data["check"], F, [Violation.from_dict(v, F) for v in data["violations"]],
                     dict(data.get("stats", {})))
        if report.verdict != data["verdict"]:
            raise ValueError("verdict inconsistent with violations")
        return report

    def summary(self) -> str:
        s = self.stats
        extra = f"{s.get('equations', '?')} equations, {s.get('elapsed', 0.0):.3f}s"
        if self.passed:
            return f"{self.check_name}: pass ({extra})"
        return f"{self.check_name}: fail ({len(self.violations)} violations; {extra})"


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


# ---------------------------------------------------------------------------
# homomorphism relations

def is_algebra_homomorphism(phi: LinearMap, first_only: bool = False) -> CheckReport:
    """Unital algebra map test: sum alpha_i = id, alpha_i^2 = alpha_i, alpha_i alpha_j = 0."""
    F, n, alphas = phi.field, phi.dim, phi.alphas
    report = CheckReport("hom", F)
    eqs = 0
    with _Timer() as t:
        def relations():
            yield "unital", None, phi.image_of_one() - Matrix.identity(F, n)
            for i, a in enumerate(alphas):
                yield "idempotent", (i + 1,), a @ a - a
            for i, j in itertools.permutations(range(phi.d), 2):
                yield "orthogonal", (i + 1, j + 1), alphas[i] @ alphas[j]

        for kind, index, residual in relations():
            eqs += 1
            if not residual.is_zero():
                report.violations.append(Violation(kind, index, residual))
                if first_only:
                    break
    report.stats.update(equations=eqs, elapsed=t.elapsed)
    return report


# ---------------------------------------------------------------------------
# commutative identities

def _expand_commuting_product(F: Field, n: int, factors: list[list[Matrix]]) -> dict:
    """Expand prod_j (sum_m y_m B[j][m]) in commuting y's with matrix coefficients.

    Returns {exponent tuple: coefficient matrix}; matrices multiply in factor order.
    """
    r = len(factors[0])
    poly = {(0,) * r: Matrix.identity(F, n)}
    for coeffs in factors:
        new: dict = {}
        for expo, M in poly.items():
            for m, B in enumerate(coeffs):
                e = list(expo)
                e[m] += 1
                e = tuple(e)
                term = M @ B
                new[e] = new[e] + term if e in new else term
        poly = new
    return poly


def _linear_factor(F: Field, n: int, betas: list[Matrix], j: int) -> list[Matrix]:
    """Coefficients of (sum_m y_m beta_m) - y_j."""
    I = Matrix.identity(F, n)
    return [b - I if m == j else b for m, b in enumerate(betas)]


def characteristic_check(phi: LinearMap, first_only: bool = False) -> CheckReport:
    """chi_a(phi(a)) = 0 as a polynomial identity in the coordinates of a.

    With T = sum x_j alpha_j the identity is prod_i (T - x_i) = 0 in
    k[x_1..x_d] (x) End(M); one coefficient matrix per degree-d monomial.
    """
    F, n = phi.field, phi.dim
    report = CheckReport("char", F)
    with _Timer() as t:
        betas = list(phi.alphas)
        poly = _expand_commuting_product(F, n, [_linear_factor(F, n, betas, i) for i in range(phi.d)])
        for expo in sorted(poly, reverse=True):
            if not poly[expo].is_zero():
                report.violations.append(Violation("monomial", expo, poly[expo]))
                if first_only:
                    break
    report.stats.update(equations=len(poly), elapsed=t.elapsed)
    return report


def set_partitions(d: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All set partitions of {0..d-1} as tuples of blocks (restricted growth strings)."""
    def rgs(prefix, top):
        if len(prefix) == d:
            blocks = defaultdict(list)
            for i, b in enumerate(prefix):
                blocks[b].append(i)
            yield tuple(tuple(blocks[b]) for b in sorted(blocks))
            return
        for b in range(top + 2):
            yield from rgs(prefix + [b], max(top, b))

    if d == 0:
        yield ()
        return
    yield from rgs([0], 0)


def minimal_characteristic_check(phi: LinearMap, first_only: bool = False) -> CheckReport:
    """Minimal-polynomial identity, one stratum per set partition of the coordinates.

    On the stratum where coordinates agree exactly along the blocks B_1..B_r,
    phi(a) = sum_m y_m beta_m with beta_m = sum_{i in B_m} alpha_i, and the
    minimal polynomial is prod_j (t - y_j).
    """
    F, n = phi.field, phi.dim
    report = CheckReport("minchar", F)
    eqs = 0
    with _Timer() as t:
        for partition in set_partitions(phi.d):
            betas = []
            for block in partition:
                b = phi.alphas[block[0]]
                for i in block[1:]:
                    b = b + phi.alphas[i]
                betas.append(b)
            r = len(betas)
            poly = _expand_commuting_product(F, n, [_linear_factor(F, n, betas, j) for j in range(r)])
            eqs += len(poly)
            label = tuple(tuple(i + 1 for i in block) for block in partition)
            for expo in sorted(poly, reverse=True):
                if not poly[expo].is_zero():
                    report.violations.append(Violation("partition-monomial", (label, expo), poly[expo]))
                    if first_only:
                        break
            if first_only and report.violations:
                break
    report.stats.update(equations=eqs, elapsed=t.elapsed)
    return report


# ---------------------------------------------------------------------------
# the noncommutative identity

def _require_characteristic(F: Field, d: int) -> None:
    if F.characteristic and F.characteristic <= d:
        raise CharacteristicTooSmall(
            f"characteristic {F.characteristic} must be 0 or greater than d={d}")


class _WordProducts:
    """Memoized ordered products alpha_{w_1} ... alpha_{w_k}, empty word = id."""

    def __init__(self, phi: LinearMap):
        self.alphas = phi.alphas
        self.cache = {(): Matrix.identity(phi.field, phi.dim)}

    def __getitem__(self, word: tuple) -> Matrix:
        M = self.cache.get(word)
        if M is None:
            M = self[word[:-1]] @ self.alphas[word[-1]]
            self.cache[word] = M
        return M


@functools.lru_cache(maxsize=None)
def _subset_terms(idx: tuple) -> tuple:
    """Collapse sum over S of (-1)^|S| (d-|S|)! * word(complement of S) by word.

    S ranges over position sets on which k -> idx[k] is injective; those are
    exactly the sets admitting permutations with sigma(k) = idx[k] on S, and
    there are (d-|S|)! of them.
    """
    d = len(idx)
    terms: dict = defaultdict(int)
    for mask in range(1 << d):
        chosen = [idx[k] for k in range(d) if mask >> k & 1]
        if len(set(chosen)) != len(chosen):
            continue
        word = tuple(idx[k] for k in range(d) if not mask >> k & 1)
        terms[word] += (-1) ** len(chosen) * math.factorial(d - len(chosen))
    return tuple((w, c) for w, c in terms.items() if c)


def _fast_residual(phi: LinearMap, idx: tuple, words: _WordProducts) -> Matrix:
    F = phi.field
    acc = Matrix.zero(F, phi.dim)
    for word, c in _subset_terms(idx):
        acc = acc + words[word].scale(F.from_int(c))
    return acc


def _naive_residual(phi: LinearMap, idx: tuple, shifted: tuple) -> Matrix:
    """Direct sum over all d! permutations of the ordered factor products."""
    d, alphas = phi.d, phi.alphas
    leaves = []

    def walk(k, used, prefix):
        if k == d:
            leaves.append(prefix)
            return
        i = idx[k]
        for s in range(d):
            if not used >> s & 1:
                walk(k + 1, used | 1 << s, prefix @ (shifted[i] if s == i else alphas[i]))

    walk(0, 0, Matrix.identity(phi.field, phi.dim))
    total = leaves[0]
    for leaf in leaves[1:]:
        total = total + leaf
    return total


def _residual_iter(phi: LinearMap, mode: str):
    if mode == "fast":
        words = _WordProducts(phi)
        for idx in itertools.product(range(phi.d), repeat=phi.d):
            yield idx, _fast_residual(phi, idx, words)
    elif mode == "naive":
        I = Matrix.identity(phi.field, phi.dim)
        shifted = tuple(a - I for a in phi.alphas)
        for idx in itertools.product(range(phi.d), repeat=phi.d):
            yield idx, _naive_residual(phi, idx, shifted)
    else:
        raise NoSuchMode(f"unknown nc mode {mode!r}")


def nc_residuals(phi: LinearMap, mode: str = "fast") -> dict:
    """All d^d multi-index residuals, keyed by 1-based multi-index."""
    _require_characteristic(phi.field, phi.d)
    return {tuple(i + 1 for i in idx): R for idx, R in _residual_iter(phi, mode)}


def nc_characteristic_check(phi: LinearMap, mode: str = "fast", first_only: bool = False) -> CheckReport:
    """The symmetrized noncommutative characteristic identity chi_d(T) = 0.

    The coefficient of the word x_{i_1}...x_{i_d} is
    R(i) = sum_sigma prod_k (alpha_{i_k} - [i_k = sigma(k)]), ordered product.
    """
    _require_characteristic(phi.field, phi.d)
    report = CheckReport("nc", phi.field)
    eqs = 0
    with _Timer() as t:
        for idx, R in _residual_iter(phi, mode):
            eqs += 1
            if not R.is_zero():
                report.violations.append(Violation("multi-index", tuple(i + 1 for i in idx), R))
                if first_only:
                    break
    report.stats.update(equations=eqs, elapsed=t.elapsed, mode=mode)
    return report


# ---------------------------------------------------------------------------
# roots of unity

def torsion_exponents(d: int, n: int, mode: str) -> list[tuple[int, ...]]:
    """Exponent vectors c with a = (zeta^c_1, ..., zeta^c_d).

    ``proof_path`` keeps only 1 + (zeta^b - 1) e_i and 1 + (zeta^a - 1)(e_i + e_j).
    """
    if mode == "full":
        return list(itertools.product(range(n), repeat=d))
    if mode != "proof_path":
        raise NoSuchMode(f"unknown roots mode {mode!r}")
    out = {}
    for i in range(d):
        for b in range(n):
            c = [0] * d
            c[i] = b
            out[tuple(c)] = None
    for i, j in itertools.combinations(range(d), 2):
        for a in range(n):
            c = [0] * d
            c[i] = c[j] = a
            out[tuple(c)] = None
    return list(out)


def roots_of_unity_check(phi: LinearMap, n: int, mode: str | None = None,
                         first_only: bool = False) -> CheckReport:
    """phi(1) = id and phi(a)^n = id for the n-torsion elements a of k^d."""
    if n <= 2:
        raise NTooSmall(f"n must exceed 2, got {n}")
    F, d = phi.field, phi.d
    zeta = primitive_root_of_unity(F, n).value
    if mode is None:
        mode = "full" if n ** d <= FULL_TORSION_LIMIT else "proof_path"
        if mode == "proof_path":
            warnings.warn(f"{n}^{d} torsion elements; checking only the proof-path subset",
                          stacklevel=2)
    exps = torsion_exponents(d, n, mode)
    powers = [F.pow(zeta, k) for k in range(n)]
    I = Matrix.identity(F, phi.dim)
    report = CheckReport("roots", F)
    eqs = 1
    with _Timer() as t:
        gate = phi.image_of_one() - I
        if not gate.is_zero():
            report.violations.append(Violation("unital", None, gate))
        if not (first_only and report.violations):
            for c in exps:
                eqs += 1
                a = AlgebraElement(F, tuple(powers[k] for k in c))
                R = apply(phi, a) ** n - I
                if not R.is_zero():
                    report.violations.append(Violation("torsion", c, R))
                    if first_only:
                        break
    report.stats.update(equations=eqs, elapsed=t.elapsed, mode=mode, n=n)
    return report


# ---------------------------------------------------------------------------
# the root-ratio dichotomy

def verify_root_ratio_lemma(n: int, field: Field | None = None,
                            nondegenerate: bool = False) -> list[tuple[int, int, int, int]]:
    """Quadruples (a, b, c, d) mod n, b, d != 0, with
    (zeta^a - 1)(zeta^d - 1) = (zeta^c - 1)(zeta^b - 1) but neither
    a = b and c = d, nor a = c and b = d.

    With ``nondegenerate=True`` quadruples whose common ratio is zero
    (a = c = 0) are skipped.
    """
    if n < 2:
        raise NTooSmall(f"n must be at least 2, got {n}")
    F = field if field is not None else cyclotomic(n)
    zeta = primitive_root_of_unity(F, n).value
    u = [F.sub(F.pow(zeta, k), F.one) for k in range(n)]
    classes: dict = defaultdict(list)
    for x in range(n):
        for y in range(1, n):
            classes[F.mul(u[x], u[y])].append((x, y))
    bad = []
    for pairs in classes.values():
        for (a, d), (c, b) in itertools.product(pairs, repeat=2):
            if nondegenerate and a == 0 and c == 0:
                continue
            if not ((a == b and c == d) or (a == c and b == d)):
                bad.append((a, b, c, d))
    return sorted(bad)


def one_eigenspaces(phi: LinearMap) -> list[Subspace]:
    """ker(alpha_i - id) for each i."""
    I = Matrix.identity(phi.field, phi.dim)
    return [kernel(a - I) for a in phi.alphas]
