"""Classification of characteristic morphisms: generated algebras, irreducibility,
named fixtures and small exhaustive/random searches over finite fields."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from gmpy2 import mpq

from .algebra import LinearMap
from .checks import characteristic_check, is_algebra_homomorphism
from .errors import BadParams, NoSuchMode, SearchSpaceTooLarge
from .fields import QQ, CyclotomicField, Field, PrimeField, RationalField
from .matrix import Echelon, Matrix, Subspace, char_poly, inverse, kernel, min_poly, rank, spin_up
from .poly import Polynomial

EXHAUSTIVE_SPIN_LIMIT = 10**5
EXHAUSTIVE_SEARCH_LIMIT = 10**7
_CANDIDATE_LIMIT = 10**5

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"
UNKNOWN = "Unknown"


def generated_algebra(phi: LinearMap) -> tuple[list[Matrix], int]:
    """Basis of the unital subalgebra of End(M) generated by the alphas.

    Words are extended on the right by each generator until no product leaves
    the span; the returned basis consists of those words.
    """
    F, n = phi.field, phi.dim
    ech = Echelon(F, n * n)
    basis: list[Matrix] = []
    queue: list[Matrix] = []
    for M in (Matrix.identity(F, n), *phi.alphas):
        if ech.add(M.vec()):
            basis.append(M)
            queue.append(M)
    while queue and len(basis) < n * n:
        B = queue.pop(0)
        for g in phi.alphas:
            P = B @ g
            if ech.add(P.vec()):
                basis.append(P)
                queue.append(P)
    return basis, len(basis)


@dataclass
class IrreducibilityVerdict:
    status: str
    witness: Subspace | None = None
    certificate: str | None = None
    detail: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.status == REDUCIBLE and (self.witness is None or not self.witness.is_proper_nonzero()):
            raise ValueError("a reducibility verdict needs a proper nonzero witness")
        if self.status == IRREDUCIBLE and self.certificate is None:
            raise ValueError("an irreducibility verdict needs a certificate")


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [i for i in range(1, int(k ** 0.5) + 1) if k % i == 0]
    return sorted(set(small + [k // i for i in small]))


def _rational_roots(coeffs) -> list:
    """Roots in Q of a polynomial with mpq coefficients (rational root test)."""
    cs = [mpq(c) for c in coeffs]
    roots = []
    while cs and cs[0] == 0:
        roots.append(mpq(0))
        cs = cs[1:]
    if len(cs) <= 1:
        return roots
    lcm = 1
    for c in cs:
        den = int(c.denominator)
        lcm = lcm * den // _gcd(lcm, den)
    ints = [int(c * lcm) for c in cs]
    if abs(ints[0]) > 10**12 or abs(ints[-1]) > 10**12:
        return roots
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (mpq(p, q), mpq(-p, q)):
                if cand not in roots and _horner(ints, cand) == 0:
                    roots.append(cand)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _horner(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def roots_in_field(poly: Polynomial) -> list:
    """Raw roots of ``poly`` lying in its field.

    Complete over F_p (by enumeration, p <= 10^5) and over Q.  Over Q(zeta_n)
    only rational roots and the 2n-th roots of unity are tried.
    """
    F = poly.field
    if poly.degree < 1:
        return []
    if isinstance(F, PrimeField):
        if F.p > _CANDIDATE_LIMIT:
            return []
        return [x for x in range(F.p) if poly(F.scalar(x)).is_zero()]
    if isinstance(F, RationalField):
        return _rational_roots(poly.coeffs)
    if isinstance(F, CyclotomicField):
        found = []
        if all(not any(c[1:]) for c in poly.coeffs):
            found = [F._coerce_number(r) for r in _rational_roots([c[0] for c in poly.coeffs])]
        z = F.generator_raw()
        for k in range(2 * F.n):
            cand = F.pow(z, k) if k < F.n else F.neg(F.pow(z, k - F.n))
            if cand not in found and poly(F.scalar(cand)).is_zero():
                found.append(cand)
        return found
    return []


def _annihilator(W: Subspace) -> Subspace:
    """{v : u . v = 0 for all u in W}."""
    F, n = W.field, W.ambient
    if W.is_zero():
        return Subspace.full(F, n)
    rows = [list(b) for b in W.basis] + [[F.zero] * n for _ in range(n - W.dim)]
    return kernel(Matrix._raw(F, rows))


def _projective_vectors(F: PrimeField, n: int):
    for lead in range(n):
        for tail in itertools.product(range(F.p), repeat=n - lead - 1):
            yield [0] * lead + [1] + list(tail)


def exhaustive_spin_up(phi: LinearMap) -> IrreducibilityVerdict | None:
    """Spin up every projective point over F_q; None when out of budget."""
    F, n = phi.field, phi.dim
    if not isinstance(F, PrimeField):
        return None
    q = F.p
    count = (q ** n - 1) // (q - 1)
    if count > EXHAUSTIVE_SPIN_LIMIT:
        return None
    for v in _projective_vectors(F, n):
        W = spin_up(Subspace(F, n, [v]), phi.alphas)
        if not W.is_full():
            return IrreducibilityVerdict(REDUCIBLE, W, detail={"method": "exhaustive"})
    return IrreducibilityVerdict(IRREDUCIBLE, certificate="ExhaustiveSpinUp",
                                 detail={"vectors": count})


def _seed_vectors(phi: LinearMap, gens: tuple, algebra_basis: list[Matrix], rng: random.Random):
    F, n = phi.field, phi.dim
    I = Matrix.identity(F, n)
    for a in gens:
        for lam in roots_in_field(min_poly(a)):
            yield from kernel(a - I.scale(lam)).basis
    candidates = list(algebra_basis)
    for _ in range(8):
        X = Matrix.zero(F, n)
        for B in algebra_basis:
            X = X + B.scale(F.random(rng))
        candidates.append(X)
    for X in candidates:
        K = kernel(X)
        if K.is_proper_nonzero():
            yield from K.basis


def irreducibility(phi: LinearMap, seed: int = 0) -> IrreducibilityVerdict:
    """Decide whether the alphas have a common proper nonzero invariant subspace.

    Full generated algebra certifies irreducibility over any field.  Otherwise
    candidate vectors (eigenvectors for eigenvalues in the field, kernels of
    algebra elements) are spun up under the alphas and, dually, under their
    transposes; over small prime fields every projective vector is tried.
    """
    F, n = phi.field, phi.dim
    basis, gdim = generated_algebra(phi)
    if gdim == n * n:
        return IrreducibilityVerdict(IRREDUCIBLE, certificate="GeneratedDimension",
                                     detail={"generated_dimension": gdim})
    rng = random.Random(seed)
    for v in _seed_vectors(phi, phi.alphas, basis, rng):
        W = spin_up(Subspace(F, n, [v]), phi.alphas)
        if W.is_proper_nonzero():
            return IrreducibilityVerdict(REDUCIBLE, W, detail={"generated_dimension": gdim})
    transposed = tuple(a.transpose() for a in phi.alphas)
    tbasis = [B.transpose() for B in basis]
    for v in _seed_vectors(phi, transposed, tbasis, rng):
        U = spin_up(Subspace(F, n, [v]), transposed)
        if U.is_proper_nonzero():
            return IrreducibilityVerdict(REDUCIBLE, _annihilator(U),
                                         detail={"generated_dimension": gdim, "via": "dual"})
    verdict = exhaustive_spin_up(phi)
    if verdict is not None:
        verdict.detail["generated_dimension"] = gdim
        return verdict
    return IrreducibilityVerdict(UNKNOWN, detail={"generated_dimension": gdim})


def sub_and_quotient(phi: LinearMap, W: Subspace) -> tuple[LinearMap, LinearMap]:
    """Restriction of phi to an invariant subspace W and the induced map on M/W."""
    F, n, k = phi.field, phi.dim, W.dim
    if not W.is_proper_nonzero() or not W.is_invariant(phi.alphas):
        raise BadParams("W must be a proper nonzero invariant subspace")
    cols = [list(b) for b in W.basis]
    for j in range(n):
        if j not in W.pivots:
            cols.append([F.one if i == j else F.zero for i in range(n)])
    P = Matrix._raw(F, zip(*cols))
    P_inv = inverse(P)
    subs, quots = [], []
    for a in phi.alphas:
        B = (P_inv @ a @ P).rows
        subs.append(Matrix._raw(F, [r[:k] for r in B[:k]]))
        quots.append(Matrix._raw(F, [r[k:] for r in B[k:]]))
    return LinearMap(F, tuple(subs)), LinearMap(F, tuple(quots))


def signature(phi: LinearMap) -> tuple:
    """Fingerprint invariant under simultaneous conjugation of the alphas.

    Sorted char polys and traces of all words of length <= 3, plus ranks of
    those words, ranks of alpha_i - id and the generated algebra dimension.
    Traces alone cannot tell an extension from the direct sum of its factors.
    """
    F, n = phi.field, phi.dim
    polys = tuple(sorted(str(char_poly(a)) for a in phi.alphas))
    traces, ranks = [], []
    for length in (1, 2, 3):
        for word in itertools.product(range(phi.d), repeat=length):
            M = phi.alphas[word[0]]
            for i in word[1:]:
                M = M @ phi.alphas[i]
            traces.append(M.trace().value)
            ranks.append(rank(M))
    I = Matrix.identity(F, n)
    shifted = tuple(rank(a - I) for a in phi.alphas)
    return polys, tuple(traces), tuple(ranks), shifted, generated_algebra(phi)[1]


# ---------------------------------------------------------------------------
# fixtures

FIXTURE_NAMES = ("example1", "example2", "diag_hom")


def fixture(name: str, field: Field = QQ, **params) -> LinearMap:
    """Named linear maps.

    ``example1`` (params ``a``, ``b`` with a + b != 0) is characteristic but not
    multiplicative; ``example2`` is irreducible and characteristic but not
    multiplicative; ``diag_hom`` (params ``d``, ``dim``, optional
    ``multiplicities``) is the block-diagonal homomorphism with alpha_i the
    identity on block i.
    """
    F = field
    if name == "example1":
        a, b = F.coerce(params.get("a", 1)), F.coerce(params.get("b", 1))
        if F.is_zero(F.add(a, b)):
            raise BadParams("example1 needs a + b != 0")
        return LinearMap(F, (
            Matrix._raw(F, [[F.one, a], [F.zero, F.zero]]),
            Matrix._raw(F, [[F.zero, b], [F.zero, F.one]]),
        ))
    if name == "example2":
        if F.characteristic == 2:
            raise BadParams("example2 needs characteristic != 2")
        half = F.inv(F.from_int(2))
        mats = (
            [[0, 1, 1], [0, 1, -1], [0, -1, 1]],
            [[1, 0, -1], [1, 0, 1], [-1, 0, 1]],
            [[1, -1, 0], [-1, 1, 0], [1, 1, 0]],
        )
        return LinearMap(F, tuple(Matrix(F, m).scale(half) for m in mats))
    if name == "diag_hom":
        d = int(params.get("d", 2))
        mult = params.get("multiplicities")
        dim = params.get("dim")
        if mult is None:
            dim = d if dim is None else int(dim)
            mult = [dim // d + (1 if i < dim % d else 0) for i in range(d)]
        mult = [int(m) for m in mult]
        if len(mult) != d or any(m < 0 for m in mult):
            raise BadParams("multiplicities must be d nonnegative integers")
        if dim is not None and sum(mult) != int(dim):
            raise BadParams(f"multiplicities sum to {sum(mult)}, dim is {dim}")
        dim = sum(mult)
        if dim < 1:
            raise BadParams("dim must be positive")
        alphas, start = [], 0
        for m in mult:
            diag = [F.one if start <= k < start + m else F.zero for k in range(dim)]
            alphas.append(Matrix.diagonal(F, diag))
            start += m
        return LinearMap(F, tuple(alphas))
    raise BadParams(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")


# ---------------------------------------------------------------------------
# search

@dataclass
class SearchResult:
    linear_map: LinearMap
    is_hom: bool
    irreducibility: IrreducibilityVerdict
    signature: tuple
    is_characteristic: bool = True


def _all_matrices(F: PrimeField, dim: int):
    for entries in itertools.product(range(F.p), repeat=dim * dim):
        yield Matrix._raw(F, [entries[i * dim:(i + 1) * dim] for i in range(dim)])


def _diagonal_condition(M: Matrix, d: int) -> bool:
    """Coefficient of x_i^d in prod (T - x_k): alpha^(d-1) (alpha - 1) = 0."""
    I = Matrix.identity(M.field, M.dim)
    return ((M ** (d - 1)) @ (M - I)).is_zero()


def _classify(phi: LinearMap) -> SearchResult:
    return SearchResult(phi, is_algebra_homomorphism(phi).passed, irreducibility(phi), signature(phi))


def run_search(field: Field, d: int, dim: int, mode: str = "exhaustive", budget: int = 1000,
               seed: int = 0, dedupe: bool = True) -> tuple[list[SearchResult], dict]:
    """Collect characteristic morphisms k^d -> End(k^dim); returns (results, stats).

    Exhaustive mode first restricts each alpha_i to matrices with
    alpha^(d-1)(alpha - 1) = 0 (a coefficient of the identity that involves
    alpha_i alone), which leaves the set of characteristic tuples unchanged.
    """
    if mode not in ("exhaustive", "random"):
        raise NoSuchMode(f"unknown search mode {mode!r}")
    if d < 1 or dim < 1:
        raise BadParams("d and dim must be positive")
    stats = {"mode": mode, "field": field.describe(), "d": d, "dim": dim}
    candidates = None
    if isinstance(field, PrimeField) and field.p ** (dim * dim) <= _CANDIDATE_LIMIT:
        candidates = [M for M in _all_matrices(field, dim) if _diagonal_condition(M, d)]
        stats["candidates_per_alpha"] = len(candidates)

    if mode == "exhaustive":
        if not isinstance(field, PrimeField):
            raise NoSuchMode("exhaustive search needs a prime field")
        total = field.p ** (d * dim * dim)
        if total > EXHAUSTIVE_SEARCH_LIMIT:
            raise SearchSpaceTooLarge(f"{total} tuples exceed the limit {EXHAUSTIVE_SEARCH_LIMIT}")
        if candidates is None:
            candidates = [M for M in _all_matrices(field, dim) if _diagonal_condition(M, d)]
        stats["tuples"] = total
        tuples = itertools.product(candidates, repeat=d)
    else:
        rng = random.Random(seed)
        stats["tuples"] = budget
        stats["seed"] = seed

        def sample():
            if candidates is not None:
                return rng.choice(candidates)
            return Matrix._raw(field, [[field.random(rng) for _ in range(dim)] for _ in range(dim)])

        tuples = (tuple(sample() for _ in range(d)) for _ in range(budget))

    results, seen, n_char = [], set(), 0
    for alphas in tuples:
        phi = LinearMap(field, tuple(alphas))
        if not characteristic_check(phi, first_only=True).passed:
            continue
        n_char += 1
        sig = signature(phi)
        if dedupe and sig in seen:
            continue
        seen.add(sig)
        results.append(_classify(phi))
    stats["characteristic"] = n_char
    stats["pass_rate"] = n_char / stats["tuples"] if stats["tuples"] else 0.0
    stats["results"] = len(results)
    return results, stats


def search(field: Field, d: int, dim: int, mode: str = "exhaustive", budget: int = 1000,
           seed: int = 0, dedupe: bool = True) -> list[SearchResult]:
    return run_search(field, d, dim, mode, budget, seed, dedupe)[0]
