"""Random linear maps for the equivalence suites.

Homomorphisms are block-diagonal idempotent patterns conjugated by a random
integer unimodular matrix (so the inverse stays integral over every field).
Non-homomorphisms come in several flavours, including characteristic
non-homomorphisms built from the example1 extension.
"""

import random

from charmorph.algebra import LinearMap
from charmorph.category import fixture
from charmorph.matrix import Matrix, inverse


def random_unimodular(F, n, rng: random.Random):
    rows = [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [rows[p] for p in perm]
    for _ in range(3 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        c = F.from_int(rng.choice((-2, -1, 1, 2)))
        rows[i] = [F.add(x, F.mul(c, y)) for x, y in zip(rows[i], rows[j])]
    P = Matrix._raw(F, rows)
    return P, inverse(P)


def random_multiplicities(d, dim, rng):
    cuts = sorted(rng.randint(0, dim) for _ in range(d - 1))
    bounds = [0] + cuts + [dim]
    return [bounds[k + 1] - bounds[k] for k in range(d)]


def conjugated_hom(F, d, dim, rng):
    phi = fixture("diag_hom", F, d=d, dim=dim, multiplicities=random_multiplicities(d, dim, rng))
    return phi.conjugate(*random_unimodular(F, dim, rng))


def _small(F, rng):
    return F.from_int(rng.randint(-2, 2))


def random_map(F, d, dim, rng):
    return LinearMap(F, tuple(
        Matrix._raw(F, [[_small(F, rng) for _ in range(dim)] for _ in range(dim)]) for _ in range(d)))


def perturbed_hom(F, d, dim, rng):
    phi = conjugated_hom(F, d, dim, rng)
    k, i, j = rng.randrange(d), rng.randrange(dim), rng.randrange(dim)
    rows = [list(r) for r in phi.alphas[k].rows]
    rows[i][j] = F.add(rows[i][j], F.from_int(rng.choice((-1, 1, 2))))
    alphas = list(phi.alphas)
    alphas[k] = Matrix._raw(F, rows)
    return LinearMap(F, tuple(alphas))


def unital_random(F, d, dim, rng):
    """alpha_d = id - (alpha_1 + ... + alpha_{d-1}), the rest random."""
    rest = random_map(F, d - 1, dim, rng).alphas if d > 1 else ()
    last = Matrix.identity(F, dim)
    for a in rest:
        last = last - a
    return LinearMap(F, tuple(rest) + (last,))


def extension_map(F, d, dim, rng):
    """example1 block (characteristic, not multiplicative) plus a homomorphism, conjugated."""
    while True:
        a, b = _small(F, rng), _small(F, rng)
        if not F.is_zero(F.add(a, b)):
            break
    ex = fixture("example1", F, a=a, b=b)
    rest = dim - 2
    mult = random_multiplicities(d, rest, rng) if rest else [0] * d
    alphas = []
    for i in range(d):
        rows = [[F.zero] * dim for _ in range(dim)]
        if i < 2:
            for r in range(2):
                for c in range(2):
                    rows[r][c] = ex.alphas[i].rows[r][c]
        start = 2 + sum(mult[:i])
        for k in range(start, start + mult[i]):
            rows[k][k] = F.one
        alphas.append(Matrix._raw(F, rows))
    return LinearMap(F, tuple(alphas)).conjugate(*random_unimodular(F, dim, rng))


def non_unital_idempotents(F, d, dim, rng):
    mult = random_multiplicities(d, dim, rng)
    k = max(range(d), key=lambda i: mult[i])
    mult[k] -= 1
    alphas, start = [], 0
    for m in mult:
        alphas.append(Matrix.diagonal(F, [F.one if start <= j < start + m else F.zero for j in range(dim)]))
        start += m
    return LinearMap(F, tuple(alphas)).conjugate(*random_unimodular(F, dim, rng))


NON_HOM_KINDS = ("random", "perturbed", "unital", "extension", "non_unital")


def non_hom_sample(F, d, dim, rng, kind=None):
    kinds = [k for k in NON_HOM_KINDS if not (k == "extension" and (dim < 2 or d < 2))]
    kind = kind or rng.choice(kinds)
    return {
        "random": random_map,
        "perturbed": perturbed_hom,
        "unital": unital_random,
        "extension": extension_map,
        "non_unital": non_unital_idempotents,
    }[kind](F, d, dim, rng)


def equivalence_samples(F, d, dim, count, rng):
    """count/2 conjugated homomorphisms followed by count/2 other maps."""
    homs = [conjugated_hom(F, d, dim, rng) for _ in range(count // 2)]
    others = [non_hom_sample(F, d, dim, rng) for _ in range(count - count // 2)]
    return homs + others
