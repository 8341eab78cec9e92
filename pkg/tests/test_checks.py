import cmath
import itertools
import json
import math
import random

import pytest

from charmorph.algebra import LinearMap
from charmorph.category import fixture
from charmorph.checks import (
    CheckReport,
    characteristic_check,
    is_algebra_homomorphism,
    minimal_characteristic_check,
    nc_characteristic_check,
    nc_residuals,
    one_eigenspaces,
    roots_of_unity_check,
    set_partitions,
    torsion_exponents,
    verify_root_ratio_lemma,
)
from charmorph.errors import CharacteristicTooSmall, NoSuchMode, NoSuchRoot, NTooSmall
from charmorph.fields import QQ, cyclotomic, prime
from charmorph.matrix import Matrix, Subspace, kernel

from sampling import NON_HOM_KINDS, conjugated_hom, equivalence_samples, non_hom_sample, random_map

EX1 = fixture("example1", QQ, a=1, b=1)
EX2 = fixture("example2", QQ)


def units(F, d):
    return LinearMap(F, tuple(Matrix.unit(F, d, i, i) for i in range(d)))


def kinds(report):
    return [v.kind for v in report.violations]


# --- homomorphism relations ------------------------------------------------

def test_units_are_homomorphism(field):
    assert is_algebra_homomorphism(units(field, 3)).passed


def test_example1_relations():
    r = is_algebra_homomorphism(EX1)
    assert r.verdict == "fail"
    by_kind = {(v.kind, v.index): v.witness for v in r.violations}
    N2 = Matrix(QQ, [[0, 2], [0, 0]])
    assert by_kind[("unital", None)] == N2
    assert EX1.alphas[0] @ EX1.alphas[1] == N2
    assert ("orthogonal", (1, 2)) in by_kind


def test_example2_not_idempotent():
    r = is_algebra_homomorphism(EX2)
    a1 = EX2.alphas[0]
    assert any(v.kind == "idempotent" and v.index == (1,) and v.witness == a1 @ a1 - a1 for v in r.violations)


def test_first_only_stops_early():
    assert len(is_algebra_homomorphism(EX2, first_only=True).violations) == 1


# --- commutative identity --------------------------------------------------

@pytest.mark.parametrize("a, b", [(1, 1), (2, -1), (0, 3), ("1/2", "1/3")])
def test_example1_is_characteristic(a, b):
    assert characteristic_check(fixture("example1", QQ, a=a, b=b)).passed


def test_example2_is_characteristic():
    assert characteristic_check(EX2).passed


def test_identity_pair_fails_with_mixed_monomial():
    I = Matrix.identity(QQ, 2)
    r = characteristic_check(LinearMap(QQ, (I, I)))
    assert [(v.index, v.witness) for v in r.violations] == [((1, 1), I)]
    assert r.stats["equations"] == math.comb(3, 2)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_monomial_count(d):
    assert characteristic_check(units(QQ, d)).stats["equations"] == math.comb(2 * d - 1, d)


def test_d_equals_one():
    I = Matrix.identity(QQ, 2)
    assert characteristic_check(LinearMap(QQ, (I,))).passed
    r = characteristic_check(LinearMap(QQ, (I.scale(QQ.coerce(3)),)))
    assert [(v.index, v.witness) for v in r.violations] == [((1,), I.scale(QQ.coerce(2)))]
    N = Matrix(QQ, [[1, 1], [0, 1]])
    assert nc_residuals(LinearMap(QQ, (N,)))[(1,)] == N - I


# --- minimal-characteristic identity -----------------------------------------

@pytest.mark.parametrize("d, bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_bell(d, bell):
    parts = list(set_partitions(d))
    assert len(parts) == bell == len(set(parts))
    for p in parts:
        assert sorted(i for block in p for i in block) == list(range(d))


def test_minchar_units_pass():
    assert minimal_characteristic_check(units(QQ, 3)).passed


def test_minchar_example1_coarsest_stratum():
    r = minimal_characteristic_check(EX1)
    coarse = [v for v in r.violations if v.index[0] == ((1, 2),)]
    assert [v.witness for v in coarse] == [EX1.image_of_one() - Matrix.identity(QQ, 2)]


def test_minchar_example2_exposes_alpha1():
    r = minimal_characteristic_check(EX2)
    labels = {v.index[0] for v in r.violations}
    assert ((1,), (2, 3)) in labels
    a1 = EX2.alphas[0]
    assert not (a1 @ a1 - a1).is_zero()


# --- noncommutative identity ---------------------------------------------------

def test_nc_units_pass(field):
    assert nc_characteristic_check(units(field, 3)).passed


def test_nc_example1_fails():
    r = nc_characteristic_check(EX1)
    assert r.verdict == "fail" and r.stats["equations"] == 4
    first = nc_characteristic_check(EX1, first_only=True).violations
    assert len(first) == 1 and first[0].kind == "multi-index"


def test_nc_refuses_small_characteristic():
    with pytest.raises(CharacteristicTooSmall):
        nc_characteristic_check(units(prime(3), 3))
    with pytest.raises(NoSuchMode):
        nc_characteristic_check(EX1, mode="quick")


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_diagonal_residual(field, d):
    rng = random.Random(d)
    phi = random_map(field, d, 3, rng)
    R = nc_residuals(phi)
    I = Matrix.identity(field, 3)
    for i, a in enumerate(phi.alphas):
        expected = ((a ** (d - 1)) @ (a - I)).scale(field.from_int(math.factorial(d)))
        assert R[(i + 1,) * d] == expected


@pytest.mark.parametrize("d", [2, 3, 4])
def test_mixed_residual_on_fixed_vector(d):
    """x_i x_j x_i^(d-2) coefficient applied to m with alpha_i m = m."""
    F = QQ
    rng = random.Random(10 + d)
    phi = random_map(F, d, 3, rng)
    rows = [list(r) for r in phi.alphas[0].rows]
    for k in range(3):
        rows[k][0] = F.one if k == 0 else F.zero
    phi = LinearMap(F, (Matrix._raw(F, rows),) + phi.alphas[1:])
    m = [F.one, F.zero, F.zero]
    a_i, a_j = phi.alphas[0], phi.alphas[1]
    R = nc_residuals(phi)[(1, 2) + (1,) * (d - 2)]
    lhs = R.apply(m)
    rhs = ((a_i.scale(F.from_int(2)) - Matrix.identity(F, 3)) @ a_j).apply(m)
    c = F.from_int(math.factorial(d - 1))
    assert lhs == [F.mul(c, x) for x in rhs]


def brute_residuals(phi):
    """Sum over permutations computed straight from the definition."""
    F, d = phi.field, phi.d
    I = Matrix.identity(F, phi.dim)
    out = {}
    for idx in itertools.product(range(d), repeat=d):
        total = Matrix.zero(F, phi.dim)
        for sigma in itertools.permutations(range(d)):
            prod = I
            for k in range(d):
                prod = prod @ (phi.alphas[idx[k]] - (I if idx[k] == sigma[k] else Matrix.zero(F, phi.dim)))
            total = total + prod
        out[tuple(i + 1 for i in idx)] = total
    return out


@pytest.mark.parametrize("seed", range(6))
def test_fast_naive_and_definition_agree(field, seed):
    rng = random.Random(seed)
    d, dim = 1 + seed % 3, 1 + seed % 2
    phi = random_map(field, d, dim, rng)
    fast = nc_residuals(phi, "fast")
    assert fast == nc_residuals(phi, "naive") == brute_residuals(phi)


# --- hierarchy ----------------------------------------------------------------

@pytest.mark.parametrize("F", [QQ, prime(7)], ids=str)
def test_hierarchy(F):
    rng = random.Random(5)
    samples = equivalence_samples(F, 2, 2, 20, rng) + equivalence_samples(F, 3, 3, 20, rng)
    samples += [non_hom_sample(F, 2, 3, rng, kind) for kind in NON_HOM_KINDS]
    for phi in samples:
        hom = is_algebra_homomorphism(phi).passed
        nc = nc_characteristic_check(phi).passed
        char = characteristic_check(phi).passed
        minchar = minimal_characteristic_check(phi).passed
        assert not hom or nc
        assert not nc or char
        assert not minchar or char
        assert hom == nc


def test_extension_samples_are_characteristic_non_homs():
    rng = random.Random(2)
    for _ in range(5):
        phi = non_hom_sample(QQ, 3, 4, rng, "extension")
        assert characteristic_check(phi).passed
        assert not is_algebra_homomorphism(phi).passed


def test_one_eigenvectors_are_isolated():
    rng = random.Random(9)
    for _ in range(10):
        phi = conjugated_hom(QQ, 3, 4, rng)
        spaces = one_eigenspaces(phi)
        assert any(not S.is_zero() for S in spaces)
        for i, S in enumerate(spaces):
            for v in S.basis:
                for j, a in enumerate(phi.alphas):
                    if j != i:
                        assert all(QQ.is_zero(x) for x in a.apply(v))


# --- roots of unity -------------------------------------------------------------

def test_roots_units_pass():
    assert roots_of_unity_check(units(cyclotomic(3), 2), 3).passed


def test_roots_example1_lifted():
    F = cyclotomic(3)
    phi = fixture("example1", F, a=1, b=1)
    r = roots_of_unity_check(phi, 3)
    assert kinds(r)[0] == "unital"
    torsion = {v.index: v.witness for v in r.violations if v.kind == "torsion"}
    U = Matrix(F, [[1, 2], [0, 1]])
    assert U ** 3 == Matrix(F, [[1, 6], [0, 1]])
    assert torsion[(0, 0)] == U ** 3 - Matrix.identity(F, 2)


def test_roots_gate_only_failure():
    F = prime(7)
    phi = LinearMap(F, (Matrix.identity(F, 2), Matrix.identity(F, 2)))
    r = roots_of_unity_check(phi, 3)
    assert "unital" in kinds(r)


def test_roots_preconditions():
    with pytest.raises(NTooSmall):
        roots_of_unity_check(units(QQ, 2), 2)
    with pytest.raises(NoSuchRoot):
        roots_of_unity_check(units(QQ, 2), 3)
    with pytest.raises(NoSuchMode):
        roots_of_unity_check(units(cyclotomic(3), 2), 3, mode="some")


def test_torsion_exponent_sets():
    assert len(torsion_exponents(3, 4, "full")) == 64
    pp = torsion_exponents(3, 4, "proof_path")
    assert (0, 0, 0) in pp and (2, 0, 2) in pp and (1, 2, 0) not in pp
    assert len(pp) == 1 + 3 * 3 + 3 * 3


def test_roots_default_mode_warns():
    F = prime(13)
    phi = units(F, 6)
    with pytest.warns(UserWarning):
        r = roots_of_unity_check(phi, 12)
    assert r.stats["mode"] == "proof_path" and r.passed


def test_roots_proof_path_catches_example1():
    phi = fixture("example1", prime(7), a=1, b=1)
    assert not roots_of_unity_check(phi, 3, mode="proof_path").passed


# --- root-ratio dichotomy --------------------------------------------------------

def numeric_counterexamples(n):
    """Independent floating point enumeration with complex roots."""
    u = [cmath.exp(2j * cmath.pi * k / n) - 1 for k in range(n)]
    out = []
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if b == 0 or d == 0:
            continue
        if abs(u[a] * u[d] - u[c] * u[b]) < 1e-9 and not ((a == b and c == d) or (a == c and b == d)):
            out.append((a, b, c, d))
    return out


def degenerate_set(n):
    return sorted((0, b, 0, d) for b in range(1, n) for d in range(1, n) if b != d)


def test_lemma_n2_empty():
    assert verify_root_ratio_lemma(2) == []


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
def test_lemma_matches_numeric_oracle(n):
    found = verify_root_ratio_lemma(n)
    assert found == numeric_counterexamples(n) == degenerate_set(n)


@pytest.mark.parametrize("n", range(2, 13))
def test_lemma_only_zero_ratio_failures(n):
    assert verify_root_ratio_lemma(n) == degenerate_set(n)
    assert verify_root_ratio_lemma(n, nondegenerate=True) == []


def test_lemma_over_prime_field():
    assert verify_root_ratio_lemma(4, prime(13), nondegenerate=True) == []
    assert verify_root_ratio_lemma(4, prime(13)) == degenerate_set(4)


# --- reports ----------------------------------------------------------------------

@pytest.mark.parametrize("check", [is_algebra_homomorphism, characteristic_check,
                                   minimal_characteristic_check, nc_characteristic_check])
def test_report_roundtrip(check):
    r = check(EX2)
    back = CheckReport.from_dict(json.loads(json.dumps(r.to_dict())))
    assert back.verdict == r.verdict
    assert [(v.kind, v.index, v.witness) for v in back.violations] == \
        [(v.kind, v.index, v.witness) for v in r.violations]


def test_report_soundness():
    for phi in (EX1, EX2, units(QQ, 2)):
        for r in (is_algebra_homomorphism(phi), characteristic_check(phi), nc_characteristic_check(phi)):
            assert (r.verdict == "pass") == (not r.violations)
            assert all(not v.witness.is_zero() for v in r.violations)


def test_kernel_of_one_eigenspace_example():
    S = one_eigenspaces(units(QQ, 2))[0]
    assert S == Subspace(QQ, 2, [[1, 0]]) == kernel(Matrix.diagonal(QQ, [0, -1]))
