from itertools import permutations, product

import numpy as np
import pytest

from ppmeasure.cyclotomic import (
    CyclotomicMap,
    compute_index,
    coset_structure,
    cyc_eval,
    same_coset,
    same_coset_claim_finding,
    verify_index_witness,
    wang_is_permutation,
)
from ppmeasure.errors import NoCyclotomicFormError, NonzeroOriginError
from ppmeasure.field import divisors, make_field
from ppmeasure.permpoly import PermPoly, degree_weight, is_permutation

from oracles import admits_index, brute_index, is_bijection


def test_coset_structure(F7):
    for ell in divisors(6):
        cs = coset_structure(F7, ell)
        c0 = cs.coset(0)
        for i in range(ell):
            assert len(cs.coset(i)) == 6 // ell
            assert sorted(F7.mul(F7.exp(i), y) for y in c0) == cs.coset(i)
        assert all(F7.mul(a, b) in c0 for a in c0 for b in c0)
    assert coset_structure(F7, 2).coset(0) == [1, 2, 4]
    assert coset_structure(F7, 3).coset(0) == [1, 6]
    assert coset_structure(F7, 3).coset(1) == [3, 4]
    assert coset_structure(F7, 3).coset(2) == [2, 5]


@pytest.mark.parametrize("q,ell,r,a,table", [
    (7, 2, 1, (1, 3), [0, 1, 2, 2, 4, 1, 4]),
    (5, 1, 1, (1,), [0, 1, 2, 3, 4]),
    (7, 3, 1, (1, 6, 6), [0, 1, 5, 4, 3, 2, 6]),
])
def test_cyc_eval_examples(q, ell, r, a, table):
    F = make_field(q)
    assert cyc_eval(CyclotomicMap(F, ell, r, a)).tolist() == table


def test_cyc_eval_definition(F7):
    m = CyclotomicMap(F7, 3, 5, (2, 3, 4))
    t = cyc_eval(m)
    for x in range(1, 7):
        i = F7.dlog(x) % 3
        assert t[x] == F7.mul(m.a[i], F7.pow(x, 5))
    assert t[0] == 0


@pytest.mark.parametrize("ell,r,a,want", [
    (2, 1, (1, 3), False),
    (2, 1, (1, 1), True),
    (2, 2, (1, 1), False),
])
def test_wang_examples(F7, ell, r, a, want):
    m = CyclotomicMap(F7, ell, r, a)
    assert wang_is_permutation(m) is want
    assert is_bijection(cyc_eval(m)) is want


def test_same_coset_claim_counterexample(F7):
    m = CyclotomicMap(F7, 2, 2, (1, 1))
    assert same_coset(m)
    finding = same_coset_claim_finding(m)
    assert finding is not None and "not a permutation" in finding
    assert same_coset_claim_finding(CyclotomicMap(F7, 2, 1, (1, 1))) is None


@pytest.mark.parametrize("q", [11, 13, 31])
def test_wang_random_agreement(q):
    F = make_field(q)
    rng = np.random.default_rng(q)
    ells = divisors(q - 1)
    for _ in range(10_000):
        ell = int(rng.choice(ells))
        r = int(rng.integers(0, q - 1))
        a = tuple(int(v) for v in rng.integers(1, q, ell))
        m = CyclotomicMap(F, ell, r, a)
        assert wang_is_permutation(m) == is_bijection(cyc_eval(m))


def test_compute_index_examples(F5):
    ell, w = compute_index(PermPoly.from_coeffs(F5, [0, 1]))
    assert (ell, w.r, w.a) == (1, 1, (1,))
    ell, w = compute_index(PermPoly.from_coeffs(F5, [0, 0, 0, 1]))
    assert (ell, w.r, w.a) == (1, 3, (1,))
    f = PermPoly.from_table(F5, [0, 1, 2, 4, 3])
    ell, w = compute_index(f)
    assert ell == 4
    assert verify_index_witness(f, w)


def test_verify_index_witness_examples(F5):
    ident = PermPoly.from_coeffs(F5, [0, 1])
    cube = PermPoly.from_coeffs(F5, [0, 0, 0, 1])
    m = CyclotomicMap(F5, 1, 1, (1,))
    assert verify_index_witness(ident, m)
    assert not verify_index_witness(cube, m)


def test_compute_index_errors(F5):
    with pytest.raises(NonzeroOriginError):
        compute_index(PermPoly.from_coeffs(F5, [1, 1]))
    with pytest.raises(NoCyclotomicFormError):
        compute_index(PermPoly.from_table(F5, [0, 1, 0, 2, 3]))


@pytest.mark.parametrize("q", [5, 7])
def test_compute_index_exhaustive_against_definition(q):
    F = make_field(q)
    for rest in permutations(range(1, q)):
        f = PermPoly.from_table(F, (0,) + rest)
        ell, w = compute_index(f)
        assert verify_index_witness(f, w)
        assert ell == brute_index(F, f.table)


@pytest.mark.parametrize("field", [make_field(2, 3), make_field(3, 2), make_field(11)],
                         ids=["F8", "F9", "F11"])
def test_compute_index_succeeds_on_permutations(field):
    rng = np.random.default_rng(field.q)
    for _ in range(200):
        table = np.concatenate([[0], 1 + rng.permutation(field.q - 1)])
        f = PermPoly.from_table(field, table)
        ell, w = compute_index(f)
        assert verify_index_witness(f, w)
        assert not any(admits_index(field, table, d) for d in divisors(field.q - 1) if d < ell)


@pytest.mark.parametrize("q", [7, 11, 13])
def test_index_scaling_invariance(q):
    F = make_field(q)
    rng = np.random.default_rng(q + 1)
    for _ in range(50):
        table = np.concatenate([[0], 1 + rng.permutation(q - 1)])
        f = PermPoly.from_table(F, table)
        ell = compute_index(f)[0]
        for c in range(2, q):
            g = PermPoly.from_table(F, F.vmul(c, table))
            assert compute_index(g)[0] == ell


@pytest.mark.parametrize("q", [5, 7])
def test_degree_lower_bound_from_index(q):
    # deg(f) >= (q-1)/Ind(f) + 1 holds off the monomials; monomials a x^r with
    # r < q - 1 have Ind = 1 and fall below it.
    F = make_field(q)
    below = []
    for rest in permutations(range(1, q)):
        f = PermPoly.from_table(F, (0,) + rest)
        deg, _ = degree_weight(f)
        ell = compute_index(f)[0]
        if deg < (q - 1) / ell + 1:
            below.append((ell, deg))
    assert below
    assert all(ell == 1 for ell, _ in below)


def test_wang_exhaustive_small(F5):
    for ell in divisors(4):
        for r in range(4):
            for a in product(range(1, 5), repeat=ell):
                m = CyclotomicMap(F5, ell, r, a)
                assert wang_is_permutation(m) == is_permutation(
                    PermPoly.from_table(F5, cyc_eval(m)))
