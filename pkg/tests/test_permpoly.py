import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppmeasure.errors import BadTableLengthError, ZeroPolynomialError
from ppmeasure.field import make_field
from ppmeasure.permpoly import (
    PermPoly,
    degree_weight,
    eval_poly,
    interpolate,
    is_permutation,
    normalize_origin,
)
from ppmeasure.cyclotomic import CyclotomicMap, cyc_eval


def test_eval_examples(F5):
    f = PermPoly.from_coeffs(F5, [0, 3, 2, 1])
    assert eval_poly(f, 3) == 4
    assert eval_poly(PermPoly.from_coeffs(F5, [0, 1]), 4) == 4
    assert eval_poly(f, 0) == 0


@pytest.mark.parametrize("table,coeffs", [
    ([0, 1, 2, 4, 3], (0, 3, 2, 1)),
    ([0, 1, 2, 3, 4], (0, 1)),
    ([0, 1, 3, 2, 4], (0, 0, 0, 1)),
])
def test_interpolate_examples(F5, table, coeffs):
    f = interpolate(F5, table)
    assert f.coeffs == coeffs
    assert [eval_poly(f, c) for c in range(5)] == table


def test_interpolate_bad_length(F5):
    with pytest.raises(BadTableLengthError):
        interpolate(F5, [0, 1, 2])


def test_reduction_mod_xq_minus_x(F5):
    # x^5 = x and x^9 = x^5 = x on F_5
    assert PermPoly.from_coeffs(F5, [0, 0, 0, 0, 0, 1]).coeffs == (0, 1)
    assert PermPoly.from_coeffs(F5, [0] * 9 + [1]).coeffs == (0, 1)


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_interpolate_roundtrip_random(q):
    F = make_field(3, 2) if q == 9 else make_field(q)
    rng = np.random.default_rng(q)
    for _ in range(100):
        coeffs = rng.integers(0, q, q).tolist()
        f = PermPoly.from_coeffs(F, coeffs)
        g = interpolate(F, f.table)
        assert g.coeffs == f.coeffs
        # scalar Horner from the coefficients agrees with the vectorised table
        assert [eval_poly(f, c) for c in range(q)] == f.table.tolist()


def test_is_permutation_examples(F5, F7):
    assert is_permutation(PermPoly.from_coeffs(F5, [0, 0, 0, 1]))
    assert not is_permutation(PermPoly.from_coeffs(F5, [0, 0, 1]))
    m = CyclotomicMap(F7, 2, 2, (1, 1))
    assert not is_permutation(PermPoly.from_table(F7, cyc_eval(m)))


def test_degree_weight_examples(F5, F7):
    assert degree_weight(PermPoly.from_coeffs(F5, [0, 3, 2, 1])) == (3, 3)
    assert degree_weight(PermPoly.from_coeffs(F5, [0, 1])) == (1, 1)
    assert degree_weight(PermPoly.from_coeffs(F7, [0, 0, 0, 0, 0, 1])) == (5, 1)
    with pytest.raises(ZeroPolynomialError):
        degree_weight(PermPoly.from_coeffs(F5, [0, 0]))


def test_normalize_origin_examples(F5):
    assert normalize_origin(PermPoly.from_coeffs(F5, [1, 1])).coeffs == (0, 1)
    f = PermPoly.from_coeffs(F5, [0, 3, 2, 1])
    assert normalize_origin(f) is f
    g = normalize_origin(PermPoly.from_table(F5, [1, 3, 0, 2, 4]))
    assert g.table.tolist() == [0, 2, 4, 1, 3]
    assert g.coeffs == (0, 2)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 7, 8, 9]), st.lists(st.integers(0, 10**6), min_size=1, max_size=12))
def test_table_coeff_consistency(q, raw):
    F = {8: make_field(2, 3), 9: make_field(3, 2)}.get(q) or make_field(q)
    f = PermPoly.from_coeffs(F, [v % q for v in raw])
    assert len(f.coeffs) <= q
    assert not f.coeffs or f.coeffs[-1] != 0
    assert interpolate(F, f.table).coeffs == f.coeffs
