import math

import numpy as np
import pytest

from ppmeasure.dlog import build_dlog_table, dlog_coeffs, verify_thm3
from ppmeasure.errors import NotPrimeFieldError
from ppmeasure.field import is_prime, make_field
from ppmeasure.permpoly import degree_weight, interpolate

ODD_PRIMES = [p for p in range(3, 102) if is_prime(p)]


@pytest.mark.parametrize("p,table", [
    (5, [0, 1, 2, 4, 3]),
    (3, [0, 1, 2]),
    (7, [0, 1, 3, 2, 5, 6, 4]),
])
def test_table_examples(p, table):
    perm = build_dlog_table(make_field(p))
    assert perm.poly.table.tolist() == table


def test_table_definition():
    F = make_field(31)
    t = build_dlog_table(F).poly.table
    for i in range(30):
        assert t[pow(F.xi, i, 31)] == (i + 1) % 31


@pytest.mark.parametrize("p,coeffs", [(5, [0, 3, 2, 1]), (3, [0, 1])])
def test_coeff_examples(p, coeffs):
    assert list(dlog_coeffs(make_field(p)).coeffs) == coeffs


@pytest.mark.parametrize("p", ODD_PRIMES)
def test_closed_form_matches_interpolation(p):
    F = make_field(p)
    closed = dlog_coeffs(F)
    interp = interpolate(F, build_dlog_table(F).poly.table)
    assert list(closed.coeffs) == list(interp.coeffs)
    assert np.array_equal(closed.table, build_dlog_table(F).poly.table)
    assert degree_weight(closed) == (p - 2, p - 2)


@pytest.mark.parametrize("p", [p for p in ODD_PRIMES if p >= 5])
def test_dlog_report_passes(p):
    rep = verify_thm3(make_field(p))
    assert rep.passed, rep.findings
    assert rep.ind == p - 1
    assert (rep.crk_exact is not None) == (p <= 11)


def test_dlog_report_p5_values():
    rep = verify_thm3(make_field(5))
    assert (rep.deg, rep.w, rep.ind, rep.lin, rep.inv, rep.crk_exact) == (3, 3, 4, 3, 2, 1)
    assert rep.lin_bound == pytest.approx(math.sqrt(6) + 1)
    assert rep.inv_bound == pytest.approx(2 * math.sqrt(3) + 1)
    assert rep.crk_bound == pytest.approx(5 - 2 * math.sqrt(3) - 1)


def test_dlog_report_p3_records_small_prime_failures():
    rep = verify_thm3(make_field(3))
    assert rep.checks["deg"] and rep.checks["w"]
    assert rep.checks["ind"] is None
    failed = {k for k, v in rep.checks.items() if v is False}
    assert failed == {"lin", "crk_lb", "crk_exact"}
    assert len(rep.findings) == 3


@pytest.mark.parametrize("p", [7, 11, 13])
def test_xi_override(p):
    F = make_field(p)
    for xi in range(2, p):
        try:
            rep = verify_thm3(F, xi=xi)
        except ValueError:
            assert pow(xi, (p - 1) // 2, p) == 1 or any(
                pow(xi, (p - 1) // r, p) == 1 for r in (2, 3, 5))
            continue
        assert rep.xi == xi and rep.passed


def test_errors():
    with pytest.raises(NotPrimeFieldError):
        build_dlog_table(make_field(3, 2))
    with pytest.raises(NotPrimeFieldError):
        dlog_coeffs(make_field(2))
    with pytest.raises(ValueError):
        build_dlog_table(make_field(7), xi=2)
