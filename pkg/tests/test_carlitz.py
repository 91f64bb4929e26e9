from itertools import permutations

import numpy as np
import pytest

from ppmeasure.carlitz import (
    CarlitzChain,
    carlitz_rank,
    chain_eval,
    chain_to_moebius,
    crk_lower_bound,
    invertibility,
    linearity,
    low_rank_witness,
    random_chain,
)
from ppmeasure.errors import (
    DegenerateChainError,
    InvalidChainError,
    NonzeroOriginError,
    NotPermutationError,
)
from ppmeasure.field import make_field
from ppmeasure.moebius import MoebiusMap, agreement_count, enumerate_pgl2, agreement_counts
from ppmeasure.permpoly import PermPoly

from oracles import is_bijection

IDENT5 = [0, 1, 2, 3, 4]
DLOG5 = [0, 1, 2, 4, 3]
CUBE5 = [0, 1, 3, 2, 4]


@pytest.mark.parametrize("c,table", [
    ((2, 1), [1, 3, 0, 2, 4]),
    ((1, 4, 1), DLOG5),
    ((1, 0, 0), CUBE5),
])
def test_chain_eval_examples(F5, c, table):
    assert chain_eval(CarlitzChain(c), F5).tolist() == table


def test_chain_eval_by_hand(F7):
    c = (3, 2, 5, 4)
    want = []
    for x in range(7):
        y = F7.add(F7.mul(3, x), 2)
        y = F7.add(F7.pow(y, 5), 5)
        y = F7.add(F7.pow(y, 5), 4)
        want.append(y)
    assert chain_eval(CarlitzChain(c), F7).tolist() == want


@pytest.mark.parametrize("c", [(0, 1), (1, 2, 0, 1), (1,)])
def test_invalid_chains(F5, c):
    with pytest.raises(InvalidChainError):
        CarlitzChain(c).validate(F5)


@pytest.mark.parametrize("c,quad,poles", [
    ((1, 4, 1), (1, 0, 1, 4), {1}),
    ((2, 1), (1, 3, 0, 3), set()),
    ((1, 0, 0), (0, 1, 1, 0), {0}),
])
def test_chain_to_moebius_examples(F5, c, quad, poles):
    m, got = chain_to_moebius(CarlitzChain(c), F5)
    assert m.as_tuple() == quad
    assert got == poles


def test_degenerate_chain_unreachable_for_valid_chains(F7):
    # valid chains compose nonsingular matrices, so the error only guards misuse
    rng = np.random.default_rng(0)
    for _ in range(200):
        chain_to_moebius(random_chain(F7, int(rng.integers(0, 5)), rng), F7)
    assert issubclass(DegenerateChainError, Exception)


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_chain_invariants(q):
    F = make_field(q) if q != 9 else make_field(3, 2)
    rng = np.random.default_rng(q)
    for _ in range(100):
        n = int(rng.integers(0, 6))
        ch = random_chain(F, n, rng)
        t = chain_eval(ch, F)
        assert is_bijection(t)
        m, poles = chain_to_moebius(ch, F)
        assert len(poles) <= n
        f = PermPoly.from_table(F, t)
        assert agreement_count(f, m) >= q - n
        off = np.setdiff1d(F.elements, sorted(poles))
        num = F.vadd(F.vmul(m.alpha, off), m.beta)
        den = F.vadd(F.vmul(m.gamma, off), m.delta)
        defined = den != 0
        assert np.array_equal(F.vdiv(num, den)[defined], t[off][defined])


@pytest.mark.parametrize("q,table,want", [
    (5, IDENT5, 5),
    (5, DLOG5, 3),
])
def test_linearity_examples(q, table, want):
    assert linearity(PermPoly.from_table(make_field(q), table)) == want


def test_linearity_x5_f7(F7):
    assert linearity(PermPoly.from_coeffs(F7, [0, 0, 0, 0, 0, 1])) == 3


@pytest.mark.parametrize("table,want", [(CUBE5, 4), (DLOG5, 2), (IDENT5, 2)])
def test_invertibility_examples(F5, table, want):
    assert invertibility(PermPoly.from_table(F5, table)) == want


def test_linearity_requires_origin(F5):
    with pytest.raises(NonzeroOriginError):
        linearity(PermPoly.from_table(F5, [1, 2, 3, 4, 0]))


def test_linearity_invertibility_by_definition(F7):
    for rest in list(permutations(range(1, 7)))[::7]:
        t = (0,) + rest
        f = PermPoly.from_table(F7, t)
        lin = max(sum(t[c] == F7.mul(a, c) for c in range(7)) for a in range(1, 7))
        inv = max(sum(t[x] == F7.div(c, x) for x in range(1, 7)) for c in range(1, 7))
        assert linearity(f) == lin
        assert invertibility(f) == inv


def test_degenerate_families_equal_lin_inv(F7):
    quads = enumerate_pgl2(F7)
    lin_rows = quads[(quads[:, 1] == 0) & (quads[:, 2] == 0)]
    inv_rows = quads[(quads[:, 0] == 0) & (quads[:, 3] == 0)]
    assert len(lin_rows) == 6 and len(inv_rows) == 6
    for rest in list(permutations(range(1, 7)))[::11]:
        f = PermPoly.from_table(F7, (0,) + rest)
        assert agreement_counts(f, lin_rows).max() == linearity(f)
        assert agreement_counts(f, inv_rows).max() == invertibility(f)


@pytest.mark.parametrize("table,want", [(IDENT5, 0), (DLOG5, 1), (CUBE5, 1)])
def test_crk_lower_bound_examples(F5, table, want):
    assert crk_lower_bound(PermPoly.from_table(F5, table)) == want


def test_crk_lower_bound_rejects_non_permutation(F5):
    with pytest.raises(NotPermutationError):
        crk_lower_bound(PermPoly.from_table(F5, [0, 0, 1, 2, 3]))


def test_carlitz_rank_result(F5):
    res = carlitz_rank(PermPoly.from_table(F5, DLOG5))
    assert (res.lower_bound, res.agreement, res.exact) == (1, 4, 1)
    assert res.argmax == MoebiusMap(1, 0, 1, 4)
    assert res.to_dict()["crk_exact"] == 1
    assert carlitz_rank(PermPoly.from_table(F5, DLOG5), exact=False).exact is None


def test_low_rank_witness(F5):
    f = PermPoly.from_table(F5, DLOG5)
    ch = low_rank_witness(f)
    assert ch is not None and ch.n == 1
    assert chain_eval(ch, F5).tolist() == DLOG5
    assert low_rank_witness(PermPoly.from_table(F5, [1, 3, 0, 2, 4])).c == (2, 1)
