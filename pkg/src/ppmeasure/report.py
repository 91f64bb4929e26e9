"""All measures of a single polynomial in one record."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .carlitz import invertibility, linearity, low_rank_witness
from .cyclotomic import compute_index
from .errors import NoCyclotomicFormError, ZeroPolynomialError
from .moebius import max_agreement
from .permpoly import PermPoly, degree_weight, is_permutation, normalize_origin
from .polyparse import render_coeffs
from .rank_oracle import DEFAULT_LIMIT_Q, crk_exact


@dataclass
class MeasureReport:
    field: str
    coeffs: str
    table: list[int]
    is_permutation: bool
    deg: int | None
    w: int
    ind: int | None = None
    witness: dict | None = None
    lin: int | None = None
    inv: int | None = None
    nmax: int | None = None
    argmax: list[int] | None = None
    crk_lb: int | None = None
    crk_exact: int | None = None
    chain: list[int] | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def analyze(f: PermPoly, exact: bool = True, limit_q: int = DEFAULT_LIMIT_Q) -> MeasureReport:
    """Degree and weight of f; index, linearity, invertibility and rank data of f - f(0)."""
    try:
        deg, w = degree_weight(f)
    except ZeroPolynomialError:
        deg, w = None, 0
    perm = is_permutation(f)
    rep = MeasureReport(f.field.spec_string(), render_coeffs(f), f.table.tolist(),
                        perm, deg, w)
    g = normalize_origin(f)
    try:
        rep.ind, wit = compute_index(g)
        rep.witness = wit.to_dict()
    except NoCyclotomicFormError:
        pass
    rep.lin = linearity(g)
    rep.inv = invertibility(g)
    if perm:
        rep.nmax, arg = max_agreement(g)
        rep.argmax = list(arg.as_tuple())
        rep.crk_lb = max(0, f.q - rep.nmax)
        if exact and f.q <= limit_q:
            rep.crk_exact = crk_exact(f, limit_q)
            if rep.crk_exact <= 1:
                ch = low_rank_witness(f)
                rep.chain = list(ch.c) if ch is not None else None
    return rep
