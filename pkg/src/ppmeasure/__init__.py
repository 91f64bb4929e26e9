"""Carlitz rank, index and related measures of permutation polynomials over F_q."""

from .carlitz import (
    CarlitzChain,
    RankResult,
    carlitz_rank,
    chain_eval,
    chain_to_moebius,
    crk_lower_bound,
    invertibility,
    linearity,
)
from .cyclotomic import (
    CyclotomicMap,
    compute_index,
    coset_structure,
    cyc_eval,
    verify_index_witness,
    wang_is_permutation,
)
from .field import FieldCtx, make_field, parse_field_spec
from .moebius import MoebiusMap, agreement_count, max_agreement, moebius_canonical
from .permpoly import (
    PermPoly,
    degree_weight,
    eval_poly,
    interpolate,
    is_permutation,
    normalize_origin,
)
from .rank_oracle import crk_exact

__version__ = "0.1.0"

__all__ = [
    "CarlitzChain", "CyclotomicMap", "FieldCtx", "MoebiusMap", "PermPoly", "RankResult",
    "agreement_count", "carlitz_rank", "chain_eval", "chain_to_moebius", "compute_index",
    "coset_structure", "crk_exact", "crk_lower_bound", "cyc_eval", "degree_weight",
    "eval_poly", "interpolate", "invertibility", "is_permutation", "linearity",
    "make_field", "max_agreement", "moebius_canonical", "normalize_origin",
    "parse_field_spec", "verify_index_witness", "wang_is_permutation",
]
