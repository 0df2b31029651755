"""Partial realization of linear switched systems from Markov parameters."""

from ._core import (
    DimensionMismatch,
    Error,
    InsufficientOrder,
    MarkovFamily,
    NoUniqueSolution,
    ParseError,
    RankConditionFailed,
    Realization,
    ShiftInconsistent,
    certify_minimal,
    check_rank_condition,
    find_isomorphism,
    hankel,
    markov,
    match_order,
    minimal_realize,
    numerical_rank,
    realize,
    reduce,
    simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
