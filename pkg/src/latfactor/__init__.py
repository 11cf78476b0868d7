"""Deterministic integer factorization built on lattice reduction,
Coppersmith small roots and baby-step giant-step collision search."""

from .counters import Counters
from .drivers import (
    FactorizationResult,
    factor_anbn,
    factor_balanced,
    factor_rpower,
    factor_rpower_scan,
    factor_with_modinfo,
    reduce_to_semiprime,
    rpower_all,
)
from .errors import (
    LatFactorError,
    NotOfForm,
    NotSemiprime,
    PromiseViolated,
    SearchExhausted,
)

__version__ = "0.1.0"

__all__ = [
    "Counters",
    "FactorizationResult",
    "factor_anbn",
    "factor_balanced",
    "factor_rpower",
    "factor_rpower_scan",
    "factor_with_modinfo",
    "reduce_to_semiprime",
    "rpower_all",
    "LatFactorError",
    "NotOfForm",
    "NotSemiprime",
    "PromiseViolated",
    "SearchExhausted",
]
