from .bilinear import BilinearAlgorithm, for_clique, naive, strassen
from .calculator import OmegaTable, block_dimension_exponent, cc_round_exponent, solve_r_prime
from .network import BandwidthViolation, CliqueNetwork, PhaseStats, words_of
from .protocol import (
    ProductSchedule,
    cc_approx_minplus,
    cc_asp,
    cc_integer_product,
    plan_product,
    rounds_per_product,
)

__all__ = [
    "BandwidthViolation",
    "BilinearAlgorithm",
    "CliqueNetwork",
    "OmegaTable",
    "PhaseStats",
    "ProductSchedule",
    "block_dimension_exponent",
    "cc_approx_minplus",
    "cc_asp",
    "cc_integer_product",
    "cc_round_exponent",
    "for_clique",
    "naive",
    "plan_product",
    "rounds_per_product",
    "solve_r_prime",
    "strassen",
    "words_of",
]
