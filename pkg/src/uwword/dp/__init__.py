"""Bit-parallel dynamic programming algorithms on the wide machine."""

from .subset_sum import SubsetSumEngine, subset_sum
from .prefix_sums import PrefixSumIndex, static_prefix_sums
from .knapsack import KnapsackInstance, knapsack
from .lcs import LcsResult, lcs_length, lcs_recover
from .four_russians import lcs_four_russians

__all__ = [
    "SubsetSumEngine",
    "subset_sum",
    "PrefixSumIndex",
    "static_prefix_sums",
    "KnapsackInstance",
    "knapsack",
    "LcsResult",
    "lcs_length",
    "lcs_recover",
    "lcs_four_russians",
]
