"""Exact and Monte Carlo mutual-information engines."""

from ._base import (
    BMS_EXACT_BUDGET,
    EXACT_ENUM_LIMIT,
    EXACT_SUBSET_LIMIT,
    TYPE_BUDGET,
    EngineLimitError,
    MIResult,
    RunningStats,
    derive_seed,
)
from .bec import bec_mi_curve, bec_mi_exact, bec_mi_mc, rank_profile, rank_table
from .bms import bms_mi
from .bsc import (
    bsc_mi_curve,
    bsc_mi_exact,
    heterogeneous_bsc_mi_exact,
    heterogeneous_mi_batch,
    output_entropy_bsc_exact,
    output_entropy_curve,
)
from .combining import compositions, repeated_input_mi_exact
from .sdpi import EtaEstimate, chi2_contraction, sdpi_eta_estimate

__all__ = [
    "BMS_EXACT_BUDGET",
    "EXACT_ENUM_LIMIT",
    "EXACT_SUBSET_LIMIT",
    "TYPE_BUDGET",
    "EngineLimitError",
    "EtaEstimate",
    "MIResult",
    "RunningStats",
    "bec_mi_curve",
    "bec_mi_exact",
    "bec_mi_mc",
    "bms_mi",
    "bsc_mi_curve",
    "bsc_mi_exact",
    "chi2_contraction",
    "compositions",
    "derive_seed",
    "heterogeneous_bsc_mi_exact",
    "heterogeneous_mi_batch",
    "output_entropy_bsc_exact",
    "output_entropy_curve",
    "rank_profile",
    "rank_table",
    "repeated_input_mi_exact",
    "sdpi_eta_estimate",
]
