"""Entanglement polygon inequalities on multi-qudit pure states.

Bipartite measures (geometric, negativity, concurrence, q-concurrence) across
one-to-rest cuts, polygon-inequality residuals for arbitrary partitions and
exponents, closed-form state families, and deterministic randomized audits.
"""

from .gallery import (
    BISEP_TOL,
    EXAMPLE1_PAPER_VALUES,
    AcinParams,
    GWSpec,
    ProductPurificationSpec,
    acin_cut_determinants,
    acin_discriminants,
    acin_is_biseparable,
    acin_params,
    acin_schmidt_spectra,
    acin_state,
    example3_gw_spec,
    ghz_state,
    gw_coarse_grain,
    gw_negativity_closed,
    gw_spec,
    gw_state,
    named_state,
    negativity_gap_closed,
    product_purification,
    w_state,
)
from .measures import (
    CONCURRENCE,
    GEM,
    NEGATIVITY,
    MeasureKind,
    concurrence_pure,
    gem_pure,
    measure_value,
    negativity,
    negativity_pure_schmidt,
    q_concurrence,
    q_concurrence_kind,
    wootters_concurrence,
)
from .polygon import (
    MEASURE_FLOOR,
    VIOLATION_TOL,
    AuditSummary,
    EpiReport,
    alpha_sweep,
    audit_random,
    audit_trial_report,
    epi_report,
    epi_residuals,
    indicator_delta,
    one_to_rest_values,
    power_inequality_holds,
    sample_state,
)
from .tensor import (
    HERMITIAN_TOL,
    NORM_TOL,
    PSD_TOL,
    SPECTRUM_SUM_TOL,
    TRACE_TOL,
    DensityOp,
    DimensionProfile,
    InputError,
    Ket,
    Partition,
    basis_ket,
    density_of,
    flat_index,
    haar_random_ket,
    iter_partitions,
    multi_index,
    partial_trace,
    partial_transpose,
    random_density,
    reduced_spectrum,
    schatten_norm,
)

__all__ = [
    "AcinParams",
    "AuditSummary",
    "BISEP_TOL",
    "CONCURRENCE",
    "DensityOp",
    "DimensionProfile",
    "EXAMPLE1_PAPER_VALUES",
    "EpiReport",
    "GEM",
    "GWSpec",
    "HERMITIAN_TOL",
    "InputError",
    "Ket",
    "MEASURE_FLOOR",
    "MeasureKind",
    "NEGATIVITY",
    "NORM_TOL",
    "PSD_TOL",
    "Partition",
    "ProductPurificationSpec",
    "SPECTRUM_SUM_TOL",
    "TRACE_TOL",
    "VIOLATION_TOL",
    "acin_cut_determinants",
    "acin_discriminants",
    "acin_is_biseparable",
    "acin_params",
    "acin_schmidt_spectra",
    "acin_state",
    "alpha_sweep",
    "audit_random",
    "audit_trial_report",
    "basis_ket",
    "concurrence_pure",
    "density_of",
    "epi_report",
    "epi_residuals",
    "example3_gw_spec",
    "flat_index",
    "gem_pure",
    "ghz_state",
    "gw_coarse_grain",
    "gw_negativity_closed",
    "gw_spec",
    "gw_state",
    "haar_random_ket",
    "indicator_delta",
    "iter_partitions",
    "measure_value",
    "multi_index",
    "named_state",
    "negativity",
    "negativity_gap_closed",
    "negativity_pure_schmidt",
    "one_to_rest_values",
    "partial_trace",
    "partial_transpose",
    "power_inequality_holds",
    "product_purification",
    "q_concurrence",
    "q_concurrence_kind",
    "random_density",
    "reduced_spectrum",
    "sample_state",
    "schatten_norm",
    "w_state",
    "wootters_concurrence",
]
