"""Exact-arithmetic toolkit for melting-crystal partition functions,
quantum-torus shift symmetries, and 2D Toda tau functions."""

from .algebra import (
    Scalar,
    SeriesContext,
    TruncatedSeries,
    first_difference,
    qpow,
    series_exp,
    series_from_json_dict,
    series_partial,
)
from .fock import (
    ExactnessCertificate,
    FockState,
    Overflow,
    SectorConfig,
    SectorOperator,
    apply_bilinear,
    basis,
    bilinear_diagonal,
    diag_op,
    dump_entries,
    j_op,
    op_product,
    transfer_operator,
    transfer_pair,
    v_op,
    vertex_op,
)
from .models import (
    ModelParams,
    charge_offset,
    fermionic_expectation,
    l0_eigenvalue,
    phi_potential,
    schur_qrho,
    w0_eigenvalue,
    z_series,
    zprime_series,
    zprime_special,
)
from .partitions import (
    Partition,
    conjugate,
    enumerate_partitions,
    hook_multiset,
    weight_kappa,
)
from .symmetries import (
    CheckReport,
    commutator_check,
    first_shift_check,
    second_shift_check,
    torus_constant,
)
from .toda import (
    CalibrationError,
    GradedOperator,
    TauSeries,
    build_g,
    build_gprime,
    calibrate_bilinear_sign,
    check_prev_forms,
    check_prev_reduction,
    ground_action_constants,
    intertwining_residual,
    tau_prev_series,
    tau_prime_family,
    tau_prime_series,
    toda_bilinear_residual,
    trivial_tau,
    trivial_tau_compare,
    verify_main_identity,
    verify_prev_identity,
    zprime_family,
)

__version__ = "0.1.0"
