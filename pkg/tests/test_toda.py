import json
from fractions import Fraction
from pathlib import Path

import pytest

from toda_crystal import (
    CalibrationError,
    ModelParams,
    SeriesContext,
    TruncatedSeries,
    build_g,
    build_gprime,
    calibrate_bilinear_sign,
    charge_offset,
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
    z_series,
    zprime_family,
    zprime_special,
    zprime_series,
)
from toda_crystal.algebra import linear_form, series_exp, series_from_json_dict
from toda_crystal.symmetries import FAIL, INSUFFICIENT, PASS
from toda_crystal.toda import TauSeries, _j_matrix

P = Fraction(1, 2)
FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def params(s=0, l=0, p=P, K=2, D=2, NQ=2, N=None):
    return ModelParams(s, l, p, SeriesContext(K, D, NQ), N)


def test_graded_operator_identity_transfers_is_diagonal():
    pr = params(s=0, l=1, NQ=3, D=0, K=1)
    g = build_gprime(pr, identity_transfers=True)
    cfg = pr.config
    from toda_crystal.fock import get_basis, w0_diag

    b = get_basis(cfg.N)
    w0 = w0_diag(cfg)
    for n in range(4):
        block = g.block(n)
        for i, row in block.items():
            assert list(row) == [i]
            assert b.weights[i] == n
            # A = p^{(1+l) W0}, B = p^{-W0}: diagonal p^{l w0}
            assert row[i] == cfg.p ** (cfg.l * w0[i])


def test_block_grading_support():
    pr = params()
    g = build_gprime(pr)
    from toda_crystal.fock import get_basis

    b = get_basis(pr.N)
    for n in range(pr.ctx.NQ + 1):
        for i, row in g.block(n).items():
            assert b.weights[i] <= pr.N
    with pytest.raises(ValueError):
        g.block(pr.N + 1)


def test_vacuum_q_series_matches_partition_sums():
    # <s|g'|s> reproduces the zero-coupling modified partition function
    pr = params(s=0, l=0, K=1, D=0, NQ=3)
    g = build_gprime(pr)
    assert g.vacuum_q_series().q_profile() == zprime_special(0, P, 3).q_profile()
    pr1 = params(s=0, l=1, K=1, D=0, NQ=3)
    assert build_gprime(pr1).vacuum_q_series().q_profile() == \
        zprime_special(1, P, 3).q_profile()
    # <0|g|0> matches the previous model at zero couplings
    prz = params(s=0, l=0, K=1, D=0, NQ=3)
    assert build_g(prz).vacuum_q_series().q_profile() == \
        z_series(prz).q_profile()


def test_tau_prime_constant_term_is_vacuum_series():
    pr = params()
    g = build_gprime(pr)
    tau = tau_prime_series(pr, g).series
    vac = g.vacuum_q_series()
    got = {k: v for k, v in tau.coeffs.items() if not any(k[1:])}
    assert got == vac.coeffs


def test_tau_prime_low_order_coefficient():
    # with identity transfers g'_0 is the rank-one vacuum projector, so the
    # t1 th1 coefficient at the lowest grade needs <0|J_1|0> = 0 and vanishes
    pr = params(s=0, l=0, K=1, D=2, NQ=0)
    hook = build_gprime(pr, identity_transfers=True)
    tau_hook = tau_prime_series(pr, hook).series
    assert (0, 1, 1) not in tau_hook.coeffs
    # with the full transfers the same coefficient is -<0|J_1 g'_0 J_-1|0>,
    # a rank-one product A_{(1),empty} B_{empty,(1)} = -q/(1-q)^2
    tau = tau_prime_series(pr).series
    q = P * P
    assert tau.coeffs[(0, 1, 1)] == -q / (1 - q) ** 2 == Fraction(-4, 9)


def test_tau_prime_fixture():
    data = json.loads((FIXTURES / "tau_prime_s0_l0_p1of2.json").read_text())
    fixture = series_from_json_dict(data["series"])
    assert tau_prime_series(params()).series == fixture


@pytest.mark.parametrize("s,l", [(0, 0), (1, 0), (-1, 1), (1, 1)])
def test_main_identity_small_sweep(s, l):
    assert verify_main_identity(params(s=s, l=l)).status == PASS


def test_main_identity_second_p_point():
    assert verify_main_identity(params(p=Fraction(3, 5))).status == PASS


@pytest.mark.parametrize("s,l", [(0, 0), (1, 0), (-1, 1)])
def test_prev_identity_small_sweep(s, l):
    rep = verify_prev_identity(params(s=s, l=l))
    assert rep.status == PASS


def test_prev_identity_constant():
    rep = verify_prev_identity(params(s=1))
    assert rep.evidence["constant"] == "4"
    rep0 = verify_prev_identity(params(s=0))
    assert rep0.evidence["constant"] == "1"


@pytest.mark.parametrize("s", [-1, 0, 1])
def test_prev_forms_agree(s):
    assert check_prev_forms(params(s=s, NQ=3)).status == PASS


@pytest.mark.parametrize("s", [-1, 0, 1])
def test_prev_reduction(s):
    assert check_prev_reduction(params(s=s, NQ=3)).status == PASS


def test_reduction_at_equal_times_is_constant():
    from toda_crystal.algebra import merge_hatted_into_t

    pr = params()
    g = build_g(pr)
    two = tau_prev_series(pr, "reduced_2d", g).series
    merged = merge_hatted_into_t(two)
    vac = {k: v for k, v in merged.coeffs.items() if not any(k[1:])}
    assert merged.coeffs == vac


def test_tau_prev_rejects_unknown_form():
    with pytest.raises(ValueError):
        tau_prev_series(params(), "diagonal")


def test_ground_action_constants():
    for s, scalar in ((0, "1"), (1, "2"), (-1, "1"), (2, "32")):
        rep = ground_action_constants(s, P, 4)
        assert rep.status == PASS
        assert rep.evidence["left_scalar"] == scalar


def test_intertwining_true_and_fake():
    pr = params(K=2, D=2, NQ=3)
    for k in (1, 2):
        assert intertwining_residual("g_true", k, pr).status == PASS
    rep = intertwining_residual("gprime_fake", 1, pr)
    assert rep.status == PASS
    entry = rep.evidence["nonzero_entry"]
    assert entry["grade"] == 0 and entry["row"] == [] and entry["col"] == []


def test_intertwining_validation():
    pr = params(K=1, D=2, NQ=2)
    with pytest.raises(ValueError):
        intertwining_residual("g_true", 0, pr)
    with pytest.raises(ValueError):
        intertwining_residual("g_true", 2, pr)
    with pytest.raises(ValueError):
        intertwining_residual("both", 1, pr)


def test_trivial_tau_closed_form():
    # machinery result equals exp(-sigma sum k t_k th_k) with the central
    # sign realized by the commutators
    sigma = _central_sign()
    tt = trivial_tau(2, 2)
    ctx = tt.ctx
    lin = linear_form(ctx, None, None)
    expected = TruncatedSeries.zero(ctx)
    for k in (1, 2):
        key = [0] * ctx.nvars
        key[ctx.var_index(f"t{k}")] = 1
        key[ctx.var_index(f"th{k}")] = 1
        expected = expected + TruncatedSeries(ctx, {tuple(key): Fraction(-sigma * k)})
    assert tt == series_exp(expected)


def _central_sign() -> int:
    j1 = _j_matrix(1, 2)
    jm1 = _j_matrix(-1, 2)
    comm = j1.matmul(jm1) - jm1.matmul(j1)
    return int(comm.get(0, 0))


def test_trivial_tau_compare_differs():
    rep = trivial_tau_compare(params())
    assert rep.status == PASS
    assert rep.evidence["constant_terms_agree"] is True
    assert "first_difference" in rep.evidence


def test_calibration():
    assert calibrate_bilinear_sign(1, 2) in (1, -1)
    assert calibrate_bilinear_sign(1, 2) == -_central_sign()
    with pytest.raises(CalibrationError):
        calibrate_bilinear_sign(1, 1)


def test_bilinear_tau_prime_family():
    pr = params(K=1, D=2, NQ=2)
    fam = tau_prime_family(pr, range(-2, 3))
    rep = toda_bilinear_residual(fam)
    assert rep.status == PASS
    assert rep.evidence["centers"] == [-1, 0, 1]


def test_bilinear_zprime_family_same_constant():
    pr = params(K=1, D=2, NQ=2)
    fam_tau = tau_prime_family(pr, range(-1, 2))
    fam_z = zprime_family(pr, range(-1, 2))
    rep_tau = toda_bilinear_residual(fam_tau)
    rep_z = toda_bilinear_residual(fam_z)
    assert rep_tau.status == rep_z.status == PASS
    assert rep_tau.evidence["constant"] == rep_z.evidence["constant"]


def test_bilinear_explicit_sign_and_failure():
    pr = params(K=1, D=2, NQ=2)
    fam = tau_prime_family(pr, range(-1, 2))
    good = Fraction(calibrate_bilinear_sign(1, 2))
    assert toda_bilinear_residual(fam, sign=good).status == PASS
    bad = -good
    rep = toda_bilinear_residual(fam, sign=bad)
    assert rep.status == FAIL
    assert "first_nonzero" in rep.evidence


def test_bilinear_insufficient_without_neighbors():
    pr = params(K=1, D=2, NQ=2)
    fam = tau_prime_family(pr, [0, 1])
    assert toda_bilinear_residual(fam).status == INSUFFICIENT


def test_tau_coefficients_stable_under_cutoff_growth():
    pr = params(K=2, D=2, NQ=2)
    small = tau_prime_series(pr).series
    big = tau_prime_series(pr.with_cutoff(pr.N + 2)).series
    assert small == big


def test_main_identity_stable_under_cutoff_growth():
    pr = params()
    lhs_small = verify_main_identity(pr)
    lhs_big = verify_main_identity(pr.with_cutoff(pr.N + 2))
    assert lhs_small.status == lhs_big.status == PASS
