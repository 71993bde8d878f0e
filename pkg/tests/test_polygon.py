"""Residuals, the delta indicator, the power lemma, and randomized audits."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import entpoly as ep
from helpers import random_unit_vector


def product_ket(dims, seed):
    rng = np.random.default_rng(seed)
    amp = np.array([1.0], dtype=complex)
    for d in dims:
        amp = np.kron(amp, random_unit_vector(d, rng))
    return ep.Ket(ep.DimensionProfile(dims), amp)


class TestOneToRest:
    def test_example2_negativity(self):
        psi = ep.named_state("example2")
        vals = ep.one_to_rest_values(psi, ep.Partition.singletons(3), ep.NEGATIVITY)
        assert_allclose(vals, [4.0, 1.0, 1.0], atol=1e-9)

    def test_example3_negativity(self):
        psi = ep.named_state("example3")
        vals = ep.one_to_rest_values(psi, ep.Partition.parse("1|2,3|4"), ep.NEGATIVITY)
        assert_allclose(vals, [0.5, math.sqrt(0.2419), math.sqrt(0.0819)], atol=1e-9)

    def test_ghz_gem(self):
        vals = ep.one_to_rest_values(
            ep.named_state("ghz(3)"), ep.Partition.singletons(3), ep.GEM
        )
        assert_allclose(vals, [0.5, 0.5, 0.5], atol=1e-12)

    def test_single_block_rejected(self):
        psi = ep.named_state("bell")
        with pytest.raises(ep.InputError):
            ep.one_to_rest_values(psi, ep.Partition(((1, 2),)), ep.GEM)


class TestResiduals:
    def test_example1_printed_values(self):
        res = ep.epi_residuals([9 / 25, 14 / 25, 19 / 25], 1.0)
        assert abs(res[2] - 4 / 25) < 1e-12  # residual at the largest entry

    def test_example2_violation(self):
        res = ep.epi_residuals([4.0, 1.0, 1.0], 1.0)
        assert abs(res[0] + 2.0) < 1e-12

    def test_symmetric_pair(self):
        assert_allclose(ep.epi_residuals([0.3, 0.3], 0.7), [0.0, 0.0], atol=1e-15)

    def test_zero_powers(self):
        # 0^alpha := 0, so zero entries contribute nothing at any exponent
        res = ep.epi_residuals([0.0, 0.5, 0.5], 0.25)
        assert abs(res[0] - 2 * 0.5**0.25) < 1e-12

    def test_alpha_domain(self):
        with pytest.raises(ep.InputError):
            ep.epi_residuals([1.0, 1.0], 0.0)
        with pytest.raises(ep.InputError):
            ep.epi_residuals([1.0, 1.0], 1.5)
        # the unproven regime is reachable only on request
        res = ep.epi_residuals([1.0, 1.0], 1.5, allow_unproven=True)
        assert_allclose(res, [0.0, 0.0])

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(2)
        vals = rng.random(4)
        perm = [2, 0, 3, 1]
        a = ep.epi_residuals(vals, 0.5)
        b = ep.epi_residuals(vals[perm], 0.5)
        assert_allclose(a[perm], b, atol=1e-14)


class TestIndicator:
    def test_biseparable_product(self):
        plus = np.array([1.0, 1.0]) / math.sqrt(2)
        bell = ep.named_state("bell").amplitudes
        amp = np.kron(plus, bell)
        psi = ep.Ket(ep.DimensionProfile((2, 2, 2)), amp)
        delta, _ = ep.indicator_delta(psi, 0.5)
        assert abs(delta) < 1e-9

    def test_full_product(self):
        delta, taus = ep.indicator_delta(product_ket((2, 2, 2), 4), 0.3)
        assert abs(delta) < 1e-9
        assert_allclose(taus, [0.0, 0.0, 0.0], atol=1e-9)

    def test_ghz(self):
        delta, taus = ep.indicator_delta(ep.named_state("ghz(3)"), 0.5)
        assert abs(delta - math.sqrt(0.5)) < 1e-12
        assert_allclose(taus, [math.sqrt(0.5)] * 3, atol=1e-12)

    def test_w_state(self):
        # each W marginal has eigenvalues {2/3, 1/3}, so G = 1/3 per cut
        delta, _ = ep.indicator_delta(ep.named_state("w(3)"), 0.5)
        assert abs(delta - (1 / 3) ** 0.5) < 1e-12

    def test_nonnegative_on_random_states(self):
        alphas = [round(0.1 * k, 1) for k in range(1, 10)]
        for t in range(50):
            psi = ep.haar_random_ket(ep.DimensionProfile((2, 2, 2)), np.random.SeedSequence([13, t]))
            for alpha in alphas:
                delta, taus = ep.indicator_delta(psi, alpha)
                assert delta >= -ep.VIOLATION_TOL
                assert abs(delta - min(taus)) < 1e-15

    def test_alpha_domain_open(self):
        psi = ep.named_state("ghz(3)")
        for bad in (0.0, 1.0, 1.3):
            with pytest.raises(ep.InputError):
                ep.indicator_delta(psi, bad)


class TestPowerInequality:
    def test_examples(self):
        assert ep.power_inequality_holds(0.5, 0.5, 1.0, 0.5)
        for alpha in np.linspace(0.05, 1.0, 20):
            assert ep.power_inequality_holds(6 / 25, 11 / 25, 16 / 25, float(alpha))

    def test_equality_boundary(self):
        a, b = 0.31, 0.47
        assert ep.power_inequality_holds(a, b, a + b, 1.0)

    def test_precondition_enforced(self):
        with pytest.raises(ep.InputError):
            ep.power_inequality_holds(0.1, 0.1, 0.5, 0.5)
        with pytest.raises(ep.InputError):
            ep.power_inequality_holds(0.0, 0.5, 0.4, 0.5)
        with pytest.raises(ep.InputError):
            ep.power_inequality_holds(0.5, 0.5, 0.9, 1.5)

    def test_random_quadruples(self):
        rng = np.random.default_rng(31)
        for _ in range(10_000):
            a, b = rng.uniform(1e-12, 1.0, size=2)
            c = rng.uniform(0.0, min(1.0, a + b))
            c = max(c, 1e-12)
            alpha = rng.uniform(1e-6, 1.0)
            assert ep.power_inequality_holds(a, b, c, alpha)


class TestAlphaSweep:
    def test_example1_paper_values(self):
        pts = ep.alpha_sweep(ep.EXAMPLE1_PAPER_VALUES, [1.0])
        assert abs(pts[0][1] - 0.16) < 1e-12

    def test_example3_values(self):
        vals = [0.5, math.sqrt(0.2419), math.sqrt(0.0819)]
        pts = ep.alpha_sweep(vals, [1.0])
        expected = math.sqrt(0.2419) + math.sqrt(0.0819) - 0.5
        assert abs(pts[0][1] - expected) < 1e-12
        assert abs(pts[0][1] - 0.27801) < 1e-5

    def test_small_alpha_limit(self):
        # three non-zero entries: every power tends to 1, so the residual -> 1
        pts = ep.alpha_sweep([0.36, 0.76, 0.56], [0.01])
        assert pts[0][1] > 0.9

    def test_designated_block_defaults_to_largest(self):
        vals = [9 / 25, 19 / 25, 14 / 25]
        pts = ep.alpha_sweep(vals, [1.0])
        assert abs(pts[0][1] - 0.16) < 1e-12
        pts0 = ep.alpha_sweep(vals, [1.0], block=0)
        assert abs(pts0[0][1] - (19 / 25 + 14 / 25 - 9 / 25)) < 1e-12

    def test_empty_grid_rejected(self):
        with pytest.raises(ep.InputError):
            ep.alpha_sweep([0.5, 0.5], [])


class TestAudit:
    def test_gem_haar_no_violations(self):
        prof = ep.DimensionProfile((2, 2, 2))
        summary = ep.audit_random(prof, None, ep.GEM, 1.0, 1000, seed=101)
        assert summary.violations == 0
        assert summary.worst_residual >= -ep.VIOLATION_TOL

    def test_concurrence_qutrits_no_violations(self):
        prof = ep.DimensionProfile((3, 3, 3))
        summary = ep.audit_random(prof, None, ep.CONCURRENCE, 1.0, 200, seed=102)
        assert summary.violations == 0

    def test_purification_all_violations(self):
        prof = ep.DimensionProfile((3, 3, 9))
        summary = ep.audit_random(prof, None, ep.NEGATIVITY, 1.0, 100, seed=103, sampler="purification")
        assert summary.violations == summary.trials

    def test_purification_profile_shorthand(self):
        a = ep.audit_random(ep.DimensionProfile((3, 3)), None, ep.NEGATIVITY, 1.0, 20, seed=7, sampler="purification")
        b = ep.audit_random(ep.DimensionProfile((3, 3, 9)), None, ep.NEGATIVITY, 1.0, 20, seed=7, sampler="purification")
        assert a.worst_residual == b.worst_residual

    def test_gw_sampler_no_violations(self):
        prof = ep.DimensionProfile((3, 3, 3, 3))
        summary = ep.audit_random(prof, None, ep.NEGATIVITY, 0.5, 100, seed=104, sampler="gw")
        assert summary.violations == 0

    def test_deterministic_and_replayable(self):
        prof = ep.DimensionProfile((2, 3))
        a = ep.audit_random(prof, None, ep.GEM, 0.5, 50, seed=9)
        b = ep.audit_random(prof, None, ep.GEM, 0.5, 50, seed=9)
        assert a == b
        report = ep.audit_trial_report(prof, None, ep.GEM, 0.5, 9, a.worst_trial)
        assert abs(report.min_residual - a.worst_residual) < 1e-15
        assert a.worst_seed == (9, a.worst_trial)

    def test_trial_reports_independent_of_order(self):
        prof = ep.DimensionProfile((2, 2, 2))
        forward = [
            ep.audit_trial_report(prof, None, ep.GEM, 1.0, 5, t).min_residual for t in range(10)
        ]
        backward = [
            ep.audit_trial_report(prof, None, ep.GEM, 1.0, 5, t).min_residual
            for t in reversed(range(10))
        ]
        assert forward == backward[::-1]

    def test_trials_validation(self):
        with pytest.raises(ep.InputError):
            ep.audit_random(ep.DimensionProfile((2, 2)), None, ep.GEM, 1.0, 0, seed=1)

    def test_bad_sampler(self):
        with pytest.raises(ep.InputError):
            ep.audit_random(ep.DimensionProfile((2, 2)), None, ep.GEM, 1.0, 5, seed=1, sampler="ppt")


class TestEpiReport:
    def test_report_fields(self):
        psi = ep.named_state("example2")
        report = ep.epi_report(psi, ep.Partition.singletons(3), ep.NEGATIVITY, 1.0)
        assert report.holds is False
        assert abs(report.min_residual + 2.0) < 1e-9
        assert len(report.values) == len(report.residuals) == 3
        assert report.min_residual == min(report.residuals)

    def test_holds_for_example3(self):
        psi = ep.named_state("example3")
        report = ep.epi_report(psi, ep.Partition.parse("1|2,3|4"), ep.NEGATIVITY, 1.0)
        assert report.holds is True
