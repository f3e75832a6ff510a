"""Tests for the Lipschitz minorant and the PSR/CSR phase optimizers."""

import math
from typing import Dict, List

import numpy as np
import pytest

from channel.models import PhaseProfile
from channel.propagation import build_lifted, cascade_gains, sample_channels
from config.scenario import SystemConfig
from experiments.runner import random_phase_baseline
from numerics.rng import RngStream
from optimizer import pap as pap_module
from optimizer import plm as plm_module
from optimizer.models import OptimResult, StopReason
from optimizer.pap import pap_solve
from optimizer.plm import plm_solve, taylor_chi_upper
from optimizer.surrogate import (
    backtrack_lipschitz,
    build_surrogate,
    gamma,
    gamma_gradient,
    is_minorant,
    random_unit_modulus,
)
from rates.capacity import Mode, rate_c_csr, rate_report, sic_check_csr
from sdp.srocr import srocr
from strategy.allocation import alpha_region_csr, alpha_region_psr
from utils.exceptions import DomainError, InfeasibleInstanceError, RelaxationError, SolverError
from tests.helpers import random_unit_vector


@pytest.fixture
def lifted(rng, published_config):
    return build_lifted(sample_channels(published_config, rng))


@pytest.fixture(scope="module")
def strong_link() -> SystemConfig:
    """Calibrated geometry (no 1 m intercept) at 30 dBm."""
    return SystemConfig(path_loss_intercept_db=0.0, p_max=1.0)


def first_solved(solver, config: SystemConfig, seed: int = 7, attempts: int = 5):
    for index in range(attempts):
        stream = RngStream(seed, stream_id=index)
        channels = sample_channels(config, stream)
        try:
            return channels, solver(channels, config, rng=stream.substream(1))
        except InfeasibleInstanceError:
            continue
    pytest.fail(f"no feasible instance in {attempts} draws")


@pytest.fixture(scope="module")
def psr_run(strong_link):
    return first_solved(pap_solve, strong_link)


@pytest.fixture(scope="module")
def csr_run(strong_link):
    return first_solved(plm_solve, strong_link)


class TestGamma:
    def test_single_element_ignores_phase(self, generator):
        g_sb = np.array([[2.0]], dtype=complex)
        g_br = np.array([[3.0]], dtype=complex)
        values = {round(gamma(random_unit_vector(generator, 1), g_sb, g_br), 12) for _ in range(5)}
        assert values == {6.0}

    def test_all_ones(self):
        ones = np.ones((2, 2), dtype=complex)
        assert gamma(np.ones(2), ones, ones) == pytest.approx(16.0)

    def test_matches_raw_channels(self, rng, published_config, generator):
        channels = sample_channels(published_config, rng)
        lifted = build_lifted(channels)
        v = random_unit_vector(generator, channels.num_elements)
        sb = np.sum(np.conj(channels.g_s) * v * channels.g_b)
        br = np.sum(np.conj(channels.g_b) * v * channels.g_r)
        assert gamma(v, lifted.g_sb, lifted.g_br) == pytest.approx(abs(sb) ** 2 * abs(br) ** 2, rel=1e-10)

    def test_gradient_matches_finite_differences(self, lifted, generator):
        m = lifted.num_elements
        v0 = random_unit_vector(generator, m)
        d = generator.standard_normal(m) + 1j * generator.standard_normal(m)
        h = 1e-6
        numeric = (gamma(v0 + h * d, lifted.g_sb, lifted.g_br) - gamma(v0 - h * d, lifted.g_sb, lifted.g_br)) / (2 * h)
        analytic = float(np.real(np.vdot(gamma_gradient(v0, lifted.g_sb, lifted.g_br), d)))
        assert analytic == pytest.approx(numeric, rel=1e-5)


class TestSurrogate:
    def test_tight_at_anchor(self, lifted, generator):
        v0 = random_unit_vector(generator, lifted.num_elements)
        surrogate = build_surrogate(v0, lifted.g_sb, lifted.g_br, 2.5e-3, generator)
        target = gamma(v0, lifted.g_sb, lifted.g_br)
        assert surrogate.value(v0) == pytest.approx(target, rel=1e-8)
        assert surrogate.lemma_value(v0) == pytest.approx(target, rel=1e-12)

    def test_trace_form_matches_lemma_form(self, lifted, generator):
        v0 = random_unit_vector(generator, lifted.num_elements)
        surrogate = build_surrogate(v0, lifted.g_sb, lifted.g_br, 1.0, generator)
        m = lifted.num_elements
        scale = max(1.0, abs(surrogate.gamma0), float(np.linalg.norm(surrogate.gradient)) * math.sqrt(m), m)
        for v in random_unit_modulus(generator, m, 20):
            assert abs(surrogate.value(v) - surrogate.lemma_value(v)) <= 1e-7 * scale

    def test_minorant_after_backtracking(self, lifted, generator):
        m = lifted.num_elements
        v0 = random_unit_vector(generator, m)
        points = list(random_unit_modulus(generator, m, 300))
        lipschitz = backtrack_lipschitz(v0, lifted.g_sb, lifted.g_br, 1e-12, generator, samples=200, extra=points)
        assert lipschitz >= 1e-12
        surrogate = build_surrogate(v0, lifted.g_sb, lifted.g_br, lipschitz, generator)
        assert is_minorant(surrogate, lifted.g_sb, lifted.g_br, points)

    def test_rejects_non_unit_modulus_anchor(self, lifted):
        with pytest.raises(DomainError):
            build_surrogate(np.full(lifted.num_elements, 0.5), lifted.g_sb, lifted.g_br, 1.0)

    def test_rejects_nonpositive_lipschitz(self, lifted, generator):
        with pytest.raises(DomainError):
            build_surrogate(random_unit_vector(generator, lifted.num_elements), lifted.g_sb, lifted.g_br, 0.0)


class TestTangentBound:
    ARGS = dict(p_hat=1.0, sigma2=1.0, gamma_sic=3.0)

    @staticmethod
    def chi(x: float) -> float:
        return math.sqrt(4.0 - 4.0 * x)

    def test_equal_at_anchor(self):
        assert taylor_chi_upper(0.4, 0.4, **self.ARGS) == pytest.approx(self.chi(0.4), rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, 0.1, 0.5, 0.9, 1.0])
    def test_upper_bound(self, x):
        assert taylor_chi_upper(x, 0.4, **self.ARGS) >= self.chi(x) - 1e-12

    def test_decreasing(self):
        values = [taylor_chi_upper(x, 0.4, **self.ARGS) for x in np.linspace(0.0, 1.0, 11)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_anchor_outside_domain(self):
        with pytest.raises(DomainError):
            taylor_chi_upper(0.5, 1.0, **self.ARGS)


class TestPap:
    def test_gamma_trace_nondecreasing(self, psr_run):
        _, result = psr_run
        trace = result.objective_trace
        assert all(b >= a * (1 - 1e-9) for a, b in zip(trace, trace[1:]))
        assert result.gamma == pytest.approx(trace[-1], rel=1e-9)

    def test_result_meets_rate_constraints(self, psr_run, strong_link):
        channels, result = psr_run
        config = strong_link
        gains = cascade_gains(channels, result.phase)
        region = alpha_region_psr(config.p_max, gains, config.noise_power, config.gamma_c, config.gamma_sic)
        assert result.alpha == pytest.approx(region.lower, rel=1e-9)
        report = rate_report(Mode.PSR, result.p, result.alpha, gains, config.noise_power,
                             config.eps_sic, config.eps_c)
        assert report.sic_feasible and report.qos_feasible
        assert 0.0 <= result.xi <= 1.0
        assert result.tau > config.noise_power

    def test_infeasible_sic_raises(self, rng):
        hopeless = SystemConfig(eps_sic=40.0)
        with pytest.raises(InfeasibleInstanceError):
            pap_solve(sample_channels(hopeless, rng), hopeless, rng=rng)


class TestPlm:
    def test_alpha_trace_nonincreasing(self, csr_run):
        _, result = csr_run
        trace = result.objective_trace
        assert all(b <= a * (1 + 1e-9) for a, b in zip(trace, trace[1:]))

    def test_alpha_is_exact_bound(self, csr_run, strong_link):
        channels, result = csr_run
        config = strong_link
        gains = cascade_gains(channels, result.phase)
        exact = alpha_region_csr(config.p_max, gains, config.noise_power, config.gamma_sic, config.eta,
                                 config.eps_c).lower
        assert result.alpha == pytest.approx(exact, rel=1e-9)
        assert rate_c_csr(config.p_max, result.alpha, gains, config.noise_power, config.eta) >= config.eps_c - 1e-9
        assert sic_check_csr(config.p_max, result.alpha, gains, config.noise_power, config.eps_sic)
        assert 0.0 < result.alpha <= 1.0


@pytest.mark.slow
@pytest.mark.parametrize("solver, mode", [(pap_solve, Mode.PSR), (plm_solve, Mode.CSR)])
def test_optimized_alpha_beats_random_phases(strong_link, solver, mode):
    config = strong_link.with_overrides(num_elements=8)
    wins = compared = 0
    for index in range(8):
        stream = RngStream(99, stream_id=index)
        channels = sample_channels(config, stream)
        try:
            result = solver(channels, config, rng=stream.substream(1))
        except InfeasibleInstanceError:
            continue
        baseline_alpha, _ = random_phase_baseline(channels, config, mode, 100, stream.substream(2).generator())
        compared += 1
        if math.isnan(baseline_alpha) or result.alpha <= baseline_alpha:
            wins += 1
    assert compared >= 4
    assert wins >= compared - 1


class TestStopReasons:
    @staticmethod
    def fake_steps(monkeypatch, step):
        monkeypatch.setattr(plm_module, "_low_regime_step", step)
        monkeypatch.setattr(plm_module, "_high_regime_step", step)

    @staticmethod
    def run_plm(config: SystemConfig):
        channels = sample_channels(config, RngStream(3))
        return plm_solve(channels, config, rng=RngStream(3, stream_id=1))

    @pytest.mark.parametrize("alphas, reason", [
        ((0.5, 0.6), StopReason.NO_IMPROVEMENT),
        ((0.5, 0.5), StopReason.TOLERANCE),
    ])
    def test_plm_rejected_step_is_not_convergence(self, monkeypatch, strong_link, alphas, reason):
        values = iter(alphas)
        self.fake_steps(monkeypatch, lambda instance, surrogate, *_: (surrogate.v0, 1.0, 1.0))
        monkeypatch.setattr(plm_module._CsrInstance, "exact_alpha", lambda self, v: next(values))
        result = self.run_plm(strong_link)
        assert result.stop_reason is reason
        assert result.converged is (reason is StopReason.TOLERANCE)
        assert result.iterations == 1
        assert result.alpha == 0.5
        assert result.records[-1].accepted is (reason is StopReason.TOLERANCE)

    def test_plm_without_feasible_step(self, monkeypatch, strong_link):
        self.fake_steps(monkeypatch, lambda *_: None)
        monkeypatch.setattr(plm_module._CsrInstance, "exact_alpha", lambda self, v: 0.5)
        result = self.run_plm(strong_link)
        assert result.stop_reason is StopReason.NO_FEASIBLE_STEP
        assert not result.converged
        assert result.records == []
        assert result.objective_trace == [0.5]

    def test_pap_solver_failure_keeps_start(self, monkeypatch, strong_link):
        def stalled(*args, **kwargs):
            raise SolverError("interior point stalled", status="unknown")

        monkeypatch.setattr(pap_module, "srocr", stalled)
        _, result = first_solved(pap_solve, strong_link.with_overrides(eps_c=0.1))
        assert result.stop_reason is StopReason.SOLVER_FAILURE
        assert not result.converged
        assert result.iterations == 1
        assert len(result.objective_trace) == 1

    def test_converged_only_on_tolerance(self, psr_run, csr_run):
        for _, result in (psr_run, csr_run):
            assert isinstance(result.stop_reason, StopReason)
            assert result.converged is (result.stop_reason is StopReason.TOLERANCE)


def solved_instances(solver, config: SystemConfig, indices, seed: int = 2024) -> Dict[int, OptimResult]:
    results = {}
    for index in indices:
        stream = RngStream(seed, stream_id=index)
        channels = sample_channels(config, stream)
        try:
            results[index] = solver(channels, config, rng=stream.substream(1))
        except InfeasibleInstanceError:
            continue
    return results


class RankSpy:
    """Wraps srocr and records the rank ratio of every optimal relaxation."""

    def __init__(self):
        self.ratios: List[float] = []
        self.stalls = 0

    def __call__(self, *args, **kwargs):
        try:
            solution = srocr(*args, **kwargs)
        except RelaxationError:
            self.stalls += 1
            raise
        if solution.optimal:
            self.ratios.append(solution.rank_ratio)
        return solution


@pytest.mark.slow
class TestConvergence:
    def test_pap_stops_before_iteration_cap(self, strong_link):
        results = solved_instances(pap_solve, strong_link, range(20))
        assert len(results) >= 12
        settled = [r for r in results.values() if r.stop_reason in (StopReason.TOLERANCE, StopReason.NO_IMPROVEMENT)]
        assert len(settled) >= 0.95 * len(results)
        for result in results.values():
            assert result.iterations <= strong_link.max_iterations
            trace = result.objective_trace
            assert all(b >= a * (1 - 1e-9) for a, b in zip(trace, trace[1:]))

    def test_csr_needs_at_least_as_many_iterations(self, strong_link):
        config = strong_link.with_overrides(init_strategy="align")
        psr = solved_instances(pap_solve, config, range(10))
        csr = solved_instances(plm_solve, config, range(10))
        matched = sorted(psr.keys() & csr.keys())
        assert len(matched) >= 6
        csr_median = np.median([csr[k].iterations for k in matched])
        psr_median = np.median([psr[k].iterations for k in matched])
        assert csr_median >= psr_median

    @pytest.mark.parametrize("num_elements", [4, 8, 10])
    def test_relaxation_reaches_rank_one(self, monkeypatch, strong_link, num_elements):
        spy = RankSpy()
        monkeypatch.setattr(pap_module, "srocr", spy)
        monkeypatch.setattr(plm_module, "srocr", spy)
        config = strong_link.with_overrides(num_elements=num_elements)
        for solver in (pap_solve, plm_solve):
            solved_instances(solver, config, range(3), seed=31)
        assert spy.stalls == 0
        assert spy.ratios
        assert min(spy.ratios) >= config.rank_target
