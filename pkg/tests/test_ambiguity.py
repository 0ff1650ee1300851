import math

import numpy as np
import pytest

from epsilon_lab.core import catalog
from epsilon_lab.core import ambiguity
from epsilon_lab.core.ambiguity import (
    alice_bob_reports,
    classify,
    family_tn_stationary,
    gap_witness,
    grid_points,
    midpoint_axis,
    output_comparison,
    region_flags,
    region_scan,
    solve_target_complexity,
)
from epsilon_lab.core.machines import binary_entropy, stationary_distribution
from epsilon_lab.core.quantum_memory import fidelity_constraints, quantum_complexity
from epsilon_lab.datamodels import (
    ComplexityReport,
    DegenerateParameters,
    MissingE,
    NonConvergence,
    OutputCase,
    TargetOutOfRange,
    Verdict,
)


def _report(c, q=None, e=None):
    return ComplexityReport(statistical_complexity=c, quantum_complexity=q, excess_entropy=e)


def test_opposite_orderings_are_ambiguous():
    verdict = classify(_report(1.0, 0.4, 0.1), _report(0.8, 0.6, 0.1))
    assert verdict.sufficient_condition is Verdict.AMBIGUOUS
    assert verdict.classical_order == 1
    assert verdict.quantum_order == -1
    assert verdict.delta_c == pytest.approx(0.2)


def test_matching_orderings_are_consistent():
    verdict = classify(_report(1.0, 0.7), _report(0.8, 0.6))
    assert verdict.sufficient_condition is Verdict.CONSISTENT


def test_differences_inside_the_dead_band_do_not_order():
    verdict = classify(_report(1.0, 0.7), _report(1.0 + 1e-12, 0.6))
    assert verdict.classical_order == 0
    assert verdict.sufficient_condition is Verdict.CONSISTENT


def test_excess_entropy_bounds_the_unknown_quantum_complexity():
    # Q_A = 0.3 <= E_B = 0.5 <= Q_B while C_A > C_B
    assert classify(_report(1.0, 0.3, 0.2), _report(0.9, None, 0.5)).sufficient_condition is Verdict.AMBIGUOUS
    assert classify(_report(0.8, 0.3, 0.2), _report(0.9, None, 0.5)).sufficient_condition is Verdict.CONSISTENT
    assert classify(_report(1.0, 0.6, 0.2), _report(0.9, None, 0.5)).sufficient_condition is Verdict.AGNOSTIC


def test_one_sided_verdict_needs_an_excess_entropy():
    with pytest.raises(MissingE):
        classify(_report(1.0, 0.3), _report(0.9))


def test_region_flags():
    a, b = _report(0.7, 0.7, 0.7), _report(0.9, 0.6, 0.1)
    assert region_flags(a, b) == {'r1': True, 'r2': False, 'r3': False, 'r4': False}
    assert region_flags(b, a) == {'r1': False, 'r2': False, 'r3': True, 'r4': False}


def test_alice_and_bob_closed_forms():
    alpha, r = 0.5, 0.2
    alice, bob = alice_bob_reports(alpha, r)
    b = 1.0 / (1.0 + (1 - r) * (1 - alpha))
    assert alice.statistical_complexity == pytest.approx(binary_entropy(r))
    assert alice.quantum_complexity == pytest.approx(binary_entropy(r), abs=1e-9)
    assert bob.statistical_complexity == pytest.approx(binary_entropy(b))
    assert bob.quantum_complexity == pytest.approx(
        binary_entropy(0.5 - 0.5 * math.sqrt(1 - 4 * b * (1 - b) * (1 - alpha))), abs=1e-9)


def test_region_scan_keeps_grid_order_across_workers():
    grid = grid_points({'alpha': midpoint_axis(4), 'r': midpoint_axis(3)})
    serial = region_scan(alice_bob_reports, grid)
    parallel = region_scan(alice_bob_reports, grid, workers=3)
    assert [p.coordinates for p in serial] == grid
    assert serial == parallel
    for point in serial:
        assert not (point.r1 and point.r2)
        assert not (point.r3 and point.r4)


def test_region_scan_records_failed_nodes():
    def failing(alpha):
        raise DegenerateParameters('no strategy here')

    points = region_scan(failing, [{'alpha': 0.5}])
    assert points[0].error == 'no strategy here'


@pytest.mark.parametrize('q0, q1', [(0.2, 0.7), (0.5, 0.5), (1.0, 0.1)])
def test_tn_stationary_closed_form_for_two_states(q0, q1):
    pi = family_tn_stationary(2, [q0, q1])
    assert np.allclose(pi.probabilities, np.array([q1, q0]) / (q0 + q1))


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_tn_stationary_matches_the_pipeline(n):
    rng = np.random.default_rng(n)
    q = rng.uniform(0.05, 1.0, size=n)
    pipeline = stationary_distribution(catalog.tn(q), catalog.coin(0.3))
    assert np.allclose(family_tn_stationary(n, q).probabilities, pipeline.probabilities, atol=1e-10)


def test_tn_rejects_zero_advance_probabilities():
    with pytest.raises(DegenerateParameters):
        family_tn_stationary(3, [0.5, 0.0, 0.5])


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_target_complexities_are_hit(n):
    rng = np.random.default_rng(100 + n)
    coin = catalog.coin(0.5)
    for target in rng.uniform(0.01, math.log2(n) - 0.01, size=20):
        q = solve_target_complexity(n, float(target), coin)
        t = catalog.tn(q)
        report = quantum_complexity(t, coin)
        assert report.statistical_complexity == pytest.approx(target, abs=1e-6)
        assert report.quantum_complexity == pytest.approx(target, abs=1e-6)
        off_diagonal = fidelity_constraints(t).matrix[~np.eye(n, dtype=bool)]
        assert np.all(off_diagonal == 0.0)


def test_maximal_target_is_the_uniform_cycle():
    assert np.allclose(solve_target_complexity(3, math.log2(3)), 1.0)


@pytest.mark.parametrize('target', [0.0, -0.1, 1.2])
def test_unreachable_targets(target):
    with pytest.raises(TargetOutOfRange):
        solve_target_complexity(2, target)


def test_gap_witness_builds_an_ambiguous_partner(bob_half, coin_fifth):
    bob = quantum_complexity(bob_half, coin_fifth)
    partner = quantum_complexity(catalog.tn(gap_witness(bob, 3)), coin_fifth)
    assert classify(bob, partner).sufficient_condition is Verdict.AMBIGUOUS


def test_gap_witness_needs_a_gap(delay, coin_fifth):
    with pytest.raises(TargetOutOfRange):
        gap_witness(quantum_complexity(delay, coin_fifth), 2)


@pytest.mark.parametrize('p, q, r', [(0.2, 0.6, 0.3), (0.5, 0.5, 0.8), (0.9, 0.1, 0.5)])
def test_no_ambiguity_model(p, q, r):
    t = catalog.no_ambiguity(p, q)
    pi = stationary_distribution(t, catalog.coin(r))
    assert pi.probabilities[0] == pytest.approx((1 - (1 - q) * r) / (1 + (p + q - 1) * r))
    fidelity = fidelity_constraints(t)
    assert fidelity['0', '1'] == pytest.approx(math.sqrt((1 - p) * q) + math.sqrt(p * (1 - q)), abs=1e-12)


def test_identical_agents_compare_consistently(coin_fifth):
    ising = catalog.ising(0.3, 0.6)
    comparison = output_comparison(ising, ising, coin_fifth)
    assert comparison.case is OutputCase.BOTH_CONSISTENT
    assert comparison.d_c == 0.0
    assert comparison.d_q_out == 0.0


def test_target_check_rejects_a_pipeline_miss(monkeypatch):
    monkeypatch.setattr(ambiguity, 'quantum_complexity', lambda t, source: _report(1.0, 1.0))
    with pytest.raises(NonConvergence) as failure:
        solve_target_complexity(2, 0.5, catalog.coin(0.5))
    assert failure.value.residual == pytest.approx(0.5)


@pytest.mark.parametrize('p, q', [(0.2, 0.6), (0.5, 0.5), (0.9, 0.1), (0.05, 0.95)])
def test_no_ambiguity_model_orders_agree_for_every_pair_of_biases(p, q):
    t = catalog.no_ambiguity(p, q)
    overlap = math.sqrt((1 - p) * q) + math.sqrt(p * (1 - q))
    reports = []
    for r in midpoint_axis(50):
        report = quantum_complexity(t, catalog.coin(r))
        phi = (1 - (1 - q) * r) / (1 + (p + q - 1) * r)
        upper = 0.5 + 0.5 * math.sqrt(1 - 4 * phi * (1 - phi) * (1 - overlap ** 2))
        assert report.statistical_complexity == pytest.approx(binary_entropy(phi), abs=1e-10)
        assert report.quantum_complexity == pytest.approx(binary_entropy(upper), abs=1e-10)
        reports.append(report)
    verdicts = [classify(a, b).sufficient_condition for a in reports for b in reports]
    assert Verdict.AMBIGUOUS not in verdicts


@pytest.mark.slow
def test_region_verdicts_agree_with_direct_comparisons():
    grid = grid_points({'alpha': midpoint_axis(200), 'r': midpoint_axis(200)})
    points = region_scan(alice_bob_reports, grid, workers=4)
    assert all(point.error is None for point in points)
    for point in points:
        if point.r1 or point.r3:
            assert point.direct is Verdict.AMBIGUOUS, point.coordinates
        if point.r2 or point.r4:
            assert point.direct is Verdict.CONSISTENT, point.coordinates
    assert any(point.r1 for point in points)
    assert any(point.r2 for point in points)
    assert any(point.r4 for point in points)
    assert not any(point.r3 for point in points)
