import numpy as np
import pytest

from epsilon_lab.core import catalog
from epsilon_lab.core.machines import (
    binary_entropy,
    entropy,
    recurrent_classes,
    rebuild_transitions,
    stationary_distribution,
    statistical_complexity,
    successor_indices,
    successor_map,
    validate_machine,
    validate_transducer,
)
from epsilon_lab.core.process_algebra import joint_machine
from epsilon_lab.datamodels import (
    MultipleRecurrentClasses,
    NotADistribution,
    NotUnifilar,
)


def test_entropy_of_uniform_distribution():
    assert entropy([0.25] * 4) == pytest.approx(2.0)
    assert entropy([1.0, 0.0]) == 0.0


def test_entropy_rejects_non_distributions():
    with pytest.raises(NotADistribution):
        entropy([0.5, 0.6])
    with pytest.raises(NotADistribution):
        entropy([1.2, -0.2])


def test_period2_has_one_bit_of_memory():
    pi = stationary_distribution(catalog.period2())
    assert np.allclose(pi.probabilities, [0.5, 0.5])
    assert statistical_complexity(pi) == pytest.approx(1.0)


def test_stationary_distribution_ignores_transient_states():
    m = catalog.machine_from_edges(('t', 'a', 'b'), catalog.BINARY, [
        ('t', 'a', '0', 1.0),
        ('a', 'b', '0', 1.0),
        ('b', 'a', '1', 1.0),
    ])
    pi = stationary_distribution(m)
    assert np.allclose(pi.probabilities, [0.0, 0.5, 0.5])
    assert [c.tolist() for c in recurrent_classes(m.total)] == [[1, 2]]


def test_two_recurrent_classes_are_rejected():
    m = catalog.machine_from_edges(('a', 'b'), catalog.BINARY, [('a', 'a', '0', 1.0), ('b', 'b', '1', 1.0)])
    assert not validate_machine(m).ergodic
    with pytest.raises(MultipleRecurrentClasses):
        stationary_distribution(m)


def test_validation_reports_non_stochastic_rows():
    m = catalog.machine_from_edges(('a',), catalog.BINARY, [('a', 'a', '0', 0.5), ('a', 'a', '1', 0.4)])
    report = validate_machine(m)
    assert not report.stochastic
    assert not report.is_valid
    assert 'sums to' in report.failures[0]


@pytest.mark.parametrize('r', [0.1, 0.2, 0.5, 0.9])
def test_delay_channel_remembers_the_last_input(delay, r):
    pi = stationary_distribution(delay, catalog.coin(r))
    assert np.allclose(pi.probabilities, [r, 1 - r])
    assert statistical_complexity(pi) == pytest.approx(binary_entropy(r))


@pytest.mark.parametrize('alpha, r', [(0.5, 0.2), (0.3, 0.5), (0.9, 0.7)])
def test_noisy_detector_stationary_distribution(alpha, r):
    b = 1.0 / (1.0 + (1 - r) * (1 - alpha))
    pi = stationary_distribution(catalog.bob(alpha), catalog.coin(r))
    assert np.allclose(pi.probabilities, [b, 1 - b], atol=1e-12)


@pytest.mark.parametrize('source, numerators, denominator', [
    ((0.2, 0.1, 0.7), (30666, 266000, 4035), (296666, 4035)),
    ((0.1, 0.7, 0.2), (13919, 217000, 15715), (230919, 15715)),
])
@pytest.mark.parametrize('q1', [0.0, 0.3, 0.8])
def test_investor_stationary_fractions(source, numerators, denominator, q1):
    t = catalog.investor(p1=0.0, p2=0.0, p3=4 / 7, q1=q1, q2=3 / 5, q3=1 / 100)
    pi = stationary_distribution(t, catalog.iid(source, catalog.TERNARY))
    f, e, u = numerators
    expected = np.array([f, e, u * q1]) / (denominator[0] + denominator[1] * q1)
    assert np.allclose(pi.probabilities, expected, atol=1e-10)


def test_successor_map_of_the_noisy_detector(bob_half):
    successors = successor_map(bob_half)
    assert successors('1', '1', '1') == '2'
    assert successors('2', '1', '0') == '1'
    assert successor_indices(bob_half)[0, 1, 1] == -1


def test_successors_rebuild_the_transitions(bob_half):
    rebuilt = rebuild_transitions(
        successor_map(bob_half),
        bob_half.emissions(),
        bob_half.states,
        bob_half.input_alphabet,
        bob_half.output_alphabet,
    )
    assert np.array_equal(rebuilt, bob_half.transitions)


def test_non_unifilar_transducer_has_no_successor_function():
    t = catalog.transducer_from_edges(('a', 'b'), ('0',), ('0',), [
        ('a', 'a', '0', '0', 0.5),
        ('a', 'b', '0', '0', 0.5),
        ('b', 'a', '0', '0', 1.0),
    ])
    assert not validate_transducer(t).unifilar
    with pytest.raises(NotUnifilar):
        successor_indices(t)


@pytest.mark.parametrize('seed', range(10))
def test_statistical_complexity_is_at_most_log_of_the_state_count(seed):
    rng = np.random.default_rng(seed)
    while True:
        t = catalog.random_transducer(rng, int(rng.integers(1, 7)), 2, 3)
        m = joint_machine(t, catalog.iid(rng.dirichlet(np.ones(2)), t.input_alphabet.symbols))
        if len(recurrent_classes(m.total)) == 1:
            break
    assert statistical_complexity(stationary_distribution(m)) <= np.log2(m.n_states) + 1e-12
