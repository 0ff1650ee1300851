import math

import numpy as np
import pytest

from epsilon_lab.core import catalog
from epsilon_lab.core.ambiguity import classify
from epsilon_lab.core.inversion import complete_and_minimize, invert, round_trip_distance
from epsilon_lab.core.machines import stationary_distribution, validate_transducer
from epsilon_lab.core.process_algebra import merge_equivalent_states, output_machine, remove_transients
from epsilon_lab.core.quantum_memory import quantum_complexity, standard_overlaps
from epsilon_lab.datamodels import (
    CompletionPolicy,
    OutputStateCorrespondenceAmbiguous,
    Verdict,
)


@pytest.fixture
def strategy():
    return catalog.inversion_strategy(0.0, 1 / 3, 1 / 4)


@pytest.fixture
def stimulus():
    return catalog.inversion_input()


@pytest.fixture
def observed(strategy, stimulus):
    return merge_equivalent_states(remove_transients(output_machine(strategy, stimulus)))


def test_draft_rows_are_stochastic_where_defined(strategy, stimulus):
    draft = invert(strategy, stimulus)
    mass = draft.transitions.sum(axis=(1, 3))
    for y, i in np.argwhere(mass > 0):
        assert mass[y, i] == pytest.approx(1.0)
    assert draft.free_slots
    assert draft.input_alphabet.symbols == strategy.output_alphabet.symbols


def test_forward_complexities(strategy, stimulus):
    pi = stationary_distribution(strategy, stimulus)
    assert np.allclose(pi.probabilities, [1 / 3, 2 / 23, 40 / 69])
    report = quantum_complexity(strategy, stimulus)
    assert report.statistical_complexity == pytest.approx(1.290, abs=1e-3)
    assert report.quantum_complexity == pytest.approx(0.336, abs=1e-3)


def test_inverse_complexities(strategy, stimulus, observed):
    inverse = complete_and_minimize(invert(strategy, stimulus))
    assert inverse.n_states == 2
    assert validate_transducer(inverse).stochastic
    pi = stationary_distribution(inverse, observed)
    assert np.allclose(np.sort(pi.probabilities), [1 / 3, 2 / 3])
    assert standard_overlaps(inverse)[0, 1] == pytest.approx(math.sqrt(0.5), abs=1e-12)
    report = quantum_complexity(inverse, observed)
    assert report.statistical_complexity == pytest.approx(0.918, abs=1e-3)
    assert report.quantum_complexity == pytest.approx(0.550, abs=1e-3)


def test_strategy_and_inverse_order_ambiguously(strategy, stimulus, observed):
    forward = quantum_complexity(strategy, stimulus)
    backward = quantum_complexity(complete_and_minimize(invert(strategy, stimulus)), observed)
    assert classify(forward, backward).sufficient_condition is Verdict.AMBIGUOUS


@pytest.mark.parametrize('policy', list(CompletionPolicy))
def test_inverse_reproduces_the_input(strategy, stimulus, policy):
    inverse = complete_and_minimize(invert(strategy, stimulus), policy)
    assert round_trip_distance(strategy, stimulus, inverse, 6) < 1e-9


def test_identity_channel_inverts_to_itself(coin_fifth):
    identity = catalog.identity()
    inverse = complete_and_minimize(invert(identity, coin_fifth))
    assert inverse.n_states == 1
    assert np.allclose(inverse.transitions, identity.transitions)
    assert round_trip_distance(identity, coin_fifth, inverse, 4) < 1e-12


def test_free_slots_accept_a_filler_symbol(strategy, stimulus):
    completed = complete_and_minimize(invert(strategy, stimulus), CompletionPolicy.SELF_LOOP, filler_symbol='2')
    assert validate_transducer(completed).stochastic


def test_free_slots_copy_rows_implied_elsewhere(strategy, stimulus):
    draft = invert(strategy, stimulus)
    assert len(draft.free_slots) == 2
    inverse = complete_and_minimize(draft)
    # reading 0 or 1, both states emit the same symbol and move to the same state
    for y in ('0', '1'):
        rows = inverse.transitions[inverse.input_alphabet.index(y)]
        np.testing.assert_allclose(rows[:, 0, :], rows[:, 1, :])


def test_a_global_filler_makes_the_inverse_classical(strategy, stimulus):
    inverse = complete_and_minimize(invert(strategy, stimulus), CompletionPolicy.SELF_LOOP)
    assert standard_overlaps(inverse)[0, 1] == pytest.approx(0.0, abs=1e-12)


def test_delay_outputs_do_not_identify_states(delay, coin_fifth):
    with pytest.raises(OutputStateCorrespondenceAmbiguous):
        invert(delay, coin_fifth)


def test_outputs_that_merge_into_one_state_can_be_inverted(coin_fifth):
    # remembers its input, always says 0
    memory = catalog.transducer_from_edges(('a', 'b'), catalog.BINARY, ('0',), [
        (state, target, '0', x, 1.0) for state in ('a', 'b') for target, x in (('a', '0'), ('b', '1'))
    ])
    inverse = complete_and_minimize(invert(memory, coin_fifth))
    assert inverse.n_states == 1
    np.testing.assert_allclose(inverse.transitions[0, :, 0, 0], [0.2, 0.8])
    assert round_trip_distance(memory, coin_fifth, inverse, 5) < 1e-12
