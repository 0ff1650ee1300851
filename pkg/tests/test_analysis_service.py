import pytest

from epsilon_lab.core import AnalysisService, catalog
from epsilon_lab.core.machines import binary_entropy
from epsilon_lab.datamodels import (
    CompletionPolicy,
    EncodingMode,
    NotStochastic,
    NotUnifilar,
    PresentationError,
)
from epsilon_lab.loaders import CatalogLoader, ModelFileLoader


@pytest.fixture
def service(configuration):
    return AnalysisService(configuration)


def test_analyze_a_driven_strategy(service):
    report = service.analyze(CatalogLoader('bob', {'alpha': 0.5}), CatalogLoader('coin', {'r': 0.2}))
    assert report.statistical_complexity == pytest.approx(binary_entropy(1 / 1.4))
    assert report.bounds_hold


def test_analyze_a_process(service):
    report = service.analyze(CatalogLoader('coin', {'r': 0.3}), mode=EncodingMode.SATURATING)
    assert report.statistical_complexity == 0.0
    assert report.quantum_complexity == pytest.approx(0.0, abs=1e-12)


def test_strategies_need_an_input(service):
    with pytest.raises(PresentationError):
        service.analyze(CatalogLoader('delay'))


def test_inputs_must_be_machines(service):
    with pytest.raises(PresentationError):
        service.analyze(CatalogLoader('delay'), CatalogLoader('delay'))


def test_non_stochastic_files_are_rejected(service, write_model, coin_document):
    coin_document['transitions'][0]['prob'] = 0.5
    with pytest.raises(NotStochastic):
        service.analyze(ModelFileLoader(write_model(coin_document)))


def test_non_unifilar_strategies_are_rejected(service, write_model, copy_document):
    copy_document['transitions'].append({'from': 'a', 'to': 'b', 'input': '0', 'output': '0', 'prob': 0})
    copy_document['transitions'][0]['prob'] = 0.5
    copy_document['transitions'][-1]['prob'] = 0.5
    with pytest.raises(NotUnifilar):
        service.analyze(ModelFileLoader(write_model(copy_document)), CatalogLoader('coin', {'r': 0.5}))


def test_invert_and_round_trip(service):
    strategy = CatalogLoader('inversion_strategy', {'p': 0.0, 'q': 1 / 3, 'r': 0.25})
    source = CatalogLoader('inversion_input')
    inverse = service.invert(strategy, source, CompletionPolicy.UNIFORM)
    assert service.round_trip(strategy, source, inverse) < 1e-9


def test_simulate_reports_the_word_distance(service):
    trajectory, distance = service.simulate(CatalogLoader('ising', {'alpha1': 0.0, 'alpha2': 0.7}),
                                            CatalogLoader('coin', {'r': 0.4}), 20_000, seed=11, block=2)
    assert len(trajectory) == 20_000
    assert distance < 0.03


def test_verify_finds_no_violations(service):
    report = service.verify(count=6, seed=2024)
    assert report.instances == 6
    assert report.passed, report.violations


def test_verify_draws_up_to_four_states_and_three_symbols(service, monkeypatch):
    drawn = []
    draw = catalog.random_transducer

    def recording(rng, n_states, n_inputs, n_outputs):
        drawn.append((n_states, n_inputs, n_outputs))
        return draw(rng, n_states, n_inputs, n_outputs)

    monkeypatch.setattr(catalog, 'random_transducer', recording)
    service.verify(count=40, seed=11)
    states, inputs, outputs = zip(*drawn)
    assert set(states) == {1, 2, 3, 4}
    assert set(inputs) == {1, 2, 3}
    assert set(outputs) == {2, 3}


@pytest.mark.slow
def test_verify_two_hundred_random_instances(service):
    report = service.verify(count=200, seed=0)
    assert report.instances == 200
    assert report.passed, report.violations
