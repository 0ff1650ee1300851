import numpy as np
import pytest

from epsilon_lab.core import catalog
from epsilon_lab.core.catalog import build_model
from epsilon_lab.core.machines import validate_machine, validate_transducer
from epsilon_lab.datamodels import (
    CatalogModel,
    MachinePresentation,
    ParamOutOfRange,
    UnknownName,
)

PARAMETERS = {
    CatalogModel.PERIOD2: {},
    CatalogModel.COIN: {'r': 0.3},
    CatalogModel.DELAY: {},
    CatalogModel.BOB: {'alpha': 0.5},
    CatalogModel.INVESTOR: {'p1': 0.1, 'p2': 0.2, 'p3': 4 / 7, 'q1': 0.4, 'q2': 0.6, 'q3': 0.01},
    CatalogModel.INVERSION_INPUT: {},
    CatalogModel.INVERSION_STRATEGY: {'p': 0.0, 'q': 1 / 3, 'r': 1 / 4},
    CatalogModel.ISING: {'alpha1': 0.0, 'alpha2': 0.7},
    CatalogModel.TN: {'q': [0.2, 0.5, 1.0]},
    CatalogModel.NO_AMBIGUITY: {'p': 0.3, 'q': 0.6},
    CatalogModel.IDENTITY: {},
}


@pytest.mark.parametrize('name', list(CatalogModel))
def test_every_catalog_model_is_a_valid_presentation(name):
    model = build_model(name, **PARAMETERS[name])
    if isinstance(model, MachinePresentation):
        report = validate_machine(model)
        assert report.ergodic
    else:
        report = validate_transducer(model)
    assert report.stochastic, report.failures
    assert report.unifilar, report.failures


def test_models_are_found_by_name():
    assert build_model('bob', alpha=0.5).states == ('1', '2')


def test_noisy_detector_edges():
    t = catalog.bob(0.25)
    assert t.transitions[1, 0, 0, 0] == 0.25
    assert t.transitions[1, 1, 0, 1] == 0.75
    assert t.transitions[1, 0, 1, 0] == 1.0
    assert t.transitions[0, 0, 1, 0] == 1.0


def test_tn_edges():
    t = catalog.tn([0.2, 0.5, 1.0])
    assert t.output_alphabet.symbols == ('0', '1', '2')
    assert t.transitions[1, 1, 0, 1] == 0.2
    assert t.transitions[1, 0, 2, 0] == 1.0
    assert t.transitions[0, 2, 2, 2] == 1.0


def test_iid_uses_a_single_state():
    m = catalog.iid((0.2, 0.1, 0.7), catalog.TERNARY)
    assert m.states == ('c',)
    assert np.allclose(m.transitions[:, 0, 0], [0.2, 0.1, 0.7])


def test_unknown_model():
    with pytest.raises(UnknownName):
        build_model('pendulum')


@pytest.mark.parametrize('name, params', [
    ('coin', {'r': 1.5}),
    ('bob', {'alpha': -0.1}),
    ('bob', {'beta': 0.5}),
    ('tn', {'q': [0.5]}),
])
def test_bad_parameters(name, params):
    with pytest.raises(ParamOutOfRange):
        build_model(name, **params)


def test_random_transducers_are_unifilar():
    rng = np.random.default_rng(7)
    for _ in range(10):
        report = validate_transducer(catalog.random_transducer(rng, 3, 2, 2))
        assert report.stochastic
        assert report.unifilar
