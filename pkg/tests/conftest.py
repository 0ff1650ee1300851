import json

import pytest

from epsilon_lab.core import catalog
from epsilon_lab.datamodels import Configuration


@pytest.fixture
def coin_fifth():
    return catalog.coin(0.2)


@pytest.fixture
def delay():
    return catalog.delay()


@pytest.fixture
def bob_half():
    return catalog.bob(0.5)


@pytest.fixture
def configuration():
    return Configuration()


@pytest.fixture
def write_model(tmp_path):
    """Write a model-file document to a temporary JSON file and return its path."""
    def _write(document, name='model.json'):
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return path
    return _write


@pytest.fixture
def coin_document():
    return {
        'kind': 'machine',
        'states': ['c'],
        'output_alphabet': ['0', '1'],
        'transitions': [
            {'from': 'c', 'to': 'c', 'output': '0', 'prob': '1/5'},
            {'from': 'c', 'to': 'c', 'output': '1', 'prob': '4/5'},
        ],
    }


@pytest.fixture
def copy_document():
    """Two-state channel that remembers its input but always emits 0."""
    return {
        'kind': 'transducer',
        'states': ['a', 'b'],
        'input_alphabet': ['0', '1'],
        'output_alphabet': ['0', '1'],
        'transitions': [
            {'from': state, 'to': target, 'input': x, 'output': '0', 'prob': 1}
            for state in ('a', 'b') for x, target in (('0', 'a'), ('1', 'b'))
        ],
    }
