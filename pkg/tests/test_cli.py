import json

import pytest

from epsilon_lab.cli import loader_for, main
from epsilon_lab.core import AnalysisService
from epsilon_lab.core.machines import binary_entropy
from epsilon_lab.datamodels import Alphabet, ModelParseError, WordDistribution
from epsilon_lab.loaders import ModelFileLoader

INVERSION_STRATEGY = 'catalog:inversion_strategy:p=0,q=1/3,r=1/4'


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch, tmp_path):
    for key in ('EPSILON_LAB_THREADS', 'EPSILON_LAB_TOLERANCE', 'EPSILON_LAB_MAX_BLOCK_LENGTH',
                'EPSILON_LAB_MAX_BELIEFS', 'EPSILON_LAB_FIDELITY_MAX_ITERATIONS', 'EPSILON_LAB_LOG_LEVEL'):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)


def test_analyze_the_delay_channel(capsys):
    assert main(['analyze', 'catalog:delay', 'catalog:coin:r=0.2']) == 0
    out = capsys.readouterr().out
    expected = f'{binary_entropy(0.2):.9f}'
    assert f'C = {expected} bits' in out
    assert f'Q = {expected} bits' in out
    assert f'E = {expected} bits' in out


def test_analyze_model_files(capsys, write_model, coin_document):
    bob = {
        'kind': 'transducer',
        'states': ['1', '2'],
        'input_alphabet': ['0', '1'],
        'output_alphabet': ['0', '1'],
        'transitions': [
            {'from': '1', 'to': '1', 'input': '0', 'output': '0', 'prob': 1},
            {'from': '1', 'to': '1', 'input': '1', 'output': '0', 'prob': '1/2'},
            {'from': '1', 'to': '2', 'input': '1', 'output': '1', 'prob': '1/2'},
            {'from': '2', 'to': '1', 'input': '0', 'output': '0', 'prob': 1},
            {'from': '2', 'to': '1', 'input': '1', 'output': '0', 'prob': 1},
        ],
    }
    code = main(['analyze', str(write_model(bob, 'bob.json')), str(write_model(coin_document, 'coin.json'))])
    assert code == 0
    assert f'C = {binary_entropy(1 / 1.4):.9f} bits' in capsys.readouterr().out


def test_single_state_process_has_no_memory(capsys, write_model, coin_document):
    assert main(['analyze', '--csv', str(write_model(coin_document))]) == 0
    assert capsys.readouterr().out == 'E_bits,Q_bits,C_bits\n0.000000000,0.000000000,0.000000000\n'


def test_parse_errors_exit_with_1(capsys, write_model):
    assert main(['analyze', str(write_model('not json'))]) == 1
    assert capsys.readouterr().err.startswith('error: ModelParseError')


def test_missing_files_exit_with_1():
    assert main(['analyze', 'absent.json']) == 1


def test_validation_errors_exit_with_2(capsys, write_model, coin_document):
    coin_document['transitions'][0]['prob'] = '1/2'
    assert main(['analyze', str(write_model(coin_document))]) == 2
    assert 'NotStochastic' in capsys.readouterr().err


def test_unknown_catalog_model_exits_with_2():
    assert main(['analyze', 'catalog:pendulum']) == 2


def test_computation_errors_exit_with_3(capsys):
    assert main(['invert', 'catalog:delay', 'catalog:coin:r=0.2']) == 3
    assert 'OutputStateCorrespondenceAmbiguous' in capsys.readouterr().err


def _unnormalised_words(*args, **kwargs):
    return WordDistribution(length=1, alphabet=Alphabet(symbols=('0',)), entries={('0',): 0.5})


def _negative_length(*args, **kwargs):
    raise ValueError('Block length must be non-negative, got -1')


@pytest.mark.parametrize('failure', [_unnormalised_words, _negative_length])
def test_value_errors_exit_with_3(monkeypatch, capsys, failure):
    monkeypatch.setattr(AnalysisService, 'analyze', failure)
    assert main(['analyze', 'catalog:delay', 'catalog:coin:r=0.2']) == 3
    err = capsys.readouterr().err
    assert err.startswith('error: ')
    assert 'Traceback' not in err


def test_bad_configuration_exits_with_2(monkeypatch):
    monkeypatch.setenv('EPSILON_LAB_THREADS', 'zero')
    assert main(['verify', '--count', '1']) == 2


def test_paper_inversion_csv(tmp_path):
    first, second = tmp_path / 'first.csv', tmp_path / 'second.csv'
    assert main(['paper', 'inversion', '-o', str(first)]) == 0
    assert main(['paper', 'inversion', '-o', str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    header, row = first.read_text().splitlines()
    record = dict(zip(header.split(','), row.split(',')))
    assert float(record['C_forward_bits']) == pytest.approx(1.290, abs=1e-3)
    assert float(record['Q_inverse_bits']) == pytest.approx(0.550, abs=1e-3)
    assert record['verdict'] == 'ambiguous'


def test_invert_writes_a_loadable_model(tmp_path, capsys):
    path = tmp_path / 'inverse.json'
    assert main(['invert', INVERSION_STRATEGY, 'catalog:inversion_input', '--round-trip', '5', '-o', str(path)]) == 0
    inverse = ModelFileLoader(path).load()
    assert inverse.n_states == 2
    assert json.loads(path.read_text())['kind'] == 'transducer'
    line = capsys.readouterr().err.strip()
    assert line.startswith('round-trip TV at L=5:')
    assert float(line.split()[-1]) < 1e-9


def test_identity_channel_inverts_to_itself(capsys):
    assert main(['invert', 'catalog:identity', 'catalog:coin:r=0.3']) == 0
    document = json.loads(capsys.readouterr().out)
    assert len(document['states']) == 1
    assert {(t['input'], t['output']) for t in document['transitions']} == {('0', '0'), ('1', '1')}


def test_simulation_is_reproducible(tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    for path in (first, second):
        assert main(['simulate', 'catalog:ising:alpha1=0,alpha2=0.7', 'catalog:coin:r=0.4',
                     '--length', '300', '--seed', '42', '-o', str(path)]) == 0
    assert first.read_bytes() == second.read_bytes()
    trajectory = json.loads(first.read_text())
    assert len(trajectory['symbols']) == 300
    assert trajectory['generator'] == 'PCG64'


def test_empty_simulation_has_no_statistics():
    assert main(['simulate', 'catalog:period2', '--length', '0', '--seed', '1', '--block', '3']) == 3


def test_sweep_csv(capsys):
    assert main(['sweep', 'ising', '--points', '3']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith('r,C_A_bits,Q_A_bits,E_A_bits')
    assert len(lines) == 4


def test_verify(capsys):
    assert main(['verify', '--count', '3', '--seed', '1']) == 0
    assert capsys.readouterr().out.strip().endswith('3 instances, 0 violations')


def test_catalog_arguments():
    loader = loader_for('catalog:tn:q=0.5;1;1')
    assert loader.params == {'q': [0.5, 1.0, 1.0]}
    with pytest.raises(ModelParseError):
        loader_for('catalog:coin:r')
