"""Named models: the worked examples and the T_n family."""
import logging
from typing import Callable, Sequence

import numpy as np

from epsilon_lab.datamodels import (
    Alphabet,
    CatalogModel,
    MachinePresentation,
    TransducerPresentation,
    ParamOutOfRange,
    UnknownName,
)

logger = logging.getLogger(__name__)

BINARY = ('0', '1')
TERNARY = ('0', '1', '2')

# 1 - p3 = 4/7 on the self-loop of e, so the fidelity bound of f and e is sqrt(4/7)
INVESTOR_PRESET = {'p1': 0.0, 'p2': 0.0, 'p3': 3 / 7, 'q2': 3 / 5, 'q3': 1 / 100}
INVESTOR_INPUTS = ((0.2, 0.1, 0.7), (0.1, 0.7, 0.2))


def _probability(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ParamOutOfRange(f'{name} must lie in [0, 1], got {value}')
    return float(value)


def machine_from_edges(
        states: Sequence[str],
        symbols: Sequence[str],
        edges: Sequence[tuple[str, str, str, float]],
) -> MachinePresentation:
    """Build a machine from (source, target, symbol, probability) edges."""
    states, symbols = tuple(states), tuple(symbols)
    transitions = np.zeros((len(symbols), len(states), len(states)))
    for source, target, symbol, probability in edges:
        transitions[symbols.index(symbol), states.index(source), states.index(target)] += probability
    return MachinePresentation(states=states, output_alphabet=Alphabet(symbols=symbols), transitions=transitions)


def transducer_from_edges(
        states: Sequence[str],
        inputs: Sequence[str],
        outputs: Sequence[str],
        edges: Sequence[tuple[str, str, str, str, float]],
) -> TransducerPresentation:
    """Build a transducer from (source, target, output, input, probability) edges, i.e. ``y|x:p``."""
    states, inputs, outputs = tuple(states), tuple(inputs), tuple(outputs)
    transitions = np.zeros((len(inputs), len(outputs), len(states), len(states)))
    for source, target, y, x, probability in edges:
        transitions[inputs.index(x), outputs.index(y), states.index(source), states.index(target)] += probability
    return TransducerPresentation(
        states=states,
        input_alphabet=Alphabet(symbols=inputs),
        output_alphabet=Alphabet(symbols=outputs),
        transitions=transitions,
    )


def period2() -> MachinePresentation:
    return machine_from_edges(('1', '2'), BINARY, [('1', '2', '0', 1.0), ('2', '1', '1', 1.0)])


def iid(probabilities: Sequence[float], symbols: Sequence[str] | None = None) -> MachinePresentation:
    """Single-state process emitting ``symbols[k]`` with ``probabilities[k]``."""
    symbols = tuple(symbols) if symbols is not None else tuple(str(k) for k in range(len(probabilities)))
    for symbol, probability in zip(symbols, probabilities):
        _probability(f'P({symbol})', probability)
    return machine_from_edges(('c',), symbols, [('c', 'c', s, p) for s, p in zip(symbols, probabilities)])


def coin(r: float) -> MachinePresentation:
    r = _probability('r', r)
    return iid((r, 1.0 - r), BINARY)


def delay() -> TransducerPresentation:
    return transducer_from_edges(('1', '2'), BINARY, BINARY, [
        ('1', '1', '0', '0', 1.0),
        ('1', '2', '0', '1', 1.0),
        ('2', '1', '1', '0', 1.0),
        ('2', '2', '1', '1', 1.0),
    ])


def bob(alpha: float) -> TransducerPresentation:
    alpha = _probability('alpha', alpha)
    return transducer_from_edges(('1', '2'), BINARY, BINARY, [
        ('1', '1', '0', '0', 1.0),
        ('1', '1', '0', '1', alpha),
        ('1', '2', '1', '1', 1.0 - alpha),
        ('2', '1', '0', '0', 1.0),
        ('2', '1', '0', '1', 1.0),
    ])


def investor(p1: float, p2: float, p3: float, q1: float, q2: float, q3: float) -> TransducerPresentation:
    p1, p2, p3 = (_probability(n, v) for n, v in (('p1', p1), ('p2', p2), ('p3', p3)))
    q1, q2, q3 = (_probability(n, v) for n, v in (('q1', q1), ('q2', q2), ('q3', q3)))
    return transducer_from_edges(('f', 'e', 'u'), TERNARY, TERNARY, [
        ('f', 'u', '0', '0', p1),
        ('f', 'u', '0', '1', q1),
        ('f', 'e', '1', '0', 1.0 - p1),
        ('f', 'e', '1', '1', 1.0 - q1),
        ('f', 'e', '2', '2', 1.0),
        ('e', 'f', '0', '0', p3),
        ('e', 'f', '0', '1', q3),
        ('e', 'e', '1', '0', 1.0 - p3),
        ('e', 'e', '1', '1', 1.0 - q3),
        ('e', 'e', '2', '2', 1.0),
        ('u', 'e', '1', '0', p2),
        ('u', 'e', '1', '1', q2),
        ('u', 'e', '2', '2', 1.0),
        ('u', 'u', '0', '0', 1.0 - p2),
        ('u', 'u', '0', '1', 1.0 - q2),
    ])


def investor_preset(q1: float) -> TransducerPresentation:
    return investor(q1=q1, **INVESTOR_PRESET)


def inversion_input() -> MachinePresentation:
    return machine_from_edges(('r0', 'r1'), TERNARY, [
        ('r0', 'r1', '1', 0.5),
        ('r0', 'r1', '2', 0.5),
        ('r1', 'r0', '0', 0.5),
        ('r1', 'r1', '1', 0.5),
    ])


def inversion_strategy(p: float, q: float, r: float) -> TransducerPresentation:
    p, q, r = _probability('p', p), _probability('q', q), _probability('r', r)
    edges = []
    for state, to_one in (('s0', p), ('s1', q), ('s2', r)):
        edges.append((state, 's0', '0', '0', 1.0))
        edges.append((state, 's1', '1', '1', to_one))
        edges.append((state, 's2', '2', '1', 1.0 - to_one))
        edges.append((state, 's2', '2', '2', 1.0))
    return transducer_from_edges(('s0', 's1', 's2'), TERNARY, TERNARY, edges)


def ising(alpha1: float, alpha2: float) -> TransducerPresentation:
    alpha1, alpha2 = _probability('alpha1', alpha1), _probability('alpha2', alpha2)
    return transducer_from_edges(('1', '2'), BINARY, BINARY, [
        ('1', '1', '0', '0', 1.0),
        ('1', '1', '0', '1', alpha1),
        ('1', '2', '1', '1', 1.0 - alpha1),
        ('2', '2', '1', '1', alpha2),
        ('2', '1', '0', '0', 1.0),
        ('2', '1', '0', '1', 1.0 - alpha2),
    ])


def tn(q: Sequence[float]) -> TransducerPresentation:
    """Cycle of n states: input 0 announces the state, input 1 may advance it."""
    n = len(q)
    if n < 2:
        raise ParamOutOfRange(f'T_n needs at least two states, got {n}')
    q = [_probability(f'q{j}', value) for j, value in enumerate(q)]
    labels = tuple(str(j) for j in range(n))
    edges = []
    for j, advance in enumerate(q):
        state, following = labels[j], labels[(j + 1) % n]
        edges.append((state, state, state, '0', 1.0))
        edges.append((state, state, state, '1', 1.0 - advance))
        edges.append((state, following, following, '1', advance))
    return transducer_from_edges(labels, BINARY, labels, edges)


def no_ambiguity(p: float, q: float) -> TransducerPresentation:
    p, q = _probability('p', p), _probability('q', q)
    return transducer_from_edges(('0', '1'), BINARY, BINARY, [
        ('0', '0', '0', '0', 1.0 - p),
        ('0', '1', '1', '0', p),
        ('0', '0', '0', '1', 1.0),
        ('1', '0', '0', '0', q),
        ('1', '1', '1', '0', 1.0 - q),
        ('1', '0', '0', '1', 1.0),
    ])


def identity(symbols: Sequence[str] = BINARY) -> TransducerPresentation:
    return transducer_from_edges(('a',), symbols, symbols, [('a', 'a', s, s, 1.0) for s in symbols])


_BUILDERS: dict[CatalogModel, Callable[..., MachinePresentation | TransducerPresentation]] = {
    CatalogModel.PERIOD2: period2,
    CatalogModel.COIN: coin,
    CatalogModel.DELAY: delay,
    CatalogModel.BOB: bob,
    CatalogModel.INVESTOR: investor,
    CatalogModel.INVERSION_INPUT: inversion_input,
    CatalogModel.INVERSION_STRATEGY: inversion_strategy,
    CatalogModel.ISING: ising,
    CatalogModel.TN: tn,
    CatalogModel.NO_AMBIGUITY: no_ambiguity,
    CatalogModel.IDENTITY: identity,
}


def build_model(name: str | CatalogModel, **params) -> MachinePresentation | TransducerPresentation:
    try:
        key = name if isinstance(name, CatalogModel) else CatalogModel(name)
    except ValueError as e:
        raise UnknownName(f'Unknown model {name!r}; known: {[m.value for m in CatalogModel]}') from e
    try:
        return _BUILDERS[key](**params)
    except TypeError as e:
        raise ParamOutOfRange(f'Bad parameters for {key.value}: {e}') from e


def random_transducer(
        rng: np.random.Generator,
        n_states: int,
        n_inputs: int,
        n_outputs: int,
) -> TransducerPresentation:
    """Unifilar transducer with Dirichlet emissions and uniformly drawn successors."""
    transitions = np.zeros((n_inputs, n_outputs, n_states, n_states))
    for x in range(n_inputs):
        for i in range(n_states):
            emissions = rng.dirichlet(np.ones(n_outputs))
            successors = rng.integers(n_states, size=n_outputs)
            transitions[x, np.arange(n_outputs), i, successors] = emissions
    return TransducerPresentation(
        states=tuple(f's{i}' for i in range(n_states)),
        input_alphabet=Alphabet(symbols=tuple(str(x) for x in range(n_inputs))),
        output_alphabet=Alphabet(symbols=tuple(str(y) for y in range(n_outputs))),
        transitions=transitions,
    )
