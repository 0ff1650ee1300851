"""Constructions on presentations: products, marginals, transients, minimisation, words."""
import logging
from typing import Mapping

import numpy as np

from epsilon_lab.datamodels import (
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    WordDistribution,
    AlphabetMismatch,
    NotUnifilar,
)
from .machines import require_stochastic, single_recurrent_class, stationary_distribution

logger = logging.getLogger(__name__)

EQUIVALENCE_ATOL = 1e-9
WORD_PRUNE = 1e-15
TRIVIAL_SYMBOL = '*'


def product_label(transducer_state: str, input_state: str) -> str:
    return f'({transducer_state},{input_state})'


def joint_symbol(x: str, y: str) -> str:
    return f'({x},{y})'


def _product_states(t: TransducerPresentation, source: MachinePresentation) -> tuple[str, ...]:
    return tuple(product_label(s, r) for s in t.states for r in source.states)


def _check_alphabets(t: TransducerPresentation, source: MachinePresentation) -> None:
    if not t.input_alphabet.same_as(source.output_alphabet):
        raise AlphabetMismatch(
            f'Input machine emits {list(source.output_alphabet.symbols)}, '
            f'transducer reads {list(t.input_alphabet.symbols)}'
        )


def joint_machine(t: TransducerPresentation, source: MachinePresentation) -> MachinePresentation:
    """Machine over input-output pairs: J^(x,y) = T^(y|x) (x) M^(x)."""
    _check_alphabets(t, source)
    n_x, n_y = len(t.input_alphabet), len(t.output_alphabet)
    transitions = np.stack([
        np.kron(t.transitions[x, y], source.transitions[x])
        for x in range(n_x)
        for y in range(n_y)
    ])
    alphabet = Alphabet(symbols=tuple(
        joint_symbol(x, y) for x in t.input_alphabet.symbols for y in t.output_alphabet.symbols
    ))
    return MachinePresentation(
        states=_product_states(t, source), output_alphabet=alphabet, transitions=transitions
    )


def output_machine(t: TransducerPresentation, source: MachinePresentation) -> MachinePresentation:
    """Machine over outputs only: N^(y) = sum_x T^(y|x) (x) M^(x)."""
    _check_alphabets(t, source)
    transitions = np.stack([
        sum(np.kron(t.transitions[x, y], source.transitions[x]) for x in range(len(t.input_alphabet)))
        for y in range(len(t.output_alphabet))
    ])
    return MachinePresentation(
        states=_product_states(t, source), output_alphabet=t.output_alphabet, transitions=transitions
    )


def output_projection(t: TransducerPresentation) -> dict[str, str]:
    """Joint symbol -> output symbol, for marginalising joint words."""
    return {
        joint_symbol(x, y): y for x in t.input_alphabet.symbols for y in t.output_alphabet.symbols
    }


def input_projection(t: TransducerPresentation) -> dict[str, str]:
    return {
        joint_symbol(x, y): x for x in t.input_alphabet.symbols for y in t.output_alphabet.symbols
    }


def as_transducer(m: MachinePresentation, symbol: str = TRIVIAL_SYMBOL) -> TransducerPresentation:
    """View a process as a channel that ignores its single trivial input."""
    return TransducerPresentation(
        states=m.states,
        input_alphabet=Alphabet(symbols=(symbol,)),
        output_alphabet=m.output_alphabet,
        transitions=m.transitions[np.newaxis],
    )


def trivial_input(symbol: str = TRIVIAL_SYMBOL) -> MachinePresentation:
    return MachinePresentation(
        states=('-',), output_alphabet=Alphabet(symbols=(symbol,)), transitions=[[[1.0]]]
    )


def restrict(m: MachinePresentation, keep: np.ndarray) -> MachinePresentation:
    keep = np.asarray(keep)
    return MachinePresentation(
        states=tuple(m.states[i] for i in keep),
        output_alphabet=m.output_alphabet,
        transitions=m.transitions[:, keep][:, :, keep],
    )


def remove_transients(m: MachinePresentation) -> MachinePresentation:
    """Restrict a machine to its unique recurrent class."""
    recurrent = single_recurrent_class(m.total)
    if recurrent.size < m.n_states:
        logger.debug('dropping %d transient states', m.n_states - recurrent.size)
    return restrict(m, recurrent)


def _refine(emissions: np.ndarray, successors: np.ndarray) -> np.ndarray:
    """Coarsest stable partition; ``emissions`` and ``successors`` are shaped (K, N)."""
    n = emissions.shape[1]
    blocks = np.zeros(n, dtype=int)
    rounds = 0
    while True:
        rounds += 1
        representatives: list[int] = []
        refined = np.empty(n, dtype=int)
        for i in range(n):
            for label, rep in enumerate(representatives):
                if blocks[rep] == blocks[i] and _same_signature(i, rep, blocks, emissions, successors):
                    refined[i] = label
                    break
            else:
                refined[i] = len(representatives)
                representatives.append(i)
        if len(representatives) == len(set(blocks)):
            logger.debug('partition refinement stable after %d rounds, %d blocks', rounds, len(representatives))
            return refined
        blocks = refined


def _same_signature(i: int, j: int, blocks: np.ndarray, emissions: np.ndarray, successors: np.ndarray) -> bool:
    if np.any(np.abs(emissions[:, i] - emissions[:, j]) > EQUIVALENCE_ATOL):
        return False
    for k in range(emissions.shape[0]):
        if emissions[k, i] > 0 and emissions[k, j] > 0:
            if blocks[successors[k, i]] != blocks[successors[k, j]]:
                return False
        elif successors[k, i] >= 0 and successors[k, j] >= 0 and \
                blocks[successors[k, i]] != blocks[successors[k, j]]:
            return False
    return True


def _quotient(transitions: np.ndarray, blocks: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Merge states of a (K, N, N) tensor by block, keeping each block's first member."""
    n_blocks = int(blocks.max()) + 1
    representatives = [int(np.flatnonzero(blocks == b)[0]) for b in range(n_blocks)]
    membership = np.zeros((transitions.shape[1], n_blocks))
    membership[np.arange(transitions.shape[1]), blocks] = 1.0
    merged = transitions[:, representatives, :] @ membership
    return merged, representatives


def state_partition(model: MachinePresentation | TransducerPresentation) -> np.ndarray:
    """Block index of every state under emission/successor equivalence."""
    tensor = model.transitions
    if isinstance(model, TransducerPresentation):
        tensor = tensor.reshape(-1, model.n_states, model.n_states)
    support = tensor > 0
    if np.any(support.sum(axis=2) > 1):
        raise NotUnifilar('State merging requires a unifilar presentation')
    emissions = tensor.sum(axis=2)
    successors = np.where(support.any(axis=2), support.argmax(axis=2), -1)
    return _refine(emissions, successors)


def merge_equivalent_states(
        model: MachinePresentation | TransducerPresentation,
) -> MachinePresentation | TransducerPresentation:
    """Merge states whose emission probabilities and successor blocks agree within 1e-9."""
    blocks = state_partition(model)
    if blocks.max() + 1 == model.n_states:
        return model
    n = model.n_states
    flat = model.transitions.reshape(-1, n, n)
    merged, representatives = _quotient(flat, blocks)
    states = tuple(model.states[i] for i in representatives)
    logger.debug('merged %d states into %d', n, len(states))
    if isinstance(model, TransducerPresentation):
        shape = model.transitions.shape[:2] + (len(states), len(states))
        return TransducerPresentation(
            states=states,
            input_alphabet=model.input_alphabet,
            output_alphabet=model.output_alphabet,
            transitions=merged.reshape(shape),
        )
    return MachinePresentation(states=states, output_alphabet=model.output_alphabet, transitions=merged)


def word_distribution(m: MachinePresentation, length: int, prune: float = WORD_PRUNE) -> WordDistribution:
    """Stationary probabilities of all words of ``length`` symbols."""
    if length < 0:
        raise ValueError(f'Word length must be non-negative, got {length}')
    require_stochastic(m)
    pi = stationary_distribution(m).probabilities
    frontier: dict[tuple[str, ...], np.ndarray] = {(): pi}
    for _ in range(length):
        extended = {}
        for word, row in frontier.items():
            for y, symbol in enumerate(m.output_alphabet.symbols):
                nxt = row @ m.transitions[y]
                if nxt.sum() >= prune:
                    extended[word + (symbol,)] = nxt
        frontier = extended
    entries = {word: float(row.sum()) for word, row in frontier.items()}
    return WordDistribution(length=length, alphabet=m.output_alphabet, entries=entries)


def project_words(words: WordDistribution, mapping: Mapping[str, str], alphabet: Alphabet) -> WordDistribution:
    """Push a word distribution through a symbol map (e.g. joint symbol -> output symbol)."""
    projected: dict[tuple[str, ...], float] = {}
    for word, probability in words.entries.items():
        image = tuple(mapping[symbol] for symbol in word)
        projected[image] = projected.get(image, 0.0) + probability
    return WordDistribution(length=words.length, alphabet=alphabet, entries=projected)
