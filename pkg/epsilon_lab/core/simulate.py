"""Seeded sampling of machines and driven transducers, and empirical word statistics."""
import logging
from typing import Optional

import numpy as np

from epsilon_lab.datamodels import (
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    Trajectory,
    WordDistribution,
    ShapeMismatch,
    TooShort,
)
from .machines import require_stochastic, stationary_distribution
from .process_algebra import joint_machine

logger = logging.getLogger(__name__)


class PathSampler:
    """Draws stationary sample paths from a machine with a PCG64 generator."""

    generator_name = 'PCG64'

    def __init__(self, m: MachinePresentation, seed: int):
        require_stochastic(m)
        self._machine = m
        self._seed = seed
        self._rng = np.random.Generator(np.random.PCG64(seed))
        self._pi = stationary_distribution(m).probabilities
        n, n_symbols = m.n_states, len(m.output_alphabet)
        # rows of (symbol, successor) outcomes, flattened per state
        self._outcomes = m.transitions.transpose(1, 0, 2).reshape(n, n_symbols * n)
        self._cumulative = np.cumsum(self._outcomes, axis=1)

    def sample(self, length: int) -> Trajectory:
        if length < 0:
            raise ValueError(f'Trajectory length must be non-negative, got {length}')
        m = self._machine
        n = m.n_states
        state = int(self._rng.choice(n, p=self._pi))
        draws = self._rng.random(length)
        states = np.empty(length + 1, dtype=int)
        symbols = np.empty(length, dtype=int)
        states[0] = state
        for step in range(length):
            row = self._cumulative[state]
            outcome = min(int(np.searchsorted(row, draws[step] * row[-1], side='right')), row.size - 1)
            while self._outcomes[state, outcome] == 0:
                outcome -= 1
            symbols[step], state = divmod(outcome, n)
            states[step + 1] = state
        logger.debug('sampled %d steps with seed %d', length, self._seed)
        return Trajectory(
            seed=self._seed,
            generator=self.generator_name,
            symbols=[m.output_alphabet.symbols[y] for y in symbols],
            states=[m.states[s] for s in states],
        )


def sample_path(
        model: MachinePresentation | TransducerPresentation,
        length: int,
        seed: int,
        driven_by: Optional[MachinePresentation] = None,
) -> Trajectory:
    """Stationary sample path; a transducer is sampled jointly with its input."""
    if isinstance(model, TransducerPresentation):
        if driven_by is None:
            raise TypeError('A transducer needs an input machine to be sampled')
        model = joint_machine(model, driven_by)
    return PathSampler(model, seed).sample(length)


def empirical_word_distribution(
        trajectory: Trajectory,
        length: int,
        alphabet: Optional[Alphabet] = None,
) -> WordDistribution:
    """Sliding-window word frequencies of a trajectory."""
    symbols = trajectory.symbols
    if length < 1 or len(symbols) < length:
        raise TooShort(f'Trajectory of {len(symbols)} symbols has no windows of length {length}')
    counts: dict[tuple[str, ...], int] = {}
    for start in range(len(symbols) - length + 1):
        word = tuple(symbols[start:start + length])
        counts[word] = counts.get(word, 0) + 1
    windows = len(symbols) - length + 1
    if alphabet is None:
        alphabet = Alphabet(symbols=tuple(sorted(set(symbols))))
    return WordDistribution(
        length=length,
        alphabet=alphabet,
        entries={word: count / windows for word, count in sorted(counts.items())},
    )


def total_variation(p: WordDistribution, q: WordDistribution) -> float:
    if p.length != q.length:
        raise ShapeMismatch(f'Word lengths differ: {p.length} and {q.length}')
    if not set(p.alphabet.symbols) <= set(q.alphabet.symbols) and \
            not set(q.alphabet.symbols) <= set(p.alphabet.symbols):
        raise ShapeMismatch('Word distributions are over unrelated alphabets')
    words = set(p.entries) | set(q.entries)
    return 0.5 * sum(abs(p.probability(w) - q.probability(w)) for w in words)
