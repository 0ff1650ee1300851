from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

UNIFILAR_ATOL = 0.0


def frozen_array(value, ndim: int) -> np.ndarray:
    array = np.array(value, dtype=float)
    if array.ndim != ndim:
        raise ValueError(f'expected a {ndim}-dimensional array, got shape {array.shape}')
    if not np.all(np.isfinite(array)):
        raise ValueError('array contains non-finite entries')
    array.flags.writeable = False
    return array


def _distinct_labels(labels: tuple[str, ...], what: str) -> tuple[str, ...]:
    if len(labels) == 0:
        raise ValueError(f'{what} must not be empty')
    if len(set(labels)) != len(labels):
        raise ValueError(f'{what} contain duplicates: {list(labels)}')
    return labels


class Alphabet(BaseModel):
    model_config = ConfigDict(frozen=True)

    symbols: tuple[str, ...] = Field(..., description="Ordered, distinct symbol labels")

    @field_validator('symbols')
    @classmethod
    def _check_symbols(cls, symbols: tuple[str, ...]) -> tuple[str, ...]:
        return _distinct_labels(symbols, 'alphabet symbols')

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        return self.symbols.index(symbol)

    def same_as(self, other: 'Alphabet') -> bool:
        return self.symbols == other.symbols


class MachinePresentation(BaseModel):
    """Edge-emitting hidden Markov presentation of a stationary process.

    ``transitions[y, i, j]`` is the probability of emitting ``y`` and moving
    from state ``i`` to state ``j``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="State labels in matrix order")
    output_alphabet: Alphabet = Field(..., description="Symbols emitted on transitions")
    transitions: np.ndarray = Field(..., description="Substochastic matrices T^(y), shape (|Y|, N, N)")
    unifilar: Optional[bool] = Field(None, description="When True, asserts at most one successor per (state, symbol)")

    @field_validator('states')
    @classmethod
    def _check_states(cls, states: tuple[str, ...]) -> tuple[str, ...]:
        return _distinct_labels(states, 'state labels')

    @field_validator('transitions', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 3)

    @model_validator(mode='after')
    def _check_shape(self) -> 'MachinePresentation':
        expected = (len(self.output_alphabet), len(self.states), len(self.states))
        if self.transitions.shape != expected:
            raise ValueError(f'transition tensor has shape {self.transitions.shape}, expected {expected}')
        if self.unifilar and np.any((self.transitions > UNIFILAR_ATOL).sum(axis=2) > 1):
            raise ValueError('machine declared unifilar has a (state, symbol) pair with several successors')
        return self

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def total(self) -> np.ndarray:
        return self.transitions.sum(axis=0)

    def state_index(self, label: str) -> int:
        return self.states.index(label)


class TransducerPresentation(BaseModel):
    """Conditional presentation of an input-output process.

    ``transitions[x, y, i, j]`` is the probability, given input ``x`` in state
    ``i``, of emitting ``y`` and moving to state ``j``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="State labels in matrix order")
    input_alphabet: Alphabet = Field(..., description="Symbols the strategy reacts to")
    output_alphabet: Alphabet = Field(..., description="Symbols the strategy emits")
    transitions: np.ndarray = Field(..., description="Matrices T^(y|x), shape (|X|, |Y|, N, N)")

    @field_validator('states')
    @classmethod
    def _check_states(cls, states: tuple[str, ...]) -> tuple[str, ...]:
        return _distinct_labels(states, 'state labels')

    @field_validator('transitions', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 4)

    @model_validator(mode='after')
    def _check_shape(self) -> 'TransducerPresentation':
        n = len(self.states)
        expected = (len(self.input_alphabet), len(self.output_alphabet), n, n)
        if self.transitions.shape != expected:
            raise ValueError(f'transition tensor has shape {self.transitions.shape}, expected {expected}')
        return self

    @property
    def n_states(self) -> int:
        return len(self.states)

    def state_index(self, label: str) -> int:
        return self.states.index(label)

    def emissions(self) -> np.ndarray:
        """Probabilities ``P[x, y, i]`` of emitting ``y`` on input ``x`` from state ``i``."""
        return self.transitions.sum(axis=3)


class StationaryDistribution(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="State labels matching the probability order")
    probabilities: np.ndarray = Field(..., description="Long-run occupation probabilities")

    @field_validator('probabilities', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 1)

    @model_validator(mode='after')
    def _check_distribution(self) -> 'StationaryDistribution':
        if self.probabilities.shape != (len(self.states),):
            raise ValueError('one probability per state is required')
        if np.any(self.probabilities < -1e-12):
            raise ValueError('stationary probabilities must be non-negative')
        if abs(self.probabilities.sum() - 1.0) > 1e-12:
            raise ValueError(f'stationary probabilities sum to {self.probabilities.sum()!r}')
        return self

    def as_dict(self) -> dict[str, float]:
        return {state: float(p) for state, p in zip(self.states, self.probabilities)}


class SuccessorMap(BaseModel):
    model_config = ConfigDict(frozen=True)

    mapping: dict[tuple[str, str, str], str] = Field(
        ..., description="(state, input, output) -> successor state, defined on the support"
    )

    def __call__(self, state: str, input_symbol: str, output_symbol: str) -> str:
        return self.mapping[(state, input_symbol, output_symbol)]


class WordDistribution(BaseModel):
    model_config = ConfigDict(frozen=True)

    length: int = Field(..., ge=0, description="Word length L")
    alphabet: Alphabet = Field(..., description="Alphabet the words are written in")
    entries: dict[tuple[str, ...], float] = Field(..., description="Word -> probability")

    @model_validator(mode='after')
    def _check_entries(self) -> 'WordDistribution':
        known = set(self.alphabet.symbols)
        for word, probability in self.entries.items():
            if len(word) != self.length:
                raise ValueError(f'word {word} does not have length {self.length}')
            if not known.issuperset(word):
                raise ValueError(f'word {word} uses symbols outside the alphabet')
            if probability < 0:
                raise ValueError(f'word {word} has negative probability')
        total = sum(self.entries.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f'word probabilities sum to {total!r}')
        return self

    def probability(self, word: tuple[str, ...]) -> float:
        return self.entries.get(tuple(word), 0.0)
