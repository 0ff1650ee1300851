from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .presentations import Alphabet, frozen_array


class CompletionPolicy(Enum):
    COPY = "copy"
    SELF_LOOP = "self-loop"
    UNIFORM = "uniform"


class InverseDraft(BaseModel):
    """Inverse channel before free slots are filled.

    ``transitions[y, x, i, j]``: reading ``y`` in state ``i``, emit ``x`` and move to ``j``.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="Labels of (joint state, output state) pairs")
    input_alphabet: Alphabet = Field(..., description="Output symbols of the original channel")
    output_alphabet: Alphabet = Field(..., description="Input symbols of the original channel")
    transitions: np.ndarray = Field(..., description="Conditional probabilities x|y, shape (|Y|, |X|, N, N)")
    free_slots: list[tuple[str, str]] = Field(
        default_factory=list, description="(state, input symbol) pairs with no implied transition"
    )

    @field_validator('transitions', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 4)

    @model_validator(mode='after')
    def _check_rows(self) -> 'InverseDraft':
        n = len(self.states)
        expected = (len(self.input_alphabet), len(self.output_alphabet), n, n)
        if self.transitions.shape != expected:
            raise ValueError(f'draft tensor has shape {self.transitions.shape}, expected {expected}')
        row_mass = self.transitions.sum(axis=(1, 3))
        free = {(self.states.index(s), self.input_alphabet.index(y)) for s, y in self.free_slots}
        for y in range(expected[0]):
            for i in range(n):
                mass = row_mass[y, i]
                if (i, y) in free:
                    if mass != 0.0:
                        raise ValueError(f'free slot ({self.states[i]}, {self.input_alphabet.symbols[y]}) carries mass')
                elif abs(mass - 1.0) > 1e-12:
                    raise ValueError(
                        f'row ({self.states[i]}, {self.input_alphabet.symbols[y]}) sums to {mass!r}'
                    )
        return self
