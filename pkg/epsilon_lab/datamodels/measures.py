from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy import linalg

from .presentations import StationaryDistribution, frozen_array


class EncodingMode(Enum):
    STANDARD = "standard"
    SATURATING = "saturating"


class EncodingProvenance(Enum):
    STANDARD = "standard"
    FIDELITY_SATURATING = "fidelity-saturating"
    FIDELITY_SCALED = "fidelity-scaled"
    USER_SUPPLIED = "user-supplied"


class ValidationReport(BaseModel):
    stochastic: bool = Field(..., description="Every row (per input, for transducers) sums to one")
    unifilar: bool = Field(..., description="State and symbol(s) determine the successor")
    ergodic: bool = Field(..., description="Exactly one recurrent communicating class")
    failures: list[str] = Field(default_factory=list, description="Human-readable failure descriptions")

    @property
    def is_valid(self) -> bool:
        return self.stochastic and self.ergodic


class ExcessEntropyEstimate(BaseModel):
    value: float = Field(..., description="Excess entropy in bits")
    terminal_length: int = Field(..., description="Block length at which the estimate stopped")
    residual: float = Field(..., description="Last increment of the finite-length estimate, in bits")
    converged: bool = Field(True, description="Whether the tolerance was reached before the length cap")


class FidelityMatrix(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="Causal state labels")
    matrix: np.ndarray = Field(..., description="Maximum pairwise overlaps of faithful encodings")
    iterations: int = Field(0, description="Fixed-point iterations performed")
    residual: float = Field(0.0, description="Largest change in the last iteration")

    @field_validator('matrix', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 2)

    @model_validator(mode='after')
    def _check_matrix(self) -> 'FidelityMatrix':
        n = len(self.states)
        if self.matrix.shape != (n, n):
            raise ValueError(f'fidelity matrix must be {n}x{n}')
        if not np.allclose(self.matrix, self.matrix.T, atol=1e-12):
            raise ValueError('fidelity matrix must be symmetric')
        if not np.allclose(np.diag(self.matrix), 1.0, atol=1e-12):
            raise ValueError('fidelity matrix must have unit diagonal')
        if np.any(self.matrix < -1e-12) or np.any(self.matrix > 1 + 1e-12):
            raise ValueError('fidelities must lie in [0, 1]')
        return self

    def __getitem__(self, pair: tuple[str, str]) -> float:
        i, j = (self.states.index(label) for label in pair)
        return float(self.matrix[i, j])


class QuantumEncoding(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    states: tuple[str, ...] = Field(..., description="Causal state labels, one vector each")
    vectors: np.ndarray = Field(..., description="Real amplitudes, shape (N, D)")

    @field_validator('vectors', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 2)

    @model_validator(mode='after')
    def _check_vectors(self) -> 'QuantumEncoding':
        if self.vectors.shape[0] != len(self.states):
            raise ValueError('one vector per state is required')
        norms = np.linalg.norm(self.vectors, axis=1)
        if not np.allclose(norms, 1.0, atol=1e-12):
            raise ValueError(f'encoding vectors must be unit-norm, got norms {norms}')
        return self

    @property
    def dimension(self) -> int:
        return self.vectors.shape[1]

    def overlaps(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


class GramEnsemble(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    distribution: StationaryDistribution = Field(..., description="Weights of the encoded states")
    overlaps: np.ndarray = Field(..., description="Pairwise inner products c_ij")

    @field_validator('overlaps', mode='before')
    @classmethod
    def _as_array(cls, value) -> np.ndarray:
        return frozen_array(value, 2)

    @model_validator(mode='after')
    def _check_overlaps(self) -> 'GramEnsemble':
        n = len(self.distribution.states)
        if self.overlaps.shape != (n, n):
            raise ValueError(f'overlap matrix must be {n}x{n}')
        if not np.allclose(self.overlaps, self.overlaps.T, atol=1e-12):
            raise ValueError('overlap matrix must be symmetric')
        if not np.allclose(np.diag(self.overlaps), 1.0, atol=1e-12):
            raise ValueError('overlap matrix must have unit diagonal')
        return self

    def weighted_gram(self) -> np.ndarray:
        root = np.sqrt(np.clip(self.distribution.probabilities, 0.0, None))
        return np.outer(root, root) * self.overlaps

    def eigenvalues(self) -> np.ndarray:
        return np.clip(linalg.eigvalsh(self.weighted_gram()), 0.0, None)


class ComplexityReport(BaseModel):
    excess_entropy: Optional[float] = Field(None, description="Channel excess entropy E, bits (None when unknown)")
    quantum_complexity: Optional[float] = Field(None, description="Quantum complexity Q, bits (None when unknown)")
    statistical_complexity: float = Field(..., description="Statistical complexity C, bits")
    provenance: Optional[EncodingProvenance] = Field(None, description="Which encoding produced Q")

    @property
    def bounds_hold(self) -> bool:
        slack = 1e-8
        if self.excess_entropy is None:
            return self.quantum_complexity is None or self.quantum_complexity <= self.statistical_complexity + slack
        if self.quantum_complexity is None:
            return self.excess_entropy <= self.statistical_complexity + slack
        return (self.excess_entropy <= self.quantum_complexity + slack
                and self.quantum_complexity <= self.statistical_complexity + slack)


class PropertyCheckReport(BaseModel):
    instances: int = Field(..., description="Random instances checked")
    seed: int = Field(..., description="Seed of the instance generator")
    violations: list[str] = Field(default_factory=list, description="One line per violated bound")

    @property
    def passed(self) -> bool:
        return not self.violations
