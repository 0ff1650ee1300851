from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class Verdict(Enum):
    AMBIGUOUS = "ambiguous"
    CONSISTENT = "consistent"
    AGNOSTIC = "agnostic"


class OutputCase(Enum):
    BOTH_CONSISTENT = "i"
    BOTH_INCONSISTENT = "ii"
    OUTPUTS_ONLY = "iii"
    AGENTS_ONLY = "iv"


class OrderingVerdict(BaseModel):
    classical_order: int = Field(..., description="Sign of C_A - C_B, 0 inside the dead band")
    quantum_order: Optional[int] = Field(None, description="Sign of Q_A - Q_B when both are known")
    sufficient_condition: Verdict = Field(..., description="Ambiguity verdict")
    delta_c: float = Field(..., description="C_A - C_B in bits")
    delta_q: Optional[float] = Field(None, description="Q_A - Q_B in bits when both are known")


class RegionPoint(BaseModel):
    coordinates: dict[str, float] = Field(..., description="Parameter values of the grid node")
    r1: bool = Field(False, description="Ambiguous, detected with Q of B only")
    r2: bool = Field(False, description="Consistent, detected with Q of B only")
    r3: bool = Field(False, description="Ambiguous, detected with Q of A only")
    r4: bool = Field(False, description="Consistent, detected with Q of A only")
    direct: Optional[Verdict] = Field(None, description="Verdict of the direct Q comparison")
    error: Optional[str] = Field(None, description="Failure recorded for this node")

    @model_validator(mode='after')
    def _check_disjoint(self) -> 'RegionPoint':
        if self.r1 and self.r2:
            raise ValueError('R1 and R2 are disjoint')
        if self.r3 and self.r4:
            raise ValueError('R3 and R4 are disjoint')
        return self


class OutputComparison(BaseModel):
    d_c: float = Field(..., description="C of first agent minus C of second agent")
    d_q: float = Field(..., description="Q of first agent minus Q of second agent")
    d_c_out: float = Field(..., description="C difference of the output processes")
    d_q_out: float = Field(..., description="Q difference of the output processes")
    case: OutputCase = Field(..., description="Which of the four consistency combinations holds")
