from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TransitionRecord(BaseModel):
    model_config = ConfigDict(extra='forbid', populate_by_name=True)

    source: str = Field(..., alias='from', description="State the transition leaves")
    target: str = Field(..., alias='to', description="State the transition enters")
    input: Optional[str] = Field(None, description="Input symbol (transducers only)")
    output: str = Field(..., description="Emitted symbol")
    prob: Union[str, float] = Field(..., description="Decimal literal or exact rational 'n/d'")


class ModelFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['machine', 'transducer'] = Field(..., description="Presentation kind")
    states: list[str] = Field(..., description="State labels in matrix order")
    input_alphabet: Optional[list[str]] = Field(None, description="Input symbols (transducers only)")
    output_alphabet: list[str] = Field(..., description="Output symbols")
    transitions: list[TransitionRecord] = Field(..., description="Non-zero transitions")

    @model_validator(mode='after')
    def _check_kind(self) -> 'ModelFile':
        if self.kind == 'transducer':
            if not self.input_alphabet:
                raise ValueError('a transducer file needs an input_alphabet')
            if any(record.input is None for record in self.transitions):
                raise ValueError('every transducer transition needs an input symbol')
        else:
            if self.input_alphabet is not None:
                raise ValueError('a machine file has no input_alphabet')
            if any(record.input is not None for record in self.transitions):
                raise ValueError('machine transitions carry no input symbol')
        return self


class SweepRow(BaseModel):
    coordinates: dict[str, float] = Field(..., description="Parameter values of the grid node")
    c_a: Optional[float] = Field(None, description="C of the first strategy")
    q_a: Optional[float] = Field(None, description="Q of the first strategy")
    e_a: Optional[float] = Field(None, description="E of the first strategy")
    c_b: Optional[float] = Field(None, description="C of the second strategy")
    q_b: Optional[float] = Field(None, description="Q of the second strategy")
    e_b: Optional[float] = Field(None, description="E of the second strategy")
    r1: bool = False
    r2: bool = False
    r3: bool = False
    r4: bool = False
