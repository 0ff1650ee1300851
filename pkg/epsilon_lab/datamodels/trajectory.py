from pydantic import BaseModel, Field, model_validator


class Trajectory(BaseModel):
    seed: int = Field(..., description="Seed of the generator that produced the path")
    generator: str = Field(..., description="Name of the bit generator")
    symbols: list[str] = Field(default_factory=list, description="Emitted symbols, one per step")
    states: list[str] = Field(default_factory=list, description="Visited states, one more than symbols")

    @model_validator(mode='after')
    def _check_lengths(self) -> 'Trajectory':
        if self.states and len(self.states) != len(self.symbols) + 1:
            raise ValueError('a trajectory visits one more state than it emits symbols')
        return self

    def __len__(self) -> int:
        return len(self.symbols)
