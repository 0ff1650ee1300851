import json
import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError
from typeguard import typechecked

from epsilon_lab.datamodels import (
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    ModelFile,
    TransitionRecord,
    ModelParseError,
)
from epsilon_lab.loaders.loader import Loader
from epsilon_lab.utils import parse_probability, render_probability

logger = logging.getLogger(__name__)


class ModelFileLoader(Loader):
    """Reads a machine or transducer from a JSON model file."""

    @typechecked
    def __init__(self, file_path: str | Path):
        if isinstance(file_path, str):
            self.file_path = Path(file_path)
        else:
            self.file_path = file_path

    def load(self) -> MachinePresentation | TransducerPresentation:
        if not self.file_path.exists():
            raise FileNotFoundError(f'File not found: {self.file_path}')
        try:
            document = ModelFile.model_validate(json.loads(self.file_path.read_text()))
        except json.JSONDecodeError as e:
            raise ModelParseError(f'{self.file_path}: not valid JSON ({e.msg}, line {e.lineno})') from e
        except ValidationError as e:
            raise ModelParseError(f'{self.file_path}: {e.errors()[0]["msg"]}') from e
        logger.debug('read %s model with %d states from %s', document.kind, len(document.states), self.file_path)
        return presentation_from_model_file(document)


def _lookup(labels: list[str], label: str, what: str) -> int:
    try:
        return labels.index(label)
    except ValueError:
        raise ModelParseError(f'Unknown {what} {label!r}') from None


def presentation_from_model_file(document: ModelFile) -> MachinePresentation | TransducerPresentation:
    n = len(document.states)
    if len(set(document.states)) != n:
        raise ModelParseError('State labels must be unique')
    outputs = document.output_alphabet
    try:
        if document.kind == 'machine':
            transitions = np.zeros((len(outputs), n, n))
            for record in document.transitions:
                y = _lookup(outputs, record.output, 'output symbol')
                i = _lookup(document.states, record.source, 'state')
                j = _lookup(document.states, record.target, 'state')
                transitions[y, i, j] += parse_probability(record.prob)
            return MachinePresentation(
                states=tuple(document.states),
                output_alphabet=Alphabet(symbols=tuple(outputs)),
                transitions=transitions,
            )

        inputs = document.input_alphabet
        transitions = np.zeros((len(inputs), len(outputs), n, n))
        for record in document.transitions:
            x = _lookup(inputs, record.input, 'input symbol')
            y = _lookup(outputs, record.output, 'output symbol')
            i = _lookup(document.states, record.source, 'state')
            j = _lookup(document.states, record.target, 'state')
            transitions[x, y, i, j] += parse_probability(record.prob)
        return TransducerPresentation(
            states=tuple(document.states),
            input_alphabet=Alphabet(symbols=tuple(inputs)),
            output_alphabet=Alphabet(symbols=tuple(outputs)),
            transitions=transitions,
        )
    except ValidationError as e:
        raise ModelParseError(e.errors()[0]['msg']) from e


def model_file_from_presentation(model: MachinePresentation | TransducerPresentation) -> ModelFile:
    records = []
    if isinstance(model, TransducerPresentation):
        for x, y, i, j in np.argwhere(model.transitions > 0):
            records.append(TransitionRecord(
                source=model.states[i],
                target=model.states[j],
                input=model.input_alphabet.symbols[x],
                output=model.output_alphabet.symbols[y],
                prob=render_probability(model.transitions[x, y, i, j]),
            ))
        return ModelFile(
            kind='transducer',
            states=list(model.states),
            input_alphabet=list(model.input_alphabet.symbols),
            output_alphabet=list(model.output_alphabet.symbols),
            transitions=records,
        )
    for y, i, j in np.argwhere(model.transitions > 0):
        records.append(TransitionRecord(
            source=model.states[i],
            target=model.states[j],
            output=model.output_alphabet.symbols[y],
            prob=render_probability(model.transitions[y, i, j]),
        ))
    return ModelFile(
        kind='machine',
        states=list(model.states),
        output_alphabet=list(model.output_alphabet.symbols),
        transitions=records,
    )


@typechecked
def dump_model_file(model: MachinePresentation | TransducerPresentation, file_path: str | Path) -> Path:
    """Write ``model`` as a JSON model file that loads back bit-exactly."""
    path = Path(file_path)
    document = model_file_from_presentation(model)
    path.write_text(document.model_dump_json(by_alias=True, exclude_none=True, indent=2) + '\n')
    return path
