"""Inverse channels: map the output process of a channel back to its input process."""
import logging

import numpy as np

from epsilon_lab.datamodels import (
    MachinePresentation,
    TransducerPresentation,
    CompletionPolicy,
    InverseDraft,
    OutputStateCorrespondenceAmbiguous,
    ZeroDivisor,
)
from .machines import successor_indices
from .process_algebra import (
    EQUIVALENCE_ATOL,
    joint_machine,
    merge_equivalent_states,
    output_machine,
    remove_transients,
    word_distribution,
)
from .simulate import total_variation

logger = logging.getLogger(__name__)


def inverse_label(joint_state: str, output_state: str) -> str:
    return f'({joint_state},{output_state})'


def _lumped_output(output: MachinePresentation) -> tuple[np.ndarray, np.ndarray]:
    """Coarsest lumping of the output states and the lumped (Y, B, B) tensor.

    States share a block when, for every symbol, they send equal mass into
    every block. A state must send each symbol into a single block, otherwise
    it has no well-defined output state to correspond to.
    """
    tensor = output.transitions
    n = output.n_states
    blocks = np.zeros(n, dtype=int)
    while True:
        flows = tensor @ np.eye(blocks.max() + 1)[blocks]
        signatures = np.round(flows.transpose(1, 0, 2).reshape(n, -1) / EQUIVALENCE_ATOL) * EQUIVALENCE_ATOL
        labels: dict[tuple, int] = {}
        refined = np.array([labels.setdefault((blocks[i], *signatures[i]), len(labels)) for i in range(n)])
        if refined.max() == blocks.max():
            break
        blocks = refined

    if np.any(np.count_nonzero(flows > 0, axis=2) > 1):
        raise OutputStateCorrespondenceAmbiguous(
            'Output machine is not unifilar after merging, so joint states do not determine output states'
        )
    representatives = [int(np.flatnonzero(blocks == b)[0]) for b in range(blocks.max() + 1)]
    return blocks, flows[:, representatives, :]


def invert(t: TransducerPresentation, source: MachinePresentation) -> InverseDraft:
    """Draft an inverse channel that reads outputs of ``t`` and writes inputs.

    A joint transition i -> j emitting (x, y) with probability p becomes a
    transition emitting x on reading y with probability p / q, where q is the
    output machine's probability of y between the matching output states.
    """
    successor_indices(t)
    joint = remove_transients(joint_machine(t, source))
    recurrent = [joint_machine(t, source).states.index(label) for label in joint.states]
    full_output = output_machine(t, source)
    output = MachinePresentation(
        states=joint.states,
        output_alphabet=full_output.output_alphabet,
        transitions=full_output.transitions[:, recurrent][:, :, recurrent],
    )

    blocks, lumped = _lumped_output(output)
    output_labels = [output.states[int(np.flatnonzero(blocks == b)[0])] for b in blocks]

    n_x, n_y, n = len(t.input_alphabet), len(t.output_alphabet), joint.n_states
    draft = np.zeros((n_y, n_x, n, n))
    for x in range(n_x):
        for y in range(n_y):
            joint_matrix = joint.transitions[x * n_y + y]
            for i, j in np.argwhere(joint_matrix > 0):
                divisor = lumped[y, blocks[i], blocks[j]]
                if divisor <= 0:
                    raise ZeroDivisor(
                        f'Output machine gives probability 0 to {t.output_alphabet.symbols[y]} '
                        f'from {output_labels[i]} to {output_labels[j]}'
                    )
                draft[y, x, i, j] = joint_matrix[i, j] / divisor

    states = tuple(inverse_label(s, chi) for s, chi in zip(joint.states, output_labels))
    row_mass = draft.sum(axis=(1, 3))
    free_slots = [(states[i], t.output_alphabet.symbols[y]) for y, i in np.argwhere(row_mass == 0)]
    logger.debug('inverse draft with %d states and %d free slots', n, len(free_slots))
    return InverseDraft(
        states=states,
        input_alphabet=t.output_alphabet,
        output_alphabet=t.input_alphabet,
        transitions=draft,
        free_slots=free_slots,
    )


def _donor_state(free: set[tuple[int, int]], y: int, n_states: int) -> int | None:
    return next((j for j in range(n_states) if (j, y) not in free), None)


def complete_and_minimize(
        draft: InverseDraft,
        policy: CompletionPolicy = CompletionPolicy.COPY,
        filler_symbol: str | None = None,
) -> TransducerPresentation:
    """Fill free slots and merge equivalent states.

    The copy policy gives a free slot the row another state implies for the
    same input symbol (first such state in order), so the filled state keeps
    its overlap with the others; with no such state it falls back to a
    self-loop. The self-loop policy emits ``filler_symbol`` (default: the
    first output symbol) and stays put; the uniform policy emits every output
    symbol with equal probability and stays put.
    """
    transitions = np.array(draft.transitions)
    n_outputs = len(draft.output_alphabet)
    filler = draft.output_alphabet.index(filler_symbol) if filler_symbol is not None else 0
    free = {(draft.states.index(state), draft.input_alphabet.index(symbol)) for state, symbol in draft.free_slots}
    for i, y in sorted(free):
        donor = _donor_state(free, y, len(draft.states)) if policy is CompletionPolicy.COPY else None
        if donor is not None:
            transitions[y, :, i, :] = draft.transitions[y, :, donor, :]
        elif policy is CompletionPolicy.UNIFORM:
            transitions[y, :, i, i] = 1.0 / n_outputs
        else:
            transitions[y, filler, i, i] = 1.0
    completed = TransducerPresentation(
        states=draft.states,
        input_alphabet=draft.input_alphabet,
        output_alphabet=draft.output_alphabet,
        transitions=transitions,
    )
    return merge_equivalent_states(completed)


def round_trip_distance(
        t: TransducerPresentation,
        source: MachinePresentation,
        inverse: TransducerPresentation,
        length: int,
) -> float:
    """TV distance between the input's words and the inverse applied to the output process."""
    observed = merge_equivalent_states(remove_transients(output_machine(t, source)))
    reproduced = output_machine(inverse, observed)
    return total_variation(word_distribution(source, length), word_distribution(reproduced, length))
