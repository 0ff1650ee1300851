"""Presentations, validation, stationary distributions and Shannon entropy."""
import logging
from typing import Optional, Sequence

import numpy as np
from scipy import sparse, stats
from scipy.sparse.csgraph import connected_components

from epsilon_lab.datamodels import (
    Alphabet,
    MachinePresentation,
    TransducerPresentation,
    StationaryDistribution,
    SuccessorMap,
    ValidationReport,
    MultipleRecurrentClasses,
    NonConvergence,
    NotADistribution,
    NotStochastic,
    NotUnifilar,
)

logger = logging.getLogger(__name__)

STOCHASTIC_ATOL = 1e-12
STATIONARY_ATOL = 1e-10
DISTRIBUTION_ATOL = 1e-9
DENSE_SOLVE_LIMIT = 64
POWER_ITERATION_TOL = 1e-13
POWER_ITERATION_MAX = 1_000_000


def entropy(p: Sequence[float] | np.ndarray, base: float = 2.0) -> float:
    """Shannon entropy of a probability vector, with 0 log 0 = 0."""
    probabilities = np.asarray(p, dtype=float)
    if probabilities.ndim != 1 or probabilities.size == 0:
        raise NotADistribution(f'Expected a non-empty probability vector, got shape {probabilities.shape}')
    if np.any(probabilities < -DISTRIBUTION_ATOL):
        raise NotADistribution(f'Negative probability in {probabilities}')
    total = probabilities.sum()
    if abs(total - 1.0) > DISTRIBUTION_ATOL:
        raise NotADistribution(f'Probabilities sum to {total!r}, not 1')
    return float(stats.entropy(np.clip(probabilities, 0.0, None), base=base))


def binary_entropy(q: float) -> float:
    return entropy([q, 1.0 - q])


def recurrent_classes(total: np.ndarray) -> list[np.ndarray]:
    """Closed communicating classes of the chain with transition matrix ``total``."""
    support = np.asarray(total) > 0
    n_components, labels = connected_components(
        sparse.csr_matrix(support), directed=True, connection='strong'
    )
    closed = []
    for component in range(n_components):
        members = np.flatnonzero(labels == component)
        outside = np.flatnonzero(labels != component)
        if outside.size == 0 or not support[np.ix_(members, outside)].any():
            closed.append(members)
    closed.sort(key=lambda members: members[0])
    return closed


def _stochastic_failures(rows: np.ndarray, names: Sequence[str]) -> list[str]:
    failures = []
    for name, mass in zip(names, rows):
        if abs(mass - 1.0) > STOCHASTIC_ATOL:
            failures.append(f'row {name} sums to {mass:.12g}')
    return failures


def validate_machine(m: MachinePresentation) -> ValidationReport:
    failures = []
    if np.any(m.transitions < 0):
        failures.append('negative transition probability')
    failures.extend(_stochastic_failures(m.total.sum(axis=1), m.states))
    stochastic = not failures

    branching = (m.transitions > 0).sum(axis=2)
    unifilar = bool(np.all(branching <= 1))
    if not unifilar:
        y, i = np.argwhere(branching > 1)[0]
        failures.append(f'state {m.states[i]} has several successors on {m.output_alphabet.symbols[y]}')

    classes = recurrent_classes(m.total)
    ergodic = len(classes) == 1
    if not ergodic:
        failures.append(f'{len(classes)} recurrent classes')
    return ValidationReport(stochastic=stochastic, unifilar=unifilar, ergodic=ergodic, failures=failures)


def validate_transducer(t: TransducerPresentation) -> ValidationReport:
    """Validate a transducer; ergodicity is judged under an input that uses every symbol."""
    failures = []
    if np.any(t.transitions < 0):
        failures.append('negative transition probability')
    rows = t.transitions.sum(axis=(1, 3))
    for x, symbol in enumerate(t.input_alphabet.symbols):
        failures.extend(_stochastic_failures(rows[x], [f'{s} on input {symbol}' for s in t.states]))
    stochastic = not failures

    branching = (t.transitions > 0).sum(axis=3)
    unifilar = bool(np.all(branching <= 1))
    if not unifilar:
        x, y, i = np.argwhere(branching > 1)[0]
        failures.append(
            f'state {t.states[i]} has several successors on '
            f'{t.output_alphabet.symbols[y]}|{t.input_alphabet.symbols[x]}'
        )

    classes = recurrent_classes(t.transitions.sum(axis=(0, 1)))
    ergodic = len(classes) == 1
    if not ergodic:
        failures.append(f'{len(classes)} recurrent classes')
    return ValidationReport(stochastic=stochastic, unifilar=unifilar, ergodic=ergodic, failures=failures)


def require_stochastic(m: MachinePresentation) -> None:
    if np.any(m.transitions < 0):
        raise NotStochastic('Transition probabilities must be non-negative')
    failures = _stochastic_failures(m.total.sum(axis=1), m.states)
    if failures:
        raise NotStochastic('; '.join(failures))


def single_recurrent_class(total: np.ndarray) -> np.ndarray:
    classes = recurrent_classes(total)
    if len(classes) != 1:
        raise MultipleRecurrentClasses(f'Found {len(classes)} recurrent classes, expected exactly one')
    return classes[0]


def _solve_stationary(chain: np.ndarray) -> np.ndarray:
    n = chain.shape[0]
    if n <= DENSE_SOLVE_LIMIT:
        system = chain.T - np.eye(n)
        system[-1, :] = 1.0
        rhs = np.zeros(n)
        rhs[-1] = 1.0
        pi = np.linalg.solve(system, rhs)
    else:
        lazy = 0.5 * (chain + np.eye(n))
        pi = np.full(n, 1.0 / n)
        for iteration in range(POWER_ITERATION_MAX):
            updated = pi @ lazy
            change = np.max(np.abs(updated - pi))
            pi = updated
            if change < POWER_ITERATION_TOL:
                logger.debug('power iteration converged after %d steps', iteration + 1)
                break
        else:
            raise NonConvergence('Power iteration for the stationary distribution did not converge',
                                 estimate=pi, residual=float(change))
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def _machine_stationary(m: MachinePresentation) -> StationaryDistribution:
    require_stochastic(m)
    total = m.total
    recurrent = single_recurrent_class(total)
    pi = np.zeros(m.n_states)
    pi[recurrent] = _solve_stationary(total[np.ix_(recurrent, recurrent)])

    residual = float(np.max(np.abs(pi @ total - pi)))
    if residual >= STATIONARY_ATOL:
        raise NonConvergence(f'Stationary residual {residual:.3g} exceeds {STATIONARY_ATOL}',
                             estimate=pi, residual=residual)
    logger.debug('stationary distribution over %d states (%d recurrent), residual %.3g',
                 m.n_states, recurrent.size, residual)
    return StationaryDistribution(states=m.states, probabilities=pi)


def stationary_distribution(
        model: MachinePresentation | TransducerPresentation,
        driven_by: Optional[MachinePresentation] = None,
) -> StationaryDistribution:
    """Stationary distribution of a machine, or of a transducer driven by an input machine.

    For a transducer the joint machine is built and its occupation is
    marginalised onto the transducer's states.
    """
    if isinstance(model, MachinePresentation):
        return _machine_stationary(model)
    if driven_by is None:
        raise TypeError('A transducer needs an input machine to have a stationary distribution')

    from .process_algebra import joint_machine

    joint = _machine_stationary(joint_machine(model, driven_by))
    marginal = joint.probabilities.reshape(model.n_states, driven_by.n_states).sum(axis=1)
    return StationaryDistribution(states=model.states, probabilities=marginal / marginal.sum())


def statistical_complexity(pi: StationaryDistribution) -> float:
    return entropy(pi.probabilities)


def successor_indices(t: TransducerPresentation) -> np.ndarray:
    """Successor index ``succ[x, y, i]``, -1 where the transition has no support."""
    support = t.transitions > 0
    if np.any(support.sum(axis=3) > 1):
        raise NotUnifilar('Transducer has a (state, input, output) triple with several successors')
    successors = np.where(support.any(axis=3), support.argmax(axis=3), -1)
    return successors


def successor_map(t: TransducerPresentation) -> SuccessorMap:
    successors = successor_indices(t)
    mapping = {}
    for x, y, i in np.argwhere(successors >= 0):
        key = (t.states[i], t.input_alphabet.symbols[x], t.output_alphabet.symbols[y])
        mapping[key] = t.states[successors[x, y, i]]
    return SuccessorMap(mapping=mapping)


def rebuild_transitions(
        successors: SuccessorMap,
        emissions: np.ndarray,
        states: Sequence[str],
        input_alphabet: Alphabet,
        output_alphabet: Alphabet,
) -> np.ndarray:
    """Inverse of ``successor_map``: place ``emissions[x, y, i]`` on each state's successor."""
    n = len(states)
    transitions = np.zeros((len(input_alphabet), len(output_alphabet), n, n))
    for (state, x_symbol, y_symbol), target in successors.mapping.items():
        x, y = input_alphabet.index(x_symbol), output_alphabet.index(y_symbol)
        i, j = states.index(state), states.index(target)
        transitions[x, y, i, j] = emissions[x, y, i]
    return transitions
