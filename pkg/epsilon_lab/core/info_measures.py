"""Entropy rate, block entropy and excess entropy of processes and channels."""
import itertools
import logging
from typing import Iterator, Optional

import numpy as np
from scipy import stats

from epsilon_lab.datamodels import (
    MachinePresentation,
    TransducerPresentation,
    ExcessEntropyEstimate,
    NonConvergence,
)
from .machines import require_stochastic, stationary_distribution
from .process_algebra import WORD_PRUNE, joint_machine

logger = logging.getLogger(__name__)

BELIEF_DECIMALS = 12
RATE_TOL = 1e-10
DEFAULT_TOL = 1e-9
DEFAULT_MAX_LENGTH = 24
DEFAULT_MAX_BELIEFS = 4096


def _symbol_entropy(probabilities: np.ndarray) -> float:
    probabilities = np.clip(probabilities, 0.0, None)
    total = probabilities.sum()
    if total <= 0:
        return 0.0
    return float(stats.entropy(probabilities / total, base=2))


def _is_unifilar(m: MachinePresentation) -> bool:
    return bool(np.all((m.transitions > 0).sum(axis=2) <= 1))


def _entropies(probabilities: np.ndarray) -> np.ndarray:
    """Row-wise Shannon entropy in bits of a (B, K) array of sub-distributions."""
    probabilities = np.clip(probabilities, 0.0, None)
    totals = probabilities.sum(axis=1)
    out = np.zeros(len(probabilities))
    live = totals > 0
    if live.any():
        out[live] = stats.entropy(probabilities[live] / totals[live, None], base=2, axis=1)
    return out


def _block_entropy_levels(
        m: MachinePresentation,
        pi: np.ndarray,
        prune: float,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> Iterator[float]:
    """Yield H(0), H(1), ... by walking the tree of belief states over ``m``.

    Word prefixes that induce the same belief over states share every
    future conditional, so they are merged before the next level. The walk
    ends once a level would hold more than ``max_beliefs`` beliefs.
    """
    masses, beliefs = np.ones(1), pi[None, :]
    block = 0.0
    yield block
    depth = 0
    while True:
        depth += 1
        rows = np.einsum('bi,yij->byj', beliefs, m.transitions)
        emission = rows.sum(axis=2)
        block += float(masses @ _entropies(emission))

        weights = masses[:, None] * emission
        kept = weights >= prune
        updated = rows[kept] / emission[kept][:, None]
        keys, inverse = np.unique(np.round(updated, BELIEF_DECIMALS), axis=0, return_inverse=True)
        logger.debug('block length %d: H=%.12f over %d belief states', depth, block, len(keys))
        yield block

        if len(keys) > max_beliefs:
            logger.info('belief budget of %d exhausted after block length %d', max_beliefs, depth)
            return
        masses = np.bincount(inverse.ravel(), weights=weights[kept], minlength=len(keys))
        beliefs = keys


def block_entropies(
        m: MachinePresentation,
        max_length: int,
        prune: float = WORD_PRUNE,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> np.ndarray:
    """H(L) for L = 0..max_length, in bits."""
    require_stochastic(m)
    pi = stationary_distribution(m).probabilities
    values = list(itertools.islice(_block_entropy_levels(m, pi, prune, max_beliefs), max_length + 1))
    if len(values) <= max_length:
        raise NonConvergence(f'Belief budget of {max_beliefs} exhausted before block length {max_length}',
                             estimate=np.array(values))
    return np.array(values)


def block_entropy(m: MachinePresentation, length: int) -> float:
    if length < 0:
        raise ValueError(f'Block length must be non-negative, got {length}')
    return float(block_entropies(m, length)[length])


def _unifilar_rate(m: MachinePresentation, pi: np.ndarray) -> float:
    emissions = m.transitions.sum(axis=2)
    return float(sum(pi[i] * _symbol_entropy(emissions[:, i]) for i in range(m.n_states) if pi[i] > 0))


def _block_difference_rate(m: MachinePresentation, pi: np.ndarray, max_length: int, max_beliefs: int) -> float:
    levels = itertools.islice(_block_entropy_levels(m, pi, WORD_PRUNE, max_beliefs), max_length + 1)
    previous_block = next(levels)
    previous_rate: Optional[float] = None
    residual = np.inf
    for block in levels:
        rate = block - previous_block
        if previous_rate is not None:
            residual = abs(rate - previous_rate)
            if residual < RATE_TOL:
                return rate
        previous_block, previous_rate = block, rate
    raise NonConvergence(f'Entropy rate did not converge within block length {max_length}',
                         estimate=previous_rate, residual=float(residual))


def entropy_rate(
        m: MachinePresentation,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> float:
    """Entropy rate in bits per symbol.

    Unifilar presentations use the exact state-averaged emission entropy;
    other presentations use block differences H(L) - H(L-1).
    """
    require_stochastic(m)
    pi = stationary_distribution(m).probabilities
    if _is_unifilar(m):
        return _unifilar_rate(m, pi)
    return _block_difference_rate(m, pi, max_length, max_beliefs)


def excess_entropy(
        m: MachinePresentation,
        tol: float = DEFAULT_TOL,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> ExcessEntropyEstimate:
    """Excess entropy as the limit of H(L) - L h.

    Convergence requires two successive increments below ``tol``. The walk
    stops at ``max_length`` or when the belief budget runs out; either way
    the last estimate, a lower bound, is attached to the raised
    ``NonConvergence``.
    """
    require_stochastic(m)
    pi = stationary_distribution(m).probabilities
    if _is_unifilar(m):
        rate = _unifilar_rate(m, pi)
    else:
        try:
            rate = _block_difference_rate(m, pi, max_length, max_beliefs)
        except NonConvergence as e:
            estimate = ExcessEntropyEstimate(value=0.0, terminal_length=0, residual=np.inf, converged=False)
            raise NonConvergence(f'Excess entropy needs the entropy rate: {e}', estimate=estimate,
                                 residual=e.residual) from e

    levels = itertools.islice(_block_entropy_levels(m, pi, WORD_PRUNE, max_beliefs), max_length + 1)
    next(levels)
    previous = 0.0
    increment = np.inf
    quiet = 0
    length = 0
    for length, block in enumerate(levels, start=1):
        value = block - length * rate
        increment = value - previous
        previous = value
        quiet = quiet + 1 if abs(increment) < tol else 0
        if quiet >= 2:
            return ExcessEntropyEstimate(value=value, terminal_length=length, residual=abs(increment))
    estimate = ExcessEntropyEstimate(
        value=previous, terminal_length=length, residual=abs(increment), converged=False
    )
    raise NonConvergence(f'Excess entropy did not converge within block length {length}',
                         estimate=estimate, residual=abs(increment))


def channel_excess_entropy(
        t: TransducerPresentation,
        source: MachinePresentation,
        tol: float = DEFAULT_TOL,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> ExcessEntropyEstimate:
    """Excess entropy of a channel: E of the joint process minus E of the input."""
    estimates = []
    failed = False
    for machine in (joint_machine(t, source), source):
        try:
            estimates.append(excess_entropy(machine, tol=tol, max_length=max_length, max_beliefs=max_beliefs))
        except NonConvergence as e:
            if not isinstance(e.estimate, ExcessEntropyEstimate):
                raise
            estimates.append(e.estimate)
            failed = True
    joint, driving = estimates
    estimate = ExcessEntropyEstimate(
        value=joint.value - driving.value,
        terminal_length=max(joint.terminal_length, driving.terminal_length),
        residual=max(joint.residual, driving.residual),
        converged=not failed,
    )
    if failed:
        raise NonConvergence('Channel excess entropy did not converge', estimate=estimate,
                             residual=estimate.residual)
    return estimate
