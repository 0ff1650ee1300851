"""Quantum encodings of causal states and the quantum complexity Q."""
import logging
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from epsilon_lab.datamodels import (
    MachinePresentation,
    TransducerPresentation,
    StationaryDistribution,
    ComplexityReport,
    EncodingMode,
    EncodingProvenance,
    ExcessEntropyEstimate,
    FidelityMatrix,
    GramEnsemble,
    QuantumEncoding,
    NonConvergence,
    NotPSD,
    NotStochastic,
    SaturationInfeasible,
    ShapeMismatch,
)
from .info_measures import DEFAULT_MAX_BELIEFS, DEFAULT_MAX_LENGTH, DEFAULT_TOL, channel_excess_entropy
from .machines import stationary_distribution, statistical_complexity, successor_indices
from .process_algebra import as_transducer, trivial_input

logger = logging.getLogger(__name__)

FIDELITY_TOL = 1e-12
FIDELITY_MAX_ITERATIONS = 100_000
PSD_SLACK = 1e-10
EIGENVALUE_CUTOFF = 1e-12
SCALE_BISECTIONS = 60


def fidelity_constraints(
        t: TransducerPresentation,
        max_iterations: int = FIDELITY_MAX_ITERATIONS,
        tol: float = FIDELITY_TOL,
) -> FidelityMatrix:
    """Maximum overlaps allowed between faithful encodings of each pair of states.

    Starts from all-ones and applies
    F[s, s'] <- min_x sum_y sqrt(P(y|x,s) P(y|x,s')) F[succ(s), succ(s')]
    until the largest change drops below ``tol``. Iterates never increase.
    """
    successors = successor_indices(t)
    emissions = t.emissions()
    safe = np.where(successors >= 0, successors, 0)
    amplitude = np.sqrt(emissions[:, :, :, np.newaxis] * emissions[:, :, np.newaxis, :])

    fidelity = np.ones((t.n_states, t.n_states))
    residual = 0.0
    for iteration in range(1, max_iterations + 1):
        inherited = fidelity[safe[:, :, :, np.newaxis], safe[:, :, np.newaxis, :]]
        updated = np.clip((amplitude * inherited).sum(axis=1).min(axis=0), 0.0, 1.0)
        np.fill_diagonal(updated, 1.0)
        updated = np.minimum(updated, fidelity)
        residual = float(np.max(np.abs(updated - fidelity)))
        fidelity = updated
        if residual < tol:
            logger.debug('fidelity fixed point after %d iterations', iteration)
            return FidelityMatrix(states=t.states, matrix=fidelity, iterations=iteration, residual=residual)
    last = FidelityMatrix(states=t.states, matrix=fidelity, iterations=max_iterations, residual=residual)
    raise NonConvergence(f'Fidelity recursion did not settle in {max_iterations} iterations',
                         estimate=last, residual=residual)


def _require_stochastic_rows(t: TransducerPresentation) -> None:
    rows = t.transitions.sum(axis=(1, 3))
    if np.any(np.abs(rows - 1.0) > 1e-12):
        raise NotStochastic('Encoding amplitudes need stochastic rows for every input')


def standard_overlaps(t: TransducerPresentation) -> np.ndarray:
    """Overlaps of the standard encoding without building the vectors."""
    _require_stochastic_rows(t)
    amplitudes = np.sqrt(t.transitions)
    overlaps = np.ones((t.n_states, t.n_states))
    for x in range(len(t.input_alphabet)):
        overlaps *= np.einsum('yik,yjk->ij', amplitudes[x], amplitudes[x])
    return overlaps


def standard_encoding(t: TransducerPresentation) -> QuantumEncoding:
    """Encode state i as the product over inputs of sum_{y,k} sqrt(T^(y|x)_ik) |y>|k>."""
    _require_stochastic_rows(t)
    n = t.n_states
    vectors = np.ones((n, 1))
    for x in range(len(t.input_alphabet)):
        factor = np.sqrt(t.transitions[x]).transpose(1, 0, 2).reshape(n, -1)
        vectors = np.einsum('ia,ib->iab', vectors, factor).reshape(n, -1)
    return QuantumEncoding(states=t.states, vectors=vectors)


def _check_overlap_target(targets: np.ndarray) -> None:
    if targets.ndim != 2 or targets.shape[0] != targets.shape[1]:
        raise ShapeMismatch(f'Overlap targets must be square, got shape {targets.shape}')
    if not np.allclose(targets, targets.T, atol=1e-12) or not np.allclose(np.diag(targets), 1.0, atol=1e-12):
        raise NotPSD('Overlap targets must be symmetric with unit diagonal')
    smallest = float(linalg.eigvalsh(targets)[0])
    if smallest < -PSD_SLACK:
        raise NotPSD(f'Overlap targets have negative eigenvalue {smallest:.3g}')


def states_from_overlaps(targets: np.ndarray, states: Optional[Sequence[str]] = None) -> QuantumEncoding:
    """Vectors whose pairwise inner products equal ``targets``.

    Uses a lower-triangular factorisation when the targets are positive
    definite and a symmetric square root otherwise.
    """
    targets = np.asarray(targets, dtype=float)
    _check_overlap_target(targets)
    try:
        vectors = linalg.cholesky(targets, lower=True)
    except linalg.LinAlgError:
        values, basis = linalg.eigh(targets)
        vectors = basis * np.sqrt(np.clip(values, 0.0, None))
    vectors = vectors / np.linalg.norm(vectors, axis=1, keepdims=True)
    labels = tuple(states) if states is not None else tuple(str(i) for i in range(targets.shape[0]))
    return QuantumEncoding(states=labels, vectors=vectors)


def von_neumann_entropy(g: GramEnsemble) -> float:
    """Entropy of the average memory state, from the spectrum of the weighted Gram matrix."""
    eigenvalues = linalg.eigvalsh(g.weighted_gram())
    if eigenvalues[0] < -PSD_SLACK:
        raise NotPSD(f'Weighted Gram matrix has negative eigenvalue {eigenvalues[0]:.3g}')
    positive = eigenvalues[eigenvalues > EIGENVALUE_CUTOFF]
    return float(-np.sum(positive * np.log2(positive)))


def density_matrix(encoding: QuantumEncoding, pi: StationaryDistribution) -> np.ndarray:
    return np.einsum('i,ia,ib->ab', pi.probabilities, encoding.vectors, encoding.vectors)


def density_matrix_entropy(rho: np.ndarray) -> float:
    eigenvalues = linalg.eigvalsh(rho)
    positive = eigenvalues[eigenvalues > EIGENVALUE_CUTOFF]
    return float(-np.sum(positive * np.log2(positive)))


def _scaled_overlaps(fidelity: np.ndarray) -> tuple[np.ndarray, float]:
    """Largest common scaling of the off-diagonal fidelities that stays positive semidefinite."""
    identity = np.eye(fidelity.shape[0])
    low, high = 0.0, 1.0
    for _ in range(SCALE_BISECTIONS):
        middle = 0.5 * (low + high)
        if linalg.eigvalsh(identity + middle * (fidelity - identity))[0] >= 0.0:
            low = middle
        else:
            high = middle
    return identity + low * (fidelity - identity), low


def _excess_entropy_value(t: TransducerPresentation, source: MachinePresentation, tol: float,
                          max_length: int, max_beliefs: int = DEFAULT_MAX_BELIEFS) -> float:
    try:
        return channel_excess_entropy(t, source, tol=tol, max_length=max_length, max_beliefs=max_beliefs).value
    except NonConvergence as e:
        if not isinstance(e.estimate, ExcessEntropyEstimate):
            raise
        logger.warning('excess entropy unconverged at L=%d (residual %.3g); reporting the finite-length value',
                       e.estimate.terminal_length, e.estimate.residual)
        return e.estimate.value


def complexity_from_overlaps(
        t: TransducerPresentation,
        source: MachinePresentation,
        overlaps: np.ndarray,
        provenance: EncodingProvenance = EncodingProvenance.USER_SUPPLIED,
        tol: float = DEFAULT_TOL,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> ComplexityReport:
    pi = stationary_distribution(t, source)
    gram = GramEnsemble(distribution=pi, overlaps=overlaps)
    return ComplexityReport(
        excess_entropy=_excess_entropy_value(t, source, tol, max_length, max_beliefs),
        quantum_complexity=von_neumann_entropy(gram),
        statistical_complexity=statistical_complexity(pi),
        provenance=provenance,
    )


def quantum_complexity(
        t: TransducerPresentation,
        source: MachinePresentation,
        mode: EncodingMode = EncodingMode.STANDARD,
        tol: float = DEFAULT_TOL,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
        fidelity_max_iterations: int = FIDELITY_MAX_ITERATIONS,
        strict: bool = False,
) -> ComplexityReport:
    """(E, Q, C) of a strategy driven by an input process.

    ``standard`` encodes states with square-root amplitudes; ``saturating``
    builds states whose overlaps equal the fidelity fixed point.
    """
    if mode is EncodingMode.STANDARD:
        return complexity_from_overlaps(t, source, standard_overlaps(t), EncodingProvenance.STANDARD,
                                        tol=tol, max_length=max_length, max_beliefs=max_beliefs)

    fidelity = fidelity_constraints(t, max_iterations=fidelity_max_iterations).matrix
    try:
        overlaps = states_from_overlaps(fidelity, t.states).overlaps()
        provenance = EncodingProvenance.FIDELITY_SATURATING
    except NotPSD:
        overlaps, scale = _scaled_overlaps(fidelity)
        overlaps = states_from_overlaps(overlaps, t.states).overlaps()
        provenance = EncodingProvenance.FIDELITY_SCALED
        logger.warning('fidelity targets are not simultaneously achievable; off-diagonals scaled by %.6f', scale)
    report = complexity_from_overlaps(t, source, overlaps, provenance, tol=tol, max_length=max_length,
                                      max_beliefs=max_beliefs)
    if strict and provenance is EncodingProvenance.FIDELITY_SCALED:
        raise SaturationInfeasible('Fidelity fixed point is not a valid overlap matrix', report=report)
    return report


def process_complexity(
        m: MachinePresentation,
        mode: EncodingMode = EncodingMode.STANDARD,
        tol: float = DEFAULT_TOL,
        max_length: int = DEFAULT_MAX_LENGTH,
        max_beliefs: int = DEFAULT_MAX_BELIEFS,
) -> ComplexityReport:
    """(E, Q, C) of a stochastic process, viewed as a channel with a trivial input."""
    channel = as_transducer(m)
    return quantum_complexity(channel, trivial_input(), mode=mode, tol=tol, max_length=max_length,
                              max_beliefs=max_beliefs)
