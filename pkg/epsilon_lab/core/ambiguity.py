"""Ordering of classical and quantum complexities: verdicts, region scans and the T_n family."""
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
import itertools
import logging
import math
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy import optimize

from epsilon_lab.datamodels import (
    ComplexityReport,
    EncodingMode,
    MachinePresentation,
    StationaryDistribution,
    TransducerPresentation,
    OrderingVerdict,
    OutputCase,
    OutputComparison,
    RegionPoint,
    Verdict,
    DegenerateParameters,
    EpsilonLabError,
    MissingE,
    NonConvergence,
    ParamOutOfRange,
    TargetOutOfRange,
)
from . import catalog
from .machines import entropy
from .process_algebra import merge_equivalent_states, output_machine, remove_transients
from .quantum_memory import process_complexity, quantum_complexity

logger = logging.getLogger(__name__)

DEAD_BAND = 1e-9
TARGET_TOL = 1e-8

ReportPair = tuple[ComplexityReport, ComplexityReport]


def _sign(delta: float, dead_band: float = DEAD_BAND) -> int:
    if abs(delta) <= dead_band:
        return 0
    return 1 if delta > 0 else -1


def _one_sided(known: ComplexityReport, other: ComplexityReport, dead_band: float) -> Verdict:
    """Verdict when only ``known`` has a quantum complexity."""
    if other.excess_entropy is None:
        raise MissingE('Excess entropy of the side without Q is required')
    if other.excess_entropy < known.quantum_complexity:
        return Verdict.AGNOSTIC
    order = _sign(known.statistical_complexity - other.statistical_complexity, dead_band)
    if order > 0:
        return Verdict.AMBIGUOUS
    if order < 0:
        return Verdict.CONSISTENT
    return Verdict.AGNOSTIC


def classify(a: ComplexityReport, b: ComplexityReport, dead_band: float = DEAD_BAND) -> OrderingVerdict:
    """Compare the classical and quantum orderings of two strategies.

    With both Q values known the orderings are compared directly. With one
    known, the other side's excess entropy bounds its Q from below.
    """
    delta_c = a.statistical_complexity - b.statistical_complexity
    classical_order = _sign(delta_c, dead_band)

    if a.quantum_complexity is not None and b.quantum_complexity is not None:
        delta_q = a.quantum_complexity - b.quantum_complexity
        quantum_order = _sign(delta_q, dead_band)
        verdict = Verdict.AMBIGUOUS if classical_order * quantum_order < 0 else Verdict.CONSISTENT
        return OrderingVerdict(classical_order=classical_order, quantum_order=quantum_order,
                               sufficient_condition=verdict, delta_c=delta_c, delta_q=delta_q)

    if a.quantum_complexity is not None:
        verdict = _one_sided(a, b, dead_band)
    elif b.quantum_complexity is not None:
        verdict = _one_sided(b, a, dead_band)
    else:
        if a.excess_entropy is None or b.excess_entropy is None:
            raise MissingE('Excess entropies are required when no quantum complexity is known')
        verdict = Verdict.AGNOSTIC
    return OrderingVerdict(classical_order=classical_order, sufficient_condition=verdict, delta_c=delta_c)


def region_flags(a: ComplexityReport, b: ComplexityReport, dead_band: float = DEAD_BAND) -> dict[str, bool]:
    """Membership of the four sufficient-condition regions.

    R1/R2 use Q of B only, R3/R4 use Q of A only.
    """
    order = _sign(a.statistical_complexity - b.statistical_complexity, dead_band)
    with_q_b = (b.quantum_complexity is not None and a.excess_entropy is not None
                and a.excess_entropy >= b.quantum_complexity)
    with_q_a = (a.quantum_complexity is not None and b.excess_entropy is not None
                and b.excess_entropy >= a.quantum_complexity)
    return {
        'r1': with_q_b and order < 0,
        'r2': with_q_b and order > 0,
        'r3': with_q_a and order > 0,
        'r4': with_q_a and order < 0,
    }


def grid_points(axes: Mapping[str, Sequence[float]]) -> list[dict[str, float]]:
    """Cartesian grid, first axis outermost."""
    names = list(axes)
    return [dict(zip(names, map(float, values))) for values in itertools.product(*(axes[n] for n in names))]


def midpoint_axis(points: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
    return low + (np.arange(points) + 0.5) * (high - low) / points


def _scan_point(family: Callable[..., ReportPair], coordinates: dict[str, float]) -> RegionPoint:
    try:
        a, b = family(**coordinates)
        direct = None
        if a.quantum_complexity is not None and b.quantum_complexity is not None:
            direct = classify(a, b).sufficient_condition
        return RegionPoint(coordinates=coordinates, direct=direct, **region_flags(a, b))
    except (EpsilonLabError, ValueError) as e:
        logger.warning('grid node %s failed: %s', coordinates, e)
        return RegionPoint(coordinates=coordinates, error=str(e))


def region_scan(
        family: Callable[..., ReportPair],
        grid: Sequence[dict[str, float]],
        workers: int = 1,
) -> list[RegionPoint]:
    """Classify every grid node; results follow grid order."""
    logger.info('scanning %d grid nodes with %d workers', len(grid), workers)
    if workers <= 1:
        return [_scan_point(family, coordinates) for coordinates in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda coordinates: _scan_point(family, coordinates), grid))


@lru_cache(maxsize=4096)
def _alice_report(r: float) -> ComplexityReport:
    return quantum_complexity(catalog.delay(), catalog.coin(r))


def alice_bob_reports(alpha: float, r: float) -> ReportPair:
    """Reports of the delay channel (A) and the noisy detector (B) on a coin of bias r."""
    return _alice_report(r), quantum_complexity(catalog.bob(alpha), catalog.coin(r))


def investor_reports(q1: float) -> ReportPair:
    """Reports of the investor preset on the two news sources, with saturating encodings."""
    strategy = catalog.investor_preset(q1)
    first, second = (catalog.iid(p, catalog.TERNARY) for p in catalog.INVESTOR_INPUTS)
    return (quantum_complexity(strategy, first, mode=EncodingMode.SATURATING),
            quantum_complexity(strategy, second, mode=EncodingMode.SATURATING))


def family_tn_stationary(n: int, q: Sequence[float]) -> StationaryDistribution:
    """pi_i proportional to the product of q_j over j != i."""
    q = np.asarray(q, dtype=float)
    if q.shape != (n,):
        raise ParamOutOfRange(f'Expected {n} advance probabilities, got {q.shape[0] if q.ndim else 0}')
    if np.any(q <= 0) or np.any(q > 1):
        raise DegenerateParameters(f'Advance probabilities must lie in (0, 1], got {q.tolist()}')
    weights = np.array([np.prod(np.delete(q, i)) for i in range(n)])
    return StationaryDistribution(states=tuple(str(j) for j in range(n)), probabilities=weights / weights.sum())


def _slice_complexity(n: int, s: float) -> float:
    head = 1.0 / (1.0 + (n - 1) * s)
    return entropy(np.concatenate(([head], np.full(n - 1, (1.0 - head) / (n - 1)))))


def solve_target_complexity(n: int, target: float, source: Optional[MachinePresentation] = None) -> np.ndarray:
    """Advance probabilities of T_n whose C (= Q) equals ``target``.

    Searches the slice q = (s, 1, ..., 1), on which C rises monotonically
    from 0 to log2 n as s goes from 0 to 1. With a ``source`` the solution is
    checked against the full pipeline, and a miss by more than ``TARGET_TOL``
    raises ``NonConvergence``.
    """
    ceiling = math.log2(n)
    if not 0.0 < target <= ceiling + 1e-12:
        raise TargetOutOfRange(f'Target {target} outside (0, {ceiling}]')
    q = np.ones(n)
    if target < ceiling - 1e-12:
        low = 1e-300
        if _slice_complexity(n, low) >= target:
            raise TargetOutOfRange(f'Target {target} is below the reachable range')
        q[0] = optimize.brentq(lambda value: _slice_complexity(n, value) - target, low, 1.0,
                               xtol=1e-15, rtol=1e-15)
    if source is not None:
        report = quantum_complexity(catalog.tn(q), source)
        miss = max(abs(report.statistical_complexity - target), abs(report.quantum_complexity - target))
        logger.debug('target %.9f, pipeline C %.9f, Q %.9f', target, report.statistical_complexity,
                     report.quantum_complexity)
        if miss > TARGET_TOL:
            raise NonConvergence(f'T_{n} with q = {q.tolist()} misses target {target} by {miss:.3g} bits',
                                 estimate=report, residual=miss)
    return q


def gap_witness(report: ComplexityReport, n: int, source: Optional[MachinePresentation] = None) -> np.ndarray:
    """T_n parameters with C = Q strictly inside the gap (Q, C) of ``report``.

    The returned strategy orders opposite to ``report`` classically and
    quantumly, so the pair is ambiguous.
    """
    if report.quantum_complexity is None or report.quantum_complexity >= report.statistical_complexity - DEAD_BAND:
        raise TargetOutOfRange('Strategy has no gap between its quantum and classical complexities')
    target = 0.5 * (report.quantum_complexity + report.statistical_complexity)
    return solve_target_complexity(n, target, source)


def output_comparison(
        first: TransducerPresentation,
        second: TransducerPresentation,
        source: MachinePresentation,
) -> OutputComparison:
    """Differences of C and Q between two agents and between their output processes."""
    agents = [quantum_complexity(t, source) for t in (first, second)]
    outputs = [
        process_complexity(merge_equivalent_states(remove_transients(output_machine(t, source))))
        for t in (first, second)
    ]
    d_c = agents[0].statistical_complexity - agents[1].statistical_complexity
    d_q = agents[0].quantum_complexity - agents[1].quantum_complexity
    d_c_out = outputs[0].statistical_complexity - outputs[1].statistical_complexity
    d_q_out = outputs[0].quantum_complexity - outputs[1].quantum_complexity
    agents_flip = _sign(d_c) * _sign(d_q) < 0
    outputs_flip = _sign(d_c_out) * _sign(d_q_out) < 0
    if agents_flip and outputs_flip:
        case = OutputCase.BOTH_INCONSISTENT
    elif outputs_flip:
        case = OutputCase.OUTPUTS_ONLY
    elif agents_flip:
        case = OutputCase.AGENTS_ONLY
    else:
        case = OutputCase.BOTH_CONSISTENT
    return OutputComparison(d_c=d_c, d_q=d_q, d_c_out=d_c_out, d_q_out=d_q_out, case=case)


def ising_comparison(r: float) -> OutputComparison:
    return output_comparison(catalog.ising(0.0, 0.7), catalog.ising(2 / 3, 0.7), catalog.coin(r))
