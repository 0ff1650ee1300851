"""Tables behind the worked figures, and parameter sweeps."""
from concurrent.futures import ThreadPoolExecutor
import logging
from typing import Callable, Sequence

import numpy as np

from epsilon_lab.datamodels import (
    FigureId,
    SweepRow,
    UnknownFigure,
    UnknownName,
)
from . import catalog
from .ambiguity import (
    alice_bob_reports,
    classify,
    grid_points,
    investor_reports,
    ising_comparison,
    midpoint_axis,
    region_flags,
    solve_target_complexity,
    ReportPair,
)
from .inversion import complete_and_minimize, invert
from .process_algebra import merge_equivalent_states, output_machine, remove_transients
from .quantum_memory import quantum_complexity

logger = logging.getLogger(__name__)

Table = tuple[list[str], list[list]]

SWEEP_FAMILIES: dict[str, Callable[..., ReportPair]] = {
    'alice-bob': alice_bob_reports,
    'investor': investor_reports,
    'ising': lambda r: (quantum_complexity(catalog.ising(0.0, 0.7), catalog.coin(r)),
                        quantum_complexity(catalog.ising(2 / 3, 0.7), catalog.coin(r))),
}

SWEEP_HEADER = ['C_A_bits', 'Q_A_bits', 'E_A_bits', 'C_B_bits', 'Q_B_bits', 'E_B_bits', 'R1', 'R2', 'R3', 'R4']


def sweep_axes(family: str, points: int) -> dict[str, np.ndarray]:
    if family == 'alice-bob':
        return {'alpha': midpoint_axis(points), 'r': midpoint_axis(points)}
    if family == 'investor':
        return {'q1': midpoint_axis(points)}
    if family == 'ising':
        return {'r': midpoint_axis(points)}
    raise UnknownName(f'Unknown sweep family {family!r}; known: {sorted(SWEEP_FAMILIES)}')


def _sweep_row(family: Callable[..., ReportPair], coordinates: dict[str, float]) -> SweepRow:
    a, b = family(**coordinates)
    return SweepRow(
        coordinates=coordinates,
        c_a=a.statistical_complexity, q_a=a.quantum_complexity, e_a=a.excess_entropy,
        c_b=b.statistical_complexity, q_b=b.quantum_complexity, e_b=b.excess_entropy,
        **region_flags(a, b),
    )


def sweep(family: str, points: int, workers: int = 1) -> list[SweepRow]:
    grid = grid_points(sweep_axes(family, points))
    evaluate = SWEEP_FAMILIES[family]
    logger.info('sweeping %s over %d nodes', family, len(grid))
    if workers <= 1:
        return [_sweep_row(evaluate, coordinates) for coordinates in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda coordinates: _sweep_row(evaluate, coordinates), grid))


def sweep_table(rows: Sequence[SweepRow]) -> Table:
    names = list(rows[0].coordinates) if rows else []
    body = [
        [row.coordinates[n] for n in names]
        + [row.c_a, row.q_a, row.e_a, row.c_b, row.q_b, row.e_b, row.r1, row.r2, row.r3, row.r4]
        for row in rows
    ]
    return names + SWEEP_HEADER, body


def _complexity_slice(axis_name: str, axis: np.ndarray, fixed: dict[str, float]) -> Table:
    header = [axis_name, 'C_A_bits', 'Q_A_bits', 'C_B_bits', 'Q_B_bits', 'ambiguous']
    rows = []
    for value in axis:
        a, b = alice_bob_reports(**{axis_name: float(value)}, **fixed)
        verdict = classify(a, b).sufficient_condition.value == 'ambiguous'
        rows.append([float(value), a.statistical_complexity, a.quantum_complexity,
                     b.statistical_complexity, b.quantum_complexity, verdict])
    return header, rows


def alice_bob_surface(points: int = 50) -> Table:
    header = ['alpha', 'r', 'C_A_bits', 'Q_A_bits', 'C_B_bits', 'Q_B_bits']
    rows = []
    for coordinates in grid_points({'alpha': midpoint_axis(points), 'r': midpoint_axis(points)}):
        a, b = alice_bob_reports(**coordinates)
        rows.append([coordinates['alpha'], coordinates['r'], a.statistical_complexity, a.quantum_complexity,
                     b.statistical_complexity, b.quantum_complexity])
    return header, rows


def investor_differences(points: int = 500) -> Table:
    header = ['q1', 'C_I1_bits', 'Q_I1_bits', 'C_I2_bits', 'Q_I2_bits', 'dC_bits', 'dQ_bits']
    rows = []
    for q1 in midpoint_axis(points):
        first, second = investor_reports(float(q1))
        rows.append([float(q1), first.statistical_complexity, first.quantum_complexity,
                     second.statistical_complexity, second.quantum_complexity,
                     first.statistical_complexity - second.statistical_complexity,
                     first.quantum_complexity - second.quantum_complexity])
    return header, rows


def ising_differences(points: int = 500) -> Table:
    header = ['r', 'dC_bits', 'dQ_bits', 'dC_out_bits', 'dQ_out_bits', 'case']
    rows = []
    for r in midpoint_axis(points):
        comparison = ising_comparison(float(r))
        rows.append([float(r), comparison.d_c, comparison.d_q, comparison.d_c_out, comparison.d_q_out,
                     comparison.case.value])
    return header, rows


def inversion_example(p: float = 0.0, q: float = 1 / 3, r: float = 1 / 4) -> Table:
    """Forward and inverse complexities of the three-state strategy, with the ordering verdict."""
    strategy = catalog.inversion_strategy(p, q, r)
    stimulus = catalog.inversion_input()
    forward = quantum_complexity(strategy, stimulus)
    inverse = complete_and_minimize(invert(strategy, stimulus))
    observed = merge_equivalent_states(remove_transients(output_machine(strategy, stimulus)))
    backward = quantum_complexity(inverse, observed)
    verdict = classify(forward, backward).sufficient_condition.value
    header = ['p', 'q', 'r', 'C_forward_bits', 'C_inverse_bits', 'Q_forward_bits', 'Q_inverse_bits', 'verdict']
    return header, [[p, q, r, forward.statistical_complexity, backward.statistical_complexity,
                     forward.quantum_complexity, backward.quantum_complexity, verdict]]


def tn_family(targets_per_n: int = 4) -> Table:
    """T_n strategies at evenly spaced targets in (0, log2 n), with the C and Q they reach."""
    header = ['n', 'target_bits', 's', 'C_bits', 'Q_bits']
    rows = []
    coin = catalog.coin(0.5)
    for n in range(2, 6):
        for k in range(1, targets_per_n + 1):
            target = k * np.log2(n) / (targets_per_n + 1)
            q = solve_target_complexity(n, float(target))
            report = quantum_complexity(catalog.tn(q), coin)
            rows.append([n, float(target), float(q[0]), report.statistical_complexity, report.quantum_complexity])
    return header, rows


def figure_table(figure: FigureId | str, workers: int = 1) -> Table:
    try:
        key = figure if isinstance(figure, FigureId) else FigureId(figure)
    except ValueError as e:
        raise UnknownFigure(f'Unknown figure {figure!r}; known: {[f.value for f in FigureId]}') from e

    if key is FigureId.FIG7:
        return alice_bob_surface()
    elif key is FigureId.FIG8:
        return _complexity_slice('alpha', midpoint_axis(500), {'r': 0.2})
    elif key is FigureId.FIG9:
        return _complexity_slice('r', midpoint_axis(500), {'alpha': 0.5})
    elif key is FigureId.FIG10:
        return sweep_table(sweep('alice-bob', 200, workers))
    elif key is FigureId.FIG13:
        return investor_differences()
    elif key is FigureId.FIG18:
        return ising_differences()
    elif key is FigureId.INVERSION:
        return inversion_example()
    return tn_family()
