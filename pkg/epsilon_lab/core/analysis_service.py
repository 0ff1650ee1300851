import logging
from typing import Optional

import numpy as np

from epsilon_lab.loaders import Loader
from epsilon_lab.datamodels import (
    Configuration,
    MachinePresentation,
    TransducerPresentation,
    ComplexityReport,
    CompletionPolicy,
    EncodingMode,
    FigureId,
    PropertyCheckReport,
    SweepRow,
    Trajectory,
    MultipleRecurrentClasses,
    NotStochastic,
    NotUnifilar,
    PresentationError,
)
from . import catalog
from .figures import Table, figure_table, sweep
from .inversion import complete_and_minimize, invert, round_trip_distance
from .machines import recurrent_classes, validate_machine, validate_transducer
from .process_algebra import joint_machine, word_distribution
from .quantum_memory import fidelity_constraints, process_complexity, quantum_complexity, standard_overlaps
from .simulate import empirical_word_distribution, sample_path, total_variation

logger = logging.getLogger(__name__)

VERIFY_MAX_STATES = 4
VERIFY_MAX_SYMBOLS = 3
BOUND_SLACK = 1e-8


class AnalysisService:
    """Loads and validates models, then runs the analyses behind every CLI command."""

    def __init__(self, configuration: Configuration):
        self._configuration = configuration

    @staticmethod
    def from_env() -> 'AnalysisService':
        return AnalysisService(Configuration.from_env())

    @property
    def configuration(self) -> Configuration:
        return self._configuration

    def load_machine(self, loader: Loader) -> MachinePresentation:
        model = loader.load()
        if not isinstance(model, MachinePresentation):
            raise PresentationError('Expected a machine, got a transducer')
        report = validate_machine(model)
        if not report.stochastic:
            raise NotStochastic('; '.join(report.failures))
        elif not report.ergodic:
            raise MultipleRecurrentClasses('; '.join(report.failures))
        return model

    def load_model(self, loader: Loader) -> MachinePresentation | TransducerPresentation:
        model = loader.load()
        if isinstance(model, MachinePresentation):
            report = validate_machine(model)
        else:
            report = validate_transducer(model)

        if not report.stochastic:
            raise NotStochastic('; '.join(report.failures))
        elif isinstance(model, TransducerPresentation) and not report.unifilar:
            raise NotUnifilar('; '.join(report.failures))
        return model

    def analyze(
            self,
            model_loader: Loader,
            input_loader: Optional[Loader] = None,
            mode: EncodingMode = EncodingMode.STANDARD,
    ) -> ComplexityReport:
        model = self.load_model(model_loader)
        config = self._configuration
        if isinstance(model, MachinePresentation):
            if not validate_machine(model).unifilar:
                raise NotUnifilar('A process must be given by its unifilar presentation')
            return process_complexity(model, mode, tol=config.excess_entropy_tol,
                                      max_length=config.max_block_length, max_beliefs=config.max_beliefs)
        if input_loader is None:
            raise PresentationError('A transducer needs an input process')
        source = self.load_machine(input_loader)
        return quantum_complexity(
            model,
            source,
            mode=mode,
            tol=config.excess_entropy_tol,
            max_length=config.max_block_length,
            max_beliefs=config.max_beliefs,
            fidelity_max_iterations=config.fidelity_max_iterations,
        )

    def invert(
            self,
            model_loader: Loader,
            input_loader: Loader,
            policy: CompletionPolicy = CompletionPolicy.COPY,
            filler_symbol: Optional[str] = None,
    ) -> TransducerPresentation:
        model = self.load_model(model_loader)
        if not isinstance(model, TransducerPresentation):
            raise PresentationError('Only a transducer can be inverted')
        source = self.load_machine(input_loader)
        inverse = complete_and_minimize(invert(model, source), policy, filler_symbol)
        logger.info('inverse channel with %d states', inverse.n_states)
        return inverse

    def round_trip(
            self,
            model_loader: Loader,
            input_loader: Loader,
            inverse: TransducerPresentation,
            length: int = 6,
    ) -> float:
        return round_trip_distance(self.load_model(model_loader), self.load_machine(input_loader), inverse, length)

    def simulate(
            self,
            model_loader: Loader,
            input_loader: Optional[Loader],
            length: int,
            seed: int,
            block: Optional[int] = None,
    ) -> tuple[Trajectory, Optional[float]]:
        """Sample a path; with ``block`` also return the TV distance of its words to the analytic ones."""
        model = self.load_model(model_loader)
        if isinstance(model, TransducerPresentation):
            if input_loader is None:
                raise PresentationError('A transducer needs an input process')
            model = joint_machine(model, self.load_machine(input_loader))
        trajectory = sample_path(model, length, seed)
        if block is None:
            return trajectory, None
        empirical = empirical_word_distribution(trajectory, block, model.output_alphabet)
        distance = total_variation(empirical, word_distribution(model, block))
        logger.info('TV distance at L=%d over %d steps: %.6f', block, length, distance)
        return trajectory, distance

    def sweep(self, family: str, points: int) -> list[SweepRow]:
        return sweep(family, points, workers=self._configuration.threads)

    def paper(self, figure: FigureId | str) -> Table:
        header, rows = figure_table(figure, workers=self._configuration.threads)
        logger.info('figure %s: %d rows', figure, len(rows))
        return header, rows

    def verify(self, count: int, seed: int) -> PropertyCheckReport:
        """Check E <= Q <= C and overlap <= fidelity on random ergodic instances."""
        rng = np.random.default_rng(seed)
        config = self._configuration
        bounds = dict(tol=config.excess_entropy_tol, max_length=config.max_block_length,
                      max_beliefs=config.max_beliefs)
        violations = []
        checked = 0
        while checked < count:
            t = catalog.random_transducer(
                rng,
                n_states=int(rng.integers(1, VERIFY_MAX_STATES + 1)),
                n_inputs=int(rng.integers(1, VERIFY_MAX_SYMBOLS + 1)),
                n_outputs=int(rng.integers(2, VERIFY_MAX_SYMBOLS + 1)),
            )
            source = catalog.iid(rng.dirichlet(np.ones(len(t.input_alphabet))), t.input_alphabet.symbols)
            if len(recurrent_classes(joint_machine(t, source).total)) != 1:
                continue
            checked += 1

            standard = quantum_complexity(t, source, **bounds)
            if not standard.bounds_hold:
                violations.append(f'instance {checked}: E={standard.excess_entropy:.9f} '
                                  f'Q={standard.quantum_complexity:.9f} C={standard.statistical_complexity:.9f}')
            saturating = quantum_complexity(t, source, mode=EncodingMode.SATURATING,
                                            fidelity_max_iterations=config.fidelity_max_iterations, **bounds)
            if saturating.quantum_complexity > saturating.statistical_complexity + BOUND_SLACK:
                violations.append(f'instance {checked}: saturating Q={saturating.quantum_complexity:.9f} '
                                  f'exceeds C={saturating.statistical_complexity:.9f}')
            fidelity = fidelity_constraints(t, max_iterations=config.fidelity_max_iterations)
            excess = standard_overlaps(t) - fidelity.matrix
            if np.any(excess > BOUND_SLACK):
                violations.append(f'instance {checked}: overlap exceeds fidelity by {excess.max():.3g}')
        logger.info('checked %d random instances, %d violations', checked, len(violations))
        return PropertyCheckReport(instances=checked, seed=seed, violations=violations)
