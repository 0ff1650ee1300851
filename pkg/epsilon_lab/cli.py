"""Command-line entry point: ``epsilon-lab <command> ...``."""
import argparse
from contextlib import contextmanager
import logging
import sys
from typing import IO, Iterator, Optional, Sequence

from pydantic import ValidationError

from epsilon_lab.core import AnalysisService
from epsilon_lab.core.figures import SWEEP_FAMILIES, sweep_table
from epsilon_lab.datamodels import (
    CatalogModel,
    CompletionPolicy,
    ComputationError,
    Configuration,
    EncodingMode,
    FigureId,
    EpsilonLabError,
    ModelParseError,
)
from epsilon_lab.loaders import (
    CatalogLoader,
    Loader,
    ModelFileLoader,
    dump_model_file,
    model_file_from_presentation,
)
from epsilon_lab.utils import parse_probability, render_bits, write_table

logger = logging.getLogger(__name__)

CATALOG_PREFIX = 'catalog:'


def loader_for(argument: str) -> Loader:
    """A model file path, or ``catalog:NAME[:key=value,...]`` for a named model.

    List-valued parameters separate their entries with ``;``.
    """
    if not argument.startswith(CATALOG_PREFIX):
        return ModelFileLoader(argument)
    name, _, raw_params = argument[len(CATALOG_PREFIX):].partition(':')
    params = {}
    for item in filter(None, raw_params.split(',')):
        key, sep, value = item.partition('=')
        if not sep:
            raise ModelParseError(f'Expected key=value, got {item!r}')
        values = [parse_probability(v) for v in value.split(';')]
        params[key.strip()] = values if ';' in value else values[0]
    return CatalogLoader(name, params)


@contextmanager
def _output(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
    else:
        with open(path, 'w', newline='') as stream:
            yield stream


def _analyze(service: AnalysisService, args: argparse.Namespace) -> int:
    input_loader = loader_for(args.input) if args.input else None
    report = service.analyze(loader_for(args.model), input_loader, EncodingMode(args.mode))
    if args.csv:
        write_table(['E_bits', 'Q_bits', 'C_bits'],
                    [[report.excess_entropy, report.quantum_complexity, report.statistical_complexity]],
                    sys.stdout)
    else:
        print(f'E = {render_bits(report.excess_entropy)} bits')
        print(f'Q = {render_bits(report.quantum_complexity)} bits')
        print(f'C = {render_bits(report.statistical_complexity)} bits')
        if report.provenance is not None:
            print(f'encoding: {report.provenance.value}')
    return 0


def _paper(service: AnalysisService, args: argparse.Namespace) -> int:
    header, rows = service.paper(args.figure)
    with _output(args.output) as stream:
        write_table(header, rows, stream)
    return 0


def _invert(service: AnalysisService, args: argparse.Namespace) -> int:
    model, source = loader_for(args.model), loader_for(args.input)
    inverse = service.invert(model, source, CompletionPolicy(args.policy), args.filler)
    if args.output:
        dump_model_file(inverse, args.output)
    else:
        print(model_file_from_presentation(inverse).model_dump_json(by_alias=True, exclude_none=True, indent=2))
    if args.round_trip:
        distance = service.round_trip(model, source, inverse, args.round_trip)
        print(f'round-trip TV at L={args.round_trip}: {render_bits(distance)}', file=sys.stderr)
    return 0


def _simulate(service: AnalysisService, args: argparse.Namespace) -> int:
    input_loader = loader_for(args.input) if args.input else None
    trajectory, distance = service.simulate(loader_for(args.model), input_loader, args.length, args.seed, args.block)
    with _output(args.output) as stream:
        stream.write(trajectory.model_dump_json() + '\n')
    if distance is not None:
        print(f'TV at L={args.block}: {render_bits(distance)}', file=sys.stderr)
    return 0


def _sweep(service: AnalysisService, args: argparse.Namespace) -> int:
    header, rows = sweep_table(service.sweep(args.family, args.points))
    with _output(args.output) as stream:
        write_table(header, rows, stream)
    return 0


def _verify(service: AnalysisService, args: argparse.Namespace) -> int:
    report = service.verify(args.count, args.seed)
    for line in report.violations:
        print(line)
    print(f'{report.instances} instances, {len(report.violations)} violations')
    return 0 if report.passed else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='epsilon-lab',
        description='Classical and quantum memory of epsilon-machines and epsilon-transducers.',
        epilog=f'MODEL arguments take a JSON model file or {CATALOG_PREFIX}NAME[:key=value,...] '
               f'with NAME one of {", ".join(m.value for m in CatalogModel)}.',
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='log at DEBUG level')
    commands = parser.add_subparsers(dest='command', required=True)

    analyze = commands.add_parser('analyze', help='excess entropy, quantum and statistical complexity')
    analyze.add_argument('model')
    analyze.add_argument('input', nargs='?', help='input process (required for transducers)')
    analyze.add_argument('--mode', choices=[m.value for m in EncodingMode], default=EncodingMode.STANDARD.value)
    analyze.add_argument('--csv', action='store_true', help='print a CSV row instead of text')
    analyze.set_defaults(handler=_analyze)

    paper = commands.add_parser('paper', help='tabulate a worked figure as CSV')
    paper.add_argument('figure', choices=[f.value for f in FigureId])
    paper.add_argument('-o', '--output')
    paper.set_defaults(handler=_paper)

    invert = commands.add_parser('invert', help='inverse channel as a model file')
    invert.add_argument('model')
    invert.add_argument('input')
    invert.add_argument('--policy', choices=[p.value for p in CompletionPolicy],
                        default=CompletionPolicy.COPY.value)
    invert.add_argument('--filler', help='symbol emitted by self-loop completions')
    invert.add_argument('--round-trip', type=int, metavar='L', help='report TV of the reproduced input at length L')
    invert.add_argument('-o', '--output')
    invert.set_defaults(handler=_invert)

    simulate = commands.add_parser('simulate', help='seeded stationary sample path')
    simulate.add_argument('model')
    simulate.add_argument('input', nargs='?')
    simulate.add_argument('--length', type=int, required=True)
    simulate.add_argument('--seed', type=int, required=True)
    simulate.add_argument('--block', type=int, metavar='L', help='compare L-word frequencies with the analytic ones')
    simulate.add_argument('-o', '--output')
    simulate.set_defaults(handler=_simulate)

    sweep = commands.add_parser('sweep', help='complexities and ambiguity regions over a parameter grid')
    sweep.add_argument('family', choices=sorted(SWEEP_FAMILIES))
    sweep.add_argument('--points', type=int, default=50)
    sweep.add_argument('-o', '--output')
    sweep.set_defaults(handler=_sweep)

    verify = commands.add_parser('verify', help='check the ordering bounds on random instances')
    verify.add_argument('--count', type=int, default=50)
    verify.add_argument('--seed', type=int, default=0)
    verify.set_defaults(handler=_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        configuration = Configuration.from_env()
    except EpsilonLabError as e:
        print(f'error: {e}', file=sys.stderr)
        return e.exit_code
    logging.basicConfig(level=logging.DEBUG if args.verbose else configuration.log_level,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')

    service = AnalysisService(configuration)
    try:
        return args.handler(service, args)
    except EpsilonLabError as e:
        logger.debug('command failed', exc_info=True)
        print(f'error: {type(e).__name__}: {e}', file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f'error: {e}', file=sys.stderr)
        return ModelParseError.exit_code
    except (ValueError, ValidationError) as e:
        logger.debug('command failed', exc_info=True)
        print(f'error: {e}', file=sys.stderr)
        return ComputationError.exit_code
