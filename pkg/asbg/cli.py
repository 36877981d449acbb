"""
Command line front end
"""

import argparse
import hashlib
import json
import logging
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import (
    asdict,
    dataclass,
    field
)
from typing import (
    Callable,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple
)

from .core import (
    EXIT_COLOURABLE,
    EXIT_INVALID_INPUT,
    EXIT_NOT_COLOURABLE,
    PACKAGE_METADATA_PARSER,
    AsbgException,
    AsmBridge,
    ColouredGraph,
    ColouringPipeline,
    ConfigurationSpace,
    ConfigureMethod,
    DotExporter,
    Graph,
    GraphUtils,
    Logger,
    Oracle,
    OutputFormat,
    StructureAnalyzer
)
from .core.exceptions import NotColourableException


@dataclass
class CommandResult:
    """
    What a command produced for one input
    """

    exit_code: int
    payload: object
    dot: Optional[str] = None
    text: Optional[str] = None


@dataclass
class TaskOutcome:
    """
    Result of running a command on one input, ready for printing
    """

    path: str
    exit_code: int
    output: str = ''
    error: str = ''
    digest: Optional[str] = None
    payload: object = None


@dataclass
class RunReport:
    """
    Record of a CLI run, written with --report
    """

    command: List[str]
    version: str
    inputs: List[Dict[str, Optional[str]]] = field(default_factory=list)
    outcomes: List[object] = field(default_factory=list)
    exit_code: int = EXIT_COLOURABLE
    elapsed_seconds: float = 0.0

    def to_json(self) -> Dict[str, object]:
        """
        Returns the report as a JSON compatible dict
        """
        return asdict(self)


def _read(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    with open(path, 'r', encoding='utf-8') as f:
        return f.read()


def _natural_key(name: str) -> list:
    return [int(t) if t.isdigit() else t for t in re.split(r'(\d+)', name)]


def _decision_result(g: Graph, decision, options: Dict) -> CommandResult:
    exit_code = EXIT_COLOURABLE if decision.colourable else EXIT_NOT_COLOURABLE
    dot = None
    if decision.colourable:
        dot = DotExporter.coloured_graph(
            ColouredGraph.create(g, decision.colouring))
    return CommandResult(exit_code, decision.to_json(), dot)


def cmd_decide(text: str, options: Dict) -> CommandResult:
    """
    Decides difference-k colourability (k = 1 by default)
    """
    g = GraphUtils.parse_graph(text)
    decision = ColouringPipeline.decide_difference_k_decision(
        g, options['k'])
    return _decision_result(g, decision, options)


def cmd_colour(text: str, options: Dict) -> CommandResult:
    """
    Constructs a difference-1 colouring
    """
    g = GraphUtils.parse_graph(text)
    decision = ColouringPipeline.decide_difference1(g)
    if not decision.colourable:
        return CommandResult(EXIT_NOT_COLOURABLE, decision.to_json())
    cg = ColouredGraph.create(g, decision.colouring)
    return CommandResult(EXIT_COLOURABLE, cg.to_json(),
                         DotExporter.coloured_graph(cg))


def _coloured_input(text: str) -> Tuple[Optional[ColouredGraph], object]:
    """
    Reads a coloured graph, colouring a plain graph with the pipeline
    """
    document = json.loads(text)
    if isinstance(document, dict) and 'colouring' in document:
        return ColouredGraph.from_json(document), None
    g = Graph.from_json(document)
    decision = ColouringPipeline.decide_difference1(g)
    if not decision.colourable:
        return None, decision.to_json()
    return ColouredGraph.create(g, decision.colouring), None


def cmd_configure(text: str, options: Dict) -> CommandResult:
    """
    Finds a configuration of a coloured graph
    """
    cg, refusal = _coloured_input(text)
    if cg is None:
        return CommandResult(EXIT_NOT_COLOURABLE, refusal)

    configuration = ConfigurationSpace.configure(
        cg, ConfigureMethod.from_string(options['method']))
    payload = {
        'configurable': configuration is not None,
        'configuration': (configuration.to_json()
                          if configuration is not None else None),
        'colouring': cg.colouring.to_json()
    }
    if configuration is None:
        return CommandResult(EXIT_NOT_COLOURABLE, payload,
                             DotExporter.coloured_graph(cg))
    return CommandResult(EXIT_COLOURABLE, payload,
                         DotExporter.configuration(cg, configuration))


def cmd_enumerate(text: str, options: Dict) -> CommandResult:
    """
    Lists every difference-1 colouring
    """
    g = GraphUtils.parse_graph(text)
    try:
        colourings = ConfigurationSpace.enumerate_colourings(g)
    except NotColourableException:
        return CommandResult(EXIT_NOT_COLOURABLE,
                             {'count': 0, 'colourings': []})
    return CommandResult(EXIT_COLOURABLE, {
        'count': len(colourings),
        'colourings': [c.to_json() for c in colourings]
    })


def cmd_reduce(text: str, options: Dict) -> CommandResult:
    """
    Prints the reduced form
    """
    reduced = StructureAnalyzer.reduce(GraphUtils.parse_graph(text))
    return CommandResult(EXIT_COLOURABLE, reduced.to_json(),
                         DotExporter.graph(reduced))


def cmd_classify(text: str, options: Dict) -> CommandResult:
    """
    Prints the structure report
    """
    report = StructureAnalyzer.analyze(GraphUtils.parse_graph(text))
    return CommandResult(EXIT_COLOURABLE, report.to_json())


def cmd_asm_count(text: str, options: Dict) -> CommandResult:
    """
    Counts n x n alternating sign matrices
    """
    n = options['n']
    return CommandResult(EXIT_COLOURABLE,
                         {'n': n, 'count': AsmBridge.count_asms(n)})


def cmd_asm_to_graph(text: str, options: Dict) -> CommandResult:
    """
    Converts matrix text to a coloured graph
    """
    cg = AsmBridge.asm_to_asbg(AsmBridge.matrix_from_text(text))
    return CommandResult(EXIT_COLOURABLE, cg.to_json(),
                         DotExporter.coloured_graph(cg))


def _default_orders(cg: ColouredGraph) -> Tuple[List[str], List[str]]:
    """
    Natural row/column orders for r1.. / c1.. graphs, otherwise part1
    as rows
    """
    vertices = cg.graph.vertices
    if all(re.fullmatch(r'[rc]\d+', v) for v in vertices):
        return (sorted((v for v in vertices if v[0] == 'r'), key=_natural_key),
                sorted((v for v in vertices if v[0] == 'c'), key=_natural_key))
    return (sorted(cg.bipartition.part1, key=_natural_key),
            sorted(cg.bipartition.part2, key=_natural_key))


def cmd_asm_from_graph(text: str, options: Dict) -> CommandResult:
    """
    Converts a coloured graph to matrix text
    """
    cg = ColouredGraph.from_json(text)
    rows, columns = _default_orders(cg)
    if options.get('rows'):
        rows = options['rows'].split(',')
    if options.get('cols'):
        columns = options['cols'].split(',')
    matrix = AsmBridge.asbg_to_asm(cg, rows, columns)
    result = CommandResult(EXIT_COLOURABLE, {
        'rows': rows,
        'columns': columns,
        'matrix': matrix.to_json(),
        'is_asm': AsmBridge.is_asm(matrix)
    })
    if options.get('text'):
        result.text = AsmBridge.matrix_to_text(matrix)
    return result


def cmd_oracle_difference_k(text: str, options: Dict) -> CommandResult:
    """
    Lists every difference-k colouring by exhaustive search
    """
    colourings = Oracle.oracle_difference_k(
        GraphUtils.parse_graph(text), options['k'])
    return CommandResult(
        EXIT_COLOURABLE if colourings else EXIT_NOT_COLOURABLE, {
            'k': options['k'],
            'count': len(colourings),
            'colourings': [c.to_json() for c in colourings]
        })


def cmd_oracle_cycles(text: str, options: Dict) -> CommandResult:
    """
    Lists common cycle classes by explicit cycle enumeration
    """
    classes = Oracle.oracle_cycle_relation(GraphUtils.parse_graph(text))
    return CommandResult(EXIT_COLOURABLE, {
        'cycle_classes': [[list(e) for e in c] for c in classes]
    })


def cmd_oracle_configurable(text: str, options: Dict) -> CommandResult:
    """
    Decides configurability by exhaustive search
    """
    cg, refusal = _coloured_input(text)
    if cg is None:
        return CommandResult(EXIT_NOT_COLOURABLE, refusal)
    configurable = Oracle.oracle_configurable(cg)
    return CommandResult(
        EXIT_COLOURABLE if configurable else EXIT_NOT_COLOURABLE,
        {'configurable': configurable})


COMMANDS: Dict[str, Callable[[str, Dict], CommandResult]] = {
    'decide': cmd_decide,
    'colour': cmd_colour,
    'configure': cmd_configure,
    'enumerate': cmd_enumerate,
    'reduce': cmd_reduce,
    'classify': cmd_classify,
    'asm count': cmd_asm_count,
    'asm to-graph': cmd_asm_to_graph,
    'asm from-graph': cmd_asm_from_graph,
    'oracle difference-k': cmd_oracle_difference_k,
    'oracle cycles': cmd_oracle_cycles,
    'oracle configurable': cmd_oracle_configurable,
}


def _render(result: CommandResult, output_format: OutputFormat) -> str:
    if result.text is not None:
        return result.text
    if output_format == OutputFormat.Dot and result.dot is not None:
        return result.dot
    return json.dumps(result.payload, indent=2) + '\n'


def run_task(command: str, path: Optional[str], options: Dict) -> TaskOutcome:
    """
    Runs one command on one input, turning errors into exit code 2
    """
    outcome = TaskOutcome(path=path or '', exit_code=EXIT_INVALID_INPUT)
    try:
        text = _read(path) if path is not None else ''
        outcome.digest = hashlib.sha256(text.encode('utf-8')).hexdigest()
        result = COMMANDS[command](text, options)
    except (AsbgException, OSError, json.JSONDecodeError) as e:
        Logger.instance().log_error_json({
            'type': Logger.INPUT_ERROR,
            'path': path,
            'error': str(e)
        })
        outcome.error = '{}: {}\n'.format(path or command, e)
        return outcome

    outcome.exit_code = result.exit_code
    outcome.payload = result.payload
    outcome.output = _render(
        result, OutputFormat.from_string(options['format']))
    return outcome


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--format', choices=('json', 'dot'), default='json',
                        help='Output format')
    parent.add_argument('--jobs', type=int, default=1,
                        help='Number of inputs processed concurrently')
    parent.add_argument('--report', metavar='PATH',
                        help='Write a JSON run report with timings to PATH')
    parent.add_argument('--verbose', action='store_true',
                        help='Log pipeline messages to stderr')
    return parent


def build_parser() -> argparse.ArgumentParser:
    """
    Creates the argument parser
    """
    parent = _common_options()
    parser = argparse.ArgumentParser(
        prog=PACKAGE_METADATA_PARSER.get_short_app_name(),
        description=PACKAGE_METADATA_PARSER.get_property('description'))
    parser.add_argument('--version', action='version',
                        version=PACKAGE_METADATA_PARSER.get_version())
    commands = parser.add_subparsers(dest='command', required=True)

    def graph_command(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[parent], help=help_text)
        sub.add_argument('inputs', nargs='+', metavar='INPUT',
                         help='Graph JSON file, or - for stdin')
        sub.set_defaults(command_key=name)
        return sub

    graph_command('decide', 'Decide colourability').add_argument(
        '--k', type=int, default=1, help='Colour difference (default 1)')
    graph_command('colour', 'Construct a difference-1 colouring')
    graph_command('configure', 'Find a configuration').add_argument(
        '--method', choices=('auto', 'cactus', 'brute'), default='auto')
    graph_command('enumerate', 'List all difference-1 colourings')
    graph_command('reduce', 'Remove leaf-twig configurations')
    graph_command('classify', 'Report skeleton structure')

    asm = commands.add_parser('asm', help='Alternating sign matrices')
    asm_commands = asm.add_subparsers(dest='asm_command', required=True)
    count = asm_commands.add_parser('count', parents=[parent],
                                    help='Count n x n ASMs')
    count.add_argument('n', type=int)
    count.set_defaults(command_key='asm count', inputs=[None])
    to_graph = asm_commands.add_parser(
        'to-graph', parents=[parent], help='Matrix text to coloured graph')
    to_graph.add_argument('inputs', nargs='+', metavar='MATRIX')
    to_graph.set_defaults(command_key='asm to-graph')
    from_graph = asm_commands.add_parser(
        'from-graph', parents=[parent], help='Coloured graph to matrix text')
    from_graph.add_argument('inputs', nargs='+', metavar='INPUT')
    from_graph.add_argument('--rows', help='Comma separated row vertices')
    from_graph.add_argument('--cols', help='Comma separated column vertices')
    from_graph.add_argument('--text', action='store_true',
                            help='Print the matrix as whitespace separated '
                                 'rows')
    from_graph.set_defaults(command_key='asm from-graph')

    oracle = commands.add_parser('oracle', help='Brute force references')
    oracle_commands = oracle.add_subparsers(dest='oracle_command',
                                            required=True)
    difference = oracle_commands.add_parser(
        'difference-k', parents=[parent], help='All difference-k colourings')
    difference.add_argument('inputs', nargs='+', metavar='INPUT')
    difference.add_argument('--k', type=int, default=1)
    difference.set_defaults(command_key='oracle difference-k')
    cycles = oracle_commands.add_parser(
        'cycles', parents=[parent], help='Common cycle classes')
    cycles.add_argument('inputs', nargs='+', metavar='INPUT')
    cycles.set_defaults(command_key='oracle cycles')
    configurable = oracle_commands.add_parser(
        'configurable', parents=[parent], help='Configurability')
    configurable.add_argument('inputs', nargs='+', metavar='INPUT')
    configurable.set_defaults(command_key='oracle configurable')
    return parser


def _options(args: argparse.Namespace) -> Dict:
    return {
        key: getattr(args, key, None)
        for key in ('format', 'k', 'method', 'n', 'rows', 'cols', 'text')
    }


def _run_all(command: str, inputs: Sequence[Optional[str]], options: Dict,
             jobs: int) -> List[TaskOutcome]:
    if jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            return list(executor.map(
                run_task, [command] * len(inputs), inputs,
                [options] * len(inputs)))
    return [run_task(command, path, options) for path in inputs]


def _exit_code(outcomes: List[TaskOutcome]) -> int:
    codes = {o.exit_code for o in outcomes}
    if EXIT_INVALID_INPUT in codes:
        return EXIT_INVALID_INPUT
    if EXIT_NOT_COLOURABLE in codes:
        return EXIT_NOT_COLOURABLE
    return EXIT_COLOURABLE


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line front end and returns its exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INVALID_INPUT if e.code else EXIT_COLOURABLE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr)

    started = time.monotonic()
    options = _options(args)
    outcomes = _run_all(args.command_key, args.inputs, options,
                        max(1, args.jobs))
    for outcome in outcomes:
        sys.stdout.write(outcome.output)
        sys.stderr.write(outcome.error)
    exit_code = _exit_code(outcomes)

    if args.report:
        report = RunReport(
            command=argv,
            version=PACKAGE_METADATA_PARSER.get_version(),
            inputs=[{'path': o.path, 'sha256': o.digest} for o in outcomes],
            outcomes=[o.payload for o in outcomes],
            exit_code=exit_code,
            elapsed_seconds=round(time.monotonic() - started, 6))
        with open(args.report, 'w', encoding='utf-8') as f:
            json.dump(report.to_json(), f, indent=2)
    return exit_code


if __name__ == '__main__':
    sys.exit(main())
