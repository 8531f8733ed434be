"""
Main Entry Point for the 5-Qubit SLOCC Invariants Engine
"""
import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from dotenv import load_dotenv

from src.characters import dim_invariants
from src.fingerprint import INVARIANT_NAMES, compare_table2, evaluate_invariants, fingerprint
from src.hilbert_series import HilbertSeriesData, dimension_reports, series_expand, validate_table
from src.reporting import InvariantReporter
from src.residue import ContourOrder, hilbert_series_residue
from src.states import load_state
from src.transvectant import ground_form
from verification.table_loader import TableLoader
from verification.trial_runner import TrialRunner

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = 'config/global_config.json'
EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2
METHODS = ('character', 'table', 'residue', 'all')
RESIDUE_QUBIT_LIMIT = 4


def setup_logging(level='INFO'):
    """File log plus stderr; stdout carries only reports"""
    Path('logs').mkdir(exist_ok=True)
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler('logs/invariants.log'),
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )


def env_flag(name):
    return os.getenv(name, '').strip().lower() in ('1', 'true', 'yes', 'on')


def load_config(path=None):
    """Load engine defaults from JSON"""
    path = path or os.getenv('INVARIANTS_CONFIG') or DEFAULT_CONFIG
    with open(path, 'r') as f:
        config = json.load(f)
    if not isinstance(config, dict):
        raise ValueError(f"Config {path} must hold a JSON object")
    logger.debug(f"Loaded config from {path}")
    return config


@dataclass
class CommandConfig:
    """Validated flags layered over the JSON defaults"""
    command: str
    action: str = None
    degree: int = None
    max_degree: int = None
    method: str = 'character'
    qubits: int = 5
    name: str = None
    state: str = None
    seed: int = None
    trials: int = None
    format: str = 'table'
    allow_long: bool = False
    show_structure: bool = False
    closed_form: bool = False
    report: str = None
    settings: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args, settings):
        output = settings.get('output', {})
        config = cls(
            command=args.command,
            action=getattr(args, 'action', None),
            degree=getattr(args, 'degree', None),
            max_degree=getattr(args, 'max_degree', None),
            method=getattr(args, 'method', 'character'),
            qubits=getattr(args, 'qubits', 5),
            name=getattr(args, 'name', None),
            state=getattr(args, 'state', None),
            seed=settings.get('seed', 7) if getattr(args, 'seed', None) is None else args.seed,
            trials=settings.get('trials', 25) if getattr(args, 'trials', None) is None else args.trials,
            format=args.format or output.get('format', 'table'),
            allow_long=getattr(args, 'allow_long', False) or env_flag('INVARIANTS_ALLOW_LONG'),
            show_structure=getattr(args, 'show_structure', False),
            closed_form=getattr(args, 'closed_form', False),
            report=getattr(args, 'report', None),
            settings=settings,
        )
        config.validate()
        return config

    def validate(self):
        if self.format not in ('table', 'json'):
            raise ValueError(f"Unknown output format {self.format!r}")
        if self.command == 'hilbert':
            if not 1 <= self.qubits <= 5:
                raise ValueError(f"--qubits must be in 1..5, got {self.qubits}")
            bound = self.degree if self.action == 'dim' else self.max_degree
            if bound is None or bound < 0:
                raise ValueError("A non-negative --degree / --max-degree is required")
            if self.method == 'table' and self.qubits != 5:
                raise ValueError("The table method only describes 5 qubits")
            if self.method == 'residue' and self.qubits > RESIDUE_QUBIT_LIMIT and not self.allow_long:
                raise ValueError(f"Residues for {self.qubits} qubits need --allow-long")
            if self.show_structure and self.method != 'table':
                raise ValueError("--show-structure applies to --method table")
        if self.command == 'check' and (self.trials < 1 or self.seed is None):
            raise ValueError("--trials must be positive and a seed is required")


def load_table_data(config):
    verbatim, correction = TableLoader(config.settings).load_table1()
    return HilbertSeriesData(verbatim).with_correction(correction)


def residue_coefficients(config, n_max):
    result = hilbert_series_residue(config.qubits, ContourOrder.default(config.qubits), config.allow_long)
    return result, result.series(n_max)


def run_hilbert(config, reporter):
    """Invariant dimensions by character sums, the published table, or residues"""
    n_max = config.degree if config.action == 'dim' else config.max_degree
    methods = [config.method]
    if config.method == 'all':
        methods = ['character'] + (['table'] if config.qubits == 5 else [])
        if config.qubits <= RESIDUE_QUBIT_LIMIT or config.allow_long:
            methods.append('residue')

    data = load_table_data(config) if 'table' in methods else None
    residue = residue_coefficients(config, n_max) if 'residue' in methods else None

    if config.method == 'all':
        reports = dimension_reports(n_max, data, residue[1] if residue else None, config.qubits)
        if config.action == 'dim':
            reports = reports[n_max:]
        print(reporter.dimension_reports(reports, config.qubits))
        return EXIT_OK if all(r.agreement for r in reports) else EXIT_FAILED

    if config.method == 'character':
        coefficients = [dim_invariants(d, config.qubits) for d in range(n_max + 1)]
    elif config.method == 'table':
        coefficients = series_expand(data, n_max)
    else:
        coefficients = residue[1]

    if config.action == 'dim':
        print(reporter.dimensions([(n_max, coefficients[n_max])], config.qubits, config.method))
    else:
        print(reporter.series(coefficients, config.qubits, config.method))
    if config.show_structure:
        print(reporter.structure(data))
    if config.closed_form and residue:
        print(reporter.closed_form(residue[0].to_sympy(), config.qubits))
    return EXIT_OK


def run_invariant(config, reporter):
    """Exact value of one invariant on a state file"""
    if config.name not in INVARIANT_NAMES:
        raise ValueError(f"--name must be one of {', '.join(INVARIANT_NAMES)}")
    psi = load_state(config.state)
    value = evaluate_invariants(ground_form(psi), [config.name])[config.name]
    print(reporter.invariant_value(config.name, value))
    return EXIT_OK


def run_fingerprint(config, reporter):
    psi = load_state(config.state)
    print(reporter.fingerprint(fingerprint(psi), Path(config.state).stem))
    return EXIT_OK


def run_check(config, reporter):
    """Seeded invariance or independence trials"""
    runner = TrialRunner.from_config(config.settings, seed=config.seed, trials=config.trials)
    if config.action == 'invariance':
        report = runner.run_invariance()
        print(reporter.invariance(report))
    else:
        report = runner.run_independence()
        print(reporter.independence(report))
    if config.report:
        runner.save_report(config.report)
    return EXIT_OK if report['passed'] else EXIT_FAILED


def run_validate(config, reporter):
    """Check the published tables against the engine"""
    loader = TableLoader(config.settings)
    if config.action == 'table1':
        verbatim, correction = loader.load_table1()
        max_degree = config.max_degree if config.max_degree is not None else config.settings.get('max_degree', 16)
        validation = validate_table(verbatim, correction, max_degree)
        print(reporter.table1(validation))
        return EXIT_OK if validation.passed else EXIT_FAILED

    table = loader.load_table2()
    states_dir = Path(config.settings.get('data', {}).get('states_dir', 'config/states'))
    computed = {label: fingerprint(load_state(states_dir / f"{label}.json")) for label in table['states']}
    mismatches = compare_table2(computed, table)
    for m in mismatches:
        logger.warning(f"Published table says {m['expected']} for {m['row']} on {m['state']}, computed {m['computed']}")
    print(reporter.table2(computed, table, mismatches))
    return EXIT_OK if not mismatches else EXIT_FAILED


def build_parser():
    parser = argparse.ArgumentParser(description='Exact SLOCC invariants and Hilbert series of 5-qubit systems')
    parser.add_argument('--config', help=f'Engine config JSON (default: {DEFAULT_CONFIG})')
    parser.add_argument('--format', choices=['table', 'json'], help='Output format')
    commands = parser.add_subparsers(dest='command', required=True)

    hilbert = commands.add_parser('hilbert', help='Invariant dimensions and Hilbert series')
    hilbert.add_argument('action', choices=['dim', 'series'])
    hilbert.add_argument('--degree', type=int, help='Degree for "dim"')
    hilbert.add_argument('--max-degree', type=int, help='Last degree for "series"')
    hilbert.add_argument('--method', choices=METHODS, default='character')
    hilbert.add_argument('--qubits', type=int, default=5)
    hilbert.add_argument('--allow-long', action='store_true', help='Permit 5-qubit residue runs')
    hilbert.add_argument('--show-structure', action='store_true',
                         help='Print primary/secondary invariant counts read off P/Q')
    hilbert.add_argument('--closed-form', action='store_true', help='Print the residue result as a rational function')

    invariant = commands.add_parser('invariant', help='Evaluate an invariant on a state file')
    invariant.add_argument('action', choices=['eval'])
    invariant.add_argument('--name', required=True, choices=INVARIANT_NAMES)
    invariant.add_argument('--state', required=True)

    fp = commands.add_parser('fingerprint', help='Nine-row covariant pattern of a state file')
    fp.add_argument('--state', required=True)

    check = commands.add_parser('check', help='Seeded invariance / independence trials')
    check.add_argument('action', choices=['invariance', 'independence'])
    check.add_argument('--seed', type=int)
    check.add_argument('--trials', type=int)
    check.add_argument('--report', help='Also save the JSON trial report here')

    validate = commands.add_parser('validate', help='Check the published tables')
    validate.add_argument('action', choices=['table1', 'table2'])
    validate.add_argument('--max-degree', type=int)

    return parser


COMMANDS = {
    'hilbert': run_hilbert,
    'invariant': run_invariant,
    'fingerprint': run_fingerprint,
    'check': run_check,
    'validate': run_validate,
}


def main(argv=None):
    load_dotenv()
    try:
        setup_logging(os.getenv('INVARIANTS_LOG_LEVEL', 'INFO'))
    except OSError as e:
        print(f"Cannot open logs/invariants.log: {e}", file=sys.stderr)
        return EXIT_INPUT

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    try:
        config = CommandConfig.from_args(args, load_config(args.config))
        reporter = InvariantReporter(config.format)
        return COMMANDS[config.command](config, reporter)
    except (ValueError, OSError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
