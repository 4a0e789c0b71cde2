"""
Main orchestrator for Adjust
Command-line front end: check, optimal, enumerate, variance and config
"""

import argparse
import json
import logging
import sys
from datetime import datetime
from itertools import permutations
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from colorama import Fore, Style, init
from tqdm import tqdm

from src.adjustment.criteria import (
    AdjustmentChecker,
    Comparison,
    canonical_adjustment,
    exists_adjustment,
    graphical_compare,
)
from src.adjustment.efficiency_graph import build_h1
from src.adjustment.query import Query
from src.config import Config
from src.errors import AdjustmentError, InvalidAdjustmentSet, ParseError, PreconditionViolation
from src.finders.base_finder import NO_ADMISSIBLE_SET, CutResult
from src.finders.global_finder import CONDITION_ANCESTRAL, CONDITION_FULLY_OBSERVED, GlobalOptimalFinder
from src.finders.minimal_finder import OptimalMinimalFinder
from src.finders.minimum_finder import OptimalMinimumFinder
from src.finders.report import AdjustmentReport, analyze
from src.graphs.dag import Dag, VertexSet
from src.oracle.discrete_bn import DiscreteBN, Policy, joint_distribution
from src.oracle.enumeration import EnumerationMode, enumerate_adjustment_sets
from src.oracle.random_models import random_bn
from src.oracle.variance import influence_variance
from src.utils.file_manager import FileManager
from src.utils.formats import QuerySpec, render_set, split_labels

# Initialize colorama for cross-platform colored output
init()

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_NO_ADMISSIBLE_SET = 3

SET_TOKENS = ('@canonical', '@o', '@o-min', '@o-m')
BAR_FORMAT = '{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}]'


class AdjustmentApp:
    def __init__(self, debug_mode: bool = False, json_mode: bool = False):
        self.debug_mode = debug_mode
        self.json_mode = json_mode
        self.finders = {
            'o': GlobalOptimalFinder(),
            'o-min': OptimalMinimalFinder(),
            'o-m': OptimalMinimumFinder(),
        }
        self.file_manager = FileManager()
        self._analysis: Optional[AdjustmentReport] = None
        self._setup_logging(debug_mode)

    def _setup_logging(self, debug_mode: bool = False):
        """Setup logging configuration"""
        level = logging.INFO if debug_mode else getattr(logging, Config.LOG_LEVEL, logging.WARNING)
        handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        if debug_mode:
            log_dir = Path(Config.LOG_DIR)
            log_dir.mkdir(parents=True, exist_ok=True)
            timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
            handlers.insert(0, logging.FileHandler(log_dir / f'adjust_{timestamp}.log', encoding='utf-8'))

        logging.basicConfig(
            level=level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=handlers
        )

    def say(self, message: str, color: str = ''):
        """Human-readable output, silenced under --json"""
        if not self.json_mode:
            print(f"{color}{message}{Style.RESET_ALL}" if color else message)

    # ------------------------------------------------------------------ inputs

    def load_graph(self, path: str) -> Dag:
        g = self.file_manager.load_graph(path)
        if g is None:
            raise AdjustmentError(f"Could not read graph file {path}")
        return g

    def resolve_query(self, g: Dag, args: argparse.Namespace) -> Query:
        """Query file first, then command-line flags on top"""
        spec = QuerySpec()
        if args.query:
            spec = self.file_manager.load_query(args.query)
            if spec is None:
                raise AdjustmentError(f"Could not read query file {args.query}")

        exposure = args.exposure or spec.exposure
        outcome = args.outcome or spec.outcome
        if not exposure or not outcome:
            raise PreconditionViolation("Both an exposure and an outcome are required (--exposure/--outcome or --query)")
        policy = split_labels(args.policy) if args.policy is not None else spec.policy
        observed = split_labels(args.observed) if args.observed is not None else spec.observed
        return Query.from_labels(g, exposure, outcome, policy, observed)

    def analysis(self, g: Dag, q: Query) -> AdjustmentReport:
        if self._analysis is None:
            self._analysis = analyze(g, q)
        return self._analysis

    def resolve_set(self, g: Dag, q: Query, token: str) -> VertexSet:
        """Labels separated by commas, "" for the empty set, or one of the @ tokens"""
        token = token.strip()
        if not token.startswith('@'):
            return g.ids_of(split_labels(token))
        if token not in SET_TOKENS:
            raise PreconditionViolation(f"Unknown set token {token} (use {', '.join(SET_TOKENS)})")
        if token == '@canonical':
            return canonical_adjustment(g, q)
        report = self.analysis(g, q)
        result: CutResult = {'@o': report.o, '@o-min': report.o_min, '@o-m': report.o_m}[token]
        if not result.admissible:
            raise InvalidAdjustmentSet(f"{token} does not exist: {NO_ADMISSIBLE_SET}")
        return result.vertices

    # ---------------------------------------------------------------- commands

    def cmd_check(self, g: Dag, q: Query, args: argparse.Namespace) -> Dict[str, object]:
        z = self.resolve_set(g, q, args.set)
        certificate = AdjustmentChecker(g, q).certificate(z)
        rendered = render_set(g.labels, z)
        if certificate.valid:
            self.say(f"✅ {rendered} is a valid adjustment set", Fore.GREEN)
        else:
            self.say(f"❌ {rendered} is not a valid adjustment set: {certificate.violated_clause.value}", Fore.RED)
        return {
            'exit_code': EXIT_OK if certificate.valid else EXIT_NEGATIVE,
            'set': list(g.labels_of(z)),
            'valid': certificate.valid,
            'violated_clause': certificate.violated_clause.value,
        }

    def cmd_optimal(self, g: Dag, q: Query, args: argparse.Namespace) -> Dict[str, object]:
        if args.which == 'all':
            report = self.analysis(g, q)
            results = {'o': report.o, 'o-min': report.o_min, 'o-m': report.o_m}
            eg = report.efficiency_graph
            payload = report.to_dict(g)
        else:
            eg = build_h1(g, q) if exists_adjustment(g, q) else None
            results = {args.which: self.finders[args.which].find(g, q, eg)}
            payload = {'admissible': eg is not None,
                       'results': {name: result.to_dict() for name, result in results.items()}}

        names = {'o': 'O', 'o-min': 'O_min', 'o-m': 'O_m'}
        for name, result in results.items():
            color = Fore.GREEN if result.admissible else Fore.RED
            self.say(f"{names[name]:<6} = {result.render()}", color)
            if name == 'o' and result.admissible and not result.global_guaranteed:
                self.say(f"⚠️ O is not guaranteed to be globally optimal: neither "
                         f"{CONDITION_ANCESTRAL} nor {CONDITION_FULLY_OBSERVED} holds", Fore.YELLOW)
            elif name == 'o' and result.admissible:
                self.say(f"   globally optimal since {result.condition}", Fore.CYAN)
            elif name == 'o-m' and result.admissible:
                self.say(f"   minimum cut size {result.cut_size}", Fore.CYAN)

        if args.export_h1:
            if eg is None:
                self.say("⚠️ No efficiency graph to export: no admissible set", Fore.YELLOW)
            elif self.file_manager.export_ugraph(eg.h1, args.export_h1):
                self.say(f"📝 H1 written to {args.export_h1}", Fore.CYAN)
            else:
                raise AdjustmentError(f"Could not write {args.export_h1}")

        payload['exit_code'] = EXIT_OK if payload['admissible'] else EXIT_NO_ADMISSIBLE_SET
        return payload

    def cmd_enumerate(self, g: Dag, q: Query, args: argparse.Namespace) -> Dict[str, object]:
        mode = EnumerationMode[args.mode.upper()]
        sets = enumerate_adjustment_sets(g, q, mode, cap=args.cap, progress=not self.json_mode)
        for z in sets:
            self.say(render_set(g.labels, z))
        self.say(f"📊 {len(sets)} {mode.value.lower()} adjustment sets", Fore.BLUE)
        return {
            'exit_code': EXIT_OK,
            'mode': mode.value,
            'count': len(sets),
            'sets': [list(g.labels_of(z)) for z in sets],
        }

    def load_bn(self, g: Dag, args: argparse.Namespace) -> DiscreteBN:
        if args.bn:
            bn = self.file_manager.load_bn(args.bn, g)
            if bn is None:
                raise AdjustmentError(f"Could not read BN file {args.bn}")
            return bn
        return random_bn(g, args.random, args.cardinality, args.epsilon)

    def cmd_variance(self, g: Dag, q: Query, args: argparse.Namespace) -> Dict[str, object]:
        bn = self.load_bn(g, args)
        if args.save_bn and not self.file_manager.save_bn(bn, args.save_bn):
            raise AdjustmentError(f"Could not write {args.save_bn}")

        if args.static_state is not None:
            policy = Policy.static(bn, q, args.static_state)
            policy_info = {'kind': 'static', 'state': args.static_state}
        else:
            seed = args.policy_seed if args.policy_seed is not None else (args.random or 0)
            policy = Policy.random(bn, q, seed)
            policy_info = {'kind': 'random', 'seed': seed}

        joint = joint_distribution(bn)
        checker = AdjustmentChecker(g, q)
        tokens = args.sets if args.sets else list(SET_TOKENS)

        rows = []
        with tqdm(total=len(tokens), desc="Computing variances", disable=self.json_mode,
                  bar_format=BAR_FORMAT) as pbar:
            for token in tokens:
                row: Dict[str, object] = {'token': token, 'set': None, 'chi': None, 'sigma2': None, 'error': None}
                try:
                    z = self.resolve_set(g, q, token)
                    row['set'] = list(g.labels_of(z))
                    report = influence_variance(bn, q, policy, z, joint=joint, checker=checker)
                    row.update(chi=report.chi, sigma2=report.sigma2, psi_mean=report.psi_mean, _z=z)
                    pbar.set_postfix_str(f"{Fore.GREEN}✅{Style.RESET_ALL}")
                except AdjustmentError as e:
                    row['error'] = str(e)
                    pbar.set_postfix_str(f"{Fore.RED}❌{Style.RESET_ALL}")
                rows.append(row)
                pbar.update(1)

        self.say(f"\n{Fore.BLUE}📊 Policy {policy_info}{Style.RESET_ALL}")
        for row in rows:
            if row['error'] is None:
                self.say(f"  {row['token']:<12} {render_set(g.labels, row['_z']):<24} "
                         f"χ = {row['chi']:.10f}  σ² = {row['sigma2']:.10f}")
            else:
                self.say(f"  {row['token']:<12} ❌ {row['error']}", Fore.RED)

        comparisons = []
        computed = [row for row in rows if row['error'] is None]
        for better, worse in permutations(computed, 2):
            if better['_z'] == worse['_z']:
                continue
            verdict = graphical_compare(g, q, better['_z'], worse['_z'])
            status = 'OK'
            if verdict is Comparison.G_NOT_WORSE and better['sigma2'] > worse['sigma2'] + Config.VARIANCE_TOLERANCE:
                status = 'INTERNAL-ERROR'
                logger.error(f"❌ Graphical certificate violated: {better['set']} vs {worse['set']}")
            comparisons.append({'better': better['set'], 'worse': worse['set'],
                                'graphical': verdict.value, 'status': status})
            if verdict is Comparison.G_NOT_WORSE:
                color = Fore.GREEN if status == 'OK' else Fore.RED
                self.say(f"  {render_set(g.labels, better['_z'])} ⊴ {render_set(g.labels, worse['_z'])}: "
                         f"{verdict.value} [{status}]", color)

        failed = any(row['error'] for row in rows) or any(c['status'] != 'OK' for c in comparisons)
        for row in rows:
            row.pop('_z', None)
        return {
            'exit_code': EXIT_NEGATIVE if failed else EXIT_OK,
            'policy': policy_info,
            'rows': rows,
            'comparisons': comparisons,
        }

    # ----------------------------------------------------------------- driver

    def run(self, args: argparse.Namespace) -> int:
        """Run one command and return its exit code"""
        if args.command == 'config':
            if not self.json_mode:
                Config.print_config()
            valid = Config.validate() if not self.json_mode else True
            return self._finish(args, {'command': 'config', 'exit_code': EXIT_OK if valid else EXIT_INPUT_ERROR,
                                       'settings': {key: getattr(Config, key) for key in dir(Config)
                                                    if key.isupper()}})

        commands = {
            'check': self.cmd_check,
            'optimal': self.cmd_optimal,
            'enumerate': self.cmd_enumerate,
            'variance': self.cmd_variance,
        }
        try:
            g = self.load_graph(args.graph)
            q = self.resolve_query(g, args)
            self.say(f"🔍 {g.labels[q.a]} -> {g.labels[q.y]}, policy {render_set(g.labels, q.l)}", Fore.BLUE)
            payload = commands[args.command](g, q, args)
            payload = {'command': args.command, 'query': q.describe(g), **payload}
        except AdjustmentError as e:
            self.say(f"❌ {type(e).__name__}: {e}", Fore.RED)
            error = {'type': type(e).__name__, 'message': str(e)}
            if isinstance(e, ParseError):
                error['line'] = e.line
            payload = {'command': args.command, 'exit_code': EXIT_INPUT_ERROR, 'error': error}
        return self._finish(args, payload)

    def _finish(self, args: argparse.Namespace, payload: Dict[str, object]) -> int:
        if self.json_mode:
            print(json.dumps(payload, indent=2, ensure_ascii=False))
        if getattr(args, 'report', None):
            path = self.file_manager.write_report(payload, args.report)
            if path:
                self.say(f"📝 Report written to {path}", Fore.CYAN)
        return int(payload['exit_code'])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Emit a JSON document instead of text')
    common.add_argument('--debug', action='store_true', help='Verbose logging, also written under logs/')
    common.add_argument('--report', metavar='FILE', help='Also save the JSON document (bare names go to OUTPUT_DIR)')

    query = argparse.ArgumentParser(add_help=False)
    query.add_argument('--graph', required=True, metavar='FILE', help='Graph file (.g text or .json)')
    query.add_argument('--query', metavar='FILE', help='Query file with exposure/outcome/policy/observed lines')
    query.add_argument('--exposure', help='Exposure (treatment) label')
    query.add_argument('--outcome', help='Outcome label')
    query.add_argument('--policy', help='Policy covariates, comma separated')
    query.add_argument('--observed', help='Observed vertices, comma separated (default: all non-hidden)')

    parser = argparse.ArgumentParser(prog='adjust', description='Optimal adjustment sets for dynamic treatment regimes')
    subparsers = parser.add_subparsers(dest='command', required=True)

    check = subparsers.add_parser('check', parents=[common, query], help='Check one candidate adjustment set')
    check.add_argument('--set', required=True, help='Candidate set: labels, "" for empty, or an @ token')

    optimal = subparsers.add_parser('optimal', parents=[common, query], help='Optimal adjustment sets')
    optimal.add_argument('--which', choices=['o', 'o-min', 'o-m', 'all'], default='all')
    optimal.add_argument('--export-h1', metavar='FILE', help='Write the efficiency graph as node/link lines')

    enumerate_ = subparsers.add_parser('enumerate', parents=[common, query], help='List adjustment sets by brute force')
    enumerate_.add_argument('--mode', choices=['all', 'minimal', 'minimum'], default='all')
    enumerate_.add_argument('--cap', type=int, default=None, help='Candidate-pool cap (default: ENUMERATION_CAP)')

    variance = subparsers.add_parser('variance', parents=[common, query], help='Exact asymptotic variances')
    source = variance.add_mutually_exclusive_group(required=True)
    source.add_argument('--bn', metavar='FILE', help='Bayesian network file')
    source.add_argument('--random', type=int, metavar='SEED', help='Generate a random BN from this seed')
    variance.add_argument('--cardinality', type=int, default=None, help='States per vertex for --random')
    variance.add_argument('--epsilon', type=float, default=None, help='Positivity floor for --random')
    variance.add_argument('--set', dest='sets', action='append',
                          help='Set to evaluate (repeatable); default: @canonical @o @o-min @o-m')
    variance.add_argument('--static-state', type=int, default=None, help='Point-mass policy on this treatment state')
    variance.add_argument('--policy-seed', type=int, default=None, help='Seed of the random L-dependent policy')
    variance.add_argument('--save-bn', metavar='FILE', help='Write the BN used')

    subparsers.add_parser('config', parents=[common], help='Show and validate the configuration')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    app = AdjustmentApp(debug_mode=args.debug, json_mode=args.json)
    return app.run(args)


if __name__ == '__main__':
    sys.exit(main())
