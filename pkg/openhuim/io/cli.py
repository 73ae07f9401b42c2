#   Copyright 2022 Entropica Labs
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.


"""
Command-line driver: ``openhuim --input ... --min-util 20% --min-cor 0.7``.

Exit codes: 0 on success, 2 on a parse or validation error, 3 when
``--oracle`` finds a difference between the miner and the exhaustive
enumeration.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

from openhuim._version import __version__
from openhuim.database.database import QuantitativeDatabase
from openhuim.database.errors import MiningError
from openhuim.io.formats import (ALLOWED_FORMATS, format_sweep, read_database,
                                 write_quantity_pairs, write_results, write_spmf_utility,
                                 write_text)
from openhuim.oracle import brute_force_mine, diff_results, random_database, threshold_sweep
from openhuim.workflows.miner import CorrelatedUtilityMining
from openhuim.workflows.parameters.mining_parameters import (ALLOWED_BASELINE_GUARDS,
                                                             ALLOWED_ITEM_ORDERS,
                                                             ALLOWED_STRATEGIES, MiningParams)

logger = logging.getLogger(__name__)

PROG = 'openhuim'
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_ORACLE_MISMATCH = 3


class UsageError(Exception):
    """A bad flag value, reported with the flag it concerns."""

    def __init__(self, flag, message):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError('arguments', message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog=PROG,
        description="Mine correlated high-utility itemsets from a quantitative transaction database.")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")

    data = parser.add_argument_group('data')
    data.add_argument('--input', metavar='PATH', help="Dataset to mine")
    data.add_argument('--format', choices=ALLOWED_FORMATS, default='pairs',
                      help="Dataset format (default: %(default)s)")
    data.add_argument('--profits', metavar='PATH',
                      help="Profit table of a pairs dataset; with --gen, where to write it")

    mining = parser.add_argument_group('mining')
    mining.add_argument('--min-util', default='20%',
                        help="Minimum utility: 'X%%' of the total utility, or an absolute amount "
                             "(default: %(default)s)")
    mining.add_argument('--min-cor', type=float, default=0.0,
                        help="Minimum Kulc correlation in [0, 1] (default: %(default)s)")
    mining.add_argument('--strategies', choices=ALLOWED_STRATEGIES, default='sorted+la',
                        help="Pruning strategies (default: %(default)s)")
    mining.add_argument('--item-order', choices=ALLOWED_ITEM_ORDERS, default='support',
                        help="Processing order of the items (default: %(default)s)")
    mining.add_argument('--baseline-guard', choices=ALLOWED_BASELINE_GUARDS, default='utility',
                        help="Recursion guard without sorted Kulc pruning (default: %(default)s)")
    mining.add_argument('--oracle', action='store_true',
                        help="Check the result against exhaustive enumeration")
    mining.add_argument('--bench', type=int, metavar='N',
                        help="Mine N times and report min and median wall time")
    mining.add_argument('--sweep-min-util', metavar='LIST',
                        help="Comma-separated utility thresholds to compare every strategy on, "
                             "appended as a # SWEEP: block")
    mining.add_argument('--sweep-min-cor', metavar='LIST',
                        help="Comma-separated Kulc thresholds to compare every strategy on")

    gen = parser.add_argument_group('generation')
    gen.add_argument('--gen', action='store_true', help="Write a random database instead of mining")
    gen.add_argument('--seed', type=int, default=0)
    gen.add_argument('--n-items', type=int, default=10)
    gen.add_argument('--n-tx', type=int, default=30)
    gen.add_argument('--max-qty', type=int, default=5)
    gen.add_argument('--max-profit', type=int, default=10)
    gen.add_argument('--density', type=float, default=0.4)

    parser.add_argument('--output', metavar='PATH', help="Output file (default: standard output)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help="Log debugging information")
    verbosity.add_argument('-q', '--quiet', action='store_true', help="Only log errors")
    return parser


def _configure_logging(options):
    level = logging.DEBUG if options.verbose else logging.ERROR if options.quiet else logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s', force=True)


def _mining_params(options) -> MiningParams:
    try:
        min_util = MiningParams.parse_min_util(options.min_util)
    except ValueError as error:
        raise UsageError('--min-util', error) from None

    params = MiningParams(min_util=min_util)
    # item order last: it is only checked against the strategies and guard already set
    for flag, name, value in (('--min-cor', 'min_cor', options.min_cor),
                              ('--strategies', 'strategies', options.strategies),
                              ('--baseline-guard', 'baseline_guard', options.baseline_guard),
                              ('--item-order', 'item_order', options.item_order)):
        try:
            setattr(params, name, value)
        except (TypeError, ValueError) as error:
            raise UsageError(flag, error) from None
    return params


def _sweep_thresholds(options, params: MiningParams):
    """
    The utility and Kulc thresholds of the sweep, None without sweep flags. A
    flag left out keeps the mined value.
    """
    if not (options.sweep_min_util or options.sweep_min_cor):
        return None
    min_utils, min_cors = [params.min_util], [params.min_cor]
    if options.sweep_min_util:
        try:
            min_utils = [MiningParams.parse_min_util(token)
                         for token in options.sweep_min_util.split(',')]
        except ValueError as error:
            raise UsageError('--sweep-min-util', error) from None
    if options.sweep_min_cor:
        min_cors = []
        for token in options.sweep_min_cor.split(','):
            try:
                min_cors.append(MiningParams(min_cor=float(token)).min_cor)
            except ValueError as error:
                raise UsageError('--sweep-min-cor', error) from None
    return min_utils, min_cors


def _generate(options) -> int:
    db = random_database(options.seed, options.n_items, options.n_tx,
                         options.max_qty, options.max_profit, options.density)
    sink = options.output or sys.stdout
    if options.format == 'spmf':
        write_text(write_spmf_utility(db), sink)
        return EXIT_OK
    if not options.profits:
        raise UsageError('--profits', "the pairs format needs a path for the generated profit table")
    text, profit_text = write_quantity_pairs(db)
    write_text(text, sink)
    write_text(profit_text, options.profits)
    return EXIT_OK


def _check_oracle(db: QuantitativeDatabase, params: MiningParams, patterns) -> List[str]:
    expected = brute_force_mine(db, params)
    differences = diff_results(expected, patterns)
    for difference in differences:
        logger.error(f"oracle: {difference}")
    return differences


def _mine(options) -> int:
    if not options.input:
        raise UsageError('--input', "a dataset is required unless --gen is given")
    if options.format == 'pairs' and not options.profits:
        raise UsageError('--profits', "the pairs format needs a profit table")
    if options.bench is not None and options.bench < 1:
        raise UsageError('--bench', f"the number of repetitions must be positive, got {options.bench}")

    params = _mining_params(options)
    sweep = _sweep_thresholds(options, params)
    db = read_database(options.input, options.format, options.profits)

    workflow = CorrelatedUtilityMining()
    workflow.params = params
    workflow.compile(db, verbose=options.verbose)

    extra_lines = []
    if options.bench:
        bench = workflow.benchmark(options.bench)
        stats = bench['stats']
        extra_lines = [f"# bench_repetitions: {options.bench}",
                       f"# bench_min_ms: {bench['min'] * 1000:.3f}",
                       f"# bench_median_ms: {bench['median'] * 1000:.3f}"]
    else:
        stats = workflow.mine().stats
    patterns = workflow.results.patterns

    if sweep:
        extra_lines += format_sweep(threshold_sweep(db, *sweep))

    write_results(patterns, stats, options.output or sys.stdout, extra_lines)

    if options.oracle and _check_oracle(db, params, patterns):
        print(f"{PROG}: error: --oracle: the miner and the exhaustive enumeration disagree",
              file=sys.stderr)
        return EXIT_ORACLE_MISMATCH
    return EXIT_OK


def run_cli(args: Optional[Sequence[str]] = None) -> int:
    """
    Runs the command line `args` (default: `sys.argv[1:]`) and returns the
    exit code.
    """
    parser = build_parser()
    try:
        options = parser.parse_args(args)
    except UsageError as error:
        print(f"{PROG}: error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exit_request:
        # --help and --version
        return exit_request.code or EXIT_OK

    _configure_logging(options)
    try:
        return _generate(options) if options.gen else _mine(options)
    except (UsageError, MiningError, ValueError, OSError) as error:
        print(f"{PROG}: error: {error}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())


if __name__ == '__main__':
    main()
