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
Text formats for quantitative databases and mining results.

Two database formats are read and written:

* `pairs`: one transaction per line as whitespace-separated `item:qty`
  tokens, together with a profit file holding one `item profit` per line.
* `spmf`: one transaction per line as `items : tu : utilities`, where the
  i-th utility belongs to the i-th item and the utilities sum to `tu`.

Lines starting with `#` and blank lines are ignored in every input.
"""

import io
import logging
import math
import os
from decimal import ROUND_HALF_EVEN, Decimal
from functools import reduce
from typing import Dict, Iterable, Iterator, List, Optional, TextIO, Tuple, Union

from openhuim.database.database import QuantitativeDatabase, build_database
from openhuim.database.errors import (EmptyDatabase, MalformedLine, MissingProfit,
                                      NonPositiveValue, SinkWriteError, UtilitySumMismatch)
from openhuim.miners.result import MiningStats, PatternResult

logger = logging.getLogger(__name__)

__all__ = ['ALLOWED_FORMATS', 'parse_profit_table', 'parse_quantity_pairs', 'parse_spmf_utility',
           'read_database', 'write_quantity_pairs', 'write_spmf_utility', 'format_kulc',
           'format_pattern', 'format_stats', 'format_results', 'format_sweep', 'write_results',
           'write_text']

ALLOWED_FORMATS = ['pairs', 'spmf']
KULC_QUANTUM = Decimal('0.000001')


def _data_lines(text: str) -> Iterator[Tuple[int, str]]:
    """Yields `(line_no, stripped_line)` for every non-comment, non-blank line."""
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        yield line_no, line


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise MalformedLine(line_no, f"{what} {token!r} is not an integer") from None


def _parse_positive(token: str, line_no: int, what: str) -> int:
    value = _parse_int(token, line_no, what)
    if value <= 0:
        raise NonPositiveValue(line_no, value)
    return value


def _parse_item(token: str, line_no: int) -> int:
    item = _parse_int(token, line_no, 'item')
    if item < 0:
        raise MalformedLine(line_no, f"item {token!r} must be a non-negative integer")
    return item


def parse_profit_table(profit_text: str) -> Tuple[Dict[int, int], Dict[int, int]]:
    """
    Parses `item profit` lines.

    Returns
    -------
    Tuple[Dict[int, int], Dict[int, int]]
        The profit of every item, and the line each item was declared on.
    """
    profits, declared_on = {}, {}
    for line_no, line in _data_lines(profit_text):
        tokens = line.split()
        if len(tokens) != 2:
            raise MalformedLine(line_no, "expected 'item profit'")
        item = _parse_item(tokens[0], line_no)
        if item in profits:
            raise MalformedLine(
                line_no, f"item {item} already has a profit on line {declared_on[item]}")
        profits[item] = _parse_positive(tokens[1], line_no, 'profit')
        declared_on[item] = line_no
    return profits, declared_on


def parse_quantity_pairs(text: str, profit_text: str) -> QuantitativeDatabase:
    """
    Parses a `pairs` dataset and its profit table. Transactions get tids
    1, 2, ... in the order of their lines.

    Raises
    ------
    MalformedLine, MissingProfit, NonPositiveValue, EmptyDatabase
    """
    profits, _ = parse_profit_table(profit_text)

    transactions = []
    for line_no, line in _data_lines(text):
        pairs = []
        for token in line.split():
            item_token, sep, quantity_token = token.partition(':')
            if not sep or not item_token or not quantity_token:
                raise MalformedLine(line_no, f"token {token!r} is not of the form item:qty")
            item = _parse_item(item_token, line_no)
            quantity = _parse_positive(quantity_token, line_no, 'quantity')
            if item not in profits:
                raise MissingProfit(item, line_no)
            pairs.append((item, quantity))
        transactions.append(pairs)

    if not transactions:
        raise EmptyDatabase()
    logger.debug(f"Parsed {len(transactions)} transactions and {len(profits)} profits")
    return build_database(transactions, profits)


def parse_spmf_utility(text: str) -> QuantitativeDatabase:
    """
    Parses an `spmf` dataset.

    The format carries one utility per item occurrence, not a quantity and a
    unit profit. The profit of an item is set to the greatest common divisor
    of all its utilities and each quantity to utility / profit, so every
    product profit * quantity equals the utility read. A repeated item on a
    line is merged by summing its utilities.

    Raises
    ------
    MalformedLine, NonPositiveValue, UtilitySumMismatch, EmptyDatabase
    """
    rows: List[List[Tuple[int, int]]] = []
    for line_no, line in _data_lines(text):
        parts = line.split(':')
        if len(parts) != 3:
            raise MalformedLine(line_no, "expected 'items : tu : utilities'")
        item_tokens, utility_tokens = parts[0].split(), parts[2].split()
        if not item_tokens:
            raise MalformedLine(line_no, "no item")
        if len(item_tokens) != len(utility_tokens):
            raise MalformedLine(
                line_no, f"{len(item_tokens)} items but {len(utility_tokens)} utilities")
        declared = _parse_positive(parts[1].strip(), line_no, 'transaction utility')
        items = [_parse_item(token, line_no) for token in item_tokens]
        utilities = [_parse_positive(token, line_no, 'utility') for token in utility_tokens]
        if sum(utilities) != declared:
            raise UtilitySumMismatch(line_no, declared, sum(utilities))
        merged: Dict[int, int] = {}
        for item, utility in zip(items, utilities):
            if item in merged:
                logger.debug(f"Line {line_no}: merging repeated item {item}")
            merged[item] = merged.get(item, 0) + utility
        rows.append(list(merged.items()))

    if not rows:
        raise EmptyDatabase()

    occurrences: Dict[int, List[int]] = {}
    for row in rows:
        for item, utility in row:
            occurrences.setdefault(item, []).append(utility)
    profits = {item: reduce(math.gcd, utilities) for item, utilities in occurrences.items()}

    transactions = [[(item, utility // profits[item]) for item, utility in row] for row in rows]
    logger.debug(f"Parsed {len(transactions)} spmf transactions over {len(profits)} items")
    return build_database(transactions, profits)


def read_database(path: Union[str, os.PathLike], fmt: str = 'pairs',
                  profits_path: Optional[Union[str, os.PathLike]] = None) -> QuantitativeDatabase:
    """Reads a database file in format `fmt`; `pairs` also needs `profits_path`."""
    if fmt not in ALLOWED_FORMATS:
        raise ValueError(f"format {fmt} is not recognised. Please use {ALLOWED_FORMATS}")
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    if fmt == 'spmf':
        return parse_spmf_utility(text)
    if profits_path is None:
        raise ValueError("The pairs format needs a profit table")
    with open(profits_path, encoding='utf-8') as handle:
        return parse_quantity_pairs(text, handle.read())


def write_quantity_pairs(db: QuantitativeDatabase) -> Tuple[str, str]:
    """The `pairs` dataset text and the profit table text of `db`."""
    text = ''.join(' '.join(f"{item}:{quantity}" for item, quantity in t.quantities.items()) + '\n'
                   for t in db)
    profit_text = ''.join(f"{item} {profit}\n" for item, profit in db.profits.items())
    return text, profit_text


def write_spmf_utility(db: QuantitativeDatabase) -> str:
    """The `spmf` text of `db`."""
    lines = []
    for transaction in db:
        utilities = [db.profits[item] * quantity
                     for item, quantity in transaction.quantities.items()]
        lines.append(f"{' '.join(map(str, transaction.items))}:"
                     f"{db.transaction_utilities[transaction.tid]}:"
                     f"{' '.join(map(str, utilities))}\n")
    return ''.join(lines)


def format_kulc(value: float) -> str:
    """Six decimals, rounding half to even on the exact value."""
    return str(Decimal(value).quantize(KULC_QUANTUM, rounding=ROUND_HALF_EVEN))


def format_pattern(pattern: PatternResult) -> str:
    return (f"{' '.join(map(str, pattern.itemset))} #UTIL: {pattern.utility} "
            f"#SUP: {pattern.support} #KULC: {format_kulc(pattern.kulc)}")


def format_stats(stats: MiningStats) -> List[str]:
    return ['# STATS:',
            f"# nodes_visited: {stats.nodes_visited}",
            f"# joins_performed: {stats.joins_performed}",
            f"# spk_prunes: {stats.spk_prunes}",
            f"# ubu_prunes: {stats.ubu_prunes}",
            f"# la_prunes: {stats.la_prunes}",
            f"# peak_live_lists: {stats.peak_live_lists}",
            f"# wall_time_ms: {stats.wall_time_ms:.3f}",
            f"# patterns_found: {stats.patterns_found}"]


def format_results(results: Iterable[PatternResult], stats: MiningStats) -> str:
    lines = [format_pattern(pattern) for pattern in results] + format_stats(stats)
    return '\n'.join(lines) + '\n'


def format_sweep(rows: Iterable[dict]) -> List[str]:
    """
    The `# SWEEP:` block, one line per threshold pair and strategy, with
    the absolute utility threshold in the first column.
    """
    lines = ['# SWEEP: min_util min_cor hui_count strategies patterns_found nodes_visited '
             'peak_live_lists wall_time_ms']
    for row in rows:
        for strategy, counts in row['strategies'].items():
            lines.append(f"# {row['threshold']} {row['min_cor']:g} {row['hui_count']} {strategy} "
                         f"{counts['patterns_found']} {counts['nodes_visited']} "
                         f"{counts['peak_live_lists']} {counts['wall_time_ms']:.3f}")
    return lines


def write_results(results: Iterable[PatternResult], stats: MiningStats,
                  sink: Union[str, os.PathLike, TextIO], extra_lines: Iterable[str] = ()) -> None:
    """
    Writes one line per pattern followed by the `# STATS:` block.

    Parameters
    ----------
    results: `Iterable[PatternResult]`
        Patterns in canonical order.
    stats: `MiningStats`
        Statistics of the run.
    sink: path or text stream
        A path is created or overwritten, UTF-8 with LF line endings.
    extra_lines: `Iterable[str]`
        Lines appended after the stats block.

    Raises
    ------
    SinkWriteError
    """
    text = format_results(results, stats) + ''.join(f"{line}\n" for line in extra_lines)
    write_text(text, sink)


def write_text(text: str, sink: Union[str, os.PathLike, TextIO]) -> None:
    """Writes `text` to a path or a text stream, raising `SinkWriteError` on failure."""
    try:
        if isinstance(sink, (str, os.PathLike)):
            with open(sink, 'w', encoding='utf-8', newline='\n') as handle:
                handle.write(text)
        else:
            sink.write(text)
            sink.flush()
    except (OSError, io.UnsupportedOperation, AttributeError) as error:
        raise SinkWriteError(getattr(sink, 'name', sink), error) from error
