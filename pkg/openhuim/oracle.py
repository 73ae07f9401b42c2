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
Exhaustive reference miner and random database generator, used to check the
one-phase miner.

`brute_force_mine` computes every measure straight from the database through
`openhuim.measures`; it never touches utility-lists or the search code.
"""

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence

import numpy as np
import scipy.sparse

from openhuim.database.database import QuantitativeDatabase, build_database
from openhuim.database.errors import InvalidParams, UniverseTooLarge
from openhuim.measures import containing_tids, itemset_utility, kulc
from openhuim.miners.result import MiningResult, PatternResult
from openhuim.miners.search import CorrelatedUtilityMiner
from openhuim.workflows.parameters.mining_parameters import ALLOWED_STRATEGIES, MiningParams

logger = logging.getLogger(__name__)

DEFAULT_UNIVERSE_CAP = 20


def brute_force_mine(db: QuantitativeDatabase, params: MiningParams,
                     cap: int = DEFAULT_UNIVERSE_CAP) -> List[PatternResult]:
    """
    Enumerates every itemset occurring in the database and keeps those whose
    utility reaches the threshold of `params` and whose Kulc reaches
    `params.min_cor`.

    Parameters
    ----------
    db: `QuantitativeDatabase`
        The database to mine.
    params: `MiningParams`
        Only the thresholds are used; strategies are irrelevant here.
    cap: `int`
        Largest item universe accepted.

    Returns
    -------
    List[PatternResult]
        The patterns by ascending size, then by item ids.

    Raises
    ------
    UniverseTooLarge
        When the database has more than `cap` distinct items.
    """
    items = db.items
    if len(items) > cap:
        raise UniverseTooLarge(len(items), cap)

    threshold = params.resolve_threshold(db.total_utility)
    patterns = []
    for size in range(1, len(items) + 1):
        occurring = 0
        for itemset in combinations(items, size):
            sup = int(containing_tids(db, itemset).size)
            if sup == 0:
                continue
            occurring += 1
            utility = itemset_utility(db, itemset)
            correlation = kulc(db, itemset, sup)
            if utility >= threshold and correlation >= params.min_cor:
                patterns.append(PatternResult(itemset, utility, sup, correlation))
        # no k-itemset occurs, so no larger one does
        if occurring == 0:
            break

    logger.debug(f"Exhaustive enumeration over {len(items)} items found {len(patterns)} patterns")
    return patterns


def _positive_int(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidParams(f"{name} must be a positive integer. {value!r} was provided")
    return int(value)


def random_database(seed: int, n_items: int, n_tx: int, max_qty: int, max_profit: int,
                    density: float) -> QuantitativeDatabase:
    """
    Generates a random quantitative database.

    Item `i` of `1..n_items` appears in each transaction with probability
    close to `density`, with a quantity drawn uniformly from
    `1..max_qty`; unit profits are uniform in `1..max_profit`. Transactions
    left empty are dropped. The same arguments always give the same database.

    Raises
    ------
    InvalidParams
        On a non-positive count or bound, a density outside (0, 1], or when
        every generated transaction is empty.
    """
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or seed < 0:
        raise InvalidParams(f"seed must be a non-negative integer. {seed!r} was provided")
    n_items = _positive_int(n_items, 'n_items')
    n_tx = _positive_int(n_tx, 'n_tx')
    max_qty = _positive_int(max_qty, 'max_qty')
    max_profit = _positive_int(max_profit, 'max_profit')
    if isinstance(density, bool) or not isinstance(density, (int, float)) or not 0 < density <= 1:
        raise InvalidParams(f"density must be in (0, 1]. {density!r} was provided")

    rng = np.random.default_rng(seed)
    profit_values = rng.integers(1, max_profit + 1, size=n_items)
    profits = {item: int(profit) for item, profit in zip(range(1, n_items + 1), profit_values)}

    quantities = scipy.sparse.random(n_tx, n_items, density=density, format='csr',
                                     random_state=rng,
                                     data_rvs=lambda k: rng.integers(1, max_qty + 1, size=k))

    transactions = []
    for row in range(n_tx):
        start, stop = quantities.indptr[row], quantities.indptr[row + 1]
        pairs = [(int(column) + 1, int(quantity))
                 for column, quantity in zip(quantities.indices[start:stop],
                                             quantities.data[start:stop])]
        if pairs:
            transactions.append(sorted(pairs))

    dropped = n_tx - len(transactions)
    if dropped:
        logger.info(f"Dropped {dropped} empty generated transactions")
    if not transactions:
        raise InvalidParams(
            f"No transaction was generated with n_tx={n_tx}, n_items={n_items}, density={density}")
    return build_database(transactions, profits)


def diff_results(expected: Iterable[PatternResult], actual: Iterable[PatternResult],
                 kulc_tol: float = 1e-9) -> List[str]:
    """
    Differences between two pattern collections, one message per itemset;
    an empty list when they agree.
    """
    expected_by_set: Dict[tuple, PatternResult] = {p.itemset: p for p in expected}
    actual_by_set: Dict[tuple, PatternResult] = {p.itemset: p for p in actual}

    differences = []
    for itemset in sorted(expected_by_set.keys() | actual_by_set.keys(),
                          key=lambda itemset: (len(itemset), itemset)):
        want = expected_by_set.get(itemset)
        got = actual_by_set.get(itemset)
        label = ' '.join(map(str, itemset))
        if got is None:
            differences.append(f"missing {{{label}}}")
        elif want is None:
            differences.append(f"unexpected {{{label}}}")
        else:
            if want.utility != got.utility:
                differences.append(f"{{{label}}}: utility {got.utility} != {want.utility}")
            if want.support != got.support:
                differences.append(f"{{{label}}}: support {got.support} != {want.support}")
            if abs(want.kulc - got.kulc) > kulc_tol:
                differences.append(f"{{{label}}}: kulc {got.kulc!r} != {want.kulc!r}")
    return differences


def strategy_sweep(db: QuantitativeDatabase, min_util, min_cor: float,
                   strategies: Sequence[str] = tuple(ALLOWED_STRATEGIES)) -> Mapping[str, MiningResult]:
    """
    Mines `db` once per pruning strategy, with identical thresholds.

    Returns
    -------
    Mapping[str, MiningResult]
        The result of each strategy, stats included.
    """
    sweep = {}
    for strategy in strategies:
        params = MiningParams(min_util=min_util, min_cor=min_cor, strategies=strategy)
        sweep[strategy] = CorrelatedUtilityMiner(db, params).run()
        logger.debug(f"{strategy}: {sweep[strategy].stats}")
    return sweep


def threshold_sweep(db: QuantitativeDatabase, min_utils: Sequence, min_cors: Sequence[float],
                    strategies: Sequence[str] = tuple(ALLOWED_STRATEGIES)) -> List[dict]:
    """
    Mines `db` for every pair of thresholds in `min_utils` x `min_cors`,
    once per strategy.

    Parameters
    ----------
    db: `QuantitativeDatabase`
    min_utils: `Sequence`
        Utility thresholds, relative shares or `AbsoluteUtility` amounts.
    min_cors: `Sequence[float]`
        Kulc thresholds.
    strategies: `Sequence[str]`
        Pruning strategies to compare.

    Returns
    -------
    List[dict]
        One row per threshold pair, in sweep order, with the resolved
        `threshold`, the `hui_count` mined at Kulc 0 and, under
        `strategies`, the `patterns_found`, `nodes_visited`,
        `peak_live_lists` and `wall_time_ms` of each strategy.
    """
    if not strategies:
        raise InvalidParams("The sweep needs at least one strategy")

    rows = []
    for min_util in min_utils:
        huis = CorrelatedUtilityMiner(db, MiningParams(min_util=min_util, min_cor=0.0,
                                                       strategies=strategies[0])).run()
        for min_cor in min_cors:
            row = {'min_util': min_util, 'min_cor': min_cor, 'threshold': huis.threshold,
                   'hui_count': len(huis), 'strategies': {}}
            for strategy, result in strategy_sweep(db, min_util, min_cor, strategies).items():
                row['strategies'][strategy] = {'patterns_found': result.stats.patterns_found,
                                               'nodes_visited': result.stats.nodes_visited,
                                               'peak_live_lists': result.stats.peak_live_lists,
                                               'wall_time_ms': result.stats.wall_time_ms}
            logger.info(f"sweep min_util={min_util} min_cor={min_cor}: {row['hui_count']} HUIs")
            rows.append(row)
    return rows
