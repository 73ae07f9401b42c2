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
Depth-first search of the set-enumeration tree for correlated high-utility
itemsets, over revised utility-lists.

The tree is walked with an explicit stack, so the depth of the search is
only limited by memory.
"""

import logging
import time
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from ..database.database import QuantitativeDatabase
from ..measures import DatabaseScan, kulc_from_supports, scan_database
from ..utility_lists.revised_list import (RevisedUtilityList, TotalOrder,
                                          build_initial_lists, construct_join)
from ..workflows.parameters.mining_parameters import MiningParams
from .logger_mining import Logger, search_logger
from .result import MiningResult, MiningStats, PatternResult

logger = logging.getLogger(__name__)


class SearchNode(NamedTuple):
    """A tree node: its list (`None` at the root) and the lists of its extensions."""
    rul: Optional[RevisedUtilityList]
    extensions: List[RevisedUtilityList]


class SearchAccumulator:
    """
    Mutable state of a search: emitted patterns, counters and the logger.

    Parameters
    ----------
    threshold: `int`
        Resolved absolute utility threshold.
    item_supports: `Dict[int, int]`
        Support of every item over the whole database.
    log: `Logger`, optional
        Statistics logger; a fresh `search_logger()` by default.
    """

    def __init__(self, threshold: int, item_supports: Dict[int, int], log: Optional[Logger] = None):
        self.threshold = threshold
        self.item_supports = item_supports
        self.log = log if log is not None else search_logger()
        self.patterns: List[PatternResult] = []
        self.nodes_visited = 0
        self.joins_performed = 0
        self.spk_prunes = 0
        self.ubu_prunes = 0
        self.la_prunes = 0
        self.live_lists = 0

    def kulc(self, rul: RevisedUtilityList) -> float:
        return kulc_from_supports(rul.sup, [self.item_supports[item] for item in rul.itemset])

    def record(self):
        self.log.log_variables({'nodes_visited': self.nodes_visited,
                                'joins_performed': self.joins_performed,
                                'spk_prunes': self.spk_prunes,
                                'ubu_prunes': self.ubu_prunes,
                                'la_prunes': self.la_prunes,
                                'patterns_found': len(self.patterns),
                                'live_lists': self.live_lists})

    def record_live_lists(self):
        self.log.log_variables({'live_lists': self.live_lists})


def search(prefix: Optional[RevisedUtilityList],
           extensions: Sequence[RevisedUtilityList],
           params: MiningParams,
           accumulator: SearchAccumulator) -> SearchAccumulator:
    """
    Explores the subtree of `prefix` whose first-level nodes are `extensions`.

    A node is emitted when its Kulc reaches `min_cor` and its utility reaches
    the threshold. Its children are only built when its utility bound
    IU + RU reaches the threshold and, if the Kulc guard is active, when its
    Kulc reaches `min_cor`. Joins returning no list are discarded.

    Parameters
    ----------
    prefix: `RevisedUtilityList`, optional
        List of the common prefix, `None` at the root.
    extensions: `Sequence[RevisedUtilityList]`
        Lists of the prefix's extensions, in processing order.
    params: `MiningParams`
        Thresholds and strategies.
    accumulator: `SearchAccumulator`
        Receives the patterns and counters.

    Returns
    -------
    SearchAccumulator
        The updated accumulator.
    """
    threshold = accumulator.threshold
    min_cor = params.min_cor
    kulc_guard = params.kulc_guard
    la_enabled = params.la

    accumulator.live_lists += len(extensions)
    # each frame holds a node and the position of its next extension to visit
    stack: List[list] = [[SearchNode(prefix, list(extensions)), 0]]

    while stack:
        frame = stack[-1]
        (node_prefix, siblings), index = frame
        if index == len(siblings):
            stack.pop()
            accumulator.live_lists -= len(siblings)
            continue
        frame[1] = index + 1

        xa = siblings[index]
        accumulator.nodes_visited += 1
        kulc = accumulator.kulc(xa)

        if kulc >= min_cor and xa.utility >= threshold:
            accumulator.patterns.append(
                PatternResult(tuple(sorted(xa.itemset)), xa.utility, xa.sup, kulc))

        if kulc_guard and kulc < min_cor:
            accumulator.spk_prunes += 1
            accumulator.record_live_lists()
            continue
        if xa.upper_bound < threshold:
            accumulator.ubu_prunes += 1
            accumulator.record_live_lists()
            continue

        children = []
        for xb in siblings[index + 1:]:
            accumulator.joins_performed += 1
            xab = construct_join(node_prefix, xa, xb, threshold, la_enabled)
            if xab is None:
                accumulator.la_prunes += 1
            elif xab.sup > 0:
                children.append(xab)

        if children:
            accumulator.live_lists += len(children)
            stack.append([SearchNode(xa, children), 0])
        accumulator.record_live_lists()

    return accumulator


class CorrelatedUtilityMiner:
    """
    One-phase miner of correlated high-utility itemsets.

    The pipeline scans the database once for TU, the TWU and the Tidset of
    every item, keeps the items whose TWU reaches the threshold, ranks them,
    builds their revised utility-lists and searches the enumeration tree.

    Parameters
    ----------
    db: `QuantitativeDatabase`
        The database to mine.
    params: `MiningParams`
        Thresholds and pruning strategies.
    track_history: `bool`
        Keep the number of live lists after every logged step.
    """

    def __init__(self, db: QuantitativeDatabase, params: MiningParams, track_history: bool = False):
        if not isinstance(db, QuantitativeDatabase):
            raise TypeError("The input parameter db must be of type QuantitativeDatabase")
        if not isinstance(params, MiningParams):
            raise TypeError("The input parameter params must be of type MiningParams")
        self.db = db
        self.params = params
        self.track_history = track_history
        self.scan: Optional[DatabaseScan] = None
        self.order: Optional[TotalOrder] = None
        self.threshold: Optional[int] = None

    def __repr__(self):
        return f"CorrelatedUtilityMiner({self.db!r}, strategies={self.params.strategies})"

    def prepare(self) -> Dict[int, RevisedUtilityList]:
        """Scans the database, filters and ranks the items, builds the initial lists."""
        self.scan = scan_database(self.db)
        self.threshold = self.params.resolve_threshold(self.scan.total_utility)
        promising = [item for item, item_twu in self.scan.twus.items() if item_twu >= self.threshold]
        self.order = TotalOrder.from_scan(self.scan, promising, self.params.item_order)
        logger.debug(f"TU={self.scan.total_utility}, threshold={self.threshold}, "
                     f"{len(promising)}/{len(self.scan.twus)} promising items, order {self.order}")
        return build_initial_lists(self.db, self.order, promising)

    def run(self) -> MiningResult:
        start = time.perf_counter()
        initial_lists = self.prepare()
        item_supports = {item: tidset.support for item, tidset in self.scan.tidsets.items()}
        accumulator = SearchAccumulator(self.threshold, item_supports,
                                        search_logger(self.track_history))
        accumulator.record()

        search(None, list(initial_lists.values()), self.params, accumulator)

        accumulator.record()
        stats = MiningStats.from_logger(accumulator.log, time.perf_counter() - start)
        logger.info(f"Found {stats.patterns_found} patterns in {stats.wall_time_ms:.1f} ms "
                    f"({stats.nodes_visited} nodes, {stats.joins_performed} joins, "
                    f"strategies {self.params.strategies})")
        return MiningResult(accumulator.patterns, stats, self.params,
                            total_utility=self.scan.total_utility,
                            threshold=self.threshold,
                            promising_items=self.order.items,
                            live_list_history=accumulator.log.live_lists.history)


def mine(db: QuantitativeDatabase, params: MiningParams) -> Tuple[Tuple[PatternResult, ...], MiningStats]:
    """
    Discovers every itemset whose utility reaches the threshold of `params`
    and whose Kulc reaches `params.min_cor`.

    Returns
    -------
    Tuple[Tuple[PatternResult, ...], MiningStats]
        The patterns in canonical order, and the statistics of the search.
    """
    result = CorrelatedUtilityMiner(db, params).run()
    return result.patterns, result.stats
