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
The `CorrelatedUtilityMining` workflow: configure thresholds and strategies,
compile against a database, then mine.
"""

import logging
from typing import Optional

import numpy as np

from openhuim.database.database import QuantitativeDatabase
from openhuim.database.helper_functions import check_kwargs
from openhuim.miners.logger_mining import bench_logger
from openhuim.miners.result import MiningResult, MiningStats
from openhuim.miners.search import CorrelatedUtilityMiner
from openhuim.workflows.parameters.mining_parameters import MiningParams

logger = logging.getLogger(__name__)


class CorrelatedUtilityMining:
    """
    Workflow for mining correlated high-utility itemsets.

    Attributes
    ----------
    params: `MiningParams`
        Thresholds and pruning strategies of the run.
    miner: `CorrelatedUtilityMiner`
        Set by `compile`.
    results: `MiningResult`
        Set by `mine`.

    Examples
    --------
    >>> from openhuim.database import ecommerce_example
    >>> w = CorrelatedUtilityMining()
    >>> w.set_thresholds(min_util=0.2, min_cor=0.7)
    >>> w.compile(ecommerce_example())
    >>> result = w.mine()
    >>> len(w.results)
    7
    """

    def __init__(self, track_history: bool = False):
        self.params = MiningParams()
        self.track_history = track_history
        self.compiled = False
        self.miner: Optional[CorrelatedUtilityMiner] = None
        self.results: Optional[MiningResult] = None
        self.bench_stats: Optional[dict] = None

    def __repr__(self):
        return f"CorrelatedUtilityMining({self.params!r}, compiled={self.compiled})"

    def set_thresholds(self, **kwargs):
        """
        Set the utility and correlation thresholds.

        Parameters
        ----------
            min_util: `float`, `Fraction`, `AbsoluteUtility` or `str`
                Share of TU in [0, 1], an absolute money amount, or a string
                such as `'20%'` or `'30'`.
            min_cor: `float`
                Minimum Kulc, in [0, 1].
        """
        min_util, min_cor = check_kwargs(['min_util', 'min_cor'],
                                         [self.params.min_util, self.params.min_cor], **kwargs)
        if isinstance(min_util, str):
            min_util = MiningParams.parse_min_util(min_util)
        self.params.min_util = min_util
        self.params.min_cor = min_cor
        self.compiled = False
        return None

    def set_strategies(self, **kwargs):
        """
        Set the pruning strategies and the item order.

        Parameters
        ----------
            strategies: `str`
                One of `'ubu'`, `'sorted'`, `'la'`, `'sorted+la'`.
            item_order: `str`
                One of `'support'`, `'twu'`, `'lexicographic'`.
            baseline_guard: `str`
                `'utility'` or `'literal'`.
        """
        strategies, item_order, baseline_guard = check_kwargs(
            ['strategies', 'item_order', 'baseline_guard'],
            [self.params.strategies, self.params.item_order, self.params.baseline_guard],
            **kwargs)
        # a fresh object so that incompatible intermediate states never arise
        self.params = MiningParams(min_util=self.params.min_util,
                                   min_cor=self.params.min_cor,
                                   strategies=strategies,
                                   item_order=item_order,
                                   baseline_guard=baseline_guard)
        self.compiled = False
        return None

    def compile(self, db: QuantitativeDatabase, verbose: bool = False):
        """
        Binds the workflow to a database.

        Parameters
        ----------
        db: `QuantitativeDatabase`
            The database to mine.
        verbose: `bool`
            Log a summary of the configuration at INFO level.
        """
        if not isinstance(db, QuantitativeDatabase):
            raise TypeError("The database must be a QuantitativeDatabase")

        self.miner = CorrelatedUtilityMiner(db, self.params, track_history=self.track_history)
        self.compiled = True

        if verbose:
            logger.info(f"Compiled {db!r} with min_util={self.params.min_util}, "
                        f"min_cor={self.params.min_cor}, strategies={self.params.strategies}, "
                        f"item_order={self.params.item_order}")
        return None

    def mine(self) -> MiningResult:
        """Runs the search and stores its outcome in `self.results`."""
        if not self.compiled:
            raise ValueError('Please compile the workflow before mining!')
        self.results = self.miner.run()
        return self.results

    def benchmark(self, repetitions: int) -> dict:
        """
        Mines `repetitions` times in sequence.

        Returns
        -------
        dict
            `min` and `median` wall time in seconds, all `wall_times`, and the
            `stats` of the fastest repetition. `self.results` holds the last run.
        """
        if not self.compiled:
            raise ValueError('Please compile the workflow before benchmarking it!')
        if isinstance(repetitions, bool) or not isinstance(repetitions, int) or repetitions < 1:
            raise ValueError(f"repetitions must be a positive integer. {repetitions!r} was provided")

        log = bench_logger()
        for _ in range(repetitions):
            result = self.mine()
            log.log_variables({'wall_time': result.stats.wall_time, 'stats': result.stats})

        wall_times = np.asarray(log.wall_time.history, dtype=float)
        fastest: MiningStats = log.stats.value
        self.bench_stats = {'min': float(np.min(wall_times)),
                            'median': float(np.median(wall_times)),
                            'wall_times': wall_times.tolist(),
                            'stats': fastest}
        logger.info(f"{repetitions} repetitions: min {self.bench_stats['min'] * 1000:.1f} ms, "
                    f"median {self.bench_stats['median'] * 1000:.1f} ms")
        return self.bench_stats
