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


from typing import FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Tuple

from .logger_mining import Logger, SEARCH_COUNTERS
from ..database.helper_functions import convert2serialize


class _PatternFields(NamedTuple):
    itemset: Tuple[int, ...]
    utility: int
    support: int
    kulc: float


class PatternResult(_PatternFields):
    """
    A discovered correlated high-utility itemset.

    Attributes
    ----------
    itemset: `Tuple[int, ...]`
        Item ids in ascending order.
    utility: `int`
        u(X), summed over the whole database.
    support: `int`
        Number of transactions containing the itemset.
    kulc: `float`
        Kulczynski correlation of the itemset.
    """
    __slots__ = ()

    def __new__(cls, itemset, utility, support, kulc):
        itemset = tuple(itemset)
        if list(itemset) != sorted(set(itemset)):
            raise ValueError(f"itemset {itemset} must list distinct ids in ascending order")
        return super().__new__(cls, itemset, utility, support, kulc)

    @property
    def sort_key(self):
        return (len(self.itemset), self.itemset)


def canonical_sort(patterns: Iterable[PatternResult]) -> List[PatternResult]:
    """Ascending itemset size, then lexicographic by item id."""
    return sorted(patterns, key=lambda pattern: pattern.sort_key)


class MiningStats:
    """Counters and timings of a mining run."""

    def __init__(self,
                 nodes_visited: int = 0,
                 joins_performed: int = 0,
                 spk_prunes: int = 0,
                 ubu_prunes: int = 0,
                 la_prunes: int = 0,
                 patterns_found: int = 0,
                 wall_time: float = 0.0,
                 peak_live_lists: int = 0):
        self.nodes_visited = nodes_visited
        self.joins_performed = joins_performed
        self.spk_prunes = spk_prunes
        self.ubu_prunes = ubu_prunes
        self.la_prunes = la_prunes
        self.patterns_found = patterns_found
        self.wall_time = wall_time
        self.peak_live_lists = peak_live_lists

    @classmethod
    def from_logger(cls, log: Logger, wall_time: float) -> 'MiningStats':
        counters = {name: getattr(log, name).value or 0 for name in SEARCH_COUNTERS}
        return cls(wall_time=wall_time, peak_live_lists=log.live_lists.value or 0, **counters)

    @property
    def wall_time_ms(self) -> float:
        return self.wall_time * 1000.0

    def asdict(self):
        return convert2serialize(self)

    def __repr__(self):
        fields = ', '.join(f"{key}={value!r}" for key, value in self.asdict().items())
        return f"MiningStats({fields})"


class MiningResult:
    '''
    A class to handle the outcome of a mining run.

    Parameters
    ----------
    patterns: `Iterable[PatternResult]`
        The discovered itemsets; stored in canonical order.
    stats: `MiningStats`
        Counters of the search.
    params: `MiningParams`
        The parameters of the run.
    total_utility: `int`
        TU of the mined database.
    threshold: `int`
        The resolved absolute utility threshold.
    promising_items: `Tuple[int, ...]`
        Items whose TWU reaches the threshold, in processing order.
    live_list_history: `List[int]`, optional
        Number of live lists after each logged step, when tracked.
    '''

    def __init__(self, patterns: Iterable[PatternResult], stats: MiningStats, params=None,
                 total_utility: Optional[int] = None, threshold: Optional[int] = None,
                 promising_items: Tuple[int, ...] = (), live_list_history: Optional[List[int]] = None):
        self.patterns = tuple(canonical_sort(patterns))
        self.stats = stats
        self.params = params
        self.total_utility = total_utility
        self.threshold = threshold
        self.promising_items = tuple(promising_items)
        self.live_list_history = live_list_history or []

    def __len__(self):
        return len(self.patterns)

    def __iter__(self) -> Iterator[PatternResult]:
        return iter(self.patterns)

    def __repr__(self):
        return (f"MiningResult({len(self.patterns)} patterns, threshold={self.threshold}, "
                f"nodes_visited={self.stats.nodes_visited})")

    def itemsets(self) -> FrozenSet[Tuple[int, ...]]:
        return frozenset(pattern.itemset for pattern in self.patterns)

    def as_set(self) -> FrozenSet[PatternResult]:
        return frozenset(self.patterns)

    def get(self, itemset: Iterable[int]) -> Optional[PatternResult]:
        key = tuple(sorted(itemset))
        for pattern in self.patterns:
            if pattern.itemset == key:
                return pattern
        return None

    def filter_by(self, min_kulc: float = 0.0, min_utility: int = 0) -> List[PatternResult]:
        """Patterns meeting stricter thresholds than the ones mined with."""
        return [pattern for pattern in self.patterns
                if pattern.kulc >= min_kulc and pattern.utility >= min_utility]

    def asdict(self):
        return convert2serialize({
            'patterns': [pattern._asdict() for pattern in self.patterns],
            'stats': self.stats.asdict(),
            'params': self.params.asdict() if self.params is not None else None,
            'total_utility': self.total_utility,
            'threshold': self.threshold,
            'promising_items': list(self.promising_items),
        })
