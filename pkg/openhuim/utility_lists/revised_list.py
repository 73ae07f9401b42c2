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
Revised utility-lists: a vertical representation of an itemset holding its
support count and one `(tid, iu, ru)` tuple per containing transaction.

Lists are built once per promising item from a database scan, and for longer
itemsets by joining two sibling lists that share a prefix.
"""

from bisect import bisect_left
from itertools import accumulate
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from ..database.database import QuantitativeDatabase
from ..database.errors import InvalidParams, ItemsetNotContained
from ..measures import DatabaseScan

#: one list is probed with binary search when it is at least this many times
#: longer than the other; otherwise both are merged linearly
BINARY_SEARCH_RATIO = 16

ALLOWED_ORDER_RULES = ['support', 'twu', 'lexicographic']

__all__ = ['RulEntry', 'TotalOrder', 'RevisedUtilityList', 'find_entry', 'remaining_utility',
           'build_initial_lists', 'construct_join', 'ALLOWED_ORDER_RULES', 'BINARY_SEARCH_RATIO']


class RulEntry(NamedTuple):
    tid: int
    iu: int
    ru: int


class TotalOrder:
    """
    Processing order of the items. Items are ranked by an ascending key,
    ties being broken by ascending item id.

    Parameters
    ----------
    ranked_items: `Sequence[int]`
        The items, first to last.
    rule: `str`
        Name of the rule that produced the ranking.
    """

    def __init__(self, ranked_items: Sequence[int], rule: str = 'support'):
        if rule not in ALLOWED_ORDER_RULES:
            raise ValueError(f"rule {rule} is not recognised. Please use {ALLOWED_ORDER_RULES}")
        self.rule = rule
        self.items = tuple(ranked_items)
        self.rank = {item: position for position, item in enumerate(self.items)}
        if len(self.rank) != len(self.items):
            raise ValueError("The ranked items must be distinct")

    @classmethod
    def from_scan(cls, scan: DatabaseScan, items: Iterable[int], rule: str = 'support') -> 'TotalOrder':
        """Ranks `items` with `rule` using the supports and TWUs of `scan`."""
        if rule == 'support':
            def key(item): return (scan.tidsets[item].support, item)
        elif rule == 'twu':
            def key(item): return (scan.twus[item], item)
        elif rule == 'lexicographic':
            def key(item): return item
        else:
            raise ValueError(f"rule {rule} is not recognised. Please use {ALLOWED_ORDER_RULES}")
        return cls(sorted(items, key=key), rule)

    def __contains__(self, item):
        return item in self.rank

    def __len__(self):
        return len(self.items)

    def __repr__(self):
        return f"TotalOrder({self.rule}: {' < '.join(map(str, self.items))})"

    def sort(self, itemset: Iterable[int]) -> Tuple[int, ...]:
        try:
            return tuple(sorted(itemset, key=self.rank.__getitem__))
        except KeyError as unknown:
            raise InvalidParams(f"Item {unknown.args[0]} is not ranked by {self!r}") from None


class RevisedUtilityList:
    """
    Revised utility-list of an itemset.

    Parameters
    ----------
    itemset: `Tuple[int, ...]`
        The itemset, sorted by the total order.
    entries: `List[RulEntry]`
        One entry per containing transaction, by ascending tid.

    Attributes
    ----------
    sup: `int`
        Support count, the number of entries.
    utility: `int`
        IU, the sum of the `iu` of the entries; the utility of the itemset.
    remaining_utility: `int`
        RU, the sum of the `ru` of the entries.
    """

    __slots__ = ('itemset', 'entries', 'tids', 'sup', 'utility', 'remaining_utility',
                 '_cumulative_bound')

    def __init__(self, itemset: Sequence[int], entries: Optional[List[RulEntry]] = None):
        self.itemset = tuple(itemset)
        self.entries = entries if entries is not None else []
        self.tids = [entry.tid for entry in self.entries]
        self.sup = len(self.entries)
        self.utility = sum(entry.iu for entry in self.entries)
        self.remaining_utility = sum(entry.ru for entry in self.entries)
        self._cumulative_bound = None

    @property
    def upper_bound(self) -> int:
        """IU + RU, bounding the utility of every extension of the itemset."""
        return self.utility + self.remaining_utility

    @property
    def last_item(self) -> Optional[int]:
        return self.itemset[-1] if self.itemset else None

    def cumulative_bound(self) -> List[int]:
        """Prefix sums of `iu + ru`: element `k` covers the first `k` entries."""
        if self._cumulative_bound is None:
            self._cumulative_bound = [0] + list(accumulate(e.iu + e.ru for e in self.entries))
        return self._cumulative_bound

    def __len__(self):
        return self.sup

    def __bool__(self):
        return True

    def __repr__(self):
        return (f"RevisedUtilityList({list(self.itemset)}, sup={self.sup}, "
                f"IU={self.utility}, RU={self.remaining_utility})")


def find_entry(rul: RevisedUtilityList, tid: int, lo: int = 0) -> Optional[RulEntry]:
    """
    Binary search for the entry of transaction `tid`, or `None` when the
    itemset does not occur in it.
    """
    position = bisect_left(rul.tids, tid, lo)
    if position < rul.sup and rul.tids[position] == tid:
        return rul.entries[position]
    return None


def remaining_utility(db: QuantitativeDatabase, order: TotalOrder, itemset: Iterable[int], tid: int) -> int:
    """
    Utility in transaction `tid` of the ranked items that come after every
    member of `itemset` in `order`.

    Raises
    ------
    ItemsetNotContained
    """
    itemset = order.sort(itemset)
    transaction = db.transaction(tid)
    if any(item not in transaction for item in itemset):
        raise ItemsetNotContained(itemset, tid)
    last_rank = order.rank[itemset[-1]] if itemset else -1
    return sum(db.profits[item] * quantity
               for item, quantity in transaction.quantities.items()
               if item in order.rank and order.rank[item] > last_rank)


def build_initial_lists(db: QuantitativeDatabase, order: TotalOrder,
                        promising_items: Iterable[int]) -> Dict[int, RevisedUtilityList]:
    """
    Builds the revised utility-list of every promising item in a single scan.
    Remaining utilities only account for promising items.

    Returns
    -------
    Dict[int, RevisedUtilityList]
        The lists keyed by item, in the order of `order`.
    """
    promising = set(promising_items)
    missing = promising - set(order.rank)
    if missing:
        raise InvalidParams(f"Items {sorted(missing)} are not ranked by the total order")

    entries: Dict[int, List[RulEntry]] = {item: [] for item in order.items if item in promising}
    rank = order.rank
    profits = db.profits

    for transaction in db:
        revised = sorted(((rank[item], item, profits[item] * quantity)
                          for item, quantity in transaction.quantities.items()
                          if item in promising))
        remaining = sum(utility for _, _, utility in revised)
        for _, item, utility in revised:
            remaining -= utility
            entries[item].append(RulEntry(transaction.tid, utility, remaining))

    return {item: RevisedUtilityList((item,), item_entries)
            for item, item_entries in entries.items()}


def construct_join(prefix: Optional[RevisedUtilityList],
                   xa: RevisedUtilityList,
                   xb: RevisedUtilityList,
                   la_threshold: int = 0,
                   la_enabled: bool = False) -> Optional[RevisedUtilityList]:
    """
    Joins the lists of two extensions `Xa` and `Xb` of the prefix `X` into the
    list of `Xab`.

    For every transaction containing both, the entry utility is
    `Ea.iu + Eb.iu - E.iu` (prefix utility counted once) and the remaining
    utility is `Eb.ru`. With `la_enabled`, the running bound
    `Xa.IU + Xa.RU` minus `Ea.iu + Ea.ru` of each transaction missing from
    `Xb` is checked against `la_threshold`; the join is abandoned and `None`
    returned as soon as the bound falls below it.

    Parameters
    ----------
    prefix: `RevisedUtilityList`, optional
        List of X; `None` or a list of the empty itemset when X is empty.
    xa, xb: `RevisedUtilityList`
        Lists of Xa and Xb, with Xb after Xa in the total order.
    la_threshold: `int`
        Absolute utility threshold used by the look-ahead check.
    la_enabled: `bool`
        Whether the look-ahead check runs.

    Returns
    -------
    RevisedUtilityList or None
    """
    with_prefix = prefix is not None and len(prefix.itemset) > 0
    itemset = xa.itemset + (xb.itemset[-1],)

    if xa.sup >= BINARY_SEARCH_RATIO * max(xb.sup, 1):
        joined = _probe_longer_xa(prefix if with_prefix else None, xa, xb, la_threshold, la_enabled)
    else:
        joined = _scan_xa(prefix if with_prefix else None, xa, xb, la_threshold, la_enabled)

    if joined is None:
        return None
    return RevisedUtilityList(itemset, joined)


def _combine(prefix, ea, eb, prefix_lo):
    if prefix is None:
        return RulEntry(ea.tid, ea.iu + eb.iu, eb.ru), prefix_lo
    position = bisect_left(prefix.tids, ea.tid, prefix_lo)
    e = prefix.entries[position]
    return RulEntry(ea.tid, ea.iu + eb.iu - e.iu, eb.ru), position + 1


def _scan_xa(prefix, xa, xb, la_threshold, la_enabled):
    # walk Xa in tid order; Xb is merged linearly or probed when much longer
    probe = xb.sup >= BINARY_SEARCH_RATIO * max(xa.sup, 1)
    bound = xa.upper_bound
    joined = []
    b_pos = 0
    prefix_lo = 0
    b_tids = xb.tids
    n_b = xb.sup

    for ea in xa.entries:
        tid = ea.tid
        if probe:
            b_pos = bisect_left(b_tids, tid, b_pos)
        else:
            while b_pos < n_b and b_tids[b_pos] < tid:
                b_pos += 1

        if b_pos < n_b and b_tids[b_pos] == tid:
            entry, prefix_lo = _combine(prefix, ea, xb.entries[b_pos], prefix_lo)
            joined.append(entry)
            b_pos += 1
        elif la_enabled:
            bound -= ea.iu + ea.ru
            if bound < la_threshold:
                return None

    return joined


def _probe_longer_xa(prefix, xa, xb, la_threshold, la_enabled):
    # walk the short Xb list and locate each tid in Xa; Xa entries skipped
    # between two hits are exactly the unmatched ones
    cumulative = xa.cumulative_bound() if la_enabled else None
    bound = xa.upper_bound
    joined = []
    a_pos = 0
    prefix_lo = 0
    a_tids = xa.tids

    for eb in xb.entries:
        position = bisect_left(a_tids, eb.tid, a_pos)
        if la_enabled:
            bound -= cumulative[position] - cumulative[a_pos]
            if bound < la_threshold:
                return None
        if position < xa.sup and a_tids[position] == eb.tid:
            entry, prefix_lo = _combine(prefix, xa.entries[position], eb, prefix_lo)
            joined.append(entry)
            a_pos = position + 1
        else:
            a_pos = position
        if a_pos >= xa.sup:
            break

    if la_enabled:
        bound -= cumulative[xa.sup] - cumulative[a_pos]
        if bound < la_threshold:
            return None
    return joined
