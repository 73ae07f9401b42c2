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
Scalar measures over a quantitative database: item and itemset utilities,
transaction utility, transaction-weighted utilization (TWU), support and the
Kulczynski (Kulc) correlation.
"""

import math
from functools import reduce
from typing import Dict, Iterable, NamedTuple, Sequence

import numpy as np

from .database.database import QuantitativeDatabase
from .database.errors import (InvalidParams, ItemNotInTransaction,
                              ItemsetNotContained, ZeroSupportMember)
from .database.helper_functions import canonical_itemset


class Tidset(NamedTuple):
    """Ascending identifiers of the transactions containing `item`."""
    item: int
    tids: np.ndarray

    @property
    def support(self) -> int:
        return int(self.tids.size)


class DatabaseScan(NamedTuple):
    """Everything gathered in the first pass over the database."""
    total_utility: int
    twus: Dict[int, int]
    tidsets: Dict[int, Tidset]


def item_utility(db: QuantitativeDatabase, item: int, tid: int) -> int:
    """
    Utility of `item` in transaction `tid`: its unit profit times its
    purchased quantity.

    Raises
    ------
    UnknownTid, ItemNotInTransaction
    """
    transaction = db.transaction(tid)
    return db.profits[item] * transaction.quantity(item)


def itemset_utility_in_tx(db: QuantitativeDatabase, itemset: Iterable[int], tid: int) -> int:
    """
    Utility of `itemset` in transaction `tid`. The empty itemset has utility 0.

    Raises
    ------
    UnknownTid, ItemsetNotContained
    """
    itemset = canonical_itemset(itemset)
    transaction = db.transaction(tid)
    try:
        return sum(db.profits[item] * transaction.quantity(item) for item in itemset)
    except ItemNotInTransaction:
        raise ItemsetNotContained(itemset, tid) from None


def containing_tids(db: QuantitativeDatabase, itemset: Iterable[int]) -> np.ndarray:
    """Ascending tids of the transactions containing every member of `itemset`."""
    itemset = canonical_itemset(itemset)
    if not itemset:
        return np.asarray(db.tids, dtype=np.int64)
    tid_arrays = [np.asarray(db.item_tids.get(item, ()), dtype=np.int64) for item in itemset]
    return reduce(lambda left, right: np.intersect1d(left, right, assume_unique=True), tid_arrays)


def itemset_utility(db: QuantitativeDatabase, itemset: Iterable[int]) -> int:
    """
    Utility of `itemset` summed over every transaction containing it; 0 when
    the itemset never occurs.
    """
    itemset = canonical_itemset(itemset)
    if not itemset:
        raise InvalidParams("The itemset must not be empty")
    return sum(itemset_utility_in_tx(db, itemset, int(tid))
               for tid in containing_tids(db, itemset))


def transaction_utility(db: QuantitativeDatabase, tid: int) -> int:
    """
    Total utility of transaction `tid`.

    Raises
    ------
    UnknownTid
    """
    db.transaction(tid)
    return db.transaction_utilities[tid]


def twu(db: QuantitativeDatabase, itemset: Iterable[int]) -> int:
    """Sum of the utilities of the transactions containing `itemset`."""
    itemset = canonical_itemset(itemset)
    if not itemset:
        raise InvalidParams("The itemset must not be empty")
    return sum(db.transaction_utilities[int(tid)] for tid in containing_tids(db, itemset))


def support(db: QuantitativeDatabase, itemset: Iterable[int]) -> int:
    """Number of transactions containing `itemset`."""
    return int(containing_tids(db, itemset).size)


def kulc_from_supports(sup: int, member_supports: Sequence[int]) -> float:
    """
    Kulczynski correlation of a k-itemset of support `sup` whose members have
    supports `member_supports`: the mean of sup / sup(i_j).

    The exact rational value is rounded once to the nearest float, so the
    result does not depend on the order of the members and never increases
    when an itemset is extended with an item of larger support.
    """
    if len(member_supports) == 0:
        raise InvalidParams("Kulc is undefined for the empty itemset")
    denominator = math.prod(member_supports)
    numerator = sum(denominator // member_sup for member_sup in member_supports)
    return (sup * numerator) / (len(member_supports) * denominator)


def kulc(db: QuantitativeDatabase, itemset: Iterable[int], sup_of_itemset: int) -> float:
    """
    Kulczynski correlation of `itemset`, given its support. The supports of
    the members are taken over the whole database.

    Raises
    ------
    ZeroSupportMember
        When a member never occurs.
    """
    itemset = canonical_itemset(itemset)
    member_supports = []
    for item in itemset:
        member_sup = len(db.item_tids.get(item, ()))
        if member_sup == 0:
            raise ZeroSupportMember(item)
        member_supports.append(member_sup)
    return kulc_from_supports(sup_of_itemset, member_supports)


def tidsets(db: QuantitativeDatabase) -> Dict[int, Tidset]:
    """The Tidset of every item of the database."""
    return {item: Tidset(item, np.asarray(tids, dtype=np.int64))
            for item, tids in db.item_tids.items()}


def scan_database(db: QuantitativeDatabase) -> DatabaseScan:
    """
    One pass over the database collecting TU, the TWU of every item and the
    Tidset of every item.
    """
    twus: Dict[int, int] = {}
    for transaction in db:
        tu = db.transaction_utilities[transaction.tid]
        for item in transaction.items:
            twus[item] = twus.get(item, 0) + tu
    return DatabaseScan(total_utility=db.total_utility,
                        twus=dict(sorted(twus.items())),
                        tidsets=tidsets(db))
