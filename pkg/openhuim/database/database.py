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
In-memory model of a quantitative transaction database: unit profits,
transactions with purchase quantities, and the database itself.

Money is always a python `int` expressed in minimal currency units, so that
every utility comparison is exact.
"""

import logging
import numbers
from collections import OrderedDict
from types import MappingProxyType
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (EmptyDatabase, ItemNotInTransaction, MissingProfit,
                     NonPositiveProfit, NonPositiveQuantity, UnknownTid)
from .helper_functions import as_item_id, convert2serialize

logger = logging.getLogger(__name__)


def _as_int(value, name):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"The input parameter {name} must be of type int. {value!r} was provided")
    return int(value)


class ProfitTable(Mapping):
    """
    Unit profit of every item, in minimal currency units.

    Parameters
    ----------
    entries: `Mapping[int, int]`
        Maps each item identifier to its strictly positive unit profit.
    """

    def __init__(self, entries: Mapping):
        if isinstance(entries, ProfitTable):
            entries = entries._entries
        if not isinstance(entries, Mapping):
            raise TypeError("The input parameter entries must be a mapping from item to profit")

        checked = {}
        for item, profit in entries.items():
            item = as_item_id(item)
            profit = _as_int(profit, 'profit')
            if profit <= 0:
                raise NonPositiveProfit(item, profit)
            checked[item] = profit

        self._entries = MappingProxyType(dict(sorted(checked.items())))

    def __getitem__(self, item):
        try:
            return self._entries[item]
        except KeyError:
            raise MissingProfit(item) from None

    def __contains__(self, item):
        return item in self._entries

    def get(self, item, default=None):
        return self._entries.get(item, default)

    def __iter__(self):
        return iter(self._entries)

    def __len__(self):
        return len(self._entries)

    def __repr__(self):
        return f"ProfitTable({dict(self._entries)})"

    def asdict(self):
        return dict(self._entries)


class Transaction:
    """
    A single purchase record.

    Parameters
    ----------
    tid: `int`
        Transaction identifier.
    items: `Iterable[Tuple[int, int]]`
        `(item, quantity)` pairs. Repeated items are merged by summing their
        quantities.
    """

    __slots__ = ('_tid', '_quantities')

    def __init__(self, tid: int, items: Iterable[Tuple[int, int]]):
        tid = _as_int(tid, 'tid')

        quantities = {}
        for pair in items:
            try:
                item, quantity = pair
            except (TypeError, ValueError):
                raise TypeError(
                    f"Transaction {tid}: items must be (item, quantity) pairs, got {pair!r}") from None
            item = as_item_id(item)
            quantity = _as_int(quantity, 'quantity')
            if quantity < 1:
                raise NonPositiveQuantity(tid, item, quantity)
            if item in quantities:
                logger.debug(f"Transaction {tid}: merging repeated item {item}")
                quantities[item] += quantity
            else:
                quantities[item] = quantity

        self._tid = tid
        self._quantities = MappingProxyType(dict(sorted(quantities.items())))

    @property
    def tid(self) -> int:
        return self._tid

    @property
    def quantities(self) -> Mapping:
        return self._quantities

    @property
    def items(self) -> Tuple[int, ...]:
        return tuple(self._quantities)

    def quantity(self, item: int) -> int:
        try:
            return self._quantities[item]
        except KeyError:
            raise ItemNotInTransaction(item, self._tid) from None

    def __contains__(self, item):
        return item in self._quantities

    def __len__(self):
        return len(self._quantities)

    def __eq__(self, other):
        if not isinstance(other, Transaction):
            return NotImplemented
        return self._tid == other._tid and dict(self._quantities) == dict(other._quantities)

    def __hash__(self):
        return hash((self._tid, tuple(self._quantities.items())))

    def __repr__(self):
        pairs = ''.join(f"({i},{q})" for i, q in self._quantities.items())
        return f"T{self._tid}{pairs}"


class QuantitativeDatabase:
    """
    An immutable quantitative transaction database together with its profit
    table. The total utility `TU` and the utility of every transaction are
    computed once, at construction.

    Parameters
    ----------
    transactions: `Sequence[Transaction]`
        The transactions, with strictly increasing tids.
    profits: `ProfitTable`
        Unit profit of every item. Items never purchased may also appear.
    """

    def __init__(self, transactions: Sequence[Transaction], profits: ProfitTable):

        if not isinstance(profits, ProfitTable):
            profits = ProfitTable(profits)

        transactions = tuple(transactions)
        if len(transactions) == 0:
            raise EmptyDatabase()

        by_tid = OrderedDict()
        last_tid = None
        for transaction in transactions:
            if not isinstance(transaction, Transaction):
                raise TypeError("The input parameter transactions must contain Transaction objects")
            if last_tid is not None and transaction.tid <= last_tid:
                raise ValueError(
                    f"Transaction identifiers must be strictly increasing. "
                    f"{transaction.tid} follows {last_tid}")
            last_tid = transaction.tid
            by_tid[transaction.tid] = transaction

        # tu(T_c) and TU in one pass; any item without a profit fails here
        transaction_utilities = {}
        item_tids = {}
        for transaction in transactions:
            tu = 0
            for item, quantity in transaction.quantities.items():
                if item not in profits:
                    raise MissingProfit(item)
                tu += profits[item] * quantity
                item_tids.setdefault(item, []).append(transaction.tid)
            transaction_utilities[transaction.tid] = tu

        self._transactions = transactions
        self._by_tid = MappingProxyType(by_tid)
        self._profits = profits
        self._transaction_utilities = MappingProxyType(transaction_utilities)
        self._total_utility = sum(transaction_utilities.values())
        self._item_tids = MappingProxyType(
            {item: tuple(tids) for item, tids in sorted(item_tids.items())})

    @property
    def transactions(self) -> Tuple[Transaction, ...]:
        return self._transactions

    @property
    def profits(self) -> ProfitTable:
        return self._profits

    @property
    def total_utility(self) -> int:
        return self._total_utility

    @property
    def tids(self) -> Tuple[int, ...]:
        return tuple(self._by_tid)

    @property
    def items(self) -> Tuple[int, ...]:
        """The item universe I: every item purchased at least once."""
        return tuple(self._item_tids)

    @property
    def item_tids(self) -> Mapping:
        """Ascending tids of the transactions containing each item."""
        return self._item_tids

    @property
    def transaction_utilities(self) -> Mapping:
        return self._transaction_utilities

    def transaction(self, tid: int) -> Transaction:
        try:
            return self._by_tid[tid]
        except KeyError:
            raise UnknownTid(tid) from None

    def __len__(self):
        return len(self._transactions)

    def __iter__(self):
        return iter(self._transactions)

    def __repr__(self):
        return (f"QuantitativeDatabase(n_transactions={len(self)}, "
                f"n_items={len(self._item_tids)}, total_utility={self._total_utility})")

    def permuted(self, order: Sequence[int]) -> 'QuantitativeDatabase':
        """
        Returns a new database whose transactions are those at positions
        `order`, with tids reassigned 1-based in the new order.
        """
        if sorted(order) != list(range(len(self._transactions))):
            raise ValueError("order must be a permutation of the transaction positions")
        raw = [self._transactions[position].quantities.items() for position in order]
        return build_database(raw, self._profits)

    def with_transactions(self, extra: Iterable[Iterable[Tuple[int, int]]],
                          extra_profits: Optional[Mapping] = None) -> 'QuantitativeDatabase':
        """
        Returns a new database with `extra` raw transactions appended after
        the existing ones, optionally extending the profit table.
        """
        profits = dict(self._profits)
        profits.update(extra_profits or {})
        last_tid = self._transactions[-1].tid
        transactions = list(self._transactions)
        for offset, items in enumerate(extra, start=1):
            transactions.append(Transaction(last_tid + offset, items))
        return QuantitativeDatabase(transactions, ProfitTable(profits))

    def asdict(self):
        return convert2serialize({
            'transactions': {t.tid: dict(t.quantities) for t in self._transactions},
            'profits': self._profits.asdict(),
            'total_utility': self._total_utility,
        })


RawTransaction = Union[Transaction, Iterable[Tuple[int, int]]]


def build_database(transactions: Iterable[RawTransaction],
                   profits: Union[ProfitTable, Mapping],
                   tids: Optional[Sequence[int]] = None) -> QuantitativeDatabase:
    """
    Builds a `QuantitativeDatabase` from raw transactions.

    Parameters
    ----------
    transactions: `Iterable`
        Each element is either a `Transaction` or an iterable of
        `(item, quantity)` pairs.
    profits: `ProfitTable` or `Mapping[int, int]`
        Unit profit of each item.
    tids: `Sequence[int]`, optional
        Explicit transaction identifiers. Defaults to 1-based positions.

    Returns
    -------
    QuantitativeDatabase
        The database, with duplicate items merged and `TU` computed.

    Raises
    ------
    MissingProfit, NonPositiveProfit, NonPositiveQuantity, EmptyDatabase
    """
    profits = profits if isinstance(profits, ProfitTable) else ProfitTable(profits)

    built: List[Transaction] = []
    raw_transactions = list(transactions)
    if tids is not None and len(tids) != len(raw_transactions):
        raise ValueError(
            f"Got {len(tids)} tids for {len(raw_transactions)} transactions")

    for position, raw in enumerate(raw_transactions):
        tid = tids[position] if tids is not None else position + 1
        if isinstance(raw, Transaction):
            raw = raw.quantities.items()
        transaction = Transaction(tid, raw)
        if len(transaction) == 0:
            logger.warning(f"Skipping empty transaction {tid}")
            continue
        built.append(transaction)

    if not built:
        raise EmptyDatabase()

    for transaction in built:
        for item in transaction.items:
            if item not in profits:
                raise MissingProfit(item)

    return QuantitativeDatabase(built, profits)
