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
Exceptions raised while building, measuring and mining quantitative
transaction databases.

Every exception derives from `MiningError`, itself a `ValueError`, so
callers can catch the whole family or a single case.
"""


class MiningError(ValueError):
    pass


class MissingProfit(MiningError):

    def __init__(self, item, line_no=None):
        self.item = item
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"Item {item} has no entry in the profit table{where}")


class NonPositiveProfit(MiningError):

    def __init__(self, item, profit):
        self.item = item
        self.profit = profit
        super().__init__(
            f"Unit profit of item {item} must be strictly positive. Value {profit} was provided")


class NonPositiveQuantity(MiningError):

    def __init__(self, tid, item, quantity):
        self.tid = tid
        self.item = item
        self.quantity = quantity
        super().__init__(
            f"Quantity of item {item} in transaction {tid} must be strictly positive. "
            f"Value {quantity} was provided")


class EmptyDatabase(MiningError):

    def __init__(self, message="The database does not contain any transaction"):
        super().__init__(message)


class UnknownTid(MiningError):

    def __init__(self, tid):
        self.tid = tid
        super().__init__(f"Transaction {tid} does not exist in the database")


class ItemNotInTransaction(MiningError):

    def __init__(self, item, tid):
        self.item = item
        self.tid = tid
        super().__init__(f"Item {item} does not occur in transaction {tid}")


class ItemsetNotContained(MiningError):

    def __init__(self, itemset, tid):
        self.itemset = tuple(itemset)
        self.tid = tid
        super().__init__(f"Itemset {list(self.itemset)} is not contained in transaction {tid}")


class ZeroSupportMember(MiningError):

    def __init__(self, item):
        self.item = item
        super().__init__(f"Item {item} never occurs, its Kulc contribution is undefined")


class UniverseTooLarge(MiningError):

    def __init__(self, n_items, cap):
        self.n_items = n_items
        self.cap = cap
        super().__init__(
            f"Exhaustive enumeration over {n_items} items exceeds the cap of {cap} items")


class InvalidParams(MiningError):
    pass


class MalformedLine(MiningError):

    def __init__(self, line_no, detail=""):
        self.line_no = line_no
        suffix = f": {detail}" if detail else ""
        super().__init__(f"Malformed line {line_no}{suffix}")


class NonPositiveValue(MiningError):

    def __init__(self, line_no, value):
        self.line_no = line_no
        self.value = value
        super().__init__(f"Non-positive value {value!r} on line {line_no}")


class UtilitySumMismatch(MiningError):

    def __init__(self, line_no, declared, computed):
        self.line_no = line_no
        self.declared = declared
        self.computed = computed
        super().__init__(
            f"Item utilities on line {line_no} sum to {computed}, "
            f"but the transaction utility is declared as {declared}")


class SinkWriteError(MiningError):

    def __init__(self, sink, reason):
        self.sink = sink
        super().__init__(f"Could not write results to {sink}: {reason}")
