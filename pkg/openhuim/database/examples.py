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
Small reference databases used in the documentation and the test-suite.
"""

from .database import build_database

#: Item identifiers of the e-commerce example, keyed by product letter
ECOMMERCE_ITEMS = {'a': 1, 'b': 2, 'c': 3, 'd': 4, 'e': 5}

ECOMMERCE_PROFITS = {1: 3, 2: 1, 3: 7, 4: 2, 5: 10}

ECOMMERCE_TRANSACTIONS = [
    [(1, 3), (2, 1), (5, 2)],
    [(1, 2), (2, 3), (3, 1), (4, 1)],
    [(1, 1), (4, 3), (5, 2)],
    [(1, 1), (2, 5), (3, 2), (4, 1), (5, 1)],
    [(1, 2), (2, 3), (5, 3)],
]


def ecommerce_example():
    """
    Five purchase records over the products a..e (ids 1..5), with unit
    profits a: 3, b: 1, c: 7, d: 2, e: 10. The total utility is 150.
    """
    return build_database(ECOMMERCE_TRANSACTIONS, ECOMMERCE_PROFITS)


def items_of(letters):
    """Maps product letters such as 'abe' to their item identifiers."""
    return tuple(sorted(ECOMMERCE_ITEMS[letter] for letter in letters))
