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


import numbers
from decimal import Decimal
from fractions import Fraction
from typing import FrozenSet, Union

import numpy as np

from openhuim.utility_lists.revised_list import ALLOWED_ORDER_RULES
from .parameters import Parameters


ALLOWED_STRATEGIES = ['ubu', 'sorted', 'la', 'sorted+la']
ALLOWED_ITEM_ORDERS = ALLOWED_ORDER_RULES
ALLOWED_BASELINE_GUARDS = ['utility', 'literal']


class AbsoluteUtility(int):
    """A minimum utility given directly in money, rather than as a share of TU."""

    def __repr__(self):
        return f"AbsoluteUtility({int(self)})"


class MiningParams(Parameters):
    """
    Thresholds and pruning strategies of a correlated high-utility mining run.

    Parameters
    ----------
    min_util: `float`, `Fraction` or `AbsoluteUtility`
        Minimum utility. A number in [0, 1] is a share of the total utility
        TU of the database; an `AbsoluteUtility` is a money amount.
    min_cor: `float`
        Minimum Kulc correlation, in [0, 1]. 0 disables the correlation
        constraint.
    strategies: `str`
        Pruning strategies on top of the always-on utility bound:
        `'ubu'` (bound only), `'sorted'` (also prune on the sorted Kulc
        closure), `'la'` (also look ahead while joining lists) or
        `'sorted+la'`.
    item_order: `str`
        Processing order of the items: `'support'` ascending (required by
        `'sorted'`), `'twu'` ascending or `'lexicographic'`.
    baseline_guard: `str`
        Recursion guard used when the sorted Kulc pruning is off:
        `'utility'` keeps only the utility bound, `'literal'` also requires
        the Kulc threshold.
    """

    def __init__(self,
                 min_util: Union[float, Fraction, AbsoluteUtility] = 0.2,
                 min_cor: float = 0.0,
                 strategies: str = 'sorted+la',
                 item_order: str = 'support',
                 baseline_guard: str = 'utility'):

        self._item_order = 'support'
        self._baseline_guard = 'utility'
        self._strategies = 'ubu'
        self.min_util = min_util
        self.min_cor = min_cor
        self.item_order = item_order
        self.baseline_guard = baseline_guard
        self.strategies = strategies

    @property
    def min_util(self):
        return self._min_util

    @min_util.setter
    def min_util(self, value):
        if isinstance(value, np.floating):
            # the shortest decimal of a numpy float, so 0.2 as float32 stays 0.2
            value = float(str(value))
        elif isinstance(value, np.integer):
            value = int(value)
        if isinstance(value, AbsoluteUtility):
            if value < 0:
                raise ValueError(
                    f"The absolute min_util cannot be negative. Value {int(value)} was provided")
        elif isinstance(value, bool) or not isinstance(value, (numbers.Real, Decimal)):
            raise TypeError(
                f"The input parameter min_util must be a number or an AbsoluteUtility. "
                f"{value!r} was provided")
        elif not 0 <= value <= 1:
            raise ValueError(
                f"min_util must be a fraction in [0, 1] of the total utility. Value {value} was provided")
        self._min_util = value

    @property
    def min_cor(self):
        return self._min_cor

    @min_cor.setter
    def min_cor(self, value):
        if isinstance(value, bool) or not isinstance(value, numbers.Real):
            raise TypeError(f"The input parameter min_cor must be a number. {value!r} was provided")
        if not 0 <= value <= 1:
            raise ValueError(f"min_cor must be in [0, 1]. Value {value} was provided")
        self._min_cor = float(value)

    @property
    def strategies(self):
        return self._strategies

    @strategies.setter
    def strategies(self, value):
        if value not in ALLOWED_STRATEGIES:
            raise ValueError(f"strategies {value} is not recognised. Please use {ALLOWED_STRATEGIES}")
        if 'sorted' in value and self._item_order != 'support':
            raise ValueError(
                f"The sorted Kulc pruning requires the 'support' item order, "
                f"not '{self._item_order}'")
        self._strategies = value

    @property
    def item_order(self):
        return self._item_order

    @item_order.setter
    def item_order(self, value):
        if value not in ALLOWED_ITEM_ORDERS:
            raise ValueError(f"item_order {value} is not recognised. Please use {ALLOWED_ITEM_ORDERS}")
        if value != 'support' and ('sorted' in self._strategies or self._baseline_guard == 'literal'):
            raise ValueError(
                f"item_order '{value}' cannot be combined with Kulc pruning in the recursion guard")
        self._item_order = value

    @property
    def baseline_guard(self):
        return self._baseline_guard

    @baseline_guard.setter
    def baseline_guard(self, value):
        if value not in ALLOWED_BASELINE_GUARDS:
            raise ValueError(
                f"baseline_guard {value} is not recognised. Please use {ALLOWED_BASELINE_GUARDS}")
        if value == 'literal' and self._item_order != 'support':
            raise ValueError("The 'literal' baseline guard requires the 'support' item order")
        self._baseline_guard = value

    @property
    def spk(self) -> bool:
        return 'sorted' in self._strategies

    @property
    def la(self) -> bool:
        return 'la' in self._strategies

    @property
    def ubu(self) -> bool:
        return True

    @property
    def kulc_guard(self) -> bool:
        """Whether the recursion guard tests the Kulc threshold."""
        return self.spk or self._baseline_guard == 'literal'

    @property
    def flags(self) -> FrozenSet[str]:
        flags = {'UBU'}
        if self.spk:
            flags.add('SPK')
        if self.la:
            flags.add('LA')
        return frozenset(flags)

    @property
    def is_relative(self) -> bool:
        return not isinstance(self._min_util, AbsoluteUtility)

    def resolve_threshold(self, total_utility: int) -> int:
        """
        The smallest integer money amount `t` such that a utility `u`
        satisfies the minimum utility exactly when `u >= t`.
        """
        if not self.is_relative:
            return int(self._min_util)
        share = self._min_util
        if not isinstance(share, (numbers.Rational, Decimal)):
            share = Fraction(repr(float(share)))
        product = Fraction(share) * total_utility
        return -(-product.numerator // product.denominator)

    def asdict(self):
        serialized = super().asdict()
        if self.is_relative:
            serialized['min_util'] = {'share': serialized['min_util']}
        else:
            serialized['min_util'] = {'absolute': int(self._min_util)}
        return serialized

    @staticmethod
    def parse_min_util(text: str) -> Union[Fraction, AbsoluteUtility]:
        """
        Parses a command-line threshold: `'20%'` is a share of TU, `'30'` an
        absolute money amount.
        """
        text = text.strip()
        try:
            if text.endswith('%'):
                share = Fraction(text[:-1].strip()) / 100
                if not 0 <= share <= 1:
                    raise ValueError
                return share
            amount = int(text)
            if amount < 0:
                raise ValueError
            return AbsoluteUtility(amount)
        except ValueError:
            raise ValueError(
                f"min_util {text!r} must be a percentage in [0%, 100%] or a non-negative "
                f"integer amount") from None

    @classmethod
    def from_threshold_string(cls, min_util: str, **kwargs) -> 'MiningParams':
        return cls(min_util=cls.parse_min_util(min_util), **kwargs)
