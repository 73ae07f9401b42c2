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

import numpy as np


def convert2serialize(obj):
    """
    Recursively converts an object into plain python containers so it can be
    dumped as JSON. Private attributes lose their leading underscore and sets
    become sorted lists. Numbers become plain python ints and floats, except
    exact fractions and decimals, which are written as strings.
    """
    if isinstance(obj, dict):
        return {convert2serialize(k): convert2serialize(v)
                for k, v in obj.items() if v is not None}
    elif isinstance(obj, np.generic):
        return obj.item()
    elif isinstance(obj, bool):
        return obj
    elif isinstance(obj, numbers.Integral):
        return int(obj)
    elif isinstance(obj, (Fraction, Decimal)):
        return str(obj)
    elif isinstance(obj, (set, frozenset)):
        return sorted(convert2serialize(v) for v in obj)
    elif not isinstance(obj, str) and hasattr(obj, "__iter__"):
        return [convert2serialize(v) for v in obj if v is not None]
    elif hasattr(obj, "__dict__"):
        return {
            k.lstrip('_'): convert2serialize(v)
            for k, v in obj.__dict__.items()
            if not callable(v) and v is not None
        }
    else:
        return obj


def check_kwargs(list_expected_params, list_default_values, **kwargs):
    """
    Checks that the given list of expected parameters can be found in the
    kwargs given as input. If so, it returns the parameters from kwargs, else
    it returns the default value.

    Args:
        list_expected_params: List[str]
            List of string containing the name of the expected parameters in
            kwargs
        list_default_values: List
            List containing the default values of the expected parameters in
            kwargs
        **kwargs:
            Keyword arguments where keys are supposed to be the expected params

    Returns:
        A tuple with the actual expected parameters if they are found in kwargs.

    Raises:
        ValueError:
            If one of the expected arguments is not found in kwargs and its
            default value is not specified, or if kwargs contains a name that
            is not expected.
    """
    unexpected = set(kwargs) - set(list_expected_params)
    if unexpected:
        raise ValueError(
            f"Unexpected parameter(s) {sorted(unexpected)}. Please use {list_expected_params}")

    params = []
    for expected_param, default_value in zip(list_expected_params, list_default_values):
        param = kwargs.get(expected_param, default_value)
        if param is None:
            raise ValueError(f"Parameter '{expected_param}' should be specified")
        params.append(param)

    return tuple(params)


def as_item_id(value):
    """Validates an item identifier and returns it as a python int."""
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"Item identifiers must be of type int. {value!r} was provided")
    value = int(value)
    if value < 0:
        raise ValueError(f"Item identifiers must be non-negative. Value {value} was provided")
    return value


def canonical_itemset(itemset):
    """Returns the itemset as a tuple of distinct ids in ascending order."""
    return tuple(sorted({as_item_id(item) for item in itemset}))
