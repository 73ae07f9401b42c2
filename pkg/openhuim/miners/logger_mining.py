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
Loggers recording the statistics of a mining run.

A `Logger` owns one `LoggerVariable` per statistic. Every variable keeps a
`history` and a `best` list, each refreshed by its own update rule. A
networkx `DiGraph` states which best values depend on others: a dependent
variable only refreshes its best value when all of its predecessors changed
theirs in the same call to `log_variables`.
"""

from abc import ABC, abstractmethod
from typing import Dict

import networkx as nx


class UpdateMethod(ABC):

    @abstractmethod
    def update(self, logger_variable: 'LoggerVariable', attribute_name: str, new_value) -> None:
        pass


class AppendValue(UpdateMethod):

    def update(self, logger_variable, attribute_name, new_value):
        getattr(logger_variable, attribute_name).append(new_value)


class ReplaceValue(UpdateMethod):

    def update(self, logger_variable, attribute_name, new_value):
        setattr(logger_variable, attribute_name, [new_value])


class EmptyValue(UpdateMethod):

    def update(self, logger_variable, attribute_name, new_value):
        setattr(logger_variable, attribute_name, [])


class _IfComparedDo(UpdateMethod):

    def __init__(self, update_method: UpdateMethod):
        self._update_method = update_method

    @staticmethod
    @abstractmethod
    def improves(new_value, old_value) -> bool:
        pass

    def update(self, logger_variable, attribute_name, new_value):
        current = getattr(logger_variable, attribute_name)
        if not current:
            AppendValue().update(logger_variable, attribute_name, new_value)
        elif self.improves(new_value, current[-1]):
            self._update_method.update(logger_variable, attribute_name, new_value)


class IfLowerDo(_IfComparedDo):

    @staticmethod
    def improves(new_value, old_value):
        return new_value < old_value


class IfHigherDo(_IfComparedDo):

    @staticmethod
    def improves(new_value, old_value):
        return new_value > old_value


class LoggerVariable:
    """
    A logged statistic.

    Parameters
    ----------
    attribute_name: `str`
        Name of the statistic.
    history_update_method: `UpdateMethod`
        Rule applied to `history` on every update.
    best_update_method: `UpdateMethod`
        Rule applied to `best` when the logger decides to refresh it.
    """

    def __init__(self, attribute_name: str, history_update_method: UpdateMethod,
                 best_update_method: UpdateMethod):
        self.name = attribute_name
        self.best = []
        self.history = []
        self.history_update_method = history_update_method
        self.best_update_method = best_update_method

    def update(self, new_value):
        self.update_history(new_value)
        self.update_best(new_value)

    def update_history(self, new_value):
        self.history_update_method.update(self, 'history', new_value)

    def update_best(self, new_value):
        self.best_update_method.update(self, 'best', new_value)

    @property
    def value(self):
        """The current best value, or `None` before the first update."""
        return self.best[-1] if self.best else None


class LoggerVariableFactory:
    """
    Creates `LoggerVariable` objects from a history flag and the name of a
    best-value rule.
    """

    history_bool_mapping = {True: AppendValue(), False: EmptyValue()}
    best_string_mapping = {'HighestOnly': IfHigherDo(ReplaceValue()),
                           'HighestSoFar': IfHigherDo(AppendValue()),
                           'LowestOnly': IfLowerDo(ReplaceValue()),
                           'LowestSoFar': IfLowerDo(AppendValue()),
                           'Replace': ReplaceValue(),
                           'Append': AppendValue()}

    @classmethod
    def create_logger_variable(cls, attribute_name: str, history_update_bool: bool,
                               best_update_string: str) -> LoggerVariable:
        try:
            best_update_method = cls.best_string_mapping[best_update_string]
        except KeyError:
            raise ValueError(
                f"best_update_string {best_update_string} is not recognised. "
                f"Please use {list(cls.best_string_mapping)}") from None
        return LoggerVariable(attribute_name,
                              cls.history_bool_mapping[bool(history_update_bool)],
                              best_update_method)


class Logger:
    """
    A set of logged statistics with their best-value dependencies.

    Parameters
    ----------
    initialisation_variables: `dict`
        Maps each statistic name to a dict with keys `history_update_bool`
        and `best_update_string`.
    logger_update_structure: `dict`
        `root_nodes`: statistics whose best values update on their own;
        `best_update_structure`: `[A, B]` pairs meaning B only refreshes its
        best value when A has just refreshed its own.
    """

    def __init__(self, initialisation_variables: Dict[str, dict], logger_update_structure: dict):
        self.variable_names = []
        for attribute_name, attribute_properties in initialisation_variables.items():
            setattr(self, attribute_name,
                    LoggerVariableFactory.create_logger_variable(
                        attribute_name,
                        attribute_properties['history_update_bool'],
                        attribute_properties['best_update_string']))
            self.variable_names.append(attribute_name)

        self.best_update_structure = nx.DiGraph()
        self.best_update_structure.add_nodes_from(logger_update_structure['root_nodes'])
        self.best_update_structure.add_edges_from(logger_update_structure['best_update_structure'])
        unknown = set(self.best_update_structure) - set(self.variable_names)
        if unknown:
            raise ValueError(f"The update structure names unknown variables {sorted(unknown)}")
        if not nx.is_directed_acyclic_graph(self.best_update_structure):
            raise ValueError("The best update structure must not contain cycles")
        self._update_order = list(nx.topological_sort(self.best_update_structure))
        self._predecessors = {name: list(self.best_update_structure.predecessors(name))
                              for name in self._update_order}

    def log_variables(self, input_dict: dict):
        """
        Updates the history of every variable in `input_dict`, then refreshes
        best values following the update structure.
        """
        for name, value in input_dict.items():
            getattr(self, name).update_history(value)

        changed = {}
        for name in self._update_order:
            predecessors = self._predecessors[name]
            if predecessors and not all(changed.get(p, False) for p in predecessors):
                changed[name] = False
                continue
            if name not in input_dict:
                changed[name] = False
                continue
            logged_var = getattr(self, name)
            old_best = list(logged_var.best)
            logged_var.update_best(input_dict[name])
            changed[name] = logged_var.best != old_best

    def snapshot(self) -> Dict[str, object]:
        """Current best value of every variable."""
        return {name: getattr(self, name).value for name in self.variable_names}


SEARCH_COUNTERS = ['nodes_visited', 'joins_performed', 'spk_prunes', 'ubu_prunes',
                   'la_prunes', 'patterns_found']


def search_logger(track_history: bool = False) -> Logger:
    """
    Logger of a single search. The best value of `live_lists` is the peak
    number of revised utility-lists held at once.
    """
    variables = {name: {'history_update_bool': False, 'best_update_string': 'HighestOnly'}
                 for name in SEARCH_COUNTERS}
    variables['live_lists'] = {'history_update_bool': track_history,
                               'best_update_string': 'HighestOnly'}
    return Logger(variables, {'root_nodes': SEARCH_COUNTERS + ['live_lists'],
                              'best_update_structure': []})


def bench_logger() -> Logger:
    """
    Logger of repeated runs: all wall times are kept, and the statistics of
    the fastest run replace the stored ones whenever a faster run arrives.
    """
    return Logger({'wall_time': {'history_update_bool': True, 'best_update_string': 'LowestOnly'},
                   'stats': {'history_update_bool': False, 'best_update_string': 'Replace'}},
                  {'root_nodes': ['wall_time'],
                   'best_update_structure': [['wall_time', 'stats']]})
