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
Test the mining parameters and the threshold resolution
"""
import json
import unittest
from fractions import Fraction

import numpy as np

from openhuim.database import ecommerce_example
from openhuim.miners import mine
from openhuim.workflows.parameters import (ALLOWED_STRATEGIES, AbsoluteUtility, MiningParams)


class TestingMiningParams(unittest.TestCase):

    def test_defaults(self):

        params = MiningParams()

        self.assertEqual(params.min_util, 0.2)
        self.assertEqual(params.min_cor, 0.0)
        self.assertEqual(params.strategies, 'sorted+la')
        self.assertEqual(params.item_order, 'support')
        self.assertEqual(params.baseline_guard, 'utility')
        self.assertEqual(params.flags, frozenset({'UBU', 'SPK', 'LA'}))

    def test_strategy_flags(self):

        expected = {'ubu': (False, False), 'sorted': (True, False),
                    'la': (False, True), 'sorted+la': (True, True)}
        for strategies in ALLOWED_STRATEGIES:
            params = MiningParams(strategies=strategies)
            self.assertEqual((params.spk, params.la), expected[strategies])
            self.assertTrue(params.ubu)

    def test_kulc_guard(self):

        self.assertTrue(MiningParams(strategies='sorted').kulc_guard)
        self.assertFalse(MiningParams(strategies='la').kulc_guard)
        self.assertTrue(MiningParams(strategies='ubu', baseline_guard='literal').kulc_guard)

    def test_invalid_values(self):

        self.assertRaises(ValueError, MiningParams, min_cor=1.5)
        self.assertRaises(ValueError, MiningParams, min_cor=-0.1)
        self.assertRaises(ValueError, MiningParams, min_util=1.2)
        self.assertRaises(ValueError, MiningParams, min_util=AbsoluteUtility(-3))
        self.assertRaises(TypeError, MiningParams, min_util='20%')
        self.assertRaises(TypeError, MiningParams, min_cor=True)
        self.assertRaises(ValueError, MiningParams, strategies='fast')
        self.assertRaises(ValueError, MiningParams, item_order='random')
        self.assertRaises(ValueError, MiningParams, baseline_guard='none')

    def test_sorted_pruning_needs_support_order(self):

        self.assertRaises(ValueError, MiningParams, strategies='sorted', item_order='twu')
        self.assertRaises(ValueError, MiningParams, strategies='ubu', item_order='lexicographic',
                          baseline_guard='literal')
        params = MiningParams(strategies='la', item_order='twu')
        self.assertEqual(params.item_order, 'twu')

    def test_resolve_relative_threshold(self):

        self.assertEqual(MiningParams(min_util=0.2).resolve_threshold(150), 30)
        self.assertEqual(MiningParams(min_util=0.25).resolve_threshold(150), 38)
        self.assertEqual(MiningParams(min_util=Fraction(1, 3)).resolve_threshold(100), 34)
        self.assertEqual(MiningParams(min_util=0).resolve_threshold(150), 0)
        self.assertEqual(MiningParams(min_util=1).resolve_threshold(150), 150)

    def test_resolve_threshold_is_exact(self):

        # 0.1 * 30 is 3.0000000000000004 in binary floating point
        self.assertEqual(MiningParams(min_util=0.1).resolve_threshold(30), 3)
        self.assertEqual(MiningParams(min_util=0.07).resolve_threshold(100), 7)

    def test_resolve_absolute_threshold(self):

        params = MiningParams(min_util=AbsoluteUtility(30))

        self.assertFalse(params.is_relative)
        self.assertEqual(params.resolve_threshold(150), 30)
        self.assertEqual(params.resolve_threshold(10), 30)

    def test_parse_min_util(self):

        self.assertEqual(MiningParams.parse_min_util('20%'), Fraction(1, 5))
        self.assertEqual(MiningParams.parse_min_util(' 12.5% '), Fraction(1, 8))
        self.assertIsInstance(MiningParams.parse_min_util('30'), AbsoluteUtility)
        self.assertEqual(MiningParams.parse_min_util('30'), 30)
        for text in ['120%', '-1', 'abc', '0.2', '']:
            self.assertRaises(ValueError, MiningParams.parse_min_util, text)

    def test_from_threshold_string(self):

        relative = MiningParams.from_threshold_string('20%', min_cor=0.7)
        absolute = MiningParams.from_threshold_string('30', min_cor=0.7)

        self.assertEqual(relative.resolve_threshold(150), absolute.resolve_threshold(150))
        self.assertEqual(relative.min_cor, 0.7)

    def test_asdict(self):

        serialized = MiningParams(min_cor=0.5, strategies='la').asdict()

        self.assertEqual(serialized['min_cor'], 0.5)
        self.assertEqual(serialized['strategies'], 'la')
        self.assertEqual(serialized['min_util'], {'share': 0.2})
        self.assertIn('MiningParams(', repr(MiningParams()))

    def test_asdict_keeps_the_threshold(self):

        absolute = MiningParams(AbsoluteUtility(30), 0.7)
        share = MiningParams(Fraction(1, 5), 0.7)

        self.assertEqual(absolute.asdict()['min_util'], {'absolute': 30})
        self.assertIn("min_util={'absolute': 30}", repr(absolute))
        self.assertEqual(share.asdict()['min_util'], {'share': '1/5'})
        json.dumps(absolute.asdict())
        json.dumps(share.asdict())

    def test_numpy_thresholds(self):

        for value in (np.float64(0.2), np.float32(0.2)):
            params = MiningParams(min_util=value, min_cor=0.7)
            self.assertIs(type(params.min_util), float)
            self.assertEqual(params.min_util, 0.2)
            self.assertEqual(params.resolve_threshold(150), 30)
            patterns, _ = mine(ecommerce_example(), params)
            self.assertEqual(len(patterns), 7)

        params = MiningParams(min_util=np.int64(1))
        self.assertIs(type(params.min_util), int)
        self.assertEqual(params.resolve_threshold(150), 150)
        self.assertRaises(ValueError, MiningParams, min_util=np.float32(1.5))


if __name__ == "__main__":
    unittest.main()
