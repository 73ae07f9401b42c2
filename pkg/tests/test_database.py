import unittest

from openhuim.database import (EmptyDatabase, ItemNotInTransaction, MissingProfit, MiningError,
                               NonPositiveProfit, NonPositiveQuantity, ProfitTable,
                               QuantitativeDatabase, Transaction, UnknownTid, build_database,
                               ecommerce_example)
from openhuim.database.examples import ECOMMERCE_PROFITS, ECOMMERCE_TRANSACTIONS, items_of
from openhuim.database.helper_functions import (as_item_id, canonical_itemset, check_kwargs,
                                                convert2serialize)


class TestingProfitTable(unittest.TestCase):

    def test_profit_lookup(self):

        profits = ProfitTable(ECOMMERCE_PROFITS)

        self.assertEqual(profits[3], 7)
        self.assertEqual(len(profits), 5)
        self.assertIn(5, profits)
        self.assertNotIn(6, profits)
        self.assertIsNone(profits.get(6))
        self.assertEqual(profits.asdict(), ECOMMERCE_PROFITS)

    def test_missing_profit(self):

        profits = ProfitTable({1: 3})

        with self.assertRaises(MissingProfit) as context:
            profits[2]
        self.assertEqual(context.exception.item, 2)

    def test_non_positive_profit(self):

        for profit in [0, -4]:
            with self.assertRaises(NonPositiveProfit):
                ProfitTable({1: profit})

    def test_profit_types(self):

        self.assertRaises(TypeError, ProfitTable, {1: 2.5})
        self.assertRaises(TypeError, ProfitTable, {'a': 2})
        self.assertRaises(TypeError, ProfitTable, [(1, 2)])


class TestingTransaction(unittest.TestCase):

    def test_quantities(self):

        transaction = Transaction(1, [(5, 2), (1, 3), (2, 1)])

        self.assertEqual(transaction.items, (1, 2, 5))
        self.assertEqual(transaction.quantity(5), 2)
        self.assertEqual(len(transaction), 3)
        self.assertIn(2, transaction)

    def test_repeated_items_are_merged(self):

        transaction = Transaction(1, [(1, 2), (1, 3)])

        self.assertEqual(dict(transaction.quantities), {1: 5})

    def test_non_positive_quantity(self):

        with self.assertRaises(NonPositiveQuantity) as context:
            Transaction(4, [(1, 0)])
        self.assertEqual((context.exception.tid, context.exception.item), (4, 1))

    def test_missing_item(self):

        with self.assertRaises(ItemNotInTransaction):
            Transaction(1, [(1, 1)]).quantity(2)

    def test_malformed_pairs(self):

        self.assertRaises(TypeError, Transaction, 1, [1, 2])
        self.assertRaises(TypeError, Transaction, 1, [(1, 1.5)])
        self.assertRaises(ValueError, Transaction, 1, [(-1, 1)])

    def test_equality(self):

        self.assertEqual(Transaction(1, [(1, 1), (2, 2)]), Transaction(1, [(2, 2), (1, 1)]))
        self.assertNotEqual(Transaction(1, [(1, 1)]), Transaction(2, [(1, 1)]))
        self.assertEqual(repr(Transaction(3, [(2, 1), (1, 4)])), "T3(1,4)(2,1)")


class TestingQuantitativeDatabase(unittest.TestCase):

    def test_running_example(self):

        db = ecommerce_example()

        self.assertEqual(len(db), 5)
        self.assertEqual(db.total_utility, 150)
        self.assertEqual(dict(db.transaction_utilities), {1: 30, 2: 18, 3: 29, 4: 34, 5: 39})
        self.assertEqual(db.items, (1, 2, 3, 4, 5))
        self.assertEqual(db.tids, (1, 2, 3, 4, 5))
        self.assertEqual(db.item_tids[3], (2, 4))
        self.assertEqual(db.item_tids[1], (1, 2, 3, 4, 5))

    def test_items_of(self):

        self.assertEqual(items_of('eab'), (1, 2, 5))

    def test_missing_profit_for_e(self):

        profits = {item: profit for item, profit in ECOMMERCE_PROFITS.items() if item != 5}

        with self.assertRaises(MissingProfit) as context:
            build_database(ECOMMERCE_TRANSACTIONS, profits)
        self.assertEqual(context.exception.item, 5)

    def test_errors_are_value_errors(self):

        self.assertTrue(issubclass(MissingProfit, MiningError))
        self.assertTrue(issubclass(MiningError, ValueError))

    def test_empty_transactions_are_skipped(self):

        db = build_database([[(1, 1)], [], [(2, 2)]], {1: 1, 2: 1})

        self.assertEqual(len(db), 2)
        self.assertEqual(db.tids, (1, 3))

    def test_empty_database(self):

        self.assertRaises(EmptyDatabase, build_database, [], {1: 1})
        self.assertRaises(EmptyDatabase, build_database, [[]], {1: 1})
        self.assertRaises(EmptyDatabase, QuantitativeDatabase, [], ProfitTable({1: 1}))

    def test_tids_must_increase(self):

        transactions = [Transaction(2, [(1, 1)]), Transaction(1, [(1, 1)])]

        self.assertRaises(ValueError, QuantitativeDatabase, transactions, {1: 1})

    def test_explicit_tids(self):

        db = build_database([[(1, 1)], [(1, 2)]], {1: 4}, tids=[10, 20])

        self.assertEqual(db.tids, (10, 20))
        self.assertEqual(db.transaction(20).quantity(1), 2)
        self.assertRaises(ValueError, build_database, [[(1, 1)]], {1: 4}, tids=[1, 2])

    def test_unknown_tid(self):

        with self.assertRaises(UnknownTid):
            ecommerce_example().transaction(6)

    def test_unsold_items_may_have_profits(self):

        db = build_database([[(1, 1)]], {1: 2, 9: 5})

        self.assertEqual(db.items, (1,))
        self.assertEqual(db.profits[9], 5)

    def test_permuted(self):

        db = ecommerce_example()
        permuted = db.permuted([4, 3, 2, 1, 0])

        self.assertEqual(permuted.total_utility, 150)
        self.assertEqual(permuted.transaction(1), Transaction(1, ECOMMERCE_TRANSACTIONS[4]))
        self.assertRaises(ValueError, db.permuted, [0, 0, 1, 2, 3])

    def test_with_transactions(self):

        db = ecommerce_example().with_transactions([[(1, 1), (6, 2)]], extra_profits={6: 4})

        self.assertEqual(db.tids, (1, 2, 3, 4, 5, 6))
        self.assertEqual(db.total_utility, 150 + 3 + 8)
        self.assertEqual(db.items, (1, 2, 3, 4, 5, 6))

    def test_asdict(self):

        serialized = ecommerce_example().asdict()

        self.assertEqual(serialized['total_utility'], 150)
        self.assertEqual(serialized['profits'][5], 10)
        self.assertEqual(serialized['transactions'][1], {1: 3, 2: 1, 5: 2})


class TestingHelperFunctions(unittest.TestCase):

    def test_as_item_id(self):

        self.assertEqual(as_item_id(3), 3)
        self.assertRaises(TypeError, as_item_id, True)
        self.assertRaises(TypeError, as_item_id, '3')
        self.assertRaises(ValueError, as_item_id, -1)

    def test_canonical_itemset(self):

        self.assertEqual(canonical_itemset([5, 1, 5, 3]), (1, 3, 5))
        self.assertEqual(canonical_itemset([]), ())

    def test_check_kwargs(self):

        self.assertEqual(check_kwargs(['a', 'b'], [1, 2], b=3), (1, 3))
        self.assertRaises(ValueError, check_kwargs, ['a'], [None])
        self.assertRaises(ValueError, check_kwargs, ['a'], [1], c=2)

    def test_convert2serialize(self):

        self.assertEqual(convert2serialize({'x': {3, 1}, 'y': None}), {'x': [1, 3]})


if __name__ == "__main__":
    unittest.main()
