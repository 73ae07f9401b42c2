import contextlib
import io
import os
import tempfile
import unittest

from openhuim.database import ecommerce_example
from openhuim.io.cli import EXIT_OK, EXIT_ORACLE_MISMATCH, EXIT_USAGE, run_cli
from openhuim.io.formats import (parse_quantity_pairs, parse_spmf_utility, write_quantity_pairs,
                                 write_spmf_utility)
from openhuim.oracle import random_database


def _run(args):
    stdout, stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
        code = run_cli(args)
    return code, stdout.getvalue(), stderr.getvalue()


class TestingCommandLine(unittest.TestCase):

    def setUp(self):
        self._directory = tempfile.TemporaryDirectory()
        self.directory = self._directory.name
        self.paths = {}
        db = ecommerce_example()
        pairs, profits = write_quantity_pairs(db)
        for name, text in [('pairs', pairs), ('profits', profits), ('spmf', write_spmf_utility(db))]:
            self.paths[name] = os.path.join(self.directory, f"{name}.txt")
            with open(self.paths[name], 'w', encoding='utf-8') as handle:
                handle.write(text)

    def tearDown(self):
        self._directory.cleanup()

    def _mine_example(self, *extra):
        return _run(['--input', self.paths['pairs'], '--format', 'pairs',
                     '--profits', self.paths['profits'], '--min-util', '20%', *extra])

    def test_running_example(self):

        code, stdout, stderr = self._mine_example('--min-cor', '0.7')

        self.assertEqual(code, EXIT_OK)
        pattern_lines = [line for line in stdout.splitlines() if not line.startswith('#')]
        self.assertEqual(len(pattern_lines), 7)
        self.assertEqual(pattern_lines[0], "5 #UTIL: 80 #SUP: 4 #KULC: 1.000000")
        self.assertIn("# patterns_found: 7", stdout)
        self.assertEqual(stderr, "")

    def test_absolute_threshold(self):

        _, relative, _ = self._mine_example('--min-cor', '0.7')
        _, absolute, _ = _run(['--input', self.paths['pairs'], '--profits', self.paths['profits'],
                               '--min-util', '30', '--min-cor', '0.7'])

        def patterns(text):
            return [line for line in text.splitlines() if not line.startswith('#')]

        self.assertEqual(patterns(relative), patterns(absolute))

    def test_spmf_input(self):

        code, stdout, _ = _run(['--input', self.paths['spmf'], '--format', 'spmf',
                                '--min-util', '20%', '--min-cor', '0.7', '--strategies', 'ubu'])

        self.assertEqual(code, EXIT_OK)
        self.assertIn("2 3 4 #UTIL: 33 #SUP: 2 #KULC: 0.722222", stdout)

    def test_output_file(self):

        output = os.path.join(self.directory, 'out.txt')
        code, stdout, _ = self._mine_example('--min-cor', '0.7', '--output', output)

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stdout, "")
        with open(output, encoding='utf-8') as handle:
            self.assertIn("1 2 5 #UTIL: 87 #SUP: 3 #KULC: 0.700000", handle.read())

    def test_min_cor_out_of_range(self):

        code, stdout, stderr = self._mine_example('--min-cor', '1.5')

        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(stdout, "")
        self.assertEqual(len(stderr.strip().splitlines()), 1)
        self.assertIn("--min-cor", stderr)

    def test_usage_errors(self):

        for args in [['--min-util', '20%'],
                     ['--input', self.paths['pairs'], '--min-util', '20%'],
                     ['--input', self.paths['pairs'], '--profits', self.paths['profits'],
                      '--min-util', 'lots'],
                     ['--input', self.paths['pairs'], '--profits', self.paths['profits'],
                      '--strategies', 'sorted', '--item-order', 'twu'],
                     ['--input', self.paths['pairs'], '--profits', self.paths['profits'],
                      '--bench', '0'],
                     ['--strategies', 'fast'],
                     ['--min-cor', 'high']]:
            code, _, stderr = _run(args)
            self.assertEqual(code, EXIT_USAGE, args)
            self.assertTrue(stderr.startswith("openhuim: error: "), args)
            self.assertEqual(len(stderr.strip().splitlines()), 1, args)

    def test_parse_error_names_the_line(self):

        broken = os.path.join(self.directory, 'broken.txt')
        with open(broken, 'w', encoding='utf-8') as handle:
            handle.write("1:1\n1:0\n")

        code, _, stderr = _run(['--input', broken, '--profits', self.paths['profits']])

        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("line 2", stderr)

    def test_missing_file(self):

        code, _, stderr = _run(['--input', os.path.join(self.directory, 'nope.txt'),
                                '--format', 'spmf'])

        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("nope.txt", stderr)

    def test_oracle(self):

        code, _, stderr = self._mine_example('--min-cor', '0.7', '--oracle')

        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stderr, "")

    def test_oracle_on_generated_databases(self):

        for seed in range(5):
            text, profit_text = write_quantity_pairs(random_database(seed, 8, 20, 5, 10, 0.5))
            for name, content in [('gen', text), ('gen_profits', profit_text)]:
                with open(os.path.join(self.directory, name), 'w', encoding='utf-8') as handle:
                    handle.write(content)
            code, _, _ = _run(['--input', os.path.join(self.directory, 'gen'),
                               '--profits', os.path.join(self.directory, 'gen_profits'),
                               '--min-util', '5%', '--min-cor', '0.4', '--oracle'])
            self.assertEqual(code, EXIT_OK)

    def test_oracle_mismatch_exit_code(self):

        from unittest import mock

        with mock.patch('openhuim.io.cli.brute_force_mine', return_value=[]):
            code, _, stderr = self._mine_example('--min-cor', '0.7', '--oracle')

        self.assertEqual(code, EXIT_ORACLE_MISMATCH)
        self.assertIn("--oracle", stderr)

    def test_bench(self):

        code, stdout, _ = self._mine_example('--min-cor', '0.7', '--bench', '3')

        self.assertEqual(code, EXIT_OK)
        self.assertIn("# bench_repetitions: 3", stdout)
        self.assertIn("# bench_min_ms: ", stdout)
        self.assertIn("# bench_median_ms: ", stdout)

    def test_threshold_sweep(self):

        code, stdout, _ = self._mine_example('--min-cor', '0.7', '--sweep-min-cor', '0,0.7,1')

        self.assertEqual(code, EXIT_OK)
        lines = stdout.splitlines()
        start = lines.index("# SWEEP: min_util min_cor hui_count strategies patterns_found "
                            "nodes_visited peak_live_lists wall_time_ms")
        rows = [line[2:].split() for line in lines[start + 1:]]
        self.assertEqual(len(rows), 3 * 4)
        self.assertEqual({(row[0], row[1], row[2], row[4]) for row in rows},
                         {('30', '0', '15', '15'), ('30', '0.7', '15', '7'), ('30', '1', '15', '1')})
        self.assertEqual({row[3] for row in rows}, {'ubu', 'sorted', 'la', 'sorted+la'})

    def test_threshold_sweep_on_generated_database(self):

        text, profit_text = write_quantity_pairs(random_database(7, 12, 200, 5, 10, 0.5))
        for name, content in [('dense', text), ('dense_profits', profit_text)]:
            with open(os.path.join(self.directory, name), 'w', encoding='utf-8') as handle:
                handle.write(content)

        code, stdout, _ = _run(['--input', os.path.join(self.directory, 'dense'),
                                '--profits', os.path.join(self.directory, 'dense_profits'),
                                '--min-cor', '0.5', '--sweep-min-util', '5%,10%,20%'])

        self.assertEqual(code, EXIT_OK)
        rows = [line[2:].split() for line in stdout.splitlines()
                if line.startswith('# ') and line[2:].split()[3:4] in (['ubu'], ['sorted+la'])]
        nodes = {(row[0], row[3]): int(row[5]) for row in rows}
        self.assertEqual(len(nodes), 6)
        for threshold in {row[0] for row in rows}:
            self.assertLessEqual(nodes[(threshold, 'sorted+la')], nodes[(threshold, 'ubu')])

    def test_threshold_sweep_errors(self):

        code, _, stderr = self._mine_example('--sweep-min-cor', '0.5,2')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--sweep-min-cor", stderr)

        code, _, stderr = self._mine_example('--sweep-min-util', '10%,x')
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--sweep-min-util", stderr)

    def test_generate_pairs(self):

        output = os.path.join(self.directory, 'generated.txt')
        profits = os.path.join(self.directory, 'generated_profits.txt')

        code, _, _ = _run(['--gen', '--seed', '1', '--n-items', '5', '--n-tx', '10',
                           '--max-qty', '5', '--max-profit', '10', '--density', '0.4',
                           '--output', output, '--profits', profits])

        self.assertEqual(code, EXIT_OK)
        with open(output, encoding='utf-8') as data, open(profits, encoding='utf-8') as table:
            db = parse_quantity_pairs(data.read(), table.read())
        self.assertEqual(write_quantity_pairs(db),
                         write_quantity_pairs(random_database(1, 5, 10, 5, 10, 0.4)))

    def test_generate_spmf_to_stdout(self):

        code, stdout, _ = _run(['--gen', '--format', 'spmf', '--seed', '4'])

        self.assertEqual(code, EXIT_OK)
        self.assertGreater(parse_spmf_utility(stdout).total_utility, 0)

    def test_generate_errors(self):

        code, _, stderr = _run(['--gen', '--n-tx', '0', '--format', 'spmf'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("n_tx", stderr)

        code, _, stderr = _run(['--gen'])
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--profits", stderr)

    def test_version(self):

        code, stdout, _ = _run(['--version'])

        self.assertEqual(code, EXIT_OK)
        self.assertTrue(stdout.startswith("openhuim "))


if __name__ == "__main__":
    unittest.main()
