import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase, override_settings, tag

from forge.conf import EngineSettings
from forge.errors import ExpectationFileInvalid
from forge.expectations import (
    Expectation,
    _simply_laced,
    check_entry,
    load_expectations,
    select,
    verify_tables,
)

SINGLE_THREAD = EngineSettings(threads=1)


class LoadExpectationsTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, payload) -> Path:
        path = Path(self.tmp.name) / "expectations.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        return path

    def test_bundled_file_loads(self):
        entries = load_expectations()
        keys = {(e.family, e.p) for e in entries}
        self.assertIn(("brj(2;3)", 3), keys)
        self.assertIn(("e(6)", 3), keys)

    def test_edges_expand_to_a_simply_laced_matrix(self):
        self.assertEqual(
            _simply_laced(3, [[1, 2], [2, 3]], "000"),
            [["2", "-1", "0"], ["-1", "2", "-1"], ["0", "-1", "2"]],
        )
        self.assertEqual(_simply_laced(2, [[1, 2]], "01"), [["ev", "-1"], ["-1", "0"]])

    def test_select(self):
        entries = load_expectations()
        self.assertEqual([e.family for e in select(entries, family="brj(2;5)")], ["brj(2;5)"])
        self.assertTrue(all(not e.slow for e in select(entries, include_slow=False)))
        self.assertTrue(all(e.p == 2 for e in select(entries, p=2)))

    def test_wrong_version(self):
        with self.assertRaises(ExpectationFileInvalid):
            load_expectations(self.write({"version": 2, "entries": []}))

    def test_duplicate_entries(self):
        entry = {"family": "sl(2)", "p": 5, "matrix": [["2"]], "parity": "0", "sdim": [3, 0], "source": "sl(2)"}
        with self.assertRaises(ExpectationFileInvalid):
            load_expectations(self.write({"version": 1, "entries": [entry, entry]}))

    def test_malformed_entries(self):
        missing = {"family": "sl(2)", "p": 5, "parity": "0", "sdim": [3, 0], "source": "sl(2)"}
        with self.assertRaises(ExpectationFileInvalid):
            load_expectations(self.write({"version": 1, "entries": [missing]}))
        bad_sdim = dict(missing, matrix=[["2"]], sdim=[3])
        with self.assertRaises(ExpectationFileInvalid):
            load_expectations(self.write({"version": 1, "entries": [bad_sdim]}))

    def test_unreadable_file(self):
        with self.assertRaises(ExpectationFileInvalid):
            load_expectations(Path(self.tmp.name) / "missing.json")


class CheckEntryTestCase(SimpleTestCase):
    def test_passing_entry(self):
        entry = Expectation("sl(3)", 5, (("2", "-1"), ("-1", "2")), "00", (8, 0), "sl(3)", orbit=1, orbit_ordered=1)
        result = check_entry(entry)
        self.assertTrue(result.passed)
        self.assertEqual(result.observed["sdim"], [8, 0])
        self.assertEqual(result.observed["orbit"], 1)
        self.assertEqual(result.observed["orbit_ordered"], 1)

    def test_node_ordered_count_mismatch(self):
        entry = Expectation("brj(2;3)", 3, (("0", "-1"), ("-2", "1")), "11", (10, 8), "brj", orbit_ordered=99)
        result = check_entry(entry)
        self.assertFalse(result.passed)
        self.assertIn("node-ordered orbit size", result.failures[0])

    def test_failing_entry_lists_the_mismatch(self):
        entry = Expectation("sl(2)", 5, (("2",),), "0", (4, 0), "wrong on purpose")
        result = check_entry(entry)
        self.assertFalse(result.passed)
        self.assertEqual(len(result.failures), 1)
        self.assertEqual(result.to_json()["observed"], {"sdim": [3, 0]})

    def test_errors_become_failures(self):
        entry = Expectation("broken", 3, (("2", "0"), ("-1", "2")), "00", (1, 0), "asymmetric zeros")
        result = check_entry(entry)
        self.assertFalse(result.passed)
        self.assertTrue(result.failures[0].startswith("ZeroPatternAsymmetric"))


@override_settings(CARTANFORGE=SINGLE_THREAD)
class VerifyTablesTestCase(SimpleTestCase):
    def test_brj_characteristic_three(self):
        results = verify_tables(family="brj(2;3)")
        self.assertEqual(len(results), 1)
        self.assertTrue(results[0].passed, results[0].failures)

    def test_fast_tables_pass(self):
        for result in verify_tables(include_slow=False):
            self.assertTrue(result.passed, f"{result.family} p={result.p}: {result.failures}")

    def test_relabelled_matrices_are_counted_apart(self):
        (result,) = verify_tables(family="g(2,3)")
        self.assertTrue(result.passed, result.failures)
        self.assertEqual(result.observed["orbit"], 4)
        self.assertEqual(result.observed["orbit_ordered"], 5)

    @tag("slow")
    def test_slow_tables_pass(self):
        slow = [e for e in load_expectations() if e.slow]
        for entry in slow:
            result = check_entry(entry)
            self.assertTrue(result.passed, f"{result.family} p={result.p}: {result.failures}")

    @tag("slow")
    def test_e77_orbit_and_odd_module(self):
        (result,) = verify_tables(family="e(7,7)")
        self.assertEqual(result.observed["orbit"], 36)
        self.assertEqual(result.observed["highest_weights"], 1)
