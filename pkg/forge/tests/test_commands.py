import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from forge.conf import EngineSettings

SL3 = {"p": 5, "matrix": [["2", "-1"], ["-1", "2"]], "parity": "00"}
BRJ3 = {"p": 3, "matrix": [["0", "-1"], ["-2", "1"]], "parity": "11"}
AFFINE = {"p": 5, "matrix": [["2", "-2"], ["-2", "2"]], "parity": "00"}
SL3_P2 = {"p": 2, "matrix": [["ev", "1"], ["1", "ev"]], "parity": "00"}


@override_settings(CARTANFORGE=EngineSettings(threads=1))
class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def spec_file(self, payload, name="spec.json") -> str:
        path = Path(self.tmp.name) / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)

    def run_json(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return json.loads(out.getvalue())


class BuildCommandTestCase(CommandTestCase):
    def test_build_reports_sdim_and_roots(self):
        report = self.run_json("build", self.spec_file(SL3))
        self.assertEqual(report["verdict"], "finite")
        self.assertEqual(report["sdim"], {"even": 8, "odd": 0})
        self.assertEqual(report["corank"], 0)
        self.assertEqual(report["simple_roots"], [[0, 1], [1, 0]])
        self.assertTrue(report["core_simple"])

    def test_audit_lists_the_basis(self):
        report = self.run_json("build", self.spec_file(SL3), "--audit", "--no-structure")
        self.assertEqual(len(report["basis"]), 8)
        self.assertNotIn("derived", report)

    def test_cap_exceeded_exit_code(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("build", self.spec_file(AFFINE), "--height-cap", "6", stdout=out)
        self.assertEqual(ctx.exception.returncode, 3)
        self.assertEqual(json.loads(out.getvalue())["verdict"], "exceeded_cap")

    def test_invalid_spec_exit_code(self):
        bad = {"p": 3, "matrix": [["2", "0"], ["-1", "2"]], "parity": "00"}
        with self.assertRaises(CommandError) as ctx:
            call_command("build", self.spec_file(bad), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_unreadable_spec(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("build", str(Path(self.tmp.name) / "missing.json"), stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_param_value_specializes(self):
        parametric = {"p": 5, "matrix": [["2", "-1"], ["-a", "2"]], "parity": "00"}
        report = self.run_json("build", self.spec_file(parametric), "--param-value", "1")
        self.assertEqual(report["sdim"], {"even": 8, "odd": 0})

    def test_out_writes_a_file(self):
        target = Path(self.tmp.name) / "report.json"
        out = StringIO()
        call_command("build", self.spec_file(SL3), "--out", str(target), stdout=out)
        self.assertIn("Wrote", out.getvalue())
        self.assertEqual(json.loads(target.read_text())["sdim"]["even"], 8)


class DiagramCommandTestCase(CommandTestCase):
    def test_text(self):
        out = StringIO()
        call_command("dynkin", self.spec_file(SL3), stdout=out)
        self.assertEqual(out.getvalue(), "O-1-O\n")

    def test_json_with_symmetries(self):
        payload = self.run_json("dynkin", self.spec_file(SL3), "--format", "json", "--symmetries")
        self.assertEqual(payload["symmetries"], [[2, 1]])
        self.assertTrue(payload["dot"].startswith("digraph dynkin"))

    def test_fixed_points(self):
        payload = self.run_json("fixed", self.spec_file(SL3))
        self.assertEqual(len(payload["fixed"]), 1)
        self.assertEqual(payload["fixed"][0]["sigma"], [2, 1])
        self.assertEqual(payload["fixed"][0]["sdim"], {"even": 3, "odd": 0})

    def test_fixed_points_in_characteristic_two(self):
        payload = self.run_json("fixed", self.spec_file(SL3_P2), "--compare")
        (entry,) = payload["fixed"]
        self.assertEqual(entry["sdim"], {"even": 3, "odd": 0})
        self.assertEqual(entry["invariants"], {"even": 5, "odd": 0})
        self.assertEqual(entry["folded"]["matrix"], [["od"]])
        self.assertEqual(entry["folded_sdim"], {"even": 3, "odd": 0})


class OrbitCommandTestCase(CommandTestCase):
    def test_orbit(self):
        payload = self.run_json("orbit", self.spec_file(BRJ3))
        self.assertEqual(len(payload["members"]), 3)
        self.assertEqual(payload["sdim"], {"even": 10, "odd": 8})
        self.assertEqual(len(payload["rectangle"]), 3)
        self.assertGreaterEqual(len(payload["ordered"]), 3)
        self.assertEqual(len(payload["ordered_rectangle"]), len(payload["ordered"]))

    def test_orbit_pdf(self):
        target = Path(self.tmp.name) / "orbit.pdf"
        self.run_json("orbit", self.spec_file(SL3), "--no-verify", "--pdf", str(target))
        self.assertTrue(target.read_bytes().startswith(b"%PDF"))

    def test_orbit_cap(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("orbit", self.spec_file(BRJ3), "--orbit-cap", "2", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 3)


class StructureCommandTestCase(CommandTestCase):
    def test_restricted(self):
        payload = self.run_json("restricted", self.spec_file({"p": 5, "matrix": [["2"]], "parity": "0"}))
        self.assertTrue(payload["restricted"])
        self.assertEqual(payload["variant"], "5|10")
        self.assertIn(["h1", "1"], [power for item in payload["p_powers"] for power in item["power"]])
        self.assertEqual(payload["pairs_checked"], 3)

    def test_restricted_with_a_grading(self):
        spec = self.spec_file({"p": 2, "matrix": [["od", "1"], ["1", "ev"]], "parity": "00"})
        payload = self.run_json("restricted", spec, "--grading", "1,0")
        self.assertEqual(payload["variant"], "(2,4)")
        self.assertFalse(payload["heuristic_grading"])

    def test_restricted_grading_needs_one_weight_per_node(self):
        spec = self.spec_file({"p": 2, "matrix": [["od", "1"], ["1", "ev"]], "parity": "00"})
        with self.assertRaises(CommandError) as ctx:
            call_command("restricted", spec, "--grading", "1", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_classical(self):
        payload = self.run_json("classical", "gl", "--p", "3", "--params", "m=2,n=1")
        self.assertEqual(payload["name"], "gl(2|1)")
        self.assertEqual(payload["sdim"], {"even": 5, "odd": 4})

    def test_classical_bad_params(self):
        with self.assertRaises(CommandError) as ctx:
            call_command("classical", "gl", "--p", "3", "--params", "m2", stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)

    def test_classify(self):
        payload = self.run_json("classify", "--n", "1", "--p", "2", "--threads", "1")
        self.assertEqual(len(payload["survivors"]), 4)
        self.assertEqual(payload["capped"], [])


class TablesCommandTestCase(CommandTestCase):
    def test_single_family(self):
        target = Path(self.tmp.name) / "tables.pdf"
        payload = self.run_json("tables", "--family", "brj(2;3)", "--pdf", str(target))
        self.assertEqual(len(payload["results"]), 1)
        self.assertTrue(payload["results"][0]["passed"])
        self.assertTrue(target.read_bytes().startswith(b"%PDF"))

    def test_failures_exit_with_one(self):
        bad = {
            "version": 1,
            "entries": [
                {"family": "sl(2)", "p": 5, "matrix": [["2"]], "parity": "0", "sdim": [4, 0], "source": "wrong"},
            ],
        }
        path = self.spec_file(bad, "expectations.json")
        with self.assertRaises(CommandError) as ctx:
            call_command("tables", "--expectations", path, stdout=StringIO())
        self.assertEqual(ctx.exception.returncode, 1)
