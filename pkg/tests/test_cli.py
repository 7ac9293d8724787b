import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import main
from src import config
from src.pipeline import (EXIT_OK, EXIT_ORACLE, EXIT_PARSE, EXIT_VALIDATION, Command, MotifPipeline,
                          error_report, exit_code)
from src.utils import codec
from src.utils.errors import CompatibilityError, OracleFailure, ParseError, ValidationError
from src.utils.reporting import ReportWriter, summarize


def fixture(name):
    return codec.load_file(config.FIXTURES_DIR / name)


def run_cli(*argv):
    """(exit code, parsed stdout report or None)."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main.main(list(argv))
    text = out.getvalue()
    return code, json.loads(text) if text.strip() else None


class TestCodec(unittest.TestCase):

    def test_fixtures_round_trip(self):
        paths = sorted(config.FIXTURES_DIR.glob("*.json"))
        self.assertGreater(len(paths), 40)
        for path in paths:
            raw = json.loads(path.read_text(encoding="utf-8"))
            self.assertEqual(codec.encode(codec.decode(raw)), raw, path.name)

    def test_rationals(self):
        self.assertEqual(codec.encode_rational(codec.decode_rational("6/3")), 2)
        self.assertEqual(codec.encode_rational(codec.decode_rational("-3/6")), "-1/2")
        for bad in (True, 0.5, "x", None):
            with self.assertRaises(ParseError, msg=repr(bad)):
                codec.decode_rational(bad)

    def test_bad_payloads(self):
        with self.assertRaises(ParseError):
            codec.loads("{not json")
        with self.assertRaises(ParseError):
            codec.decode({"kind": "banana"})
        with self.assertRaises(ParseError):
            codec.decode({"kind": "motif", "dV": -1})
        with self.assertRaises(ParseError):
            codec.decode({"kind": "motif", "dV": "1"})
        with self.assertRaises(ValidationError):
            codec.decode({"kind": "motif", "dA": 1})

    def test_named_dimension_payload(self):
        # a bare motif object with string rationals and a factored torus block
        payload = {"dV": 1, "dT": 1, "dC": 1, "rL": 1,
                   "u0_vec": [["2"]], "u0_tor": [["1"]], "uet_vec": [["1/2"]],
                   "uet_tor": [[{"sign": 1, "factors": {"3": 1}}]]}
        m = codec.decode(payload)
        self.assertEqual(m, fixture("motif_mixed.json"))
        encoded = codec.encode(m)
        self.assertEqual([encoded[k] for k in ("dV", "dT", "dC", "rL")], [1, 1, 1, 1])
        self.assertEqual(encoded["uet_tor"], [[{"sign": 1, "factors": {"3": 1}}]])
        self.assertNotIn("dims", encoded)
        plain = dict(payload, uet_tor=[["3"]])
        self.assertEqual(codec.decode(plain), m)

    def test_invalid_morphism_payload(self):
        weyl = codec.encode(fixture("motif_weyl.json"))
        payload = {"kind": "morphism", "source": weyl, "target": weyl,
                   "fV": [[2]], "fT": [], "fC": [[1]], "fL": []}
        with self.assertRaises(CompatibilityError):
            codec.decode(payload)


class TestPipeline(unittest.TestCase):

    def setUp(self):
        self.pipeline = MotifPipeline(seed=0)

    def test_commands(self):
        self.assertEqual(len(Command.list()), 15)
        self.assertFalse(Command.HARNESS.input_required)
        self.assertTrue(Command.DUAL.input_required)

    def test_dual(self):
        report = self.pipeline.run("dual", fixture("motif_mellin.json"))
        self.assertEqual(report, codec.encode(fixture("motif_lattice_vector.json")))

    def test_normal_form(self):
        report = self.pipeline.run("nf", fixture("element_weyl_commutator.json"))
        self.assertEqual(report["normal_form"], "x1*xi1 + 1")
        self.assertEqual(report["degree"], 2)

    def test_algebra_table(self):
        report = self.pipeline.run("algebra", fixture("motif_mixed.json"))
        self.assertFalse(report["commutative"])
        self.assertEqual(report["generators"], ["x1", "t1", "xi1", "s1"])
        self.assertEqual(report["commutators"]["[x1, xi1]"], "-2")
        self.assertEqual(report["commutators"]["[t1, xi1]"], "-t1")
        self.assertNotIn("[xi1, s1]", report["commutators"])

    def test_exactness(self):
        report = self.pipeline.run("exact", fixture("pair_vector_not_exact.json"))
        self.assertFalse(report["exact"])
        self.assertEqual(report["failing_blocks"], ["fV"])

    def test_koszul(self):
        report = self.pipeline.run("koszul", fixture("koszul_2_3.json"))
        self.assertTrue(report["acyclic"])
        self.assertTrue(report["passed"])
        lattice = self.pipeline.run("koszul", fixture("lattice_trivial.json"))
        self.assertEqual(lattice["dims"], {"-1": 1, "0": 1})

    def test_kernel_of_squaring(self):
        report = self.pipeline.run("kernel", fixture("morphism_torus_square.json"))
        self.assertFalse(report["strict_mono"])
        self.assertEqual([report["motif"][k] for k in ("dV", "dT", "dC", "rL")], [0, 0, 0, 0])

    def test_wrong_payload_kind(self):
        report = self.pipeline.run("kernel", fixture("motif_weyl.json"))
        self.assertEqual(report["exit_code"], EXIT_PARSE)

    def test_missing_payload(self):
        self.assertEqual(exit_code(self.pipeline.run("dual", None)), EXIT_PARSE)

    def test_unknown_exchange_shape(self):
        job = codec.decode({"kind": "exchange_job", "shape": "[V->T]", "a": [1], "b": [2]})
        self.assertEqual(exit_code(self.pipeline.run("exchange", job)), EXIT_VALIDATION)

    def test_reports_are_deterministic(self):
        a = MotifPipeline(seed=3, trials=2).run("exchange")
        b = MotifPipeline(seed=3, trials=2).run("exchange")
        self.assertEqual(codec.dumps(a), codec.dumps(b))
        self.assertEqual(len(a["cases"]), 2)


class TestExitCodes(unittest.TestCase):

    def test_mapping(self):
        self.assertEqual(exit_code({"kind": "x"}), EXIT_OK)
        self.assertEqual(exit_code({"passed": False}), EXIT_ORACLE)
        self.assertEqual(exit_code(error_report("nf", ParseError("bad"))), EXIT_PARSE)
        self.assertEqual(exit_code(error_report("dual", CompatibilityError("bad"))), EXIT_VALIDATION)
        self.assertEqual(exit_code(error_report("fourier", OracleFailure("bad"))), EXIT_ORACLE)
        self.assertEqual(exit_code(error_report("fourier", RuntimeError("bad"))), EXIT_ORACLE)

    def test_failed_check_is_attached(self):
        failed = {"kind": "agreement", "passed": False}
        report = error_report("fourier", OracleFailure("agreement check failed", failed))
        self.assertEqual(report["failed"], failed)
        self.assertEqual(report["exit_code"], EXIT_ORACLE)
        self.assertNotIn("failed", error_report("fourier", OracleFailure("bad")))

    def test_cli_success(self):
        code, report = run_cli("dual", "--in", str(config.FIXTURES_DIR / "motif_torus.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(report, codec.encode(fixture("motif_lattice.json")))

    def test_cli_parse_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            bad = Path(tmp) / "bad.json"
            bad.write_text('{"kind": "element", "motif": ' + json.dumps(codec.encode(fixture("motif_weyl.json")))
                           + ', "element": "x2"}', encoding="utf-8")
            code, report = run_cli("nf", "--in", str(bad))
            self.assertEqual(code, EXIT_PARSE)
            self.assertEqual(report["error_type"], "ParseError")
            code, _ = run_cli("dual", "--in", str(Path(tmp) / "missing.json"))
            self.assertEqual(code, EXIT_PARSE)

    def test_cli_validation_error(self):
        weyl = codec.encode(fixture("motif_weyl.json"))
        payload = {"kind": "morphism", "source": weyl, "target": weyl,
                   "fV": [[2]], "fT": [], "fC": [[1]], "fL": []}
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "morphism.json"
            path.write_text(json.dumps(payload), encoding="utf-8")
            code, report = run_cli("kernel", "--in", str(path))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertEqual(report["error_type"], "CompatibilityError")
        code, report = run_cli("koszul", "--in", str(config.FIXTURES_DIR / "koszul_1_0.json"))
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertEqual(report["error_type"], "ValidationError")

    def test_cli_writes_out_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            code, printed = run_cli("koszul", "--in", str(config.FIXTURES_DIR / "koszul_2_3.json"),
                                    "--out", str(out))
            self.assertEqual(code, EXIT_OK)
            self.assertIsNone(printed)
            self.assertEqual(json.loads(out.read_text(encoding="utf-8"))["kind"], "koszul_homology")


class TestReporting(unittest.TestCase):

    def test_resolve(self):
        writer = ReportWriter(reports_dir="/tmp/motif-reports")
        self.assertEqual(writer.resolve("a.json"), Path("/tmp/motif-reports/a.json"))
        self.assertEqual(writer.resolve("sub/a.json"), Path("sub/a.json"))

    def test_stream(self):
        buf = io.StringIO()
        ReportWriter(stream=buf).write({"b": 1, "a": 2})
        self.assertEqual(buf.getvalue(), '{\n  "a": 2,\n  "b": 1\n}\n')

    def test_summary(self):
        self.assertEqual(summarize({"kind": "harness_report", "passed": False, "failures": 2}),
                         "harness_report: FAILED (2 failures)")
        self.assertEqual(summarize({"kind": "algebra"}), "algebra: ok")


if __name__ == "__main__":
    unittest.main()
