"""End-to-end checks of the d2lab command line: JSON reports against the
shipped schema for every subcommand and fixture, and documented exit codes."""

import argparse
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

CLI = ""
VALIDATOR = None
FIXTURE_DIR = ""
FIXTURES = [f"P{i}" for i in range(1, 14)]


def run(*args, env=None):
    proc = subprocess.run([CLI, *args], capture_output=True, text=True, env=env, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def run_json(*args, env=None):
    code, out, err = run(*args, "--format", "json", env=env)
    report = json.loads(out)
    VALIDATOR.validate(report)
    assert report["exit_code"] == code, (args, report["exit_code"], code)
    return code, report


class DocumentedExamples(unittest.TestCase):
    def test_s5_valid(self):
        code, out, _ = run("s5", "<>(<>p -> p)")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("VALID"))

    def test_s5_invalid(self):
        code, report = run_json("s5", "<>p -> p")
        self.assertEqual(code, 1)
        cm = report["result"]["verdict"]["countermodel"]
        self.assertEqual(cm["worlds"], ["0", "1"])
        self.assertEqual(cm["world"], 0)

    def test_translate(self):
        code, out, _ = run("translate", "p ^ q")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "p & <>q")
        code, out, _ = run("translate", "p ^ q", "--dconj", "left")
        self.assertEqual(out.strip(), "<>p & q")

    def test_claims_verify(self):
        code, report = run_json("paper-verify")
        records = report["result"]["records"]
        self.assertEqual(len(records), 13)
        self.assertTrue(all(r["computed"]["target_refuted"] for r in records))
        disagree = [r for r in records if r["computed"] != r["expected"]]
        self.assertEqual(bool(report["findings"]), bool(disagree))
        self.assertEqual(code, 1 if report["findings"] else 0)
        self.assertEqual(sorted(r["matrix"] for r in disagree), ["P1", "P13", "P4"])

    def test_classify_findings_match_disagreements(self):
        code, report = run_json("classify")
        rows = report["result"]["d_axioms"] + report["result"]["c_axioms"]
        flagged = {r["axiom"] for r in rows if r["agreement"] == "FINDING"}
        flagged |= {r["axiom"] for r in report["result"]["c_axioms"] if not r["verdict"]["valid"]}
        self.assertEqual({f["subject"] for f in report["findings"]}, flagged)
        self.assertEqual(code, 1 if flagged else 0)

    def test_classify_shows_both_variants_when_they_differ(self):
        _, out, _ = run("classify")
        self.assertIn("left ^: invalid", out)

    def test_d2_axiom_ids(self):
        self.assertEqual(run("d2", "DDK10")[0], 0)
        self.assertEqual(run("d2", "DDK19")[0], 1)
        code, report = run_json("d2", "(p ^ ~p) => q")
        self.assertEqual(code, 1)
        self.assertEqual(report["result"]["obligation"], "<>(<>(p & <>~p) -> q)")

    def test_eval_examples(self):
        code, report = run_json("eval", "-m", "P1", "-a", "p=1", "p => ~~p")
        self.assertEqual((code, report["result"]["value"]), (1, 2))
        code, report = run_json("eval", "-m", "P1", "-a", "p=1,q=2", "p | q")
        self.assertEqual((code, report["result"]["value"]), (0, 1))

    def test_check_refutation(self):
        code, report = run_json("check", "-m", "P13", "-s", "C13")
        self.assertEqual(code, 1)
        code, report = run_json("check", "-m", "P2", "-s", "C", "-r", "DDK12")
        self.assertEqual(code, 0)


class SchemaStrictness(unittest.TestCase):
    def test_rejects_malformed_reports(self):
        _, report = run_json("d2", "DDK19")
        broken = json.loads(json.dumps(report))
        broken["result"]["verdict"]["countermodel"] = None
        self.assertFalse(VALIDATOR.is_valid(broken))
        broken = json.loads(json.dumps(report))
        broken["error"] = "both"
        self.assertFalse(VALIDATOR.is_valid(broken))
        broken = json.loads(json.dumps(report))
        del broken["findings"]
        self.assertFalse(VALIDATOR.is_valid(broken))


class ErrorsAndLimits(unittest.TestCase):
    def test_parse_error(self):
        code, report = run_json("s5", "p |")
        self.assertEqual(code, 2)
        self.assertIn("offset", report["error"])

    def test_wrong_language(self):
        self.assertEqual(run("d2", "<>p")[0], 2)

    def test_unknown_subcommand(self):
        self.assertEqual(run("frobnicate")[0], 2)

    def test_bad_matrix_file(self):
        with tempfile.NamedTemporaryFile("w", suffix=".matrix", delete=False) as f:
            f.write("size 2\nneg 1 2\n")
        try:
            code, report = run_json("check", "-m", f.name, "-s", "C")
            self.assertEqual(code, 2)
        finally:
            os.unlink(f.name)
        self.assertEqual(run("check", "-m", "/nonexistent.matrix", "-s", "C")[0], 2)
        self.assertEqual(run("check", "-m", "P99", "-s", "C")[0], 2)

    def test_atom_limit(self):
        code, report = run_json("s5", "p | q | r | s | t")
        self.assertEqual(code, 3)

    def test_budget_from_environment(self):
        env = dict(os.environ, D2LAB_BUDGET="0")
        code, report = run_json("search", "-n", "4", "-s", "C1,C2,C3", env=env)
        self.assertEqual(code, 3)
        self.assertEqual(report["result"]["termination"], "budget_exhausted")


class EveryFixture(unittest.TestCase):
    def test_check_and_eval_on_every_fixture(self):
        for fid in FIXTURES:
            path = os.path.join(FIXTURE_DIR, fid + ".matrix")
            for matrix in (fid, path):
                for system in ("C", "D"):
                    code, report = run_json("check", "-m", matrix, "-s", system)
                    failed = [a for a in report["result"]["axioms"] if not a["pass"]]
                    mp = report["result"]["mp"]["pass"]
                    self.assertEqual(code, 0 if not failed and mp else 1, (matrix, system))
                run_json("eval", "-m", matrix, "-a", "A=1,B=2", "A => (B => A)")

    def test_published_claims_on_every_fixture(self):
        claims = {r["matrix"]: r for r in run_json("paper-verify")[1]["result"]["records"]}
        for fid in FIXTURES:
            claim = claims[fid]
            code, report = run_json("check", "-m", fid, "-s", claim["system"], "-r", claim["target"])
            self.assertFalse(report["result"]["refutations"][0]["pass"], fid)

    def test_decision_commands_on_every_axiom(self):
        for ax in [f"DDK{i}" for i in range(1, 23)] + [f"C{i}" for i in range(1, 16)]:
            for variant in ("right", "left"):
                code, report = run_json("d2", ax, "--dconj", variant)
                self.assertEqual(code, 0 if report["result"]["verdict"]["valid"] else 1)
            run_json("translate", ax)
        run_json("classify", "--dconj", "left")
        run_json("classify", "--no-outer-diamond")

    def test_search_and_export(self):
        with tempfile.TemporaryDirectory() as d:
            code, report = run_json("search", "-n", "2", "-s", "C1", "--limit", "3", "-o", d)
            self.assertEqual(code, 0)
            self.assertEqual(report["result"]["termination"], "limit_reached")
            self.assertEqual(len(os.listdir(d)), 3)
            for name in os.listdir(d):
                run_json("check", "-m", os.path.join(d, name), "-s", "C1")
        code, report = run_json("search", "-n", "2", "-s", "C", "-r", "DDK10")
        self.assertEqual((code, report["result"]["count"], report["result"]["termination"]), (0, 0, "exhausted"))
        with tempfile.TemporaryDirectory() as d:
            code, report = run_json("export-fixtures", "-o", d)
            self.assertEqual(len(report["result"]["files"]), 13)
            for fid in FIXTURES:
                with open(os.path.join(d, fid + ".matrix")) as a, open(os.path.join(FIXTURE_DIR, fid + ".matrix")) as b:
                    self.assertEqual(a.read(), b.read(), fid)


def main():
    global CLI, VALIDATOR, FIXTURE_DIR
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    parser.add_argument("--fixtures", required=True)
    args, rest = parser.parse_known_args()
    CLI = args.cli
    FIXTURE_DIR = args.fixtures
    with open(args.schema) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    VALIDATOR = jsonschema.Draft202012Validator(schema)
    unittest.main(argv=[sys.argv[0], "-v", *rest])


if __name__ == "__main__":
    main()
