# Copyright 2026 The qramforge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exit-code contract of the command-line tool: 0 ok, 1 verification failure, 2 usage or input errors."""

import csv
import io
import json
import os
import subprocess
import sys
import tempfile
import unittest

CLI = None


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True, timeout=120)


class Synth(unittest.TestCase):
    def test_json_on_stdout(self):
        r = run("synth", "--n", "2", "--m", "1", "--family", "qram", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        self.assertEqual(doc["format"], "qramforge-circuit/1")
        self.assertEqual(doc["parameters"]["n"], 2)

    def test_qasm_to_file(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "c.qasm")
            r = run("synth", "--n", "1", "--m", "2", "--variant", "fanout", "--format", "qasm", "--out", out)
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(out) as f:
                self.assertTrue(f.read().startswith("OPENQASM 2.0;"))

    def test_deterministic(self):
        a = run("synth", "--n", "2", "--m", "2", "--family", "random", "--seed", "4", "--include-matrices")
        b = run("synth", "--n", "2", "--m", "2", "--family", "random", "--seed", "4", "--include-matrices")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)

    def test_usage_errors(self):
        for args in (["synth", "--bogus"], ["synth", "--format", "yaml"], ["synth", "--n", "0"],
                     ["synth", "--n", "2", "--m", "4", "--variant", "fanout", "--s", "9"],
                     ["synth", "--n", "2", "--k", "1,2,3"], ["frobnicate"], []):
            r = run(*args)
            self.assertEqual(r.returncode, 2, f"{args}: {r.stdout} {r.stderr}")


class Analyze(unittest.TestCase):
    def test_csv_matches_closed_forms(self):
        r = run("analyze", "--n", "10", "--m", "4", "--csv")
        self.assertEqual(r.returncode, 0, r.stderr)
        row = next(csv.DictReader(io.StringIO(r.stdout)))
        n, m = 10, 4
        life = 2 ** (n + 1) - 1
        adr = sum((n - k - 1) * 2 ** k for k in range(n))
        res = m * (2 ** (n + 1) - 2)
        self.assertEqual(int(row["ancilla_life"]), life)
        self.assertEqual(int(row["ancilla_adr"]), adr)
        self.assertEqual(int(row["ancilla_res"]), res)
        self.assertEqual(int(row["ancilla_total"]), life + adr + res)
        self.assertEqual(int(row["qubits"]), n + m + life + adr + res + int(row["mem"]))

    def test_table_and_file_input(self):
        self.assertEqual(run("analyze", "--n", "3", "--m", "2").returncode, 0)
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "c.json")
            self.assertEqual(run("synth", "--n", "2", "--m", "3", "--out", path).returncode, 0)
            r = run("analyze", "--in", path, "--csv")
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertEqual(next(csv.DictReader(io.StringIO(r.stdout)))["m"], "3")

    def test_input_errors(self):
        with tempfile.TemporaryDirectory() as d:
            bad = os.path.join(d, "bad.json")
            with open(bad, "w") as f:
                f.write('{"format": "qramforge-circuit/9"}')
            self.assertEqual(run("analyze", "--in", bad).returncode, 2)
            self.assertEqual(run("analyze", "--in", os.path.join(d, "missing.json")).returncode, 2)
        self.assertEqual(run("analyze", "--csv", "--nope").returncode, 2)


class Simulate(unittest.TestCase):
    def test_reads_selected_cell(self):
        r = run("simulate", "--n", "2", "--m", "1", "--address", "2", "--mem", "0,0,1,0")
        self.assertEqual(r.returncode, 0, r.stderr)
        state = json.loads(r.stdout)
        self.assertEqual(len(state["entries"]), 1)
        self.assertEqual(state["entries"][0]["bitstring"], "0110010")

    def test_state_out_and_file_input(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "c.json")
            self.assertEqual(run("synth", "--n", "1", "--m", "1", "--family", "random", "--seed", "3",
                                 "--out", path).returncode, 0)
            out = os.path.join(d, "s.json")
            r = run("simulate", "--in", path, "--address", "1", "--state-out", out)
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(out) as f:
                self.assertEqual(json.load(f)["format"], "qramforge-state/1")

    def test_input_errors(self):
        self.assertEqual(run("simulate", "--n", "2", "--address", "4").returncode, 2)
        self.assertEqual(run("simulate", "--n", "2", "--mem", "1,1").returncode, 2)
        self.assertEqual(run("simulate", "--in", "/nonexistent/c.json").returncode, 2)
        self.assertEqual(run("simulate", "--address").returncode, 2)


class Verify(unittest.TestCase):
    def test_exhaustive_pass(self):
        r = run("verify", "--n", "2", "--m", "1", "--family", "qram", "--exhaustive")
        self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
        self.assertIn("PASS", r.stdout)

    def test_report_file(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "r.json")
            r = run("verify", "--n", "1", "--m", "2", "--family", "rotation", "--cases", "5", "--report", out,
                    "--superposition", "--variants")
            self.assertEqual(r.returncode, 0, r.stdout + r.stderr)
            with open(out) as f:
                self.assertTrue(json.load(f)["passed"])

    def test_broken_circuit_fails(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "c.json")
            self.assertEqual(run("synth", "--n", "2", "--m", "1", "--out", path).returncode, 0)
            self.assertEqual(run("verify", "--in", path).returncode, 0)
            with open(path) as f:
                doc = json.load(f)
            del doc["moments"][3]
            with open(path, "w") as f:
                json.dump(doc, f)
            r = run("verify", "--in", path)
            self.assertEqual(r.returncode, 1, r.stdout + r.stderr)
            self.assertIn("FAIL", r.stdout)

    def test_usage_errors(self):
        self.assertEqual(run("verify", "--exhaustive", "--cases", "3").returncode, 2)
        self.assertEqual(run("verify", "--tolerance", "-1").returncode, 2)
        self.assertEqual(run("verify", "--family", "teleport").returncode, 2)
        with tempfile.TemporaryDirectory() as d:
            bad = os.path.join(d, "bad.json")
            with open(bad, "w") as f:
                f.write("not json")
            self.assertEqual(run("verify", "--in", bad).returncode, 2)


if __name__ == "__main__":
    CLI = sys.argv.pop(1)
    unittest.main(verbosity=2)
