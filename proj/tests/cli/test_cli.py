# Copyright 2026 The unisheaf Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end tests of the unisheaf command line tool.

Usage: test_cli.py PATH_TO_UNISHEAF
"""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

BINARY = None


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("UNISHEAF_STORE", None)
    if env:
        full_env.update(env)
    return subprocess.run([BINARY, *args], capture_output=True, text=True, env=full_env, check=False)


def status_lines(proc):
    return [json.loads(line) for line in proc.stderr.splitlines() if line.startswith("{")]


class UniformizerTest(unittest.TestCase):
    def test_carlitz_series(self):
        proc = run("uniformizer", "--q", "2", "--theta", "1", "--prec", "6")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        result = json.loads(proc.stdout)["result"]
        coeffs = result["uniformizer"]["series"][0][0]["coeffs"]
        self.assertEqual(len(coeffs), 6)
        self.assertEqual(coeffs[0], [1])
        # a_1 = omega, the generator of F_4 with omega^2 + omega + 1 = 0.
        self.assertEqual(coeffs[1], [0, 1])
        cross = result["cross_validation"]
        self.assertTrue(cross["consistent"] and cross["constant"] and cross["over_fq"])
        self.assertTrue(result["master_invariant"])

    def test_precision_one(self):
        proc = run("uniformizer", "--q", "2", "--theta", "1", "--prec", "1")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        coeffs = json.loads(proc.stdout)["result"]["uniformizer"]["series"][0][0]["coeffs"]
        self.assertEqual(coeffs, [[1]])

    def test_zero_theta(self):
        proc = run("uniformizer", "--q", "2", "--theta", "0")
        self.assertEqual(proc.returncode, 18)
        self.assertEqual(status_lines(proc)[-1]["error"], "CharacteristicCollision")
        self.assertEqual(proc.stdout, "")

    def test_out_matches_stdout(self):
        with tempfile.TemporaryDirectory() as d:
            out = pathlib.Path(d) / "u.json"
            a = run("uniformizer", "--q", "3", "--theta", "2", "--out", str(out))
            b = run("uniformizer", "--q", "3", "--theta", "2")
            self.assertEqual(a.returncode, 0, a.stderr)
            self.assertEqual(a.stdout, "")
            self.assertEqual(out.read_text(), b.stdout)


class CommandsTest(unittest.TestCase):
    def test_rank_two_commands(self):
        base = ["--q", "2", "--theta", "1", "--g", "0", "--g", "1"]
        cases = [
            ["baker", "--prec", "11", "--window", "4,7", "--exponents", "1,0"],
            ["scattering", "--prec", "9"],
            ["lattice-check", "--prec", "13", "--window", "4,5"],
            ["stabilizer", "--prec", "13", "--window", "4,5"],
        ]
        for case in cases:
            with self.subTest(command=case[0]):
                proc = run(case[0], *base, *case[1:])
                self.assertEqual(proc.returncode, 0, proc.stderr)
                result = json.loads(proc.stdout)["result"]
                if case[0] == "baker":
                    self.assertTrue(result["baker"]["routes_agree"])
                    self.assertTrue(result["baker"]["in_lattice"])
                if case[0] == "lattice-check":
                    self.assertTrue(result["report"]["passes"])
                if case[0] == "stabilizer":
                    self.assertTrue(result["report"]["polynomial_in_u"])

    def test_shifted_variant_fails(self):
        proc = run("lattice-check", "--q", "2", "--prec", "12", "--window", "3,5", "--variant", "shifted")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        report = json.loads(proc.stdout)["result"]["report"]
        self.assertFalse(report["passes"])
        self.assertFalse(report["vanishing"])

    def test_usage_error(self):
        self.assertEqual(run().returncode, 2)
        self.assertEqual(run("uniformizer", "--no-such-flag").returncode, 2)
        self.assertEqual(run("uniformizer", "--format", "xml").returncode, 2)

    def test_bad_coordinates(self):
        self.assertEqual(run("uniformizer", "--theta", "1,x").returncode, 10)

    def test_help_lists_exit_codes(self):
        proc = run("--help")
        self.assertEqual(proc.returncode, 0)
        for line in ["18  CharacteristicCollision", "26  StoreCorrupt", "27  IoError", "UNISHEAF_STORE"]:
            self.assertIn(line, proc.stdout)


class CacheTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.store = self.tmp.name
        self.env = {"UNISHEAF_STORE": self.store}
        self.job = ["torsion", "--q", "2", "--theta", "1", "--r", "2", "--prec", "7"]

    def tearDown(self):
        self.tmp.cleanup()

    def torsion(self):
        proc = run(*self.job, env=self.env)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        return proc.stdout, status_lines(proc)[-1]

    def test_hit_is_byte_identical(self):
        first, s1 = self.torsion()
        second, s2 = self.torsion()
        self.assertEqual(s1["cache"], "miss")
        self.assertEqual(s2["cache"], "hit")
        self.assertEqual(first, second)
        uncached = run(*self.job, "--no-cache")
        self.assertEqual(status_lines(uncached)[-1]["cache"], "off")
        self.assertEqual(uncached.stdout, first)
        torsion = json.loads(first)["result"]["torsion"]
        self.assertEqual(torsion["dimension"], 2)

    def test_corruption_is_detected_and_repaired(self):
        first, status = self.torsion()
        path = pathlib.Path(self.store) / (status["key"] + ".json")
        text = path.read_text()
        path.write_text(text.replace('"dimension":2', '"dimension":3', 1))
        check = run("cache", "verify", env=self.env)
        self.assertEqual(check.returncode, 26)
        self.assertEqual(len(json.loads(check.stdout)["corrupt"]), 1)
        get = run("cache", "get", status["key"], env=self.env)
        self.assertEqual(get.returncode, 26)
        again, s = self.torsion()
        self.assertEqual(s["cache"], "recomputed")
        self.assertEqual(again, first)
        self.assertEqual(run("cache", "verify", env=self.env).returncode, 0)

    def test_key_depends_on_policy_version(self):
        _, status = self.torsion()
        flags = self.job[1:]
        current = json.loads(run("cache", "key", *flags).stdout)["key"]
        bumped = json.loads(run("cache", "key", "--policy-version", "2", *flags).stdout)["key"]
        self.assertEqual(current, status["key"])
        self.assertNotEqual(current, bumped)

    def test_store_flag_and_clear(self):
        with tempfile.TemporaryDirectory() as other:
            proc = run(*self.job, "--store", other, env=self.env)
            self.assertEqual(status_lines(proc)[-1]["cache"], "miss")
            listing = json.loads(run("cache", "list", "--store", other).stdout)
            self.assertEqual(len(listing["keys"]), 1)
            self.assertEqual(json.loads(run("cache", "clear", "--store", other).stdout)["removed"], 1)
        self.assertEqual(json.loads(run("cache", "list", env=self.env).stdout)["keys"], [])

    def test_missing_store(self):
        self.assertEqual(run("cache", "list").returncode, 10)


class VerifyTest(unittest.TestCase):
    def test_single_suite_is_deterministic(self):
        a = run("verify", "--suite", "moore")
        b = run("verify", "--suite", "moore")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)
        report = json.loads(a.stdout)
        self.assertEqual([s["name"] for s in report["suites"]], ["moore"])
        self.assertTrue(report["passed"])
        timing = status_lines(a)[0]
        self.assertEqual(timing["suite"], "C4")
        self.assertIn("elapsed_ms", timing)

    def test_full_run_is_deterministic(self):
        a = run("verify")
        b = run("verify")
        self.assertEqual(a.stdout, b.stdout)
        report = json.loads(a.stdout)
        self.assertEqual(len(report["suites"]), 10)
        self.assertEqual(a.returncode, 0 if report["passed"] else 1)

    def test_unknown_suite(self):
        self.assertEqual(run("verify", "--suite", "nope").returncode, 2)


if __name__ == "__main__":
    BINARY = sys.argv.pop(1)
    unittest.main(verbosity=2)
