"""Black-box tests of the qmat executable: outputs, exit codes, determinism and schemas.

usage: cli_integration.py QMAT_BINARY SOURCE_DIR
"""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

QMAT = sys.argv[1] if len(sys.argv) > 1 else "qmat"
ROOT = pathlib.Path(sys.argv[2] if len(sys.argv) > 2 else ".")
SAMPLES = ROOT / "samples"


def registry():
    resources = []
    for p in (ROOT / "schemas").glob("*.json"):
        s = json.loads(p.read_text())
        resources.append((s["$id"], Resource.from_contents(s)))
    return Registry().with_resources(resources)


REGISTRY = registry()


def validate(doc, schema_name):
    schema = json.loads((ROOT / "schemas" / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, stdin=None, env=None):
    e = dict(os.environ)
    e.pop("QMAT_MAX_TERMS", None)
    if env:
        e.update(env)
    return subprocess.run([QMAT, *map(str, args)], input=stdin, capture_output=True, text=True, env=e, timeout=300)


def element(n, terms, alg="Mq"):
    return {"alg": alg, "n": n, "terms": [{"exp": exp, "coeff": c} for exp, c in terms]}


def q(k, c=1):
    """c * q^k as a JSON rational function."""
    if k >= 0:
        return {"num": [0] * k + [c], "den": [1]}
    return {"num": [c], "den": [0] * (-k) + [1]}


class Workdir:
    def __init__(self):
        self.dir = tempfile.TemporaryDirectory()

    def write(self, name, doc):
        p = pathlib.Path(self.dir.name) / name
        p.write_text(json.dumps(doc))
        return p


class CliTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.w = Workdir()

    def assert_ok(self, r):
        self.assertEqual(r.returncode, 0, r.stderr)
        return json.loads(r.stdout)

    def test_mul_matrix_relation(self):
        a = self.w.write("y22.json", element(2, [([[2, 2, 1]], 1)]))
        b = self.w.write("y11.json", element(2, [([[1, 1, 1]], 1)]))
        out = self.assert_ok(run("mul", "--alg", "Mq", a, b))
        validate(out, "element.schema.json")
        terms = {json.dumps(t["exp"]): t["coeff"] for t in out["terms"]}
        self.assertEqual(terms[json.dumps([[1, 1, 1], [2, 2, 1]])], {"num": [1], "den": [1]})
        # -(q - q^{-1}) = (1 - q^2)/q
        self.assertEqual(terms[json.dumps([[1, 2, 1], [2, 1, 1]])], {"num": [1, 0, -1], "den": [0, 1]})

    def test_mul_torus(self):
        a = self.w.write("t12.json", element(2, [([[1, 2, 1]], 1)], "torus"))
        b = self.w.write("t11.json", element(2, [([[1, 1, 1]], 1)], "torus"))
        out = self.assert_ok(run("mul", "--alg", "torus", a, b))
        self.assertEqual(out["terms"], [{"exp": [[1, 1, 1], [1, 2, 1]], "coeff": q(-1)}])

    def test_mul_by_one(self):
        x = self.w.write("x.json", element(3, [([[1, 3, 2], [2, 1, 1]], q(2, 3))]))
        one = self.w.write("one.json", element(3, [([], 1)]))
        out = self.assert_ok(run("mul", x, one))
        self.assertEqual(out, json.loads(x.read_text()))

    def test_det_n2(self):
        out = self.assert_ok(run("det", "--n", 2))
        self.assertEqual(
            out["terms"],
            [{"exp": [[1, 2, 1], [2, 1, 1]], "coeff": q(1, -1)}, {"exp": [[1, 1, 1], [2, 2, 1]], "coeff": q(0)}],
        )
        self.assertEqual(out, json.loads((SAMPLES / "det2.json").read_text()))

    def test_det_n3_has_six_terms(self):
        out = self.assert_ok(run("det", "--n", 3))
        self.assertEqual(len(out["terms"]), 6)

    def test_minor(self):
        out = self.assert_ok(run("minor", "--n", 3, "--rows", "1,2", "--cols", "2,3"))
        self.assertEqual(len(out["terms"]), 2)
        b = self.assert_ok(run("minor", "--n", 2, "--b", 1))
        self.assertEqual(b["terms"], [{"exp": [[1, 2, 1]], "coeff": q(0)}])

    def test_central(self):
        self.assertEqual(self.assert_ok(run("central", SAMPLES / "det2.json")), {"central": True})
        self.assertEqual(self.assert_ok(run("central", SAMPLES / "y11.json")), {"central": False})

    def test_embed(self):
        out = self.assert_ok(run("embed", SAMPLES / "det2.json", "--n", 2))
        self.assertEqual(out, element(2, [([[1, 1, 1], [2, 2, 1]], q(0))], "torus"))
        y11 = self.assert_ok(run("embed", SAMPLES / "y11.json"))
        self.assertEqual(len(y11["terms"]), 2)

    def test_rebase(self):
        t11 = self.w.write("t11r.json", element(2, [([[1, 1, 1]], 1)], "torus"))
        out = self.assert_ok(run("rebase", t11))
        validate(out, "element.schema.json")
        self.assertEqual(out["step"], "(2,3)")
        self.assertIn({"exp": [[1, 2, 1], [2, 1, 1], [2, 2, -1]], "coeff": q(1, -1)}, out["terms"])

    def test_export_table(self):
        out = self.assert_ok(run("export-table", "--n", 3))
        self.assertEqual(out["n"], 3)
        self.assertIn("(1,2)", out["steps"])
        self.assertIn("(3,4)", out["steps"])
        for step in out["steps"].values():
            for v in step.values():
                validate(v, "element.schema.json")

    def test_derivation_check_basis(self):
        der = self.assert_ok(run("derivation", "basis", "--n", 2, "--j", 2))
        validate(der, "derivation.schema.json")
        out = self.assert_ok(run("derivation", "check", "-", stdin=json.dumps(der)))
        self.assertEqual(out["status"], "pass")
        self.assertEqual(len(out["relations"]), 6)

    def test_derivation_hh1_inner(self):
        out = self.assert_ok(run("derivation", "hh1", SAMPLES / "ad_y12_n2.json"))
        validate(out, "hh1_coordinates.schema.json")
        self.assertEqual(out["mu"], [[], [], []])
        self.assertEqual(out["inner"], element(2, [([[1, 2, 1]], q(0))]))

    def test_derivation_hh1_basis(self):
        out = self.assert_ok(run("derivation", "hh1", SAMPLES / "d3_n2.json"))
        self.assertEqual(out["mu"], [[], [], [{"pow": 0, "coeff": q(0)}]])

    def test_derivation_hh1_gl(self):
        out = self.assert_ok(run("derivation", "hh1", SAMPLES / "gl_detinv_d1_n2.json"))
        validate(out, "hh1_coordinates.schema.json")
        self.assertEqual(out["cleared_power"], 1)
        self.assertEqual(out["mu"][0], [{"pow": -1, "coeff": q(0)}])

    def test_derivation_decompose(self):
        out = self.assert_ok(run("derivation", "decompose", SAMPLES / "ad_y12_n2.json"))
        self.assertEqual(out["x"]["terms"], [{"exp": [[1, 2, 1]], "coeff": q(0)}])

    def test_not_a_derivation(self):
        for sub in ("check", "decompose", "hh1"):
            r = run("derivation", sub, SAMPLES / "not_a_derivation_n2.json")
            self.assertEqual(r.returncode, 4, sub)
            self.assertIn("Y12*Y11", r.stderr)

    def test_inconsistent_torus_derivation(self):
        der = {"alg": "torus", "n": 2, "images": [{"gen": [1, 1], "value": element(2, [([[1, 2, 1]], 1)], "torus")}]}
        r = run("derivation", "decompose", self.w.write("bad_torus.json", der))
        self.assertEqual(r.returncode, 4)
        self.assertIn("Inconsistent", r.stderr)

    def test_parse_errors(self):
        self.assertEqual(run("embed", "-", stdin="{not json").returncode, 2)
        self.assertEqual(run("embed", self.w.write("neg.json", element(2, [([[1, 1, -1]], 1)]))).returncode, 2)
        self.assertEqual(run("embed", "/nonexistent.json").returncode, 2)
        self.assertEqual(run("no-such-command").returncode, 2)
        self.assertEqual(run("det").returncode, 2)

    def test_dimension_mismatch(self):
        a = self.w.write("a2.json", element(2, [([[1, 1, 1]], 1)]))
        b = self.w.write("b3.json", element(3, [([[1, 1, 1]], 1)]))
        self.assertEqual(run("mul", a, b).returncode, 3)
        self.assertEqual(run("embed", a, "--n", 3).returncode, 3)

    def test_term_limit(self):
        det3 = self.w.write("det3.json", self.assert_ok(run("det", "--n", 3)))
        self.assertEqual(run("mul", det3, det3).returncode, 0)
        r = run("mul", det3, det3, "--max-terms", 5)
        self.assertEqual(r.returncode, 5, r.stderr)
        self.assertIn("ResourceLimit", r.stderr)
        r = run("mul", det3, det3, env={"QMAT_MAX_TERMS": "5"})
        self.assertEqual(r.returncode, 5, r.stderr)
        self.assertEqual(run("mul", det3, det3, env={"QMAT_MAX_TERMS": "abc"}).returncode, 2)

    def test_verify_suite_n2(self):
        r1 = run("verify-suite", "--n", 2)
        r2 = run("verify-suite", "--n", 2)
        out = self.assert_ok(r1)
        self.assertEqual(r1.stdout, r2.stdout)
        validate(out, "verification_report.schema.json")
        self.assertEqual(out["status"], "pass")
        self.assertGreaterEqual(out["total"], 25)
        self.assertEqual(out["passed"], out["total"])
        ids = [c["id"] for c in out["checks"]]
        self.assertEqual(len(ids), len(set(ids)))

    def test_verify_suite_n3(self):
        out = self.assert_ok(run("verify-suite", "--n", 3))
        validate(out, "verification_report.schema.json")
        self.assertEqual(out["status"], "pass")

    def test_verify_suite_markdown_and_timings(self):
        md = run("verify-suite", "--n", 2, "--out", "markdown")
        self.assertEqual(md.returncode, 0)
        self.assertIn("| `context.b_matrix` |", md.stdout)
        timed = self.assert_ok(run("verify-suite", "--n", 2, "--timings"))
        validate(timed, "verification_report.schema.json")
        self.assertTrue(all("seconds" in c for c in timed["checks"]))

    def test_verify_suite_refuses_n5(self):
        r = run("verify-suite", "--n", 5)
        self.assertEqual(r.returncode, 5)
        self.assertIn("ResourceLimit", r.stderr)

    def test_samples_validate(self):
        for p in SAMPLES.glob("*.json"):
            doc = json.loads(p.read_text())
            validate(doc, "derivation.schema.json" if "images" in doc else "element.schema.json")


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], "-v"])
