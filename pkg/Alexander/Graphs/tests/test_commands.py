import json
import tempfile
from io import StringIO
from pathlib import Path

from django.apps import apps
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from Graphs.laurent import normalize_unit, parse, substitute, to_text

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def run(*args, **options) -> str:
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write_tmp(self, name: str, text: str) -> str:
        path = Path(self.tmp.name) / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def assertFails(self, code: int, *args, **options) -> CommandError:
        with self.assertRaises(CommandError) as ctx:
            run(*args, **options)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception


class AlexCommandTests(CommandTestCase):
    def test_raw_matrix(self):
        self.assertEqual(run("alex", fixture("bouquet_matrix.json"), raw_matrix=True, k=1), "t^2 - 2*t + 2\n")
        self.assertEqual(run("alex", fixture("bouquet_matrix.json"), raw_matrix=True, k=2), "1\n")

    def test_diagram(self):
        self.assertEqual(run("alex", fixture("bouquet.json"), k=1), "t^2 - 2*t + 2\n")
        self.assertEqual(run("alex", fixture("bouquet.json"), k=1, naive=True), "t^2 - 2*t + 2\n")
        self.assertEqual(run("alex", fixture("loop.json"), k=1), "1\n")

    def test_json_document_is_stable(self):
        first = run("alex", fixture("bouquet.json"), k=1, json=True)
        self.assertEqual(first, run("alex", fixture("bouquet.json"), k=1, json=True))
        doc = json.loads(first)
        self.assertEqual(doc["operation"], "alex")
        self.assertEqual(doc["inputs"]["k"], "1")
        self.assertEqual(doc["result"]["text"], "t^2 - 2*t + 2")

    def test_exit_codes(self):
        err = self.assertFails(2, "alex", fixture("unbalanced.json"), k=1)
        self.assertIn("unbalanced diagram", str(err))
        self.assertFails(1, "alex", fixture("invalid.json"), k=1)
        self.assertFails(1, "alex", str(Path(self.tmp.name) / "missing.json"), k=1)
        self.assertFails(1, "alex", self.write_tmp("broken.json", "{not json"), k=1)
        self.assertFails(2, "alex", fixture("loop.json"), k=-1)


class DetCommandTests(CommandTestCase):
    def test_values(self):
        self.assertEqual(run("det", fixture("bouquet.json"), n=-1, k=1), "5\n")
        self.assertEqual(run("det", fixture("bouquet.json"), n=5, k=1), "17\n")
        self.assertEqual(run("det", fixture("bouquet_matrix.json"), raw_matrix=True, n=-1, k=1), "5\n")

    def test_composite_argument_is_marked(self):
        self.assertIn("not diagram-invariant", run("det", fixture("bouquet.json"), n=6, k=1))


class ValidateCommandTests(CommandTestCase):
    def test_reports(self):
        self.assertEqual(run("validate", fixture("bouquet.json")), "valid, balanced\n")
        self.assertEqual(run("validate", fixture("unbalanced.json")), "valid, unbalanced\n")
        out = run("validate", fixture("invalid.json"))
        self.assertTrue(out.startswith("invalid\n"))
        self.assertIn("arc in multiple edges", out)


class ColorCommandTests(CommandTestCase):
    def test_nullity(self):
        out = run("color", fixture("bouquet.json"), p=7, n=5)
        self.assertEqual(out.splitlines()[0], "N_7(n=5) = 2")
        out = run("color", fixture("bouquet.json"), p=5, n=-1, check_k=1)
        self.assertEqual(out.splitlines()[0], "N_5(n=-1) = 3")
        self.assertIn("agree", out.splitlines()[-1])

    def test_enumeration_cap(self):
        self.assertFails(3, "color", fixture("bouquet.json"), p=5, n=-1, enumerate_all=True, cap=10)
        out = run("color", fixture("bouquet.json"), p=5, n=-1, enumerate_all=True)
        self.assertIn("colorings: 125", out)

    def test_modulus_errors(self):
        self.assertFails(2, "color", fixture("bouquet.json"), p=5, n=5)
        self.assertFails(2, "color", fixture("bouquet.json"), p=2, n=1)


class OtherCommandTests(CommandTestCase):
    def test_reps(self):
        out = run("reps", fixture("bouquet.json"), p=5, k=-1)
        self.assertIn("inequivalent=6", out)
        self.assertIn("total=125", out)

    def test_matrix_routes_agree(self):
        self.assertEqual(
            run("matrix", fixture("bouquet.json"), route="fox"),
            run("matrix", fixture("bouquet.json")),
        )

    def test_weightings(self):
        self.assertTrue(run("weightings", fixture("theta.json")).startswith("rank 2\n"))

    def test_raw_matrix_needs_diagram(self):
        exc = self.assertFails(2, "reps", fixture("bouquet_matrix.json"), raw_matrix=True, p=5, k=-1)
        self.assertIn("requiere un diagrama", str(exc))


class TransformCommandTests(CommandTestCase):
    def test_mirror_inverts_variable(self):
        mirrored = self.write_tmp("mirror.json", run("transform", fixture("bouquet.json"), "mirror"))
        expected = to_text(normalize_unit(substitute(parse("t^2 - 2*t + 2"), -1)))
        self.assertEqual(run("alex", mirrored, k=1), expected + "\n")

    def test_twist_and_contract(self):
        twisted = self.write_tmp("twist.json", run("transform", fixture("theta.json"), "twist", "B", "0", "--over", "second"))
        self.assertEqual(run("validate", twisted), "valid, balanced\n")
        contracted = self.write_tmp("contract.json", run("transform", fixture("theta.json"), "contract", "s3"))
        self.assertEqual(run("alex", contracted, k=1), run("alex", fixture("theta.json"), k=1))

    def test_wedge(self):
        wedged = self.write_tmp(
            "wedge.json",
            run("transform", fixture("trefoil.json"), "wedge", fixture("loop.json"), "v", "v"),
        )
        self.assertEqual(run("alex", wedged, k=1), "t^2 - t + 1\n")

    def test_unknown_edge(self):
        self.assertFails(2, "transform", fixture("theta.json"), "contract", "nope")


class ProjectSetupTests(SimpleTestCase):
    def test_only_needed_apps(self):
        self.assertTrue(apps.is_installed("Graphs"))
        self.assertTrue(apps.is_installed("rest_framework"))
        self.assertFalse(apps.is_installed("django.contrib.auth"))
        self.assertFalse(apps.is_installed("django.contrib.contenttypes"))

    def test_commands_run_without_database(self):
        self.assertEqual(run("alex", fixture("bouquet.json"), k=1), "t^2 - 2*t + 2\n")
