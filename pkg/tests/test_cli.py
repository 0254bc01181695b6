import io
import json
import unittest

from equiquant import config
from equiquant.cli import main


def _run(*argv):
    stdout = io.StringIO()
    code = main(list(argv), stdout=stdout)
    return code, stdout.getvalue()


def _document(*argv):
    code, text = _run(*argv)
    return code, json.loads(text) if text else None


class CommandTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_decompose(self):
        """
        Verifies the summands of the second symmetric powers with their dimensions
        """
        code, document = _document("decompose", "--family", "sp", "--n", "2", "--k", "2")
        self.assertEqual(code, 0)
        self.assertEqual(document["command"], "decompose")
        self.assertEqual(document["family"], "sp")
        self.assertEqual(document["version"], 1)
        self.assertEqual(
            document["records"],
            [{"diagram": "4", "dimension": 5}, {"diagram": "2,2", "dimension": 1}],
        )
        self.assertEqual(document["total"], {"dimension": 6, "expected": 6})

        code, document = _document("decompose", "--family", "o", "--n", "4", "--k", "2")
        self.assertEqual(
            {record["diagram"]: record["dimension"] for record in document["records"]},
            {"2,2": 20, "1,1,1,1": 1},
        )

    def test_eigenvalue(self):
        """
        Verifies rational and symbolic eigenvalues
        """
        code, document = _document(
            "eigenvalue", "--family", "o", "--n", "6", "--diagram", "6,4", "--delta", "0"
        )
        self.assertEqual(code, 0)
        self.assertEqual(document["records"][0]["value"], "36/5")
        self.assertEqual(document["records"][0]["degree"], 5)

        code, document = _document(
            "eigenvalue", "--family", "sp", "--n", "2", "--diagram", "0", "--delta", "symbolic"
        )
        self.assertEqual(
            {key: document["records"][0][key] for key in ("c2", "c1", "c0")},
            {"c2": "3/2", "c1": "-3/2", "c0": "0"},
        )

    def test_critical(self):
        """
        Verifies the single critical shift of degree 1 with its witness
        """
        code, document = _document("critical", "--family", "sp", "--n", "2", "--kmax", "1")
        self.assertEqual(code, 0)
        self.assertEqual(
            document["records"],
            [{"delta": "1", "upper": "2@1", "lower": "@0", "bound": "2/3"}],
        )

    def test_quantize(self):
        """
        Verifies the triplets of the quantization on half-densities
        """
        code, document = _document(
            "quantize", "--family", "sp", "--n", "2", "--half-densities", "--K", "1", "--M", "1"
        )
        self.assertEqual(code, 0)
        self.assertEqual(document["lambda"], "1/2")
        self.assertEqual(document["equivariance"]["violations"], 0)
        self.assertGreater(document["equivariance"]["checked"], 0)
        diagonal = [r for r in document["records"] if r["row"] == r["column"]]
        self.assertEqual(len(diagonal), 16)
        self.assertTrue(all(record["value"] == "1" for record in diagonal))

    def test_critical_quantize(self):
        """
        Verifies that a critical shift exits with code 3 and prints nothing
        """
        code, text = _run(
            "quantize", "--family", "sp", "--n", "2",
            "--lambda", "0", "--mu", "1", "--K", "1", "--M", "0",
        )
        self.assertEqual(code, 3)
        self.assertEqual(text, "")

    def test_tree(self):
        """
        Verifies the tilde-tree of (2,2) at degree 2 for the orthogonal algebra of rank 4
        """
        code, document = _document("tree", "--family", "o", "--n", "4", "--diagram", "2,2", "--k", "2")
        self.assertEqual(code, 0)
        self.assertEqual(document["root"], "2,2@2")
        self.assertEqual(
            [record["diagrams"] for record in document["records"]], [["2,2"], ["1,1"], [""]]
        )
        self.assertTrue(all(record["dominated"] for record in document["records"]))

    def test_verify(self):
        """
        Verifies that every consistency check passes on a small algebra
        """
        code, document = _document(
            "verify", "--family", "o", "--n", "2", "--K", "1", "--M", "1", "--kmax", "2"
        )
        self.assertEqual(code, 0)
        self.assertEqual(
            [record["status"] for record in document["records"]], ["ok"] * len(document["records"])
        )


class OutputTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_csv(self):
        """
        Verifies the CSV rendering with its total row and the expected dimension
        """
        code, text = _run(
            "decompose", "--family", "sp", "--n", "2", "--k", "2", "--format", "csv"
        )
        self.assertEqual(code, 0)
        self.assertEqual(text, 'diagram,dimension\n4,5\n"2,2",1\ntotal,6,6\n')

    def test_deterministic(self):
        """
        Verifies that the same command prints the same bytes twice
        """
        argv = ("critical", "--family", "o", "--n", "3", "--kmax", "2")
        self.assertEqual(_run(*argv), _run(*argv))


class ErrorTests(unittest.TestCase):
    def setUp(self):
        config(reset=True)

    def tearDown(self):
        config(reset=True)

    def test_invalid_arguments(self):
        """
        Verifies that invalid arguments exit with code 2
        """
        self.assertEqual(_run("decompose", "--family", "o", "--n", "1", "--k", "1")[0], 2)
        self.assertEqual(
            _run("eigenvalue", "--family", "sp", "--n", "2", "--diagram", "3", "--delta", "0")[0], 2
        )
        self.assertEqual(
            _run(
                "quantize", "--family", "sp", "--n", "2", "--half-densities",
                "--lambda", "0", "--K", "1", "--M", "0",
            )[0],
            2,
        )
        self.assertEqual(_run("critical", "--family", "sp", "--n", "2", "--kmax", "0")[0], 2)

    def test_usage_errors(self):
        """
        Verifies that argparse usage errors exit the process
        """
        with self.assertRaises(SystemExit):
            main(["decompose", "--family", "sp"], stdout=io.StringIO())
        with self.assertRaises(SystemExit) as caught:
            main(["--version"], stdout=io.StringIO())
        self.assertEqual(caught.exception.code, 0)


if __name__ == "__main__":
    unittest.main()
