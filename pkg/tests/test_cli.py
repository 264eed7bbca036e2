import unittest
import os
import shutil
import sys
import tempfile
from io import StringIO
from unittest.mock import patch

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from rvc_cli import main
from rvc_cli.fileio import read_colouring, read_digraph, write_colouring, write_digraph
from rvc_core.models import VertexColouring
from rvc_families.bioriented import gen_complete, gen_cycle
from tests.conftest import make_digraph, make_directed_cycle, make_vertex_colouring


class TestCLI(unittest.TestCase):
    def setUp(self):
        self.test_dir = tempfile.mkdtemp(prefix="rvc_cli_")

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def path(self, name):
        return os.path.join(self.test_dir, name)

    def digraph_file(self, name, D):
        p = self.path(name)
        write_digraph(p, D)
        return p

    def run_cli(self, *argv):
        with patch('sys.stdout', new_callable=StringIO) as out, \
                patch('sys.stderr', new_callable=StringIO) as err:
            code = main.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    # ── compute ──

    def test_compute_directed_cycle(self):
        """rvc compute on C5 prints value=5 and exits 0."""
        graph = self.digraph_file("c5.txt", make_directed_cycle(5))
        code, out, _ = self.run_cli("compute", graph, "--param", "rvc")
        self.assertEqual(code, 0)
        self.assertIn("value=5\n", out)
        self.assertIn("exact=true\n", out)
        print("✅ CLI compute verified.")

    def test_compute_complete_digraph(self):
        """Diameter one needs no colours."""
        graph = self.digraph_file("k3.txt", gen_complete(3))
        code, out, _ = self.run_cli("compute", graph, "--param", "srvc")
        self.assertEqual(code, 0)
        self.assertIn("value=0\n", out)

    def test_compute_writes_witness(self):
        """--witness stores a colouring that verifies."""
        graph = self.digraph_file("c6.txt", gen_cycle(6))
        witness = self.path("c6.col")
        code, out, _ = self.run_cli("compute", graph, "--param", "srvc", "--witness", witness)
        self.assertEqual(code, 0)
        self.assertIn(f"witness={witness}", out)
        self.assertEqual(read_colouring(witness, gen_cycle(6)).used, 2)

    def test_compute_budget_cap(self):
        """A budget cap below the value exits 4 with bounds."""
        graph = self.digraph_file("c5.txt", make_directed_cycle(5))
        code, out, _ = self.run_cli("compute", graph, "--max-budget", "3")
        self.assertEqual(code, 4)
        self.assertIn("value=none\n", out)
        self.assertIn("lower=4\n", out)
        self.assertIn("reason=budget cap reached", out)

    def test_compute_not_strong(self):
        """A digraph that is not strongly connected exits 3."""
        graph = self.digraph_file("path.txt", make_digraph(3, [(0, 1), (1, 2)]))
        code, _, err = self.run_cli("compute", graph)
        self.assertEqual(code, 3)
        self.assertIn("error:", err)

    def test_compute_parse_error(self):
        """Malformed input exits 2 and names the line."""
        graph = self.path("bad.txt")
        with open(graph, "w") as f:
            f.write("3 1\n0 0\n")
        code, _, err = self.run_cli("compute", graph)
        self.assertEqual(code, 2)
        self.assertIn("line 2", err)

    # ── verify ──

    def test_verify_valid_and_invalid(self):
        """VALID exits 0; INVALID prints the failing pair and exits 1."""
        graph = self.digraph_file("c7.txt", gen_cycle(7))
        good = self.path("good.col")
        write_colouring(good, make_vertex_colouring([0, 1, 0, 1, 0, 1, 2]))
        code, out, _ = self.run_cli("verify", graph, good, "--mode", "srvc")
        self.assertEqual(code, 0)
        self.assertEqual(out.strip(), "VALID")

        bad = self.path("bad.col")
        write_colouring(bad, VertexColouring.constant(7))
        code, out, _ = self.run_cli("verify", graph, bad, "--mode", "rvc")
        self.assertEqual(code, 1)
        self.assertTrue(out.startswith("INVALID pair "))

    def test_verify_size_mismatch(self):
        """A colouring for the wrong size is an input error."""
        graph = self.digraph_file("c5.txt", gen_cycle(5))
        col = self.path("c4.col")
        write_colouring(col, VertexColouring.constant(4))
        code, _, _ = self.run_cli("verify", graph, col)
        self.assertEqual(code, 2)

    # ── generate ──

    def test_generate_circulant(self):
        """C_10([2]) is written with 20 arcs."""
        out_file = self.path("c10.txt")
        code, out, _ = self.run_cli("generate", "--family", "circulant", "--n", "10", "--k", "2",
                                    "--out", out_file)
        self.assertEqual(code, 0)
        self.assertIn("m=20", out)
        self.assertEqual(read_digraph(out_file).m, 20)

    def test_generate_lemma5_figure(self):
        """H2 with its drawn colouring: 8 colours, valid."""
        out_file = self.path("h2.txt")
        code, out, _ = self.run_cli("generate", "--family", "lemma5", "--which", "H2",
                                    "--out", out_file, "--colouring", "figure")
        self.assertEqual(code, 0)
        self.assertIn("K=8", out)
        D = read_digraph(out_file)
        code, out, _ = self.run_cli("verify", out_file, out_file + ".col", "--mode", "srvc")
        self.assertEqual(code, 0)
        self.assertEqual(D.n, 22)

    def test_generate_t_nk_to_stdout(self):
        """Without --out the digraph goes to stdout."""
        code, out, _ = self.run_cli("generate", "--family", "t_nk", "--n", "7", "--k", "5")
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith("7 21\n"))

    def test_generate_bad_parameter(self):
        """Out-of-range family parameters exit 2."""
        code, _, err = self.run_cli("generate", "--family", "cycle", "--n", "2")
        self.assertEqual(code, 2)
        self.assertIn("error:", err)

    # ── reproduce ──

    def test_reproduce_directed_cycles(self):
        """A small reproduction writes a CSV and agrees everywhere."""
        csv_file = self.path("dc.csv")
        code, out, _ = self.run_cli("reproduce", "directed-cycles", "--max-n", "5", "--out", csv_file)
        self.assertEqual(code, 0)
        self.assertIn("rows=12", out)
        with open(csv_file) as f:
            self.assertTrue(f.readline().startswith('"family","params"'))
        print("✅ CLI reproduce verified.")

    # ── parser ──

    def test_no_command_prints_help(self):
        code, out, _ = self.run_cli()
        self.assertEqual(code, 2)
        self.assertIn("usage:", out)

    def test_unknown_tag(self):
        """argparse rejects unknown tags with exit 2."""
        code, _, _ = self.run_cli("reproduce", "no-such-table")
        self.assertEqual(code, 2)

    def test_version(self):
        code, out, _ = self.run_cli("--version")
        self.assertEqual(code, 0)
        self.assertIn("rainbow-vc", out)

    def test_argv_entry_point(self):
        """main() reads sys.argv when called without arguments."""
        graph = self.digraph_file("c4.txt", make_directed_cycle(4))
        test_args = ["rvc", "compute", graph, "--param", "srvc"]
        with patch.object(sys, 'argv', test_args), \
                patch('sys.stdout', new_callable=StringIO) as out:
            code = main.main()
        self.assertEqual(code, 0)
        self.assertIn("value=2\n", out.getvalue())

    def test_metrics_out(self):
        """--metrics-out writes the exposition text."""
        graph = self.digraph_file("c4.txt", make_directed_cycle(4))
        metrics_file = self.path("metrics.prom")
        code, _, _ = self.run_cli("--metrics-out", metrics_file, "compute", graph)
        self.assertEqual(code, 0)
        self.assertTrue(os.path.getsize(metrics_file) > 0)


if __name__ == '__main__':
    unittest.main()
