import unittest
import sys
import os
import itertools
import math

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from rvc_core.digraph import count_geodesics, diameter, is_strongly_connected
from rvc_core.errors import DigraphError, FamilyParameterError, SearchExhaustedError
from rvc_core.models import FamilySpec
from rvc_engine.logic.verify import verify_colouring
from rvc_families import build_family, build_family_colouring, predict_family
from rvc_families.bioriented import (
    bioriented_cycle_colouring, gen_complete_multipartite, gen_cycle, gen_path, gen_star, gen_wheel,
)
from rvc_families.circulant import CIRCULANT_TARGETS, circulant_colouring, gen_circulant, gen_circulant_k
from rvc_families.cycles import (
    check_claim2_condition, classify_cycle_subdigraph, gen_cycle_subdigraph, predicted_cycle_colouring,
)
from rvc_families.lemmas import (
    H1_U, H1_V, H2_U, H2_V, gen_expanded_triangle, gen_lemma5, gen_lemma6, gen_lemma6_colouring,
)
from rvc_families.tournaments import (
    diam2_search, gen_t_nk, gen_tournament, is_tournament, near_transitive_tournament, random_strong_tournament,
    t_nk_colouring, tournament_layered_colouring, tournament_two_pair_colouring,
)
from rvc_engine.logic.predictions import predict_cycle_subdigraph


class TestBioriented(unittest.TestCase):
    def test_sizes(self):
        """Arc counts are twice the edge counts."""
        self.assertEqual(gen_path(5).m, 8)
        self.assertEqual(gen_cycle(6).m, 12)
        self.assertEqual(gen_wheel(5).n, 6)
        self.assertEqual(gen_wheel(5).m, 20)
        self.assertEqual(gen_star(4).m, 8)
        self.assertEqual(gen_complete_multipartite([2, 3]).m, 12)

    def test_parameter_range(self):
        """Out-of-range parameters raise FamilyParameterError."""
        with self.assertRaises(FamilyParameterError):
            gen_cycle(2)
        with self.assertRaises(FamilyParameterError):
            gen_complete_multipartite([3])

    def test_cycle_constructions(self):
        """The bioriented cycle proof colourings are strong with the stated palette."""
        self.assertEqual(bioriented_cycle_colouring(7).used, 3)
        for n in (7, 11, 13, 14, 15, 16):
            c = bioriented_cycle_colouring(n)
            self.assertTrue(verify_colouring(gen_cycle(n), c, "srvc").valid, f"n={n}")
            if n != 7:
                self.assertEqual(c.used, -(-n // 2))
        with self.assertRaises(FamilyParameterError):
            bioriented_cycle_colouring(9)
        print("✅ Bioriented cycle constructions verified.")


class TestCycleSubdigraphs(unittest.TestCase):
    def test_classify_d4_example(self):
        """Asymmetric pairs at (6, 0) and (2, 3) on n = 7 form D4."""
        cls = classify_cycle_subdigraph(gen_cycle_subdigraph(7, [6, 0, 2, 3]))
        self.assertEqual(cls.kind, "D4")
        self.assertEqual(cls.k, 4)
        self.assertEqual(sorted(cls.segments), [1, 2])

    def test_classify_shapes(self):
        """k = 1, two arcs, a run of three, and a scattered set."""
        self.assertEqual(classify_cycle_subdigraph(gen_cycle_subdigraph(6, [2])).kind, "K_EQ_1")
        self.assertEqual(classify_cycle_subdigraph(gen_cycle_subdigraph(6, [0, 3])).kind, "D1")
        self.assertEqual(classify_cycle_subdigraph(gen_cycle_subdigraph(6, [1, 2, 3])).kind, "D2")
        self.assertEqual(classify_cycle_subdigraph(gen_cycle_subdigraph(6, [0, 1, 3])).kind, "D3")
        self.assertEqual(classify_cycle_subdigraph(gen_cycle_subdigraph(7, [0, 2, 4])).kind, "OTHER")

    def test_reflection(self):
        """Backward-only arcs classify like their mirror image."""
        from rvc_core.digraph import build_digraph
        n = 6
        arcs = [((i + 1) % n, i) for i in range(n)] + [(i, (i + 1) % n) for i in range(n) if i != 2]
        cls = classify_cycle_subdigraph(build_digraph(n, arcs))
        self.assertEqual(cls.kind, "K_EQ_1")
        self.assertTrue(cls.reflected)

    def test_not_a_cycle_subdigraph(self):
        """Chords and the full bioriented cycle are rejected."""
        from rvc_core.digraph import build_digraph
        with self.assertRaises(DigraphError):
            classify_cycle_subdigraph(build_digraph(4, [(0, 2), (2, 0), (0, 1), (1, 2), (2, 3), (3, 0)]))
        with self.assertRaises(DigraphError):
            classify_cycle_subdigraph(gen_cycle(5))

    def test_every_subdigraph_strong(self):
        """Every non-empty asymmetric set gives a strongly connected digraph."""
        for n in range(4, 7):
            for size in range(1, n + 1):
                for asym in itertools.combinations(range(n), size):
                    self.assertTrue(is_strongly_connected(gen_cycle_subdigraph(n, asym)))

    def test_predicted_colourings_valid(self):
        """Proof colourings verify with exactly the predicted palette for 4 <= n <= 7."""
        for n in range(4, 8):
            for size in range(1, n + 1):
                for asym in itertools.combinations(range(n), size):
                    D = gen_cycle_subdigraph(n, asym)
                    preds = predict_cycle_subdigraph(classify_cycle_subdigraph(D), n)
                    for target in ("rvc", "srvc"):
                        c = predicted_cycle_colouring(D, target)
                        self.assertTrue(verify_colouring(D, c, target).valid, f"{target} n={n} asym={asym}")
                        self.assertEqual(c.used, preds.get(target).value)
        print("✅ Cycle subdigraph constructions verified.")

    def test_claim2_condition(self):
        """Distinct colours pass trivially; adjacent repeats fail."""
        from rvc_core.models import VertexColouring
        D = gen_cycle_subdigraph(7, [6, 0, 2, 3])
        self.assertTrue(check_claim2_condition(D, VertexColouring.identity(7)))
        self.assertFalse(check_claim2_condition(D, VertexColouring.constant(7)))
        self.assertFalse(check_claim2_condition(D, VertexColouring.constant(7), strong=True))


class TestCirculants(unittest.TestCase):
    def test_arc_count(self):
        """C_10([2]) has 20 arcs."""
        self.assertEqual(gen_circulant_k(10, 2).m, 20)
        self.assertEqual(gen_circulant(8, [1, 3]).m, 16)

    def test_small_diameter(self):
        """floor(n/2) <= k gives diameter 2."""
        self.assertEqual(diameter(gen_circulant_k(8, 6)), 2)
        self.assertEqual(diameter(gen_circulant_k(8, 4)), 2)

    def test_constructions(self):
        """Every applicable circulant construction passes its verifier."""
        checked = 0
        for n in range(6, 13):
            for k in range(2, n // 2):
                D = gen_circulant_k(n, k)
                for variant, target in CIRCULANT_TARGETS.items():
                    try:
                        c = circulant_colouring(n, k, variant)
                    except FamilyParameterError:
                        continue
                    self.assertTrue(verify_colouring(D, c, target).valid, f"{variant} n={n} k={k}")
                    checked += 1
        self.assertGreaterEqual(checked, 16)
        print(f"✅ {checked} circulant constructions verified.")

    def test_block_palette(self):
        """The block colouring uses ceil(n/k) colours."""
        self.assertEqual(circulant_colouring(11, 2, "block").used, 6)
        with self.assertRaises(FamilyParameterError):
            circulant_colouring(10, 2, "claim2_residue")


class TestTournaments(unittest.TestCase):
    def test_named(self):
        """T4 and T5_1 are strong tournaments."""
        for kind in ("T4", "T5_1"):
            T = gen_tournament(kind)
            self.assertTrue(is_tournament(T))
            self.assertTrue(is_strongly_connected(T))
        self.assertEqual(diameter(gen_tournament("T5_1")), 2)

    def test_t_nk(self):
        """T_(n,k) is a strong tournament whose proof colouring uses k colours."""
        for n in range(5, 9):
            for k in range(1, n - 1):
                T = gen_t_nk(n, k)
                self.assertTrue(is_tournament(T), f"n={n} k={k}")
                self.assertEqual(T.m, n * (n - 1) // 2)
                c = t_nk_colouring(n, k)
                self.assertEqual(c.used, k)
                self.assertTrue(verify_colouring(T, c, "srvc").valid, f"n={n} k={k}")
        self.assertEqual(gen_t_nk(7, 5).m, 21)

    def test_t_nk_random_expansion(self):
        """A random expansion tournament keeps the colouring valid."""
        T = gen_t_nk(8, 3, seed=5, expansion="random")
        self.assertTrue(is_tournament(T))
        self.assertTrue(verify_colouring(T, t_nk_colouring(8, 3), "srvc").valid)

    def test_diam2_search(self):
        """n = 4 has no diameter-2 tournament; other sizes are found."""
        with self.assertRaises(FamilyParameterError):
            diam2_search(4)
        self.assertEqual(diameter(diam2_search(7, seed=1)), 2)

    def test_search_exhausted(self):
        """A search budget too small for any hit raises SearchExhaustedError."""
        # a random 3-vertex tournament is strong with probability 1/4
        failures = 0
        for seed in range(20):
            try:
                random_strong_tournament(3, seed=seed, attempts=1)
            except SearchExhaustedError:
                failures += 1
        self.assertGreater(failures, 0)

    def test_random_tournament_colourings(self):
        """Two-pair and layered colourings are valid on random strong tournaments."""
        for seed in range(40):
            n = 5 + seed % 12
            T = random_strong_tournament(n, seed=seed)
            d = diameter(T)
            two_pair = tournament_two_pair_colouring(T)
            layered = tournament_layered_colouring(T)
            self.assertLessEqual(two_pair.used, n - 2)
            self.assertTrue(verify_colouring(T, two_pair, "srvc").valid, f"seed={seed}")
            self.assertLessEqual(layered.used, d + 3)
            self.assertTrue(verify_colouring(T, layered, "rvc").valid, f"seed={seed}")
        print("✅ Tournament constructions verified.")

    def test_near_transitive_generator(self):
        """Seeded near-transitive tournaments are strong and far from diameter 2."""
        for seed in range(20):
            n = 6 + seed % 10
            T = near_transitive_tournament(n, seed=seed)
            self.assertTrue(is_tournament(T))
            self.assertTrue(is_strongly_connected(T))
            self.assertGreaterEqual(diameter(T), math.ceil((n - 1) / 3))
        self.assertEqual(near_transitive_tournament(9, seed=4).arcs, near_transitive_tournament(9, seed=4).arcs)
        self.assertEqual(gen_tournament("near_transitive", n=9, seed=4).arcs,
                         near_transitive_tournament(9, seed=4).arcs)
        with self.assertRaises(FamilyParameterError):
            near_transitive_tournament(8, max_span=1)

    def test_near_transitive_colourings(self):
        """Both constructions verify on long-diameter tournaments (d from 3 up)."""
        diameters = []
        for seed in range(60):
            n = 8 + seed % 13
            T = near_transitive_tournament(n, seed=seed)
            d = diameter(T)
            diameters.append(d)
            two_pair = tournament_two_pair_colouring(T)
            layered = tournament_layered_colouring(T)
            self.assertLessEqual(two_pair.used, n - 2)
            self.assertTrue(verify_colouring(T, two_pair, "srvc").valid, f"n={n} seed={seed}")
            self.assertLessEqual(layered.used, d + 3)
            self.assertTrue(verify_colouring(T, layered, "rvc").valid, f"n={n} seed={seed}")
        self.assertGreaterEqual(sum(d >= 4 for d in diameters), 45)
        self.assertGreaterEqual(max(diameters), 7)
        print("✅ Tournament constructions verified on long diameters.")

    def test_transitive_expansion_long_diameter(self):
        """T_(8,6) has diameter 7; both constructions still verify."""
        T = gen_t_nk(8, 6)
        self.assertEqual(diameter(T), 7)
        self.assertTrue(verify_colouring(T, tournament_layered_colouring(T), "rvc").valid)
        self.assertTrue(verify_colouring(T, tournament_two_pair_colouring(T), "srvc").valid)


class TestSeparatingExamples(unittest.TestCase):
    def test_h1(self):
        """H1 has diameter 6 and its drawn arc colouring is strong with 6 colours."""
        H1, colouring = gen_lemma5("H1")
        self.assertEqual(H1.n, 14)
        self.assertEqual(diameter(H1), 6)
        self.assertEqual(colouring.used, 6)
        self.assertTrue(verify_colouring(H1, colouring, "src").valid)

    def test_h2(self):
        """H2 has diameter 9 and its drawn vertex colouring is strong with 8 colours."""
        H2, colouring = gen_lemma5("H2")
        self.assertEqual(H2.n, 22)
        self.assertEqual(diameter(H2), 9)
        self.assertEqual(colouring.used, 8)
        self.assertTrue(verify_colouring(H2, colouring, "srvc").valid)
        print("✅ H2 colouring verified.")

    def test_unique_geodesics(self):
        """The added arc leaves a single geodesic between the critical pairs."""
        D1, _ = gen_lemma5("D1")
        self.assertEqual(count_geodesics(D1, H1_V[0], H1_U[2]), 1)
        D2, _ = gen_lemma5("D2")
        self.assertEqual(count_geodesics(D2, H2_U[0], H2_V[2]), 1)

    def test_fan(self):
        """The fan colouring uses 3 colours and is strong."""
        D = gen_lemma6("fan", 4)
        self.assertEqual(D.n, 5)
        c = gen_lemma6_colouring("fan", 4)
        self.assertEqual(c.used, 3)
        self.assertTrue(verify_colouring(D, c, "srvc").valid)
        with self.assertRaises(FamilyParameterError):
            gen_lemma6("fan", 3)

    def test_pendant(self):
        """The pendant arc colouring uses 3 colours and is strong."""
        for s in (2, 3, 4, 5):
            D = gen_lemma6("pendant", s)
            self.assertEqual(D.n, 2 * s)
            ac = gen_lemma6_colouring("pendant", s)
            self.assertEqual(ac.used, 3)
            self.assertTrue(verify_colouring(D, ac, "src").valid, f"s={s}")

    def test_expanded_triangle(self):
        """The expanded triangle has n vertices and diameter 2."""
        D = gen_expanded_triangle(6)
        self.assertEqual(D.n, 6)
        self.assertEqual(diameter(D), 2)


class TestDispatch(unittest.TestCase):
    def test_build_family(self):
        """FamilySpec dispatch builds the same digraphs as the generators."""
        self.assertEqual(build_family(FamilySpec(family="circulant", n=10, k=2)), gen_circulant_k(10, 2))
        self.assertEqual(build_family(FamilySpec(family="circulant", n=10, jumps=(1, 2))).m, 20)
        self.assertEqual(build_family(FamilySpec(family="multipartite", sizes=(2, 2))).n, 4)
        self.assertEqual(build_family(FamilySpec(family="lemma5", which="H2")).n, 22)

    def test_missing_parameter(self):
        """A family without its required parameter fails cleanly."""
        with self.assertRaises(FamilyParameterError):
            build_family(FamilySpec(family="cycle"))

    def test_colouring_and_prediction(self):
        """Colourings and predictions come from the same spec."""
        spec = FamilySpec(family="lemma5", which="H2")
        self.assertEqual(build_family_colouring(spec).used, 8)
        self.assertEqual(predict_family(spec).srvc.value, 8)
        spec = FamilySpec(family="t_nk", n=7, k=5)
        self.assertEqual(build_family_colouring(spec).used, 5)
        self.assertEqual(predict_family(spec).rvc.value, 5)
        spec = FamilySpec(family="tournament", kind="random", n=9, seed=3)
        self.assertLessEqual(predict_family(spec).srvc.hi, 7)


if __name__ == '__main__':
    unittest.main()
