import unittest
import sys
import os

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

from rvc_core.digraph import (
    UNREACHABLE, Digraph, biorient, build_digraph, clear_distance_cache, count_geodesics,
    diameter, distance_matrix, distances_from, eccentricity, expand_vertex, floyd_warshall,
    is_spanning_subdigraph, is_strongly_connected, lexicographic_product, remove_arcs,
    require_strongly_connected, shortest_path,
)
from rvc_core.errors import DigraphError, NotStronglyConnectedError, UnreachableError
from tests.conftest import (
    HAS_NETWORKX, make_bioriented_cycle, make_directed_cycle, make_random_strong_digraph,
)


class TestConstruction(unittest.TestCase):
    def test_arcs_sorted_and_deduplicated(self):
        """Duplicate arcs collapse and adjacency ascends by id."""
        D = build_digraph(3, [(2, 0), (0, 1), (0, 1), (1, 2), (0, 2)])
        self.assertEqual(D.arcs, ((0, 1), (0, 2), (1, 2), (2, 0)))
        self.assertEqual(D.m, 4)
        self.assertEqual(D.out_adj[0], (1, 2))
        self.assertEqual(D.in_adj[2], (0, 1))
        self.assertTrue(D.has_arc(2, 0))
        self.assertFalse(D.has_arc(1, 0))
        print("✅ Arc normalisation verified.")

    def test_loop_rejected(self):
        """A loop raises DigraphError."""
        with self.assertRaises(DigraphError):
            build_digraph(3, [(1, 1)])

    def test_out_of_range_rejected(self):
        """Arc endpoints must lie in 0..n-1."""
        with self.assertRaises(DigraphError):
            build_digraph(3, [(0, 3)])
        with self.assertRaises(DigraphError):
            build_digraph(0, [])

    def test_model_validation_is_value_error(self):
        """Constructing the model directly reports bad arcs as ValueError."""
        with self.assertRaises(ValueError):
            Digraph(n=2, arcs=((0, 0),))

    def test_digraph_is_hashable(self):
        """Equal digraphs hash equal."""
        a = build_digraph(3, [(0, 1), (1, 2), (2, 0)])
        b = build_digraph(3, [(2, 0), (1, 2), (0, 1)])
        self.assertEqual(a, b)
        self.assertEqual(hash(a), hash(b))

    def test_biorient(self):
        """Each edge gives two opposite arcs."""
        D = biorient(3, [(0, 1), (1, 2)])
        self.assertEqual(D.arcs, ((0, 1), (1, 0), (1, 2), (2, 1)))

    def test_expand_vertex(self):
        """Expanding a vertex of C3 into a 2-cycle yields 4 vertices, 7 arcs."""
        C3 = make_directed_cycle(3)
        H = biorient(2, [(0, 1)])
        D = expand_vertex(C3, 0, H)
        self.assertEqual(D.n, 4)
        # 0 -> 1 from both copies, 2 -> both copies, and the 2-cycle 0 <-> 3
        self.assertEqual(set(D.arcs), {(0, 1), (3, 1), (1, 2), (2, 0), (2, 3), (0, 3), (3, 0)})
        self.assertTrue(is_strongly_connected(D))

    def test_lexicographic_product(self):
        """C3 ∘ K2-bar has 6 vertices and 3·4 arcs."""
        C3 = make_directed_cycle(3)
        H = Digraph(n=2, arcs=())
        D = lexicographic_product(C3, H)
        self.assertEqual(D.n, 6)
        self.assertEqual(D.m, 12)
        self.assertTrue(D.has_arc(1, 3))

    def test_remove_arcs_and_spanning(self):
        """Removing arcs yields a spanning subdigraph."""
        D = make_bioriented_cycle(5)
        H = remove_arcs(D, [(0, 1)])
        self.assertEqual(H.m, D.m - 1)
        self.assertTrue(is_spanning_subdigraph(H, D))
        self.assertFalse(is_spanning_subdigraph(D, H))


class TestMetricQueries(unittest.TestCase):
    def setUp(self):
        clear_distance_cache()

    def test_directed_cycle_distances(self):
        """In C5, d(0, 4) = 4 and d(4, 0) = 1."""
        D = make_directed_cycle(5)
        dm = distance_matrix(D)
        self.assertEqual(dm(0, 4), 4)
        self.assertEqual(dm(4, 0), 1)
        self.assertEqual(diameter(D), 4)
        print("✅ Directed cycle distances verified.")

    def test_unreachable_marker(self):
        """Unreachable vertices get the UNREACHABLE marker."""
        D = build_digraph(3, [(0, 1)])
        row = distances_from(D, 0)
        self.assertEqual(row[:2], (0, 1))
        self.assertIs(row[2], UNREACHABLE)
        self.assertEqual(eccentricity(D, 0), UNREACHABLE)

    def test_not_strongly_connected(self):
        """Diameter refuses a digraph that is not strong."""
        D = build_digraph(2, [(0, 1)])
        self.assertFalse(is_strongly_connected(D))
        with self.assertRaises(NotStronglyConnectedError):
            require_strongly_connected(D)
        with self.assertRaises(NotStronglyConnectedError):
            diameter(D)

    def test_single_vertex(self):
        """A single vertex has diameter 0."""
        self.assertEqual(diameter(Digraph(n=1)), 0)

    def test_bioriented_cycle_diameter(self):
        """diam of the bioriented n-cycle is floor(n/2)."""
        for n in range(3, 12):
            self.assertEqual(diameter(make_bioriented_cycle(n)), n // 2)

    def test_floyd_warshall_matches_bfs(self):
        """The numpy closure agrees with BFS on random strong digraphs."""
        for seed in range(20):
            D = make_random_strong_digraph(7, seed, density=0.15)
            dm = distance_matrix(D)
            fw = floyd_warshall(D)
            for u in range(D.n):
                for v in range(D.n):
                    self.assertEqual(fw[u, v], dm(u, v))

    def test_count_geodesics(self):
        """Bioriented C4 has two geodesics between antipodal vertices."""
        C4 = make_bioriented_cycle(4)
        self.assertEqual(count_geodesics(C4, 0, 2), 2)
        self.assertEqual(count_geodesics(C4, 0, 1), 1)
        self.assertEqual(count_geodesics(C4, 0, 0), 1)

    def test_count_geodesics_unreachable(self):
        """No path raises UnreachableError."""
        with self.assertRaises(UnreachableError):
            count_geodesics(build_digraph(2, [(0, 1)]), 1, 0)

    def test_shortest_path_lowest_parent(self):
        """The canonical geodesic prefers the lowest-id parent."""
        C4 = make_bioriented_cycle(4)
        self.assertEqual(shortest_path(C4, 0, 2), [0, 1, 2])
        self.assertEqual(shortest_path(make_directed_cycle(5), 3, 1), [3, 4, 0, 1])

    @unittest.skipUnless(HAS_NETWORKX, "networkx not installed")
    def test_networkx_cross_check(self):
        """Distances and geodesic counts agree with networkx."""
        import networkx as nx

        for seed in range(15):
            D = make_random_strong_digraph(8, seed, density=0.2)
            G = nx.DiGraph()
            G.add_nodes_from(range(D.n))
            G.add_edges_from(D.arcs)
            lengths = dict(nx.all_pairs_shortest_path_length(G))
            dm = distance_matrix(D)
            for u in range(D.n):
                for v in range(D.n):
                    self.assertEqual(dm(u, v), lengths[u][v])
                    if u != v:
                        self.assertEqual(count_geodesics(D, u, v),
                                         sum(1 for _ in nx.all_shortest_paths(G, u, v)))
            self.assertEqual(diameter(D), nx.diameter(G))
        print("✅ networkx cross-check passed.")


if __name__ == '__main__':
    unittest.main()
