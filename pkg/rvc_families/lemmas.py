"""
Separating Examples
===================
Hand-built digraphs showing how the four parameters can drift apart:

* ``H1``/``D1`` and ``H2``/``D2``: adding one arc raises src (resp. srvc).
* the fan of directed triangles: rvc = srvc = 3 while rc grows with s.
* the bioriented complete graph with pendant edges: rc = src = 3 while
  rvc = srvc = s.
* the directed triangle with one vertex expanded to a complete digraph.

Vertex ids for the hand-built digraphs:

    H1   x=0  y=1  m1..m4=2..5   u1..u4=6..9   v1..v4=10..13
    H2   x=0  y=1  w1..w4=2..5   L1..L4=6..9   R1..R4=10..13
         u1..u4=14..17  v1..v4=18..21  (z = R4)
"""

import itertools
import logging
from math import comb
from typing import Dict, List, Optional, Tuple, Union

from rvc_core.digraph import Digraph, biorient, build_digraph, expand_vertex
from rvc_core.errors import FamilyParameterError
from rvc_core.models import ArcColouring, VertexColouring

from .bioriented import gen_complete
from .cycles import gen_directed_cycle

logger = logging.getLogger("rvc.families")

LEMMA5_DIGRAPHS = ("H1", "D1", "H2", "D2")

# ── H1 / D1 ─────────────────────────────────────────────

H1_X, H1_Y = 0, 1
H1_M = (2, 3, 4, 5)
H1_U = (6, 7, 8, 9)
H1_V = (10, 11, 12, 13)
# (x <-> m colour, m <-> y colour) for each middle vertex
H1_MIDDLE_COLOURS = ((3, 1), (4, 1), (3, 2), (4, 2))


def _h1_arc_colours() -> Dict[Tuple[int, int], int]:
    colours: Dict[Tuple[int, int], int] = {}
    for m, (cx, cy) in zip(H1_M, H1_MIDDLE_COLOURS):
        colours[(H1_X, m)] = colours[(m, H1_X)] = cx
        colours[(m, H1_Y)] = colours[(H1_Y, m)] = cy
    for i, (u, v) in enumerate(zip(H1_U, H1_V)):
        hub = H1_X if i < 2 else H1_Y
        colours[(hub, u)] = 6
        colours[(u, v)] = i + 1
        colours[(v, hub)] = 5
    return colours


# ── H2 / D2 ─────────────────────────────────────────────

H2_X, H2_Y = 0, 1
H2_W = (2, 3, 4, 5)
H2_L = (6, 7, 8, 9)
H2_R = (10, 11, 12, 13)
H2_U = (14, 15, 16, 17)
H2_V = (18, 19, 20, 21)
H2_Z = H2_R[3]
H2_PAIR_COLOURS = ((3, 1), (4, 1), (3, 2), (4, 2))


def _h2() -> Digraph:
    edges: List[Tuple[int, int]] = []
    for left, right in zip(H2_L, H2_R):
        edges += [(left, right), (H2_X, left), (right, H2_Y)]
    w1, w2, w3, w4 = H2_W
    edges += [(H2_X, w1), (H2_X, w2), (w1, w2), (H2_Y, w3), (H2_Y, w4), (w3, w4)]
    arcs = [a for u, v in edges for a in ((u, v), (v, u))]
    for w, u, v in zip(H2_W, H2_U, H2_V):
        arcs += [(w, u), (u, v), (v, w)]
    return build_digraph(22, arcs)


def _h2_vertex_colours() -> List[int]:
    labels = [0] * 22
    labels[H2_X], labels[H2_Y] = 5, 6
    for i, w in enumerate(H2_W):
        labels[w] = i + 1
    for left, right, (cl, cr) in zip(H2_L, H2_R, H2_PAIR_COLOURS):
        labels[left], labels[right] = cl, cr
    for u, v in zip(H2_U, H2_V):
        labels[u], labels[v] = 7, 8
    return labels


def gen_lemma5(which: str) -> Tuple[Digraph, Optional[Union[ArcColouring, VertexColouring]]]:
    """The digraph and, for H1 and H2, the colouring drawn with it."""
    if which in ("H1", "D1"):
        colours = _h1_arc_colours()
        H1 = build_digraph(14, colours)
        if which == "H1":
            return H1, ArcColouring.from_mapping(colours)
        return build_digraph(14, list(H1.arcs) + [(H1_X, H1_Y)]), None
    if which in ("H2", "D2"):
        H2 = _h2()
        if which == "H2":
            return H2, VertexColouring.from_labels(_h2_vertex_colours())
        return build_digraph(22, list(H2.arcs) + [(H2_X, H2_Z)]), None
    raise FamilyParameterError(f"Unknown lemma-5 digraph: {which}")


# ── Fan / Pendant ───────────────────────────────────────

def gen_lemma6(which: str, s: int) -> Digraph:
    if which == "fan":
        if s < 4:
            raise FamilyParameterError(f"fan needs s >= 4, got {s}")
        t = comb(s - 1, 3) + 1
        arcs = []
        for i in range(1, t + 1):
            x, y = 2 * i - 1, 2 * i
            arcs += [(0, x), (x, y), (y, 0)]
        return build_digraph(2 * t + 1, arcs)
    if which == "pendant":
        if s < 2:
            raise FamilyParameterError(f"pendant digraph needs s >= 2, got {s}")
        edges = list(itertools.combinations(range(s), 2)) + [(i, s + i) for i in range(s)]
        return biorient(2 * s, edges)
    raise FamilyParameterError(f"Unknown lemma-6 digraph: {which}")


def gen_lemma6_colouring(which: str, s: int) -> Union[VertexColouring, ArcColouring]:
    """Fan: vertex colouring hub/x/y. Pendant: arc colouring out/in/core."""
    D = gen_lemma6(which, s)
    if which == "fan":
        return VertexColouring.from_labels([0] + [(w - 1) % 2 + 1 for w in range(1, D.n)])
    mapping = {}
    for u, v in D.arcs:
        if u < s and v < s:
            mapping[(u, v)] = 2
        elif u < s:
            mapping[(u, v)] = 0
        else:
            mapping[(u, v)] = 1
    return ArcColouring.from_mapping(mapping)


def gen_expanded_triangle(n: int) -> Digraph:
    """Directed triangle with vertex 0 expanded into a complete digraph on n - 2 vertices."""
    if n < 3:
        raise FamilyParameterError(f"expanded triangle needs n >= 3, got {n}")
    return expand_vertex(gen_directed_cycle(3), 0, gen_complete(n - 2))
