"""
Bioriented Families
===================
Biorientations of paths, cycles, wheels, complete graphs, stars and
complete multipartite graphs, plus the strong colourings of the
bioriented cycle.

Labelling: path and cycle vertices are ``0..n-1`` with ``i ~ i+1`` (mod n
for the cycle); the wheel hub is vertex ``n``; the star centre is ``0``;
multipartite classes take consecutive id blocks.
"""

import itertools
import logging
from typing import Sequence

from rvc_core.digraph import Digraph, biorient
from rvc_core.errors import FamilyParameterError
from rvc_core.models import VertexColouring

logger = logging.getLogger("rvc.families")

BIORIENTED_FAMILIES = ("path", "cycle", "wheel", "complete", "star", "complete_multipartite")


def _need(condition: bool, message: str) -> None:
    if not condition:
        raise FamilyParameterError(message)


def gen_path(n: int) -> Digraph:
    _need(n >= 2, f"bioriented path needs n >= 2, got {n}")
    return biorient(n, [(i, i + 1) for i in range(n - 1)])


def gen_cycle(n: int) -> Digraph:
    _need(n >= 3, f"bioriented cycle needs n >= 3, got {n}")
    return biorient(n, [(i, (i + 1) % n) for i in range(n)])


def gen_wheel(n: int) -> Digraph:
    """Rim ``0..n-1`` plus hub ``n`` joined to every rim vertex."""
    _need(n >= 3, f"bioriented wheel needs n >= 3, got {n}")
    rim = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(n, i) for i in range(n)]
    return biorient(n + 1, rim + spokes)


def gen_complete(n: int) -> Digraph:
    _need(n >= 1, f"complete digraph needs n >= 1, got {n}")
    return biorient(n, itertools.combinations(range(n), 2))


def gen_star(n: int) -> Digraph:
    """K_{1,n}: centre ``0``, leaves ``1..n``."""
    _need(n >= 1, f"star needs n >= 1 leaves, got {n}")
    return biorient(n + 1, [(0, i) for i in range(1, n + 1)])


def gen_complete_multipartite(sizes: Sequence[int]) -> Digraph:
    _need(len(sizes) >= 2, f"complete multipartite graph needs t >= 2 classes, got {len(sizes)}")
    _need(all(s >= 1 for s in sizes), "class sizes must be positive")
    part = []
    for index, size in enumerate(sizes):
        part.extend([index] * size)
    edges = [(u, v) for u, v in itertools.combinations(range(len(part)), 2) if part[u] != part[v]]
    return biorient(len(part), edges)


def gen_bioriented(family: str, n: int = 0, sizes: Sequence[int] = ()) -> Digraph:
    if family == "path":
        return gen_path(n)
    elif family == "cycle":
        return gen_cycle(n)
    elif family == "wheel":
        return gen_wheel(n)
    elif family == "complete":
        return gen_complete(n)
    elif family == "star":
        return gen_star(n)
    elif family in ("complete_multipartite", "multipartite"):
        return gen_complete_multipartite(sizes)
    else:
        raise FamilyParameterError(f"Unknown bioriented family: {family}")


def bioriented_cycle_colouring(n: int) -> VertexColouring:
    """
    Strong colourings of the bioriented cycle with ceil(n/2) - 1 colours for
    n = 7 and ceil(n/2) colours for n = 11 and n >= 13.
    """
    if n == 7:
        return VertexColouring.from_labels([1, 2, 1, 2, 1, 2, 3])
    _need(n == 11 or n >= 13, f"no bioriented cycle construction for n={n}")
    half = -(-n // 2)
    labels = list(range(1, half + 1)) + list(range(1, n // 2 + 1))
    return VertexColouring.from_labels(labels)
