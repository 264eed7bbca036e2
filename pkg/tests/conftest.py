"""
Shared Test Fixtures (conftest.py)
==================================
Digraph and colouring factories shared by the rainbow-vc test modules.
"""

import itertools
import os
import random
import sys

# Ensure project root is on path
PROJECT_ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, PROJECT_ROOT)


# ──────────────────────────────────────────────────────
# Digraph Factories
# ──────────────────────────────────────────────────────

def make_digraph(n, arcs):
    """Build a Digraph from an arc list."""
    from rvc_core.digraph import build_digraph
    return build_digraph(n, arcs)


def make_directed_cycle(n):
    from rvc_families.cycles import gen_directed_cycle
    return gen_directed_cycle(n)


def make_bioriented_cycle(n):
    from rvc_families.bioriented import gen_cycle
    return gen_cycle(n)


def make_random_strong_digraph(n, seed, density=0.3):
    """Hamiltonian cycle plus random chords: always strongly connected."""
    from rvc_core.digraph import build_digraph
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    arcs = {(order[i], order[(i + 1) % n]) for i in range(n)}
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < density:
                arcs.add((u, v))
    return build_digraph(n, arcs)


def all_strong_digraphs(n):
    """Every strongly connected digraph on vertex set 0..n-1 (labelled)."""
    from rvc_core.digraph import Digraph, is_strongly_connected
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        arcs = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        if len(arcs) < n:
            continue
        D = Digraph(n=n, arcs=arcs)
        if is_strongly_connected(D):
            yield D


def strong_digraph_classes(n):
    """
    One strongly connected digraph per isomorphism class on n vertices.

    Arc sets are bitmasks over the ordered pairs; the class representative
    is the smallest mask over all vertex permutations, computed with numpy
    for every mask at once (n <= 5 keeps this at 2**20 masks).
    """
    import numpy as np
    from rvc_core.digraph import Digraph, is_strongly_connected
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    index = {p: i for i, p in enumerate(pairs)}
    masks = np.arange(1 << len(pairs), dtype=np.uint32)
    canon = masks.copy()
    for perm in itertools.permutations(range(n)):
        image = np.zeros_like(masks)
        for i, (u, v) in enumerate(pairs):
            image |= ((masks >> np.uint32(i)) & np.uint32(1)) << np.uint32(index[(perm[u], perm[v])])
        np.minimum(canon, image, out=canon)
    for mask in np.unique(canon):
        mask = int(mask)
        arcs = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
        if len(arcs) < n:
            continue
        D = Digraph(n=n, arcs=arcs)
        if is_strongly_connected(D):
            yield D


def all_vertex_labelings(n, K):
    """Every map from n vertices into K colours."""
    return itertools.product(range(K), repeat=n)


# ──────────────────────────────────────────────────────
# Colouring Factories
# ──────────────────────────────────────────────────────

def make_vertex_colouring(labels):
    from rvc_core.models import VertexColouring
    return VertexColouring.from_labels(labels)


def make_arc_colouring(mapping):
    from rvc_core.models import ArcColouring
    return ArcColouring.from_mapping(mapping)


# ──────────────────────────────────────────────────────
# Environment Detection
# ──────────────────────────────────────────────────────

def is_ci():
    """Returns True if running in CI environment."""
    return os.environ.get("CI", "").lower() in ("true", "1", "yes")


def run_slow():
    """Exhaustive n = 5 sweeps run only with RVC_SLOW_TESTS set (see run_all.py --slow)."""
    return os.environ.get("RVC_SLOW_TESTS", "").lower() in ("true", "1", "yes")


def has_module(name):
    """Check if a Python module is available."""
    try:
        __import__(name)
        return True
    except ImportError:
        return False


HAS_NETWORKX = has_module("networkx")
HAS_HYPOTHESIS = has_module("hypothesis")
HAS_PROMETHEUS = has_module("prometheus_client")
