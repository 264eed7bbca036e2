"""
Tournaments
===========
The small named tournaments T4 and T5_1, the family T_{n,k}, seeded random
strong tournaments, and the two proof colourings that bound rvc and srvc
for every tournament: the two-pair colouring (at most n - 2 colours) and
the layered colouring around a vertex of maximum eccentricity (at most
d + 3 colours).
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from rvc_core.digraph import (
    Digraph, diameter, distance_matrix, eccentricity, expand_vertex,
    is_strongly_connected, require_strongly_connected, shortest_path,
)
from rvc_core.errors import FamilyParameterError, SearchExhaustedError
from rvc_core.models import VertexColouring
from rvc_engine.logic.settings import get_settings

logger = logging.getLogger("rvc.families")

TOURNAMENT_KINDS = ("T4", "T5_1", "T_nk", "random", "near_transitive", "diam2_search")

T4_ARCS = ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3))
# two directed 5-cycles: 0 1 2 3 4 0 and 0 3 1 4 2 0
T5_1_ARCS = ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 3), (3, 1), (1, 4), (4, 2), (2, 0))


def is_tournament(D: Digraph) -> bool:
    """Exactly one arc between every pair of distinct vertices."""
    for u in range(D.n):
        for v in range(u + 1, D.n):
            if D.has_arc(u, v) == D.has_arc(v, u):
                return False
    return True


def transitive_tournament(n: int) -> Digraph:
    return Digraph(n=n, arcs=tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def _random_tournament(n: int, rng: np.random.Generator) -> Digraph:
    flips = rng.integers(0, 2, size=(n, n))
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            arcs.append((u, v) if flips[u, v] else (v, u))
    return Digraph(n=n, arcs=tuple(arcs))


def random_strong_tournament(n: int, seed: int = 0, attempts: Optional[int] = None) -> Digraph:
    """Rejection-sample tournaments until one is strongly connected."""
    if n < 3:
        raise FamilyParameterError(f"a strong tournament needs n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    budget = attempts or get_settings().diam2_attempts
    for _ in range(budget):
        T = _random_tournament(n, rng)
        if is_strongly_connected(T):
            return T
    raise SearchExhaustedError(f"no strong tournament on {n} vertices in {budget} attempts")


def near_transitive_tournament(n: int, seed: int = 0, max_span: int = 3,
                               attempts: Optional[int] = None) -> Digraph:
    """
    Transitive order 0 -> 1 -> ... -> n-1 with a seeded set of short back
    arcs: each reversed arc ``(i, i + s)`` has span 2 <= s <= ``max_span``.
    Rejection-sampled until strong. Back arcs move at most ``max_span`` places,
    so d(n-1, 0) >= (n-1) / max_span.
    """
    if n < 3:
        raise FamilyParameterError(f"a strong tournament needs n >= 3, got {n}")
    if max_span < 2:
        raise FamilyParameterError(f"max_span must be >= 2, got {max_span}")
    rng = np.random.default_rng(seed)
    budget = attempts or get_settings().diam2_attempts
    for _ in range(budget):
        back = set()
        for i in range(n - 2):
            if rng.random() < 0.7:
                span = int(rng.integers(2, min(max_span, n - 1 - i) + 1))
                back.add((i, i + span))
        arcs = tuple((j, i) if (i, j) in back else (i, j) for i in range(n) for j in range(i + 1, n))
        T = Digraph(n=n, arcs=arcs)
        if is_strongly_connected(T):
            return T
    raise SearchExhaustedError(f"no strong near-transitive tournament on {n} vertices in {budget} attempts")


def diam2_search(n: int, seed: int = 0, attempts: Optional[int] = None) -> Digraph:
    """Seeded search for a tournament of diameter 2 (exists for n = 3 and n >= 5)."""
    if n < 3 or n == 4:
        raise FamilyParameterError(f"no tournament of diameter 2 on {n} vertices")
    rng = np.random.default_rng(seed)
    budget = attempts or get_settings().diam2_attempts
    for attempt in range(budget):
        T = _random_tournament(n, rng)
        if is_strongly_connected(T) and diameter(T) == 2:
            logger.debug("diameter-2 tournament found", extra={"n": n, "attempt": attempt})
            return T
    raise SearchExhaustedError(f"no diameter-2 tournament on {n} vertices in {budget} attempts")


def gen_t_nk(n: int, k: int, seed: int = 0, expansion: str = "transitive") -> Digraph:
    """
    T_{k+2,k} has arcs v_i -> v_{i+1} (0 <= i <= k) and v_j -> v_i (j - i >= 2).
    For n > k + 2, v_0 is expanded into a tournament on n - k - 1 vertices.
    """
    if n < 5 or not (1 <= k <= n - 2):
        raise FamilyParameterError(f"T_(n,k) needs n >= 5 and 1 <= k <= n-2, got n={n}, k={k}")
    if k == 1:
        if n == 5:
            return Digraph(n=5, arcs=T5_1_ARCS)
        return diam2_search(n, seed)
    m = k + 2
    arcs = [(i, i + 1) for i in range(k + 1)]
    arcs += [(j, i) for i in range(m) for j in range(i + 2, m)]
    base = Digraph(n=m, arcs=tuple(arcs))
    size = n - k - 1
    if size == 1:
        return base
    if expansion == "transitive":
        H = transitive_tournament(size)
    elif expansion == "random":
        H = _random_tournament(size, np.random.default_rng(seed))
    else:
        raise FamilyParameterError(f"Unknown expansion: {expansion}")
    return expand_vertex(base, 0, H)


def gen_tournament(kind: str, n: Optional[int] = None, k: Optional[int] = None,
                   seed: int = 0, expansion: str = "transitive") -> Digraph:
    if kind == "T4":
        return Digraph(n=4, arcs=T4_ARCS)
    elif kind == "T5_1":
        return Digraph(n=5, arcs=T5_1_ARCS)
    elif kind == "T_nk":
        if n is None or k is None:
            raise FamilyParameterError("T_nk needs n and k")
        return gen_t_nk(n, k, seed, expansion)
    elif kind == "random":
        if n is None:
            raise FamilyParameterError("random tournament needs n")
        return random_strong_tournament(n, seed)
    elif kind == "near_transitive":
        if n is None:
            raise FamilyParameterError("near_transitive tournament needs n")
        return near_transitive_tournament(n, seed)
    elif kind == "diam2_search":
        if n is None:
            raise FamilyParameterError("diam2_search needs n")
        return diam2_search(n, seed)
    else:
        raise FamilyParameterError(f"Unknown tournament kind: {kind}")


# ── Colourings ──────────────────────────────────────────

def t_nk_colouring(n: int, k: int) -> VertexColouring:
    """c(v_i) = i, with v_0, v_{k+1} and every copy of v_0 sharing colour 1: k colours."""
    if n < 5 or not (1 <= k <= n - 2):
        raise FamilyParameterError(f"T_(n,k) needs n >= 5 and 1 <= k <= n-2, got n={n}, k={k}")
    if k == 1:
        return VertexColouring.constant(n)
    labels = [1] * n
    for i in range(1, k + 1):
        labels[i] = i
    return VertexColouring.from_labels(labels)


def _require_tournament(T: Digraph) -> None:
    if not is_tournament(T):
        raise FamilyParameterError("digraph is not a tournament")
    require_strongly_connected(T)


def tournament_two_pair_colouring(T: Digraph) -> VertexColouring:
    """
    Take (u, v) at distance diam and a u-v geodesic P; with v' the successor
    of u and u' the predecessor of v on P, colour u, u' with 1 and v, v'
    with 2. Everything else gets its own colour.
    """
    if T.n < 5:
        raise FamilyParameterError(f"two-pair colouring needs n >= 5, got {T.n}")
    _require_tournament(T)
    d = diameter(T)
    if d <= 2:
        return VertexColouring.constant(T.n)
    dm = distance_matrix(T)
    u, v = min((x, y) for x in range(T.n) for y in range(T.n) if dm(x, y) == d)
    P = shortest_path(T, u, v)
    v_prime, u_prime = P[1], P[-2]
    labels: Dict[int, int] = {u: 1, u_prime: 1, v: 2, v_prime: 2}
    nxt = 3
    for w in range(T.n):
        if w not in labels:
            labels[w] = nxt
            nxt += 1
    logger.debug("two-pair colouring", extra={"pair": (u, v), "geodesic": P})
    return VertexColouring.from_labels([labels[w] for w in range(T.n)])


def _layer_pick(T: Digraph, layer: List[int], by_in: bool) -> int:
    inside = set(layer)

    def degree(w: int) -> int:
        adj = T.in_adj[w] if by_in else T.out_adj[w]
        return sum(1 for z in adj if z in inside)

    return min(layer, key=lambda w: (-degree(w), w))


def tournament_layered_colouring(T: Digraph) -> VertexColouring:
    """
    Distance layers V_1..V_d from a vertex ``a`` of eccentricity d. Layers
    V_2..V_{d-1} keep their index as colour; a max in-degree vertex ``p``
    of V_1 and a max out-degree vertex ``q`` of V_d get their own colours,
    then one or two vertices of a p-q geodesic are recoloured.
    """
    _require_tournament(T)
    d = diameter(T)
    if d <= 2:
        return VertexColouring.constant(T.n)
    a = min(w for w in range(T.n) if eccentricity(T, w) == d)
    dist = distance_matrix(T).row(a)
    layers: Dict[int, List[int]] = {i: [w for w in range(T.n) if dist[w] == i] for i in range(d + 1)}
    p = _layer_pick(T, layers[1], by_in=True)
    q = _layer_pick(T, layers[d], by_in=False)

    alpha, beta, gamma, delta = d - 1, d, d + 1, d + 2
    colour: Dict[int, int] = {}
    for i in range(2, d):
        for w in layers[i]:
            colour[w] = i - 1
    for w in layers[1]:
        colour[w] = 0
    colour[p] = alpha
    for w in layers[d]:
        colour[w] = d - 3
    colour[a] = beta
    colour[q] = beta

    P = shortest_path(T, p, q)
    arcs = len(P) - 1
    on_layer = {int(dist[w]): w for w in P}
    if arcs == d - 1:
        colour[on_layer[d - 2]] = gamma
    elif arcs == d:
        s, t = next((x, y) for x, y in zip(P, P[1:]) if dist[x] == dist[y])
        k = int(dist[s])
        if k == d - 2:
            r = t
        else:
            r = next(w for w in P if dist[w] == d - 2)
        colour[r] = gamma
        colour[s] = delta
    else:
        raise FamilyParameterError(f"p-q geodesic has {arcs} arcs, expected {d - 1} or {d}")
    logger.debug("layered colouring", extra={"root": a, "p": p, "q": q, "geodesic": P})
    return VertexColouring.from_labels([colour[w] for w in range(T.n)])
