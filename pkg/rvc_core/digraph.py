"""
Digraph Core
============
Immutable simple digraphs on dense vertex ids ``0..n-1`` plus the metric
queries every other package runs on: BFS distances, diameter, strong
connectivity, geodesic counting, and the building operations used by the
families (biorientation, vertex expansion, lexicographic product).

Distances use ``UNREACHABLE`` (``math.inf``) for missing paths; it is a
float, so it never aliases a hop count.
"""

import logging
import math
import threading
from collections import deque
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from cachetools import LRUCache
from cachetools.keys import hashkey
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, ValidationInfo, field_validator

from .errors import DigraphError, NotStronglyConnectedError, UnreachableError

logger = logging.getLogger("rvc.digraph")

UNREACHABLE = math.inf

Arc = Tuple[int, int]
Distance = Union[int, float]


class Digraph(BaseModel):
    """
    Simple digraph. Arcs are stored sorted and deduplicated; per-vertex
    out/in neighbour tuples are derived once and ascend by id.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    arcs: Tuple[Tuple[int, int], ...] = ()

    _out: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _in: Tuple[Tuple[int, ...], ...] = PrivateAttr(default=())
    _arc_set: FrozenSet[Arc] = PrivateAttr(default=frozenset())

    @field_validator("arcs")
    @classmethod
    def _normalise_arcs(cls, arcs, info: ValidationInfo):
        n = info.data.get("n")
        if n is None:
            return arcs
        for u, v in arcs:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
        return tuple(sorted(set(arcs)))

    def model_post_init(self, __context) -> None:
        out: List[List[int]] = [[] for _ in range(self.n)]
        inn: List[List[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
            inn[v].append(u)
        # arcs are sorted by (u, v), so both lists come out ascending
        self._out = tuple(tuple(x) for x in out)
        self._in = tuple(tuple(x) for x in inn)
        self._arc_set = frozenset(self.arcs)

    # ── Adjacency ───────────────────────────────────────

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def out_adj(self) -> Tuple[Tuple[int, ...], ...]:
        return self._out

    @property
    def in_adj(self) -> Tuple[Tuple[int, ...], ...]:
        return self._in

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    def vertices(self) -> range:
        return range(self.n)

    def __repr__(self) -> str:
        return f"<Digraph n={self.n} m={self.m}>"


class DistanceMatrix(BaseModel):
    """All-pairs hop counts; ``UNREACHABLE`` where no path exists."""

    model_config = ConfigDict(frozen=True)

    n: int
    d: Tuple[Tuple[Distance, ...], ...]

    def __call__(self, u: int, v: int) -> Distance:
        return self.d[u][v]

    def row(self, u: int) -> Tuple[Distance, ...]:
        return self.d[u]


# ── Construction ────────────────────────────────────────

def build_digraph(n: int, arc_list: Iterable[Sequence[int]]) -> Digraph:
    """Build a digraph, rejecting loops and out-of-range ids; duplicates collapse."""
    if n < 1:
        raise DigraphError(f"vertex count must be >= 1, got {n}")
    arcs = []
    for arc in arc_list:
        u, v = int(arc[0]), int(arc[1])
        if u == v:
            raise DigraphError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise DigraphError(f"arc ({u}, {v}) out of range for n={n}")
        arcs.append((u, v))
    return Digraph(n=n, arcs=tuple(arcs))


def biorient(n: int, edge_list: Iterable[Sequence[int]]) -> Digraph:
    """Replace every undirected edge by its two opposite arcs."""
    arcs = []
    for edge in edge_list:
        u, v = int(edge[0]), int(edge[1])
        if u == v:
            raise DigraphError(f"loop at vertex {u}")
        arcs.append((u, v))
        arcs.append((v, u))
    return build_digraph(n, arcs)


def expand_vertex(D: Digraph, u: int, H: Digraph) -> Digraph:
    """
    Replace ``u`` by a copy of ``H``. Every arc ``xu`` becomes ``xh`` and
    every ``ux`` becomes ``hx`` for all ``h`` in the copy; arcs of ``H`` are
    kept. Vertex 0 of ``H`` takes id ``u``; vertex ``i >= 1`` takes id
    ``D.n + i - 1``.
    """
    if not (0 <= u < D.n):
        raise DigraphError(f"vertex {u} out of range for n={D.n}")
    copy_ids = [u] + [D.n + i - 1 for i in range(1, H.n)]
    arcs: List[Arc] = []
    for x, y in D.arcs:
        if x == u:
            arcs.extend((h, y) for h in copy_ids)
        elif y == u:
            arcs.extend((x, h) for h in copy_ids)
        else:
            arcs.append((x, y))
    arcs.extend((copy_ids[a], copy_ids[b]) for a, b in H.arcs)
    return Digraph(n=D.n + H.n - 1, arcs=tuple(arcs))


def lexicographic_product(D: Digraph, H: Digraph) -> Digraph:
    """D ∘ H: every vertex of D expanded to H. Vertex (v, h) gets id ``v * H.n + h``."""
    m = H.n
    arcs: List[Arc] = []
    for v, w in D.arcs:
        for h in range(m):
            for g in range(m):
                arcs.append((v * m + h, w * m + g))
    for v in range(D.n):
        arcs.extend((v * m + a, v * m + b) for a, b in H.arcs)
    return Digraph(n=D.n * m, arcs=tuple(arcs))


def remove_arcs(D: Digraph, arcs: Iterable[Arc]) -> Digraph:
    drop = set(arcs)
    return Digraph(n=D.n, arcs=tuple(a for a in D.arcs if a not in drop))


def is_spanning_subdigraph(H: Digraph, D: Digraph) -> bool:
    return H.n == D.n and all(D.has_arc(u, v) for u, v in H.arcs)


# ── Metric Queries ──────────────────────────────────────

def _bfs(adj: Tuple[Tuple[int, ...], ...], start: int) -> List[Distance]:
    dist: List[Distance] = [UNREACHABLE] * len(adj)
    dist[start] = 0
    queue = deque([start])
    while queue:
        w = queue.popleft()
        nd = dist[w] + 1
        for z in adj[w]:
            if dist[z] is UNREACHABLE:
                dist[z] = nd
                queue.append(z)
    return dist


def distances_from(D: Digraph, u: int) -> Tuple[Distance, ...]:
    """BFS row of the distance matrix for source ``u``."""
    return tuple(_bfs(D.out_adj, u))


def is_strongly_connected(D: Digraph) -> bool:
    forward = _bfs(D.out_adj, 0)
    if any(x is UNREACHABLE for x in forward):
        return False
    backward = _bfs(D.in_adj, 0)
    return not any(x is UNREACHABLE for x in backward)


_DISTANCE_CACHE: Optional[LRUCache] = None
_DISTANCE_LOCK = threading.Lock()


def _get_distance_cache() -> LRUCache:
    """The LRU cache, sized from ``RVC_DISTANCE_CACHE`` on first use."""
    global _DISTANCE_CACHE
    if _DISTANCE_CACHE is None:
        from rvc_engine.logic.settings import get_settings
        _DISTANCE_CACHE = LRUCache(maxsize=get_settings().distance_cache)
    return _DISTANCE_CACHE


def distance_matrix(D: Digraph) -> DistanceMatrix:
    """All-pairs BFS distances, memoised per digraph."""
    key = hashkey(D.n, D.arcs)
    with _DISTANCE_LOCK:
        cache = _get_distance_cache()
        hit = cache.get(key)
    if hit is not None:
        return hit
    dm = DistanceMatrix(n=D.n, d=tuple(distances_from(D, u) for u in range(D.n)))
    with _DISTANCE_LOCK:
        cache[key] = dm
    return dm


def distance_cache_size() -> int:
    with _DISTANCE_LOCK:
        return _get_distance_cache().maxsize


def clear_distance_cache() -> None:
    """Drop every entry; the next lookup re-reads the configured size."""
    global _DISTANCE_CACHE
    with _DISTANCE_LOCK:
        _DISTANCE_CACHE = None


def require_strongly_connected(D: Digraph) -> None:
    if not is_strongly_connected(D):
        raise NotStronglyConnectedError(f"digraph with n={D.n}, m={D.m} is not strongly connected")


def diameter(D: Digraph) -> int:
    require_strongly_connected(D)
    if D.n == 1:
        return 0
    return int(max(max(row) for row in distance_matrix(D).d))


def eccentricity(D: Digraph, u: int) -> Distance:
    """Largest distance from ``u``; ``UNREACHABLE`` if some vertex cannot be reached."""
    return max(distances_from(D, u))


def floyd_warshall(D: Digraph):
    """Dense all-pairs distances as a float ``numpy`` array (``inf`` when unreachable)."""
    import numpy as np

    d = np.full((D.n, D.n), np.inf)
    np.fill_diagonal(d, 0.0)
    for u, v in D.arcs:
        d[u, v] = 1.0
    for k in range(D.n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


def count_geodesics(D: Digraph, u: int, v: int) -> int:
    """Number of distinct shortest u-v paths (DP over the BFS layers)."""
    dist = _bfs(D.out_adj, u)
    if dist[v] is UNREACHABLE:
        raise UnreachableError(u, v)
    order = sorted(range(D.n), key=lambda w: dist[w])
    count = [0] * D.n
    count[u] = 1
    for w in order:
        if w == u or dist[w] is UNREACHABLE:
            continue
        count[w] = sum(count[p] for p in D.in_adj[w] if dist[p] == dist[w] - 1)
    return count[v]


def shortest_path(D: Digraph, u: int, v: int) -> List[int]:
    """
    Canonical u-v geodesic: each vertex keeps the first BFS parent that
    discovered it, with neighbours scanned in ascending id order.
    """
    parent: List[Optional[int]] = [None] * D.n
    seen = [False] * D.n
    seen[u] = True
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            break
        for z in D.out_adj[w]:
            if not seen[z]:
                seen[z] = True
                parent[z] = w
                queue.append(z)
    if not seen[v]:
        raise UnreachableError(u, v)
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path
