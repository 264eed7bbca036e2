"""
Rainbow Verifier
================
Decides whether a vertex- or arc-colouring makes a digraph rainbow
(vertex-)connected or strongly rainbow (vertex-)connected.

Colour sets travel as integer bit masks. Vertex rainbowness constrains
internal vertices only; arc rainbowness constrains every arc. An uncoloured
element (``None`` bit) can never sit on a rainbow path, which makes the
empty palette and the solver's partial colourings behave correctly.

The all-pairs checks sweep once per source and report the
lexicographically smallest failing ordered pair.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Set, Tuple

from rvc_core.digraph import (
    UNREACHABLE, Digraph, distance_matrix, distances_from, require_strongly_connected,
)
from rvc_core.errors import ColouringError, UnreachableError
from rvc_core.models import ArcColouring, VertexColouring, Verdict

from .metrics import record_verify

logger = logging.getLogger("rvc.verify")

Bits = Sequence[Optional[int]]
ArcBits = Dict[Tuple[int, int], Optional[int]]


def vertex_bits(c: VertexColouring) -> List[Optional[int]]:
    return [None if x is None else 1 << x for x in c.colour]


def arc_bits(ac: ArcColouring) -> ArcBits:
    return {arc: 1 << x for arc, x in zip(ac.arcs, ac.colour)}


# ── Vertex Version ──────────────────────────────────────

def _vertex_path_reach(D: Digraph, bits: Bits, u: int,
                       target: Optional[int] = None) -> Tuple[Set[int], int]:
    """
    Breadth search over (vertex, internal colour set) states from ``u``.
    Returns the vertices with a rainbow path from ``u`` and the number of
    states expanded. Stops early once ``target`` is reached.
    """
    reached: Set[int] = set(D.out_adj[u])
    if target is not None and target in reached:
        return reached, 0
    seen: List[Set[int]] = [set() for _ in range(D.n)]
    queue = deque()
    for z in D.out_adj[u]:
        b = bits[z]
        if b is not None:
            seen[z].add(b)
            queue.append((z, b))
    states = 0
    while queue:
        w, mask = queue.popleft()
        states += 1
        for z in D.out_adj[w]:
            if z == u:
                continue
            reached.add(z)
            if z == target:
                return reached, states
            b = bits[z]
            if b is None or mask & b:
                continue
            nm = mask | b
            if nm not in seen[z]:
                seen[z].add(nm)
                queue.append((z, nm))
    return reached, states


def _vertex_geodesic_reach(D: Digraph, bits: Bits, u: int, dist: Sequence) -> Set[int]:
    """
    Vertices ``v`` with a rainbow u-v geodesic. Every prefix of a geodesic is
    a geodesic, so one layered sweep from ``u`` serves all targets.
    """
    order = sorted((w for w in range(D.n) if w != u and dist[w] != UNREACHABLE),
                   key=lambda w: dist[w])
    masks: List[Set[int]] = [set() for _ in range(D.n)]
    masks[u].add(0)
    ok: Set[int] = set()
    for z in order:
        preds = [p for p in D.in_adj[z] if dist[p] == dist[z] - 1]
        if any(masks[p] for p in preds):
            ok.add(z)
        b = bits[z]
        if b is None:
            continue
        masks[z] = {m | b for p in preds for m in masks[p] if not m & b}
    return ok


def has_rainbow_path(D: Digraph, c: VertexColouring, u: int, v: int) -> bool:
    """True iff some u-v path has pairwise distinct internal colours."""
    if u == v:
        raise ValueError("endpoints must differ")
    reached, _ = _vertex_path_reach(D, vertex_bits(c), u, target=v)
    return v in reached


def path_search_states(D: Digraph, c: VertexColouring, u: int) -> int:
    """States expanded by the rainbow-path search from ``u`` (at most n * 2^K)."""
    _, states = _vertex_path_reach(D, vertex_bits(c), u)
    return states


def has_rainbow_geodesic(D: Digraph, c: VertexColouring, u: int, v: int) -> bool:
    """
    True iff some shortest u-v path is rainbow. The search walks the u-v
    geodesic DAG, where arc (w, z) is admissible iff
    d(u, w) + 1 + d(z, v) = d(u, v).
    """
    if u == v:
        raise ValueError("endpoints must differ")
    dm = distance_matrix(D)
    duv = dm(u, v)
    if duv == UNREACHABLE:
        raise UnreachableError(u, v)
    bits = vertex_bits(c)
    masks: Dict[int, Set[int]] = {u: {0}}
    layer = [u]
    for step in range(1, int(duv)):
        nxt: Dict[int, Set[int]] = {}
        for w in layer:
            for z in D.out_adj[w]:
                if dm(u, z) != step or dm(z, v) != duv - step:
                    continue
                b = bits[z]
                if b is None:
                    continue
                bucket = nxt.setdefault(z, set())
                bucket.update(m | b for m in masks[w] if not m & b)
        masks = {z: s for z, s in nxt.items() if s}
        layer = list(masks)
        if not layer:
            return False
    return any(D.has_arc(w, v) for w in layer)


# ── Arc Version ─────────────────────────────────────────

def _arc_path_reach(D: Digraph, bits: ArcBits, u: int,
                    target: Optional[int] = None) -> Set[int]:
    """
    Search over (vertex, arc colour set) states. A walk with distinct arc
    colours contains a path with distinct arc colours, so walks suffice.
    """
    reached: Set[int] = set()
    seen: List[Set[int]] = [set() for _ in range(D.n)]
    seen[u].add(0)
    queue = deque([(u, 0)])
    while queue:
        w, mask = queue.popleft()
        for z in D.out_adj[w]:
            b = bits.get((w, z))
            if b is None or mask & b or z == u:
                continue
            reached.add(z)
            if z == target:
                return reached
            nm = mask | b
            if nm not in seen[z]:
                seen[z].add(nm)
                queue.append((z, nm))
    return reached


def _arc_geodesic_reach(D: Digraph, bits: ArcBits, u: int, dist: Sequence) -> Set[int]:
    order = sorted((w for w in range(D.n) if w != u and dist[w] != UNREACHABLE),
                   key=lambda w: dist[w])
    masks: List[Set[int]] = [set() for _ in range(D.n)]
    masks[u].add(0)
    ok: Set[int] = set()
    for z in order:
        acc: Set[int] = set()
        for p in D.in_adj[z]:
            if dist[p] != dist[z] - 1:
                continue
            b = bits.get((p, z))
            if b is None:
                continue
            acc.update(m | b for m in masks[p] if not m & b)
        masks[z] = acc
        if acc:
            ok.add(z)
    return ok


def has_rainbow_arc_path(D: Digraph, ac: ArcColouring, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("endpoints must differ")
    return v in _arc_path_reach(D, arc_bits(ac), u, target=v)


def has_rainbow_arc_geodesic(D: Digraph, ac: ArcColouring, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("endpoints must differ")
    dist = distances_from(D, u)
    if dist[v] == UNREACHABLE:
        raise UnreachableError(u, v)
    return v in _arc_geodesic_reach(D, arc_bits(ac), u, dist)


# ── All-Pairs Checks ────────────────────────────────────

def _check_fit(D: Digraph, colouring, mode: str) -> None:
    if mode in ("rvc", "srvc"):
        if not isinstance(colouring, VertexColouring):
            raise ColouringError(f"mode {mode} needs a vertex colouring")
        if colouring.n != D.n:
            raise ColouringError(f"colouring has {colouring.n} vertices, digraph has {D.n}")
    elif mode in ("rc", "src"):
        if not isinstance(colouring, ArcColouring):
            raise ColouringError(f"mode {mode} needs an arc colouring")
        if colouring.arcs != D.arcs:
            raise ColouringError("arc colouring does not match the digraph's arc set")
    else:
        raise ValueError(f"unknown mode: {mode}")


def first_failing_pair(D: Digraph, bits, mode: str) -> Optional[Tuple[int, int]]:
    """Smallest ordered pair without a rainbow path/geodesic, or None."""
    dm = distance_matrix(D) if mode in ("srvc", "src") else None
    for u in range(D.n):
        if mode == "rvc":
            ok, _ = _vertex_path_reach(D, bits, u)
        elif mode == "srvc":
            ok = _vertex_geodesic_reach(D, bits, u, dm.row(u))
        elif mode == "rc":
            ok = _arc_path_reach(D, bits, u)
        else:
            ok = _arc_geodesic_reach(D, bits, u, dm.row(u))
        for v in range(D.n):
            if v != u and v not in ok:
                return (u, v)
    return None


def verify_colouring(D: Digraph, colouring, mode: str) -> Verdict:
    """Check every ordered pair; report the smallest failing one."""
    require_strongly_connected(D)
    _check_fit(D, colouring, mode)
    bits = vertex_bits(colouring) if mode in ("rvc", "srvc") else arc_bits(colouring)
    pair = first_failing_pair(D, bits, mode)
    verdict = Verdict(mode=mode, valid=pair is None, failing_pair=pair)
    record_verify(mode, verdict.valid)
    if pair is not None:
        logger.debug("colouring rejected", extra={"mode": mode, "pair": pair})
    return verdict


def is_rvc_colouring(D: Digraph, c: VertexColouring) -> bool:
    return verify_colouring(D, c, "rvc").valid


def is_srvc_colouring(D: Digraph, c: VertexColouring) -> bool:
    return verify_colouring(D, c, "srvc").valid


def is_rc_colouring(D: Digraph, ac: ArcColouring) -> bool:
    return verify_colouring(D, ac, "rc").valid


def is_src_colouring(D: Digraph, ac: ArcColouring) -> bool:
    return verify_colouring(D, ac, "src").valid
