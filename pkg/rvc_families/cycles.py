"""
Cycle Families
==============
Directed cycles and the spanning strongly connected subdigraphs of the
bioriented cycle, with the structural classifier into the shapes
K_EQ_1, D1, D2, D3, D4 and OTHER, and the proof colourings for each shape.

Position ``i`` names the cycle edge between ``v_i`` and ``v_{i+1}``. An
asymmetric position keeps ``v_i -> v_{i+1}`` and drops ``v_{i+1} -> v_i``.
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from rvc_core.digraph import Digraph
from rvc_core.errors import DigraphError, FamilyParameterError
from rvc_core.models import CycleSubdigraphClass, VertexColouring
from rvc_engine.logic.predictions import predict_cycle_subdigraph

logger = logging.getLogger("rvc.families")


def gen_directed_cycle(n: int) -> Digraph:
    if n < 3:
        raise FamilyParameterError(f"directed cycle needs n >= 3, got {n}")
    return Digraph(n=n, arcs=tuple((i, (i + 1) % n) for i in range(n)))


def gen_cycle_subdigraph(n: int, asym: Iterable[int]) -> Digraph:
    if n < 3:
        raise FamilyParameterError(f"cycle subdigraph needs n >= 3, got {n}")
    positions = set(asym)
    bad = [i for i in positions if not (0 <= i < n)]
    if bad:
        raise FamilyParameterError(f"asymmetric positions {sorted(bad)} outside 0..{n - 1}")
    arcs = [(i, (i + 1) % n) for i in range(n)]
    arcs += [((i + 1) % n, i) for i in range(n) if i not in positions]
    return Digraph(n=n, arcs=tuple(arcs))


# ── Classification ──────────────────────────────────────

def _runs(positions: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """Maximal cyclic runs of consecutive positions as (start, length)."""
    present = set(positions)
    if len(present) == n:
        return [(0, n)]
    runs = []
    for p in sorted(present):
        if (p - 1) % n in present:
            continue
        length = 1
        while (p + length) % n in present:
            length += 1
        runs.append((p, length))
    return runs


def _gaps(runs: List[Tuple[int, int]], n: int) -> List[int]:
    """Symmetric positions between each run and the next one."""
    gaps = []
    for i, (start, length) in enumerate(runs):
        nxt = runs[(i + 1) % len(runs)][0]
        gaps.append((nxt - (start + length)) % n)
    return gaps


def asymmetric_positions(D: Digraph) -> Tuple[List[int], List[int]]:
    """
    Split the cycle positions into forward-only and backward-only ones.
    Raises if ``D`` is not a spanning subdigraph of the bioriented cycle.
    """
    n = D.n
    if n < 3:
        raise DigraphError(f"cycle subdigraph needs n >= 3, got {n}")
    for u, v in D.arcs:
        if v != (u + 1) % n and u != (v + 1) % n:
            raise DigraphError(f"arc ({u}, {v}) is not a cycle arc")
    forward, backward = [], []
    for i in range(n):
        fwd = D.has_arc(i, (i + 1) % n)
        bwd = D.has_arc((i + 1) % n, i)
        if not fwd and not bwd:
            raise DigraphError(f"position {i} has no arc; the subdigraph is not spanning strong")
        if fwd and not bwd:
            forward.append(i)
        elif bwd and not fwd:
            backward.append(i)
    return forward, backward


def classify_cycle_subdigraph(D: Digraph) -> CycleSubdigraphClass:
    """Shape of a strongly connected spanning subdigraph of the bioriented cycle."""
    n = D.n
    forward, backward = asymmetric_positions(D)
    if forward and backward:
        raise DigraphError("asymmetric arcs in both directions: not strongly connected")
    if not forward and not backward:
        raise DigraphError("no asymmetric arc: this is the bioriented cycle itself")
    reflected = not forward
    positions = sorted(forward) if forward else sorted((-i - 1) % n for i in backward)
    k = len(positions)
    runs = _runs(positions, n)
    lengths = sorted(length for _, length in runs)
    gaps = _gaps(runs, n)

    def make(kind: str, segments: Optional[Tuple[int, int]]) -> CycleSubdigraphClass:
        seg_p, seg_q = segments if segments is not None else (None, None)
        return CycleSubdigraphClass(kind=kind, n=n, k=k, seg_p=seg_p, seg_p_prime=seg_q,
                                    positions=tuple(positions), reflected=reflected)

    if k == 1:
        return make("K_EQ_1", (n - 1, 0))
    if k == 2:
        if len(runs) == 1:
            return make("D1", (0, n - 2))
        return make("D1", (gaps[0], gaps[1]))
    if k == 3:
        if lengths == [3]:
            return make("D2", (n - 3, 0))
        if lengths == [1, 2]:
            return make("D3", (gaps[0], gaps[1]))
        return make("OTHER", None)
    if k == 4:
        if lengths == [2, 2]:
            return make("D4", (gaps[0], gaps[1]))
        if lengths == [4]:
            return make("D4", (0, n - 4))
    return make("OTHER", None)


# ── Colourings ──────────────────────────────────────────

def _normalised(positions: Sequence[int], anchor: int, n: int) -> List[int]:
    """Positions after rotating ``anchor`` to ``n - 1``."""
    return sorted((q - anchor - 1) % n for q in positions)


def _choose_anchor(cls: CycleSubdigraphClass, accept) -> Tuple[int, List[int]]:
    n = cls.n
    for anchor in cls.positions:
        norm = _normalised(cls.positions, anchor, n)
        if accept(norm):
            return anchor, norm
    raise FamilyParameterError(f"no rotation of {cls.kind} fits its construction")


def _equation_labels(n: int, ell: Optional[int]) -> Dict[int, int]:
    """c(v_i) = i for 1 <= i <= n-2, then (c(v_{n-1}), c(v_0)) from ``ell``."""
    labels = {i: i for i in range(1, n - 1)}
    if ell is not None and 1 <= ell <= n - 3:
        labels[n - 1], labels[0] = ell, ell + 1
    else:
        labels[n - 1], labels[0] = 1, 2
    return labels


def _single_duplicate(n: int, c0: int) -> Dict[int, int]:
    labels = {i: i for i in range(1, n)}
    labels[0] = c0
    return labels


def _normalised_labels(cls: CycleSubdigraphClass, target: str, value: int) -> Tuple[int, Dict[int, int]]:
    n = cls.n
    half, ceil_half = n // 2, -(-n // 2)
    kind = cls.kind

    if kind == "K_EQ_1":
        anchor = cls.positions[0]
        if target == "rvc":
            return anchor, _equation_labels(n, None)
        labels = {i: i for i in range(1, n - 1)}
        labels[0], labels[n - 1] = ceil_half, ceil_half - 1
        return anchor, labels

    if kind == "D1":
        if value == n - 2:
            anchor, norm = _choose_anchor(cls, lambda norm: norm[0] <= n - 3)
            return anchor, _equation_labels(n, norm[0])
        anchor, norm = _choose_anchor(cls, lambda norm: norm[0] in (0, half + 2))
        ell = norm[0]
        return anchor, _single_duplicate(n, half if ell == 0 else ell)

    if kind == "D2":
        anchor, _ = _choose_anchor(cls, lambda norm: norm == [0, 1, n - 1])
        return anchor, _equation_labels(n, None)

    if kind == "D3":
        anchor, norm = _choose_anchor(cls, lambda norm: norm[0] == 0 and norm[-1] == n - 1 and norm[1] >= 2)
        ell = norm[1]
        c0 = ell
        if target == "srvc" and ((5 <= n <= 10 and ell == 2) or (n >= 11 and ell == ceil_half - 3)):
            c0 = ell + 1
        return anchor, _single_duplicate(n, c0)

    if kind == "D4":
        anchor, norm = _choose_anchor(
            cls, lambda norm: norm[0] == 0 and norm[-1] == n - 1 and norm[2] == norm[1] + 1)
        ell = norm[1]
        return anchor, _single_duplicate(n, ell + 1)

    raise FamilyParameterError(f"no construction for shape {kind}")


def predicted_cycle_colouring(D: Digraph, target: str) -> VertexColouring:
    """Colouring with the predicted number of colours for ``target`` (rvc or srvc)."""
    if target not in ("rvc", "srvc"):
        raise ValueError(f"target must be rvc or srvc, got {target}")
    cls = classify_cycle_subdigraph(D)
    n = cls.n
    value = predict_cycle_subdigraph(cls, n).get(target).value
    if value == n:
        return VertexColouring.identity(n)
    if n == 3:
        return VertexColouring.constant(n)
    if cls.kind == "D4" and n == 4:
        anchor, normalised = cls.positions[0], {0: 0, 1: 1, 2: 0, 3: 1}
    else:
        anchor, normalised = _normalised_labels(cls, target, value)
    shift = anchor + 1
    labels = [0] * n
    for j, colour in normalised.items():
        vertex = (j + shift) % n
        if cls.reflected:
            vertex = (-vertex) % n
        labels[vertex] = colour
    logger.debug("cycle colouring", extra={"shape": cls.kind, "target": target, "anchor": anchor})
    return VertexColouring.from_labels(labels)


def check_claim2_condition(D: Digraph, c: VertexColouring, strong: bool = False) -> bool:
    """
    For every same-coloured pair {u, v}: the two arcs of the cycle between
    them are non-empty, bioriented and rainbow. With ``strong`` each of them
    also spans at most floor(n/2) edges.
    """
    n = D.n
    if c.n != n:
        raise ValueError(f"colouring has {c.n} vertices, digraph has {n}")

    def interval_ok(start: int, stop: int) -> bool:
        inner = [(start + i) % n for i in range(1, (stop - start) % n)]
        if not inner:
            return False
        if strong and len(inner) - 1 > n // 2:
            return False
        for a, b in zip(inner, inner[1:]):
            if not (D.has_arc(a, b) and D.has_arc(b, a)):
                return False
        colours = [c.colour[w] for w in inner]
        return None not in colours and len(set(colours)) == len(colours)

    for u in range(n):
        for v in range(u + 1, n):
            if c.colour[u] is None or c.colour[u] != c.colour[v]:
                continue
            if not (interval_ok(u, v) and interval_ok(v, u)):
                return False
    return True
