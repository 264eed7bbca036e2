"""
Exact Solver
============
Computes rvc, srvc, rc and src by trying palettes K = lower bound, lower
bound + 1, ... and enumerating colourings as restricted-growth strings
(first-occurrence canonical form), so colour permutations are never
revisited. Validity is monotone in K, and a colouring with fewer than K
colours would already have succeeded at a smaller palette, so each K only
enumerates strings that use exactly K colours.

Elements (vertices, or arcs by index in the sorted arc sequence) are
coloured in a fixed "closing order". Each ordered pair owns a closing set:
every element that can lie on one of its paths (rvc/rc) or geodesics
(srvc/src). Once the last element of a closing set is coloured the pair is
checked; a failure prunes the whole subtree.

Parallel runs split the string stream into prefix blocks handled by worker
processes; the witness is taken from the first block, in canonical order,
that found one, after every block at that K has finished.
"""

import itertools
import logging
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

from rvc_core.digraph import (
    Digraph, diameter, distance_matrix, require_strongly_connected,
)
from rvc_core.errors import DigraphError, RainbowError
from rvc_core.models import (
    VERTEX_PARAMETERS, ArcColouring, SolveOptions, SolveResult, SolveStats, VertexColouring,
)

from .metrics import record_solve, track_time
from .settings import get_settings
from .verify import (
    _arc_geodesic_reach, _arc_path_reach, _vertex_geodesic_reach, _vertex_path_reach,
    first_failing_pair, verify_colouring,
)

logger = logging.getLogger("rvc.solver")

_CLOCK_EVERY = 256
_BLOCKS_PER_WORKER = 4


class _Timeout(Exception):
    pass


class SearchPlan(BaseModel):
    """Everything a worker needs to search one palette size."""

    D: Digraph
    parameter: str
    order: Tuple[int, ...]
    # checks[pos] = ((u, (v, ...)), ...) pairs closed once position ``pos`` is coloured
    checks: Tuple[Tuple[Tuple[int, Tuple[int, ...]], ...], ...]

    @property
    def size(self) -> int:
        return len(self.order)

    @property
    def vertex(self) -> bool:
        return self.parameter in VERTEX_PARAMETERS


# ── Closing Sets ────────────────────────────────────────

def _reach_avoiding(adj, start: int, banned: int) -> Set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for z in adj[w]:
            if z != banned and z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


def _path_interiors(D: Digraph) -> Dict[Tuple[int, int], Set[int]]:
    """Superset of the internal vertices of simple u-v paths, per ordered pair."""
    fwd = {(u, v): _reach_avoiding(D.out_adj, u, v) for u in range(D.n) for v in range(D.n) if u != v}
    bwd = {(v, u): _reach_avoiding(D.in_adj, v, u) for u in range(D.n) for v in range(D.n) if u != v}
    return {
        (u, v): (fwd[(u, v)] & bwd[(v, u)]) - {u, v}
        for u in range(D.n) for v in range(D.n) if u != v
    }


def closing_sets(D: Digraph, parameter: str) -> Dict[Tuple[int, int], Set[int]]:
    """Element ids each non-adjacent ordered pair depends on."""
    dm = distance_matrix(D)
    index = {arc: i for i, arc in enumerate(D.arcs)}
    sets: Dict[Tuple[int, int], Set[int]] = {}
    interiors = _path_interiors(D) if parameter in ("rvc", "rc") else None
    for u in range(D.n):
        for v in range(D.n):
            if u == v or dm(u, v) <= 1:
                continue
            duv = dm(u, v)
            if parameter == "rvc":
                sets[(u, v)] = interiors[(u, v)]
            elif parameter == "srvc":
                sets[(u, v)] = {w for w in range(D.n)
                                if w not in (u, v) and dm(u, w) + dm(w, v) == duv}
            elif parameter == "rc":
                inner = interiors[(u, v)]
                tails, heads = inner | {u}, inner | {v}
                sets[(u, v)] = {i for (w, z), i in index.items()
                                if w in tails and z in heads and z != u and w != v}
            else:
                sets[(u, v)] = {i for (w, z), i in index.items()
                                if dm(u, w) + 1 + dm(z, v) == duv}
    return sets


def closing_order(size: int, sets: Dict[Tuple[int, int], Set[int]]) -> List[int]:
    """
    Greedy order that closes pairs early: pick the element that completes
    the most pending sets, then the one in the most pending sets, then the
    lowest id.
    """
    remaining = {pair: set(s) for pair, s in sets.items() if s}
    order: List[int] = []
    left = set(range(size))
    while left:
        closes = dict.fromkeys(left, 0)
        touches = dict.fromkeys(left, 0)
        for s in remaining.values():
            for x in s:
                touches[x] += 1
            if len(s) == 1:
                closes[next(iter(s))] += 1
        best = min(left, key=lambda x: (-closes[x], -touches[x], x))
        order.append(best)
        left.discard(best)
        for pair in list(remaining):
            remaining[pair].discard(best)
            if not remaining[pair]:
                del remaining[pair]
    return order


def build_plan(D: Digraph, parameter: str) -> SearchPlan:
    size = D.n if parameter in VERTEX_PARAMETERS else D.m
    sets = closing_sets(D, parameter)
    order = closing_order(size, sets)
    position = {x: i for i, x in enumerate(order)}
    buckets: List[Dict[int, List[int]]] = [dict() for _ in range(size)]
    for (u, v), s in sorted(sets.items()):
        # an empty closing set means no path of length >= 2 exists; check at the first step
        step = max((position[x] for x in s), default=0)
        buckets[step].setdefault(u, []).append(v)
    checks = tuple(
        tuple((u, tuple(vs)) for u, vs in sorted(bucket.items()))
        for bucket in buckets
    )
    return SearchPlan(D=D, parameter=parameter, order=tuple(order), checks=checks)


# ── Block Search ────────────────────────────────────────

class _BlockSearch:
    """Depth-first RGS enumeration below a fixed prefix."""

    def __init__(self, plan: SearchPlan, K: int, deadline: Optional[float]):
        self.plan = plan
        self.K = K
        self.deadline = deadline
        self.nodes = 0
        self.leaves = 0
        D = plan.D
        self.D = D
        if plan.vertex:
            self.bits: object = [None] * D.n
        else:
            self.bits = {}
        self.labels: List[Optional[int]] = [None] * plan.size
        self.dist = distance_matrix(D).d if plan.parameter in ("srvc", "src") else None

    def _assign(self, pos: int, colour: Optional[int]) -> None:
        element = self.plan.order[pos]
        self.labels[element] = colour
        bit = None if colour is None else 1 << colour
        if self.plan.vertex:
            self.bits[element] = bit
        elif bit is None:
            self.bits.pop(self.D.arcs[element], None)
        else:
            self.bits[self.D.arcs[element]] = bit

    def _pairs_ok(self, pos: int) -> bool:
        parameter = self.plan.parameter
        for u, targets in self.plan.checks[pos]:
            if parameter == "rvc":
                ok, _ = _vertex_path_reach(self.D, self.bits, u)
            elif parameter == "srvc":
                ok = _vertex_geodesic_reach(self.D, self.bits, u, self.dist[u])
            elif parameter == "rc":
                ok = _arc_path_reach(self.D, self.bits, u)
            else:
                ok = _arc_geodesic_reach(self.D, self.bits, u, self.dist[u])
            if any(v not in ok for v in targets):
                return False
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0 and time.time() > self.deadline:
            raise _Timeout()

    def apply_prefix(self, prefix: Sequence[int]) -> Tuple[bool, int]:
        used = 0
        for pos, colour in enumerate(prefix):
            self._assign(pos, colour)
            used = max(used, colour + 1)
            if not self._pairs_ok(pos):
                return False, used
        return True, used

    def run(self, pos: int, used: int) -> bool:
        size = self.plan.size
        if pos == size:
            self.leaves += 1
            return used == self.K
        for colour in range(min(used + 1, self.K)):
            new_used = max(used, colour + 1)
            if self.K - new_used > size - pos - 1:
                continue
            self._tick()
            self._assign(pos, colour)
            if self._pairs_ok(pos) and self.run(pos + 1, new_used):
                return True
        self._assign(pos, None)
        return False


def _search_block(plan: SearchPlan, K: int, prefix: Tuple[int, ...],
                  deadline: Optional[float]) -> Tuple[Optional[List[int]], int, int, bool]:
    """Returns (labels or None, leaves, nodes, timed_out)."""
    search = _BlockSearch(plan, K, deadline)
    try:
        ok, used = search.apply_prefix(prefix)
        if ok and search.run(len(prefix), used):
            return list(search.labels), search.leaves, search.nodes, False
    except _Timeout:
        return None, search.leaves, search.nodes, True
    return None, search.leaves, search.nodes, False


def _prefixes(plan: SearchPlan, K: int, wanted: int) -> List[Tuple[int, ...]]:
    """Valid RGS prefixes, in canonical order, of the shortest length giving ``wanted`` blocks."""
    layer: List[Tuple[Tuple[int, ...], int]] = [((), 0)]
    for pos in range(plan.size):
        if len(layer) >= wanted:
            break
        nxt = []
        for prefix, used in layer:
            for colour in range(min(used + 1, K)):
                new_used = max(used, colour + 1)
                if K - new_used > plan.size - pos - 1:
                    continue
                candidate = prefix + (colour,)
                probe = _BlockSearch(plan, K, None)
                ok, _ = probe.apply_prefix(candidate)
                if ok:
                    nxt.append((candidate, new_used))
        layer = nxt
    return [prefix for prefix, _ in layer]


# ── Public Operations ───────────────────────────────────

def _witness(D: Digraph, parameter: str, labels: Sequence[int]):
    if parameter in VERTEX_PARAMETERS:
        return VertexColouring.from_labels(labels)
    return ArcColouring.from_mapping(dict(zip(D.arcs, labels)))


def _short_circuit(D: Digraph, parameter: str, diam: int) -> Optional[Tuple[int, object]]:
    if parameter in VERTEX_PARAMETERS:
        if diam == 1:
            return 0, VertexColouring.empty(D.n)
        if diam == 2:
            return 1, VertexColouring.constant(D.n)
    elif diam == 1:
        return 1, ArcColouring(arcs=D.arcs, colour=(0,) * D.m, K=1)
    return None


def _oracle_search(D: Digraph, parameter: str, K: int, stats: SolveStats,
                   deadline: Optional[float]) -> Optional[List[int]]:
    """Plain K^N enumeration with full verification (no pruning, no canonical form)."""
    vertex = parameter in VERTEX_PARAMETERS
    size = D.n if vertex else D.m
    for count, labels in enumerate(itertools.product(range(K), repeat=size)):
        if deadline is not None and count % _CLOCK_EVERY == 0 and time.time() > deadline:
            raise _Timeout()
        stats.colourings_tested += 1
        if vertex:
            bits = [1 << x for x in labels]
        else:
            bits = {arc: 1 << x for arc, x in zip(D.arcs, labels)}
        if first_failing_pair(D, bits, parameter) is None:
            return list(labels)
    return None


def _run_budget(plan: SearchPlan, K: int, opts: SolveOptions, pool, stats: SolveStats,
                deadline: Optional[float]) -> Optional[List[int]]:
    if pool is None:
        labels, leaves, nodes, timed_out = _search_block(plan, K, (), deadline)
        stats.colourings_tested += leaves
        stats.states_expanded += nodes
        if timed_out:
            raise _Timeout()
        return labels
    blocks = _prefixes(plan, K, opts.parallel * _BLOCKS_PER_WORKER)
    futures = [pool.submit(_search_block, plan, K, prefix, deadline) for prefix in blocks]
    found = None
    timed_out_any = False
    for future in futures:
        labels, leaves, nodes, timed_out = future.result()
        stats.colourings_tested += leaves
        stats.states_expanded += nodes
        timed_out_any = timed_out_any or timed_out
        if found is None and labels is not None:
            found = labels
    if found is None and timed_out_any:
        raise _Timeout()
    return found


def solve(D: Digraph, parameter: str, opts: Optional[SolveOptions] = None) -> SolveResult:
    """Exact value of ``parameter`` for a strongly connected digraph with n >= 2."""
    if parameter not in ("rvc", "srvc", "rc", "src"):
        raise ValueError(f"unknown parameter: {parameter}")
    opts = opts or SolveOptions(time_limit=get_settings().time_limit, parallel=get_settings().threads)
    started = time.perf_counter()
    require_strongly_connected(D)
    if D.n < 2:
        raise DigraphError("solver needs at least two vertices")
    vertex = parameter in VERTEX_PARAMETERS
    size = D.n if vertex else D.m
    if opts.max_budget is not None and opts.max_budget > size:
        raise ValueError(f"max_budget {opts.max_budget} exceeds {size}")

    stats = SolveStats()
    diam = diameter(D)
    lower = diam - 1 if vertex else diam

    def finish(result: SolveResult) -> SolveResult:
        result.stats.wall_ms = (time.perf_counter() - started) * 1000.0
        outcome = "exact" if result.exact else "inconclusive"
        record_solve(parameter, outcome, result.stats.colourings_tested)
        logger.info(
            f"{parameter} {outcome}",
            extra={"parameter": parameter, "value": result.value, "lower": result.lower,
                   "upper": result.upper, "wall_ms": round(result.stats.wall_ms, 3)},
        )
        return result

    short = _short_circuit(D, parameter, diam)
    if short is not None:
        value, witness = short
        _require_valid(D, witness, parameter)
        return finish(SolveResult(parameter=parameter, value=value, lower=value, upper=value,
                                  witness=witness, refuted_budget=value - 1, stats=stats))

    deadline = time.time() + opts.time_limit if opts.time_limit else None
    plan = None if opts.oracle_mode else build_plan(D, parameter)
    pool = ProcessPoolExecutor(max_workers=opts.parallel) if opts.parallel > 1 and plan is not None else None
    refuted = lower - 1
    try:
        for K in range(lower, size + 1):
            if opts.max_budget is not None and K > opts.max_budget:
                return finish(_inconclusive(parameter, refuted, size, stats, "budget cap reached"))
            logger.debug("trying palette", extra={"parameter": parameter, "budget": K})
            try:
                if plan is None:
                    labels = _oracle_search(D, parameter, K, stats, deadline)
                else:
                    labels = _run_budget(plan, K, opts, pool, stats, deadline)
            except _Timeout:
                return finish(_inconclusive(parameter, refuted, size, stats, "time limit reached"))
            if labels is not None:
                witness = _witness(D, parameter, labels)
                _require_valid(D, witness, parameter)
                return finish(SolveResult(parameter=parameter, value=K, lower=K, upper=K,
                                          witness=witness, refuted_budget=K - 1, stats=stats))
            refuted = K
            logger.info("palette refuted", extra={"parameter": parameter, "budget": K})
    finally:
        if pool is not None:
            pool.shutdown()
    raise RainbowError(f"no valid {parameter} colouring with {size} colours")


def _inconclusive(parameter: str, refuted: int, size: int, stats: SolveStats, reason: str) -> SolveResult:
    return SolveResult(parameter=parameter, value=None, exact=False, lower=refuted + 1,
                       upper=size, refuted_budget=refuted, stats=stats, reason=reason)


def _require_valid(D: Digraph, witness, parameter: str) -> None:
    if not verify_colouring(D, witness, parameter).valid:
        raise RainbowError(f"internal error: {parameter} witness failed verification")


@track_time("RVC_SOLVE_DURATION", parameter="rvc")
def compute_rvc(D: Digraph, opts: Optional[SolveOptions] = None) -> SolveResult:
    return solve(D, "rvc", opts)


@track_time("RVC_SOLVE_DURATION", parameter="srvc")
def compute_srvc(D: Digraph, opts: Optional[SolveOptions] = None) -> SolveResult:
    return solve(D, "srvc", opts)


@track_time("RVC_SOLVE_DURATION", parameter="rc")
def compute_rc(D: Digraph, opts: Optional[SolveOptions] = None) -> SolveResult:
    return solve(D, "rc", opts)


@track_time("RVC_SOLVE_DURATION", parameter="src")
def compute_src(D: Digraph, opts: Optional[SolveOptions] = None) -> SolveResult:
    return solve(D, "src", opts)


COMPUTE = {"rvc": compute_rvc, "srvc": compute_srvc, "rc": compute_rc, "src": compute_src}
