"""
Brute-Force Oracle
==================
Independent cross-check for the exact solver. Lists every simple path of
every ordered pair up front, then tries all K^n (or K^|A|) colourings and
tests each pair against its path list. Shares no search code with the
solver or the verifier, so agreement between them means something.

Only meant for tiny inputs; the size guard comes from the engine settings.
"""

import itertools
import logging
from typing import Dict, List, Tuple

from rvc_core.digraph import Digraph
from rvc_core.errors import OracleGuardError
from rvc_core.models import VERTEX_PARAMETERS

from .settings import get_settings

logger = logging.getLogger("rvc.oracle")

Path = Tuple[int, ...]


def all_simple_paths(D: Digraph, u: int, v: int) -> List[Path]:
    """Every simple u-v path as a vertex tuple, by plain depth-first search."""
    paths: List[Path] = []
    stack = [(u, (u,))]
    while stack:
        w, path = stack.pop()
        for z in D.out_adj[w]:
            if z == v:
                paths.append(path + (v,))
            elif z not in path:
                stack.append((z, path + (z,)))
    return paths


def _candidate_paths(D: Digraph, strong: bool) -> Dict[Tuple[int, int], List[Path]]:
    table = {}
    for u in range(D.n):
        for v in range(D.n):
            if u == v:
                continue
            paths = all_simple_paths(D, u, v)
            if strong and paths:
                shortest = min(len(p) for p in paths)
                paths = [p for p in paths if len(p) == shortest]
            table[(u, v)] = paths
    return table


def _vertex_rainbow(path: Path, colour) -> bool:
    inner = [colour[w] for w in path[1:-1]]
    if any(c is None for c in inner):
        return False
    return len(set(inner)) == len(inner)


def _arc_rainbow(path: Path, colour: Dict[Tuple[int, int], int]) -> bool:
    used = [colour[(a, b)] for a, b in zip(path, path[1:])]
    return len(set(used)) == len(used)


def _check_guard(D: Digraph, parameter: str) -> None:
    settings = get_settings()
    if parameter in VERTEX_PARAMETERS:
        if D.n > settings.oracle_max_vertices:
            raise OracleGuardError(f"oracle limited to n <= {settings.oracle_max_vertices}, got n={D.n}")
    elif D.m > settings.oracle_max_arcs:
        raise OracleGuardError(f"oracle limited to |A| <= {settings.oracle_max_arcs}, got |A|={D.m}")


def oracle_value(D: Digraph, parameter: str, K: int) -> bool:
    """True iff some colouring with colours from ``0..K-1`` is valid for ``parameter``."""
    if parameter not in ("rvc", "srvc", "rc", "src"):
        raise ValueError(f"unknown parameter: {parameter}")
    if K < 0:
        raise ValueError("palette size must be non-negative")
    _check_guard(D, parameter)
    table = _candidate_paths(D, strong=parameter in ("srvc", "src"))
    if any(not paths for paths in table.values()):
        return False

    if parameter in VERTEX_PARAMETERS:
        palettes = [(None,) * D.n] if K == 0 else itertools.product(range(K), repeat=D.n)
        for colour in palettes:
            if all(any(_vertex_rainbow(p, colour) for p in paths) for paths in table.values()):
                return True
        return False

    if K == 0:
        return D.m == 0
    for labels in itertools.product(range(K), repeat=D.m):
        colour = dict(zip(D.arcs, labels))
        if all(any(_arc_rainbow(p, colour) for p in paths) for paths in table.values()):
            return True
    return False


def oracle_minimum(D: Digraph, parameter: str) -> int:
    """Smallest K for which :func:`oracle_value` holds."""
    limit = D.n if parameter in VERTEX_PARAMETERS else D.m
    for K in range(limit + 1):
        if oracle_value(D, parameter, K):
            logger.debug("oracle minimum", extra={"parameter": parameter, "value": K})
            return K
    raise OracleGuardError(f"no valid {parameter} colouring with up to {limit} colours")
