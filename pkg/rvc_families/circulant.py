"""
Circulant Digraphs
==================
C_n(S) has arcs ``v_i -> v_{i+s mod n}`` for every jump ``s`` in ``S``;
C_n([k]) is the circulant with jumps ``1..k``. Throughout, ``a = n // k``
and ``b = n % k``.
"""

import logging
import math
from typing import Iterable, List

from rvc_core.digraph import Digraph
from rvc_core.errors import FamilyParameterError
from rvc_core.models import VertexColouring

logger = logging.getLogger("rvc.families")

CIRCULANT_VARIANTS = ("block", "claim2_residue", "case_b_i", "case_b_ii_small_a", "case_c_small_a")


def gen_circulant(n: int, jumps: Iterable[int]) -> Digraph:
    S = sorted(set(jumps))
    if n < 3:
        raise FamilyParameterError(f"circulant needs n >= 3, got {n}")
    if not S or any(not (1 <= s <= n - 1) for s in S):
        raise FamilyParameterError(f"jumps must be a non-empty subset of 1..{n - 1}, got {S}")
    return Digraph(n=n, arcs=tuple((i, (i + s) % n) for i in range(n) for s in S))


def gen_circulant_k(n: int, k: int) -> Digraph:
    if not (1 <= k <= n - 2):
        raise FamilyParameterError(f"C_n([k]) needs 1 <= k <= n-2, got n={n}, k={k}")
    return gen_circulant(n, range(1, k + 1))


def _need(condition: bool, variant: str, n: int, k: int, why: str) -> None:
    if not condition:
        raise FamilyParameterError(f"{variant} colouring needs {why} (n={n}, k={k})")


def circulant_colouring(n: int, k: int, variant: str) -> VertexColouring:
    if not (1 <= k <= n - 2):
        raise FamilyParameterError(f"C_n([k]) needs 1 <= k <= n-2, got n={n}, k={k}")
    a, b = divmod(n, k)
    labels: List[int] = [0] * n

    if variant == "block":
        labels = [i // k for i in range(n)]

    elif variant == "claim2_residue":
        _need(b >= 1 and a >= 2, variant, n, k, "k not dividing n and a >= 2")
        g = math.gcd(n, k)
        for r in range(g):
            for ell in range(n // g):
                labels[(r + ell * k) % n] = ell % a

    elif variant == "case_b_i":
        _need(b == 1 and a >= 2 and n % (a - 1) == 0, variant, n, k, "n = ak + 1 with (a - 1) | n")
        for ell in range(n):
            labels[(ell * k) % n] = ell % (a - 1)

    elif variant == "case_b_ii_small_a":
        _need(b == 1 and a < k + 2, variant, n, k, "n = ak + 1 with a < k + 2")
        zeros = {j * (a - 1) for j in range(k + 1)}
        nonzero = 0
        for ell in range(n):
            vertex = (ell * k) % n
            if ell in zeros:
                labels[vertex] = 0
            else:
                labels[vertex] = 1 + nonzero % (a - 1)
                nonzero += 1

    elif variant == "case_c_small_a":
        _need(b == 0 and a in (3, 4), variant, n, k, "n = ak with a in {3, 4}")
        base = [0, 0, 1] if a == 3 else [0, 1, 0, 2]
        for ell in range(a):
            for r in range(k):
                labels[ell * k + r] = (base[ell] + r) % (a - 1)

    else:
        raise FamilyParameterError(f"Unknown circulant variant: {variant}")

    logger.debug("circulant colouring", extra={"n": n, "k": k, "variant": variant})
    return VertexColouring.from_labels(labels)


# parameter each constructive colouring is valid for
CIRCULANT_TARGETS = {
    "block": "srvc",
    "claim2_residue": "rvc",
    "case_b_i": "srvc",
    "case_b_ii_small_a": "srvc",
    "case_c_small_a": "srvc",
}
