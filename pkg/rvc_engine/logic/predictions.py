"""
Predictions
===========
Closed-form values for every family: exact numbers where a theorem pins
the parameter down, intervals or bound pairs otherwise, and explicit
``silent`` markers where no closed form is known. Each prediction carries
a short citation so reproduction tables document themselves.

All functions here are pure.
"""

import logging
from typing import Optional, Sequence

from rvc_core.errors import PredictionDomainError
from rvc_core.models import CycleSubdigraphClass, Prediction, PredictionSet

logger = logging.getLogger("rvc.predictions")

SRC_BIORIENTED = "bioriented families theorem"
SRC_DIRECTED_CYCLE = "directed cycle proposition"
SRC_CYCLE_SUB = "cycle subdigraph theorem"
SRC_CYCLE_SUB_RC = "cycle subdigraph rc theorem (cited)"
SRC_CIRCULANT = "circulant theorem"
SRC_TOURNAMENT = "tournament theorems"
SRC_DIAM = "diameter characterisation"
SRC_LEMMA5 = "spanning subdigraph counterexample"
SRC_LEMMA6 = "rc/rvc separation lemma"


def _ceil_half(n: int) -> int:
    return -(-n // 2)


def _both(value: int, source: str, **arc) -> PredictionSet:
    return PredictionSet(
        rvc=Prediction.exact("rvc", value, source),
        srvc=Prediction.exact("srvc", value, source),
        **arc,
    )


def _arc_exact(value: int, source: str) -> dict:
    return {"rc": Prediction.exact("rc", value, source), "src": Prediction.exact("src", value, source)}


# ── Bioriented Families ─────────────────────────────────

def _bioriented_cycle(n: int) -> PredictionSet:
    h = _ceil_half(n)
    arc = _arc_exact(h, SRC_BIORIENTED) if n >= 4 else _arc_exact(1, SRC_DIAM)
    if n in (3, 5, 9):
        return _both(h - 2, SRC_BIORIENTED, **arc)
    if n in (4, 6, 7, 8, 10, 12):
        return _both(h - 1, SRC_BIORIENTED, **arc)
    if n in (11, 13, 15):
        return PredictionSet(
            rvc=Prediction.exact("rvc", h - 1, SRC_BIORIENTED),
            srvc=Prediction.exact("srvc", h, SRC_BIORIENTED),
            **arc,
        )
    return _both(h, SRC_BIORIENTED, **arc)


def predict_bioriented(family: str, n: int = 0, sizes: Sequence[int] = ()) -> PredictionSet:
    if family == "path":
        if n < 2:
            raise PredictionDomainError(f"path needs n >= 2, got {n}")
        return _both(n - 2, SRC_BIORIENTED)
    elif family == "cycle":
        if n < 3:
            raise PredictionDomainError(f"cycle needs n >= 3, got {n}")
        return _bioriented_cycle(n)
    elif family == "wheel":
        if n < 3:
            raise PredictionDomainError(f"wheel needs n >= 3, got {n}")
        if n == 3:
            return _both(0, SRC_DIAM, **_arc_exact(1, SRC_DIAM))
        return _both(1, SRC_BIORIENTED)
    elif family == "complete":
        if n < 1:
            raise PredictionDomainError(f"complete digraph needs n >= 1, got {n}")
        arc = _arc_exact(1, SRC_DIAM) if n >= 2 else {}
        return _both(0, SRC_DIAM, **arc)
    elif family == "star":
        if n < 1:
            raise PredictionDomainError(f"star needs n >= 1, got {n}")
        if n == 1:
            return _both(0, SRC_DIAM, **_arc_exact(1, SRC_DIAM))
        return _both(1, SRC_BIORIENTED, **_arc_exact(2, SRC_BIORIENTED))
    elif family in ("complete_multipartite", "multipartite"):
        if len(sizes) < 2 or any(s < 1 for s in sizes):
            raise PredictionDomainError(f"multipartite needs t >= 2 positive classes, got {list(sizes)}")
        if max(sizes) >= 2:
            return _both(1, SRC_BIORIENTED)
        return _both(0, SRC_DIAM, **_arc_exact(1, SRC_DIAM))
    else:
        raise PredictionDomainError(f"Unknown bioriented family: {family}")


def predict_directed_cycle(n: int) -> PredictionSet:
    if n < 3:
        raise PredictionDomainError(f"directed cycle needs n >= 3, got {n}")
    value = n - 2 if n <= 4 else n
    return _both(value, SRC_DIRECTED_CYCLE, **_arc_exact(n, SRC_DIRECTED_CYCLE))


# ── Cycle Subdigraphs ───────────────────────────────────

def _cycle_rvc(cls: CycleSubdigraphClass, n: int) -> int:
    if cls.k <= 2 or cls.kind == "D2" or (cls.kind == "D4" and n == 4):
        return n - 2
    if cls.kind == "D3" or cls.kind == "D4":
        return n - 1
    return n


def _cycle_srvc(cls: CycleSubdigraphClass, n: int) -> int:
    half = n // 2
    p, q = cls.segments
    kind = cls.kind
    if kind == "K_EQ_1":
        return n - 2
    if kind == "D1":
        if n <= 8 or (p <= half + 1 and q <= half + 1):
            return n - 2
        if {p, q} & {0, half + 2}:
            return n - 1
        return n
    if kind == "D2":
        return n - 2 if n <= 8 else n
    if kind == "D3":
        if 5 <= n <= 10 or (n >= 11 and p <= half + 1 and q <= half + 1):
            return n - 1
        return n
    if kind == "D4":
        if n == 4:
            return 2
        if 5 <= n <= 8 or (n >= 9 and p <= half and q <= half):
            return n - 1
        return n
    return n


def predict_cycle_subdigraph(cls: CycleSubdigraphClass, n: int) -> PredictionSet:
    if cls.n != n:
        raise PredictionDomainError(f"class was computed for n={cls.n}, asked about n={n}")
    if cls.k < 1 or n < 3:
        raise PredictionDomainError("cycle subdigraph needs n >= 3 and at least one asymmetric arc")
    rc = n - 1 if cls.k <= 2 else n
    return PredictionSet(
        rvc=Prediction.exact("rvc", _cycle_rvc(cls, n), SRC_CYCLE_SUB),
        srvc=Prediction.exact("srvc", _cycle_srvc(cls, n), SRC_CYCLE_SUB),
        rc=Prediction.exact("rc", rc, SRC_CYCLE_SUB_RC),
    )


# ── Circulants ──────────────────────────────────────────

def predict_circulant(n: int, k: int) -> PredictionSet:
    if n < 3 or not (1 <= k <= n - 2):
        raise PredictionDomainError(f"C_n([k]) needs 1 <= k <= n-2, got n={n}, k={k}")
    ceil_nk = -(-n // k)
    arc = {"rc": Prediction.exact("rc", ceil_nk, SRC_CIRCULANT),
           "src": Prediction.exact("src", ceil_nk, SRC_CIRCULANT)}
    if k == 1:
        return predict_directed_cycle(n)
    if k >= n // 2:
        return _both(1, SRC_CIRCULANT, **arc)

    a, b = divmod(n, k)
    if b >= 2:
        threshold = 2 * k * (k + 1)
        if n >= threshold:
            srvc = Prediction.conditional("srvc", a + 1, f"guaranteed for n >= 2k(k+1) = {threshold}",
                                          SRC_CIRCULANT)
        else:
            srvc = Prediction.silent("srvc", a, a + 1,
                                     f"closed form proven only for n >= 2k(k+1) = {threshold}", SRC_CIRCULANT)
        return PredictionSet(rvc=Prediction.exact("rvc", a, SRC_CIRCULANT), srvc=srvc, **arc)
    if b == 1:
        if n % (a - 1) == 0:
            return _both(a - 1, SRC_CIRCULANT, **arc)
        rvc = Prediction.exact("rvc", a, SRC_CIRCULANT)
        if a < k + 2:
            srvc = Prediction.exact("srvc", a, SRC_CIRCULANT)
        elif a > k + 2:
            srvc = Prediction.exact("srvc", a + 1, SRC_CIRCULANT)
        else:
            srvc = Prediction.silent("srvc", a, a + 1, "no closed form for a = k + 2", SRC_CIRCULANT)
        return PredictionSet(rvc=rvc, srvc=srvc, **arc)
    if a in (3, 4):
        return _both(a - 1, SRC_CIRCULANT, **arc)
    return PredictionSet(
        rvc=Prediction.interval("rvc", a - 1, a, SRC_CIRCULANT),
        srvc=Prediction.exact("srvc", a, SRC_CIRCULANT),
        **arc,
    )


# ── Tournaments ─────────────────────────────────────────

def predict_tournament(kind: str, n: Optional[int] = None, k: Optional[int] = None,
                       d: Optional[int] = None) -> PredictionSet:
    """
    ``kind`` is T4, T5_1, T_nk, or ``generic`` (with ``n`` and optionally
    the diameter ``d``).
    """
    if kind == "T4":
        return _both(2, SRC_TOURNAMENT, rc=Prediction.exact("rc", 3, SRC_TOURNAMENT))
    if kind == "T5_1":
        return _both(1, SRC_TOURNAMENT, rc=Prediction.bounds("rc", 2, 4, SRC_TOURNAMENT))
    if kind == "T_nk":
        if n is None or k is None or n < 5 or not (1 <= k <= n - 2):
            raise PredictionDomainError(f"T_(n,k) needs n >= 5 and 1 <= k <= n-2, got n={n}, k={k}")
        return _both(k, SRC_TOURNAMENT, rc=_tournament_rc(n, k + 1))
    if kind == "generic":
        if n is None or n < 3:
            raise PredictionDomainError(f"generic tournament needs n >= 3, got {n}")
        if d is not None and d < 2:
            raise PredictionDomainError(f"strong tournament on n >= 3 vertices has diameter >= 2, got {d}")
        if d == 2:
            return _both(1, SRC_DIAM, rc=_tournament_rc(n, d))
        if d is None:
            rvc = Prediction.bounds("rvc", 1, max(1, n - 2), SRC_TOURNAMENT)
            srvc = Prediction.bounds("srvc", 1, max(1, n - 2), SRC_TOURNAMENT)
        else:
            rvc = Prediction.bounds("rvc", d - 1, min(n - 2, d + 3), SRC_TOURNAMENT)
            srvc = Prediction.bounds("srvc", d - 1, n - 2, SRC_TOURNAMENT)
        return PredictionSet(rvc=rvc, srvc=srvc, rc=_tournament_rc(n, d))
    raise PredictionDomainError(f"Unknown tournament kind: {kind}")


def _tournament_rc(n: int, d: Optional[int]) -> Prediction:
    if d is None:
        return Prediction.bounds("rc", 2, n - 1, SRC_TOURNAMENT)
    return Prediction.bounds("rc", max(2, d), min(n - 1, d + 2), SRC_TOURNAMENT)


# ── Separating Examples ─────────────────────────────────

def predict_lemma5(which: str) -> PredictionSet:
    if which == "H1":
        return PredictionSet(src=Prediction.exact("src", 6, SRC_LEMMA5))
    if which == "D1":
        return PredictionSet(src=Prediction.bounds("src", 7, None, SRC_LEMMA5))
    if which == "H2":
        return PredictionSet(srvc=Prediction.exact("srvc", 8, SRC_LEMMA5))
    if which == "D2":
        return PredictionSet(srvc=Prediction.bounds("srvc", 9, None, SRC_LEMMA5))
    raise PredictionDomainError(f"Unknown lemma-5 digraph: {which}")


def predict_lemma6(which: str, s: int) -> PredictionSet:
    if which == "fan":
        if s < 4:
            raise PredictionDomainError(f"fan needs s >= 4, got {s}")
        return _both(3, SRC_LEMMA6, rc=Prediction.bounds("rc", s, None, SRC_LEMMA6),
                     src=Prediction.bounds("src", s, None, SRC_LEMMA6))
    if which == "pendant":
        if s < 2:
            raise PredictionDomainError(f"pendant digraph needs s >= 2, got {s}")
        return _both(s, SRC_LEMMA6, **_arc_exact(3, SRC_LEMMA6))
    raise PredictionDomainError(f"Unknown lemma-6 digraph: {which}")


def predict_expanded_triangle(n: int) -> PredictionSet:
    if n < 3:
        raise PredictionDomainError(f"expanded triangle needs n >= 3, got {n}")
    return _both(1, SRC_DIAM, **_arc_exact(3, SRC_DIAM))
