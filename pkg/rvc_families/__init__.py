# Digraph families and their proof colourings.
# build_family / build_family_colouring / predict_family dispatch on FamilySpec.family.
import logging
from typing import Optional, Union

from rvc_core.digraph import Digraph, diameter
from rvc_core.errors import FamilyParameterError
from rvc_core.models import ArcColouring, FamilySpec, PredictionSet, VertexColouring
from rvc_engine.logic import predictions

from .bioriented import bioriented_cycle_colouring, gen_bioriented
from .circulant import circulant_colouring, gen_circulant, gen_circulant_k
from .cycles import (
    check_claim2_condition, classify_cycle_subdigraph, gen_cycle_subdigraph,
    gen_directed_cycle, predicted_cycle_colouring,
)
from .lemmas import gen_expanded_triangle, gen_lemma5, gen_lemma6, gen_lemma6_colouring
from .tournaments import (
    gen_t_nk, gen_tournament, is_tournament, t_nk_colouring,
    tournament_layered_colouring, tournament_two_pair_colouring,
)

logger = logging.getLogger("rvc.families")

__all__ = [
    "build_family", "build_family_colouring", "predict_family",
    "gen_bioriented", "bioriented_cycle_colouring",
    "gen_directed_cycle", "gen_cycle_subdigraph", "classify_cycle_subdigraph",
    "predicted_cycle_colouring", "check_claim2_condition",
    "gen_circulant", "gen_circulant_k", "circulant_colouring",
    "gen_tournament", "gen_t_nk", "is_tournament", "t_nk_colouring",
    "tournament_two_pair_colouring", "tournament_layered_colouring",
    "gen_lemma5", "gen_lemma6", "gen_lemma6_colouring", "gen_expanded_triangle",
]

_BIORIENTED_TAGS = ("path", "cycle", "wheel", "complete", "star")


def _require(value, name: str, family: str):
    if value is None:
        raise FamilyParameterError(f"{family} needs parameter {name}")
    return value


def _circulant_k(spec: FamilySpec) -> int:
    """k for a C_n([k]) spec; jumps, when given, must be exactly 1..k."""
    if spec.jumps:
        k = max(spec.jumps)
        if sorted(spec.jumps) != list(range(1, k + 1)):
            raise FamilyParameterError(f"jumps {list(spec.jumps)} are not of the form 1..k")
        return k
    return _require(spec.k, "k", "circulant")


def build_family(spec: FamilySpec) -> Digraph:
    family = spec.family
    if family in _BIORIENTED_TAGS:
        return gen_bioriented(family, _require(spec.n, "n", family))
    elif family == "multipartite":
        return gen_bioriented("complete_multipartite", sizes=spec.sizes)
    elif family == "directed_cycle":
        return gen_directed_cycle(_require(spec.n, "n", family))
    elif family == "cycle_subdigraph":
        return gen_cycle_subdigraph(_require(spec.n, "n", family), spec.asym)
    elif family == "circulant":
        n = _require(spec.n, "n", family)
        if spec.jumps:
            return gen_circulant(n, spec.jumps)
        return gen_circulant_k(n, _require(spec.k, "k", family))
    elif family == "tournament":
        return gen_tournament(_require(spec.kind, "kind", family), spec.n, spec.k, spec.seed, spec.expansion)
    elif family == "t_nk":
        return gen_t_nk(_require(spec.n, "n", family), _require(spec.k, "k", family), spec.seed, spec.expansion)
    elif family == "lemma5":
        return gen_lemma5(_require(spec.which, "which", family))[0]
    elif family == "lemma6":
        return gen_lemma6(_require(spec.which, "which", family), _require(spec.s, "s", family))
    elif family == "expanded_triangle":
        return gen_expanded_triangle(_require(spec.n, "n", family))
    else:
        raise FamilyParameterError(f"Unknown family: {family}")


def build_family_colouring(spec: FamilySpec, variant: Optional[str] = None) -> Union[VertexColouring, ArcColouring]:
    """
    The proof colouring for ``spec``. ``variant`` picks among several:
    rvc/srvc for cycle subdigraphs, the circulant case names, and
    two_pair/layered for tournaments.
    """
    family = spec.family
    if family == "cycle":
        return bioriented_cycle_colouring(_require(spec.n, "n", family))
    elif family in ("cycle_subdigraph", "directed_cycle"):
        return predicted_cycle_colouring(build_family(spec), variant or "rvc")
    elif family == "circulant":
        return circulant_colouring(_require(spec.n, "n", family), _circulant_k(spec), variant or "block")
    elif family == "t_nk":
        return t_nk_colouring(_require(spec.n, "n", family), _require(spec.k, "k", family))
    elif family == "tournament":
        if spec.kind == "T_nk" and variant is None:
            return t_nk_colouring(_require(spec.n, "n", family), _require(spec.k, "k", family))
        T = build_family(spec)
        if variant in (None, "two_pair"):
            return tournament_two_pair_colouring(T)
        elif variant == "layered":
            return tournament_layered_colouring(T)
        raise FamilyParameterError(f"Unknown tournament colouring: {variant}")
    elif family == "lemma5":
        colouring = gen_lemma5(_require(spec.which, "which", family))[1]
        if colouring is None:
            raise FamilyParameterError(f"no drawn colouring for {spec.which}")
        return colouring
    elif family == "lemma6":
        return gen_lemma6_colouring(_require(spec.which, "which", family), _require(spec.s, "s", family))
    else:
        raise FamilyParameterError(f"no proof colouring for family {family}")


def predict_family(spec: FamilySpec) -> PredictionSet:
    family = spec.family
    if family in _BIORIENTED_TAGS:
        return predictions.predict_bioriented(family, n=_require(spec.n, "n", family))
    elif family == "multipartite":
        return predictions.predict_bioriented("complete_multipartite", sizes=spec.sizes)
    elif family == "directed_cycle":
        return predictions.predict_directed_cycle(_require(spec.n, "n", family))
    elif family == "cycle_subdigraph":
        D = build_family(spec)
        return predictions.predict_cycle_subdigraph(classify_cycle_subdigraph(D), D.n)
    elif family == "circulant":
        return predictions.predict_circulant(_require(spec.n, "n", family), _circulant_k(spec))
    elif family == "t_nk":
        return predictions.predict_tournament("T_nk", n=spec.n, k=spec.k)
    elif family == "tournament":
        kind = _require(spec.kind, "kind", family)
        if kind in ("T4", "T5_1"):
            return predictions.predict_tournament(kind)
        if kind == "T_nk":
            return predictions.predict_tournament("T_nk", n=spec.n, k=spec.k)
        T = build_family(spec)
        return predictions.predict_tournament("generic", n=T.n, d=diameter(T))
    elif family == "lemma5":
        return predictions.predict_lemma5(_require(spec.which, "which", family))
    elif family == "lemma6":
        return predictions.predict_lemma6(_require(spec.which, "which", family), _require(spec.s, "s", family))
    elif family == "expanded_triangle":
        return predictions.predict_expanded_triangle(_require(spec.n, "n", family))
    else:
        raise FamilyParameterError(f"Unknown family: {family}")
