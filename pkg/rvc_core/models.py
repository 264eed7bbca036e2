from typing import Dict, Hashable, List, Literal, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

Parameter = Literal["rvc", "srvc", "rc", "src"]
VERTEX_PARAMETERS = ("rvc", "srvc")
ARC_PARAMETERS = ("rc", "src")


def _relabel(labels: Sequence[Hashable]) -> Tuple[List[int], int]:
    """Map arbitrary sortable labels onto ids 0..K-1 by sorted order."""
    distinct = sorted(set(labels))
    index = {label: i for i, label in enumerate(distinct)}
    return [index[label] for label in labels], len(distinct)


# --- Colourings ---

class VertexColouring(BaseModel):
    """
    Colour ids per vertex. ``K == 0`` is the empty palette: every entry is
    ``None`` and no vertex may serve as an internal path vertex.
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    colour: Tuple[Optional[int], ...]
    K: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_palette(self):
        if len(self.colour) != self.n:
            raise ValueError(f"expected {self.n} colours, got {len(self.colour)}")
        if self.K > self.n:
            raise ValueError(f"palette of {self.K} colours exceeds n={self.n}")
        if self.K == 0:
            if any(c is not None for c in self.colour):
                raise ValueError("empty palette must leave every vertex uncoloured")
        elif any(c is None or not (0 <= c < self.K) for c in self.colour):
            raise ValueError(f"colour ids must lie in 0..{self.K - 1}")
        return self

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "VertexColouring":
        ids, k = _relabel(labels)
        return cls(n=len(ids), colour=tuple(ids), K=k)

    @classmethod
    def empty(cls, n: int) -> "VertexColouring":
        return cls(n=n, colour=(None,) * n, K=0)

    @classmethod
    def constant(cls, n: int) -> "VertexColouring":
        return cls(n=n, colour=(0,) * n, K=1)

    @classmethod
    def identity(cls, n: int) -> "VertexColouring":
        return cls(n=n, colour=tuple(range(n)), K=n)

    @property
    def used(self) -> int:
        return len({c for c in self.colour if c is not None})


class ArcColouring(BaseModel):
    """Colour ids aligned with the host's sorted arc sequence."""

    model_config = ConfigDict(frozen=True)

    arcs: Tuple[Tuple[int, int], ...]
    colour: Tuple[int, ...]
    K: int = Field(ge=0)

    _index: Dict[Tuple[int, int], int] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _check_palette(self):
        if len(self.colour) != len(self.arcs):
            raise ValueError(f"expected {len(self.arcs)} arc colours, got {len(self.colour)}")
        if list(self.arcs) != sorted(set(self.arcs)):
            raise ValueError("arcs must be sorted and distinct")
        if self.arcs and not (1 <= self.K <= len(self.arcs)):
            raise ValueError(f"palette size {self.K} outside 1..{len(self.arcs)}")
        if any(not (0 <= c < self.K) for c in self.colour):
            raise ValueError(f"colour ids must lie in 0..{self.K - 1}")
        return self

    def model_post_init(self, __context) -> None:
        self._index = {arc: c for arc, c in zip(self.arcs, self.colour)}

    @classmethod
    def from_mapping(cls, mapping: Dict[Tuple[int, int], Hashable]) -> "ArcColouring":
        arcs = tuple(sorted(mapping))
        ids, k = _relabel([mapping[a] for a in arcs])
        return cls(arcs=arcs, colour=tuple(ids), K=k)

    def colour_of(self, u: int, v: int) -> int:
        return self._index[(u, v)]

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return dict(self._index)

    @property
    def used(self) -> int:
        return len(set(self.colour))


Colouring = Union[VertexColouring, ArcColouring]


class Verdict(BaseModel):
    mode: Parameter
    valid: bool
    failing_pair: Optional[Tuple[int, int]] = None


# --- Solver ---

class SolveOptions(BaseModel):
    max_budget: Optional[int] = Field(default=None, ge=0)
    time_limit: Optional[float] = Field(default=None, gt=0)
    parallel: int = Field(default=1, ge=1)
    oracle_mode: bool = False


class SolveStats(BaseModel):
    colourings_tested: int = 0
    states_expanded: int = 0
    wall_ms: float = 0.0


class SolveResult(BaseModel):
    parameter: Parameter
    value: Optional[int] = None  # None when inconclusive
    exact: bool = True
    lower: int = 0
    upper: Optional[int] = None
    witness: Optional[Colouring] = None
    refuted_budget: int = -1  # largest palette proven infeasible
    stats: SolveStats = Field(default_factory=SolveStats)
    reason: Optional[str] = None


# --- Families ---

CycleKind = Literal["K_EQ_1", "D1", "D2", "D3", "D4", "OTHER"]


class CycleSubdigraphClass(BaseModel):
    kind: CycleKind
    n: int
    k: int
    seg_p: Optional[int] = None
    seg_p_prime: Optional[int] = None
    positions: Tuple[int, ...] = ()  # forward-asymmetric positions after reflection
    reflected: bool = False

    @model_validator(mode="after")
    def _check_segments(self):
        if self.seg_p is not None and self.seg_p_prime is not None:
            if self.seg_p + self.seg_p_prime + self.k != self.n:
                raise ValueError("segment lengths and asymmetric arcs must cover the cycle")
        return self

    @property
    def segments(self) -> Tuple[int, int]:
        return (self.seg_p or 0, self.seg_p_prime or 0)


FamilyTag = Literal[
    "path", "cycle", "wheel", "complete", "star", "multipartite",
    "directed_cycle", "cycle_subdigraph", "circulant", "tournament", "t_nk",
    "lemma5", "lemma6", "expanded_triangle",
]


class FamilySpec(BaseModel):
    family: FamilyTag
    n: Optional[int] = None
    k: Optional[int] = None
    s: Optional[int] = None
    sizes: Tuple[int, ...] = ()
    asym: Tuple[int, ...] = ()
    jumps: Tuple[int, ...] = ()
    which: Optional[str] = None
    kind: Optional[str] = None
    seed: int = 0
    expansion: Literal["transitive", "random"] = "transitive"

    def label(self) -> str:
        parts = []
        for name in ("n", "k", "s", "which", "kind"):
            value = getattr(self, name)
            if value is not None:
                parts.append(f"{name}={value}")
        for name in ("sizes", "asym", "jumps"):
            value = getattr(self, name)
            if value:
                parts.append(f"{name}={'-'.join(map(str, value))}")
        return ";".join(parts)


# --- Predictions ---

PredictionForm = Literal["exact", "interval", "bounds", "conditional", "silent"]


class Prediction(BaseModel):
    """A theorem-derived value. ``hi is None`` means unbounded above."""

    parameter: Parameter
    form: PredictionForm
    lo: int
    hi: Optional[int] = None
    value: Optional[int] = None
    caveat: Optional[str] = None
    source: str = ""

    @model_validator(mode="after")
    def _check_form(self):
        if self.hi is not None and self.lo > self.hi:
            raise ValueError(f"lo={self.lo} exceeds hi={self.hi}")
        if self.form in ("exact", "conditional"):
            if self.value is None or self.lo != self.value or self.hi != self.value:
                raise ValueError(f"{self.form} prediction must collapse lo = hi = value")
        if self.form in ("conditional", "silent") and not self.caveat:
            raise ValueError(f"{self.form} prediction needs a caveat")
        return self

    @classmethod
    def exact(cls, parameter: str, value: int, source: str) -> "Prediction":
        return cls(parameter=parameter, form="exact", lo=value, hi=value, value=value, source=source)

    @classmethod
    def interval(cls, parameter: str, lo: int, hi: int, source: str) -> "Prediction":
        return cls(parameter=parameter, form="interval", lo=lo, hi=hi, source=source)

    @classmethod
    def bounds(cls, parameter: str, lo: int, hi: Optional[int], source: str) -> "Prediction":
        if hi is not None and lo == hi:
            return cls.exact(parameter, lo, source)
        return cls(parameter=parameter, form="bounds", lo=lo, hi=hi, source=source)

    @classmethod
    def conditional(cls, parameter: str, value: int, caveat: str, source: str) -> "Prediction":
        return cls(parameter=parameter, form="conditional", lo=value, hi=value, value=value,
                   caveat=caveat, source=source)

    @classmethod
    def silent(cls, parameter: str, lo: int, hi: Optional[int], caveat: str, source: str) -> "Prediction":
        return cls(parameter=parameter, form="silent", lo=lo, hi=hi, caveat=caveat, source=source)

    @property
    def is_exact(self) -> bool:
        return self.form == "exact"

    def contains(self, value: int) -> bool:
        return self.lo <= value and (self.hi is None or value <= self.hi)

    def describe(self) -> str:
        hi = "inf" if self.hi is None else str(self.hi)
        if self.form == "exact":
            return f"exact({self.value})"
        if self.form == "conditional":
            return f"conditional({self.value}; {self.caveat})"
        if self.form == "silent":
            return f"silent({self.lo},{hi})"
        return f"{self.form}({self.lo},{hi})"


class PredictionSet(BaseModel):
    rvc: Optional[Prediction] = None
    srvc: Optional[Prediction] = None
    rc: Optional[Prediction] = None
    src: Optional[Prediction] = None

    def get(self, parameter: str) -> Optional[Prediction]:
        return getattr(self, parameter)

    def items(self) -> List[Tuple[str, Prediction]]:
        return [(p, getattr(self, p)) for p in ("rvc", "srvc", "rc", "src") if getattr(self, p) is not None]


# --- Reproduction Tables ---

Evidence = Literal["solver", "construction", "verified", "bounds", "skipped", "not-reproduced"]

CSV_COLUMNS = ("family", "params", "parameter", "predicted", "solver", "evidence", "agree", "ms", "citation")


class TableRow(BaseModel):
    family: str
    params: str
    parameter: str
    predicted: str
    solver: str = "skipped"
    evidence: Evidence = "skipped"
    agree: bool = True
    ms: float = 0.0
    citation: str = ""

    def as_csv(self) -> Dict[str, object]:
        row = self.model_dump()
        row["agree"] = "true" if self.agree else "false"
        row["ms"] = round(self.ms, 3)
        return row
