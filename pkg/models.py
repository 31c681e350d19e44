from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from core.errors import ConfigError, NotAPermutation, TooSmall

# --- Enums ---

class Origin(str, Enum):
    FROM_X = "x"
    FROM_Y = "y"
    UNATTRIBUTED = "-"


class Mode(str, Enum):
    MATCH = "match"
    RANDOM = "random"


class Outcome(str, Enum):
    NOT_ADJACENT = "not_adjacent"
    PROBABLY_ADJACENT = "probably_adjacent"


class TourType(str, Enum):
    RANDOM = "random"
    PYRAMIDAL = "pyramidal"


class InstanceKind(str, Enum):
    RANDOM_TOURS = "random_tours"
    PYRAMIDAL_TOURS = "pyramidal_tours"
    RAW_GRAPH = "raw_graph"


# --- Tours ---

def canonical_order(perm: Sequence[int], directed: bool) -> Tuple[int, ...]:
    """Rotate a vertex permutation to start at 1; undirected cycles are also
    oriented so that the second label is smaller than the last one."""
    order = [int(v) for v in perm]
    n = len(order)
    if n < 3:
        raise TooSmall(f"a tour needs at least 3 vertices, got {n}")
    if sorted(order) != list(range(1, n + 1)):
        raise NotAPermutation(f"not a permutation of 1..{n}: {order}")
    start = order.index(1)
    order = order[start:] + order[:start]
    if not directed and order[1] > order[-1]:
        order = [order[0]] + order[:0:-1]
    return tuple(order)


class Tour(BaseModel):
    """A Hamiltonian tour (directed) or cycle (undirected) over labels 1..n."""
    model_config = ConfigDict(frozen=True)

    order: Tuple[int, ...]
    directed: bool = False

    @model_validator(mode="after")
    def _check_canonical(self) -> "Tour":
        # raises ValueError subclasses, surfaced as pydantic ValidationError
        if canonical_order(self.order, self.directed) != self.order:
            raise ValueError(f"tour order is not canonical: {self.order}")
        return self

    @property
    def n(self) -> int:
        return len(self.order)

    def edges(self) -> List[Tuple[int, int]]:
        """Consecutive (tail, head) label pairs, closing edge included."""
        return [(self.order[i], self.order[(i + 1) % self.n]) for i in range(self.n)]

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.order)


# --- Annealing ---

class AnnealConfig(BaseModel):
    init_t: Optional[float] = Field(default=None, gt=0)
    iter_n: int = Field(default=8000, ge=1)
    fix_edges_n: Optional[int] = Field(default=None, ge=0)
    mode: Mode = Mode.MATCH
    ex_edges_n: int = Field(default=3, ge=0)
    ans_n: int = Field(default=1, ge=1)
    seed: int = 0
    random_attempts: int = Field(default=50, ge=1)
    fix_edges_divisor: int = Field(default=3, ge=1)

    def resolved(self, n: int) -> "AnnealConfig":
        """Fill instance-dependent defaults: initT = n, fixEdgesN = n // divisor."""
        init_t = self.init_t if self.init_t is not None else float(n)
        fix = self.fix_edges_n if self.fix_edges_n is not None else n // self.fix_edges_divisor
        if fix > 2 * n:
            raise ConfigError(f"fixEdgesN={fix} exceeds the 2n={2 * n} edges of the instance")
        return self.model_copy(update={"init_t": init_t, "fix_edges_n": fix})


class Verdict(BaseModel):
    outcome: Outcome
    z: Optional[Tour] = None
    w: Optional[Tour] = None
    z_edges: List[int] = []
    w_edges: List[int] = []
    iterations_used: int
    elapsed_ms: float
    final_energy: int
    accepted: int = 0
    runs: int = 1

    @property
    def not_adjacent(self) -> bool:
        return self.outcome == Outcome.NOT_ADJACENT


# --- Instances ---

class InstanceSpec(BaseModel):
    n: int = Field(ge=3)
    directed: bool = False
    kind: InstanceKind = InstanceKind.RANDOM_TOURS
    seed: int = 0


# --- Experiment output ---

CSV_COLUMNS = ["N", "trials", "found", "not_found", "TNF_avg_ms", "TF_avg_ms", "T_avg_ms", "Acc"]


def _fmt(value: Optional[float]) -> str:
    return "-" if value is None else f"{value:.2f}"


def _parse(value: str) -> Optional[float]:
    value = value.strip()
    return None if value == "-" else float(value)


class StatsRow(BaseModel):
    n: int
    trials: int = Field(ge=0)
    found: int = Field(ge=0)
    not_found: int = Field(ge=0)
    tnf_avg_ms: Optional[float] = None
    tf_avg_ms: Optional[float] = None
    t_avg_ms: Optional[float] = None
    acc: float = 0.0

    @model_validator(mode="after")
    def _check_counts(self) -> "StatsRow":
        if self.found + self.not_found != self.trials:
            raise ValueError("found + not_found must equal trials")
        return self

    @classmethod
    def from_times(cls, n: int, found_ms: Sequence[float], not_found_ms: Sequence[float]) -> "StatsRow":
        def mean(xs: Sequence[float]) -> Optional[float]:
            return sum(xs) / len(xs) if xs else None

        trials = len(found_ms) + len(not_found_ms)
        return cls(
            n=n,
            trials=trials,
            found=len(found_ms),
            not_found=len(not_found_ms),
            tnf_avg_ms=mean(not_found_ms),
            tf_avg_ms=mean(found_ms),
            t_avg_ms=mean(list(found_ms) + list(not_found_ms)),
            acc=100.0 * len(found_ms) / trials if trials else 0.0,
        )

    def to_csv_row(self) -> Dict[str, str]:
        return {
            "N": str(self.n),
            "trials": str(self.trials),
            "found": str(self.found),
            "not_found": str(self.not_found),
            "TNF_avg_ms": _fmt(self.tnf_avg_ms),
            "TF_avg_ms": _fmt(self.tf_avg_ms),
            "T_avg_ms": _fmt(self.t_avg_ms),
            "Acc": _fmt(self.acc),
        }

    @classmethod
    def from_csv_row(cls, row: Dict[str, str]) -> "StatsRow":
        return cls(
            n=int(row["N"]),
            trials=int(row["trials"]),
            found=int(row["found"]),
            not_found=int(row["not_found"]),
            tnf_avg_ms=_parse(row["TNF_avg_ms"]),
            tf_avg_ms=_parse(row["TF_avg_ms"]),
            t_avg_ms=_parse(row["T_avg_ms"]),
            acc=_parse(row["Acc"]) or 0.0,
        )


class TrialRecord(BaseModel):
    """One experiment trial, as stored in the per-trial log."""
    n: int
    trial: int
    seed: int
    directed: bool
    x: Optional[str] = None
    y: Optional[str] = None
    outcome: Outcome
    iterations: int
    elapsed_ms: float
    z: Optional[str] = None
    w: Optional[str] = None
    tags: List[str] = []
