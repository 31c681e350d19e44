# core/context.py

from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, List, Literal, Optional, Union

import numpy as np
import yaml
from pydantic import BaseModel, Field, ValidationError

from core.errors import ConfigError, InvariantViolation
from core.graph import (
    CoverPair,
    UnionMultigraph,
    is_hamiltonian,
    subset_equals_tour,
    union_multigraph,
)
from models import AnnealConfig, Mode, Tour, TourType
from modules.cover import MatchInstance, build_instance

if TYPE_CHECKING:
    from core.strategy import FixedEdgeQueue

ROOT = Path(__file__).parent.parent
DEFAULT_PROFILE = ROOT / "config" / "profiles.yaml"


class AnnealingProfile(BaseModel):
    state_candidate: Mode = Mode.MATCH
    iter_n: int = Field(default=8000, ge=1)
    fix_edges_divisor: int = Field(default=3, ge=1)
    init_t: Optional[float] = Field(default=None, gt=0)
    ex_edges_n: int = Field(default=3, ge=0)
    ans_n: int = Field(default=1, ge=1)
    random_attempts: int = Field(default=50, ge=1)

    def to_config(self, seed: int = 0) -> AnnealConfig:
        return AnnealConfig(
            init_t=self.init_t,
            iter_n=self.iter_n,
            mode=self.state_candidate,
            ex_edges_n=self.ex_edges_n,
            ans_n=self.ans_n,
            seed=seed,
            random_attempts=self.random_attempts,
            fix_edges_divisor=self.fix_edges_divisor,
        )


class ExperimentProfile(BaseModel):
    times: int = Field(default=50, ge=1)
    tour_type: TourType = TourType.RANDOM
    directed: bool = False
    seed: int = 0
    oracle_bound: int = Field(default=12, ge=3)
    oracle_filter_attempts: int = Field(default=200, ge=1)
    sizes: List[int] = [8]


class LoggingProfile(BaseModel):
    verbosity: Literal["low", "high"] = "low"


class SolverProfile(BaseModel):
    name: str
    id: str
    description: str = ""
    annealing: AnnealingProfile = AnnealingProfile()
    experiment: ExperimentProfile = ExperimentProfile()
    logging: LoggingProfile = LoggingProfile()

    def __repr__(self):
        return f"<SolverProfile {self.name} ({self.annealing.state_candidate.value})>"


def load_profile(path: Optional[Union[str, Path]] = None) -> SolverProfile:
    path = Path(path) if path is not None else DEFAULT_PROFILE
    try:
        with open(path, "r", encoding="utf-8") as f:
            config = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"cannot read profile {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"profile {path} is not valid YAML: {e}") from e

    try:
        return SolverProfile(**config.get("solver", {}), **{k: v for k, v in config.items() if k != "solver"})
    except (ValidationError, TypeError) as e:
        raise ConfigError(f"profile {path} does not match the schema: {e}") from e


class Instance:
    """One question for the annealer: a union multigraph, plus the two tours
    it was built from when there are any."""

    def __init__(self, graph: UnionMultigraph, x: Optional[Tour] = None, y: Optional[Tour] = None):
        if (x is None) != (y is None):
            raise InvariantViolation("an instance carries both tours or neither")
        self.graph = graph
        self.x = x
        self.y = y

    @classmethod
    def from_tours(cls, x: Tour, y: Tour) -> "Instance":
        return cls(union_multigraph(x, y), x, y)

    @classmethod
    def from_graph(cls, graph: UnionMultigraph) -> "Instance":
        return cls(graph)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def directed(self) -> bool:
        return self.graph.directed

    @property
    def has_tours(self) -> bool:
        return self.x is not None

    def is_success(self, pair: CoverPair) -> bool:
        """Both sides Hamiltonian and, with tours given, neither side is x or y."""
        g = self.graph
        if not (is_hamiltonian(pair.z, g) and is_hamiltonian(pair.w, g)):
            return False
        if not self.has_tours:
            return True
        return not any(subset_equals_tour(side, g, t) for side in (pair.z, pair.w) for t in (self.x, self.y))

    def __repr__(self):
        kind = "tours" if self.has_tours else "graph"
        return f"<Instance n={self.n} directed={self.directed} from {kind}>"


@dataclass
class AnnealState:
    pair: CoverPair
    energy: int
    queue: "FixedEdgeQueue"
    iteration: int = 0
    temperature: float = 0.0
    accepted: int = 0


class AnnealContext:
    """Everything one annealing run reads or mutates."""

    def __init__(self, instance: Instance, config: AnnealConfig, rng: np.random.Generator):
        self.instance = instance
        self.graph = instance.graph
        self.config = config.resolved(instance.n)
        self.rng = rng
        # built once per run, reused by every neighbor
        self.match_instance: MatchInstance = build_instance(self.graph)
        self.state: Optional[AnnealState] = None

    def __repr__(self):
        it = self.state.iteration if self.state else 0
        return f"<AnnealContext {self.instance!r} iteration={it}>"
