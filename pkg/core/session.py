# core/session.py

from typing import Optional

from core.context import Instance
from core.errors import ConfigError
from core.loop import anneal
from models import AnnealConfig, Mode, Outcome, Tour, Verdict
from modules.tools import debug


def multistart(instance: Instance, cfg: AnnealConfig) -> Verdict:
    """
    Up to ansN independent runs on streams 0..ansN-1; the first success wins.
    Elapsed time, iterations and accepted moves add up over the runs used.
    """
    if cfg.mode != Mode.RANDOM:
        raise ConfigError("multistart is only defined for the random state candidate")
    elapsed = 0.0
    iterations = 0
    accepted = 0
    last: Optional[Verdict] = None
    for run in range(cfg.ans_n):
        last = anneal(instance, cfg, stream=run)
        elapsed += last.elapsed_ms
        iterations += last.iterations_used
        accepted += last.accepted
        if last.outcome == Outcome.NOT_ADJACENT:
            debug("anneal", f"✅ multistart run {run + 1}/{cfg.ans_n} succeeded")
            break
    return last.model_copy(
        update={"elapsed_ms": elapsed, "iterations_used": iterations, "accepted": accepted, "runs": run + 1}
    )


def solve(instance: Instance, cfg: AnnealConfig) -> Verdict:
    """Dispatch on the state candidate mode."""
    if cfg.mode == Mode.RANDOM:
        return multistart(instance, cfg)
    return anneal(instance, cfg)


def check_tours(x: Tour, y: Tour, cfg: Optional[AnnealConfig] = None) -> Verdict:
    """Non-adjacency test for the polytope vertices of tours x and y."""
    return solve(Instance.from_tours(x, y), cfg or AnnealConfig())
