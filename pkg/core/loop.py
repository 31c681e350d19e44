# core/loop.py

import math
import time
from typing import Optional

import numpy as np

from core.context import AnnealContext, AnnealState, Instance
from core.graph import CoverPair, UnionMultigraph, components, tour_from_subset
from core.strategy import FixedEdgeQueue, select_neighbor_strategy
from models import AnnealConfig, Outcome, Verdict
from modules.cover import cover_with_fixed
from modules.oracle import require_witness
from modules.tools import debug, draw_seed, is_verbose, log, make_rng


def energy(pair: CoverPair, g: UnionMultigraph) -> int:
    """Components of z plus components of w; 2 means both are tours."""
    return components(pair.z, g)[0] + components(pair.w, g)[0]


def cooling(init_t: float, k: int) -> float:
    return init_t / k


def accept(curr_e: int, cand_e: int, t: float, rng: np.random.Generator) -> bool:
    """Metropolis rule: improvements always, otherwise exp(-dE / T)."""
    if cand_e < curr_e:
        return True
    return bool(rng.random() < math.exp(-(cand_e - curr_e) / t))


class AnnealLoop:
    def __init__(self, context: AnnealContext):
        self.context = context
        self.neighbor = select_neighbor_strategy(context.config.mode)

    def _initial_state(self) -> AnnealState:
        ctx = self.context
        g = ctx.graph
        pair, _ = cover_with_fixed(g, ctx.match_instance, [], seed=draw_seed(ctx.rng))
        queue = FixedEdgeQueue(g, ctx.config.fix_edges_n)
        return AnnealState(pair=pair, energy=energy(pair, g), queue=queue, temperature=ctx.config.init_t)

    def run(self) -> Verdict:
        ctx = self.context
        cfg = ctx.config
        g = ctx.graph
        started = time.perf_counter()

        state = ctx.state = self._initial_state()
        debug("anneal", f"🔁 start n={g.n} mode={cfg.mode.value} E={state.energy} T={state.temperature:.3f}")

        for k in range(1, cfg.iter_n + 1):
            state.iteration = k
            state.pair.check(g)
            if ctx.instance.is_success(state.pair):
                return self._verdict(Outcome.NOT_ADJACENT, started)

            candidate = self.neighbor(ctx, ctx.rng)
            cand_e = energy(candidate, g)
            if accept(state.energy, cand_e, state.temperature, ctx.rng):
                state.pair, state.energy = candidate, cand_e
                state.accepted += 1
            if is_verbose() and k % 500 == 0:
                log("anneal", f"k={k} E={state.energy} T={state.temperature:.3f} queue={len(state.queue)}")
            state.temperature = cooling(cfg.init_t, k)

        # the candidate accepted on the last iteration has not been checked yet
        state.pair.check(g)
        if ctx.instance.is_success(state.pair):
            return self._verdict(Outcome.NOT_ADJACENT, started)
        return self._verdict(Outcome.PROBABLY_ADJACENT, started)

    def _verdict(self, outcome: Outcome, started: float) -> Verdict:
        ctx = self.context
        state = ctx.state
        g = ctx.graph
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        if outcome == Outcome.PROBABLY_ADJACENT:
            debug("anneal", f"⚠️ no complementary tours after {state.iteration} iterations, E={state.energy}")
            return Verdict(
                outcome=outcome,
                iterations_used=state.iteration,
                elapsed_ms=elapsed_ms,
                final_energy=state.energy,
                accepted=state.accepted,
            )

        z, w = state.pair.z, state.pair.w
        require_witness(ctx.instance.x, ctx.instance.y, z, w, g)
        debug("anneal", f"✅ complementary tours at k={state.iteration}")
        return Verdict(
            outcome=outcome,
            z=tour_from_subset(z, g),
            w=tour_from_subset(w, g),
            z_edges=z.ids(),
            w_edges=w.ids(),
            iterations_used=state.iteration,
            elapsed_ms=elapsed_ms,
            final_energy=state.energy,
            accepted=state.accepted,
        )


def anneal(instance: Instance, cfg: AnnealConfig, stream: int = 0, rng: Optional[np.random.Generator] = None) -> Verdict:
    """One annealing run. The RNG stream is (cfg.seed, stream) unless rng is given."""
    rng = rng if rng is not None else make_rng(cfg.seed, stream)
    return AnnealLoop(AnnealContext(instance, cfg, rng)).run()
