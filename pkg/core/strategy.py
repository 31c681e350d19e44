# core/strategy.py

from collections import Counter, deque
from typing import Callable, Iterable, Iterator, List, Tuple

import numpy as np

from core.context import AnnealContext
from core.graph import CoverPair, EdgeSubset, UnionMultigraph, components
from models import Mode
from modules.cover import cover_with_fixed, evict_conflicts
from modules.tools import debug, draw_seed, pick

NeighborFn = Callable[[AnnealContext, np.random.Generator], CoverPair]


class FixedEdgeQueue:
    """FIFO of edge ids forced into z. A full queue drops its front on push."""

    def __init__(self, g: UnionMultigraph, capacity: int, entries: Iterable[int] = ()):
        self.g = g
        self.capacity = capacity
        self.entries: deque = deque(maxlen=capacity)
        for eid in entries:
            self.push(eid)

    def push(self, eid: int) -> None:
        kept = evict_conflicts(self.g, list(self.entries), eid)
        self.entries = deque(kept, maxlen=self.capacity)
        self.entries.append(eid)

    def retain(self, keep: Callable[[int], bool]) -> None:
        self.entries = deque((e for e in self.entries if keep(e)), maxlen=self.capacity)

    def replace(self, entries: Iterable[int]) -> None:
        self.entries = deque(entries, maxlen=self.capacity)

    def as_list(self) -> List[int]:
        return list(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __repr__(self):
        return f"<FixedEdgeQueue {list(self.entries)} cap={self.capacity}>"


def neighbor_match(context: AnnealContext, rng: np.random.Generator) -> CoverPair:
    """Fix one edge of w that joins two components of z, then rematch."""
    g = context.graph
    state = context.state
    pair = state.pair
    count_z, labels = components(pair.z, g)
    count_w, labels_w = components(pair.w, g)
    if count_z == 1 and count_w > 1:
        pair = pair.swapped()
        count_z, labels = count_w, labels_w
        state.queue.retain(lambda e: e in pair.z)
        debug("strategy", f"🔄 z is a tour, swapped sides; queue now {state.queue.as_list()}")

    crossing = [e for e in pair.w if labels[g.edges[e].tail] != labels[g.edges[e].head]]
    if not crossing:
        # z and w are the input tours themselves: any w edge breaks the split
        crossing = pair.w.ids()
    eid = pick(rng, crossing)
    state.queue.push(eid)

    candidate, used = cover_with_fixed(g, context.match_instance, state.queue.as_list(), seed=draw_seed(rng))
    state.queue.replace(used)
    return candidate


def _endpoint_profile(g: UnionMultigraph, ids: List[int]) -> Tuple[Counter, ...]:
    if g.directed:
        return Counter(g.edges[e].tail for e in ids), Counter(g.edges[e].head for e in ids)
    ends: Counter = Counter()
    for e in ids:
        ends[g.edges[e].tail] += 1
        ends[g.edges[e].head] += 1
    return (ends,)


def neighbor_random(context: AnnealContext, rng: np.random.Generator) -> CoverPair:
    """Swap exEdgesN random edges of z with as many random edges of w,
    keeping both sides cycle covers; unchanged pair if no swap fits."""
    g = context.graph
    cfg = context.config
    pair = context.state.pair
    k = min(cfg.ex_edges_n, g.n)
    if k == 0:
        return pair
    z_ids, w_ids = pair.z.ids(), pair.w.ids()
    for _ in range(cfg.random_attempts):
        out_of_z = [z_ids[i] for i in rng.choice(len(z_ids), size=k, replace=False).tolist()]
        out_of_w = [w_ids[i] for i in rng.choice(len(w_ids), size=k, replace=False).tolist()]
        if _endpoint_profile(g, out_of_z) != _endpoint_profile(g, out_of_w):
            continue
        moved = EdgeSubset.of(out_of_z).mask | EdgeSubset.of(out_of_w).mask
        z = EdgeSubset(pair.z.mask ^ moved)
        return CoverPair(z, z.complement(g))
    return pair


def select_neighbor_strategy(mode: Mode) -> NeighborFn:
    """Neighbor generator for the configured state candidate mode."""
    if mode == Mode.RANDOM:
        return neighbor_random
    return neighbor_match
