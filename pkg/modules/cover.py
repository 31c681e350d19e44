# modules/cover.py

"""
Cycle covers of a union multigraph via perfect matching.

Undirected graphs go through a K4,2 gadget per vertex: four ports (one per
incident edge id) and two inner vertices joined to every port. The inner
vertices absorb two ports, so exactly two incident edges get matched across
gadgets and those edges form z. Directed graphs are split into a bipartite
graph with a left copy (tails) and a right copy (heads) of every vertex.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from core.errors import InvariantViolation, NotPerfect
from core.graph import CoverPair, EdgeSubset, UnionMultigraph
from modules.matching import (
    Matching,
    MatchGraph,
    perfect_matching_bipartite,
    perfect_matching_general,
)
from modules.tools import debug

PORTS = 4
GADGET = 6


class ReductionKind(str, Enum):
    UNDIRECTED_GADGET = "undirected_gadget"
    DIRECTED_BIPARTITE = "directed_bipartite"


@dataclass(frozen=True)
class MatchInstance:
    graph: MatchGraph
    port_of: Tuple[int, ...]
    kind: ReductionKind

    def forced_for(self, fixed: Sequence[int]) -> List[int]:
        return [self.port_of[e] for e in fixed]


def build_gadget_instance(g: UnionMultigraph) -> MatchInstance:
    if g.directed:
        raise InvariantViolation("gadget reduction needs an undirected multigraph")
    edges: List[Tuple[int, int]] = []
    for v in range(g.n):
        for inner in (GADGET * v + PORTS, GADGET * v + PORTS + 1):
            for p in range(PORTS):
                edges.append((GADGET * v + p, inner))
    port_of = []
    for e in g.edges:
        a = GADGET * e.tail + g.incidence[e.tail].index(e.id)
        b = GADGET * e.head + g.incidence[e.head].index(e.id)
        port_of.append(len(edges))
        edges.append((a, b))
    return MatchInstance(
        MatchGraph.from_edges(GADGET * g.n, edges),
        tuple(port_of),
        ReductionKind.UNDIRECTED_GADGET,
    )


def build_bipartite_instance(g: UnionMultigraph) -> MatchInstance:
    if not g.directed:
        raise InvariantViolation("bipartite reduction needs a directed multigraph")
    edges = [(e.tail, g.n + e.head) for e in g.edges]
    split = (range(g.n), range(g.n, 2 * g.n))
    return MatchInstance(
        MatchGraph.from_edges(2 * g.n, edges, bipartition=split),
        tuple(range(len(edges))),
        ReductionKind.DIRECTED_BIPARTITE,
    )


def build_instance(g: UnionMultigraph) -> MatchInstance:
    return build_bipartite_instance(g) if g.directed else build_gadget_instance(g)


def extract_cover(m: Matching, inst: MatchInstance, g: UnionMultigraph) -> CoverPair:
    if not m.is_perfect(inst.graph):
        raise NotPerfect(f"matching has {len(m)} pairs, {inst.graph.vertex_count // 2} needed")
    z = EdgeSubset.of(e.id for e in g.edges if inst.port_of[e.id] in m.edge_ids)
    pair = CoverPair(z, z.complement(g))
    pair.check(g)
    return pair


def find_matching(inst: MatchInstance, forced: Sequence[int], order: Optional[int]) -> Optional[Matching]:
    if inst.kind == ReductionKind.DIRECTED_BIPARTITE:
        return perfect_matching_bipartite(inst.graph, forced, order)
    return perfect_matching_general(inst.graph, forced, order)


# --- fixed edges ---

def _saturates(g: UnionMultigraph, entries: Sequence[int], eid: int) -> List[int]:
    """Entries that would have to leave so that eid fits next to the rest."""
    new = g.edges[eid]
    if g.directed:
        return [f for f in entries if g.edges[f].tail == new.tail or g.edges[f].head == new.head]
    out: List[int] = []
    for v in {new.tail, new.head}:
        at_v = [f for f in entries if v in (g.edges[f].tail, g.edges[f].head)]
        # two fixed edges already use up a vertex of degree 2 in z
        if len(at_v) >= 2:
            out.extend(at_v[: len(at_v) - 1])
    return out


def evict_conflicts(g: UnionMultigraph, entries: Sequence[int], eid: int) -> List[int]:
    """Drop the oldest entries clashing with eid (and eid itself if present)."""
    kept = [f for f in entries if f != eid]
    clash = set(_saturates(g, kept, eid))
    return [f for f in kept if f not in clash]


def sanitize_fixed(g: UnionMultigraph, fixed: Sequence[int]) -> List[int]:
    entries: List[int] = []
    for eid in fixed:
        entries = evict_conflicts(g, entries, eid) + [eid]
    return entries


def cover_with_fixed(
    g: UnionMultigraph,
    inst: MatchInstance,
    fixed: Sequence[int],
    seed: Optional[int] = None,
) -> Tuple[CoverPair, List[int]]:
    """Cover whose z contains the fixed edges, dropping the oldest ones until
    the matching is feasible. Returns the cover and the fixed list used."""
    fixed = sanitize_fixed(g, fixed)
    while True:
        m = find_matching(inst, inst.forced_for(fixed), seed)
        if m is not None:
            return extract_cover(m, inst, g), fixed
        if not fixed:
            raise InvariantViolation("no cycle cover exists for a 4-regular multigraph")
        debug("cover", f"⚠️ fixed set {fixed} infeasible, dropping edge {fixed[0]}")
        fixed = fixed[1:]
