# core/graph.py

"""
Data model for the union multigraph x ∪ y of two tours.

Vertices are 0-based here; tours and files use labels 1..n. Every edge has its
own id, so an edge shared by x and y shows up as two parallel EdgeRefs, and
each copy can go to a different side of a cover.
"""

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from core.errors import (
    DisconnectedGraph,
    IdenticalTours,
    InvariantViolation,
    MismatchedInstances,
    RegularityViolation,
)
from models import Origin, Tour, canonical_order

Key = Tuple[int, int]


def tour_from_permutation(perm: Sequence[int], directed: bool = False) -> Tour:
    return Tour(order=canonical_order(perm, directed), directed=directed)


class DisjointSets:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True, slots=True)
class EdgeRef:
    id: int
    tail: int
    head: int
    origin: Origin = Origin.UNATTRIBUTED

    def key(self, directed: bool) -> Key:
        if directed:
            return (self.tail, self.head)
        return (self.tail, self.head) if self.tail <= self.head else (self.head, self.tail)

    def other(self, v: int) -> int:
        return self.head if v == self.tail else self.tail


@dataclass(frozen=True, slots=True)
class EdgeSubset:
    """Bitset over the edge ids of one multigraph."""
    mask: int = 0

    @classmethod
    def of(cls, ids: Iterable[int]) -> "EdgeSubset":
        mask = 0
        for e in ids:
            mask |= 1 << e
        return cls(mask)

    def __contains__(self, eid: int) -> bool:
        return (self.mask >> eid) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __len__(self) -> int:
        return self.mask.bit_count()

    def ids(self) -> List[int]:
        return list(self)

    def complement(self, g: "UnionMultigraph") -> "EdgeSubset":
        return EdgeSubset(g.full_mask & ~self.mask)

    def add(self, eid: int) -> "EdgeSubset":
        return EdgeSubset(self.mask | (1 << eid))

    def remove(self, eid: int) -> "EdgeSubset":
        return EdgeSubset(self.mask & ~(1 << eid))


@dataclass(frozen=True)
class UnionMultigraph:
    n: int
    directed: bool
    edges: Tuple[EdgeRef, ...]
    incidence: Tuple[Tuple[int, ...], ...]
    full_mask: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "full_mask", (1 << len(self.edges)) - 1)

    def key(self, eid: int) -> Key:
        return self.edges[eid].key(self.directed)

    def all_edges(self) -> EdgeSubset:
        return EdgeSubset(self.full_mask)

    def origin_subset(self, origin: Origin) -> EdgeSubset:
        return EdgeSubset.of(e.id for e in self.edges if e.origin == origin)

    def check(self) -> None:
        """Raise unless the graph is 4-regular (2-in/2-out) and connected."""
        if len(self.edges) != 2 * self.n:
            raise RegularityViolation(f"expected {2 * self.n} edges, got {len(self.edges)}")
        if self.directed:
            outdeg, indeg = [0] * self.n, [0] * self.n
            for e in self.edges:
                outdeg[e.tail] += 1
                indeg[e.head] += 1
            for v in range(self.n):
                if outdeg[v] != 2 or indeg[v] != 2:
                    raise RegularityViolation(
                        f"vertex {v + 1} has indegree {indeg[v]} and outdegree {outdeg[v]}, expected 2 and 2"
                    )
        else:
            for v in range(self.n):
                if len(self.incidence[v]) != 4:
                    raise RegularityViolation(f"vertex {v + 1} has degree {len(self.incidence[v])}, expected 4")
        for e in self.edges:
            if e.tail == e.head:
                raise RegularityViolation(f"self-loop at vertex {e.tail + 1}")
        count, _ = components(self.all_edges(), self)
        if count != 1:
            raise DisconnectedGraph(f"graph has {count} connected components")


def build_multigraph(
    n: int,
    directed: bool,
    pairs: Sequence[Key],
    origins: Optional[Sequence[Origin]] = None,
) -> UnionMultigraph:
    """Build and validate a multigraph from 0-based endpoint pairs."""
    incidence: List[List[int]] = [[] for _ in range(n)]
    edges = []
    for eid, (u, v) in enumerate(pairs):
        if not (0 <= u < n and 0 <= v < n):
            raise RegularityViolation(f"edge ({u + 1}, {v + 1}) leaves the vertex range 1..{n}")
        origin = origins[eid] if origins is not None else Origin.UNATTRIBUTED
        edges.append(EdgeRef(eid, u, v, origin))
        incidence[u].append(eid)
        if v != u:
            incidence[v].append(eid)
    g = UnionMultigraph(n, directed, tuple(edges), tuple(tuple(ids) for ids in incidence))
    g.check()
    return g


def union_multigraph(x: Tour, y: Tour) -> UnionMultigraph:
    if x.n != y.n or x.directed != y.directed:
        raise MismatchedInstances(
            f"tours differ in size or directedness: n={x.n}/{y.n}, directed={x.directed}/{y.directed}"
        )
    if x == y:
        raise IdenticalTours("x and y are the same tour")
    pairs = [(a - 1, b - 1) for a, b in x.edges()] + [(a - 1, b - 1) for a, b in y.edges()]
    origins = [Origin.FROM_X] * x.n + [Origin.FROM_Y] * y.n
    return build_multigraph(x.n, x.directed, pairs, origins)


def components(sub: EdgeSubset, g: UnionMultigraph) -> Tuple[int, List[int]]:
    """Count components of the spanning subgraph (V, sub), orientation ignored.

    Returns the count and a component label per vertex, labels numbered by
    first appearance.
    """
    sets = DisjointSets(g.n)
    edges = g.edges
    for eid in sub:
        e = edges[eid]
        sets.union(e.tail, e.head)
    labels = [0] * g.n
    seen: Dict[int, int] = {}
    for v in range(g.n):
        root = sets.find(v)
        if root not in seen:
            seen[root] = len(seen)
        labels[v] = seen[root]
    return len(seen), labels


def is_cover(sub: EdgeSubset, g: UnionMultigraph) -> bool:
    """Degree 2 at every vertex (undirected) or in/outdegree 1 (directed)."""
    if len(sub) != g.n:
        return False
    edges = g.edges
    if g.directed:
        outdeg, indeg = [0] * g.n, [0] * g.n
        for eid in sub:
            e = edges[eid]
            outdeg[e.tail] += 1
            indeg[e.head] += 1
        return all(d == 1 for d in outdeg) and all(d == 1 for d in indeg)
    deg = [0] * g.n
    for eid in sub:
        e = edges[eid]
        deg[e.tail] += 1
        deg[e.head] += 1
    return all(d == 2 for d in deg)


def is_hamiltonian(sub: EdgeSubset, g: UnionMultigraph) -> bool:
    return is_cover(sub, g) and components(sub, g)[0] == 1


def tour_keys(t: Tour) -> Counter:
    keys: Counter = Counter()
    for a, b in t.edges():
        u, v = a - 1, b - 1
        keys[(u, v) if t.directed or u <= v else (v, u)] += 1
    return keys


def subset_keys(sub: EdgeSubset, g: UnionMultigraph) -> Counter:
    return Counter(g.key(eid) for eid in sub)


def subset_equals_tour(sub: EdgeSubset, g: UnionMultigraph, t: Tour) -> bool:
    """Compare endpoints, not ids: either copy of a shared edge matches."""
    if t.n != g.n or t.directed != g.directed:
        return False
    return subset_keys(sub, g) == tour_keys(t)


def tour_from_subset(sub: EdgeSubset, g: UnionMultigraph) -> Tour:
    """Walk a Hamiltonian edge subset from vertex 1 into a canonical Tour."""
    if not is_hamiltonian(sub, g):
        raise InvariantViolation("edge subset is not a Hamiltonian tour")
    out: List[List[int]] = [[] for _ in range(g.n)]
    for eid in sub:
        e = g.edges[eid]
        out[e.tail].append(eid)
        if not g.directed:
            out[e.head].append(eid)
    order = [0]
    used = set()
    v = 0
    while len(order) < g.n:
        eid = next(i for i in out[v] if i not in used)
        used.add(eid)
        v = g.edges[eid].other(v)
        order.append(v)
    return tour_from_permutation([v + 1 for v in order], g.directed)


def subset_from_pairs(g: UnionMultigraph, pairs: Iterable[Key]) -> EdgeSubset:
    """Pick one unused edge id per 1-based endpoint pair (parallel copies are
    handed out in id order)."""
    free: Dict[Key, List[int]] = {}
    for e in g.edges:
        free.setdefault(e.key(g.directed), []).append(e.id)
    ids = []
    for a, b in pairs:
        u, v = a - 1, b - 1
        key = (u, v) if g.directed or u <= v else (v, u)
        bucket = free.get(key)
        if not bucket:
            raise InvariantViolation(f"edge ({a}, {b}) is not available in the multigraph")
        ids.append(bucket.pop(0))
    return EdgeSubset.of(ids)


@dataclass(frozen=True, slots=True)
class CoverPair:
    z: EdgeSubset
    w: EdgeSubset

    def swapped(self) -> "CoverPair":
        return CoverPair(self.w, self.z)

    def check(self, g: UnionMultigraph) -> None:
        if self.z.mask & self.w.mask or (self.z.mask | self.w.mask) != g.full_mask:
            raise InvariantViolation("z and w do not partition the edge ids")
        if not is_cover(self.z, g) or not is_cover(self.w, g):
            raise InvariantViolation("z or w is not a vertex-disjoint cycle cover")
