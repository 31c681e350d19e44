# modules/matching.py

"""
Perfect-matching engines with forced edges.

Forced edges are taken out of the graph together with their endpoints, and
the remainder is matched from scratch. `order` is a seed: when given, the
adjacency scan order and the root order are permuted, so distinct seeds can
give distinct matchings while one seed always gives the same one.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from core.errors import ForcedConflict, InvariantViolation, NotBipartite

INF = 1 << 30


@dataclass(frozen=True)
class MatchGraph:
    vertex_count: int
    edges: Tuple[Tuple[int, int], ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    bipartition: Optional[Tuple[FrozenSet[int], FrozenSet[int]]] = None
    pair_index: Dict[Tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index: Dict[Tuple[int, int], int] = {}
        for eid, (a, b) in enumerate(self.edges):
            index.setdefault((min(a, b), max(a, b)), eid)
        object.__setattr__(self, "pair_index", index)

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Sequence[Tuple[int, int]],
        bipartition: Optional[Tuple[Iterable[int], Iterable[int]]] = None,
    ) -> "MatchGraph":
        adjacency: List[List[int]] = [[] for _ in range(vertex_count)]
        for eid, (a, b) in enumerate(edges):
            adjacency[a].append(eid)
            adjacency[b].append(eid)
        split = None
        if bipartition is not None:
            split = (frozenset(bipartition[0]), frozenset(bipartition[1]))
        return cls(vertex_count, tuple(tuple(e) for e in edges), tuple(tuple(a) for a in adjacency), split)

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a


@dataclass(frozen=True)
class Matching:
    edge_ids: FrozenSet[int]
    pairs: FrozenSet[Tuple[int, int]]

    @classmethod
    def from_edge_ids(cls, g: MatchGraph, ids: Iterable[int]) -> "Matching":
        ids = frozenset(ids)
        pairs = frozenset((min(g.edges[e]), max(g.edges[e])) for e in ids)
        return cls(ids, pairs)

    def __len__(self) -> int:
        return len(self.edge_ids)

    def is_perfect(self, g: MatchGraph) -> bool:
        return 2 * len(self.edge_ids) == g.vertex_count


def _forced_endpoints(g: MatchGraph, forced: Iterable[int]) -> Tuple[List[int], Set[int]]:
    forced = list(dict.fromkeys(forced))
    removed: Set[int] = set()
    for eid in forced:
        if not 0 <= eid < len(g.edges):
            raise ForcedConflict(f"forced edge {eid} is not an edge of the graph")
        a, b = g.edges[eid]
        if a in removed or b in removed or a == b:
            raise ForcedConflict(f"forced edge {eid} shares a vertex with another forced edge")
        removed.update((a, b))
    return forced, removed


def check_matching(g: MatchGraph, matching: Matching, forced: Iterable[int]) -> None:
    covered: Set[int] = set()
    for eid in matching.edge_ids:
        if not 0 <= eid < len(g.edges):
            raise InvariantViolation(f"matching uses unknown edge {eid}")
        a, b = g.edges[eid]
        if a in covered or b in covered:
            raise InvariantViolation("matching pairs are not vertex-disjoint")
        covered.update((a, b))
    if not set(forced) <= matching.edge_ids:
        raise InvariantViolation("matching dropped a forced edge")


def _scan_keys(g: MatchGraph, order: Optional[int]) -> Tuple[Optional[np.random.Generator], Optional[List[float]]]:
    if order is None:
        return None, None
    rng = np.random.default_rng(order)
    return rng, rng.random(len(g.edges)).tolist()


class BlossomMatcher:
    """Edmonds' blossom algorithm (O(V^3) base-array variant), single run."""

    def __init__(self, g: MatchGraph, forced: Iterable[int] = (), order: Optional[int] = None):
        self.g = g
        self.forced, removed = _forced_endpoints(g, forced)
        rng, keys = _scan_keys(g, order)
        active = [v for v in range(g.vertex_count) if v not in removed]
        adj: List[List[int]] = [[] for _ in range(g.vertex_count)]
        for v in active:
            eids = [e for e in g.adjacency[v] if g.other(e, v) not in removed]
            if keys is not None:
                eids.sort(key=keys.__getitem__)
            adj[v] = [g.other(e, v) for e in eids]
        if rng is not None:
            active = [active[i] for i in rng.permutation(len(active)).tolist()]
        self.active = active
        self.adj = adj
        self.match = [-1] * g.vertex_count
        self.parent = [-1] * g.vertex_count

    def run(self) -> Optional[Matching]:
        if len(self.active) % 2:
            return None
        match, adj = self.match, self.adj
        for v in self.active:
            if match[v] == -1:
                for u in adj[v]:
                    if match[u] == -1:
                        match[v], match[u] = u, v
                        break
        for root in self.active:
            if match[root] != -1:
                continue
            end = self._find_path(root)
            if end == -1:
                # no augmenting path from an exposed vertex ever appears later
                return None
            self._augment(end)
        ids = list(self.forced)
        for v in self.active:
            u = match[v]
            if v < u:
                ids.append(self.g.pair_index[(v, u)])
        result = Matching.from_edge_ids(self.g, ids)
        check_matching(self.g, result, self.forced)
        return result

    def _augment(self, v: int) -> None:
        match, parent = self.match, self.parent
        while v != -1:
            pv = parent[v]
            ppv = match[pv]
            match[v], match[pv] = pv, v
            v = ppv

    def _find_path(self, root: int) -> int:
        size = self.g.vertex_count
        match, adj, active = self.match, self.adj, self.active
        used = [False] * size
        parent = [-1] * size
        base = list(range(size))
        self.parent = parent

        def lca(a: int, b: int) -> int:
            seen = [False] * size
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = parent[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = parent[match[b]]

        def mark_path(v: int, b: int, child: int, blossom: List[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * size
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in active:
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1


class HopcroftKarpMatcher:
    """Hopcroft-Karp on an explicit bipartition; parallel edges keep their ids."""

    def __init__(self, g: MatchGraph, forced: Iterable[int] = (), order: Optional[int] = None):
        if g.bipartition is None:
            raise NotBipartite("graph has no bipartition")
        left_set, right_set = g.bipartition
        tail = [0] * len(g.edges)
        head = [0] * len(g.edges)
        for eid, (a, b) in enumerate(g.edges):
            if a in left_set and b in right_set:
                tail[eid], head[eid] = a, b
            elif b in left_set and a in right_set:
                tail[eid], head[eid] = b, a
            else:
                raise NotBipartite(f"edge {eid} = ({a}, {b}) does not cross the bipartition")
        self.g = g
        self.tail, self.head = tail, head
        self.forced, removed = _forced_endpoints(g, forced)
        rng, keys = _scan_keys(g, order)
        self.left = [v for v in sorted(left_set) if v not in removed]
        self.right = [v for v in sorted(right_set) if v not in removed]
        adj: List[List[int]] = [[] for _ in range(g.vertex_count)]
        for v in self.left:
            eids = [e for e in g.adjacency[v] if head[e] not in removed]
            if keys is not None:
                eids.sort(key=keys.__getitem__)
            adj[v] = eids
        if rng is not None:
            self.left = [self.left[i] for i in rng.permutation(len(self.left)).tolist()]
        self.adj = adj
        self.pair_left = [-1] * g.vertex_count
        self.pair_right = [-1] * g.vertex_count
        self.dist = [INF] * g.vertex_count
        self.found_dist = INF

    def run(self) -> Optional[Matching]:
        if len(self.left) != len(self.right):
            return None
        pair_left, pair_right, head = self.pair_left, self.pair_right, self.head
        for l in self.left:
            for e in self.adj[l]:
                if pair_right[head[e]] == -1:
                    pair_left[l] = pair_right[head[e]] = e
                    break
        while self._bfs():
            ptr = {l: 0 for l in self.left}
            for l in self.left:
                if pair_left[l] == -1:
                    self._dfs(l, ptr)
        if any(pair_left[l] == -1 for l in self.left):
            return None
        ids = list(self.forced) + [pair_left[l] for l in self.left]
        result = Matching.from_edge_ids(self.g, ids)
        check_matching(self.g, result, self.forced)
        return result

    def _bfs(self) -> bool:
        dist, pair_left, pair_right = self.dist, self.pair_left, self.pair_right
        queue: deque = deque()
        for l in self.left:
            if pair_left[l] == -1:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = INF
        self.found_dist = INF
        while queue:
            u = queue.popleft()
            if dist[u] >= self.found_dist:
                continue
            for e in self.adj[u]:
                m = pair_right[self.head[e]]
                if m == -1:
                    if self.found_dist == INF:
                        self.found_dist = dist[u] + 1
                else:
                    l2 = self.tail[m]
                    if dist[l2] == INF:
                        dist[l2] = dist[u] + 1
                        queue.append(l2)
        return self.found_dist != INF

    def _dfs(self, root: int, ptr: Dict[int, int]) -> bool:
        dist, pair_left, pair_right = self.dist, self.pair_left, self.pair_right
        stack = [root]
        path: List[int] = []
        while stack:
            u = stack[-1]
            if ptr[u] == len(self.adj[u]):
                dist[u] = INF
                stack.pop()
                if path:
                    path.pop()
                continue
            e = self.adj[u][ptr[u]]
            ptr[u] += 1
            m = pair_right[self.head[e]]
            if m == -1:
                if self.found_dist == dist[u] + 1:
                    path.append(e)
                    for pe in path:
                        pair_left[self.tail[pe]] = pe
                        pair_right[self.head[pe]] = pe
                    return True
            else:
                l2 = self.tail[m]
                if dist[l2] == dist[u] + 1:
                    path.append(e)
                    stack.append(l2)
        return False


def perfect_matching_general(
    g: MatchGraph, forced: Iterable[int] = (), order: Optional[int] = None
) -> Optional[Matching]:
    """A perfect matching containing every forced edge, or None if none exists."""
    return BlossomMatcher(g, forced, order).run()


def perfect_matching_bipartite(
    g: MatchGraph, forced: Iterable[int] = (), order: Optional[int] = None
) -> Optional[Matching]:
    return HopcroftKarpMatcher(g, forced, order).run()
