"""Acyclic directed multigraph plus unit-capacity flow utilities.

Vertices are opaque hashable ids (ints or strings).  Edges are primitive and
carry unique integer ids, so parallel edges are allowed.  All structures are
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable

from .errors import (
    BudgetExceeded,
    CycleDetected,
    GraphTooLarge,
    NoPath,
    UnknownVertex,
)

VertexId = Hashable

DEFAULT_EDGE_LIMIT = 10_000

_edge_limit = DEFAULT_EDGE_LIMIT


def set_edge_limit(limit: int) -> None:
    """Override the global desk-scale guardrail (see MERGE_MAX_EDGES in the CLI)."""
    global _edge_limit
    _edge_limit = int(limit)


def get_edge_limit() -> int:
    return _edge_limit


def vertex_sort_key(v: VertexId):
    """Total order over mixed int/str vertex ids, ints first."""
    if isinstance(v, bool):
        return (1, str(v))
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


@dataclass(frozen=True)
class Edge:
    eid: int
    tail: VertexId
    head: VertexId


@dataclass(frozen=True)
class Dag:
    """Directed multigraph; acyclicity is checked by topological_order."""

    vertices: frozenset
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(self.edges) > _edge_limit:
            raise GraphTooLarge(
                f"{len(self.edges)} edges exceeds the limit of {_edge_limit}"
            )
        seen = set()
        for e in self.edges:
            if e.eid in seen:
                raise ValueError(f"duplicate edge id {e.eid}")
            seen.add(e.eid)
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise UnknownVertex(f"edge {e.eid} endpoint not declared")

    @staticmethod
    def build(vertices: Iterable[VertexId], edges: Iterable[tuple[int, VertexId, VertexId]]) -> "Dag":
        return Dag(frozenset(vertices), tuple(Edge(*t) for t in edges))

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.eid: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict[VertexId, tuple[Edge, ...]]:
        adj: dict[VertexId, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.tail].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.eid)) for v, es in adj.items()}

    @cached_property
    def in_edges(self) -> dict[VertexId, tuple[Edge, ...]]:
        adj: dict[VertexId, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.head].append(e)
        return {v: tuple(sorted(es, key=lambda e: e.eid)) for v, es in adj.items()}

    def in_degree(self, v: VertexId) -> int:
        return len(self.in_edges[v])

    def out_degree(self, v: VertexId) -> int:
        return len(self.out_edges[v])


def topological_order(dag: Dag) -> tuple[VertexId, ...]:
    """Kahn's algorithm with a vertex-id heap, so the order is deterministic.

    Raises CycleDetected when no topological order exists.
    """
    indeg = {v: 0 for v in dag.vertices}
    for e in dag.edges:
        indeg[e.head] += 1
    ready = [(vertex_sort_key(v), v) for v, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    order: list[VertexId] = []
    while ready:
        _, v = heapq.heappop(ready)
        order.append(v)
        for e in dag.out_edges[v]:
            indeg[e.head] -= 1
            if indeg[e.head] == 0:
                heapq.heappush(ready, (vertex_sort_key(e.head), e.head))
    if len(order) != len(dag.vertices):
        raise CycleDetected("graph has a directed cycle")
    return tuple(order)


def has_cycle(dag: Dag) -> bool:
    try:
        topological_order(dag)
        return False
    except CycleDetected:
        return True


def reachable_from(dag: Dag, start: VertexId, min_steps: int = 0) -> set:
    """Vertices reachable from ``start``; with min_steps=1 excludes the trivial path."""
    if start not in dag.vertices:
        raise UnknownVertex(str(start))
    seen: set = set()
    stack = [e.head for e in dag.out_edges[start]] if min_steps else [start]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        for e in dag.out_edges[v]:
            if e.head not in seen:
                stack.append(e.head)
    return seen


_EMPTY: frozenset = frozenset()


def _augment(
    dag: Dag, u: VertexId, v: VertexId, flow: set[int], removed=_EMPTY
) -> bool:
    """One lowest-edge-id-first DFS augmentation on the unit-capacity residual."""
    parent: dict[VertexId, tuple[int, bool]] = {}  # vertex -> (eid, was_forward)
    seen = {u}
    stack = [u]
    while stack:
        w = stack.pop()
        if w == v:
            break
        # residual arcs out of w, lowest edge id first; forward = unused edge,
        # backward = used edge traversed against its direction
        candidates: list[tuple[int, VertexId, bool]] = []
        for e in dag.out_edges[w]:
            if e.eid not in flow and e.eid not in removed and e.head not in seen:
                candidates.append((e.eid, e.head, True))
        for e in dag.in_edges[w]:
            if e.eid in flow and e.tail not in seen:
                candidates.append((e.eid, e.tail, False))
        for eid, nxt, fwd in sorted(candidates, reverse=True):
            # reversed push order so the lowest id is explored first (stack)
            if nxt not in seen:
                seen.add(nxt)
                parent[nxt] = (eid, fwd)
                stack.append(nxt)
    if v not in seen:
        return False
    w = v
    while w != u:
        eid, fwd = parent[w]
        e = dag.edge_by_id[eid]
        if fwd:
            flow.add(eid)
            w = e.tail
        else:
            flow.remove(eid)
            w = e.head
    return True


def _max_flow_edges(dag: Dag, u: VertexId, v: VertexId) -> set[int]:
    flow: set[int] = set()
    while _augment(dag, u, v, flow):
        pass
    return flow


def _packing_feasible(
    dag: Dag, removed: set[int], at: VertexId, u: VertexId, v: VertexId, need_other: int
) -> bool:
    """Can one at->v path plus need_other u->v paths coexist edge-disjointly
    outside the removed edges?  Multi-source unit max-flow, early exit."""
    supply: dict[VertexId, int] = {at: 1}
    supply[u] = supply.get(u, 0) + need_other
    flow: set[int] = set()
    target = need_other + 1
    pushed = 0
    progress = True
    while progress and pushed < target:
        progress = False
        for start in list(supply):
            while supply[start] and _augment(dag, start, v, flow, removed):
                supply[start] -= 1
                pushed += 1
                progress = True
    return pushed == target


def min_cut(dag: Dag, u: VertexId, v: VertexId) -> int:
    """Maximum number of pairwise edge-disjoint u->v paths (Menger)."""
    if u not in dag.vertices or v not in dag.vertices:
        raise UnknownVertex(f"{u!r} or {v!r}")
    if u == v:
        raise ValueError("endpoints must differ")
    flow = _max_flow_edges(dag, u, v)
    return sum(1 for eid in flow if dag.edge_by_id[eid].tail == u)


def menger_paths(dag: Dag, u: VertexId, v: VertexId) -> tuple[tuple[int, ...], ...]:
    """A maximum set of edge-disjoint u->v paths, as edge-id tuples.

    Deterministic: one lowest-edge-id-first max flow, decomposed by always
    following the lowest unconsumed flow edge.
    """
    if u not in dag.vertices or v not in dag.vertices:
        raise UnknownVertex(f"{u!r} or {v!r}")
    if u == v:
        raise ValueError("endpoints must differ")
    flow = _max_flow_edges(dag, u, v)
    value = sum(1 for eid in flow if dag.edge_by_id[eid].tail == u)
    if value == 0:
        raise NoPath(f"no path from {u!r} to {v!r}")
    remaining = set(flow)
    paths: list[tuple[int, ...]] = []
    for _ in range(value):
        path: list[int] = []
        w = u
        while w != v:
            e = min(
                (dag.edge_by_id[eid] for eid in remaining if dag.edge_by_id[eid].tail == w),
                key=lambda e: e.eid,
            )
            path.append(e.eid)
            remaining.remove(e.eid)
            w = e.head
        paths.append(tuple(path))
    return tuple(paths)


def all_menger_path_sets(
    dag: Dag, u: VertexId, v: VertexId, budget: int = 10_000
) -> list[tuple[tuple[int, ...], ...]]:
    """Every distinct set of min_cut(u, v) pairwise edge-disjoint u->v paths.

    A set is identified by its multiset of edge sets; each is reported once,
    with paths in lexicographic order.  Raises BudgetExceeded (carrying the
    partial list) once more than ``budget`` sets have been found.

    Path prefixes that cannot be completed to a full packing are pruned with
    a flow feasibility check, so the work is proportional to the output.
    """
    c = min_cut(dag, u, v)
    if c == 0:
        raise NoPath(f"no path from {u!r} to {v!r}")
    results: list[tuple[tuple[int, ...], ...]] = []
    chosen: list[tuple[int, ...]] = []
    starts = [e.eid for e in dag.out_edges[u]]

    def grow(banned: set[int], start_bound: int):
        # paths within a set are ordered by their (distinct) first edges, so
        # the flow feasibility check can see the ordering constraint exactly:
        # every remaining path must leave u by an edge above the bound
        if len(chosen) == c:
            results.append(tuple(chosen))
            if len(results) > budget:
                raise BudgetExceeded(partial=results[:budget])
            return
        need_other = c - len(chosen) - 1
        prefix: list[int] = []
        on_prefix: set[int] = set()

        def step(at: VertexId, removed: set[int]):
            if at == v:
                p = tuple(prefix)
                chosen.append(p)
                grow(banned | set(p), p[0])
                chosen.pop()
                return
            candidates = [
                e for e in dag.out_edges[at]
                if e.eid not in removed and e.eid not in on_prefix
            ]
            for e in candidates:
                prefix.append(e.eid)
                on_prefix.add(e.eid)
                if len(candidates) == 1 or _packing_feasible(
                    dag, removed | on_prefix, e.head, u, v, need_other
                ):
                    step(e.head, removed)
                on_prefix.discard(e.eid)
                prefix.pop()

        for first in starts:
            if first <= start_bound or first in banned:
                continue
            low = {eid for eid in starts if eid <= first}
            removed = banned | low
            prefix = [first]
            on_prefix = {first}
            head = dag.edge_by_id[first].head
            if _packing_feasible(dag, removed | on_prefix, head, u, v, need_other):
                step(head, removed)

    grow(set(), -1)
    return results
