"""Networks: a DAG plus one group of Menger's paths per source/sink pair."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property

from .core import Dag, Edge, VertexId, min_cut
from .errors import InvalidNetwork

DISTINCT = "distinct"
IDENTICAL = "identical"


@dataclass(frozen=True)
class PathGroup:
    """An ordered set of pairwise edge-disjoint paths from source to sink."""

    source: VertexId
    sink: VertexId
    paths: tuple[tuple[int, ...], ...]

    @property
    def cut(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class MergeNetwork:
    """The universal object: a DAG, its path groups, and the source mode.

    ``starting_subpaths`` (identical-source mode only) lists, per pair index i,
    the shared edge run with which paths group0[i] and group1[i] both begin.
    """

    dag: Dag
    groups: tuple[PathGroup, ...]
    mode: str = DISTINCT
    starting_subpaths: tuple[tuple[int, ...], ...] | None = None

    @property
    def cuts(self) -> tuple[int, ...]:
        return tuple(g.cut for g in self.groups)

    @cached_property
    def path_index(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """(group, path) -> edge tuple, for uniform access."""
        return {
            (gi, pi): p
            for gi, g in enumerate(self.groups)
            for pi, p in enumerate(g.paths)
        }

    @cached_property
    def paths_through_edge(self) -> dict[int, tuple[tuple[int, int, int], ...]]:
        """edge id -> ((group, path, position along path), ...)."""
        through: dict[int, list[tuple[int, int, int]]] = {}
        for (gi, pi), path in sorted(self.path_index.items()):
            for pos, eid in enumerate(path):
                through.setdefault(eid, []).append((gi, pi, pos))
        return {eid: tuple(v) for eid, v in through.items()}


def validate_network(net: MergeNetwork) -> None:
    """Raise InvalidNetwork unless every structural invariant holds."""
    dag = net.dag
    by_id = dag.edge_by_id
    if net.mode not in (DISTINCT, IDENTICAL):
        raise InvalidNetwork(f"unknown mode {net.mode!r}")
    for gi, g in enumerate(net.groups):
        if not g.paths:
            raise InvalidNetwork(f"group {gi} has no paths")
        used: set[int] = set()
        for pi, path in enumerate(g.paths):
            if not path:
                raise InvalidNetwork(f"group {gi} path {pi} is empty")
            at = g.source
            for eid in path:
                e = by_id.get(eid)
                if e is None:
                    raise InvalidNetwork(f"group {gi} path {pi}: unknown edge {eid}")
                if e.tail != at:
                    raise InvalidNetwork(f"group {gi} path {pi}: not a walk at edge {eid}")
                if eid in used:
                    raise InvalidNetwork(
                        f"group {gi}: edge {eid} reused within the group"
                    )
                used.add(eid)
                at = e.head
            if at != g.sink:
                raise InvalidNetwork(f"group {gi} path {pi} does not end at the sink")
        cut = min_cut(dag, g.source, g.sink)
        if cut != g.cut:
            raise InvalidNetwork(
                f"group {gi}: {g.cut} paths but min-cut is {cut}; not a Menger set"
            )
    sinks = [g.sink for g in net.groups]
    if len(set(sinks)) != len(sinks):
        raise InvalidNetwork("sinks must be pairwise distinct")
    sources = [g.source for g in net.groups]
    if net.mode == DISTINCT:
        if len(set(sources)) != len(sources):
            raise InvalidNetwork("distinct mode requires pairwise distinct sources")
    else:
        if len(set(sources)) != 1:
            raise InvalidNetwork("identical mode requires a single shared source")
    if net.starting_subpaths is not None:
        if net.mode != IDENTICAL or len(net.groups) != 2:
            raise InvalidNetwork("starting subpaths require a two-group identical-source net")
        phi, psi = net.groups
        if len(net.starting_subpaths) > min(phi.cut, psi.cut):
            raise InvalidNetwork("more starting subpaths than path pairs")
        for i, omega in enumerate(net.starting_subpaths):
            k = len(omega)
            if k == 0 or phi.paths[i][:k] != omega or psi.paths[i][:k] != omega:
                raise InvalidNetwork(f"starting subpath {i} is not a shared prefix")


def build_network(
    vertices,
    edges,
    group_specs,
    mode: str = DISTINCT,
    starting_subpaths=None,
    check: bool = True,
) -> MergeNetwork:
    """Assemble and (by default) validate a network.

    ``group_specs`` is an iterable of (source, sink, paths) triples.
    """
    dag = Dag(frozenset(vertices), tuple(Edge(*e) for e in edges))
    groups = tuple(
        PathGroup(src, snk, tuple(tuple(p) for p in paths))
        for src, snk, paths in group_specs
    )
    ssp = None
    if starting_subpaths is not None:
        ssp = tuple(tuple(w) for w in starting_subpaths)
    net = MergeNetwork(dag, groups, mode, ssp)
    if check:
        validate_network(net)
    return net


def is_covered(net: MergeNetwork) -> bool:
    """True iff every edge lies on some group path (the (c1..cl)-graph condition)."""
    return all(e.eid in net.paths_through_edge for e in net.dag.edges)


def swap_groups(net: MergeNetwork) -> MergeNetwork:
    """View a two-group distinct-source network with the group roles exchanged."""
    if len(net.groups) != 2 or net.mode != DISTINCT:
        raise InvalidNetwork("swap_groups expects a two-group distinct-source network")
    return replace(net, groups=(net.groups[1], net.groups[0]))
