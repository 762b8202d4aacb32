"""Merging detection, reroutability, AA-walks, and the adjacent-pair blocks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Dag, Edge, VertexId, min_cut, reachable_from
from .errors import (
    BudgetExceeded,
    DecompositionError,
    InvalidNetwork,
    MultiwayMerging,
    NotCovered,
    NotTwoByN,
    PhiWalkUnsupported,
    RerouteDetected,
)
from .network import (
    DISTINCT,
    IDENTICAL,
    MergeNetwork,
    PathGroup,
    is_covered,
    validate_network,
)


@dataclass(frozen=True)
class MergedSubpath:
    """A maximal edge run shared by >=2 paths that enter its first edge apart.

    ``head`` is the run's starting vertex h and ``tail`` its ending vertex t.
    """

    start_edge: int
    run: tuple[int, ...]
    participants: frozenset  # of (group, path) pairs
    head: VertexId
    tail: VertexId


def find_mergings(net: MergeNetwork) -> tuple[MergedSubpath, ...]:
    """All mergings, one per start edge, ordered by start-edge id.

    Paths merge at edge e when at least two of them arrive via distinct
    immediately-preceding edges; the run is the maximal continuation shared by
    every path through e.  Mergings at the same edge count once.
    """
    by_id = net.dag.edge_by_id
    out: list[MergedSubpath] = []
    for eid in sorted(net.paths_through_edge):
        through = net.paths_through_edge[eid]
        if len(through) < 2:
            continue
        preds = set()
        for gi, pi, pos in through:
            if pos > 0:
                preds.add(net.path_index[(gi, pi)][pos - 1])
        if len(preds) < 2:
            continue
        run = [eid]
        cursor = [(gi, pi, pos) for gi, pi, pos in through]
        while True:
            nxts = set()
            for gi, pi, pos in cursor:
                path = net.path_index[(gi, pi)]
                step = pos + len(run)
                nxts.add(path[step] if step < len(path) else None)
            if len(nxts) == 1 and None not in nxts:
                run.append(nxts.pop())
            else:
                break
        out.append(
            MergedSubpath(
                start_edge=eid,
                run=tuple(run),
                participants=frozenset((gi, pi) for gi, pi, _ in through),
                head=by_id[eid].tail,
                tail=by_id[run[-1]].head,
            )
        )
    return tuple(out)


def count_mergings(net: MergeNetwork) -> int:
    return len(find_mergings(net))


def indegree2_count(net: MergeNetwork) -> int:
    """Non-sink vertices of in-degree >= 2; equals the merging count on reduced covered nets."""
    sinks = {g.sink for g in net.groups}
    return sum(
        1
        for v in net.dag.vertices
        if v not in sinks and net.dag.in_degree(v) >= 2
    )


# ---------------------------------------------------------------------------
# Reroutability


def _group_flow_residual(net: MergeNetwork, gi: int) -> Dag:
    """Unit-capacity residual of the group's own flow: its path edges reversed."""
    used = {eid for path in net.groups[gi].paths for eid in path}
    edges = tuple(
        Edge(e.eid, e.head, e.tail) if e.eid in used else e for e in net.dag.edges
    )
    return Dag(net.dag.vertices, edges)


def _has_cycle_through(dag: Dag) -> bool:
    indeg = {v: 0 for v in dag.vertices}
    for e in dag.edges:
        indeg[e.head] += 1
    stack = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for e in dag.out_edges[v]:
            indeg[e.head] -= 1
            if indeg[e.head] == 0:
                stack.append(e.head)
    return seen != len(dag.vertices)


def group_is_reroutable(net: MergeNetwork, gi: int) -> bool:
    """True iff group gi admits a second, different set of Menger's paths.

    The group's paths are one integral max flow.  A different path set exists
    iff the residual graph has a cycle (a different max flow exists) or two
    group paths cross at an internal vertex (the same flow decomposes in more
    than one way).
    """
    g = net.groups[gi]
    visits: dict[VertexId, int] = {}
    for path in g.paths:
        for eid in path[:-1]:
            v = net.dag.edge_by_id[eid].head
            visits[v] = visits.get(v, 0) + 1
            if v not in (g.source, g.sink) and visits[v] >= 2:
                return True
    return _has_cycle_through(_group_flow_residual(net, gi))


def is_reroutable(net: MergeNetwork) -> bool:
    """True iff some group's Menger path set is not the unique choice."""
    return any(group_is_reroutable(net, gi) for gi in range(len(net.groups)))


def brute_force_reroutable(net: MergeNetwork, budget: int = 10_000) -> bool:
    """Independent oracle: enumerate path sets per group and look for a second one."""
    from .core import all_menger_path_sets

    for g in net.groups:
        try:
            sets = all_menger_path_sets(net.dag, g.source, g.sink, budget=1)
        except BudgetExceeded:
            return True
        if len(sets) > 1:
            return True
    return False


@dataclass(frozen=True)
class SemiReach:
    """Reachability between merging endpoints after reversing one group's own edges."""

    group_index: int
    relation: frozenset  # of ((merging index, 'head'|'tail'), (merging index, ...))


def semi_reach(net: MergeNetwork, gi: int) -> SemiReach:
    """Reverse edges belonging only to group gi, then relate merging endpoints.

    The relation contains (a, b) when a nonempty directed path runs from the
    vertex of endpoint a to the vertex of endpoint b; it is transitively
    closed by construction.
    """
    exclusive = {eid for path in net.groups[gi].paths for eid in path}
    for gj, g in enumerate(net.groups):
        if gj == gi:
            continue
        for path in g.paths:
            exclusive.difference_update(path)
    edges = tuple(
        Edge(e.eid, e.head, e.tail) if e.eid in exclusive else e
        for e in net.dag.edges
    )
    reversed_dag = Dag(net.dag.vertices, edges)
    mergings = find_mergings(net)
    endpoints = [
        ((mi, side), m.head if side == "head" else m.tail)
        for mi, m in enumerate(mergings)
        for side in ("head", "tail")
    ]
    relation = set()
    for key_a, va in endpoints:
        reach = reachable_from(reversed_dag, va, min_steps=1)
        for key_b, vb in endpoints:
            if vb in reach:
                relation.add((key_a, key_b))
    return SemiReach(gi, frozenset(relation))


def semi_reach_reroutable(net: MergeNetwork) -> bool:
    """The head-to-head self-semi-reach test for the existence of a rerouting."""
    n_mergings = len(find_mergings(net))
    for gi in range(len(net.groups)):
        rel = semi_reach(net, gi).relation
        for mi in range(n_mergings):
            if ((mi, "head"), (mi, "head")) in rel:
                return True
    return False


def minimize_mergings(
    net: MergeNetwork, budget: int = 10_000
) -> tuple[int, tuple[tuple[tuple[int, ...], ...], ...]]:
    """Minimum merging count over all per-group Menger path-set choices.

    Returns (value, witness) where witness gives one path set per group.  For
    a non-reroutable network the given sets are the unique choice.
    """
    from .core import all_menger_path_sets

    if not is_reroutable(net):
        return count_mergings(net), tuple(g.paths for g in net.groups)
    options = []
    for g in net.groups:
        sets = all_menger_path_sets(net.dag, g.source, g.sink, budget=budget)
        options.append(sets)
    total = 1
    for opt in options:
        total *= len(opt)
        if total > budget:
            raise BudgetExceeded(partial=None)
    best: int | None = None
    witness = None
    for combo in itertools.product(*options):
        candidate = MergeNetwork(
            net.dag,
            tuple(
                PathGroup(g.source, g.sink, paths)
                for g, paths in zip(net.groups, combo)
            ),
            net.mode,
            None,
        )
        value = count_mergings(candidate)
        if best is None or value < best:
            best, witness = value, combo
    return best, witness


# ---------------------------------------------------------------------------
# Reduction


def reduce_network(net: MergeNetwork) -> MergeNetwork:
    """Contract every vertex that is not a source, sink, or merging endpoint.

    Only degree-(1,1) pass-through vertices are spliced; merging counts and
    reroutability are unaffected.
    """
    if not is_covered(net):
        raise NotCovered("reduce requires a covered network")
    keep = {g.source for g in net.groups} | {g.sink for g in net.groups}
    for m in find_mergings(net):
        keep.add(m.head)
        keep.add(m.tail)
    dag = net.dag
    contractible = {
        v
        for v in dag.vertices
        if v not in keep and dag.in_degree(v) == 1 and dag.out_degree(v) == 1
    }
    if not contractible:
        return net
    # walk maximal chains: each contiguous run of contractible vertices
    # collapses into a single edge keeping the first edge's id
    successor = {e.tail: e for e in dag.edges if e.tail in contractible}
    absorbed: dict[int, int] = {}  # dropped edge id -> surviving edge id
    new_edges = []
    dropped: set[int] = set()
    for e in dag.edges:
        if e.eid in dropped or e.tail in contractible:
            continue
        head = e.head
        chain = [e.eid]
        while head in contractible:
            nxt = successor[head]
            chain.append(nxt.eid)
            dropped.add(nxt.eid)
            head = nxt.head
        for eid in chain[1:]:
            absorbed[eid] = e.eid
        new_edges.append(Edge(e.eid, e.tail, head))

    def rewrite(path: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(eid for eid in path if eid not in absorbed)

    groups = tuple(
        PathGroup(g.source, g.sink, tuple(rewrite(p) for p in g.paths))
        for g in net.groups
    )
    ssp = None
    if net.starting_subpaths is not None:
        ssp = tuple(rewrite(w) for w in net.starting_subpaths)
    reduced = MergeNetwork(
        Dag(frozenset(dag.vertices - contractible), tuple(new_edges)),
        groups,
        net.mode,
        ssp,
    )
    validate_network(reduced)
    return reduced


# ---------------------------------------------------------------------------
# AA-sequences


@dataclass(frozen=True)
class AaSequence:
    """Transcript of one alternating walk.

    ``visits`` lists (terminal vertex, station key) pairs, where the station
    key is ('merge', i, j) for a merging of group-0 path i with group-1 path j
    (1-based) or ('start', i) for a shared starting subpath.  ``terminus``
    names where the walk ended.
    """

    kind: str  # 'phi' | 'psi'
    start_index: int  # 1-based path index within its group
    visits: tuple[tuple[VertexId, tuple], ...]
    terminus: str  # 'R1' | 'S2' | 'R1-identical'

    @property
    def length(self) -> int:
        return len(self.visits)


def _two_group_stations(net: MergeNetwork):
    """Per-path ordered station lists plus the merging pair map.

    Raises MultiwayMerging unless every merging is by exactly one path from
    each group, which is what the alternating walks require.
    """
    if len(net.groups) != 2:
        raise InvalidNetwork("AA-walks are defined for two-group networks")
    mergings = find_mergings(net)
    pair_of: dict[int, tuple[int, int]] = {}
    for mi, m in enumerate(mergings):
        by_group: dict[int, list[int]] = {0: [], 1: []}
        for gi, pi in m.participants:
            by_group[gi].append(pi)
        if len(m.participants) != 2 or len(by_group[0]) != 1 or len(by_group[1]) != 1:
            raise MultiwayMerging(
                f"merging at edge {m.start_edge} is not by exactly one path per group"
            )
        pair_of[mi] = (by_group[0][0] + 1, by_group[1][0] + 1)
    # station = (first position, last position, merging index) on each path
    stations: dict[tuple[int, int], list[tuple[int, int, int]]] = {
        key: [] for key in net.path_index
    }
    for mi, m in enumerate(mergings):
        for gi, pi in m.participants:
            path = net.path_index[(gi, pi)]
            pos = {eid: k for k, eid in enumerate(path)}
            start = pos[m.start_edge]
            stations[(gi, pi)].append((start, start + len(m.run) - 1, mi))
    for lst in stations.values():
        lst.sort()
    return mergings, pair_of, stations


def _omega_station(net: MergeNetwork, pair_index: int) -> tuple[int, int] | None:
    """(last position on the paths, pair index) of the shared starting run, if any."""
    if net.starting_subpaths is None or pair_index >= len(net.starting_subpaths):
        return None
    omega = net.starting_subpaths[pair_index]
    return (len(omega) - 1, pair_index)


def _walk(net: MergeNetwork, kind: str, index: int) -> AaSequence:
    mergings, pair_of, stations = _two_group_stations(net)
    identical = net.mode == IDENTICAL
    if identical and kind == "phi":
        raise PhiWalkUnsupported("forward walks do not carry over to identical sources")
    by_id = net.dag.edge_by_id
    visits: list[tuple[VertexId, tuple]] = []
    seen_stations: set = set()

    def note(vertex: VertexId, key: tuple):
        if key in seen_stations:
            raise RerouteDetected(f"station {key} visited twice; input is reroutable")
        seen_stations.add(key)
        visits.append((vertex, key))

    if kind == "phi":
        gi, pi, from_pos = 0, index - 1, 0
        direction = "along"
    else:
        gi, pi = 1, index - 1
        from_pos = len(net.path_index[(1, pi)])
        direction = "against"

    while True:
        path = net.path_index[(gi, pi)]
        if direction == "along":
            # scan forward for the next merging run starting at or after from_pos
            nxt = [s for s in stations[(gi, pi)] if s[0] >= from_pos]
            if not nxt:
                terminus = "R1" if gi == 0 else "R2"
                if identical:
                    terminus = "R1-identical" if gi == 0 else terminus
                return AaSequence(kind, index, tuple(visits), terminus)
            start, last, mi = nxt[0]
            m = mergings[mi]
            note(m.head, ("merge",) + pair_of[mi])
            # switch: go against the other group's path through this merging
            other = 1 - gi
            (opi,) = [p for (g, p) in m.participants if g == other]
            opath = net.path_index[(other, opi)]
            opos = {eid: k for k, eid in enumerate(opath)}
            gi, pi = other, opi
            from_pos = opos[m.start_edge]
            direction = "against"
        else:
            # scan backward for the closest run ending strictly before from_pos
            prev = [s for s in stations[(gi, pi)] if s[1] < from_pos]
            omega = _omega_station(net, pi) if (identical and gi == 1) else None
            if omega is not None and omega[0] < from_pos:
                if not prev or prev[-1][1] < omega[0]:
                    last_pos, pair_index = omega
                    run = net.starting_subpaths[pair_index]
                    note(by_id[run[-1]].head, ("start", pair_index + 1))
                    gi, pi = 0, pair_index
                    from_pos = last_pos + 1
                    direction = "along"
                    continue
            if not prev:
                return AaSequence(kind, index, tuple(visits), "S2")
            start, last, mi = prev[-1]
            m = mergings[mi]
            note(m.tail, ("merge",) + pair_of[mi])
            other = 1 - gi
            (opi,) = [p for (g, p) in m.participants if g == other]
            opath = net.path_index[(other, opi)]
            opos = {eid: k for k, eid in enumerate(opath)}
            gi, pi = other, opi
            from_pos = opos[m.run[-1]] + 1
            direction = "along"


def phi_aa_sequence(net: MergeNetwork, i: int) -> AaSequence:
    """The walk that starts at S1 along group-0 path i (1-based)."""
    return _walk(net, "phi", i)


def psi_aa_sequence(net: MergeNetwork, j: int) -> AaSequence:
    """The walk that starts at R2 against group-1 path j (1-based)."""
    return _walk(net, "psi", j)


def all_aa_sequences(net: MergeNetwork) -> tuple[AaSequence, ...]:
    phi_count = net.groups[0].cut
    psi_count = net.groups[1].cut
    out = []
    if net.mode == DISTINCT:
        out.extend(phi_aa_sequence(net, i) for i in range(1, phi_count + 1))
    out.extend(psi_aa_sequence(net, j) for j in range(1, psi_count + 1))
    return tuple(out)


def aa_merging_identity(net: MergeNetwork) -> tuple[int, int, bool]:
    """Check |G|_M against half the summed walk lengths.

    Distinct sources: mergings == sum(lengths) / 2.  Identical source with n
    starting subpaths: mergings == (sum(lengths) - n) / 2.
    """
    walks = all_aa_sequences(net)
    total = sum(w.length for w in walks)
    lhs = count_mergings(net)
    if net.mode == IDENTICAL:
        n = len(net.starting_subpaths or ())
        rhs = (total - n) // 2 if (total - n) % 2 == 0 else -1
    else:
        rhs = total // 2 if total % 2 == 0 else -1
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------------
# Adjacent-pair block decomposition for (2, n) networks


@dataclass(frozen=True)
class BlockDecomposition:
    """The ordered adjacent-merging-pair structure of a (2, n) network.

    ``theta`` lists (lam, mu, type) triples of merging indices ordered by the
    precedence rule; mini blocks and medium blocks are index ranges into it.
    """

    theta: tuple[tuple[int, int, int], ...]
    mini_blocks: tuple[tuple[int, ...], ...]
    medium_blocks: tuple[tuple[int, ...], ...]
    x: int
    y: int
    z: int
    psi_paths_with_pairs: int
    mergings_in_pairs: int

    @property
    def sigma(self) -> frozenset:
        return frozenset((a, b) for a, b, _ in self.theta)


def block_decomposition(net: MergeNetwork) -> BlockDecomposition:
    """Compute Sigma/Theta, the mini/medium blocks, and the counts x, y, z."""
    if len(net.groups) != 2 or net.groups[0].cut != 2:
        raise NotTwoByN("block decomposition requires a (2, n) network")
    mergings, pair_of, stations = _two_group_stations(net)

    reach_cache: dict[VertexId, set] = {}

    def smaller(a: int, b: int) -> bool:
        # merging a smaller than merging b: directed path from t(a) to h(b)
        ta, hb = mergings[a].tail, mergings[b].head
        if ta == hb:
            return True
        if ta not in reach_cache:
            reach_cache[ta] = reachable_from(net.dag, ta, min_steps=1)
        return hb in reach_cache[ta]

    elements: list[tuple[int, int, int]] = []
    for pi in range(net.groups[1].cut):
        ordered = [mi for _, _, mi in stations[(1, pi)]]
        for lam, mu in zip(ordered, ordered[1:]):
            if pair_of[lam][0] == pair_of[mu][0]:
                raise DecompositionError(
                    "adjacent mergings on one psi-path share a phi-path"
                )
            elements.append((lam, mu, pair_of[lam][0]))

    def precedes(a, b) -> bool:
        la, mua, ta = a
        lb, mub, tb = b
        if ta == tb:
            return smaller(la, lb)
        return smaller(la, mub)

    for a, b in itertools.combinations(elements, 2):
        if precedes(a, b) == precedes(b, a):
            raise DecompositionError(
                "precedence is not a strict total order; "
                "input is outside the non-reroutable (2, n) contract"
            )
    theta = sorted(
        elements,
        key=lambda el: sum(1 for other in elements if other != el and precedes(other, el)),
    )

    # mini blocks: maximal same-type runs of theta
    minis: list[list[int]] = []
    for idx, el in enumerate(theta):
        if minis and theta[minis[-1][-1]][2] == el[2]:
            minis[-1].append(idx)
        else:
            minis.append([idx])

    def linked(a: list[int], b: list[int]) -> bool:
        # largest second component of a meets smallest first component of b
        mu_a = max((theta[i][1] for i in a), key=lambda m: sum(smaller(o, m) for o in range(len(mergings))))
        lam_b = min((theta[i][0] for i in b), key=lambda m: sum(smaller(o, m) for o in range(len(mergings))))
        return mu_a == lam_b

    mediums: list[list[int]] = []
    for mb_index, mini in enumerate(minis):
        if mediums and linked(minis[mb_index - 1], mini):
            mediums[-1].append(mb_index)
        else:
            mediums.append([mb_index])

    covered = {m for lam, mu, _ in elements for m in (lam, mu)}
    return BlockDecomposition(
        theta=tuple(theta),
        mini_blocks=tuple(tuple(m) for m in minis),
        medium_blocks=tuple(tuple(m) for m in mediums),
        x=len(elements),
        y=len(minis),
        z=len(mediums),
        psi_paths_with_pairs=sum(
            1 for pi in range(net.groups[1].cut) if len(stations[(1, pi)]) >= 2
        ),
        mergings_in_pairs=len(covered),
    )


def block_identities(net: MergeNetwork) -> dict:
    """Evaluate the count identities behind the 3n-1 bound on one network.

    The two equalities assume every psi-path carries at least two mergings
    (the setting in which the adjacent-pair structure covers every merging);
    ``assumption_met`` reports whether that held.
    """
    bd = block_decomposition(net)
    n = net.groups[1].cut
    total = count_mergings(net)
    assumption = bd.psi_paths_with_pairs == n
    return {
        "x": bd.x,
        "y": bd.y,
        "z": bd.z,
        "n": n,
        "mergings": total,
        "assumption_met": assumption,
        "n_identity": bd.x - (bd.y - bd.z) == n,
        "merging_identity": 2 * bd.x - (bd.y - bd.z) == total,
        "generalized_n_identity": bd.x - (bd.y - bd.z) == bd.psi_paths_with_pairs,
        "generalized_merging_identity": 2 * bd.x - (bd.y - bd.z) == bd.mergings_in_pairs,
        "x_bound": bd.x >= 2 * bd.y - bd.z,
        "extremal_bound": total <= 3 * n - 1,
    }
