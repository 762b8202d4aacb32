"""Shared generators for randomized tests."""

from __future__ import annotations

import random

from mergenet.codec import MergingSequence, decode
from mergenet.errors import InvalidNetwork
from mergenet.families import _attach_unit_path
from mergenet.network import MergeNetwork, build_network
from mergenet.search import _private_slots


def random_sequence(rng: random.Random, max_mn: int = 3, max_len: int = 4) -> MergingSequence:
    m = rng.randint(1, max_mn)
    n = rng.randint(1, max_mn)
    identical = m == n and n >= 2 and rng.random() < 0.3
    length = rng.randint(0, max_len)
    strokes = []
    for _ in range(length):
        if identical:
            strokes.append((rng.randint(1, m - 1), rng.randint(2, n)))
        else:
            strokes.append((rng.randint(1, m), rng.randint(1, n)))
    return MergingSequence(m, n, tuple(strokes), identical)


def subdivide_random_edge(net: MergeNetwork, rng: random.Random) -> MergeNetwork:
    target = rng.choice(sorted(net.dag.edge_by_id))
    e = net.dag.edge_by_id[target]
    new_eid = max(net.dag.edge_by_id) + 1
    mid = f"sub{new_eid}"
    edges = [
        (x.eid, x.tail, mid if x.eid == target else x.head) for x in net.dag.edges
    ]
    edges.append((new_eid, mid, e.head))

    def stretch(path):
        out = []
        for eid in path:
            out.append(eid)
            if eid == target:
                out.append(new_eid)
        return out

    specs = [
        (g.source, g.sink, [stretch(p) for p in g.paths]) for g in net.groups
    ]
    ssp = None
    if net.starting_subpaths is not None:
        ssp = [stretch(w) for w in net.starting_subpaths]
    return build_network(
        set(net.dag.vertices) | {mid}, edges, specs, net.mode, ssp
    )


def random_covered_network(rng: random.Random, max_edges: int = 14) -> MergeNetwork:
    """Random small instance of the covered-network universe.

    Mixes two-group decode outputs (both source modes), attached unit paths,
    and occasional edge subdivisions, resampling until within the edge cap.
    """
    while True:
        net = decode(random_sequence(rng))
        if net.mode == "distinct" and rng.random() < 0.5:
            paths = [(gi, pi) for gi in range(2) for pi in range(net.groups[gi].cut)]
            rng.shuffle(paths)
            merges = []
            for gi, pi in paths[: rng.randint(1, 2)]:
                merges.append((gi, pi, rng.choice(_private_slots(net, gi, pi))))
            try:
                net = _attach_unit_path(net, merges)
            except InvalidNetwork:
                pass
        if rng.random() < 0.3:
            net = subdivide_random_edge(net, rng)
        if len(net.dag.edges) <= max_edges:
            return net
