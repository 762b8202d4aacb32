"""Encode/decode two-group networks as merging sequences; canonical keys."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InvalidNetwork, InvalidStroke, NotTwoGroup
from .network import DISTINCT, IDENTICAL, MergeNetwork, build_network


@dataclass(frozen=True)
class MergingSequence:
    """An ordered list of strokes (i, j), 1-based: extend path i of the first
    group to merge with path j of the second, past all earlier mergings."""

    m: int
    n: int
    strokes: tuple[tuple[int, int], ...]
    identical: bool = False

    def text(self) -> str:
        body = " ".join(f"({i},{j})" for i, j in self.strokes)
        head = f"{self.m} {self.n}"
        if self.identical:
            head += " *"
        return f"{head} : {body}".rstrip()

    @staticmethod
    def parse(line: str) -> "MergingSequence":
        head, _, body = line.partition(":")
        parts = head.split()
        identical = "*" in parts
        nums = [p for p in parts if p != "*"]
        if len(nums) != 2:
            raise ValueError(f"bad sequence header: {line!r}")
        m, n = int(nums[0]), int(nums[1])
        strokes = []
        for tok in body.split():
            tok = tok.strip("(),")
            a, _, b = tok.partition(",")
            strokes.append((int(a), int(b)))
        return MergingSequence(m, n, tuple(strokes), identical)


def _check_ranges(seq: MergingSequence) -> None:
    if seq.m < 1 or seq.n < 1:
        raise InvalidStroke(0, "path counts must be positive")
    if seq.identical and seq.m != seq.n:
        raise InvalidStroke(0, "identical-source sequences need m == n")
    for pos, (i, j) in enumerate(seq.strokes, start=1):
        if not (1 <= i <= seq.m and 1 <= j <= seq.n):
            raise InvalidStroke(pos, f"stroke ({i},{j}) out of range at position {pos}")


def decode(seq: MergingSequence) -> MergeNetwork:
    """Materialize the reduced network drawn by the stroke list.

    Every stroke adds one fresh merged edge, placed after all earlier
    mergings on both of its paths.  The result is covered and reduced, with
    one merging per stroke.
    """
    _check_ranges(seq)
    m, n = seq.m, seq.n
    vertices: list = []
    edges: list[tuple[int, object, object]] = []
    next_eid = itertools.count()

    def add_edge(tail, head) -> int:
        eid = next(next_eid)
        edges.append((eid, tail, head))
        return eid

    phi_paths: list[list[int]] = [[] for _ in range(m)]
    psi_paths: list[list[int]] = [[] for _ in range(n)]
    starting = None

    if seq.identical:
        vertices += ["S", "R1", "R2"]
        phi_at: list = []
        psi_at: list = []
        starting = []
        for i in range(n):
            w = f"w{i + 1}"
            vertices.append(w)
            eid = add_edge("S", w)
            phi_paths[i].append(eid)
            psi_paths[i].append(eid)
            starting.append((eid,))
            phi_at.append(w)
            psi_at.append(w)
    else:
        vertices += ["S1", "S2", "R1", "R2"]
        phi_at = ["S1"] * m
        psi_at = ["S2"] * n

    for k, (i, j) in enumerate(seq.strokes, start=1):
        h, t = f"h{k}", f"t{k}"
        vertices += [h, t]
        phi_paths[i - 1].append(add_edge(phi_at[i - 1], h))
        psi_paths[j - 1].append(add_edge(psi_at[j - 1], h))
        run = add_edge(h, t)
        phi_paths[i - 1].append(run)
        psi_paths[j - 1].append(run)
        phi_at[i - 1] = t
        psi_at[j - 1] = t

    for i in range(m):
        phi_paths[i].append(add_edge(phi_at[i], "R1"))
    for j in range(n):
        psi_paths[j].append(add_edge(psi_at[j], "R2"))

    if seq.identical:
        groups = [("S", "R1", phi_paths), ("S", "R2", psi_paths)]
        return build_network(vertices, edges, groups, IDENTICAL, starting)
    groups = [("S1", "R1", phi_paths), ("S2", "R2", psi_paths)]
    return build_network(vertices, edges, groups, DISTINCT)


def _pair_table(net: MergeNetwork):
    """Per-path ordered stroke pairs of a two-group network's mergings."""
    from .analysis import _two_group_stations

    if len(net.groups) != 2:
        raise NotTwoGroup("merging sequences describe two-group networks")
    mergings, pair_of, stations = _two_group_stations(net)
    phi_chains = [
        [mi for _, _, mi in stations[(0, pi)]] for pi in range(net.groups[0].cut)
    ]
    psi_chains = [
        [mi for _, _, mi in stations[(1, pi)]] for pi in range(net.groups[1].cut)
    ]
    return pair_of, phi_chains, psi_chains


def _kahn_strokes(pair_of, phi_chains, psi_chains, phi_relabel=None, psi_relabel=None):
    """Emit mergings in topological order with (i, j) tie-breaking."""
    total = len(pair_of)
    pred_count = {mi: 0 for mi in pair_of}
    succs: dict[int, list[int]] = {mi: [] for mi in pair_of}
    for chain in itertools.chain(phi_chains, psi_chains):
        for a, b in zip(chain, chain[1:]):
            succs[a].append(b)
            pred_count[b] += 1

    def label(mi: int) -> tuple[int, int]:
        i, j = pair_of[mi]
        if phi_relabel:
            i = phi_relabel[i]
        if psi_relabel:
            j = psi_relabel[j]
        return (i, j)

    ready = {mi for mi, c in pred_count.items() if c == 0}
    out: list[tuple[int, int]] = []
    while ready:
        mi = min(ready, key=lambda k: (label(k), k))
        ready.remove(mi)
        out.append(label(mi))
        for nxt in succs[mi]:
            pred_count[nxt] -= 1
            if pred_count[nxt] == 0:
                ready.add(nxt)
    if len(out) != total:
        raise InvalidNetwork("merging order contains a cycle")
    return tuple(out)


def encode(net: MergeNetwork) -> MergingSequence:
    """The canonical stroke list: topological order of mergings, ties by (i, j)."""
    pair_of, phi_chains, psi_chains = _pair_table(net)
    strokes = _kahn_strokes(pair_of, phi_chains, psi_chains)
    return MergingSequence(
        net.groups[0].cut,
        net.groups[1].cut,
        strokes,
        identical=net.mode == IDENTICAL,
    )


def validate(
    seq: MergingSequence, against: MergeNetwork | MergingSequence | None = None
) -> None:
    """Raise InvalidStroke when the stroke list is not a valid description.

    Standalone, checks index ranges (any in-range list draws some network).
    With ``against``, checks that the list describes that specific network:
    the strokes touching each second-group path must appear in the order of
    their mergings along it; the first stroke placed below an already-placed
    merging is reported.
    """
    _check_ranges(seq)
    if against is None:
        return
    ref = encode(against) if isinstance(against, MergeNetwork) else against
    if seq.m != ref.m or seq.n != ref.n:
        raise InvalidStroke(0, "path counts differ from the reference graph")
    if sorted(seq.strokes) != sorted(ref.strokes):
        raise InvalidStroke(0, "stroke multiset differs from the reference graph")
    ref_net = against if isinstance(against, MergeNetwork) else decode(against)
    pair_of, phi_chains, psi_chains = _pair_table(ref_net)
    for chains, side in ((psi_chains, 1), (phi_chains, 0)):
        for chain_index, chain in enumerate(chains, start=1):
            ref_order = [pair_of[mi] for mi in chain]
            positions = [
                pos
                for pos, stroke in enumerate(seq.strokes, start=1)
                if stroke[side] == chain_index
            ]
            # greedy matching of candidate strokes to the reference order
            remaining = list(enumerate(ref_order))
            assigned: list[tuple[int, int]] = []  # (position, ref index)
            for pos in positions:
                stroke = seq.strokes[pos - 1]
                hit = next((k for k, (_, p) in enumerate(remaining) if p == stroke), None)
                if hit is None:
                    raise InvalidStroke(pos)
                assigned.append((pos, remaining[hit][0]))
                del remaining[hit]
            high = -1
            for pos, ref_index in assigned:
                if ref_index < high:
                    raise InvalidStroke(
                        pos,
                        f"stroke at position {pos} places a merging below an "
                        f"already-placed one on path {chain_index}",
                    )
                high = max(high, ref_index)


def canonical_key(net: MergeNetwork) -> str:
    """Minimum encoded sequence over path relabelings; equal keys mean the
    networks are isomorphic with sources and sinks held fixed.

    Distinct sources: all m! x n! relabelings.  Identical source: the n!
    pair relabelings (each shared starting subpath ties phi_i to psi_i).
    """
    pair_of, phi_chains, psi_chains = _pair_table(net)
    m, n = net.groups[0].cut, net.groups[1].cut
    best = None
    if net.mode == IDENTICAL:
        perms = (
            (dict(zip(range(1, n + 1), p)), dict(zip(range(1, n + 1), p)))
            for p in itertools.permutations(range(1, n + 1))
        )
    else:
        perms = (
            (dict(zip(range(1, m + 1), pp)), dict(zip(range(1, n + 1), qq)))
            for pp in itertools.permutations(range(1, m + 1))
            for qq in itertools.permutations(range(1, n + 1))
        )
    for phi_map, psi_map in perms:
        strokes = _kahn_strokes(pair_of, phi_chains, psi_chains, phi_map, psi_map)
        if best is None or strokes < best:
            best = strokes
    mode_tag = "*" if net.mode == IDENTICAL else "-"
    body = ";".join(f"{i},{j}" for i, j in (best or ()))
    return f"{m}x{n}{mode_tag}:{body}"
