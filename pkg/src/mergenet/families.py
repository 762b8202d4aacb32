"""Generators for the extremal families, figure fixtures, and concatenations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .analysis import reduce_network
from .codec import MergingSequence, decode, encode
from .core import has_cycle
from .errors import (
    IncompatibleInterface,
    InvalidNetwork,
    MismatchedN,
    NonMonotoneCuts,
    ParamTooSmall,
    UnknownFixture,
)
from .network import (
    DISTINCT,
    IDENTICAL,
    MergeNetwork,
    build_network,
    swap_groups,
    validate_network,
)


def _parity(x: int) -> int:
    """1 for odd, 2 for even."""
    return 1 if x % 2 == 1 else 2


def _lsr(x: int, n: int) -> int:
    """Least strictly positive residue of x modulo n."""
    r = x % n
    return r if r else n


# ---------------------------------------------------------------------------
# Stroke formulas


def two_n_sequence(n: int) -> MergingSequence:
    """The (2, n) family achieving 3n-1 mergings."""
    if n < 1:
        raise ParamTooSmall("n must be >= 1")
    strokes: dict[int, tuple[int, int]] = {}
    for i in range(1, n + 1):
        strokes[3 * i - 2] = (_parity(i), 1)
    for i in range(1, n):
        strokes[3 * i - 1] = (_parity(i), i + 1)
        strokes[3 * i] = (_parity(i + 1), i + 1)
    strokes[3 * n - 1] = (_parity(n + 1), 1)
    return MergingSequence(2, n, tuple(strokes[k] for k in range(1, 3 * n)))


def e_sequence(n: int) -> MergingSequence:
    """Identical-source (n, n) family with (n-1)^2 mergings, 1-based strokes."""
    if n < 1:
        raise ParamTooSmall("n must be >= 1")
    strokes: dict[int, tuple[int, int]] = {}
    for i in range(0, n - 1):
        for j in range(1, n - i):
            strokes[i * (2 * n - i - 2) + j] = (i + 1, j + 1)
    for i in range(0, n - 2):
        for j in range(1, n - i - 1):
            strokes[i * (2 * n - i - 3) + (n - 1) + j] = (n - j, n - i)
    order = tuple(strokes[k] for k in range(1, (n - 1) ** 2 + 1))
    return MergingSequence(n, n, order, identical=True)


def f_sequence(n: int) -> MergingSequence:
    """Distinct-source (n, n) family with 2n^2-3n+2 mergings."""
    if n < 1:
        raise ParamTooSmall("n must be >= 1")
    strokes: dict[int, tuple[int, int]] = {}
    for i in range(0, n):
        for j in range(1, n):
            strokes[2 * i * (n - 1) + j] = (_lsr(j - i, n), i + 1)
    strokes[2 * (n - 1) * (n - 1) + n] = (_lsr(1, n), n)
    for i in range(0, n - 1):
        for j in range(1, n):
            strokes[(2 * i + 1) * (n - 1) + j] = (n - i, _lsr(i - j + 2, n))
    length = 2 * n * n - 3 * n + 2
    return MergingSequence(n, n, tuple(strokes[k] for k in range(1, length + 1)))


def h_sequence(k: int) -> MergingSequence:
    """(1, k) path merging every second-group path once."""
    if k < 1:
        raise ParamTooSmall("k must be >= 1")
    return MergingSequence(1, k, tuple((1, j) for j in range(1, k + 1)))


def one_two_n_base_sequence(n: int) -> MergingSequence:
    """The modified (2, n) base used under the added path, n >= 4."""
    strokes: dict[int, tuple[int, int]] = {
        1: (2, 1), 2: (1, 1), 3: (1, 2), 4: (2, 2), 5: (1, 3), 6: (2, 3), 7: (2, 1),
    }
    for i in range(3, n + 1):
        strokes[3 * i - 1] = (_parity(i), 1)
    for i in range(3, n):
        strokes[3 * i] = (_parity(i), i + 1)
        strokes[3 * i + 1] = (_parity(i + 1), i + 1)
    return MergingSequence(2, n, tuple(strokes[k] for k in range(1, 3 * n)))


def gen_two_n_extremal(n: int) -> MergeNetwork:
    return decode(two_n_sequence(n))


def gen_e(n: int) -> MergeNetwork:
    return decode(e_sequence(n))


def gen_f(n: int) -> MergeNetwork:
    return decode(f_sequence(n))


def gen_h(k: int) -> MergeNetwork:
    return decode(h_sequence(k))


# ---------------------------------------------------------------------------
# Station builder: paths described as sequences of two-path merging points


def build_station_network(group_specs) -> MergeNetwork:
    """Materialize a network from station lists.

    ``group_specs`` is a list of lists of paths; each path is a sequence of
    station names, and every station must appear on exactly two paths.  Each
    station becomes one shared edge; group g gets source S{g+1}, sink R{g+1}.
    """
    owners: dict[object, list[tuple[int, int]]] = {}
    for gi, paths in enumerate(group_specs):
        for pi, stations in enumerate(paths):
            for s in stations:
                owners.setdefault(s, []).append((gi, pi))
    for s, who in owners.items():
        if len(who) != 2:
            raise ValueError(f"station {s!r} must lie on exactly two paths")

    vertices: list = []
    edges: list[tuple[int, object, object]] = []
    eids = itertools.count()

    def add_edge(tail, head) -> int:
        eid = next(eids)
        edges.append((eid, tail, head))
        return eid

    run_edge: dict[object, int] = {}
    for s in owners:
        h, t = f"h_{s}", f"t_{s}"
        vertices += [h, t]
        run_edge[s] = add_edge(h, t)

    group_paths: list[list[list[int]]] = []
    for gi, paths in enumerate(group_specs):
        src, snk = f"S{gi + 1}", f"R{gi + 1}"
        vertices += [src, snk]
        built = []
        for stations in paths:
            at = src
            path: list[int] = []
            for s in stations:
                path.append(add_edge(at, f"h_{s}"))
                path.append(run_edge[s])
                at = f"t_{s}"
            path.append(add_edge(at, snk))
            built.append(path)
        group_paths.append(built)

    specs = [
        (f"S{gi + 1}", f"R{gi + 1}", paths) for gi, paths in enumerate(group_paths)
    ]
    return build_network(vertices, edges, specs, DISTINCT)


def gen_ones_two_chain(k: int) -> MergeNetwork:
    """k unit paths laddering across a 2-cut pair: 3k-1 mergings."""
    if k < 1:
        raise ParamTooSmall("k must be >= 1")
    lam = lambda i, j: f"lam{i}_{j}"
    mu = lambda i: f"mu{i}"
    betas = []
    for i in range(1, k + 1):
        stations = []
        if i > 1:
            stations.append(mu(i - 1))
        stations += [lam(i, 1), lam(i, 2)]
        if i < k:
            stations.append(mu(i))
        betas.append(stations)
    psi1 = [lam(i, 1) for i in range(1, k + 1)]
    psi2 = [lam(i, 2) for i in range(1, k + 1)]
    return build_station_network([[b] for b in betas] + [[psi1, psi2]])


def gen_ones_two_grid(k: int) -> MergeNetwork:
    """k unit paths in a two-banded grid: floor(k^2/4)+k+2 mergings.

    At k = 1 the construction forces a repeated pairing and the output is
    reroutable (no non-reroutable (1, 2)-graph can carry 3 mergings).
    """
    if k < 1:
        raise ParamTooSmall("k must be >= 1")
    c = (k + 1) // 2
    lam11, lamk2 = "lamA", "lamZ"
    lam1 = {j: f"lam1_{j}" for j in range(c + 1, k + 1)}
    lam2 = {i: f"lam2_{i}" for i in range(1, c + 1)}
    mu = {(i, j): f"mu{i}_{j}" for i in range(1, c + 1) for j in range(c + 1, k + 1)}
    betas = []
    for i in range(1, c + 1):
        stations = []
        if i == 1:
            stations.append(lam11)
        stations.append(lam2[i])
        stations += [mu[(i, j)] for j in range(c + 1, k + 1)]
        if i == k:
            stations.append(lamk2)
        betas.append(stations)
    for j in range(c + 1, k + 1):
        stations = [mu[(i, j)] for i in range(1, c + 1)]
        stations.append(lam1[j])
        if j == k:
            stations.append(lamk2)
        betas.append(stations)
    psi1 = [lam11] + [lam1[j] for j in range(c + 1, k + 1)]
    psi2 = [lam2[i] for i in range(1, c + 1)] + [lamk2]
    return build_station_network([[b] for b in betas] + [[psi1, psi2]])


def gen_ones_n(k: int, n: int) -> MergeNetwork:
    """k unit paths against an n-cut group: nk + floor(k^2/4) mergings."""
    if k < 1 or n < 1:
        raise ParamTooSmall("k and n must be >= 1")
    half_up = (k + 1) // 2
    k1 = (half_up + 1) // 2
    k2 = k // 2
    lam = lambda i, j: f"lam{i}_{j}"
    mu = lambda i, j: f"mu{i}_{j}"
    b2 = range(k1 + 1, k1 + k2 + 1)
    betas = []
    for i in range(1, k + 1):
        rows = [lam(i, j) for j in range(1, n + 1)]
        if i <= k1:
            stations = rows + [mu(i, j) for j in b2]
        elif i <= k1 + k2:
            stations = (
                [mu(a, i) for a in range(1, k1 + 1)]
                + rows
                + [mu(a, i) for a in range(k1 + k2 + 1, k + 1)]
            )
        else:
            stations = [mu(i, j) for j in b2] + rows
        betas.append(stations)
    psis = [[lam(i, j) for i in range(1, k + 1)] for j in range(1, n + 1)]
    return build_station_network([[b] for b in betas] + [psis])


def gen_one_two_n(n: int) -> MergeNetwork:
    """A unit path over a modified (2, n) base: 4n+1 mergings, n >= 4."""
    if n < 4:
        raise ParamTooSmall("the parametric construction needs n >= 4")
    base = one_two_n_base_sequence(n)
    phi_stations: list[list[str]] = [[] for _ in range(2)]
    psi_stations: list[list[str]] = [[] for _ in range(n)]
    for k, (i, j) in enumerate(base.strokes, start=1):
        phi_stations[i - 1].append(f"g{k}")
        psi_stations[j - 1].append(f"g{k}")
    beta = [f"mu{j}" for j in range(1, n + 1)] + ["lamA", "lamB"]
    xi = [["lamA"] + phi_stations[0], ["lamB"] + phi_stations[1]]
    eta = [[f"mu{j}"] + psi_stations[j - 1] for j in range(1, n + 1)]
    return build_station_network([[beta], xi, eta])


# ---------------------------------------------------------------------------
# Concatenations


def concat_f_g(f_net: MergeNetwork, g_net: MergeNetwork) -> MergeNetwork:
    """Splice a (n, n) block onto a (k, n) network through one shared merging.

    The block's final merging (its first-group path 1 against second-group
    path n) is identified with the first merging of ``g_net``; the result is
    a (k+n-1, n) network with |f|+|g|-1 mergings.
    """
    f_seq = encode(reduce_network(f_net))
    g_seq = encode(reduce_network(g_net))
    if f_seq.identical or g_seq.identical:
        raise IncompatibleInterface("both inputs must have distinct sources")
    if f_seq.m != f_seq.n:
        raise IncompatibleInterface("first input must be an (n, n) network")
    n, k = f_seq.n, g_seq.m
    if g_seq.n != n:
        raise MismatchedN(f"second input must have {n} second-group paths")
    if not g_seq.strokes:
        raise IncompatibleInterface("second input has no merging to splice at")
    # the block must end on the pair (1, n): last on its path 1 and on rail n
    phi1 = [s for s in f_seq.strokes if s[0] == 1]
    rail_n = [s for s in f_seq.strokes if s[1] == n]
    if not phi1 or phi1[-1] != (1, n) or not rail_n or rail_n[-1] != (1, n):
        raise IncompatibleInterface("first input does not end on the (1, n) merging")
    a, b = g_seq.strokes[0]
    phi_map = {a: 1}
    nxt = itertools.count(n + 1)
    for i in range(1, k + 1):
        if i != a:
            phi_map[i] = next(nxt)
    psi_map = {b: n}
    nxt = itertools.count(1)
    for j in range(1, n + 1):
        if j != b:
            psi_map[j] = next(nxt)
    tail = tuple((phi_map[i], psi_map[j]) for i, j in g_seq.strokes[1:])
    return decode(MergingSequence(k + n - 1, n, f_seq.strokes + tail))


def gen_mn_lower(m: int, n: int) -> MergeNetwork:
    """Iterated splice realizing 2mn-m-n+1 mergings, 1 <= m <= n."""
    if not 1 <= m <= n:
        raise ParamTooSmall("need 1 <= m <= n")
    if m == 1:
        return gen_h(n)
    if m == n:
        g = gen_h(m)
    else:
        a, b = n - m + 1, m
        g = gen_mn_lower(min(a, b), max(a, b))
        if g.groups[0].cut != a:
            g = swap_groups(g)
    spliced = concat_f_g(gen_f(m), g)
    return spliced if spliced.groups[0].cut == m else swap_groups(spliced)


def _namespaced(net: MergeNetwork, tag: str, eid_base: int):
    """Copies of vertices/edges with fresh names; path lists re-written."""
    vmap = {v: f"{tag}:{v}" for v in net.dag.vertices}
    emap = {e.eid: eid_base + i for i, e in enumerate(net.dag.edges)}
    edges = [(emap[e.eid], vmap[e.tail], vmap[e.head]) for e in net.dag.edges]
    groups = [
        (
            vmap[g.source],
            vmap[g.sink],
            [[emap[eid] for eid in p] for p in g.paths],
        )
        for g in net.groups
    ]
    ssp = None
    if net.starting_subpaths is not None:
        ssp = [[emap[eid] for eid in w] for w in net.starting_subpaths]
    return vmap, emap, edges, groups, ssp


def _require_paired_identical(net: MergeNetwork, label: str) -> int:
    if (
        net.mode != IDENTICAL
        or len(net.groups) != 2
        or net.groups[0].cut != net.groups[1].cut
        or net.starting_subpaths is None
        or len(net.starting_subpaths) != net.groups[0].cut
    ):
        raise MismatchedN(
            f"{label} must be an identical-source (n, n) network with n starting subpaths"
        )
    return net.groups[0].cut


def _reverse_edges(edges):
    return [(eid, head, tail) for eid, tail, head in edges]


def _first_edge_pairs(ssp) -> dict[int, int]:
    """Map each starting subpath's first edge id to its pair index."""
    return {w[0]: i for i, w in enumerate(ssp) if w}


def concat_back_to_back(g1: MergeNetwork, g2: MergeNetwork) -> MergeNetwork:
    """Reverse the second network and glue the shared sources pairwise.

    Output: a distinct-source (n, n) network with |g1|+|g2|+n mergings (each
    fused pair of starting subpaths becomes one new merging).
    """
    n = _require_paired_identical(g1, "first input")
    if _require_paired_identical(g2, "second input") != n:
        raise MismatchedN("inputs must have the same number of path pairs")
    _, _, e1, gr1, ssp1 = _namespaced(g1, "a", 0)
    _, _, e2, gr2, ssp2 = _namespaced(g2, "b", len(e1))
    e2 = _reverse_edges(e2)

    # split both sources pairwise at the starting-subpath boundary and fuse
    first1 = _first_edge_pairs(ssp1)
    first2 = _first_edge_pairs(ssp2)
    e1 = [(eid, f"J{first1[eid]}" if eid in first1 else t, h) for eid, t, h in e1]
    e2 = [(eid, t, f"J{first2[eid]}" if eid in first2 else h) for eid, t, h in e2]

    phi_paths = [list(reversed(gr2[0][2][i])) + gr1[0][2][i] for i in range(n)]
    psi_paths = [list(reversed(gr2[1][2][i])) + gr1[1][2][i] for i in range(n)]
    vertices = {v for _, t, h in e1 + e2 for v in (t, h)}
    specs = [
        (gr2[0][1], gr1[0][1], phi_paths),  # reversed sinks become the sources
        (gr2[1][1], gr1[1][1], psi_paths),
    ]
    return build_network(vertices, e1 + e2, specs, DISTINCT)


def concat_shifted(g1: MergeNetwork, g2: MergeNetwork) -> MergeNetwork:
    """Glue an (n+1, n+1) block and a reversed (n-1, n-1) block into (n, n).

    The first block's straight-through pair loses its two private tails; the
    result has |g1|+|g2|+(n-1) mergings.
    """
    big = _require_paired_identical(g1, "first input")
    small = _require_paired_identical(g2, "second input")
    if big != small + 2 or small < 1:
        raise MismatchedN("need an (n+1, n+1) block and an (n-1, n-1) block")
    n = big - 1
    from .analysis import find_mergings

    used = {gp for m in find_mergings(g1) for gp in m.participants}
    if (0, big - 1) in used or (1, 0) in used:
        raise IncompatibleInterface(
            "first input must keep its last first-group path and first "
            "second-group path merging-free"
        )

    _, _, e1, gr1, ssp1 = _namespaced(g1, "a", 0)
    _, _, e2, gr2, ssp2 = _namespaced(g2, "b", len(e1))
    e2 = _reverse_edges(e2)

    # drop the private tails of g1's straight-through paths
    omega_last = set(ssp1[big - 1])
    omega_first = set(ssp1[0])
    drop = (set(gr1[0][2][big - 1]) - omega_last) | (set(gr1[1][2][0]) - omega_first)
    e1 = [e for e in e1 if e[0] not in drop]

    # split g1's source into per-pair copies A0..A{big-1}; route g2's reversed
    # pair boundaries into the middle copies and its reversed sinks onto the ends
    remap1 = {ssp1[i][0]: f"A{i}" for i in range(big)}
    e1 = [(eid, remap1.get(eid, t), h) for eid, t, h in e1]
    remap2 = {ssp2[i][0]: f"A{i + 1}" for i in range(small)}
    e2 = [(eid, t, remap2.get(eid, h)) for eid, t, h in e2]
    glue = {gr2[0][1]: "A0", gr2[1][1]: f"A{big - 1}"}
    e2 = [(eid, glue.get(t, t), glue.get(h, h)) for eid, t, h in e2]

    phi_paths = [gr1[0][2][0]] + [
        list(reversed(gr2[0][2][i])) + gr1[0][2][i + 1] for i in range(small)
    ]
    psi_paths = [
        list(reversed(gr2[1][2][i])) + gr1[1][2][i + 1] for i in range(small)
    ] + [gr1[1][2][big - 1]]
    src_phi, src_psi = "A0", f"A{big - 1}"
    vertices = {v for _, t, h in e1 + e2 for v in (t, h)}
    specs = [
        (src_phi, gr1[0][1], phi_paths),
        (src_psi, gr1[1][1], psi_paths),
    ]
    return build_network(vertices, e1 + e2, specs, DISTINCT)


def concat_chain(parts: list[MergeNetwork]) -> MergeNetwork:
    """Chain identical-source blocks into one multi-group network.

    Part j must be an identical-source (n_j, N) network whose first n_j path
    pairs share starting subpaths, with n_1 <= ... <= n_{k-1} <= N; merging
    counts add up with no interface cost.
    """
    if not parts:
        raise MismatchedN("need at least one part")
    if len(parts) == 1:
        return parts[0]
    cuts = []
    for part in parts:
        if part.mode != IDENTICAL or len(part.groups) != 2 or part.starting_subpaths is None:
            raise MismatchedN("every part must be identical-source with starting subpaths")
        if len(part.starting_subpaths) != part.groups[0].cut:
            raise MismatchedN("every first-group path needs a starting subpath")
        cuts.append((part.groups[0].cut, part.groups[1].cut))
    big = cuts[0][1]
    seq = [c[0] for c in cuts] + [big]
    if any(c[1] != big for c in cuts) or any(a > b for a, b in zip(seq, seq[1:])):
        raise NonMonotoneCuts(f"cut profile {seq} is not non-decreasing")

    pieces = []
    base = 0
    for idx, part in enumerate(parts):
        piece = _namespaced(part, f"p{idx}", base)
        base += len(piece[2])
        pieces.append(piece)

    all_edges: list[tuple[int, object, object]] = []
    for idx, (_, _, edges, groups, _ssp) in enumerate(pieces):
        if idx > 0:
            # split this part's source into one copy per incoming junction
            starts = {}
            for pi, path in enumerate(groups[0][2]):
                starts[path[0]] = pi
            for pi, path in enumerate(groups[1][2]):
                starts.setdefault(path[0], pi)
            edges = [
                (eid, f"K{idx}_{starts[eid]}" if eid in starts else t, h)
                for eid, t, h in edges
            ]
        if idx < len(parts) - 1:
            # split this part's second-group sink into per-path junctions
            last = {path[-1]: pi for pi, path in enumerate(groups[1][2])}
            edges = [
                (eid, t, f"K{idx + 1}_{last[eid]}" if eid in last else h)
                for eid, t, h in edges
            ]
        all_edges.extend(edges)

    source = pieces[0][3][0][0]  # part 0 keeps its shared source
    group_specs = []
    for j, part in enumerate(parts):
        paths = []
        for i in range(cuts[j][0]):
            acc: list[int] = []
            for r in range(j):
                acc += pieces[r][3][1][2][i]
            acc += pieces[j][3][0][2][i]
            paths.append(acc)
        group_specs.append((source, pieces[j][3][0][1], paths))
    final_paths = []
    for i in range(big):
        acc = []
        for r in range(len(parts)):
            acc += pieces[r][3][1][2][i]
        final_paths.append(acc)
    group_specs.append((source, pieces[-1][3][1][1], final_paths))

    vertices = {v for _, t, h in all_edges for v in (t, h)}
    return build_network(vertices, all_edges, group_specs, IDENTICAL)


def gen_e_padded(n: int, total: int) -> MergeNetwork:
    """E(n, n) with extra straight second-group paths, an (n, total) chain part."""
    if total < n:
        raise ParamTooSmall("total must be >= n")
    net = gen_e(n)
    if total == n:
        return net
    eid = max(e.eid for e in net.dag.edges) + 1
    edges = [(e.eid, e.tail, e.head) for e in net.dag.edges]
    psi_paths = [list(p) for p in net.groups[1].paths]
    for extra in range(total - n):
        edges.append((eid + extra, "S", "R2"))
        psi_paths.append([eid + extra])
    specs = [
        (net.groups[0].source, net.groups[0].sink, [list(p) for p in net.groups[0].paths]),
        (net.groups[1].source, net.groups[1].sink, psi_paths),
    ]
    return build_network(
        net.dag.vertices, edges, specs, IDENTICAL, net.starting_subpaths
    )


# ---------------------------------------------------------------------------
# Figure fixtures


def _butterfly() -> MergeNetwork:
    vertices = ["S", "A", "B", "C", "D", "R1", "R2"]
    edges = [
        (0, "S", "A"), (1, "S", "B"), (2, "A", "R1"), (3, "A", "C"),
        (4, "B", "C"), (5, "B", "R2"), (6, "C", "D"), (7, "D", "R1"), (8, "D", "R2"),
    ]
    groups = [
        ("S", "R1", [[0, 2], [1, 4, 6, 7]]),
        ("S", "R2", [[0, 3, 6, 8], [1, 5]]),
    ]
    return build_network(vertices, edges, groups, IDENTICAL, [(0,), (1,)])


def _butterfly_two_way() -> MergeNetwork:
    vertices = ["S1", "S2", "A", "B", "R1", "R2"]
    edges = [(0, "S1", "A"), (1, "S2", "A"), (2, "A", "B"), (3, "B", "R1"), (4, "B", "R2")]
    groups = [("S1", "R1", [[0, 2, 3]]), ("S2", "R2", [[1, 2, 4]])]
    return build_network(vertices, edges, groups, DISTINCT)


def _two_unicast() -> MergeNetwork:
    vertices = ["S1", "S2", "A", "B", "C", "D", "E", "F", "R1", "R2"]
    edges = [
        (0, "S1", "A"), (1, "A", "B"), (2, "B", "E"), (3, "E", "F"), (4, "F", "C"),
        (5, "C", "D"), (6, "D", "R1"), (7, "S2", "A"), (8, "B", "C"), (9, "D", "R2"),
        (10, "S2", "E"), (11, "F", "R2"),
    ]
    groups = [
        ("S1", "R1", [[0, 1, 2, 3, 4, 5, 6]]),
        ("S2", "R2", [[7, 1, 8, 5, 9], [10, 3, 11]]),
    ]
    return build_network(vertices, edges, groups, DISTINCT)


def _picgv() -> MergeNetwork:
    vertices = ["S1", "S2", "R1", "R2"] + [f"{x}{i}" for i in range(1, 5) for x in "ht"]
    edges = [
        (0, "h1", "t1"), (1, "h2", "t2"), (2, "h3", "t3"), (3, "h4", "t4"),
        (4, "S1", "h1"), (5, "t1", "h4"), (6, "t4", "R1"),
        (7, "S1", "h3"), (8, "t3", "h2"), (9, "t2", "R1"),
        (10, "S2", "h1"), (11, "t1", "h2"), (12, "t2", "R2"),
        (13, "S2", "h3"), (14, "t3", "h4"), (15, "t4", "R2"),
    ]
    groups = [
        ("S1", "R1", [[4, 0, 5, 3, 6], [7, 2, 8, 1, 9]]),
        ("S2", "R2", [[10, 0, 11, 1, 12], [13, 2, 14, 3, 15]]),
    ]
    return build_network(vertices, edges, groups, DISTINCT)


def _two_five_example() -> MergeNetwork:
    seq = MergingSequence(
        2, 5,
        ((1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (1, 3), (1, 2), (1, 4), (1, 5), (2, 5), (2, 4)),
    )
    return decode(seq)


def _aa_example_distinct() -> MergeNetwork:
    return decode(MergingSequence(2, 2, ((1, 1), (2, 1), (2, 2), (1, 2), (1, 1))))


def _aa_example_identical() -> MergeNetwork:
    return decode(MergingSequence(3, 3, ((1, 2), (1, 3), (2, 3), (2, 2)), identical=True))


def _one_two_two_extremal() -> MergeNetwork:
    # frozen from the exhaustive (2,2)+path search; 8 mergings, non-reroutable
    base = decode(two_n_sequence(2))
    return _attach_unit_path(base, [(0, 0, 0), (0, 1, 0), (1, 0, 0)])


def _one_two_three_extremal() -> MergeNetwork:
    # frozen from the exhaustive (2,3)+path search; 12 mergings, non-reroutable
    base = decode(two_n_sequence(3))
    return _attach_unit_path(base, [(0, 1, 8), (1, 1, 4), (1, 0, 8), (1, 2, 4)])


def _attach_unit_path(
    net: MergeNetwork, merges: list[tuple[int, int, int]], check: bool = True
) -> MergeNetwork:
    """Add one fresh unit-cut group whose path crosses ``net`` paths in order.

    Each (group, path, slot) entry subdivides the host path's slot-th edge
    with a fresh two-path merging shared with the new path.  The subdivided
    edge must be private to the host path, so existing mergings stay intact.
    """
    eid = max(e.eid for e in net.dag.edges) + 1
    edges = {e.eid: (e.tail, e.head) for e in net.dag.edges}
    paths = {key: list(p) for key, p in net.path_index.items()}
    gi_new = len(net.groups)
    vertices = set(net.dag.vertices)

    def fresh(stem: str):
        name, k = stem, 0
        while name in vertices:
            k += 1
            name = f"{stem}_{k}"
        vertices.add(name)
        return name

    src, snk = fresh(f"S{gi_new + 1}"), fresh(f"R{gi_new + 1}")
    beta: list[int] = []
    at = src
    for idx, (gi, pi, slot) in enumerate(merges):
        host = paths[(gi, pi)]
        old = host[slot]
        if len(net.paths_through_edge[old]) != 1:
            raise ValueError(f"edge {old} is shared; mergings must use private edges")
        h, t = fresh(f"bh{idx}"), fresh(f"bt{idx}")
        enter, run, leave, reach = eid, eid + 1, eid + 2, eid + 3
        eid += 4
        u, w = edges.pop(old)
        edges[enter] = (u, h)
        edges[run] = (h, t)
        edges[leave] = (t, w)
        edges[reach] = (at, h)
        host[slot : slot + 1] = [enter, run, leave]
        beta += [reach, run]
        at = t
    done = eid
    edges[done] = (at, snk)
    beta.append(done)

    group_specs = [
        (g.source, g.sink, [paths[(gi, pi)] for pi in range(g.cut)])
        for gi, g in enumerate(net.groups)
    ]
    group_specs.append((src, snk, [beta]))
    edge_list = [(k, t, h) for k, (t, h) in sorted(edges.items())]
    out = build_network(vertices, edge_list, group_specs, DISTINCT, None, check=False)
    if has_cycle(out.dag):
        raise InvalidNetwork("the added path would close a directed cycle")
    if check:
        validate_network(out)
    return out


_FIXTURE_BUILDERS = {
    "butterfly": _butterfly,
    "butterfly-two-way": _butterfly_two_way,
    "two-unicast": _two_unicast,
    "picgv": _picgv,
    "one-two-two-extremal": _one_two_two_extremal,
    "one-two-three-extremal": _one_two_three_extremal,
    "two-five-example": _two_five_example,
    "labeled-two-two": lambda: decode(two_n_sequence(2)),
    "aa-example-a": _aa_example_distinct,
    "aa-example-b": _aa_example_identical,
}

# name -> (merging count, is_reroutable)
FIXTURE_FACTS = {
    "butterfly": (1, False),
    "butterfly-two-way": (1, False),
    "two-unicast": (3, True),
    "picgv": (4, True),
    "one-two-two-extremal": (8, False),
    "one-two-three-extremal": (12, False),
    "two-five-example": (11, False),
    "labeled-two-two": (5, False),
    "aa-example-a": (5, False),
    "aa-example-b": (4, False),
}


def fixture(name: str) -> MergeNetwork:
    try:
        builder = _FIXTURE_BUILDERS[name]
    except KeyError:
        raise UnknownFixture(name) from None
    return builder()


def fixtures() -> dict[str, MergeNetwork]:
    return {name: build() for name, build in _FIXTURE_BUILDERS.items()}


# ---------------------------------------------------------------------------
# Recipes: what each family promises


@dataclass(frozen=True)
class ConstructionRecipe:
    family: str
    params: tuple[int, ...]
    expected_mergings: int
    expected_nonreroutable: bool


def recipe(family: str, params: tuple[int, ...]) -> ConstructionRecipe:
    if family == "two-n":
        (n,) = params
        return ConstructionRecipe(family, params, 3 * n - 1, True)
    if family == "e":
        (n,) = params
        return ConstructionRecipe(family, params, (n - 1) ** 2, True)
    if family == "f":
        (n,) = params
        return ConstructionRecipe(family, params, 2 * n * n - 3 * n + 2, True)
    if family == "h":
        (k,) = params
        return ConstructionRecipe(family, params, k, True)
    if family == "mn-lower":
        m, n = params
        return ConstructionRecipe(family, params, 2 * m * n - m - n + 1, True)
    if family == "ones-two-chain":
        (k,) = params
        return ConstructionRecipe(family, params, 3 * k - 1, True)
    if family == "ones-two-grid":
        (k,) = params
        return ConstructionRecipe(family, params, k * k // 4 + k + 2, k >= 2)
    if family == "ones-n":
        # outside n >= (3k-1)/4 the count exceeds the extremal value, so a
        # non-reroutable instance cannot exist; the construction degenerates
        k, n = params
        sound = k == 1 or 4 * n >= 3 * k - 1
        return ConstructionRecipe(family, params, n * k + k * k // 4, sound)
    if family == "one-two-n":
        (n,) = params
        return ConstructionRecipe(family, params, 4 * n + 1, True)
    raise UnknownFixture(f"no family named {family!r}")


GENERATORS = {
    "two-n": gen_two_n_extremal,
    "e": gen_e,
    "f": gen_f,
    "h": gen_h,
    "mn-lower": gen_mn_lower,
    "ones-two-chain": gen_ones_two_chain,
    "ones-two-grid": gen_ones_two_grid,
    "ones-n": gen_ones_n,
    "one-two-n": gen_one_two_n,
}


def generate(family: str, params: tuple[int, ...]) -> MergeNetwork:
    try:
        builder = GENERATORS[family]
    except KeyError:
        raise UnknownFixture(f"no family named {family!r}") from None
    return builder(*params)
