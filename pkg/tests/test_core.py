import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mergenet import (
    Dag,
    all_menger_path_sets,
    errors,
    fixture,
    gen_e,
    menger_paths,
    min_cut,
    topological_order,
)
from mergenet.core import Edge


def dag_of(edges, vertices=None):
    vs = set(vertices or [])
    for _, t, h in edges:
        vs |= {t, h}
    return Dag(frozenset(vs), tuple(Edge(*e) for e in edges))


def test_topological_single_vertex():
    assert topological_order(dag_of([], vertices=["v0"])) == ("v0",)


def test_topological_two_cycle():
    with pytest.raises(errors.CycleDetected):
        topological_order(dag_of([(0, "a", "b"), (1, "b", "a")]))


def test_topological_butterfly_constraints():
    order = topological_order(fixture("butterfly").dag)
    pos = {v: k for k, v in enumerate(order)}
    assert pos["S"] < pos["C"] < pos["D"] < pos["R1"]
    assert pos["D"] < pos["R2"]


def test_min_cut_single_edge():
    assert min_cut(dag_of([(0, "u", "v")]), "u", "v") == 1


def test_min_cut_butterfly():
    assert min_cut(fixture("butterfly").dag, "S", "R1") == 2


def test_min_cut_e44():
    net = gen_e(4)
    assert min_cut(net.dag, "S", "R1") == 4
    assert min_cut(net.dag, "S", "R2") == 4


def test_min_cut_unknown_vertex():
    with pytest.raises(errors.UnknownVertex):
        min_cut(dag_of([(0, "u", "v")]), "u", "nope")


def test_menger_single_edge():
    assert menger_paths(dag_of([(0, "u", "v")]), "u", "v") == ((0,),)


def test_menger_butterfly_paths():
    net = fixture("butterfly")
    paths = menger_paths(net.dag, "S", "R1")
    # S->A->R1 and S->B->C->D->R1, as listed in the source discussion
    assert set(paths) == {(0, 2), (1, 4, 6, 7)}


def test_menger_no_path():
    with pytest.raises(errors.NoPath):
        menger_paths(dag_of([(0, "u", "v")], vertices=["w"]), "u", "w")


def test_menger_disjoint_and_counted():
    net = fixture("one-two-two-extremal")
    for g in net.groups:
        paths = menger_paths(net.dag, g.source, g.sink)
        assert len(paths) == min_cut(net.dag, g.source, g.sink) == g.cut
        all_edges = list(itertools.chain.from_iterable(paths))
        assert len(all_edges) == len(set(all_edges))


def _brute_force_max_disjoint(dag, u, v):
    """Exhaustive packing oracle: try every family of edge-disjoint paths."""
    paths = []

    def walk(w, acc):
        if w == v:
            paths.append(tuple(acc))
            return
        for e in dag.out_edges[w]:
            acc.append(e.eid)
            walk(e.head, acc)
            acc.pop()

    walk(u, [])

    best = 0

    def pack(start, used, count):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(paths)):
            p = paths[i]
            if used.isdisjoint(p):
                pack(i + 1, used | set(p), count + 1)

    pack(0, frozenset(), 0)
    return best


def test_min_cut_matches_packing_oracle_small():
    nets = [fixture("butterfly"), fixture("picgv"), fixture("two-unicast")]
    for net in nets:
        assert len(net.dag.edges) <= 16
        for g in net.groups:
            assert min_cut(net.dag, g.source, g.sink) == _brute_force_max_disjoint(
                net.dag, g.source, g.sink
            )


def test_all_menger_path_sets_single_edge():
    assert all_menger_path_sets(dag_of([(0, "u", "v")]), "u", "v") == [((0,),)]


def test_all_menger_path_sets_unit_group_counts_paths():
    # for a cut-1 pair, the number of path sets is the number of distinct paths
    net = fixture("one-two-two-extremal")
    g = next(g for g in net.groups if g.cut == 1)
    sets = all_menger_path_sets(net.dag, g.source, g.sink)

    count = 0

    def walk(w):
        nonlocal count
        if w == g.sink:
            count += 1
            return
        for e in net.dag.out_edges[w]:
            walk(e.head)

    walk(g.source)
    assert len(sets) == count


def test_all_menger_path_sets_picgv_has_alternative():
    net = fixture("picgv")
    sets = all_menger_path_sets(net.dag, "S1", "R1")
    assert len(sets) >= 2


def test_all_menger_path_sets_budget():
    net = fixture("picgv")
    with pytest.raises(errors.BudgetExceeded) as err:
        all_menger_path_sets(net.dag, "S1", "R1", budget=1)
    assert len(err.value.partial) == 1


@st.composite
def random_dags(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=12) if pairs else st.just([]))
    edges = [(k, a, b) for k, (a, b) in enumerate(chosen)]
    return dag_of(edges, vertices=range(n))


@given(random_dags())
@settings(max_examples=80, deadline=None)
def test_topological_order_is_consistent_permutation(dag):
    order = topological_order(dag)
    assert sorted(order, key=str) == sorted(dag.vertices, key=str)
    pos = {v: k for k, v in enumerate(order)}
    for e in dag.edges:
        assert pos[e.tail] < pos[e.head]
