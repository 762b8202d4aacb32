import pytest

from mergenet import (
    bound_m,
    bound_m_star,
    concat_back_to_back,
    concat_chain,
    concat_f_g,
    concat_shifted,
    count_mergings,
    encode,
    errors,
    fixture,
    fixtures,
    gen_e,
    gen_e_padded,
    gen_f,
    gen_h,
    gen_mn_lower,
    gen_one_two_n,
    gen_ones_two_chain,
    gen_two_n_extremal,
    generate,
    is_covered,
    is_reroutable,
    recipe,
    upper_m_3n,
)
from mergenet.core import has_cycle
from mergenet.families import FIXTURE_FACTS, e_sequence, f_sequence


SWEEP = (
    [("two-n", (n,)) for n in range(1, 7)]
    + [("e", (n,)) for n in range(1, 6)]
    + [("f", (n,)) for n in range(1, 5)]
    + [("h", (k,)) for k in range(1, 6)]
    + [("mn-lower", (m, n)) for m in range(1, 5) for n in range(m, 5)]
    + [("ones-two-chain", (k,)) for k in range(1, 7)]
    + [("ones-two-grid", (k,)) for k in range(1, 7)]
    + [("ones-n", (k, n)) for k in range(1, 5) for n in range(1, 4)]
    + [("one-two-n", (n,)) for n in (4, 5, 6)]
)


@pytest.mark.parametrize("family,params", SWEEP)
def test_recipes_hold(family, params):
    rec = recipe(family, params)
    net = generate(family, params)
    assert is_covered(net)
    assert not has_cycle(net.dag)
    assert count_mergings(net) == rec.expected_mergings
    assert is_reroutable(net) == (not rec.expected_nonreroutable)


def test_e_sequence_indices_partition():
    # the two index families tile 1..(n-1)^2 with no overlap
    for n in range(2, 8):
        seq = e_sequence(n)
        assert len(seq.strokes) == (n - 1) ** 2
        used_phi = {i for i, _ in seq.strokes}
        used_psi = {j for _, j in seq.strokes}
        assert used_phi <= set(range(1, n)) and used_psi <= set(range(2, n + 1))


def test_f_sequence_published_instance():
    assert f_sequence(3).strokes == (
        (1, 1), (2, 1), (3, 1), (3, 3), (3, 2), (1, 2), (2, 2), (2, 1), (2, 3), (3, 3), (1, 3),
    )


def test_two_n_extremal_fig7a():
    net = gen_two_n_extremal(3)
    assert count_mergings(net) == 8 and not is_reroutable(net)


def test_concat_f_g_fig11_numbers():
    g22 = concat_f_g(gen_f(2), gen_h(2))
    assert g22.cuts == (2, 2) and count_mergings(g22) == 5
    fig11 = concat_f_g(gen_f(2), g22)
    assert fig11.cuts == (3, 2)
    assert count_mergings(fig11) == 4 + 5 - 1 == 2 * 3 * 2 - 3 - 2 + 1
    assert not is_reroutable(fig11)


def test_concat_f_g_degenerate():
    out = concat_f_g(gen_f(1), gen_h(1))
    assert out.cuts == (1, 1) and count_mergings(out) == 1


def test_concat_f_g_rejects_mergeless_tail():
    from mergenet.codec import MergingSequence, decode

    with pytest.raises(errors.IncompatibleInterface):
        concat_f_g(gen_f(2), decode(MergingSequence(2, 2, ())))


def test_gen_mn_lower_example_chain():
    assert count_mergings(gen_mn_lower(4, 6)) == 39
    assert count_mergings(gen_mn_lower(1, 5)) == 5
    assert count_mergings(gen_mn_lower(3, 3)) == 13


def test_back_to_back_counts():
    for n in range(1, 5):
        g = gen_e(n)
        out = concat_back_to_back(g, g)
        assert out.mode == "distinct" and out.cuts == (n, n)
        assert count_mergings(out) == 2 * count_mergings(g) + n
        assert not is_reroutable(out)


def test_back_to_back_mismatch():
    with pytest.raises(errors.MismatchedN):
        concat_back_to_back(gen_e(2), gen_e(3))


def test_shifted_counts():
    for n in (2, 3, 4):
        out = concat_shifted(gen_e(n + 1), gen_e(n - 1))
        assert out.cuts == (n, n)
        expected = count_mergings(gen_e(n + 1)) + count_mergings(gen_e(n - 1)) + n - 1
        assert count_mergings(out) == expected
        assert not is_reroutable(out)


def test_shifted_rejects_degenerate_and_mismatched():
    with pytest.raises(errors.ParamTooSmall):
        gen_e(0)
    with pytest.raises(errors.MismatchedN):
        concat_shifted(gen_e(3), gen_e(3))


def test_chain_three_groups():
    out = concat_chain([gen_e(3), gen_e(3)])
    assert out.mode == "identical" and out.cuts == (3, 3, 3)
    assert count_mergings(out) == 8
    assert not is_reroutable(out)


def test_chain_two_two_two():
    out = concat_chain([gen_e(2), gen_e(2)])
    assert out.cuts == (2, 2, 2) and count_mergings(out) == 2


def test_chain_single_part_is_identity():
    part = gen_e(3)
    assert concat_chain([part]) is part


def test_chain_rejects_non_monotone():
    with pytest.raises(errors.NonMonotoneCuts):
        concat_chain([gen_e(3), gen_e_padded(2, 3)])


def test_chain_padded_counts():
    out = concat_chain([gen_e_padded(2, 3), gen_e(3)])
    assert out.cuts == (2, 3, 3) and count_mergings(out) == 5
    assert not is_reroutable(out)


def test_fixture_catalog_facts():
    nets = fixtures()
    assert set(nets) == set(FIXTURE_FACTS)
    for name, (count, reroutable) in FIXTURE_FACTS.items():
        assert count_mergings(nets[name]) == count, name
        assert is_reroutable(nets[name]) == reroutable, name


def test_unknown_fixture():
    with pytest.raises(errors.UnknownFixture):
        fixture("no-such-figure")


def test_one_two_n_param_too_small():
    with pytest.raises(errors.ParamTooSmall):
        gen_one_two_n(3)


def test_butterfly_bottleneck_merging_sits_on_cd():
    net = fixture("butterfly")
    from mergenet import find_mergings

    (m,) = find_mergings(net)
    assert net.dag.edge_by_id[m.start_edge].tail == "C"
    assert net.dag.edge_by_id[m.start_edge].head == "D"


def test_bound_tables():
    t = bound_m(3, 3)
    assert (t.lower, t.upper) == (13, 19)
    t = bound_m_star(3)
    assert (t.lower, t.upper) == (4, 4)
    t = bound_m_star(4)
    assert (t.lower, t.upper) == (9, 10)
    assert upper_m_3n(4) == 56
    with pytest.raises(ValueError):
        bound_m(0, 3)


def test_generator_counts_fit_bounds():
    for m in range(1, 7):
        for n in range(m, 7):
            assert bound_m(m, n).contains(count_mergings(gen_mn_lower(m, n)))


def test_extremal_two_n_matches_block_shape():
    from mergenet import block_decomposition

    for n in range(1, 9):
        net = gen_two_n_extremal(n)
        bd = block_decomposition(net)
        assert count_mergings(net) == 3 * n - 1 == 2 * n + bd.y - bd.z
        assert bd.z == 1 or n == 1
