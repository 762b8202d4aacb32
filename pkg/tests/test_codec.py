import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mergenet import (
    canonical_key,
    count_mergings,
    decode,
    encode,
    errors,
    fixture,
    gen_e,
    is_covered,
    validate,
)
from mergenet.codec import MergingSequence
from mergenet.core import has_cycle
from mergenet.families import two_n_sequence
from mergenet.network import MergeNetwork, PathGroup


FIG3A = MergingSequence(2, 2, ((1, 2), (2, 1)))
FIG3B = MergingSequence(3, 2, ((1, 1), (2, 1), (2, 2), (3, 2)))
COUNTEREXAMPLE = MergingSequence(3, 2, ((1, 1), (2, 1), (3, 2), (2, 2)))


def test_decode_fig3a():
    net = decode(FIG3A)
    assert count_mergings(net) == 2
    assert is_covered(net) and not has_cycle(net.dag)


def test_decode_fig3b():
    assert count_mergings(decode(FIG3B)) == 4


def test_decode_empty_is_disjoint_bundles():
    net = decode(MergingSequence(3, 2, ()))
    assert count_mergings(net) == 0
    assert is_covered(net)


def test_decode_rejects_out_of_range():
    with pytest.raises(errors.InvalidStroke) as err:
        decode(MergingSequence(2, 2, ((1, 1), (3, 1))))
    assert err.value.position == 2


def test_validate_rejects_counterexample_against_fig3b():
    with pytest.raises(errors.InvalidStroke) as err:
        validate(COUNTEREXAMPLE, against=decode(FIG3B))
    assert err.value.position == 4


def test_validate_accepts_both_fig3a_orders():
    net = decode(FIG3A)
    validate(FIG3A, against=net)
    validate(MergingSequence(2, 2, ((2, 1), (1, 2))), against=net)


def test_validate_accepts_single_rail_increasing():
    validate(MergingSequence(3, 1, ((1, 1), (2, 1), (3, 1))))


def test_validate_accepts_two_n_formula_sequence():
    seq = two_n_sequence(5)
    validate(seq)
    validate(seq, against=decode(seq))


def test_encode_round_trip_is_structural_identity():
    seq = two_n_sequence(4)
    net = decode(seq)
    again = encode(net)
    assert decode(again).path_index.keys() == net.path_index.keys()
    assert canonical_key(decode(again)) == canonical_key(net)


def test_encode_fig3a_deterministic():
    assert encode(decode(FIG3A)).strokes == ((1, 2), (2, 1))


def test_encode_e44_matches_published_order():
    assert encode(gen_e(4)).strokes == (
        (1, 2), (1, 3), (1, 4), (3, 4), (2, 4), (2, 2), (2, 3), (3, 3), (3, 2),
    )


def test_encode_rejects_three_groups():
    net = fixture("two-unicast")
    three = MergeNetwork(
        net.dag,
        net.groups + (PathGroup("S1", "R1", ((0, 1, 2, 3, 4, 5, 6),)),),
        net.mode,
    )
    with pytest.raises(errors.NotTwoGroup):
        encode(three)


def test_encode_rejects_multiway_mergings():
    # a valid two-group network cannot host one (groups are edge-disjoint
    # inside), so force an unchecked network with three paths through an edge
    from mergenet.network import build_network

    edges = [
        (0, "S1", "x"), (1, "x", "y"), (2, "y", "R1"),
        (3, "S2", "x"), (4, "y", "R2"), (5, "S2", "x"), (6, "y", "R2"),
    ]
    net = build_network(
        {"S1", "S2", "x", "y", "R1", "R2"},
        edges,
        [
            ("S1", "R1", [[0, 1, 2]]),
            ("S2", "R2", [[3, 1, 4], [5, 1, 6]]),
        ],
        check=False,
    )
    with pytest.raises(errors.MultiwayMerging):
        encode(net)


def test_canonical_key_invariant_under_path_swap():
    seq = MergingSequence(2, 2, ((1, 1), (2, 2)))
    swapped = MergingSequence(2, 2, ((2, 2), (1, 1)))
    assert canonical_key(decode(seq)) == canonical_key(decode(swapped))


def test_canonical_key_differs_between_fig3a_and_fig3b():
    assert canonical_key(decode(FIG3A)) != canonical_key(decode(FIG3B))


def test_canonical_key_relabeling_invariance_randomized():
    rng = random.Random(4242)
    for _ in range(50):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        strokes = tuple(
            (rng.randint(1, m), rng.randint(1, n)) for _ in range(rng.randint(0, 5))
        )
        net = decode(MergingSequence(m, n, strokes))
        pi = list(range(1, m + 1))
        pj = list(range(1, n + 1))
        rng.shuffle(pi)
        rng.shuffle(pj)
        relabeled = tuple((pi[i - 1], pj[j - 1]) for i, j in strokes)
        # a relabeled stroke list may list the same graph in another order
        other = decode(MergingSequence(m, n, relabeled))
        assert canonical_key(net) == canonical_key(other)


def test_sequence_text_round_trip():
    seq = two_n_sequence(3)
    assert MergingSequence.parse(seq.text()) == seq
    ident = MergingSequence(3, 3, ((1, 2),), identical=True)
    assert MergingSequence.parse(ident.text()) == ident


def test_identical_decode_has_starting_subpaths():
    net = gen_e(3)
    assert net.mode == "identical"
    assert net.starting_subpaths is not None and len(net.starting_subpaths) == 3


@given(
    st.integers(min_value=1, max_value=4),
    st.integers(min_value=1, max_value=4),
    st.data(),
)
@settings(max_examples=120, deadline=None)
def test_decode_invariants_hold(m, n, data):
    strokes = data.draw(
        st.lists(
            st.tuples(
                st.integers(min_value=1, max_value=m),
                st.integers(min_value=1, max_value=n),
            ),
            max_size=8,
        )
    )
    seq = MergingSequence(m, n, tuple(strokes))
    net = decode(seq)
    assert is_covered(net)
    assert not has_cycle(net.dag)
    assert count_mergings(net) == len(strokes)
