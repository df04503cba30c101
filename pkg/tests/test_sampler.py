import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import as_plane_tree

from planetree.codec import OrderKind, decode
from planetree.errors import (
    CapExceededError,
    DegenerateSequenceError,
    PlanLengthMismatchError,
    PurePathError,
    UnaryNodeInReducedError,
)
from planetree.lattice import is_tree_sequence, tree_rotation
from planetree.rng import RandomStream, mix64
from planetree.sampler import (
    SubdivisionPlan,
    all_child_multisets,
    all_child_sequences,
    apply_subdivision,
    enumerate_trees,
    random_composition,
    reduce_tree,
    sample_subdivision,
    sample_uniform,
    tree_sequences,
)
from planetree.seqcore import count_trees, validate

KINDS = (OrderKind.BFS, OrderKind.LEX_DFS, OrderKind.REV_DFS)

LEAF = ()
CHERRY = (LEAF, LEAF)  # two leaves below a root


def test_sample_uniform_single_node():
    t = sample_uniform(validate((0,)), RandomStream(1))
    assert t.n == 1 and t.canonical_code() == (0,)


def test_sample_uniform_multiset_and_determinism():
    c = validate((3, 2, 0, 1, 0, 0, 0))
    for kind in KINDS:
        a = sample_uniform(c, RandomStream(11), kind)
        b = sample_uniform(c, RandomStream(11), kind)
        assert a == b
        assert Counter(a.child_sequence().entries) == Counter(c.entries)


def test_every_ordering_decodes_to_each_tree_equally_often():
    # rotation maps the 60 orderings onto the 10 trees six times each, for
    # every decode order; this is the exact core of sampler uniformity
    c = validate((2, 2, 1, 0, 0, 0))
    orderings = set(itertools.permutations(c.entries))
    assert len(orderings) == 60
    for kind in KINDS:
        freq = Counter(
            decode(kind, tree_rotation(validate(o)).rotated) for o in orderings
        )
        assert len(freq) == count_trees(c) == 10
        assert set(freq.values()) == {6}


def test_sample_uniform_frequency_two_trees():
    c = validate((2, 2, 0, 0, 0))
    trials = 20_000
    hits = Counter(
        sample_uniform(c, RandomStream(mix64(20260823, t))) for t in range(trials)
    )
    assert len(hits) == 2
    radius = 5 * math.sqrt(0.25 / trials)
    for tree, k in hits.items():
        assert abs(k / trials - 0.5) < radius


def test_tree_sequences_matches_brute_filter():
    for n in range(1, 8):
        for m in all_child_multisets(n):
            c = validate(m)
            mine = set(s.entries for s in tree_sequences(c))
            brute = {
                o
                for o in set(itertools.permutations(c.entries))
                if is_tree_sequence(validate(o))
            }
            assert mine == brute


def test_enumerate_trees_cap():
    c = validate((2,) * 8 + (0,) * 9)
    with pytest.raises(CapExceededError):
        enumerate_trees(c, cap=10)
    assert len(enumerate_trees(c, cap=1430)) == 1430


def test_enumerate_trees_same_set_for_every_kind():
    for n in range(1, 7):
        for m in all_child_multisets(n):
            c = validate(m)
            sets = [set(enumerate_trees(c, kind=k)) for k in KINDS]
            assert sets[0] == sets[1] == sets[2]
            assert len(sets[0]) == count_trees(c)


def test_all_child_multisets_against_partitions():
    def partitions(total, largest):
        if total == 0:
            return [()]
        return [
            (first,) + rest
            for first in range(min(total, largest), 0, -1)
            for rest in partitions(total - first, first)
        ]

    for n in range(1, 10):
        got = list(all_child_multisets(n))
        want = [p + (0,) * (n - len(p)) for p in partitions(n - 1, n - 1)]
        assert got == want


def test_all_child_sequences_count():
    for n in range(1, 8):
        seqs = list(all_child_sequences(n))
        assert len(seqs) == math.comb(2 * n - 2, n - 1)
        assert len(set(seqs)) == len(seqs)
        for s in seqs:
            validate(s)


def test_random_composition_edges():
    rng = RandomStream(0)
    assert random_composition(0, 3, rng) == (0, 0, 0)
    assert random_composition(5, 1, rng) == (5,)
    with pytest.raises(ValueError):
        random_composition(-1, 2, rng)
    with pytest.raises(ValueError):
        random_composition(1, 0, rng)


def test_random_composition_uniform():
    trials = 12_000
    freq = Counter(
        random_composition(2, 3, RandomStream(mix64(9, t))) for t in range(trials)
    )
    assert set(freq) == {
        (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1),
    }
    radius = 4 * math.sqrt((1 / 6) * (5 / 6) / trials)
    for k in freq.values():
        assert abs(k / trials - 1 / 6) < radius


@given(total=st.integers(0, 30), parts=st.integers(1, 12), seed=st.integers(0, 2**32))
@settings(max_examples=150)
def test_random_composition_is_valid(total, parts, seed):
    out = random_composition(total, parts, RandomStream(seed))
    assert len(out) == parts
    assert sum(out) == total
    assert min(out) >= 0


def test_subdivision_plan_validation():
    assert SubdivisionPlan((1, 0, 2)).total == 3
    with pytest.raises(ValueError):
        SubdivisionPlan((1, -1))


def test_apply_subdivision_frozen():
    cherry = as_plane_tree(CHERRY)
    # one node into the edge above the first child
    assert apply_subdivision(cherry, SubdivisionPlan((1, 0, 0))) == as_plane_tree(
        ((LEAF,), LEAF)
    )
    # chain of two into the same edge
    assert apply_subdivision(cherry, SubdivisionPlan((2, 0, 0))) == as_plane_tree(
        (((LEAF,),), LEAF)
    )
    # one node above the root; the new top becomes the root
    assert apply_subdivision(cherry, SubdivisionPlan((0, 0, 1))) == as_plane_tree(
        (CHERRY,)
    )
    # all-zero plan is the identity
    assert apply_subdivision(cherry, SubdivisionPlan((0, 0, 0))) == cherry


def test_apply_subdivision_errors():
    cherry = as_plane_tree(CHERRY)
    with pytest.raises(PlanLengthMismatchError):
        apply_subdivision(cherry, SubdivisionPlan((1, 0)))
    unary = as_plane_tree(((LEAF,), LEAF))
    with pytest.raises(UnaryNodeInReducedError):
        apply_subdivision(unary, SubdivisionPlan((0, 0, 0, 0)))


def test_reduce_tree_frozen():
    big = as_plane_tree((((LEAF,),), LEAF))
    reduced, plan = reduce_tree(big)
    assert reduced == as_plane_tree(CHERRY)
    assert plan.slots == (2, 0, 0)


def test_reduce_tree_rejects_paths():
    with pytest.raises(PurePathError):
        reduce_tree(as_plane_tree(LEAF))
    with pytest.raises(PurePathError):
        reduce_tree(as_plane_tree(((LEAF,),)))


def test_reduce_inverts_apply_everywhere():
    checked = 0
    for n in range(2, 7):
        for m in all_child_multisets(n):
            c = validate(m)
            if c.ones:
                continue
            for t in enumerate_trees(c):
                for total in range(4):
                    rng = RandomStream(mix64(77, checked))
                    plan = SubdivisionPlan(random_composition(total, n, rng))
                    grown = apply_subdivision(t, plan)
                    assert grown.n == n + total
                    back, plan2 = reduce_tree(grown)
                    assert back == t and plan2.slots == plan.slots
                    checked += 1
    assert checked == 44


def test_sample_subdivision_rejects_degenerate():
    with pytest.raises(DegenerateSequenceError):
        sample_subdivision(validate((1, 1, 0)), RandomStream(0))


def test_sample_subdivision_multiset_and_determinism():
    c = validate((3, 2, 1, 1, 1, 1, 0, 0, 0, 0))
    a = sample_subdivision(c, RandomStream(21))
    assert a == sample_subdivision(c, RandomStream(21))
    assert Counter(a.child_sequence().entries) == Counter(c.entries)


def test_sample_subdivision_frequency_three_trees():
    c = validate((2, 1, 0, 0))
    trials = 12_000
    freq = Counter(
        sample_subdivision(c, RandomStream(mix64(31, t))) for t in range(trials)
    )
    assert len(freq) == count_trees(c) == 3
    radius = 4 * math.sqrt((1 / 3) * (2 / 3) / trials)
    for k in freq.values():
        assert abs(k / trials - 1 / 3) < radius
