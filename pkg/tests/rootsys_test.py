import pytest

from utsuper import enums, models, rootsys
from utsuper.rootsys import Root, RootSet


def roots_of(n, *pairs):
    return RootSet(n, pairs)


# ---------------------------------------------------------------------------
# roots and sets
# ---------------------------------------------------------------------------


def test_positive_roots_size():
    for n in range(1, 8):
        assert len(rootsys.positive_roots(n)) == n * (n - 1) // 2


def test_positive_roots_rejects_zero_rank():
    with pytest.raises(models.RankTooSmall):
        rootsys.positive_roots(0)


def test_root_height_and_entry():
    root = Root(2, 4)
    assert root.height == 2
    assert root.entry == (2, 5)
    assert str(root) == "a2,4"
    assert str(Root(3, 3)) == "a3"


def test_check_root_out_of_bounds():
    with pytest.raises(models.RootOutOfBounds) as exc_info:
        rootsys.check_root(4, Root(2, 4))
    assert (exc_info.value.n, exc_info.value.i, exc_info.value.j) == (4, 2, 4)
    with pytest.raises(models.RootOutOfBounds):
        rootsys.check_root(4, Root(3, 2))


def test_root_set_operations():
    first = roots_of(4, (1, 1), (1, 2))
    second = roots_of(4, (1, 2), (3, 3))
    assert first | second == roots_of(4, (1, 1), (1, 2), (3, 3))
    assert first & second == roots_of(4, (1, 2))
    assert first - second == roots_of(4, (1, 1))
    assert not first.isdisjoint(second)
    assert roots_of(4, (1, 2)).issubset(first)
    assert Root(1, 1) in first
    assert (1, 1) in first


def test_root_set_is_ordered():
    assert list(roots_of(5, (3, 4), (1, 2), (1, 1))) == [Root(1, 1), Root(1, 2), Root(3, 4)]


# ---------------------------------------------------------------------------
# hooks and regions
# ---------------------------------------------------------------------------


def test_hook_parts():
    parts = rootsys.hook_parts(5, Root(2, 4))
    assert parts.arm == roots_of(5, (2, 2), (2, 3))
    assert parts.leg == roots_of(5, (3, 4), (4, 4))
    assert len(parts.hook) == 2 * 2 + 1
    assert parts.arm.isdisjoint(parts.leg)


def test_hook_of_simple_root_is_itself():
    parts = rootsys.hook_parts(4, Root(2, 2))
    assert len(parts.arm) == 0
    assert len(parts.leg) == 0
    assert parts.hook == roots_of(4, (2, 2))


def test_base_region_drops_the_arm():
    base = rootsys.region_roots(4, Root(1, 3), enums.RegionKind.base)
    assert base == roots_of(4, (1, 3), (2, 2), (2, 3), (3, 3))


def test_subtriangle_and_radical_partition():
    triangle = rootsys.region_roots(4, Root(2, 3), "subtri")
    radical = rootsys.region_roots(4, Root(2, 3), "radical")
    assert triangle == roots_of(4, (2, 2), (2, 3), (3, 3))
    assert radical == roots_of(4, (1, 1), (1, 2), (1, 3))
    assert triangle | radical == rootsys.positive_roots(4)


def test_regions_are_closed():
    for n in range(2, 7):
        for alpha in rootsys.positive_roots(n):
            for kind in enums.RegionKind:
                assert rootsys.is_closed(rootsys.region_roots(n, alpha, kind))


def test_closure_violation_names_the_pair():
    assert rootsys.closure_violation(roots_of(4, (1, 1), (2, 2))) == (Root(1, 1), Root(2, 2))
    assert rootsys.is_closed(roots_of(4, (1, 1), (2, 2), (1, 2)))


def test_root_sum():
    assert rootsys.root_sum(Root(1, 1), Root(2, 3)) == Root(1, 3)
    assert rootsys.root_sum(Root(2, 3), Root(1, 1)) == Root(1, 3)
    assert rootsys.root_sum(Root(1, 1), Root(3, 3)) is None


# ---------------------------------------------------------------------------
# pairs and basic sets
# ---------------------------------------------------------------------------


def test_classify_pair_relations():
    assert rootsys.classify_pair(5, Root(1, 2), Root(1, 2)).relation is enums.PairRelation.equal
    assert rootsys.classify_pair(5, Root(1, 2), Root(1, 3)).relation is enums.PairRelation.arm
    assert rootsys.classify_pair(5, Root(1, 3), Root(2, 3)).relation is enums.PairRelation.leg
    assert rootsys.classify_pair(5, Root(1, 1), Root(3, 3)).relation is enums.PairRelation.separate_disjoint


def test_classify_crossing_pair_overlap():
    pair = rootsys.classify_pair(5, Root(1, 3), Root(2, 4))
    assert pair.relation is enums.PairRelation.separate_crossing
    assert pair.hook_overlap == roots_of(5, (2, 3))


def test_validate_basic_set_errors():
    with pytest.raises(models.EmptySetError):
        rootsys.validate_basic_set(4, [])
    with pytest.raises(models.SameRowError):
        rootsys.validate_basic_set(4, [(1, 2), (1, 3)])
    with pytest.raises(models.SameColumnError):
        rootsys.validate_basic_set(4, [(1, 3), (2, 3)])
    basic = rootsys.validate_basic_set(4, [(1, 1), (2, 3)])
    assert isinstance(basic, rootsys.BasicSet)


def test_count_basic_sets_is_bell_minus_one():
    bell = {2: 2, 3: 5, 4: 15, 5: 52, 6: 203}
    for n, value in bell.items():
        assert rootsys.count_basic_sets(n) == value - 1


def test_enumerated_basic_sets_are_valid():
    for basic in rootsys.enumerate_basic_sets(5):
        assert rootsys.validate_basic_set(5, basic) == basic


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def test_decompose_nested_set():
    basic = rootsys.validate_basic_set(7, [(3, 3), (4, 4), (2, 5), (1, 6)])
    witness = rootsys.decompose_basic_set(7, basic)
    assert witness.pivot == Root(2, 5)
    assert witness.part_a == roots_of(7, (3, 3), (4, 4), (2, 5))
    assert witness.part_b == roots_of(7, (1, 6))
    assert rootsys.is_decomposition_witness(7, basic, witness)


def test_decompose_far_apart_roots():
    witness = rootsys.decompose_basic_set(4, [Root(1, 1), Root(3, 3)])
    assert witness.pivot == Root(1, 1)


def test_indecomposable_set():
    assert rootsys.decompose_basic_set(4, [Root(1, 2), Root(2, 3)]) is None


def test_witness_checker_rejects_swapped_parts():
    basic = rootsys.validate_basic_set(7, [(3, 3), (4, 4), (2, 5), (1, 6)])
    witness = rootsys.decompose_basic_set(7, basic)
    swapped = rootsys.DecompositionWitness(witness.pivot, witness.part_b, witness.part_a)
    assert not rootsys.is_decomposition_witness(7, basic, swapped)


# ---------------------------------------------------------------------------
# graph automorphism, mu and T_k
# ---------------------------------------------------------------------------


def test_graph_auto_is_an_involution():
    assert rootsys.graph_auto(5, Root(1, 2)) == Root(3, 4)
    for root in rootsys.positive_roots(6):
        assert rootsys.graph_auto(6, rootsys.graph_auto(6, root)) == root


def test_graph_auto_preserves_height():
    for root in rootsys.positive_roots(6):
        assert rootsys.graph_auto(6, root).height == root.height


def test_mu_values():
    assert [rootsys.mu(n) for n in range(1, 8)] == [0, 0, 1, 2, 4, 6, 9]


def test_t_k_embedding_small():
    embedding = rootsys.t_k_embedding(4, 1)
    assert embedding.roots == roots_of(4, (1, 2), (1, 3), (3, 3))
    assert sorted(embedding.phi.values()) == list(rootsys.positive_roots(3))


def test_t_k_embedding_is_closed_for_all_cuts():
    for n in range(3, 8):
        for k in range(1, n - 1):
            embedding = rootsys.t_k_embedding(n, k)
            assert rootsys.is_closed(embedding.roots)
            assert len(embedding.roots) == (n - 1) * (n - 2) // 2


def test_t_k_embedding_rejects_bad_cut():
    with pytest.raises(models.RankTooSmall):
        rootsys.t_k_embedding(4, 3)
