import numpy as np
import pytest

from utsuper import ffgroup, models, rootsys
from utsuper.rootsys import Root
from tests.conftest import HISTOGRAMS, root_element


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


def test_prime_field_arithmetic():
    field = ffgroup.field_make(5)
    assert field.add(3, 4) == 2
    assert field.sub(1, 3) == 3
    assert field.mul(3, 4) == 2
    assert field.inv(2) == 3
    assert field.neg(1) == 4
    assert field.trace(3) == 3


def test_extension_fields():
    gf4 = ffgroup.field_make(4)
    assert gf4.mul(2, 2) == 3
    assert gf4.mul(2, 3) == 1
    assert gf4.add(2, 3) == 1
    assert gf4.trace(1) == 0
    assert gf4.trace(2) == 1
    gf9 = ffgroup.field_make(9)
    assert gf9.mul(3, 3) == 2
    assert gf9.basis == (1, 3)


def test_field_inverse_table_is_complete():
    for q in ffgroup.SUPPORTED:
        field = ffgroup.field_make(q)
        for a in field.nonzero:
            assert field.mul(a, field.inv(a)) == 1
        with pytest.raises(ZeroDivisionError):
            field.inv(0)


def test_trace_is_onto_the_prime_field():
    for q in ffgroup.SUPPORTED:
        field = ffgroup.field_make(q)
        assert {field.trace(a) for a in range(q)} == set(range(field.p))


def test_unsupported_field():
    with pytest.raises(models.UnsupportedField):
        ffgroup.field_make(6)


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def test_root_elements_and_commutator():
    group = ffgroup.full_group(3, 3)
    a = ffgroup.group_arith(group, "root_elem", Root(1, 1), 1)
    b = ffgroup.group_arith(group, "root_elem", Root(2, 2), 1)
    assert a.entries == (1, 0, 0)
    assert ffgroup.group_arith(group, "mul", a, b).entries == (1, 1, 1)
    assert ffgroup.group_arith(group, "mul", b, a).entries == (1, 0, 1)
    assert ffgroup.group_arith(group, "commutator", a, b).entries == (0, 1, 0)
    assert ffgroup.group_arith(group, "inv", a).entries == (2, 0, 0)


def test_group_arith_errors():
    group = ffgroup.full_group(3, 2)
    other = ffgroup.full_group(3, 3)
    element = ffgroup.group_arith(other, "root_elem", Root(1, 1), 2)
    with pytest.raises(models.AmbientMismatch):
        ffgroup.group_arith(group, "inv", element)
    with pytest.raises(models.RootOutOfBounds):
        ffgroup.group_arith(group, "root_elem", Root(1, 3), 1)
    with pytest.raises(ValueError):
        ffgroup.group_arith(group, "div", group.element([0, 0, 0]), group.element([0, 0, 0]))


def test_to_matrix():
    group = ffgroup.full_group(3, 2)
    assert group.element({Root(1, 2): 1}).to_matrix() == [[1, 0, 1], [0, 1, 0], [0, 0, 1]]


def test_inverse_on_every_element():
    group = ffgroup.full_group(4, 3)
    elements = ffgroup.enumerate_elements(group)
    assert not group.mul(elements, group.inv(elements)).any()
    assert not group.mul(group.inv(elements), elements).any()


def test_index_round_trip():
    group = ffgroup.full_group(4, 2)
    indices = np.arange(group.order)
    assert np.array_equal(group.index_of(group.rows_of(indices)), indices)


def test_multiplication_is_associative():
    group = ffgroup.full_group(4, 3)
    rng = np.random.default_rng(0)
    a, b, c = (group.rows_of(rng.integers(0, group.order, 50)) for _ in range(3))
    assert np.array_equal(group.mul(group.mul(a, b), c), group.mul(a, group.mul(b, c)))


def test_element_order_and_power():
    group = ffgroup.full_group(4, 2)
    regular = root_element(group, ((1, 1), 1), ((2, 2), 1), ((3, 3), 1))
    assert ffgroup.element_order(group, group.identity).tolist() == [1]
    assert ffgroup.element_order(group, group.root_row(Root(1, 2), 1)).tolist() == [2]
    assert ffgroup.element_order(group, regular).tolist() == [4]
    square = ffgroup.power(group, regular, 2)
    assert square.tolist() == [[0, 1, 0, 0, 1, 0]]
    assert not ffgroup.power(group, regular, 4).any()


def test_membership_and_embedding():
    group = ffgroup.full_group(4, 2)
    sub = ffgroup.subgroup_from_roots(4, 2, [Root(1, 3)])
    assert ffgroup.is_member(sub, group.element({Root(1, 3): 1}))
    assert not ffgroup.is_member(sub, group.element({Root(1, 2): 1}))
    assert ffgroup.embed(sub, group, [0, 1]).tolist() == [0, 8]
    with pytest.raises(models.NotASubgroup):
        ffgroup.embed(sub, ffgroup.full_group(4, 3), [0])


def test_subgroup_closure_is_checked():
    with pytest.raises(models.NotClosedError) as exc_info:
        ffgroup.subgroup_from_roots(4, 2, [Root(1, 1), Root(2, 2)])
    assert (exc_info.value.first, exc_info.value.second) == (Root(1, 1), Root(2, 2))
    sub = ffgroup.subgroup_from_roots(4, 3, [Root(1, 1), Root(2, 2), Root(1, 2)])
    assert sub.order == 27
    assert sub.is_subgroup_of(ffgroup.full_group(4, 3))


def test_generators_of_full_group_are_simple_roots():
    group = ffgroup.full_group(5, 4)
    assert group.generator_roots == tuple(Root(i, i) for i in range(1, 5))
    assert len(group.generators) == 4 * 2


def test_enumeration_cap():
    with pytest.raises(models.CapExceeded) as exc_info:
        ffgroup.enumerate_elements(ffgroup.full_group(4, 3), cap=100)
    assert (exc_info.value.size, exc_info.value.cap) == (729, 100)
    models.config = models.OracleConfig(enum_cap=10)
    with pytest.raises(models.CapExceeded):
        ffgroup.conjugacy_classes(ffgroup.full_group(3, 3))


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------


def test_class_counts():
    for (n, q), histogram in HISTOGRAMS.items():
        classes = ffgroup.conjugacy_classes(ffgroup.full_group(n, q))
        assert len(classes) == sum(histogram.values())
        assert classes.sizes.sum() == q ** (n * (n - 1) // 2)


def test_classes_are_numbered_by_minimal_member():
    classes = ffgroup.conjugacy_classes(ffgroup.full_group(4, 2))
    assert classes.class_of[0] == 0
    assert classes.reps[0] == 0
    assert np.all(np.diff(classes.reps) > 0)


def test_class_data_helpers():
    classes = ffgroup.conjugacy_classes(ffgroup.full_group(3, 2))
    assert np.array_equal(classes.inverse_class, np.arange(len(classes)))
    power_map = classes.power_map(2)
    assert np.all(power_map[:, 0] == 0)
    assert np.array_equal(power_map[:, 1], np.arange(len(classes)))
    assert len(classes.central) == 2
    assert classes.to_json().sizes == [int(s) for s in classes.sizes]


def test_classes_are_cached():
    group = ffgroup.full_group(4, 2)
    assert ffgroup.conjugacy_classes(group) is ffgroup.conjugacy_classes(group)
    first = ffgroup.conjugacy_classes(group)
    ffgroup.clear_caches()
    assert ffgroup.conjugacy_classes(group) is not first


def test_center():
    center = ffgroup.center(ffgroup.full_group(4, 3))
    assert center.roots == rootsys.RootSet(4, [Root(1, 3)])
    assert center.order == 3


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


def test_graph_automorphism_on_root_elements():
    group = ffgroup.full_group(5, 3)
    for root in rootsys.positive_roots(5):
        image = ffgroup.graph_automorphism(group, group.root_row(root, 1))
        assert np.array_equal(image, group.root_row(rootsys.graph_auto(5, root), 2))


def test_graph_automorphism_is_multiplicative():
    group = ffgroup.full_group(4, 3)
    rng = np.random.default_rng(1)
    a, b = (group.rows_of(rng.integers(0, group.order, 100)) for _ in range(2))
    left = ffgroup.graph_automorphism(group, group.mul(a, b))
    right = group.mul(ffgroup.graph_automorphism(group, a), ffgroup.graph_automorphism(group, b))
    assert np.array_equal(left, right)


def test_normal_form():
    group = ffgroup.full_group(3, 2)
    order, coords = ffgroup.normal_form(group, root_element(group, ((1, 1), 1), ((2, 2), 1)))
    assert order == (Root(1, 1), Root(2, 2), Root(1, 2))
    assert coords.tolist() == [[1, 1, 0]]


def test_normal_form_reconstructs_every_element():
    group = ffgroup.full_group(4, 3)
    elements = ffgroup.enumerate_elements(group)
    order, coords = ffgroup.normal_form(group, elements)
    rebuilt = np.zeros_like(elements)
    for t, root in enumerate(order):
        step = np.zeros_like(elements)
        step[:, ffgroup.layout(4).position[root.entry]] = coords[:, t]
        rebuilt = group.mul(rebuilt, step)
    assert np.array_equal(rebuilt, elements)


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("q", [2, 3])
def test_t_k_embedding_is_an_isomorphism(n, q):
    # exhaustive pairs up to order 64, generator pairs beyond
    models.config = models.OracleConfig(homomorphism_pair_cap=4096)
    for k in range(1, n - 1):
        embedding = rootsys.t_k_embedding(n, k)
        dom = ffgroup.subgroup_from_roots(n, q, embedding.roots)
        check = ffgroup.verify_homomorphism(embedding.phi, dom, ffgroup.full_group(n - 1, q))
        assert check.bijective
        assert check.multiplicative


def test_map_killing_the_center_is_not_a_homomorphism():
    group = ffgroup.full_group(3, 2)
    phi = {Root(1, 1): Root(1, 1), Root(2, 2): Root(2, 2), Root(1, 2): None}
    check = ffgroup.verify_homomorphism(phi, group, group)
    assert not check.bijective
    assert not check.multiplicative


def test_missing_generator_image():
    group = ffgroup.full_group(3, 2)
    with pytest.raises(models.UndefinedGeneratorImage):
        ffgroup.verify_homomorphism({Root(1, 1): Root(1, 1)}, group, group)


# ---------------------------------------------------------------------------
# cosets
# ---------------------------------------------------------------------------


def test_left_coset_canon_picks_one_representative_per_coset():
    group = ffgroup.full_group(4, 2)
    sub = ffgroup.subgroup_from_roots(4, 2, rootsys.region_roots(4, Root(1, 3), "base"))
    elements = ffgroup.enumerate_elements(group)
    canon = ffgroup.left_coset_canon(group, sub, elements)
    assert len(np.unique(group.index_of(canon))) == group.order // sub.order
    complement = ffgroup.complement_rows(group, sub)
    assert set(group.index_of(canon).tolist()) == set(group.index_of(complement).tolist())


def test_left_coset_canon_is_constant_on_cosets():
    group = ffgroup.full_group(4, 3)
    sub = ffgroup.subgroup_from_roots(4, 3, rootsys.region_roots(4, Root(2, 3), "subtri"))
    rng = np.random.default_rng(2)
    g = group.rows_of(rng.integers(0, group.order, 60))
    h = sub.rows_of(rng.integers(0, sub.order, 60))
    assert np.array_equal(
        ffgroup.left_coset_canon(group, sub, g), ffgroup.left_coset_canon(group, sub, group.mul(g, h))
    )


def test_left_coset_canon_needs_a_subgroup():
    with pytest.raises(models.NotASubgroup):
        ffgroup.left_coset_canon(ffgroup.full_group(4, 2), ffgroup.full_group(4, 3), np.zeros((1, 6)))
