import itertools
import json
from fractions import Fraction

import numpy as np
import pytest

from utsuper import charoracle, ffgroup, models, rootsys, superalg
from utsuper.charoracle import ClassFunction
from utsuper.cyclo import Cyclo
from utsuper.rootsys import Root
from tests.conftest import HISTOGRAMS


def classes_of(n, q):
    return ffgroup.conjugacy_classes(ffgroup.full_group(n, q))


def basic_symbols(n, q):
    yield superalg.trivial_symbol(n, q)
    for basic_set in rootsys.enumerate_basic_sets(n):
        for params in itertools.product(range(1, q), repeat=len(basic_set)):
            yield superalg.basic(n, q, zip(basic_set, params))


# ---------------------------------------------------------------------------
# class functions
# ---------------------------------------------------------------------------


def test_psi_is_the_trace_character():
    assert charoracle.psi(ffgroup.field_make(2), 1) == -1
    assert charoracle.psi(ffgroup.field_make(4), 1) == 1
    assert charoracle.psi(ffgroup.field_make(4), 2) == -1
    assert charoracle.psi(ffgroup.field_make(3), 2) == Cyclo.zeta(3, 2)


def test_group_conductor():
    assert charoracle.group_conductor(ffgroup.full_group(5, 2)) == 8
    assert charoracle.group_conductor(ffgroup.full_group(4, 3)) == 9
    assert charoracle.group_conductor(ffgroup.full_group(3, 4)) == 4


def test_trivial_and_regular_characters():
    classes = classes_of(4, 2)
    trivial = charoracle.trivial_character(classes)
    regular = charoracle.regular_character(classes)
    assert trivial.degree == 1
    assert regular.degree == 64
    assert charoracle.inner(trivial, trivial) == 1
    assert charoracle.inner(regular, trivial) == 1
    assert charoracle.inner(regular, regular) == 64


def test_class_function_arithmetic():
    classes = classes_of(3, 3)
    chi = charoracle.elementary_character(classes, Root(1, 1), 1)
    assert (chi + chi) == chi * 2
    assert (2 * chi).degree == 2
    assert chi.value(0) == 1
    assert chi * charoracle.trivial_character(classes) == chi
    assert chi.conj() == charoracle.elementary_character(classes, Root(1, 1), 2)


def test_owner_mismatch():
    first = charoracle.trivial_character(classes_of(3, 2))
    second = charoracle.trivial_character(classes_of(4, 2))
    with pytest.raises(models.OwnerMismatch):
        first + second
    with pytest.raises(models.OwnerMismatch):
        charoracle.inner(first, second)


def test_cf_ops_dispatch():
    classes = classes_of(3, 2)
    chi = charoracle.elementary_character(classes, Root(1, 2), 1)
    assert charoracle.cf_ops("tensor", chi, chi) == charoracle.tensor(chi, chi)
    assert charoracle.cf_ops("conjugate", chi) == chi
    assert charoracle.cf_ops("inner", chi, chi) == 1
    with pytest.raises(ValueError):
        charoracle.cf_ops("divide", chi, chi)


def test_restrict_regular_character():
    group = ffgroup.full_group(4, 2)
    sub = ffgroup.subgroup_from_roots(4, 2, rootsys.region_roots(4, Root(2, 3), "subtri"))
    sub_classes = ffgroup.conjugacy_classes(sub)
    restricted = charoracle.restrict(charoracle.regular_character(classes_of(4, 2)), sub_classes)
    assert restricted == charoracle.regular_character(sub_classes) * (group.order // sub.order)
    with pytest.raises(models.NotASubgroup):
        charoracle.restrict(charoracle.trivial_character(sub_classes), classes_of(4, 2))


# ---------------------------------------------------------------------------
# linear and induced characters
# ---------------------------------------------------------------------------


def test_base_roots_drop_the_arms():
    group = ffgroup.full_group(4, 2)
    roots = charoracle.base_roots(group, [Root(1, 3)])
    assert roots == rootsys.RootSet(4, [(1, 3), (2, 2), (2, 3), (3, 3)])


def test_linear_character_validation():
    group = ffgroup.full_group(4, 3)
    base = charoracle.base_group(group, [Root(1, 3)])
    with pytest.raises(models.ZeroParameter):
        charoracle.LinearCharacter(base, {Root(1, 3): 0})
    with pytest.raises(models.WrongBaseGroup):
        charoracle.LinearCharacter(group, {Root(1, 3): 1})


def test_linear_character_values():
    group = ffgroup.full_group(3, 3)
    lam = charoracle.lambda_character(group, {Root(1, 2): 1})
    rows = lam.group.rows_of(np.arange(lam.group.order))
    exponents = lam.exponents(rows)
    expected = rows[:, ffgroup.layout(3).position[Root(1, 2).entry]].astype(np.int64) % 3
    assert np.array_equal(exponents, expected)


def test_linear_lambda_is_a_character_of_the_base_group():
    group = ffgroup.full_group(4, 2)
    base = charoracle.base_group(group, [Root(1, 3)])
    lam = charoracle.linear_lambda(base, Root(1, 3), 1)
    assert lam.degree == 1
    assert charoracle.inner(lam, lam) == 1


def test_induction_paths_agree():
    classes = classes_of(4, 2)
    lam = charoracle.lambda_character(classes.group, {Root(1, 3): 1})
    assert charoracle.induce(lam, classes) == charoracle.induce(lam.class_function(), classes)


def test_frobenius_reciprocity():
    classes = classes_of(4, 2)
    table = charoracle.irr_table(classes.group)
    lam = charoracle.lambda_character(classes.group, {Root(1, 3): 1}).class_function()
    induced = charoracle.induce(lam, classes)
    for chi in table.characters:
        assert charoracle.inner(induced, chi) == charoracle.inner(lam, charoracle.restrict(chi, lam.classes))


def test_induce_needs_a_subgroup():
    classes = classes_of(4, 2)
    other = charoracle.trivial_character(classes_of(4, 3))
    with pytest.raises(models.NotASubgroup):
        charoracle.induce(other, classes)


def test_elementary_characters_are_irreducible():
    for n, q in ((3, 3), (4, 2), (4, 3)):
        classes = classes_of(n, q)
        for alpha in rootsys.positive_roots(n):
            chi = charoracle.elementary_character(classes, alpha, 1)
            assert chi.degree == q**alpha.height
            assert charoracle.inner(chi, chi) == 1


def test_basic_character_of_empty_data_is_trivial():
    classes = classes_of(4, 2)
    assert charoracle.basic_character(classes, {}) == charoracle.trivial_character(classes)


def test_basic_character_is_the_tensor_of_elementary_ones():
    classes = classes_of(4, 3)
    params = {Root(1, 2): 1, Root(2, 3): 2}
    product = charoracle.elementary_character(classes, Root(1, 2), 1) * charoracle.elementary_character(
        classes, Root(2, 3), 2
    )
    assert charoracle.basic_character(classes, params) == product


def test_basic_characters_are_orthogonal():
    classes = classes_of(4, 2)
    symbols = list(basic_symbols(4, 2))
    characters = [charoracle.symbol_character(classes, symbol) for symbol in symbols]
    for (a, first), (b, second) in itertools.combinations_with_replacement(enumerate(characters), 2):
        norm = charoracle.inner(first, second)
        if a == b:
            assert norm == superalg.constituent_stats(symbols[a]).norm().evaluate(2)
        else:
            assert norm == 0


def test_expression_matches_product():
    classes = classes_of(4, 3)
    for factors in ("(2,3):1,(1,3):1", "(1,2):1,(1,2):2", "(1,1):1,(1,3):2", "(1,3):1,(1,3):1"):
        parsed = superalg.parse_factors(factors)
        product = None
        for root, t in parsed:
            chi = charoracle.elementary_character(classes, root, t)
            product = chi if product is None else product * chi
        assert charoracle.expr_character(classes, superalg.expr_from_factors(4, 3, parsed)) == product


def test_nested_multiplicity_against_inner_products():
    classes = classes_of(4, 3)
    chi = charoracle.elementary_character(classes, Root(1, 3), 1)
    square = chi * chi
    for symbol, coeff in superalg.nested_multiplicity(4, 3, Root(1, 3), 1, 1).items():
        xi = charoracle.symbol_character(classes, symbol)
        assert charoracle.inner(square, xi) / charoracle.inner(xi, xi) == coeff == 2


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def test_dixon_prime():
    assert charoracle.dixon_prime(64, 4) == 17
    assert charoracle.dixon_prime(2**15, 8) == 401
    assert charoracle.dixon_prime(3**10, 9) == 487


def test_class_matrix_rows_sum_to_class_size():
    classes = classes_of(4, 2)
    assert np.array_equal(charoracle.class_matrix(classes, 0), np.eye(len(classes), dtype=np.int64))
    for r in range(len(classes)):
        assert np.all(charoracle.class_matrix(classes, r).sum(axis=1) == classes.sizes[r])


@pytest.mark.parametrize("key", sorted(HISTOGRAMS))
def test_degree_histograms(key):
    n, q = key
    table = charoracle.irr_table(ffgroup.full_group(n, q))
    assert charoracle.degree_histogram(table, q) == HISTOGRAMS[key]
    assert charoracle.orthogonality_check(table)


def test_table_layout():
    table = charoracle.irr_table(ffgroup.full_group(4, 2))
    assert table.degrees[0] == 1
    assert table.character(0) == charoracle.trivial_character(table.classes)
    assert list(table.degrees[1:]) == sorted(table.degrees[1:])
    assert len(table.characters) == len(table.classes)


def test_table_of_a_pattern_subgroup():
    sub = ffgroup.subgroup_from_roots(5, 3, rootsys.hook_roots(Root(1, 3)))
    table = charoracle.irr_table(sub)
    assert charoracle.orthogonality_check(table)
    assert sum(d * d for d in table.degrees) == sub.order


def test_table_over_gf4():
    table = charoracle.irr_table(ffgroup.full_group(3, 4))
    assert charoracle.degree_histogram(table, 4) == {0: 16, 1: 3}


def test_table_caps():
    models.config = models.OracleConfig(table_cap=100)
    with pytest.raises(models.CapExceeded):
        charoracle.irr_table(ffgroup.full_group(4, 3))
    models.config = models.OracleConfig(class_cap=10)
    with pytest.raises(models.CapExceeded):
        charoracle.irr_table(ffgroup.full_group(4, 2))


def test_tables_are_memoized():
    group = ffgroup.full_group(3, 3)
    assert charoracle.irr_table(group) is charoracle.irr_table(group)


def test_decompose_regular_character():
    table = charoracle.irr_table(ffgroup.full_group(4, 2))
    parts = charoracle.decompose_into_irr(charoracle.regular_character(table.classes), table)
    assert parts == [(index, degree) for index, degree in enumerate(table.degrees)]


def test_decompose_rejects_non_characters():
    table = charoracle.irr_table(ffgroup.full_group(3, 2))
    values = np.zeros_like(charoracle.trivial_character(table.classes).values)
    values[0, 0] = 1
    with pytest.raises(models.NonIntegralMultiplicity):
        charoracle.decompose_into_irr(ClassFunction(table.classes, values), table)
    with pytest.raises(models.OwnerMismatch):
        charoracle.decompose_into_irr(charoracle.trivial_character(classes_of(3, 3)), table)


def test_degree_histogram_rejects_other_degrees():
    table = charoracle.irr_table(ffgroup.full_group(3, 2))
    fake = table._replace(degrees=(1, 3))
    with pytest.raises(models.NonPowerDegree):
        charoracle.degree_histogram(fake, 2)


def test_almost_faithful_subset():
    for n, q in ((4, 2), (4, 3)):
        group = ffgroup.full_group(n, q)
        table = charoracle.irr_table(group)
        center = ffgroup.center(group)
        faithful = charoracle.almost_faithful_subset(table, center)
        assert len(faithful.buckets) == q - 1
        squares = sum(table.degrees[index] ** 2 for index in faithful.indices)
        assert squares == group.order - group.order // center.order
    with pytest.raises(models.WrongBaseGroup):
        charoracle.almost_faithful_subset(
            charoracle.irr_table(ffgroup.full_group(4, 2)), ffgroup.subgroup_from_roots(4, 2, [Root(1, 2), Root(1, 3)])
        )


# ---------------------------------------------------------------------------
# Mackey inner products
# ---------------------------------------------------------------------------


def test_mackey_matches_the_oracle():
    group = ffgroup.full_group(4, 2)
    classes = ffgroup.conjugacy_classes(group)
    symbols = list(basic_symbols(4, 2))[1:]
    for first, second in itertools.combinations_with_replacement(symbols[:8], 2):
        expected = charoracle.inner(
            charoracle.symbol_character(classes, first), charoracle.symbol_character(classes, second)
        )
        assert charoracle.mackey_inner(group, first.phi, second.phi) == expected


def test_mackey_crossing_pair():
    group = ffgroup.full_group(4, 3)
    params = {Root(1, 2): 1, Root(2, 3): 1}
    assert charoracle.mackey_inner(group, params, params) == 3


def test_mackey_cap():
    models.config = models.OracleConfig(mackey_coset_cap=2)
    with pytest.raises(models.CapExceeded):
        charoracle.mackey_inner(ffgroup.full_group(4, 2), {Root(1, 3): 1}, {Root(1, 3): 1})


@pytest.mark.slow
def test_mackey_norms_at_rank_seven():
    group = ffgroup.full_group(7, 2)
    shapes = {
        4: [Root(2, 4), Root(1, 5), Root(3, 6)],
        8: [Root(1, 4), Root(2, 5), Root(3, 6)],
        2: [Root(1, 5), Root(2, 6)],
        1: [Root(1, 6)],
    }
    for expected, roots in shapes.items():
        params = {root: 1 for root in roots}
        assert charoracle.mackey_inner(group, params, params) == expected
    assert charoracle.mackey_inner(group, {Root(1, 6): 1}, {Root(1, 5): 1, Root(2, 6): 1}) == 0


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def test_table_document_round_trip():
    table = charoracle.irr_table(ffgroup.full_group(4, 2))
    document = charoracle.table_document(table)
    assert document.model_dump(by_alias=True)["schema"] == 1
    loaded = charoracle.load_table_document(document, table.classes)
    assert loaded.degrees == table.degrees
    assert np.array_equal(loaded.values, table.values)


def test_table_document_mismatch():
    table = charoracle.irr_table(ffgroup.full_group(3, 2))
    document = charoracle.table_document(table)
    with pytest.raises(ValueError):
        charoracle.load_table_document(document, classes_of(3, 3))
    tampered = document.model_copy(update={"conductor": 8})
    with pytest.raises(ValueError):
        charoracle.load_table_document(tampered, table.classes)


def test_table_document_rejects_fractional_coefficients():
    table = charoracle.irr_table(ffgroup.full_group(3, 2))
    document = charoracle.table_document(table)
    payload = document.model_dump(by_alias=True)
    payload["irreducibles"][0]["values"][0][0] = "1/2"
    tampered = models.TableDocument.model_validate(payload)
    with pytest.raises(ValueError, match="not an integer"):
        charoracle.load_table_document(tampered, table.classes)


def test_table_cache_store_and_load(tmp_path):
    cache = charoracle.TableCache(tmp_path)
    group = ffgroup.full_group(4, 2)
    table = charoracle.irr_table(group, cache)
    path = cache.path_for(group)
    assert path.is_file()
    assert path.name.startswith("table-n4-q2-")
    assert json.loads(path.read_text())["schema"] == 1
    charoracle.clear_caches()
    loaded = cache.load(table.classes)
    assert loaded.degrees == table.degrees


def test_table_cache_discards_corrupt_entries(tmp_path):
    cache = charoracle.TableCache(tmp_path)
    group = ffgroup.full_group(3, 2)
    path = cache.path_for(group)
    path.write_text('{"schema": 1, "n": 3}')
    assert cache.load(ffgroup.conjugacy_classes(group)) is None
    table = charoracle.irr_table(group, cache)
    assert charoracle.degree_histogram(table, 2) == HISTOGRAMS[(3, 2)]
    assert json.loads(path.read_text())["conductor"] == 4


def test_inner_is_exact():
    classes = classes_of(3, 2)
    chi = charoracle.elementary_character(classes, Root(1, 2), 1)
    assert charoracle.inner(chi, charoracle.trivial_character(classes)) == Fraction(0)
