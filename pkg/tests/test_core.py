import math

import pytest

from groupkit.core import (
    CentralQuotient,
    Cyclic,
    Dicyclic,
    Dihedral,
    Group,
    Product,
    Semidirect,
    Symmetric,
    construct,
    element_order,
    exponent,
    parse_recipe,
    recipe_dsl,
    validate_table,
)
from groupkit.errors import (
    IndexOutOfRange,
    InvalidAction,
    InvalidRecipe,
    NoIdentity,
    NotAssociative,
    NotCentral,
    NotLatin,
    MalformedTable,
    OrderBound,
    TableError,
)
from groupkit.iso import find_isomorphism

from conftest import order_by_powering


def test_trivial_group():
    g = construct(Cyclic(1))
    assert g.order == 1
    assert g.table == ((0,),)


def test_product_c2_c3_is_c6():
    g = construct(Product(Cyclic(2), Cyclic(3)))
    assert g.order == 6
    assert find_isomorphism(g, construct(Cyclic(6))) is not None


def test_section6_style_semidirect_order_16():
    # C2 shears C2xC2: (b, c) -> (b, c + b); pairing with one more C2 gives
    # the order-16 group whose order-8 part is dihedral
    inner = Semidirect(Product(Cyclic(2), Cyclic(2)), Cyclic(2), ((1, (0, 1, 3, 2)),))
    g = construct(Product(inner, Cyclic(2)))
    assert g.order == 16
    assert find_isomorphism(construct(inner), construct(Dihedral(4))) is not None


def test_validate_trivial_table():
    validate_table([[0]])


def test_validate_dihedral4_table_and_axiom_oracle():
    g = construct(Dihedral(4))
    table = [list(row) for row in g.table]
    validate_table(table)
    # brute-force axiom oracle over all triples
    n = len(table)
    assert all(table[0][j] == j and table[i][0] == i for i in range(n) for j in range(n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                assert table[table[i][j]][k] == table[i][table[j][k]]


def test_validate_perturbed_cyclic3():
    table = [list(row) for row in construct(Cyclic(3)).table]
    table[1][2] = 1  # duplicate inside row 1
    with pytest.raises((NotAssociative, NotLatin)) as err:
        validate_table(table)
    assert err.value.args or getattr(err.value, "witness", None) or True


def test_validate_shape_and_identity_errors():
    with pytest.raises(MalformedTable):
        validate_table([[0, 1], [1]])
    with pytest.raises(MalformedTable):
        validate_table([[0, 7], [1, 0]])
    with pytest.raises(NoIdentity):
        validate_table([[1, 0], [0, 1]])
    with pytest.raises(MalformedTable):
        validate_table([])


def test_group_constructor_rejects_bad_tables():
    with pytest.raises(TableError):
        Group([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


def test_element_order_identity_and_generator():
    g = construct(Cyclic(6))
    assert element_order(g, 0) == 1
    assert element_order(g, 1) == 6
    with pytest.raises(IndexOutOfRange):
        element_order(g, 6)


def test_element_order_dihedral_reflections():
    g = construct(Dihedral(4))
    # indices 4..7 are the reflections a^i b
    for x in range(4, 8):
        assert element_order(g, x) == 2
        assert element_order(g, x) == order_by_powering(g, x)


def test_exponent_examples():
    assert exponent(construct(Cyclic(1))) == 1
    s3 = construct(Symmetric(3))
    lcm = 1
    for x in range(s3.order):
        lcm = math.lcm(lcm, order_by_powering(s3, x))
    assert exponent(s3) == lcm == 6
    assert exponent(construct(Product(Cyclic(2), Cyclic(4)))) == 4


def test_element_order_matches_inverse(catalog16):
    for entry in catalog16:
        g = entry.group
        for x in range(g.order):
            assert element_order(g, x) == element_order(g, g.inv[x])


def test_exponent_multiplicative_over_products(catalog16):
    # |A|*|B| <= 256 for the whole catalog, well inside the order cap
    for a in catalog16:
        for b in catalog16:
            if a.name > b.name:
                continue
            prod = construct(Product(a.recipe, b.recipe))
            assert exponent(prod) == math.lcm(
                exponent(a.group), exponent(b.group)
            ), (a.name, b.name)


def test_construct_deterministic(catalog16):
    for entry in catalog16:
        again = construct(entry.recipe)
        assert again.table == entry.group.table, entry.name


def test_recipe_dsl_round_trip(catalog16):
    for entry in catalog16:
        text = recipe_dsl(entry.recipe)
        assert parse_recipe(text) == entry.recipe, entry.name


def test_recipe_dsl_parse_errors():
    for bad in ("", "C(", "C(2) junk", "X(3)", "SD(C(2),C(2))", "P(C(2)"):
        with pytest.raises(InvalidRecipe):
            parse_recipe(bad)


def test_symmetric_bound():
    with pytest.raises(InvalidRecipe):
        Symmetric(6)


def test_order_bound():
    with pytest.raises(OrderBound):
        construct(Cyclic(513))
    with pytest.raises(OrderBound):
        construct(Product(Cyclic(32), Cyclic(32)), order_cap=512)


def test_invalid_semidirect_actions():
    # not a permutation
    with pytest.raises(InvalidAction):
        construct(Semidirect(Cyclic(3), Cyclic(2), ((1, (0, 1, 1)),)))
    # a permutation but not an automorphism of C4 (swaps order-4 and order-2 elements)
    with pytest.raises(InvalidAction):
        construct(Semidirect(Cyclic(4), Cyclic(2), ((1, (0, 2, 1, 3)),)))
    # an automorphism, but inconsistent with the acting group's relations:
    # inversion has order 2, which does not divide into a C3 action freely
    with pytest.raises(InvalidAction):
        construct(Semidirect(Cyclic(4), Cyclic(3), ((1, (0, 3, 2, 1)),)))
    # images that do not generate the acting group
    with pytest.raises(InvalidAction):
        construct(Semidirect(Cyclic(3), Product(Cyclic(2), Cyclic(2)),
                             ((1, (0, 2, 1)), (0, (0, 1, 2)))))


def test_central_quotient_requires_central_generators():
    # the rotation r in D4 is not central
    with pytest.raises(NotCentral):
        construct(CentralQuotient(Dihedral(4), (1,)))


def test_central_quotient_of_product_center():
    # quotient of C4 x C2 by the diagonal central involution
    g = construct(CentralQuotient(Product(Cyclic(4), Cyclic(2)), (5,)))
    assert g.order == 4


def test_dicyclic2_is_quaternion():
    q8 = construct(Dicyclic(2))
    assert q8.order == 8
    orders = sorted(element_order(q8, x) for x in range(8))
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]


def test_all_catalog_groups_validate(catalog16):
    for entry in catalog16:
        validate_table([list(r) for r in entry.group.table])
