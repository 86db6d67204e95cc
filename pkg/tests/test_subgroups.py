import pytest

from groupkit.core import (
    Cyclic,
    Dicyclic,
    Dihedral,
    Product,
    Symmetric,
    construct,
    element_order,
    exponent,
    is_abelian,
)
from groupkit.errors import IndexOutOfRange, NotNormal, NotPrime, OrderBound
from groupkit.iso import automorphisms, find_isomorphism
from groupkit.subgroups import (
    agemo,
    all_subgroups,
    center,
    center_of,
    commutator,
    derived_subgroup,
    generate_subgroup,
    members_of,
    normal_subgroups,
    project_bits,
    quotient,
    set_product,
    subgroup_as_group,
    sylow,
    trivial_subgroup,
    whole_subgroup,
)

from conftest import subgroups_by_subset_filter


def test_generate_empty_is_trivial():
    g = construct(Symmetric(3))
    assert generate_subgroup(g, []).members() == [0]


def test_generate_in_cyclic6():
    g = construct(Cyclic(6))
    assert generate_subgroup(g, [3]).members() == [0, 3]


def test_generate_whole_s3():
    g = construct(Symmetric(3))
    two_cycle = next(x for x in range(6) if element_order(g, x) == 2)
    three_cycle = next(x for x in range(6) if element_order(g, x) == 3)
    assert generate_subgroup(g, [two_cycle, three_cycle]).order == 6


def test_generate_rejects_bad_index():
    with pytest.raises(IndexOutOfRange):
        generate_subgroup(construct(Cyclic(3)), [5])


def test_all_subgroups_examples():
    assert len(all_subgroups(construct(Cyclic(1)))) == 1
    v4 = construct(Product(Cyclic(2), Cyclic(2)))
    assert [s.order for s in all_subgroups(v4)] == [1, 2, 2, 2, 4]
    d4 = construct(Dihedral(4))
    assert len(all_subgroups(d4)) == 10


def test_all_subgroups_matches_subset_oracle_on_samples():
    for recipe in (Dihedral(4), Dicyclic(2), Symmetric(3), Cyclic(12)):
        g = construct(recipe)
        got = [s.bits for s in all_subgroups(g)]
        assert got == subgroups_by_subset_filter(g), recipe


def test_all_subgroups_order_bound():
    g = construct(Cyclic(72))
    with pytest.raises(OrderBound):
        all_subgroups(g)


def test_lagrange(catalog16):
    for entry in catalog16:
        for s in all_subgroups(entry.group):
            assert entry.group.order % s.order == 0


def test_normal_subgroups_examples(catalog16):
    for entry in catalog16:
        g = entry.group
        if is_abelian(g):
            assert normal_subgroups(g) == all_subgroups(g), entry.name
    s3 = construct(Symmetric(3))
    assert [s.order for s in normal_subgroups(s3)] == [1, 3, 6]
    q8 = construct(Dicyclic(2))
    assert len(normal_subgroups(q8)) == len(all_subgroups(q8)) == 6


def test_center_examples():
    c6 = construct(Cyclic(6))
    assert center(c6).order == 6
    assert center(construct(Dicyclic(2))).order == 2
    assert center(construct(Symmetric(3))).order == 1


def test_commutator_examples():
    c6 = construct(Cyclic(6))
    whole = whole_subgroup(c6)
    assert commutator(c6, whole, whole).order == 1
    assert derived_subgroup(construct(Symmetric(3))).order == 3
    d4 = construct(Dihedral(4))
    assert derived_subgroup(d4).members() == [0, 2]


def test_quotient_by_trivial_and_whole():
    g = construct(Symmetric(3))
    qm = quotient(g, trivial_subgroup(g))
    assert qm.target.order == 6
    assert sorted(qm.projection) == list(range(6))
    assert find_isomorphism(qm.target, g) is not None
    qm2 = quotient(g, whole_subgroup(g))
    assert qm2.target.order == 1


def test_quotient_d4_by_center():
    d4 = construct(Dihedral(4))
    qm = quotient(d4, center(d4))
    assert qm.target.order == 4
    v4 = construct(Product(Cyclic(2), Cyclic(2)))
    assert find_isomorphism(qm.target, v4) is not None


def test_quotient_requires_normal():
    s3 = construct(Symmetric(3))
    reflection = next(x for x in range(6) if element_order(s3, x) == 2)
    with pytest.raises(NotNormal):
        quotient(s3, generate_subgroup(s3, [reflection]))


def test_quotient_is_homomorphism_with_equal_fibers(catalog16):
    for entry in catalog16:
        g = entry.group
        for n in normal_subgroups(g):
            qm = quotient(g, n)
            proj = qm.projection
            ttab = qm.target.table
            for x in range(g.order):
                row = g.table[x]
                px = proj[x]
                for y in range(g.order):
                    assert proj[row[y]] == ttab[px][proj[y]]
            fibers = {}
            for x, c in enumerate(proj):
                fibers.setdefault(c, 0)
                fibers[c] += 1
            assert set(fibers.values()) == {n.order}


def test_set_product_examples():
    g = construct(Symmetric(3))
    a = generate_subgroup(g, [next(x for x in range(6) if element_order(g, x) == 2)])
    b = generate_subgroup(g, [next(x for x in range(6) if element_order(g, x) == 3)])
    bits, ok = set_product(g, a, b)
    assert ok and bits.bit_count() == 6

    bits, ok = set_product(g, a, trivial_subgroup(g))
    assert ok and bits == a.bits

    v4 = construct(Product(Cyclic(2), Cyclic(2)))
    pa = generate_subgroup(v4, [2])
    pb = generate_subgroup(v4, [1])
    bits, ok = set_product(v4, pa, pb)
    assert ok and bits.bit_count() == 4 == pa.order * pb.order


def test_set_product_size_formula(catalog16):
    for entry in catalog16:
        g = entry.group
        subs = all_subgroups(g)
        for a in subs:
            for b in subs:
                bits, _ = set_product(g, a, b)
                inter = (a.bits & b.bits).bit_count()
                assert bits.bit_count() * inter == a.order * b.order, entry.name


def test_set_product_non_subgroup_case():
    # two reflections in S3 generate the whole group but their product set
    # has size 4, so it cannot be a subgroup
    s3 = construct(Symmetric(3))
    reflections = [x for x in range(6) if element_order(s3, x) == 2]
    a = generate_subgroup(s3, [reflections[0]])
    b = generate_subgroup(s3, [reflections[1]])
    bits, ok = set_product(s3, a, b)
    assert bits.bit_count() == 4 and not ok


def test_sylow_examples():
    assert sylow(construct(Cyclic(6)), 5).order == 1
    s = sylow(construct(Cyclic(12)), 2)
    assert s.members() == [0, 3, 6, 9]
    assert sylow(construct(Symmetric(3)), 3).order == 3
    assert sylow(construct(Symmetric(4)), 2).order == 8
    with pytest.raises(NotPrime):
        sylow(construct(Cyclic(6)), 4)


def test_sylow_nonabelian_above_lattice_cap():
    big_abelian = construct(Cyclic(66))
    assert sylow(big_abelian, 3).order == 3  # abelian path ignores the cap
    with pytest.raises(OrderBound):
        sylow(construct(Dihedral(33)), 3)


def test_agemo_examples():
    c4 = construct(Cyclic(4))
    assert agemo(c4, 1).order == 4
    assert agemo(c4, 2).members() == [0, 2]
    for g in (c4, construct(Dicyclic(2)), construct(Symmetric(3))):
        assert agemo(g, exponent(g)).order == 1


def test_agemo_is_characteristic(catalog16):
    for entry in catalog16:
        g = entry.group
        for n in range(1, exponent(g) + 1):
            bits = agemo(g, n).bits
            for auto in automorphisms(g):
                mapped = 0
                for m in members_of(bits):
                    mapped |= 1 << auto.map[m]
                assert mapped == bits, (entry.name, n)


def test_agemo_commutes_with_quotients(catalog16):
    for entry in catalog16:
        g = entry.group
        for n in normal_subgroups(g):
            qm = quotient(g, n)
            for k in range(1, exponent(g) + 1):
                image = project_bits(qm, agemo(g, k).bits)
                assert image == agemo(qm.target, k).bits, (entry.name, k)


def test_center_of_subgroup():
    d4c2 = construct(Product(Dihedral(4), Cyclic(2)))
    d4_part = generate_subgroup(d4c2, [2, 8])  # r and s embed at (r,0)=2, (s,0)=8
    assert d4_part.order == 8
    z = center_of(d4c2, d4_part)
    assert z.order == 2


def test_subgroup_as_group_round_trip():
    g = construct(Product(Symmetric(3), Cyclic(2)))
    for s in all_subgroups(g):
        extracted, members = subgroup_as_group(s)
        assert extracted.order == s.order
        assert list(members) == s.members()
        # embedding is a homomorphism
        for i in range(extracted.order):
            for j in range(extracted.order):
                assert members[extracted.table[i][j]] == g.table[members[i]][members[j]]
