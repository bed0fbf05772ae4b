"""Permutation group construction and the cyclic product model."""

import pytest

from iwartin.errors import ElementNotInGroup, NotASubgroup
from iwartin.perms import (
    CyclicFactor,
    PermGroup,
    ProductWithCyclic,
    compose,
    cycle_lengths,
    direct_product_with_cyclic,
    identity_perm,
    inverse,
    is_valid_conjugation,
    perm_from_one_line,
    perm_order,
)

S3 = PermGroup.from_generators(3, [[2, 3, 1], [2, 1, 3]])
A5 = PermGroup.from_generators(5, [[2, 3, 4, 5, 1], [2, 3, 1, 4, 5]])


def test_known_orders():
    assert S3.order == 6
    assert A5.order == 60
    assert PermGroup.from_generators(3, [[2, 3, 1]]).order == 3


def test_class_counts():
    assert len(S3.classes) == 3
    assert len(A5.classes) == 5
    assert sum(c.size for c in A5.classes) == 60


def test_class_sort_is_canonical():
    orders = [c.element_order for c in S3.classes]
    assert orders == sorted(orders)
    assert S3.classes[0].size == 1  # identity first


def test_compose_inverse_roundtrip():
    for g in A5.elements:
        assert compose(g, inverse(g)) == identity_perm(5)
        assert perm_order(g) in (1, 2, 3, 5)


def test_cycle_lengths():
    assert cycle_lengths(perm_from_one_line([2, 3, 1, 4], 4)) == [1, 3]
    assert cycle_lengths(perm_from_one_line([2, 1, 4, 3], 4)) == [2, 2]


def test_subgroup_rejects_outsiders():
    with pytest.raises(ElementNotInGroup):
        S3.subgroup([perm_from_one_line([1, 2, 3, 4], 4)])


def test_subgroup_membership_check():
    H = A5.subgroup([perm_from_one_line([2, 3, 1, 4, 5], 5)])
    assert H.order == 3
    assert H.is_subgroup_of(A5)
    assert not S3.is_subgroup_of(A5)


def test_cyclic_factor_dlog():
    C = CyclicFactor(7, 3)
    assert C.order == 6
    # 3^k mod 7 walks 3, 2, 6, 4, 5, 1
    assert [C.dlog[pow(3, k, 7)] for k in range(6)] == list(range(6))


def test_product_with_cyclic():
    H = ProductWithCyclic(S3, CyclicFactor(7, 3))
    assert H.order == 36
    g = H.elements[5]
    assert H.project_left(g) in S3
    assert 0 <= H.cyclic_exponent(g) < 6


def test_product_exponent_is_homomorphism():
    H = ProductWithCyclic(S3, CyclicFactor(5, 2))
    for a in H.elements[:12]:
        for b in H.elements[:12]:
            assert (H.cyclic_exponent(compose(a, b))
                    == (H.cyclic_exponent(a) + H.cyclic_exponent(b)) % 4)


def test_direct_product_order():
    G = direct_product_with_cyclic(A5, CyclicFactor(29, 2))
    assert G.order == 60 * 28


def test_is_valid_conjugation():
    c = perm_from_one_line([2, 1, 3], 3)
    assert is_valid_conjugation(S3, c)
    assert not is_valid_conjugation(S3, identity_perm(3))
