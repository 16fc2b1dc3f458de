from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from bihecke import DescriptorError, DomainError, Order, create_group, parse_descriptor
from bihecke.posets import bits

from conftest import SMALL_GROUPS


def inversions(p):
    return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])


def tableau_leq(u, v):
    """Ehresmann criterion: sorted prefixes of u are dominated by those of v."""
    for k in range(1, len(u)):
        if any(a > b for a, b in zip(sorted(u[:k]), sorted(v[:k]))):
            return False
    return True


def one_line(g, w):
    return tuple(int(c) for c in g.text(w))


def test_descriptor_parsing():
    assert parse_descriptor("A3").rank == 3
    assert str(parse_descriptor(" I2(5) ")) == "I2(5)"
    for bad in ["A0", "B3", "I2(1)", "A", "I2()", ""]:
        with pytest.raises(DescriptorError):
            create_group(bad)


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("A3", 24), ("A4", 120),
                                        ("I2(2)", 4), ("I2(5)", 10), ("I2(6)", 12)])
def test_orders(name, order):
    assert create_group(name).order == order


def test_canonical_indexing_A2(A2):
    assert [A2.text(w) for w in range(6)] == ["123", "132", "213", "231", "312", "321"]
    assert A2.text(A2.w0) == "321"
    assert A2.idx("123") == 0


def test_group_is_cached():
    assert create_group("A2") is create_group("A2")


def test_length_is_inversions(A3):
    for w in range(A3.order):
        assert A3.length[w] == inversions(one_line(A3, w))


def test_descents_from_one_line(A3):
    for w in range(A3.order):
        p = one_line(A3, w)
        right = {i for i in range(1, 4) if p[i - 1] > p[i]}
        pos = {v: k for k, v in enumerate(p)}
        left = {i for i in range(1, 4) if pos[i + 1] < pos[i]}
        assert A3.descent_sets(w) == (frozenset(left), frozenset(right))


def test_right_multiplication_swaps_positions(A3):
    w = A3.idx("4312")
    assert A3.text(A3.mul(w, A3.s(1))) == "3412"
    assert A3.text(A3.mul(A3.s(1), w)) == "4321"


def test_bruhat_matches_tableau_criterion(A3):
    below = A3.below(Order.BRUHAT)
    for u in range(A3.order):
        for v in range(A3.order):
            assert bool(below[v] >> u & 1) == tableau_leq(one_line(A3, u), one_line(A3, v))


def test_weak_orders_by_inversion_sets(A3):
    def inv_positions(p):
        return {(a, b) for a in range(4) for b in range(a + 1, 4) if p[a] > p[b]}

    def inv_values(p):
        return {(p[b], p[a]) for a, b in inv_positions(p)}

    for u in range(A3.order):
        for v in range(A3.order):
            pu, pv = one_line(A3, u), one_line(A3, v)
            assert A3.leq(u, v, Order.LEFT) == (inv_positions(pu) <= inv_positions(pv))
            assert A3.leq(u, v, Order.RIGHT) == (inv_values(pu) <= inv_values(pv))


def test_weak_intervals_of_4312(A3):
    right = {str(e) for e in A3.weak_interval("4312", "right")}
    assert len(right) == 12
    assert {"1234", "1432", "4132", "4312", "3412"} <= right


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_basic_identities(name):
    g = create_group(name)
    for w in range(g.order):
        assert g.mul(w, g.inverse[w]) == 0
        assert g.from_word(g.reduced_word(w)) == w
        assert len(g.reduced_word(w)) == g.length[w]
        assert g.length[g.mul(g.w0, w)] == g.length[g.w0] - g.length[w]
    assert g.dr[g.w0] == g.full_mask == g.dl[g.w0]


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_parabolic_decomposition(name):
    g = create_group(name)
    for J in g.all_subsets():
        WJ = g.parabolic_subgroup(J)
        for w in range(g.order):
            d = g.parabolic_decompose(w, g.subset(J), "left")
            x, rep = d.parts
            assert WJ >> x.index & 1 and g.dl[rep.index] & J == 0
            assert g.mul(x.index, rep.index) == w
            assert g.length[w] == x.length + rep.length
            d = g.parabolic_decompose(w, g.subset(J), "right")
            rep, y = d.parts
            assert g.mul(rep.index, y.index) == w and g.dr[rep.index] & J == 0


def test_dihedral_text_round_trip():
    g = create_group("I2(5)")
    for w in range(g.order):
        assert g.idx(g.text(w)) == w
    assert g.text(g.s(1)) == "r^0.s" and g.text(g.s(2)) == "r^1.s"
    # s1 s2 has order m
    x, k = 0, 0
    while True:
        x, k = g.mul(x, g.mul(g.s(1), g.s(2))), k + 1
        if x == 0:
            break
    assert k == 5


def test_element_errors(A2):
    with pytest.raises(DescriptorError):
        A2.idx("1234")
    with pytest.raises(DomainError):
        A2.idx(99)
    with pytest.raises(DomainError):
        create_group("A3").idx(A2.element(1))
    with pytest.raises(IndexError):
        A2.s(3)
    with pytest.raises(IndexError):
        A2.subset_mask({0})


def test_left_meet_and_join(A2):
    assert A2.left_meet("231", "312").index == 0
    assert str(A2.left_join("213", "132")) == "321"


perms4 = st.permutations([1, 2, 3, 4]).map(lambda p: "".join(map(str, p)))


@settings(max_examples=60, deadline=None)
@given(perms4, perms4)
def test_length_triangle_inequality(a, b):
    g = create_group("A3")
    u, v = g.idx(a), g.idx(b)
    assert g.length[g.mul(u, v)] <= g.length[u] + g.length[v]
    assert abs(g.length[u] - g.length[v]) <= g.length[g.mul(u, g.inverse[v])]


@settings(max_examples=60, deadline=None)
@given(perms4)
def test_inverse_exchanges_weak_orders(a):
    g = create_group("A3")
    w = g.idx(a)
    left = {g.inverse[u] for u in bits(g.below(Order.LEFT)[w])}
    assert left == set(bits(g.below(Order.RIGHT)[g.inverse[w]]))
