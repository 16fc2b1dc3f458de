import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bihecke import InvariantViolation
from bihecke.posets import FinitePoset, bits, mask_of


def mobius_oracle(p):
    """Möbius function as the inverse of the zeta matrix."""
    z = sympy.Matrix(p.n, p.n, lambda i, j: 1 if p.leq(i, j) else 0)
    return z.inv()


def divisor_poset(n):
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return divs, FinitePoset.from_relation(len(divs), lambda a, b: divs[b] % divs[a] == 0)


def test_bits_round_trip():
    assert bits(0b10110) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110


def test_chain_mobius():
    p = FinitePoset.from_relation(4, lambda a, b: a <= b)
    assert [p.mobius(0, j) for j in range(4)] == [1, -1, 0, 0]


def test_divisor_lattice_is_number_theoretic_mobius():
    divs, p = divisor_poset(60)
    for j, d in enumerate(divs):
        assert p.mobius(0, j) == sympy.mobius(d)


def test_boolean_lattice_distributive_and_pentagon_not():
    boolean = FinitePoset.from_relation(8, lambda a, b: a & ~b == 0)
    assert boolean.is_distributive_lattice(range(8)) == (True, None)
    assert boolean.is_meet_semilattice()[0]
    # pentagon N5: 0 < a < b < 1, 0 < c < 1
    rel = {(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (0, 2), (0, 4), (1, 4)}
    n5 = FinitePoset.from_relation(5, lambda i, j: i == j or (i, j) in rel)
    ok, reason = n5.is_distributive_lattice(range(5))
    assert not ok and "distributivity" in reason


def test_no_meet_detected():
    # two minimal elements
    p = FinitePoset.from_relation(3, lambda i, j: i == j or j == 2)
    assert p.is_meet_semilattice() == (False, (0, 1))


def test_check_partial_order_rejects_cycle():
    with pytest.raises(InvariantViolation):
        FinitePoset([0b011, 0b011, 0b100]).check_partial_order()


@st.composite
def random_posets(draw):
    """Random partial orders: transitive closures of random DAGs on a linear extension."""
    n = draw(st.integers(1, 7))
    edges = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    below = [1 << j for j in range(n)]
    for j in range(n):
        for i in range(j):
            if (i, j) in edges:
                below[j] |= below[i]
    return FinitePoset(below)


@settings(max_examples=80, deadline=None)
@given(random_posets())
def test_mobius_inverts_zeta(p):
    p.check_partial_order()
    inv = mobius_oracle(p)
    for i in range(p.n):
        for j in range(p.n):
            assert (p.mobius(i, j) if p.leq(i, j) else 0) == inv[i, j]


@settings(max_examples=80, deadline=None)
@given(random_posets())
def test_hasse_edges_generate_order(p):
    reach = [1 << j for j in range(p.n)]
    for j in range(p.n):
        for i, k in p.hasse_edges():
            if k == j:
                reach[j] |= reach[i]
    assert reach == p.below
