import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcg_workbench.perm import (
    CycleType,
    Perm,
    centralizer_order_from_type,
    compose,
    cycle_type,
    fixed,
    format_cycles,
    orbit_partition,
    parse_cycles,
    satisfies_braid,
    support,
)

from strategies import perm_pairs, perms


def test_compose_applies_right_factor_first():
    p = parse_cycles("(1 2)", 3)
    q = parse_cycles("(2 3)", 3)
    r = compose(p, q)
    # 0 -> q -> 0 -> p -> 1;  1 -> 2 -> 2;  2 -> 1 -> 0
    assert r.images == (1, 2, 0)
    assert format_cycles(r) == "(1 2 3)"


def test_compose_degree_mismatch():
    with pytest.raises(ValueError):
        compose(Perm.identity(2), Perm.identity(3))


def test_cycle_type_and_support():
    p = parse_cycles("(1 2)(3 4 5)", 7)
    assert cycle_type(p) == CycleType({1: 2, 2: 1, 3: 1}, 7)
    assert support(p) == frozenset(range(5))
    assert fixed(p) == frozenset({5, 6})
    assert str(cycle_type(p)) == "(1)^2(2)^1(3)^1"


def test_parse_format_round_trip():
    for text in ["()", "(1 2)", "(1 3 2)(4 5)", "(3 4)"]:
        assert format_cycles(parse_cycles(text, 6)) == text


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_cycles("(1 2) x", 3)
    with pytest.raises(ValueError):
        parse_cycles("(1 9)", 3)


def test_braid_examples():
    s1, s2, s3 = (parse_cycles(f"({i} {i + 1})", 4) for i in (1, 2, 3))
    assert satisfies_braid(s1, s2)
    assert not satisfies_braid(s1, s3)  # commuting involutions are not braided


def test_centralizer_order_of_transposition():
    # a transposition in S6 has centralizer S2 x S4
    assert centralizer_order_from_type(cycle_type(parse_cycles("(1 2)", 6))) == 2 * 24


@given(perm_pairs())
def test_compose_pointwise(pq):
    p, q = pq
    r = compose(p, q)
    assert all(r(x) == p(q(x)) for x in range(p.degree))


@given(perm_pairs())
def test_inverse_and_order(pq):
    p, _ = pq
    assert (p * p.inverse()).is_identity()
    assert (p ** p.order()).is_identity()
    assert p.order() == math.lcm(*cycle_type(p).lengths())  # lcm over distinct lengths


@given(perm_pairs())
def test_conjugation_preserves_cycle_type(pq):
    p, x = pq
    c = p.conjugate_by(x)
    assert c == x * p * x.inverse()
    assert cycle_type(c) == cycle_type(p)


@given(st.integers(1, 8).flatmap(perms))
def test_cycle_lengths_sum_to_degree(p):
    ct = cycle_type(p)
    assert sum(k * v for k, v in ct.counts.items()) == p.degree
    assert parse_cycles(format_cycles(p), p.degree) == p


@given(perm_pairs())
def test_braid_is_symmetric(pq):
    u, v = pq
    assert satisfies_braid(u, v) == satisfies_braid(v, u)


@given(perm_pairs(max_degree=7))
def test_orbit_partition_is_partition(pq):
    p, q = pq
    orbits = orbit_partition([p, q], p.degree)
    assert sorted(x for o in orbits for x in o) == list(range(p.degree))
    for o in orbits:
        assert {p(x) for x in o} == set(o) and {q(x) for x in o} == set(o)
