"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from mcg_workbench.perm import Perm


def perms(degree):
    return st.permutations(range(degree)).map(Perm)


@st.composite
def perm_pairs(draw, max_degree=9):
    n = draw(st.integers(1, max_degree))
    return draw(perms(n)), draw(perms(n))


@st.composite
def perm_lists(draw, max_degree=9, max_len=4):
    n = draw(st.integers(1, max_degree))
    return n, draw(st.lists(perms(n), min_size=1, max_size=max_len))
