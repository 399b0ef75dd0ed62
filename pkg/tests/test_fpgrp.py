import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from mcg_workbench.fpgrp import (
    Presentation,
    Word,
    abelianization,
    evaluate_in,
    evaluate_word,
    format_word,
    intersecting_pairs,
    matsumoto_presentation,
    parse_relation,
    parse_word,
    smith_diagonal,
    verify_representation,
)
from mcg_workbench.perm import parse_cycles
from mcg_workbench.permgrp import PermRep

NAMES = ("a", "b", "c")
letters = st.lists(st.tuples(st.sampled_from(NAMES), st.sampled_from((1, -1))), max_size=12)
words = letters.map(Word)


def test_parse_power_binds_to_atom():
    assert parse_word("T2 T3 T4 T0^10") == Word.product(["T2", "T3", "T4"]) * Word.gen("T0", 10)
    assert parse_word("(T2 T3)^2") == Word.product(["T2", "T3", "T2", "T3"])


def test_parse_relation_and_identity():
    r = parse_relation("a b a = b a b")
    assert r == parse_word("a b a b^-1 a^-1 b^-1")
    assert parse_word("1") == Word(())
    assert format_word(Word(())) == "1"


def test_free_reduction():
    assert parse_word("a b b^-1 a^-1") == Word(())
    assert len(parse_word("a a^-1 b")) == 1


@pytest.mark.parametrize("bad", ["a^", "(a b", "a ) b", "a = b = c", "2a"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_relation(bad)


def test_chain_relators_printed_compactly():
    pres = matsumoto_presentation(2)
    text = [format_word(r) for r in pres.relators]
    # (T2 T3 T4 T0)^10 (T1 T2 T3 T4 T0)^-6 after cyclic bookkeeping
    assert "(T2 T3 T4 T0)^9 (T2 T3 T4 T0 T1)^-5 T1^-1" in text
    chain = pres.relators[text.index("(T2 T3 T4 T0)^9 (T2 T3 T4 T0 T1)^-5 T1^-1")]
    assert chain == parse_relation("(T2 T3 T4 T0)^10 = (T1 T2 T3 T4 T0)^6")


@pytest.mark.parametrize("g, count", [(2, 11), (3, 23), (4, 38)])
def test_matsumoto_relator_counts(g, count):
    assert len(matsumoto_presentation(g).relators) == count
    closed = matsumoto_presentation(g, closed=True)
    assert len(closed.relators) == count + 1
    assert closed.generators == tuple(f"T{i}" for i in range(2 * g + 1))


def test_closed_relator_genus_two():
    extra = matsumoto_presentation(2, closed=True).relators[-1]
    assert extra == parse_relation("T1^2 = (T0 T3)^4")


def test_intersection_pattern():
    pairs = intersecting_pairs(3)
    assert frozenset({0, 4}) in pairs and frozenset({0, 3}) not in pairs
    assert len(pairs) == 6


def test_text_round_trip():
    pres = matsumoto_presentation(3, closed=True)
    back = Presentation.from_text(pres.to_text())
    assert back.generators == pres.generators and back.relators == pres.relators


def test_undeclared_generator():
    with pytest.raises(ValueError):
        Presentation(("a",), (parse_word("a b"),))


def test_right_action():
    r = PermRep.from_mapping({"x": parse_cycles("(1 2)", 3), "y": parse_cycles("(2 3)", 3)}, 3)
    p = evaluate_word(r, parse_word("x y"))
    # point 1 goes to 2 under x, then to 3 under y
    assert p(0) == 2


def test_verify_names_must_match():
    r = PermRep.from_mapping({"x": parse_cycles("(1 2)", 2)}, 2)
    with pytest.raises(ValueError):
        verify_representation(Presentation(("x", "y")), r)


def test_s3_satisfies_braid_presentation():
    pres = Presentation(("x", "y"), (parse_word("x^2"), parse_word("y^2"), parse_relation("x y x = y x y")))
    r = PermRep.from_mapping({"x": parse_cycles("(1 2)", 3), "y": parse_cycles("(2 3)", 3)}, 3)
    assert verify_representation(pres, r).holds
    bad = PermRep.from_mapping({"x": parse_cycles("(1 2)", 4), "y": parse_cycles("(3 4)", 4)}, 4)
    report = verify_representation(pres, bad)
    assert report.failures == (2,)


@pytest.mark.parametrize("g, want", [(2, [10]), (3, []), (4, [])])
def test_abelianization_open(g, want):
    assert abelianization(matsumoto_presentation(g)) == want


def test_abelianization_shapes():
    assert abelianization(Presentation(("a",))) == [0]
    assert abelianization(Presentation(("a", "b"), (parse_word("a^4"), parse_word("b^6")))) == [2, 12]
    assert abelianization(matsumoto_presentation(2, closed=True)) == [2]


@given(words)
def test_inverse_cancels(w):
    assert w * w.inverse() == Word(())


@given(words, words, words)
def test_product_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(words)
def test_format_parse_round_trip(w):
    assert parse_word(format_word(w)) == w
    assert parse_word(str(w)) == w


@given(words)
def test_cyclic_reduce_keeps_exponent_sums(w):
    c = w.cyclic_reduce()
    assert all(c.exponent_sum(n) == w.exponent_sum(n) for n in NAMES)
    if len(c) > 1:
        assert c.letters[0] != (c.letters[-1][0], -c.letters[-1][1])


@given(words, words)
def test_evaluation_is_a_homomorphism(u, v):
    images = {"a": parse_cycles("(1 2 3)", 5), "b": parse_cycles("(1 4)(2 5)", 5), "c": parse_cycles("(3 4 5)", 5)}
    r = PermRep.from_mapping(images, 5)
    assert evaluate_word(r, u * v) == evaluate_word(r, v) * evaluate_word(r, u)
    ints = evaluate_in(u * v, {"a": 1, "b": 10, "c": 100}, lambda x, y: x + y, 0, lambda x: -x)
    assert ints == sum((1, 10, 100)[NAMES.index(n)] * e for n, e in (u * v).letters)


@given(st.lists(st.lists(st.integers(-12, 12), min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_matches_sympy(rows):
    ours = smith_diagonal(rows, 3)
    theirs = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0]
    assert ours == theirs
    assert all(b % a == 0 for a, b in zip(ours, ours[1:]))
