import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcg_workbench import orders
from mcg_workbench.fpgrp import evaluate_word, matsumoto_presentation, parse_word
from mcg_workbench.perm import cycle_type
from mcg_workbench.permgrp import group_order, is_transitive
from mcg_workbench.sympf2 import (
    F2Mat,
    FormType,
    act_on_form,
    build_phi,
    count_isotropic_subspaces,
    eval_form,
    form_type,
    forms_of_type,
    matrix_relator_failures,
    pairing,
    restrict_decompose,
    stabilizer_order,
    theta_images,
    transvection,
    vec_from_hex,
    vec_to_hex,
    vector_action,
    zero_count,
)


def bits(x, n):
    return np.array([(x >> i) & 1 for i in range(n)], dtype=np.int64)


def gram(g):
    n = 2 * g
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        J[i, n - 1 - i] = 1
    return J


def oracle_q(b, x, g):
    """Q_b(x) from explicit 0/1 arrays: sum_{i<g} x_i x_{i_bar} + x J b."""
    n = 2 * g
    xv, bv = bits(x, n), bits(b, n)
    base = sum(xv[i] * xv[n - 1 - i] for i in range(g))
    return int(base + xv @ gram(g) @ bv) % 2


def genus_and_vectors(k):
    return st.integers(1, 4).flatmap(
        lambda g: st.tuples(st.just(g), *[st.integers(0, (1 << 2 * g) - 1) for _ in range(k)])
    )


@given(genus_and_vectors(2))
def test_pairing_matches_matrix(data):
    g, x, y = data
    assert pairing(x, y, g) == int(bits(x, 2 * g) @ gram(g) @ bits(y, 2 * g)) % 2


@given(genus_and_vectors(2))
def test_forms_polarize_to_pairing(data):
    g, b, x = data
    assert eval_form(b, x, g) == oracle_q(b, x, g)
    for y in range(1 << 2 * g):
        lhs = eval_form(b, x ^ y, g) ^ eval_form(b, x, g) ^ eval_form(b, y, g)
        assert lhs == pairing(x, y, g)
        if y > 40:
            break


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_type_by_zero_count(g):
    plus = 2 ** (2 * g - 1) + 2 ** (g - 1)
    for b in range(1 << 2 * g):
        zeros = sum(1 - oracle_q(b, x, g) for x in range(1 << 2 * g))
        assert zero_count(b, g) == zeros
        assert form_type(b, g) is (FormType.PLUS if zeros == plus else FormType.MINUS)
    for eps in "+-":
        assert len(forms_of_type(g, eps)) == orders.N(g, eps)


@given(genus_and_vectors(3))
def test_transvections_are_symplectic_involutions(data):
    g, c, x, y = data
    t = transvection(c, g)
    assert t.is_symplectic()
    assert (t * t).is_identity()
    assert t(x) == x ^ (c if pairing(x, c, g) else 0)
    assert pairing(t(x), t(y), g) == pairing(x, y, g)


@given(genus_and_vectors(3))
def test_action_on_forms_is_a_right_action(data):
    g, b, c1, c2 = data
    w1, w2 = transvection(c1, g), transvection(c2, g)
    assert act_on_form(w1 * w2, b, g) == act_on_form(w2, act_on_form(w1, b, g), g)
    # (omega . Q_b)(x) = Q_b(omega x), and the type is preserved
    image = act_on_form(w1, b, g)
    assert all(eval_form(image, x, g) == eval_form(b, w1(x), g) for x in range(min(1 << 2 * g, 64)))
    assert form_type(image, g) is form_type(b, g)


@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n)))
def test_matrix_inverse_and_hex(rows):
    m = F2Mat.from_rows(rows)
    assert F2Mat.from_hex(m.to_hex()) == m
    det = round(np.linalg.det(np.array([bits(r, len(rows)) for r in rows], dtype=float))) % 2
    if det:
        assert (m * m.inverse()).is_identity()
    else:
        with pytest.raises(ValueError):
            m.inverse()


def test_vector_hex_round_trip():
    assert vec_from_hex(vec_to_hex(0b1011, 6)) == (0b1011, 6)


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_theta_satisfies_the_boundary_presentation(g):
    images = theta_images(g, include_extra=True)
    assert matrix_relator_failures(matsumoto_presentation(g), images) == []
    assert all(m.is_symplectic() for m in images.values())


@pytest.mark.parametrize("g, order", [(2, 720), (3, 1451520)])
def test_theta_image_is_all_of_sp(g, order):
    assert group_order(vector_action(theta_images(g))) == order == orders.sp_order(g)


@pytest.mark.parametrize("g", [2, 3, 4])
@pytest.mark.parametrize("eps", ["+", "-"])
def test_build_phi(g, eps):
    rep = build_phi(g, eps)
    assert rep.degree == orders.N(g, eps)
    assert is_transitive(rep)
    sign = -1 if eps == "-" else 1
    twos = 2 ** (g - 2) * (2 ** (g - 1) + sign) if g >= 2 else None
    for p in rep.perms:
        ct = cycle_type(p)
        assert ct.counts.get(2) == twos and ct.counts.get(1) == 2 ** (2 * g - 2)
    assert rep.metadata == {"g": g, "epsilon": eps, "labeling": "sorted-b"}


def test_phi_agrees_with_theta_on_words():
    g = 3
    rep = build_phi(g, "-")
    images = theta_images(g)
    domain = forms_of_type(g, "-")
    w = parse_word("T1 T4^-1 T0 T2 T6")
    p = evaluate_word(rep, w)
    omega = F2Mat.identity(2 * g)
    for name, e in w.letters:
        omega = omega * images[name]  # inverse of a transvection is itself
    for k, b in enumerate(domain):
        assert domain[p(k)] == act_on_form(omega, b, g)


def test_boundaries_name_copies():
    rep = build_phi(2, "-", boundaries=3)
    assert rep.names == ("T0", "T'1", "T'2", "T'3", "T2", "T3", "T4")
    assert rep["T'1"] == rep["T'2"] == rep["T'3"] == build_phi(2, "-")["T1"]
    assert "T1" not in rep


@pytest.mark.parametrize("g", [3, 4])
@pytest.mark.parametrize("eps", ["+", "-"])
def test_restriction_blocks(g, eps):
    d = restrict_decompose(g, eps)
    assert d.holds
    e = FormType.parse(eps)
    want = sorted([orders.N(g - 1, e.value)] * 3 + [orders.N(g - 1, e.other.value)])
    assert sorted(d.sizes) == want
    assert len({b.key for b in d.blocks}) == 4
    if e is FormType.PLUS:
        assert d.representatives_separated


def test_stabilizer_orders():
    assert stabilizer_order(3, "-") == 51840
    assert stabilizer_order(3, "+") == 40320
    assert stabilizer_order(2, "-") == 120
    assert stabilizer_order(2, "+") == 72


@pytest.mark.parametrize("g", [1, 2, 3])
def test_isotropic_counts_match_parabolic_orders(g):
    for k in range(1, g + 1):
        stab = orders.order(orders.OrderFormula("isotropic-stab", g, k=k))
        assert orders.sp_order(g) == count_isotropic_subspaces(g, k) * stab
    # Lagrangians: prod (2^i + 1)
    want = 1
    for i in range(1, g + 1):
        want *= 2**i + 1
    assert count_isotropic_subspaces(g, g) == want
