from hypothesis import assume, given

from mcg_workbench import lemmas
from mcg_workbench.perm import Perm, parse_cycles, satisfies_braid, support

from strategies import perm_pairs


def test_all_lemmas_hold_and_are_not_vacuous():
    for report in lemmas.run_all():
        assert report.holds, (report.name, report.counterexamples[:3])
        assert report.cases > 0


def test_centralizer_check_detects_a_wrong_formula(monkeypatch):
    monkeypatch.setattr(lemmas, "centralizer_order_from_type", lambda ct: 1)
    assert not lemmas.check_centralizer_formula(3).holds


def test_support_check_detects_a_broken_hypothesis(monkeypatch):
    # with every pair treated as braided, disjoint transpositions break the bound
    monkeypatch.setattr(lemmas, "satisfies_braid", lambda u, v: True)
    assert not lemmas.check_support_bound(4).holds


def test_short_orbit_counterexample_outside_the_hypothesis():
    # (1 2) and (2 3) braid but <u, v> has an orbit of length 3, not 2
    u, v = parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)
    assert satisfies_braid(u, v) and u != v


def test_four_cycle_conclusion_rejects_bad_hypotheses():
    u = parse_cycles("(1 2 3)", 4)
    v = parse_cycles("(1 2)", 4)
    assert lemmas.four_cycle_triple_conclusion(u, (v, v, v)) is None
    w = parse_cycles("(1 2 3 4)", 4)
    assert lemmas.four_cycle_triple_conclusion(w, (w, w, w)) is True


@given(perm_pairs(max_degree=6))
def test_braid_pairs_are_conjugate(pq):
    u, v = pq
    assume(satisfies_braid(u, v))
    assert lemmas.braid_triple_is_conjugate(u, v)


@given(perm_pairs(max_degree=6))
def test_braid_with_conjugate_of_itself(pq):
    u, x = pq
    v = u.conjugate_by(x)
    if satisfies_braid(u, v):
        assert len(support(u)) <= 2 * len(support(u) & support(v))


def test_identity_braids_with_itself():
    e = Perm.identity(3)
    assert lemmas.braid_triple_is_conjugate(e, e)
