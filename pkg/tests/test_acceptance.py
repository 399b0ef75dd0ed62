"""Acceptance criteria, each at its stated tolerance.

Every criterion prints one line, ``PASS`` or ``FAIL`` with what was
measured; under pytest the lines are collected into a summary section.
Run ``python3 tests/test_acceptance.py`` to print them directly.
Timings exclude the one-off numba compilation, which a warm-up absorbs.
"""

import os
import sys
import time
from pathlib import Path

import pytest

from mcg_workbench import golden, lemmas, orders, sympf2, verify
from mcg_workbench.cosets import EnumConfig, coset_enumerate, low_index, low_index_search
from mcg_workbench.fpgrp import (
    abelianization,
    add_relator,
    format_word,
    matsumoto_presentation,
    parse_word,
    verify_representation,
)
from mcg_workbench.perm import CycleType, cycle_type
from mcg_workbench.permgrp import are_equivalent

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = {}


def record(key: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {key:>4}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.2f}s]"
    ACCEPTANCE_LINES[key] = line
    print(line)


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    coset_enumerate(verify.braid_quotient(2), (), EnumConfig(strategy="hlt"))
    coset_enumerate(verify.braid_quotient(2), (), EnumConfig(strategy="felsch"))
    low_index(verify.braid_quotient(2), 3)


def _golden_audit(closed_genus3: bool):
    data = golden.load_all()
    bad = []
    for name, rep in data.tables.items():
        g = golden.NAMES[name][0]
        closed = g == 2 or closed_genus3
        pres = matsumoto_presentation(g, closed)
        report = verify_representation(pres, rep)
        bad += [f"{name}: {format_word(pres.relators[i])}" for i in report.failures]
    return bad


def test_1a_golden_relators_boundary_and_genus2_closed():
    """The attainable part of criterion 1: every boundary relator for all five
    tables, and the closed-surface relation for the three genus-2 tables."""
    start = time.perf_counter()
    bad = _golden_audit(closed_genus3=False)
    secs = time.perf_counter() - start
    ok = not bad and secs < 1
    record("1a", ok, "boundary relators for 5 tables, closed relation for genus 2" + (f"; fails {bad}" if bad else ""), secs)
    assert ok


@pytest.mark.xfail(strict=True, reason="the printed closed-surface relation fails for both genus-3 tables; see the decisions ledger")
def test_1_golden_relators_full():
    start = time.perf_counter()
    bad = _golden_audit(closed_genus3=True)
    secs = time.perf_counter() - start
    ok = not bad and secs < 1
    record("1", ok, "all five tables, boundary relators and closed relation" + (f"; fails {bad}" if bad else ""), secs)
    assert ok


def test_2_low_index_m21():
    start = time.perf_counter()
    records = low_index(matsumoto_presentation(2), 10)
    secs = time.perf_counter() - start
    proper = sorted(r.index for r in records if r.index > 1)
    ok = proper == [2, 5, 6, 6, 10, 10] and secs < 60
    record("2", ok, f"{len(proper)} proper classes, indices {proper}", secs)
    assert ok


def test_3_braid_quotients():
    start = time.perf_counter()
    got = [coset_enumerate(verify.braid_quotient(k)).index for k in (2, 3, 4)]
    secs = time.perf_counter() - start
    ok = got == [6, 24, 96] and secs < 1
    record("3", ok, f"orders {got}", secs)
    assert ok


def test_4a_m21_mod_t1_squared():
    start = time.perf_counter()
    pres = add_relator(matsumoto_presentation(2), parse_word("T1^2"))
    t = coset_enumerate(pres, (), EnumConfig(strategy="felsch", max_cosets=4 * 720))
    secs = time.perf_counter() - start
    ok = t.index == 720 and secs < 1
    record("4a", ok, f"M(2,1)/<<T1^2>> index {t.index}", secs)
    assert ok


@pytest.mark.slow
def test_4b_m31_mod_t1_squared():
    start = time.perf_counter()
    pres = add_relator(matsumoto_presentation(3), parse_word("T1^2"))
    cap = 4 * 1451520
    t = coset_enumerate(pres, (), EnumConfig(strategy="felsch", max_cosets=cap))
    secs = time.perf_counter() - start
    ok = t.index == 1451520 and secs < 600
    record("4b", ok, f"M(3,1)/<<T1^2>> index {t.index}, max_cosets {cap}, defined {t.stats['defined']}", secs)
    assert ok


def test_5_cycle_structures():
    start = time.perf_counter()
    bad = []
    for g in range(3, 7):
        for eps, sign in (("-", -1), ("+", 1)):
            rep = sympf2.build_phi(g, eps)
            want = CycleType({1: 2 ** (2 * g - 2), 2: 2 ** (g - 2) * (2 ** (g - 1) + sign)}, rep.degree)
            if rep.degree != orders.N(g, eps) or any(cycle_type(p) != want for p in rep.perms):
                bad.append((g, eps))
    secs = time.perf_counter() - start
    ok = not bad and secs < 60
    record("5", ok, "g = 3..6, both types" + (f"; wrong {bad}" if bad else ""), secs)
    assert ok


def test_6_restriction_decomposition():
    start = time.perf_counter()
    sizes = {}
    ok = True
    for g in (3, 4, 5):
        for eps in "-+":
            d = sympf2.restrict_decompose(g, eps)
            ok &= d.holds
            sizes[f"{g}{eps}"] = sorted(d.sizes)
    secs = time.perf_counter() - start
    record("6", ok, f"block sizes {sizes}", secs)
    assert ok


def test_7_equivalence_certificates():
    start = time.perf_counter()
    ok, detail, _ = verify.equivalence_certificates(golden.load_all())
    secs = time.perf_counter() - start
    ok = ok and secs < 60
    record("7", ok, detail, secs)
    assert ok


def test_8_orders():
    start = time.perf_counter()
    stab = (sympf2.stabilizer_order(3, "-"), sympf2.stabilizer_order(3, "+"))
    closed = (orders.order(orders.OrderFormula("O-minus", 3)), orders.order(orders.OrderFormula("O-plus", 3)))
    ledger = all(orders.maximal_subgroup_ledger(g).holds for g in range(4, 65))
    relations = all(orders.numeric_relations(g).holds for g in range(2, 65))
    caveat = "N+ < 5N-(g-1)" not in orders.numeric_relations(3).checks
    secs = time.perf_counter() - start
    ok = stab == closed == (51840, 40320) and ledger and relations and caveat and secs < 10
    record("8", ok, f"stabilizers {stab}, ledger g=4..64 {ledger}, relations g=2..64 {relations}", secs)
    assert ok


def test_9_abelianizations():
    start = time.perf_counter()
    got = [abelianization(matsumoto_presentation(g)) for g in (2, 3, 4)]
    secs = time.perf_counter() - start
    ok = got == [[10], [], []] and secs < 1
    record("9", ok, f"M(2,1) {got[0]}, M(3,1) {got[1]}, M(4,1) {got[2]}", secs)
    assert ok


def test_10_permutation_lemmas():
    start = time.perf_counter()
    reports = lemmas.run_all()
    secs = time.perf_counter() - start
    ok = all(r.holds and r.cases for r in reports) and secs < 60
    record("10", ok, ", ".join(f"{r.name} ({r.cases} cases, degree <= {r.max_degree})" for r in reports), secs)
    assert ok


@pytest.mark.long
def test_11_low_index_m31_to_36(tmp_path):
    """Resumable: set MCG_CHECKPOINT to keep the search state between runs."""
    ckpt = Path(os.environ.get("MCG_CHECKPOINT", tmp_path / "m31-36.json"))
    start = time.perf_counter()
    res = low_index_search(matsumoto_presentation(3), 36, checkpoint=ckpt)
    secs = time.perf_counter() - start
    proper = [r.index for r in res.records if r.index > 1]
    ok = res.complete and proper == [28, 36]
    record("11", ok, f"proper classes {proper}, {res.nodes} nodes in total", secs)
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-m", "not long", *sys.argv[1:]]))
