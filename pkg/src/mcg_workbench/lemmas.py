"""Exhaustive oracles for the permutation lemmas on braid-related pairs.

Each ``check_*`` function searches every configuration up to a degree cap and
returns a :class:`LemmaReport`.  A counterexample is recorded, never raised,
so callers decide how to fail.

Searches over pairs use two reductions that do not lose generality:

* a braid pair ``uvu = vuv`` makes u and v conjugate, so v only ranges over
  the conjugacy class of u;
* every hypothesis and conclusion is invariant under simultaneous
  conjugation, so for the triple searches one representative u per cycle
  type is enough.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .perm import (
    Perm,
    centralizer_order_from_type,
    compose,
    cycle_type,
    orbit_partition,
    satisfies_braid,
    support,
)

# Degree caps; the searches finish in seconds at these values.
CENTRALIZER_MAX_DEGREE = 6
SUPPORT_MAX_DEGREE = 6
ORBIT_LENGTH_MAX_DEGREE = 7
ORDER3_TRIPLE_MAX_DEGREE = 8


@dataclass
class LemmaReport:
    name: str
    max_degree: int
    cases: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def _all_perms(m: int) -> list[Perm]:
    return [Perm(p) for p in itertools.permutations(range(m))]


def _by_type(perms):
    classes: dict = {}
    for p in perms:
        classes.setdefault(cycle_type(p), []).append(p)
    return classes


def _commute(p: Perm, q: Perm) -> bool:
    pi, qi = p.images, q.images
    return all(pi[qi[x]] == qi[pi[x]] for x in range(len(pi)))


def _nontrivial_orbit_lengths(perms, m) -> set[int]:
    return {len(o) for o in orbit_partition(perms, m) if len(o) > 1}


def check_centralizer_formula(max_degree: int = CENTRALIZER_MAX_DEGREE) -> LemmaReport:
    """|C(u)| from the wreath-product formula equals a brute-force count."""
    report = LemmaReport("centralizer order", max_degree)
    for m in range(1, max_degree + 1):
        perms = _all_perms(m)
        for u in perms:
            count = sum(1 for x in perms if _commute(x, u))
            report.cases += 1
            if count != centralizer_order_from_type(cycle_type(u)):
                report.counterexamples.append((u, count))
    return report


def check_support_bound(max_degree: int = SUPPORT_MAX_DEGREE) -> LemmaReport:
    """Braid pairs satisfy |S(u)| <= 2 |S(u) & S(v)|."""
    report = LemmaReport("support bound", max_degree)
    for m in range(1, max_degree + 1):
        for cls in _by_type(_all_perms(m)).values():
            supports = {p: support(p) for p in cls}
            for u in cls:
                su = supports[u]
                for v in cls:
                    if not satisfies_braid(u, v):
                        continue
                    report.cases += 1
                    if len(su) > 2 * len(su & supports[v]):
                        report.counterexamples.append((u, v))
    return report


def check_short_orbit_braids(max_degree: int = ORBIT_LENGTH_MAX_DEGREE) -> LemmaReport:
    """Braid pairs whose nontrivial orbits (of u and of <u, v>) all have
    length k in {2, 3} are equal."""
    report = LemmaReport("short-orbit braid pairs", max_degree)
    for m in range(1, max_degree + 1):
        for ct, cls in _by_type(_all_perms(m)).items():
            lengths = set(ct.lengths()) - {1}
            if len(lengths) != 1 or not lengths <= {2, 3}:
                continue
            k = lengths.pop()
            for u in cls:
                for v in cls:
                    if not satisfies_braid(u, v):
                        continue
                    if _nontrivial_orbit_lengths([u, v], m) != {k}:
                        continue
                    report.cases += 1
                    if u != v:
                        report.counterexamples.append((u, v))
    return report


def _type_representative(ct, m: int) -> Perm:
    cycles, start = [], 0
    for k, count in ct.counts.items():
        for _ in range(count):
            cycles.append(list(range(start, start + k)))
            start += k
    return Perm.from_cycles(cycles, m)


def check_order3_triples(max_degree: int = ORDER3_TRIPLE_MAX_DEGREE) -> LemmaReport:
    """u of order 3 braiding with commuting v0, v1, all nontrivial
    <u, v_i>-orbits of length 4, forces v0 = v1."""
    report = LemmaReport("order-3 triples", max_degree)
    for m in range(3, max_degree + 1):
        classes = _by_type(_all_perms(m))
        for ct, cls in classes.items():
            if set(ct.lengths()) - {1} != {3}:
                continue
            u = _type_representative(ct, m)
            candidates = [
                v
                for v in cls
                if satisfies_braid(u, v) and _nontrivial_orbit_lengths([u, v], m) == {4}
            ]
            for v0, v1 in itertools.product(candidates, repeat=2):
                if not _commute(v0, v1):
                    continue
                report.cases += 1
                if v0 != v1:
                    report.counterexamples.append((u, v0, v1))
    return report


def four_cycle_triple_conclusion(u: Perm, vs: tuple[Perm, Perm, Perm]) -> bool | None:
    """Conclusion of the 4-cycle triple statement on one configuration.

    Returns None when the checkable hypotheses fail (braid relations,
    pairwise commuting, u a product of 4-cycles, <u, v_i>-orbits of length 4).
    The isomorphism hypothesis is not tested here; callers must supply
    triples where it holds by construction.
    """
    if set(cycle_type(u).lengths()) - {1} not in ({4}, set()):
        return None
    if not all(satisfies_braid(u, v) for v in vs):
        return None
    if not all(_commute(a, b) for a, b in itertools.combinations(vs, 2)):
        return None
    for v in vs:
        if _nontrivial_orbit_lengths([u, v], u.degree) - {4}:
            return None
    return vs[0] == vs[1] == vs[2]


def braid_triple_is_conjugate(u: Perm, v: Perm) -> bool:
    """uvu = vuv implies v = (uv) u (uv)^-1; used as a consistency check."""
    uv = compose(u, v)
    return u.conjugate_by(uv) == v


def run_all() -> list[LemmaReport]:
    return [
        check_centralizer_formula(),
        check_support_bound(),
        check_short_orbit_braids(),
        check_order3_triples(),
    ]
