"""Named verification checks grouped in tiers, and their report.

quick: golden-table relator audits, the orders ledger, permutation lemmas,
abelianizations.  standard adds the quadratic-form constructions, the
T1^2 quotient enumerations and the M(2,1) low-index search.  long adds the
M(3,1) low-index search to index 36.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import golden, lemmas, orders, sympf2
from .cosets import EnumConfig, coset_enumerate, low_index_search
from .fpgrp import (
    Presentation,
    abelianization,
    add_relator,
    format_word,
    matsumoto_presentation,
    parse_relation,
    parse_word,
    verify_representation,
)
from .perm import CycleType, Perm, cycle_type, format_cycles
from .permgrp import PermRep, are_equivalent

__all__ = ["TIERS", "Check", "VerifyReport", "verify_all", "checks_for", "braid_quotient"]

TIERS = ("quick", "standard", "long")

# the T1^2 quotient enumerations get this multiple of the final index as room
BIG_ENUM_HEADROOM = 4


@dataclass
class Check:
    name: str
    passed: bool
    seconds: float = 0.0
    detail: str = ""
    artifacts: dict = field(default_factory=dict)

    def to_json_dict(self, timings: bool = False) -> dict:
        doc = {"name": self.name, "passed": self.passed, "detail": self.detail, "artifacts": self.artifacts}
        if timings:
            doc["seconds"] = round(self.seconds, 3)
        return doc


@dataclass
class VerifyReport:
    tier: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_json_dict(self, timings: bool = False) -> dict:
        return {
            "format": "mcg-workbench/verify-report",
            "version": 1,
            "tier": self.tier,
            "passed": self.passed,
            "failures": self.failures,
            "checks": [c.to_json_dict(timings) for c in self.checks],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_json_dict(timings), indent=2, sort_keys=True) + "\n"

    def to_text(self, timings: bool = False) -> str:
        width = max((len(c.name) for c in self.checks), default=0)
        lines = []
        for c in self.checks:
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}"
            if timings:
                line += f"  [{c.seconds:.2f}s]"
            lines.append(line.rstrip())
        lines.append(f"{self.tier}: {len(self.checks) - len(self.failures)}/{len(self.checks)} passed")
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path, fmt: str = "json", timings: bool = False) -> None:
        text = self.to_json(timings) if fmt == "json" else self.to_text(timings)
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write report to {path}: {exc}") from exc


def _cycles(x: Perm) -> str:
    return format_cycles(x)


# -- individual checks ---------------------------------------------------
# Each returns (passed, detail, artifacts).


def golden_relators(name: str, rep: PermRep, closed: bool):
    g = golden.NAMES[name][0]
    pres = matsumoto_presentation(g, closed)
    report = verify_representation(pres, rep)
    if closed:
        extra = len(pres.relators) - 1
        failed = [i for i in report.failures if i == extra]
        named = [format_word(pres.relators[i]) for i in failed]
        return not failed, (f"fails {named[0]}" if failed else "closed-surface relation holds"), {}
    named = [format_word(pres.relators[i]) for i in report.failures]
    detail = f"{len(pres.relators)} relators hold" if report.holds else "fails " + "; ".join(named)
    return report.holds, detail, {"failed_relators": named} if named else {}


def alpha_twist(data: golden.GoldenData):
    """alpha is an automorphism of S6 (Coxeter relations on its images) and
    the twisted table is alpha applied to the degree-6 minus table."""
    s = [data.alpha[f"s{i}"] for i in range(1, 6)]
    ident = Perm.identity(6)
    coxeter = all((a * a) == ident for a in s)
    for i in range(5):
        for j in range(i + 1, 5):
            m = 3 if j == i + 1 else 2
            coxeter &= ((s[i] * s[j]) ** m) == ident
    base, twisted = data.tables["phi2_minus"], data.tables["phi2_alpha"]
    composed = True
    for name in base.names:
        (a, b), = base[name].cycles()
        composed &= twisted[name] == s[min(a, b)]
    ok = coxeter and composed
    return ok, f"Coxeter relations {'hold' if coxeter else 'FAIL'}; twisted table {'=' if composed else '!='} alpha o minus table", {}


def equivalence_certificates(data: golden.GoldenData):
    arts, ok = {}, True
    for name in ("phi2_minus", "phi2_plus", "phi3_minus", "phi3_plus"):
        g, eps = golden.NAMES[name]
        built = sympf2.build_phi(g, eps)
        x = are_equivalent(built, data.tables[name])
        if x is None:
            ok = False
            arts[name] = None
            continue
        target = data.tables[name]
        ok &= all(built[n].conjugate_by(x) == target[n] for n in target.names)
        arts[name] = _cycles(x)
    none = are_equivalent(data.tables["phi2_minus"], data.tables["phi2_alpha"])
    ok &= none is None
    arts["phi2_minus~phi2_alpha"] = None if none is None else _cycles(none)
    found = sum(1 for k, v in arts.items() if v is not None and "~" not in k)
    return ok, f"{found}/4 conjugators found; twisted pair inequivalent: {none is None}", arts


def stabilizer_orders():
    got = {e: sympf2.stabilizer_order(3, e) for e in "-+"}
    want = {"-": orders.order(orders.OrderFormula("O-minus", 3)), "+": orders.order(orders.OrderFormula("O-plus", 3))}
    ok = got == want == {"-": 51840, "+": 40320}
    return ok, f"|O-_6| = {got['-']}, |O+_6| = {got['+']}", {}


def ledger_range(lo: int = 4, hi: int = 64):
    bad = [g for g in range(lo, hi + 1) if not orders.maximal_subgroup_ledger(g).holds]
    return not bad, f"g = {lo}..{hi}" + (f"; fails at {bad}" if bad else ""), {}


def relations_range(lo: int = 2, hi: int = 64):
    bad = [g for g in range(lo, hi + 1) if not orders.numeric_relations(g).holds]
    return not bad, f"g = {lo}..{hi}" + (f"; fails at {bad}" if bad else ""), {}


def lemma_check(report: lemmas.LemmaReport):
    return report.holds, f"{report.cases} cases up to degree {report.max_degree}", {}


def abelianization_check(g: int, want: list[int]):
    got = abelianization(matsumoto_presentation(g, False))
    return got == want, f"invariants {got}", {}


def cycle_types(genera=range(3, 7)):
    ok, arts = True, {}
    for g in genera:
        for eps in "-+":
            rep = sympf2.build_phi(g, eps)
            sign = -1 if eps == "-" else 1
            want = CycleType.from_lengths([1] * 2 ** (2 * g - 2) + [2] * (2 ** (g - 2) * (2 ** (g - 1) + sign)))
            types = {cycle_type(p) for p in rep.perms}
            good = types == {want} and rep.degree == orders.N(g, eps)
            ok &= good
            arts[f"{g}{eps}"] = {"degree": rep.degree, "cycle_type": str(types.pop())}
    return ok, f"g = {min(genera)}..{max(genera)}, both types", arts


def decomposition(genera=(3, 4, 5)):
    ok, arts = True, {}
    for g in genera:
        for eps in "-+":
            d = sympf2.restrict_decompose(g, eps)
            ok &= d.holds
            arts[f"{g}{eps}"] = d.sizes
    return ok, "four blocks " + ("as expected" if ok else "MISMATCH"), arts


def braid_quotient(k: int) -> Presentation:
    """<x0, x1 | x0^k, x1^k, x0 x1 x0 = x1 x0 x1>."""
    rels = [parse_relation("x0 x1 x0 = x1 x0 x1")]
    rels += [parse_word(f"x0^{k}"), parse_word(f"x1^{k}")]
    return Presentation(("x0", "x1"), tuple(rels), f"braid/{k}")


def braid_quotients():
    got = {k: coset_enumerate(braid_quotient(k)).index for k in (2, 3, 4)}
    want = {2: 6, 3: 24, 4: 96}
    return got == want, ", ".join(f"power {k}: {v}" for k, v in got.items()), {}


def t1_squared(g: int, strategy: str = "felsch"):
    pres = matsumoto_presentation(g, False)
    want = orders.sp_order(g)
    cap = max(BIG_ENUM_HEADROOM * want, 10_000)
    quotient = add_relator(pres, parse_word("T1^2"))
    t = coset_enumerate(quotient, (), EnumConfig(max_cosets=cap, strategy=strategy))
    return t.index == want, f"index {t.index} (|Sp_{2 * g}(F2)| = {want}), defined {t.stats['defined']}", {
        "index": t.index,
        "max_cosets": cap,
        "strategy": strategy,
    }


def low_index_m21(max_index: int = 10, workers: int = 1):
    res = low_index_search(matsumoto_presentation(2, False), max_index, workers=workers)
    proper = [r.index for r in res.records if r.index > 1]
    ok = res.complete and proper == [2, 5, 6, 6, 10, 10]
    return ok, f"proper class indices {proper}", {"classes": res.classes(), "nodes": res.nodes}


def low_index_m31(max_index: int = 36, workers: int = 1, checkpoint: str | Path | None = None):
    res = low_index_search(matsumoto_presentation(3, False), max_index, workers=workers, checkpoint=checkpoint)
    proper = [r.index for r in res.records if r.index > 1]
    ok = res.complete and proper == [28, 36]
    return ok, f"proper class indices {proper} ({res.nodes} nodes, {res.seconds:.0f}s)", {
        "classes": res.classes(),
        "nodes": res.nodes,
    }


# -- tiers ---------------------------------------------------------------


def checks_for(tier: str, *, workers: int = 1, checkpoint: str | Path | None = None,
               data_directory: str | Path | None = None) -> list[tuple[str, Callable]]:
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}, got {tier!r}")
    items: list[tuple[str, Callable]] = []
    data_holder: dict = {}

    def data() -> golden.GoldenData:
        if "d" not in data_holder:
            data_holder["d"] = golden.load_all(data_directory)
        return data_holder["d"]

    for name in golden.NAMES:
        items.append((f"golden/{name}/relators", lambda n=name: golden_relators(n, data().tables[n], False)))
        items.append((f"golden/{name}/closed", lambda n=name: golden_relators(n, data().tables[n], True)))
    items.append(("golden/alpha", lambda: alpha_twist(data())))
    items.append(("orders/stabilizers-g3", stabilizer_orders))
    items.append(("orders/ledger", ledger_range))
    items.append(("orders/relations", relations_range))
    for fn in (lemmas.check_centralizer_formula, lemmas.check_support_bound,
               lemmas.check_short_orbit_braids, lemmas.check_order3_triples):
        items.append((f"lemmas/{fn.__name__.removeprefix('check_')}", lambda f=fn: lemma_check(f())))
    items.append(("abelianization/M21", lambda: abelianization_check(2, [10])))
    items.append(("abelianization/M31", lambda: abelianization_check(3, [])))
    items.append(("abelianization/M41", lambda: abelianization_check(4, [])))
    items.append(("enumerate/braid-quotients", braid_quotients))
    if tier in ("standard", "long"):
        items.append(("phi/equivalence", lambda: equivalence_certificates(data())))
        items.append(("phi/cycle-types", cycle_types))
        items.append(("phi/decomposition", decomposition))
        items.append(("enumerate/M21+T1^2", lambda: t1_squared(2)))
        items.append(("enumerate/M31+T1^2", lambda: t1_squared(3)))
        items.append(("low-index/M21-10", lambda: low_index_m21(10, workers)))
    if tier == "long":
        items.append(("low-index/M31-36", lambda: low_index_m31(36, workers, checkpoint)))
    return items


def run_check(name: str, fn: Callable) -> Check:
    start = time.perf_counter()
    try:
        passed, detail, arts = fn()
    except Exception as exc:  # a crashing check is a failing check, named
        passed, detail, arts = False, f"error: {type(exc).__name__}: {exc}", {}
    return Check(name, bool(passed), time.perf_counter() - start, detail, arts)


def verify_all(tier: str = "quick", *, workers: int = 1, checkpoint: str | Path | None = None,
               data_directory: str | Path | None = None, progress=None) -> VerifyReport:
    checks = []
    for name, fn in checks_for(tier, workers=workers, checkpoint=checkpoint, data_directory=data_directory):
        check = run_check(name, fn)
        if progress is not None:
            progress(check)
        checks.append(check)
    checks.sort(key=lambda c: c.name)
    return VerifyReport(tier, checks)
