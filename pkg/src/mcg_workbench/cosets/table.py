"""Coset tables, enumeration configuration, and Todd-Coxeter drivers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..fpgrp import Presentation, Word, verify_representation
from ..perm import Perm
from ..permgrp import PermRep
from . import _kernels as K

__all__ = [
    "EnumConfig",
    "CosetTable",
    "EnumerationFailed",
    "IncompleteTable",
    "Encoding",
    "default_column_order",
    "coset_enumerate",
    "rep_from_table",
]

# Representations up to this degree are also checked with fpgrp's evaluator;
# larger ones rely on the kernel trace audit, which checks the same thing.
PERM_AUDIT_MAX_DEGREE = 5000


class EnumerationFailed(RuntimeError):
    """The table filled up (max_cosets) before the enumeration closed."""


class IncompleteTable(ValueError):
    """A complete table was required."""


def default_column_order(pres: Presentation) -> tuple[str, ...]:
    """T1 < T2 < ... < Tn < T0 for Matsumoto-style names, else declaration order."""
    gens = pres.generators
    names = {f"T{i}" for i in range(len(gens))}
    if set(gens) == names and len(gens) > 1:
        return tuple(f"T{i}" for i in range(1, len(gens))) + ("T0",)
    return tuple(gens)


@dataclass(frozen=True)
class EnumConfig:
    """Enumeration and search settings.

    ``strategy`` is ``"hlt"`` (relator-driven, HLT with lookahead) or
    ``"felsch"`` (definition-driven).  ``fill_order`` is ``"row"`` or
    ``"col"``: which undefined entry gets defined next, scanning rows first
    or generator columns first.  It steers Felsch and the low-index search;
    HLT always works row by row.
    """

    max_cosets: int = 1_000_000
    strategy: str = "hlt"
    fill_order: str = "col"
    column_order: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.max_cosets < 1:
            raise ValueError("max_cosets must be at least 1")
        if self.strategy not in ("hlt", "felsch"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.fill_order not in ("row", "col"):
            raise ValueError(f"fill_order must be 'row' or 'col', got {self.fill_order!r}")
        if self.column_order is not None:
            object.__setattr__(self, "column_order", tuple(self.column_order))


def _pack(words: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    off = np.zeros(len(words) + 1, dtype=np.int64)
    for i, w in enumerate(words):
        off[i + 1] = off[i] + len(w)
    flat = np.concatenate(words).astype(np.int32) if words else np.zeros(0, dtype=np.int32)
    return flat, off


class Encoding:
    """A presentation translated to table columns."""

    def __init__(self, pres: Presentation, column_order: Sequence[str] | None = None):
        order = tuple(column_order) if column_order is not None else default_column_order(pres)
        if sorted(order) != sorted(pres.generators):
            raise ValueError(f"column order {order} is not a permutation of {pres.generators}")
        self.pres = pres
        self.column_order = order
        self.gen_index = {name: k for k, name in enumerate(order)}
        self.ncols = 2 * len(order)
        self.relators = [self.encode(r.cyclic_reduce()) for r in pres.relators]
        self.relators = [r for r in self.relators if len(r)]
        self.rel, self.rel_off = _pack(self.relators)
        self.conj, self.conj_off, self.col_start = self._conjugates()

    def encode(self, w: Word) -> np.ndarray:
        return np.array(
            [2 * self.gen_index[n] + (0 if e == 1 else 1) for n, e in w.letters], dtype=np.int32
        )

    def column_names(self) -> list[str]:
        out = []
        for name in self.column_order:
            out += [name, name + "^-1"]
        return out

    def _conjugates(self):
        """Cyclic conjugates of every relator and its inverse, grouped by first letter."""
        by_col: list[list[tuple]] = [[] for _ in range(self.ncols)]
        seen = set()
        for r in self.relators:
            inv = (r[::-1] ^ 1).astype(np.int32)
            for w in (r, inv):
                for s in range(len(w)):
                    c = tuple(np.concatenate([w[s:], w[:s]]).tolist())
                    if c not in seen:
                        seen.add(c)
                        by_col[c[0]].append(c)
        words, col_start = [], np.zeros(self.ncols + 1, dtype=np.int64)
        for x in range(self.ncols):
            group = sorted(by_col[x], key=lambda c: (len(c), c))
            words += [np.array(c, dtype=np.int32) for c in group]
            col_start[x + 1] = col_start[x] + len(group)
        flat, off = _pack(words)
        return flat, off, col_start


@dataclass
class CosetTable:
    """A complete coset table in row-major standard form.

    ``table[c, 2k]`` is coset c times generator ``column_order[k]`` and
    ``table[c, 2k+1]`` is c times its inverse; coset 0 is the subgroup.
    """

    presentation: Presentation
    column_order: tuple[str, ...]
    table: np.ndarray
    subgroup: tuple[Word, ...] = ()
    stats: dict = field(default_factory=dict)

    @property
    def index(self) -> int:
        return int(self.table.shape[0])

    @property
    def complete(self) -> bool:
        return bool(self.table.size == 0 or self.table.min() >= 0)

    def column(self, name: str) -> np.ndarray:
        return self.table[:, 2 * self.column_order.index(name)]

    def audit(self) -> int:
        """Failed relator traces plus subgroup words not fixing coset 0."""
        if not self.complete:
            raise IncompleteTable("cannot audit an incomplete table")
        enc = Encoding(self.presentation, self.column_order)
        sub, sub_off = _pack([enc.encode(w) for w in self.subgroup])
        bad = K.trace_failures(self.table, enc.rel, enc.rel_off, sub, sub_off)
        # entry symmetry: c.x = d  iff  d.x^-1 = c
        n = self.index
        for x in range(0, enc.ncols, 2):
            fwd, back = self.table[:, x], self.table[:, x + 1]
            if not np.array_equal(back[fwd], np.arange(n)):
                bad += 1
        return int(bad)

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "columns": list(self.column_order),
            "subgroup": [str(w) for w in self.subgroup],
            "stats": dict(self.stats),
        }


def coset_enumerate(
    pres: Presentation,
    subgroup_gens: Sequence[Word] = (),
    cfg: EnumConfig | None = None,
    *,
    audit: bool = True,
) -> CosetTable:
    """Todd-Coxeter enumeration of the cosets of <subgroup_gens> in pres.

    The result is compacted and put in row-major standard form, so it is
    the same table for either strategy.  With ``audit`` (the default) the
    table is checked against every relator and subgroup word, and the
    extracted permutation representation against the presentation;
    any failure raises AssertionError.
    """
    cfg = cfg or EnumConfig()
    enc = Encoding(pres, cfg.column_order)
    sub_words = [enc.encode(w) for w in subgroup_gens]
    sub_words = [w for w in sub_words if len(w)]
    sub, sub_off = _pack(sub_words)
    cap = int(cfg.max_cosets)
    T = np.empty((cap, max(enc.ncols, 1)), dtype=np.int32)
    p = np.empty(cap, dtype=np.int32)
    q = np.empty(cap, dtype=np.int32)
    st = np.zeros(K.N_STATE, dtype=np.int64)
    start = time.perf_counter()
    if enc.ncols == 0:
        table = np.zeros((1, 0), dtype=np.int32)
        status = K.OK
    else:
        if cfg.strategy == "hlt":
            ded = np.empty((1, 2), dtype=np.int32)
            status = K.hlt_enumerate(T, p, q, st, ded, enc.rel, enc.rel_off, sub, sub_off)
        else:
            ded = np.empty((max(1024, min(cap, 1 << 20)), 2), dtype=np.int32)
            status = K.felsch_enumerate(
                T, p, q, st, ded, enc.rel, enc.rel_off, sub, sub_off,
                enc.conj, enc.conj_off, enc.col_start, cfg.fill_order == "col",
            )
        if status != K.OK:
            raise EnumerationFailed(
                f"coset table full at max_cosets={cap} "
                f"({st[K.S_LIVE]} live, {st[K.S_DEFINED]} defined)"
            )
        table = K.finalize(T, p, st).copy()
    elapsed = time.perf_counter() - start
    stats = {
        "strategy": cfg.strategy,
        "fill_order": cfg.fill_order,
        "defined": int(st[K.S_DEFINED]) if enc.ncols else 1,
        "max_live": int(st[K.S_MAXLIVE]) if enc.ncols else 1,
        "compactions": int(st[K.S_COMPACT]),
        "seconds": round(elapsed, 6),
    }
    del T, p, q
    result = CosetTable(pres, enc.column_order, table, tuple(subgroup_gens), stats)
    if audit:
        bad = result.audit()
        if bad:
            raise AssertionError(f"enumeration audit failed: {bad} bad traces")
        if result.index <= PERM_AUDIT_MAX_DEGREE:
            report = verify_representation(pres, rep_from_table(result))
            if not report.holds:
                raise AssertionError(f"extracted representation fails relators {report.failures}")
    return result


def rep_from_table(t: CosetTable) -> PermRep:
    """Generator x acts on cosets by c -> c.x; names follow the presentation."""
    if not t.complete:
        raise IncompleteTable("rep_from_table needs a complete table")
    gens = []
    for name in t.presentation.generators:
        col = t.column(name)
        gens.append((name, Perm._trusted(tuple(int(v) for v in col))))
    return PermRep(t.index, tuple(gens), {"source": "coset table"})
