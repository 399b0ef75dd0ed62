"""Sims' low-index subgroup search with checkpointing and task splitting.

The search tree is walked by a numba kernel in bounded chunks.  Between
chunks the driver drains found tables, and can write a checkpoint: the
candidate chosen at every depth of the current branch, which is enough to
rebuild the branch exactly.

Checkpoint file (JSON, ``"version": 1``)::

    {
      "format": "mcg-workbench/low-index-checkpoint",
      "version": 1,
      "presentation": "<presentation text>",
      "max_index": 36,
      "fill_order": "col",
      "column_order": ["T1", ...],
      "nodes": 123456,            # nodes entered so far
      "path": [0, 1, 1, ...],     # candidate per depth of the resume point
      "resume": "enter" | "next", # re-enter that node, or move past it
      "pending": [[...], ...],    # task prefixes still to run (parallel mode)
      "done": false,
      "tables": [[[...], ...]]    # class keys found so far
    }

In parallel mode the tree is first cut at a fixed depth; each surviving
node becomes an independent task whose subtree a worker searches.  Found
tables are merged by set union and sorted, so the class list does not
depend on the number of workers.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from ..fpgrp import Presentation, verify_representation
from ..permgrp import PermRep, are_equivalent, is_transitive
from . import _kernels as K
from .table import CosetTable, EnumConfig, Encoding, rep_from_table

__all__ = [
    "SubgroupRecord",
    "LowIndexResult",
    "low_index",
    "low_index_search",
    "bench_fill_order",
    "CHECKPOINT_VERSION",
]

CHECKPOINT_VERSION = 1
CHECKPOINT_FORMAT = "mcg-workbench/low-index-checkpoint"
CHUNK_NODES = 200_000
SOLUTION_BUFFER = 256
TASK_BUFFER = 4096


@dataclass(frozen=True)
class SubgroupRecord:
    """One conjugacy class of subgroups: its index, the coset table in the
    class's least row-major standard form, and the action on cosets."""

    index: int
    table: CosetTable
    rep: PermRep

    @property
    def signature(self) -> str:
        """Short, label-free identifier of the class."""
        digest = hashlib.sha256(np.ascontiguousarray(self.table.table).tobytes()).hexdigest()
        return f"{self.index}:{digest[:12]}"

    def to_json_dict(self) -> dict:
        return {"index": self.index, "signature": self.signature, "rep": self.rep.to_json_dict()}


@dataclass
class LowIndexResult:
    records: list[SubgroupRecord]
    nodes: int
    seconds: float
    complete: bool = True
    stats: dict = field(default_factory=dict)

    @property
    def indices(self) -> list[int]:
        return [r.index for r in self.records]

    def classes(self) -> list[str]:
        return [r.signature for r in self.records]


class _Search:
    """Buffers and kernel arguments for one presentation and bound."""

    def __init__(self, enc: Encoding, max_index: int, fill_order: str):
        self.enc = enc
        self.maxn = max_index
        self.colmajor = fill_order == "col"
        ncols = enc.ncols
        cells = max_index * max(ncols, 1) + 1
        self.T = np.full((max_index, ncols), -1, dtype=np.int32)
        self.trail = np.zeros((cells, 2), dtype=np.int32)
        self.fr = np.zeros((cells, 5), dtype=np.int64)
        self.st = np.zeros(K.N_LSTATE, dtype=np.int64)
        self.sol_tables = np.zeros((SOLUTION_BUFFER, max_index, ncols), dtype=np.int32)
        self.sol_n = np.zeros(SOLUTION_BUFFER, dtype=np.int64)

    def run(self, path, floor, mode, max_nodes, task_depth=0, tasks=None):
        self.st[K.L_MODE] = mode
        if tasks is None:
            tasks = np.zeros((1, 1), dtype=np.int64)
        status = K.low_index_run(
            self.T, self.trail, self.st, self.fr,
            np.asarray(path, dtype=np.int64), floor, self.maxn, self.colmajor,
            self.enc.conj, self.enc.conj_off, self.enc.col_start,
            max_nodes, self.sol_tables, self.sol_n, task_depth, tasks,
        )
        if status == K.BAD_REPLAY:
            raise ValueError("checkpoint path does not replay on this presentation")
        found = [self.sol_tables[i, : self.sol_n[i]].copy() for i in range(self.st[K.L_NSOL])]
        depth = int(self.st[K.L_DEPTH])
        resume = [int(c) for c in self.fr[:depth, 2]]
        return status, found, resume, int(self.st[K.L_MODE])

    @property
    def nodes(self) -> int:
        return int(self.st[K.L_NODES])


def _key(table: np.ndarray) -> np.ndarray:
    return K.min_rebased(np.ascontiguousarray(table, dtype=np.int32))


def _run_task(args):
    """Worker entry point: search one subtree to exhaustion."""
    pres_text, column_order, max_index, fill_order, prefix = args
    pres = Presentation.from_text(pres_text)
    s = _Search(Encoding(pres, column_order), max_index, fill_order)
    keys = []
    path, mode = list(prefix), K.ENTER
    while True:
        status, found, path, mode = s.run(path, len(prefix), mode, CHUNK_NODES)
        keys += [_key(t).tolist() for t in found]
        if status == K.DONE:
            return keys, s.nodes


def _write_checkpoint(path: Path, doc: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(doc, separators=(",", ":")))
    os.replace(tmp, path)


def _checkpoint_doc(pres, enc, max_index, fill_order, nodes, path, mode, pending, done, keys):
    return {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "presentation": pres.to_text(),
        "max_index": max_index,
        "fill_order": fill_order,
        "column_order": list(enc.column_order),
        "nodes": nodes,
        "path": path,
        "resume": "enter" if mode == K.ENTER else "next",
        "pending": pending,
        "done": done,
        "tables": sorted(keys),
    }


def _load_checkpoint(path: Path, pres, enc, max_index, fill_order) -> dict | None:
    if not path.exists():
        return None
    doc = json.loads(path.read_text())
    if doc.get("format") != CHECKPOINT_FORMAT or doc.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"{path}: not a version-{CHECKPOINT_VERSION} low-index checkpoint")
    expect = {
        "presentation": pres.to_text(),
        "max_index": max_index,
        "fill_order": fill_order,
        "column_order": list(enc.column_order),
    }
    for k, v in expect.items():
        if doc.get(k) != v:
            raise ValueError(f"{path}: checkpoint was made with a different {k}")
    return doc


def low_index_search(
    pres: Presentation,
    max_index: int,
    cfg: EnumConfig | None = None,
    *,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    checkpoint_seconds: float = 60.0,
    max_nodes: int | None = None,
    split_depth: int | None = None,
    progress=None,
) -> LowIndexResult:
    """Run the search and return records plus node counts and timing.

    ``checkpoint`` names a JSON file; an existing compatible file is resumed.
    ``max_nodes`` stops early (``complete`` is then False) after roughly
    that many nodes; with a checkpoint the run can be continued later.
    """
    if max_index < 1:
        raise ValueError("max_index must be at least 1")
    cfg = cfg or EnumConfig()
    enc = Encoding(pres, cfg.column_order)
    start = time.perf_counter()
    ckpt = Path(checkpoint) if checkpoint is not None else None
    doc = _load_checkpoint(ckpt, pres, enc, max_index, cfg.fill_order) if ckpt else None
    keys: set = set()
    nodes0 = 0
    path: list[int] = []
    mode = K.ENTER
    pending = None
    done = False
    if doc is not None:
        keys = {json.dumps(t) for t in doc["tables"]}
        nodes0 = int(doc["nodes"])
        path = list(doc["path"])
        mode = K.ENTER if doc["resume"] == "enter" else K.NEXT
        pending = doc["pending"]
        done = bool(doc["done"])

    def save(nodes, path, mode, pending, done):
        if ckpt is not None:
            table_lists = [json.loads(k) for k in keys]
            _write_checkpoint(
                ckpt,
                _checkpoint_doc(pres, enc, max_index, cfg.fill_order, nodes, path, mode, pending, done, table_lists),
            )

    nodes = nodes0
    complete = done
    last_save = time.monotonic()
    if not done and workers > 1 and pending is None:
        depth = split_depth if split_depth is not None else min(4, max(1, max_index))
        s = _Search(enc, max_index, cfg.fill_order)
        tasks = np.zeros((TASK_BUFFER, depth), dtype=np.int64)
        pending = []
        tpath, tmode = [], K.ENTER
        while True:
            status, found, tpath, tmode = s.run(tpath, 0, tmode, CHUNK_NODES, depth, tasks)
            keys |= {json.dumps(_key(t).tolist()) for t in found}
            pending += [tasks[i, :depth].tolist() for i in range(s.st[K.L_NTASK])]
            if status == K.DONE:
                break
        nodes += s.nodes
        save(nodes, [], K.ENTER, pending, False)

    if not done and pending is not None:
        pres_text = pres.to_text()
        jobs = [(pres_text, enc.column_order, max_index, cfg.fill_order, t) for t in pending]
        remaining = list(pending)
        with ProcessPoolExecutor(max_workers=max(1, workers)) as pool:
            for prefix, (found, n) in zip(pending, pool.map(_run_task, jobs)):
                keys |= {json.dumps(t) for t in found}
                nodes += n
                remaining.remove(prefix)
                if time.monotonic() - last_save >= checkpoint_seconds:
                    save(nodes, [], K.ENTER, remaining, False)
                    last_save = time.monotonic()
        complete = True
        save(nodes, [], K.ENTER, [], True)
    elif not done:
        s = _Search(enc, max_index, cfg.fill_order)
        s.st[K.L_NODES] = nodes0
        budget = max_nodes if max_nodes is not None else -1
        while True:
            chunk = CHUNK_NODES if budget < 0 else min(CHUNK_NODES, max(budget - (s.nodes - nodes0), 0))
            if chunk == 0:
                break
            status, found, path, mode = s.run(path, 0, mode, chunk)
            keys |= {json.dumps(_key(t).tolist()) for t in found}
            if progress is not None:
                progress(s.nodes, len(keys))
            if status == K.DONE:
                complete = True
                break
            if time.monotonic() - last_save >= checkpoint_seconds:
                save(s.nodes, path, mode, None, False)
                last_save = time.monotonic()
        nodes = s.nodes
        save(nodes, path, mode, None, complete)

    records = _records(pres, enc, sorted((json.loads(k) for k in keys), key=lambda t: (len(t), t)))
    return LowIndexResult(
        records,
        nodes,
        time.perf_counter() - start,
        complete,
        {"fill_order": cfg.fill_order, "workers": workers, "max_index": max_index},
    )


def _records(pres: Presentation, enc: Encoding, tables: Sequence[list]) -> list[SubgroupRecord]:
    records: list[SubgroupRecord] = []
    for t in tables:
        arr = np.array(t, dtype=np.int32).reshape(len(t), enc.ncols)
        table = CosetTable(pres, enc.column_order, arr, (), {"source": "low-index"})
        if table.audit():
            raise AssertionError(f"low-index table of index {table.index} fails its audit")
        rep = rep_from_table(table)
        if not verify_representation(pres, rep).holds or not is_transitive(rep):
            raise AssertionError(f"low-index representation of degree {rep.degree} is invalid")
        # safety net: distinct keys must mean inequivalent actions
        if any(r.index == table.index and are_equivalent(r.rep, rep) is not None for r in records):
            continue
        records.append(SubgroupRecord(table.index, table, rep))
    return records


def low_index(
    pres: Presentation,
    max_index: int,
    cfg: EnumConfig | None = None,
    **kwargs,
) -> list[SubgroupRecord]:
    """One record per conjugacy class of subgroups of index <= max_index,
    the whole group included, sorted by index then class key."""
    result = low_index_search(pres, max_index, cfg, **kwargs)
    if not result.complete:
        raise RuntimeError("search stopped before completion; use low_index_search to resume")
    return result.records


def bench_fill_order(pres: Presentation, max_index: int, cfg: EnumConfig | None = None) -> dict:
    """Run the search under both fill orders; the class lists must agree.

    Timings are reported, never asserted.
    """
    cfg = cfg or EnumConfig()
    report = {}
    for order in ("row", "col"):
        c = EnumConfig(cfg.max_cosets, cfg.strategy, order, cfg.column_order)
        res = low_index_search(pres, max_index, c)
        report[order] = {"nodes": res.nodes, "seconds": round(res.seconds, 6), "classes": res.classes()}
    same = report["row"]["classes"] == report["col"]["classes"]
    report["identical"] = same
    if not same:
        raise AssertionError("fill orders disagree on the class list")
    return report
