"""``workbench``: command-line driver for the library.

Every subcommand writes JSON (``--format json``) or a plain-text summary
(the default).  JSON output never contains timings or worker counts unless
``--timings`` is given, so repeated runs give identical bytes.  Exit status
is 0 when everything checked holds, 1 when a check fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

import numpy as np

from . import golden, orders, sympf2, verify
from .cosets import (
    EnumConfig,
    EnumerationFailed,
    bench_fill_order,
    coset_enumerate,
    low_index_search,
    rep_from_table,
)
from .fpgrp import (
    Presentation,
    abelianization,
    add_relator,
    format_word,
    matsumoto_presentation,
    parse_relation,
    parse_word,
)
from .permgrp import PermRep, are_equivalent

# Searches above this index are long-running and need --long.
LONG_INDEX_THRESHOLD = 20


class UsageError(Exception):
    pass


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        out = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(out)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(out)


def _presentation(args) -> Presentation:
    if getattr(args, "pres", None):
        try:
            text = Path(args.pres).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read presentation {args.pres}: {exc}") from exc
        pres = Presentation.from_text(text, name=Path(args.pres).stem)
    elif getattr(args, "genus", None) is not None:
        pres = matsumoto_presentation(args.genus, getattr(args, "closed", False))
    else:
        raise UsageError("give --pres FILE or --genus G")
    for rel in getattr(args, "relator", None) or ():
        pres = add_relator(pres, parse_relation(rel))
    return pres


def _add_pres_args(p, closed: bool = True) -> None:
    p.add_argument("--pres", metavar="FILE", help="presentation text file ('gens:' line, then one relation per line)")
    p.add_argument("--genus", type=int, help="use the Matsumoto presentation of this genus")
    if closed:
        p.add_argument("--closed", action="store_true", help="add the closed-surface relation")
    p.add_argument("--relator", action="append", metavar="WORD", help="extra relator or relation (repeatable)")


# -- subcommands ---------------------------------------------------------


def cmd_presentation(args) -> int:
    pres = _presentation(args)
    doc = {"generators": list(pres.generators), "relators": [format_word(r) for r in pres.relators]}
    _emit(args, doc, pres.to_text())
    return 0


def cmd_abelianize(args) -> int:
    pres = _presentation(args)
    inv = abelianization(pres)
    parts = [f"Z/{d}" for d in inv if d] + ["Z"] * sum(1 for d in inv if d == 0)
    _emit(args, {"invariants": inv}, " x ".join(parts) if parts else "trivial")
    return 0


def cmd_enumerate(args) -> int:
    pres = _presentation(args)
    subgroup = [parse_word(w) for w in (args.subgroup or [])]
    cfg = EnumConfig(max_cosets=args.max_cosets, strategy=args.strategy, fill_order=args.fill_order)
    try:
        table = coset_enumerate(pres, subgroup, cfg)
    except EnumerationFailed as exc:
        _emit(args, {"index": None, "error": str(exc)}, f"failed: {exc}")
        return 1
    stats = dict(table.stats)
    if not args.timings:
        stats.pop("seconds", None)
    doc = {"index": table.index, "columns": list(table.column_order), "stats": stats}
    text = f"index {table.index}  (defined {stats['defined']}, max live {stats['max_live']})"
    if args.rep:
        doc["rep"] = rep_from_table(table).to_json_dict()
    _emit(args, doc, text)
    return 0


def cmd_low_index(args) -> int:
    pres = _presentation(args)
    if args.max_index > LONG_INDEX_THRESHOLD and not args.long:
        raise UsageError(f"--max-index above {LONG_INDEX_THRESHOLD} is a long search; pass --long")
    ckpt = Path(args.checkpoint) if args.checkpoint else None
    if args.resume and (ckpt is None or not ckpt.exists()):
        raise UsageError("--resume needs an existing --checkpoint file")
    if ckpt is not None and ckpt.exists() and not args.resume:
        raise UsageError(f"checkpoint {ckpt} exists; pass --resume to continue it")
    cfg = EnumConfig(fill_order=args.fill_order)

    def progress(nodes, found):
        if args.verbose:
            print(f"  {nodes} nodes, {found} classes so far", file=sys.stderr, flush=True)

    res = low_index_search(
        pres, args.max_index, cfg, workers=args.workers, checkpoint=ckpt,
        max_nodes=args.max_nodes, progress=progress,
    )
    doc = {
        "max_index": args.max_index,
        "complete": res.complete,
        "nodes": res.nodes,
        "records": [r.to_json_dict() for r in res.records],
    }
    if args.timings:
        doc["seconds"] = round(res.seconds, 3)
    lines = [f"{'index':>5}  class", *(f"{r.index:>5}  {r.signature}" for r in res.records)]
    status = "complete" if res.complete else "stopped early (resume with --resume)"
    lines.append(f"{len(res.records)} classes, {res.nodes} nodes, {status}")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_phi(args) -> int:
    rep = sympf2.build_phi(args.genus, args.type, boundaries=args.boundaries)
    doc: dict = {"rep": rep.to_json_dict()}
    text = [f"degree {rep.degree}"]
    text += [f"{name}: {perm}" for name, perm in rep.generators]
    ok = True
    if args.restrict:
        d = sympf2.restrict_decompose(args.genus, args.type)
        doc["restriction"] = d.to_json_dict()
        ok &= d.holds
        text.append(f"restriction to Sp_{2 * args.genus - 2}: blocks {d.sizes} ({'ok' if d.holds else 'MISMATCH'})")
    if args.verify_against:
        try:
            other = PermRep.load(args.verify_against)
        except OSError as exc:
            raise UsageError(f"cannot read {args.verify_against}: {exc}") from exc
        base = rep if args.boundaries == 1 else sympf2.build_phi(args.genus, args.type)
        x = are_equivalent(base, other) if base.degree == other.degree else None
        doc["conjugator"] = None if x is None else str(x)
        ok &= x is not None
        text.append(f"equivalent to {args.verify_against}: " + ("yes, via " + str(x) if x else "NO"))
    _emit(args, doc, "\n".join(text))
    return 0 if ok else 1


def cmd_orders(args) -> int:
    g = args.genus
    doc: dict = {
        "g": g,
        "N+": orders.N(g, "+"),
        "N-": orders.N(g, "-"),
        "Sp": str(orders.sp_order(g)),
    }
    text = [f"g = {g}: N+ = {doc['N+']}, N- = {doc['N-']}, |Sp_{2 * g}(F2)| = {doc['Sp']}"]
    ok = True
    if args.ledger:
        ledger = orders.maximal_subgroup_ledger(g)
        doc["ledger"] = ledger.to_json_dict()
        ok &= ledger.holds
        text.append(ledger.to_text())
    if args.relations:
        rel = orders.numeric_relations(g)
        doc["relations"] = rel.to_json_dict()
        ok &= rel.holds
        text += [f"{'ok' if v else 'FAIL'}  {k}" for k, v in rel.checks.items()]
    _emit(args, doc, "\n".join(text))
    return 0 if ok else 1


def cmd_verify_all(args) -> int:
    def progress(check):
        if args.verbose:
            print(f"{'PASS' if check.passed else 'FAIL'} {check.name}", file=sys.stderr, flush=True)

    report = verify.verify_all(
        args.tier, workers=args.workers, checkpoint=args.checkpoint,
        data_directory=args.data_dir, progress=progress,
    )
    if args.format == "json":
        _emit(args, report.to_json_dict(args.timings), "")
    else:
        _emit(args, {}, report.to_text(args.timings))
    if not report.passed:
        print("failed: " + ", ".join(report.failures), file=sys.stderr)
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    pres = _presentation(args)
    report = bench_fill_order(pres, args.max_index)
    text = [f"{'order':<5}  {'nodes':>10}  {'seconds':>9}  classes"]
    for order in ("row", "col"):
        r = report[order]
        text.append(f"{order:<5}  {r['nodes']:>10}  {r['seconds']:>9.3f}  {len(r['classes'])}")
    text.append(f"class lists identical: {report['identical']}")
    _emit(args, report, "\n".join(text))
    return 0


# -- parser --------------------------------------------------------------


def _add_global_args(p, with_defaults) -> None:
    d = (lambda v: {"default": v}) if with_defaults else (lambda v: {})
    p.add_argument("--format", choices=("text", "json"), **d("text"))
    p.add_argument("--workers", type=int, help="worker processes for searches", **d(1))
    p.add_argument("--seed", type=int, help="seed for anything randomized", **d(0))
    p.add_argument("--out", metavar="FILE", help="write output here instead of stdout", **d(None))
    p.add_argument("--timings", action="store_true", help="include wall times in the output", **d(False))
    p.add_argument("--data-dir", help=f"golden data directory (default: ${golden.DATA_ENV} or the bundled data)", **d(None))
    p.add_argument("-v", "--verbose", action="store_true", **d(False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="workbench", description=__doc__.splitlines()[0])
    _add_global_args(parser, argparse.ArgumentParser)
    # global flags are accepted after the subcommand too; suppressed defaults
    # there keep them from overwriting values given before it
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    _add_global_args(common, None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("presentation", parents=[common], help="print a presentation")
    _add_pres_args(p)
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("abelianize", parents=[common], help="abelian invariants of a presentation")
    _add_pres_args(p)
    p.set_defaults(func=cmd_abelianize)

    p = sub.add_parser("enumerate", parents=[common], help="coset enumeration")
    _add_pres_args(p)
    p.add_argument("--subgroup", action="append", metavar="WORD", help="subgroup generator (repeatable)")
    p.add_argument("--max-cosets", type=int, default=1_000_000)
    p.add_argument("--strategy", choices=("hlt", "felsch"), default="felsch")
    p.add_argument("--fill-order", choices=("row", "col"), default="col")
    p.add_argument("--rep", action="store_true", help="include the action on cosets as a PermRep")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("low-index", parents=[common], help="conjugacy classes of subgroups of small index")
    _add_pres_args(p)
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--long", action="store_true", help=f"allow --max-index above {LONG_INDEX_THRESHOLD}")
    p.add_argument("--checkpoint", metavar="FILE", help="save search state here periodically")
    p.add_argument("--resume", action="store_true", help="continue from an existing --checkpoint")
    p.add_argument("--max-nodes", type=int, default=None, help="stop after this many nodes (resumable)")
    p.add_argument("--fill-order", choices=("row", "col"), default="col")
    p.set_defaults(func=cmd_low_index)

    p = sub.add_parser("phi", parents=[common], help="action of the mapping class group on quadratic forms")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--type", choices=("+", "-"), required=True)
    p.add_argument("--restrict", action="store_true", help="decompose under the embedded Sp_{2g-2}")
    p.add_argument("--verify-against", metavar="FILE", help="PermRep JSON to find a conjugator to")
    p.add_argument("--boundaries", type=int, default=1, help="name the T1 image T'1..T'N")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("orders", parents=[common], help="group orders and inequalities")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--ledger", action="store_true", help="maximal-subgroup orders against |O-|/2 (g >= 4)")
    p.add_argument("--relations", action="store_true", help="recurrences and inequalities between N+ and N- (g >= 2)")
    p.set_defaults(func=cmd_orders)

    p = sub.add_parser("verify-all", parents=[common], help="run a tier of named checks")
    p.add_argument("--tier", choices=verify.TIERS, default="quick")
    p.add_argument("--checkpoint", metavar="FILE", help="checkpoint for the long-tier search")
    p.set_defaults(func=cmd_verify_all)

    p = sub.add_parser("bench", parents=[common], help="low-index search under both fill orders")
    _add_pres_args(p)
    p.add_argument("--max-index", type=int, default=10)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    np.random.seed(args.seed)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"workbench: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"workbench: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
