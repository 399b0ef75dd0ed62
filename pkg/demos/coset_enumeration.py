"""Coset enumeration on small quotients, then the low-index search of M(2,1)."""

import time

from mcg_workbench.cosets import EnumConfig, bench_fill_order, coset_enumerate, low_index
from mcg_workbench.fpgrp import add_relator, matsumoto_presentation, parse_word
from mcg_workbench.verify import braid_quotient

for k in (2, 3, 4):
    print(f"<x0, x1 | x0^{k}, x1^{k}, braid>: order {coset_enumerate(braid_quotient(k)).index}")

m21 = matsumoto_presentation(2)
for strategy in ("hlt", "felsch"):
    t = coset_enumerate(add_relator(m21, parse_word("T1^2")), (), EnumConfig(strategy=strategy))
    print(f"M(2,1)/<<T1^2>> by {strategy}: index {t.index}, {t.stats['defined']} cosets defined")

start = time.perf_counter()
for r in low_index(m21, 10):
    print(f"  class {r.signature}")
print(f"low-index to 10 in {time.perf_counter() - start:.2f}s")

report = bench_fill_order(m21, 10)
print(f"nodes: row-major {report['row']['nodes']}, column-major {report['col']['nodes']}")
