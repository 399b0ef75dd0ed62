"""Maximal-subgroup orders against half the minus-type orthogonal group."""

from mcg_workbench.orders import maximal_subgroup_ledger, numeric_relations

print(maximal_subgroup_ledger(4).to_text())
worst = min(
    (row.margin / maximal_subgroup_ledger(g).half_o_minus, g, row.label)
    for g in range(4, 65)
    for row in maximal_subgroup_ledger(g).rows
)
print(f"tightest relative margin: {worst[0]:.3g} at g={worst[1]} ({worst[2]})")
for g in (2, 3, 4):
    print(g, numeric_relations(g).checks)
