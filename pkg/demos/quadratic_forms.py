"""The action on quadratic forms over F2: degrees, cycle types and the split
under the embedded Sp_{2g-2}."""

from mcg_workbench import orders, sympf2
from mcg_workbench.perm import cycle_type

for g in range(2, 6):
    for eps in "-+":
        rep = sympf2.build_phi(g, eps)
        print(f"g={g} {eps}: degree {rep.degree:>4} = N_g^{eps}, twist cycle type {cycle_type(rep['T1'])}")

for g in (3, 4):
    for eps in "-+":
        d = sympf2.restrict_decompose(g, eps)
        blocks = ", ".join(f"{b.key}:{b.size}{b.restricted_type.value}" for b in d.blocks)
        print(f"g={g} {eps} restricted: {blocks}")

print("stabilizer orders g=3:", sympf2.stabilizer_order(3, "-"), sympf2.stabilizer_order(3, "+"))
print("closed forms:       ", orders.order(orders.OrderFormula("O-minus", 3)),
      orders.order(orders.OrderFormula("O-plus", 3)))
