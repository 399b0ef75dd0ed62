"""Check the printed genus-2 and genus-3 tables against the Matsumoto relators,
then rebuild them from quadratic forms and print the conjugators."""

from mcg_workbench import golden, sympf2
from mcg_workbench.fpgrp import format_word, matsumoto_presentation, verify_representation
from mcg_workbench.permgrp import are_equivalent, group_order

data = golden.load_all()
for name, rep in data.tables.items():
    g = golden.NAMES[name][0]
    pres = matsumoto_presentation(g, closed=True)
    report = verify_representation(pres, rep)
    failed = [format_word(pres.relators[i]) for i in report.failures]
    print(f"{name:<11} degree {rep.degree:>2}  image order {group_order(rep):>8}  "
          f"relators: {'all hold' if not failed else 'fails ' + ', '.join(failed)}")

print()
for name in ("phi2_minus", "phi2_plus", "phi3_minus", "phi3_plus"):
    g, eps = golden.NAMES[name]
    x = are_equivalent(sympf2.build_phi(g, eps), data.tables[name])
    print(f"build_phi({g}, {eps}) -> {name}: {x}")
twist = are_equivalent(data.tables["phi2_minus"], data.tables["phi2_alpha"])
print(f"phi2_minus vs phi2_alpha: {'equivalent' if twist else 'not equivalent'}")
