"""The A_2 quiver 1 -> 2: finite global dimension, so complete cohomology vanishes."""

from xihom import gpd, load_catalog, vanishing_report, xi_ext, xi_pd
from xihom.cohomology import complete_ext_colimit_oracle

inst = load_catalog("a2")
xi = inst.proper_class
mods = inst.modules

for name, m in mods.items():
    print(f"{name}: dimvec {m.dimension_vector()}, pd {xi_pd(xi, m, 12)}, Gpd {gpd(xi, m).to_dict()}")

print("Ext^1(S1,S2):", xi_ext(xi, mods["S1"], mods["S2"], 1).dimension)
print("Ext^1(S2,S1):", xi_ext(xi, mods["S2"], mods["S1"], 1).dimension)

rep = vanishing_report(xi, mods["S1"], 12, list(mods.values()))
for key, val in rep["verdicts"].items():
    print(f"  {key}: {val}")

col = complete_ext_colimit_oracle(xi, mods["S1"], mods["S2"], 0, 12, 4)
print("colimit oracle at degree 0:", col.to_dict())
