"""Relative and complete cohomology of the simple module over F_2[x]/(x^2).

Run: python3 demos/dual_numbers.py
"""

from xihom import (
    build_complete_resolution,
    complete_ext,
    complete_ext_stable_oracle,
    gpd,
    load_catalog,
    xi_ext,
    xi_pd,
)

inst = load_catalog("dual_numbers")
xi, k = inst.proper_class, inst.module("k")

print("pd(k) within 12:", xi_pd(xi, k, 12))
print("Gpd(k):", gpd(xi, k).to_dict())
print("Ext^d(k,k), d=0..5:", [xi_ext(xi, k, k, d).dimension for d in range(6)])

cr = build_complete_resolution(xi, k, 6)
print("complete resolution:", cr.summary()["term_dims"])
print("extension rule:", cr.extension_rule)
degs = range(-6, 7)
print("complete Ext, d=-6..6:", [complete_ext(xi, k, k, d, 6).dimension for d in degs])
print("stable Hom oracle:    ", [complete_ext_stable_oracle(k, k, d).dimension for d in degs])
# periodicity carries the answer far outside the stored window
print("complete Ext at d=100:", complete_ext(xi, k, k, 100, 6).dimension)
