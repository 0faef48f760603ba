"""A module that is Gorenstein projective only relative to the class generated by k.

Over F_3[x]/(x^3), take the proper class whose projectives are add(A + k).
The two-dimensional module M2 then has infinite relative projective dimension,
yet both halves of a complete resolution exist, so its relative Gpd is 0.
"""

from xihom import (
    build_complete_resolution,
    complete_ext,
    gpd,
    load_catalog,
    xi_ext,
    xi_ext_injective_side,
    xi_ext_two_resolutions,
    xi_pd,
)

inst = load_catalog("f3_x3_rel_k")
xi, m2 = inst.proper_class, inst.module("M2")
print("class:", inst.class_label)
print("relative pd(M2):", xi_pd(xi, m2, 12))
print("relative Gpd(M2):", gpd(xi, m2).to_dict())

for d in range(1, 5):
    a = xi_ext(xi, m2, m2, d).dimension
    b = xi_ext_two_resolutions(xi, m2, m2, d).dimension
    c = xi_ext_injective_side(m2, m2, d, xi).dimension
    print(f"Ext^{d}(M2,M2): resolution {a}, two resolutions {b}, coresolution {c}")

cr = build_complete_resolution(xi, m2, 6)
print("validator:", cr.validate())
print("complete Ext^d(M2,M2), d=-4..4:",
      [complete_ext(xi, m2, m2, d, 6).dimension for d in range(-4, 5)])
