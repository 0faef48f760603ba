"""Regenerate the bundled catalog instances under src/xihom/catalog."""

from pathlib import Path

from xihom.algebra import Path as QPath, enumerate_basis, path_algebra_A, truncated_polynomial
from xihom.instance import Instance, dumps_instance
from xihom.modcat import ModuleMap, cokernel, injective, projective, regular, simple

OUT = Path(__file__).resolve().parent.parent / "src" / "xihom" / "catalog"


def named(m, name):
    m.name = name
    return m


def truncations(alg, powers):
    """Cyclic modules A/x^j for the listed j."""
    a = regular(alg)
    out = {}
    for j in powers:
        idx = alg.index[QPath(0, 0, ("x",) * j)]
        out[j] = cokernel(ModuleMap(a, a, a.action(idx)))[0]
    return out


def local(p, k, extra):
    pres = truncated_polynomial(p, k)
    alg = enumerate_basis(pres)
    mods = {"k": simple(alg, 0)}
    cyc = truncations(alg, extra)
    for j in extra:
        mods[f"M{j}"] = cyc[j]
    mods["A"] = regular(alg)
    return pres, alg, mods


def linear(n):
    pres = path_algebra_A(n, 2)
    alg = enumerate_basis(pres)
    return pres, alg


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    instances = []

    pres, alg, mods = local(2, 2, [])
    instances.append(Instance(2, pres, alg, mods, "all", "dual_numbers"))
    instances.append(Instance(2, pres, alg, mods, ["k"], "dual_numbers_rel_k"))

    pres, alg, mods = local(3, 3, [2])
    instances.append(Instance(3, pres, alg, mods, "all", "f3_x3"))
    instances.append(Instance(3, pres, alg, mods, ["k"], "f3_x3_rel_k"))

    pres, alg, mods = local(2, 4, [2, 3])
    instances.append(Instance(2, pres, alg, mods, "all", "f2_x4"))

    # vertex v is labelled v + 1 in module names
    pres, alg = linear(2)
    mods = {"S1": simple(alg, 0), "S2": simple(alg, 1), "P1": projective(alg, 0)}
    instances.append(Instance(2, pres, alg, mods, "all", "a2"))

    pres, alg = linear(3)
    mods = {"S1": simple(alg, 0), "S2": simple(alg, 1), "S3": simple(alg, 2),
            "P1": projective(alg, 0), "P2": projective(alg, 1), "I2": injective(alg, 1)}
    instances.append(Instance(2, pres, alg, mods, "all", "a3"))

    for inst in instances:
        for name, m in inst.modules.items():
            named(m, name)
        (OUT / f"{inst.name}.json").write_text(dumps_instance(inst))
        print(inst.name, {n: m.dimension_vector() for n, m in inst.modules.items()})


if __name__ == "__main__":
    main()
