"""Twelve vertices, thirty-six tetrahedra, nine over every triangle."""
from simphopf import (extract_fiber, gen_hopf, hopf_invariant, lemma1_condition,
                      lemma2_condition, mu_all, null_certificate)

print("== 1. build ===========================================")
gm = gen_hopf()
f = gm.map
for line in gm.construction_log:
    print("  ", line)

print("== 2. mu on each triangle =============================")
for s, c in mu_all(f).items():
    print("  ", "".join(f.target.labels[v] for v in s), c)

print("== 3. Hopf invariant, checked several ways ============")
h = hopf_invariant(f, all_triangles=True, trials=20)
print("   H =", h.value)
print("   recomputations agree:", h.consistent, f"({len(h.well_definedness_checks)} of them)")

print("== 4. the fibers cannot be filled =====================")
for s in f.target.faces(2):
    d = extract_fiber(f, s)
    name = "".join(f.target.labels[v] for v in s)
    for i, c in enumerate(d.components):
        init = set(c.initial.values())
        print(f"   {name} C{i}: |S| = {len(c)}, |V| = {len(c.V)}, init onto V: {init == set(c.V)}, "
              f"lemma1: {lemma1_condition(c)}, lemma2: {lemma2_condition(f, c)}")
    print(f"   {name}: null certificate = {null_certificate(f, s)}")
