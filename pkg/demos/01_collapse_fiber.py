"""A folded 3-sphere: the smallest map with a fiber, and why its fiber is null."""
from simphopf import (certify_component, extract_fiber, gen_collapse5, hopf_invariant,
                      image_simplex, mu_all, pivot_edge)
from simphopf.errors import DegenerateTetra

print("== 1. the map =========================================")
gm = gen_collapse5()
f = gm.map
print("   source:", f.source)
print("   images:", {f.source.labels[v]: f.target.labels[w] for v, w in f.assignment.items()})
print("   mu table:", {"".join(f.target.labels[v] for v in s): c for s, c in mu_all(f).items()})

print("== 2. pivot edges =====================================")
for t in f.source.facets:
    try:
        p = pivot_edge(f, t)
        print(f"   {t}: pivot {p.edge} over {f.target.labels[p.collapsed_target_vertex]}")
    except DegenerateTetra:
        print(f"   {t}: degenerate, image", "".join(f.target.labels[v] for v in image_simplex(f, t)))

print("== 3. the fiber over the barycenter of ABC ============")
diagram = extract_fiber(f, (0, 1, 2))
for comp in diagram.components:
    for seg in comp.cycle:
        print(f"   {seg.tetra}: {seg.a} -> {seg.b}   ({seg.initial} -> {seg.terminal})")

print("== 4. a disk it bounds ================================")
cert = certify_component(f, diagram.components[0])
print("   certificate:", cert.which, "with cone vertex", cert.witness)
print("   disk cells:")
for cell, c in sorted(cert.disk.terms.items(), key=str):
    print(f"     {c:+d} {cell}")
print("   boundary equals the fiber:", cert.disk.boundary() == diagram.components[0].chain())

print("== 5. so the invariant vanishes =======================")
print("   H =", hopf_invariant(f).value)
