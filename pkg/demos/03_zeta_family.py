"""Seifert maps of growing Hopf invariant that keep only nine tetrahedra over ABC."""
import time

from simphopf import gen_seifert_xi, gen_zeta, hopf_invariant, mu_all

print("== xi_n: the plain Seifert projection =================")
for n in (2, 3, 4):
    f = gen_seifert_xi(n).map
    m = mu_all(f)
    print(f"   n={n}: {len(f.source.vertices):3d} vertices, {len(f.source.facets):4d} tetrahedra, "
          f"mu = {list(m.values())}, H = {hopf_invariant(f).value}")

print("== zeta_n: nested tori squeeze ABC down to 9 ==========")
for n in (2, 3, 4, 5):
    t0 = time.perf_counter()
    gm = gen_zeta(n)
    f = gm.map
    m = mu_all(f)
    h = hopf_invariant(f).value
    print(f"   n={n}: {len(f.source.vertices):3d} vertices, {len(f.source.facets):4d} tetrahedra, "
          f"mu = {list(m.values())}, H = {h}  [{time.perf_counter() - t0:.1f}s]")

print("== how the shells are stacked (n=4) ===================")
for line in gen_zeta(4).construction_log:
    print("  ", line)
