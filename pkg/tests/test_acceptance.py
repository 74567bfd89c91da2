"""Acceptance criteria 1-8, one check per criterion.

Each check records a single PASS/FAIL line; the lines are printed at the end
of the pytest session (see conftest.py) and when this file is run directly.
"""
import time

import pytest
from hypothesis import given, settings, strategies as st

from simphopf import (BarycentricPoint, Chain, Cochain, boundary, certify_component, coboundary, constant_cochain,
                      cup, euler_characteristic, evaluate, extract_fiber, gen_hopf, gen_seifert_xi,
                      gen_zeta, homology, hopf_invariant, lemma1_condition, lemma2_condition,
                      lemma2_partition, mu, mu_all, solve_coboundary, tetrahedron_boundary)
from simphopf.cli_io import EXIT_VIOLATION, theorem_report
from simphopf.fibers import _preimages_in_V, barycenter

from corpus import base_maps, corpus, delta4, mutate, relabel, torus7

RESULTS = {}


def record(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS[n] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def full_corpus():
    extra = [gen_zeta(4).map, gen_seifert_xi(4).map]
    maps = list(corpus()) + extra
    assert len(maps) >= 50
    return maps


@pytest.fixture(scope="module")
def hopf_values(full_corpus):
    return {id(f): hopf_invariant(f).value for f in full_corpus}


# 1 -------------------------------------------------------------------------

def test_criterion_1_hopf_extremality():
    t0 = time.perf_counter()
    gm = gen_hopf()
    f = gm.map
    ntet, nvert = len(f.source.facets), len(f.source.vertices)
    mus = sorted(mu_all(f).values())
    h = hopf_invariant(f).value
    elapsed = time.perf_counter() - t0
    ok = ntet == 36 and nvert == 12 and mus == [9, 9, 9, 9] and abs(h) == 1 and elapsed < 1
    record(1, ok, f"36 tetrahedra={ntet}, 12 vertices={nvert}, mu={mus}, |H|={abs(h)}, "
                  f"{elapsed:.2f}s")
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_zeta_family():
    parts = []
    ok = True
    for n in (2, 3, 4):
        t0 = time.perf_counter()
        f = gen_zeta(n).map
        h = hopf_invariant(f).value
        m = mu_all(f)
        elapsed = time.perf_counter() - t0
        good = abs(h) == n and m[(0, 1, 2)] == 9 and min(m.values()) >= 9 and elapsed < 30
        ok &= good
        parts.append(f"n={n}: |H|={abs(h)} mu(ABC)={m[(0, 1, 2)]} min mu={min(m.values())} "
                     f"{elapsed:.2f}s")
    record(2, ok, "; ".join(parts))
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_bound_scan(full_corpus, hopf_values):
    violations, exit4, nonzero = [], [], 0
    for f in full_corpus:
        h = hopf_values[id(f)]
        if h:
            nonzero += 1
            low = [s for s, c in mu_all(f).items() if c < 9]
            if low:
                violations.append((f.name, low))
        _, code = theorem_report(f)
        if code == EXIT_VIOLATION:
            exit4.append(f.name)

    # property-based part: fresh random relabelings and perturbations
    @settings(max_examples=30, deadline=None, derandomize=True)
    @given(st.integers(0, len(base_maps()) - 1), st.integers(0, 60), st.randoms(use_true_random=False))
    def prop(i, steps, rng):
        g = relabel(mutate(base_maps()[i], rng, steps), rng)
        h = hopf_invariant(g).value
        if h:
            assert min(mu_all(g).values()) >= 9
        assert theorem_report(g)[1] != EXIT_VIOLATION

    prop_ok = True
    try:
        prop()
    except AssertionError:
        prop_ok = False
    ok = not violations and not exit4 and prop_ok and len(full_corpus) >= 50
    record(3, ok, f"{len(full_corpus)} corpus maps ({nonzero} with H != 0) + 30 random maps; "
                  f"mu < 9 with H != 0: {len(violations)}; exit code 4: {len(exit4)}")
    assert ok


# 4 -------------------------------------------------------------------------

def test_criterion_4_certificate_soundness(full_corpus):
    disks = partitions = bad = 0
    for f in full_corpus:
        for s in f.target.faces(2):
            p = barycenter(s)
            for i, comp in enumerate(extract_fiber(f, s).components):
                cert = certify_component(f, comp, i)
                alpha = lemma2_condition(f, comp)
                if alpha is not None and len(_preimages_in_V(f, comp, alpha)) == 2:
                    _, _, parts = lemma2_partition(f, comp, alpha)
                    vals = list(parts.values())
                    partitions += 1
                    bad += vals.count("Ru") != vals.count("Rv")
                if cert.which == "Neither":
                    continue
                disks += 1
                if cert.disk.boundary() != comp.chain():
                    bad += 1
                a = f(cert.witness) if cert.which == "Lemma1" else cert.witness
                allowed = {p, BarycentricPoint(((a, 1),))}
                for cell in cert.disk.terms:
                    for q in cell:
                        img = q.image(f) if isinstance(q, BarycentricPoint) \
                            else BarycentricPoint(((f(q), 1),))
                        bad += img not in allowed
    ok = bad == 0 and disks > 0 and partitions > 0
    record(4, ok, f"{disks} disks and {partitions} two-preimage partitions checked, "
                  f"{bad} defects")
    assert ok


# 5 -------------------------------------------------------------------------

def test_criterion_5_contrapositive(full_corpus, hopf_values):
    certified_maps = failures = 0
    for f in full_corpus:
        h = hopf_values[id(f)]
        for s in f.target.faces(2):
            comps = extract_fiber(f, s).components
            certs = [certify_component(f, c, i) for i, c in enumerate(comps)]
            if all(c.which != "Neither" for c in certs):
                certified_maps += 1
                failures += h != 0
            if h:
                chain_ok = False
                for c in comps:
                    if lemma1_condition(c) is None and lemma2_condition(f, c) is None:
                        init = set(c.initial.values())
                        if len(c.S) >= len(init) and init == set(c.V) and len(c.V) >= 9:
                            chain_ok = True
                failures += not chain_ok
    ok = failures == 0
    record(5, ok, f"{certified_maps} fully certified diagrams all have H = 0; "
                  f"{failures} failures of the inequality chain or of H = 0")
    assert ok


# 6 -------------------------------------------------------------------------

def _criterion_6_parts(maps):
    """(triangles_and_psi_ok, k1_negates, k2_negates) over ``maps``."""
    same, k1, k2 = True, True, True
    for f in maps:
        r = hopf_invariant(f, all_triangles=True, trials=20, seed=11)
        same &= r.consistent and len(r.well_definedness_checks) >= 23
        k1 &= hopf_invariant(f.with_source(f.source.reversed())).value == -r.value
        k2 &= hopf_invariant(f.with_target(f.target.reversed())).value == -r.value
    return same, k1, k2


def test_criterion_6_well_definedness_and_source_orientation():
    same, k1, _ = _criterion_6_parts(base_maps())
    assert same and k1


@pytest.mark.xfail(strict=True, reason="reversing the target sphere leaves H unchanged; "
                                       "H is quadratic in the target class")
def test_criterion_6_hopf_well_definedness():
    same, k1, k2 = _criterion_6_parts(base_maps())
    ok = same and k1 and k2
    record(6, ok, f"4 base triangles + 20 psi perturbations agree: {same}; "
                  f"negates under source reversal: {k1}; negates under target reversal: {k2}")
    assert ok


# 7 -------------------------------------------------------------------------

def test_criterion_7_fiber_structure(full_corpus):
    bad = 0
    for f in full_corpus:
        for s in f.target.faces(2):
            d = extract_fiber(f, s)
            bad += d.total != mu(f, s)
            entries = set()
            for comp in d.components:
                n = len(comp.cycle)
                for i, seg in enumerate(comp.cycle):
                    nxt = comp.cycle[(i + 1) % n]
                    prv = comp.cycle[i - 1]
                    bad += seg.b != nxt.a
                    bad += seg.a in entries
                    entries.add(seg.a)
                    sig = set(seg.tetra)
                    if n > 1:
                        bad += sig != (sig & set(nxt.tetra)) | {seg.initial}
                        bad += seg.initial in nxt.tetra
                        bad += sig != (sig & set(prv.tetra)) | {seg.terminal}
                        bad += seg.terminal in prv.tetra
    c5 = base_maps()[0]
    d = extract_fiber(c5, (0, 1, 2))
    c5_ok = (len(d.components) == 1 and len(d.components[0]) == 3
             and hopf_invariant(c5).value == 0 and mu(c5, (0, 1, 2)) == 3)
    ok = bad == 0 and c5_ok
    record(7, ok, f"partition, closure, (*) and face matching over {len(full_corpus)} maps: "
                  f"{bad} defects; collapse5 single 3-segment circle, H = 0, mu = 3: {c5_ok}")
    assert ok


# 8 -------------------------------------------------------------------------

def test_criterion_8_algebra():
    ks = [delta4(), tetrahedron_boundary(), torus7(), base_maps()[1].source]
    failures = []

    def cochain(k, deg, rng):
        return Cochain(deg, {s: rng.randint(-3, 3) for s in k.faces(deg)}, complex_=k)

    @settings(max_examples=25, deadline=None, derandomize=True)
    @given(st.sampled_from(ks), st.randoms(use_true_random=False))
    def prop(k, rng):
        for deg in range(k.dim - 1):
            assert not coboundary(coboundary(cochain(k, deg, rng)))
        for deg in range(2, k.dim + 1):
            c = Chain(deg, {s: rng.randint(-3, 3) for s in k.faces(deg)}, complex_=k)
            assert not boundary(boundary(c))
        for p in range(k.dim):
            for q in range(k.dim - p):
                a, b = cochain(k, p, rng), cochain(k, q, rng)
                assert coboundary(cup(a, b)) == cup(coboundary(a), b) + (-1) ** p * cup(a, coboundary(b))
        phi = cochain(k, 1 if k.dim == 3 else 0, rng)
        assert coboundary(solve_coboundary(k, coboundary(phi))) == coboundary(phi)

    try:
        prop()
    except AssertionError as exc:
        failures.append(f"property: {exc}")
    k = delta4()
    for deg in range(3):
        for s in k.faces(deg):
            c = Cochain(deg, {s: 1}, complex_=k)
            for t in k.faces(deg + 1):
                sig = Chain(deg + 1, {t: 1}, complex_=k)
                if evaluate(coboundary(c), sig) != evaluate(c, boundary(sig)):
                    failures.append("adjointness")
    if cup(constant_cochain(k), Cochain(2, {(0, 1, 2): 1}, complex_=k)) != Cochain(2, {(0, 1, 2): 1}):
        failures.append("unit")
    if homology(delta4()) != [(1, []), (0, []), (0, []), (1, [])]:
        failures.append("S3 homology")
    if homology(tetrahedron_boundary()) != [(1, []), (0, []), (1, [])]:
        failures.append("S2 homology")
    if homology(torus7())[1] != (2, []):
        failures.append("torus H1")
    for k in ks:
        if sum((-1) ** d * b for d, (b, _) in enumerate(homology(k))) != euler_characteristic(k):
            failures.append(f"chi {k.name}")
    ok = not failures
    record(8, ok, "d^2 = 0, delta^2 = 0, adjointness, Leibniz, exact solve, fixture homology, "
                  f"chi identities: {failures or 'all hold'}")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
