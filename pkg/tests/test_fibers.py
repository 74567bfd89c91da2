from fractions import Fraction

import pytest

from simphopf import (BarycentricPoint, build_disk_lemma1, build_disk_lemma2,
                      certify_component, extract_fiber, fiber_segment, lemma1_condition,
                      lemma2_condition, lemma2_partition, mu, verify_lower_bound)
from simphopf.errors import (ConditionNotMet, DegenerateTetra, NotMaximal, TheoremViolation,
                             TriangleMismatch)
from simphopf.fibers import FormalChain2, barycenter
from simphopf.hopf import hopf_invariant

from corpus import base_maps, constant, corpus

ABC = (0, 1, 2)
THIRD = Fraction(1, 3)


def pt(*vs):
    return BarycentricPoint(tuple((v, THIRD) for v in vs))


@pytest.fixture(scope="module")
def collapse5():
    return base_maps()[0]


def test_segment_endpoints(collapse5):
    seg = fiber_segment(collapse5, (0, 1, 2, 3), ABC)
    assert {seg.a, seg.b} == {pt(1, 2, 3), pt(0, 1, 2)}
    assert {seg.a.carrier, seg.b.carrier} == {(1, 2, 3), (0, 1, 2)}
    seg = fiber_segment(collapse5, (1, 2, 3, 4), ABC)
    assert {seg.a.carrier, seg.b.carrier} == {(1, 2, 4), (1, 2, 3)}
    with pytest.raises(DegenerateTetra):
        fiber_segment(collapse5, (0, 1, 3, 4), ABC)
    with pytest.raises(TriangleMismatch):
        fiber_segment(collapse5, (0, 1, 2, 3), (0, 1, 3))


def test_collapse5_fiber(collapse5):
    d = extract_fiber(collapse5, ABC)
    assert len(d.components) == 1
    comp = d.components[0]
    tets = [seg.tetra for seg in comp.cycle]
    i = tets.index((0, 1, 2, 3))
    assert tets[i:] + tets[:i] == [(0, 1, 2, 3), (1, 2, 3, 4), (0, 1, 2, 4)]
    assert comp.V == {0, 1, 2, 3, 4}
    assert d.p == barycenter(ABC)
    with pytest.raises(NotMaximal):
        extract_fiber(collapse5, (0, 1))


def test_constant_map_has_empty_fiber(collapse5):
    f = constant(collapse5.source)
    assert extract_fiber(f, ABC).components == []


def test_collapse5_lemmas(collapse5):
    comp = extract_fiber(collapse5, ABC).components[0]
    v = lemma1_condition(comp)
    assert v == 1
    assert v not in comp.initial.values()
    disk = build_disk_lemma1(comp, v)
    assert len(disk) == 3 and disk.boundary() == comp.chain()
    assert build_disk_lemma1(comp.reversed(), v).boundary() == -comp.chain()
    assert lemma2_condition(collapse5, comp) == 1
    disk2 = build_disk_lemma2(collapse5, comp, 1)
    assert disk2.boundary() == comp.chain()
    cert = certify_component(collapse5, comp)
    assert cert.which == "Lemma1" and cert.witness == 1


def test_lemma_errors(collapse5):
    comp = extract_fiber(collapse5, ABC).components[0]
    with pytest.raises(ConditionNotMet):
        build_disk_lemma1(comp, 0)  # vertex 0 is an initial vertex
    with pytest.raises(ConditionNotMet):
        build_disk_lemma2(collapse5, comp, 0)  # A has three preimages


def test_hopf_fibers_fail_both_lemmas():
    f = base_maps()[1]
    for s in f.target.faces(2):
        d = extract_fiber(f, s)
        assert d.total == 9
        assert any(lemma1_condition(c) is None and lemma2_condition(f, c) is None
                   for c in d.components)


def test_formal_chain_basics():
    c = FormalChain2({(0, pt(0, 1, 2), pt(1, 2, 3)): 1})
    assert not c.boundary().boundary()
    assert FormalChain2({(pt(0, 1, 2), 0, pt(1, 2, 3)): 1}) == -c
    with pytest.raises(ValueError):
        FormalChain2({(0, 0, pt(1, 2, 3)): 1})


def _every_component(maps):
    for f in maps:
        for s in f.target.faces(2):
            yield f, s, extract_fiber(f, s)


def test_partition_and_closure():
    for f, s, d in _every_component(corpus()):
        assert d.total == mu(f, s)
        seen = set()
        for comp in d.components:
            assert not (comp.S & seen)
            seen |= comp.S
            n = len(comp.cycle)
            for i, seg in enumerate(comp.cycle):
                nxt = comp.cycle[(i + 1) % n]
                assert seg.b == nxt.a
                assert seg.a.image(f) == seg.b.image(f) == barycenter(s)


def test_star_identity():
    # each tetra is the exit face plus the initial vertex, and the entry face plus the terminal one
    for f, s, d in _every_component(corpus()):
        for comp in d.components:
            n = len(comp.cycle)
            for i, seg in enumerate(comp.cycle):
                sig = set(seg.tetra)
                nxt, prv = comp.cycle[(i + 1) % n].tetra, comp.cycle[i - 1].tetra
                if n > 1:
                    assert sig == (sig & set(nxt)) | {seg.initial}
                    assert seg.initial not in nxt
                    assert sig == (sig & set(prv)) | {seg.terminal}
                    assert seg.terminal not in prv
                assert set(seg.b.carrier) == sig - {seg.initial}
                assert set(seg.a.carrier) == sig - {seg.terminal}


def test_reversing_source_reverses_segments():
    for f in base_maps():
        g = f.with_source(f.source.reversed())
        for s in f.target.faces(2):
            fw = {seg.tetra: (seg.a, seg.b) for c in extract_fiber(f, s).components for seg in c.cycle}
            bw = {seg.tetra: (seg.b, seg.a) for c in extract_fiber(g, s).components for seg in c.cycle}
            assert fw == bw


def test_certificates_over_corpus():
    kinds = set()
    two_preimage = 0
    for f, s, d in _every_component(corpus()):
        for i, comp in enumerate(d.components):
            cert = certify_component(f, comp, i)
            kinds.add(cert.which)
            if cert.which == "Neither":
                continue
            assert cert.disk.boundary() == comp.chain()
            alpha = f(cert.witness) if cert.which == "Lemma1" else cert.witness
            allowed = {barycenter(s), BarycentricPoint(((alpha, 1),))}
            for cell in cert.disk.terms:
                for p in cell:
                    img = p.image(f) if isinstance(p, BarycentricPoint) \
                        else BarycentricPoint(((f(p), 1),))
                    assert img in allowed
            if cert.which == "Lemma1":
                v = cert.witness
                assert all(v in t for t in comp.S)
                assert [w for w in comp.V if f(w) == f(v)] == [v]
            else:
                pre = [w for w in comp.V if f(w) == alpha]
                if len(pre) == 2:
                    two_preimage += 1
                    _, _, parts = lemma2_partition(f, comp, alpha)
                    vals = list(parts.values())
                    assert vals.count("Ru") == vals.count("Rv")
    assert kinds == {"Lemma1", "Lemma2", "Neither"}
    assert two_preimage > 0


def test_bound_verifier():
    f = base_maps()[0]
    rep = verify_lower_bound(f, ABC, 0)
    assert rep.holds and rep.mu == 3
    with pytest.raises(TheoremViolation):
        verify_lower_bound(f, ABC, 1)  # every cycle certified, yet H claimed nonzero
    for f in base_maps()[1:]:
        h = hopf_invariant(f).value
        for s in f.target.faces(2):
            rep = verify_lower_bound(f, s, h)
            assert rep.holds and rep.mu >= 9 and max(rep.component_sizes) >= 9
