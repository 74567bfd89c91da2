import pytest

from simphopf import (FAMILIES, gen_collapse5, gen_hopf, gen_seifert_xi, gen_zeta, image_simplex,
                      mu, mu_all, validate_closed_oriented_3_manifold, validate_simplicial,
                      validate_sphere_2)
from simphopf.errors import ConstructionInvariantFailed
from simphopf.generators import Strand, timed_stack, word_stack

ABC = (0, 1, 2)


def _certified(gm):
    rep = validate_closed_oriented_3_manifold(gm.complex_source)
    assert rep.ok and rep.s3_homology
    assert validate_sphere_2(gm.complex_target).ok
    assert validate_simplicial(gm.map)
    assert gm.construction_log


def test_collapse5():
    gm = gen_collapse5()
    _certified(gm)
    assert gm.provenance == "Collapse5"
    assert mu_all(gm.map) == {(0, 1, 2): 3, (0, 1, 3): 0, (0, 2, 3): 0, (1, 2, 3): 0}


def test_hopf_shape():
    gm = gen_hopf()
    _certified(gm)
    assert gm.provenance == "HopfPrism"
    assert len(gm.complex_source.facets) == 36
    assert len(gm.complex_source.vertices) == 12
    assert set(mu_all(gm.map).values()) == {9}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_xi(n):
    gm = gen_seifert_xi(n)
    _certified(gm)
    assert gm.provenance == f"SeifertXi({n})"
    assert mu(gm.map, ABC) == 3 * (2 * n - 1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_zeta(n):
    gm = gen_zeta(n)
    _certified(gm)
    f = gm.map
    assert mu(f, ABC) == 9
    assert min(mu_all(f).values()) >= 9
    assert gm.construction_log[-1].startswith("mu:")
    nested = [line for line in gm.construction_log if line.startswith("nested torus")]
    assert len(nested) == 2 * n - 4


def test_zeta2_is_xi2():
    a, b = gen_zeta(2), gen_seifert_xi(2)
    assert a.complex_source.facets == b.complex_source.facets
    assert a.map.assignment == b.map.assignment


def test_shell_tetrahedra_are_degenerate_over_abc():
    f = gen_zeta(3).map
    onto = [t for t in f.source.facets if image_simplex(f, t) == ABC]
    assert len(onto) == 9
    # the nine are exactly the innermost stack, whose vertices all carry the deepest tag
    assert all(all("2x" in f.source.labels[v] for v in t) for t in onto)


def test_small_n_rejected():
    with pytest.raises(ValueError):
        gen_zeta(1)


def test_stack_closing_checks():
    with pytest.raises(ConstructionInvariantFailed):
        word_stack(((0, 1, 2), (3, 4, 5), (6, 7, 8)), [0, 1, 2, 0])
    with pytest.raises(ConstructionInvariantFailed):
        timed_stack([Strand((0, 1, 2), 0, 1), Strand((3, 4, 5), 0, 1), Strand((6, 7, 8), 0, 1)])


def test_families_registry():
    assert set(FAMILIES) == {"collapse5", "hopf", "xi", "zeta"}
    assert FAMILIES["zeta"](3).provenance == "Zeta(3)"


def test_generators_are_deterministic():
    assert gen_zeta(3).complex_source.facets == gen_zeta(3).complex_source.facets
