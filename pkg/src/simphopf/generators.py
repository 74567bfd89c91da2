"""Constructions of the fixture maps onto the boundary of a tetrahedron.

The preimage of each target triangle is built as a cyclic stack: three
vertex cycles ("strands") over the triangle's corners, and a cyclic word
saying which strand advances next.  Each step adds the tetrahedron spanned
by the current three strand vertices and the next vertex of the stepping
strand.  Stacks that share a pair of strands must induce the same annulus
between them; the global validators check the result.

Two ways of producing words are used:

* explicit words (the Hopf map), and
* a time model where every strand steps at ``base + k * period`` and the
  events of all three strands are merged in time order.  Any two stacks
  built from the same strand timings agree on their common annuli.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as F

from .complex import (SimplicialComplex, build_complex,
                      validate_closed_oriented_3_manifold, validate_sphere_2)
from .errors import ConstructionInvariantFailed
from .maps import SimplicialMap, mu_all, validate_simplicial

LETTERS = "ABCD"


def tetrahedron_boundary():
    """The 4-vertex 2-sphere with vertex ids A=0, B=1, C=2, D=3."""
    return build_complex("S2_4", [("A", "B", "C"), ("A", "B", "D"),
                                  ("A", "C", "D"), ("B", "C", "D")])


@dataclass
class GeneratedMap:
    complex_source: SimplicialComplex
    complex_target: SimplicialComplex
    map: SimplicialMap
    provenance: str
    construction_log: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# stacks

def word_stack(cycles, word):
    """Tetrahedra of the cyclic stack over three vertex cycles.

    ``word`` lists strand indices; strand k must appear a multiple of
    ``len(cycles[k])`` times so that the stack closes up.
    """
    for k, cyc in enumerate(cycles):
        if word.count(k) % len(cyc):
            raise ConstructionInvariantFailed(f"strand {k} does not close up")
    pos = [0, 0, 0]
    tets = []
    for k in word:
        cur = [cycles[j][pos[j] % len(cycles[j])] for j in range(3)]
        nxt = cycles[k][(pos[k] + 1) % len(cycles[k])]
        tets.append(tuple(sorted(cur + [nxt])))
        pos[k] += 1
    return tets


@dataclass(frozen=True)
class Strand:
    cycle: tuple
    base: F
    period: F


def _events(strand):
    """Step times in [0, 1) paired with the step index."""
    i = math.ceil(-strand.base / strand.period)
    out = []
    while strand.base + i * strand.period < 1:
        out.append((strand.base + i * strand.period, i))
        i += 1
    return out


def timed_stack(strands):
    """Cyclic stack whose word is the time order of the strands' steps."""
    events = []
    start = []
    for k, st in enumerate(strands):
        ev = _events(st)
        if len(ev) % len(st.cycle):
            raise ConstructionInvariantFailed("a strand does not close up in one turn")
        start.append(ev[0][1])
        events.extend((t, k) for t, _ in ev)
    events.sort()
    times = [t for t, _ in events]
    if len(set(times)) != len(times):
        raise ConstructionInvariantFailed("two strand steps happen at the same time")
    # rotate each cycle so that index 0 is the vertex before the first step
    cycles = [tuple(st.cycle[(start[k] + j) % len(st.cycle)] for j in range(len(st.cycle)))
              for k, st in enumerate(strands)]
    return word_stack(cycles, [k for _, k in events])


def _assemble(name, facets, labels, images, provenance, log):
    target = tetrahedron_boundary()
    if len(set(facets)) != len(facets):
        raise ConstructionInvariantFailed(f"{name}: repeated tetrahedron")
    source = SimplicialComplex(name, facets, labels)
    f = SimplicialMap(name, source, target, images)
    rep = validate_closed_oriented_3_manifold(source)
    log.append(f"source: {len(source.vertices)} vertices, {len(facets)} tetrahedra, "
               f"verdict {rep.verdict.value}, homology {rep.homology}")
    if not rep.ok or not rep.s3_homology:
        raise ConstructionInvariantFailed(f"{name}: {rep.reason or 'not a homology sphere'}")
    if not validate_sphere_2(target).ok:
        raise ConstructionInvariantFailed("target is not a 2-sphere")
    simp = validate_simplicial(f)
    if not simp:
        raise ConstructionInvariantFailed(f"{name}: non-simplicial on {simp.violations[:3]}")
    counts = mu_all(f)
    log.append("mu: " + ", ".join(
        "".join(LETTERS[v] for v in s) + f"={c}" for s, c in sorted(counts.items())))
    return GeneratedMap(source, target, f, provenance, log)


# ---------------------------------------------------------------------------
# the three families

def gen_collapse5() -> GeneratedMap:
    """Boundary of the 4-simplex folded onto one triangle: an H = 0 fixture."""
    facets = [(0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 3, 4), (0, 2, 3, 4), (1, 2, 3, 4)]
    images = {0: 0, 1: 1, 2: 2, 3: 0, 4: 0}
    log = ["boundary of the 4-simplex, vertices 0,3,4 sent to A"]
    return _assemble("collapse5", facets, {v: str(v) for v in range(5)},
                     images, "Collapse5", log)


# Words of the four stacks of the Hopf map.  Strands are listed in the order
# of the triangle's corners, each as a vertex cycle; vertex 3*t + j lies over
# target vertex t.
HOPF_STACKS = (
    ((0, 1, 2), ((0, 1, 2), (3, 4, 5), (6, 7, 8)),    (0, 0, 1, 1, 2, 0, 1, 2, 2)),
    ((0, 1, 3), ((2, 1, 0), (3, 5, 4), (9, 10, 11)),  (0, 0, 1, 2, 0, 1, 1, 2, 2)),
    ((0, 2, 3), ((0, 1, 2), (6, 7, 8), (9, 11, 10)),  (0, 0, 1, 2, 2, 0, 1, 1, 2)),
    ((1, 2, 3), ((5, 4, 3), (6, 8, 7), (10, 11, 9)),  (0, 0, 1, 1, 2, 2, 0, 1, 2)),
)


def gen_hopf() -> GeneratedMap:
    """A 12-vertex map with nine tetrahedra over every triangle and H = 1.

    Each vertex of the target has a 3-cycle as preimage; each triangle's
    preimage is one cyclic stack of nine tetrahedra.  Uniformly interleaved
    words only give S^2 x S^1, so the words below step some strands twice in
    a row, which puts the twist into the gluing.
    """
    log = []
    facets = []
    for tri, cycles, word in HOPF_STACKS:
        tets = word_stack(cycles, list(word))
        log.append(f"stack over {''.join(LETTERS[t] for t in tri)}: "
                   f"word {''.join('xyz'[k] for k in word)}, {len(tets)} tetrahedra")
        facets.extend(tets)
    labels = {v: f"{LETTERS[v // 3].lower()}{v % 3}" for v in range(12)}
    images = {v: v // 3 for v in range(12)}
    return _assemble("hopf12", facets, labels, images, "HopfPrism", log)


class _Builder:
    def __init__(self):
        self.labels = {}
        self.images = {}

    def strand(self, letter, length, tag=""):
        first = len(self.labels)
        ids = tuple(range(first, first + length))
        for k, v in enumerate(ids):
            self.labels[v] = f"{letter.lower()}{tag}{k}"
            self.images[v] = LETTERS.index(letter)
        return ids


def _seifert_parts(n, builder, log):
    """Strands and stacks of the Seifert map: the stack over ABC is returned separately."""
    if n < 2:
        raise ValueError("n must be at least 2")
    L = 2 * n - 1
    a, b, c = (builder.strand(x, L) for x in "ABC")
    d = builder.strand("D", 3)
    period = F(1, L)
    inner = (Strand(a, F(0), period), Strand(b, F(1, 3 * L), period),
             Strand(c, F(2, 3 * L), period))
    # over the star of D: a second clock in which D winds n times per turn
    eps = F(1, 1000 * n * L)
    beta, gamma = (F(1, n) + eps) / 2, F(1, n) + eps
    dd = Strand(d, F(1, 6 * n) + F(1, 7919), F(1, 3 * n))
    outer = [
        timed_stack([Strand(a, F(0), period), Strand(b, beta, period), dd]),
        timed_stack([Strand(b, beta, period), Strand(c, gamma, period), dd]),
        timed_stack([Strand(c, gamma, period), Strand(a, F(1, n), period), dd]),
    ]
    log.append(f"strands of length {L} over A, B, C; D strand of length 3 stepping {3 * n} times per turn")
    log.append("stacks over ABD, BCD, CAD: " + ", ".join(str(len(t)) for t in outer) + " tetrahedra")
    return inner, [t for ts in outer for t in ts]


def gen_seifert_xi(n) -> GeneratedMap:
    """Seifert fibration with one exceptional fiber of multiplicity n over D."""
    builder, log = _Builder(), []
    inner, outer = _seifert_parts(n, builder, log)
    core = timed_stack(list(inner))
    log.append(f"stack over ABC: {len(core)} tetrahedra")
    return _assemble(f"xi{n}", core + outer, builder.labels, builder.images,
                     f"SeifertXi({n})", log)


def gen_zeta(n) -> GeneratedMap:
    """The Seifert map with the solid torus over ABC replaced by nested shells.

    Tori M_1, ..., M_{2n-4} with strands of lengths 2n-2, ..., 3 sit inside
    each other; every new vertex copies the image of its parent.  Between
    consecutive tori the cross-section is the outer triangle minus the inner
    one, cut into six triangles each carrying only two labels, so no shell
    tetrahedron maps onto ABC.
    """
    builder, log = _Builder(), []
    inner, outer = _seifert_parts(n, builder, log)
    L = 2 * n - 1
    shells = []
    cur = inner
    for level in range(1, 2 * n - 3):
        m = L - level
        if m < 3:
            raise ConstructionInvariantFailed("innermost torus would have fewer than 3 prisms")
        period = F(1, m)
        shift = F(level, 104729)
        new = tuple(Strand(builder.strand(x, m, f"{level}x"), F(j, 3 * m) + shift, period)
                    for j, x in enumerate("ABC"))
        for i in range(3):
            j = (i + 1) % 3
            x, y, x1, y1 = cur[i], cur[j], new[i], new[j]
            shells += timed_stack([x, y, y1])
            shells += timed_stack([x, y1, x1])
        log.append(f"nested torus {level}: strands of length {m}")
        cur = new
    core = timed_stack(list(cur))
    log.append(f"innermost stack over ABC: {len(core)} tetrahedra; shells: {len(shells)} tetrahedra")
    images = builder.images
    abc = {0, 1, 2}
    bad = [t for t in shells if {images[v] for v in t} >= abc]
    if bad:
        raise ConstructionInvariantFailed(f"shell tetrahedra onto ABC: {bad[:3]}")
    gm = _assemble(f"zeta{n}", core + shells + outer, builder.labels, images,
                   f"Zeta({n})", log)
    if mu_all(gm.map)[(0, 1, 2)] != 9:
        raise ConstructionInvariantFailed("more than nine tetrahedra over ABC")
    return gm


FAMILIES = {
    "collapse5": lambda n=None: gen_collapse5(),
    "hopf": lambda n=None: gen_hopf(),
    "xi": lambda n=2: gen_seifert_xi(n),
    "zeta": lambda n=2: gen_zeta(n),
}
