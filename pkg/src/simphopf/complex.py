"""Abstract simplicial complexes, orientations and combinatorial manifold checks.

Simplices are strictly increasing tuples of integer vertex ids.  Labels are
kept only for input/output.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import DuplicateVertexInFacet, NonMaximalFacet, UnknownVertex, NotOriented


def permutation_sign(seq) -> int:
    """Sign of the permutation that sorts ``seq`` (entries must be distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def normalize(oriented):
    """Return ``(sorted_tuple, sign)`` for an ordered tuple of distinct vertices."""
    if len(set(oriented)) != len(oriented):
        raise DuplicateVertexInFacet(f"repeated vertex in {oriented!r}")
    return tuple(sorted(oriented)), permutation_sign(oriented)


class OrientedSimplex:
    """An ordered tuple of distinct vertices, equal up to even permutation."""

    __slots__ = ("vertices",)

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise DuplicateVertexInFacet(f"repeated vertex in {self.vertices!r}")

    @property
    def dim(self):
        return len(self.vertices) - 1

    def normalized(self):
        return normalize(self.vertices)

    def __neg__(self):
        v = self.vertices
        if len(v) < 2:
            raise ValueError("a vertex has no opposite orientation")
        return OrientedSimplex((v[1], v[0]) + v[2:])

    def __eq__(self, other):
        if not isinstance(other, OrientedSimplex):
            return NotImplemented
        return self.normalized() == other.normalized()

    def __hash__(self):
        return hash(self.normalized())

    def __repr__(self):
        return f"OrientedSimplex({self.vertices!r})"


def faces_of(simplex, k):
    """All k-dimensional faces of ``simplex`` (sorted tuples)."""
    return combinations(simplex, k + 1)


class SimplicialComplex:
    """A finite abstract simplicial complex given by its maximal simplices.

    Instances are treated as immutable.  ``orientation`` maps each facet to
    +1 or -1 relative to its sorted vertex order; when not supplied it is
    computed on first use by a breadth-first traversal of the dual graph.
    """

    def __init__(self, name, facets, labels=None, orientation=None):
        self.name = name
        self.facets = tuple(facets)
        self.dim = max((len(f) for f in self.facets), default=0) - 1
        self.vertices = tuple(sorted({v for f in self.facets for v in f}))
        self.labels = dict(labels) if labels else {v: str(v) for v in self.vertices}
        faces = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            for k in range(len(f)):
                faces[k].update(faces_of(f, k))
        self._faces = [tuple(sorted(fs)) for fs in faces]
        self._face_sets = [set(fs) for fs in self._faces]
        self._orientation = dict(orientation) if orientation is not None else None
        self._oriented_done = orientation is not None

    # -- basic queries ----------------------------------------------------
    def faces(self, k):
        if k < 0 or k > self.dim:
            return ()
        return self._faces[k]

    @property
    def all_faces(self):
        return self._faces

    def __contains__(self, simplex):
        simplex = tuple(sorted(simplex))
        k = len(simplex) - 1
        return 0 <= k <= self.dim and simplex in self._face_sets[k]

    def count(self, k):
        return len(self.faces(k))

    def index(self, k):
        """Map from k-simplex to its position in the lexicographic basis."""
        return {s: i for i, s in enumerate(self.faces(k))}

    def label(self, v):
        return self.labels[v]

    def vertex_by_label(self, label):
        for v, lab in self.labels.items():
            if lab == label:
                return v
        raise UnknownVertex(f"no vertex labelled {label!r} in {self.name}")

    def is_pure(self):
        top = self.dim + 1
        return all(len(f) == top for f in self.facets)

    def ridge_map(self):
        """Map each codimension-one face to the list of facets containing it."""
        ridges = {}
        for f in self.facets:
            for r in combinations(f, len(f) - 1):
                ridges.setdefault(r, []).append(f)
        return ridges

    # -- orientation --------------------------------------------------------
    @property
    def orientation(self):
        if not self._oriented_done:
            self._orientation = coherent_orientation(self)
            self._oriented_done = True
        return self._orientation

    def reversed(self):
        """Same complex with every facet sign negated."""
        o = self.orientation
        if o is None:
            raise NotOriented(f"{self.name} has no coherent orientation")
        return SimplicialComplex(self.name, self.facets, self.labels,
                                 {f: -s for f, s in o.items()})

    def relabelled(self, perm, name=None):
        """Isomorphic copy with vertex ids replaced by ``perm[v]``.

        The orientation, if any, is transported along the relabelling.
        """
        facets = [tuple(sorted(perm[v] for v in f)) for f in self.facets]
        labels = {perm[v]: lab for v, lab in self.labels.items()}
        o = self.orientation
        if o is None:
            return SimplicialComplex(name or self.name, facets, labels)
        moved = {g: o[f] * permutation_sign([perm[v] for v in f])
                 for f, g in zip(self.facets, facets)}
        return SimplicialComplex(name or self.name, facets, labels, moved)

    def __repr__(self):
        return (f"SimplicialComplex({self.name!r}, dim={self.dim}, "
                f"facets={len(self.facets)}, vertices={len(self.vertices)})")


def build_complex(name, facet_list):
    """Build a complex from facets given as vertex ids or string labels.

    String labels get ids in order of first appearance; integer vertices keep
    their value as id.  Duplicate facets are merged; a facet contained in
    another one is an error.
    """
    facet_list = [tuple(f) for f in facet_list]
    labels = {}
    ids = {}
    for f in facet_list:
        if len(set(f)) != len(f):
            raise DuplicateVertexInFacet(f"facet {f!r} repeats a vertex")
        for v in f:
            if v in ids:
                continue
            if isinstance(v, int):
                ids[v] = v
            else:
                ids[v] = len(ids)
            labels[ids[v]] = str(v)
    if len(set(ids.values())) != len(ids):
        raise DuplicateVertexInFacet("mixing integer ids and labels produced a collision")
    seen = {}
    for f in facet_list:
        s = tuple(sorted(ids[v] for v in f))
        seen.setdefault(s, None)
    facets = list(seen)
    by_size = sorted(facets, key=len)
    fsets = [frozenset(f) for f in facets]
    for f in by_size:
        fs = frozenset(f)
        for g in fsets:
            if len(g) > len(fs) and fs < g:
                raise NonMaximalFacet(f"facet {f!r} is a face of {tuple(sorted(g))!r}")
    return SimplicialComplex(name, facets, labels)


def star_and_link(complex_, vertex):
    """Closed star (facets through ``vertex``) and link as complexes."""
    if vertex not in complex_.vertices:
        raise UnknownVertex(f"vertex {vertex!r} not in {complex_.name}")
    star = [f for f in complex_.facets if vertex in f]
    link = [tuple(v for v in f if v != vertex) for f in star]
    link = [f for f in link if f]
    labels = complex_.labels
    star_c = SimplicialComplex(f"star({labels[vertex]})", star,
                               {v: labels[v] for f in star for v in f})
    link_c = SimplicialComplex(f"link({labels[vertex]})", link,
                               {v: labels[v] for f in link for v in f})
    return star_c, link_c


def euler_characteristic(complex_) -> int:
    return sum((-1) ** k * complex_.count(k) for k in range(complex_.dim + 1))


def dual_graph_components(complex_):
    """Connected components of facets, adjacency through shared ridges."""
    ridges = complex_.ridge_map()
    adj = {f: [] for f in complex_.facets}
    for fs in ridges.values():
        for a in fs:
            for b in fs:
                if a != b:
                    adj[a].append(b)
    comps = []
    seen = set()
    for f in complex_.facets:
        if f in seen:
            continue
        comp = []
        queue = deque([f])
        seen.add(f)
        while queue:
            g = queue.popleft()
            comp.append(g)
            for h in adj[g]:
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        comps.append(comp)
    return comps


def is_connected(complex_) -> bool:
    """Connectivity of the 1-skeleton."""
    if not complex_.vertices:
        return False
    adj = {v: set() for v in complex_.vertices}
    for f in complex_.facets:
        for a in f:
            adj[a].update(f)
    start = complex_.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(complex_.vertices)


def induced_sign(facet, sign, ridge):
    """Orientation sign induced on ``ridge`` by the oriented facet."""
    i = next(k for k, v in enumerate(facet) if v not in ridge)
    return sign * (-1) ** i


def coherent_orientation(complex_):
    """Facet signs making every ridge receive opposite induced orientations.

    The first facet in input order gets +1 and the dual graph is traversed
    breadth-first in input order.  Returns None if the complex is not pure,
    some ridge lies in more than two facets, or no coherent choice exists.
    """
    if not complex_.facets or not complex_.is_pure():
        return None
    ridges = complex_.ridge_map()
    if any(len(fs) > 2 for fs in ridges.values()):
        return None
    neighbours = {f: [] for f in complex_.facets}
    for r, fs in ridges.items():
        if len(fs) == 2:
            a, b = fs
            neighbours[a].append((r, b))
            neighbours[b].append((r, a))
    sign = {}
    for seed in complex_.facets:
        if seed in sign:
            continue
        sign[seed] = 1
        queue = deque([seed])
        while queue:
            f = queue.popleft()
            for r, g in neighbours[f]:
                want = -induced_sign(f, sign[f], r)
                # sign[g] must satisfy induced_sign(g, sign[g], r) == want
                s = want * induced_sign(g, 1, r)
                if g in sign:
                    if sign[g] != s:
                        return None
                else:
                    sign[g] = s
                    queue.append(g)
    return sign


def oriented_sign(complex_, oriented):
    """+1 if the ordered tuple agrees with the complex's orientation of that facet."""
    facet, s = normalize(oriented)
    o = complex_.orientation
    if o is None:
        raise NotOriented(f"{complex_.name} is not oriented")
    return s * o[facet]


class Verdict(enum.Enum):
    CLOSED_ORIENTED_3_MANIFOLD = "ClosedOriented3Manifold"
    CLOSED_SURFACE_SPHERE = "ClosedSurfaceSphere"
    INVALID = "Invalid"


@dataclass
class ManifoldReport:
    name: str
    is_pure: bool = False
    is_closed_pseudomanifold: bool = False
    is_connected: bool = False
    all_links_spheres: bool = False
    orientable: bool = False
    euler_characteristic: int = 0
    homology: list = field(default_factory=list)
    verdict: Verdict = Verdict.INVALID
    reason: str = ""
    s3_homology: bool = False

    @property
    def ok(self):
        return self.verdict is not Verdict.INVALID

    def to_dict(self):
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "reason": self.reason,
            "is_pure": self.is_pure,
            "is_closed_pseudomanifold": self.is_closed_pseudomanifold,
            "is_connected": self.is_connected,
            "all_links_spheres": self.all_links_spheres,
            "orientable": self.orientable,
            "euler_characteristic": self.euler_characteristic,
            "homology": [{"rank": r, "torsion": list(t)} for r, t in self.homology],
            "s3_homology_certified": self.s3_homology,
        }


def _surface_checks(complex_):
    """(pure, closed, connected, chi) for a 2-complex."""
    pure = complex_.dim == 2 and complex_.is_pure()
    closed = pure and all(len(fs) == 2 for fs in complex_.ridge_map().values())
    connected = is_connected(complex_) and len(dual_graph_components(complex_)) == 1
    return pure, closed, connected, euler_characteristic(complex_)


def _is_2_sphere(complex_):
    pure, closed, connected, chi = _surface_checks(complex_)
    return pure and closed and connected and chi == 2


def validate_sphere_2(complex_) -> ManifoldReport:
    from .chains import homology

    rep = ManifoldReport(complex_.name)
    pure, closed, connected, chi = _surface_checks(complex_)
    rep.is_pure = pure
    rep.is_closed_pseudomanifold = closed
    rep.is_connected = connected
    rep.euler_characteristic = chi
    if closed:
        rep.all_links_spheres = all(
            _is_cycle(star_and_link(complex_, v)[1]) for v in complex_.vertices)
    rep.orientable = closed and complex_.orientation is not None
    if complex_.facets:
        rep.homology = homology(complex_)
    if not pure:
        rep.reason = "not a pure 2-complex"
    elif not closed:
        rep.reason = "some edge is not in exactly two triangles"
    elif not connected:
        rep.reason = "disconnected"
    elif chi != 2:
        rep.reason = f"Euler characteristic {chi} != 2"
    elif not rep.all_links_spheres:
        rep.reason = "some vertex link is not a single cycle"
    elif not rep.orientable:
        rep.reason = "not orientable"
    else:
        rep.verdict = Verdict.CLOSED_SURFACE_SPHERE
    return rep


def _is_cycle(link):
    if link.dim != 1 or not link.is_pure():
        return False
    deg = {}
    for a, b in link.facets:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return all(d == 2 for d in deg.values()) and is_connected(link)


def validate_closed_oriented_3_manifold(complex_) -> ManifoldReport:
    """Combinatorial 3-manifold recognition plus integral homology.

    ``s3_homology`` is set when the homology is that of the 3-sphere; this is
    a homology certificate only, fundamental groups are not examined.
    """
    from .chains import homology

    rep = ManifoldReport(complex_.name)
    rep.is_pure = complex_.dim == 3 and complex_.is_pure()
    ridges = complex_.ridge_map() if rep.is_pure else {}
    rep.is_closed_pseudomanifold = rep.is_pure and all(len(fs) == 2 for fs in ridges.values())
    rep.is_connected = (bool(complex_.facets) and is_connected(complex_)
                        and len(dual_graph_components(complex_)) == 1)
    rep.euler_characteristic = euler_characteristic(complex_)
    if rep.is_closed_pseudomanifold:
        bad = [v for v in complex_.vertices
               if not _is_2_sphere(star_and_link(complex_, v)[1])]
        rep.all_links_spheres = not bad
    else:
        bad = []
    rep.orientable = rep.is_closed_pseudomanifold and complex_.orientation is not None
    if complex_.facets:
        rep.homology = homology(complex_)
    rep.s3_homology = rep.homology == [(1, []), (0, []), (0, []), (1, [])]
    if not rep.is_pure:
        rep.reason = "not a pure 3-complex"
    elif not rep.is_closed_pseudomanifold:
        rep.reason = "some triangle is not in exactly two tetrahedra"
    elif not rep.is_connected:
        rep.reason = "disconnected"
    elif not rep.all_links_spheres:
        rep.reason = f"link of vertex {complex_.labels[bad[0]]} is not a 2-sphere"
    elif not rep.orientable:
        rep.reason = "not orientable"
    else:
        rep.verdict = Verdict.CLOSED_ORIENTED_3_MANIFOLD
    return rep
