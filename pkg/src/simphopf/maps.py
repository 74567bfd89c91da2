"""Simplicial maps: validity, images, pullbacks, mu and pivot edges."""
from __future__ import annotations

from dataclasses import dataclass

from .chains import Cochain
from .errors import DegenerateTetra, NotMaximal, SimplexNotInComplex, UnknownVertex


class SimplicialMap:
    """A vertex assignment ``source -> target`` between two complexes."""

    def __init__(self, name, source, target, assignment):
        self.name = name
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        missing = [v for v in source.vertices if v not in self.assignment]
        if missing:
            raise UnknownVertex(f"map {name}: source vertices {missing[:5]} are unmapped")
        stray = [w for w in self.assignment.values() if w not in target.vertices]
        if stray:
            raise UnknownVertex(f"map {name}: images {stray[:5]} not in {target.name}")

    def __call__(self, v):
        return self.assignment[v]

    def with_source(self, source):
        """Same assignment over a differently oriented/relabelled source."""
        return SimplicialMap(self.name, source, self.target, self.assignment)

    def with_target(self, target):
        return SimplicialMap(self.name, self.source, target, self.assignment)

    def __repr__(self):
        return f"SimplicialMap({self.name!r}: {self.source.name} -> {self.target.name})"


@dataclass(frozen=True)
class PivotEdge:
    tetra: tuple
    edge: tuple
    collapsed_target_vertex: int


@dataclass
class SimplicialityReport:
    valid: bool
    violations: list

    def __bool__(self):
        return self.valid


def validate_simplicial(f: SimplicialMap) -> SimplicialityReport:
    """Check that every facet's image vertex set spans a simplex of the target."""
    bad = [s for s in f.source.facets
           if tuple(sorted({f.assignment[v] for v in s})) not in f.target]
    return SimplicialityReport(not bad, bad)


def image_simplex(f: SimplicialMap, sigma):
    sigma = tuple(sorted(sigma))
    if sigma not in f.source:
        raise SimplexNotInComplex(f"{sigma!r} not in {f.source.name}")
    return tuple(sorted({f.assignment[v] for v in sigma}))


def mu(f: SimplicialMap, s) -> int:
    """Number of source facets whose image is exactly the target facet ``s``."""
    s = tuple(sorted(s))
    if s not in f.target.facets:
        raise NotMaximal(f"{s!r} is not a maximal simplex of {f.target.name}")
    a = f.assignment
    return sum(1 for sigma in f.source.facets
               if tuple(sorted({a[v] for v in sigma})) == s)


def mu_all(f: SimplicialMap) -> dict:
    counts = {s: 0 for s in f.target.facets}
    a = f.assignment
    for sigma in f.source.facets:
        img = tuple(sorted({a[v] for v in sigma}))
        if img in counts:
            counts[img] += 1
    return counts


def pullback(f: SimplicialMap, c: Cochain) -> Cochain:
    """(f*c)(v0..vk) = c(f(v0)..f(vk)), zero when images repeat."""
    a = f.assignment
    vals = {}
    for s in f.source.faces(c.degree):
        img = tuple(a[v] for v in s)
        if len(set(img)) == len(img):
            val = c[img]
            if val:
                vals[s] = val
    out = Cochain(c.degree, complex_=f.source)
    out.coeffs = vals
    return out


def pivot_edge(f: SimplicialMap, sigma) -> PivotEdge:
    """The unique edge of a non-degenerate tetrahedron with coinciding images."""
    sigma = tuple(sorted(sigma))
    img = image_simplex(f, sigma)
    if len(sigma) != 4:
        raise DegenerateTetra(f"{sigma!r} is not a tetrahedron")
    if len(img) != 3:
        raise DegenerateTetra(f"{sigma!r} maps onto {img!r}, no unique pivot edge")
    a = f.assignment
    for i in range(4):
        for j in range(i + 1, 4):
            if a[sigma[i]] == a[sigma[j]]:
                return PivotEdge(sigma, (sigma[i], sigma[j]), a[sigma[i]])
    raise AssertionError("unreachable")
