"""Preimage of a base-triangle barycenter as oriented circles, and null disks.

For a tetrahedron mapped onto the triangle ``s`` the preimage of the
barycenter is a segment parallel to the pivot edge.  The segments glue into
cycles across shared triangles.  For each cycle we look for a cone-like
2-chain whose boundary is the cycle and whose support maps into a median of
``s``; if every cycle has one, the Hopf invariant vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import oriented_sign
from .errors import (ConditionNotMet, DegenerateTetra, NotMaximal, OpenChain,
                     PartitionInconsistent, TheoremViolation, TriangleMismatch)
from .maps import PivotEdge, image_simplex, mu, pivot_edge

THIRD = Fraction(1, 3)


# ---------------------------------------------------------------------------
# points and formal chains

@dataclass(frozen=True, order=True)
class BarycentricPoint:
    """Exact point of a simplex: sorted ``(vertex, weight)`` pairs, weights > 0."""

    weights: tuple

    def __post_init__(self):
        ws = tuple(sorted((v, Fraction(w)) for v, w in self.weights))
        if any(w <= 0 for _, w in ws):
            raise ValueError("weights must be positive")
        if sum(w for _, w in ws) != 1:
            raise ValueError("weights must sum to 1")
        if len({v for v, _ in ws}) != len(ws):
            raise ValueError("repeated vertex")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def of(cls, mapping):
        return cls(tuple(mapping.items()))

    @property
    def carrier(self):
        return tuple(v for v, _ in self.weights)

    def image(self, f):
        """Barycentric coordinates of f(point) in the target."""
        out = {}
        for v, w in self.weights:
            t = f.assignment[v]
            out[t] = out.get(t, 0) + w
        return BarycentricPoint.of(out)

    def __repr__(self):
        return "<" + ", ".join(f"{v}:{w}" for v, w in self.weights) + ">"


def _point_key(p):
    # vertices sort before interior points
    if isinstance(p, BarycentricPoint):
        return (1, p.weights)
    return (0, p)


def _point_image(f, p):
    if isinstance(p, BarycentricPoint):
        return p.image(f)
    return BarycentricPoint(((f.assignment[p], 1),))


def _sort_sign(cell):
    keys = [_point_key(p) for p in cell]
    order = sorted(range(len(cell)), key=lambda i: keys[i])
    sign = 1
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j]:
                sign = -sign
    return tuple(cell[i] for i in order), sign


class FormalChain:
    """Integer combination of ordered cells of GeomPoints (vertex ids or points)."""

    def __init__(self, degree, terms=None):
        self.degree = degree
        self.terms = {}
        for cell, c in (terms or {}).items():
            self.add(cell, c)

    def add(self, cell, coeff=1):
        cell = tuple(cell)
        if len(cell) != self.degree + 1:
            raise ValueError(f"{cell!r} is not a {self.degree}-cell")
        if len(set(cell)) != len(cell):
            raise ValueError(f"degenerate cell {cell!r}")
        key, sign = _sort_sign(cell)
        v = self.terms.get(key, 0) + sign * coeff
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)
        return self

    def __add__(self, other):
        out = FormalChain(self.degree, {})
        out.terms = dict(self.terms)
        for cell, c in other.terms.items():
            out.add(cell, c)
        return out

    def __neg__(self):
        out = FormalChain(self.degree)
        out.terms = {k: -v for k, v in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FormalChain):
            return NotImplemented
        return self.degree == other.degree and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def boundary(self):
        if self.degree < 1:
            raise ValueError("boundary needs degree >= 1")
        out = FormalChain(self.degree - 1)
        for cell, c in self.terms.items():
            for i in range(len(cell)):
                out.add(cell[:i] + cell[i + 1:], (-1) ** i * c)
        return out

    def support_images(self, f):
        return {_point_image(f, p) for cell in self.terms for p in cell}

    def __repr__(self):
        return f"FormalChain{self.degree}({self.terms!r})"


def FormalChain1(terms=None):
    return FormalChain(1, terms)


def FormalChain2(terms=None):
    return FormalChain(2, terms)


# ---------------------------------------------------------------------------
# segments and components

@dataclass(frozen=True)
class FiberSegment:
    tetra: tuple
    a: BarycentricPoint
    b: BarycentricPoint
    pivot: PivotEdge
    initial: int
    terminal: int

    def chain(self):
        return FormalChain1({(self.a, self.b): 1})


@dataclass
class FiberComponent:
    cycle: list

    @property
    def S(self):
        return frozenset(seg.tetra for seg in self.cycle)

    @property
    def V(self):
        return frozenset(v for seg in self.cycle for v in seg.tetra)

    @property
    def initial(self):
        return {seg.tetra: seg.initial for seg in self.cycle}

    @property
    def terminal(self):
        return {seg.tetra: seg.terminal for seg in self.cycle}

    def __len__(self):
        return len(self.cycle)

    def chain(self):
        out = FormalChain1()
        for seg in self.cycle:
            out.add((seg.a, seg.b))
        return out

    def reversed(self):
        segs = [FiberSegment(s.tetra, s.b, s.a, s.pivot, s.terminal, s.initial)
                for s in reversed(self.cycle)]
        return FiberComponent(segs)

    def summary(self, labels=None):
        lab = (lambda v: labels[v]) if labels else (lambda v: v)
        return {
            "size": len(self.cycle),
            "vertices": len(self.V),
            "cycle": [[lab(v) for v in seg.tetra] for seg in self.cycle],
        }


@dataclass
class FiberDiagram:
    base_triangle: tuple
    p: BarycentricPoint
    components: list = field(default_factory=list)

    @property
    def total(self):
        return sum(len(c) for c in self.components)


def _ordered_target(f, s):
    """Target triangle ``s`` as an ordered triple positive in the target orientation."""
    s = tuple(sorted(s))
    return s if oriented_sign(f.target, s) > 0 else (s[1], s[0], s[2])


def fiber_segment(f, sigma, s) -> FiberSegment:
    """Directed segment of the barycenter preimage inside ``sigma``."""
    sigma = tuple(sorted(sigma))
    s = tuple(sorted(s))
    img = image_simplex(f, sigma)
    if len(img) != 3 or len(sigma) != 4:
        raise DegenerateTetra(f"{sigma!r} does not map onto a triangle")
    if img != s:
        raise TriangleMismatch(f"{sigma!r} maps onto {img!r}, not {s!r}")
    piv = pivot_edge(f, sigma)
    x, y = piv.edge
    alpha = piv.collapsed_target_vertex
    rest = [v for v in sigma if v not in (x, y)]
    u, w = rest
    # order the free pair so that (alpha, f(u), f(w)) is positive in the target
    if oriented_sign(f.target, (alpha, f(u), f(w))) < 0:
        u, w = w, u
    if oriented_sign(f.source, (x, y, u, w)) < 0:
        x, y = y, x
    a = BarycentricPoint(((x, THIRD), (u, THIRD), (w, THIRD)))
    b = BarycentricPoint(((y, THIRD), (u, THIRD), (w, THIRD)))
    return FiberSegment(sigma, a, b, piv, x, y)


def barycenter(s):
    return BarycentricPoint(tuple((v, THIRD) for v in sorted(s)))


def extract_fiber(f, s) -> FiberDiagram:
    """Split the tetrahedra over ``s`` into cycles by matching endpoints."""
    s = tuple(sorted(s))
    if s not in f.target.facets:
        raise NotMaximal(f"{s!r} is not a maximal simplex of {f.target.name}")
    a = f.assignment
    segs = [fiber_segment(f, t, s) for t in f.source.facets
            if tuple(sorted({a[v] for v in t})) == s]
    by_entry = {}
    for seg in segs:
        if seg.a in by_entry:
            raise OpenChain(f"two segments enter at {seg.a!r}")
        by_entry[seg.a] = seg
    seen = set()
    components = []
    for seg in segs:
        if seg.tetra in seen:
            continue
        cycle = [seg]
        seen.add(seg.tetra)
        cur = seg
        while True:
            nxt = by_entry.get(cur.b)
            if nxt is None:
                raise OpenChain(f"no segment continues from {cur.b!r} in {cur.tetra!r}")
            if nxt is seg:
                break
            if nxt.tetra in seen:
                raise OpenChain(f"segments merge at {cur.b!r}")
            seen.add(nxt.tetra)
            cycle.append(nxt)
            cur = nxt
        components.append(FiberComponent(cycle))
    return FiberDiagram(s, barycenter(s), components)


# ---------------------------------------------------------------------------
# lemma conditions and disks

def lemma1_condition(component):
    """Smallest vertex of V that is never an initial vertex, else None."""
    init = set(component.initial.values())
    free = sorted(component.V - init)
    if not free:
        return None
    v = free[0]
    if not all(v in t for t in component.S):
        raise PartitionInconsistent(f"vertex {v} misses part of the component")
    return v


def _preimages_in_V(f, component, alpha):
    return sorted(v for v in component.V if f.assignment[v] == alpha)


def lemma2_condition(f, component):
    """First target vertex with at most two preimages in V, else None."""
    tri = {f.assignment[v] for v in component.cycle[0].tetra} if component.cycle else set()
    for alpha in sorted(tri):
        if len(_preimages_in_V(f, component, alpha)) <= 2:
            return alpha
    return None


def _cone(apex, segs):
    disk = FormalChain2()
    for seg in segs:
        disk.add((apex, seg.a, seg.b))
    return disk


def build_disk_lemma1(component, v) -> FormalChain:
    """Cone over ``v``; each triangle (v, a, b) induces the segment orientation."""
    if v is None or v in set(component.initial.values()) or v not in component.V:
        raise ConditionNotMet(f"vertex {v} does not satisfy the cone condition")
    if not all(v in t for t in component.S):
        raise ConditionNotMet(f"vertex {v} is not shared by every tetrahedron")
    return _cone(v, component.cycle)


def lemma2_partition(f, component, alpha):
    """Return ``(u, v, parts)`` where parts maps each tetra to U, V, Ru or Rv."""
    pre = _preimages_in_V(f, component, alpha)
    if len(pre) != 2:
        raise ConditionNotMet(f"{alpha} has {len(pre)} preimages, the split needs two")
    init = component.initial
    term = component.terminal
    pivots = [t for t in component.S if f.assignment[init[t]] == alpha]
    if not pivots:
        raise PartitionInconsistent("no pivot edge over the chosen vertex")
    t0 = min(pivots)
    u, v = term[t0], init[t0]
    parts = {}
    for t in component.S:
        if u in t and v not in t:
            parts[t] = "U"
        elif v in t and u not in t:
            parts[t] = "V"
        elif u in t and v in t:
            parts[t] = "Ru" if init[t] == u else "Rv"
            if init[t] not in (u, v):
                raise PartitionInconsistent(f"{t!r} holds both vertices but pivots elsewhere")
        else:
            raise PartitionInconsistent(f"{t!r} has no vertex over {alpha}")
    allowed = {"U": {"U", "Ru"}, "V": {"V", "Rv"}, "Ru": {"V"}, "Rv": {"U"}}
    n = len(component.cycle)
    for i, seg in enumerate(component.cycle):
        nxt = component.cycle[(i + 1) % n].tetra
        if parts[nxt] not in allowed[parts[seg.tetra]]:
            raise PartitionInconsistent(
                f"{parts[seg.tetra]} -> {parts[nxt]} at {seg.tetra!r}")
    ru = sum(1 for x in parts.values() if x == "Ru")
    rv = sum(1 for x in parts.values() if x == "Rv")
    if ru != rv:
        raise PartitionInconsistent(f"|Ru| = {ru} but |Rv| = {rv}")
    return u, v, parts


def build_disk_lemma2(f, component, alpha) -> FormalChain:
    """Null disk inside the preimage of the median from the barycenter to ``alpha``.

    With a single preimage vertex the disk is the cone over it.  With two,
    trapezoids are cut along the diagonal from the initial pivot vertex to
    the exit point.
    """
    pre = _preimages_in_V(f, component, alpha)
    if not pre or len(pre) > 2:
        raise ConditionNotMet(f"{alpha} has {len(pre)} preimages in the component")
    if len(pre) == 1:
        return _cone(pre[0], component.cycle)
    u, v, parts = lemma2_partition(f, component, alpha)
    disk = FormalChain2()
    for seg in component.cycle:
        kind = parts[seg.tetra]
        if kind == "U":
            disk.add((u, seg.a, seg.b))
        elif kind == "V":
            disk.add((v, seg.a, seg.b))
        else:
            x, y = seg.initial, seg.terminal
            disk.add((x, seg.a, seg.b))
            disk.add((x, seg.b, y))
    return disk


@dataclass
class LemmaCertificate:
    index: int
    which: str              # "Lemma1", "Lemma2" or "Neither"
    witness: object = None  # vertex for Lemma1, target vertex for Lemma2
    disk: FormalChain = None

    def to_dict(self, labels=None, target_labels=None):
        w = self.witness
        if w is not None:
            if self.which == "Lemma1" and labels:
                w = labels[w]
            elif self.which == "Lemma2" and target_labels:
                w = target_labels[w]
        return {"component": self.index, "kind": self.which, "witness": w,
                "disk_cells": len(self.disk) if self.disk is not None else 0}


def certify_component(f, component, index=0) -> LemmaCertificate:
    """Try the cone lemma first, then the two-preimage lemma."""
    v = lemma1_condition(component)
    if v is not None:
        disk = build_disk_lemma1(component, v)
        _check_disk(f, disk, component, f.assignment[v])
        return LemmaCertificate(index, "Lemma1", v, disk)
    alpha = lemma2_condition(f, component)
    if alpha is not None:
        disk = build_disk_lemma2(f, component, alpha)
        _check_disk(f, disk, component, alpha)
        return LemmaCertificate(index, "Lemma2", alpha, disk)
    return LemmaCertificate(index, "Neither")


def _check_disk(f, disk, component, alpha):
    if disk.boundary() != component.chain():
        raise PartitionInconsistent("disk boundary differs from the fiber cycle")
    p = barycenter(image_simplex(f, component.cycle[0].tetra))
    ok = {p, BarycentricPoint(((alpha, 1),))}
    if not disk.support_images(f) <= ok:
        raise PartitionInconsistent("disk leaves the median segment")


# ---------------------------------------------------------------------------
# the bound

@dataclass
class BoundReport:
    triangle: tuple
    mu: int
    H: int
    holds: bool
    certificates: list
    component_sizes: list

    def to_dict(self, labels=None, target_labels=None):
        tl = (lambda t: ",".join(target_labels[v] for v in t)) if target_labels else list
        return {
            "triangle": tl(self.triangle),
            "mu": self.mu,
            "H": self.H,
            "holds": self.holds,
            "component_sizes": self.component_sizes,
            "certificates": [c.to_dict(labels, target_labels) for c in self.certificates],
        }


def verify_lower_bound(f, s, H_value) -> BoundReport:
    """Run the lemma certificates on every cycle over ``s`` and check the bound.

    Raises TheoremViolation if a nonzero invariant coexists with all cycles
    certified, or if an uncertified cycle is smaller than the bound allows.
    """
    s = tuple(sorted(s))
    diagram = extract_fiber(f, s)
    m = mu(f, s)
    if diagram.total != m:
        raise PartitionInconsistent(f"components cover {diagram.total} of {m} tetrahedra")
    certs = [certify_component(f, c, i) for i, c in enumerate(diagram.components)]
    bad = [c for c in certs if c.which == "Neither"]
    if H_value:
        if not bad:
            raise TheoremViolation(
                f"H = {H_value} but every cycle over {s!r} bounds a disk missing a fiber")
        for cert in bad:
            comp = diagram.components[cert.index]
            init = set(comp.initial.values())
            if init != set(comp.V):
                raise TheoremViolation(f"cycle {cert.index}: initial map not onto V")
            for alpha in s:
                if len(_preimages_in_V(f, comp, alpha)) < 3:
                    raise TheoremViolation(
                        f"cycle {cert.index}: fewer than 3 preimages of {alpha}")
            if len(comp) < 9:
                raise TheoremViolation(f"cycle {cert.index} has only {len(comp)} tetrahedra")
        if m < 9:
            raise TheoremViolation(f"mu = {m} < 9 with H = {H_value}")
    return BoundReport(s, m, H_value, True, certs, [len(c) for c in diagram.components])
