"""Hopf invariant of a simplicial map from a homology 3-sphere to a 2-sphere.

H(f) = <psi cup f*omega, [K1]> where omega is dual to one base triangle and
delta(psi) = f*omega.  The integer is independent of the base triangle and of
the choice of psi; both facts are re-checked on request.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chains import (Cochain, coboundary, cup, evaluate, fundamental_class,
                     fundamental_cocycle, solve_coboundary)
from .complex import validate_closed_oriented_3_manifold, validate_sphere_2
from .errors import NotACoboundary, NotHomologySphere
from .maps import SimplicialMap, pullback


@dataclass
class HopfResult:
    value: int
    base_triangle_used: tuple
    well_definedness_checks: list = field(default_factory=list)
    conventions: dict = field(default_factory=dict)

    @property
    def consistent(self):
        return all(v == self.value for _, v in self.well_definedness_checks)

    def to_dict(self, labels=None):
        lab = (lambda s: ",".join(labels[v] for v in s)) if labels else list
        return {
            "value": self.value,
            "base_triangle": lab(self.base_triangle_used),
            "checks": [{"choice": c, "value": v} for c, v in self.well_definedness_checks],
            "consistent": self.consistent,
            "conventions": self.conventions,
        }


CONVENTIONS = {
    "orientation_seed": "first facet in input order is positive; breadth-first over the dual graph",
    "cup_order": "Alexander-Whitney with source vertices ordered by (f(v), v)",
    "formula": "H = <psi cup f*omega, [K1]>, delta psi = f*omega",
}


def _hopf_value(f, triangle, fclass):
    omega = fundamental_cocycle(f.target, triangle)
    pulled = pullback(f, omega)
    try:
        psi = solve_coboundary(f.source, pulled)
    except NotACoboundary as exc:
        raise NotACoboundary(
            "f*omega is not exact; the source is not a homology 3-sphere") from exc
    return evaluate(cup(psi, pulled), fclass), psi, pulled


def check_preconditions(f):
    rep = validate_closed_oriented_3_manifold(f.source)
    if not rep.ok or not rep.s3_homology:
        raise NotHomologySphere(
            f"{f.source.name}: {rep.reason or 'homology is not that of S^3'}")
    trep = validate_sphere_2(f.target)
    if not trep.ok:
        raise NotHomologySphere(f"{f.target.name}: {trep.reason}")


def monotone_copy(f):
    """Isomorphic copy of ``f`` whose source ids are ordered by (f(v), v).

    On this copy f is weakly order preserving, so pulling back commutes with
    the Alexander-Whitney cup product and the cochain formula no longer
    depends on how the source vertices happen to be numbered.
    """
    order = sorted(f.source.vertices, key=lambda v: (f.assignment[v], v))
    perm = {v: i for i, v in enumerate(order)}
    source = f.source.relabelled(perm)
    return SimplicialMap(f.name, source, f.target,
                         {perm[v]: w for v, w in f.assignment.items()})


def hopf_invariant(f, base_triangle=None, trials=0, all_triangles=False,
                   seed=0, check=True) -> HopfResult:
    """Compute H(f).

    ``all_triangles`` recomputes with every target triangle as base;
    ``trials`` adds that many random integer coboundaries to psi and
    re-evaluates.  Every recomputation is recorded in the result.
    """
    if check:
        check_preconditions(f)
    f = monotone_copy(f)
    triangles = list(f.target.faces(2))
    s0 = tuple(sorted(base_triangle)) if base_triangle is not None else triangles[0]
    fclass = fundamental_class(f.source)
    value, psi, pulled = _hopf_value(f, s0, fclass)
    checks = []
    if all_triangles:
        for t in triangles:
            if t != s0:
                checks.append((f"base={list(t)}", _hopf_value(f, t, fclass)[0]))
    rng = random.Random(seed)
    for k in range(trials):
        phi = Cochain(0, complex_=f.source)
        phi.coeffs = {(v,): rng.randint(-5, 5) for v in f.source.vertices}
        phi.coeffs = {s: c for s, c in phi.coeffs.items() if c}
        shifted = psi + coboundary(phi)
        checks.append((f"psi+delta(phi_{k})", evaluate(cup(shifted, pulled), fclass)))
    return HopfResult(value, s0, checks, dict(CONVENTIONS))


def null_certificate(f, s):
    """Lemma certificates for every cycle over ``s``, or None if one cycle has none.

    A full list means every cycle bounds a disk that stays in the preimage
    of a median of ``s``; such a list forces H(f) = 0.
    """
    from .fibers import certify_component, extract_fiber

    diagram = extract_fiber(f, s)
    certs = [certify_component(f, c, i) for i, c in enumerate(diagram.components)]
    if any(c.which == "Neither" for c in certs):
        return None
    return certs
