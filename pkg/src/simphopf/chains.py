"""Integer chains and cochains on a simplicial complex.

Chains and cochains are keyed by sorted vertex tuples; an ordered tuple is
folded onto its sorted representative with the permutation sign.  The cup
product uses the Alexander-Whitney front/back face rule with respect to the
integer id order of the vertices.
"""
from __future__ import annotations

from .complex import normalize, SimplicialComplex
from .errors import (NotACoboundary, NotOriented, SimplexNotInComplex,
                     TriangleNotInComplex)
from .intlinalg import IntegerMatrix, smith_invariants, solve_integer


def _clean(d):
    return {k: v for k, v in d.items() if v}


class _IntegerFunction:
    """Shared arithmetic for chains and cochains."""

    def __init__(self, degree, coeffs=None, complex_=None):
        self.degree = degree
        self.complex = complex_
        acc = {}
        for key, v in (coeffs or {}).items():
            s, sign = normalize(key)
            if len(s) != degree + 1:
                raise ValueError(f"{key!r} is not a {degree}-simplex")
            acc[s] = acc.get(s, 0) + sign * int(v)
        self.coeffs = _clean(acc)

    def _new(self, coeffs):
        out = object.__new__(type(self))
        out.degree = self.degree
        out.complex = self.complex
        out.coeffs = _clean(coeffs)
        return out

    def _check(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            acc[k] = acc.get(k, 0) + v
        return self._new(acc)

    def __neg__(self):
        return self._new({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return self._new({k: scalar * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, oriented):
        s, sign = normalize(oriented)
        return sign * self.coeffs.get(s, 0)

    def __repr__(self):
        return f"{type(self).__name__}(degree={self.degree}, {self.coeffs!r})"


class Chain(_IntegerFunction):
    """Finitely supported integer k-chain."""


class Cochain(_IntegerFunction):
    """Integer k-cochain; unspecified simplices have value zero."""

    def __call__(self, oriented):
        return self[oriented]


def _require_complex(obj, complex_):
    cx = complex_ if complex_ is not None else obj.complex
    if cx is None:
        raise ValueError("a complex is required")
    return cx


def boundary(chain: Chain, complex_: SimplicialComplex = None) -> Chain:
    """Alternating-sum simplicial boundary."""
    if chain.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    cx = complex_ if complex_ is not None else chain.complex
    acc = {}
    for s, c in chain.coeffs.items():
        if cx is not None and s not in cx:
            raise SimplexNotInComplex(f"{s!r} not in {cx.name}")
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            acc[face] = acc.get(face, 0) + (-1) ** i * c
    out = Chain(chain.degree - 1, complex_=cx)
    out.coeffs = _clean(acc)
    return out


def coboundary(cochain: Cochain, complex_: SimplicialComplex = None) -> Cochain:
    """(delta c)(sigma) = sum_i (-1)^i c(sigma minus its i-th vertex)."""
    cx = _require_complex(cochain, complex_)
    k = cochain.degree + 1
    vals = {}
    get = cochain.coeffs.get
    for s in cx.faces(k):
        total = 0
        for i in range(len(s)):
            total += (-1) ** i * get(s[:i] + s[i + 1:], 0)
        if total:
            vals[s] = total
    out = Cochain(k, complex_=cx)
    out.coeffs = vals
    return out


def cup(a: Cochain, b: Cochain, complex_: SimplicialComplex = None) -> Cochain:
    """Alexander-Whitney cup product under the vertex id order."""
    cx = _require_complex(a, complex_)
    p, q = a.degree, b.degree
    vals = {}
    ga, gb = a.coeffs.get, b.coeffs.get
    for s in cx.faces(p + q):
        v = ga(s[:p + 1], 0)
        if v:
            w = gb(s[p:], 0)
            if w:
                vals[s] = v * w
    out = Cochain(p + q, complex_=cx)
    out.coeffs = vals
    return out


def evaluate(cochain: Cochain, chain: Chain) -> int:
    """Kronecker pairing."""
    if cochain.degree != chain.degree:
        raise ValueError("degree mismatch")
    get = cochain.coeffs.get
    return sum(c * get(s, 0) for s, c in chain.coeffs.items())


def constant_cochain(complex_, value=1):
    out = Cochain(0, complex_=complex_)
    out.coeffs = {(v,): value for v in complex_.vertices} if value else {}
    return out


def fundamental_class(complex_: SimplicialComplex, orientation=None) -> Chain:
    o = orientation if orientation is not None else complex_.orientation
    if o is None:
        raise NotOriented(f"{complex_.name} has no coherent orientation")
    out = Chain(complex_.dim, complex_=complex_)
    out.coeffs = {f: o[f] for f in complex_.facets}
    return out


def fundamental_cocycle(surface: SimplicialComplex, triangle) -> Cochain:
    """Cochain equal to +1 on ``triangle`` taken with the surface orientation."""
    t = tuple(sorted(triangle))
    if len(t) != 3 or t not in surface:
        raise TriangleNotInComplex(f"{triangle!r} is not a triangle of {surface.name}")
    o = surface.orientation
    if o is None:
        raise NotOriented(f"{surface.name} is not oriented")
    out = Cochain(2, complex_=surface)
    out.coeffs = {t: o[t]}
    return out


def coboundary_matrix(complex_, k) -> IntegerMatrix:
    """Matrix of delta: C^k -> C^{k+1} in the lexicographic bases."""
    idx = complex_.index(k)
    rows = []
    for s in complex_.faces(k + 1):
        rows.append({idx[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))})
    return IntegerMatrix(len(rows), len(idx), rows)


def boundary_matrix(complex_, k) -> IntegerMatrix:
    """Matrix of the boundary C_k -> C_{k-1} in the lexicographic bases."""
    return coboundary_matrix(complex_, k - 1).transpose()


def solve_coboundary(complex_: SimplicialComplex, target: Cochain) -> Cochain:
    """Integer cochain psi with delta(psi) == target, or raise NotACoboundary."""
    k = target.degree - 1
    mat = coboundary_matrix(complex_, k)
    rhs = []
    support = set(target.coeffs)
    for s in complex_.faces(k + 1):
        rhs.append(target.coeffs.get(s, 0))
        support.discard(s)
    if support:
        raise SimplexNotInComplex(f"target is supported off the complex: {sorted(support)[:3]}")
    x = solve_integer(mat, rhs)
    if x is None:
        raise NotACoboundary("target represents a nonzero cohomology class")
    out = Cochain(k, complex_=complex_)
    out.coeffs = {s: v for s, v in zip(complex_.faces(k), x) if v}
    if coboundary(out) != target:
        raise AssertionError("integer solver returned a non-solution")
    return out


def homology(complex_: SimplicialComplex):
    """Integral homology as a list of ``(betti, torsion)`` for degrees 0..dim."""
    d = complex_.dim
    invariants = {}
    for k in range(1, d + 1):
        invariants[k] = smith_invariants(coboundary_matrix(complex_, k - 1))
    out = []
    for k in range(d + 1):
        rk_k = len(invariants.get(k, []))
        rk_k1 = len(invariants.get(k + 1, []))
        betti = complex_.count(k) - rk_k - rk_k1
        torsion = [t for t in invariants.get(k + 1, []) if t > 1]
        out.append((betti, torsion))
    return out
