"""Exception hierarchy shared by every module of the package."""


class SimpHopfError(Exception):
    """Base class for all errors raised by simphopf."""


class DuplicateVertexInFacet(SimpHopfError):
    pass


class NonMaximalFacet(SimpHopfError):
    pass


class UnknownVertex(SimpHopfError):
    pass


class SimplexNotInComplex(SimpHopfError):
    pass


class TriangleNotInComplex(SimplexNotInComplex):
    pass


class NotOriented(SimpHopfError):
    pass


class NotACoboundary(SimpHopfError):
    """The target cochain represents a nonzero cohomology class."""


class NotMaximal(SimpHopfError):
    pass


class DegenerateTetra(SimpHopfError):
    """The tetrahedron's image has fewer than three vertices."""


class TriangleMismatch(SimpHopfError):
    pass


class OpenChain(SimpHopfError):
    """A fiber segment endpoint has no matching partner."""


class ConditionNotMet(SimpHopfError):
    pass


class PartitionInconsistent(SimpHopfError):
    pass


class TheoremViolation(SimpHopfError):
    """A map with nonzero Hopf invariant and fewer than 9 tetrahedra over a triangle."""


class NotHomologySphere(SimpHopfError):
    pass


class ConstructionInvariantFailed(SimpHopfError):
    pass


class BundleSyntaxError(SimpHopfError):
    def __init__(self, line, message):
        self.line = line
        super().__init__(f"line {line}: {message}")


class UnknownComplex(BundleSyntaxError):
    pass


class UnmappedVertex(BundleSyntaxError):
    pass


class BundleUnknownVertex(BundleSyntaxError, UnknownVertex):
    pass
