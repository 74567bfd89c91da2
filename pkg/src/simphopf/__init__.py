"""Exact analysis of simplicial maps from 3-manifolds to the 2-sphere.

Fiber circles, the complexity count mu(f, s), the Hopf invariant as a cup
product, disk certificates for null fibers, and generators of maps that
attain the lower bound mu >= 9.
"""
from .chains import (Chain, Cochain, boundary, coboundary, constant_cochain, cup, evaluate,
                     fundamental_class, fundamental_cocycle, homology,
                     solve_coboundary)
from .cli_io import Bundle, parse_bundle, serialize_bundle
from .complex import (ManifoldReport, SimplicialComplex, Verdict, build_complex,
                      euler_characteristic, star_and_link,
                      validate_closed_oriented_3_manifold, validate_sphere_2)
from .errors import *  # noqa: F401,F403
from .fibers import (BarycentricPoint, FiberComponent, FiberDiagram, FiberSegment,
                     FormalChain, LemmaCertificate, build_disk_lemma1,
                     build_disk_lemma2, certify_component, extract_fiber,
                     fiber_segment, lemma1_condition, lemma2_condition,
                     lemma2_partition, verify_lower_bound)
from .generators import (FAMILIES, GeneratedMap, gen_collapse5, gen_hopf,
                         gen_seifert_xi, gen_zeta, tetrahedron_boundary)
from .hopf import HopfResult, hopf_invariant, null_certificate
from .intlinalg import (IntegerMatrix, hermite_normal_form, rank,
                        smith_invariants, solve_integer)
from .maps import (PivotEdge, SimplicialMap, image_simplex, mu, mu_all,
                   pivot_edge, pullback, validate_simplicial)

__version__ = "0.1.0"
