"""Exact-arithmetic reflection lattices, hyperbolic cells, and polygon spaces.

Public surface re-exported here: the exact scalars, diagram builders, the
Hermitian lattice machinery over the Eisenstein and Gauss integers, unitary
reflection representations, definite-lattice tooling, the finite-volume
certificates of the real cells, the polygon-space quadrature, and the claims
catalog consumed by the command line runner.
"""

from .scalars import (Eisenstein, Gauss, Sqrt3, Tower, NonDivisibleError,
                      OMEGA, THETA, GAUSS_I, ONE_PLUS_I, SQRT3)
from .diagrams import (CoxeterDiagram, DiagramType, DiagramError, diagram,
                       build_family, build_incidence, induced, zperp,
                       find_induced, automorphism_count, automorphisms,
                       count_induced_cycles, parse_diagram_text,
                       format_diagram_text, parse_type)

__all__ = [
    "Eisenstein", "Gauss", "Sqrt3", "Tower", "NonDivisibleError",
    "OMEGA", "THETA", "GAUSS_I", "ONE_PLUS_I", "SQRT3",
    "CoxeterDiagram", "DiagramType", "DiagramError", "diagram",
    "build_family", "build_incidence", "induced", "zperp", "find_induced",
    "automorphism_count", "automorphisms", "count_induced_cycles",
    "parse_diagram_text", "format_diagram_text", "parse_type",
]
