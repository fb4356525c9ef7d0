"""Real Lorentzian forms and finite-volume certificates for the big cells.

A bipartite diagram yields a real quadratic space over Q(sqrt3): 3 on the
diagonal, -sqrt(3) per bond.  After the radical quotient the space is
Lorentzian for the inputs of interest, and the acute-angled polytope cut out
by the generating vectors is examined through the finite-volume criterion:
every minimal non-elliptic ("critical") subset must be parabolic, and each
such J must extend to N(J) = J plus the nodes not connected to J with every
component parabolic and total rank two less than the space dimension.

Certificates carry the full dossier: critical subsets with classifications,
the N(J) data, the verdict, ideal vertices grouped into automorphism orbits,
and the Weyl point with its exact squared-sinh facet distances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .diagrams import (CoxeterDiagram, DiagramError, automorphism_generators,
                       induced, zperp)
from .linalg import inertia, kernel_basis, rref, solve_right
from .scalars import Sqrt3, SQRT3, Tower, sqrt3_sqrt


class PolytopeError(ValueError):
    """Unsupported space or operation for the polytope machinery."""


class RealQuadSpace:
    """Quadratic space over Q(sqrt3) spanned by one vector per diagram node."""

    __slots__ = ("diagram", "gram_full", "dim", "basis_nodes", "vectors",
                 "gram_quotient")

    def __init__(self, diagram: CoxeterDiagram):
        if diagram.colors is None:
            raise DiagramError("real form needs a colored (bipartite) diagram")
        n = len(diagram.nodes)
        G = [[Sqrt3(0)] * n for _ in range(n)]
        for i, u in enumerate(diagram.nodes):
            G[i][i] = Sqrt3(3)
            for v in diagram.neighbors(u):
                G[i][diagram.index(v)] = -SQRT3
        # quotient by the radical: the leftmost independent rows give a basis
        R, pivots = rref([row[:] for row in G])
        dim = len(pivots)
        basis_nodes = tuple(diagram.nodes[c] for c in pivots)
        Gq = [[G[r][c] for c in pivots] for r in pivots]
        vectors = {}
        for i, u in enumerate(diagram.nodes):
            rhs = [G[i][c] for c in pivots]
            coords = solve_right(Gq, rhs)
            if coords is None:
                raise PolytopeError("quotient projection failed")
            vectors[u] = tuple(x if isinstance(x, Sqrt3) else Sqrt3(x)
                               for x in coords)
        object.__setattr__(self, "diagram", diagram)
        object.__setattr__(self, "gram_full", tuple(tuple(row) for row in G))
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "basis_nodes", basis_nodes)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "gram_quotient", tuple(tuple(row) for row in Gq))

    def __setattr__(self, *_):
        raise AttributeError("spaces are immutable")

    def pair_nodes(self, u, v) -> Sqrt3:
        return self.gram_full[self.diagram.index(u)][self.diagram.index(v)]

    def pair(self, x, y):
        """Symmetric pairing of quotient-coordinate vectors (Sqrt3 or Tower)."""
        acc = None
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.gram_quotient[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                term = xi * row[j] * yj
                acc = term if acc is None else acc + term
        return acc if acc is not None else Sqrt3(0)

    def vector_of(self, node):
        return list(self.vectors[node])

    def signature(self):
        return inertia([list(r) for r in self.gram_quotient])

    def is_lorentzian(self) -> bool:
        npos, nneg, nzero = self.signature()
        return nneg == 1 and nzero == 0


def real_form(diagram: CoxeterDiagram) -> RealQuadSpace:
    return RealQuadSpace(diagram)


# -- subset classification -------------------------------------------------------


@dataclass(frozen=True)
class SubsetClass:
    nodes: tuple                 # sorted labels
    classification: str          # "elliptic" | "parabolic" | "hyperbolic"
    component_classes: tuple     # ((nodes...), classification) per component
    rank: int


def _classify_gram(space: RealQuadSpace, nodes) -> tuple:
    idx = [space.diagram.index(u) for u in nodes]
    G = [[space.gram_full[i][j] for j in idx] for i in idx]
    npos, nneg, nzero = inertia(G)
    if nneg:
        cls = "hyperbolic"
    elif nzero:
        cls = "parabolic"
    else:
        cls = "elliptic"
    return cls, npos + nneg


def classify_subset(space: RealQuadSpace, J) -> SubsetClass:
    """Exact elliptic/parabolic/hyperbolic classification of a node subset."""
    J = sorted(J, key=space.diagram.index)
    cls, rank = _classify_gram(space, J)
    comps = induced(space.diagram, J).components()
    comp_classes = tuple((tuple(c), _classify_gram(space, c)[0]) for c in comps)
    return SubsetClass(tuple(J), cls, comp_classes, rank)


def critical_subsets(space: RealQuadSpace):
    """All minimal non-elliptic subsets (they are connected).

    Connected subsets are grown one neighbor at a time; only elliptic
    subsets are extended.  Any critical set's proper connected subsets are
    elliptic, so its growth chain survives the pruning and the enumeration
    is complete.  A non-elliptic connected subset is critical iff every
    one-node-deleted subset is elliptic.
    """
    diag = space.diagram
    cls_cache: dict = {}

    def classify_nodes(key) -> str:
        if key not in cls_cache:
            cls_cache[key] = _classify_gram(space, sorted(key, key=diag.index))[0]
        return cls_cache[key]

    seen = set()
    criticals = []
    frontier = [frozenset((u,)) for u in diag.nodes]
    while frontier:
        nxt = []
        for J in frontier:
            if J in seen:
                continue
            seen.add(J)
            c = classify_nodes(J)
            if c == "elliptic":
                boundary = set()
                for u in J:
                    boundary |= diag.neighbors(u)
                for v in boundary - J:
                    K = J | {v}
                    if K not in seen:
                        nxt.append(K)
                continue
            # minimality: every one-node deletion must be elliptic
            if all(classify_nodes(J - {u}) == "elliptic" for u in J):
                criticals.append(classify_subset(space, J))
        frontier = nxt
    criticals.sort(key=lambda sc: sc.nodes)
    return criticals


# -- the finite-volume certificate -----------------------------------------------


@dataclass
class CriticalEntry:
    subset: tuple
    classification: str
    z_nodes: tuple
    n_nodes: tuple
    n_component_classes: tuple
    n_rank: int
    ok: bool
    reasons: tuple


@dataclass
class PolytopeCertificate:
    dim: int
    critical: list
    entries: list
    finite_volume: bool

    def entry_for(self, subset) -> CriticalEntry:
        key = tuple(sorted(subset))
        for e in self.entries:
            if tuple(sorted(e.subset)) == key:
                return e
        raise KeyError(subset)


def vinberg_check(space: RealQuadSpace) -> PolytopeCertificate:
    """Finite-volume certificate for the acute-angled cell of the space.

    True iff every critical subset is parabolic and, for each critical J,
    every connected component of N(J) = J + Z(J) is parabolic with
    rank G_N = dim - 2.
    """
    if not space.is_lorentzian():
        raise PolytopeError("finite-volume check needs a Lorentzian space")
    diag = space.diagram
    crits = critical_subsets(space)
    entries = []
    verdict = True
    for sc in crits:
        reasons = []
        if sc.classification != "parabolic":
            reasons.append(f"critical subset is {sc.classification}")
        z = sorted(zperp(diag, sc.nodes), key=diag.index)
        n_nodes = sorted(set(sc.nodes) | set(z), key=diag.index)
        n_class = classify_subset(space, n_nodes)
        for comp, comp_cls in n_class.component_classes:
            if comp_cls != "parabolic":
                reasons.append(f"component {comp} of N(J) is {comp_cls}")
        if n_class.rank != space.dim - 2:
            reasons.append(f"rank G_N = {n_class.rank}, needs {space.dim - 2}")
        ok = not reasons
        verdict = verdict and ok
        entries.append(CriticalEntry(
            subset=sc.nodes, classification=sc.classification,
            z_nodes=tuple(z), n_nodes=tuple(n_nodes),
            n_component_classes=n_class.component_classes,
            n_rank=n_class.rank, ok=ok, reasons=tuple(reasons)))
    return PolytopeCertificate(space.dim, crits, entries, verdict)


# -- ideal vertices ---------------------------------------------------------------


@dataclass
class IdealVertex:
    ray: tuple                   # canonical quotient coordinates (Sqrt3)
    n_nodes: tuple               # the maximal parabolic N set
    component_types: str         # e.g. "3A5", "4D4"
    orbit: int                   # orbit label under diagram automorphisms


def _component_type_name(diag: CoxeterDiagram, comp) -> str:
    sub = induced(diag, comp)
    n = len(comp)
    degs = sorted(sub.degree(u) for u in comp)
    if degs and degs[-1] == 3:
        return f"D{n}"
    return f"A{n}"


def _perron_kernel(space: RealQuadSpace, comp):
    """The positive kernel vector of a connected parabolic component."""
    idx = [space.diagram.index(u) for u in comp]
    G = [[space.gram_full[i][j] for j in idx] for i in idx]
    kern = kernel_basis(G)
    if len(kern) != 1:
        raise PolytopeError(f"parabolic component with kernel dim {len(kern)}")
    vec = [x if isinstance(x, Sqrt3) else Sqrt3(x) for x in kern[0]]
    signs = {v.sign() for v in vec}
    if 0 in signs or len(signs) != 1:
        raise PolytopeError("kernel vector is not strictly one-signed")
    if signs == {-1}:
        vec = [-v for v in vec]
    return dict(zip(comp, vec))


def _canonical_ray(coords):
    """Canonical representative of a projective ray over Q(sqrt3).

    Divide by the first nonzero coordinate (this absorbs irrational scale
    factors such as sqrt(3)), then clear denominators and integer content,
    leaving a primitive integral vector with positive leading coordinate.
    """
    lead = next((c for c in coords if c), None)
    if lead is None:
        return tuple(coords)
    scaled = [c / lead for c in coords]
    dens = []
    for c in scaled:
        dens.append(Fraction(c.x).denominator)
        dens.append(Fraction(c.y).denominator)
    mult = 1
    for d in dens:
        mult = lcm(mult, d)
    ints = [c * mult for c in scaled]
    from math import gcd
    g = 0
    for c in ints:
        g = gcd(g, abs(int(Fraction(c.x))))
        g = gcd(g, abs(int(Fraction(c.y))))
    if g > 1:
        ints = [c / g for c in ints]
    return tuple(ints)


def ideal_vertices(space: RealQuadSpace, certificate: PolytopeCertificate | None = None):
    """Null rays of the cusps, deduplicated, with automorphism orbit labels.

    Each qualifying N(J) has one Perron kernel ray per parabolic component;
    the rays are checked to be pairwise proportional (mutually orthogonal
    null vectors in a Lorentzian space must be), projected to a canonical
    primitive form and grouped into orbits of the diagram automorphism
    action on the N sets.
    """
    if certificate is None:
        certificate = vinberg_check(space)
    if not certificate.finite_volume:
        raise PolytopeError("no cusp inventory: certificate is negative")
    diag = space.diagram
    by_n = {}
    for entry in certificate.entries:
        by_n.setdefault(tuple(entry.n_nodes), entry)
    ray_of_n = {}
    type_of_n = {}
    for n_nodes, entry in sorted(by_n.items()):
        comps = [comp for comp, _ in entry.n_component_classes]
        rays = []
        for comp in comps:
            kern = _perron_kernel(space, comp)
            vec = [Sqrt3(0)] * space.dim
            for u, c in kern.items():
                vu = space.vectors[u]
                vec = [a + c * b for a, b in zip(vec, vu)]
            rays.append(_canonical_ray(vec))
        if any(r != rays[0] for r in rays[1:]):
            raise PolytopeError(f"component rays of {n_nodes} do not coincide")
        ray = rays[0]
        if space.pair(list(ray), list(ray)) != Sqrt3(0):
            raise PolytopeError("cusp ray is not null")
        type_counts = {}
        for comp in comps:
            t = _component_type_name(diag, comp)
            type_counts[t] = type_counts.get(t, 0) + 1
        ray_of_n[n_nodes] = ray
        type_of_n[n_nodes] = "+".join(f"{v}{k}" for k, v in sorted(type_counts.items()))
    # orbits of the N sets under the diagram automorphism action
    gens = automorphism_generators(diag, respect_colors=False)
    orbit_of_n = {}
    oid = 0
    for seed in sorted(ray_of_n):
        if seed in orbit_of_n:
            continue
        stack = [seed]
        orbit_of_n[seed] = oid
        while stack:
            s = stack.pop()
            for g in gens:
                img = tuple(sorted((g[u] for u in s), key=diag.index))
                if img not in ray_of_n:
                    raise PolytopeError("automorphism image is not a cusp N set")
                if img not in orbit_of_n:
                    orbit_of_n[img] = oid
                    stack.append(img)
        oid += 1
    sets_of_ray = {}
    for s, r in ray_of_n.items():
        sets_of_ray.setdefault(r, []).append(s)
    out = []
    for ray in sorted(sets_of_ray):
        sets = sorted(sets_of_ray[ray])
        orbits = {orbit_of_n[s] for s in sets}
        if len(orbits) != 1:
            raise PolytopeError("one cusp ray spans several automorphism orbits")
        out.append(IdealVertex(ray=ray, n_nodes=sets[0],
                               component_types=type_of_n[sets[0]],
                               orbit=orbits.pop()))
    # renumber orbits deterministically by first appearance in ray order
    remap = {}
    for v in out:
        if v.orbit not in remap:
            remap[v.orbit] = len(remap)
    return [IdealVertex(v.ray, v.n_nodes, v.component_types, remap[v.orbit])
            for v in out]


# -- Weyl points ------------------------------------------------------------------


@dataclass
class WeylData:
    w_points: tuple | None       # canonical ray orthogonal to all point vectors
    w_lines: tuple | None
    w0: tuple                    # Weyl point coordinates (Sqrt3 or Tower)
    field: str                   # "sqrt3" or "tower"
    invariant: object            # common squared-sinh distance value
    per_node: dict               # node -> exact squared-sinh value
    equidistant: bool


def _sinh_sq(space: RealQuadSpace, w, node):
    e = space.vectors[node]
    num = space.pair(w, list(e))
    num = num * num
    den = (-(space.pair(w, w))) * 3
    return num / den


def weyl_points(space: RealQuadSpace, family: str) -> WeylData:
    """The distinguished interior point with its exact facet distances.

    For the cycle cell ("12-cell") the point is the sum of all generating
    vectors.  For the incidence cell ("26-cell") the two vertex rays --
    orthogonal to all points resp. all lines -- are solved exactly, signs
    are fixed so both pair non-negatively with every generator, and the
    geodesic midpoint is formed; when the two norms agree (they do here) the
    midpoint stays inside Q(sqrt3), otherwise one quadratic level is
    adjoined.
    """
    diag = space.diagram
    w_points = w_lines = None
    if family == "12-cell":
        w0 = [Sqrt3(0)] * space.dim
        for u in diag.nodes:
            w0 = [a + b for a, b in zip(w0, space.vectors[u])]
        w0 = list(_canonical_ray(w0))
        field = "sqrt3"
        # interior representative: pair non-negatively with the generators
        if space.pair(w0, list(space.vectors[diag.nodes[0]])).sign() < 0:
            w0 = [-c for c in w0]
    elif family == "26-cell":
        blacks = [u for u in diag.nodes if diag.colors[u] == "b"]
        whites = [u for u in diag.nodes if diag.colors[u] == "w"]
        w_points = _solve_orthogonal_ray(space, blacks, whites)
        w_lines = _solve_orthogonal_ray(space, whites, blacks)
        rp = -(space.pair(list(w_points), list(w_points)))
        rl = -(space.pair(list(w_lines), list(w_lines)))
        if rp.sign() <= 0 or rl.sign() <= 0:
            raise PolytopeError("vertex rays are not negative-norm")
        if rp == rl:
            w0 = [a + b for a, b in zip(w_points, w_lines)]
            field = "sqrt3"
        else:
            t = sqrt3_sqrt(rp / rl)
            if t is not None:
                w0 = [a + t * b for a, b in zip(w_points, w_lines)]
                field = "sqrt3"
            else:
                rad = rp * rl
                s = Tower(Sqrt3(0), Sqrt3(1), rad)
                w0 = [Tower(rl * a, Sqrt3(0), rad) + s * b
                      for a, b in zip(w_points, w_lines)]
                field = "tower"
    else:
        raise PolytopeError(f"unknown family {family!r}")
    per_node = {u: _sinh_sq(space, list(w0), u) for u in diag.nodes}
    vals = list(per_node.values())
    equal = all(v == vals[0] for v in vals[1:])
    return WeylData(w_points, w_lines, tuple(w0), field, vals[0], per_node, equal)


def _solve_orthogonal_ray(space: RealQuadSpace, perp_nodes, positive_nodes):
    """The ray orthogonal to all ``perp_nodes``, paired >= 0 with the rest."""
    rows = []
    for u in perp_nodes:
        vu = space.vectors[u]
        rows.append([
            sum((space.gram_quotient[j][k] * vu[k] for k in range(space.dim)),
                Sqrt3(0))
            for j in range(space.dim)])
    kern = kernel_basis(rows)
    if len(kern) != 1:
        raise PolytopeError(f"orthogonal ray is not unique (dim {len(kern)})")
    ray = [x if isinstance(x, Sqrt3) else Sqrt3(x) for x in kern[0]]
    ray = list(_canonical_ray(ray))
    signs = [space.pair(ray, list(space.vectors[u])).sign() for u in positive_nodes]
    if all(s <= 0 for s in signs):
        ray = [-c for c in ray]
        signs = [-s for s in signs]
    if any(s < 0 for s in signs):
        raise PolytopeError("vertex ray pairs with mixed signs")
    return tuple(ray)


def face_project(space: RealQuadSpace, J, v):
    """Component of v orthogonal to the span of the J vectors.

    J must be elliptic and v of negative norm; the projection keeps the norm
    negative (the J span is positive definite).
    """
    sc = classify_subset(space, J)
    if sc.classification != "elliptic":
        raise PolytopeError(f"face subset is {sc.classification}, not elliptic")
    if not J:
        return list(v)
    if space.pair(list(v), list(v)).sign() >= 0:
        raise PolytopeError("projection point must have negative norm")
    J = sorted(J, key=space.diagram.index)
    vecs = [list(space.vectors[u]) for u in J]
    G_J = [[space.pair(a, b) for b in vecs] for a in vecs]
    rhs = [space.pair(list(v), a) for a in vecs]
    coeffs = solve_right(G_J, rhs)
    out = list(v)
    for c, e in zip(coeffs, vecs):
        out = [a - c * b for a, b in zip(out, e)]
    if space.pair(out, out).sign() >= 0:
        raise PolytopeError("projection lost the negative norm")
    return out


def certificate_dict(space: RealQuadSpace, certificate: PolytopeCertificate,
                     vertices=None, weyl: WeylData | None = None) -> dict:
    """JSON-ready certificate with stable ordering and exact field strings."""
    out = {
        "dimension": certificate.dim,
        "finite_volume": certificate.finite_volume,
        "critical_subsets": [
            {
                "nodes": sorted(e.subset),
                "classification": e.classification,
                "z_nodes": sorted(e.z_nodes),
                "n_rank": e.n_rank,
                "n_components": [
                    {"nodes": sorted(comp), "classification": c}
                    for comp, c in e.n_component_classes
                ],
                "ok": e.ok,
            }
            for e in certificate.entries
        ],
    }
    if vertices is not None:
        orbits = {}
        for v in vertices:
            o = orbits.setdefault(v.orbit, {"orbit": v.orbit,
                                            "type": v.component_types,
                                            "count": 0})
            o["count"] += 1
            if o["type"] != v.component_types:
                o["type"] = o["type"] + "|" + v.component_types
        out["ideal_vertices"] = {
            "count": len(vertices),
            "orbits": [orbits[k] for k in sorted(orbits)],
        }
    if weyl is not None:
        inv = weyl.invariant
        out["weyl"] = {
            "field": weyl.field,
            "equidistant": weyl.equidistant,
            "invariant": inv.as_string() if isinstance(inv, Sqrt3) else repr(inv),
        }
    return out
