"""Hermitian lattices over the Eisenstein and Gauss integers.

A lattice is a free module over Z[omega] or Z[i] carrying a Hermitian Gram
matrix (linear in the first argument, conjugate-linear in the second).  The
diagram construction places 3 (resp. 2) on the diagonal and theta = omega -
conj(omega) (resp. 1 + i) on each black-to-white bond.

Provided here: radicals and canonical quotients (Hermite normal form over
the Euclidean ring), exact signatures via realification, determinants and
invariant comparison, the null-vector identities of the incidence lattices,
and the reduction of an even Gauss lattice to a quadratic space over the
2-element field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .diagrams import CoxeterDiagram, DiagramError, diagram as build_diagram
from .linalg import (clear_denominators, det, gram_pair, hermite_row_reduce,
                     inertia, kernel_basis)
from .scalars import Eisenstein, Gauss, Sqrt3, SQRT3, THETA, ONE_PLUS_I


RING_CLASSES = {"eisenstein": Eisenstein, "gauss": Gauss}
ROOT_NORMS = {"eisenstein": 3, "gauss": 2}
EDGE_SCALARS = {"eisenstein": THETA, "gauss": ONE_PLUS_I}
UNIT_COUNTS = {"eisenstein": 6, "gauss": 4}


class LatticeError(ValueError):
    """Malformed lattice data or an unsupported operation."""


class HermitianLattice:
    """Immutable rank-n Hermitian lattice with ring tag and Gram matrix."""

    __slots__ = ("ring", "gram", "labels")

    def __init__(self, ring: str, gram, labels=None):
        if ring not in RING_CLASSES:
            raise LatticeError(f"unknown ring {ring!r}")
        cls = RING_CLASSES[ring]
        G = tuple(tuple(x if isinstance(x, cls) else cls(x) for x in row) for row in gram)
        n = len(G)
        for row in G:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        ideal = EDGE_SCALARS[ring]
        for i in range(n):
            for j in range(n):
                if G[j][i] != G[i][j].conj():
                    raise LatticeError("Gram matrix is not Hermitian")
                if not ideal.divides(G[i][j]):
                    raise LatticeError(
                        f"entry {G[i][j]} at ({i},{j}) outside the pairing ideal")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise LatticeError("label count mismatch")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "gram", G)
        object.__setattr__(self, "labels", labels)

    def __setattr__(self, *_):
        raise AttributeError("lattices are immutable")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def scalar_class(self):
        return RING_CLASSES[self.ring]

    @property
    def root_norm(self) -> int:
        return ROOT_NORMS[self.ring]

    def pair(self, u, v):
        """<u, v> of coordinate vectors."""
        return gram_pair(u, v, self.gram)

    def norm_of(self, v):
        val = self.pair(v, v)
        return val.rational()

    def index_of(self, label) -> int:
        if self.labels is None:
            raise LatticeError("lattice carries no labels")
        return self.labels.index(label)

    def basis_vector(self, i):
        cls = self.scalar_class
        return [cls(1) if j == i else cls(0) for j in range(self.rank)]

    def __eq__(self, other):
        if not isinstance(other, HermitianLattice):
            return NotImplemented
        return (self.ring == other.ring and self.gram == other.gram
                and self.labels == other.labels)

    def __hash__(self):
        return hash((self.ring, self.gram, self.labels))

    def __repr__(self):
        return f"HermitianLattice({self.ring}, rank {self.rank})"

    def dump(self) -> dict:
        """JSON-ready form: {ring, rank, gram: [[{a, b}, ...], ...]}."""
        return {
            "ring": self.ring,
            "rank": self.rank,
            "gram": [[{"a": int(x.a), "b": int(x.b)} for x in row] for row in self.gram],
        }


def lattice_from_dump(data: dict) -> HermitianLattice:
    cls = RING_CLASSES[data["ring"]]
    gram = [[cls(e["a"], e["b"]) for e in row] for row in data["gram"]]
    return HermitianLattice(data["ring"], gram)


def gram_from_diagram(diag: CoxeterDiagram, ring: str = "eisenstein") -> HermitianLattice:
    """Diagram lattice: diagonal root norm, edge scalar on black-to-white bonds."""
    if diag.colors is None:
        raise DiagramError("lattice construction needs a colored (bipartite) diagram")
    cls = RING_CLASSES[ring]
    edge = EDGE_SCALARS[ring]
    diag_norm = cls(ROOT_NORMS[ring])
    n = len(diag.nodes)
    G = [[cls(0)] * n for _ in range(n)]
    for i, u in enumerate(diag.nodes):
        G[i][i] = diag_norm
        for v in diag.neighbors(u):
            j = diag.index(v)
            if diag.colors[u] == "b":
                G[i][j] = edge
            else:
                G[i][j] = edge.conj()
    return HermitianLattice(ring, G, labels=diag.nodes)


def build_lattice(name: str, ring: str = "eisenstein") -> HermitianLattice:
    """Convenience: named diagram straight to its lattice."""
    return gram_from_diagram(build_diagram(name), ring)


@lru_cache(maxsize=None)
def radical(lattice: HermitianLattice):
    """Saturated basis of the radical: primitive ring vectors spanning ker G."""
    cls = lattice.scalar_class
    G = [list(row) for row in lattice.gram]
    field_kernel = kernel_basis(G)
    return tuple(tuple(clear_denominators(v, cls)) for v in field_kernel)


def radical_dimension(lattice: HermitianLattice) -> int:
    return len(radical(lattice))


@dataclass(frozen=True)
class QuotientData:
    """Nondegenerate quotient plus the projection of every original basis vector."""

    lattice: HermitianLattice          # the quotient (nondegenerate)
    projection: tuple                  # rows: image coordinates of each original basis vector
    radical_basis: tuple               # saturated radical of the original lattice
    source: HermitianLattice

    def project(self, v):
        """Image coordinates of an arbitrary original-coordinate vector."""
        r = self.lattice.rank
        cls = self.lattice.scalar_class
        out = [cls(0)] * r
        for i, c in enumerate(v):
            if c:
                row = self.projection[i]
                out = [acc + c * x for acc, x in zip(out, row)]
        return out

    def project_label(self, label):
        return list(self.projection[self.source.index_of(label)])


@lru_cache(maxsize=None)
def quotient_by_radical(lattice: HermitianLattice) -> QuotientData:
    """Quotient by the radical as a canonical free module.

    The quotient embeds into the dual via v -> (<v, eps_i>)_i, and its image
    is exactly the ring-row-module of the Gram matrix.  The Hermite normal
    form over the Euclidean ring yields a canonical module basis; the
    projection coordinates of every original basis vector come out
    ring-integral by construction.  Nondegenerate input is returned as-is
    with the identity projection.
    """
    cls = lattice.scalar_class
    rad = radical(lattice)
    n = lattice.rank
    if not rad:
        proj = tuple(tuple(cls(1) if j == i else cls(0) for j in range(n))
                     for i in range(n))
        return QuotientData(lattice, proj, (), lattice)
    G = [list(row) for row in lattice.gram]
    H, U, rnk, pivot_cols = hermite_row_reduce(G, cls)
    basis_rows = U[:rnk]
    # quotient Gram: <v_s, v_t> = (U G U*)_{s,t}
    Q = [[gram_pair(basis_rows[s], basis_rows[t], lattice.gram)
          for t in range(rnk)] for s in range(rnk)]
    quotient = HermitianLattice(lattice.ring, Q)
    # back-substitute each Gram row through the echelon H to get projections
    proj = []
    for i in range(n):
        v = list(G[i])
        coeffs = []
        for s in range(rnk):
            p = pivot_cols[s]
            acc = v[p]
            for t in range(s):
                acc = acc - coeffs[t] * H[t][p]
            coeffs.append(H[s][p].exact_div(acc))
        proj.append(tuple(coeffs))
    data = QuotientData(quotient, tuple(proj), rad, lattice)
    # pairings must be preserved exactly
    for i in range(n):
        for j in range(n):
            if gram_pair(proj[i], proj[j], Q) != lattice.gram[i][j]:
                raise LatticeError("quotient projection failed pairing check")
    return data


def realify(lattice: HermitianLattice):
    """Rational symmetric 2n x 2n Gram of the basis (eps_1, z*eps_1, ...).

    z is omega resp. i; the real form of the Hermitian lattice has the same
    signature doubled, which gives the exact complex signature.
    """
    cls = lattice.scalar_class
    zeta = cls(0, 1)
    n = lattice.rank
    S = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            g = lattice.gram[i][j]
            S[2 * i][2 * j] = Fraction(g.real())
            S[2 * i][2 * j + 1] = Fraction((g * zeta.conj()).real())
            S[2 * i + 1][2 * j] = Fraction((zeta * g).real())
            S[2 * i + 1][2 * j + 1] = Fraction(g.real())
    return S


@lru_cache(maxsize=None)
def signature(lattice: HermitianLattice):
    """(n_plus, n_minus, n_zero), computed exactly via the real form."""
    npos, nneg, nzero = inertia(realify(lattice))
    if npos % 2 or nneg % 2 or nzero % 2:
        raise LatticeError("real form produced odd inertia counts")
    return (npos // 2, nneg // 2, nzero // 2)


@lru_cache(maxsize=None)
def determinant(lattice: HermitianLattice):
    """Gram determinant: a rational integer for Hermitian integral lattices."""
    d = det([list(row) for row in lattice.gram])
    val = d.rational()
    if val != int(val):
        raise LatticeError("Hermitian determinant came out non-integral")
    return int(val)


@dataclass(frozen=True)
class LatticeInvariants:
    rank: int
    radical_dim: int
    signature: tuple          # (n_plus, n_minus) of the nondegenerate quotient
    det_norm: int             # norm of the quotient determinant
    det_associate: str        # canonical associate, printable

    def as_dict(self):
        return {
            "rank": self.rank,
            "radical_dim": self.radical_dim,
            "signature": list(self.signature),
            "det_norm": self.det_norm,
            "det": self.det_associate,
        }


def invariants(lattice: HermitianLattice) -> LatticeInvariants:
    q = quotient_by_radical(lattice)
    npos, nneg, nzero = signature(lattice)
    dval = determinant(q.lattice) if q.lattice.rank else 1
    cls = lattice.scalar_class
    assoc = cls(dval).canonical_associate()
    return LatticeInvariants(
        rank=lattice.rank,
        radical_dim=len(q.radical_basis),
        signature=(npos, nneg),
        det_norm=int(cls(dval).norm()),
        det_associate=repr(assoc),
    )


def invariants_match(a: LatticeInvariants, b: LatticeInvariants):
    """List of mismatch descriptions; empty means the invariants agree."""
    issues = []
    for field in ("rank", "radical_dim", "signature", "det_norm"):
        va, vb = getattr(a, field), getattr(b, field)
        if va != vb:
            issues.append(f"{field}: {va} != {vb}")
    return issues


# -- incidence null-vector identities -----------------------------------------


@dataclass(frozen=True)
class NullVectorReport:
    ok: bool
    q: int
    complex_pairings_checked: int
    span_dim: int
    radical_dim: int
    real_checked: bool
    failures: tuple


def incidence_null_identities(q: int) -> NullVectorReport:
    """Verify the line null-vector identities of the incidence lattice.

    For each line l, delta_l = -s*eps_l + sum of eps_p over points p on l
    (s = theta resp. 1+i) pairs to zero with every point and to s with every
    line; the differences delta_l - delta_m therefore lie in the radical and
    span it.  For q = 3 the same is checked for the real form with sqrt(3).
    """
    if q not in (2, 3):
        raise DiagramError(f"unsupported order {q}")
    diag = build_diagram("I26" if q == 3 else "I14")
    ring = "eisenstein" if q == 3 else "gauss"
    lat = gram_from_diagram(diag, ring)
    cls = lat.scalar_class
    s = EDGE_SCALARS[ring]
    blacks = [u for u in diag.nodes if diag.colors[u] == "b"]
    whites = [u for u in diag.nodes if diag.colors[u] == "w"]
    failures = []
    deltas = {}
    n = lat.rank
    for l in whites:
        v = [cls(0)] * n
        v[diag.index(l)] = -s
        for p in diag.neighbors(l):
            v[diag.index(p)] = v[diag.index(p)] + cls(1)
        deltas[l] = v
    checked = 0
    for l in whites:
        for u in diag.nodes:
            e = lat.basis_vector(diag.index(u))
            val = lat.pair(deltas[l], e)
            want = cls(0) if diag.colors[u] == "b" else s
            checked += 1
            if val != want:
                failures.append(f"<delta_{l}, eps_{u}> = {val}, wanted {want}")
    # differences span the radical
    base = whites[0]
    diffs = [[a - b for a, b in zip(deltas[l], deltas[base])] for l in whites[1:]]
    from .linalg import rank as mat_rank
    span = mat_rank(diffs) if diffs else 0
    rad_dim = radical_dimension(lat)
    if span != rad_dim:
        failures.append(f"difference span {span} != radical dim {rad_dim}")
    real_checked = False
    if q == 3:
        real_checked = True
        # real Gram: 3 on the diagonal, -sqrt(3) on bonds
        m = len(diag.nodes)
        R = [[Sqrt3(0)] * m for _ in range(m)]
        for i, u in enumerate(diag.nodes):
            R[i][i] = Sqrt3(3)
            for v in diag.neighbors(u):
                R[i][diag.index(v)] = -SQRT3
        for l in whites:
            d = [Sqrt3(0)] * m
            d[diag.index(l)] = SQRT3
            for p in diag.neighbors(l):
                d[diag.index(p)] = d[diag.index(p)] + 1
            for u in diag.nodes:
                val = sum((d[i] * R[i][diag.index(u)] for i in range(m)), Sqrt3(0))
                want = Sqrt3(0) if diag.colors[u] == "b" else -SQRT3
                if val != want:
                    failures.append(f"<d_{l}, e_{u}> = {val}, wanted {want}")
    return NullVectorReport(
        ok=not failures, q=q, complex_pairings_checked=checked,
        span_dim=span, radical_dim=rad_dim, real_checked=real_checked,
        failures=tuple(failures),
    )


# -- reduction of even Gauss lattices mod (1 + i) ------------------------------


class DegenerateReductionError(LatticeError):
    """The induced bilinear form has a radical vector with q = 0."""

    def __init__(self, radical_vectors):
        self.radical_vectors = radical_vectors
        super().__init__(f"degenerate reduction, radical {radical_vectors}")


@dataclass(frozen=True)
class BinaryQuadraticSpace:
    """Quadratic space over the 2-element field from an even Gauss lattice."""

    dim: int
    q_values: tuple           # q on all 2^dim vectors, indexed by bit pattern
    zeros: int                # number of vectors with q = 0 (零 vector included)
    form_type: str | None     # "plus", "minus", or None when neither count fits
    b_radical: tuple          # basis of the radical of the polar form b

    def q(self, vec) -> int:
        idx = 0
        for k, bit in enumerate(vec):
            if bit:
                idx |= 1 << k
        return self.q_values[idx]

    def b(self, x, y) -> int:
        xy = tuple(a ^ b for a, b in zip(x, y))
        return self.q(xy) ^ self.q(x) ^ self.q(y)


def _bits(idx: int, dim: int):
    return tuple((idx >> k) & 1 for k in range(dim))


def reduce_mod_two(lattice: HermitianLattice, rep=None):
    """Quadratic space L/(1+i)L with q(v) = (<v,v>/2) mod 2, plus generator images.

    Requires a nondegenerate even Gauss lattice.  Well-definedness of q on
    cosets is checked exhaustively on the 2^rank representatives; the form
    type is classified by counting zeros.  When a reflection representation
    is supplied, each generator matrix is reduced mod (1 + i) and verified
    to preserve q; the images are returned alongside the space.
    """
    if lattice.ring != "gauss":
        raise LatticeError("mod-(1+i) reduction needs a Gauss lattice")
    if radical_dimension(lattice):
        raise LatticeError("reduce a nondegenerate lattice (quotient first)")
    n = lattice.rank
    for i in range(n):
        d = lattice.gram[i][i].rational()
        if d % 2:
            raise LatticeError("even lattice required: odd diagonal entry")

    def norm_of_bits(bits):
        v = [Gauss(b) for b in bits]
        return int(lattice.pair(v, v).rational())

    q_values = []
    for idx in range(1 << n):
        bits = _bits(idx, n)
        nv = norm_of_bits(bits)
        if nv % 2:
            raise LatticeError("norm not even; lattice is not even")
        q_values.append((nv // 2) % 2)
    # well-definedness: shifting any representative by (1+i)e_k keeps q
    for idx in range(1 << n):
        bits = list(_bits(idx, n))
        base = [Gauss(b) for b in bits]
        for k in range(n):
            shifted = list(base)
            shifted[k] = shifted[k] + ONE_PLUS_I
            nv = int(lattice.pair(shifted, shifted).rational())
            if (nv // 2) % 2 != q_values[idx] or nv % 2:
                raise LatticeError("q is not constant on (1+i)-cosets")
    zeros = sum(1 for v in q_values if v == 0)
    form_type = None
    if n % 2 == 0:
        half = 1 << (n - 1)
        offset = 1 << (n // 2 - 1)
        if zeros == half + offset:
            form_type = "plus"
        elif zeros == half - offset:
            form_type = "minus"
    # radical of the polar form
    bmat = []
    for k in range(n):
        ek = 1 << k
        row = []
        for l in range(n):
            el = 1 << l
            row.append(q_values[ek ^ el] ^ q_values[ek] ^ q_values[el])
        bmat.append(row)
    rad = _f2_kernel(bmat)
    for v in rad:
        idx = 0
        for k, bit in enumerate(v):
            if bit:
                idx |= 1 << k
        if idx and q_values[idx] == 0:
            raise DegenerateReductionError(tuple(rad))
    space = BinaryQuadraticSpace(
        dim=n, q_values=tuple(q_values), zeros=zeros,
        form_type=form_type, b_radical=tuple(tuple(v) for v in rad),
    )
    if rep is None:
        return space, {}
    images = {}
    for label, mat in rep.matrices.items():
        f2 = tuple(tuple((int(x.a) + int(x.b)) % 2 for x in row) for row in mat)
        for idx in range(1 << n):
            bits = _bits(idx, n)
            img = tuple(sum(f2[i][j] * bits[j] for j in range(n)) % 2 for i in range(n))
            if space.q(img) != q_values[idx]:
                raise LatticeError(f"generator {label} does not preserve q")
        images[label] = f2
    return space, images


def _f2_kernel(M):
    """Kernel basis of a matrix over the 2-element field."""
    rows = [list(r) for r in M]
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for rr, p in enumerate(pivots):
            v[p] = rows[rr][f] % 2
        basis.append(v)
    return basis
