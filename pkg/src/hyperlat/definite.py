"""Tools for positive definite lattices.

Short-vector enumeration runs on the realified integer quadratic form with
an exact rational Cholesky-style recursion (floating point appears only as a
search-window seed that is then corrected by exact comparisons, so the
enumeration is complete and exact).  On top of it: mirror counting, the
exhaustive rank-5 extension sweep, and saturated orthogonal complements
inside an ambient lattice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .lattices import (HermitianLattice, LatticeError, QuotientData,
                       UNIT_COUNTS, build_lattice, realify, signature)
from .linalg import gram_pair, left_kernel_ring
from .scalars import Eisenstein, THETA


def _ldl(S):
    """Exact LDL^T of a positive definite rational symmetric matrix."""
    n = len(S)
    L = [[Fraction(0)] * n for _ in range(n)]
    D = [Fraction(0)] * n
    for j in range(n):
        acc = Fraction(S[j][j])
        for k in range(j):
            acc -= D[k] * L[j][k] * L[j][k]
        if acc <= 0:
            raise LatticeError("matrix is not positive definite")
        D[j] = acc
        L[j][j] = Fraction(1)
        for i in range(j + 1, n):
            v = Fraction(S[i][j])
            for k in range(j):
                v -= D[k] * L[i][k] * L[j][k]
            L[i][j] = v / acc
    return L, D


def _int_window(center: Fraction, radius_sq: Fraction):
    """All integers x with (x + center)^2 <= radius_sq, exactly.

    A float seed pins the window, then exact comparisons walk it to the true
    endpoints; the quadratic is convex so one-sided correction suffices.
    """
    if radius_sq < 0:
        return range(0)
    r = math.sqrt(float(radius_sq)) if radius_sq > 0 else 0.0
    c = float(center)
    lo = math.floor(-r - c) - 1
    hi = math.ceil(r - c) + 1
    while lo <= hi and (lo + center) * (lo + center) > radius_sq:
        lo += 1
    while hi >= lo and (hi + center) * (hi + center) > radius_sq:
        hi -= 1
    if lo > hi:
        return range(0)
    while (lo - 1 + center) * (lo - 1 + center) <= radius_sq:
        lo -= 1
    while (hi + 1 + center) * (hi + 1 + center) <= radius_sq:
        hi += 1
    return range(lo, hi + 1)


@dataclass
class RootInventory:
    """Complete list of short vectors grouped by norm.

    ``vectors`` maps each norm value to the ring-coordinate vectors attaining
    it (closed under unit scaling and negation); ``mirrors`` counts norm-root
    vectors modulo the unit group.
    """

    lattice: HermitianLattice
    bound: int
    vectors: dict

    @property
    def mirrors(self) -> int:
        roots = self.vectors.get(self.lattice.root_norm, [])
        units = UNIT_COUNTS[self.lattice.ring]
        if len(roots) % units:
            raise LatticeError("root count not divisible by the unit count")
        return len(roots) // units

    def count(self, norm: int) -> int:
        return len(self.vectors.get(norm, []))


def short_vectors(lattice: HermitianLattice, bound: int) -> RootInventory:
    """Every lattice vector v with 0 < <v,v> <= bound, exactly.

    The Hermitian form is realified to a 2n-dimensional integer quadratic
    form and enumerated by the standard Cholesky recursion with exact
    rational bounds.
    """
    if bound < 1:
        raise LatticeError("bound must be >= 1")
    npos, nneg, nzero = signature(lattice)
    if nneg or nzero:
        raise LatticeError("short vectors need a positive definite lattice")
    S = realify(lattice)
    m = len(S)
    L, D = _ldl(S)
    cls = lattice.scalar_class
    found = {}
    coords = [0] * m

    # recurse from the last coordinate down; remaining budget in T
    def enumerate_level(k: int, T: Fraction):
        if k < 0:
            if all(c == 0 for c in coords):
                return
            vec = tuple(cls(coords[2 * i], coords[2 * i + 1])
                        for i in range(m // 2))
            nv = bound - T  # value of the form at this point
            found.setdefault(nv, []).append(vec)
            return
        center = sum((L[i][k] * coords[i] for i in range(k + 1, m)), Fraction(0))
        for x in _int_window(center, T / D[k]):
            coords[k] = x
            spent = D[k] * (x + center) * (x + center)
            enumerate_level(k - 1, T - spent)
        coords[k] = 0

    enumerate_level(m - 1, Fraction(bound))
    out = {}
    for nv, vecs in found.items():
        nv_int = int(nv)
        if nv_int != nv:
            raise LatticeError("non-integral norm in an integral lattice")
        out[nv_int] = sorted(vecs, key=lambda v: tuple((x.a, x.b) for x in v))
    return RootInventory(lattice, bound, out)


def mirror_count(lattice: HermitianLattice) -> int:
    """Number of root lines (norm-root vectors modulo units)."""
    return short_vectors(lattice, lattice.root_norm).mirrors


# -- the rank-5 extension sweep ------------------------------------------------


@dataclass
class ExtensionCandidate:
    xyzw: tuple
    positive_definite: bool
    det_value: Fraction         # determinant of the 5x5 Gram
    proof_value: Fraction       # the closed-form expression (det / 9)


@dataclass
class ExtensionSweep:
    bound: int
    candidates_tested: int
    survivors: list             # xyzw tuples that stay positive definite
    det_identity_ok: bool       # det == 9 * proof expression for every candidate

    @property
    def unique_trivial_survivor(self) -> bool:
        return self.survivors == [(Eisenstein(0),) * 4]


def _eisenstein_ball(norm_bound: int):
    """All Eisenstein integers with norm <= bound (norm zero included)."""
    out = []
    r = int(math.isqrt(4 * norm_bound)) + 1
    for a in range(-r, r + 1):
        for b in range(-r, r + 1):
            if a * a - a * b + b * b <= norm_bound:
                out.append(Eisenstein(a, b))
    out.sort(key=lambda e: (e.norm(), e.a, e.b))
    return out


def _proof_expression(x, y, z, w):
    """The closed-form value of det/9 for the rank-5 extension Gram.

    3 - x x~ - w w~ - 2 a a~ - 2 b b~ - theta a b~ + theta b a~ with
    a = y*theta - x and b = z*theta + w; real by construction.
    """
    a = y * THETA - x
    b = z * THETA + w
    val = (Eisenstein(3) - x * x.conj() - w * w.conj()
           - 2 * a * a.conj() - 2 * b * b.conj()
           - THETA * a * b.conj() + THETA * b * a.conj())
    return Fraction(val.rational())


def _uniform_a4_gram():
    """The rank-4 chain Gram with every successive pairing equal to theta.

    Isometric to the bipartite-colored presentation (rescale alternate basis
    vectors by -1); the closed-form determinant expression of the extension
    sweep is written against this orientation.
    """
    t = THETA
    z, three = Eisenstein(0), Eisenstein(3)
    return [[three, t, z, z],
            [-t, three, t, z],
            [z, -t, three, t],
            [z, z, -t, three]]


# raw (a, b) integer pairs for the sweep's inner loop: 28561 candidates each
# need a 5x5 Bareiss determinant, and the scalar-class overhead would
# dominate the acceptance budget

def _pmul(p, q):
    a1, b1 = p
    a2, b2 = q
    return (a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)


def _pconj(p):
    return (p[0] - p[1], -p[1])


def _pdiv_exact(p, q):
    num = _pmul(p, _pconj(q))
    n = q[0] * q[0] - q[0] * q[1] + q[1] * q[1]
    a, r1 = divmod(num[0], n)
    b, r2 = divmod(num[1], n)
    if r1 or r2:
        raise LatticeError("inexact division in fraction-free elimination")
    return (a, b)


def _det5_pairs(M):
    """Bareiss determinant of a 5x5 matrix of integer pairs."""
    A = [row[:] for row in M]
    prev = (1, 0)
    for k in range(4):
        piv = A[k][k]
        if piv == (0, 0):
            swap = next((i for i in range(k + 1, 5) if A[i][k] != (0, 0)), None)
            if swap is None:
                return (0, 0)
            A[k], A[swap] = A[swap], A[k]
            A[k] = [(-a, -b) for a, b in A[k]]  # swap sign folded into the row
            piv = A[k][k]
        for i in range(k + 1, 5):
            Aik = A[i][k]
            for j in range(k + 1, 5):
                a1, b1 = A[i][j]
                a2, b2 = piv
                t1 = (a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)
                a1, b1 = Aik
                a2, b2 = A[k][j]
                t2 = (a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)
                A[i][j] = _pdiv_exact((t1[0] - t2[0], t1[1] - t2[1]), prev)
            A[i][k] = (0, 0)
        prev = piv
    return A[4][4]


def lemma_search(search_bound: int = 3) -> ExtensionSweep:
    """Exhaustive sweep of rank-5 extensions of the definite rank-4 lattice.

    Every (x, y, z, w) with norms <= the bound extends the rank-4 chain
    lattice by a fifth root with pairings (x, y, z, w) * theta; each
    extension is tested for exact positive definiteness (Schur complement
    sign) and its directly computed determinant is compared against 9 times
    the closed-form expression.
    """
    from .linalg import field_inverse

    G4 = _uniform_a4_gram()
    # 9 * G4^{-1} is integral (the adjugate); the Schur complement of the
    # rank-4 block then gives 9 * det(G5) = 9 * (27 - c* adj c / ... ) in ints
    Ginv = field_inverse([row[:] for row in G4])
    adj = []
    for i in range(4):
        row = []
        for j in range(4):
            e = Ginv[i][j] * 9
            if not e.is_integral:
                raise LatticeError("adjugate came out non-integral")
            row.append((int(e.a), int(e.b)))
        adj.append(row)
    G4p = [[(int(x.a), int(x.b)) for x in row] for row in G4]
    theta = (int(THETA.a), int(THETA.b))
    ball = _eisenstein_ball(search_bound)
    ball_pairs = [(int(e.a), int(e.b)) for e in ball]
    survivors = []
    det_ok = True
    tested = 0
    for xi, x in enumerate(ball_pairs):
        for yi, y in enumerate(ball_pairs):
            for zi, z in enumerate(ball_pairs):
                for wi, w in enumerate(ball_pairs):
                    tested += 1
                    col = [_pmul(x, theta), _pmul(y, theta),
                           _pmul(z, theta), _pmul(w, theta)]
                    G5 = [G4p[i] + [col[i]] for i in range(4)]
                    G5.append([_pconj(c) for c in col] + [(3, 0)])
                    da, db = _det5_pairs(G5)
                    if db != 0:
                        raise LatticeError("Hermitian determinant not real")
                    proof = _proof_expression(ball[xi], ball[yi], ball[zi], ball[wi])
                    if da != 9 * proof:
                        det_ok = False
                    # Schur positivity: 9*(3 - c* G4^{-1} c) = 27 - c* adj c > 0
                    qa = qb = 0
                    for i in range(4):
                        acc = (0, 0)
                        for j in range(4):
                            t = _pmul(adj[i][j], col[j])
                            acc = (acc[0] + t[0], acc[1] + t[1])
                        t = _pmul(_pconj(col[i]), acc)
                        qa += t[0]
                        qb += t[1]
                    if qb != 0:
                        raise LatticeError("Hermitian Schur value not real")
                    if 27 - qa > 0:
                        survivors.append(tuple(ball[t] for t in (xi, yi, zi, wi)))
    return ExtensionSweep(search_bound, tested, survivors, det_ok)


# -- orthogonal complements ----------------------------------------------------


@dataclass
class ComplementReport:
    sublattice_rank: int
    complement: HermitianLattice
    basis: tuple                 # ambient coordinates of the complement basis
    inventory: RootInventory | None

    @property
    def rank(self) -> int:
        return self.complement.rank


def ortho_complement_roots(ambient, sub_labels, bound=None) -> ComplementReport:
    """Saturated orthogonal complement of a node-generated sublattice.

    ``ambient`` is a QuotientData (typically the nondegenerate quotient of a
    diagram lattice); the complement of the span of the named nodes' images
    is computed as a saturated module via the Hermite transform, and its
    root inventory is enumerated when the complement is definite.
    """
    if not isinstance(ambient, QuotientData):
        raise LatticeError("ambient must be a QuotientData")
    lat = ambient.lattice
    cls = lat.scalar_class
    n = lat.rank
    subs = [ambient.project_label(lab) for lab in sub_labels]
    from .linalg import rank as matrix_rank
    sub_rank = matrix_rank([list(s) for s in subs])
    sub_gram = [[gram_pair(s, t, lat.gram) for t in subs] for s in subs]
    if matrix_rank(sub_gram) != sub_rank:
        raise LatticeError("sublattice is degenerate")
    # pairing matrix: column per sub generator; v in complement iff v P = 0
    P = [[gram_pair(lat.basis_vector(i), s, lat.gram) for s in subs] for i in range(n)]
    kernel_rows = left_kernel_ring(P, cls)
    K = [list(r) for r in kernel_rows]
    comp_gram = [[gram_pair(K[s], K[t], lat.gram) for t in range(len(K))]
                 for s in range(len(K))]
    comp = HermitianLattice(lat.ring, comp_gram)
    inventory = None
    npos, nneg, nzero = signature(comp) if comp.rank else (0, 0, 0)
    if comp.rank and not nneg and not nzero:
        inventory = short_vectors(comp, bound if bound is not None else comp.root_norm)
    return ComplementReport(sub_rank, comp, tuple(tuple(r) for r in K), inventory)
