"""Unitary reflection representations of diagram Artin generators.

A root of norm 3 in an Eisenstein lattice yields an order-three complex
reflection multiplying the root by omega; a root of norm 2 in a Gauss
lattice yields an order-four reflection multiplying it by i.  One generator
per diagram node gives the Hermitian representation whose braid/commutation
behaviour mirrors the diagram's bonds.

Matrix work (relation checking, group closure) runs on exact integer numpy
arrays: a ring matrix A + B*zeta is embedded block-wise through the regular
representation of the ring, so a single int64 matmul multiplies two ring
matrices with no rounding anywhere.  Entry sizes are asserted to stay far
inside the exact int64 range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .diagrams import CoxeterDiagram
from .lattices import (HermitianLattice, LatticeError, QuotientData,
                       gram_from_diagram, quotient_by_radical, signature)
from .scalars import Eisenstein, Gauss

_ENTRY_BOUND = 1 << 28  # one more multiply stays exact in int64

_REG_BLOCKS = {
    # zeta acts on the basis (1, zeta): omega^2 = -1 - omega, i^2 = -1
    "eisenstein": np.array([[0, -1], [1, -1]], dtype=np.int64),
    "gauss": np.array([[0, -1], [1, 0]], dtype=np.int64),
}


class RootNormError(LatticeError):
    """Reflection requested for a vector that is not a root."""


class IntegralityError(LatticeError):
    """A reflection matrix came out non-integral: convention bug upstream."""


def _to_np_pair(matrix, cls):
    A = np.array([[int(x.a) for x in row] for row in matrix], dtype=np.int64)
    B = np.array([[int(x.b) for x in row] for row in matrix], dtype=np.int64)
    return A, B


def _regular_embed(matrix, ring):
    """Ring matrix -> integer matrix of twice the size, multiplicative."""
    cls = Eisenstein if ring == "eisenstein" else Gauss
    A, B = _to_np_pair(matrix, cls)
    eye = np.eye(2, dtype=np.int64)
    return np.kron(A, eye) + np.kron(B, _REG_BLOCKS[ring])


def _regular_extract(R, ring, cls):
    """Inverse of :func:`_regular_embed`."""
    n = R.shape[0] // 2
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            blk = R[2 * i:2 * i + 2, 2 * j:2 * j + 2]
            row.append(cls(int(blk[0, 0]), int(blk[1, 0])))
        out.append(tuple(row))
    return tuple(out)


def _check_bound(R):
    if np.abs(R).max() >= _ENTRY_BOUND:
        raise OverflowError("matrix entries exceeded the exact int64 budget")


class ReflectionRep:
    """Indexed family of Gram-unitary generator matrices on one lattice."""

    def __init__(self, lattice: HermitianLattice, matrices: dict, roots: dict):
        self.lattice = lattice
        self.unit = lattice.scalar_class(0, 1)
        self.matrices = dict(matrices)
        self.roots = dict(roots)
        self._reg = {k: _regular_embed(m, lattice.ring) for k, m in self.matrices.items()}
        self._gram_reg = _regular_embed(lattice.gram, lattice.ring)

    @property
    def labels(self):
        return list(self.matrices)

    def regular(self, label):
        return self._reg[label]

    def word(self, labels):
        """Integer regular-representation matrix of a product of generators."""
        R = np.eye(2 * self.lattice.rank, dtype=np.int64)
        for lab in labels:
            R = R @ self._reg[lab]
            _check_bound(R)
        return R

    def word_matrix(self, labels):
        """The same product as exact ring scalars."""
        return _regular_extract(self.word(labels), self.lattice.ring,
                                self.lattice.scalar_class)


def reflection_matrix(lattice: HermitianLattice, root, zeta=None):
    """Matrix of v -> v + (zeta - 1) <v, root>/<root, root> * root.

    The root must have the ring's root norm (3 for Eisenstein, 2 for Gauss);
    the result is checked to be ring-integral, Gram-unitary and of the order
    of zeta.  Returns a tuple-of-tuples in the lattice basis.
    """
    cls = lattice.scalar_class
    if zeta is None:
        zeta = cls(0, 1)
    n = lattice.rank
    root = [x if isinstance(x, cls) else cls(x) for x in root]
    rn = lattice.pair(root, root)
    if rn != lattice.root_norm:
        raise RootNormError(f"root norm {rn}, expected {lattice.root_norm}")
    c = (zeta - cls(1)) / cls(lattice.root_norm)
    # <e_j, root> = sum_k conj(root_k) G[j][k]
    pairings = []
    for j in range(n):
        acc = cls(0)
        for k in range(n):
            if root[k]:
                acc = acc + root[k].conj() * lattice.gram[j][k]
        pairings.append(acc)
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            val = c * pairings[j] * root[i]
            if i == j:
                val = val + cls(1)
            if not val.is_integral:
                raise IntegralityError(f"non-integral entry {val} at ({i},{j})")
            row.append(cls(int(val.a), int(val.b)))
        M.append(tuple(row))
    M = tuple(M)
    _validate_generator(lattice, M)
    return M


def _unitarity_reg(gram_reg, M_scalar, ring):
    """Exact Gram-unitarity: M^T G conj(M) = G (form linear in the first slot)."""
    n = len(M_scalar)
    T = _regular_embed([[M_scalar[j][i] for j in range(n)] for i in range(n)], ring)
    C = _regular_embed([[x.conj() for x in row] for row in M_scalar], ring)
    return np.array_equal(T @ gram_reg @ C, gram_reg)


def _validate_generator(lattice, M):
    R = _regular_embed(M, lattice.ring)
    G = _regular_embed(lattice.gram, lattice.ring)
    order = 3 if lattice.ring == "eisenstein" else 4
    P = np.eye(R.shape[0], dtype=np.int64)
    for _ in range(order):
        P = P @ R
        _check_bound(P)
    if not np.array_equal(P, np.eye(R.shape[0], dtype=np.int64)):
        raise LatticeError("reflection does not have the unit's order")
    if not _unitarity_reg(G, M, lattice.ring):
        raise LatticeError("reflection is not Gram-unitary")


def rep_from_quotient(qdata: QuotientData, diag: CoxeterDiagram) -> ReflectionRep:
    """One reflection per diagram node, acting on the nondegenerate quotient."""
    lattice = qdata.lattice
    cls = lattice.scalar_class
    zeta = cls(0, 1)
    matrices = {}
    roots = {}
    for node in diag.nodes:
        root = qdata.project_label(node)
        matrices[node] = reflection_matrix(lattice, root, zeta)
        roots[node] = tuple(root)
    return ReflectionRep(lattice, matrices, roots)


def rep_from_diagram(diag: CoxeterDiagram, ring: str = "eisenstein") -> ReflectionRep:
    """Build the diagram lattice, quotient by its radical, reflect each node."""
    qdata = quotient_by_radical(gram_from_diagram(diag, ring))
    return rep_from_quotient(qdata, diag)


def rep_in_root_basis(rep: ReflectionRep, nodes) -> ReflectionRep:
    """Re-express a representation in the basis of the given nodes' roots.

    The chosen roots must form a module basis (the change of basis has to be
    unimodular over the ring); generators shared across compatible diagrams
    become literally identical matrices in such a basis.
    """
    from .linalg import det as field_det, solve_right

    lattice = rep.lattice
    cls = lattice.scalar_class
    r = lattice.rank
    B = [list(rep.roots[n]) for n in nodes]
    if len(B) != r:
        raise LatticeError(f"need exactly {r} nodes for a basis")
    d = field_det([row[:] for row in B])
    if d.norm() != 1:
        raise LatticeError("selected roots are not a module basis")
    G2 = [[lattice.pair(B[s], B[t]) for t in range(r)] for s in range(r)]
    new_lat = HermitianLattice(lattice.ring, G2, labels=tuple(nodes))
    Bt = [[B[s][j] for s in range(r)] for j in range(r)]  # transpose

    def to_new_coords(vec):
        y = solve_right([row[:] for row in Bt], list(vec))
        out = []
        for x in y:
            x = x if isinstance(x, cls) else cls(x)
            if not x.is_integral:
                raise IntegralityError("basis change produced non-integral coords")
            out.append(cls(int(x.a), int(x.b)))
        return out

    matrices = {}
    for label, M in rep.matrices.items():
        # column j of the new matrix: new coordinates of the image of b_j
        cols = []
        for j in range(r):
            img_old = [sum((M[i][k] * B[j][k] for k in range(r)), cls(0))
                       for i in range(r)]
            cols.append(to_new_coords(img_old))
        matrices[label] = tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))
    roots = {label: tuple(to_new_coords(root)) for label, root in rep.roots.items()}
    return ReflectionRep(new_lat, matrices, roots)


@dataclass
class RelationReport:
    """Outcome of checking the diagram's braid/commutation relations."""

    pairs_checked: int
    braid_pairs: int
    commuting_pairs: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_relations(rep: ReflectionRep, diag: CoxeterDiagram) -> RelationReport:
    """Braid relation on bonds, commutation off bonds, for every node pair."""
    labels = list(diag.nodes)
    report = RelationReport(0, 0, 0)
    for a_idx in range(len(labels)):
        for b_idx in range(a_idx + 1, len(labels)):
            a, b = labels[a_idx], labels[b_idx]
            Ma, Mb = rep.regular(a), rep.regular(b)
            report.pairs_checked += 1
            if diag.adjacent(a, b):
                report.braid_pairs += 1
                lhs = Ma @ Mb @ Ma
                rhs = Mb @ Ma @ Mb
                kind = "braid"
            else:
                report.commuting_pairs += 1
                lhs = Ma @ Mb
                rhs = Mb @ Ma
                kind = "commute"
            _check_bound(lhs)
            if not np.array_equal(lhs, rhs):
                report.failures.append((a, b, kind))
    return report


def validate_rep(rep: ReflectionRep) -> dict:
    """Integrality, unit order, Gram-unitarity and non-identity per generator."""
    order = 3 if rep.lattice.ring == "eisenstein" else 4
    eye = np.eye(2 * rep.lattice.rank, dtype=np.int64)
    out = {"order": order, "generators": len(rep.matrices), "failures": []}
    G = rep._gram_reg
    for label, R in rep._reg.items():
        P = eye
        for _ in range(order):
            P = P @ R
        if not np.array_equal(P, eye):
            out["failures"].append((label, "order"))
        if np.array_equal(R, eye):
            out["failures"].append((label, "identity"))
        if not _unitarity_reg(G, rep.matrices[label], rep.lattice.ring):
            out["failures"].append((label, "unitarity"))
    out["ok"] = not out["failures"]
    return out


@dataclass
class ClosureResult:
    """Breadth-first closure of the generated matrix group."""

    order: int | None          # exact order when complete
    complete: bool
    elements_found: int
    generators: int

    def __repr__(self):
        if self.complete:
            return f"ClosureResult(order={self.order})"
        return f"ClosureResult(incomplete, >= {self.elements_found})"


def group_closure(rep: ReflectionRep, max_elements: int = 500_000,
                  generator_order=None) -> ClosureResult:
    """Exact order of the generated group by hashed breadth-first closure.

    Refuses indefinite lattices (the unitary group is infinite there and no
    budgeted search can prove it).  The result is independent of generator
    ordering; ``generator_order`` only reorders the traversal for the
    determinism check.
    """
    npos, nneg, nzero = signature(rep.lattice)
    if nneg or nzero:
        raise LatticeError("closure refused: lattice is not positive definite")
    labels = list(rep.matrices) if generator_order is None else list(generator_order)
    gens = [rep.regular(lab) for lab in labels]
    dim = 2 * rep.lattice.rank
    eye = np.eye(dim, dtype=np.int64)
    seen = {eye.tobytes()}
    frontier = [eye]
    count = 1
    while frontier:
        nxt = []
        for M in frontier:
            for g in gens:
                P = M @ g
                key = P.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                count += 1
                if count > max_elements:
                    return ClosureResult(None, False, count, len(gens))
                nxt.append(P)
        if nxt:
            _check_bound(nxt[-1])
        frontier = nxt
    return ClosureResult(count, True, count, len(gens))


def element_order(rep: ReflectionRep, labels, budget: int = 10_000):
    """Order of a product of generators, or None past the budget."""
    W = rep.word(labels)
    eye = np.eye(W.shape[0], dtype=np.int64)
    P = W.copy()
    k = 1
    while k <= budget:
        if np.array_equal(P, eye):
            return k
        P = P @ W
        _check_bound(P)
        k += 1
    return None
