"""Exact dense linear algebra over the scalar classes.

Matrices are plain lists of lists (rows) of exact scalars; plain Python ints
mix freely with the scalar classes through operator coercion.  Everything
here is pure: inputs are copied, never mutated.

Three layers:

* field routines (``rref``, ``kernel_basis``, ``solve_right``, ``det``,
  ``rank``) -- valid over any exact field (Fraction, Q(omega), Q(i),
  Q(sqrt3), the quadratic tower);
* ``inertia`` -- Sylvester signature of a symmetric matrix over an exactly
  ordered field, by congruence elimination;
* Euclidean-ring routines (``hermite_row_reduce``, ``left_kernel_ring``) --
  Hermite normal form with a unimodular transform over Z[omega] or Z[i].
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import sign_of


def copy_matrix(A):
    return [list(row) for row in A]


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def conj_of(x):
    return x.conj() if hasattr(x, "conj") else x


def conj_transpose(A):
    return [[conj_of(x) for x in col] for col in zip(*A)]


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0])
    Bt = list(zip(*B))
    out = []
    for i in range(n):
        Ai = A[i]
        row = []
        for j in range(m):
            Bj = Bt[j]
            acc = Ai[0] * Bj[0]
            for t in range(1, k):
                acc = acc + Ai[t] * Bj[t]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(A, v):
    return [sum_prod(row, v) for row in A]


def sum_prod(u, v):
    acc = u[0] * v[0]
    for t in range(1, len(u)):
        acc = acc + u[t] * v[t]
    return acc


def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]


def vec_scale(v, c):
    return [c * a for a in v]


def mat_equal(A, B) -> bool:
    if len(A) != len(B):
        return False
    for ra, rb in zip(A, B):
        if len(ra) != len(rb):
            return False
        for a, b in zip(ra, rb):
            if a != b:
                return False
    return True


def gram_pair(u, v, G):
    """<u, v> for coordinate vectors u, v: linear in u, conjugate-linear in v."""
    n = len(G)
    acc = None
    for i in range(n):
        if not u[i]:
            continue
        Gi = G[i]
        for j in range(n):
            if not v[j]:
                continue
            term = u[i] * conj_of(v[j]) * Gi[j]
            acc = term if acc is None else acc + term
    if acc is None:
        return 0 * G[0][0]
    return acc


def rref(A):
    """Reduced row echelon form over a field.

    Returns (R, pivot_columns).  Pivots are normalized to 1 and cleared
    above and below; the reduction is canonical for a fixed row order.
    """
    R = copy_matrix(A)
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if R[i][c]), None)
        if pr is None:
            continue
        R[r], R[pr] = R[pr], R[r]
        piv = R[r][c]
        R[r] = [x / piv for x in R[r]]
        for i in range(nrows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A) -> int:
    return len(rref(A)[1])


def kernel_basis(A):
    """Basis of the right kernel {x : A x = 0}, canonically normalized.

    One basis vector per free column, with entry 1 at the free column and
    the negated reduced-echelon entries at the pivot columns.
    """
    if not A:
        return []
    R, pivots = rref(A)
    ncols = len(A[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(v)
    return basis


def solve_right(A, b):
    """One solution x of A x = b over a field, or None when inconsistent."""
    aug = [list(row) + [bb] for row, bb in zip(A, b)]
    R, pivots = rref(aug)
    ncols = len(A[0])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, p in enumerate(pivots):
        x[p] = R[r][ncols]
    return x


def det(A):
    """Determinant over a field (elimination with first-nonzero pivoting)."""
    M = copy_matrix(A)
    n = len(M)
    sign = 1
    result = None
    for c in range(n):
        pr = next((i for i in range(c, n) if M[i][c]), None)
        if pr is None:
            return 0 * A[0][0]
        if pr != c:
            M[c], M[pr] = M[pr], M[c]
            sign = -sign
        piv = M[c][c]
        result = piv if result is None else result * piv
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    if sign < 0:
        result = -result
    return result


def inertia(S):
    """(n_plus, n_minus, n_zero) of a symmetric matrix over an ordered field.

    Congruence elimination: split off nonzero diagonal entries; a zero
    diagonal with a nonzero off-diagonal entry a contributes a hyperbolic
    (+1, -1) pair via the invertible block [[0, a], [a, 0]].
    """
    M = copy_matrix(S)
    npos = nneg = nzero = 0
    while M:
        n = len(M)
        k = next((i for i in range(n) if M[i][i]), None)
        if k is not None:
            d = M[k][k]
            if sign_of(d) > 0:
                npos += 1
            else:
                nneg += 1
            keep = [i for i in range(n) if i != k]
            M = [[M[i][j] - M[i][k] * M[k][j] / d for j in keep] for i in keep]
            continue
        pair = None
        for i in range(n):
            for j in range(i + 1, n):
                if M[i][j]:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            nzero += n
            break
        i, j = pair
        a = M[i][j]
        npos += 1
        nneg += 1
        keep = [t for t in range(n) if t not in (i, j)]
        M = [[M[p][q] - (M[p][i] * M[j][q] + M[p][j] * M[i][q]) / a for q in keep]
             for p in keep]
    return npos, nneg, nzero


def is_positive_definite_hermitian(G) -> bool:
    """Exact positive-definiteness of a Hermitian matrix.

    Sylvester via elimination: the diagonal pivots are real rationals; the
    matrix is positive definite iff elimination never stalls and every pivot
    is positive.  A zero pivot means a vanishing leading principal minor,
    which already rules out definiteness.
    """
    M = copy_matrix(G)
    n = len(M)
    for k in range(n):
        piv = M[k][k]
        p = piv.rational() if hasattr(piv, "rational") else piv
        if not p > 0:
            return False
        for i in range(k + 1, n):
            if M[i][k]:
                f = M[i][k] / piv
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return True


def det_bareiss(M, cls):
    """Fraction-free determinant over an integral domain with exact division."""
    A = [[x if isinstance(x, cls) else cls(x) for x in row] for row in M]
    n = len(A)
    sign = 1
    prev = cls(1)
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return cls(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * piv - A[i][k] * A[k][j]
                A[i][j] = prev.exact_div(num)
            A[i][k] = cls(0)
        prev = piv
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def field_inverse(A):
    """Exact inverse over a field via Gauss-Jordan."""
    n = len(A)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)]
           for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


# ---------------------------------------------------------------------------
# Euclidean ring layer (Z[omega], Z[i])


def hermite_row_reduce(M, cls):
    """Hermite normal form by unimodular row operations over a Euclidean ring.

    Returns (H, U, rank, pivot_cols) with U * M = H, U invertible over the
    ring.  Pivot entries are normalized to their canonical associates and
    entries above each pivot are reduced modulo it, so H is canonical.
    ``cls`` is the scalar class (Eisenstein or Gauss); plain int entries are
    coerced.
    """
    H = [[x if isinstance(x, cls) else cls(x) for x in row] for row in M]
    nrows = len(H)
    ncols = len(H[0]) if nrows else 0
    U = [[cls(1) if i == j else cls(0) for j in range(nrows)] for i in range(nrows)]
    r = 0
    pivot_cols = []
    for c in range(ncols):
        if r == nrows:
            break
        live = [i for i in range(r, nrows) if H[i][c]]
        if not live:
            continue
        while True:
            live = [i for i in range(r, nrows) if H[i][c]]
            k = min(live, key=lambda i: (H[i][c].norm(), i))
            if k != r:
                H[r], H[k] = H[k], H[r]
                U[r], U[k] = U[k], U[r]
            if len(live) == 1:
                break
            piv = H[r][c]
            for i in range(r + 1, nrows):
                if H[i][c]:
                    q, _ = H[i][c].euclid_divmod(piv)
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        piv = H[r][c]
        canon = piv.canonical_associate()
        if canon != piv:
            u = piv.exact_div(canon)  # unit: canon / piv
            H[r] = [u * x for x in H[r]]
            U[r] = [u * x for x in U[r]]
        piv = H[r][c]
        for i in range(r):
            if H[i][c]:
                q, _ = H[i][c].euclid_divmod(piv)
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        pivot_cols.append(c)
        r += 1
    return H, U, r, pivot_cols


def left_kernel_ring(M, cls):
    """Saturated basis of {x in R^m : x M = 0} over a Euclidean ring R.

    Rows of the unimodular transform aligned with zero rows of the Hermite
    form; because the transform is unimodular the result generates the full
    integral kernel (no saturation defect).
    """
    H, U, rnk, _ = hermite_row_reduce(M, cls)
    return [U[i] for i in range(rnk, len(U))]


def clear_denominators(vec, cls):
    """Scale a fraction-field vector to primitive ring coordinates.

    Multiplies by the lcm of all coordinate denominators, then divides by a
    gcd of the coordinates, so the result is integral with coprime entries.
    Applies a canonical unit so the first nonzero coordinate is its own
    canonical associate.
    """
    from math import lcm

    vec = [x if isinstance(x, cls) else cls(x) for x in vec]
    dens = []
    for x in vec:
        for part in (x.a, x.b):
            if isinstance(part, Fraction):
                dens.append(part.denominator)
    mult = 1
    for d in dens:
        mult = lcm(mult, d)
    ints = [x * mult for x in vec]
    ints = [cls(int(x.a), int(x.b)) for x in ints]
    g = cls(0)
    for x in ints:
        g = g.gcd(x)
        if g.norm() == 1:
            break
    if g.norm() not in (0, 1):
        ints = [g.exact_div(x) for x in ints]
    lead = next((x for x in ints if x), None)
    if lead is not None:
        canon = lead.canonical_associate()
        u = lead.exact_div(canon)
        ints = [u * x for x in ints]
    return ints
