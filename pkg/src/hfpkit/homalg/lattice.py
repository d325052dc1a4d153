"""Exact integer linear algebra on numpy object arrays.

Everything here works over Z with Python integers: Smith normal form with
transforms, row echelon forms, kernels modulo moduli, solving, and the
subquotient ``K / L`` of two lattices which underlies every homology
computation in the package.
"""
from __future__ import annotations

from math import gcd

import numpy as np


def as_matrix(A, nrows: int | None = None, ncols: int | None = None) -> np.ndarray:
    if isinstance(A, np.ndarray) and A.dtype == object and A.ndim == 2:
        M = A.copy()
    else:
        rows = [list(r) for r in A]
        if not rows:
            M = np.zeros((nrows or 0, ncols or 0), dtype=object)
        else:
            M = np.array([[int(x) for x in r] for r in rows], dtype=object)
            if M.ndim == 1:
                M = M.reshape(len(rows), 0)
    if nrows is not None and ncols is not None and M.size == 0:
        M = np.zeros((nrows, ncols), dtype=object)
    return M


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=object)


def identity(n: int) -> np.ndarray:
    M = np.zeros((n, n), dtype=object)
    for i in range(n):
        M[i, i] = 1
    return M


def xgcd(a: int, b: int):
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    return A.dot(B)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

class _Tracker:
    """Row/column transforms for P A Q = D, keeping P, P^-1, Q, Q^-1 on demand."""

    def __init__(self, m, n, left, right):
        self.P = identity(m) if left else None
        self.Pi = identity(m) if left else None
        self.Q = identity(n) if right else None
        self.Qi = identity(n) if right else None

    def row_add(self, i, j, k):        # row_i += k row_j
        if self.P is not None:
            self.P[i, :] += k * self.P[j, :]
            self.Pi[:, j] -= k * self.Pi[:, i]

    def row_swap(self, i, j):
        if self.P is not None:
            self.P[[i, j], :] = self.P[[j, i], :]
            self.Pi[:, [i, j]] = self.Pi[:, [j, i]]

    def row_neg(self, i):
        if self.P is not None:
            self.P[i, :] *= -1
            self.Pi[:, i] *= -1

    def row_mix(self, i, j, a, b, c, d):
        # (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j), det = 1
        if self.P is not None:
            ri, rj = self.P[i, :].copy(), self.P[j, :].copy()
            self.P[i, :] = a * ri + b * rj
            self.P[j, :] = c * ri + d * rj
            ci, cj = self.Pi[:, i].copy(), self.Pi[:, j].copy()
            self.Pi[:, i] = d * ci - c * cj
            self.Pi[:, j] = -b * ci + a * cj

    def col_add(self, i, j, k):        # col_i += k col_j
        if self.Q is not None:
            self.Q[:, i] += k * self.Q[:, j]
            self.Qi[j, :] -= k * self.Qi[i, :]

    def col_swap(self, i, j):
        if self.Q is not None:
            self.Q[:, [i, j]] = self.Q[:, [j, i]]
            self.Qi[[i, j], :] = self.Qi[[j, i], :]

    def col_mix(self, i, j, a, b, c, d):
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j), det = 1
        if self.Q is not None:
            ci, cj = self.Q[:, i].copy(), self.Q[:, j].copy()
            self.Q[:, i] = a * ci + b * cj
            self.Q[:, j] = c * ci + d * cj
            ri, rj = self.Qi[i, :].copy(), self.Qi[j, :].copy()
            self.Qi[i, :] = d * ri - c * rj
            self.Qi[j, :] = -b * ri + a * rj


def _pick_pivot(A, t):
    sub = A[t:, t:]
    nz = np.argwhere(sub != 0)
    if len(nz) == 0:
        return None
    vals = np.abs(sub[nz[:, 0], nz[:, 1]])
    best = min(vals)
    cand = nz[vals == best]
    if len(cand) > 1 and len(cand) < 2000:
        rc = (sub != 0).sum(axis=1)
        cc = (sub != 0).sum(axis=0)
        scores = [(rc[r] - 1) * (cc[c] - 1) for r, c in cand]
        k = int(np.argmin(scores))
    else:
        k = 0
    return t + int(cand[k][0]), t + int(cand[k][1])


def snf_transform(A, left=True, right=True):
    """Diagonalize ``A``: return (D, P, Pinv, Q, Qinv) with P A Q = D.

    D is diagonal with nonnegative entries d_1 | d_2 | ... followed by zeros.
    Transform matrices not requested are returned as None.
    """
    A = as_matrix(A)
    m, n = A.shape
    tr = _Tracker(m, n, left, right)
    t = 0
    while t < min(m, n):
        piv = _pick_pivot(A, t)
        if piv is None:
            break
        i, j = piv
        if i != t:
            A[[t, i], :] = A[[i, t], :]
            tr.row_swap(t, i)
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            tr.col_swap(t, j)
        while True:
            done = True
            p = A[t, t]
            col = A[t + 1:, t]
            for r in np.nonzero(col)[0]:
                r = t + 1 + int(r)
                q = A[r, t] // p
                if q:
                    A[r, t:] -= q * A[t, t:]
                    tr.row_add(r, t, -q)
                if A[r, t]:
                    done = False
            row = A[t, t + 1:]
            for c in np.nonzero(row)[0]:
                c = t + 1 + int(c)
                q = A[t, c] // p
                if q:
                    A[t:, c] -= q * A[t:, t]
                    tr.col_add(c, t, -q)
                if A[t, c]:
                    done = False
            if done:
                break
            # a smaller remainder exists in row/col t: bring it to the pivot
            best = None
            for r in range(t + 1, m):
                v = A[r, t]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), r, None)
            for c in range(t + 1, n):
                v = A[t, c]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), None, c)
            _, r, c = best
            if r is not None:
                A[[t, r], :] = A[[r, t], :]
                tr.row_swap(t, r)
            else:
                A[:, [t, c]] = A[:, [c, t]]
                tr.col_swap(t, c)
        if A[t, t] < 0:
            A[t, :] *= -1
            tr.row_neg(t)
        t += 1
    r = t
    # enforce the divisibility chain on the diagonal
    changed = True
    while changed:
        changed = False
        for i in range(r):
            for j in range(i + 1, r):
                a, b = A[i, i], A[j, j]
                if b % a == 0:
                    continue
                g, s, u = xgcd(a, b)
                # rows: (s, u; -b/g, a/g) ; cols: (1, -u b/g; 1, s a/g)
                ag, bg = a // g, b // g
                A[i, i], A[j, j] = g, a * bg
                tr.row_mix(i, j, s, u, -bg, ag)
                tr.col_mix(i, j, 1, 1, -u * bg, s * ag)
                changed = True
    return A, tr.P, tr.Pi, tr.Q, tr.Qi


def smith_normal_form(A):
    """Return (U, D, V) with A = U·D·V, U and V unimodular, D in Smith form."""
    D, P, Pi, Q, Qi = snf_transform(A)
    return Pi, D, Qi


def invariant_factors(A) -> list:
    """Nonzero diagonal entries of the Smith form of A."""
    D = snf_transform(A, left=False, right=False)[0]
    out = []
    for i in range(min(D.shape)):
        if D[i, i] == 0:
            break
        out.append(int(D[i, i]))
    return out


# ----------------------------------------------------------------------
# echelon forms and kernels
# ----------------------------------------------------------------------

def row_echelon(M, transform: bool = False, tcols: int | None = None):
    """Integer row echelon form E = T·M.

    Returns (E, T, pivots).  ``pivots[k]`` is the pivot column of row k; rows
    past ``len(pivots)`` are zero.  When ``tcols`` is given only the first
    ``tcols`` columns of T are tracked (enough for kernel projections).
    """
    E = as_matrix(M)
    m, n = E.shape
    T = None
    if transform:
        T = identity(m)
        if tcols is not None:
            T = T[:, :tcols].copy()
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            col = E[r:, c]
            nzr = np.nonzero(col)[0]
            if len(nzr) == 0:
                break
            vals = np.abs(col[nzr])
            k = r + int(nzr[int(np.argmin(vals))])
            if k != r:
                E[[r, k], :] = E[[k, r], :]
                if T is not None:
                    T[[r, k], :] = T[[k, r], :]
            p = E[r, c]
            rest = False
            for i in nzr:
                i = r + int(i)
                if i == r:
                    continue
                q = E[i, c] // p
                E[i, c:] -= q * E[r, c:]
                if T is not None:
                    T[i, :] -= q * T[r, :]
                if E[i, c]:
                    rest = True
            if not rest:
                break
        if E[r, c] != 0:
            if E[r, c] < 0:
                E[r, :] *= -1
                if T is not None:
                    T[r, :] *= -1
            pivots.append(c)
            r += 1
    return E, T, pivots


def hermite_basis(gens_cols, n: int) -> np.ndarray:
    """Canonical (reduced echelon) basis of the lattice spanned by columns.

    Returned as an n x r matrix of basis columns; equal lattices give equal
    matrices.
    """
    G = as_matrix(gens_cols, n, 0)
    if G.shape[1] == 0:
        return zeros(n, 0)
    E, _, piv = row_echelon(G.T.copy())
    E = E[:len(piv)]
    for k, c in enumerate(piv):
        p = E[k, c]
        for i in range(k):
            q = E[i, c] // p
            if q:
                E[i, :] -= q * E[k, :]
    return E.T.copy()


def kernel_basis(M, ncols: int | None = None) -> np.ndarray:
    """Columns spanning {x in Z^n : M x = 0} (a basis)."""
    M = as_matrix(M)
    if ncols is None:
        ncols = M.shape[1]
    if M.shape[0] == 0:
        return identity(ncols)
    E, T, piv = row_echelon(M.T.copy(), transform=True)
    return T[len(piv):, :].T.copy()


def compress_rows(M, moduli):
    """Fewer rows with the same solution set of (M x)_i ≡ 0 mod moduli[i].

    Rows sharing a modulus are replaced by their echelon form (a unimodular
    recombination), reduced modulo that modulus; zero rows are dropped.
    Returns (M', moduli').
    """
    M = as_matrix(M)
    groups: dict = {}
    for i, q in enumerate(moduli):
        groups.setdefault(int(q), []).append(i)
    rows, mods = [], []
    for q in sorted(groups):
        E, _, piv = row_echelon(M[groups[q], :])
        for k in range(len(piv)):
            r = E[k, :] % q if q else E[k, :]
            if any(r):
                rows.append(r)
                mods.append(q)
    if not rows:
        return zeros(0, M.shape[1]), []
    return np.array(rows, dtype=object).reshape(len(rows), M.shape[1]), mods


def kernel_mod(M, moduli, ncols: int | None = None) -> np.ndarray:
    """Basis (columns) of {x : (M x)_i ≡ 0 mod moduli[i]} (modulus 0 = exact)."""
    M = as_matrix(M)
    n = M.shape[1] if ncols is None else ncols
    if M.shape[0] > n and M.shape[0]:
        M, moduli = compress_rows(M, moduli)
        if M.shape[0] == 0:
            return identity(n)
    m = M.shape[0]
    if m == 0:
        return identity(n)
    pos = [i for i in range(m) if moduli[i] != 0]
    aug = zeros(m, n + len(pos))
    aug[:, :n] = M
    for k, i in enumerate(pos):
        aug[i, n + k] = moduli[i]
    E, T, piv = row_echelon(aug.T.copy(), transform=True, tcols=n)
    return T[len(piv):, :n].T.copy()


def solve_mod(M, b, moduli):
    """An integer x with M x ≡ b modulo ``moduli`` (entrywise; 0 = exact), or None."""
    M = as_matrix(M)
    m, n = M.shape
    from .fp import common_prime, solve_fp
    p = common_prime(moduli)
    if p is not None and m and n:
        return solve_fp(M, b, p)
    pos = [i for i in range(m) if moduli[i] != 0]
    aug = zeros(m, n + len(pos))
    aug[:, :n] = M
    for k, i in enumerate(pos):
        aug[i, n + k] = moduli[i]
    y = solve(aug, b)
    return None if y is None else y[:n]


def solve(M, b):
    """An integer solution x of M x = b, or None."""
    M = as_matrix(M)
    b = np.array([int(v) for v in b], dtype=object)
    m, n = M.shape
    if n == 0:
        return np.zeros(0, dtype=object) if not any(b) else None
    D, P, Pi, Q, Qi = snf_transform(M, left=True, right=True)
    c = P.dot(b) if m else b
    y = np.zeros(n, dtype=object)
    for i in range(m):
        d = D[i, i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return Q.dot(y)


# ----------------------------------------------------------------------
# subquotients
# ----------------------------------------------------------------------

class Subquotient:
    """The abelian group K / L for lattices L ⊆ K ⊆ Z^n.

    ``K`` and ``L`` are given by generating columns.  After construction:

    * ``invariants``: torsion factors (> 1) followed by ``rank`` free factors,
    * ``reps``: n x len(generators) matrix; column k represents generator k,
    * ``classify(x)``: coordinates of x ∈ K in terms of the generators.
    """

    def __init__(self, K, L, n: int):
        K = as_matrix(K, n, 0)
        L = as_matrix(L, n, 0)
        if L.shape[1] > n:
            L = hermite_basis(L, n)
        if K.shape[1] > n:
            K = hermite_basis(K, n)
        self.n = n
        if K.shape[1]:
            E, _, piv = row_echelon(K.T.copy())
            self.basis_rows = E[:len(piv)].copy()
        else:
            piv = []
            self.basis_rows = zeros(0, n)
        self.pivots = piv
        r = len(piv)
        Y = zeros(r, L.shape[1])
        for j in range(L.shape[1]):
            y = self._coords(L[:, j])
            if y is None:
                raise ValueError("L is not contained in K")
            Y[:, j] = y
        D, P, Pi, _, _ = snf_transform(Y, left=True, right=False)
        diag = [int(D[i, i]) if i < D.shape[1] else 0 for i in range(r)]
        self._P = P
        keep = [i for i in range(r) if diag[i] != 1]
        torsion = [i for i in keep if diag[i] != 0]
        free = [i for i in keep if diag[i] == 0]
        self.order_idx = torsion + free
        self.torsion = [diag[i] for i in torsion]
        self.rank = len(free)
        self.mods = self.torsion + [0] * self.rank
        B = self.basis_rows.T  # n x r
        self.reps = matmul(B, Pi[:, self.order_idx]) if r else zeros(n, 0)

    def _coords(self, x):
        x = np.array([int(v) for v in x], dtype=object)
        r = len(self.pivots)
        y = np.zeros(r, dtype=object)
        for k, c in enumerate(self.pivots):
            p = self.basis_rows[k, c]
            if x[c] % p:
                return None
            q = x[c] // p
            y[k] = q
            if q:
                x = x - q * self.basis_rows[k, :]
        if any(x):
            return None
        return y

    def contains(self, x) -> bool:
        return self._coords(x) is not None

    def classify(self, x) -> tuple:
        y = self._coords(x)
        if y is None:
            raise ValueError("vector is not in the numerator lattice")
        z = self._P.dot(y) if len(y) else y
        out = []
        for k, i in enumerate(self.order_idx):
            v = int(z[i])
            d = self.mods[k]
            out.append(v % d if d else v)
        return tuple(out)


def lattice_equal(A_cols, B_cols, n: int) -> bool:
    a = hermite_basis(A_cols, n)
    b = hermite_basis(B_cols, n)
    return a.shape == b.shape and bool((a == b).all())


def lattice_contains(A_cols, B_cols, n: int) -> bool:
    """True when every column of B lies in the lattice spanned by A."""
    sq = Subquotient(A_cols, zeros(n, 0), n)
    B = as_matrix(B_cols, n, 0)
    return all(sq.contains(B[:, j]) for j in range(B.shape[1]))
