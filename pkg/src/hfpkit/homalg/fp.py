"""Linear algebra over F_p on int64 arrays, used when every modulus is one prime p."""
from __future__ import annotations

import numpy as np

from .abelian import FinGenAbGroup
from .lattice import as_matrix


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def common_prime(*mod_lists):
    """The prime p if every modulus in every list equals p, else None."""
    p = None
    for mods in mod_lists:
        for m in mods:
            if p is None:
                p = int(m)
            elif m != p:
                return None
    return p if p is not None and is_prime(p) else None


def to_fp(A, p: int) -> np.ndarray:
    A = as_matrix(A) if not isinstance(A, np.ndarray) else A
    return (np.array(A, dtype=object) % p).astype(np.int64)


def rref(A: np.ndarray, p: int):
    """Reduced row echelon form mod p. Returns (R, pivots)."""
    R = A.copy() % p
    m, n = R.shape
    piv = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if len(nzr):
            R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
        piv.append(c)
        r += 1
    return R[:r], piv


def nullspace(A: np.ndarray, n: int, p: int) -> np.ndarray:
    """Basis rows of {x : A x = 0} over F_p."""
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
        for k, c in enumerate(piv):
            N[i, c] = (-R[k, f]) % p
    return N


def solve_fp(M, b, p: int):
    """x with M x = b over F_p, as an object array of representatives, or None."""
    A = to_fp(M, p)
    m, n = A.shape
    rhs = to_fp(np.array([int(v) for v in b], dtype=object).reshape(m, 1), p)
    R, piv = rref(np.hstack([A, rhs]), p)
    if n in piv:
        return None
    x = np.zeros(n, dtype=object)
    for k, c in enumerate(piv):
        x[c] = int(R[k, n])
    return x


class FpSubquotient:
    """K / L over F_p with the interface of :class:`SubquotientGroup`.

    ``K`` is given by basis rows (a subspace), ``L`` by spanning rows (a
    subspace of K).
    """

    def __init__(self, K_rows: np.ndarray, L_rows: np.ndarray, n: int, p: int):
        self.p, self.n = p, n
        self.mods = (p,) * n
        Lr, lpiv = rref(L_rows, p) if L_rows.shape[0] else (np.zeros((0, n), np.int64), [])
        self.L, self.lpiv = Lr, lpiv
        # extend L to a basis of K: reduce K rows modulo L, then echelon
        Kred = self._reduce_L(K_rows % p)
        Q, qpiv = rref(Kred, p) if Kred.shape[0] else (np.zeros((0, n), np.int64), [])
        self.Q, self.qpiv = Q, qpiv
        d = len(qpiv)
        self.group = FinGenAbGroup((p,) * d, 0)
        self.reps = Q.T.astype(object).copy() if d else np.zeros((n, 0), dtype=object)
        # basis of K = L rows + Q rows, in echelon for membership tests
        if Lr.shape[0] + Q.shape[0]:
            self.K, self.kpiv = rref(np.vstack([Lr, Q]), p)
        else:
            self.K, self.kpiv = np.zeros((0, n), np.int64), []

    def _reduce_L(self, X: np.ndarray) -> np.ndarray:
        X = X.copy()
        for k, c in enumerate(self.lpiv):
            col = X[:, c].copy()
            nz = np.nonzero(col)[0]
            if len(nz):
                X[nz] = (X[nz] - np.outer(col[nz], self.L[k])) % self.p
        return X

    @property
    def gens(self) -> list:
        return [self.reps[:, j].copy() for j in range(self.reps.shape[1])]

    def _vec(self, x) -> np.ndarray:
        return (np.array([int(v) for v in x], dtype=object) % self.p).astype(np.int64)

    def contains(self, x) -> bool:
        v = self._vec(x)
        for k, c in enumerate(self.kpiv):
            if v[c]:
                v = (v - v[c] * self.K[k]) % self.p
        return not v.any()

    def classify(self, x) -> tuple:
        if not self.contains(x):
            raise ValueError("vector is not in the numerator")
        v = self._reduce_L(self._vec(x)[None, :])[0]
        out = []
        for k, c in enumerate(self.qpiv):
            a = int(v[c])
            out.append(a)
            if a:
                v = (v - a * self.Q[k]) % self.p
        return tuple(out)

    def is_zero(self, x) -> bool:
        return not any(self.classify(x))

    def element(self, coords) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        for c, k in zip(coords, range(len(self.qpiv))):
            v = (v + int(c) * self.Q[k]) % self.p
        return v.astype(object)

    def elements(self):
        return self.group.elements()

    def induced(self, f, target) -> np.ndarray:
        f = as_matrix(f, target.n, self.n)
        k = len(target.group.mods)
        M = np.zeros((k, self.reps.shape[1]), dtype=object)
        for j in range(self.reps.shape[1]):
            img = f.dot(self.reps[:, j]) if self.n else np.zeros(target.n, dtype=object)
            M[:, j] = np.array(target.classify(img), dtype=object)
        return M


def homology_fp(D_out, D_in, n: int, p: int) -> FpSubquotient:
    """ker(D_out) / im(D_in) over F_p for D_out: F_p^n -> ..., D_in: ... -> F_p^n."""
    A = to_fp(D_out, p) if D_out.shape[0] else np.zeros((0, n), np.int64)
    K = nullspace(A, n, p)
    L = to_fp(D_in, p).T.copy() if D_in.shape[1] else np.zeros((0, n), np.int64)
    return FpSubquotient(K, L, n, p)
