"""Simplicial abelian groups, the Moore complex and the Dold–Kan inverse Γ.

A :class:`SimplicialAbelianGroup` stores, per level, a coordinate group
⊕ Z/m_i together with face and degeneracy matrices.  ``moore_underline``
gives the alternating-face complex; ``dold_kan_overline`` builds
Γ(C)_n = ⊕_{[n]↠[k]} C_k from a non-negatively graded complex.
"""
from __future__ import annotations

import itertools

import numpy as np

from ..caps import CapExceeded, InvalidInput, get_caps
from ..groups import FiniteGroup
from ..simplicial.constructions import codegeneracy, coface, compose, epi_mono, surjections
from ..simplicial.sset import SimplicialSet
from .chain import ChainComplex
from .lattice import as_matrix, identity, zeros
from .modules import _mod_equal


class SimplicialAbelianGroup:
    """Levels 0..N; ``faces[n][i]`` : A_n -> A_{n-1}, ``degens[n][i]`` : A_n -> A_{n+1}."""

    def __init__(self, mods, faces, degens, group: FiniteGroup | None = None, actions=None,
                 name: str = "", check: bool = True):
        self.mods = [tuple(int(m) for m in l) for l in mods]
        N = len(self.mods) - 1
        self.faces = [None] + [[as_matrix(faces[n][i], len(self.mods[n - 1]), len(self.mods[n]))
                                for i in range(n + 1)] for n in range(1, N + 1)]
        self.degens = [[as_matrix(degens[n][i], len(self.mods[n + 1]), len(self.mods[n]))
                        for i in range(n + 1)] for n in range(N)]
        self.group = group
        self.actions = None
        if group is not None:
            self.actions = [[as_matrix(a, len(self.mods[n]), len(self.mods[n]))
                             for a in actions[n]] if actions is not None else
                            [identity(len(self.mods[n])) for _ in group.elements]
                            for n in range(N + 1)]
        self.name = name
        if check:
            self.validate()

    @property
    def dim_bound(self) -> int:
        return len(self.mods) - 1

    def rank(self, n: int) -> int:
        return len(self.mods[n])

    def _eq(self, A, B, n) -> bool:
        return _mod_equal(A, B, self.mods[n])

    def validate(self) -> None:
        N = self.dim_bound
        F, S = self.faces, self.degens

        def mm(A, B):
            if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
                return zeros(A.shape[0], B.shape[1])
            return A.dot(B)

        for n in range(2, N + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    if not self._eq(mm(F[n - 1][i], F[n][j]), mm(F[n - 1][j - 1], F[n][i]), n - 2):
                        raise InvalidInput(f"face identity d{i}d{j} fails at level {n}")
        for n in range(N):
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = mm(F[n + 1][i], S[n][j])
                    if i == j or i == j + 1:
                        rhs = identity(self.rank(n))
                    elif i < j:
                        rhs = mm(S[n - 1][j - 1], F[n][i])
                    else:
                        rhs = mm(S[n - 1][j], F[n][i - 1])
                    if not self._eq(lhs, rhs, n):
                        raise InvalidInput(f"identity d{i}s{j} fails at level {n}")
        if self.group is not None:
            for n in range(N + 1):
                for g in self.group.elements:
                    A = self.actions[n][g]
                    if n >= 1:
                        for i in range(n + 1):
                            if not self._eq(mm(F[n][i], A), mm(self.actions[n - 1][g], F[n][i]), n - 1):
                                raise InvalidInput(f"action does not commute with d{i} at level {n}")

    # -- Moore complex --------------------------------------------------
    def moore_underline(self) -> ChainComplex:
        """Alternating-face complex A_0 <- A_1 <- ... <- A_N."""
        N = self.dim_bound
        diffs = {}
        for n in range(1, N + 1):
            D = zeros(self.rank(n - 1), self.rank(n))
            for i in range(n + 1):
                D = D + (-1) ** i * self.faces[n][i]
            diffs[n] = D
        return ChainComplex(0, N, {n: self.mods[n] for n in range(N + 1)}, diffs,
                            group=self.group,
                            actions=None if self.actions is None else
                            {n: self.actions[n] for n in range(N + 1)},
                            name=f"moore({self.name})", check=False)

    def homotopy(self, n: int):
        """π_n = H_n of the Moore complex (meaningful for n < dim_bound)."""
        return self.moore_underline().homology(n)

    # -- as a simplicial set ---------------------------------------------
    def element_count(self, n: int) -> int:
        c = 1
        for m in self.mods[n]:
            if not m:
                raise InvalidInput("cannot enumerate an infinite simplicial group")
            c *= m
        return c

    def to_gsset(self):
        """The underlying (G-)simplicial set of a finite simplicial abelian group."""
        from ..equivariant import GSimplicialSet
        N = self.dim_bound
        total = sum(self.element_count(n) for n in range(N + 1))
        cap = get_caps().simplices
        if total > cap:
            raise CapExceeded("simplices", cap, "simplicial abelian group elements")
        elems, radix = [], []
        for n in range(N + 1):
            mods = self.mods[n]
            E = np.array(list(itertools.product(*(range(m) for m in mods))), dtype=np.int64)
            E = E.reshape(self.element_count(n), len(mods))
            elems.append(E)
            w = [1] * len(mods)
            for k in range(len(mods) - 2, -1, -1):
                w[k] = w[k + 1] * mods[k + 1]
            radix.append(np.array(w, dtype=np.int64))

        def apply(M, n_from, n_to):
            E = elems[n_from]
            Mi = np.array(M, dtype=object).astype(np.int64)
            if E.shape[1] == 0 or Mi.shape[0] == 0:
                img = np.zeros((E.shape[0], Mi.shape[0]), dtype=np.int64)
            else:
                img = E.dot(Mi.T)
            m = np.array(self.mods[n_to], dtype=np.int64)
            if len(m):
                img = img % m
            return tuple(int(v) for v in (img.dot(radix[n_to]) if len(m) else
                                          np.zeros(E.shape[0], dtype=np.int64)))

        keys = [[tuple(int(v) for v in row) for row in elems[n]] for n in range(N + 1)]
        faces = [[()] * len(keys[0])]
        for n in range(1, N + 1):
            cols = [apply(self.faces[n][i], n, n - 1) for i in range(n + 1)]
            faces.append(list(zip(*cols)))
        degens = []
        for n in range(N):
            cols = [apply(self.degens[n][i], n, n + 1) for i in range(n + 1)]
            degens.append(list(zip(*cols)))
        X = SimplicialSet(keys, faces, degens, name=self.name or "A")
        G = self.group
        if G is None:
            return GSimplicialSet.trivial_action(X, FiniteGroup.trivial())
        act = [[apply(self.actions[n][g], n, n) for n in range(N + 1)] for g in G.elements]
        return GSimplicialSet(X, G, act)


def moore_underline(A: SimplicialAbelianGroup) -> ChainComplex:
    return A.moore_underline()


def _theta_star_matrix(summands, C: ChainComplex, n_src: int, n_tgt_summands, theta) -> np.ndarray:
    """Matrix of θ*: Γ_n -> Γ_m for θ: [m] -> [n]."""
    tgt_pos = {}
    off = 0
    for (s, k) in n_tgt_summands:
        tgt_pos[s] = off
        off += C.rank(k)
    rows = off
    cols = sum(C.rank(k) for (_, k) in summands)
    M = zeros(rows, cols)
    c0 = 0
    for (sigma, k) in summands:
        r = C.rank(k)
        phi = compose(sigma, theta)
        eps, mu = epi_mono(phi)
        j = max(eps) if eps else 0
        if j == k:
            p = tgt_pos[eps]
            for a in range(r):
                M[p + a, c0 + a] = 1
        elif j == k - 1 and mu == tuple(range(1, k + 1)) and C.rank(k - 1):
            p = tgt_pos[eps]
            M[p:p + C.rank(k - 1), c0:c0 + r] = C.d(k)
        c0 += r
    return M


def dold_kan_overline(C: ChainComplex, N: int) -> SimplicialAbelianGroup:
    """Γ(C) up to level N for a complex concentrated in non-negative degrees."""
    for k in C.degrees():
        if k < 0 and C.rank(k):
            raise InvalidInput("dold_kan_overline needs a complex with no negative-degree content")
    levels = []
    for n in range(N + 1):
        summ = []
        for k in range(0, min(n, C.hi) + 1):
            if C.rank(k):
                for s in surjections(n, k):
                    summ.append((s, k))
        levels.append(summ)
    mods = [[m for (s, k) in levels[n] for m in C.mod(k)] for n in range(N + 1)]
    faces = [None]
    for n in range(1, N + 1):
        faces.append([_theta_star_matrix(levels[n], C, n, levels[n - 1], coface(n, i))
                      for i in range(n + 1)])
    degens = []
    for n in range(N):
        degens.append([_theta_star_matrix(levels[n], C, n, levels[n + 1], codegeneracy(n, i))
                       for i in range(n + 1)])
    actions = None
    if C.group is not None:
        actions = []
        for n in range(N + 1):
            per = []
            for g in C.group.elements:
                r = len(mods[n])
                A = zeros(r, r)
                off = 0
                for (s, k) in levels[n]:
                    rk = C.rank(k)
                    if rk:
                        A[off:off + rk, off:off + rk] = C.actions[k][g]
                    off += rk
                per.append(A)
            actions.append(per)
    return SimplicialAbelianGroup(mods, faces, degens, group=C.group, actions=actions,
                                  name=f"Gamma({C.name})")


def free_abelianization(X, group: FiniteGroup | None = None, action=None) -> SimplicialAbelianGroup:
    """ZX: free abelian on the simplices, with the induced permutation action.

    ``X`` may be a GSimplicialSet (its action is used) or a SimplicialSet.
    """
    from ..equivariant import GSimplicialSet
    if isinstance(X, GSimplicialSet):
        group, action, X = X.group, X.action, X.space
    N = X.dim_bound
    cap = get_caps().simplices
    if sum(X.size(n) * X.size(max(n - 1, 0)) for n in range(N + 1)) > 50 * cap:
        raise CapExceeded("simplices", cap, "free abelianization matrices")
    mods = [[0] * X.size(n) for n in range(N + 1)]
    faces = [None]
    for n in range(1, N + 1):
        per = []
        for i in range(n + 1):
            M = zeros(X.size(n - 1), X.size(n))
            for x, f in enumerate(X.faces[n]):
                M[f[i], x] = 1
            per.append(M)
        faces.append(per)
    degens = []
    for n in range(N):
        per = []
        for i in range(n + 1):
            M = zeros(X.size(n + 1), X.size(n))
            for x, s in enumerate(X.degens[n]):
                M[s[i], x] = 1
            per.append(M)
        degens.append(per)
    actions = None
    if group is not None and action is not None:
        actions = []
        for n in range(N + 1):
            per = []
            for g in group.elements:
                M = zeros(X.size(n), X.size(n))
                for x, y in enumerate(action[g][n]):
                    M[y, x] = 1
                per.append(M)
            actions.append(per)
    return SimplicialAbelianGroup(mods, faces, degens, group=group, actions=actions,
                                  name=f"Z({X.name})", check=False)


def augmentation(X: SimplicialSet, n: int, x: int) -> np.ndarray:
    """The basis vector of x in (ZX)_n (a degree-1 element)."""
    v = zeros(X.size(n), 1)[:, 0]
    v[x] = 1
    return v


def degree_map(X: SimplicialSet, n: int) -> np.ndarray:
    """(ZX)_n -> Z, the sum of coefficients (induced by X -> point)."""
    M = zeros(1, X.size(n))
    M[0, :] = 1
    return M


def normalized_chains(X: SimplicialSet, top: int | None = None) -> ChainComplex:
    """Chains on nondegenerate simplices with d = Σ(-1)^i d_i (degenerate faces dropped)."""
    top = X.dim_bound if top is None else top
    pos = [{x: k for k, x in enumerate(X.nondegenerate[n])} for n in range(top + 1)]
    mods = {n: [0] * len(pos[n]) for n in range(top + 1)}
    diffs = {}
    for n in range(1, top + 1):
        D = zeros(len(pos[n - 1]), len(pos[n]))
        for x, c in pos[n].items():
            for i, f in enumerate(X.faces[n][x]):
                r = pos[n - 1].get(f)
                if r is not None:
                    D[r, c] += (-1) ** i
        diffs[n] = D
    return ChainComplex(0, top, mods, diffs, name=f"C({X.name})", check=False)


def simplicial_homology(X: SimplicialSet, upto: int) -> list:
    """Integral homology H_0..H_upto (needs upto < dim_bound)."""
    if upto >= X.dim_bound:
        raise InvalidInput("homology in degree n needs simplices of dimension n + 1")
    C = normalized_chains(X, upto + 1)
    return [C.homology(n).group for n in range(upto + 1)]


def reduced_homology_vanishes(X: SimplicialSet, upto: int) -> bool:
    H = simplicial_homology(X, upto)
    if H[0].torsion or H[0].rank != 1:
        return False
    return all(h.is_trivial for h in H[1:])
