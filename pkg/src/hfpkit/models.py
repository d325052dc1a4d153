"""Certified models of homotopy 1- and 2-types with group actions.

Every constructor returns a ``(GSimplicialSet, meta)`` pair.  The metadata
knows the higher homotopy of the model by construction and provides what
the obstruction pipeline needs:

* ``pi_module(k, f)``: π_k as a G-module, where the action may depend on a
  partial equivariant map f from EG (through the π₁-twist it selects);
* ``sphere_class(k, faces)``: the class in π_k of the boundary of a
  would-be (k+1)-simplex whose faces are the given k-simplices;
* ``add_cochain(k, f, a)``: the partial map on EG's k-simplices moved by a
  normalized k-cochain a with values in π_k.

Supported models: nerves of groupoids (π_k = 0 for k ≥ 2), Eilenberg–MacLane
spaces from the Dold–Kan construction, the twisted 2-type K(M,2) ×_κ BΠ and
products of these.
"""
from __future__ import annotations

import itertools

import numpy as np

from .caps import InvalidInput, check_simplices
from .equivariant import (Extension, GSimplicialSet, bg_with_action, nerve_with_action,
                          product_action)
from .groups import FiniteGroup, GroupAction
from .homalg.chain import concentrated
from .homalg.cohomology import BarIndex
from .homalg.dold_kan import dold_kan_overline
from .homalg.modules import GModule
from .simplicial.constructions import coskeleton, nerve
from .simplicial.groupoid import Groupoid
from .simplicial.sset import SimplicialSet


def _zero_module(G: FiniteGroup) -> GModule:
    return GModule(G, (), None, name="0")


def _eg_tuple(G: FiniteGroup, n: int, x: int) -> tuple:
    """Entries (g_0, ..., g_n) of the EG simplex with id x."""
    k = G.order
    out = []
    for _ in range(n + 1):
        out.append(x % k)
        x //= k
    return tuple(reversed(out))


def _differences(G: FiniteGroup, t) -> tuple:
    return tuple(G.mul(G.inv(t[i]), t[i + 1]) for i in range(len(t) - 1))


class ModelMeta:
    """Base metadata: subclasses override what they support."""
    kind = "generic"
    coskeletal = 2
    kan_certified = True
    top_homotopy = 2

    def pi_module(self, k: int, G: FiniteGroup, f=None) -> GModule:
        return _zero_module(G)

    def pi_rank(self, k: int) -> int:
        return 0

    def sphere_class(self, k: int, faces) -> tuple:
        return ()

    def add_cochain(self, k: int, G: FiniteGroup, f_level: tuple, a) -> tuple:
        if any(any(v) for v in a.values()):
            raise InvalidInput(f"{self.kind} model has no π_{k} to move by")
        return f_level

    def to_json(self) -> dict:
        return {"kind": self.kind, "coskeletal": self.coskeletal}


class NerveMeta(ModelMeta):
    """Nerve of a groupoid: 2-coskeletal, Kan, π_k = 0 for k ≥ 2."""
    kind = "nerve"
    top_homotopy = 1


class EMMeta(ModelMeta):
    """K(M, n) = Γ(M[n]); n-simplices are the elements of M."""
    kind = "eilenberg-maclane"

    def __init__(self, X: GSimplicialSet, M: GModule, n: int):
        self.X, self.M, self.n = X, M, n
        self.coskeletal = n + 1
        self.top_homotopy = n

    def pi_module(self, k, G, f=None):
        return self.M if k == self.n else _zero_module(G)

    def pi_rank(self, k):
        return self.M.rank if k == self.n else 0

    def sphere_class(self, k, faces):
        if k != self.n:
            return ()
        mods = self.M.mods
        keys = self.X.space.keys[k]
        tot = [0] * len(mods)
        for i, y in enumerate(faces):
            s = -1 if i % 2 else 1
            tot = [t + s * int(c) for t, c in zip(tot, keys[y])]
        return tuple(t % m if m else t for t, m in zip(tot, mods))

    def add_cochain(self, k, G, f_level, a):
        if k != self.n:
            return super().add_cochain(k, G, f_level, a)
        S = self.X.space
        mods = self.M.mods
        out = list(f_level)
        for x in range(len(f_level)):
            t = _eg_tuple(G, k, x)
            h = _differences(G, t)
            v = a.get(h)
            if v is None or not any(v):
                continue
            gv = self.M.act(t[0], v)
            y = S.keys[k][f_level[x]]
            new = tuple((int(c) + int(d)) % m if m else int(c) + int(d)
                        for c, d, m in zip(y, gv, mods))
            out[x] = S.index[k][new]
        return tuple(out)

    def to_json(self):
        return {"kind": self.kind, "degree": self.n, "module": self.M.to_json()}


class TwistedMeta(ModelMeta):
    """K(M,2) ×_κ BΠ with G acting trivially; π₁ = Π, π₂ = M, k-invariant κ."""
    kind = "twisted-2-type"
    coskeletal = 3

    def __init__(self, X: GSimplicialSet, Pi: FiniteGroup, M: GModule, kappa):
        self.X, self.Pi, self.M, self.kappa = X, Pi, M, kappa

    def psi(self, G: FiniteGroup, f) -> tuple:
        """G -> Π read off the edges (e, g) of a map from EG."""
        keys = self.X.space.keys[1]
        e = G.identity
        return tuple(keys[f[1][e * G.order + g]][0][0] for g in G.elements)

    def pi_rank(self, k):
        return self.M.rank if k == 2 else 0

    def pi_module(self, k, G, f=None):
        if k != 2:
            return _zero_module(G)
        if f is None:
            raise InvalidInput("the π₂ action of a twisted model depends on the map")
        psi = self.psi(G, f)
        return GModule(G, self.M.mods, [self.M.action[psi[g]] for g in G.elements],
                       name=f"{self.M.name}_psi")

    def sphere_class(self, k, faces):
        if k != 2:
            return ()
        keys = self.X.space.keys[2]
        y0, y1, y2, y3 = (keys[y] for y in faces)
        g1, g2 = y3[0]
        g3 = y0[0][1]
        cs = [np.array(y[1][0], dtype=object) for y in (y0, y1, y2, y3)]
        o = self.M.action[g1].dot(cs[0]) - cs[1] + cs[2] - cs[3] - _kappa_value(
            self.Pi, self.M, self.kappa, (g1, g2, g3))
        return tuple(int(v) % m if m else int(v) for v, m in zip(o, self.M.mods))

    def add_cochain(self, k, G, f_level, a):
        if k != 2:
            return super().add_cochain(k, G, f_level, a)
        S = self.X.space
        mods = self.M.mods
        out = list(f_level)
        for x in range(len(f_level)):
            h = _differences(G, _eg_tuple(G, 2, x))
            v = a.get(h)
            if v is None or not any(v):
                continue
            b, c = S.keys[2][f_level[x]]
            new = tuple((int(p) + int(q)) % m for p, q, m in zip(c[0], v, mods))
            out[x] = S.index[2][(b, (new,))]
        return tuple(out)

    def to_json(self):
        return {"kind": self.kind, "pi1": self.Pi.order, "pi2": list(self.M.mods)}


class ProductMeta(ModelMeta):
    """Product of two certified models with the diagonal action."""
    kind = "product"

    def __init__(self, X: GSimplicialSet, A: GSimplicialSet, B: GSimplicialSet, ma, mb):
        self.X, self.A, self.B, self.ma, self.mb = X, A, B, ma, mb
        self.coskeletal = max(ma.coskeletal, mb.coskeletal)
        self.top_homotopy = max(ma.top_homotopy, mb.top_homotopy)

    def _split(self, f):
        nb = [self.B.space.size(n) for n in range(len(f))]
        fa = tuple(tuple(v // nb[n] for v in f[n]) for n in range(len(f)))
        fb = tuple(tuple(v % nb[n] for v in f[n]) for n in range(len(f)))
        return fa, fb

    def pi_module(self, k, G, f=None):
        fa, fb = self._split(f) if f is not None else (None, None)
        return self.ma.pi_module(k, G, fa).direct_sum(self.mb.pi_module(k, G, fb))

    def sphere_class(self, k, faces):
        nb = self.B.space.size(k)
        return (tuple(self.ma.sphere_class(k, [y // nb for y in faces])) +
                tuple(self.mb.sphere_class(k, [y % nb for y in faces])))

    def pi_rank(self, k):
        return self.ma.pi_rank(k) + self.mb.pi_rank(k)

    def add_cochain(self, k, G, f_level, a):
        nb = self.B.space.size(k)
        ra = self.ma.pi_rank(k)
        fa = tuple(v // nb for v in f_level)
        fb = tuple(v % nb for v in f_level)
        na = self.ma.add_cochain(k, G, fa, {h: v[:ra] for h, v in a.items()})
        nbv = self.mb.add_cochain(k, G, fb, {h: v[ra:] for h, v in a.items()})
        return tuple(x * nb + y for x, y in zip(na, nbv))

    def to_json(self):
        return {"kind": self.kind, "factors": [self.ma.to_json(), self.mb.to_json()]}


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def bg_model(action: GroupAction, N: int = 3):
    """BΠ with G acting through automorphisms of Π."""
    return bg_with_action(action, N), NerveMeta()


def discrete_model(G: FiniteGroup, perms, N: int = 2):
    """A finite G-set as a constant simplicial set."""
    k = len(perms[0]) if perms else 0
    C = Groupoid(list(range(k)), [(i, i) for i in range(k)],
                 [[i if i == j else None for j in range(k)] for i in range(k)])
    return nerve_with_action(C, G, perms, perms, N), NerveMeta()


def disjoint_union(parts, perm_of_parts, G: FiniteGroup, N: int):
    """Copies of simplicial sets permuted by G.

    ``parts`` are (GSimplicialSet, meta) pairs over the trivial-or-same group
    that are mutually isomorphic when permuted; ``perm_of_parts[g]`` sends
    part i to part perm[g][i], and g acts inside a part by the part's own action.
    """
    spaces = [p[0].space for p in parts]
    offsets = []
    for n in range(N + 1):
        off, row = 0, []
        for S in spaces:
            row.append(off)
            off += S.size(n)
        offsets.append(row)
    keys, faces, degens = [], [], []
    for n in range(N + 1):
        keys.append([(i, k) for i, S in enumerate(spaces) for k in S.keys[n]])
        if n >= 1:
            faces.append([tuple(offsets[n - 1][i] + y for y in S.faces[n][x])
                          for i, S in enumerate(spaces) for x in range(S.size(n))])
        else:
            faces.append([() for _ in keys[0]])
        if n < N:
            degens.append([tuple(offsets[n + 1][i] + y for y in S.degens[n][x])
                           for i, S in enumerate(spaces) for x in range(S.size(n))])
    X = SimplicialSet(keys, faces, degens, name="union")
    act = []
    for g in G.elements:
        per = []
        for n in range(N + 1):
            row = []
            for i, (P, _) in enumerate(parts):
                j = perm_of_parts[g][i]
                for x in range(P.space.size(n)):
                    row.append(offsets[n][j] + P.action[g][n][x])
            per.append(tuple(row))
        act.append(per)
    metas = {type(m) for _, m in parts}
    if metas != {NerveMeta}:
        raise InvalidInput("disjoint unions are certified for nerve models only")
    return GSimplicialSet(X, G, act), NerveMeta()


def em_model(M: GModule, n: int, N: int | None = None):
    """K(M, n) from the Dold–Kan construction, with the module action."""
    N = n + 2 if N is None else N
    A = dold_kan_overline(concentrated(M, n), N)
    X = A.to_gsset()
    return X, EMMeta(X, M, n)


def _kappa_value(Pi: FiniteGroup, M: GModule, kappa, t) -> np.ndarray:
    r = M.rank
    j = BarIndex(Pi, 3).index(t)
    if j is None:
        return np.zeros(r, dtype=object)
    return np.array([int(v) for v in kappa[j * r:(j + 1) * r]], dtype=object)


def _faces3(n: int) -> list:
    return list(itertools.combinations(range(n + 1), 3))


def twisted_model(Pi: FiniteGroup, M: GModule, kappa, G: FiniteGroup, N: int = 4):
    """The 2-type with π₁ = Π, π₂ = M and k-invariant κ ∈ Z³(Π, M); G acts trivially.

    An n-simplex is (b, c): b = (g_1..g_n) a simplex of BΠ and c assigns an
    element of M to each 2-face of [n] (zero on degenerate ones), subject to
    δ_b c = b*κ on every 3-face.
    """
    if not M.is_finite:
        raise InvalidInput("twisted model needs a finite module")
    elems = [tuple(v) for v in itertools.product(*(range(m) for m in M.mods))]
    zero = tuple(0 for _ in M.mods)
    check_simplices(Pi.order ** 3 * len(elems) ** 4, "twisted model")

    def chain_face(b, i):
        n = len(b)
        if n == 1:
            return ()
        if i == 0:
            return b[1:]
        if i == n:
            return b[:-1]
        return b[:i - 1] + (Pi.mul(b[i - 1], b[i]),) + b[i + 1:]

    def seg(b, i, j):
        r = Pi.identity
        for x in b[i:j]:
            r = Pi.mul(r, x)
        return r

    def ok(b, c, n):
        tri = {t: k for k, t in enumerate(itertools.combinations(range(n + 1), 3))}
        for (i, j, k, l) in itertools.combinations(range(n + 1), 4):
            g1, g2, g3 = seg(b, i, j), seg(b, j, k), seg(b, k, l)
            v = (M.action[g1].dot(np.array(c[tri[(j, k, l)]], dtype=object))
                 - np.array(c[tri[(i, k, l)]], dtype=object)
                 + np.array(c[tri[(i, j, l)]], dtype=object)
                 - np.array(c[tri[(i, j, k)]], dtype=object)
                 - _kappa_value(Pi, M, kappa, (g1, g2, g3)))
            if any(int(x) % m if m else int(x) for x, m in zip(v, M.mods)):
                return False
        return True

    levels = []
    for n in range(4):
        tris = list(itertools.combinations(range(n + 1), 3))
        lev = []
        for b in itertools.product(Pi.elements, repeat=n):
            for c in itertools.product(elems, repeat=len(tris)):
                c = tuple(c)
                if n == 3 and not ok(b, c, n):
                    continue
                lev.append((tuple(b), c))
        levels.append(lev)

    def restrict_c(c, n_from, theta):
        tris = {t: k for k, t in enumerate(itertools.combinations(range(n_from + 1), 3))}
        m = len(theta) - 1
        out = []
        for t in itertools.combinations(range(m + 1), 3):
            img = tuple(theta[v] for v in t)
            out.append(c[tris[img]] if len(set(img)) == 3 else zero)
        return tuple(out)

    def face(n, i, key):
        b, c = key
        theta = tuple(v for v in range(n + 1) if v != i)
        return (chain_face(b, i), restrict_c(c, n, theta))

    def degen(n, i, key):
        b, c = key
        theta = tuple(range(i + 1)) + tuple(range(i, n + 1))
        nb = b[:i] + (Pi.identity,) + b[i:]
        return (nb, restrict_c(c, n, theta))

    # collapsed triangles of a degeneracy carry zero
    T = SimplicialSet.build(levels, face, degen, name="K2xB", check=True)
    X = coskeleton(T, N) if N > 3 else T
    X.name = f"K({M.name},2)x_k B{Pi.name}"
    ident = tuple(tuple(range(X.size(n))) for n in range(X.dim_bound + 1))
    GX = GSimplicialSet(X, G, [ident] * G.order, check=False)
    return GX, TwistedMeta(GX, Pi, M, kappa)


def product_model(a, b, N: int | None = None):
    A, ma = a
    B, mb = b
    X = product_action(A, B, N)
    return X, ProductMeta(X, A, B, ma, mb)


def p1_model(E: Extension, N: int = 2):
    """The G-space EE/K for an extension 1 -> K -> E -> G -> 1.

    Its homotopy quotient has fundamental group E, it is a model of BK, and
    G = E/K acts because K acts trivially.  Built as the nerve of the groupoid
    with objects G and morphisms (a, y): a -> proj(y).
    """
    T, Q, proj = E.total, E.quotient, E.projection
    reps = {}
    for t in T.elements:
        reps.setdefault(proj[t], t)
    mors = [(a, proj[y]) for a in Q.elements for y in T.elements]
    idx = {(a, y): a * T.order + y for a in Q.elements for y in T.elements}
    comp = []
    for a in Q.elements:
        for y in T.elements:
            b = proj[y]
            row = [None] * len(mors)
            for z in T.elements:
                c = idx[(b, z)]
                row[c] = idx[(a, T.mul(T.mul(y, T.inv(reps[b])), z))]
            comp.append(row)
    labels = [f"{Q.labels[a]}>{T.labels[y]}" for a in Q.elements for y in T.elements]
    C = Groupoid([Q.labels[a] for a in Q.elements], mors, comp, morphism_labels=labels,
                 check=False)
    objs, morph = [], []
    for g in Q.elements:
        mor_img = [0] * len(mors)
        for a in Q.elements:
            ga = Q.mul(g, a)
            shift = T.mul(reps[ga], T.inv(reps[a]))
            for y in T.elements:
                mor_img[idx[(a, y)]] = idx[(ga, T.mul(shift, y))]
        objs.append([Q.mul(g, a) for a in Q.elements])
        morph.append(mor_img)
    X = nerve_with_action(C, Q, objs, morph, N)
    X.space.name = "P1"
    return X, NerveMeta()
