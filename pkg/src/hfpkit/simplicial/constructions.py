"""Standard constructions: simplices, truncation, skeleta, coskeleta, products, nerves."""
from __future__ import annotations

import itertools

from ..caps import CapExceeded, InvalidInput, get_caps
from .groupoid import Groupoid
from .sset import SimplicialSet, TruncatedSimplicialSet


# ----------------------------------------------------------------------
# monotone maps [m] -> [n] as tuples
# ----------------------------------------------------------------------

def coface(n: int, i: int) -> tuple:
    """δ_i : [n-1] -> [n], skipping i."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(n: int, i: int) -> tuple:
    """σ_i : [n+1] -> [n], hitting i twice."""
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


def compose(theta: tuple, phi: tuple) -> tuple:
    """theta ∘ phi."""
    return tuple(theta[t] for t in phi)


def epi_mono(theta: tuple):
    """Factor a monotone map as mono ∘ epi; returns (epi, mono)."""
    image = sorted(set(theta))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[v] for v in theta), tuple(image)


def surjections(m: int, k: int):
    """Monotone surjections [m] ->> [k], lexicographic."""
    for cuts in itertools.combinations(range(1, m + 1), k):
        out, level, c = [], 0, set(cuts)
        for t in range(m + 1):
            if t in c:
                level += 1
            out.append(level)
        yield tuple(out)


def monotone_maps(m: int, n: int):
    """All monotone maps [m] -> [n]."""
    for c in itertools.combinations_with_replacement(range(n + 1), m + 1):
        yield tuple(c)


# ----------------------------------------------------------------------
# basic simplicial sets
# ----------------------------------------------------------------------

def standard_simplex(n: int, N: int) -> SimplicialSet:
    """Δⁿ up to dimension N; m-simplices are monotone maps [m] -> [n]."""
    levels = [list(monotone_maps(m, n)) for m in range(N + 1)]
    return SimplicialSet.build(
        levels,
        lambda m, i, k: k[:i] + k[i + 1:],
        lambda m, i, k: k[:i + 1] + k[i:],
        name=f"Delta{n}")


def boundary_simplex(n: int, N: int) -> SimplicialSet:
    """∂Δⁿ: non-surjective monotone maps into [n]."""
    levels = [[t for t in monotone_maps(m, n) if len(set(t)) < n + 1] for m in range(N + 1)]
    return SimplicialSet.build(
        levels,
        lambda m, i, k: k[:i] + k[i + 1:],
        lambda m, i, k: k[:i + 1] + k[i:],
        name=f"dDelta{n}")


def point(N: int) -> SimplicialSet:
    return discrete(1, N)


def discrete(k: int, N: int, labels=None) -> SimplicialSet:
    """k points, every higher simplex degenerate; keys are (label, dim)."""
    labels = list(labels) if labels is not None else [str(i) for i in range(k)]
    levels = [[(l, m) if m else l for l in labels] for m in range(N + 1)]
    return SimplicialSet.build(
        levels,
        lambda m, i, key: key[0] if m == 1 else (key[0], m - 1),
        lambda m, i, key: (key if m == 0 else key[0], m + 1),
        name="point" if k == 1 else f"discrete{k}")


def empty(N: int) -> SimplicialSet:
    return SimplicialSet([[] for _ in range(N + 1)], [[] for _ in range(N + 1)],
                         [[] for _ in range(N)], name="empty")


def circle(N: int) -> SimplicialSet:
    """Δ¹/∂Δ¹: one vertex, one nondegenerate edge."""
    T = TruncatedSimplicialSet([["v"], ["v'", "e"]], [[()], [(0, 0), (0, 0)]], [[(0,)]],
                               name="S1")
    X = skeleton(T, N)
    X.name = "S1"
    return X


# ----------------------------------------------------------------------
# truncation / skeleton / coskeleton
# ----------------------------------------------------------------------

def truncate(X: SimplicialSet, n: int) -> TruncatedSimplicialSet:
    if n > X.dim_bound or n < 0:
        raise InvalidInput(f"truncation level {n} exceeds dim_bound {X.dim_bound}")
    return TruncatedSimplicialSet.of(X, n)


def _normalize(T: SimplicialSet, theta: tuple, y: int, k: int):
    """Write theta^*(y) (y a nondegenerate k-simplex of T) as (surjection, nondeg)."""
    epi, mono = epi_mono(theta)
    w = T.theta_star(mono, k, y)
    j = len(mono) - 1
    ops, l, v = T.ez_decomposition(j, w)
    # w = s_{a1} s_{a2} ... s_{ar} v  ⇒  w = (σ_{ar} ∘ ... ∘ σ_{a1})^* v
    rho = tuple(range(j + 1))
    dim = j
    for i in ops:
        rho = compose(codegeneracy(dim - 1, i), rho)
        dim -= 1
    return compose(rho, epi), v, l


def skeleton(T: SimplicialSet, N: int) -> SimplicialSet:
    """sk_n T up to dimension N, n = T.dim_bound: freely add degeneracies."""
    n = T.dim_bound
    if N <= n:
        return SimplicialSet(T.keys[:N + 1], T.faces[:N + 1], T.degens[:N],
                             name=f"sk({T.name})", check=False)
    levels = [list(T.keys[m]) for m in range(n + 1)]
    nd = [(k, y) for k in range(n + 1) for y in T.nondegenerate[k]]
    for m in range(n + 1, N + 1):
        levels.append([("sk", sig, k, y) for k, y in nd for sig in surjections(m, k)])

    def to_key(m, sig, v, l):
        if m <= n:
            return T.keys[m][T.theta_star(sig, l, v)]
        return ("sk", sig, l, v)

    def from_key(m, key):
        if m <= n:
            x = T.index[m][key]
            ops, l, v = T.ez_decomposition(m, x)
            rho, dim = tuple(range(m + 1)), m
            for i in ops:
                rho = compose(codegeneracy(dim - 1, i), rho)
                dim -= 1
            return rho, v, l
        return key[1], key[3], key[2]

    def face(m, i, key):
        sig, v, l = from_key(m, key)
        s2, v2, l2 = _normalize(T, compose(sig, coface(m, i)), v, l)
        return to_key(m - 1, s2, v2, l2)

    def degen(m, i, key):
        sig, v, l = from_key(m, key)
        s2, v2, l2 = _normalize(T, compose(sig, codegeneracy(m, i)), v, l)
        return to_key(m + 1, s2, v2, l2)

    return SimplicialSet.build(levels, face, degen, name=f"sk{n}({T.name})")


def coskeleton(T: SimplicialSet, N: int, cap: int | None = None) -> SimplicialSet:
    """cosk_n T up to dimension N, n = T.dim_bound.

    Simplices above n are matching families (y_0, ..., y_m) of (m-1)-simplices
    with d_i y_j = d_{j-1} y_i for i < j.
    """
    n = T.dim_bound
    cap = get_caps().simplices if cap is None else cap
    if N <= n:
        return SimplicialSet(T.keys[:N + 1], T.faces[:N + 1], T.degens[:N],
                             name=f"cosk({T.name})", check=False)
    keys = [list(T.keys[m]) for m in range(n + 1)]
    faces = [list(T.faces[m]) for m in range(n + 1)]
    degens = [list(T.degens[m]) for m in range(n)]
    total = sum(len(k) for k in keys)
    for m in range(n + 1, N + 1):
        prev_faces = faces[m - 1]
        count_prev = len(keys[m - 1])
        # prefix index: first j faces of an (m-1)-simplex -> simplices
        prefix = [dict() for _ in range(m + 1)]
        for y in range(count_prev):
            f = prev_faces[y] if m - 1 >= 1 else ()
            for j in range(1, m + 1):
                prefix[j].setdefault(tuple(f[:j]), []).append(y)
        fams = []
        cur = [0] * (m + 1)

        def rec(j):
            nonlocal total
            if j == m + 1:
                fams.append(tuple(cur))
                total += 1
                if total > cap:
                    raise CapExceeded("simplices", cap, f"coskeleton level {m}")
                return
            if j == 0:
                cands = range(count_prev)
            else:
                want = tuple(prev_faces[cur[i]][j - 1] for i in range(j)) if m - 1 >= 1 else ()
                cands = prefix[j].get(want, ())
            for y in cands:
                cur[j] = y
                rec(j + 1)

        if m - 1 == 0:
            fams = [tuple(c) for c in itertools.product(range(count_prev), repeat=m + 1)]
            total += len(fams)
            if total > cap:
                raise CapExceeded("simplices", cap, f"coskeleton level {m}")
        else:
            rec(0)
        fams.sort()
        keys.append(fams)
        faces.append(fams)
        index = {f: i for i, f in enumerate(fams)}
        # degeneracies (m-1) -> m
        row = []
        for y in range(count_prev):
            f = prev_faces[y] if m - 1 >= 1 else ()
            ss = []
            for i in range(m):
                comp = []
                for j in range(m + 1):
                    if j < i:
                        comp.append(degens[m - 2][f[j]][i - 1])
                    elif j == i or j == i + 1:
                        comp.append(y)
                    else:
                        comp.append(degens[m - 2][f[j - 1]][i])
                ss.append(index[tuple(comp)])
            row.append(tuple(ss))
        degens.append(row)
    X = SimplicialSet(keys, faces, degens, name=f"cosk{n}({T.name})")
    return X


def postnikov(X: SimplicialSet, n: int) -> SimplicialSet:
    """P_n X = cosk_{n+1} tr_{n+1} X, up to X.dim_bound."""
    if n + 1 > X.dim_bound:
        raise InvalidInput(f"postnikov level {n} needs dim_bound >= {n + 1}")
    Y = coskeleton(truncate(X, n + 1), X.dim_bound)
    Y.name = f"P{n}({X.name})"
    return Y


def is_coskeletal(X: SimplicialSet, n: int) -> bool:
    """True when X ≅ cosk_n tr_n X in the stored range (by construction compare)."""
    if n >= X.dim_bound:
        return True
    for m in range(n + 1, X.dim_bound + 1):
        seen = set()
        for f in X.faces[m]:
            if f in seen:
                return False
            seen.add(f)
    C = coskeleton(truncate(X, n), X.dim_bound)
    return C.sizes == X.sizes


# ----------------------------------------------------------------------
# products and nerves
# ----------------------------------------------------------------------

def product(X: SimplicialSet, Y: SimplicialSet, N: int | None = None) -> SimplicialSet:
    N = min(X.dim_bound, Y.dim_bound) if N is None else N
    from ..caps import check_simplices
    check_simplices(sum(X.size(n) * Y.size(n) for n in range(N + 1)), "product")
    keys, faces, degens = [], [], []
    for n in range(N + 1):
        ny = Y.size(n)
        keys.append([(X.keys[n][a], Y.keys[n][b]) for a in range(X.size(n)) for b in range(ny)])
        if n >= 1:
            nyp = Y.size(n - 1)
            FX, FY = X.faces[n], Y.faces[n]
            faces.append([tuple(FX[a][i] * nyp + FY[b][i] for i in range(n + 1))
                          for a in range(X.size(n)) for b in range(ny)])
        else:
            faces.append([() for _ in range(X.size(0) * ny)])
        if n < N:
            nyn = Y.size(n + 1)
            SX, SY = X.degens[n], Y.degens[n]
            degens.append([tuple(SX[a][i] * nyn + SY[b][i] for i in range(n + 1))
                           for a in range(X.size(n)) for b in range(ny)])
    return SimplicialSet(keys, faces, degens, name=f"{X.name}x{Y.name}")


def product_index(Y: SimplicialSet, n: int, a: int, b: int) -> int:
    """Id of the pair (a, b) in product(X, Y)."""
    return a * Y.size(n) + b


def nerve(C: Groupoid, N: int) -> SimplicialSet:
    """Nerve of a groupoid: n-simplices are composable strings (f_1, ..., f_n)."""
    levels = [list(range(len(C.objects)))]
    by_src: dict = {}
    for f, (s, t) in enumerate(C.morphisms):
        by_src.setdefault(s, []).append(f)
    total = len(levels[0])
    cap = get_caps().simplices
    if N >= 1:
        levels.append([(f,) for f in range(len(C.morphisms))])
        total += len(levels[1])
    for n in range(2, N + 1):
        nxt = [chain + (g,) for chain in levels[n - 1] for g in by_src.get(C.tgt(chain[-1]), ())]
        total += len(nxt)
        if total > cap:
            raise CapExceeded("simplices", cap, "nerve")
        levels.append(nxt)

    def face(n, i, ch):
        if n == 1:
            return C.tgt(ch[0]) if i == 0 else C.src(ch[0])
        if i == 0:
            return ch[1:]
        if i == n:
            return ch[:-1]
        return ch[:i - 1] + (C.then(ch[i - 1], ch[i]),) + ch[i + 1:]

    def degen(n, i, ch):
        if n == 0:
            return (C.identities[ch],)
        obj = C.src(ch[i]) if i < n else C.tgt(ch[-1])
        return ch[:i] + (C.identities[obj],) + ch[i:]

    labels = [levels[0]] + levels[1:]
    return SimplicialSet.build(labels, face, degen, name="N(C)")
