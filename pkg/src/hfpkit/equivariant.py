"""Finite groups acting on simplicial sets.

Actions are stored as tables ``act[g][n][x]``: the image of the n-simplex x
under g.  Constructions here produce :class:`GSimplicialSet` values or plain
:class:`SimplicialSet` values together with explicit projection maps.
"""
from __future__ import annotations

from dataclasses import dataclass

from .caps import CapExceeded, InvalidInput, check_order, check_simplices, get_caps
from .groups import FiniteGroup, GroupAction, extend_homomorphism, is_homomorphism
from .simplicial.constructions import coskeleton, nerve, point, postnikov, product
from .simplicial.groupoid import Groupoid
from .simplicial.homotopy import check_kan, edge_path_pi1, pi0, spanning_tree, sub_simplicial_set
from .simplicial.sset import SimplicialMap, SimplicialSet


class GSimplicialSet:
    """A simplicial set with a left action of a finite group."""

    def __init__(self, space: SimplicialSet, group: FiniteGroup, action, check: bool = True):
        self.space = space
        self.group = group
        self.action = tuple(tuple(tuple(int(y) for y in level) for level in per) for per in action)
        if check:
            self.validate()

    @classmethod
    def trivial_action(cls, X: SimplicialSet, G: FiniteGroup) -> "GSimplicialSet":
        ident = tuple(tuple(range(X.size(n))) for n in range(X.dim_bound + 1))
        return cls(X, G, [ident] * G.order, check=False)

    @property
    def dim_bound(self) -> int:
        return self.space.dim_bound

    def act(self, g: int, n: int, x: int) -> int:
        return self.action[g][n][x]

    @property
    def inverse(self) -> tuple:
        G = self.group
        return tuple(G.inv(g) for g in G.elements)

    def validate(self) -> None:
        X, G = self.space, self.group
        N = X.dim_bound
        if len(self.action) != G.order:
            raise InvalidInput("action needs one table per group element")
        for g in G.elements:
            a = self.action[g]
            if len(a) != N + 1:
                raise InvalidInput(f"action of {G.labels[g]!r} must cover dimensions 0..{N}")
            for n in range(N + 1):
                if sorted(a[n]) != list(range(X.size(n))):
                    raise InvalidInput(f"{G.labels[g]!r} is not a bijection in dimension {n}")
            for n in range(1, N + 1):
                for x in range(X.size(n)):
                    if tuple(a[n - 1][y] for y in X.faces[n][x]) != X.faces[n][a[n][x]]:
                        raise InvalidInput(f"{G.labels[g]!r} does not commute with faces")
            for n in range(N):
                for x in range(X.size(n)):
                    if tuple(a[n + 1][y] for y in X.degens[n][x]) != X.degens[n][a[n][x]]:
                        raise InvalidInput(f"{G.labels[g]!r} does not commute with degeneracies")
        e = G.identity
        if any(self.action[e][n] != tuple(range(X.size(n))) for n in range(N + 1)):
            raise InvalidInput("identity must act trivially")
        for g in G.elements:
            for h in G.elements:
                gh = self.action[G.mul(g, h)]
                ag, ah = self.action[g], self.action[h]
                for n in range(N + 1):
                    if any(gh[n][x] != ag[n][ah[n][x]] for x in range(X.size(n))):
                        raise InvalidInput(
                            f"action is not a homomorphism at ({G.labels[g]}, {G.labels[h]})")

    def orbit(self, n: int, x: int) -> tuple:
        return tuple(sorted({self.action[g][n][x] for g in self.group.elements}))

    def stabilizer(self, n: int, x: int) -> frozenset:
        return frozenset(g for g in self.group.elements if self.action[g][n][x] == x)

    def restrict(self, members) -> "GSimplicialSet":
        """Restriction of the action to a subgroup."""
        H, emb = self.group.subgroup_as_group(members)
        return GSimplicialSet(self.space, H, [self.action[g] for g in emb], check=False)

    def through(self, G: FiniteGroup, hom) -> "GSimplicialSet":
        """Pull the action back along a homomorphism G -> self.group."""
        if not is_homomorphism(G, self.group, hom):
            raise InvalidInput("pullback needs a homomorphism")
        return GSimplicialSet(self.space, G, [self.action[hom[g]] for g in G.elements],
                              check=False)

    # -- json -----------------------------------------------------------
    def to_json(self) -> dict:
        X, G = self.space, self.group
        ids = [X.ids(n) for n in range(X.dim_bound + 1)]
        d = X.to_json()
        d["group"] = G.to_json()
        d["action"] = {G.labels[g]: [[ids[n][self.action[g][n][x]] for x in
                                      sorted(range(X.size(n)), key=lambda x: ids[n][x])]
                                     for n in range(X.dim_bound + 1)]
                       for g in G.elements}
        return d

    @classmethod
    def from_json(cls, d: dict, name: str = "") -> "GSimplicialSet":
        X = SimplicialSet.from_json(d, name=name)
        G = FiniteGroup.from_json(d["group"], name=f"{name}.group")
        ids = [X.ids(n) for n in range(X.dim_bound + 1)]
        pos = [{k: i for i, k in enumerate(l)} for l in ids]
        try:
            act = []
            for g in G.elements:
                per = []
                for n in range(X.dim_bound + 1):
                    order = sorted(range(X.size(n)), key=lambda x: ids[n][x])
                    row = [0] * X.size(n)
                    for x, y in zip(order, d["action"][G.labels[g]][n]):
                        row[x] = pos[n][y]
                    per.append(row)
                act.append(per)
        except (KeyError, IndexError, TypeError) as exc:
            raise InvalidInput(f"malformed action in {name!r}: {exc}") from None
        return cls(X, G, act)


# ----------------------------------------------------------------------
# EG and BG
# ----------------------------------------------------------------------

def _check_level_sizes(G: FiniteGroup, N: int, what: str) -> None:
    check_simplices(sum(G.order ** (n + 1) for n in range(N + 1)), what)


def eg_space(G: FiniteGroup, N: int) -> GSimplicialSet:
    """EG: n-simplices are (n+1)-tuples of elements; G acts diagonally on the left."""
    _check_level_sizes(G, N, f"E{G.name}")
    import itertools
    levels = [list(itertools.product(G.elements, repeat=n + 1)) for n in range(N + 1)]
    X = SimplicialSet.build(
        levels,
        lambda n, i, t: t[:i] + t[i + 1:],
        lambda n, i, t: t[:i + 1] + t[i:],
        name=f"E{G.name}", check=False)
    X.keys = tuple(tuple(tuple(G.labels[g] for g in t) for t in l) for l in levels)
    act = []
    for g in G.elements:
        row = G.table[g]
        per = []
        for n in range(N + 1):
            # tuples are in product order: index = Σ t_i |G|^(n-i)
            per.append(tuple(_tuple_index(G.order, [row[a] for a in t]) for t in levels[n]))
        act.append(per)
    return GSimplicialSet(X, G, act, check=False)


def _tuple_index(k: int, t) -> int:
    i = 0
    for a in t:
        i = i * k + a
    return i


def bg_space(G: FiniteGroup, N: int) -> SimplicialSet:
    """BG as the nerve of the one-object groupoid; an n-simplex is (g_1, ..., g_n)."""
    _check_level_sizes(G, N - 1, f"B{G.name}")
    X = nerve(Groupoid.from_group(G), N)
    X.keys = tuple(tuple(k if n == 0 else tuple(G.labels[g] for g in k) for k in l)
                   for n, l in enumerate(X.keys))
    X.name = f"B{G.name}"
    return X


def eg_to_bg(G: FiniteGroup, N: int, E: GSimplicialSet | None = None,
             B: SimplicialSet | None = None) -> SimplicialMap:
    """(g_0, ..., g_n) ↦ (g_0⁻¹g_1, ..., g_{n-1}⁻¹g_n)."""
    E = E or eg_space(G, N)
    B = B or bg_space(G, N)
    maps = [tuple(0 for _ in range(E.space.size(0)))]
    for n in range(1, N + 1):
        row = []
        for t in _tuples(G, n):
            ch = tuple(G.labels[G.mul(G.inv(t[i]), t[i + 1])] for i in range(n))
            row.append(B.index[n][ch])
        maps.append(tuple(row))
    return SimplicialMap(E.space, B, maps, check=False)


def _tuples(G: FiniteGroup, n: int):
    import itertools
    return itertools.product(G.elements, repeat=n + 1)


def eg_pullback(G: FiniteGroup, Q: FiniteGroup, q, N: int) -> GSimplicialSet:
    """EQ with G acting through a surjection q: G -> Q."""
    if not is_homomorphism(G, Q, q) or len(set(q)) != Q.order:
        raise InvalidInput("eg_pullback needs a surjective homomorphism")
    return eg_space(Q, N).through(G, q)


def bg_with_action(action: GroupAction, N: int) -> GSimplicialSet:
    """BA with G acting entrywise through automorphisms of A."""
    A = action.A
    B = bg_space(A, N)
    act = []
    for g in action.G.elements:
        img = action.images[g]
        per = [tuple(range(B.size(0)))]
        for n in range(1, N + 1):
            row = []
            for k in B.keys[n]:
                ch = tuple(A.labels[img[A.index(l)]] for l in k)
                row.append(B.index[n][ch])
            per.append(tuple(row))
        act.append(per)
    return GSimplicialSet(B, action.G, act, check=False)


# ----------------------------------------------------------------------
# quotients and fixed points
# ----------------------------------------------------------------------

def quotient(X: GSimplicialSet):
    """Levelwise orbit set X/G and the projection X -> X/G.

    Each orbit is represented by its smallest simplex id and keeps that
    simplex's key.
    """
    S = X.space
    N = S.dim_bound
    orb_of = []
    reps = []
    for n in range(N + 1):
        o = [-1] * S.size(n)
        r = []
        for x in range(S.size(n)):
            if o[x] >= 0:
                continue
            k = len(r)
            r.append(x)
            for g in X.group.elements:
                o[X.action[g][n][x]] = k
        orb_of.append(o)
        reps.append(r)
    keys = [[S.keys[n][x] for x in reps[n]] for n in range(N + 1)]
    faces = [[()] * len(reps[0])] + [
        [tuple(orb_of[n - 1][y] for y in S.faces[n][x]) for x in reps[n]] for n in range(1, N + 1)]
    degens = [[tuple(orb_of[n + 1][y] for y in S.degens[n][x]) for x in reps[n]]
              for n in range(N)]
    Q = SimplicialSet(keys, faces, degens, name=f"{S.name}/{X.group.name}", check=False)
    proj = SimplicialMap(S, Q, [tuple(o) for o in orb_of], check=False)
    return Q, proj


def fixed_subcomplex(X: GSimplicialSet, members=None) -> SimplicialSet:
    """Simplices fixed by every element of the subgroup (default: all of G)."""
    H = list(X.group.elements) if members is None else sorted(set(members))
    if not X.group.is_subgroup(H):
        raise InvalidInput("fixed_subcomplex needs a subgroup")
    keep = [[x for x in range(X.space.size(n)) if all(X.action[h][n][x] == x for h in H)]
            for n in range(X.dim_bound + 1)]
    Y = sub_simplicial_set(X.space, keep)
    Y.name = f"{X.space.name}^H"
    return Y


def is_free_action(X: GSimplicialSet):
    """(True, None) when no nonidentity element fixes a simplex, else (False, (g, n, x))."""
    G = X.group
    for n in range(X.dim_bound + 1):
        for x in range(X.space.size(n)):
            for g in G.elements:
                if g != G.identity and X.action[g][n][x] == x:
                    return False, (g, n, x)
    return True, None


def product_action(X: GSimplicialSet, Y: GSimplicialSet, N: int | None = None):
    """The product space with the diagonal action."""
    if X.group is not Y.group and X.group.table != Y.group.table:
        raise InvalidInput("product_action needs the same acting group")
    P = product(X.space, Y.space, N)
    N = P.dim_bound
    act = []
    for g in X.group.elements:
        ax, ay = X.action[g], Y.action[g]
        per = []
        for n in range(N + 1):
            ny = Y.space.size(n)
            per.append(tuple(ax[n][a] * ny + ay[n][b]
                             for a in range(X.space.size(n)) for b in range(ny)))
        act.append(per)
    return GSimplicialSet(P, X.group, act, check=False)


@dataclass
class HomotopyQuotient:
    space: SimplicialSet          # (X × EG)/G
    to_bg: SimplicialMap          # induced by the projection X × EG -> EG -> BG
    total: GSimplicialSet         # X × EG with the diagonal action
    quotient_map: SimplicialMap   # X × EG -> (X × EG)/G
    bg: SimplicialSet


def homotopy_quotient(X: GSimplicialSet, N: int | None = None) -> HomotopyQuotient:
    G = X.group
    N = X.dim_bound if N is None else N
    E = eg_space(G, N)
    check_simplices(sum(X.space.size(n) * G.order ** (n + 1) for n in range(N + 1)),
                    "homotopy quotient")
    T = product_action(X, E, N)
    Q, proj = quotient(T)
    B = bg_space(G, N)
    q = eg_to_bg(G, N, E, B)
    maps = []
    for n in range(N + 1):
        ne = E.space.size(n)
        row = [0] * Q.size(n)
        seen = [False] * Q.size(n)
        for z in range(T.space.size(n)):
            o = proj.maps[n][z]
            if not seen[o]:
                seen[o] = True
                row[o] = q.maps[n][z % ne]
        maps.append(tuple(row))
    to_bg = SimplicialMap(Q, B, maps, check=False)
    Q.name = f"({X.space.name})h{G.name}"
    return HomotopyQuotient(Q, to_bg, T, proj, B)


def postnikov_action(X: GSimplicialSet, n: int) -> GSimplicialSet:
    """The induced action on P_n X = cosk_{n+1} tr_{n+1} X."""
    P = postnikov(X.space, n)
    return _extend_to_coskeleton(X, P, n + 1)


def _extend_to_coskeleton(X: GSimplicialSet, C: SimplicialSet, k: int) -> GSimplicialSet:
    """Extend an action on levels ≤ k to a coskeleton whose higher keys are face families."""
    act = []
    for g in X.group.elements:
        per = [X.action[g][m] for m in range(min(k, C.dim_bound) + 1)]
        for m in range(k + 1, C.dim_bound + 1):
            prev = per[m - 1]
            per.append(tuple(C.index[m][tuple(prev[y] for y in fam)] for fam in C.keys[m]))
        act.append(tuple(per))
    return GSimplicialSet(C, X.group, act, check=False)


# ----------------------------------------------------------------------
# fundamental groups
# ----------------------------------------------------------------------

def vertex_paths(X: SimplicialSet, basepoint: int) -> dict:
    """Edge path [(edge, ±1), ...] from the basepoint to every vertex of its component."""
    _, _, parent = spanning_tree(X, basepoint)
    out = {basepoint: []}

    def path(v):
        if v in out:
            return out[v]
        e, u = parent[v]
        t, s = X.faces[1][e]
        step = (e, 1) if (s == u and t == v) else (e, -1)
        out[v] = path(u) + [step]
        return out[v]

    for v in parent:
        path(v)
    return out


def _reverse(path):
    return [(e, -s) for e, s in reversed(path)]


def _edge_loop(X: SimplicialSet, paths: dict, e: int):
    t, s = X.faces[1][e]
    return paths[s] + [(e, 1)] + _reverse(paths[t])


def _map_path(f: SimplicialMap, path):
    return [(f.maps[1][e], s) for e, s in path]


@dataclass
class Extension:
    """1 -> kernel -> total -> quotient -> 1 with explicit maps."""
    total: FiniteGroup
    kernel: FiniteGroup
    quotient: FiniteGroup
    inclusion: tuple
    projection: tuple

    def problems(self) -> list:
        T, K, Q = self.total, self.kernel, self.quotient
        out = []
        if not is_homomorphism(K, T, self.inclusion):
            out.append("inclusion is not a homomorphism")
        if len(set(self.inclusion)) != K.order:
            out.append("inclusion is not injective")
        if not is_homomorphism(T, Q, self.projection):
            out.append("projection is not a homomorphism")
        if len(set(self.projection)) != Q.order:
            out.append("projection is not surjective")
        ker = {t for t in T.elements if self.projection[t] == Q.identity}
        if ker != set(self.inclusion):
            out.append("image of inclusion differs from kernel of projection")
        if not T.is_normal(frozenset(self.inclusion)):
            out.append("kernel is not normal")
        return out

    @property
    def exact(self) -> bool:
        return not self.problems()

    def splits(self) -> bool:
        """True when the projection has a homomorphic section."""
        from .hfp import section_classes
        return bool(section_classes(self))

    def to_json(self) -> dict:
        return {"orders": {"kernel": self.kernel.order, "total": self.total.order,
                           "quotient": self.quotient.order},
                "exact": self.exact,
                "inclusion": [self.total.labels[t] for t in self.inclusion],
                "projection": [self.quotient.labels[q] for q in self.projection]}


@dataclass
class QuotientPi1:
    """π₁(X/G) computed as G/K for a contractible G-space X."""
    group: FiniteGroup            # G/K
    stabilizer_closure: frozenset  # K
    phi: tuple                     # G -> π₁(X/G), as elements of pi1.group
    to_quotient: tuple             # G -> G/K
    pi1: object                    # Pi1Result of X/G
    iso: tuple                     # G/K -> π₁(X/G)
    checks: dict


def _reduced_homology_ok(X: SimplicialSet) -> bool:
    from .homalg.dold_kan import reduced_homology_vanishes
    return reduced_homology_vanishes(X, X.dim_bound - 1)


def pi1_of_contractible_quotient(X: GSimplicialSet, basepoint: int = 0,
                                 verify: bool = True) -> QuotientPi1:
    """π₁(X/G) ≅ G/K with K the normal closure of all vertex stabilizers.

    The surjection G -> π₁(X/G) sends g to the image of an edge path in X
    from the basepoint a to g·a.
    """
    S, G = X.space, X.group
    if S.dim_bound < 2:
        raise InvalidInput("need simplices up to dimension 2")
    checks = {}
    if verify:
        checks["connected"] = len(pi0(S)) == 1
        checks["reduced_homology_zero"] = checks["connected"] and _reduced_homology_ok(S)
        checks["pi1_trivial"] = checks["connected"] and edge_path_pi1(S, basepoint).group.order == 1
        checks["kan_to_2"] = check_kan(S, 2).ok
        failed = [k for k, v in checks.items() if not v]
        if failed:
            raise InvalidInput("contractibility preconditions fail: " + ", ".join(failed))
    stabs = set()
    for v in range(S.size(0)):
        stabs |= X.stabilizer(0, v)
    K = G.normal_closure(stabs)
    GK, to_q = G.quotient(K)
    Q, proj = quotient(X)
    b = proj.maps[0][basepoint]
    res = edge_path_pi1(Q, b)
    paths = vertex_paths(S, basepoint)
    phi = []
    for g in G.elements:
        gb = X.action[g][0][basepoint]
        phi.append(res.path_element(_map_path(proj, paths[gb])))
    phi = tuple(phi)
    P = res.group
    checks["phi_homomorphism"] = is_homomorphism(G, P, phi)
    checks["phi_surjective"] = len(set(phi)) == P.order
    checks["kernel_is_K"] = frozenset(g for g in G.elements if phi[g] == P.identity) == K
    if not (checks["phi_homomorphism"] and checks["phi_surjective"] and checks["kernel_is_K"]):
        raise RuntimeError(f"quotient fundamental group check failed: {checks}")
    iso = [None] * GK.order
    for g in G.elements:
        iso[to_q[g]] = phi[g]
    return QuotientPi1(GK, K, phi, to_q, res, tuple(iso), checks)


@dataclass
class ExtensionContext:
    """π₁-extension of X_hG together with the data needed to read sections off maps."""
    extension: Extension
    space: GSimplicialSet
    basepoint: int
    hq: HomotopyQuotient
    pi1_total: object            # Pi1Result of X_hG
    inclusion: SimplicialMap     # X -> X_hG, x ↦ [(x, (e, ..., e))]
    paths: dict                  # vertex paths in X from the basepoint

    def section_of(self, f: SimplicialMap) -> tuple:
        """The section G -> π₁(X_hG) induced by an equivariant map f: EG -> X."""
        G = self.space.group
        k = G.order
        e = G.identity
        v0 = f.maps[0][e]
        if v0 not in self.paths:
            raise InvalidInput("map does not land in the basepoint component")
        P = _map_path(self.inclusion, self.paths[v0])
        ne1 = k * k
        out = []
        for g in G.elements:
            idx = e * k + g
            x = f.maps[1][idx]
            edge = self.hq.quotient_map.maps[1][x * ne1 + idx]
            loop = P + [(edge, 1)] + _reverse(P)
            out.append(self.pi1_total.path_element(loop))
        return tuple(out)


def pi1_extension(X: GSimplicialSet, basepoint: int = 0, order_cap: int | None = None) -> Extension:
    """1 -> π₁(X) -> π₁(X_hG) -> G -> 1 by edge paths in the homotopy quotient."""
    return pi1_extension_context(X, basepoint, order_cap).extension


def pi1_extension_context(X: GSimplicialSet, basepoint: int = 0,
                          order_cap: int | None = None) -> ExtensionContext:
    S, G = X.space, X.group
    if len(pi0(S)) != 1:
        raise InvalidInput("pi1_extension needs a connected space")
    cap = order_cap or get_caps().order
    piX = edge_path_pi1(S, basepoint, order_cap=cap)
    hq = homotopy_quotient(X, min(S.dim_bound, 2))
    Xh = hq.space
    e = G.identity
    top = Xh.dim_bound
    ne = [G.order ** (n + 1) for n in range(top + 1)]
    const = [_tuple_index(G.order, [e] * (n + 1)) for n in range(top + 1)]
    incl_maps = [tuple(hq.quotient_map.maps[n][x * ne[n] + const[n]] for x in range(S.size(n)))
                 for n in range(top + 1)]
    Strunc = SimplicialSet(S.keys[:top + 1], S.faces[:top + 1], S.degens[:top],
                           name=S.name, check=False)
    incl = SimplicialMap(Strunc, Xh, incl_maps, check=False)
    b = incl_maps[0][basepoint]
    check_order(G.order * piX.group.order, "homotopy quotient fundamental group")
    piT = edge_path_pi1(Xh, b, order_cap=max(cap, G.order * piX.group.order))
    T = piT.group
    pX = vertex_paths(S, basepoint)
    gens = [piX.edge_element[g] for g in piX.generators]
    imgs = [piT.path_element(_map_path(incl, _edge_loop(S, pX, g))) for g in piX.generators]
    inc = extend_homomorphism(piX.group, T, gens, imgs) if gens else (T.identity,)
    if inc is None:
        raise RuntimeError("inclusion of fundamental groups is not well defined")
    B = hq.bg
    pT = vertex_paths(Xh, b)

    def g_of(path):
        r = G.identity
        for ed, s in path:
            x = G.index(B.keys[1][hq.to_bg.maps[1][ed]][0])
            r = G.mul(r, x if s > 0 else G.inv(x))
        return r

    tg = [piT.edge_element[g] for g in piT.generators]
    timgs = [g_of(_edge_loop(Xh, pT, g)) for g in piT.generators]
    pr = extend_homomorphism(T, G, tg, timgs) if tg else (G.identity,)
    if pr is None:
        raise RuntimeError("projection to G is not well defined")
    ext = Extension(T, piX.group, G, tuple(inc), tuple(pr))
    bad = ext.problems()
    if bad:
        raise RuntimeError("fundamental group sequence is not exact: " + "; ".join(bad))
    return ExtensionContext(ext, X, basepoint, hq, piT, incl, pX)


def extension_from_action(action: GroupAction) -> Extension:
    """A ⋊ G with its canonical inclusion and projection."""
    A, G = action.A, action.G
    T = action.semidirect()
    elems = [(a, g) for g in G.elements for a in A.elements]
    elems.remove((A.identity, G.identity))
    pos = {p: i for i, p in enumerate([(A.identity, G.identity)] + elems)}
    inc = tuple(pos[(a, G.identity)] for a in A.elements)
    proj = [0] * T.order
    for (a, g), i in pos.items():
        proj[i] = g
    return Extension(T, A, G, inc, tuple(proj))


def extension_from_normal(T: FiniteGroup, normal) -> Extension:
    """normal -> T -> T/normal."""
    K, emb = T.subgroup_as_group(normal)
    Q, proj = T.quotient(normal)
    return Extension(T, K, Q, tuple(emb), tuple(proj))


def nerve_with_action(C, G: FiniteGroup, obj_images, mor_images, N: int) -> GSimplicialSet:
    """Nerve of a groupoid on which G acts by functors given on objects and morphisms."""
    from .simplicial.constructions import nerve
    X = nerve(C, N)
    act = []
    for g in G.elements:
        mi = mor_images[g]
        per = [tuple(obj_images[g])]
        for n in range(1, N + 1):
            per.append(tuple(X.index[n][tuple(mi[m] for m in key)] for key in X.keys[n]))
        act.append(per)
    return GSimplicialSet(X, G, act)
