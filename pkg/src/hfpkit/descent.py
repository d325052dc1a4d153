"""Finite descent: torsor groupoids, classifying maps and twisting.

Conventions (all with the cocycle law α(στ) = α(σ)·σ(α(τ))):

* the torsor groupoid has Hom(C₁, C₂) = {g : g·C₁ = C₂}; composing g then h
  gives h·g, so the classifying map to BG (whose composition is g then h =
  g·h) sends a morphism g to g⁻¹;
* a principal homogeneous set with base point y₀ gives u by σ·y₀ = u_σ⁻¹·y₀;
* the twist of a G-set Y by α has Galois action σ * y = α(σ)·σ(y), and
  T_α(τ, y) = (τ, α(τ)·y) identifies N × Y with N × Y^α;
* the groupoid twist sends g: τ -> σ in E(N) × BG to α(τ)·g·α(σ)⁻¹.
"""
from __future__ import annotations

from dataclasses import dataclass

from .caps import InvalidInput
from .equivariant import GSimplicialSet, bg_with_action, eg_space, nerve_with_action
from .groups import FiniteGroup, GroupAction
from .homalg.nonabelian import (Cocycle1, H1, cocycle_violation, h1_nonabelian,
                                tau_twist, twist_action)
from .simplicial.groupoid import Groupoid
from .simplicial.sset import SimplicialMap


def _is_perm(p, n) -> bool:
    return sorted(p) == list(range(n))


def _values(alpha) -> tuple:
    return alpha.values if isinstance(alpha, Cocycle1) else tuple(int(v) for v in alpha)


# ----------------------------------------------------------------------
# torsor data
# ----------------------------------------------------------------------

@dataclass
class TorsorData:
    """A finite set P with a G-action and a compatible Γ-action.

    ``g_action[g][c]`` is g·c; ``gal_set[σ][c]`` is σ(c); ``gal_group`` is the
    Γ-action on G.  Compatibility: σ(g·c) = σ(g)·σ(c).
    """
    components: tuple
    g_action: tuple
    gal_set: tuple
    gal_group: GroupAction

    def __post_init__(self):
        self.components = tuple(str(c) for c in self.components)
        self.g_action = tuple(tuple(int(x) for x in r) for r in self.g_action)
        self.gal_set = tuple(tuple(int(x) for x in r) for r in self.gal_set)
        self.validate()

    @property
    def G(self) -> FiniteGroup:
        return self.gal_group.A

    @property
    def galois(self) -> FiniteGroup:
        return self.gal_group.G

    @property
    def size(self) -> int:
        return len(self.components)

    def validate(self) -> None:
        G, Ga, n = self.G, self.galois, self.size
        if len(self.g_action) != G.order or len(self.gal_set) != Ga.order:
            raise InvalidInput("one permutation per group element is required")
        for rows in (self.g_action, self.gal_set):
            for p in rows:
                if not _is_perm(p, n):
                    raise InvalidInput("actions must permute the components")
        for a in G.elements:
            for b in G.elements:
                ab = G.mul(a, b)
                if any(self.g_action[ab][c] != self.g_action[a][self.g_action[b][c]]
                       for c in range(n)):
                    raise InvalidInput("G-action is not an action")
        for s in Ga.elements:
            for t in Ga.elements:
                st = Ga.mul(s, t)
                if any(self.gal_set[st][c] != self.gal_set[s][self.gal_set[t][c]]
                       for c in range(n)):
                    raise InvalidInput("Galois action on components is not an action")
        for s in Ga.elements:
            for g in G.elements:
                sg = self.gal_group.images[s][g]
                for c in range(n):
                    if self.gal_set[s][self.g_action[g][c]] != self.g_action[sg][self.gal_set[s][c]]:
                        raise InvalidInput(
                            f"compatibility fails for σ={Ga.labels[s]}, g={G.labels[g]}, "
                            f"component {self.components[c]}")

    def stabilizer(self, c: int) -> frozenset:
        return frozenset(g for g in self.G.elements if self.g_action[g][c] == c)

    def to_json(self) -> dict:
        G, Ga = self.G, self.galois
        return {"components": list(self.components),
                "g_action": {G.labels[g]: list(self.g_action[g]) for g in G.elements},
                "galois_action_set": {Ga.labels[s]: list(self.gal_set[s]) for s in Ga.elements},
                "galois_action_group": {Ga.labels[s]: [G.labels[x] for x in self.gal_group.images[s]]
                                        for s in Ga.elements}}

    @classmethod
    def from_json(cls, d: dict, G: FiniteGroup, galois: FiniteGroup) -> "TorsorData":
        g_act = [d["g_action"][G.labels[g]] for g in G.elements]
        gal = [d["galois_action_set"][galois.labels[s]] for s in galois.elements]
        imgs = [[G.index(l) for l in d["galois_action_group"][galois.labels[s]]]
                for s in galois.elements]
        return cls(d["components"], g_act, gal, GroupAction(galois, G, imgs))


@dataclass
class PrincipalGSet(TorsorData):
    """Torsor data on which G acts simply transitively."""

    def validate(self) -> None:
        super().validate()
        G, n = self.G, self.size
        if n != G.order:
            raise InvalidInput("a principal homogeneous set has |G| points")
        for y in range(n):
            if len({self.g_action[g][y] for g in G.elements}) != n:
                raise InvalidInput("G does not act simply transitively")

    def transporter(self, x: int, y: int) -> int:
        """The unique g with g·x = y."""
        for g in self.G.elements:
            if self.g_action[g][x] == y:
                return g
        raise InvalidInput("points are not in one orbit")


def principal_from_cocycle(action: GroupAction, u) -> PrincipalGSet:
    """G with left translation and σ * y = σ(y)·u_σ⁻¹; classified by [u]."""
    u = _values(u)
    if cocycle_violation(action, u) is not None:
        raise InvalidInput("u is not a cocycle")
    G, Ga = action.A, action.G
    g_act = [[G.mul(g, y) for y in G.elements] for g in G.elements]
    gal = [[G.mul(action.images[s][y], G.inv(u[s])) for y in G.elements] for s in Ga.elements]
    return PrincipalGSet(G.labels, g_act, gal, action)


# ----------------------------------------------------------------------
# the torsor groupoid and the classifying map
# ----------------------------------------------------------------------

@dataclass
class TorsorGroupoid:
    data: TorsorData
    groupoid: Groupoid
    obj_images: tuple           # σ -> permutation of objects
    mor_images: tuple           # σ -> permutation of morphisms

    def morphism(self, c: int, g: int) -> int:
        return c * self.data.G.order + g

    def element(self, m: int) -> int:
        return m % self.data.G.order

    def nerve(self, N: int = 3) -> GSimplicialSet:
        return nerve_with_action(self.groupoid, self.data.galois, self.obj_images,
                                 self.mor_images, N)


def torsor_groupoid(T: TorsorData) -> TorsorGroupoid:
    """Objects the components, Hom(C₁, C₂) = {g : g·C₁ = C₂}, with the Γ-action."""
    G, n = T.G, T.size
    k = G.order
    mors = [(c, T.g_action[g][c]) for c in range(n) for g in G.elements]
    comp = []
    for c in range(n):
        for g in G.elements:
            row = [None] * len(mors)
            d = T.g_action[g][c]
            for h in G.elements:
                row[d * k + h] = c * k + G.mul(h, g)
            comp.append(row)
    labels = [f"{T.components[c]}:{G.labels[g]}" for c in range(n) for g in G.elements]
    C = Groupoid(T.components, mors, comp, morphism_labels=labels)
    objs, morph = [], []
    for s in T.galois.elements:
        objs.append(T.gal_set[s])
        morph.append([T.gal_set[s][c] * k + T.gal_group.images[s][g]
                      for c in range(n) for g in G.elements])
    return TorsorGroupoid(T, C, tuple(map(tuple, objs)), tuple(map(tuple, morph)))


@dataclass
class ClassifyingMap:
    source: GSimplicialSet
    target: GSimplicialSet
    map: SimplicialMap

    def is_equivariant(self) -> bool:
        S, T, f = self.source, self.target, self.map
        for s in S.group.elements:
            for n in range(S.dim_bound + 1):
                for x in range(S.space.size(n)):
                    if f.maps[n][S.action[s][n][x]] != T.action[s][n][f.maps[n][x]]:
                        return False
        return True


def classifying_map(T: TorsorData, N: int = 3) -> ClassifyingMap:
    """c_Y: nerve of the torsor groupoid -> BG, a morphism g going to g⁻¹."""
    TG = torsor_groupoid(T)
    S = TG.nerve(N)
    B = bg_with_action(T.gal_group, N)
    G = T.G
    maps = [tuple(0 for _ in range(S.space.size(0)))]
    for n in range(1, N + 1):
        row = []
        for key in S.space.keys[n]:
            row.append(B.space.index[n][tuple(G.labels[G.inv(TG.element(m))] for m in key)])
        maps.append(tuple(row))
    return ClassifyingMap(S, B, SimplicialMap(S.space, B.space, maps))


# ----------------------------------------------------------------------
# cocycles from homotopy fixed points
# ----------------------------------------------------------------------

def _check_equivariant(f: SimplicialMap, S: GSimplicialSet, T: GSimplicialSet) -> None:
    for s in S.group.elements:
        for n in range(f.source.dim_bound + 1):
            for x in range(f.source.size(n)):
                if f.maps[n][S.action[s][n][x]] != T.action[s][n][f.maps[n][x]]:
                    raise InvalidInput("map is not equivariant")


def cocycle_from_hfp(H: SimplicialMap, action: GroupAction) -> Cocycle1:
    """α(σ) = the element on the edge (1, σ) of EN under H: EN -> BG."""
    N, G = action.G, action.A
    n = H.source.dim_bound
    E = eg_space(N, n)
    B = bg_with_action(action, H.target.dim_bound)
    if H.source.sizes != E.space.sizes or H.target.sizes != B.space.sizes:
        raise InvalidInput("cocycle_from_hfp expects a map EN -> BG")
    _check_equivariant(H, E, B)
    e = N.identity
    vals = tuple(G.index(B.space.keys[1][H.maps[1][e * N.order + s]][0]) for s in N.elements)
    return Cocycle1(action, vals)


def hfp_from_cocycle(action: GroupAction, u, N: int = 2) -> SimplicialMap:
    """The equivariant map EN -> BG whose edge (a, b) carries a(u(a⁻¹b))."""
    u = _values(u)
    Ng, G = action.G, action.A
    E = eg_space(Ng, N)
    B = bg_with_action(action, N)

    def edge(a, b):
        return action.images[a][u[Ng.mul(Ng.inv(a), b)]]

    maps = [tuple(0 for _ in Ng.elements)]
    for n in range(1, N + 1):
        row = []
        for key in E.space.keys[n]:
            t = [Ng.index(l) for l in key]
            row.append(B.space.index[n][tuple(G.labels[edge(t[i], t[i + 1])] for i in range(n))])
        maps.append(tuple(row))
    f = SimplicialMap(E.space, B.space, maps)
    _check_equivariant(f, E, B)
    return f


def torsor_hfp(P: PrincipalGSet, y0: int = 0, N: int = 2) -> SimplicialMap:
    """The homotopy fixed point of the torsor groupoid sending σ to σ(y₀)."""
    TG = torsor_groupoid(P)
    S = TG.nerve(N)
    Ng = P.galois
    E = eg_space(Ng, N)
    pt = [P.gal_set[s][y0] for s in Ng.elements]
    maps = [tuple(pt)]
    for n in range(1, N + 1):
        row = []
        for key in E.space.keys[n]:
            t = [Ng.index(l) for l in key]
            chain = tuple(TG.morphism(pt[t[i]], P.transporter(pt[t[i]], pt[t[i + 1]]))
                          for i in range(n))
            row.append(S.space.index[n][chain])
        maps.append(tuple(row))
    f = SimplicialMap(E.space, S.space, maps)
    _check_equivariant(f, E, S)
    return f


@dataclass
class TorsorClass:
    cocycle: Cocycle1
    index: int
    h1: H1
    basepoint: int

    def to_json(self) -> dict:
        return {"class": self.index, "cocycle": self.cocycle.to_json(),
                "h1_size": len(self.h1), "basepoint": self.basepoint}


def torsor_cocycle(P: PrincipalGSet, y0: int) -> Cocycle1:
    """u with σ(y₀) = u_σ⁻¹·y₀."""
    G = P.G
    return Cocycle1(P.gal_group, tuple(G.inv(P.transporter(y0, P.gal_set[s][y0]))
                                       for s in P.galois.elements))


def classify_torsor(P: PrincipalGSet, y0: int = 0, h1: H1 | None = None) -> TorsorClass:
    """Class of a principal homogeneous set in H¹(Γ, G), checked over all base points."""
    h1 = h1 or h1_nonabelian(P.gal_group)
    u = torsor_cocycle(P, y0)
    k = h1.class_of(u.values)
    for y in range(P.size):
        if h1.class_of(torsor_cocycle(P, y).values) != k:
            raise RuntimeError("torsor class depends on the base point")
    return TorsorClass(u, k, h1, y0)


# ----------------------------------------------------------------------
# twisting
# ----------------------------------------------------------------------

def twist_data(T: TorsorData, alpha) -> TorsorData:
    """Y^α: same G-set, Galois action σ * y = α(σ)·σ(y), group action twisted by α."""
    a = _values(alpha)
    gal = [[T.g_action[a[s]][T.gal_set[s][y]] for y in range(T.size)]
           for s in T.galois.elements]
    cls = PrincipalGSet if isinstance(T, PrincipalGSet) else TorsorData
    return cls(T.components, T.g_action, gal, twist_action(T.gal_group, a))


def inverse_cocycle(action: GroupAction, alpha) -> tuple:
    """σ ↦ α(σ)⁻¹, a cocycle for the α-twisted action that undoes the twist."""
    a = _values(alpha)
    inv = tuple(action.A.inv(x) for x in a)
    if cocycle_violation(twist_action(action, a), inv) is not None:
        raise RuntimeError("inverse of a cocycle failed the twisted cocycle law")
    return inv


@dataclass
class TwistIsomorphism:
    """T_α: N × Y -> N × Y^α as a permutation of pairs (τ, y) ↦ τ·|Y| + y."""
    source: TorsorData
    target: TorsorData
    alpha: tuple
    perm: tuple

    def _act(self, T: TorsorData, s: int, p: int) -> int:
        n = T.size
        tau, y = divmod(p, n)
        return T.galois.mul(s, tau) * n + T.gal_set[s][y]

    def equivariance_failures(self) -> list:
        out = []
        Ga = self.source.galois
        for s in Ga.elements:
            for p in range(len(self.perm)):
                if self._act(self.target, s, self.perm[p]) != self.perm[self._act(self.source, s, p)]:
                    out.append((s, p))
        return out

    @property
    def bijective(self) -> bool:
        return _is_perm(self.perm, len(self.perm))

    def compose(self, other: "TwistIsomorphism") -> tuple:
        """self after other, as a permutation."""
        return tuple(self.perm[other.perm[p]] for p in range(len(other.perm)))


def twist_torsor(T: TorsorData, alpha) -> TwistIsomorphism:
    """T_α(τ, y) = (τ, α(τ)·y) from N × Y to N × Y^α."""
    a = _values(alpha)
    if cocycle_violation(T.gal_group, a) is not None:
        raise InvalidInput("α is not a cocycle for this action")
    target = twist_data(T, a)
    n = T.size
    perm = tuple(tau * n + T.g_action[a[tau]][y] for tau in T.galois.elements for y in range(n))
    iso = TwistIsomorphism(T, target, a, perm)
    bad = iso.equivariance_failures()
    if bad:
        raise RuntimeError(f"twist is not equivariant at {bad[0]}")
    return iso


@dataclass
class GroupoidTwist:
    """𝒯_α: E(N) × BG -> E(N) × BG^α, identity on objects.

    Morphism (τ -> σ, g) has index (τ·|N| + σ)·|G| + g.
    """
    action: GroupAction
    alpha: tuple
    source: Groupoid
    target: Groupoid
    mor_map: tuple
    src_action: tuple
    tgt_action: tuple

    def index(self, tau: int, sigma: int, g: int) -> int:
        return (tau * self.action.G.order + sigma) * self.action.A.order + g

    def split(self, m: int) -> tuple:
        k = self.action.A.order
        ts, g = divmod(m, k)
        tau, sigma = divmod(ts, self.action.G.order)
        return tau, sigma, g

    def functoriality_failures(self) -> list:
        out = []
        S, T, F = self.source, self.target, self.mor_map
        for f in range(len(F)):
            for g in range(len(F)):
                c = S.compose_table[f][g]
                if c is not None and T.compose_table[F[f]][F[g]] != F[c]:
                    out.append((f, g))
        return out

    def equivariance_failures(self) -> list:
        F = self.mor_map
        return [(s, m) for s in self.action.G.elements for m in range(len(F))
                if F[self.src_action[s][m]] != self.tgt_action[s][F[m]]]

    @property
    def bijective(self) -> bool:
        return _is_perm(self.mor_map, len(self.mor_map))

    def induced_cocycle(self, beta) -> tuple:
        """Image of the homotopy fixed point of β under 𝒯_α, read on edges (1, σ)."""
        b = _values(beta)
        Ng, A = self.action.G, self.action.A
        e = Ng.identity
        out = []
        for s in Ng.elements:
            # the section functor sends 1 -> σ to (1 -> σ, β(σ))
            m = self.mor_map[self.index(e, s, b[s])]
            out.append(self.split(m)[2])
        return tuple(out)

    def induced_h1_map(self, source: H1 | None = None, target: H1 | None = None) -> tuple:
        source = source or h1_nonabelian(self.action)
        target = target or h1_nonabelian(twist_action(self.action, self.alpha))
        mapping = []
        for cl in source.classes:
            imgs = {target.class_of(self.induced_cocycle(b)) for b in cl}
            if len(imgs) != 1:
                raise RuntimeError("groupoid twist is not well defined on H¹")
            mapping.append(imgs.pop())
        return tuple(mapping)

    def nerve_map(self, N: int = 2):
        """N(𝒯_α) between the nerves, with the Γ-actions on both sides."""
        Ng = self.action.G
        objs = [[Ng.mul(s, t) for t in Ng.elements] for s in Ng.elements]
        X = nerve_with_action(self.source, Ng, objs, self.src_action, N)
        Y = nerve_with_action(self.target, Ng, objs, self.tgt_action, N)
        maps = [tuple(range(X.space.size(0)))]
        for n in range(1, N + 1):
            maps.append(tuple(Y.space.index[n][tuple(self.mor_map[m] for m in key)]
                              for key in X.space.keys[n]))
        return X, Y, SimplicialMap(X.space, Y.space, maps)


def _product_groupoid(action: GroupAction):
    Ng, A = action.G, action.A
    n, k = Ng.order, A.order
    mors = [(t, s) for t in Ng.elements for s in Ng.elements for _ in A.elements]
    comp = []
    for t in Ng.elements:
        for s in Ng.elements:
            for g in A.elements:
                row = [None] * len(mors)
                for r in Ng.elements:
                    for h in A.elements:
                        row[(s * n + r) * k + h] = (t * n + r) * k + A.mul(g, h)
                comp.append(row)
    return Groupoid([Ng.labels[t] for t in Ng.elements], mors, comp, check=False)


def _product_action(action: GroupAction) -> tuple:
    Ng, A = action.G, action.A
    n, k = Ng.order, A.order
    return tuple(tuple((Ng.mul(s, t) * n + Ng.mul(s, r)) * k + action.images[s][g]
                       for t in Ng.elements for r in Ng.elements for g in A.elements)
                 for s in Ng.elements)


def twist_groupoid_iso(action: GroupAction, alpha) -> GroupoidTwist:
    """𝒯_α(τ -> σ, g) = (τ -> σ, α(τ)·g·α(σ)⁻¹), checked on full tables."""
    a = _values(alpha)
    if cocycle_violation(action, a) is not None:
        raise InvalidInput("α is not a cocycle for this action")
    Ng, A = action.G, action.A
    n, k = Ng.order, A.order
    twisted = twist_action(action, a)
    S = _product_groupoid(action)
    T = _product_groupoid(twisted)
    F = tuple((t * n + s) * k + A.mul(A.mul(a[t], g), A.inv(a[s]))
              for t in Ng.elements for s in Ng.elements for g in A.elements)
    tw = GroupoidTwist(action, a, S, T, F, _product_action(action), _product_action(twisted))
    if not tw.bijective:
        raise RuntimeError("groupoid twist is not bijective")
    bad = tw.functoriality_failures()
    if bad:
        raise InvalidInput(f"groupoid twist is not a functor at {bad[0]}: α is not usable")
    bad = tw.equivariance_failures()
    if bad:
        raise InvalidInput(f"groupoid twist is not equivariant at {bad[0]}")
    return tw


def compare_with_tau(action: GroupAction, alpha) -> dict:
    """Induced H¹ map of 𝒯_α next to tau_twist."""
    tw = twist_groupoid_iso(action, alpha)
    tt = tau_twist(action, alpha)
    induced = tw.induced_h1_map(tt.source, tt.target)
    return {"induced": induced, "tau": tt.mapping, "agree": induced == tt.mapping,
            "alpha_to_neutral": induced[tt.alpha_class] == tt.target.basepoint}
