"""A finite model of local-global bookkeeping for homotopy fixed points.

A place is a pair (H, I) of subgroups of Γ with I normal in H; H plays the
decomposition group and I the inertia group.  Local classes are homotopy
fixed point classes for the restricted action, the unramified ones are those
coming from (X^I)^{h(H/I)}, and the adelic set is the product of local class
sets with the unramified condition imposed away from a finite mask.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .caps import Budget, CapExceeded, InvalidInput
from .equivariant import GSimplicialSet, eg_space, fixed_subcomplex
from .groups import FiniteGroup
from .hfp import HFPClass, _homotopy_decider, determining_level, hfp_bruteforce
from .homalg.abelian import FinGenAbGroup, kernel_module
from .homalg.cohomology import group_cohomology, restriction_matrix
from .homalg.lattice import zeros
from .homalg.modules import GModule
from .models import ModelMeta
from .simplicial.sset import SimplicialMap


# ----------------------------------------------------------------------
# place families
# ----------------------------------------------------------------------

@dataclass
class PlaceFamily:
    group: FiniteGroup
    places: list            # [(H members, I members)]
    ramified: frozenset = frozenset()

    def __post_init__(self):
        self.places = [(tuple(sorted(set(H))), tuple(sorted(set(I)))) for H, I in self.places]
        self.ramified = frozenset(int(i) for i in self.ramified)
        self.validate()

    def validate(self) -> None:
        G = self.group
        for k, (H, I) in enumerate(self.places):
            if not G.is_subgroup(H):
                raise InvalidInput(f"place {k}: H is not a subgroup")
            if not set(I) <= set(H) or not G.is_subgroup(I):
                raise InvalidInput(f"place {k}: I is not a subgroup of H")
            if any(G.mul(G.mul(h, i), G.inv(h)) not in I for h in H for i in I):
                raise InvalidInput(f"place {k}: I is not normal in H")
        bad = [i for i in self.ramified if not 0 <= i < len(self.places)]
        if bad:
            raise InvalidInput(f"ramified index {bad[0]} is not a place")

    @classmethod
    def unramified(cls, G: FiniteGroup, subgroups, ramified=()) -> "PlaceFamily":
        return cls(G, [(H, (G.identity,)) for H in subgroups], frozenset(ramified))

    @classmethod
    def cyclic(cls, G: FiniteGroup) -> "PlaceFamily":
        """All cyclic subgroups (the nontrivial ones), with trivial inertia."""
        subs = sorted({tuple(sorted(G.generated([g]))) for g in G.elements if g != G.identity})
        return cls.unramified(G, subs)

    def to_json(self) -> dict:
        L = self.group.labels
        return {"group": self.group.to_json(),
                "places": [{"H": [L[h] for h in H], "I": [L[i] for i in I]}
                           for H, I in self.places],
                "ramified": sorted(self.ramified)}

    @classmethod
    def from_json(cls, d: dict, G: FiniteGroup | None = None) -> "PlaceFamily":
        G = G or FiniteGroup.from_json(d["group"])
        places = [([G.index(l) for l in p["H"]], [G.index(l) for l in p["I"]])
                  for p in d["places"]]
        return cls(G, places, frozenset(d.get("ramified", ())))


# ----------------------------------------------------------------------
# restriction of classes
# ----------------------------------------------------------------------

def _induced_eg_map(src: FiniteGroup, tgt: FiniteGroup, hom, N: int) -> SimplicialMap:
    """E(src) -> E(tgt), (g_0, ..., g_n) ↦ (hom g_0, ..., hom g_n)."""
    A, B = eg_space(src, N), eg_space(tgt, N)
    maps = []
    for n in range(N + 1):
        row = []
        for x in range(A.space.size(n)):
            t, y = [], x
            for _ in range(n + 1):
                t.append(y % src.order)
                y //= src.order
            z = 0
            for g in reversed(t):
                z = z * tgt.order + hom[g]
            row.append(z)
        maps.append(tuple(row))
    return SimplicialMap(A.space, B.space, maps, check=False)


def _compose(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f after g."""
    return SimplicialMap(g.source, f.target,
                         [tuple(f.maps[n][y] for y in g.maps[n])
                          for n in range(g.source.dim_bound + 1)], check=False)


@dataclass
class LocalData:
    """Classes of X over one subgroup, with a homotopy decider."""
    members: tuple
    group: FiniteGroup
    embedding: tuple
    space: GSimplicialSet
    level: int
    classes: list
    decider: object = None

    def locate(self, f: SimplicialMap) -> int:
        """Index of the class containing an H-equivariant map EH -> X."""
        hits = [k for k, c in enumerate(self.classes)
                if self.decider(c.map, f) or self.decider(f, c.map)]
        if len(hits) != 1:
            raise RuntimeError(f"map meets {len(hits)} local classes")
        return hits[0]


def local_data(X: GSimplicialSet, members, level: int, meta: ModelMeta | None = None) -> LocalData:
    G = X.group
    H, emb = G.subgroup_as_group(members)
    XH = X.restrict(members)
    classes = hfp_bruteforce(XH, level, meta=meta)
    E = eg_space(H, level)
    return LocalData(tuple(sorted(members)), H, emb, XH, level, classes,
                     _homotopy_decider(E, XH))


def restrict_map(f: SimplicialMap, G: FiniteGroup, H: FiniteGroup, emb) -> SimplicialMap:
    """f restricted along EH -> EG for a subgroup embedding."""
    return _compose(f, _induced_eg_map(H, G, emb, f.source.dim_bound))


def restrict_class(X: GSimplicialSet, x: HFPClass, members, level: int | None = None,
                   local: LocalData | None = None, meta: ModelMeta | None = None) -> tuple:
    """(index, local class) of the restriction of an explicit class to H."""
    if x.map is None:
        raise InvalidInput("restrict_class needs a class with a representative map")
    level = x.map.source.dim_bound if level is None else level
    local = local or local_data(X, members, level, meta)
    k = local.locate(restrict_map(x.map, X.group, local.group, local.embedding))
    return k, local.classes[k]


def unramified_classes(X: GSimplicialSet, members, inertia, level: int | None = None,
                       local: LocalData | None = None, meta: ModelMeta | None = None) -> dict:
    """{local class index: witness} for classes coming from (X^I)^{h(H/I)}.

    The witness is the key of an explicit class of the quotient group acting
    on the fixed subcomplex whose image is the local class.
    """
    G = X.group
    level = determining_level(X, meta) if level is None else level
    local = local or local_data(X, members, level, meta)
    H, emb = local.group, local.embedding
    pos = {g: i for i, g in enumerate(emb)}
    I_local = [pos[i] for i in inertia]
    Q, proj = H.quotient(I_local)
    Y = fixed_subcomplex(X, inertia)
    if Y.size(0) == 0:
        return {}
    ypos = [{x: i for i, x in enumerate(Y.inclusion[n])} for n in range(Y.dim_bound + 1)]
    reps = {}
    for h in H.elements:
        reps.setdefault(proj[h], h)
    act = [tuple(tuple(ypos[n][X.action[emb[reps[q]]][n][x]] for x in Y.inclusion[n])
                 for n in range(Y.dim_bound + 1)) for q in Q.elements]
    YQ = GSimplicialSet(Y, Q, act)
    ur = hfp_bruteforce(YQ, level, check=False)
    down = _induced_eg_map(H, Q, proj, level)
    out = {}
    for c in ur:
        g = c.map
        lifted = SimplicialMap(down.source, X.space,
                               [tuple(Y.inclusion[n][g.maps[n][y]] for y in down.maps[n])
                                for n in range(level + 1)], check=False)
        k = local.locate(lifted)
        out.setdefault(k, c.key)
    return out


# ----------------------------------------------------------------------
# adelic sets, localization and fibers
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AdelicClassTuple:
    classes: tuple                  # local class index per place
    unramified_witness: tuple       # per place: witness key or None

    def to_json(self) -> dict:
        return {"classes": list(self.classes),
                "unramified": [None if w is None else list(w) for w in self.unramified_witness]}


@dataclass
class LocalGlobalModel:
    space: GSimplicialSet
    family: PlaceFamily
    level: int
    global_classes: list
    places: list                    # LocalData per place
    unramified: list                # dict per place
    meta: object = None
    _loc: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"global": len(self.global_classes),
                "local": [len(p.classes) for p in self.places],
                "unramified": [sorted(u) for u in self.unramified]}


def local_global_model(X: GSimplicialSet, family: PlaceFamily, level: int | None = None,
                       meta: ModelMeta | None = None) -> LocalGlobalModel:
    if family.group.table != X.group.table:
        raise InvalidInput("place family is over a different group")
    level = determining_level(X, meta) if level is None else level
    glob = hfp_bruteforce(X, level, meta=meta)
    places, unr = [], []
    for H, I in family.places:
        ld = local_data(X, H, level, meta)
        places.append(ld)
        unr.append(unramified_classes(X, H, I, level, ld, meta))
    return LocalGlobalModel(X, family, level, glob, places, unr, meta)


def adelic_set(model: LocalGlobalModel) -> list:
    """Product of local class sets, unramified away from the ramified mask."""
    choices = []
    for k, ld in enumerate(model.places):
        if k in model.family.ramified:
            choices.append([(j, None) for j in range(len(ld.classes))])
        else:
            choices.append(sorted(model.unramified[k].items()))
    total = 1
    for c in choices:
        total *= len(c)
    Budget().spend(total)
    return [AdelicClassTuple(tuple(j for j, _ in combo), tuple(w for _, w in combo))
            for combo in itertools.product(*choices)]


def loc_map(model: LocalGlobalModel, x: int | HFPClass) -> AdelicClassTuple:
    """Restrictions of a global class to every place."""
    k = x if isinstance(x, int) else model.global_classes.index(x)
    if k in model._loc:
        return model._loc[k]
    cls = model.global_classes[k]
    idx, wit = [], []
    for p, ld in enumerate(model.places):
        j, _ = restrict_class(model.space, cls, ld.members, model.level, ld)
        idx.append(j)
        w = model.unramified[p].get(j)
        wit.append(None if p in model.family.ramified else w)
    out = AdelicClassTuple(tuple(idx), tuple(wit))
    model._loc[k] = out
    return out


def fibers(model: LocalGlobalModel, y: AdelicClassTuple | tuple) -> list:
    """Global class indices localizing to y."""
    target = y.classes if isinstance(y, AdelicClassTuple) else tuple(y)
    out = [k for k in range(len(model.global_classes)) if loc_map(model, k).classes == target]
    if len(out) > len(model.global_classes):
        raise RuntimeError("fiber larger than the global set")
    return out


def fiber_partition(model: LocalGlobalModel) -> dict:
    """{local tuple: global classes}; the values partition the global set."""
    out: dict = {}
    for k in range(len(model.global_classes)):
        out.setdefault(loc_map(model, k).classes, []).append(k)
    return out


@dataclass
class SurvivingPoint:
    point: AdelicClassTuple
    witness: int | None             # a global class localizing to the point

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "rational": self.witness is not None,
                "witness": self.witness}


def obstruction_set(model: LocalGlobalModel, points=None) -> list:
    """The points in the image of localization, each with a global witness."""
    points = adelic_set(model) if points is None else points
    image = fiber_partition(model)
    out = []
    for y in points:
        key = y.classes if isinstance(y, AdelicClassTuple) else tuple(y)
        hits = image.get(key)
        if hits:
            pt = y if isinstance(y, AdelicClassTuple) else AdelicClassTuple(key, (None,) * len(key))
            out.append(SurvivingPoint(pt, hits[0]))
    return out


# ----------------------------------------------------------------------
# Sha kernels
# ----------------------------------------------------------------------

@dataclass
class ShaKernel:
    group: FinGenAbGroup
    reps: list                      # cocycles of H^n(G, M) in the kernel
    coords: list                    # the same in H^n(G, M) generator coordinates
    ambient: FinGenAbGroup
    restriction: np.ndarray         # H^n(G, M) coords -> ⊕ H^n(H_ν, M) coords

    def to_json(self) -> dict:
        return {"kernel": str(self.group), "order": self.group.order,
                "ambient": str(self.ambient),
                "representatives": [[int(c) for c in v] for v in self.coords]}


def _family_members(G: FiniteGroup, family) -> list:
    if isinstance(family, PlaceFamily):
        return [H for H, _ in family.places]
    return [tuple(sorted(set(H))) for H in family]


def sha_kernel(G: FiniteGroup, M: GModule, n: int, family) -> ShaKernel:
    """ker(H^n(G, M) -> ∏ H^n(H_ν, M)) via the joint restriction matrix."""
    HG = group_cohomology(G, M, n)
    src_mods = HG.group.mods
    k = len(HG.reps)
    blocks, tgt_mods = [], []
    for H in _family_members(G, family):
        Hg, emb, MH, R = restriction_matrix(G, H, M, n)
        res = group_cohomology(Hg, MH, n)
        B = zeros(len(res.group.mods), k)
        for j, v in enumerate(HG.reps):
            img = R.dot(np.array(v, dtype=object)) if R.size else zeros(R.shape[0], 1)[:, 0]
            B[:, j] = np.array(res.classify(img), dtype=object)
        blocks.append(B)
        tgt_mods.extend(res.group.mods)
    R = np.vstack(blocks) if blocks else zeros(0, k)
    ker = kernel_module(R, src_mods, tgt_mods)
    coords = [tuple(int(c) for c in ker.element(e)) for e in ker.elements()] \
        if ker.group.rank == 0 else [tuple(int(c) for c in g) for g in ker.gens]
    reps = [HG.sq.element(c) for c in coords]
    return ShaKernel(ker.group, reps, coords, HG.group, R)


# ----------------------------------------------------------------------
# inverse limits
# ----------------------------------------------------------------------

@dataclass
class LimitResult:
    nonempty: bool
    certificate: tuple | None       # a compatible family, bottom level first
    stable_images: list             # eventual images, bottom level first
    size: int                       # number of compatible families

    def to_json(self) -> dict:
        return {"nonempty": self.nonempty,
                "certificate": None if self.certificate is None else list(self.certificate),
                "stable_image_sizes": [len(s) for s in self.stable_images],
                "size": self.size}


def inverse_limit_tower(sets, maps=None, depth_cap: int = 64) -> LimitResult:
    """The limit of S_0 <- S_1 <- ... with maps[k]: S_{k+1} -> S_k.

    ``sets`` lists level sizes (or element lists); ``maps[k][x]`` is the image
    of x ∈ S_{k+1}.  A callable ``sets(k) -> (size, map_to_previous)`` is
    extended lazily up to ``depth_cap`` levels.
    """
    if callable(sets):
        sizes, mps = [], []
        for k in range(depth_cap + 1):
            item = sets(k)
            if item is None:
                break
            size, mp = item
            sizes.append(int(size))
            if k:
                mps.append(tuple(mp))
        else:
            raise CapExceeded("depth", depth_cap, "inverse limit tower")
    else:
        sizes = [s if isinstance(s, int) else len(s) for s in sets]
        mps = [tuple(m) for m in (maps or [])]
        if len(sizes) > depth_cap:
            raise CapExceeded("depth", depth_cap, "inverse limit tower")
    if len(mps) != max(len(sizes) - 1, 0):
        raise InvalidInput("a tower of m levels needs m - 1 maps")
    for k, mp in enumerate(mps):
        if len(mp) != sizes[k + 1] or any(not 0 <= v < sizes[k] for v in mp):
            raise InvalidInput(f"map {k + 1} -> {k} is not a function between the levels")
    if not sizes:
        return LimitResult(True, (), [], 1)
    m = len(sizes) - 1
    # eventual images: image of the top level in each level
    stable = [None] * (m + 1)
    stable[m] = set(range(sizes[m]))
    for k in range(m - 1, -1, -1):
        stable[k] = {mps[k][x] for x in stable[k + 1]}
    if not stable[0]:
        return LimitResult(False, None, [sorted(s) for s in stable], 0)
    # backtracking-free lift: every stable element has a stable preimage
    fam = [min(stable[0])]
    for k in range(1, m + 1):
        pre = [x for x in sorted(stable[k]) if mps[k - 1][x] == fam[-1]]
        if not pre:
            raise RuntimeError("stable images do not surject")
        fam.append(pre[0])
    return LimitResult(True, tuple(fam), [sorted(s) for s in stable], sizes[m])
