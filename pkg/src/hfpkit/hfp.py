"""Homotopy fixed points π₀(X^{hG}) = [EG, X]_G for finite groups.

Two independent routes:

* :func:`hfp_bruteforce` enumerates equivariant maps EG -> X on the
  truncation that determines them and sorts them into equivariant homotopy
  classes;
* :func:`hfp_postnikov` climbs the Postnikov tower: invariant components,
  then sections of the π₁-extension of the homotopy quotient, then the
  obstruction in H³(G, π₂) and the H²(G, π₂)-torsor of lifts.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .caps import Budget, CapExceeded, InvalidInput, get_caps
from .equivariant import (Extension, GSimplicialSet, _tuple_index, eg_space,
                          pi1_extension_context)
from .groups import FiniteGroup, GroupAction, extend_homomorphism
from .homalg.abelian import FinGenAbGroup
from .homalg.cohomology import (BarIndex, bar_coboundary, cochain_mods,
                                cochain_to_function, function_to_cochain,
                                group_cohomology)
from .homalg.lattice import solve_mod
from .homalg.modules import GModule, module_from_action
from .models import ModelMeta
from .simplicial.constructions import is_coskeletal
from .simplicial.homotopy import check_kan, pi0
from .simplicial.maps import HomotopySearch, MapSearch, classify_by_homotopy
from .simplicial.sset import SimplicialMap


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()[:12]


@dataclass
class HFPClass:
    """One homotopy fixed point class.

    ``kind`` is "explicit" for classes found by enumeration (``map`` is the
    canonical representative) and "symbolic" for classes produced by the
    Postnikov pipeline (component, section class and H² coordinates; a
    representative map is attached when available).
    """
    id: str
    kind: str
    map: SimplicialMap | None = None
    key: tuple | None = None
    size: int = 1
    component: int | None = None
    section: str | None = None
    coset: tuple | None = None

    def to_json(self) -> dict:
        d = {"id": self.id, "kind": self.kind}
        if self.kind == "explicit":
            d["key"] = list(self.key)
            d["maps_in_class"] = self.size
        else:
            d["component"] = self.component
            d["section"] = self.section
            d["coset"] = None if self.coset is None else list(self.coset)
        return d


# ----------------------------------------------------------------------
# brute force
# ----------------------------------------------------------------------

def determining_level(X: GSimplicialSet, meta: ModelMeta | None = None) -> int:
    """Smallest n ≥ 1 such that X is n-coskeletal in its stored range."""
    if meta is not None:
        return max(1, meta.coskeletal)
    for n in range(1, X.dim_bound):
        if is_coskeletal(X.space, n):
            return n
    raise InvalidInput("cannot certify a coskeletal degree below the stored dimension; "
                       "pass level explicitly or supply model metadata")


def _nondeg_upto(S, k):
    return [(n, x) for n in range(k + 1) for x in S.nondegenerate[n]]


def equivariant_maps(X: GSimplicialSet, level: int, fixed_values=None, fixed_upto=None,
                     budget=None):
    """MapSearch from EG truncated at ``level`` to X, and its solutions."""
    G = X.group
    if X.dim_bound < level:
        raise InvalidInput(f"target stored to {X.dim_bound}, needs {level}")
    E = eg_space(G, level)
    fixed = _nondeg_upto(E.space, fixed_upto) if fixed_upto is not None else ()
    ms = MapSearch(E.space, X.space, inverse=X.inverse, src_action=E.action,
                   tgt_action=X.action, fixed=fixed)
    return E, ms, ms.search(fixed_values or {}, budget or Budget())


def _homotopy_decider(E: GSimplicialSet, X: GSimplicialSet, budget=None):
    hs = HomotopySearch(E.space, X.space, inverse=X.inverse, x_action=E.action,
                        y_action=X.action)
    return lambda f, g: hs.homotopic(f, g, budget)


def hfp_bruteforce(X: GSimplicialSet, level: int | None = None,
                   meta: ModelMeta | None = None, check: bool = True) -> list:
    """All classes of equivariant maps EG -> X up to equivariant homotopy."""
    level = determining_level(X, meta) if level is None else level
    if check and not (meta is not None and meta.kan_certified):
        up = min(level + 1, X.dim_bound)
        rep = check_kan(X.space, up)
        if not rep.ok:
            raise InvalidInput(f"target is not Kan up to {up}: horn {rep.counterexample}")
    E, ms, sols = equivariant_maps(X, level)
    found = sorted(((ms.key(s), s) for s in sols), key=lambda p: p[0])
    maps = [ms.expand(s) for _, s in found]
    keys = {id(m): k for m, (k, _) in zip(maps, found)}
    classes = classify_by_homotopy(maps, _homotopy_decider(E, X))
    out = []
    for cl in classes:
        rep = min(cl, key=lambda m: keys[id(m)])
        k = keys[id(rep)]
        out.append(HFPClass(id="h" + _digest(list(k)), kind="explicit", map=rep, key=k,
                            size=len(cl)))
    out.sort(key=lambda c: c.key)
    return out


# ----------------------------------------------------------------------
# sections of extensions
# ----------------------------------------------------------------------

@dataclass
class SectionClass:
    """A kernel-conjugacy class of homomorphic sections."""
    extension: Extension
    section: tuple          # canonical member: quotient element -> total element
    members: tuple
    id: str

    def to_json(self) -> dict:
        E = self.extension
        return {"id": self.id,
                "section": {E.quotient.labels[q]: E.total.labels[t]
                            for q, t in enumerate(self.section)},
                "size": len(self.members)}


def all_sections(E: Extension) -> list:
    """Every homomorphism s: quotient -> total with projection ∘ s = id."""
    T, Q, p = E.total, E.quotient, E.projection
    gens = list(Q.generators)
    if not gens:
        return [tuple(T.identity for _ in Q.elements)]
    fibers = [[t for t in T.elements if p[t] == q] for q in gens]
    count = 1
    for f in fibers:
        count *= len(f)
    if count > get_caps().enum:
        raise CapExceeded("enum", get_caps().enum, "section search")
    out = set()
    for imgs in itertools.product(*fibers):
        s = extend_homomorphism(Q, T, gens, imgs)
        if s is not None and all(p[s[q]] == q for q in Q.elements):
            out.add(s)
    return sorted(out)


def section_classes(E: Extension) -> list:
    """Homomorphic sections up to conjugation by kernel elements."""
    if not E.exact:
        raise InvalidInput("section_classes needs an exact extension")
    T = E.total
    rest = set(all_sections(E))
    out = []
    while rest:
        s = min(rest)
        orbit = {tuple(T.mul(T.mul(k, t), T.inv(k)) for t in s) for k in E.inclusion}
        rest -= orbit
        members = tuple(sorted(orbit))
        out.append(SectionClass(E, members[0], members,
                                "s" + _digest([T.labels[t] for t in members[0]])))
    return out


# ----------------------------------------------------------------------
# obstructions
# ----------------------------------------------------------------------

@dataclass
class ObstructionClass:
    """Obstruction to extending an equivariant map over the next skeleton of EG."""
    degree: int                 # i: the map is given on the i-skeleton
    module: GModule             # π_i with its G-action
    group: FinGenAbGroup        # H^{i+1}(G, π_i)
    cocycle: np.ndarray         # normalized bar cochain
    coords: tuple               # class in group coordinates
    witness: SimplicialMap | None = None

    @property
    def zero(self) -> bool:
        return not any(self.coords)

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": str(self.group),
                "class": [int(c) for c in self.coords], "zero": self.zero,
                "extends": self.witness is not None}


def obstruction_cocycle(G: FiniteGroup, partial_level, meta: ModelMeta, k: int,
                        module: GModule) -> np.ndarray:
    """Sphere classes of the boundaries (e, h1, h1h2, ...) as a bar (k+1)-cochain."""
    E = eg_space(G, k + 1)
    vals = {}
    for t in BarIndex(G, k + 1).tuples():
        verts = [G.identity]
        for h in t:
            verts.append(G.mul(verts[-1], h))
        x = _tuple_index(G.order, verts)
        faces = [partial_level[y] for y in E.space.faces[k + 1][x]]
        vals[t] = meta.sphere_class(k, faces)
    return function_to_cochain(G, module, k + 1, vals)


def obstruction_class(X: GSimplicialSet, partial: SimplicialMap, meta: ModelMeta,
                      k: int | None = None, budget=None) -> ObstructionClass:
    """Extend ``partial`` (EG_{≤k} -> X) one level, or return the failure class."""
    G = X.group
    k = partial.source.dim_bound if k is None else k
    if k < 2:
        raise InvalidInput("obstruction classes are defined for k ≥ 2")
    module = meta.pi_module(k, G, partial.maps)
    fv = {(n, x): partial.maps[n][x] for n in range(k + 1)
          for x in partial.source.nondegenerate[n]}
    E, ms, sols = equivariant_maps(X, k + 1, fv, fixed_upto=k, budget=budget)
    sol = next(iter(sols), None)
    H = group_cohomology(G, module, k + 1)
    if sol is not None:
        zero = np.zeros(len(cochain_mods(G, module, k + 1)), dtype=object)
        return ObstructionClass(k, module, H.group, zero, H.classify(zero), ms.expand(sol))
    phi = obstruction_cocycle(G, partial.maps[k], meta, k, module)
    if not any(phi):
        raise RuntimeError("no extension although every sphere class vanishes; "
                           "model metadata is inconsistent with the space")
    if not H.is_cocycle(phi):
        raise RuntimeError("obstruction cochain is not a cocycle")
    return ObstructionClass(k, module, H.group, phi, H.classify(phi))


def _move_by(meta, k, G, level_vals, module, vec):
    return meta.add_cochain(k, G, level_vals, cochain_to_function(G, module, k, vec))


def correct_partial(X: GSimplicialSet, partial: SimplicialMap, meta: ModelMeta,
                    ob: ObstructionClass | None = None) -> tuple:
    """Top level of ``partial`` moved by a cochain so that it extends one level.

    Requires a vanishing obstruction class: solves δa = -φ and adds a.
    """
    k = partial.source.dim_bound
    ob = ob or obstruction_class(X, partial, meta, k)
    if not ob.zero:
        raise InvalidInput("obstruction class is nonzero; no correction exists")
    if ob.witness is not None:
        return partial.maps[k]
    G = X.group
    D = bar_coboundary(G, ob.module, k)
    a = solve_mod(D, [-int(v) for v in ob.cocycle], cochain_mods(G, ob.module, k + 1))
    if a is None:
        raise RuntimeError("zero obstruction class without a correcting cochain")
    return _move_by(meta, k, G, partial.maps[k], ob.module, a)


# ----------------------------------------------------------------------
# Postnikov pipeline
# ----------------------------------------------------------------------

@dataclass
class ComponentData:
    index: int
    vertices: tuple
    basepoint: int
    context: object = None
    sections: list = field(default_factory=list)
    positions: tuple = ()


@dataclass
class HFPReport:
    classes: list
    stages: dict
    obstructions: list
    components: list
    level: int

    @property
    def count(self) -> int:
        return len(self.classes)

    def project(self, f: SimplicialMap) -> tuple:
        """(component index, section class id) of an equivariant map EG -> X."""
        v = f.maps[0][0]
        for c in self.components:
            if v in c.positions[0]:
                sec = c.context.section_of(_Relabeled(f, c.positions))
                for s in c.sections:
                    if sec in s.members:
                        return c.index, s.id
                raise RuntimeError("map induces a section outside every class")
        raise RuntimeError("map lands outside the invariant components")

    def to_json(self) -> dict:
        return {"classes": [c.to_json() for c in self.classes],
                "stages": self.stages,
                "obstructions": self.obstructions,
                "level": self.level,
                "count": self.count}


class _Relabeled:
    """A map's low levels re-indexed into a component subcomplex."""

    def __init__(self, f: SimplicialMap, positions):
        self.maps = [tuple(positions[n][y] for y in f.maps[n]) for n in range(2)]


def _component_gsset(X: GSimplicialSet, verts):
    from .simplicial.homotopy import component_subcomplex
    Y = component_subcomplex(X.space, verts)
    pos = [{x: i for i, x in enumerate(Y.inclusion[n])} for n in range(Y.dim_bound + 1)]
    act = [tuple(tuple(pos[n][X.action[g][n][x]] for x in Y.inclusion[n])
                 for n in range(Y.dim_bound + 1)) for g in X.group.elements]
    return GSimplicialSet(Y, X.group, act, check=False), pos


def invariant_components(X: GSimplicialSet) -> tuple:
    """(all components, indices of the G-invariant ones)."""
    comps = pi0(X.space)
    where = {}
    for i, c in enumerate(comps):
        for v in c:
            where[v] = i
    fixed = [i for i, c in enumerate(comps)
             if all(where[X.action[g][0][c[0]]] == i for g in X.group.elements)]
    return comps, fixed


def hfp_postnikov(X: GSimplicialSet, meta: ModelMeta, budget=None) -> HFPReport:
    """Stagewise count of homotopy fixed point classes for a certified 2-type."""
    if not isinstance(meta, ModelMeta):
        raise InvalidInput("hfp_postnikov needs certified model metadata")
    if meta.top_homotopy > 2:
        raise InvalidInput("hfp_postnikov handles spaces with π_k = 0 for k > 2")
    G = X.group
    L = determining_level(X, meta)
    if X.dim_bound < max(L, 3):
        raise InvalidInput("target must be stored at least to dimension 3")
    comps, fixed = invariant_components(X)
    stages = {"0": {"components": len(comps), "invariant": fixed}, "1": [], "2": []}
    classes, obstructions, cdata = [], [], []
    e = G.identity
    for ci in fixed:
        verts = tuple(comps[ci])
        Y, pos = _component_gsset(X, verts)
        ctx = pi1_extension_context(Y, 0)
        secs = section_classes(ctx.extension)
        cd = ComponentData(ci, verts, verts[0], ctx, secs, tuple(pos))
        cdata.append(cd)
        stages["1"].append({"component": ci, "extension": ctx.extension.to_json(),
                            "sections": [s.to_json() for s in secs]})
        if not secs:
            continue
        rep2 = _tr2_representatives(X, cd, budget)
        for s in secs:
            f2 = rep2.get(s.id)
            if f2 is None:
                raise RuntimeError(f"section class {s.id} has no equivariant 2-skeleton map")
            entry = _stage_two(X, meta, L, cd, s, f2, budget)
            obstructions.append(entry["obstruction"])
            stages["2"].append(entry["stage"])
            for j, (coset, rep) in enumerate(entry["fiber"]):
                classes.append(HFPClass(id="p" + _digest([ci, s.id, list(coset)]),
                                        kind="symbolic", map=rep, component=ci,
                                        section=s.id, coset=coset))
    return HFPReport(classes, stages, obstructions, cdata, L)


def _tr2_representatives(X, cd: ComponentData, budget) -> dict:
    """One equivariant map EG_{≤2} -> X per section class, with f(e) = basepoint."""
    G = X.group
    E = eg_space(G, 2)
    ms = MapSearch(E.space, X.space, inverse=X.inverse, src_action=E.action,
                   tgt_action=X.action, fixed=[(0, G.identity)])
    want = {s.id: s for s in cd.sections}
    out = {}
    for sol in ms.search({(0, G.identity): cd.basepoint}, budget or Budget()):
        f = ms.expand(sol)
        sec = cd.context.section_of(_Relabeled(f, cd.positions))
        for sid, s in want.items():
            if sid not in out and sec in s.members:
                out[sid] = f
        if len(out) == len(want):
            break
    return out


def _stage_two(X, meta, L, cd, s, f2, budget):
    G = X.group
    ob = obstruction_class(X, f2, meta, 2, budget)
    module = ob.module
    info = {"component": cd.index, "section": s.id, "pi2": list(module.mods),
            "obstruction": [int(c) for c in ob.coords], "vanishes": ob.zero}
    record = {"component": cd.index, "section": s.id, **ob.to_json()}
    if not ob.zero:
        info["fiber"] = 0
        return {"stage": info, "obstruction": record, "fiber": []}
    base2 = correct_partial(X, f2, meta, ob)
    low = (f2.maps[0], f2.maps[1], base2)

    def extend(level2):
        E = eg_space(G, 2)
        fv = {(n, x): (low[n] if n < 2 else level2)[x] for n in range(3)
              for x in E.space.nondegenerate[n]}
        Etop, ms, sols = equivariant_maps(X, L, fv, fixed_upto=2, budget=budget)
        sol = next(iter(sols), None)
        return None if sol is None else ms.expand(sol)

    base = extend(base2)
    if base is None:
        raise RuntimeError("corrected map does not extend although the obstruction vanishes")
    # the fiber by restricted enumeration: all maps with the same 1-skeleton
    fv1 = {(n, x): low[n][x] for n in range(2) for x in eg_space(G, 1).space.nondegenerate[n]}
    Etop, ms, sols = equivariant_maps(X, L, fv1, fixed_upto=1, budget=budget)
    lifts = [ms.expand(sol) for sol in sorted(sols, key=ms.key)]
    homotopic = _homotopy_decider(Etop, X, budget)
    fiber = classify_by_homotopy(lifts, homotopic)
    reps = [cl[0] for cl in fiber]
    # H² acting on the base lift by cocycle addition
    H2 = group_cohomology(G, module, 2)
    table = {}
    for coords in H2.sq.elements():
        moved = extend(_move_by(meta, 2, G, base2, module, H2.sq.element(coords)))
        if moved is None:
            raise RuntimeError("adding a cocycle broke extendability")
        hit = [j for j, r in enumerate(reps) if homotopic(r, moved) or homotopic(moved, r)]
        if len(hit) != 1:
            raise RuntimeError("H² translate does not lie in a unique fiber class")
        table[tuple(int(c) for c in coords)] = hit[0]
    pre = {}
    for c, j in table.items():
        pre.setdefault(j, []).append(c)
    transitive = sorted(pre) == list(range(len(reps)))
    uniform = len({len(v) for v in pre.values()}) <= 1
    info.update({"fiber": len(reps), "H2": str(H2.group), "transitive": transitive,
                 "uniform_stabilizer": uniform,
                 "stabilizer_size": len(next(iter(pre.values()))) if pre else 0})
    fib = []
    for j, r in enumerate(reps):
        coset = min(pre[j]) if j in pre else ()
        fib.append((coset, r))
    return {"stage": info, "obstruction": record, "fiber": fib}


# ----------------------------------------------------------------------
# E₂ page and Eilenberg–MacLane fixed points
# ----------------------------------------------------------------------

@dataclass
class E2Page:
    """E₂^{s,t} = H^t(G, π_s) for t ≤ s + 1 (and only t = 0 when s = 0)."""
    entries: dict          # (s, t) -> {"kind", "group", "size"}
    s_max: int
    t_max: int

    def group(self, s: int, t: int):
        return self.entries[(s, t)]["group"]

    def size(self, s: int, t: int):
        return self.entries[(s, t)]["size"]

    def nonzero(self) -> list:
        return sorted(k for k, v in self.entries.items() if v["size"] not in (0, 1))

    def to_json(self) -> dict:
        out = {}
        for (s, t), v in sorted(self.entries.items()):
            out[f"{s},{t}"] = {"kind": v["kind"], "size": v["size"],
                               "group": None if v["group"] is None else str(v["group"])}
        return {"s_max": self.s_max, "t_max": self.t_max, "entries": out}


def _ab_entry(grp: FinGenAbGroup) -> dict:
    size = None if grp.rank else math.prod(grp.torsion)
    return {"kind": "group", "group": grp, "size": size}


def twisted_kernel_action(E: Extension, section: tuple) -> GroupAction:
    """G acting on the kernel by conjugation through a section."""
    T, K = E.total, E.kernel
    back = {t: k for k, t in enumerate(E.inclusion)}
    images = []
    for g in E.quotient.elements:
        st = section[g]
        images.append(tuple(back[T.mul(T.mul(st, E.inclusion[k]), T.inv(st))]
                            for k in K.elements))
    return GroupAction(E.quotient, K, images)


def e2_page(X: GSimplicialSet, meta: ModelMeta, base: HFPClass | SimplicialMap | None = None,
            s_max: int = 2, t_max: int = 3, report: HFPReport | None = None) -> E2Page:
    """The E₂ page of the homotopy fixed point spectral sequence at a base class."""
    if not isinstance(meta, ModelMeta):
        raise InvalidInput("e2_page needs certified model metadata")
    G = X.group
    f = base.map if isinstance(base, HFPClass) else base
    comps, fixed = invariant_components(X)
    entries = {(0, 0): {"kind": "pointed set", "group": None, "size": len(fixed)}}
    if s_max >= 1:
        if f is None:
            report = report or hfp_postnikov(X, meta)
            if not report.classes:
                raise InvalidInput("no homotopy fixed point to base the E₂ page at")
            f = report.classes[0].map
        verts = next(c for c in comps if f.maps[0][0] in c)
        Y, pos = _component_gsset(X, verts)
        basepoint = pos[0][f.maps[0][0]]
        ctx = pi1_extension_context(Y, basepoint)
        sec = ctx.section_of(_Relabeled(f, pos))
        E = ctx.extension
        act = twisted_kernel_action(E, sec)
        K = E.kernel
        fixed_k = [k for k in K.elements if all(act.images[g][k] == k for g in G.elements)]
        grp = None
        if K.is_abelian:
            H, _ = K.subgroup_as_group(fixed_k)
            grp = module_from_action(GroupAction.trivial(G, H))[0].carrier
        entries[(1, 0)] = {"kind": "group", "size": len(fixed_k), "group": grp}
        if t_max >= 1:
            entries[(1, 1)] = {"kind": "pointed set", "group": None,
                               "size": len(section_classes(E))}
        if K.is_abelian:
            M1, _ = module_from_action(act)
            for t in range(2, min(t_max, 2) + 1):
                entries[(1, t)] = _ab_entry(group_cohomology(G, M1, t).group)
        elif t_max >= 2:
            entries[(1, 2)] = {"kind": "undefined", "group": None, "size": None}
    for s_ in range(2, s_max + 1):
        M = meta.pi_module(s_, G, None if f is None else f.maps)
        for t in range(0, min(t_max, s_ + 1) + 1):
            entries[(s_, t)] = _ab_entry(group_cohomology(G, M, t).group)
    return E2Page(entries, s_max, t_max)


def em_fixed_points(M: GModule, n: int, G: FiniteGroup | None = None) -> FinGenAbGroup:
    """π₀ K(M, n)^{hG} as the group H^n(G, M)."""
    if G is not None and G is not M.G and G.table != M.G.table:
        raise InvalidInput("module is over a different group")
    return group_cohomology(M.G, M, n).group
