"""The command registry: each command reads session entries and returns a JSON-ready result."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from ..caps import InvalidInput
from ..descent import (PrincipalGSet, classify_torsor, cocycle_from_hfp, compare_with_tau,
                       hfp_from_cocycle)
from ..equivariant import (GSimplicialSet, bg_space, eg_space, extension_from_action,
                           extension_from_normal, is_free_action, pi1_of_contractible_quotient)
from ..groups import FiniteGroup, GroupAction
from ..hfp import e2_page, hfp_bruteforce, hfp_postnikov, section_classes
from ..homalg.cohomology import group_cohomology
from ..homalg.dold_kan import dold_kan_overline, moore_underline, simplicial_homology
from ..homalg.hyper import hypercohomology, les_check
from ..homalg.nonabelian import h1_nonabelian, tau_twist
from ..localglobal import (adelic_set, fiber_partition, inverse_limit_tower, local_global_model,
                           loc_map, obstruction_set, sha_kernel)
from ..simplicial.constructions import coskeleton, is_coskeletal, postnikov, truncate
from ..simplicial.homotopy import edge_path_pi1
from .session import Session


@dataclass
class Command:
    name: str
    run: Callable
    anchor: str                 # the library routine the command reports on
    options: tuple              # (flag, kwargs) pairs for argparse
    help: str


REGISTRY: dict = {}


def command(name: str, anchor: str, help: str, *options):
    def deco(fn):
        REGISTRY[name] = Command(name, fn, anchor, options, help)
        return fn
    return deco


def _opt(flag, **kw):
    return (flag, kw)


SPACE = _opt("--space", required=True, help="simplicial set, G-space or model in the session")
GROUP = _opt("--group", required=True, help="group in the session")
DIM = _opt("--dim", type=int, default=None, help="dimension bound")


def _sizes(X) -> list:
    return [X.size(n) for n in range(X.dim_bound + 1)]


def _group_summary(G: FiniteGroup) -> dict:
    return {"order": G.order, "abelian": G.is_abelian, "generators": len(G.generators)}


def _groups(lst) -> list:
    return [str(g) for g in lst]


def _model(s: Session, name: str):
    X, meta = s.target(name)
    if meta is None:
        raise InvalidInput(f"{name!r} has no certified model metadata; use a session model")
    return X, meta


# ----------------------------------------------------------------------
# simplicial
# ----------------------------------------------------------------------

@command("cosk", "hfpkit.simplicial.constructions.coskeleton",
         "coskeleton of a truncation", SPACE, _opt("--level", type=int, required=True), DIM)
def run_cosk(s: Session, a) -> tuple:
    X = s.space(a.space)
    N = a.dim or X.dim_bound
    Y = coskeleton(truncate(X, a.level), N)
    res = {"sizes": _sizes(Y), "coskeletal": is_coskeletal(Y, a.level),
           "input_sizes": _sizes(X),
           "input_coskeletal": N == X.dim_bound and is_coskeletal(X, a.level)}
    if res["input_coskeletal"]:
        res["matches_input"] = res["sizes"] == res["input_sizes"]
    return res, f"cosk_{a.level}: level sizes {res['sizes']}"


@command("postnikov", "hfpkit.simplicial.constructions.postnikov",
         "Postnikov section P_n", SPACE, _opt("--level", type=int, required=True))
def run_postnikov(s: Session, a) -> tuple:
    X = s.space(a.space)
    Y = postnikov(X, a.level)
    upto = Y.dim_bound - 1
    res = {"sizes": _sizes(Y), "coskeletal_degree": a.level + 1,
           "coskeletal": is_coskeletal(Y, a.level + 1),
           "homology": _groups(simplicial_homology(Y, upto)),
           "input_homology": _groups(simplicial_homology(X, upto))}
    return res, f"P_{a.level}: level sizes {res['sizes']}"


@command("eg", "hfpkit.equivariant.eg_space", "EG with its free action", GROUP,
         _opt("--dim", type=int, default=3))
def run_eg(s: Session, a) -> tuple:
    G = s.get("groups", a.group)
    E = eg_space(G, a.dim)
    H = simplicial_homology(E.space, a.dim - 1)
    res = {"sizes": _sizes(E.space), "free": is_free_action(E)[0],
           "homology": _groups(H),
           "expected_sizes": [G.order ** (n + 1) for n in range(a.dim + 1)]}
    return res, f"E{G.name}: sizes {res['sizes']}, free={res['free']}"


@command("bg", "hfpkit.equivariant.bg_space", "the classifying space BG", GROUP,
         _opt("--dim", type=int, default=3))
def run_bg(s: Session, a) -> tuple:
    G = s.get("groups", a.group)
    B = bg_space(G, a.dim)
    P = edge_path_pi1(B, 0)
    P1 = postnikov(B, 1)
    res = {"sizes": _sizes(B), "pi1": _group_summary(P.group),
           "pi1_order_matches": P.group.order == G.order,
           "postnikov_1_sizes": _sizes(P1),
           "postnikov_1_iso": _sizes(P1) == _sizes(B) and is_coskeletal(B, 2)}
    return res, f"B{G.name}: |pi1| = {P.group.order}"


@command("pi1", "hfpkit.simplicial.homotopy.edge_path_pi1", "edge-path fundamental group",
         SPACE, _opt("--basepoint", type=int, default=0))
def run_pi1(s: Session, a) -> tuple:
    X = s.space(a.space)
    P = edge_path_pi1(X, a.basepoint)
    res = {"basepoint": a.basepoint, "component_vertices": len(P.vertices),
           "group": _group_summary(P.group), "table": P.group.to_json()}
    return res, f"pi1 has order {P.group.order}"


@command("quotient-pi1", "hfpkit.equivariant.pi1_of_contractible_quotient",
         "pi1 of the quotient of a contractible G-space", SPACE,
         _opt("--basepoint", type=int, default=0))
def run_quotient_pi1(s: Session, a) -> tuple:
    X, _ = s.target(a.space)
    Q = pi1_of_contractible_quotient(X, a.basepoint)
    direct = Q.pi1.group
    res = {"quotient_group": _group_summary(Q.group), "stabilizer_closure": len(Q.stabilizer_closure),
           "edge_path": _group_summary(direct), "checks": dict(sorted(Q.checks.items())),
           "iso": list(Q.iso)}
    return res, f"pi1(X/G) has order {Q.group.order}"


# ----------------------------------------------------------------------
# homotopy fixed points
# ----------------------------------------------------------------------

@command("hfp", "hfpkit.hfp.hfp_postnikov", "stagewise homotopy fixed point count", SPACE)
def run_hfp(s: Session, a) -> tuple:
    X, meta = _model(s, a.space)
    rep = hfp_postnikov(X, meta)
    return rep.to_json(), f"{rep.count} homotopy fixed point classes"


@command("hfp-brute", "hfpkit.hfp.hfp_bruteforce", "exhaustive homotopy fixed point classes",
         SPACE, _opt("--level", type=int, default=None))
def run_hfp_brute(s: Session, a) -> tuple:
    X, meta = s.target(a.space)
    cls = hfp_bruteforce(X, a.level, meta=meta)
    res = {"classes": [c.to_json() for c in cls], "count": len(cls)}
    return res, f"{len(cls)} homotopy fixed point classes"


@command("sections", "hfpkit.hfp.section_classes", "kernel-conjugacy classes of sections",
         _opt("--group", default=None, help="total group of the extension"),
         _opt("--normal", default=None, help="comma-separated labels of the kernel"),
         _opt("--action", default=None, help="split extension of an action"))
def run_sections(s: Session, a) -> tuple:
    if a.action is not None:
        E = extension_from_action(s.get("actions", a.action))
    elif a.group is not None and a.normal is not None:
        T = s.get("groups", a.group)
        labs = [x for x in a.normal.split(",") if x]
        try:
            K = [T.index(x) for x in labs]
        except (KeyError, ValueError):
            raise InvalidInput(f"--normal names elements outside {a.group!r}") from None
        E = extension_from_normal(T, K)
    else:
        raise InvalidInput("sections needs --action, or --group with --normal")
    secs = section_classes(E)
    res = {"extension": E.to_json(), "classes": [c.to_json() for c in secs],
           "splits": bool(secs)}
    return res, f"{len(secs)} section classes"


@command("obstruction", "hfpkit.hfp.obstruction_class", "obstruction classes met by the tower",
         SPACE)
def run_obstruction(s: Session, a) -> tuple:
    X, meta = _model(s, a.space)
    rep = hfp_postnikov(X, meta)
    obs = rep.obstructions
    nz = sum(1 for o in obs if o and not o.get("zero", True))
    return {"obstructions": obs, "nonzero": nz}, f"{len(obs)} obstructions, {nz} nonzero"


@command("e2", "hfpkit.hfp.e2_page", "E2 page of the fixed point spectral sequence", SPACE,
         _opt("--s-max", type=int, default=2), _opt("--t-max", type=int, default=3))
def run_e2(s: Session, a) -> tuple:
    X, meta = _model(s, a.space)
    page = e2_page(X, meta, s_max=a.s_max, t_max=a.t_max)
    return page.to_json(), f"E2 page with {len(page.entries)} entries"


# ----------------------------------------------------------------------
# cohomology
# ----------------------------------------------------------------------

@command("cohomology", "hfpkit.homalg.cohomology.group_cohomology", "H^n(G, M)",
         _opt("--module", required=True), _opt("--degree", type=int, required=True))
def run_cohomology(s: Session, a) -> tuple:
    M = s.get("modules", a.module)
    H = group_cohomology(M.G, M, a.degree)
    res = {"degree": a.degree, "group": str(H.group), **H.group.to_json(),
           "representatives": [[int(v) for v in r] for r in H.reps]}
    return res, f"H^{a.degree} = {H.group}"


@command("h1na", "hfpkit.homalg.nonabelian.h1_nonabelian", "nonabelian H^1 as a pointed set",
         _opt("--action", required=True))
def run_h1na(s: Session, a) -> tuple:
    H = h1_nonabelian(s.get("actions", a.action))
    return H.to_json(), f"H^1 has {len(H)} classes"


@command("twist", "hfpkit.homalg.nonabelian.tau_twist", "twisting bijection on H^1",
         _opt("--cocycle", required=True))
def run_twist(s: Session, a) -> tuple:
    alpha = s.get("cocycles", a.cocycle)
    act = alpha.action
    tt = tau_twist(act, alpha)
    cmp = compare_with_tau(act, alpha)
    res = {"mapping": list(tt.mapping), "bijective": tt.bijective,
           "alpha_class": tt.alpha_class, "alpha_to_basepoint": tt.sends_alpha_to_basepoint,
           "groupoid_twist_agrees": cmp["agree"],
           "groupoid_alpha_to_neutral": cmp["alpha_to_neutral"],
           "source": tt.source.to_json(), "target": tt.target.to_json()}
    return res, f"twist bijective={tt.bijective}"


@command("dold-kan", "hfpkit.homalg.dold_kan.dold_kan_overline",
         "simplicial abelian group of a chain complex", _opt("--complex", required=True),
         _opt("--dim", type=int, default=None))
def run_dold_kan(s: Session, a) -> tuple:
    C = s.get("complexes", a.complex)
    if C.lo < 0:
        raise InvalidInput("dold-kan needs a complex in nonnegative degrees")
    N = a.dim if a.dim is not None else C.hi + 1
    A = dold_kan_overline(C, N)
    Mo = moore_underline(A)
    top = min(N - 1, C.hi)
    h_in = [str(C.homology(n).group) for n in range(C.lo, top + 1)]
    h_out = [str(Mo.homology(n).group) for n in range(C.lo, top + 1)]
    res = {"ranks": [A.rank(n) for n in range(N + 1)], "homology": h_in,
           "moore_homology": h_out, "homology_agrees": h_in == h_out}
    return res, f"ranks {res['ranks']}"


@command("hyperc", "hfpkit.homalg.hyper.hypercohomology", "hypercohomology of a complex",
         _opt("--complex", required=True), _opt("--degree", type=int, required=True))
def run_hyperc(s: Session, a) -> tuple:
    C = s.get("complexes", a.complex)
    if C.group is None:
        raise InvalidInput(f"complex {a.complex!r} has no group")
    H = hypercohomology(C.group, C, a.degree)
    return H.to_json(), f"H^{a.degree} = {H.group}"


def _degrees(text: str) -> list:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return sorted({int(x) for x in text.split(",") if x})
    except ValueError:
        raise InvalidInput(f"cannot read degrees {text!r}") from None


@command("les", "hfpkit.homalg.hyper.les_check", "long exact sequence of a short exact sequence",
         _opt("--inclusion", required=True), _opt("--projection", required=True),
         _opt("--degrees", default="0..2"))
def run_les(s: Session, a) -> tuple:
    i = s.get("maps", a.inclusion)
    p = s.get("maps", a.projection)
    G = i.src.group
    if G is None:
        raise InvalidInput("les needs complexes of G-modules")
    les = les_check(G, i, p, _degrees(a.degrees))
    return les.to_json(), f"exact={les.exact}"


# ----------------------------------------------------------------------
# descent
# ----------------------------------------------------------------------

@command("classify-torsor", "hfpkit.descent.classify_torsor", "H^1 class of a torsor",
         _opt("--torsor", required=True), _opt("--basepoint", type=int, default=0))
def run_classify_torsor(s: Session, a) -> tuple:
    T = s.get("torsors", a.torsor)
    if not isinstance(T, PrincipalGSet):
        raise InvalidInput(f"torsor {a.torsor!r} is not principal")
    c = classify_torsor(T, a.basepoint)
    H = hfp_from_cocycle(T.gal_group, c.cocycle.values)
    back = cocycle_from_hfp(H, T.gal_group)
    res = {**c.to_json(), "round_trip": back.values == c.cocycle.values}
    return res, f"torsor class {c.index} of {len(c.h1)}"


@command("cocycle-extract", "hfpkit.descent.cocycle_from_hfp",
         "cocycle read off a fixed point and back", _opt("--cocycle", required=True))
def run_cocycle_extract(s: Session, a) -> tuple:
    u = s.get("cocycles", a.cocycle)
    H = hfp_from_cocycle(u.action, u.values)
    back = cocycle_from_hfp(H, u.action)
    h1 = h1_nonabelian(u.action)
    res = {"cocycle": back.to_json(), "round_trip": back.values == u.values,
           "class": h1.class_of(back.values)}
    return res, f"round trip={res['round_trip']}"


# ----------------------------------------------------------------------
# local-global
# ----------------------------------------------------------------------

def _lg(s: Session, a):
    X, meta = s.target(a.space)
    F = s.get("families", a.family)
    return local_global_model(X, F, a.level, meta)


FAMILY = _opt("--family", required=True)
LEVEL = _opt("--level", type=int, default=None)


@command("localize", "hfpkit.localglobal.loc_map", "localization of global classes",
         SPACE, FAMILY, LEVEL)
def run_localize(s: Session, a) -> tuple:
    m = _lg(s, a)
    locs = [loc_map(m, k).to_json() for k in range(len(m.global_classes))]
    part = fiber_partition(m)
    res = {"model": m.to_json(), "localizations": locs,
           "fibers": [{"point": list(k), "classes": list(v)} for k, v in sorted(part.items())]}
    return res, f"{len(m.global_classes)} global classes in {len(part)} fibers"


@command("sha", "hfpkit.localglobal.sha_kernel", "kernel of joint restriction",
         _opt("--module", required=True), _opt("--degree", type=int, required=True), FAMILY)
def run_sha(s: Session, a) -> tuple:
    M = s.get("modules", a.module)
    F = s.get("families", a.family)
    if F.group.table != M.G.table:
        raise InvalidInput("family and module are over different groups")
    K = sha_kernel(M.G, M, a.degree, F)
    res = {**K.to_json(), "nonzero": K.group.order != 1}
    return res, f"kernel {K.group}"


@command("obstruction-set", "hfpkit.localglobal.obstruction_set",
         "adelic points that come from global classes", SPACE, FAMILY, LEVEL)
def run_obstruction_set(s: Session, a) -> tuple:
    m = _lg(s, a)
    pts = adelic_set(m)
    surv = obstruction_set(m, pts)
    res = {"adelic": len(pts), "surviving": [p.to_json() for p in surv]}
    return res, f"{len(surv)} of {len(pts)} adelic points survive"


@command("limit", "hfpkit.localglobal.inverse_limit_tower", "inverse limit of a finite tower",
         _opt("--tower", required=True))
def run_limit(s: Session, a) -> tuple:
    t = s.get("towers", a.tower)
    r = inverse_limit_tower(t["sizes"], t["maps"])
    return r.to_json(), f"nonempty={r.nonempty}"


# ----------------------------------------------------------------------
# selftest
# ----------------------------------------------------------------------

def _random_group(rng: random.Random) -> FiniteGroup:
    pick = rng.randrange(4)
    if pick == 0:
        return FiniteGroup.cyclic(rng.randint(1, 6))
    if pick == 1:
        return FiniteGroup.symmetric(3)
    if pick == 2:
        return FiniteGroup.klein()
    return FiniteGroup.dihedral(rng.choice([3, 4]))


@command("selftest", "hfpkit.cli.commands.run_selftest", "quick invariant suite")
def run_selftest(s: Session, a) -> tuple:
    rng = random.Random(a.seed)
    checks = {}
    for trial in range(4):
        G = _random_group(rng)
        E = eg_space(G, 2)
        checks[f"eg_sizes_{trial}"] = _sizes(E.space) == [G.order ** (n + 1) for n in range(3)]
        checks[f"eg_free_{trial}"] = is_free_action(E)[0]
        checks[f"bg_pi1_{trial}"] = edge_path_pi1(bg_space(G, 2), 0).group.order == G.order
    inv = GroupAction(FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), [(0, 1, 2), (0, 2, 1)])
    checks["h1_inversion_z3"] = len(h1_nonabelian(inv)) == 1
    checks["sections_split"] = bool(section_classes(extension_from_action(inv)))
    checks["z4_over_z2_nonsplit"] = not section_classes(extension_from_normal(FiniteGroup.cyclic(4), [0, 2]))
    checks["limit"] = inverse_limit_tower([2, 2, 1], [[0, 1], [1]]).nonempty
    ok = all(checks.values())
    return {"checks": checks, "ok": ok}, f"selftest {'passed' if ok else 'FAILED'}"
