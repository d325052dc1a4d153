"""Acceptance suite: one test per criterion, each printing a single verdict line."""
import collections
import itertools
import random
import time

import pytest

from hfpkit.cli import load_session, serialize
from hfpkit.descent import (classify_torsor, classifying_map, cocycle_from_hfp, compare_with_tau,
                            principal_from_cocycle, torsor_hfp)
from hfpkit.equivariant import (bg_space, eg_pullback, eg_space, extension_from_normal,
                                is_free_action, pi1_of_contractible_quotient, quotient)
from hfpkit.groups import FiniteGroup, GroupAction, automorphisms, find_isomorphism as group_iso
from hfpkit.groups import homomorphisms
from hfpkit.hfp import em_fixed_points, hfp_bruteforce, hfp_postnikov, section_classes
from hfpkit.homalg.chain import concentrated
from hfpkit.homalg.cohomology import group_cohomology
from hfpkit.homalg.dold_kan import simplicial_homology
from hfpkit.homalg.hyper import hypercohomology, les_check
from hfpkit.homalg.modules import GModule
from hfpkit.homalg.nonabelian import h1_nonabelian, iter_cocycles
from hfpkit.localglobal import (PlaceFamily, adelic_set, fiber_partition, fibers,
                                inverse_limit_tower, local_global_model, sha_kernel)
from hfpkit.models import bg_model, discrete_model, em_model, p1_model, twisted_model
from hfpkit.simplicial.constructions import (circle, coskeleton, discrete, nerve, postnikov,
                                             skeleton, standard_simplex, truncate)
from hfpkit.simplicial.groupoid import Groupoid
from hfpkit.simplicial.homotopy import edge_path_pi1
from hfpkit.simplicial.maps import find_isomorphism, hom_count
from hfpkit.simplicial.sset import SimplicialMap

from fixtures.make_fixtures import CASES, GOLDEN, SESSION, run_case
from support import random_complex, random_graph, random_module, random_points, random_ses, \
    small_groups

C2, C3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
S3 = FiniteGroup.symmetric(3)


@pytest.fixture
def verdict(capsys):
    start = time.perf_counter()

    def report(number, title, ok, detail, limit):
        elapsed = time.perf_counter() - start
        passed = bool(ok) and elapsed < limit
        line = (f"ACCEPTANCE {number:>2} {'PASS' if passed else 'FAIL'}  {title}: {detail} "
                f"[{elapsed:.1f}s, limit {limit}s]")
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
        assert elapsed < limit, line

    return report


# -- 1 ------------------------------------------------------------------

def test_eg_bg_suite(verdict):
    failures = []
    groups = small_groups(6)
    for G in groups:
        E = eg_space(G, 3)
        if E.space.sizes != tuple(G.order ** (n + 1) for n in range(4)):
            failures.append(f"{G.name}: EG sizes")
        if not is_free_action(E)[0]:
            failures.append(f"{G.name}: EG not free")
        if [str(h) for h in simplicial_homology(E.space, 2)] != ["Z", "0", "0"]:
            failures.append(f"{G.name}: EG homology")
        B = bg_space(G, 3)
        if group_iso(edge_path_pi1(B, 0).group, G) is None:
            failures.append(f"{G.name}: pi1(BG)")
        if find_isomorphism(postnikov(B, 1), B) is None:
            failures.append(f"{G.name}: P1(BG)")
    verdict(1, "EG/BG suite", not failures,
            f"{len(groups)} groups of order <= 6" + (f"; {failures}" if failures else ""), 60)


# -- 2 ------------------------------------------------------------------

def _random_target(rng):
    pick = rng.randrange(6)
    if pick == 0:
        return skeleton(random_graph(rng), 2)
    if pick == 1:
        return bg_space(C2, 2)
    if pick == 2:
        return circle(2)
    if pick == 3:
        return standard_simplex(rng.randint(1, 2), 2)
    if pick == 4:
        return discrete(rng.randint(1, 3), 2)
    return nerve(Groupoid.codiscrete(["a", "b"]), 2)


def _truncated(rng, n):
    return random_points(rng) if n == 0 else random_graph(rng)


def test_adjunction_suite(verdict):
    rng = random.Random(2)
    N, bad = 2, []
    for k in range(50):
        n = rng.randint(0, 1)
        S, T, X = _truncated(rng, n), _truncated(rng, n), _random_target(rng)
        left = hom_count(skeleton(S, N), X) == hom_count(S, truncate(X, n))
        right = hom_count(truncate(X, n), T) == hom_count(X, coskeleton(T, N))
        if not (left and right):
            bad.append(k)
    verdict(2, "sk/tr/cosk adjunctions", not bad,
            f"50 random (S,T,X), failing instances {bad}", 60)


# -- 3 ------------------------------------------------------------------

def _pullback_fixtures():
    out = []
    groups = small_groups(6)[1:] + [FiniteGroup.quaternion()]
    targets = [FiniteGroup.trivial(), C2, C3, FiniteGroup.cyclic(4), FiniteGroup.cyclic(5),
               FiniteGroup.cyclic(6), FiniteGroup.klein(), S3]
    for G in groups:
        for Q in targets:
            if Q.order > G.order or G.order % Q.order:
                continue
            onto = next((h for h in homomorphisms(G, Q) if len(set(h)) == Q.order), None)
            if onto is not None:
                out.append((G, Q, onto))
    return out


def test_contractible_quotient_pi1_suite(verdict):
    fixtures = _pullback_fixtures()
    bad = []
    for G, Q, q in fixtures:
        if G.order == 8 and Q.order != 4:
            continue
        X = eg_pullback(G, Q, q, 3)
        r = pi1_of_contractible_quotient(X)
        edge = edge_path_pi1(quotient(X)[0], 0).group
        if not all(r.checks.values()) or group_iso(r.group, edge) is None \
                or group_iso(r.group, Q) is None:
            bad.append(f"{G.name}->{Q.name}")
    used = sum(1 for G, Q, _ in fixtures if not (G.order == 8 and Q.order != 4))
    verdict(3, "pi1 of contractible quotients", not bad and used == 20,
            f"{used} EG pullbacks G->>Q" + (f"; failing {bad}" if bad else ""), 120)


# -- 4 ------------------------------------------------------------------

def _hfp_fixtures():
    inv3 = GroupAction(C2, C3, [(0, 1, 2), (0, 2, 1)])
    out = [
        ("pt/C2", discrete_model(C2, [[0], [0]], N=3)),
        ("2pts/C2 swap", discrete_model(C2, [[0, 1], [1, 0]], N=3)),
        ("2pts/C2 fixed", discrete_model(C2, [[0, 1], [0, 1]], N=3)),
        ("3pts/C3 cycle", discrete_model(C3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]], N=3)),
        ("2pts/C3 fixed", discrete_model(C3, [[0, 1], [0, 1], [0, 1]], N=3)),
        ("BZ2/C2", bg_model(GroupAction.trivial(C2, C2), N=3)),
        ("BZ3/C2 inv", bg_model(inv3, N=3)),
        ("BZ3/C2 triv", bg_model(GroupAction.trivial(C2, C3), N=3)),
        ("BZ3/C3", bg_model(GroupAction.trivial(C3, C3), N=3)),
        ("BZ2/C3", bg_model(GroupAction.trivial(C3, C2), N=3)),
        ("BZ2/1", bg_model(GroupAction.trivial(FiniteGroup.trivial(), C2), N=3)),
        ("K(Z3-,2)/C2", em_model(GModule.cyclic_with_sign(C2, 3, [1, -1]), 2)),
        ("K(Z3,2)/C3", em_model(GModule.trivial(C3, [3]), 2)),
        ("K(Z2,2)/C2", em_model(GModule.trivial(C2, [2]), 2)),
        ("K(Z2,2)/C3", em_model(GModule.trivial(C3, [2]), 2)),
        ("twisted k=0", twisted_model(C2, GModule.trivial(C2, [2]), [0], C2, N=4)),
        ("twisted k=1", twisted_model(C2, GModule.trivial(C2, [2]), [1], C2, N=4)),
    ]
    return out


def test_postnikov_matches_brute_force(verdict):
    bad, oversize, classes = [], [], 0
    fixtures = _hfp_fixtures()
    for name, (X, meta) in fixtures:
        if X.group.order > 3:
            oversize.append(name)
        if sum(len(X.space.nondegenerate[n]) for n in range(3)) > 30:
            oversize.append(name)
        brute = hfp_bruteforce(X, meta=meta)
        rep = hfp_postnikov(X, meta)
        classes += len(brute)
        if len(brute) != rep.count:
            bad.append(f"{name}: {len(brute)} vs {rep.count}")
            continue
        projected = collections.Counter(rep.project(b.map) for b in brute)
        staged = collections.Counter((c.component, c.section) for c in rep.classes)
        if projected != staged:
            bad.append(f"{name}: stage-1 projections differ")
    verdict(4, "Postnikov pipeline vs brute force", not bad and not oversize,
            f"{len(fixtures)} fixtures, {classes} classes"
            + (f"; failing {bad}" if bad else "") + (f"; out of scope {oversize}" if oversize else ""),
            600)


# -- 5 ------------------------------------------------------------------

def _extension_fixtures():
    SL = FiniteGroup.matrix_group([((1, 1), (0, 1)), ((0, -1), (1, 0))], 3, name="SL23")
    GL = FiniteGroup.matrix_group([((1, 1), (0, 1)), ((0, -1), (1, 0)), ((-1, 0), (0, 1))], 3,
                                  name="GL23")
    groups = [FiniteGroup.cyclic(4), FiniteGroup.cyclic(6), FiniteGroup.cyclic(8),
              FiniteGroup.cyclic(9), FiniteGroup.klein(), S3, FiniteGroup.dihedral(4),
              FiniteGroup.quaternion(), FiniteGroup.direct_product(C2, FiniteGroup.cyclic(4)),
              FiniteGroup.dicyclic(3), FiniteGroup.dihedral(6), SL, GL]
    out = []
    for G in groups:
        seen = set()
        for H in G.all_subgroups():
            mem = sorted(H)
            if len(mem) in (1, G.order) or not G.is_normal(frozenset(mem)):
                continue
            E = extension_from_normal(G, mem)
            key = (len(mem), E.quotient.order)
            if E.quotient.order > 4 or key in seen:
                continue
            seen.add(key)
            out.append((f"{G.name}/{len(mem)}", E))
    return out


def test_splitting_criterion(verdict):
    fixtures = _extension_fixtures()
    bad, split = [], 0
    for name, E in fixtures:
        P, pm = p1_model(E, N=2)
        has_fixed = bool(hfp_bruteforce(P, meta=pm))
        splits = bool(section_classes(E))
        split += splits
        if has_fixed != splits:
            bad.append(name)
    orders = max(E.total.order for _, E in fixtures)
    verdict(5, "P1 fixed points <=> splitting", not bad and len(fixtures) == 20,
            f"{len(fixtures)} extensions ({split} split, {len(fixtures) - split} non-split, "
            f"orders <= {orders})" + (f"; failing {bad}" if bad else ""), 120)


# -- 6 ------------------------------------------------------------------

def _em_fixtures():
    out = []
    for G in (C2, C3):
        for m, n in ((2, 1), (3, 1), (2, 2)):
            out.append((f"K(Z/{m},{n}) over {G.name}, trivial", GModule.trivial(G, [m]), n))
            if G.order == 2:
                out.append((f"K(Z/{m},{n}) over {G.name}, inversion",
                            GModule.cyclic_with_sign(G, m, [1, -1]), n))
    return out


def test_em_and_hypercohomology(verdict):
    bad = []
    fixtures = _em_fixtures()
    for name, M, n in fixtures:
        X, meta = em_model(M, n)
        if len(hfp_bruteforce(X, meta=meta)) != em_fixed_points(M, n).order:
            bad.append(name)
    rng = random.Random(6)
    for k in range(30):
        G = rng.choice([C2, C3])
        C = random_complex(rng, G, lo=rng.randint(0, 1), length=2, moduli=(0, 2, 3, 4))
        S = C.suspend(1)
        for n in range(-C.hi, 2):
            if str(hypercohomology(G, S, n - 1).group) != str(hypercohomology(G, C, n).group):
                bad.append(f"complex {k}: shift at {n}")
        M = random_module(rng, G)
        d = rng.randint(0, 2)
        if str(hypercohomology(G, concentrated(M, 0), d).group) != \
                str(group_cohomology(G, M, d).group):
            bad.append(f"complex {k}: concentrated in degree {d}")
    verdict(6, "EM fixed points and hypercohomology", not bad,
            f"{len(fixtures)} EM fixtures, 30 random complexes"
            + (f"; failing {bad}" if bad else ""), 600)


# -- 7 ------------------------------------------------------------------

def test_les_exactness(verdict):
    rng = random.Random(7)
    groups = small_groups(8)
    bad, orders = [], set()
    for k in range(30):
        G = rng.choice(groups)
        orders.add(G.order)
        i, p = random_ses(rng, G)
        if not les_check(G, i, p, range(0, 2)).exact:
            bad.append(k)
    verdict(7, "long exact sequences", not bad,
            f"30 random sequences over groups of orders {sorted(orders)}, degrees 0..1"
            + (f"; failing {bad}" if bad else ""), 120)


# -- 8 ------------------------------------------------------------------

def _torsor_actions():
    outer = next(a for a in automorphisms(S3) if a != tuple(S3.elements))
    return [GroupAction.trivial(C2, C2), GroupAction.trivial(C3, C2),
            GroupAction.trivial(C2, C3), GroupAction(C2, C3, [(0, 1, 2), (0, 2, 1)]),
            GroupAction.trivial(C3, C3),
            GroupAction.trivial(C2, S3), GroupAction.trivial(C3, S3),
            GroupAction(C2, S3, [tuple(S3.elements), outer])]


def test_descent_suite(verdict):
    bad, count = [], 0
    for act in _torsor_actions():
        h1 = h1_nonabelian(act)
        tag = f"{act.G.name} on {act.A.name}"
        for u in iter_cocycles(act):
            count += 1
            P = principal_from_cocycle(act, u)
            tc = classify_torsor(P, 0, h1)
            cm = classifying_map(P, N=2)
            H = torsor_hfp(P, 0, N=2)
            comp = SimplicialMap(H.source, cm.map.target,
                                 [tuple(cm.map.maps[n][H.maps[n][x]]
                                        for x in range(H.source.size(n))) for n in range(3)])
            via_hfp = cocycle_from_hfp(comp, act).values
            if tc.cocycle.values != tuple(u) or via_hfp != tuple(u) \
                    or h1.class_of(via_hfp) != tc.index:
                bad.append(f"{tag} {u}: round trip")
            r = compare_with_tau(act, u)
            if not (r["agree"] and r["alpha_to_neutral"]):
                bad.append(f"{tag} {u}: twist")
    verdict(8, "torsor descent and twisting", not bad,
            f"{count} principal torsors over Z/2, Z/3, S3 coefficients"
            + (f"; failing {bad}" if bad else ""), 120)


# -- 9 ------------------------------------------------------------------

def _random_family(rng, G):
    subs = [tuple(sorted(H)) for H in G.all_subgroups()]
    places = []
    for _ in range(rng.randint(1, 3)):
        H = rng.choice(subs)
        inside = [I for I in subs if set(I) <= set(H)
                  and all(G.mul(G.mul(h, i), G.inv(h)) in I for h in H for i in I)]
        places.append((H, rng.choice(inside)))
    ramified = [k for k in range(len(places)) if rng.random() < 0.3]
    return PlaceFamily(G, places, ramified)


def _towers():
    """Every tower with levels of size <= 2 up to length 5, and of sizes 1..2 at length 6."""
    for length in range(1, 7):
        choices = (0, 1, 2) if length <= 5 else (1, 2)
        for sizes in itertools.product(choices, repeat=length):
            spaces = [itertools.product(range(sizes[k]), repeat=sizes[k + 1])
                      for k in range(length - 1)]
            for maps in itertools.product(*spaces):
                yield list(sizes), [list(m) for m in maps]


def test_local_global_suite(verdict):
    V = FiniteGroup.klein()
    M = GModule.trivial(V, [2])
    fam = PlaceFamily.cyclic(V)
    sha1 = sha_kernel(V, M, 1, fam).group
    sha2 = sha_kernel(V, M, 2, fam).group
    problems = []
    if sha1.order != 1:
        problems.append(f"Sha^1 = {sha1}, expected 0")
    if sha2.order == 1:
        problems.append(f"Sha^2 = {sha2}, expected nonzero")

    rng = random.Random(9)
    groups = [C2, C3, FiniteGroup.cyclic(4), V, S3]
    for k in range(20):
        G = rng.choice(groups)
        X, meta = em_model(random_module(rng, G), 1)
        model = local_global_model(X, _random_family(rng, G), meta=meta)
        part = fiber_partition(model)
        members = sorted(x for xs in part.values() for x in xs)
        if members != list(range(len(model.global_classes))):
            problems.append(f"fixture {k}: fibers do not partition")
        for y in adelic_set(model):
            if fibers(model, y) != part.get(y.classes, []):
                problems.append(f"fixture {k}: fiber of {y.classes}")

    towers = nonempty = 0
    for sizes, maps in _towers():
        towers += 1
        fams = [f for f in itertools.product(*[range(s) for s in sizes])
                if all(maps[j][f[j + 1]] == f[j] for j in range(len(maps)))]
        r = inverse_limit_tower(sizes, maps)
        nonempty += bool(fams)
        if r.nonempty != bool(fams) or (fams and tuple(r.certificate) not in fams):
            problems.append(f"tower {sizes} {maps}")
            break
    verdict(9, "local-global suite", not problems,
            f"Sha^1={sha1}, Sha^2={sha2}; 20 fiber fixtures; {nonempty} nonempty of {towers} "
            f"towers" + (f"; {problems[:3]}" if problems else ""), 120)


# -- 10 -----------------------------------------------------------------

def test_determinism_and_round_trip(verdict):
    bad, runs = [], 0
    for command, cases in CASES.items():
        for case, argv in cases:
            first = run_case(command, argv)
            second = run_case(command, argv)
            runs += 2
            golden = (GOLDEN / command / f"{case}.json").read_bytes()
            if first != second:
                bad.append(f"{command}/{case}: rerun differs")
            elif first[1] != golden:
                bad.append(f"{command}/{case}: differs from golden")
    text = SESSION.read_text(encoding="utf-8")
    if serialize(load_session(SESSION)) != text:
        bad.append("session round trip")
    verdict(10, "CLI determinism and session round trip", not bad,
            f"{runs} runs over {len(CASES)} commands" + (f"; failing {bad}" if bad else ""), 60)
