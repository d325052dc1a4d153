import pytest

from hfpkit.equivariant import Extension, eg_space, extension_from_normal
from hfpkit.groups import FiniteGroup, GroupAction
from hfpkit.hfp import (correct_partial, e2_page, em_fixed_points, hfp_bruteforce, hfp_postnikov,
                        obstruction_class, section_classes)
from hfpkit.homalg.modules import GModule
from hfpkit.models import bg_model, discrete_model, em_model, p1_model, twisted_model
from hfpkit.simplicial.maps import MapSearch
from hfpkit.simplicial.sset import SimplicialMap

C2, C3, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)


def both_routes(X, m):
    brute = hfp_bruteforce(X, meta=m)
    report = hfp_postnikov(X, m)
    return len(brute), report


def test_point_has_one_fixed_point():
    X, m = discrete_model(C2, [[0], [0]], N=3)
    n, r = both_routes(X, m)
    assert n == r.count == 1


def test_free_orbit_has_none():
    X, m = discrete_model(C2, [[0, 1], [1, 0]], N=3)
    n, r = both_routes(X, m)
    assert n == r.count == 0


def test_bz2_trivial_action():
    # Hom(C2, C2) modulo conjugation in an abelian group: two classes
    X, m = bg_model(GroupAction.trivial(C2, C2), N=3)
    brute = hfp_bruteforce(X, meta=m)
    r = hfp_postnikov(X, m)
    assert len(brute) == r.count == 2
    assert len({r.project(c.map) for c in brute}) == 2


def test_em_sign_module_degree_two():
    M = GModule.cyclic_with_sign(C2, 3, [1, -1])
    X, m = em_model(M, 2)
    n, r = both_routes(X, m)
    assert n == r.count == 1
    assert str(em_fixed_points(M, 2)) == "0"


@pytest.mark.parametrize("M,n,expect", [
    (GModule.trivial(C3, [3]), 2, 3),
    (GModule.trivial(C3, [2]), 2, 1),
    (GModule.trivial(C2, [2]), 1, 2),
    (GModule.trivial(C3, [3]), 1, 3),
    (GModule.cyclic_with_sign(C2, 3, [1, -1]), 1, 1),
])
def test_em_fixed_points_match_brute_force(M, n, expect):
    X, m = em_model(M, n)
    assert len(hfp_bruteforce(X, meta=m)) == expect
    assert em_fixed_points(M, n).order == expect


def test_twisted_model_has_one_obstructed_section():
    Mt = GModule.trivial(C2, [2])
    X, m = twisted_model(C2, Mt, [1], C2, N=4)
    n, r = both_routes(X, m)
    assert n == r.count == 2
    zero = [o["zero"] for o in r.obstructions]
    assert sorted(zero) == [False, True]


def test_untwisted_model_has_no_obstruction():
    Mt = GModule.trivial(C2, [2])
    X, m = twisted_model(C2, Mt, [0], C2, N=4)
    n, r = both_routes(X, m)
    assert n == r.count == 4
    assert all(s["vanishes"] for s in r.stages["2"])


def test_e2_page_entries():
    Mt = GModule.trivial(C2, [2])
    X, m = twisted_model(C2, Mt, [0], C2, N=4)
    base = hfp_bruteforce(X, meta=m)[0]
    E = e2_page(X, m, base).to_json()
    assert E["entries"]["0,0"] == {"kind": "pointed set", "size": 1, "group": None}
    assert E["entries"]["2,2"]["group"] == "Z/2"
    assert len(E["entries"]) == 8


def test_sections_of_z4_over_z2():
    E = Extension(C4, C2, C2, (0, 2), (0, 1, 0, 1))
    assert section_classes(E) == []
    P, pm = p1_model(E, N=3)
    assert len(hfp_bruteforce(P, meta=pm)) == 0


@pytest.mark.parametrize("G,normal_order,expect", [
    (FiniteGroup.dihedral(4), 2, 0),
    (FiniteGroup.quaternion(), 4, 0),
    (FiniteGroup.dicyclic(3), 3, 1),
])
def test_p1_model_counts_section_classes(G, normal_order, expect):
    H = next(h for h in G.all_subgroups()
             if len(h) == normal_order and G.is_normal(frozenset(h)))
    E = extension_from_normal(G, sorted(H))
    P, pm = p1_model(E, N=2)
    assert len(hfp_bruteforce(P, meta=pm)) == len(section_classes(E)) == expect


def test_obstruction_detects_and_corrects_bad_partial_map():
    M = GModule.trivial(C3, [3])
    X, m = em_model(M, 2)
    E2 = eg_space(C3, 2)
    ms = MapSearch(E2.space, X.space, inverse=X.inverse, src_action=E2.action,
                   tgt_action=X.action)
    f = ms.expand(ms.first())
    bent = {(g, h): ((1,) if (g, h) == (1, 1) else (0,)) for g in range(3) for h in range(3)}
    lvl = m.add_cochain(2, C3, f.maps[2], bent)
    f2 = SimplicialMap(E2.space, X.space, [f.maps[0], f.maps[1], lvl], check=True)
    ob = obstruction_class(X, f2, m)
    assert ob.zero and not ob.to_json()["extends"]
    fixed = correct_partial(X, f2, m, ob)
    g = SimplicialMap(E2.space, X.space, [f.maps[0], f.maps[1], fixed])
    assert obstruction_class(X, g, m).to_json()["extends"]
