import itertools

import pytest

from hfpkit.caps import CapExceeded, InvalidInput
from hfpkit.groups import FiniteGroup
from hfpkit.hfp import hfp_bruteforce
from hfpkit.homalg.modules import GModule
from hfpkit.localglobal import (PlaceFamily, adelic_set, fiber_partition, fibers,
                                inverse_limit_tower, local_global_model, loc_map, obstruction_set,
                                restrict_class, sha_kernel, unramified_classes)
from hfpkit.models import em_model

V = FiniteGroup.klein()
C2 = FiniteGroup.cyclic(2)


def brute_sha2(family):
    """Order of ker(H²(V, Z/2) -> ∏ H²(⟨g⟩, Z/2)) by listing normalized cocycles."""
    E = [(0, 0), (1, 0), (0, 1), (1, 1)]
    nz = E[1:]

    def add(a, b):
        return ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)

    def is_cocycle(f):
        return all((f[b, c] - f[add(a, b), c] + f[a, add(b, c)] - f[a, b]) % 2 == 0
                   for a, b, c in itertools.product(E, repeat=3))

    cocycles = []
    for vals in itertools.product((0, 1), repeat=9):
        f = {(a, b): 0 for a in E for b in E}
        f.update(zip(itertools.product(nz, nz), vals))
        if is_cocycle(f):
            cocycles.append(f)
    bounds = set()
    for vals in itertools.product((0, 1), repeat=3):
        b = dict(zip(nz, vals))
        b[0, 0] = 0
        bounds.add(tuple((b[y] - b[add(x, y)] + b[x]) % 2 for x in nz for y in nz))

    def key(f):
        return tuple(f[a, b] for a in nz for b in nz)

    # on a cyclic group of order 2 a normalized class is detected by f(g, g)
    kernel = [f for f in cocycles if all(f[g, g] == 0 for g in family)]
    return len({min(tuple((x + y) % 2 for x, y in zip(key(f), c)) for c in bounds)
                for f in kernel})


def v4_family(labels):
    return PlaceFamily.unramified(V, [H for H, _ in PlaceFamily.cyclic(V).places
                                      if V.labels[H[1]] in labels])


def test_cyclic_family_places():
    fam = PlaceFamily.cyclic(V)
    assert fam.places == [((0, 1), (0,)), ((0, 2), (0,)), ((0, 3), (0,))]


def test_place_family_validation():
    with pytest.raises(InvalidInput):
        PlaceFamily(V, [((0, 1), (0, 2))])
    with pytest.raises(InvalidInput):
        PlaceFamily(V, [((0, 1), (0,))], ramified=[3])


def test_place_family_json_round_trip():
    fam = PlaceFamily.cyclic(V)
    assert PlaceFamily.from_json(fam.to_json()).to_json() == fam.to_json()


def test_sha_degree_one_vanishes():
    M = GModule.trivial(V, [2])
    assert sha_kernel(V, M, 1, PlaceFamily.cyclic(V)).group.order == 1


def test_sha_degree_two_all_cyclic_matches_brute_force():
    M = GModule.trivial(V, [2])
    got = sha_kernel(V, M, 2, PlaceFamily.cyclic(V)).group.order
    assert got == brute_sha2([(1, 0), (0, 1), (1, 1)]) == 1


def test_sha_degree_two_two_axes_matches_brute_force():
    M = GModule.trivial(V, [2])
    got = sha_kernel(V, M, 2, v4_family(("(0,1)", "(1,0)"))).group.order
    assert got == brute_sha2([(1, 0), (0, 1)]) == 2


def test_sha_degree_three_all_cyclic():
    M = GModule.trivial(V, [2])
    r = sha_kernel(V, M, 3, PlaceFamily.cyclic(V))
    assert str(r.group) == "Z/2"
    assert r.to_json()["representatives"] == [[0, 0, 0, 0], [0, 1, 1, 0]]


def test_sha_empty_family_is_everything():
    M = GModule.trivial(V, [2])
    assert str(sha_kernel(V, M, 2, []).group) == "Z/2 + Z/2 + Z/2"


def test_local_global_model_for_k_v4_1():
    X, m = em_model(GModule.trivial(V, [2]), 1)
    model = local_global_model(X, PlaceFamily.cyclic(V), meta=m)
    assert model.to_json() == {"global": 4, "local": [2, 2, 2],
                               "unramified": [[0, 1], [0, 1], [0, 1]]}
    part = fiber_partition(model)
    assert part == {(0, 0, 0): [0], (0, 1, 1): [1], (1, 0, 1): [2], (1, 1, 0): [3]}
    assert fibers(model, (0, 0, 0)) == [0]
    assert fibers(model, (1, 1, 1)) == []
    assert len(adelic_set(model)) == 8
    assert len(obstruction_set(model)) == 4


def test_loc_map_agrees_with_fiber_partition():
    X, m = em_model(GModule.trivial(V, [2]), 1)
    model = local_global_model(X, PlaceFamily.cyclic(V), meta=m)
    for y, xs in fiber_partition(model).items():
        for x in xs:
            assert loc_map(model, x).classes == y


def test_ramified_place_restricts_unramified_classes():
    X, m = em_model(GModule.trivial(V, [2]), 1)
    fam = PlaceFamily(V, [((0, 1), (0, 1)), (V.elements, (0,))], ramified=[1])
    model = local_global_model(X, fam, meta=m)
    assert model.to_json() == {"global": 4, "local": [2, 4], "unramified": [[0], [0, 1, 2, 3]]}


def test_restrict_class_to_trivial_subgroup():
    X, m = em_model(GModule.trivial(C2, [2]), 1)
    for x in hfp_bruteforce(X, meta=m):
        k, _ = restrict_class(X, x, [0], meta=m)
        assert k == 0


def test_unramified_classes_with_full_inertia():
    X, m = em_model(GModule.trivial(C2, [2]), 1)
    assert set(unramified_classes(X, [0, 1], [0, 1], meta=m)) == {0}


def test_limit_of_surjective_tower():
    r = inverse_limit_tower([3, 2, 4], [[0, 0], [1, 1, 0, 1]])
    assert r.to_json() == {"nonempty": True, "certificate": [0, 0, 2],
                           "stable_image_sizes": [1, 2, 4], "size": 4}


def test_limit_with_empty_level():
    r = inverse_limit_tower([1, 2, 0], [[0, 0], []])
    assert not r.nonempty and r.size == 0


def test_limit_validation_and_depth_cap():
    with pytest.raises(InvalidInput):
        inverse_limit_tower([2, 2], [[0, 5]])
    with pytest.raises(CapExceeded):
        inverse_limit_tower(lambda k: (1, (0,)), depth_cap=5)
