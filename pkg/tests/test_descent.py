import pytest

from hfpkit.caps import InvalidInput
from hfpkit.descent import (classify_torsor, classifying_map, cocycle_from_hfp, compare_with_tau,
                            hfp_from_cocycle, inverse_cocycle, principal_from_cocycle,
                            torsor_groupoid, torsor_hfp, twist_groupoid_iso, twist_torsor)
from hfpkit.groups import FiniteGroup, GroupAction, automorphisms
from hfpkit.homalg.dold_kan import simplicial_homology
from hfpkit.homalg.nonabelian import h1_nonabelian, iter_cocycles
from hfpkit.simplicial.homotopy import pi0
from hfpkit.simplicial.sset import SimplicialMap

C2, C3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
S3 = FiniteGroup.symmetric(3)


def _actions():
    auts = automorphisms(S3)
    outer = next(a for a in auts if a != tuple(S3.elements))
    return [
        ("triv_c2_c2", GroupAction.trivial(C2, C2), 2),
        ("triv_c2_c3", GroupAction.trivial(C2, C3), 1),
        ("inv_c2_c3", GroupAction(C2, C3, [(0, 1, 2), (0, 2, 1)]), 1),
        ("triv_c2_s3", GroupAction.trivial(C2, S3), 2),
        ("triv_c3_s3", GroupAction.trivial(C3, S3), 2),
        ("inner_c2_s3", GroupAction(C2, S3, [tuple(S3.elements), outer]), 2),
    ]


ACTIONS = _actions()


@pytest.mark.parametrize("name,act,size", ACTIONS, ids=[a[0] for a in ACTIONS])
def test_h1_size(name, act, size):
    assert len(h1_nonabelian(act)) == size


@pytest.mark.parametrize("name,act,size", ACTIONS, ids=[a[0] for a in ACTIONS])
def test_torsor_round_trips(name, act, size):
    h1 = h1_nonabelian(act)
    for u in iter_cocycles(act):
        P = principal_from_cocycle(act, u)
        P.validate()
        tc = classify_torsor(P, 0, h1)
        assert tc.cocycle.values == tuple(u)
        assert tc.index == h1.class_of(u)


@pytest.mark.parametrize("name,act,size", ACTIONS, ids=[a[0] for a in ACTIONS])
def test_fixed_point_route_recovers_cocycle(name, act, size):
    for u in iter_cocycles(act):
        P = principal_from_cocycle(act, u)
        cm = classifying_map(P, N=2)
        assert cm.is_equivariant()
        H = torsor_hfp(P, 0, N=2)
        comp = [tuple(cm.map.maps[n][H.maps[n][x]] for x in range(H.source.size(n)))
                for n in range(3)]
        Hc = SimplicialMap(H.source, cm.map.target, comp)
        assert cocycle_from_hfp(Hc, act).values == tuple(u)
        assert cocycle_from_hfp(hfp_from_cocycle(act, u), act).values == tuple(u)


@pytest.mark.parametrize("name,act,size", ACTIONS, ids=[a[0] for a in ACTIONS])
def test_twisting_is_invertible_and_matches_tau(name, act, size):
    for u in iter_cocycles(act):
        P = principal_from_cocycle(act, u)
        T = twist_torsor(P, u)
        Ti = twist_torsor(T.target, inverse_cocycle(act, u))
        ident = tuple(range(len(T.perm)))
        assert T.bijective and not T.equivariance_failures()
        assert T.compose(Ti) == ident and Ti.compose(T) == ident
        r = compare_with_tau(act, u)
        assert r["agree"] and r["alpha_to_neutral"]


def test_groupoid_twist_is_functorial():
    t = S3.index("(1 2)")
    conj = GroupAction(C2, S3, [tuple(S3.elements),
                                tuple(S3.mul(S3.mul(t, x), t) for x in S3.elements)])
    tw = twist_groupoid_iso(conj, (0, t))
    assert tw.bijective
    assert not tw.functoriality_failures() and not tw.equivariance_failures()


def test_torsor_groupoid_nerve_is_contractible():
    P = principal_from_cocycle(GroupAction.trivial(C2, C2), (0, 0))
    S = torsor_groupoid(P).nerve(3)
    assert len(pi0(S.space)) == 1
    assert [str(h) for h in simplicial_homology(S.space, 2)] == ["Z", "0", "0"]


def test_non_cocycle_rejected():
    with pytest.raises(InvalidInput):
        principal_from_cocycle(GroupAction.trivial(C2, C3), (0, 1))
