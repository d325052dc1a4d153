import pytest

from hfpkit.caps import InvalidInput
from hfpkit.equivariant import (Extension, GSimplicialSet, bg_space, bg_with_action, eg_pullback,
                                eg_space, extension_from_action, extension_from_normal,
                                fixed_subcomplex, homotopy_quotient, is_free_action,
                                pi1_extension, pi1_of_contractible_quotient, quotient)
from hfpkit.groups import FiniteGroup, GroupAction, find_isomorphism as group_iso, homomorphisms
from hfpkit.homalg.dold_kan import simplicial_homology
from hfpkit.simplicial.constructions import point
from hfpkit.simplicial.maps import find_isomorphism

C2, C3, C4 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3), FiniteGroup.cyclic(4)
S3 = FiniteGroup.symmetric(3)


def inversion(n):
    return GroupAction(C2, FiniteGroup.cyclic(n),
                       [tuple(range(n)), tuple((-a) % n for a in range(n))])


def test_eg_sizes_and_freeness():
    X = eg_space(S3, 3)
    X.validate()
    assert X.space.sizes == (6, 36, 216, 1296)
    free, witness = is_free_action(X)
    assert free and witness is None


def test_eg_is_contractible():
    X = eg_space(S3, 3)
    assert [str(h) for h in simplicial_homology(X.space, 2)] == ["Z", "0", "0"]


def test_quotient_of_eg_is_bg():
    Q, _ = quotient(eg_space(S3, 3))
    B = bg_space(S3, 3)
    assert Q.sizes == B.sizes == (1, 6, 36, 216)
    assert find_isomorphism(Q, B) is not None


def test_fixed_points_of_eg_are_empty():
    assert fixed_subcomplex(eg_space(C2, 2)).sizes == (0, 0, 0)


def test_trivial_action_is_not_free():
    pt = GSimplicialSet.trivial_action(point(2), C2)
    free, witness = is_free_action(pt)
    assert not free and witness is not None
    assert fixed_subcomplex(pt).sizes == (1, 1, 1)


def test_homotopy_quotient_of_point_is_bg():
    hq = homotopy_quotient(GSimplicialSet.trivial_action(point(2), S3))
    assert find_isomorphism(hq.space, bg_space(S3, 2)) is not None


def test_pi1_of_eg_quotient_is_g():
    r = pi1_of_contractible_quotient(eg_space(S3, 3))
    assert r.group.order == 6
    assert all(r.checks.values())


def test_pi1_of_pullback_quotient():
    sign = next(h for h in homomorphisms(S3, C2) if len(set(h)) == 2)
    r = pi1_of_contractible_quotient(eg_pullback(S3, C2, sign, 3))
    assert r.group.order == 2
    assert len(r.stabilizer_closure) == 3


def test_pi1_of_point_quotient_is_trivial():
    pt = GSimplicialSet.trivial_action(point(2), S3)
    assert pi1_of_contractible_quotient(pt).group.order == 1


def test_extension_from_trivial_action_on_bg():
    ext = pi1_extension(GSimplicialSet.trivial_action(bg_space(C2, 2), C2))
    assert ext.exact
    assert ext.total.order == 4 and ext.total.is_abelian


def test_extension_from_inversion_is_semidirect():
    act = inversion(3)
    Z = bg_with_action(act, 2)
    Z.validate()
    ext = pi1_extension(Z)
    assert ext.total.order == 6 and not ext.total.is_abelian
    assert group_iso(ext.total, act.semidirect()) is not None
    assert extension_from_action(act).exact


def test_extension_from_normal_subgroup():
    ext = extension_from_normal(C4, [0, 2])
    assert ext.exact
    assert (ext.kernel.order, ext.quotient.order) == (2, 2)


def test_extension_problems_are_reported():
    bad = Extension(C4, C2, C2, (0, 1), (0, 1, 0, 1))
    assert "inclusion is not a homomorphism" in bad.problems()
    assert not bad.exact


def test_invalid_action_rejected():
    with pytest.raises(InvalidInput):
        GroupAction(C2, C3, [(0, 1, 2), (0, 1, 1)])


def test_gsset_json_round_trip():
    X = eg_space(C3, 2)
    d = X.to_json()
    assert GSimplicialSet.from_json(d).to_json() == d
