import pytest

from hfpkit.caps import CapExceeded, InvalidInput, caps_override
from hfpkit.equivariant import bg_space, eg_space
from hfpkit.groups import FiniteGroup
from hfpkit.homalg.dold_kan import simplicial_homology
from hfpkit.simplicial.constructions import (boundary_simplex, circle, coskeleton, discrete,
                                             is_coskeletal, nerve, point, postnikov, product,
                                             skeleton, standard_simplex, truncate)
from hfpkit.simplicial.groupoid import Groupoid
from hfpkit.simplicial.homotopy import check_kan, edge_path_pi1, pi0
from hfpkit.simplicial.maps import find_isomorphism, hom_count, homotopy_classes
from hfpkit.simplicial.sset import SimplicialSet

Z2, Z3 = FiniteGroup.cyclic(2), FiniteGroup.cyclic(3)
S3 = FiniteGroup.symmetric(3)


def nd(X, n):
    return len(X.nondegenerate[n])


# -- truncation and skeleta --------------------------------------------

def test_truncate_triangle():
    T = truncate(standard_simplex(2, 3), 1)
    assert T.dim_bound == 1
    assert T.size(0) == 3 and nd(T, 1) == 3


def test_truncate_at_dim_bound_keeps_everything():
    X = standard_simplex(2, 3)
    assert truncate(X, 3).same_as(X)


def test_truncate_eg_to_vertices():
    assert truncate(eg_space(Z2, 2).space, 0).size(0) == 2


def test_skeleton_of_point_is_point():
    P = skeleton(truncate(point(0), 0), 3)
    assert P.sizes == (1, 1, 1, 1)
    assert all(nd(P, n) == 0 for n in range(1, 4))


def test_skeleton_of_interval_fills_degenerately():
    S = skeleton(truncate(standard_simplex(1, 1), 1), 2)
    assert S.size(0) == 2 and nd(S, 1) == 1
    assert nd(S, 2) == 0
    assert find_isomorphism(S, standard_simplex(1, 2)) is not None


def test_skeleton_adjunction_example():
    S = truncate(discrete(2, 0), 0)
    X = standard_simplex(1, 2)
    assert hom_count(skeleton(S, 2), X) == hom_count(S, truncate(X, 0)) == 4


# -- coskeleta ---------------------------------------------------------

def test_coskeleton_of_two_points():
    C = coskeleton(truncate(discrete(2, 0), 0), 2)
    assert C.sizes == (2, 4, 8)


def test_coskeleton_of_coskeletal_space_is_itself():
    B = bg_space(Z3, 3)
    assert is_coskeletal(B, 2)
    C = coskeleton(truncate(B, 2), 3)
    assert find_isomorphism(C, B) is not None


def test_coskeleton_of_group_is_eg():
    G = FiniteGroup.cyclic(3)
    T = truncate(discrete(3, 0), 0)
    C = coskeleton(T, 3)
    assert C.sizes == eg_space(G, 3).space.sizes


def test_coskeleton_respects_simplex_cap():
    with caps_override(simplices=50):
        with pytest.raises(CapExceeded) as exc:
            coskeleton(truncate(discrete(3, 0), 0), 3)
    assert exc.value.cap == "simplices"


# -- postnikov ---------------------------------------------------------

def test_postnikov_of_bz2_is_bz2():
    B = bg_space(Z2, 3)
    assert find_isomorphism(postnikov(B, 1), B) is not None


def test_postnikov_zero_is_components():
    X = discrete(3, 2)
    P = postnikov(X, 0)
    assert P.size(0) == 3 and len(pi0(P)) == 3
    assert is_coskeletal(P, 1)


def test_postnikov_of_simplex():
    D = standard_simplex(2, 3)
    for n in (1, 2):
        assert find_isomorphism(postnikov(D, n), D) is not None


def test_postnikov_needs_room():
    with pytest.raises(InvalidInput):
        postnikov(standard_simplex(1, 1), 1)


# -- products and nerves -----------------------------------------------

def test_product_with_point():
    X = circle(2)
    assert find_isomorphism(product(point(2), X), X) is not None


def test_product_of_intervals():
    P = product(standard_simplex(1, 2), standard_simplex(1, 2))
    assert P.size(0) == 4 and P.size(1) == 9


def test_product_sizes_levelwise():
    E = eg_space(Z2, 2).space
    X = circle(2)
    assert product(E, X).sizes == tuple(a * b for a, b in zip(E.sizes, X.sizes))


def test_nerve_of_one_object_groupoid_is_bg():
    assert find_isomorphism(nerve(Groupoid.from_group(S3), 2), bg_space(S3, 2)) is not None


def test_nerve_of_codiscrete_groupoid_is_contractible():
    X = nerve(Groupoid.codiscrete(["a", "b", "c"]), 3)
    H = simplicial_homology(X, 2)
    assert [str(h) for h in H] == ["Z", "0", "0"]


def test_nerve_of_discrete_groupoid():
    C = Groupoid([0, 1, 2], [(0, 0), (1, 1), (2, 2)],
                 [[0, None, None], [None, 1, None], [None, None, 2]])
    X = nerve(C, 2)
    assert len(pi0(X)) == 3 and X.size(2) == 3


def test_groupoid_rejects_bad_composition():
    with pytest.raises(InvalidInput):
        Groupoid([0], [(0, 0), (0, 0)], [[0, 0], [0, 0]])


# -- Kan condition -----------------------------------------------------

def test_bg_is_kan():
    assert check_kan(bg_space(S3, 3), 3).ok


def test_simplex_and_boundary_kan_failures():
    # Δ² has an outer horn that does not fill; ∂Δ² also misses the inner horn
    rep = check_kan(standard_simplex(2, 3), 2)
    assert not rep.ok
    n, k, _ = rep.counterexample
    assert n == 2
    assert not check_kan(boundary_simplex(2, 3), 2).ok


def test_point_is_kan():
    assert check_kan(point(3), 3).ok


# -- components and fundamental groups ---------------------------------

def test_pi0_examples():
    assert len(pi0(bg_space(S3, 2))) == 1
    assert len(pi0(discrete(4, 1))) == 4
    assert len(pi0(eg_space(Z3, 1).space)) == 1


def test_edge_path_pi1_of_bs3():
    P = edge_path_pi1(bg_space(S3, 2), 0)
    assert P.group.order == 6 and not P.group.is_abelian


def test_edge_path_pi1_trivial_cases():
    assert edge_path_pi1(standard_simplex(2, 2), 0).group.order == 1
    assert edge_path_pi1(nerve(Groupoid.codiscrete(["a", "b"]), 2), 0).group.order == 1


def test_edge_path_pi1_of_circle_hits_order_cap():
    with pytest.raises(CapExceeded):
        edge_path_pi1(circle(2), 0)


# -- homotopy classes --------------------------------------------------

def test_homotopy_classes_from_point():
    assert len(homotopy_classes(point(2), bg_space(Z3, 2))) == 1


def test_homotopy_classes_circle_to_bz2():
    assert len(homotopy_classes(circle(2), bg_space(Z2, 2))) == 2


def test_homotopy_classes_to_point():
    assert len(homotopy_classes(circle(2), point(2))) == 1


# -- validation and json -----------------------------------------------

def test_simplicial_identities_are_checked():
    with pytest.raises(InvalidInput):
        SimplicialSet([["a", "b"], ["e", "sa", "sb"]], [[(), ()], [(0, 1), (0, 0), (1, 1)]],
                      [[(0,), (0,)]])


def test_json_round_trip():
    X = bg_space(S3, 2)
    d = X.to_json()
    assert SimplicialSet.from_json(d).to_json() == d
