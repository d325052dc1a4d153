import numpy as np
import pytest

from hfpkit.caps import InvalidInput
from hfpkit.equivariant import eg_space
from hfpkit.groups import FiniteGroup, GroupAction
from hfpkit.homalg.abelian import FinGenAbGroup
from hfpkit.homalg.chain import (ChainComplex, ChainMap, concentrated, quasi_isomorphic_via,
                                 truncate_above, truncate_below, two_term)
from hfpkit.homalg.cohomology import count_cocycles, group_cohomology
from hfpkit.homalg.dold_kan import dold_kan_overline, free_abelianization, moore_underline
from hfpkit.homalg.fp import solve_fp
from hfpkit.homalg.hyper import hypercohomology, les_check, split_ses
from hfpkit.homalg.lattice import invariant_factors, smith_normal_form, solve_mod
from hfpkit.homalg.modules import GModule
from hfpkit.homalg.nonabelian import Cocycle1, h1_nonabelian, tau_twist, twist_action
from hfpkit.simplicial.homotopy import check_kan, edge_path_pi1, pi0

C2 = FiniteGroup.cyclic(2)
S3 = FiniteGroup.symmetric(3)


def strs(groups):
    return [str(g) for g in groups]


def H(C, degrees):
    return [str(C.homology(n).group) for n in degrees]


# -- Smith normal form -------------------------------------------------

def test_snf_diagonal():
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
    U, D, V = smith_normal_form(A)
    assert [D[i, i] for i in range(3)] == [2, 6, 12]
    assert (U.dot(D).dot(V) == A).all()


def test_invariant_factors():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[0, 0], [0, 0]]) == []


def test_fp_solver_agrees_with_generic_solver():
    M = np.array([[1, 1, 0], [0, 1, 1]], dtype=object)
    b = np.array([1, 0], dtype=object)
    x = solve_fp(M, b, 2)
    assert x is not None and list((M.dot(x)) % 2) == [1, 0]
    assert solve_fp(np.array([[0, 0]], dtype=object), np.array([1], dtype=object), 3) is None
    y = solve_mod(M, b, [2, 2])
    assert list((M.dot(y)) % 2) == [1, 0]


def test_fin_gen_ab_group_str():
    assert str(FinGenAbGroup((2, 2), 1)) == "Z/2 + Z/2 + Z"
    assert str(FinGenAbGroup((), 0)) == "0"


# -- homology of complexes ---------------------------------------------

def test_homology_times_two():
    assert H(ChainComplex(0, 1, {0: [0], 1: [0]}, {1: [[2]]}), (0, 1)) == ["Z/2", "0"]


def test_homology_zero_differential():
    assert H(ChainComplex(0, 1, {0: [0], 1: [0]}, {1: [[0]]}), (0, 1)) == ["Z", "Z"]


def test_homology_three_term():
    C = ChainComplex(0, 2, {0: [0, 0], 1: [0, 0, 0], 2: [0]},
                     {1: [[1, -1, 0], [0, 2, 2]], 2: [[2], [2], [-2]]})
    assert H(C, (0, 1, 2)) == ["Z/2", "Z/2", "0"]


def test_homology_with_torsion_modules():
    assert H(ChainComplex(0, 1, {0: [4], 1: [2]}, {1: [[2]]}), (0, 1)) == ["Z/2", "0"]


def test_d_squared_checked():
    with pytest.raises(InvalidInput):
        ChainComplex(0, 2, {0: [0], 1: [0], 2: [0]}, {1: [[1]], 2: [[1]]})


def test_truncations_are_quasi_isomorphisms():
    C = ChainComplex(0, 2, {0: [0, 0], 1: [0, 0, 0], 2: [0]},
                     {1: [[1, -1, 0], [0, 2, 2]], 2: [[2], [2], [-2]]})
    P, f = truncate_above(C, 1)
    assert H(P, (0, 1)) == ["Z/2", "Z/2"] and quasi_isomorphic_via(f, [0, 1])
    P, f = truncate_below(C, 1)
    assert H(P, (1, 2)) == ["Z/2", "0"] and quasi_isomorphic_via(f, [1, 2])


def test_suspension_shifts_homology():
    C = ChainComplex(0, 2, {0: [0, 0], 1: [0, 0, 0], 2: [0]},
                     {1: [[1, -1, 0], [0, 2, 2]], 2: [[2], [2], [-2]]})
    assert H(C.suspend(1), (1, 2, 3)) == H(C, (0, 1, 2))


def test_chain_map_must_commute():
    A = ChainComplex(0, 1, {0: [0], 1: [0]}, {1: [[1]]})
    with pytest.raises(InvalidInput):
        ChainMap(A, A, {0: [[1]], 1: [[2]]})


# -- group cohomology --------------------------------------------------

def test_cohomology_c2_mod2():
    M = GModule.trivial(C2, [2])
    assert [str(group_cohomology(C2, M, n).group) for n in range(4)] == ["Z/2"] * 4


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_h2_of_cyclic_with_integer_coefficients(n):
    G = FiniteGroup.cyclic(n)
    assert str(group_cohomology(G, GModule.trivial(G, [0]), 2).group) == f"Z/{n}"


def test_cohomology_sign_module():
    inv = GModule.cyclic_with_sign(C2, 3, [1, -1])
    assert str(group_cohomology(C2, inv, 1).group) == "0"
    assert str(group_cohomology(C2, inv, 2).group) == "0"


def test_cohomology_klein_mod2():
    V = FiniteGroup.klein()
    got = [str(group_cohomology(V, GModule.trivial(V, [2]), n).group) for n in range(4)]
    assert got == ["Z/2", "Z/2 + Z/2", "Z/2 + Z/2 + Z/2", "Z/2 + Z/2 + Z/2 + Z/2"]


def test_cohomology_s3_integral():
    M = GModule.trivial(S3, [0])
    assert [str(group_cohomology(S3, M, n).group) for n in range(5)] == \
        ["Z", "0", "Z/2", "0", "Z/6"]


def test_cocycle_count_matches_brute_force():
    # Z¹(C2, Z/2) with trivial action = Hom(C2, Z/2)
    assert count_cocycles(C2, GModule.trivial(C2, [2]), 1) == 2


def test_coboundaries_classify_to_zero():
    M = GModule.trivial(C2, [2])
    R = group_cohomology(C2, M, 1)
    assert R.is_cocycle(R.reps[0])
    assert not R.is_coboundary(R.reps[0])


# -- nonabelian H¹ and twisting ----------------------------------------

def _conj_s3():
    t = S3.index("(1 2)")
    imgs = [tuple(S3.elements), tuple(S3.mul(S3.mul(t, x), t) for x in S3.elements)]
    return GroupAction(C2, S3, imgs), t


def test_h1_trivial_action_counts_conjugacy_classes_of_homs():
    act = GroupAction.trivial(C2, S3)
    # Hom(C2, S3) up to conjugacy: trivial and the transposition class
    assert len(h1_nonabelian(act)) == 2


def test_h1_conjugation_action():
    act, _ = _conj_s3()
    assert len(h1_nonabelian(act)) == 2


def test_twist_by_identity_cocycle_is_unchanged():
    act, _ = _conj_s3()
    assert twist_action(act, (0, 0)).images == act.images


def test_twist_rejects_non_cocycle():
    act = GroupAction.trivial(C2, FiniteGroup.cyclic(3))
    with pytest.raises(InvalidInput):
        twist_action(act, (0, 1))


def test_tau_twist_is_bijective_and_sends_alpha_to_base():
    act, t = _conj_s3()
    tw = tau_twist(act, Cocycle1(act, (0, t)))
    assert tw.bijective and tw.sends_alpha_to_basepoint


# -- Dold-Kan ----------------------------------------------------------

def test_dold_kan_k_z2_1():
    A = dold_kan_overline(concentrated(GModule.trivial(C2, [2]), 1), 3)
    assert [len(m) for m in A.mods] == [0, 1, 2, 3]
    assert strs(A.homotopy(n).group for n in range(3)) == ["0", "Z/2", "0"]
    X = A.to_gsset().space
    assert X.sizes == (1, 2, 4, 8)
    assert len(pi0(X)) == 1 and edge_path_pi1(X).group.order == 2
    assert check_kan(X, 3).ok


def test_dold_kan_k_z2_2():
    A = dold_kan_overline(concentrated(GModule.trivial(C2, [2]), 2), 4)
    assert [len(m) for m in A.mods] == [0, 0, 1, 3, 6]
    assert A.to_gsset().space.sizes == (1, 1, 2, 8, 64)


def test_dold_kan_round_trip_homology():
    C = ChainComplex(0, 2, {0: [0], 1: [0], 2: [0]}, {1: [[2]], 2: [[0]]})
    A = dold_kan_overline(C, 3)
    assert strs(A.homotopy(n).group for n in range(3)) == H(C, range(3))
    assert H(moore_underline(A), range(3)) == H(C, range(3))


def test_dold_kan_keeps_group_action():
    M = GModule.cyclic_with_sign(C2, 3, [1, -1])
    A = dold_kan_overline(concentrated(M, 1), 3)
    A.validate()
    A.to_gsset().validate()


def test_free_abelianization_of_contractible():
    Z = free_abelianization(eg_space(C2, 2))
    assert strs(Z.homotopy(n).group for n in range(2)) == ["Z", "0"]


# -- hypercohomology ---------------------------------------------------

def test_hypercohomology_two_term_zero_map():
    M = GModule.trivial(C2, [2])
    C = two_term(M, M, [[0]], 0)
    got = [str(hypercohomology(C2, C, n).group) for n in range(-1, 3)]
    assert got == ["Z/2", "Z/2 + Z/2", "Z/2 + Z/2", "Z/2 + Z/2"]


def test_hypercohomology_of_concentrated_is_group_cohomology():
    M = GModule.trivial(C2, [2])
    for n in range(3):
        assert str(hypercohomology(C2, concentrated(M, 0), n).group) == \
            str(group_cohomology(C2, M, n).group)


def test_hypercohomology_suspension_shift():
    M = GModule.trivial(C2, [2])
    C = two_term(M, M, [[0]], 0)
    S = C.suspend(1)
    for n in range(-1, 2):
        assert str(hypercohomology(C2, S, n - 1).group) == str(hypercohomology(C2, C, n).group)


def test_les_for_z2_z4_z2():
    A = concentrated(GModule.trivial(C2, [2]))
    B = concentrated(GModule.trivial(C2, [4]))
    C = concentrated(GModule.trivial(C2, [2]))
    L = les_check(C2, ChainMap(A, B, {0: [[2]]}), ChainMap(B, C, {0: [[1]]}), range(0, 3))
    assert L.exact
    d = L.to_json()
    assert d["groups"]["H0(B)"] == "Z/4"
    assert d["connecting"] == {"0": [[0]], "1": [[1]], "2": [[0]]}


def test_split_les_has_zero_connecting_map():
    M = GModule.trivial(C2, [2])
    i, p = split_ses(concentrated(M), concentrated(M))
    L = les_check(C2, i, p, range(0, 3))
    assert L.exact
    assert all(not np.any(d) for d in L.delta.values())


def test_les_rejects_non_exact_sequence():
    A = concentrated(GModule.trivial(C2, [2]))
    B = concentrated(GModule.trivial(C2, [4]))
    C = concentrated(GModule.trivial(C2, [2]))
    with pytest.raises(InvalidInput):
        les_check(C2, ChainMap(A, B, {0: [[0]]}), ChainMap(B, C, {0: [[1]]}), range(0, 2))
