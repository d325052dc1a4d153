"""Invariants checked on generated inputs."""
import itertools
import random

from hypothesis import HealthCheck, given, settings, strategies as st

from hfpkit.equivariant import eg_pullback, pi1_of_contractible_quotient
from hfpkit.groups import FiniteGroup, homomorphisms
from hfpkit.homalg.chain import concentrated, quasi_isomorphic_via, truncate_above
from hfpkit.homalg.cohomology import group_cohomology
from hfpkit.homalg.hyper import hypercohomology, les_check
from hfpkit.homalg.nonabelian import h1_nonabelian, iter_cocycles, tau_twist
from hfpkit.localglobal import inverse_limit_tower
from hfpkit.simplicial.constructions import coskeleton, skeleton, truncate
from hfpkit.simplicial.maps import hom_count

from support import (random_action, random_complex, random_graph, random_module, random_points,
                     random_ses, small_groups)

FAST = settings(max_examples=15, deadline=None,
                suppress_health_check=[HealthCheck.too_slow])
seeds = st.integers(min_value=0, max_value=2**32 - 1)


@FAST
@given(seeds)
def test_skeleton_is_left_adjoint_to_truncation(seed):
    rng = random.Random(seed)
    S, X = random_points(rng), random_graph(rng)
    Y = skeleton(X, 2)
    assert hom_count(skeleton(S, 2), Y) == hom_count(S, truncate(Y, 0))


@FAST
@given(seeds)
def test_coskeleton_is_right_adjoint_to_truncation(seed):
    rng = random.Random(seed)
    T, X = random_graph(rng, 2, 2), random_graph(rng, 2, 2)
    Xs = skeleton(X, 2)
    assert hom_count(truncate(Xs, 1), T) == hom_count(Xs, coskeleton(T, 2))


@FAST
@given(seeds)
def test_suspension_shifts_homology(seed):
    C = random_complex(random.Random(seed))
    S = C.suspend(1)
    for n in range(C.lo, C.hi + 1):
        assert str(S.homology(n + 1).group) == str(C.homology(n).group)


@FAST
@given(seeds)
def test_truncation_above_is_quasi_isomorphic_in_range(seed):
    rng = random.Random(seed)
    C = random_complex(rng, length=3)
    P, f = truncate_above(C, C.lo + 1)
    assert quasi_isomorphic_via(f, [C.lo, C.lo + 1])


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_hypercohomology_of_concentrated_module(seed):
    rng = random.Random(seed)
    G = rng.choice(small_groups(4))
    M = random_module(rng, G)
    n = rng.randint(0, 2)
    assert str(hypercohomology(G, concentrated(M, 0), n).group) == \
        str(group_cohomology(G, M, n).group)


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_random_les_is_exact(seed):
    rng = random.Random(seed)
    G = rng.choice(small_groups(3))
    i, p = random_ses(rng, G)
    assert les_check(G, i, p, range(0, 2)).exact


@FAST
@given(seeds)
def test_tau_twist_bijective_for_every_cocycle(seed):
    rng = random.Random(seed)
    G = rng.choice([g for g in small_groups(3) if g.order > 1])
    A = rng.choice(small_groups(6)[1:])
    act = random_action(rng, G, A)
    alpha = rng.choice(sorted(iter_cocycles(act)))
    tw = tau_twist(act, alpha)
    assert tw.bijective and tw.sends_alpha_to_basepoint
    assert len(tw.source) == len(h1_nonabelian(act))


@FAST
@given(seeds)
def test_pullback_quotient_pi1_is_image(seed):
    rng = random.Random(seed)
    G = rng.choice(small_groups(6)[1:])
    Q = rng.choice(small_groups(3)[1:])
    hs = [h for h in homomorphisms(G, Q) if len(set(h)) == Q.order]
    if not hs:
        hs = [tuple(0 for _ in G.elements)]
        Q = FiniteGroup.trivial()
    q = rng.choice(hs)
    r = pi1_of_contractible_quotient(eg_pullback(G, Q, q, 3))
    assert r.group.order == Q.order
    assert all(r.checks.values())


@FAST
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), seeds)
def test_inverse_limit_matches_enumeration(sizes, seed):
    rng = random.Random(seed)
    maps = []
    for k in range(len(sizes) - 1):
        if sizes[k] == 0:
            sizes[k + 1] = 0
        maps.append([rng.randrange(sizes[k]) for _ in range(sizes[k + 1])])
    r = inverse_limit_tower(sizes, maps)
    families = [f for f in itertools.product(*[range(s) for s in sizes])
                if all(maps[k][f[k + 1]] == f[k] for k in range(len(maps)))]
    assert r.size == len(families)
    assert r.nonempty == bool(families)
    if r.nonempty:
        assert tuple(r.certificate) in families
