"""Shared builders for the test suite: small groups, random graphs, random complexes."""
from __future__ import annotations

import random

from hfpkit.groups import FiniteGroup, GroupAction, automorphisms, homomorphisms
from hfpkit.homalg.chain import ChainComplex, ChainMap
from hfpkit.homalg.modules import GModule
from hfpkit.simplicial.sset import SimplicialSet, TruncatedSimplicialSet


def small_groups(max_order: int = 6) -> list:
    """One group per isomorphism type up to order 6 (plus what is asked above)."""
    out = [FiniteGroup.trivial()]
    out += [FiniteGroup.cyclic(n) for n in range(2, max_order + 1)]
    if max_order >= 4:
        out.append(FiniteGroup.klein())
    if max_order >= 6:
        out.append(FiniteGroup.symmetric(3))
    if max_order >= 8:
        out += [FiniteGroup.dihedral(4), FiniteGroup.quaternion(),
                FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(4)),
                FiniteGroup.direct_product(FiniteGroup.klein(), FiniteGroup.cyclic(2))]
    return [G for G in out if G.order <= max_order]


def random_graph(rng: random.Random, max_vertices: int = 3, max_edges: int = 3):
    """A random 1-truncated simplicial set: a reflexive directed multigraph."""
    nv = rng.randint(1, max_vertices)
    ne = rng.randint(0, max_edges)
    edges = [(rng.randrange(nv), rng.randrange(nv)) for _ in range(ne)]
    keys0 = [f"v{i}" for i in range(nv)]
    keys1 = [f"s{i}" for i in range(nv)] + [f"e{j}" for j in range(ne)]
    faces1 = [(i, i) for i in range(nv)] + [(t, s) for s, t in edges]   # (d0, d1) = (target, source)
    degens0 = [(i,) for i in range(nv)]
    return TruncatedSimplicialSet([keys0, keys1], [[()] * nv, faces1], [degens0], name="graph")


def random_points(rng: random.Random, max_points: int = 3):
    from hfpkit.simplicial.constructions import truncate, discrete
    return truncate(discrete(rng.randint(1, max_points), 1), 0)


def random_action(rng: random.Random, G: FiniteGroup, A: FiniteGroup) -> GroupAction:
    """G acting on A through a random homomorphism G -> Aut(A)."""
    auts = automorphisms(A)
    Aut = FiniteGroup.from_elements(
        auts, lambda p, q: tuple(p[q[a]] for a in A.elements), name="Aut")
    homs = list(homomorphisms(G, Aut))
    h = rng.choice(homs)
    return GroupAction(G, A, [auts[h[g]] for g in G.elements])


def random_module(rng: random.Random, G: FiniteGroup, moduli=(2, 3)) -> GModule:
    """Z/m with G acting through a random sign character (trivial when m = 2)."""
    m = rng.choice(moduli)
    C2 = FiniteGroup.cyclic(2)
    chars = [h for h in homomorphisms(G, C2)]
    chi = rng.choice(chars)
    return GModule(G, [m], [[[(-1) ** chi[g]]] for g in G.elements])


def random_complex(rng: random.Random, G: FiniteGroup | None = None, lo: int = 0,
                   length: int = 2, moduli=(0, 2, 3, 4)) -> ChainComplex:
    """A random bounded complex of cyclic groups with trivial action.

    Differentials are built as f∘g with g a random map and the composite
    forced to vanish by alternating zero rows, which keeps d∘d = 0.
    """
    hi = lo + length - 1
    mods = {n: [rng.choice(moduli) for _ in range(rng.randint(1, 2))] for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        r, c = len(mods[n - 1]), len(mods[n])
        for _ in range(50):
            D = [[rng.randint(-2, 2) for _ in range(c)] for _ in range(r)]
            cand = dict(diffs)
            cand[n] = D
            try:
                ChainComplex(lo, n, {k: mods[k] for k in range(lo, n + 1)}, cand, group=G)
            except Exception:
                continue
            diffs[n] = D
            break
        else:
            diffs[n] = [[0] * c for _ in range(r)]
    return ChainComplex(lo, hi, mods, diffs, group=G)


def _sign_actions(G, mods, chi):
    return {n: [[[(-1) ** chi[g] if i == j else 0 for j in range(len(m))] for i in range(len(m))]
                for g in G.elements] for n, m in mods.items()}


def random_ses(rng: random.Random, G: FiniteGroup, tries: int = 200):
    """A random short exact sequence 0 -> A -> B -> C -> 0 of two-term complexes.

    B_n = A_n ⊕ C_n with differential [[d_A, h], [0, d_C]] for a random h,
    so the sequence is degreewise split but usually not split as complexes.
    Every module carries the same sign character of G.
    """
    C2 = FiniteGroup.cyclic(2)
    chi = rng.choice(list(homomorphisms(G, C2)))
    for _ in range(tries):
        p = rng.choice([2, 3])
        mA = {0: [p], 1: [p]}
        mC = {0: [p], 1: [p]}
        dA = [[rng.randrange(p)]]
        dC = [[rng.randrange(p)]]
        h = [[rng.randrange(p)]]
        mB = {n: mA[n] + mC[n] for n in (0, 1)}
        dB = [[dA[0][0], h[0][0]], [0, dC[0][0]]]
        try:
            A = ChainComplex(0, 1, mA, {1: dA}, group=G, actions=_sign_actions(G, mA, chi))
            C = ChainComplex(0, 1, mC, {1: dC}, group=G, actions=_sign_actions(G, mC, chi))
            B = ChainComplex(0, 1, mB, {1: dB}, group=G, actions=_sign_actions(G, mB, chi))
            i = ChainMap(A, B, {0: [[1], [0]], 1: [[1], [0]]})
            q = ChainMap(B, C, {0: [[0, 1]], 1: [[0, 1]]})
        except Exception:
            continue
        return i, q
    raise RuntimeError("no random short exact sequence found")
