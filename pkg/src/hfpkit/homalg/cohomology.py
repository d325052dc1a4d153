"""Group cohomology from normalized bar cochains.

C^n(G, M) is the group of functions f: G^n -> M vanishing whenever some
argument is the identity.  Coordinates: the n-tuples of non-identity
elements in lexicographic order, each contributing one block of M's
coordinates.  The coboundary is

    (δf)(g_1..g_{n+1}) = g_1 f(g_2..g_{n+1})
                         + Σ_{i=1..n} (-1)^i f(.., g_i g_{i+1}, ..)
                         + (-1)^{n+1} f(g_1..g_n).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..caps import CapExceeded, InvalidInput, get_caps
from ..groups import FiniteGroup
from .abelian import FinGenAbGroup, SubquotientGroup, homology_quotient, reduce_vec
from .chain import ChainComplex
from .lattice import zeros
from .modules import GModule


class BarIndex:
    """Index of normalized n-tuples for a group."""

    def __init__(self, G: FiniteGroup, n: int):
        self.G, self.n = G, n
        self.nonid = [g for g in G.elements if g != G.identity]
        k = len(self.nonid)
        self.pos = {g: i for i, g in enumerate(self.nonid)}
        self.count = k ** n
        self.k = k

    def tuples(self):
        return itertools.product(self.nonid, repeat=self.n)

    def index(self, t) -> int | None:
        """Position of a tuple, or None when it contains the identity."""
        i = 0
        for g in t:
            p = self.pos.get(g)
            if p is None:
                return None
            i = i * self.k + p
        return i


def _check_size(count: int, what: str) -> None:
    cap = get_caps().simplices
    if count > cap:
        raise CapExceeded("simplices", cap, what)


_cache: dict = {}


def bar_coboundary(G: FiniteGroup, M: GModule, n: int) -> np.ndarray:
    """Matrix of δ: C^n(G,M) -> C^{n+1}(G,M) in normalized coordinates."""
    ck = (id(G), id(M), n)
    hit = _cache.get(ck)
    if hit is not None and hit[0] is G and hit[1] is M:
        return hit[2]
    src, tgt = BarIndex(G, n), BarIndex(G, n + 1)
    r = M.rank
    _check_size((src.count + tgt.count) * max(r, 1), "bar cochains")
    D = zeros(tgt.count * r, src.count * r)
    for ti, t in enumerate(tgt.tuples()):
        row = ti * r
        # g_1 · f(g_2..)
        j = src.index(t[1:])
        if j is not None and r:
            D[row:row + r, j * r:(j + 1) * r] += M.action[t[0]]
        for i in range(1, n + 1):
            s = t[:i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1:]
            j = src.index(s)
            if j is not None and r:
                sign = -1 if i % 2 else 1
                for a in range(r):
                    D[row + a, j * r + a] += sign
        j = src.index(t[:n])
        if j is not None and r:
            sign = -1 if (n + 1) % 2 else 1
            for a in range(r):
                D[row + a, j * r + a] += sign
    if len(_cache) > 64:
        _cache.clear()
    _cache[ck] = (G, M, D)
    return D


def cochain_mods(G: FiniteGroup, M: GModule, n: int) -> list:
    return list(M.mods) * BarIndex(G, n).count


def bar_cochains(G: FiniteGroup, M: GModule, top: int) -> ChainComplex:
    """Cochain complex C^0 -> ... -> C^top, stored homologically in degrees -top..0."""
    mods, diffs = {}, {}
    for n in range(top + 1):
        mods[-n] = cochain_mods(G, M, n)
    for n in range(top):
        diffs[-n] = bar_coboundary(G, M, n)
    return ChainComplex(-top, 0, mods, diffs, name="bar")


@dataclass
class CohomologyResult:
    degree: int
    group: FinGenAbGroup
    sq: SubquotientGroup
    G: FiniteGroup
    M: GModule

    @property
    def reps(self) -> list:
        """Representative cocycles as coordinate vectors."""
        return self.sq.gens

    def classify(self, cocycle) -> tuple:
        return self.sq.classify(cocycle)

    def is_cocycle(self, v) -> bool:
        return self.sq.contains(v)

    def is_coboundary(self, v) -> bool:
        return self.sq.contains(v) and not any(self.sq.classify(v))

    def rep_function(self, j: int) -> dict:
        return cochain_to_function(self.G, self.M, self.degree, self.sq.gens[j])


def group_cohomology(G: FiniteGroup, M: GModule, n: int) -> CohomologyResult:
    """H^n(G, M) with representative cocycles."""
    if n < 0:
        raise InvalidInput("cohomology degree must be non-negative")
    mods = cochain_mods(G, M, n)
    size = len(mods)
    Dn = bar_coboundary(G, M, n)
    B = bar_coboundary(G, M, n - 1) if n >= 1 else zeros(size, 0)
    sq = homology_quotient(Dn, B, mods, cochain_mods(G, M, n + 1))
    return CohomologyResult(n, sq.group, sq, G, M)


def cochain_to_function(G: FiniteGroup, M: GModule, n: int, v) -> dict:
    """Normalized cochain vector -> {tuple: module vector} on all of G^n."""
    idx = BarIndex(G, n)
    r = M.rank
    out = {}
    for t in itertools.product(G.elements, repeat=n):
        j = idx.index(t)
        if j is None:
            out[t] = reduce_vec([0] * r, M.mods)
        else:
            out[t] = reduce_vec(v[j * r:(j + 1) * r], M.mods)
    return out


def function_to_cochain(G: FiniteGroup, M: GModule, n: int, f) -> np.ndarray:
    """{tuple: vector} (normalized) -> coordinate vector."""
    idx = BarIndex(G, n)
    r = M.rank
    v = zeros(idx.count * r, 1)[:, 0]
    for j, t in enumerate(idx.tuples()):
        v[j * r:(j + 1) * r] = reduce_vec(f[t], M.mods)
    return v


def restriction_matrix(G: FiniteGroup, H_members, M: GModule, n: int):
    """Restriction C^n(G,M) -> C^n(H,M) for a subgroup given by members.

    Returns (H as a group, embedding, matrix).
    """
    H, emb = G.subgroup_as_group(H_members)
    MH = M.restrict(H, emb)
    gi, hi = BarIndex(G, n), BarIndex(H, n)
    r = M.rank
    R = zeros(hi.count * r, gi.count * r)
    for j, t in enumerate(hi.tuples()):
        k = gi.index(tuple(emb[h] for h in t))
        for a in range(r):
            R[j * r + a, k * r + a] = 1
    return H, emb, MH, R


def restrict_class(G: FiniteGroup, H_members, M: GModule, n: int, cocycle):
    """Restriction of a cocycle to H, classified in H^n(H, M)."""
    H, emb, MH, R = restriction_matrix(G, H_members, M, n)
    res = group_cohomology(H, MH, n)
    return res, res.classify(R.dot(np.array(cocycle, dtype=object)) if R.size else
                             zeros(R.shape[0], 1)[:, 0])


def count_cocycles(G: FiniteGroup, M: GModule, n: int) -> int:
    """|Z^n(G, M)| for finite M, via |Z^n| = |H^n| · |C^{n-1}| / |Z^{n-1}|."""
    h = group_cohomology(G, M, n).group.order
    if n == 0:
        return h
    cprev = 1
    for m in cochain_mods(G, M, n - 1):
        cprev *= m
    return h * (cprev // count_cocycles(G, M, n - 1))
