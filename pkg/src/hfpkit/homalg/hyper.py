"""Hypercohomology of a bounded complex of G-modules and its long exact sequence.

For a chain complex C (differential of degree -1) the total complex has

    Tot^n = ⊕_q C^{n+q}(G, C_q),     D = δ + (-1)^p d_*   on C^p(G, C_q),

with normalized bar cochains C^p.  ℍ^n(G, C) is its degree-n cohomology.
A complex concentrated in degree 0 gives ordinary group cohomology, and
Tot(ΣC) is Tot(C) shifted by one, so ℍ^n(G, ΣC) = ℍ^{n+1}(G, C).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..caps import InvalidInput, check_simplices
from ..groups import FiniteGroup
from .abelian import FinGenAbGroup, SubquotientGroup, cokernel_module, homology_quotient, \
    is_exact_at, kernel_module
from .chain import ChainComplex, ChainMap
from .cohomology import BarIndex, bar_coboundary, cochain_mods
from .lattice import as_matrix, solve_mod, zeros
from .modules import GModule, module_hom_ok


def _block_diag_repeat(d: np.ndarray, count: int) -> np.ndarray:
    """I_count ⊗ d."""
    r, c = d.shape
    out = zeros(r * count, c * count)
    if r and c:
        for j in range(count):
            out[j * r:(j + 1) * r, j * c:(j + 1) * c] = d
    return out


class TotalComplex:
    """Tot(Hom_G(bar resolution, C)) with lazily built differentials."""

    def __init__(self, G: FiniteGroup, C: ChainComplex):
        if C.group is None:
            C = ChainComplex(C.lo, C.hi, C.mods, C.diffs, group=G, check=False, name=C.name)
        elif C.group is not G and C.group.table != G.table:
            raise InvalidInput("complex is not over the given group")
        self.G, self.C = G, C
        self.modules = {q: C.module(q) for q in C.degrees()}
        self._D: dict = {}

    def blocks(self, n: int) -> list:
        """[(q, p)] with p = n + q >= 0 and C_q nonzero, ordered by q."""
        return [(q, n + q) for q in self.C.degrees() if n + q >= 0 and self.C.rank(q)]

    def block_mods(self, q: int, p: int) -> list:
        return cochain_mods(self.G, self.modules[q], p)

    def mods(self, n: int) -> list:
        out = []
        for q, p in self.blocks(n):
            out.extend(self.block_mods(q, p))
        return out

    def offsets(self, n: int) -> dict:
        off, out = 0, {}
        for q, p in self.blocks(n):
            out[(q, p)] = off
            off += BarIndex(self.G, p).count * self.C.rank(q)
        return out

    def size(self, n: int) -> int:
        return len(self.mods(n))

    def D(self, n: int) -> np.ndarray:
        """Tot^n -> Tot^{n+1}."""
        if n in self._D:
            return self._D[n]
        G, C = self.G, self.C
        src, tgt = self.offsets(n), self.offsets(n + 1)
        rows, cols = self.size(n + 1), self.size(n)
        check_simplices(rows + cols, "total complex")
        M = zeros(rows, cols)
        for (q, p), c0 in src.items():
            count = BarIndex(G, p).count
            w = count * C.rank(q)
            if (q, p + 1) in tgt:
                r0 = tgt[(q, p + 1)]
                B = bar_coboundary(G, self.modules[q], p)
                M[r0:r0 + B.shape[0], c0:c0 + w] += B
            if (q - 1, p) in tgt and q - 1 >= C.lo:
                r0 = tgt[(q - 1, p)]
                sign = -1 if p % 2 else 1
                K = _block_diag_repeat(C.d(q), count)
                M[r0:r0 + K.shape[0], c0:c0 + w] += sign * K
        self._D[n] = M
        return M

    def map_matrix(self, f: ChainMap, target: "TotalComplex", n: int) -> np.ndarray:
        """The map Tot^n(A) -> Tot^n(B) induced by a chain map A -> B."""
        src, tgt = self.offsets(n), target.offsets(n)
        M = zeros(target.size(n), self.size(n))
        for (q, p), c0 in src.items():
            if (q, p) not in tgt:
                continue
            count = BarIndex(self.G, p).count
            K = _block_diag_repeat(f.at(q), count)
            r0 = tgt[(q, p)]
            M[r0:r0 + K.shape[0], c0:c0 + K.shape[1]] = K
        return M


@dataclass
class HyperResult:
    degree: int
    group: FinGenAbGroup
    sq: object
    tot: TotalComplex

    def classify(self, v) -> tuple:
        return self.sq.classify(v)

    def to_json(self) -> dict:
        return {"degree": self.degree, "group": str(self.group), **self.group.to_json()}


def _empty_sq():
    return SubquotientGroup(zeros(0, 0), zeros(0, 0), ())


def hyper_from_total(T: TotalComplex, n: int) -> HyperResult:
    mods = T.mods(n)
    if not mods:
        sq = _empty_sq()
        return HyperResult(n, sq.group, sq, T)
    Dn = T.D(n)
    Din = T.D(n - 1) if T.size(n - 1) else zeros(len(mods), 0)
    sq = homology_quotient(Dn, Din, mods, T.mods(n + 1))
    return HyperResult(n, sq.group, sq, T)


def hypercohomology(G: FiniteGroup, C: ChainComplex, n: int) -> HyperResult:
    """ℍ^n(G, C) from the total complex of normalized bar cochains."""
    return hyper_from_total(TotalComplex(G, C), n)


# ----------------------------------------------------------------------
# short exact sequences
# ----------------------------------------------------------------------

def ses_problems(i: ChainMap, p: ChainMap) -> list:
    """Reasons why 0 -> A -> B -> C -> 0 is not levelwise exact and equivariant."""
    A, B, C = i.src, i.tgt, p.tgt
    out = []
    if p.src is not B:
        out.append("maps are not composable")
        return out
    for q in sorted(set(A.degrees()) | set(B.degrees()) | set(C.degrees())):
        ma, mb, mc = A.mod(q), B.mod(q), C.mod(q)
        iq, pq = i.at(q), p.at(q)
        if len(ma) and not kernel_module(iq, ma, mb).group.is_trivial:
            out.append(f"A -> B is not injective in degree {q}")
        if len(mc) and not cokernel_module(pq, mb, mc).group.is_trivial:
            out.append(f"B -> C is not surjective in degree {q}")
        if len(mb) and not is_exact_at(iq if len(ma) else zeros(len(mb), 0),
                                       pq if len(mc) else zeros(0, len(mb)), mb, mc):
            out.append(f"not exact at B in degree {q}")
        if A.group is not None:
            for f, X, Y in ((iq, A, B), (pq, B, C)):
                if X.rank(q) and Y.rank(q) and not module_hom_ok(f, X.module(q), Y.module(q)):
                    out.append(f"map is not equivariant in degree {q}")
    return out


@dataclass
class LongExactSequence:
    degrees: tuple
    HA: dict
    HB: dict
    HC: dict
    i_star: dict
    p_star: dict
    delta: dict
    exact_at: dict = field(default_factory=dict)

    @property
    def exact(self) -> bool:
        return all(self.exact_at.values())

    def nodes(self) -> list:
        """The sequence ℍ^nA, ℍ^nB, ℍ^nC, ... as (label, group)."""
        out = []
        for n in self.degrees:
            out += [(f"H{n}(A)", self.HA[n].group), (f"H{n}(B)", self.HB[n].group),
                    (f"H{n}(C)", self.HC[n].group)]
        return out

    def to_json(self) -> dict:
        def mat(M):
            return [[int(v) for v in row] for row in M]
        return {"degrees": list(self.degrees),
                "groups": {lab: str(g) for lab, g in self.nodes()},
                "connecting": {str(n): mat(self.delta[n]) for n in self.degrees},
                "exact_at": {k: v for k, v in sorted(self.exact_at.items())},
                "exact": self.exact}


def _induced(M: np.ndarray, src: HyperResult, tgt: HyperResult) -> np.ndarray:
    k_src, k_tgt = len(src.group.mods), len(tgt.group.mods)
    if k_src == 0 or k_tgt == 0:
        return zeros(k_tgt, k_src)
    return src.sq.induced(M, tgt.sq)


def _connecting(TA, TB, TC, P, I_next, hc: HyperResult, ha_next: HyperResult, n: int):
    """δ: ℍ^n(C) -> ℍ^{n+1}(A): lift, apply D_B, pull back along i."""
    k_src, k_tgt = len(hc.group.mods), len(ha_next.group.mods)
    out = zeros(k_tgt, k_src)
    if k_src == 0:
        return out
    modsC, modsB = TC.mods(n), TB.mods(n + 1)
    for j, c in enumerate(hc.sq.gens):
        b = solve_mod(P, c, modsC)
        if b is None:
            raise RuntimeError("cocycle does not lift through B -> C")
        db = TB.D(n).dot(b) if TB.size(n) and TB.size(n + 1) else zeros(TB.size(n + 1), 1)[:, 0]
        if k_tgt == 0:
            continue
        a = solve_mod(I_next, db, modsB)
        if a is None:
            raise RuntimeError("boundary of the lift is not in the image of A -> B")
        out[:, j] = np.array(ha_next.sq.classify(a), dtype=object)
    return out


def les_check(G: FiniteGroup, i: ChainMap, p: ChainMap, degrees) -> LongExactSequence:
    """The long exact sequence of ℍ for 0 -> A -> B -> C -> 0 over the given degree range."""
    bad = ses_problems(i, p)
    if bad:
        raise InvalidInput("not a short exact sequence: " + "; ".join(bad))
    degrees = tuple(sorted(degrees))
    TA, TB, TC = TotalComplex(G, i.src), TotalComplex(G, i.tgt), TotalComplex(G, p.tgt)
    HA, HB, HC, istar, pstar, delta = {}, {}, {}, {}, {}, {}
    for n in degrees + (degrees[-1] + 1,):
        HA[n] = hyper_from_total(TA, n)
    for n in degrees:
        HB[n] = hyper_from_total(TB, n)
        HC[n] = hyper_from_total(TC, n)
    Imats = {n: TA.map_matrix(i, TB, n) for n in degrees + (degrees[-1] + 1,)}
    for n in degrees:
        P = TB.map_matrix(p, TC, n)
        istar[n] = _induced(Imats[n], HA[n], HB[n])
        pstar[n] = _induced(P, HB[n], HC[n])
        delta[n] = _connecting(TA, TB, TC, P, Imats[n + 1], HC[n], HA[n + 1], n)
    les = LongExactSequence(degrees, HA, HB, HC, istar, pstar, delta)
    for n in degrees:
        mB, mC, mA1 = HB[n].group.mods, HC[n].group.mods, HA[n + 1].group.mods
        les.exact_at[f"H{n}(B)"] = _exact(istar[n], pstar[n], mB, mC)
        les.exact_at[f"H{n}(C)"] = _exact(pstar[n], delta[n], mC, mA1)
        if n + 1 in istar:
            les.exact_at[f"H{n + 1}(A)"] = _exact(delta[n], istar[n + 1], mA1, HB[n + 1].group.mods)
    return les


def _exact(f, g, mid, tgt) -> bool:
    mid, tgt = list(mid), list(tgt)
    if not mid:
        return True
    f = as_matrix(f, len(mid), f.shape[1] if hasattr(f, "shape") else 0)
    g = as_matrix(g, len(tgt), len(mid))
    return is_exact_at(f, g, mid, tgt)


def split_ses(A: ChainComplex, C: ChainComplex):
    """0 -> A -> A ⊕ C -> C -> 0 for complexes on the same degrees."""
    lo, hi = min(A.lo, C.lo), max(A.hi, C.hi)
    mods, diffs, acts = {}, {}, {}
    for q in range(lo, hi + 1):
        mods[q] = list(A.mod(q)) + list(C.mod(q))
    for q in range(lo + 1, hi + 1):
        ra, rc = A.rank(q), C.rank(q)
        ra1, rc1 = A.rank(q - 1), C.rank(q - 1)
        D = zeros(ra1 + rc1, ra + rc)
        if ra and ra1:
            D[:ra1, :ra] = A.d(q)
        if rc and rc1:
            D[ra1:, ra:] = C.d(q)
        diffs[q] = D
    group = A.group or C.group
    if group is not None:
        for q in range(lo, hi + 1):
            per = []
            for g in group.elements:
                ra, rc = A.rank(q), C.rank(q)
                M = zeros(ra + rc, ra + rc)
                if ra:
                    M[:ra, :ra] = A.actions[q][g]
                if rc:
                    M[ra:, ra:] = C.actions[q][g]
                per.append(M)
            acts[q] = per
    B = ChainComplex(lo, hi, mods, diffs, group=group, actions=acts or None, name="sum")
    imaps, pmaps = {}, {}
    for q in range(lo, hi + 1):
        ra, rc = A.rank(q), C.rank(q)
        I = zeros(ra + rc, ra)
        P = zeros(rc, ra + rc)
        for k in range(ra):
            I[k, k] = 1
        for k in range(rc):
            P[k, ra + k] = 1
        imaps[q], pmaps[q] = I, P
    return ChainMap(A, B, imaps), ChainMap(B, C, pmaps)
