"""Bounded chain complexes of (G-)modules with exact homology."""
from __future__ import annotations

import numpy as np

from ..caps import InvalidInput
from ..groups import FiniteGroup
from .abelian import SubquotientGroup, homology_quotient
from .lattice import as_matrix, identity, kernel_mod, zeros
from .modules import GModule, _mod_equal, module_hom_ok


class ChainComplex:
    """C_lo <- ... <- C_hi with d_n: C_n -> C_{n-1} (degree -1).

    ``mods[n]`` describes C_n = ⊕ Z/m_i; ``diffs[n]`` is the matrix of d_n for
    lo < n <= hi.  When ``group`` is given every C_n is a G-module with
    ``actions[n][g]`` and the differentials must be equivariant.
    """

    def __init__(self, lo: int, hi: int, mods, diffs, group: FiniteGroup | None = None,
                 actions=None, name: str = "", check: bool = True):
        if hi < lo:
            raise InvalidInput("chain complex needs lo <= hi")
        self.lo, self.hi = int(lo), int(hi)
        self.mods = {n: tuple(int(m) for m in mods[n]) for n in range(lo, hi + 1)}
        self.diffs = {}
        for n in range(lo + 1, hi + 1):
            r, c = len(self.mods[n - 1]), len(self.mods[n])
            D = as_matrix(diffs[n], r, c) if n in diffs else zeros(r, c)
            if D.shape != (r, c):
                raise InvalidInput(f"differential d_{n} has shape {D.shape}, expected {(r, c)}")
            self.diffs[n] = D
        self.group = group
        self.actions = None
        if group is not None:
            acts = actions or {}
            self.actions = {n: tuple(as_matrix(a, len(self.mods[n]), len(self.mods[n]))
                                     for a in acts[n]) if n in acts else
                            tuple(identity(len(self.mods[n])) for _ in group.elements)
                            for n in range(lo, hi + 1)}
        self.name = name
        if check:
            self.validate()

    # -- accessors ------------------------------------------------------
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def rank(self, n: int) -> int:
        return len(self.mods[n]) if self.lo <= n <= self.hi else 0

    def mod(self, n: int) -> tuple:
        return self.mods[n] if self.lo <= n <= self.hi else ()

    def d(self, n: int) -> np.ndarray:
        """d_n as a matrix, zero outside the stored range."""
        if self.lo < n <= self.hi:
            return self.diffs[n]
        return zeros(self.rank(n - 1), self.rank(n))

    def module(self, n: int) -> GModule:
        if self.group is None:
            raise InvalidInput("complex has no group action")
        if not self.lo <= n <= self.hi:
            return GModule(self.group, (), None)
        return GModule(self.group, self.mods[n], self.actions[n], check=False)

    def validate(self) -> None:
        for n in range(self.lo + 1, self.hi + 1):
            D = self.diffs[n]
            src, tgt = self.mods[n], self.mods[n - 1]
            for j, m in enumerate(src):
                if m and not _mod_equal(m * D[:, [j]], zeros(len(tgt), 1), tgt):
                    raise InvalidInput(f"d_{n} is not well defined on generator {j}")
        for n in range(self.lo + 2, self.hi + 1):
            P = self.diffs[n - 1].dot(self.diffs[n]) if self.rank(n - 1) else zeros(
                self.rank(n - 2), self.rank(n))
            if not _mod_equal(P, zeros(*P.shape), self.mods[n - 2]):
                raise InvalidInput(f"d_{n - 1} d_{n} is not zero")
        if self.group is not None:
            for n in self.degrees():
                self.module(n).validate()
            for n in range(self.lo + 1, self.hi + 1):
                if not module_hom_ok(self.diffs[n], self.module(n), self.module(n - 1)):
                    raise InvalidInput(f"d_{n} is not equivariant")

    # -- homology -------------------------------------------------------
    def cycles(self, n: int) -> np.ndarray:
        r = self.rank(n)
        if n - 1 < self.lo or self.rank(n - 1) == 0:
            return identity(r)
        return kernel_mod(self.d(n), list(self.mod(n - 1)), ncols=r)

    def homology(self, n: int) -> SubquotientGroup:
        """H_n with representative cycles; zero outside [lo, hi]."""
        r = self.rank(n)
        if r == 0:
            return SubquotientGroup(zeros(0, 0), zeros(0, 0), ())
        B = self.d(n + 1) if n + 1 <= self.hi else zeros(r, 0)
        return homology_quotient(self.d(n), B, self.mods[n], self.mod(n - 1))

    def homology_groups(self) -> dict:
        return {n: self.homology(n).group for n in self.degrees()}

    # -- operations -----------------------------------------------------
    def suspend(self, k: int = 1) -> "ChainComplex":
        """(Σ^k C)_n = C_{n-k} with differential (-1)^k d."""
        s = -1 if k % 2 else 1
        return ChainComplex(self.lo + k, self.hi + k,
                            {n + k: self.mods[n] for n in self.degrees()},
                            {n + k: s * self.diffs[n] for n in self.diffs},
                            group=self.group,
                            actions=None if self.actions is None else
                            {n + k: self.actions[n] for n in self.degrees()},
                            name=f"S{k}({self.name})", check=False)

    def to_json(self) -> dict:
        d = {"lo": self.lo, "hi": self.hi,
             "groups": [{"mods": list(self.mods[n])} for n in self.degrees()],
             "diffs": [[[int(v) for v in row] for row in self.diffs[n]]
                       for n in range(self.lo + 1, self.hi + 1)]}
        if self.group is not None:
            d["actions"] = [{self.group.labels[g]: [[int(v) for v in row]
                                                     for row in self.actions[n][g]]
                             for g in self.group.elements} for n in self.degrees()]
        return d

    @classmethod
    def from_json(cls, d: dict, group: FiniteGroup | None = None, name: str = ""):
        try:
            lo, hi = int(d["lo"]), int(d["hi"])
            mods = {}
            for k, gdesc in enumerate(d["groups"]):
                if "mods" in gdesc:
                    mods[lo + k] = [int(m) for m in gdesc["mods"]]
                else:
                    mods[lo + k] = [int(t) for t in gdesc.get("torsion", [])] + \
                        [0] * int(gdesc.get("rank", 0))
            if len(mods) != hi - lo + 1:
                raise InvalidInput(f"complex {name!r}: expected {hi - lo + 1} groups")
            diffs = {}
            for k, mat in enumerate(d.get("diffs", [])):
                n = lo + 1 + k
                diffs[n] = as_matrix(mat, len(mods[n - 1]), len(mods[n]))
            actions = None
            if group is not None and "actions" in d:
                actions = {}
                for k, amap in enumerate(d["actions"]):
                    n = lo + k
                    actions[n] = [as_matrix(amap[group.labels[g]], len(mods[n]), len(mods[n]))
                                  for g in group.elements]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed complex {name!r}: {exc}") from None
        return cls(lo, hi, mods, diffs, group=group, actions=actions, name=name)


class ChainMap:
    """A chain map f: A -> B given by matrices ``maps[n]`` (zero when absent)."""

    def __init__(self, src: ChainComplex, tgt: ChainComplex, maps, check: bool = True):
        self.src, self.tgt = src, tgt
        self.maps = {}
        for n in src.degrees():
            r, c = tgt.rank(n), src.rank(n)
            self.maps[n] = as_matrix(maps[n], r, c) if n in maps else zeros(r, c)
        if check:
            self.validate()

    def at(self, n: int) -> np.ndarray:
        if n in self.maps:
            return self.maps[n]
        return zeros(self.tgt.rank(n), self.src.rank(n))

    def validate(self) -> None:
        A, B = self.src, self.tgt
        for n in A.degrees():
            f = self.at(n)
            for j, m in enumerate(A.mod(n)):
                if m and not _mod_equal(m * f[:, [j]], zeros(B.rank(n), 1), B.mod(n)):
                    raise InvalidInput(f"chain map not well defined in degree {n}")
            # d f = f d
            lhs = _mm(B.d(n), f)
            rhs = _mm(self.at(n - 1), A.d(n))
            if not _mod_equal(lhs, rhs, B.mod(n - 1)):
                raise InvalidInput(f"chain map does not commute with d in degree {n}")
            if A.group is not None and B.group is not None and B.lo <= n <= B.hi:
                if not module_hom_ok(f, A.module(n), B.module(n)):
                    raise InvalidInput(f"chain map is not equivariant in degree {n}")

    def on_homology(self, n: int, HA=None, HB=None) -> np.ndarray:
        HA = HA or self.src.homology(n)
        HB = HB or self.tgt.homology(n)
        return HA.induced(self.at(n), HB)


def _mm(A, B):
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1])
    return A.dot(B)


def concentrated(M: GModule | tuple, degree: int = 0, group: FiniteGroup | None = None):
    """The complex with a single module in the given degree."""
    if isinstance(M, GModule):
        return ChainComplex(degree, degree, {degree: M.mods}, {}, group=M.G,
                            actions={degree: M.action})
    return ChainComplex(degree, degree, {degree: tuple(M)}, {}, group=group)


def two_term(A: GModule, B: GModule, f, lo: int = 0) -> ChainComplex:
    """B (degree lo+1) --f--> A (degree lo)."""
    return ChainComplex(lo, lo + 1, {lo: A.mods, lo + 1: B.mods}, {lo + 1: f}, group=A.G,
                        actions={lo: A.action, lo + 1: B.action})


def truncate_above(C: ChainComplex, n: int):
    """P⁺_n C: degrees ≤ n, with C_n / d(C_{n+1}) on top.

    Returns (complex, projection chain map C -> P⁺_n C).
    """
    if n >= C.hi:
        return C, ChainMap(C, C, {k: identity(C.rank(k)) for k in C.degrees()}, check=False)
    if n < C.lo:
        Z = ChainComplex(n, n, {n: ()}, {}, group=C.group)
        return Z, ChainMap(C, Z, {}, check=False)
    top = SubquotientGroup(identity(C.rank(n)), C.d(n + 1), C.mods[n])
    mods = {k: C.mods[k] for k in range(C.lo, n)}
    mods[n] = top.group.mods
    proj = _classify_matrix(top, C.rank(n))
    diffs = {k: C.diffs[k] for k in range(C.lo + 1, n)}
    if n > C.lo:
        diffs[n] = _mm(C.diffs[n], top.reps)
    actions = None
    if C.group is not None:
        actions = {k: C.actions[k] for k in range(C.lo, n)}
        actions[n] = [top.induced(a, top) for a in C.actions[n]]
    P = ChainComplex(C.lo, n, mods, diffs, group=C.group, actions=actions,
                     name=f"P+{n}({C.name})")
    maps = {k: identity(C.rank(k)) for k in range(C.lo, n)}
    maps[n] = proj
    return P, ChainMap(C, P, maps)


def truncate_below(C: ChainComplex, n: int):
    """P⁻_n C: degrees ≥ n, with ker d_n at the bottom.

    Returns (complex, inclusion chain map P⁻_n C -> C).
    """
    if n <= C.lo:
        return C, ChainMap(C, C, {k: identity(C.rank(k)) for k in C.degrees()}, check=False)
    if n > C.hi:
        Z = ChainComplex(n, n, {n: ()}, {}, group=C.group)
        return Z, ChainMap(Z, C, {}, check=False)
    bot = SubquotientGroup(C.cycles(n), zeros(C.rank(n), 0), C.mods[n])
    mods = {k: C.mods[k] for k in range(n + 1, C.hi + 1)}
    mods[n] = bot.group.mods
    diffs = {k: C.diffs[k] for k in range(n + 2, C.hi + 1)}
    if n < C.hi:
        diffs[n + 1] = _classify_cols(bot, C.diffs[n + 1])
    actions = None
    if C.group is not None:
        actions = {k: C.actions[k] for k in range(n + 1, C.hi + 1)}
        actions[n] = [bot.induced(a, bot) for a in C.actions[n]]
    P = ChainComplex(n, C.hi, mods, diffs, group=C.group, actions=actions,
                     name=f"P-{n}({C.name})")
    maps = {k: identity(C.rank(k)) for k in range(n + 1, C.hi + 1)}
    maps[n] = bot.reps.copy()
    return P, ChainMap(P, C, maps)


def _classify_matrix(sq: SubquotientGroup, r: int) -> np.ndarray:
    k = len(sq.group.mods)
    P = zeros(k, r)
    for j in range(r):
        e = zeros(r, 1)[:, 0]
        e[j] = 1
        P[:, j] = np.array(sq.classify(e), dtype=object)
    return P


def _classify_cols(sq: SubquotientGroup, M) -> np.ndarray:
    k = len(sq.group.mods)
    out = zeros(k, M.shape[1])
    for j in range(M.shape[1]):
        out[:, j] = np.array(sq.classify(M[:, j]), dtype=object)
    return out


def quasi_isomorphic_via(f: ChainMap, degrees=None) -> bool:
    """True when f induces isomorphisms on homology in the given degrees."""
    from .abelian import is_exact_at
    degrees = degrees if degrees is not None else sorted(set(f.src.degrees()) | set(f.tgt.degrees()))
    for n in degrees:
        HA, HB = f.src.homology(n), f.tgt.homology(n)
        if HA.group != HB.group:
            return False
        M = HA.induced(f.at(n), HB) if HA.reps.shape[1] else zeros(len(HB.group.mods), 0)
        k = len(HB.group.mods)
        # bijective: surjective (exact at target with zero map after) and injective
        if not is_exact_at(M, zeros(0, k), HB.group.mods, ()):
            return False
        if not is_exact_at(zeros(len(HA.group.mods), 0), M, HA.group.mods, HB.group.mods):
            return False
    return True
