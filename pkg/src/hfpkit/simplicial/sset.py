"""Dimension-bounded simplicial sets with every simplex materialized.

Simplices of dimension ``n`` are the integers ``0..size(n)-1``.  Each one
carries a hashable ``key`` (used for labels and JSON ids), its faces and its
degeneracies.  Degenerate simplices are stored like any other and flagged.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Hashable, Sequence

from ..caps import InvalidInput, check_simplices


class SimplicialSet:
    """A simplicial set truncated at ``dim_bound``.

    Parameters
    ----------
    keys : list of lists
        ``keys[n]`` lists the n-simplices (any hashable values, distinct per dim).
    faces : list of lists of tuples
        ``faces[n][x]`` = (d_0 x, ..., d_n x) for n >= 1; ``faces[0]`` is ignored.
    degens : list of lists of tuples
        ``degens[n][x]`` = (s_0 x, ..., s_n x) for n < dim_bound.
    """

    def __init__(self, keys, faces, degens, name: str = "", check: bool = True):
        self.keys = tuple(tuple(k) for k in keys)
        N = len(self.keys) - 1
        if N < 0:
            raise InvalidInput("a simplicial set needs at least dimension 0")
        self.faces = tuple(tuple(tuple(f) for f in faces[n]) if n >= 1 else
                           tuple(() for _ in self.keys[0]) for n in range(N + 1))
        self.degens = tuple(tuple(tuple(s) for s in degens[n]) for n in range(N))
        self.name = name
        check_simplices(sum(len(k) for k in self.keys), f"simplicial set {name}")
        if check:
            self.validate()

    # -- construction ---------------------------------------------------
    @classmethod
    def build(cls, levels: Sequence[Sequence[Hashable]],
              face: Callable[[int, int, Hashable], Hashable],
              degen: Callable[[int, int, Hashable], Hashable],
              name: str = "", check: bool = True):
        """Build from keyed levels and key-level face/degeneracy functions."""
        levels = [list(l) for l in levels]
        N = len(levels) - 1
        check_simplices(sum(len(l) for l in levels), f"simplicial set {name}")
        idx = [{k: i for i, k in enumerate(l)} for l in levels]
        for n, l in enumerate(levels):
            if len(idx[n]) != len(l):
                raise InvalidInput(f"duplicate simplex keys in dimension {n}")
        faces = [[()] * len(levels[0])]
        for n in range(1, N + 1):
            d = idx[n - 1]
            try:
                faces.append([tuple(d[face(n, i, k)] for i in range(n + 1)) for k in levels[n]])
            except KeyError as exc:
                raise InvalidInput(f"face of a {n}-simplex is missing: {exc}") from None
        degens = []
        for n in range(N):
            d = idx[n + 1]
            try:
                degens.append([tuple(d[degen(n, i, k)] for i in range(n + 1)) for k in levels[n]])
            except KeyError as exc:
                raise InvalidInput(f"degeneracy of a {n}-simplex is missing: {exc}") from None
        return cls(levels, faces, degens, name=name, check=check)

    # -- basic accessors ------------------------------------------------
    @property
    def dim_bound(self) -> int:
        return len(self.keys) - 1

    def size(self, n: int) -> int:
        return len(self.keys[n])

    @property
    def sizes(self) -> tuple:
        return tuple(len(k) for k in self.keys)

    def face(self, n: int, i: int, x: int) -> int:
        return self.faces[n][x][i]

    def degen(self, n: int, i: int, x: int) -> int:
        return self.degens[n][x][i]

    def __repr__(self):
        return f"SimplicialSet({self.name or '?'}, sizes={self.sizes})"

    @cached_property
    def index(self) -> tuple:
        return tuple({k: i for i, k in enumerate(l)} for l in self.keys)

    @cached_property
    def ez(self) -> tuple:
        """``ez[n][x]`` = (i, base) with x = s_i(base) (smallest i), or None."""
        out = [[None] * len(self.keys[0])]
        for n in range(1, self.dim_bound + 1):
            row = [None] * len(self.keys[n])
            for b, ss in enumerate(self.degens[n - 1]):
                for i, x in enumerate(ss):
                    cur = row[x]
                    if cur is None or i < cur[0]:
                        row[x] = (i, b)
            out.append(row)
        return tuple(tuple(r) for r in out)

    def is_degenerate(self, n: int, x: int) -> bool:
        return self.ez[n][x] is not None

    @cached_property
    def nondegenerate(self) -> tuple:
        return tuple(tuple(x for x in range(len(self.keys[n])) if self.ez[n][x] is None)
                     for n in range(self.dim_bound + 1))

    def nondegenerate_count(self, upto: int | None = None) -> int:
        upto = self.dim_bound if upto is None else upto
        return sum(len(self.nondegenerate[n]) for n in range(upto + 1))

    def ez_decomposition(self, n: int, x: int):
        """Return (ops, y) with x = s_{ops[0]} s_{ops[1]} ... (y), y nondegenerate."""
        ops = []
        while self.ez[n][x] is not None:
            i, x = self.ez[n][x]
            ops.append(i)
            n -= 1
        return ops, n, x

    @cached_property
    def face_index(self) -> tuple:
        """``face_index[n]`` maps a face tuple to the n-simplices having it."""
        out = [None]
        for n in range(1, self.dim_bound + 1):
            d: dict = {}
            for x, f in enumerate(self.faces[n]):
                d.setdefault(f, []).append(x)
            out.append({k: tuple(v) for k, v in d.items()})
        return tuple(out)

    def vertices(self, n: int, x: int) -> tuple:
        """The n+1 vertices of an n-simplex, in order."""
        if n == 0:
            return (x,)
        out = []
        for k in range(n + 1):
            y, m = x, n
            # vertex k: apply faces removing everything but position k
            while m > 0:
                if k < m:
                    y = self.faces[m][y][m]
                else:
                    y = self.faces[m][y][0]
                    k -= 1
                m -= 1
            out.append(y)
        return tuple(out)

    def theta_star(self, theta: Sequence[int], n: int, x: int) -> int:
        """Apply the simplicial operator of a monotone map theta: [m] -> [n]."""
        theta = tuple(theta)
        m = len(theta) - 1
        if m < n or set(theta) != set(range(n + 1)):
            missing = [j for j in range(n + 1) if j not in set(theta)]
            if missing:
                j = missing[0]
                rest = tuple(v - 1 if v > j else v for v in theta)
                return self.theta_star(rest, n - 1, self.faces[n][x][j])
        if m == n:
            return x
        i = next(i for i in range(m) if theta[i] == theta[i + 1])
        rest = theta[:i + 1] + theta[i + 2:]
        return self.degens[m - 1][self.theta_star(rest, n, x)][i]

    def label(self, n: int, x: int) -> str:
        return key_label(self.keys[n][x])

    # -- validation -----------------------------------------------------
    def validate(self) -> None:
        N = self.dim_bound
        F, S = self.faces, self.degens
        for n in range(1, N + 1):
            m = len(self.keys[n - 1])
            for x, f in enumerate(F[n]):
                if len(f) != n + 1 or any(not 0 <= y < m for y in f):
                    raise InvalidInput(f"bad face indices for {n}-simplex {self.label(n, x)}")
        for n in range(N):
            m = len(self.keys[n + 1])
            if len(S[n]) != len(self.keys[n]):
                raise InvalidInput(f"degeneracy table of dimension {n} has wrong size")
            for x, s in enumerate(S[n]):
                if len(s) != n + 1 or any(not 0 <= y < m for y in s):
                    raise InvalidInput(f"bad degeneracy indices for {n}-simplex {self.label(n, x)}")
        for n in range(2, N + 1):
            Fn, Fm = F[n], F[n - 1]
            for x, f in enumerate(Fn):
                for j in range(1, n + 1):
                    dj = Fm[f[j]]
                    for i in range(j):
                        if dj[i] != Fm[f[i]][j - 1]:
                            raise InvalidInput(
                                f"face identity d{i}d{j} fails on {n}-simplex {self.label(n, x)}")
        for n in range(N):
            for x, s in enumerate(S[n]):
                for j in range(n + 1):
                    y = s[j]
                    fy = F[n + 1][y]
                    for i in range(n + 2):
                        if i == j or i == j + 1:
                            want = x
                        elif i < j:
                            want = S[n - 1][F[n][x][i]][j - 1]
                        else:
                            want = S[n - 1][F[n][x][i - 1]][j]
                        if fy[i] != want:
                            raise InvalidInput(
                                f"identity d{i}s{j} fails on {n}-simplex {self.label(n, x)}")
                if n + 1 < N:
                    for j in range(n + 1):
                        for i in range(j + 1):
                            if S[n + 1][s[j]][i] != S[n + 1][s[i]][j + 1]:
                                raise InvalidInput(
                                    f"identity s{i}s{j} fails on {n}-simplex {self.label(n, x)}")

    # -- json -----------------------------------------------------------
    def ids(self, n: int) -> list:
        """String ids of the n-simplices (labels, or positional if labels clash)."""
        labs = [self.label(n, x) for x in range(self.size(n))]
        if len(set(labs)) != len(labs):
            labs = [f"{n}:{x}" for x in range(self.size(n))]
        return labs

    def to_json(self) -> dict:
        N = self.dim_bound
        ids = [self.ids(n) for n in range(N + 1)]
        faces, degens = {}, {}
        for n in range(1, N + 1):
            faces[str(n)] = {ids[n][x]: [ids[n - 1][y] for y in self.faces[n][x]]
                             for x in sorted(range(self.size(n)), key=lambda x: ids[n][x])}
        for n in range(N):
            degens[str(n)] = {ids[n][x]: [ids[n + 1][y] for y in self.degens[n][x]]
                              for x in sorted(range(self.size(n)), key=lambda x: ids[n][x])}
        return {"dim_bound": N, "simplices": [sorted(l) for l in ids],
                "faces": faces, "degeneracies": degens}

    @classmethod
    def from_json(cls, d: dict, name: str = "") -> "SimplicialSet":
        try:
            N = int(d["dim_bound"])
            levels = [[str(k) for k in l] for l in d["simplices"]]
            if len(levels) != N + 1:
                raise InvalidInput(f"simplicial set {name!r}: expected {N + 1} levels")
            pos = [{k: i for i, k in enumerate(l)} for l in levels]
            faces = [[()] * len(levels[0])]
            for n in range(1, N + 1):
                tab = d["faces"][str(n)]
                faces.append([tuple(pos[n - 1][y] for y in tab[k]) for k in levels[n]])
            degens = []
            for n in range(N):
                tab = d["degeneracies"][str(n)]
                degens.append([tuple(pos[n + 1][y] for y in tab[k]) for k in levels[n]])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed simplicial set {name!r}: unresolved {exc}") from None
        return cls(levels, faces, degens, name=name)

    # -- comparisons ----------------------------------------------------
    def same_as(self, other: "SimplicialSet") -> bool:
        return (self.keys == other.keys and self.faces == other.faces
                and self.degens == other.degens)


class TruncatedSimplicialSet(SimplicialSet):
    """A simplicial set remembered only up to ``level`` (= dim_bound)."""

    @property
    def level(self) -> int:
        return self.dim_bound

    @classmethod
    def of(cls, X: SimplicialSet, n: int) -> "TruncatedSimplicialSet":
        return cls(X.keys[:n + 1], X.faces[:n + 1], X.degens[:n], name=f"tr{n}({X.name})",
                   check=False)


class SimplicialMap:
    """A simplicial map given levelwise: ``maps[n][x]`` is the image of x."""

    def __init__(self, source: SimplicialSet, target: SimplicialSet, maps, check: bool = True):
        self.source, self.target = source, target
        self.maps = tuple(tuple(int(v) for v in m) for m in maps)
        if check:
            self.validate()

    def __call__(self, n: int, x: int) -> int:
        return self.maps[n][x]

    def validate(self) -> None:
        S, T = self.source, self.target
        if len(self.maps) != S.dim_bound + 1 or T.dim_bound < S.dim_bound:
            raise InvalidInput("map dimensions do not match")
        for n in range(S.dim_bound + 1):
            m = self.maps[n]
            if len(m) != S.size(n) or any(not 0 <= v < T.size(n) for v in m):
                raise InvalidInput(f"map values out of range in dimension {n}")
            if n >= 1:
                Fm = self.maps[n - 1]
                for x, f in enumerate(S.faces[n]):
                    tf = T.faces[n][m[x]]
                    if any(tf[i] != Fm[f[i]] for i in range(n + 1)):
                        raise InvalidInput(f"map does not commute with faces at {n}-simplex {x}")
            if n < S.dim_bound:
                Mp = self.maps[n + 1]
                for x, s in enumerate(S.degens[n]):
                    ts = T.degens[n][m[x]]
                    if any(ts[i] != Mp[s[i]] for i in range(n + 1)):
                        raise InvalidInput(f"map does not commute with degeneracies at {n}-simplex {x}")

    def compose(self, other: "SimplicialMap") -> "SimplicialMap":
        """self after other."""
        return SimplicialMap(other.source, self.target,
                             [tuple(self.maps[n][v] for v in other.maps[n])
                              for n in range(other.source.dim_bound + 1)], check=False)

    def is_isomorphism(self) -> bool:
        return all(len(set(m)) == self.target.size(n) == len(m) for n, m in enumerate(self.maps))

    @classmethod
    def identity(cls, X: SimplicialSet) -> "SimplicialMap":
        return cls(X, X, [tuple(range(X.size(n))) for n in range(X.dim_bound + 1)], check=False)


def key_label(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(key_label(v) for v in k) + ")"
    return str(k)
