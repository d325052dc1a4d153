"""Finitely generated abelian groups and explicit subquotients of Z^n / (moduli)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from ..caps import InvalidInput
from .lattice import Subquotient, as_matrix, identity, kernel_mod, zeros


@dataclass(frozen=True)
class FinGenAbGroup:
    """Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^rank with d_1 | d_2 | ... and every d_i > 1."""
    torsion: tuple = ()
    rank: int = 0

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if any(d < 2 for d in t):
            raise InvalidInput("invariant factors must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise InvalidInput(f"invariant factors {list(t)} do not form a divisibility chain")
        if self.rank < 0:
            raise InvalidInput("rank must be non-negative")

    @classmethod
    def from_moduli(cls, mods) -> "FinGenAbGroup":
        """Normal form of ⊕ Z/m_i (m_i = 0 meaning Z)."""
        mods = [int(m) for m in mods]
        sq = Subquotient(identity(len(mods)), diag_moduli(mods), len(mods))
        return cls(tuple(sq.torsion), sq.rank)

    @property
    def mods(self) -> tuple:
        return self.torsion + (0,) * self.rank

    @property
    def order(self):
        """Number of elements, or None when infinite."""
        return None if self.rank else prod(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and not self.rank

    def elements(self):
        if self.rank:
            raise InvalidInput("cannot list the elements of an infinite group")
        return itertools.product(*(range(d) for d in self.torsion))

    def __str__(self):
        if self.is_trivial:
            return "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, d) -> "FinGenAbGroup":
        try:
            return cls(tuple(d.get("torsion", ())), int(d.get("rank", 0)))
        except (AttributeError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed abelian group: {exc}") from None


def diag_moduli(mods) -> np.ndarray:
    """Columns m_i e_i for the nonzero moduli."""
    n = len(mods)
    pos = [i for i, m in enumerate(mods) if m]
    D = zeros(n, len(pos))
    for k, i in enumerate(pos):
        D[i, k] = mods[i]
    return D


def reduce_vec(v, mods) -> np.ndarray:
    out = np.array([int(x) for x in v], dtype=object)
    for i, m in enumerate(mods):
        if m:
            out[i] %= m
    return out


def hstack(*mats, rows: int) -> np.ndarray:
    mats = [as_matrix(M, rows, 0) for M in mats]
    cols = sum(M.shape[1] for M in mats)
    out = zeros(rows, cols)
    c = 0
    for M in mats:
        if M.shape[1]:
            out[:, c:c + M.shape[1]] = M
            c += M.shape[1]
    return out


class SubquotientGroup:
    """K / L inside the coordinate group Z^n / (mods), made explicit.

    ``group`` is the abstract normal form; ``reps`` holds one coordinate
    vector per generator; ``classify`` gives coordinates of any element of K.
    The lattice L is enlarged by the moduli automatically.
    """

    def __init__(self, K, L, mods):
        self.mods = tuple(int(m) for m in mods)
        n = len(self.mods)
        self.n = n
        D = diag_moduli(self.mods)
        K = hstack(K, D, rows=n)
        L = hstack(L, D, rows=n)
        self.sq = Subquotient(K, L, n)
        self.group = FinGenAbGroup(tuple(self.sq.torsion), self.sq.rank)
        self.reps = self.sq.reps

    @property
    def gens(self) -> list:
        return [self.reps[:, j].copy() for j in range(self.reps.shape[1])]

    def contains(self, x) -> bool:
        return self.sq.contains(x)

    def classify(self, x) -> tuple:
        return self.sq.classify(x)

    def is_zero(self, x) -> bool:
        return not any(self.classify(x))

    def element(self, coords) -> np.ndarray:
        v = zeros(self.n, 1)[:, 0]
        for c, j in zip(coords, range(self.reps.shape[1])):
            if c:
                v = v + int(c) * self.reps[:, j]
        return reduce_vec(v, self.mods)

    def elements(self):
        """Coordinate tuples of all elements (finite groups only)."""
        return self.group.elements()

    def induced(self, f, target: "SubquotientGroup") -> np.ndarray:
        """Matrix (in generator coordinates) of the map induced by ``f``."""
        f = as_matrix(f, target.n, self.n)
        k = len(target.group.mods)
        M = zeros(k, self.reps.shape[1])
        for j in range(self.reps.shape[1]):
            img = f.dot(self.reps[:, j]) if self.n else zeros(target.n, 1)[:, 0]
            M[:, j] = np.array(target.classify(img), dtype=object)
        return M


def kernel_module(f, src_mods, tgt_mods) -> SubquotientGroup:
    """ker(f: Z^n/(src) -> Z^m/(tgt)) as an explicit group."""
    K = kernel_mod(as_matrix(f, len(tgt_mods), len(src_mods)), list(tgt_mods),
                   ncols=len(src_mods))
    return SubquotientGroup(K, zeros(len(src_mods), 0), src_mods)


def cokernel_module(f, src_mods, tgt_mods) -> SubquotientGroup:
    """coker(f) as an explicit group."""
    m = len(tgt_mods)
    return SubquotientGroup(identity(m), as_matrix(f, m, len(src_mods)), tgt_mods)


def is_exact_at(f, g, mid_mods, tgt_mods) -> bool:
    """im f = ker g inside Z^n/(mid_mods), for matrices f (into mid) and g (out of mid)."""
    from .lattice import lattice_equal
    n = len(mid_mods)
    D = diag_moduli(mid_mods)
    K = hstack(kernel_mod(as_matrix(g, len(tgt_mods), n), list(tgt_mods), ncols=n), D, rows=n)
    I = hstack(f, D, rows=n)
    return lattice_equal(K, I, n)


def homology_quotient(D_out, D_in, mods, out_mods):
    """ker(D_out) / im(D_in) on Z^n/(mods); D_out lands in Z^m/(out_mods).

    Uses exact F_p arithmetic when every modulus involved is the same prime.
    """
    from .fp import common_prime, homology_fp
    n = len(mods)
    D_out = as_matrix(D_out, len(out_mods), n)
    D_in = as_matrix(D_in, n, 0)
    p = common_prime(mods, out_mods)
    if p is not None and n:
        return homology_fp(D_out, D_in, n, p)
    if D_out.shape[0]:
        K = kernel_mod(D_out, list(out_mods), ncols=n)
    else:
        K = identity(n)
    return SubquotientGroup(K, D_in, mods)
