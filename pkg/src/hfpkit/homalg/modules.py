"""Modules over finite groups on coordinate groups Z^r / (moduli)."""
from __future__ import annotations

import numpy as np

from ..caps import InvalidInput
from ..groups import FiniteGroup
from .abelian import FinGenAbGroup, SubquotientGroup, reduce_vec
from .lattice import as_matrix, identity, kernel_mod, zeros


def _mod_equal(A, B, mods) -> bool:
    """A ≡ B as maps into Z^r/(mods) (row i taken modulo mods[i])."""
    D = A - B
    for i, m in enumerate(mods):
        row = D[i, :]
        if m:
            if any(int(v) % m for v in row):
                return False
        elif any(row):
            return False
    return True


class GModule:
    """A G-module whose carrier is ⊕ Z/m_i (``m_i = 0`` meaning Z).

    ``action[g]`` is an integer matrix acting on coordinate columns; it is
    only meaningful modulo the moduli.
    """

    def __init__(self, G: FiniteGroup, mods, action=None, name: str = "", check: bool = True):
        self.G = G
        self.mods = tuple(int(m) for m in mods)
        r = len(self.mods)
        if action is None:
            action = [identity(r) for _ in G.elements]
        self.action = tuple(as_matrix(a, r, r) for a in action)
        self.name = name
        if check:
            self.validate()

    @property
    def rank(self) -> int:
        """Number of coordinates (not the free rank)."""
        return len(self.mods)

    @property
    def carrier(self) -> FinGenAbGroup:
        return FinGenAbGroup.from_moduli(self.mods)

    @property
    def is_finite(self) -> bool:
        return all(self.mods)

    def size(self) -> int:
        if not self.is_finite:
            raise InvalidInput("module is infinite")
        out = 1
        for m in self.mods:
            out *= m
        return out

    def validate(self) -> None:
        G, mods, r = self.G, self.mods, len(self.mods)
        if any(m < 0 or m == 1 for m in mods):
            raise InvalidInput("moduli must be 0 or at least 2")
        if len(self.action) != G.order:
            raise InvalidInput("module needs one action matrix per group element")
        for g, A in enumerate(self.action):
            if A.shape != (r, r):
                raise InvalidInput(f"action matrix of {G.labels[g]!r} has the wrong shape")
            # well defined: A (m_j e_j) ≡ 0
            for j, m in enumerate(mods):
                if m and not _mod_equal(m * A[:, [j]], zeros(r, 1), mods):
                    raise InvalidInput(f"action of {G.labels[g]!r} is not well defined")
        if not _mod_equal(self.action[G.identity], identity(r), mods):
            raise InvalidInput("identity must act trivially")
        for g in G.elements:
            for h in G.elements:
                if not _mod_equal(self.action[G.mul(g, h)],
                                  self.action[g].dot(self.action[h]) if r else zeros(0, 0), mods):
                    raise InvalidInput(
                        f"module action is not a homomorphism at ({G.labels[g]}, {G.labels[h]})")

    def act(self, g: int, v) -> np.ndarray:
        if not self.rank:
            return zeros(0, 1)[:, 0]
        return reduce_vec(self.action[g].dot(np.array(v, dtype=object)), self.mods)

    def reduce(self, v) -> np.ndarray:
        return reduce_vec(v, self.mods)

    def elements(self):
        import itertools
        if not self.is_finite:
            raise InvalidInput("module is infinite")
        for t in itertools.product(*(range(m) for m in self.mods)):
            yield np.array(t, dtype=object)

    def fixed_points(self) -> SubquotientGroup:
        """M^G as an explicit subgroup."""
        r = self.rank
        blocks = [self.action[g] - identity(r) for g in self.G.generators]
        if not blocks or r == 0:
            return SubquotientGroup(identity(r), zeros(r, 0), self.mods)
        M = np.vstack(blocks)
        K = kernel_mod(M, list(self.mods) * len(blocks), ncols=r)
        return SubquotientGroup(K, zeros(r, 0), self.mods)

    # -- constructions --------------------------------------------------
    @classmethod
    def trivial(cls, G: FiniteGroup, mods, name: str = "") -> "GModule":
        return cls(G, mods, None, name=name or "triv")

    @classmethod
    def cyclic_with_sign(cls, G: FiniteGroup, m: int, sign, name: str = "") -> "GModule":
        """Z/m (or Z) with g acting by ``sign[g]`` ∈ {±1}."""
        return cls(G, [m], [[[int(sign[g])]] for g in G.elements], name=name)

    @classmethod
    def inversion(cls, G: FiniteGroup, m: int, hom_to_c2) -> "GModule":
        """Z/m with elements outside the kernel of ``hom_to_c2`` acting by -1."""
        return cls.cyclic_with_sign(G, m, [1 if hom_to_c2[g] == 0 else -1 for g in G.elements],
                                    name=f"Z/{m}-")

    def restrict(self, H: FiniteGroup, embedding) -> "GModule":
        return GModule(H, self.mods, [self.action[embedding[h]] for h in H.elements],
                       name=self.name)

    def direct_sum(self, other: "GModule") -> "GModule":
        if other.G is not self.G and other.G.table != self.G.table:
            raise InvalidInput("direct sum needs modules over the same group")
        r, s = self.rank, other.rank
        acts = []
        for g in self.G.elements:
            A = zeros(r + s, r + s)
            if r:
                A[:r, :r] = self.action[g]
            if s:
                A[r:, r:] = other.action[g]
            acts.append(A)
        return GModule(self.G, self.mods + other.mods, acts)

    def sub(self, K) -> tuple:
        """Submodule spanned by lattice columns K (must be invariant).

        Returns (module, inclusion matrix).
        """
        sq = SubquotientGroup(K, zeros(self.rank, 0), self.mods)
        return self._transfer(sq, inclusion=True)

    def quotient(self, L) -> tuple:
        """Quotient by the submodule spanned by columns L.

        Returns (module, projection matrix).
        """
        sq = SubquotientGroup(identity(self.rank), L, self.mods)
        return self._transfer(sq, inclusion=False)

    def _transfer(self, sq: SubquotientGroup, inclusion: bool):
        mods = sq.group.mods
        acts = []
        for g in self.G.elements:
            acts.append(sq.induced(self.action[g], sq))
        M = GModule(self.G, mods, acts)
        if inclusion:
            return M, sq.reps.copy()
        P = zeros(len(mods), self.rank)
        for j in range(self.rank):
            e = zeros(self.rank, 1)[:, 0]
            e[j] = 1
            P[:, j] = np.array(sq.classify(e), dtype=object)
        return M, P

    def to_json(self) -> dict:
        mods = self.mods
        canon = FinGenAbGroup.from_moduli(mods).mods == mods
        d = ({"rank": mods.count(0), "torsion": [m for m in mods if m]} if canon
             else {"mods": list(mods)})
        d["action"] = {self.G.labels[g]: [[int(v) for v in row] for row in self.action[g]]
                       for g in self.G.elements}
        return d

    @classmethod
    def from_json(cls, G: FiniteGroup, d: dict, name: str = "") -> "GModule":
        try:
            if "mods" in d:
                mods = [int(m) for m in d["mods"]]
            else:
                mods = [int(t) for t in d.get("torsion", [])] + [0] * int(d.get("rank", 0))
            act = d.get("action")
            r = len(mods)
            if act is None:
                mats = None
            else:
                mats = []
                for g in G.elements:
                    lab = G.labels[g]
                    if lab not in act:
                        raise InvalidInput(f"module {name!r}: no action matrix for {lab!r}")
                    mats.append(as_matrix(act[lab], r, r))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed module {name!r}: {exc}") from None
        return cls(G, mods, mats, name=name)


def module_hom_ok(f, A: GModule, B: GModule) -> bool:
    """f: A -> B well defined and G-equivariant."""
    f = as_matrix(f, B.rank, A.rank)
    for j, m in enumerate(A.mods):
        if m and not _mod_equal(m * f[:, [j]], zeros(B.rank, 1), B.mods):
            return False
    for g in A.G.elements:
        lhs = f.dot(A.action[g]) if A.rank and B.rank else zeros(B.rank, A.rank)
        rhs = B.action[g].dot(f) if A.rank and B.rank else zeros(B.rank, A.rank)
        if not _mod_equal(lhs, rhs, B.mods):
            return False
    return True



def module_from_action(action) -> tuple:
    """An abelian group with G-action (a GroupAction) as a GModule in invariant-factor form.

    Returns (module, coords) with ``coords[a]`` the coordinate tuple of the
    element a.
    """
    A, G = action.A, action.G
    if not A.is_abelian:
        raise InvalidInput("module_from_action needs an abelian group")
    gens = list(A.generators)
    k = len(gens)
    orders = [A.element_order(g) for g in gens]
    # one integer vector per element, and the kernel of Z^k -> A
    first: dict = {}
    rel = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    import itertools
    for v in itertools.product(*(range(o) for o in orders)):
        a = A.identity
        for g, c in zip(gens, v):
            a = A.mul(a, A.power(g, c))
        if a in first:
            rel.append([x - y for x, y in zip(v, first[a])])
        else:
            first[a] = v
    L = as_matrix(np.array(rel, dtype=object).T if rel else zeros(k, 0), k)
    sq = SubquotientGroup(identity(k), L, [0] * k)
    coords = {a: tuple(int(c) for c in sq.classify(v)) for a, v in first.items()}
    back = {c: a for a, c in coords.items()}
    mods = sq.group.mods
    r = len(mods)
    mats = []
    for g in G.elements:
        M = zeros(r, r)
        for j in range(r):
            e = tuple(1 if i == j else 0 for i in range(r))
            M[:, j] = np.array(coords[action.images[g][back[e]]], dtype=object)
        mats.append(M)
    return GModule(G, mods, mats, name=A.name), coords
