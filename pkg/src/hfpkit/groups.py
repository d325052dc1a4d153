"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..n-1``; ``labels`` carry human-readable names.
Every constructor goes through :class:`FiniteGroup`, which checks the group
axioms on the full table.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .caps import InvalidInput, check_order


class FiniteGroup:
    """A finite group given by its multiplication table.

    Parameters
    ----------
    table : sequence of sequences of int
        ``table[a][b]`` is the index of ``a*b``.
    identity : int, optional
        Index of the identity; located automatically when omitted.
    labels : sequence of str, optional
        Element names (default ``"0".."n-1"``).
    """

    def __init__(self, table, identity=None, labels=None, name="", check=True):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        n = len(self.table)
        if n == 0:
            raise InvalidInput("group must have at least one element")
        if labels is None:
            labels = [str(i) for i in range(n)]
        self.labels = tuple(str(x) for x in labels)
        self.name = name
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise InvalidInput("group labels must be distinct, one per element")
        if identity is None:
            identity = next((e for e in range(n) if self.table[e][e] == e), 0)
        self.identity = int(identity)
        if check:
            self.validate()
        inv = [0] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == self.identity:
                    inv[a] = b
                    break
        self.inverse_table = tuple(inv)

    # -- basic structure ------------------------------------------------
    def validate(self) -> None:
        t, n, e = self.table, len(self.table), self.identity
        for a, row in enumerate(t):
            if len(row) != n:
                raise InvalidInput(f"multiplication table row {a} has wrong length")
            for x in row:
                if not 0 <= x < n:
                    raise InvalidInput(f"multiplication table entry {x} out of range")
        if not 0 <= e < n:
            raise InvalidInput("identity index out of range")
        for a in range(n):
            if t[e][a] != a or t[a][e] != a:
                raise InvalidInput(f"identity law fails for element {self.labels[a]!r}")
            if e not in t[a]:
                raise InvalidInput(f"element {self.labels[a]!r} has no inverse")
        for a in range(n):
            ra = t[a]
            for b in range(n):
                ab = ra[b]
                rab, rb = t[ab], t[b]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        la, lb, lc = self.labels[a], self.labels[b], self.labels[c]
                        raise InvalidInput(
                            f"associativity fails for triple ({la}, {lb}, {lc})")

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse_table[a]

    def prod(self, seq: Iterable[int]) -> int:
        r = self.identity
        for x in seq:
            r = self.table[r][x]
        return r

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        for _ in range(k):
            r = self.table[r][a]
        return r

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.table[self.table[g][h]][self.inverse_table[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidInput(f"unknown group element {label!r}") from None

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    # -- subgroups -------------------------------------------------------
    def generated(self, gens: Iterable[int]) -> frozenset:
        gens = [g for g in gens]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def normal_closure(self, subset: Iterable[int]) -> frozenset:
        conj = {self.conj(g, s) for s in subset for g in self.elements}
        return self.generated(sorted(conj))

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        if self.identity not in s:
            return False
        return all(self.table[a][self.inverse_table[b]] in s for a in s for b in s)

    def is_normal(self, subset) -> bool:
        s = set(subset)
        return self.is_subgroup(s) and all(self.conj(g, h) in s for g in self.elements for h in s)

    @cached_property
    def generators(self) -> tuple:
        """A small deterministic generating set (greedy by subgroup growth)."""
        gens: list[int] = []
        cur = frozenset([self.identity])
        while len(cur) < self.order:
            best, best_sz = None, -1
            for a in self.elements:
                if a in cur:
                    continue
                sz = len(self.generated(gens + [a]))
                if sz > best_sz:
                    best, best_sz = a, sz
            gens.append(best)
            cur = self.generated(gens)
        return tuple(gens)

    def center(self) -> frozenset:
        t = self.table
        return frozenset(a for a in self.elements if all(t[a][b] == t[b][a] for b in self.elements))

    def conjugacy_classes(self) -> list:
        seen, out = set(), []
        for a in self.elements:
            if a in seen:
                continue
            cls = sorted({self.conj(g, a) for g in self.elements})
            seen.update(cls)
            out.append(tuple(cls))
        return out

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        return Subgroup(self, frozenset(members))

    def all_subgroups(self) -> list:
        """All subgroups, by closure over generated subgroups (small groups only)."""
        found = {frozenset([self.identity])}
        frontier = list(found)
        while frontier:
            nxt = []
            for s in frontier:
                for a in self.elements:
                    if a in s:
                        continue
                    t = self.generated(sorted(s) + [a])
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def quotient(self, normal: Iterable[int]):
        """Return ``(Q, proj)`` for the quotient by a normal subgroup."""
        N = frozenset(normal)
        if not self.is_normal(N):
            raise InvalidInput("quotient requires a normal subgroup")
        proj = [-1] * self.order
        reps = []
        for a in self.elements:
            if proj[a] >= 0:
                continue
            k = len(reps)
            reps.append(a)
            for n in N:
                proj[self.table[a][n]] = k
        table = [[proj[self.table[r][s]] for s in reps] for r in reps]
        labels = [self.labels[r] + "N" if len(N) > 1 else self.labels[r] for r in reps]
        Q = FiniteGroup(table, identity=proj[self.identity], labels=labels,
                        name=f"{self.name}/N", check=False)
        return Q, tuple(proj)

    def subgroup_as_group(self, members: Iterable[int]):
        """Return ``(H, embedding)`` with H a FiniteGroup on the sorted members."""
        mem = sorted(set(members))
        if not self.is_subgroup(mem):
            raise InvalidInput("not a subgroup")
        pos = {m: i for i, m in enumerate(mem)}
        table = [[pos[self.table[a][b]] for b in mem] for a in mem]
        H = FiniteGroup(table, identity=pos[self.identity],
                        labels=[self.labels[m] for m in mem], name=f"sub({self.name})", check=False)
        return H, tuple(mem)

    # -- json -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"elements": list(self.labels),
                "mul": [list(r) for r in self.table],
                "id": self.identity}

    @classmethod
    def from_json(cls, d: dict, name: str = "") -> "FiniteGroup":
        try:
            return cls(d["mul"], identity=d.get("id"), labels=d["elements"], name=name)
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed group {name!r}: {exc}") from None

    # -- constructors ---------------------------------------------------
    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls([[0]], labels=["e"], name="1")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], identity=0,
                   name=f"Z{n}")

    @classmethod
    def from_elements(cls, elements: Sequence, mul, name="", label=str) -> "FiniteGroup":
        """Build from a list of hashable elements and a product function.

        The first element should be the identity.
        """
        pos = {x: i for i, x in enumerate(elements)}
        table = [[pos[mul(a, b)] for b in elements] for a in elements]
        return cls(table, identity=0, labels=[label(x) for x in elements], name=name)

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name="") -> "FiniteGroup":
        """Closure of permutation generators; product p*q = p after q."""
        gens = [tuple(g) for g in gens]
        deg = len(gens[0]) if gens else 1
        e = tuple(range(deg))

        def mul(p, q):
            return tuple(p[q[i]] for i in range(deg))

        elems = [e]
        seen = {e}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    queue.append(y)
                    check_order(len(elems), "permutation closure")
        elems = [e] + sorted(elems[1:])
        return cls.from_elements(elems, mul, name=name, label=_perm_label)

    @classmethod
    def symmetric(cls, n: int) -> "FiniteGroup":
        if n <= 1:
            return cls.trivial()
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
        return cls.from_permutations(gens, name=f"S{n}")

    @classmethod
    def alternating(cls, n: int) -> "FiniteGroup":
        gens = [tuple([1, 2, 0] + list(range(3, n)))]
        for k in range(3, n):
            p = list(range(n))
            p[0], p[1], p[k] = 1, k, 0
            gens.append(tuple(p))
        return cls.from_permutations(gens, name=f"A{n}")

    @classmethod
    def dihedral(cls, n: int) -> "FiniteGroup":
        """Symmetries of an n-gon, order 2n."""
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return cls.from_permutations([rot, ref], name=f"D{n}")

    @classmethod
    def quaternion(cls) -> "FiniteGroup":
        return cls.dicyclic(2)

    @classmethod
    def dicyclic(cls, n: int) -> "FiniteGroup":
        """Dicyclic group of order 4n: <a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>."""
        m = 2 * n
        elems = [(k, 0) for k in range(m)] + [(k, 1) for k in range(m)]

        def mul(p, q):
            (i, s), (j, t) = p, q
            if s == 0:
                return ((i + j) % m, t)
            if t == 0:
                return ((i - j) % m, 1)
            return ((i - j + n) % m, 0)

        name = "Q8" if n == 2 else f"Dic{4 * n}"
        return cls.from_elements(elems, mul, name=name,
                                 label=lambda p: f"a{p[0]}" + ("x" if p[1] else ""))

    @classmethod
    def klein(cls) -> "FiniteGroup":
        return cls.direct_product(cls.cyclic(2), cls.cyclic(2))

    @classmethod
    def direct_product(cls, G: "FiniteGroup", H: "FiniteGroup") -> "FiniteGroup":
        elems = [(a, b) for a in G.elements for b in H.elements]
        elems.remove((G.identity, H.identity))
        elems = [(G.identity, H.identity)] + elems
        return cls.from_elements(
            elems, lambda p, q: (G.mul(p[0], q[0]), H.mul(p[1], q[1])),
            name=f"{G.name}x{H.name}", label=lambda p: f"({G.labels[p[0]]},{H.labels[p[1]]})")

    @classmethod
    def semidirect(cls, N: "FiniteGroup", H: "FiniteGroup", phi) -> "FiniteGroup":
        """N ⋊ H where ``phi[h]`` is the automorphism table of h acting on N."""
        elems = [(n, h) for h in H.elements for n in N.elements]
        elems.remove((N.identity, H.identity))
        elems = [(N.identity, H.identity)] + elems

        def mul(p, q):
            return (N.mul(p[0], phi[p[1]][q[0]]), H.mul(p[1], q[1]))

        return cls.from_elements(elems, mul, name=f"{N.name}:{H.name}",
                                 label=lambda p: f"({N.labels[p[0]]},{H.labels[p[1]]})")

    @classmethod
    def matrix_group(cls, gens, p: int, name="") -> "FiniteGroup":
        """Closure of 2x2 (or kxk) matrices over F_p given as nested tuples."""
        k = len(gens[0])

        def mul(A, B):
            return tuple(tuple(sum(A[i][l] * B[l][j] for l in range(k)) % p for j in range(k))
                         for i in range(k))

        e = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        gens = [tuple(tuple(x % p for x in row) for row in g) for g in gens]
        elems, seen, queue = [e], {e}, deque([e])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    elems.append(y)
                    queue.append(y)
                    check_order(len(elems), "matrix closure")
        elems = [e] + sorted(elems[1:])
        return cls.from_elements(elems, mul, name=name,
                                 label=lambda A: "[" + ";".join(",".join(map(str, r)) for r in A) + "]")


def _perm_label(p) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j)
            j = p[j]
        cycles.append("(" + " ".join(str(x + 1) for x in c) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: frozenset

    def __post_init__(self):
        if not self.parent.is_subgroup(self.members):
            raise InvalidInput("subset is not a subgroup")

    @property
    def order(self) -> int:
        return len(self.members)

    def is_normal_in(self, other: "Subgroup | None" = None) -> bool:
        amb = self.parent.elements if other is None else other.members
        return all(self.parent.conj(g, h) in self.members for g in amb for h in self.members)

    def sorted(self) -> list:
        return sorted(self.members)


# ----------------------------------------------------------------------
# homomorphisms
# ----------------------------------------------------------------------

def extend_homomorphism(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int],
                        images: Sequence[int]):
    """Extend generator images to a homomorphism G -> H, or return None."""
    f = [-1] * G.order
    f[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = G.mul(x, g)
            v = H.mul(f[x], h)
            if f[y] < 0:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    if min(f) < 0:
        return None
    return tuple(f) if is_homomorphism(G, H, f) else None


def is_homomorphism(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> bool:
    return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in G.elements for b in G.elements)


def homomorphisms(G: FiniteGroup, H: FiniteGroup):
    """Iterate all homomorphisms G -> H as image tuples (deterministic order)."""
    gens = G.generators
    cands = [[h for h in H.elements if G.element_order(g) % H.element_order(h) == 0] for g in gens]
    for imgs in itertools.product(*cands):
        f = extend_homomorphism(G, H, gens, imgs)
        if f is not None:
            yield f


def find_isomorphism(G: FiniteGroup, H: FiniteGroup):
    """Return an isomorphism G -> H as a tuple, or None."""
    if G.order != H.order:
        return None
    if sorted(G.element_order(a) for a in G.elements) != sorted(H.element_order(a) for a in H.elements):
        return None
    gens = G.generators
    cands = [[h for h in H.elements if H.element_order(h) == G.element_order(g)] for g in gens]

    def rec(i, imgs):
        if i == len(gens):
            f = extend_homomorphism(G, H, gens, imgs)
            if f is not None and len(set(f)) == H.order:
                return f
            return None
        sub = set(H.generated(imgs)) if imgs else None
        for h in cands[i]:
            if sub is not None and h in sub:
                continue
            r = rec(i + 1, imgs + [h])
            if r is not None:
                return r
        return None

    return rec(0, [])


def automorphisms(G: FiniteGroup) -> list:
    gens = G.generators
    cands = [[h for h in G.elements if G.element_order(h) == G.element_order(g)] for g in gens]
    out = []
    for imgs in itertools.product(*cands):
        f = extend_homomorphism(G, G, gens, imgs)
        if f is not None and len(set(f)) == G.order:
            out.append(f)
    return sorted(out)


def kernel(G: FiniteGroup, H: FiniteGroup, f: Sequence[int]) -> frozenset:
    return frozenset(a for a in G.elements if f[a] == H.identity)


# ----------------------------------------------------------------------
# actions
# ----------------------------------------------------------------------

class GroupAction:
    """A finite group G acting on a finite group A by automorphisms.

    ``images[g][a]`` is ``g(a)``.
    """

    def __init__(self, G: FiniteGroup, A: FiniteGroup, images, check=True):
        self.G, self.A = G, A
        self.images = tuple(tuple(int(x) for x in row) for row in images)
        if check:
            self.validate()

    @classmethod
    def trivial(cls, G: FiniteGroup, A: FiniteGroup) -> "GroupAction":
        return cls(G, A, [tuple(A.elements)] * G.order)

    @classmethod
    def through(cls, G: FiniteGroup, A: FiniteGroup, hom: Sequence[int], auts) -> "GroupAction":
        """Action via a homomorphism into a list of automorphism tables."""
        return cls(G, A, [auts[hom[g]] for g in G.elements])

    def act(self, g: int, a: int) -> int:
        return self.images[g][a]

    def validate(self) -> None:
        G, A = self.G, self.A
        if len(self.images) != G.order:
            raise InvalidInput("action needs one automorphism per group element")
        for g in G.elements:
            img = self.images[g]
            if sorted(img) != list(A.elements):
                raise InvalidInput(f"action of {G.labels[g]!r} is not a bijection")
            if not is_homomorphism(A, A, img):
                raise InvalidInput(f"action of {G.labels[g]!r} is not an automorphism")
        if self.images[G.identity] != tuple(A.elements):
            raise InvalidInput("identity must act trivially")
        for g in G.elements:
            for h in G.elements:
                gh = self.images[G.mul(g, h)]
                ig, ih = self.images[g], self.images[h]
                if any(gh[a] != ig[ih[a]] for a in A.elements):
                    raise InvalidInput(
                        f"action is not a homomorphism at ({G.labels[g]}, {G.labels[h]})")

    def semidirect(self) -> FiniteGroup:
        """A ⋊ G."""
        return FiniteGroup.semidirect(self.A, self.G, self.images)

    def fixed(self) -> frozenset:
        return frozenset(a for a in self.A.elements if all(r[a] == a for r in self.images))


class PermAction:
    """G acting on a finite set ``0..size-1``; ``perms[g][x]`` is ``g.x``."""

    def __init__(self, G: FiniteGroup, size: int, perms, check=True):
        self.G, self.size = G, size
        self.perms = tuple(tuple(int(x) for x in p) for p in perms)
        if check:
            if len(self.perms) != G.order:
                raise InvalidInput("need one permutation per group element")
            for g in G.elements:
                if sorted(self.perms[g]) != list(range(size)):
                    raise InvalidInput(f"{G.labels[g]!r} does not act by a permutation")
            if self.perms[G.identity] != tuple(range(size)):
                raise InvalidInput("identity must act trivially")
            for g in G.elements:
                for h in G.elements:
                    pg, ph, pgh = self.perms[g], self.perms[h], self.perms[G.mul(g, h)]
                    if any(pgh[x] != pg[ph[x]] for x in range(size)):
                        raise InvalidInput(
                            f"set action is not a homomorphism at ({G.labels[g]}, {G.labels[h]})")

    def act(self, g: int, x: int) -> int:
        return self.perms[g][x]

    @classmethod
    def left_regular(cls, G: FiniteGroup) -> "PermAction":
        return cls(G, G.order, [G.table[g] for g in G.elements])

    @classmethod
    def trivial(cls, G: FiniteGroup, size: int) -> "PermAction":
        return cls(G, size, [tuple(range(size))] * G.order)

    def orbits(self) -> list:
        seen, out = set(), []
        for x in range(self.size):
            if x in seen:
                continue
            orb = sorted({p[x] for p in self.perms})
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def stabilizer(self, x: int) -> frozenset:
        return frozenset(g for g in self.G.elements if self.perms[g][x] == x)
