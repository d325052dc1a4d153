"""Finitely presented groups: light Tietze reduction and coset enumeration.

Letters are integers: ``2g`` is generator g, ``2g+1`` its inverse.
"""
from __future__ import annotations

from collections import deque

from ..caps import CapExceeded, get_caps
from ..groups import FiniteGroup


def inv_letter(x: int) -> int:
    return x ^ 1


def inv_word(w) -> list:
    return [x ^ 1 for x in reversed(w)]


def free_reduce(w) -> list:
    out: list = []
    for x in w:
        if out and out[-1] == x ^ 1:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(w) -> list:
    w = free_reduce(w)
    while len(w) >= 2 and w[0] == w[-1] ^ 1:
        w = w[1:-1]
    return w


class Presentation:
    """Generators 0..m-1 with relators; supports eliminating generators."""

    def __init__(self, ngens: int, relators):
        self.ngens = ngens
        self.relators = [list(r) for r in relators]
        self.subst: dict = {}

    def expand(self, w) -> list:
        out = []
        for x in w:
            g = x >> 1
            if g in self.subst:
                sub = self.expand(self.subst[g])
                out.extend(sub if x % 2 == 0 else inv_word(sub))
            else:
                out.append(x)
        return free_reduce(out)

    def simplify(self) -> None:
        while True:
            rels = []
            seen = set()
            for r in self.relators:
                r = cyclic_reduce(self.expand(r))
                if r and tuple(r) not in seen:
                    seen.add(tuple(r))
                    rels.append(r)
            self.relators = rels
            hit = None
            for r in rels:
                if len(r) == 1:
                    hit = (r[0] >> 1, [])
                    break
            if hit is None:
                for r in rels:
                    if len(r) == 2 and (r[0] >> 1) != (r[1] >> 1):
                        x, y = r
                        # x y = 1  =>  x = y^-1
                        g = x >> 1
                        hit = (g, [y ^ 1] if x % 2 == 0 else [y])
                        break
            if hit is None:
                return
            g, w = hit
            self.subst[g] = w

    def remaining(self) -> list:
        return [g for g in range(self.ngens) if g not in self.subst]


def coset_enumeration(ngens: int, relators, coset_cap: int):
    """Todd–Coxeter (HLT) enumeration of the cosets of the trivial subgroup.

    Returns the completed coset table ``table[c][letter]`` with coset 0 the
    identity.
    """
    ncols = 2 * ngens
    table: list = [[None] * ncols]
    parent = [0]
    alive = [True]
    rels = [list(r) for r in relators]
    defined = 1

    def rep(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def define(c, x):
        nonlocal defined
        defined += 1
        if defined > coset_cap:
            raise CapExceeded("order", coset_cap, "coset enumeration did not close")
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        alive.append(True)
        table[c][x] = d
        table[d][x ^ 1] = c
        return d

    def coincidence(a, b):
        q = []

        def merge(k, l):
            k, l = rep(k), rep(l)
            if k == l:
                return
            if l < k:
                k, l = l, k
            parent[l] = k
            alive[l] = False
            q.append(l)

        merge(a, b)
        i = 0
        while i < len(q):
            e = q[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                if table[f][x ^ 1] == e:
                    table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x])
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1])
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c, w):
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1] is not None:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        if alive[c]:
            for r in rels:
                scan_and_fill(c, r)
                if not alive[c]:
                    break
            if alive[c]:
                for x in range(ncols):
                    if table[c][x] is None:
                        define(c, x)
        c += 1
    live = [c for c in range(len(table)) if alive[c]]
    pos = {c: k for k, c in enumerate(live)}
    out = [[pos[rep(table[c][x])] for x in range(ncols)] for c in live]
    # sanity: every relator closes at every coset
    for c in range(len(out)):
        for r in rels:
            d = c
            for x in r:
                d = out[d][x]
            if d != c:
                raise RuntimeError("coset table inconsistent with relators")
    return out


class PresentedGroup:
    """A finite group from a presentation, with letter/word evaluation."""

    def __init__(self, ngens: int, relators, names=None, order_cap: int | None = None):
        order_cap = get_caps().order if order_cap is None else order_cap
        self.pres = Presentation(ngens, relators)
        self.pres.simplify()
        rem = self.pres.remaining()
        self.rem_index = {g: k for k, g in enumerate(rem)}
        relabel = []
        for r in self.pres.relators:
            relabel.append([2 * self.rem_index[x >> 1] + (x & 1) for x in r])
        coset_cap = max(2000, 64 * order_cap)
        table = coset_enumeration(len(rem), relabel, coset_cap)
        if len(table) > order_cap:
            raise CapExceeded("order", order_cap, f"group of order {len(table)}")
        self.coset_table = table
        names = names or [f"x{g}" for g in range(ngens)]
        # BFS words for each element
        words = {0: []}
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(2 * len(rem)):
                d = table[c][x]
                if d not in words:
                    words[d] = words[c] + [x]
                    queue.append(d)
        n = len(table)
        self.words = [words[c] for c in range(n)]
        mul = []
        for a in range(n):
            row = []
            for b in range(n):
                d = a
                for x in self.words[b]:
                    d = table[d][x]
                row.append(d)
            mul.append(row)

        def wname(w):
            if not w:
                return "1"
            parts = []
            for x in w:
                nm = names[rem[x >> 1]]
                parts.append(nm + ("^-1" if x & 1 else ""))
            return "*".join(parts)

        self.group = FiniteGroup(mul, identity=0, labels=[wname(w) for w in self.words],
                                 name="pi1")

    def letter_element(self, x: int) -> int:
        """Element of an original letter (generator or inverse)."""
        w = self.pres.expand([x])
        d = 0
        for y in w:
            d = self.coset_table[d][2 * self.rem_index[y >> 1] + (y & 1)]
        return d

    def word_element(self, w) -> int:
        g = self.group
        r = g.identity
        for x in w:
            r = g.mul(r, self.letter_element(x))
        return r
