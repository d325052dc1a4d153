"""Finite groupoids given by full composition tables."""
from __future__ import annotations

from dataclasses import dataclass

from ..caps import InvalidInput


class Groupoid:
    """A finite groupoid.

    ``morphisms[f] = (src, tgt)`` as object indices; ``compose[f][g]`` is the
    index of "f followed by g" when ``tgt(f) == src(g)``, otherwise ``None``.
    """

    def __init__(self, objects, morphisms, compose, morphism_labels=None, check=True):
        self.objects = tuple(str(o) for o in objects)
        self.morphisms = tuple((int(s), int(t)) for s, t in morphisms)
        self.compose_table = tuple(tuple(None if c is None else int(c) for c in row)
                                   for row in compose)
        m = len(self.morphisms)
        self.morphism_labels = tuple(str(l) for l in (morphism_labels or range(m)))
        if check:
            self.validate()
        ident = [None] * len(self.objects)
        for f, (s, t) in enumerate(self.morphisms):
            if s == t and self.compose_table[f][f] == f:
                ident[s] = f
        self.identities = tuple(ident)
        inv = [None] * m
        for f, (s, t) in enumerate(self.morphisms):
            for g in range(m):
                if self.compose_table[f][g] == self.identities[s]:
                    inv[f] = g
                    break
        self.inverses = tuple(inv)

    def src(self, f: int) -> int:
        return self.morphisms[f][0]

    def tgt(self, f: int) -> int:
        return self.morphisms[f][1]

    def then(self, f: int, g: int) -> int:
        return self.compose_table[f][g]

    def hom(self, a: int, b: int) -> list:
        return [f for f, st in enumerate(self.morphisms) if st == (a, b)]

    def validate(self) -> None:
        n, m = len(self.objects), len(self.morphisms)
        if len(set(self.objects)) != n:
            raise InvalidInput("groupoid objects must be distinct")
        for f, (s, t) in enumerate(self.morphisms):
            if not (0 <= s < n and 0 <= t < n):
                raise InvalidInput(f"morphism {f} has an unknown endpoint")
        C = self.compose_table
        if len(C) != m or any(len(r) != m for r in C):
            raise InvalidInput("composition table has the wrong shape")
        for f, (s, t) in enumerate(self.morphisms):
            for g, (s2, t2) in enumerate(self.morphisms):
                c = C[f][g]
                if t == s2:
                    if c is None or not 0 <= c < m or self.morphisms[c] != (s, t2):
                        raise InvalidInput(f"composite of morphisms ({f}, {g}) is missing or misplaced")
                elif c is not None:
                    raise InvalidInput(f"non-composable pair ({f}, {g}) has a composite")
        ids = {}
        for a in range(n):
            cands = [f for f, st in enumerate(self.morphisms) if st == (a, a)
                     and all(C[f][g] == g for g in range(m) if self.morphisms[g][0] == a)
                     and all(C[g][f] == g for g in range(m) if self.morphisms[g][1] == a)]
            if not cands:
                raise InvalidInput(f"object {self.objects[a]!r} has no identity morphism")
            ids[a] = cands[0]
        for f, (s, t) in enumerate(self.morphisms):
            if not any(C[f][g] == ids[s] and C[g][f] == ids[t] for g in range(m)
                       if self.morphisms[g] == (t, s)):
                raise InvalidInput(f"morphism {f} has no inverse")
        for f in range(m):
            for g in range(m):
                fg = C[f][g]
                if fg is None:
                    continue
                for h in range(m):
                    gh = C[g][h]
                    if gh is None:
                        continue
                    if C[fg][h] != C[f][gh]:
                        raise InvalidInput(f"associativity fails for morphisms ({f}, {g}, {h})")

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_group(cls, G, obj="*") -> "Groupoid":
        """One object, morphisms = elements, "f then g" = f*g."""
        return cls([obj], [(0, 0)] * G.order, G.table, morphism_labels=G.labels)

    @classmethod
    def codiscrete(cls, objects) -> "Groupoid":
        """Exactly one morphism between any ordered pair of objects."""
        objs = list(objects)
        n = len(objs)
        mors = [(a, b) for a in range(n) for b in range(n)]
        comp = [[(a * n + d) if b == c else None for (c, d) in mors] for (a, b) in mors]
        return cls(objs, mors, comp, morphism_labels=[f"{objs[a]}->{objs[b]}" for a, b in mors])

    @classmethod
    def action_groupoid(cls, G, action, objects=None) -> "Groupoid":
        """Objects = points of a G-set; morphisms x -> g.x labelled (g, x).

        ``action`` is a :class:`PermAction`.  Composition of (g, x) then (h, g.x)
        is (h*g, x).
        """
        size = action.size
        objs = objects or [str(i) for i in range(size)]
        mors = [(x, action.act(g, x)) for g in G.elements for x in range(size)]
        idx = {(g, x): g * size + x for g in G.elements for x in range(size)}
        comp = []
        for g in G.elements:
            for x in range(size):
                gx = action.act(g, x)
                row = []
                for h in G.elements:
                    for y in range(size):
                        row.append(idx[(G.mul(h, g), x)] if y == gx else None)
                comp.append(row)
        labels = [f"({G.labels[g]},{objs[x]})" for g in G.elements for x in range(size)]
        return cls(objs, mors, comp, morphism_labels=labels)

    def to_json(self) -> dict:
        return {"objects": list(self.objects),
                "morphisms": [{"id": self.morphism_labels[f], "src": self.objects[s],
                               "tgt": self.objects[t]} for f, (s, t) in enumerate(self.morphisms)],
                "compose": [[None if c is None else self.morphism_labels[c] for c in row]
                            for row in self.compose_table]}

    @classmethod
    def from_json(cls, d: dict) -> "Groupoid":
        try:
            objs = [str(o) for o in d["objects"]]
            oi = {o: i for i, o in enumerate(objs)}
            mors = d["morphisms"]
            labels = [str(m["id"]) for m in mors]
            mi = {l: i for i, l in enumerate(labels)}
            pairs = [(oi[str(m["src"])], oi[str(m["tgt"])]) for m in mors]
            comp = [[None if c is None else mi[str(c)] for c in row] for row in d["compose"]]
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed groupoid: unresolved reference {exc}") from None
        return cls(objs, pairs, comp, morphism_labels=labels)
