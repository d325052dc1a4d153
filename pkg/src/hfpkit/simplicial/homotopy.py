"""Components, Kan conditions and the edge-path fundamental group."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from ..caps import Budget, InvalidInput
from ..groups import FiniteGroup
from .fpgroup import PresentedGroup
from .sset import SimplicialSet


# ----------------------------------------------------------------------
# π₀
# ----------------------------------------------------------------------

def pi0(X: SimplicialSet) -> list:
    """Connected components as sorted tuples of vertex ids, ordered by min vertex."""
    n = X.size(0)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    if X.dim_bound >= 1:
        for e in X.nondegenerate[1]:
            t, s = X.faces[1][e]
            a, b = find(s), find(t)
            if a != b:
                parent[max(a, b)] = min(a, b)
    comps: dict = {}
    for v in range(n):
        comps.setdefault(find(v), []).append(v)
    return sorted((tuple(c) for c in comps.values()), key=lambda c: c[0])


def component_of(X: SimplicialSet) -> list:
    """``comp[v]`` = index of the component containing vertex v."""
    out = [0] * X.size(0)
    for i, c in enumerate(pi0(X)):
        for v in c:
            out[v] = i
    return out


def component_subcomplex(X: SimplicialSet, vertices) -> SimplicialSet:
    """The sub-simplicial set of simplices whose vertices lie in ``vertices``."""
    vs = set(vertices)
    keep = []
    for n in range(X.dim_bound + 1):
        if n == 0:
            keep.append([x for x in range(X.size(0)) if x in vs])
        else:
            keep.append([x for x in range(X.size(n)) if X.vertices(n, x)[0] in vs])
    return sub_simplicial_set(X, keep)


def sub_simplicial_set(X: SimplicialSet, keep) -> SimplicialSet:
    """Restrict to the given simplex ids per dimension (must be closed)."""
    pos = [{x: i for i, x in enumerate(k)} for k in keep]
    keys = [[X.keys[n][x] for x in keep[n]] for n in range(len(keep))]
    try:
        faces = [[()] * len(keep[0])] + [
            [tuple(pos[n - 1][y] for y in X.faces[n][x]) for x in keep[n]]
            for n in range(1, len(keep))]
        degens = [[tuple(pos[n + 1][y] for y in X.degens[n][x]) for x in keep[n]]
                  for n in range(len(keep) - 1)]
    except KeyError:
        raise InvalidInput("subset is not closed under faces and degeneracies") from None
    Y = SimplicialSet(keys, faces, degens, name=f"sub({X.name})", check=False)
    Y.inclusion = [tuple(k) for k in keep]
    return Y


# ----------------------------------------------------------------------
# Kan condition
# ----------------------------------------------------------------------

@dataclass
class KanReport:
    ok: bool
    up_to: int
    horns_checked: int
    counterexample: tuple | None = None   # (n, k, faces by index)

    def to_json(self):
        d = {"kan": self.ok, "up_to": self.up_to, "horns_checked": self.horns_checked}
        if self.counterexample is not None:
            n, k, faces = self.counterexample
            d["counterexample"] = {"dim": n, "missing": k,
                                   "faces": {str(i): y for i, y in sorted(faces.items())}}
        return d


def iter_horns(X: SimplicialSet, n: int, k: int, budget=None):
    """Compatible families (y_i)_{i≠k} of (n-1)-simplices, as dicts."""
    idx = [i for i in range(n + 1) if i != k]
    F = X.faces[n - 1] if n - 1 >= 1 else None
    m = X.size(n - 1)
    prefix = {}
    for j in idx:
        known = [i for i in idx if i < j]
        pos = tuple(j - 1 for _ in known)
        d: dict = {}
        if n - 1 >= 1 and known:
            for y in range(m):
                d.setdefault(tuple(F[y][i] for i in known), []).append(y)
        prefix[j] = (known, d)
    cur = {}

    def rec(t):
        if t == len(idx):
            yield dict(cur)
            return
        j = idx[t]
        known, d = prefix[j]
        if n - 1 == 0 or not known:
            cands = range(m)
        else:
            # d_i y_j = d_{j-1} y_i for known i < j
            want = tuple(F[cur[i]][j - 1] for i in known)
            cands = d.get(want, ())
        if budget is not None:
            budget.spend(len(cands) if hasattr(cands, "__len__") else m)
        for y in cands:
            cur[j] = y
            yield from rec(t + 1)
        cur.pop(j, None)

    yield from rec(0)


def check_kan(X: SimplicialSet, up_to: int, budget=None) -> KanReport:
    """Check horn filling for n = 1..up_to (requires up_to ≤ dim_bound)."""
    if up_to > X.dim_bound:
        raise InvalidInput(f"check_kan up_to={up_to} exceeds dim_bound {X.dim_bound}")
    budget = budget or Budget()
    count = 0
    for n in range(1, up_to + 1):
        for k in range(n + 1):
            fillers = {tuple(f[i] for i in range(n + 1) if i != k) for f in X.faces[n]}
            for horn in iter_horns(X, n, k, budget):
                count += 1
                key = tuple(horn[i] for i in range(n + 1) if i != k)
                if key not in fillers:
                    return KanReport(False, up_to, count, (n, k, horn))
    return KanReport(True, up_to, count)


# ----------------------------------------------------------------------
# edge-path π₁
# ----------------------------------------------------------------------

@dataclass
class Pi1Result:
    """π₁(X, basepoint) with the element of every edge of the component.

    ``edge_element[e]`` is the element of the loop  tree-path(src) · e ·
    tree-path(tgt)^-1; tree edges and degenerate edges give the identity.
    """
    group: FiniteGroup
    basepoint: int
    vertices: tuple
    edge_element: dict
    generators: tuple          # nondegenerate non-tree edges
    tree: tuple = field(default=())

    def path_element(self, path) -> int:
        """Element of an edge path given as [(edge, +1 | -1), ...]."""
        G = self.group
        r = G.identity
        for e, s in path:
            x = self.edge_element[e]
            r = G.mul(r, x if s > 0 else G.inv(x))
        return r

    def generator_map(self) -> dict:
        return {e: self.edge_element[e] for e in self.generators}


def spanning_tree(X: SimplicialSet, basepoint: int, priority=None):
    """BFS spanning tree of the basepoint's component over nondegenerate edges.

    ``priority(e)`` (smaller first) decides which edges are preferred; the
    tree is grown in rounds so that preferred edges are used whenever they
    connect new vertices.  Returns (vertices, tree edges, parent map).
    """
    adj: dict = {}
    if X.dim_bound >= 1:
        for e in X.nondegenerate[1]:
            t, s = X.faces[1][e]
            if s == t:
                continue
            adj.setdefault(s, []).append((e, t))
            adj.setdefault(t, []).append((e, s))
    key = priority or (lambda e: 0)
    for v in adj:
        adj[v].sort(key=lambda et: (key(et[0]), et[0]))
    seen = {basepoint}
    tree = []
    parent = {basepoint: None}
    levels = sorted({key(e) for e in (X.nondegenerate[1] if X.dim_bound >= 1 else ())}) or [0]
    frontier = [basepoint]
    for lev in levels:
        queue = deque(sorted(seen))
        while queue:
            v = queue.popleft()
            for e, w in adj.get(v, ()):
                if key(e) > lev or w in seen:
                    continue
                seen.add(w)
                tree.append(e)
                parent[w] = (e, v)
                queue.append(w)
    return tuple(sorted(seen)), tuple(tree), parent


def edge_path_pi1(X: SimplicialSet, basepoint: int = 0, order_cap: int | None = None,
                  priority=None) -> Pi1Result:
    """Fundamental group of the basepoint's component from edges and 2-simplices."""
    if X.dim_bound < 2:
        raise InvalidInput("edge_path_pi1 needs simplices up to dimension 2")
    verts, tree, _ = spanning_tree(X, basepoint, priority)
    vset = set(verts)
    tset = set(tree)
    gens = [e for e in X.nondegenerate[1]
            if X.faces[1][e][1] in vset and e not in tset]
    gi = {e: k for k, e in enumerate(gens)}

    def letters(e):
        return [2 * gi[e]] if e in gi else []

    rels = []
    for x in X.nondegenerate[2]:
        d0, d1, d2 = X.faces[2][x]
        if X.faces[1][d2][1] not in vset:
            continue
        w = letters(d2) + letters(d0) + [l ^ 1 for l in reversed(letters(d1))]
        if w:
            rels.append(w)
    names = [f"e{X.label(1, e)}" for e in gens]
    P = PresentedGroup(len(gens), rels, names=names, order_cap=order_cap)
    G = P.group
    elem = {}
    for e in range(X.size(1)):
        if X.faces[1][e][1] not in vset:
            continue
        elem[e] = P.letter_element(2 * gi[e]) if e in gi else G.identity
    return Pi1Result(G, basepoint, verts, elem, tuple(gens), tree)
