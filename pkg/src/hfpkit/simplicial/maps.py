"""Backtracking enumeration of (equivariant) simplicial maps.

A map out of ``src`` is determined by its values on orbit representatives of
nondegenerate simplices.  :class:`MapSearch` assigns those values in an
order where every face is known before the simplex itself, so that candidates
come straight from the target's face index.  The same engine decides
homotopies (maps out of ``src × Δ¹`` with both ends fixed) and isomorphisms.
"""
from __future__ import annotations

from ..caps import Budget, InvalidInput
from .constructions import product, standard_simplex
from .sset import SimplicialMap, SimplicialSet


def trivial_action(X: SimplicialSet):
    return (tuple(tuple(range(X.size(n))) for n in range(X.dim_bound + 1)),)


class MapSearch:
    """Search for simplicial maps ``src -> tgt``, optionally G-equivariant.

    Parameters
    ----------
    group_mul_inv : (inverse table) or None
        ``inv[g]`` for the acting group; ``None`` for the trivial group.
    src_action, tgt_action : ``act[g][n][x]`` permutation tables.
    fixed : iterable of (n, x)
        Nondegenerate source simplices whose values are supplied to :meth:`search`.
    iso : bool
        Restrict to maps injective on nondegenerate simplices with
        nondegenerate values (used for isomorphism search).
    """

    def __init__(self, src: SimplicialSet, tgt: SimplicialSet, *, inverse=None,
                 src_action=None, tgt_action=None, fixed=(), iso=False):
        if tgt.dim_bound < src.dim_bound:
            raise InvalidInput("target must be stored at least as high as the source")
        self.src, self.tgt, self.iso = src, tgt, iso
        self.src_action = src_action or trivial_action(src)
        self.tgt_action = tgt_action or trivial_action(tgt)
        self.inverse = inverse or (0,)
        ng = len(self.src_action)
        N = src.dim_bound
        # orbit representatives of nondegenerate simplices
        express = []
        reps, stabs = [], {}
        for n in range(N + 1):
            ex = {}
            for x in src.nondegenerate[n]:
                if x in ex:
                    continue
                orbit = {}
                for g in range(ng):
                    y = self.src_action[g][n][x]
                    orbit.setdefault(y, g)
                for y, g in orbit.items():
                    ex[y] = (x, g)
                reps.append((n, x))
                stabs[(n, x)] = tuple(g for g in range(1, ng) if self.src_action[g][n][x] == x)
            express.append(ex)
        self.express = express
        self.reps = reps
        self.stabs = stabs
        # recipes: value of face i of rep = degeneracies applied to a translated rep value
        recipes, deps = {}, {}
        for (n, r) in reps:
            rec, dep = [], set()
            if n >= 1:
                for i in range(n + 1):
                    f = src.faces[n][r][i]
                    ops, l, z = src.ez_decomposition(n - 1, f)
                    zr, zg = express[l][z]
                    rec.append((l, zr, zg, tuple(reversed(ops))))
                    dep.add((l, zr))
            recipes[(n, r)] = rec
            deps[(n, r)] = dep
        self.recipes = recipes
        self.fixed_reps = {}
        for (n, x) in fixed:
            if src.ez[n][x] is not None:
                raise InvalidInput("fixed simplices must be nondegenerate")
            r, g = express[n][x]
            self.fixed_reps.setdefault((n, r), []).append((x, g))
        self.order = self._make_order(deps)
        self._pos = {u: k for k, u in enumerate(self.order)}

    def _make_order(self, deps):
        cof = {u: [] for u in self.reps}
        missing = {}
        for u, ds in deps.items():
            missing[u] = len(ds)
            for d in ds:
                cof[d].append(u)
        ready = {u for u in self.reps if missing[u] == 0}
        order, done = [], set()
        while ready:
            top = max(n for n, _ in ready)
            cands = [u for u in ready if u[0] == top]
            if len(cands) > 1:
                def score(u):
                    fixed = u in self.fixed_reps
                    near = sum(1 for c in cof[u] if missing[c] == 1)
                    return (not fixed, -near, u)
                u = min(cands, key=score)
            else:
                u = cands[0]
            ready.discard(u)
            done.add(u)
            order.append(u)
            for c in cof[u]:
                missing[c] -= 1
                if missing[c] == 0:
                    ready.add(c)
        if len(order) != len(self.reps):
            raise RuntimeError("dependency order incomplete")
        return order

    # ------------------------------------------------------------------
    def search(self, fixed_values=None, budget: Budget | None = None):
        """Yield solutions as dicts {(n, rep): value}.

        ``fixed_values`` maps each fixed (n, x) to its required target value.
        """
        budget = budget or Budget()
        tgt, tact, inv = self.tgt, self.tgt_action, self.inverse
        required = {}
        for u, lst in self.fixed_reps.items():
            n = u[0]
            want = None
            for x, g in lst:
                y = fixed_values[(n, x)]
                v = tact[inv[g]][n][y]
                if want is None:
                    want = v
                elif want != v:
                    return
            required[u] = want
        L = len(self.order)
        val = {}
        used = [set() for _ in range(self.src.dim_bound + 1)]
        nondeg_t = [set(tgt.nondegenerate[n]) for n in range(tgt.dim_bound + 1)] if self.iso else None
        steps = []
        for u in self.order:
            steps.append((u, self.recipes[u], self.stabs[u], required.get(u)))
        cands = [None] * L
        pos = [0] * L
        k = 0
        while k >= 0:
            if k == L:
                yield dict(val)
                k -= 1
                continue
            if cands[k] is None:
                u, rec, stab, req = steps[k]
                n = u[0]
                if n == 0:
                    cl = range(tgt.size(0)) if req is None else (req,)
                else:
                    key = []
                    for (l, zr, zg, ops) in rec:
                        v = tact[zg][l][val[(l, zr)]]
                        d = l
                        for i in ops:
                            v = tgt.degens[d][v][i]
                            d += 1
                        key.append(v)
                    cl = tgt.face_index[n].get(tuple(key), ())
                    if req is not None:
                        cl = (req,) if req in cl else ()
                budget.spend(len(cl) + 1)
                if stab:
                    acts = [tact[g][n] for g in stab]
                    cl = [y for y in cl if all(a[y] == y for a in acts)]
                if self.iso:
                    cl = [y for y in cl if y in nondeg_t[n] and y not in used[n]]
                cands[k] = cl
                pos[k] = 0
            u = steps[k][0]
            if self.iso and u in val:
                used[u[0]].discard(val[u])
            if pos[k] < len(cands[k]):
                y = cands[k][pos[k]]
                pos[k] += 1
                val[u] = y
                if self.iso:
                    used[u[0]].add(y)
                k += 1
                if k < L:
                    cands[k] = None
            else:
                val.pop(u, None)
                cands[k] = None
                k -= 1

    def first(self, fixed_values=None, budget=None):
        for sol in self.search(fixed_values, budget):
            return sol
        return None

    def count(self, fixed_values=None, budget=None) -> int:
        return sum(1 for _ in self.search(fixed_values, budget))

    def expand(self, sol) -> SimplicialMap:
        """Full levelwise map from a solution."""
        src, tgt, tact = self.src, self.tgt, self.tgt_action
        maps = []
        for n in range(src.dim_bound + 1):
            row = [0] * src.size(n)
            ex = self.express[n]
            for x in range(src.size(n)):
                e = src.ez[n][x]
                if e is None:
                    r, g = ex[x]
                    row[x] = tact[g][n][sol[(n, r)]]
                else:
                    i, b = e
                    row[x] = tgt.degens[n - 1][maps[n - 1][b]][i]
            maps.append(tuple(row))
        return SimplicialMap(src, tgt, maps, check=False)

    def key(self, sol) -> tuple:
        """Canonical tuple of a solution (values on reps in rep order)."""
        return tuple(sol[u] for u in self.reps)

    def restrict_values(self, f: SimplicialMap) -> dict:
        return {u: f.maps[u[0]][u[1]] for u in self.reps}


# ----------------------------------------------------------------------
# convenience wrappers
# ----------------------------------------------------------------------

def iter_maps(S: SimplicialSet, X: SimplicialSet, budget=None):
    ms = MapSearch(S, X)
    for sol in ms.search(budget=budget):
        yield ms.expand(sol)


def hom_count(S: SimplicialSet, X: SimplicialSet, budget=None) -> int:
    return MapSearch(S, X).count(budget=budget)


def find_isomorphism(X: SimplicialSet, Y: SimplicialSet, budget=None):
    """Return a pair (f, g) of mutually inverse simplicial maps, or None."""
    if X.dim_bound != Y.dim_bound or X.sizes != Y.sizes:
        return None
    if [len(a) for a in X.nondegenerate] != [len(a) for a in Y.nondegenerate]:
        return None
    ms = MapSearch(X, Y, iso=True)
    for sol in ms.search(budget=budget):
        f = ms.expand(sol)
        if not f.is_isomorphism():
            continue
        inv = []
        for n in range(X.dim_bound + 1):
            row = [0] * Y.size(n)
            for x, y in enumerate(f.maps[n]):
                row[y] = x
            inv.append(tuple(row))
        g = SimplicialMap(Y, X, inv)
        f.validate()
        return f, g
    return None


def interval(N: int) -> SimplicialSet:
    return standard_simplex(1, N)


class HomotopySearch:
    """Decide (equivariant) homotopies ``X × Δ¹ -> Y`` with fixed ends.

    The acting group acts on the first factor only.
    """

    def __init__(self, X: SimplicialSet, Y: SimplicialSet, *, inverse=None,
                 x_action=None, y_action=None):
        self.X, self.Y = X, Y
        N = X.dim_bound
        I = interval(N)
        P = product(X, I, N)
        self.P, self.I = P, I
        xa = x_action or trivial_action(X)
        pa = []
        for g in range(len(xa)):
            per = []
            for n in range(N + 1):
                ni = I.size(n)
                per.append(tuple(xa[g][n][a] * ni + b for a in range(X.size(n)) for b in range(ni)))
            pa.append(tuple(per))
        self.c0 = [I.index[n][tuple([0] * (n + 1))] for n in range(N + 1)]
        self.c1 = [I.index[n][tuple([1] * (n + 1))] for n in range(N + 1)]
        fixed = []
        for n in range(N + 1):
            ni = I.size(n)
            for x in X.nondegenerate[n]:
                fixed.append((n, x * ni + self.c0[n]))
                fixed.append((n, x * ni + self.c1[n]))
        self.ms = MapSearch(P, Y, inverse=inverse, src_action=tuple(pa),
                            tgt_action=y_action, fixed=fixed)

    def homotopic(self, f0: SimplicialMap, f1: SimplicialMap, budget=None) -> bool:
        return self.witness(f0, f1, budget) is not None

    def witness(self, f0, f1, budget=None):
        X, I = self.X, self.I
        fv = {}
        for n in range(X.dim_bound + 1):
            ni = I.size(n)
            for x in X.nondegenerate[n]:
                fv[(n, x * ni + self.c0[n])] = f0.maps[n][x]
                fv[(n, x * ni + self.c1[n])] = f1.maps[n][x]
        sol = self.ms.first(fv, budget)
        return None if sol is None else self.ms.expand(sol)


def classify_by_homotopy(maps, homotopic, budget=None):
    """Group maps into homotopy classes.

    ``homotopic(f, g)`` decides one-step homotopy.  Each new map is compared
    (in both directions) with one representative of every class found so far;
    classes it meets are merged.  For Kan targets this computes the homotopy
    relation exactly.
    """
    classes: list[list] = []
    for f in maps:
        hit = []
        for ci, cl in enumerate(classes):
            r = cl[0]
            if homotopic(r, f) or homotopic(f, r):
                hit.append(ci)
        if not hit:
            classes.append([f])
        else:
            base = classes[hit[0]]
            base.append(f)
            for ci in reversed(hit[1:]):
                base.extend(classes.pop(ci))
    return classes


def homotopy_classes(X: SimplicialSet, Y: SimplicialSet, budget=None):
    """Homotopy classes of maps X -> Y, each a list of SimplicialMaps.

    Classes are ordered by their lexicographically smallest member; the
    first entry of each class is that member.
    """
    budget = budget or Budget()
    ms = MapSearch(X, Y)
    sols = sorted((ms.key(s), s) for s in ms.search(budget=budget))
    maps = [ms.expand(s) for _, s in sols]
    hs = HomotopySearch(X, Y)
    classes = classify_by_homotopy(maps, lambda a, b: hs.homotopic(a, b, budget))
    for cl in classes:
        cl.sort(key=lambda f: f.maps)
    classes.sort(key=lambda cl: cl[0].maps)
    return classes
