"""Nonabelian 1-cocycles, H¹ as a pointed set, and twisting.

Conventions: G acts on A on the left by automorphisms; a 1-cocycle satisfies
α(στ) = α(σ)·σ(α(τ)); α ~ β when β(σ) = a⁻¹·α(σ)·σ(a) for some a ∈ A.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..caps import Budget, InvalidInput
from ..groups import FiniteGroup, GroupAction


@dataclass(frozen=True)
class Cocycle1:
    action: GroupAction
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        bad = cocycle_violation(self.action, self.values)
        if bad is not None:
            s, t = bad
            G = self.action.G
            raise InvalidInput(f"cocycle law fails at ({G.labels[s]}, {G.labels[t]})")

    @property
    def G(self) -> FiniteGroup:
        return self.action.G

    @property
    def A(self) -> FiniteGroup:
        return self.action.A

    def __call__(self, g: int) -> int:
        return self.values[g]

    @classmethod
    def trivial(cls, action: GroupAction) -> "Cocycle1":
        return cls(action, (action.A.identity,) * action.G.order)

    def to_json(self) -> dict:
        return {self.G.labels[g]: self.A.labels[self.values[g]] for g in self.G.elements}


def cocycle_violation(action: GroupAction, values):
    """First pair (σ, τ) breaking the cocycle law, or None."""
    G, A = action.G, action.A
    if len(values) != G.order:
        return (G.identity, G.identity)
    for s in G.elements:
        for t in G.elements:
            if values[G.mul(s, t)] != A.mul(values[s], action.images[s][values[t]]):
                return (s, t)
    return None


def is_cocycle(action: GroupAction, values) -> bool:
    return cocycle_violation(action, values) is None


def iter_cocycles(action: GroupAction, budget: Budget | None = None):
    """All 1-cocycles as value tuples, by free choice on generators."""
    G, A = action.G, action.A
    budget = budget or Budget()
    gens = G.generators
    for imgs in itertools.product(A.elements, repeat=len(gens)):
        budget.spend(1)
        vals = [-1] * G.order
        vals[G.identity] = A.identity
        stack = [G.identity]
        ok = True
        while stack and ok:
            x = stack.pop()
            for g, a in zip(gens, imgs):
                y = G.mul(x, g)
                v = A.mul(vals[x], action.images[x][a])
                if vals[y] < 0:
                    vals[y] = v
                    stack.append(y)
                elif vals[y] != v:
                    ok = False
                    break
        if ok and is_cocycle(action, vals):
            yield tuple(vals)


def coboundary_twist(action: GroupAction, values, a: int) -> tuple:
    """σ ↦ a⁻¹·α(σ)·σ(a)."""
    A = action.A
    ai = A.inv(a)
    return tuple(A.mul(A.mul(ai, values[s]), action.images[s][a]) for s in action.G.elements)


class H1:
    """H¹(G, A) as a pointed set with explicit classes."""

    def __init__(self, action: GroupAction, budget: Budget | None = None):
        self.action = action
        G, A = action.G, action.A
        cocycles = sorted(iter_cocycles(action, budget))
        seen = {}
        classes = []
        triv = (A.identity,) * G.order
        order = sorted(cocycles, key=lambda c: (c != triv, c))
        for c in order:
            if c in seen:
                continue
            orbit = sorted({coboundary_twist(action, c, a) for a in A.elements})
            k = len(classes)
            for o in orbit:
                seen[o] = k
            classes.append(orbit)
        self.cocycles = cocycles
        self.classes = classes
        self._index = seen
        self.basepoint = 0

    def __len__(self):
        return len(self.classes)

    def class_of(self, values) -> int:
        values = tuple(values)
        if values not in self._index:
            raise InvalidInput("not a cocycle for this action")
        return self._index[values]

    def representative(self, k: int) -> tuple:
        return self.classes[k][0]

    def to_json(self) -> dict:
        G, A = self.action.G, self.action.A
        return {"size": len(self.classes), "basepoint": self.basepoint,
                "classes": [{G.labels[g]: A.labels[c[0][g]] for g in G.elements}
                            for c in self.classes]}


def h1_nonabelian(action: GroupAction, budget=None) -> H1:
    return H1(action, budget)


def twist_action(action: GroupAction, alpha) -> GroupAction:
    """A^α: σ * a = α(σ)·σ(a)·α(σ)⁻¹."""
    vals = alpha.values if isinstance(alpha, Cocycle1) else tuple(alpha)
    bad = cocycle_violation(action, vals)
    if bad is not None:
        raise InvalidInput("twisting data is not a cocycle")
    G, A = action.G, action.A
    images = []
    for s in G.elements:
        c, ci = vals[s], A.inv(vals[s])
        images.append(tuple(A.mul(A.mul(c, action.images[s][a]), ci) for a in A.elements))
    return GroupAction(G, A, images)


def tau_cocycle(action: GroupAction, alpha, beta) -> tuple:
    """σ ↦ β(σ)·α(σ)⁻¹, a cocycle for the twisted action A^α."""
    A = action.A
    return tuple(A.mul(beta[s], A.inv(alpha[s])) for s in action.G.elements)


@dataclass
class TauTwist:
    source: H1
    target: H1
    mapping: tuple          # class index in source -> class index in target
    alpha_class: int

    @property
    def bijective(self) -> bool:
        return sorted(self.mapping) == list(range(len(self.target)))

    @property
    def sends_alpha_to_basepoint(self) -> bool:
        return self.mapping[self.alpha_class] == self.target.basepoint


def tau_twist(action: GroupAction, alpha, budget=None) -> TauTwist:
    """The bijection H¹(G, A) -> H¹(G, A^α), [β] ↦ [β·α⁻¹]."""
    vals = alpha.values if isinstance(alpha, Cocycle1) else tuple(alpha)
    twisted = twist_action(action, vals)
    src = H1(action, budget)
    tgt = H1(twisted, budget)
    mapping = []
    for k, cl in enumerate(src.classes):
        imgs = {tgt.class_of(tau_cocycle(action, vals, b)) for b in cl}
        if len(imgs) != 1:
            raise RuntimeError("twisting map is not well defined on classes")
        mapping.append(imgs.pop())
    return TauTwist(src, tgt, tuple(mapping), src.class_of(vals))
