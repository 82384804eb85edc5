"""Parallel substitutions on de Bruijn core syntax."""
from __future__ import annotations

from dataclasses import dataclass

from .syntax import Node, Tm, Var, map_children


def shift(t: Node, d: int, cutoff: int = 0) -> Node:
    if d == 0:
        return t

    def go(n: Node, c: int) -> Node:
        if isinstance(n, Var):
            return Var(n.ix + d) if n.ix >= c else n
        return map_children(n, lambda ch, k: go(ch, c + k))

    return go(t, cutoff)


def mentions(t: Node, ix: int) -> bool:
    """Does index `ix` (relative to the root of t) occur free in t?"""
    if isinstance(t, Var):
        return t.ix == ix
    from .syntax import children

    return any(mentions(ch, ix + k) for ch, k in children(t))


def unshift(t: Node) -> Node:
    """Remove the innermost binder from t, which must not mention it."""
    def go(n: Node, c: int) -> Node:
        if isinstance(n, Var):
            if n.ix == c:
                raise ValueError("variable escapes")
            return Var(n.ix - 1) if n.ix > c else n
        return map_children(n, lambda ch, k: go(ch, c + k))

    return go(t, 0)


@dataclass(frozen=True)
class CoreSub:
    """Sub Gamma Delta: one term over Gamma (length `src`) per entry of Delta.

    `terms` is in context order, so de Bruijn index k of Delta maps to
    terms[-1 - k].
    """
    src: int
    terms: tuple[Tm, ...]

    @property
    def tgt(self) -> int:
        return len(self.terms)

    @staticmethod
    def id(n: int) -> "CoreSub":
        return CoreSub(n, tuple(Var(n - 1 - i) for i in range(n)))

    @staticmethod
    def wk(n: int, m: int = 1) -> "CoreSub":
        """The weakening p^m from a context of length n+m to its length-n prefix."""
        return CoreSub(n + m, tuple(Var(n - 1 - i + m) for i in range(n)))

    def ext(self, t: Tm) -> "CoreSub":
        return CoreSub(self.src, self.terms + (t,))

    def comp(self, other: "CoreSub") -> "CoreSub":
        """self o other, where other : Sub Theta Gamma and self : Sub Gamma Delta."""
        assert other.tgt == self.src, (other.tgt, self.src)
        return CoreSub(other.src, tuple(subst(t, other) for t in self.terms))

    def lift(self) -> "CoreSub":
        return self.comp(CoreSub.wk(self.src)).ext(Var(0))

    def lookup(self, ix: int) -> Tm:
        return self.terms[-1 - ix]


def subst(t: Node, sigma: CoreSub) -> Node:
    n = len(sigma.terms)

    def go(node: Node, c: int) -> Node:
        if isinstance(node, Var):
            if node.ix < c:
                return node
            k = node.ix - c
            if k >= n:
                raise IndexError(f"variable {node.ix} outside substitution domain")
            return shift(sigma.terms[-1 - k], c)
        return map_children(node, lambda ch, k: go(ch, c + k))

    return go(t, 0)


def inst(t: Node, *args: Tm, ctx_len: int) -> Node:
    """Instantiate the innermost len(args) binders of t (in context order)."""
    sigma = CoreSub.id(ctx_len)
    for a in args:
        sigma = sigma.ext(a)
    return subst(t, sigma)
