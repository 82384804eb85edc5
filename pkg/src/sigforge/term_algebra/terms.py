"""Closed terms of the base sort of a simple signature."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from ..core import syntax as C
from ..diagnostics import fail
from ..elab import Elaborator, Signature
from ..profile import Profile
from ..surface import parse_expr


def arities(sig: Signature) -> list[int]:
    """Number of iota arguments of every entry of a simple signature."""
    if sig.profile is not Profile.SIMPLE:
        raise fail("E_PROFILE", "term algebras are only available for simple signatures",
                   profile=sig.profile.value)
    out = []
    for _, A in sig.entries:
        k = 0
        while isinstance(A, C.TSArr):
            k += 1
            A = A.cod
        out.append(k)
    return out


@dataclass(frozen=True)
class TermValue:
    """A constructor applied to argument terms.

    `head` is the entry index in the signature, so the core term uses the
    variable at de Bruijn index n - 1 - head.
    """
    head: int
    args: tuple["TermValue", ...] = ()
    depth: int = field(default=0, compare=False, repr=False)

    def __post_init__(self):
        d = 1 + max((a.depth for a in self.args), default=0)
        object.__setattr__(self, "depth", d)

    def core(self, n: int) -> C.Tm:
        t: C.Tm = C.Var(n - 1 - self.head)
        for a in self.args:
            t = C.App(t, a.core(n))
        return t

    def show(self, names: list[str]) -> str:
        if not self.args:
            return names[self.head]
        parts = [a.show(names) if not a.args else f"({a.show(names)})" for a in self.args]
        return " ".join([names[self.head], *parts])

    def size(self) -> int:
        total, stack = 0, [self]
        while stack:
            t = stack.pop()
            total += 1
            stack.extend(t.args)
        return total


def from_core(sig: Signature, t: C.Tm) -> TermValue:
    n = len(sig.entries)
    spine = []
    while isinstance(t, C.App):
        spine.append(t.arg)
        t = t.fn
    if not isinstance(t, C.Var):
        raise fail("E_TYPE", "a term of the base sort must be a constructor application")
    return TermValue(n - 1 - t.ix, tuple(from_core(sig, a) for a in reversed(spine)))


def parse_term(sig: Signature, text: str) -> TermValue:
    arities(sig)
    e = parse_expr(text, "<term>")
    el = Elaborator(sig.profile, "<term>")
    core = el.check(sig.ctx, e, C.TIota())
    return from_core(sig, core)


def enumerate_terms(sig: Signature, max_depth: int) -> list[TermValue]:
    """All closed terms of depth at most max_depth; a constant has depth 1.

    Ordered by depth, then constructor order, then arguments in the same order.
    """
    ar = arities(sig)
    by_depth: list[list[TermValue]] = [[]]
    upto: list[TermValue] = []
    for d in range(1, max_depth + 1):
        level = []
        for head, k in enumerate(ar):
            if k == 0:
                if d == 1:
                    level.append(TermValue(head))
                continue
            for args in itertools.product(upto, repeat=k):
                if max(a.depth for a in args) == d - 1:
                    level.append(TermValue(head, args))
        by_depth.append(level)
        upto = upto + level
    return upto


def count_terms(sig: Signature, max_depth: int) -> int:
    """Number of terms of depth at most max_depth, without building them."""
    ar = arities(sig)
    total = 0  # terms of depth < d
    for _ in range(max_depth):
        total = sum(total ** k for k in ar)
    return total


def random_term(sig: Signature, rng: random.Random, max_depth: int) -> TermValue:
    """A random term of depth at most max_depth (needs a constant)."""
    ar = arities(sig)
    consts = [i for i, k in enumerate(ar) if k == 0]
    if not consts:
        raise fail("E_TYPE", "signature has no closed terms")

    def go(d: int) -> TermValue:
        if d <= 1 or rng.random() < 0.3:
            return TermValue(rng.choice(consts))
        head = rng.randrange(len(ar))
        return TermValue(head, tuple(go(d - 1) for _ in range(ar[head])))

    return go(max_depth)
