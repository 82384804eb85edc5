"""Random well-typed core terms, types and substitutions.

Generation is goal directed: a term of a requested type is a variable
applied to generated arguments, or (per profile) a lambda, a pair, a
reflexivity proof or a beta redex. Everything produced is re-checked by
the core checker, so a generator bug shows up as a type error rather
than as a bogus law violation.
"""
from __future__ import annotations

import random
from functools import lru_cache
from importlib import resources

from ..profile import Profile
from . import syntax as C
from .check import Checker, CoreCtx
from .subst import CoreSub, inst, shift, subst

BASES = {
    Profile.SIMPLE: ("nat.sig", "tree.sig"),
    Profile.FQII: ("nat_fqii.sig", "cat.sig", "monoid.sig", "vec.sig", "list.sig"),
    Profile.HIIT_STRICT: ("s1.sig", "pointed_pairs.sig", "witness/pt_eq_strict.sig"),
    Profile.HIIT_WEAK: ("s1_weak.sig", "int.sig", "torus.sig"),
}


@lru_cache(maxsize=None)
def base_contexts(profile: Profile) -> tuple[CoreCtx, ...]:
    from ..elab import load
    root = resources.files("sigforge") / "corpus"
    return tuple(load((root / f).read_text(), f).ctx for f in BASES[profile])


class Gen:
    def __init__(self, rng: random.Random, profile: Profile, max_depth: int = 3):
        self.fuel = 100
        self._conv_memo: dict[tuple, bool] = {}
        self.rng = rng
        self.profile = profile
        self.max_depth = max_depth

    def _checker(self, ctx: CoreCtx) -> Checker:
        return Checker(ctx)

    def conv(self, ctx: CoreCtx, x: C.Node, y: C.Node) -> bool:
        key = (len(ctx), x, y)
        hit = self._conv_memo.get(key)
        if hit is None:
            hit = self._conv_memo[key] = self._checker(ctx).conv(ctx, x, y)
        return hit

    def infer(self, ctx: CoreCtx, t: C.Tm) -> C.Ty:
        return self._checker(ctx).infer(ctx, t)

    # terms

    def term(self, ctx: CoreCtx, T: C.Ty, depth: int | None = None, fuel: int = 100) -> C.Tm | None:
        if depth is None:
            self.fuel = fuel
            depth = self.max_depth
        self.fuel -= 1
        if depth < 0 or self.fuel < 0:
            return None
        makers = [self._spine] * 3 + [self._intro]
        if self.profile is not Profile.SIMPLE and depth > 0:
            makers.append(self._redex)
        self.rng.shuffle(makers)
        for mk in makers:
            t = mk(ctx, T, depth)
            if t is not None:
                return t
        return None

    def _target(self, n: int, ty: C.Ty) -> tuple:
        """Result shape of a type over n variables: former and, for El, the head level of the code."""
        k = 0
        while isinstance(ty, (C.TPi, C.TPiExt, C.TSArr)):
            k += 0 if isinstance(ty, C.TSArr) else 1
            ty = ty.cod if isinstance(ty, C.TSArr) else ty.b
        if isinstance(ty, C.TEl):
            a = ty.a
            while isinstance(a, (C.App, C.AppE, C.AppS)):
                a = a.fn
            if isinstance(a, C.Var):
                return C.TEl, (n + k - 1 - a.ix if a.ix >= k else None)
            return C.TEl, None
        return type(ty), None

    def _spine(self, ctx: CoreCtx, T: C.Ty, depth: int) -> C.Tm | None:
        n = len(ctx)
        if isinstance(T, (C.TPi, C.TPiExt, C.TSArr)):
            heads = list(range(n))
        else:
            f2, h2 = self._target(n, T)
            heads = []
            for lvl, (_, ty) in enumerate(ctx.entries):
                f1, h1 = self._target(lvl, ty)
                if f1 is f2 and (h1 is None or h2 is None or h1 == h2):
                    heads.append(n - 1 - lvl)
        self.rng.shuffle(heads)
        heads = heads[:4]
        for ix in heads:
            t = self._apply(ctx, C.Var(ix), ctx.lookup(ix), T, depth)
            if t is not None:
                return t
        for name, ext in ctx.externs:
            if ext is not None and isinstance(T, C.TExt) and T.ix == ext:
                return C.EConst(name)
        return None

    def _apply(self, ctx: CoreCtx, head: C.Tm, ty: C.Ty, T: C.Ty, depth: int) -> C.Tm | None:
        n = len(ctx)
        for _ in range(6):
            if self._may_conv(n, ty, T) and self.conv(ctx, ty, T):
                return head
            match ty:
                case C.TPi(a, B):
                    arg = self.term(ctx, C.TEl(a), depth - 1)
                    if arg is None:
                        return None
                    head, ty = C.App(head, arg), inst(B, arg, ctx_len=n)
                case C.TSArr(cod):
                    arg = self.term(ctx, C.TIota(), depth - 1)
                    if arg is None:
                        return None
                    head, ty = C.App(head, arg), cod
                case C.TPiExt(ix, B):
                    arg = self.ext_term(ctx, ix)
                    if arg is None:
                        return None
                    head, ty = C.AppE(head, arg), inst(B, arg, ctx_len=n)
                case C.TEl(C.PiS(ix, b)):
                    arg = self.ext_term(ctx, ix)
                    if arg is None:
                        return None
                    head, ty = C.AppS(head, arg), C.TEl(inst(b, arg, ctx_len=n))
                case _:
                    return None
        return None

    def _may_conv(self, n: int, ty: C.Ty, T: C.Ty) -> bool:
        if type(ty) is not type(T):
            return False
        if isinstance(ty, C.TEl):
            h1, h2 = self._target(n, ty)[1], self._target(n, T)[1]
            return h1 is None or h2 is None or h1 == h2
        return True

    def ext_term(self, ctx: CoreCtx, ix: C.ExtType) -> C.Tm | None:
        opts: list[C.Tm] = [C.EConst(nm) for nm, e in ctx.externs if e == ix]
        opts += [C.Var(len(ctx) - 1 - lvl) for lvl, (_, ty) in enumerate(ctx.entries) if ty == C.TExt(ix)]
        return self.rng.choice(opts) if opts else None

    def _code(self, ctx: CoreCtx, T: C.Ty) -> C.Tm | None:
        if not isinstance(T, C.TEl):
            return None
        return self._checker(ctx).whnf_code(ctx, T.a)

    def _intro(self, ctx: CoreCtx, T: C.Ty, depth: int) -> C.Tm | None:
        n = len(ctx)
        code = self._code(ctx, T)
        match T:
            case C.TPi(a, B, name) if depth > 0:
                body = self.term(ctx.extend(name, C.TEl(a)), B, depth - 1)
                return None if body is None else C.Lam(a, body, name)
            case C.TPiExt(ix, B, name) if depth > 0:
                body = self.term(ctx.extend(name, C.TExt(ix)), B, depth - 1)
                return None if body is None else C.LamE(ix, body, name)
            case C.TIdL(A, t, u) if self.conv(ctx, t, u):
                return C.Refl(A, t)
            case C.TIDL(A, t, u) if self.conv(ctx, t, u):
                return C.ReflL(A, t)
            case C.TU():
                return self.code(ctx, depth)
        match code:
            case C.Top():
                return C.Tt()
            case C.Sg(a, b) if depth > 0:
                x = self.term(ctx, C.TEl(a), depth - 1)
                if x is None:
                    return None
                y = self.term(ctx, C.TEl(inst(b, x, ctx_len=n)), depth - 1)
                return None if y is None else C.Pair(a, b, x, y)
            case C.IdS(a, t, u) if self.conv(ctx, t, u):
                return C.Refl(C.TEl(a), t)
            case C.PiS(ix, b, name) if depth > 0:
                body = self.term(ctx.extend(name, C.TExt(ix)), C.TEl(b), depth - 1)
                return None if body is None else C.LamS(ix, body, name)
        return None

    def _redex(self, ctx: CoreCtx, T: C.Ty, depth: int) -> C.Tm | None:
        """(\\x. t) u with x unused or used, to exercise beta."""
        a = self.code(ctx, depth - 1)
        if a is None:
            return None
        arg = self.term(ctx, C.TEl(a), depth - 1)
        if arg is None:
            return None
        body = self.term(ctx.extend("r", C.TEl(a)), shift(T, 1), depth - 1)
        if body is None:
            return None
        return C.App(C.Lam(a, body, "r"), arg)

    def code(self, ctx: CoreCtx, depth: int) -> C.Tm | None:
        """A random element of U."""
        n = len(ctx)
        opts = [n - 1 - lvl for lvl, (_, ty) in enumerate(ctx.entries) if isinstance(ty, C.TU)]
        hiit = self.profile.is_hiit
        r = self.rng.random()
        if hiit and depth > 0 and r < 0.15:
            return C.Top()
        if hiit and depth > 0 and r < 0.3:
            a = self.code(ctx, depth - 1)
            b = None if a is None else self.code(ctx.extend("s", C.TEl(a)), depth - 1)
            return None if b is None else C.Sg(a, b, "s")
        if hiit and depth > 0 and r < 0.4:
            a = self.code(ctx, depth - 1)
            if a is None:
                return None
            t = self.term(ctx, C.TEl(a), depth - 1)
            u = self.term(ctx, C.TEl(a), depth - 1)
            return None if t is None or u is None else C.IdS(a, t, u)
        if not opts:
            return None
        return self._apply(ctx, C.Var(self.rng.choice(opts)), C.TU(), C.TU(), depth) or C.Var(opts[0])

    def any_term(self, ctx: CoreCtx, depth: int | None = None) -> tuple[C.Tm, C.Ty] | None:
        """A random term together with its type."""
        depth = self.max_depth if depth is None else depth
        self.fuel = 200
        heads = list(range(len(ctx)))
        self.rng.shuffle(heads)
        for ix in heads:
            t, ty = C.Var(ix), ctx.lookup(ix)
            t, ty = self._saturate(ctx, t, ty, depth)
            if t is not None:
                if self.profile is not Profile.SIMPLE and self.rng.random() < 0.3:
                    a = self.code(ctx, depth - 1)
                    u = None if a is None else self.term(ctx, C.TEl(a), depth - 1)
                    if u is not None:
                        t = C.App(C.Lam(a, shift(t, 1), "r"), u)
                return t, ty
        return None

    def _saturate(self, ctx, t, ty, depth):
        n = len(ctx)
        while True:
            match ty:
                case C.TPi(a, B) if self.rng.random() < 0.85:
                    arg = self.term(ctx, C.TEl(a), depth - 1)
                    if arg is None:
                        return None, None
                    t, ty = C.App(t, arg), inst(B, arg, ctx_len=n)
                case C.TSArr(cod):
                    arg = self.term(ctx, C.TIota(), depth - 1)
                    if arg is None:
                        return None, None
                    t, ty = C.App(t, arg), cod
                case C.TPiExt(ix, B):
                    arg = self.ext_term(ctx, ix)
                    if arg is None:
                        return None, None
                    t, ty = C.AppE(t, arg), inst(B, arg, ctx_len=n)
                case _:
                    return t, ty

    # substitutions

    def extend_ctx(self, ctx: CoreCtx, k: int) -> CoreCtx:
        """Add k fresh variables typed by existing codes or by U."""
        for i in range(k):
            if self.profile is Profile.SIMPLE:
                ctx = ctx.extend(f"v{i}", C.TIota())
                continue
            a = self.code(ctx, 1)
            ctx = ctx.extend(f"v{i}", C.TEl(a) if a is not None else C.TU())
        return ctx

    def sub(self, gamma: CoreCtx, delta: CoreCtx, base: CoreSub | None = None) -> CoreSub:
        """A substitution gamma -> delta; `base` is a fallback that always types."""
        for _ in range(4):
            terms: list[C.Tm] = []
            ok = True
            for k, (_, A) in enumerate(delta.entries):
                want = subst(A, CoreSub(len(gamma), tuple(terms)))
                t = self.term(gamma, want, fuel=30) if self.rng.random() < 0.7 else None
                if t is None:
                    t = self._var_of(gamma, want)
                if t is None:
                    ok = False
                    break
                terms.append(t)
            if ok:
                return CoreSub(len(gamma), tuple(terms))
        assert base is not None
        return base

    def _var_of(self, ctx: CoreCtx, T: C.Ty) -> C.Tm | None:
        n = len(ctx)
        for lvl, (_, ty) in enumerate(ctx.entries):
            i = n - 1 - lvl
            if type(ty) is type(T) and self.conv(ctx, ctx.lookup(i), T):
                return C.Var(i)
        return None

