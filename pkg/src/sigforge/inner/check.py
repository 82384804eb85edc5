"""Type checker for emitted inner-theory units.

Terms are converted to de Bruijn form and checked bidirectionally.
Conversion is beta/delta/eta plus the computation rules of the identity
eliminators on refl. Strict equalities are proof irrelevant and may be
used as oriented rewrite rules: any hypothesis of shape
`(xs : As) -> l == r` in scope rewrites instances of l (or r) during
conversion. This is how the strict profiles' omitted transports are
accepted.
"""
from __future__ import annotations

from dataclasses import dataclass, fields

from ..diagnostics import fail
from . import syntax as I
from .syntax import SORT_LEVEL, SORT_UP

FUEL = 2_000_000


class InnerTypeError(Exception):
    """`subterm` is the innermost term whose check failed, when known."""

    def __init__(self, msg: str):
        super().__init__(msg)
        self.subterm: I.Tm | None = None


def _neutral(t: I.Tm) -> bool:
    while isinstance(t, (I.App, I.Proj1, I.Proj2)):
        t = t.fn if isinstance(t, I.App) else t.t
    return isinstance(t, (I.Ix, I.Const))


def _err(msg: str) -> InnerTypeError:
    return InnerTypeError(msg)


# de Bruijn helpers


def to_db(t: I.Tm, scope: list[str], globals_: set[str]) -> I.Tm:
    def go(n: I.Tm, sc: list[str]) -> I.Tm:
        if isinstance(n, I.V):
            for i, name in enumerate(reversed(sc)):
                if name == n.name:
                    return I.Ix(i)
            if n.name in globals_:
                return I.Const(n.name)
            raise _err(f"unbound name {n.name!r}")
        if isinstance(n, I.Const) and n.name not in globals_:
            raise _err(f"unknown constant {n.name!r}")
        b = I.binder_name(n)
        return I.map_children(n, lambda ch, k: go(ch, sc + [b] if k else sc))

    return go(t, list(scope))


def shift(t: I.Tm, d: int, cutoff: int = 0) -> I.Tm:
    if d == 0:
        return t

    def go(n: I.Tm, c: int) -> I.Tm:
        if isinstance(n, I.Ix):
            return I.Ix(n.ix + d) if n.ix >= c else n
        return I.map_children(n, lambda ch, k: go(ch, c + k))

    return go(t, cutoff)


def subst_top(t: I.Tm, args: list[I.Tm]) -> I.Tm:
    """Replace Ix(i) for i < len(args) by args[i]; lower the rest."""
    k = len(args)

    def go(n: I.Tm, c: int) -> I.Tm:
        if isinstance(n, I.Ix):
            if n.ix < c:
                return n
            j = n.ix - c
            if j < k:
                return shift(args[j], c)
            return I.Ix(n.ix - k)
        return I.map_children(n, lambda ch, b: go(ch, c + b))

    return go(t, 0)


def inst1(body: I.Tm, arg: I.Tm) -> I.Tm:
    return subst_top(body, [arg])


def mentions(t: I.Tm, ix: int) -> bool:
    if isinstance(t, I.Ix):
        return t.ix == ix
    return any(mentions(ch, ix + k) for ch, k in I.children(t))


def _compared_children(n: I.Tm):
    for fl in fields(n):
        if not fl.compare:
            continue
        v = getattr(n, fl.name)
        if isinstance(v, I.Tm):
            yield v, n._binds.get(fl.name, 0)


_CANONICAL = (I.Lam, I.Pair, I.Refl, I.TT, I.Sort, I.Pi, I.Sigma, I.Path, I.SEq, I.Unit, I.Funext)


@dataclass(frozen=True)
class Rule:
    depth: int  # context length when the rule was made
    nvars: int
    lhs: I.Tm
    rhs: I.Tm
    key: tuple | None = None  # spine shape and head of lhs, see spine_key


def spine_key(t: I.Tm, ctx_len: int, nvars: int = 0) -> tuple | None:
    """Eliminator spine and rigid head of t, with variables as levels.

    Two terms can only match when their keys agree, which lets rewriting
    skip most rules without normalizing any subterm.
    """
    spine = []
    while True:
        if isinstance(t, I.App):
            spine.append("A")
            t = t.fn
        elif isinstance(t, I.Proj1):
            spine.append("1")
            t = t.t
        elif isinstance(t, I.Proj2):
            spine.append("2")
            t = t.t
        else:
            break
    if isinstance(t, I.Ix):
        if t.ix < nvars:
            return None
        return tuple(spine), ctx_len - 1 - t.ix
    if isinstance(t, I.Const):
        return tuple(spine), t.name
    return None


@dataclass(frozen=True)
class Ctx:
    types: tuple[I.Tm, ...] = ()
    rules: tuple[Rule, ...] = ()

    def __len__(self) -> int:
        return len(self.types)

    def lookup(self, ix: int) -> I.Tm:
        return shift(self.types[-1 - ix], ix + 1)


class Checker:
    def __init__(self):
        self.globals: dict[str, tuple[I.Tm, I.Tm | None]] = {}
        self.fuel = FUEL

    def tick(self) -> None:
        self.fuel -= 1
        if self.fuel <= 0:
            raise _err("normalization fuel exhausted")

    # evaluation

    def whnf(self, t: I.Tm, ctx: Ctx) -> I.Tm:
        while True:
            self.tick()
            match t:
                case I.App(f, a, imp):
                    f2 = self.whnf(f, ctx)
                    if isinstance(f2, I.Lam):
                        t = inst1(f2.body, a)
                        continue
                    t = I.App(f2, a, imp)
                case I.Proj1(x) | I.Proj2(x):
                    x2 = self.whnf(x, ctx)
                    if isinstance(x2, I.Pair):
                        t = x2.fst if isinstance(t, I.Proj1) else x2.snd
                        continue
                    t = type(t)(x2)
                case I.Const(name):
                    body = self.globals.get(name, (None, None))[1]
                    if body is not None:
                        t = body
                        continue
                case I.JIn(m, pr, p):
                    p2 = self.whnf(p, ctx)
                    if isinstance(p2, I.Refl):
                        t = pr
                        continue
                    t = I.JIn(m, pr, p2)
                case I.Tr(m, p, x):
                    p2 = self.whnf(p, ctx)
                    if isinstance(p2, I.Refl):
                        t = x
                        continue
                    t = I.Tr(m, p2, x)
                case I.Ap(f, p) | I.Apd(f, p):
                    p2 = self.whnf(p, ctx)
                    if isinstance(p2, I.Refl):
                        return I.Refl()
                    t = type(t)(f, p2)
                case I.Inv(p):
                    p2 = self.whnf(p, ctx)
                    if isinstance(p2, I.Refl):
                        return I.Refl()
                    t = I.Inv(p2)
                case I.Happly(p, a):
                    p2 = self.whnf(p, ctx)
                    if isinstance(p2, I.Refl):
                        return I.Refl()
                    t = I.Happly(p2, a)
                case I.Comp(p, q):
                    q2 = self.whnf(q, ctx)
                    if isinstance(q2, I.Refl):
                        t = p
                        continue
                    t = I.Comp(p, q2)
                case _:
                    pass
            if isinstance(t, _CANONICAL):
                return t
            r = self.rewrite(t, ctx)
            if r is None:
                return t
            t = r

    def rewrite(self, t: I.Tm, ctx: Ctx) -> I.Tm | None:
        d = len(ctx)
        key = spine_key(t, d)
        for rule in ctx.rules:
            if rule.key is not None and rule.key != key:
                continue
            k = rule.nvars
            lhs = shift(rule.lhs, d - rule.depth, k)
            binds: list[I.Tm | None] = [None] * k
            if self.match(lhs, t, binds, k, ctx, top=True):
                rhs = shift(rule.rhs, d - rule.depth, k)
                return subst_top(rhs, binds)  # type: ignore[arg-type]
        return None

    def match(self, pat: I.Tm, t: I.Tm, binds: list, k: int, ctx: Ctx, top: bool = False) -> bool:
        # at the root t is already in weak head form, so rewriting it again would loop
        if isinstance(pat, I.Ix) and pat.ix < k:
            prev = binds[pat.ix]
            if prev is None:
                binds[pat.ix] = t
                return True
            return self.conv(prev, t, ctx)
        if pat._binds:
            return False
        if not top:
            t = self.whnf(t, ctx)
        if type(pat) is not type(t):
            return False
        if isinstance(pat, I.Ix):
            return t.ix == pat.ix - k
        if isinstance(pat, I.Const):
            return pat.name == t.name
        if isinstance(pat, I.Sort):
            return pat.tag == t.tag
        for (pc, _), (tc, _) in zip(_compared_children(pat), _compared_children(t)):
            if not self.match(pc, tc, binds, k, ctx):
                return False
        return True

    def nf(self, t: I.Tm, ctx: Ctx) -> I.Tm:
        t = self.whnf(t, ctx)

        def go(ch: I.Tm, k: int) -> I.Tm:
            c2 = ctx
            for _ in range(k):
                c2 = Ctx(c2.types + (I.Unit(),), c2.rules)
            return self.nf(ch, c2)

        return I.map_children(t, go)

    # conversion

    def conv(self, t: I.Tm, u: I.Tm, ctx: Ctx) -> bool:
        if t == u:
            return True
        t = self.whnf(t, ctx)
        u = self.whnf(u, ctx)
        if t == u:
            return True
        ext = Ctx(ctx.types + (I.Unit(),), ctx.rules)
        if isinstance(t, I.Lam) or isinstance(u, I.Lam):
            tb = t.body if isinstance(t, I.Lam) else I.App(shift(t, 1), I.Ix(0), getattr(u, "implicit", False))
            ub = u.body if isinstance(u, I.Lam) else I.App(shift(u, 1), I.Ix(0), getattr(t, "implicit", False))
            return self.conv(tb, ub, ext)
        if isinstance(t, I.Pair) != isinstance(u, I.Pair):
            return (self.conv(I.Proj1(t), I.Proj1(u), ctx)
                    and self.conv(I.Proj2(t), I.Proj2(u), ctx))
        if type(t) is not type(u):
            return self._irrelevant(t, u, ctx)
        match t:
            case I.Sort(tag):
                return SORT_LEVEL[tag] == SORT_LEVEL[u.tag]
            case I.Ix(ix):
                return ix == u.ix or self._irrelevant(t, u, ctx)
            case I.Const(name):
                return name == u.name or self._irrelevant(t, u, ctx)
            case I.Refl():
                return True
            case I.Pi(_, dom, cod, imp):
                return imp == u.implicit and self.conv(dom, u.dom, ctx) and self.conv(cod, u.cod, ext)
            case I.SEq(ty, lhs, rhs) | I.Path(ty, lhs, rhs):
                if ty is not None and u.ty is not None:
                    if not self.conv(ty, u.ty, ctx):
                        return False
                    if isinstance(t, I.SEq) and isinstance(self.whnf(ty, ctx), I.SEq):
                        return True  # equations between proofs of a strict equation
                return self.conv(lhs, u.lhs, ctx) and self.conv(rhs, u.rhs, ctx)
        for (a, k), (b, _) in zip(_compared_children(t), _compared_children(u)):
            c2 = ctx
            for _ in range(k):
                c2 = Ctx(c2.types + (I.Unit(),), c2.rules)
            if not self.conv(a, b, c2):
                return self._irrelevant(t, u, ctx)
        return True

    def _irrelevant(self, t: I.Tm, u: I.Tm, ctx: Ctx) -> bool:
        """Two neutral proofs of the same strict equation are equal."""
        if not (_neutral(t) and _neutral(u)):
            return False
        try:
            a = self.whnf(self.infer(t, ctx), ctx)
            if not isinstance(a, I.SEq):
                return False
            return self.conv(a, self.infer(u, ctx), ctx)
        except InnerTypeError:
            return False

    def subtype(self, sub: I.Tm, sup: I.Tm, ctx: Ctx) -> bool:
        s = self.whnf(sub, ctx)
        p = self.whnf(sup, ctx)
        if isinstance(s, I.Sort) and isinstance(p, I.Sort):
            return SORT_LEVEL[s.tag] <= SORT_LEVEL[p.tag]
        if isinstance(s, I.Pi) and isinstance(p, I.Pi) and s.implicit == p.implicit:
            return self.conv(s.dom, p.dom, ctx) and self.subtype(s.cod, p.cod, self.extend(ctx, p.dom))
        return self.conv(s, p, ctx)

    # contexts and rules

    def extend(self, ctx: Ctx, ty: I.Tm) -> Ctx:
        new = Ctx(ctx.types + (ty,), ctx.rules)
        rules = self.rules_for(I.Ix(0), shift(ty, 1), new, 0, 4)
        if rules:
            new = Ctx(new.types, new.rules + tuple(rules))
        return new

    def rules_for(self, x: I.Tm, ty: I.Tm, ctx: Ctx, nvars: int, budget: int) -> list[Rule]:
        """Rewrite rules provided by a hypothesis x : ty (x lives in ctx)."""
        ty = self.whnf(ty, ctx)
        if isinstance(ty, I.Pi):
            inner = Ctx(ctx.types + (ty.dom,), ctx.rules)
            return self.rules_for(I.App(shift(x, 1), I.Ix(0), ty.implicit), ty.cod, inner,
                                  nvars + 1, budget)
        if isinstance(ty, I.Sigma) and nvars == 0 and budget > 0:
            p1 = I.Proj1(x)
            out = self.rules_for(p1, ty.fst, ctx, 0, budget)
            out += self.rules_for(I.Proj2(x), inst1(ty.snd, p1), ctx, 0, budget)
            return out
        if not isinstance(ty, I.SEq):
            return []
        if ty.ty is not None and isinstance(self.whnf(ty.ty, ctx), I.SEq):
            return []
        lhs = self.nf(ty.lhs, ctx)
        rhs = self.nf(ty.rhs, ctx)
        if lhs == rhs:
            return []
        depth = len(ctx) - nvars
        for a, b in ((lhs, rhs), (rhs, lhs)):
            if self._rigid(a, nvars) and all(mentions(a, i) or not mentions(b, i) for i in range(nvars)):
                return [Rule(depth, nvars, a, b, spine_key(a, len(ctx), nvars))]
        return []

    @staticmethod
    def _rigid(t: I.Tm, k: int) -> bool:
        if isinstance(t, _CANONICAL):
            return False
        if isinstance(t, I.Ix):
            return t.ix >= k
        return True

    # typing

    def sort_of(self, ty: I.Tm, ctx: Ctx) -> str:
        s = self.whnf(self.infer(ty, ctx), ctx)
        if not isinstance(s, I.Sort):
            raise _err("expected a type")
        return s.tag

    @staticmethod
    def _max(a: str, b: str) -> str:
        return a if SORT_LEVEL[a] > SORT_LEVEL[b] else b

    def _path(self, p: I.Tm, ctx: Ctx) -> I.Path:
        pt = self.whnf(self.infer(p, ctx), ctx)
        if not isinstance(pt, I.Path):
            raise _err("expected a path")
        if pt.ty is None:
            pt = I.Path(self.infer(pt.lhs, ctx), pt.lhs, pt.rhs)
        return pt

    def _fn_over(self, f: I.Tm, dom: I.Tm, ctx: Ctx) -> I.Tm:
        """Codomain family (under one binder) of a function f with domain dom."""
        if isinstance(f, I.Lam) and f.dom is None:
            return self.infer(f.body, self.extend(ctx, dom))
        ft = self.whnf(self.infer(f, ctx), ctx)
        if not isinstance(ft, I.Pi) or not self.conv(ft.dom, dom, ctx):
            raise _err("function has the wrong domain")
        return ft.cod

    def _family(self, P: I.Tm, doms: list[I.Tm], ctx: Ctx) -> None:
        """Check that P is a type family over the telescope doms."""
        c = ctx
        body = P
        i = 0
        while i < len(doms) and isinstance(body, I.Lam):
            c = self.extend(c, doms[i])
            body = body.body
            i += 1
        if i == len(doms):
            self.sort_of(body, c)
            return
        ty = self.infer(body, c)
        for dom in doms[i:]:
            ty = self.whnf(ty, c)
            if not isinstance(ty, I.Pi) or not self.conv(ty.dom, dom, c):
                raise _err("motive has the wrong shape")
            c = self.extend(c, dom)
            ty = ty.cod
        if not isinstance(self.whnf(ty, c), I.Sort):
            raise _err("motive does not return a type")

    @staticmethod
    def _beta(f: I.Tm, *args: I.Tm) -> I.Tm:
        for a in args:
            f = inst1(f.body, a) if isinstance(f, I.Lam) else I.App(f, a)
        return f

    def infer(self, t: I.Tm, ctx: Ctx) -> I.Tm:
        try:
            return self._infer(t, ctx)
        except InnerTypeError as e:
            if e.subterm is None:
                e.subterm = t
            raise

    def _infer(self, t: I.Tm, ctx: Ctx) -> I.Tm:
        self.tick()
        match t:
            case I.Sort(tag):
                return I.Sort(SORT_UP[tag])
            case I.Const(name):
                return self.globals[name][0]
            case I.Ix(ix):
                if ix >= len(ctx):
                    raise _err("variable out of scope")
                return ctx.lookup(ix)
            case I.Pi(_, dom, cod) | I.Sigma(_, dom, cod):
                s1 = self.sort_of(dom, ctx)
                s2 = self.sort_of(cod, self.extend(ctx, dom))
                return I.Sort(self._max(s1, s2))
            case I.Lam(name, body, dom, imp):
                if dom is None:
                    raise _err("cannot infer the type of an unannotated lambda")
                self.sort_of(dom, ctx)
                return I.Pi(name, dom, self.infer(body, self.extend(ctx, dom)), imp)
            case I.App(f, a, imp):
                if isinstance(f, I.Lam) and f.dom is None:
                    return self.infer(inst1(f.body, a), ctx)
                ft = self.whnf(self.infer(f, ctx), ctx)
                if not isinstance(ft, I.Pi):
                    raise _err("applying a non-function")
                if ft.implicit != imp:
                    raise _err("implicit/explicit argument mismatch")
                self.check(a, ft.dom, ctx)
                return inst1(ft.cod, a)
            case I.Pair(x, y, ty):
                if ty is not None:
                    self.check(t, ty, ctx)
                    return ty
                return I.Sigma("_", self.infer(x, ctx), shift(self.infer(y, ctx), 1))
            case I.Proj1(x) | I.Proj2(x):
                xt = self.whnf(self.infer(x, ctx), ctx)
                if not isinstance(xt, I.Sigma):
                    raise _err("projection out of a non-Sigma")
                return xt.fst if isinstance(t, I.Proj1) else inst1(xt.snd, I.Proj1(x))
            case I.Unit():
                return I.Sort("U0")
            case I.TT():
                return I.Unit()
            case I.Path(ty, lhs, rhs) | I.SEq(ty, lhs, rhs):
                if ty is None:
                    ty = self.infer(lhs, ctx)
                s = self.sort_of(ty, ctx)
                self.check(lhs, ty, ctx)
                self.check(rhs, ty, ctx)
                return I.Sort(s)
            case I.Refl(x):
                if x is None:
                    raise _err("cannot infer the type of refl")
                return I.Path(self.infer(x, ctx), x, x)
            case I.Tr(m, p, x):
                pt = self._path(p, ctx)
                self._family(m, [pt.ty], ctx)
                self.check(x, self._beta(m, pt.lhs), ctx)
                return self._beta(m, pt.rhs)
            case I.Ap(f, p):
                pt = self._path(p, ctx)
                cod = self._fn_over(f, pt.ty, ctx)
                if mentions(cod, 0):
                    raise _err("ap needs a non-dependent function")
                B = inst1(cod, I.TT())
                return I.Path(B, self._beta(f, pt.lhs), self._beta(f, pt.rhs))
            case I.Apd(f, p):
                pt = self._path(p, ctx)
                cod = self._fn_over(f, pt.ty, ctx)
                fam = I.Lam("y", cod, pt.ty)
                return I.Path(inst1(cod, pt.rhs), I.Tr(fam, p, self._beta(f, pt.lhs)),
                              self._beta(f, pt.rhs))
            case I.JIn(m, pr, p):
                pt = self._path(p, ctx)
                doms = [pt.ty, I.Path(shift(pt.ty, 1), shift(pt.lhs, 1), I.Ix(0))]
                self._family(m, doms, ctx)
                self.check(pr, self._beta(m, pt.lhs, I.Refl()), ctx)
                return self._beta(m, pt.rhs, p)
            case I.Funext(h, f, g):
                ht = self.whnf(self.infer(h, ctx), ctx)
                if not isinstance(ht, I.Pi):
                    raise _err("funext needs a pointwise family of paths")
                inner = self.extend(ctx, ht.dom)
                pt = self.whnf(ht.cod, inner)
                if not isinstance(pt, I.Path):
                    raise _err("funext needs a pointwise family of paths")
                B = pt.ty if pt.ty is not None else self.infer(pt.lhs, inner)
                f2 = I.Lam(ht.name, pt.lhs, ht.dom)
                g2 = I.Lam(ht.name, pt.rhs, ht.dom)
                if f is not None and not self.conv(f, f2, ctx):
                    raise _err("funext: left function does not match")
                if g is not None and not self.conv(g, g2, ctx):
                    raise _err("funext: right function does not match")
                return I.Path(I.Pi(ht.name, ht.dom, B), f if f is not None else f2,
                              g if g is not None else g2)
            case I.Happly(p, a):
                pt = self._path(p, ctx)
                fty = self.whnf(pt.ty, ctx)
                if not isinstance(fty, I.Pi):
                    raise _err("happly on a path between non-functions")
                self.check(a, fty.dom, ctx)
                return I.Path(inst1(fty.cod, a), I.App(pt.lhs, a), I.App(pt.rhs, a))
            case I.Inv(p):
                pt = self._path(p, ctx)
                return I.Path(pt.ty, pt.rhs, pt.lhs)
            case I.Comp(p, q):
                pt = self._path(p, ctx)
                qt = self._path(q, ctx)
                if not self.conv(pt.rhs, qt.lhs, ctx):
                    raise _err("composing paths with mismatched endpoints")
                return I.Path(pt.ty, pt.lhs, qt.rhs)
        raise _err(f"cannot infer a type for {type(t).__name__}")

    def check(self, t: I.Tm, ty: I.Tm, ctx: Ctx) -> None:
        try:
            self._check(t, ty, ctx)
        except InnerTypeError as e:
            if e.subterm is None:
                e.subterm = t
            raise

    def _check(self, t: I.Tm, ty: I.Tm, ctx: Ctx) -> None:
        self.tick()
        match t:
            case I.Lam(_, body, dom, imp):
                pt = self.whnf(ty, ctx)
                if not isinstance(pt, I.Pi) or pt.implicit != imp:
                    raise _err("lambda checked against a non-function type")
                if dom is not None and not self.conv(dom, pt.dom, ctx):
                    raise _err("lambda domain annotation does not match")
                self.check(body, pt.cod, self.extend(ctx, pt.dom))
                return
            case I.Pair(x, y, _):
                st = self.whnf(ty, ctx)
                if isinstance(st, I.Sigma):
                    self.check(x, st.fst, ctx)
                    self.check(y, inst1(st.snd, x), ctx)
                    return
            case I.Refl():
                et = self.whnf(ty, ctx)
                if isinstance(et, I.SEq):
                    if et.ty is not None and isinstance(self.whnf(et.ty, ctx), I.SEq):
                        return
                    if not self.conv(et.lhs, et.rhs, ctx):
                        raise _err("refl: sides of the strict equation differ")
                    return
                if isinstance(et, I.Path):
                    if not self.conv(et.lhs, et.rhs, ctx):
                        raise _err("refl: endpoints of the path differ")
                    return
                raise _err("refl checked against a non-identity type")
            case I.App(I.Lam(_, body, None), a):
                self.check(inst1(body, a), ty, ctx)
                return
        got = self.infer(t, ctx)
        if not self.subtype(got, ty, ctx):
            raise _err("type mismatch")

    # units

    def add(self, d: I.Definition) -> None:
        names = set(self.globals)
        ty = to_db(d.full_type(), [], names)
        ctx = Ctx()
        self.sort_of(ty, ctx)
        body = d.full_body()
        dbody = None
        if body is not None:
            dbody = to_db(body, [], names)
            self.check(dbody, ty, ctx)
        self.globals[d.name] = (ty, dbody)


def check_unit(unit: I.EmitUnit) -> None:
    """Raise E_INNER_TYPE unless every declaration of the unit is well typed."""
    ch = Checker()
    for d in unit.decls:
        try:
            ch.add(d)
        except InnerTypeError as e:
            raise fail("E_INNER_TYPE", f"{unit.signature}: definition {d.name!r}: {e}"
                       f"{_where(d, e)}") from None


def _where(d: I.Definition, e: InnerTypeError) -> str:
    if e.subterm is None:
        return ""
    # the checker sees the de Bruijn copy, so locate the subterm by shape
    for label, root in (("type", d.full_type()), ("body", d.full_body())):
        if root is None:
            continue
        path = _shape_path(root, e.subterm)
        if path is not None:
            return f" (at {label}{'.' + path if path else ''})"
    return ""


def _shape_path(root: I.Tm, target: I.Tm) -> str | None:
    if _same_shape(root, target):
        return ""
    for fl in fields(root):
        v = getattr(root, fl.name)
        if isinstance(v, I.Tm):
            sub = _shape_path(v, target)
            if sub is not None:
                return f"{fl.name}.{sub}" if sub else fl.name
    return None


def _same_shape(a: I.Tm, b: I.Tm) -> bool:
    if isinstance(a, I.V) or isinstance(b, I.Ix):
        return isinstance(a, (I.V, I.Const)) and isinstance(b, (I.Ix, I.Const))
    if type(a) is not type(b):
        return False
    for fl in fields(a):
        x, y = getattr(a, fl.name), getattr(b, fl.name)
        if isinstance(x, I.Tm) or isinstance(y, I.Tm):
            if not (isinstance(x, I.Tm) and isinstance(y, I.Tm) and _same_shape(x, y)):
                if fl.compare:
                    return False
        elif fl.compare and x != y:
            return False
    return True


def check_term(t: I.Tm, ty: I.Tm, decls: tuple[I.Definition, ...] = ()) -> None:
    ch = Checker()
    for d in decls:
        ch.add(d)
    names = set(ch.globals)
    ch.check(to_db(t, [], names), to_db(ty, [], names), Ctx())
