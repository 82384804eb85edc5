"""Algebra (A), morphism (M), displayed algebra (D) and section (S)
interpretations of core types and terms into the inner theory.

An environment holds one `Slot` per core variable with the inner terms
standing for its interpretations. Type clauses take the inner terms they
are applied to (alpha0, alpha1 for M; alpha for D; alpha, alpha^D for S)
and return inner types.

Equations of El and of sections are strict (`==`) in the quotient and
strict higher profiles and paths (`=`) in the simple and weak profiles.
In the strict profiles term-level M and S components are `refl`, which
the inner checker accepts by rewriting with strict hypotheses. The weak
profile spells the needed transports out with J.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from ..core import syntax as C
from ..core.check import Checker as CoreChecker, CoreCtx
from ..core.subst import inst
from ..diagnostics import fail
from ..inner import syntax as I
from ..profile import Profile


@dataclass(frozen=True)
class Slot:
    a0: I.Tm
    a1: I.Tm | None = None
    m: I.Tm | None = None
    d: I.Tm | None = None
    s: I.Tm | None = None
    ext: bool = False

    def a(self, side: int) -> I.Tm:
        if side == 0 or self.ext:
            return self.a0
        assert self.a1 is not None
        return self.a1


def ext_slot(x: I.Tm) -> Slot:
    return Slot(x, x, ext=True)


Env = tuple  # of Slot, in context order


@dataclass
class Carrier:
    """Interpretations of the implicit sort of a simple signature."""
    a0: I.Tm
    a1: I.Tm | None = None
    m: I.Tm | None = None
    d: I.Tm | None = None
    s: I.Tm | None = None

    def a(self, side: int) -> I.Tm:
        return self.a0 if side == 0 else self.a1  # type: ignore[return-value]


UNSUPPORTED_J = "J on small Id has no {} interpretation in profile hiit-weak"


def app(f: I.Tm, *args: I.Tm, implicit: bool = False) -> I.Tm:
    for a in args:
        f = I.App(f, a, implicit)
    return f


class Interp:
    def __init__(self, profile: Profile, carrier: Carrier | None = None):
        self.profile = profile
        self.carrier = carrier
        self.strict = profile in (Profile.FQII, Profile.HIIT_STRICT)
        self.counts: dict[str, int] = {}
        self.u_sort = {Profile.SIMPLE: "Set", Profile.FQII: "Set",
                       Profile.HIIT_STRICT: "Ty0", Profile.HIIT_WEAK: "U0"}[profile]
        self.top_sort = "U1" if profile is Profile.HIIT_WEAK else "Set1"

    # helpers

    def fresh(self, base: str) -> str:
        n = self.counts.get(base, 0) + 1
        self.counts[base] = n
        return base if n == 1 else f"{base}{n}"

    def reserve(self, *names: str) -> None:
        for nm in names:
            self.counts.setdefault(nm, 1)

    def eq(self, ty: I.Tm, lhs: I.Tm, rhs: I.Tm) -> I.Tm:
        return I.SEq(ty, lhs, rhs) if self.strict else I.Path(ty, lhs, rhs)

    def lam(self, base: str, dom: I.Tm | None, body, implicit: bool = False) -> I.Tm:
        x = self.fresh(base)
        return I.Lam(x, body(I.V(x)), dom, implicit)

    def pi(self, base: str, dom: I.Tm, body, implicit: bool = False) -> I.Tm:
        x = self.fresh(base)
        return I.Pi(x, dom, body(I.V(x)), implicit)

    def ext_ty(self, ix: C.ExtType) -> I.Tm:
        match ix:
            case C.ExtBase(name):
                return I.Const(name)
            case C.ExtArr(d, c):
                return I.Pi("_", self.ext_ty(d), self.ext_ty(c))
        raise TypeError(ix)

    def infer(self, ctx: CoreCtx, t: C.Tm) -> C.Ty:
        return CoreChecker(ctx).infer(ctx, t)

    def _code(self, ctx: CoreCtx, ty: C.Ty) -> C.Tm:
        """Normal form of the code of an El type."""
        assert isinstance(ty, C.TEl), ty
        return CoreChecker(ctx).whnf_code(ctx, ty.a)

    @staticmethod
    def _bname(name: str) -> str:
        return "x" if name == "_" else name

    # A

    def tyA(self, A: C.Ty, ctx: CoreCtx, env: Env, side: int = 0) -> I.Tm:
        match A:
            case C.TIota():
                return self.carrier.a(side)  # type: ignore[union-attr]
            case C.TSArr(cod):
                return I.Pi("_", self.carrier.a(side), self.tyA(cod, ctx, env, side))  # type: ignore[union-attr]
            case C.TU():
                return I.Sort(self.u_sort)
            case C.TEl(a):
                return self.tmA(a, ctx, env, side)
            case C.TPi(a, b, name):
                return self.pi(self._bname(name), self.tmA(a, ctx, env, side), lambda x: self.tyA(
                    b, ctx.extend(name, C.TEl(a)), env + (Slot(x, x),), side))
            case C.TPiExt(ix, b, name):
                return self.pi(self._bname(name), self.ext_ty(ix), lambda i: self.tyA(
                    b, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), side))
            case C.TIdL(T, t, u):
                return I.SEq(self.tyA(T, ctx, env, side), self.tmA(t, ctx, env, side),
                             self.tmA(u, ctx, env, side))
            case C.TIDL(T, t, u):
                return I.Path(self.tyA(T, ctx, env, side), self.tmA(t, ctx, env, side),
                              self.tmA(u, ctx, env, side))
            case C.TExt(ix):
                return self.ext_ty(ix)
        raise TypeError(f"no A clause for {A!r}")

    def tmA(self, t: C.Tm, ctx: CoreCtx, env: Env, side: int = 0) -> I.Tm:
        A = lambda x, c=ctx, e=env: self.tmA(x, c, e, side)  # noqa: E731
        match t:
            case C.Var(ix):
                return env[-1 - ix].a(side)
            case C.App(f, u) | C.AppE(f, u) | C.AppS(f, u) | C.EApp(f, u):
                return I.App(A(f), A(u))
            case C.EConst(name):
                return I.Const(name)
            case C.Lam(a, body, name):
                return self.lam(self._bname(name), A(a), lambda x: self.tmA(
                    body, ctx.extend(name, C.TEl(a)), env + (Slot(x, x),), side))
            case C.LamE(ix, body, name) | C.LamS(ix, body, name):
                return self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmA(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), side))
            case C.Top():
                return I.Unit()
            case C.Tt():
                return I.TT()
            case C.Sg(a, b, name):
                return I.Sigma(*self._sigma_parts(name, A(a), lambda x: self.tmA(
                    b, ctx.extend(name, C.TEl(a)), env + (Slot(x, x),), side)))
            case C.Pair(a, b, x, y):
                return I.Pair(A(x), A(y), self.tmA(C.Sg(a, b), ctx, env, side))
            case C.Proj1(x):
                return I.Proj1(A(x))
            case C.Proj2(x):
                return I.Proj2(A(x))
            case C.IdS(a, x, y):
                return I.Path(A(a), A(x), A(y))
            case C.Refl(_, x) | C.ReflL(_, x):
                return I.Refl(A(x))
            case C.PiS(ix, b, name):
                return self.pi(self._bname(name), self.ext_ty(ix), lambda i: self.tmA(
                    b, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), side))
            case C.JS(P, pr, p, xn, pn) | C.JL(P, pr, p, xn, pn):
                T, lhs, _ = self._j_data(t, ctx)
                return I.JIn(self._motive_A(P, T, lhs, ctx, env, side, xn, pn), A(pr), A(p))
        raise TypeError(f"no A clause for {t!r}")

    def _sigma_parts(self, name: str, fst: I.Tm, snd) -> tuple:
        x = self.fresh(self._bname(name))
        return x, fst, snd(I.V(x))

    # J support

    def _j_data(self, t, ctx: CoreCtx) -> tuple[C.Ty, C.Tm, C.Tm]:
        """(type of the endpoints, lhs, rhs) for a J node."""
        pty = self.infer(ctx, t.path)
        if isinstance(t, C.JL):
            assert isinstance(pty, C.TIDL)
            return pty.A, pty.t, pty.u
        code = self._code(ctx, pty)
        assert isinstance(code, C.IdS)
        return C.TEl(code.a), code.t, code.u

    def _j_ctx(self, t, T: C.Ty, lhs: C.Tm, ctx: CoreCtx) -> CoreCtx:
        c1 = ctx.extend(t.x if hasattr(t, "x") else "y", T)
        from ..core.subst import shift
        if isinstance(t, C.JL):
            pt = C.TIDL(shift(T, 1), shift(lhs, 1), C.Var(0))
        else:
            pt = C.TEl(C.IdS(shift(T.a, 1), shift(lhs, 1), C.Var(0)))
        return c1.extend(t.p, pt)

    def _motive_A(self, P, T, lhs, ctx, env, side, xn, pn) -> I.Tm:
        jnode = C.JL(P, C.Var(0), C.Var(0), xn, pn)
        mctx = self._j_ctx_names(T, lhs, ctx, xn, pn, large=True)
        y = self.fresh(self._bname(xn))
        q = self.fresh(self._bname(pn))
        body = self.tyA(P, mctx, env + (Slot(I.V(y), I.V(y)), Slot(I.V(q), I.V(q))), side)
        del jnode
        return I.Lam(y, I.Lam(q, body))

    def _j_ctx_names(self, T, lhs, ctx, xn, pn, large: bool) -> CoreCtx:
        from ..core.subst import shift
        c1 = ctx.extend(xn, T)
        if isinstance(T, C.TEl) and not large:
            return c1.extend(pn, C.TEl(C.IdS(shift(T.a, 1), shift(lhs, 1), C.Var(0))))
        if self.profile is Profile.HIIT_WEAK and not large:
            return c1
        return c1.extend(pn, C.TIDL(shift(T, 1), shift(lhs, 1), C.Var(0)))

    # M

    def tyM(self, A: C.Ty, ctx: CoreCtx, env: Env, x0: I.Tm, x1: I.Tm) -> I.Tm:
        match A:
            case C.TIota():
                c = self.carrier
                return I.Path(c.a1, I.App(c.m, x0), x1)  # type: ignore[union-attr]
            case C.TSArr(cod):
                c = self.carrier
                return self.pi("x", c.a0, lambda x: self.tyM(  # type: ignore[union-attr]
                    cod, ctx, env, I.App(x0, x), I.App(x1, I.App(c.m, x))))  # type: ignore[union-attr]
            case C.TU():
                return I.Pi("_", x0, x1)
            case C.TEl(a):
                return self.eq(self.tmA(a, ctx, env, 1), I.App(self.tmM(a, ctx, env), x0), x1)
            case C.TPi(a, b, name):
                aM = self.tmM(a, ctx, env)
                return self.pi(self._bname(name), self.tmA(a, ctx, env, 0), lambda x: self.tyM(
                    b, ctx.extend(name, C.TEl(a)), env + (Slot(x, I.App(aM, x), I.Refl()),),
                    I.App(x0, x), I.App(x1, I.App(aM, x))))
            case C.TPiExt(ix, b, name):
                return self.pi(self._bname(name), self.ext_ty(ix), lambda i: self.tyM(
                    b, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), I.App(x0, i), I.App(x1, i)))
            case C.TIdL(T, t, u):
                ty = self.tyM(T, ctx, env, self.tmA(t, ctx, env, 0), self.tmA(t, ctx, env, 1))
                return I.SEq(ty, self.tmM(t, ctx, env), self.tmM(u, ctx, env))
            case C.TIDL(T, t, u):
                t0, t1 = self.tmA(t, ctx, env, 0), self.tmA(t, ctx, env, 1)
                u0, u1 = self.tmA(u, ctx, env, 0), self.tmA(u, ctx, env, 1)
                inner = self._mcomp(T, ctx, env, t1, self.tmM(t, ctx, env), u0, x0, u1, x1)
                return I.Path(self.tyM(T, ctx, env, u0, u1), inner, self.tmM(u, ctx, env))
            case C.TExt():
                return I.Unit()  # external sorts are shared, not interpreted
        raise TypeError(f"no M clause for {A!r}")

    def _mcomp(self, T, ctx, env, t1, tM, y0, q0, y1, q1) -> I.Tm:
        """tr q1 (tr q0 tM): carry tM : T^M t0 t1 to T^M y0 y1."""
        m0 = self.lam("z", None, lambda z: self.tyM(T, ctx, env, z, t1))
        m1 = self.lam("z", None, lambda z: self.tyM(T, ctx, env, y0, z))
        return I.Tr(m1, q1, I.Tr(m0, q0, tM))

    def tmM(self, t: C.Tm, ctx: CoreCtx, env: Env) -> I.Tm:
        M = lambda x: self.tmM(x, ctx, env)  # noqa: E731
        A0 = lambda x: self.tmA(x, ctx, env, 0)  # noqa: E731
        A1 = lambda x: self.tmA(x, ctx, env, 1)  # noqa: E731
        weak = not self.strict
        match t:
            case C.Var(ix):
                return env[-1 - ix].m
            case C.App(f, u):
                if not weak:
                    return I.App(M(f), A0(u))
                fty = self.infer(ctx, f)
                f0, f1, u0 = A0(f), A1(f), A0(u)
                if isinstance(fty, C.TSArr):
                    mot = self._j2(lambda y, q: self.tyM(fty.cod, ctx, env, I.App(f0, u0), I.App(f1, y)))
                else:
                    assert isinstance(fty, C.TPi)
                    bctx = ctx.extend(fty.name, C.TEl(fty.a))
                    mot = self._j2(lambda y, q: self.tyM(
                        fty.b, bctx, env + (Slot(u0, y, q),), I.App(f0, u0), I.App(f1, y)))
                return I.JIn(mot, I.App(M(f), u0), M(u))
            case C.AppE(f, i):
                return I.App(M(f), A0(i))
            case C.Lam(a, body, name):
                aM = M(a)
                return self.lam(self._bname(name), A0(a), lambda x: self.tmM(
                    body, ctx.extend(name, C.TEl(a)), env + (Slot(x, I.App(aM, x), I.Refl()),)))
            case C.LamE(ix, body, name):
                return self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmM(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),)))
            case C.Top():
                return I.Lam(self.fresh("u"), I.TT(), I.Unit())
            case C.Tt():
                return I.Refl()
            case C.Sg(a, b, name):
                aM = M(a)
                bctx = ctx.extend(name, C.TEl(a))

                def body(s):
                    s1 = I.Proj1(s)
                    bM = self.tmM(b, bctx, env + (Slot(s1, I.App(aM, s1), I.Refl()),))
                    return I.Pair(I.App(aM, s1), I.App(bM, I.Proj2(s)), A1(t))
                return self.lam("s", A0(t), body)
            case C.Pair(a, b, x, y):
                if not weak:
                    return I.Refl()
                return self._pair_weak(a, b, x, y, ctx, env)
            case C.Proj1(x):
                if not weak:
                    return I.Refl()
                return I.Ap(self.lam("s", None, lambda s: I.Proj1(s)), M(x))
            case C.Proj2(x):
                if not weak:
                    return I.Refl()
                return self._proj2_weak(x, ctx, env)
            case C.IdS(a, x, y):
                aM = M(a)
                dom = I.Path(A0(a), A0(x), A0(y))
                if not weak:
                    return self.lam("p", dom, lambda p: I.Ap(aM, p))
                return self.lam("p", dom, lambda p: I.Comp(I.Comp(I.Inv(M(x)), I.Ap(aM, p)), M(y)))
            case C.Refl(T, x):
                if not weak or self.profile is Profile.FQII:
                    return I.Refl()
                assert isinstance(T, C.TEl)
                aM = M(T.a)
                a1 = A1(T.a)
                mot = self._j2(lambda y, q: I.Path(
                    I.Path(a1, y, y), I.Comp(I.Comp(I.Inv(q), I.Ap(aM, I.Refl())), q), I.Refl()))
                return I.JIn(mot, I.Refl(), M(x))
            case C.ReflL():
                return I.Refl()
            case C.PiS(ix, b, name):
                bctx = ctx.extend(name, C.TExt(ix))
                return self.lam("f", A0(t), lambda f: self.lam(self._bname(name), self.ext_ty(ix), lambda i: I.App(
                    self.tmM(b, bctx, env + (ext_slot(i),)), I.App(f, i))))
            case C.AppS(f, i):
                if not weak:
                    return I.Refl()
                return I.Happly(M(f), A0(i))
            case C.LamS(ix, body, name):
                if not weak:
                    return I.Refl()
                return I.Funext(self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmM(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),))))
            case C.JS():
                raise fail("E_UNSUPPORTED", UNSUPPORTED_J.format("morphism"), profile=self.profile.value)
            case C.JL(P, pr, p, xn, pn):
                return self._jl_M(t, ctx, env)
        raise TypeError(f"no M clause for {t!r}")

    def _j2(self, body) -> I.Tm:
        y = self.fresh("y")
        q = self.fresh("q")
        return I.Lam(y, I.Lam(q, body(I.V(y), I.V(q))))

    def _pair_weak(self, a, b, x, y, ctx, env) -> I.Tm:
        A0 = lambda z: self.tmA(z, ctx, env, 0)  # noqa: E731
        A1 = lambda z: self.tmA(z, ctx, env, 1)  # noqa: E731
        bctx = ctx.extend("_", C.TEl(a))
        sg1 = A1(C.Sg(a, b))
        aM = self.tmM(a, ctx, env)
        t0, t1, u0 = A0(x), A1(x), A0(y)
        bM = lambda slot: self.tmM(b, bctx, env + (slot,))  # noqa: E731
        base = I.Pair(I.App(aM, t0), I.App(bM(Slot(t0, I.App(aM, t0), I.Refl())), u0), sg1)
        m1 = self._j2(lambda yy, q: I.Path(sg1, base, I.Pair(yy, I.App(bM(Slot(t0, yy, q)), u0), sg1)))
        step1 = I.JIn(m1, I.Refl(), self.tmM(x, ctx, env))
        m2 = self._j2(lambda z, r: I.Path(sg1, base, I.Pair(t1, z, sg1)))
        return I.JIn(m2, step1, self.tmM(y, ctx, env))

    def _proj2_weak(self, x, ctx, env) -> I.Tm:
        code = self._code(ctx, self.infer(ctx, x))
        assert isinstance(code, C.Sg)
        bctx = ctx.extend(code.name, C.TEl(code.a))
        t0 = self.tmA(x, ctx, env, 0)
        p1 = self.lam("s", None, lambda s: I.Proj1(s))

        def body(yy, q):
            slot = Slot(I.Proj1(t0), I.Proj1(yy), I.Ap(p1, q))
            b1 = self.tmA(code.b, bctx, env + (slot,), 1)
            bM = self.tmM(code.b, bctx, env + (slot,))
            return I.Path(b1, I.App(bM, I.Proj2(t0)), I.Proj2(yy))
        return I.JIn(self._j2(body), I.Refl(), self.tmM(x, ctx, env))

    def _jl_M(self, t: C.JL, ctx: CoreCtx, env: Env) -> I.Tm:
        P, pr, p = t.motive, t.pr, t.path
        T, lhs, rhs = self._j_data(t, ctx)
        mctx = self._j_ctx_names(T, lhs, ctx, t.x, t.p, large=True)
        A0 = lambda z: self.tmA(z, ctx, env, 0)  # noqa: E731
        A1 = lambda z: self.tmA(z, ctx, env, 1)  # noqa: E731
        t1, tM = A1(lhs), self.tmM(lhs, ctx, env)
        u0, u1, uM = A0(rhs), A1(rhs), self.tmM(rhs, ctx, env)
        p0, p1, pM = A0(p), A1(p), self.tmM(p, ctx, env)
        pr0, pr1 = A0(pr), A1(pr)
        motA0 = self._motive_A(P, T, lhs, ctx, env, 0, t.x, t.p)
        motA1 = self._motive_A(P, T, lhs, ctx, env, 1, t.x, t.p)
        PM = lambda us, ps, v0, v1: self.tyM(P, mctx, env + (us, ps), v0, v1)  # noqa: E731
        t0 = A0(lhs)
        m1 = self._j2(lambda y1, q1: PM(
            Slot(t0, y1, self._mcomp(T, ctx, env, t1, tM, t0, I.Refl(), y1, q1)),
            Slot(I.Refl(), q1, I.Refl()), pr0, I.JIn(motA1, pr1, q1)))
        step1 = I.JIn(m1, self.tmM(pr, ctx, env), p1)
        m2 = self._j2(lambda y0, q0: PM(
            Slot(y0, u1, self._mcomp(T, ctx, env, t1, tM, y0, q0, u1, p1)),
            Slot(q0, p1, I.Refl()), I.JIn(motA0, pr0, q0), I.JIn(motA1, pr1, p1)))
        step2 = I.JIn(m2, step1, p0)
        m3 = self._j2(lambda z, r: PM(
            Slot(u0, u1, z), Slot(p0, p1, r), I.JIn(motA0, pr0, p0), I.JIn(motA1, pr1, p1)))
        return I.JIn(m3, step2, pM)

    # D

    def tyD(self, A: C.Ty, ctx: CoreCtx, env: Env, x: I.Tm) -> I.Tm:
        match A:
            case C.TIota():
                return I.App(self.carrier.d, x)  # type: ignore[union-attr]
            case C.TSArr(cod):
                c = self.carrier
                return self.pi("x", c.a0, lambda v: self.pi(  # type: ignore[union-attr]
                    "x@D", I.App(c.d, v), lambda vd: self.tyD(cod, ctx, env, I.App(x, v))))  # type: ignore[union-attr]
            case C.TU():
                return I.Pi("_", x, I.Sort(self.u_sort))
            case C.TEl(a):
                return I.App(self.tmD(a, ctx, env), x)
            case C.TPi(a, b, name):
                aD = self.tmD(a, ctx, env)
                bn = self._bname(name)
                return self.pi(bn, self.tmA(a, ctx, env), lambda v: self.pi(
                    bn + "@D", I.App(aD, v), lambda vd: self.tyD(
                        b, ctx.extend(name, C.TEl(a)), env + (Slot(v, d=vd),), I.App(x, v))),
                    implicit=True)
            case C.TPiExt(ix, b, name):
                return self.pi(self._bname(name), self.ext_ty(ix), lambda i: self.tyD(
                    b, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), I.App(x, i)))
            case C.TIdL(T, t, u):
                ty = self.tyD(T, ctx, env, self.tmA(t, ctx, env))
                return I.SEq(ty, self.tmD(t, ctx, env), self.tmD(u, ctx, env))
            case C.TIDL(T, t, u):
                tr = I.Tr(self._famD(T, ctx, env), x, self.tmD(t, ctx, env))
                return I.Path(self.tyD(T, ctx, env, self.tmA(u, ctx, env)), tr, self.tmD(u, ctx, env))
            case C.TExt():
                return I.Unit()
        raise TypeError(f"no D clause for {A!r}")

    def _famD(self, T: C.Ty, ctx, env) -> I.Tm:
        if isinstance(T, C.TEl):
            return self.tmD(T.a, ctx, env)
        return self.lam("z", None, lambda z: self.tyD(T, ctx, env, z))

    def tmD(self, t: C.Tm, ctx: CoreCtx, env: Env) -> I.Tm:
        D = lambda x: self.tmD(x, ctx, env)  # noqa: E731
        A = lambda x: self.tmA(x, ctx, env)  # noqa: E731
        match t:
            case C.Var(ix):
                return env[-1 - ix].d
            case C.App(f, u):
                imp = self.profile is not Profile.SIMPLE
                return I.App(I.App(D(f), A(u), imp), D(u))
            case C.AppE(f, i) | C.AppS(f, i):
                return I.App(D(f), A(i))
            case C.Lam(a, body, name):
                bn = self._bname(name)
                aD = D(a)
                return self.lam(bn, A(a), lambda v: self.lam(bn + "@D", I.App(aD, v), lambda vd: self.tmD(
                    body, ctx.extend(name, C.TEl(a)), env + (Slot(v, d=vd),))), implicit=True)
            case C.LamE(ix, body, name) | C.LamS(ix, body, name):
                return self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmD(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),)))
            case C.Top():
                return I.Lam(self.fresh("u"), I.Unit(), I.Unit())
            case C.Tt():
                return I.TT()
            case C.Sg(a, b, name):
                aD = D(a)
                bctx = ctx.extend(name, C.TEl(a))

                def body(s):
                    s1 = I.Proj1(s)
                    return I.Sigma(*self._sigma_parts(self._bname(name) + "@D", I.App(aD, s1), lambda vd: I.App(
                        self.tmD(b, bctx, env + (Slot(s1, d=vd),)), I.Proj2(s))))
                return self.lam("s", A(t), body)
            case C.Pair(a, b, x, y):
                s = I.Pair(A(x), A(y), A(C.Sg(a, b)))
                return I.Pair(D(x), D(y), I.App(D(C.Sg(a, b)), s))
            case C.Proj1(x):
                return I.Proj1(D(x))
            case C.Proj2(x):
                return I.Proj2(D(x))
            case C.IdS(a, x, y):
                aD = D(a)
                dom = I.Path(A(a), A(x), A(y))
                return self.lam("p", dom, lambda p: I.Path(I.App(aD, A(y)), I.Tr(aD, p, D(x)), D(y)))
            case C.Refl() | C.ReflL():
                return I.Refl()
            case C.PiS(ix, b, name):
                bctx = ctx.extend(name, C.TExt(ix))
                return self.lam("f", A(t), lambda f: self.pi(self._bname(name), self.ext_ty(ix), lambda i: I.App(
                    self.tmD(b, bctx, env + (ext_slot(i),)), I.App(f, i))))
            case C.JS() | C.JL():
                return self._j_D(t, ctx, env)
        raise TypeError(f"no D clause for {t!r}")

    def _j_D(self, t, ctx: CoreCtx, env: Env) -> I.Tm:
        P, pr, p = t.motive, t.pr, t.path
        T, lhs, rhs = self._j_data(t, ctx)
        large = isinstance(t, C.JL)
        mctx = self._j_ctx_names(T, lhs, ctx, t.x, t.p, large=large) if large else \
            self._small_mctx(T, lhs, ctx, t.x, t.p)
        A = lambda z: self.tmA(z, ctx, env)  # noqa: E731
        tD, uA, uD = self.tmD(lhs, ctx, env), A(rhs), self.tmD(rhs, ctx, env)
        pA, pD, prA = A(p), self.tmD(p, ctx, env), A(pr)
        motA = self._motive_A_any(t, T, lhs, ctx, env, 0)
        famD = self._famD(T, ctx, env)
        PD = lambda us, ps, v: self.tyD(P, mctx, env + (us, ps), v)  # noqa: E731
        m1 = self._j2(lambda y, q: PD(Slot(y, d=I.Tr(famD, q, tD)), Slot(q, d=I.Refl()), I.JIn(motA, prA, q)))
        step1 = I.JIn(m1, self.tmD(pr, ctx, env), pA)
        m2 = self._j2(lambda z, r: PD(Slot(uA, d=z), Slot(pA, d=r), I.JIn(motA, prA, pA)))
        return I.JIn(m2, step1, pD)

    def _small_mctx(self, T, lhs, ctx, xn, pn) -> CoreCtx:
        from ..core.subst import shift
        return ctx.extend(xn, T).extend(pn, C.TEl(C.IdS(shift(T.a, 1), shift(lhs, 1), C.Var(0))))

    def _motive_A_any(self, t, T, lhs, ctx, env, side) -> I.Tm:
        large = isinstance(t, C.JL)
        mctx = self._j_ctx_names(T, lhs, ctx, t.x, t.p, large=True) if large else \
            self._small_mctx(T, lhs, ctx, t.x, t.p)
        y = self.fresh(self._bname(t.x))
        q = self.fresh(self._bname(t.p))
        body = self.tyA(t.motive, mctx, env + (Slot(I.V(y), I.V(y)), Slot(I.V(q), I.V(q))), side)
        return I.Lam(y, I.Lam(q, body))

    # S

    def tyS(self, A: C.Ty, ctx: CoreCtx, env: Env, x: I.Tm, xd: I.Tm) -> I.Tm:
        match A:
            case C.TIota():
                c = self.carrier
                return I.Path(I.App(c.d, x), I.App(c.s, x), xd)  # type: ignore[union-attr]
            case C.TSArr(cod):
                c = self.carrier
                return self.pi("x", c.a0, lambda v: self.tyS(  # type: ignore[union-attr]
                    cod, ctx, env, I.App(x, v), app(xd, v, I.App(c.s, v))))  # type: ignore[union-attr]
            case C.TU():
                return self.pi("x", x, lambda v: I.App(xd, v))
            case C.TEl(a):
                return self.eq(I.App(self.tmD(a, ctx, env), x), I.App(self.tmS(a, ctx, env), x), xd)
            case C.TPi(a, b, name):
                aS = self.tmS(a, ctx, env)
                return self.pi(self._bname(name), self.tmA(a, ctx, env), lambda v: self.tyS(
                    b, ctx.extend(name, C.TEl(a)), env + (Slot(v, d=I.App(aS, v), s=I.Refl()),),
                    I.App(x, v), I.App(I.App(xd, v, True), I.App(aS, v))))
            case C.TPiExt(ix, b, name):
                return self.pi(self._bname(name), self.ext_ty(ix), lambda i: self.tyS(
                    b, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),), I.App(x, i), I.App(xd, i)))
            case C.TIdL(T, t, u):
                ty = self.tyS(T, ctx, env, self.tmA(t, ctx, env), self.tmD(t, ctx, env))
                return I.SEq(ty, self.tmS(t, ctx, env), self.tmS(u, ctx, env))
            case C.TIDL(T, t, u):
                uA, uD = self.tmA(u, ctx, env), self.tmD(u, ctx, env)
                inner = self._scomp(T, ctx, env, t, uA, x, xd)
                return I.Path(self.tyS(T, ctx, env, uA, uD), inner, self.tmS(u, ctx, env))
            case C.TExt():
                return I.Unit()
        raise TypeError(f"no S clause for {A!r}")

    def _scomp(self, T, ctx, env, t, y, q, qd) -> I.Tm:
        """tr qd (J tS q): carry tS : T^S t tD along q : t = y and qd : tr q tD = yD."""
        tD, tS = self.tmD(t, ctx, env), self.tmS(t, ctx, env)
        famD = self._famD(T, ctx, env)
        mj = self._j2(lambda yy, qq: self.tyS(T, ctx, env, yy, I.Tr(famD, qq, tD)))
        mt = self.lam("z", None, lambda z: self.tyS(T, ctx, env, y, z))
        return I.Tr(mt, qd, I.JIn(mj, tS, q))

    def tmS(self, t: C.Tm, ctx: CoreCtx, env: Env) -> I.Tm:
        S = lambda x: self.tmS(x, ctx, env)  # noqa: E731
        A = lambda x: self.tmA(x, ctx, env)  # noqa: E731
        D = lambda x: self.tmD(x, ctx, env)  # noqa: E731
        weak = not self.strict
        match t:
            case C.Var(ix):
                return env[-1 - ix].s
            case C.App(f, u):
                if not weak:
                    return I.App(S(f), A(u))
                fty = self.infer(ctx, f)
                fA, fD, uA = A(f), D(f), A(u)
                imp = self.profile is not Profile.SIMPLE
                if isinstance(fty, C.TSArr):
                    mot = self._j2(lambda y, q: self.tyS(fty.cod, ctx, env, I.App(fA, uA),
                                                         I.App(I.App(fD, uA, imp), y)))
                else:
                    bctx = ctx.extend(fty.name, C.TEl(fty.a))
                    mot = self._j2(lambda y, q: self.tyS(
                        fty.b, bctx, env + (Slot(uA, d=y, s=q),), I.App(fA, uA),
                        I.App(I.App(fD, uA, imp), y)))
                return I.JIn(mot, I.App(S(f), uA), S(u))
            case C.AppE(f, i):
                return I.App(S(f), A(i))
            case C.Lam(a, body, name):
                aS = S(a)
                return self.lam(self._bname(name), A(a), lambda v: self.tmS(
                    body, ctx.extend(name, C.TEl(a)), env + (Slot(v, d=I.App(aS, v), s=I.Refl()),)))
            case C.LamE(ix, body, name):
                return self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmS(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),)))
            case C.Top():
                return I.Lam(self.fresh("u"), I.TT(), I.Unit())
            case C.Tt():
                return I.Refl()
            case C.Sg(a, b, name):
                aS = S(a)
                bctx = ctx.extend(name, C.TEl(a))

                def body(s):
                    s1 = I.Proj1(s)
                    bS = self.tmS(b, bctx, env + (Slot(s1, d=I.App(aS, s1), s=I.Refl()),))
                    return I.Pair(I.App(aS, s1), I.App(bS, I.Proj2(s)), I.App(D(t), s))
                return self.lam("s", A(t), body)
            case C.Pair(a, b, x, y):
                if not weak:
                    return I.Refl()
                return self._pair_weak_S(a, b, x, y, ctx, env)
            case C.Proj1(x):
                if not weak:
                    return I.Refl()
                return I.Ap(self.lam("s", None, lambda s: I.Proj1(s)), S(x))
            case C.Proj2(x):
                if not weak:
                    return I.Refl()
                return self._proj2_weak_S(x, ctx, env)
            case C.IdS(a, x, y):
                aS, aD = S(a), D(a)
                dom = I.Path(A(a), A(x), A(y))
                if not weak:
                    return self.lam("p", dom, lambda p: I.Apd(aS, p))
                return self.lam("p", dom, lambda p: I.Comp(I.Comp(
                    I.Ap(self.lam("z", None, lambda z: I.Tr(aD, p, z)), I.Inv(S(x))),
                    I.Apd(aS, p)), S(y)))
            case C.Refl(T, x):
                if not weak or self.profile is Profile.FQII:
                    return I.Refl()
                assert isinstance(T, C.TEl)
                aS, aD = S(T.a), D(T.a)
                xA = A(x)
                dty = I.App(aD, xA)
                f = self.lam("z", None, lambda z: I.Tr(aD, I.Refl(), z))
                mot = self._j2(lambda y, q: I.Path(
                    I.Path(dty, y, y),
                    I.Comp(I.Comp(I.Ap(f, I.Inv(q)), I.Apd(aS, I.Refl())), q), I.Refl()))
                return I.JIn(mot, I.Refl(), S(x))
            case C.ReflL():
                return I.Refl()
            case C.PiS(ix, b, name):
                bctx = ctx.extend(name, C.TExt(ix))
                return self.lam("f", A(t), lambda f: self.lam(self._bname(name), self.ext_ty(ix), lambda i: I.App(
                    self.tmS(b, bctx, env + (ext_slot(i),)), I.App(f, i))))
            case C.AppS(f, i):
                if not weak:
                    return I.Refl()
                return I.Happly(S(f), A(i))
            case C.LamS(ix, body, name):
                if not weak:
                    return I.Refl()
                return I.Funext(self.lam(self._bname(name), self.ext_ty(ix), lambda i: self.tmS(
                    body, ctx.extend(name, C.TExt(ix)), env + (ext_slot(i),))))
            case C.JS():
                raise fail("E_UNSUPPORTED", UNSUPPORTED_J.format("section"), profile=self.profile.value)
            case C.JL():
                return self._jl_S(t, ctx, env)
        raise TypeError(f"no S clause for {t!r}")

    def _pair_weak_S(self, a, b, x, y, ctx, env) -> I.Tm:
        A = lambda z: self.tmA(z, ctx, env)  # noqa: E731
        D = lambda z: self.tmD(z, ctx, env)  # noqa: E731
        bctx = ctx.extend("_", C.TEl(a))
        aS = self.tmS(a, ctx, env)
        tA, uA, tD = A(x), A(y), D(x)
        sgD = I.App(D(C.Sg(a, b)), I.Pair(tA, uA, A(C.Sg(a, b))))
        bS = lambda slot: self.tmS(b, bctx, env + (slot,))  # noqa: E731
        base = I.Pair(I.App(aS, tA), I.App(bS(Slot(tA, d=I.App(aS, tA), s=I.Refl())), uA), sgD)
        m1 = self._j2(lambda yy, q: I.Path(sgD, base, I.Pair(yy, I.App(bS(Slot(tA, d=yy, s=q)), uA), sgD)))
        step1 = I.JIn(m1, I.Refl(), self.tmS(x, ctx, env))
        m2 = self._j2(lambda z, r: I.Path(sgD, base, I.Pair(tD, z, sgD)))
        return I.JIn(m2, step1, self.tmS(y, ctx, env))

    def _proj2_weak_S(self, x, ctx, env) -> I.Tm:
        code = self._code(ctx, self.infer(ctx, x))
        assert isinstance(code, C.Sg)
        bctx = ctx.extend(code.name, C.TEl(code.a))
        tA = self.tmA(x, ctx, env)
        p1 = self.lam("s", None, lambda s: I.Proj1(s))

        def body(yy, q):
            slot = Slot(I.Proj1(tA), d=I.Proj1(yy), s=I.Ap(p1, q))
            bD = self.tmD(code.b, bctx, env + (slot,))
            bS = self.tmS(code.b, bctx, env + (slot,))
            return I.Path(I.App(bD, I.Proj2(tA)), I.App(bS, I.Proj2(tA)), I.Proj2(yy))
        return I.JIn(self._j2(body), I.Refl(), self.tmS(x, ctx, env))

    def _jl_S(self, t: C.JL, ctx: CoreCtx, env: Env) -> I.Tm:
        P, pr, p = t.motive, t.pr, t.path
        T, lhs, rhs = self._j_data(t, ctx)
        mctx = self._j_ctx_names(T, lhs, ctx, t.x, t.p, large=True)
        A = lambda z: self.tmA(z, ctx, env)  # noqa: E731
        tD = self.tmD(lhs, ctx, env)
        uA, uD, uS = A(rhs), self.tmD(rhs, ctx, env), self.tmS(rhs, ctx, env)
        pA, pD, pS = A(p), self.tmD(p, ctx, env), self.tmS(p, ctx, env)
        prA, prD = A(pr), self.tmD(pr, ctx, env)
        motA = self._motive_A(P, T, lhs, ctx, env, 0, t.x, t.p)
        famD = self._famD(T, ctx, env)
        PD = lambda us, ps, v: self.tyD(P, mctx, env + (us, ps), v)  # noqa: E731
        PS = lambda us, ps, v, vd: self.tyS(P, mctx, env + (us, ps), v, vd)  # noqa: E731
        m1d = self._j2(lambda y, q: PD(Slot(y, d=I.Tr(famD, q, tD)), Slot(q, d=I.Refl()), I.JIn(motA, prA, q)))
        m2d = self._j2(lambda z, r: PD(Slot(uA, d=z), Slot(pA, d=r), I.JIn(motA, prA, pA)))
        jd1 = lambda q: I.JIn(m1d, prD, q)  # noqa: E731
        m1 = self._j2(lambda y, q: PS(
            Slot(y, d=I.Tr(famD, q, tD), s=self._scomp(T, ctx, env, lhs, y, q, I.Refl())),
            Slot(q, d=I.Refl(), s=I.Refl()), I.JIn(motA, prA, q), jd1(q)))
        step1 = I.JIn(m1, self.tmS(pr, ctx, env), pA)
        m2 = self._j2(lambda zd, qd: PS(
            Slot(uA, d=zd, s=self._scomp(T, ctx, env, lhs, uA, pA, qd)),
            Slot(pA, d=qd, s=I.Refl()), I.JIn(motA, prA, pA), I.JIn(m2d, jd1(pA), qd)))
        step2 = I.JIn(m2, step1, pD)
        m3 = self._j2(lambda z, r: PS(
            Slot(uA, d=uD, s=z), Slot(pA, d=pD, s=r), I.JIn(motA, prA, pA), I.JIn(m2d, jd1(pA), pD)))
        return I.JIn(m3, step2, pS)
