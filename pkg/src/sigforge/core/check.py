"""Independent type checker for core syntax.

Used to verify elaborator output and as the validation layer of the
builder API: nothing ill-typed gets past `infer` or `check_ty`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import fail
from ..profile import Profile
from . import syntax as C
from .gating import DESCRIPTION, allowed
from .nbe import NbE
from .subst import CoreSub, inst, shift, subst


@dataclass(frozen=True)
class CoreCtx:
    """A typing context together with the extern declarations it may use.

    `externs` maps an extern name to None for an external type, or to its
    external type for an external constant.
    """
    profile: Profile
    entries: tuple[tuple[str, C.Ty], ...] = ()
    externs: tuple[tuple[str, C.ExtType | None], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.entries)

    def extend(self, name: str, ty: C.Ty) -> "CoreCtx":
        return CoreCtx(self.profile, self.entries + ((name, ty),), self.externs)

    def lookup(self, ix: int) -> C.Ty:
        cache = self.__dict__.setdefault("_lookups", {})
        ty = cache.get(ix)
        if ty is None:
            ty = cache[ix] = shift(self.entries[-1 - ix][1], ix + 1)
        return ty

    def extern(self, name: str):
        for n, t in self.externs:
            if n == name:
                return t, True
        return None, False

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.entries]


def _type_error(msg: str):
    return fail("E_TYPE", msg)


class Checker:
    def __init__(self, ctx: CoreCtx):
        self.profile = ctx.profile
        self.nbe = NbE(ctx.profile)

    def gate(self, node: C.Node) -> None:
        if not allowed(self.profile, type(node)):
            what = DESCRIPTION.get(type(node), type(node).__name__)
            raise fail("E_PROFILE", f"{what} not available in profile {self.profile.value}",
                       profile=self.profile.value)

    def whnf_code(self, ctx: CoreCtx, a: C.Tm) -> C.Tm:
        return self.nbe.normalize(len(ctx), a)

    def conv(self, ctx: CoreCtx, x: C.Node, y: C.Node) -> bool:
        return self.nbe.conv(len(ctx), x, y)

    # external types

    def check_ext(self, ctx: CoreCtx, ix: C.ExtType) -> None:
        match ix:
            case C.ExtBase(name):
                kind, found = ctx.extern(name)
                if not found or kind is not None:
                    raise fail("E_EXTERN", f"{name!r} is not a declared external type")
            case C.ExtArr(d, c):
                self.check_ext(ctx, d)
                self.check_ext(ctx, c)
            case _:
                raise _type_error(f"not an external type: {ix!r}")

    # types

    def check_ty(self, ctx: CoreCtx, A: C.Ty) -> None:
        self.gate(A)
        match A:
            case C.TIota():
                pass
            case C.TSArr(cod):
                self.check_ty(ctx, cod)
            case C.TU():
                pass
            case C.TEl(a):
                self.check(ctx, a, C.TU())
            case C.TPi(a, b, name):
                self.check(ctx, a, C.TU())
                self.check_ty(ctx.extend(name, C.TEl(a)), b)
            case C.TPiExt(ix, b, name):
                self.check_ext(ctx, ix)
                self.check_ty(ctx.extend(name, C.TExt(ix)), b)
            case C.TIdL(T, t, u) | C.TIDL(T, t, u):
                self.check_ty(ctx, T)
                self.check(ctx, t, T)
                self.check(ctx, u, T)
            case C.TExt(ix):
                self.check_ext(ctx, ix)
            case _:
                raise _type_error(f"not a type: {A!r}")

    # terms

    def check(self, ctx: CoreCtx, t: C.Tm, A: C.Ty) -> None:
        got = self.infer(ctx, t)
        if not self.conv(ctx, got, A):
            raise fail("E_TYPE", "type mismatch", expected=repr(A), actual=repr(got))

    def _el_code(self, ctx: CoreCtx, ty: C.Ty, what: str) -> C.Tm:
        if not isinstance(ty, C.TEl):
            raise _type_error(f"{what}: expected an El type, got {ty!r}")
        return self.whnf_code(ctx, ty.a)

    def infer(self, ctx: CoreCtx, t: C.Tm) -> C.Ty:
        self.gate(t)
        n = len(ctx)
        match t:
            case C.Var(ix):
                if not 0 <= ix < n:
                    raise fail("E_SCOPE", f"variable index {ix} out of range")
                return ctx.lookup(ix)
            case C.App(f, a):
                ft = self.infer(ctx, f)
                if self.profile is Profile.SIMPLE:
                    if not isinstance(ft, C.TSArr):
                        raise _type_error("applying a non-function")
                    self.check(ctx, a, C.TIota())
                    return ft.cod
                if not isinstance(ft, C.TPi):
                    raise _type_error("applying a non-function")
                self.check(ctx, a, C.TEl(ft.a))
                return inst(ft.b, a, ctx_len=n)
            case C.Lam(a, body, name):
                self.check(ctx, a, C.TU())
                B = self.infer(ctx.extend(name, C.TEl(a)), body)
                return C.TPi(a, B, name)
            case C.AppE(f, a):
                ft = self.infer(ctx, f)
                if not isinstance(ft, C.TPiExt):
                    raise _type_error("external application of a non-product")
                self.check(ctx, a, C.TExt(ft.ix))
                return inst(ft.b, a, ctx_len=n)
            case C.LamE(ix, body, name):
                self.check_ext(ctx, ix)
                B = self.infer(ctx.extend(name, C.TExt(ix)), body)
                return C.TPiExt(ix, B, name)
            case C.EConst(name):
                kind, found = ctx.extern(name)
                if not found:
                    raise fail("E_SCOPE", f"unknown extern {name!r}")
                if kind is None:
                    raise fail("E_EXTERN", f"external type {name!r} used as a term")
                return C.TExt(kind)
            case C.EApp(f, a):
                ft = self.infer(ctx, f)
                if not (isinstance(ft, C.TExt) and isinstance(ft.ix, C.ExtArr)):
                    raise fail("E_EXTERN", "applying an external term that is not a function")
                self.check(ctx, a, C.TExt(ft.ix.dom))
                return C.TExt(ft.ix.cod)
            case C.Top():
                return C.TU()
            case C.Tt():
                return C.TEl(C.Top())
            case C.Sg(a, b, name):
                self.check(ctx, a, C.TU())
                self.check(ctx.extend(name, C.TEl(a)), b, C.TU())
                return C.TU()
            case C.Pair(a, b, x, y):
                self.check(ctx, a, C.TU())
                self.check(ctx.extend("_", C.TEl(a)), b, C.TU())
                self.check(ctx, x, C.TEl(a))
                self.check(ctx, y, C.TEl(inst(b, x, ctx_len=n)))
                return C.TEl(C.Sg(a, b))
            case C.Proj1(x) | C.Proj2(x):
                code = self._el_code(ctx, self.infer(ctx, x), "projection")
                if not isinstance(code, C.Sg):
                    raise _type_error("projection out of a non-Sigma")
                if isinstance(t, C.Proj1):
                    return C.TEl(code.a)
                return C.TEl(inst(code.b, C.Proj1(x), ctx_len=n))
            case C.IdS(a, x, y):
                self.check(ctx, a, C.TU())
                self.check(ctx, x, C.TEl(a))
                self.check(ctx, y, C.TEl(a))
                return C.TU()
            case C.Refl(A, x):
                self.check_ty(ctx, A)
                self.check(ctx, x, A)
                if self.profile is Profile.FQII:
                    return C.TIdL(A, x, x)
                if not isinstance(A, C.TEl):
                    raise _type_error("small refl at a non-El type")
                return C.TEl(C.IdS(A.a, x, x))
            case C.ReflL(A, x):
                self.check_ty(ctx, A)
                self.check(ctx, x, A)
                return C.TIDL(A, x, x)
            case C.PiS(ix, b, name):
                self.check_ext(ctx, ix)
                self.check(ctx.extend(name, C.TExt(ix)), b, C.TU())
                return C.TU()
            case C.AppS(f, a):
                code = self._el_code(ctx, self.infer(ctx, f), "small external application")
                if not isinstance(code, C.PiS):
                    raise _type_error("small external application of a non-product")
                self.check(ctx, a, C.TExt(code.ix))
                return C.TEl(inst(code.b, a, ctx_len=n))
            case C.LamS(ix, body, name):
                self.check_ext(ctx, ix)
                bt = self.infer(ctx.extend(name, C.TExt(ix)), body)
                if not isinstance(bt, C.TEl):
                    raise _type_error("small external abstraction over a non-El body")
                return C.TEl(C.PiS(ix, bt.a, name))
            case C.JS(motive, pr, path, x, p):
                code = self._el_code(ctx, self.infer(ctx, path), "J")
                if not isinstance(code, C.IdS):
                    raise _type_error("J on a non-Id path")
                a, lhs, rhs = code.a, code.t, code.u
                mctx = ctx.extend(x, C.TEl(a)).extend(
                    p, C.TEl(C.IdS(shift(a, 1), shift(lhs, 1), C.Var(0))))
                self.check_ty(mctx, motive)
                self.check(ctx, pr, inst(motive, lhs, C.Refl(C.TEl(a), lhs), ctx_len=n))
                return inst(motive, rhs, path, ctx_len=n)
            case C.JL(motive, pr, path, x, p):
                pt = self.infer(ctx, path)
                if not isinstance(pt, C.TIDL):
                    raise _type_error("J on a non-ID path")
                A, lhs, rhs = pt.A, pt.t, pt.u
                mctx = ctx.extend(x, A).extend(p, C.TIDL(shift(A, 1), shift(lhs, 1), C.Var(0)))
                self.check_ty(mctx, motive)
                self.check(ctx, pr, inst(motive, lhs, C.ReflL(A, lhs), ctx_len=n))
                return inst(motive, rhs, path, ctx_len=n)
        raise _type_error(f"not a term: {t!r}")

    # contexts and substitutions

    def check_ctx(self, ctx: CoreCtx) -> None:
        prefix = CoreCtx(ctx.profile, (), ctx.externs)
        for name, ty in ctx.entries:
            self.check_ty(prefix, ty)
            prefix = prefix.extend(name, ty)

    def check_sub(self, gamma: CoreCtx, sigma: CoreSub, delta: CoreCtx) -> None:
        if sigma.src != len(gamma) or sigma.tgt != len(delta):
            raise _type_error("substitution has the wrong shape")
        partial = CoreSub(len(gamma), ())
        for t, (_, ty) in zip(sigma.terms, delta.entries):
            self.check(gamma, t, subst(ty, partial))
            partial = partial.ext(t)


def infer(ctx: CoreCtx, t: C.Tm) -> C.Ty:
    return Checker(ctx).infer(ctx, t)


def check_ctx(ctx: CoreCtx) -> None:
    Checker(ctx).check_ctx(ctx)


def small_j_beta(ctx: CoreCtx, t: C.JS) -> C.Ty:
    """The computation rule of J on small Id at refl, as a type.

    It holds only up to ID: the result is `ID (J P pr refl) pr`, and the
    two sides are not convertible."""
    if not isinstance(t.path, C.Refl):
        raise _type_error("the computation rule needs J applied to refl")
    return C.TIDL(Checker(ctx).infer(ctx, t), t, t.pr)
