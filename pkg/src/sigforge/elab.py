"""Elaboration of surface signatures into the de Bruijn core.

Bidirectional: types are elaborated by `ty`, terms are either inferred or
checked against an expected core type. The result is re-verified by the
independent core checker.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .core import syntax as C
from .core.check import Checker, CoreCtx
from .core.gating import DESCRIPTION, allowed
from .core.nbe import NbE
from .core.subst import inst, shift
from .diagnostics import SigforgeError, Span, fail
from .profile import Profile
from .surface import syntax as S


@dataclass(frozen=True)
class Signature:
    name: str
    ctx: CoreCtx
    source_hash: str = ""

    @property
    def profile(self) -> Profile:
        return self.ctx.profile

    @property
    def entries(self):
        return self.ctx.entries

    @property
    def externs(self):
        return self.ctx.externs


class Elaborator:
    def __init__(self, profile: Profile, file: str = "<input>"):
        self.profile = profile
        self.file = file
        self.nbe = NbE(profile)

    # diagnostics

    def err(self, code: str, msg: str, e, **kw):
        span = getattr(e, "span", None) or Span.none()
        return fail(code, msg, span, file=self.file, profile=self.profile.value, **kw)

    def gate(self, cls: type, e, what: str | None = None) -> None:
        if not allowed(self.profile, cls):
            desc = what or DESCRIPTION.get(cls, cls.__name__)
            raise self.err("E_PROFILE", f"{desc} not available in profile {self.profile.value}", e)

    def nf(self, ctx: CoreCtx, t: C.Node) -> C.Node:
        return self.nbe.normalize(len(ctx), t)

    def show(self, ctx: CoreCtx, t: C.Node) -> str:
        from .core.printer import show_core

        return show_core(t, ctx.names)

    # names

    def resolve(self, ctx: CoreCtx, name: str, e):
        names = ctx.names
        for ix, n in enumerate(reversed(names)):
            if n == name:
                return C.Var(ix), ctx.lookup(ix)
        kind, found = ctx.extern(name)
        if found:
            if kind is None:
                raise self.err("E_EXTERN", f"external type {name!r} used where a term is expected", e)
            return C.EConst(name), C.TExt(kind)
        raise self.err("E_SCOPE", f"unbound name {name!r}", e)

    def _is_ext_type(self, ctx: CoreCtx, e) -> bool:
        match e:
            case S.Var(name):
                if name in ctx.names:
                    return False
                kind, found = ctx.extern(name)
                return found and kind is None
            case S.PiInt("_", d, c):
                return self._is_ext_type(ctx, d) and self._is_ext_type(ctx, c)
        return False

    def ext_type(self, ctx: CoreCtx, e) -> C.ExtType:
        match e:
            case S.Var(name) if self._is_ext_type(ctx, e):
                return C.ExtBase(name)
            case S.PiInt("_", d, c):
                return C.ExtArr(self.ext_type(ctx, d), self.ext_type(ctx, c))
        raise self.err("E_EXTERN", "expected an external type", e)

    # types

    def ty(self, ctx: CoreCtx, e) -> C.Ty:
        match e:
            case S.Iota():
                self.gate(C.TIota, e)
                return C.TIota()
            case S.SArr(cod):
                self.gate(C.TSArr, e)
                return C.TSArr(self.ty(ctx, cod))
            case S.U():
                self.gate(C.TU, e)
                return C.TU()
            case S.El(t):
                self.gate(C.TEl, e)
                return C.TEl(self.check(ctx, t, C.TU()))
            case S.PiInt(b, dom, cod):
                if self.profile is Profile.SIMPLE:
                    if not isinstance(dom, S.Iota):
                        raise self.err("E_TYPE", "simple signatures only have arrows out of iota", dom)
                    return C.TSArr(self.ty(ctx, cod))
                self.gate(C.TPi, e)
                if self._is_ext_type(ctx, dom):
                    raise self.err("E_EXTERN", "internal product over an external type; use *>", dom)
                a = self.check(ctx, dom, C.TU())
                return C.TPi(a, self.ty(ctx.extend(b, C.TEl(a)), cod), b)
            case S.PiExt(b, dom, cod):
                self.gate(C.TPiExt, e)
                ix = self.ext_type(ctx, dom)
                return C.TPiExt(ix, self.ty(ctx.extend(b, C.TExt(ix)), cod), b)
            case S.Id(lhs, rhs):
                if self.profile.is_hiit:
                    # an equation between elements is the small Id, implicitly decoded
                    return C.TEl(self.check(ctx, e, C.TU()))
                self.gate(C.TIdL, e, "large Id (an Id in type position)")
                t, A = self.infer(ctx, lhs)
                u = self.check(ctx, rhs, A)
                return C.TIdL(A, t, u)
            case S.IDLarge(lhs, rhs):
                self.gate(C.TIDL, e)
                t, A = self.infer(ctx, lhs)
                u = self.check(ctx, rhs, A)
                return C.TIDL(A, t, u)
            case S.Reflect():
                raise self.err("E_PROFILE", "equality reflection is not available in any profile", e)
            case S.J():
                self.gate(C.JS, e, "J")
        raise self.err("E_TYPE", "expected a type (codes in U need an explicit El)", e)

    # terms

    def check(self, ctx: CoreCtx, e, A: C.Ty) -> C.Tm:
        match e:
            case S.Pair(x, y):
                self.gate(C.Pair, e)
                code = self.nf(ctx, A.a) if isinstance(A, C.TEl) else None
                if not isinstance(code, C.Sg):
                    raise self.err("E_TYPE", "a pair needs an expected Sigma type", e,
                                   actual=self.show(ctx, A))
                tx = self.check(ctx, x, C.TEl(code.a))
                ty_ = self.check(ctx, y, C.TEl(inst(code.b, tx, ctx_len=len(ctx))))
                return C.Pair(code.a, code.b, tx, ty_)
            case S.Refl():
                self.gate(C.Refl, e)
                if isinstance(A, C.TIDL):
                    self._same(ctx, A.t, A.u, e)
                    return C.ReflL(A.A, A.t)
                if isinstance(A, C.TIdL):
                    self._same(ctx, A.t, A.u, e)
                    return C.Refl(A.A, A.t)
                code = self.nf(ctx, A.a) if isinstance(A, C.TEl) else None
                if isinstance(code, C.IdS):
                    self._same(ctx, code.t, code.u, e)
                    return C.Refl(C.TEl(code.a), code.t)
                raise self.err("E_TYPE", "refl needs an expected identity type", e,
                               actual=self.show(ctx, A))
        t, got = self.infer(ctx, e)
        if not self.nbe.conv(len(ctx), got, A):
            raise self.err("E_TYPE", "type mismatch", e,
                           expected=self.show(ctx, A), actual=self.show(ctx, got))
        return t

    def _same(self, ctx: CoreCtx, t, u, e) -> None:
        if not self.nbe.conv(len(ctx), t, u):
            raise self.err("E_TYPE", "refl: endpoints are not convertible", e,
                           expected=self.show(ctx, t), actual=self.show(ctx, u))

    def infer(self, ctx: CoreCtx, e) -> tuple[C.Tm, C.Ty]:
        n = len(ctx)
        match e:
            case S.Var(name):
                return self.resolve(ctx, name, e)
            case S.App(f, a):
                tf, fty = self.infer(ctx, f)
                if isinstance(fty, C.TSArr):
                    return C.App(tf, self.check(ctx, a, C.TIota())), fty.cod
                if isinstance(fty, C.TPi):
                    ta = self.check(ctx, a, C.TEl(fty.a))
                    return C.App(tf, ta), inst(fty.b, ta, ctx_len=n)
                if isinstance(fty, C.TPiExt):
                    ta = self.check(ctx, a, C.TExt(fty.ix))
                    return C.AppE(tf, ta), inst(fty.b, ta, ctx_len=n)
                if isinstance(fty, C.TExt) and isinstance(fty.ix, C.ExtArr):
                    ta = self.check(ctx, a, C.TExt(fty.ix.dom))
                    return C.EApp(tf, ta), C.TExt(fty.ix.cod)
                if isinstance(fty, C.TEl):
                    code = self.nf(ctx, fty.a)
                    if isinstance(code, C.PiS):
                        ta = self.check(ctx, a, C.TExt(code.ix))
                        return C.AppS(tf, ta), C.TEl(inst(code.b, ta, ctx_len=n))
                raise self.err("E_TYPE", "applying something that is not a function", f,
                               actual=self.show(ctx, fty))
            case S.Proj1(x) | S.Proj2(x):
                self.gate(C.Proj1, e)
                tx, xty = self.infer(ctx, x)
                code = self.nf(ctx, xty.a) if isinstance(xty, C.TEl) else None
                if not isinstance(code, C.Sg):
                    raise self.err("E_TYPE", "projection out of a non-Sigma", x,
                                   actual=self.show(ctx, xty))
                if isinstance(e, S.Proj1):
                    return C.Proj1(tx), C.TEl(code.a)
                return C.Proj2(tx), C.TEl(inst(code.b, C.Proj1(tx), ctx_len=n))
            case S.J(x, p, motive, pr, path):
                self.gate(C.JS, e, "J")
                tp, pty = self.infer(ctx, path)
                if isinstance(pty, C.TIDL):
                    A, lhs, rhs = pty.A, pty.t, pty.u
                    ptyp = C.TIDL(shift(A, 1), shift(lhs, 1), C.Var(0))
                    mctx = ctx.extend(x, A).extend(p, ptyp)
                    m = self.ty(mctx, motive)
                    tpr = self.check(ctx, pr, inst(m, lhs, C.ReflL(A, lhs), ctx_len=n))
                    return C.JL(m, tpr, tp, x, p), inst(m, rhs, tp, ctx_len=n)
                code = self.nf(ctx, pty.a) if isinstance(pty, C.TEl) else None
                if not isinstance(code, C.IdS):
                    raise self.err("E_TYPE", "J on something that is not an identity proof", path,
                                   actual=self.show(ctx, pty))
                a, lhs, rhs = code.a, code.t, code.u
                mctx = ctx.extend(x, C.TEl(a)).extend(
                    p, C.TEl(C.IdS(shift(a, 1), shift(lhs, 1), C.Var(0))))
                m = self.ty(mctx, motive)
                tpr = self.check(ctx, pr, inst(m, lhs, C.Refl(C.TEl(a), lhs), ctx_len=n))
                return C.JS(m, tpr, tp, x, p), inst(m, rhs, tp, ctx_len=n)
            case S.Reflect():
                raise self.err("E_PROFILE", "equality reflection is not available in any profile", e)
            case S.Top():
                self.gate(C.Top, e)
                return C.Top(), C.TU()
            case S.Tt():
                self.gate(C.Tt, e)
                return C.Tt(), C.TEl(C.Top())
            case S.Sg(x, a, b):
                self.gate(C.Sg, e)
                ta = self.check(ctx, a, C.TU())
                tb = self.check(ctx.extend(x, C.TEl(ta)), b, C.TU())
                return C.Sg(ta, tb, x), C.TU()
            case S.Id(lhs, rhs):
                self.gate(C.IdS, e, "small Id (an Id code in U)")
                tl, lty = self.infer(ctx, lhs)
                if not isinstance(lty, C.TEl):
                    raise self.err("E_TYPE", "small Id needs terms of an El type", lhs,
                                   actual=self.show(ctx, lty))
                tr = self.check(ctx, rhs, lty)
                return C.IdS(lty.a, tl, tr), C.TU()
            case S.PiSmallExt(b, dom, cod):
                self.gate(C.PiS, e)
                ix = self.ext_type(ctx, dom)
                tb = self.check(ctx.extend(b, C.TExt(ix)), cod, C.TU())
                return C.PiS(ix, tb, b), C.TU()
            case S.Pair() | S.Refl():
                raise self.err("E_TYPE", "cannot infer a type here; use it where the type is known", e)
            case S.Iota() | S.SArr() | S.U() | S.El() | S.PiInt() | S.PiExt() | S.IDLarge():
                self.ty(ctx, e)  # surfaces profile errors first
                raise self.err("E_TYPE", "a type was used where a term is expected", e)
        raise self.err("E_TYPE", "cannot elaborate expression", e)

    # signatures

    def externs(self, decls) -> tuple:
        out: list[tuple[str, C.ExtType | None]] = []
        for d in decls:
            if self.profile is Profile.SIMPLE:
                raise self.err("E_PROFILE", "externs are not available in profile simple", d)
            ctx = CoreCtx(self.profile, (), tuple(out))
            out.append((d.name, None if d.type is None else self.ext_type(ctx, d.type)))
        return tuple(out)

    def signature(self, sf: S.SigFile) -> Signature:
        ctx = CoreCtx(self.profile, (), self.externs(sf.externs))
        for ent in sf.entries:
            ctx = ctx.extend(ent.name, self.ty(ctx, ent.type))
        Checker(ctx).check_ctx(ctx)
        return Signature(sf.name, ctx)


def elaborate(sf: S.SigFile) -> Signature:
    return Elaborator(sf.profile, sf.file).signature(sf)


def load(src: str, file: str = "<input>") -> Signature:
    import hashlib

    from .surface import parse

    try:
        sig = elaborate(parse(src, file))
    except SigforgeError as e:
        if e.diag.file == "<input>" and file != "<input>":
            raise SigforgeError(replace(e.diag, file=file)) from None
        raise
    return Signature(sig.name, sig.ctx, hashlib.sha256(src.encode()).hexdigest())


def load_file(path: str) -> Signature:
    try:
        with open(path, encoding="utf-8") as fh:
            src = fh.read()
    except OSError as e:
        raise fail("E_IO", f"cannot read {path}: {e.strerror}") from None
    return load(src, path)
