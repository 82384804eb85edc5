"""Print core syntax back as surface syntax, choosing non-clashing names."""
from __future__ import annotations

from ..surface import syntax as S
from ..surface.printer import show, show_file
from . import syntax as C
from .subst import mentions


def _fresh(base: str, scope: list[str]) -> str:
    if base not in scope:
        return base
    k = 1
    while f"{base}{k}" in scope:
        k += 1
    return f"{base}{k}"


def _binder(name: str, body: C.Node, scope: list[str]) -> str:
    if name == "_":
        return _fresh("x", scope) if mentions(body, 0) else "_"
    return _fresh(name, scope)


def ext_raw(ix: C.ExtType) -> S.RawExpr:
    match ix:
        case C.ExtBase(name):
            return S.Var(name)
        case C.ExtArr(d, c):
            return S.PiInt("_", ext_raw(d), ext_raw(c))
    raise TypeError(ix)


def to_raw(t: C.Node, scope: list[str]) -> S.RawExpr:
    r = lambda x: to_raw(x, scope)  # noqa: E731

    def under(name: str, body: C.Node, *more: str):
        names = [name, *more]
        return to_raw(body, scope + names)

    match t:
        case C.Var(ix):
            return S.Var(scope[-1 - ix])
        case C.App(f, a) | C.AppE(f, a) | C.AppS(f, a) | C.EApp(f, a):
            return S.App(r(f), r(a))
        case C.EConst(name):
            return S.Var(name)
        case C.Lam(a, body, name) | C.LamE(a, body, name) | C.LamS(a, body, name):
            # no surface lambda exists; this rendering is for display only
            b = _binder(name, body, scope)
            dom = show(r(a)) if isinstance(a, C.Node) else str(a)
            return S.Var(f"(\\({b} : {dom}) -> {show(under(b, body))})")
        case C.Top():
            return S.Top()
        case C.Tt():
            return S.Tt()
        case C.Sg(a, b, name):
            x = _binder(name, b, scope)
            return S.Sg(x, r(a), under(x, b))
        case C.Pair(_, _, x, y):
            return S.Pair(r(x), r(y))
        case C.Proj1(x):
            return S.Proj1(r(x))
        case C.Proj2(x):
            return S.Proj2(r(x))
        case C.IdS(_, x, y) | C.TIdL(_, x, y):
            return S.Id(r(x), r(y))
        case C.TIDL(_, x, y):
            return S.IDLarge(r(x), r(y))
        case C.Refl() | C.ReflL():
            return S.Refl()
        case C.PiS(ix, b, name):
            x = _binder(name, b, scope)
            return S.PiSmallExt(x, ext_raw(ix), under(x, b))
        case C.JS(m, pr, path, x, p) | C.JL(m, pr, path, x, p):
            x2 = _fresh(x, scope)
            p2 = _fresh(p, scope + [x2])
            return S.J(x2, p2, to_raw(m, scope + [x2, p2]), r(pr), r(path))
        case C.TIota():
            return S.Iota()
        case C.TSArr(cod):
            return S.SArr(r(cod))
        case C.TU():
            return S.U()
        case C.TEl(a):
            return S.El(r(a))
        case C.TPi(a, b, name):
            x = _binder(name, b, scope)
            return S.PiInt(x, r(a), under(x, b))
        case C.TPiExt(ix, b, name):
            x = _binder(name, b, scope)
            return S.PiExt(x, ext_raw(ix), under(x, b))
        case C.TExt(ix):
            return ext_raw(ix)
    raise TypeError(f"cannot print {t!r}")


def show_core(t: C.Node, scope: list[str] | None = None) -> str:
    return show(to_raw(t, list(scope or [])))


def show_signature(sig) -> str:
    ents = []
    scope: list[str] = []
    for name, ty in sig.ctx.entries:
        ents.append(S.Entry(name, to_raw(ty, scope)))
        scope.append(name)
    exts = tuple(S.ExternDecl(n, None if k is None else ext_raw(k)) for n, k in sig.ctx.externs)
    return show_file(S.SigFile(sig.profile, sig.name, exts, tuple(ents)))
