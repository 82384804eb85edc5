"""Surface pretty printer. Output re-parses to a structurally equal tree."""
from __future__ import annotations

from . import syntax as S

_ARROW = {S.PiInt: "->", S.PiExt: "*>", S.PiSmallExt: "~>"}
EXPR, APP, ATOM = 0, 1, 2


def _paren(text: str, need: bool) -> str:
    return f"({text})" if need else text


def show(e: S.RawExpr, prec: int = EXPR) -> str:
    match e:
        case S.Var(name):
            return name
        case S.Iota():
            return "iota"
        case S.U():
            return "U"
        case S.Top():
            return "Top"
        case S.Tt():
            return "tt"
        case S.Refl():
            return "refl"
        case S.SArr(cod):
            return _paren(f"iota -> {show(cod)}", prec > EXPR)
        case S.PiInt(b, dom, cod) | S.PiExt(b, dom, cod) | S.PiSmallExt(b, dom, cod):
            arrow = _ARROW[type(e)]
            if b == "_" and not (isinstance(e, S.PiInt) and isinstance(dom, S.Iota)):
                text = f"{show(dom, APP)} {arrow} {show(cod)}"
            else:
                text = f"({b} : {show(dom)}) {arrow} {show(cod)}"
            return _paren(text, prec > EXPR)
        case S.Pair(a, b):
            return f"({show(a)} , {show(b)})"
        case S.El(t):
            return _paren(f"El {show(t, ATOM)}", prec > APP)
        case S.Proj1(t):
            return _paren(f"proj1 {show(t, ATOM)}", prec > APP)
        case S.Proj2(t):
            return _paren(f"proj2 {show(t, ATOM)}", prec > APP)
        case S.Reflect(t):
            return _paren(f"reflect {show(t, ATOM)}", prec > APP)
        case S.Id(a, b):
            return _paren(f"Id {show(a, ATOM)} {show(b, ATOM)}", prec > APP)
        case S.IDLarge(a, b):
            return _paren(f"ID {show(a, ATOM)} {show(b, ATOM)}", prec > APP)
        case S.J(x, p, motive, pr, path):
            text = f"J ({x} {p}. {show(motive)}) {show(pr, ATOM)} {show(path, ATOM)}"
            return _paren(text, prec > APP)
        case S.Sg(x, a, b):
            return _paren(f"Sg ({x} : {show(a)}) {show(b, ATOM)}", prec > APP)
        case S.App(f, a):
            # keyword-headed forms take a fixed number of arguments, so a nested
            # application with such a head must be bracketed
            fp = APP if isinstance(f, S.App | S.Var) else ATOM
            return _paren(f"{show(f, fp)} {show(a, ATOM)}", prec > APP)
    raise TypeError(f"not a surface expression: {e!r}")


def show_file(sf: S.SigFile) -> str:
    lines = [f"profile {sf.profile.value}"]
    for ext in sf.externs:
        rhs = "Type" if ext.type is None else show(ext.type)
        lines.append(f"extern {ext.name} : {rhs}")
    lines.append(f"signature {sf.name} where")
    for ent in sf.entries:
        lines.append(f"  {ent.name} : {show(ent.type)}")
    return "\n".join(lines) + "\n"
