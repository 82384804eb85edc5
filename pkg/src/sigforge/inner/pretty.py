"""Pretty printing of inner terms and emitted units.

Internal names may carry role suffixes after `@` (`zero@M`, `X@0`). The
ASCII style glues them on (`zeroM`, `X0`), the Agda style uses
super/subscripts (`zeroᴹ`, `X₀`). Binders are renamed on the fly whenever
their display name is already in scope, so output never captures.
"""
from __future__ import annotations

from . import syntax as I

ASCII, AGDA = "ascii", "agda"
EXPR, EQ, APP, ATOM = 0, 1, 2, 3

_SUP = {"M": "ᴹ", "D": "ᴰ", "S": "ˢ", "A": "ᴬ", "0": "₀", "1": "₁"}
_GREEK = {"gamma": "γ", "alpha": "α", "beta": "β", "delta": "δ"}

_KW = {
    ASCII: {"arrow": "->", "lam": "\\", "top": "Top", "eq": "==", "p1": "proj1", "p2": "proj2",
            "inv": "inv"},
    AGDA: {"arrow": "→", "lam": "λ ", "top": "⊤", "eq": "≡", "p1": "proj₁", "p2": "proj₂",
           "inv": "sym"},
}


# words the printer itself uses; binders never display as one of these
_RESERVED = {"tr", "ap", "apd", "J", "funext", "happly", "refl", "tt",
             "Set", "Set1", "Ty0", "U0", "U1"}
_RESERVED_STYLE = {
    ASCII: _RESERVED | {"proj1", "proj2", "inv", "comp", "Top"},
    AGDA: _RESERVED | {"proj₁", "proj₂", "sym", "Σ", "λ"},
}


def display(name: str, style: str) -> str:
    base, *sufs = name.split("@")
    if style == AGDA:
        base = _GREEK.get(base, base)
        return base + "".join(_SUP.get(s, s) for s in sufs)
    return base + "".join(sufs)


def _paren(s: str, need: bool) -> str:
    return f"({s})" if need else s


class Printer:
    def __init__(self, style: str = ASCII, globals_: tuple[str, ...] = ()):
        self.style = style
        self.kw = _KW[style]
        self.taken = {display(g, style) for g in globals_} | _RESERVED_STYLE[style]
        self.global_names = set(globals_)

    def _bind(self, env: dict, name: str, body_free: set[str] | None = None) -> tuple[dict, str]:
        d = display(name, self.style) if name != "_" else "_"
        if d != "_":
            used = self.taken | set(env.values())
            if d in used:
                k = 2
                while f"{d}{k}" in used:
                    k += 1
                d = f"{d}{k}"
        env2 = dict(env)
        env2[name] = d
        return env2, d

    def show(self, t: I.Tm, env: dict | None = None, prec: int = EXPR,
             patterns: dict | None = None) -> str:
        env = env or {}
        self.patterns = patterns or {}
        return self._go(t, env, prec)

    def _var(self, name: str, env: dict) -> str:
        if name in env:
            return env[name]
        return display(name, self.style)

    def _go(self, t: I.Tm, env: dict, prec: int) -> str:
        kw = self.kw
        go = self._go
        hit = self._pattern_hit(t)
        if hit is not None:
            return hit
        match t:
            case I.Sort(tag):
                return tag
            case I.Const(name) | I.V(name):
                return self._var(name, env)
            case I.Unit():
                return kw["top"]
            case I.TT():
                return "tt"
            case I.Refl():
                return "refl"
            case I.Pi(name, dom, cod, imp):
                used = name != "_" and name in I.free_names(cod)
                if imp or used:
                    env2, d = self._bind(env, name)
                    lb, rb = ("{", "}") if imp else ("(", ")")
                    s = f"{lb}{d} : {go(dom, env, EXPR)}{rb} {kw['arrow']} {go(cod, env2, EXPR)}"
                else:
                    s = f"{go(dom, env, APP)} {kw['arrow']} {go(cod, env, EXPR)}"
                return _paren(s, prec > EXPR)
            case I.Sigma(name, fst, snd):
                used = name != "_" and name in I.free_names(snd)
                env2, d = self._bind(env, name) if name != "_" else (env, "_")
                tail = go(snd, env2, EXPR if isinstance(snd, I.Sigma) else EQ)
                if isinstance(snd, (I.Pi, I.Lam)):
                    tail = f"({go(snd, env2, EXPR)})"
                if self.style == AGDA:
                    s = f"Σ {go(fst, env, ATOM)} λ {d} → {tail}"
                    return _paren(s, prec > APP)
                if used or name != "_":
                    s = f"({d} : {go(fst, env, EXPR)}) * {tail}"
                else:
                    s = f"{go(fst, env, APP)} * {tail}"
                return _paren(s, prec > EXPR)
            case I.Lam(name, body, _, imp):
                env2, d = self._bind(env, name)
                b = f"{{{d}}}" if imp else d
                return _paren(f"{kw['lam']}{b} {kw['arrow']} {go(body, env2, EXPR)}", prec > EXPR)
            case I.App(f, a, imp):
                arg = f"{{{go(a, env, EXPR)}}}" if imp else go(a, env, ATOM)
                return _paren(f"{go(f, env, APP)} {arg}", prec > APP)
            case I.Pair(x, y, _):
                return f"({go(x, env, EXPR)} , {go(y, env, EXPR)})"
            case I.Proj1(x):
                return _paren(f"{kw['p1']} {go(x, env, ATOM)}", prec > APP)
            case I.Proj2(x):
                return _paren(f"{kw['p2']} {go(x, env, ATOM)}", prec > APP)
            case I.Path(_, lhs, rhs):
                return _paren(f"{go(lhs, env, APP)} = {go(rhs, env, APP)}", prec > EQ)
            case I.SEq(_, lhs, rhs):
                return _paren(f"{go(lhs, env, APP)} {kw['eq']} {go(rhs, env, APP)}", prec > EQ)
            case I.Tr(m, p, x):
                return self._call("tr", [m, p, x], env, prec)
            case I.Ap(f, p):
                return self._call("ap", [f, p], env, prec)
            case I.Apd(f, p):
                return self._call("apd", [f, p], env, prec)
            case I.JIn(m, pr, p):
                return self._call("J", [m, pr, p], env, prec)
            case I.Funext(h, _, _):
                return self._call("funext", [h], env, prec)
            case I.Happly(p, a):
                return self._call("happly", [p, a], env, prec)
            case I.Inv(p):
                return self._call(kw["inv"], [p], env, prec)
            case I.Comp(p, q):
                if self.style == AGDA:
                    return f"({go(p, env, APP)} ∙ {go(q, env, APP)})"
                return self._call("comp", [p, q], env, prec)
            case I.Ix(ix):
                return f"#{ix}"
        raise TypeError(f"cannot print {t!r}")

    def _call(self, head: str, args: list[I.Tm], env: dict, prec: int) -> str:
        parts = " ".join(self._go(a, env, ATOM) for a in args)
        return _paren(f"{head} {parts}", prec > APP)

    # tuple patterns for Sigma-typed parameters

    def _pattern_hit(self, t: I.Tm) -> str | None:
        if not self.patterns:
            return None
        path = []
        cur = t
        while isinstance(cur, (I.Proj1, I.Proj2)):
            path.append(type(cur))
            cur = cur.t
        if not isinstance(cur, I.V) or cur.name not in self.patterns:
            return None
        names = self.patterns[cur.name]
        idx = field_index(tuple(reversed(path)), len(names))
        return None if idx is None else names[idx]


def field_index(path: tuple, n: int) -> int | None:
    """Which field of an n-field right-nested tuple a projection path selects.

    `path` lists projections from the outermost value inwards.
    """
    if n == 1:
        return 0 if not path else None
    k = 0
    for i, step in enumerate(path):
        if step is I.Proj2:
            k += 1
            if k == n - 1:
                return k if i == len(path) - 1 else None
        else:
            return k if i == len(path) - 1 else None
    return None


def field_path(x: I.Tm, k: int, n: int) -> I.Tm:
    """The projection path selecting field k of an n-field tuple x."""
    if n == 1:
        return x
    for _ in range(k):
        x = I.Proj2(x)
    return x if k == n - 1 else I.Proj1(x)


def _pattern_ok(body: I.Tm, name: str, n: int) -> bool:
    """Is every occurrence of `name` in body a complete field projection?"""
    def go(t: I.Tm, bound: bool) -> bool:
        path = []
        cur = t
        while isinstance(cur, (I.Proj1, I.Proj2)):
            path.append(type(cur))
            cur = cur.t
        if isinstance(cur, I.V) and cur.name == name and not bound:
            return path != [] and field_index(tuple(reversed(path)), n) is not None or (n == 1)
        b = I.binder_name(t)
        return all(go(ch, bound or (k > 0 and b == name)) for ch, k in I.children(t))

    return go(body, False)


def show_term(t: I.Tm, style: str = ASCII) -> str:
    return Printer(style).show(t)


def show_definition(d: I.Definition, style: str, globals_: tuple[str, ...]) -> str:
    pr = Printer(style, globals_)
    name = display(d.name, style)
    lines = []
    if d.body is None:
        return f"postulate {name} : {pr.show(d.full_type())}"
    lines.append(f"{name} : {pr.show(d.full_type())}")
    env: dict[str, str] = {}
    pats: dict[str, tuple[str, ...]] = {}
    lhs = [name]
    for p in d.params:
        if p.fields and _pattern_ok(d.body, p.name, len(p.fields)) and len(p.fields) > 1:
            shown = []
            for f in p.fields:
                env, dn = pr._bind(env, f)
                shown.append(dn)
            pats[p.name] = tuple(shown)
            lhs.append("(" + " , ".join(shown) + ")")
        else:
            env, dn = pr._bind(env, p.name)
            lhs.append(dn)
    lines.append(f"{' '.join(lhs)} = {pr.show(d.body, env, EXPR, pats)}")
    return "\n".join(lines)


def show_unit(unit: I.EmitUnit, style: str = ASCII) -> str:
    out = [
        f"-- sigforge output for signature {unit.signature} (profile {unit.profile})",
        f"-- source sha256: {unit.source_hash or 'n/a'}",
        "",
    ]
    seen: list[str] = []
    for d in unit.decls:
        out.append(show_definition(d, style, tuple(seen)))
        out.append("")
        seen.append(d.name)
    return "\n".join(out)
