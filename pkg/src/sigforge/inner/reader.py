"""Reader for the ASCII dialect of inner terms.

Reads back what `show_term(t, ASCII)` prints. Names come back in display
form (`zeroM` rather than `zero@M`) and annotations the printer omits come
back as None, so `read(show_term(t))` matches `t` only up to that.
"""
from __future__ import annotations

import re

from . import syntax as I

_TOKEN = re.compile(r"\s*(->|==|#\d+|[A-Za-z_][A-Za-z0-9_']*|[()\\{}:,*=])")
SORTS = {"Set", "Set1", "Ty0", "U0", "U1"}
_CALLS = {"proj1": (I.Proj1, 1), "proj2": (I.Proj2, 1), "tr": (I.Tr, 3), "ap": (I.Ap, 2),
          "apd": (I.Apd, 2), "J": (I.JIn, 3), "funext": (I.Funext, 1), "happly": (I.Happly, 2),
          "inv": (I.Inv, 1), "comp": (I.Comp, 2)}
_ATOMS = {"Top": I.Unit, "tt": I.TT, "refl": I.Refl}


class ReadError(ValueError):
    pass


def tokenize(src: str) -> list[str]:
    out, pos = [], 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ReadError(f"bad character at {pos}: {src[pos:pos + 10]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Reader:
    def __init__(self, toks: list[str]):
        self.toks = toks
        self.i = 0

    def peek(self, k: int = 0) -> str | None:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise ReadError(f"expected {want or 'a token'}, got {t!r}")
        self.i += 1
        return t

    def ident(self) -> str:
        t = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t):
            raise ReadError(f"expected a name, got {t!r}")
        return t

    def expr(self) -> I.Tm:
        t = self.peek()
        if t == "\\":
            self.take()
            imp = self.peek() == "{"
            if imp:
                self.take("{")
            name = self.ident()
            if imp:
                self.take("}")
            self.take("->")
            return I.Lam(name, self.expr(), None, imp)
        if t in ("(", "{") and self.peek(2) == ":":
            close = ")" if t == "(" else "}"
            self.take()
            name = self.ident()
            self.take(":")
            dom = self.expr()
            self.take(close)
            op = self.take()
            if op == "->":
                return I.Pi(name, dom, self.expr(), close == "}")
            if op == "*" and close == ")":
                return I.Sigma(name, dom, self.expr())
            raise ReadError(f"unexpected {op!r} after binder")
        a = self.app()
        op = self.peek()
        if op == "->":
            self.take()
            return I.Pi("_", a, self.expr())
        if op == "*":
            self.take()
            return I.Sigma("_", a, self.expr())
        if op in ("=", "=="):
            self.take()
            b = self.app()
            return I.Path(None, a, b) if op == "=" else I.SEq(None, a, b)
        return a

    def _starts_atom(self) -> bool:
        t = self.peek()
        return t is not None and (t in ("(", "{") or t.startswith("#")
                                  or re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t) is not None)

    def app(self) -> I.Tm:
        t = self.peek()
        if t in _CALLS:
            self.take()
            cls, n = _CALLS[t]
            f = cls(*[self.atom() for _ in range(n)])
        else:
            f = self.atom()
        while self._starts_atom() and self.peek() not in _CALLS:
            if self.peek() == "{":
                self.take("{")
                a = self.expr()
                self.take("}")
                f = I.App(f, a, True)
            else:
                f = I.App(f, self.atom())
        return f

    def atom(self) -> I.Tm:
        t = self.take()
        if t == "(":
            a = self.expr()
            if self.peek() == ",":
                self.take()
                b = self.expr()
                self.take(")")
                return I.Pair(a, b)
            self.take(")")
            return a
        if t.startswith("#"):
            return I.Ix(int(t[1:]))
        if t in SORTS:
            return I.Sort(t)
        if t in _ATOMS:
            return _ATOMS[t]()
        if t in _CALLS:
            raise ReadError(f"{t} needs its arguments; parenthesize it")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", t):
            raise ReadError(f"unexpected {t!r}")
        return I.V(t)


def read_term(src: str) -> I.Tm:
    r = _Reader(tokenize(src))
    t = r.expr()
    if r.peek() is not None:
        raise ReadError(f"trailing input at {r.peek()!r}")
    return t


def canonical(t: I.Tm) -> I.Tm:
    """Bound names to indices, free names to display form, hidden fields cleared.

    Two terms print the same way iff their canonical forms are equal.
    """
    from .pretty import ASCII, display

    def go(n: I.Tm, sc: tuple[str, ...]) -> I.Tm:
        if isinstance(n, (I.V, I.Const)):
            if isinstance(n, I.V) and n.name in sc:
                return I.Ix(sc[::-1].index(n.name))
            return I.V(display(n.name, ASCII))
        if isinstance(n, (I.Path, I.SEq)):
            return type(n)(None, go(n.lhs, sc), go(n.rhs, sc))
        b = I.binder_name(n)
        return I.map_children(n, lambda ch, k: go(ch, sc + (b,) if k else sc), annotations=False)

    return go(t, ())
