from __future__ import annotations

from ..diagnostics import Span, fail
from ..profile import Profile
from . import syntax as S
from .lexer import Token, tokenize

_ARROWS = ("->", "*>", "~>")


class Parser:
    def __init__(self, src: str, file: str = "<input>"):
        self.file = file
        self.toks = tokenize(src, file)
        self.pos = 0
        self.stop_col = 0  # tokens starting a line at or left of this column end the item

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at_end(self) -> bool:
        t = self.tok
        return t.kind == "eof" or (t.bol and t.col <= self.stop_col)

    def is_(self, text: str) -> bool:
        return not self.at_end() and self.tok.kind in ("sym", "kw") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.pos += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        t = tok or self.tok
        found = "end of item" if self.at_end() else repr(t.text)
        return fail("E_PARSE", f"{msg}, found {found}", t.span, file=self.file)

    def expect(self, text: str) -> Token:
        if not self.is_(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def ident(self) -> Token:
        if self.at_end() or self.tok.kind != "ident":
            raise self.error("expected identifier")
        return self.advance()

    # file level

    def parse_file(self) -> S.SigFile:
        t = self.tok
        if not (t.kind == "kw" and t.text == "profile"):
            raise fail("E_PROFILE_MISSING", "file must start with a `profile` declaration",
                       t.span, file=self.file)
        self.advance()
        self.stop_col = 0
        pt = self.tok
        prof = Profile.parse(pt.text) if pt.kind == "ident" and not pt.bol else None
        if prof is None:
            raise fail("E_PROFILE_MISSING", f"unknown or missing profile name {pt.text!r}",
                       pt.span, file=self.file)
        self.advance()
        externs: list[S.ExternDecl] = []
        while self.tok.kind == "kw" and self.tok.text == "extern":
            externs.append(self.parse_extern())
        self.stop_col = 0
        if not (self.tok.kind == "kw" and self.tok.text == "signature"):
            raise self.error("expected `signature`")
        self.advance()
        name = self.ident().text
        self.expect("where")
        entries: list[S.Entry] = []
        seen: set[str] = set()
        for e in externs:
            if e.name in seen:
                raise fail("E_DUPNAME", f"duplicate name {e.name!r}", e.span, file=self.file)
            seen.add(e.name)
        while self.tok.kind != "eof":
            head = self.tok
            if head.kind != "ident":
                raise self.error("expected an entry name")
            if not head.bol:
                raise self.error("entries must start on a new line")
            self.advance()
            self.stop_col = head.col
            self.expect(":")
            ty = self.expr()
            if not self.at_end():
                raise self.error("unexpected token")
            if head.text in seen:
                raise fail("E_DUPNAME", f"duplicate name {head.text!r}", head.span, file=self.file)
            seen.add(head.text)
            entries.append(S.Entry(head.text, ty, head.span))
            self.stop_col = 0
        return S.SigFile(prof, name, tuple(externs), tuple(entries), file=self.file)

    def parse_extern(self) -> S.ExternDecl:
        kw = self.advance()
        self.stop_col = kw.col
        name = self.ident()
        self.expect(":")
        if self.is_("Type"):
            self.advance()
            ty = None
        else:
            ty = self.expr()
        if not self.at_end():
            raise self.error("unexpected token")
        return S.ExternDecl(name.text, ty, name.span)

    # expressions

    def expr(self) -> S.RawExpr:
        start = self.tok
        if self.is_("(") and self._binder_group_ahead():
            self.advance()
            names = []
            while not self.at_end() and self.tok.kind == "ident":
                names.append(self.advance().text)
            self.expect(":")
            dom = self.expr()
            self.expect(")")
            arrow = self._arrow()
            cod = self.expr()
            for n in reversed(names):
                cod = self._pi(arrow, n, dom, cod, start.span)
            return cod
        lhs = self.app()
        if not self.at_end() and self.tok.text in _ARROWS and self.tok.kind == "sym":
            arrow = self.advance().text
            cod = self.expr()
            if arrow == "->" and isinstance(lhs, S.Iota):
                return S.SArr(cod, span=start.span)
            return self._pi(arrow, "_", lhs, cod, start.span)
        return lhs

    def _binder_group_ahead(self) -> bool:
        k = 1
        if self.peek(k).kind != "ident":
            return False
        while self.peek(k).kind == "ident":
            k += 1
        return self.peek(k).kind == "sym" and self.peek(k).text == ":"

    def _arrow(self) -> str:
        if self.at_end() or self.tok.text not in _ARROWS:
            raise self.error("expected an arrow")
        return self.advance().text

    @staticmethod
    def _pi(arrow: str, name: str, dom, cod, span: Span):
        cls = {"->": S.PiInt, "*>": S.PiExt, "~>": S.PiSmallExt}[arrow]
        return cls(name, dom, cod, span=span)

    def app(self) -> S.RawExpr:
        start = self.tok
        head = self.head()
        while self._atom_start():
            arg = self.atom()
            head = S.App(head, arg, span=start.span)
        return head

    def _atom_start(self) -> bool:
        if self.at_end():
            return False
        t = self.tok
        if t.kind == "ident":
            return True
        if t.kind == "kw" and t.text in ("iota", "U", "Top", "tt", "refl"):
            return True
        return t.kind == "sym" and t.text == "("

    def head(self) -> S.RawExpr:
        t = self.tok
        sp = t.span
        if t.kind == "kw":
            if t.text == "El":
                self.advance()
                return S.El(self.atom(), span=sp)
            if t.text in ("Id", "ID"):
                self.advance()
                a = self.atom()
                b = self.atom()
                return (S.Id if t.text == "Id" else S.IDLarge)(a, b, span=sp)
            if t.text == "proj1":
                self.advance()
                return S.Proj1(self.atom(), span=sp)
            if t.text == "proj2":
                self.advance()
                return S.Proj2(self.atom(), span=sp)
            if t.text == "reflect":
                self.advance()
                return S.Reflect(self.atom(), span=sp)
            if t.text == "J":
                self.advance()
                self.expect("(")
                x = self.ident().text
                p = self.ident().text
                self.expect(".")
                motive = self.expr()
                self.expect(")")
                pr = self.atom()
                path = self.atom()
                return S.J(x, p, motive, pr, path, span=sp)
            if t.text == "Sg":
                self.advance()
                self.expect("(")
                x = self.ident().text
                self.expect(":")
                a = self.expr()
                self.expect(")")
                b = self.atom()
                return S.Sg(x, a, b, span=sp)
        return self.atom()

    def atom(self) -> S.RawExpr:
        if self.at_end():
            raise self.error("expected an expression")
        t = self.tok
        sp = t.span
        if t.kind == "ident":
            self.advance()
            return S.Var(t.text, span=sp)
        if t.kind == "kw":
            simple = {"iota": S.Iota, "U": S.U, "Top": S.Top, "tt": S.Tt, "refl": S.Refl}
            if t.text in simple:
                self.advance()
                return simple[t.text](span=sp)
        if self.is_("("):
            self.advance()
            e = self.expr()
            if self.is_(","):
                self.advance()
                e2 = self.expr()
                self.expect(")")
                return S.Pair(e, e2, span=sp)
            self.expect(")")
            return e
        raise self.error("expected an expression")


def parse(src: str, file: str = "<input>") -> S.SigFile:
    return Parser(src, file).parse_file()


def parse_expr(src: str, file: str = "<input>") -> S.RawExpr:
    p = Parser(src, file)
    e = p.expr()
    if p.tok.kind != "eof":
        raise p.error("unexpected token")
    return e
