from __future__ import annotations

from dataclasses import dataclass

from ..diagnostics import Span, fail

KEYWORDS = frozenset({
    "profile", "signature", "where", "extern", "Type",
    "iota", "U", "El", "Id", "ID", "refl", "J", "Top", "tt", "Sg",
    "proj1", "proj2", "reflect",
})

SYMBOLS = ("->", "*>", "~>", "(", ")", ":", ",", ".")
UNICODE = {"→": "->", "ι": "iota"}


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "kw", "sym" or "eof"
    text: str
    line: int
    col: int
    bol: bool  # first token on its line

    @property
    def span(self) -> Span:
        return Span(self.line, self.col, self.line, self.col + len(self.text))


def _ident_char(c: str) -> bool:
    return c.isalnum() or c in "_'" or (ord(c) > 127 and c not in UNICODE)


def tokenize(src: str, file: str = "<input>") -> list[Token]:
    toks: list[Token] = []
    line, col, i = 1, 1, 0
    bol = True
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line, col, bol = line + 1, 1, True
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("--", i):
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c in UNICODE:
            text = UNICODE[c]
            toks.append(Token("kw" if text in KEYWORDS else "sym", text, line, col, bol))
            i += 1
            col += 1
            bol = False
            continue
        sym = next((s for s in SYMBOLS if src.startswith(s, i)), None)
        if sym is not None:
            toks.append(Token("sym", sym, line, col, bol))
            i += len(sym)
            col += len(sym)
            bol = False
            continue
        if _ident_char(c) and c != "'":
            j = i
            while j < n and (_ident_char(src[j]) or (
                    src[j] == "-" and j + 1 < n and src[j + 1].isalnum())):
                j += 1
            text = src[i:j]
            toks.append(Token("kw" if text in KEYWORDS else "ident", text, line, col, bol))
            col += j - i
            i = j
            bol = False
            continue
        raise fail("E_LEX", f"unexpected character {c!r}", Span(line, col, line, col + 1), file=file)
    toks.append(Token("eof", "", line, col, True))
    return toks
