"""Raw surface syntax. Spans are excluded from equality."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import Span
from ..profile import Profile

_NOSPAN = Span(0, 0)


def _span():
    return field(default=_NOSPAN, compare=False, repr=False)


class RawExpr:
    span: Span


@dataclass(frozen=True)
class Var(RawExpr):
    name: str
    span: Span = _span()


@dataclass(frozen=True)
class Iota(RawExpr):
    span: Span = _span()


@dataclass(frozen=True)
class SArr(RawExpr):
    """`iota -> cod` in the simple profile."""
    cod: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class U(RawExpr):
    span: Span = _span()


@dataclass(frozen=True)
class El(RawExpr):
    t: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class PiInt(RawExpr):
    binder: str
    dom: RawExpr
    cod: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class PiExt(RawExpr):
    """Large external product `(i : Ix) *> B`."""
    binder: str
    dom: RawExpr
    cod: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class PiSmallExt(RawExpr):
    """Small external product `(i : Ix) ~> b`, a code in U."""
    binder: str
    dom: RawExpr
    cod: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Id(RawExpr):
    """Ambiguous identity; the elaborator picks the small or large former."""
    lhs: RawExpr
    rhs: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class IDLarge(RawExpr):
    lhs: RawExpr
    rhs: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Refl(RawExpr):
    span: Span = _span()


@dataclass(frozen=True)
class J(RawExpr):
    """`J (x p. P) pr q`: motive binders, motive, refl case, path."""
    x: str
    p: str
    motive: RawExpr
    pr: RawExpr
    path: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Top(RawExpr):
    span: Span = _span()


@dataclass(frozen=True)
class Tt(RawExpr):
    span: Span = _span()


@dataclass(frozen=True)
class Sg(RawExpr):
    binder: str
    fst: RawExpr
    snd: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Pair(RawExpr):
    fst: RawExpr
    snd: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Proj1(RawExpr):
    t: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Proj2(RawExpr):
    t: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class App(RawExpr):
    fn: RawExpr
    arg: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class Reflect(RawExpr):
    """Equality reflection. Parsed so that it can be rejected with a precise code."""
    t: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class ExternDecl:
    name: str
    type: RawExpr | None  # None means the declaration is `extern X : Type`
    span: Span = _span()


@dataclass(frozen=True)
class Entry:
    name: str
    type: RawExpr
    span: Span = _span()


@dataclass(frozen=True)
class SigFile:
    profile: Profile
    name: str
    externs: tuple[ExternDecl, ...]
    entries: tuple[Entry, ...]
    file: str = field(default="<input>", compare=False)
