"""De Bruijn core syntax of signatures.

Binder names are kept for printing only and are ignored by equality, so
structural equality is alpha-equivalence. Each node class lists in `_binds`
which of its fields sit under extra binders.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from functools import cache
from typing import Callable, ClassVar


def _name(default: str = "_"):
    return field(default=default, compare=False)


# external (metatheoretic) types


class ExtType:
    pass


@dataclass(frozen=True)
class ExtBase(ExtType):
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ExtArr(ExtType):
    dom: ExtType
    cod: ExtType

    def __str__(self) -> str:
        d = f"({self.dom})" if isinstance(self.dom, ExtArr) else str(self.dom)
        return f"{d} -> {self.cod}"


class Node:
    _binds: ClassVar[dict[str, int]] = {}


class Ty(Node):
    pass


class Tm(Node):
    pass


# types


@dataclass(frozen=True)
class TIota(Ty):
    pass


@dataclass(frozen=True)
class TSArr(Ty):
    cod: Ty


@dataclass(frozen=True)
class TU(Ty):
    pass


@dataclass(frozen=True)
class TEl(Ty):
    a: Tm


@dataclass(frozen=True)
class TPi(Ty):
    a: Tm
    b: Ty
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"b": 1}


@dataclass(frozen=True)
class TPiExt(Ty):
    ix: ExtType
    b: Ty
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"b": 1}


@dataclass(frozen=True)
class TIdL(Ty):
    """Large strict identity of the quotient profile."""
    A: Ty
    t: Tm
    u: Tm


@dataclass(frozen=True)
class TIDL(Ty):
    """Large weak identity `ID` with a strictly computing J."""
    A: Ty
    t: Tm
    u: Tm


@dataclass(frozen=True)
class TExt(Ty):
    """Type of an external variable or constant."""
    ix: ExtType


# terms


@dataclass(frozen=True)
class Var(Tm):
    ix: int


@dataclass(frozen=True)
class App(Tm):
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class Lam(Tm):
    a: Tm
    body: Tm
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"body": 1}


@dataclass(frozen=True)
class AppE(Tm):
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class LamE(Tm):
    ix: ExtType
    body: Tm
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"body": 1}


@dataclass(frozen=True)
class EConst(Tm):
    name: str


@dataclass(frozen=True)
class EApp(Tm):
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class Top(Tm):
    pass


@dataclass(frozen=True)
class Tt(Tm):
    pass


@dataclass(frozen=True)
class Sg(Tm):
    a: Tm
    b: Tm
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"b": 1}


@dataclass(frozen=True)
class Pair(Tm):
    a: Tm
    b: Tm
    fst: Tm
    snd: Tm
    _binds: ClassVar[dict[str, int]] = {"b": 1}


@dataclass(frozen=True)
class Proj1(Tm):
    t: Tm


@dataclass(frozen=True)
class Proj2(Tm):
    t: Tm


@dataclass(frozen=True)
class IdS(Tm):
    a: Tm
    t: Tm
    u: Tm


@dataclass(frozen=True)
class Refl(Tm):
    """Reflexivity for small Id (hiit profiles) or large Id (quotient profile)."""
    A: Ty
    t: Tm


@dataclass(frozen=True)
class ReflL(Tm):
    A: Ty
    t: Tm


@dataclass(frozen=True)
class PiS(Tm):
    ix: ExtType
    b: Tm
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"b": 1}


@dataclass(frozen=True)
class AppS(Tm):
    fn: Tm
    arg: Tm


@dataclass(frozen=True)
class LamS(Tm):
    ix: ExtType
    body: Tm
    name: str = _name()
    _binds: ClassVar[dict[str, int]] = {"body": 1}


@dataclass(frozen=True)
class JS(Tm):
    """J on small Id. No computation rule."""
    motive: Ty
    pr: Tm
    path: Tm
    x: str = _name("x")
    p: str = _name("p")
    _binds: ClassVar[dict[str, int]] = {"motive": 2}


@dataclass(frozen=True)
class JL(Tm):
    """J on large ID. Computes on ReflL."""
    motive: Ty
    pr: Tm
    path: Tm
    x: str = _name("x")
    p: str = _name("p")
    _binds: ClassVar[dict[str, int]] = {"motive": 2}


@cache
def _names(cls: type) -> tuple[str, ...]:
    return tuple(fl.name for fl in fields(cls))


def map_children(node: Node, f: Callable[[Node, int], Node]) -> Node:
    """Rebuild `node` applying f(child, extra_binders) to every syntactic child."""
    names = _names(type(node))
    vals = [getattr(node, n) for n in names]
    changed = False
    for i, v in enumerate(vals):
        if isinstance(v, Node):
            nv = f(v, node._binds.get(names[i], 0))
            if nv is not v:
                vals[i] = nv
                changed = True
    return type(node)(*vals) if changed else node


def children(node: Node):
    for n in _names(type(node)):
        v = getattr(node, n)
        if isinstance(v, Node):
            yield v, node._binds.get(n, 0)


def size(node: Node) -> int:
    return 1 + sum(size(c) for c, _ in children(node))
