"""Syntax of the inner type theory that interpretations are emitted into.

Emitted terms use names (`V`). The checker converts them to de Bruijn
indices (`Ix`) first. Optional annotation fields (domains of lambdas, types
of pairs and identity types) help inference and are not printed.
"""
from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Callable, ClassVar

SORT_LEVEL = {"U0": 0, "Ty0": 0, "Set": 0, "U1": 1, "Set1": 1}
SORT_UP = {"U0": "U1", "Ty0": "Set1", "Set": "Set1", "U1": "Set1", "Set1": "Set1"}


def _name(default: str = "_"):
    return field(default=default, compare=False)


def _ann():
    return field(default=None, compare=False)


class Tm:
    _binds: ClassVar[dict[str, int]] = {}


@dataclass(frozen=True)
class Sort(Tm):
    tag: str


@dataclass(frozen=True)
class Const(Tm):
    name: str


@dataclass(frozen=True)
class V(Tm):
    name: str


@dataclass(frozen=True)
class Ix(Tm):
    ix: int


@dataclass(frozen=True)
class Pi(Tm):
    name: str = field(compare=False)
    dom: Tm
    cod: Tm
    implicit: bool = False
    _binds: ClassVar[dict[str, int]] = {"cod": 1}


@dataclass(frozen=True)
class Lam(Tm):
    name: str = field(compare=False)
    body: Tm
    dom: Tm | None = _ann()
    implicit: bool = False
    _binds: ClassVar[dict[str, int]] = {"body": 1}


@dataclass(frozen=True)
class App(Tm):
    fn: Tm
    arg: Tm
    implicit: bool = False


@dataclass(frozen=True)
class Sigma(Tm):
    name: str = field(compare=False)
    fst: Tm
    snd: Tm
    _binds: ClassVar[dict[str, int]] = {"snd": 1}


@dataclass(frozen=True)
class Pair(Tm):
    fst: Tm
    snd: Tm
    ty: Tm | None = _ann()


@dataclass(frozen=True)
class Proj1(Tm):
    t: Tm


@dataclass(frozen=True)
class Proj2(Tm):
    t: Tm


@dataclass(frozen=True)
class Unit(Tm):
    pass


@dataclass(frozen=True)
class TT(Tm):
    pass


@dataclass(frozen=True)
class Path(Tm):
    """Intensional identity `lhs = rhs` at type `ty`."""
    ty: Tm | None
    lhs: Tm
    rhs: Tm


@dataclass(frozen=True)
class SEq(Tm):
    """Strict, proof-irrelevant equality `lhs == rhs` at type `ty`."""
    ty: Tm | None
    lhs: Tm
    rhs: Tm


@dataclass(frozen=True)
class Refl(Tm):
    t: Tm | None = _ann()


@dataclass(frozen=True)
class Tr(Tm):
    motive: Tm
    path: Tm
    x: Tm


@dataclass(frozen=True)
class Ap(Tm):
    f: Tm
    path: Tm


@dataclass(frozen=True)
class Apd(Tm):
    f: Tm
    path: Tm


@dataclass(frozen=True)
class JIn(Tm):
    """Based path induction. motive : (y : A) -> x = y -> Type."""
    motive: Tm
    pr: Tm
    path: Tm


@dataclass(frozen=True)
class Funext(Tm):
    h: Tm
    f: Tm | None = _ann()
    g: Tm | None = _ann()


@dataclass(frozen=True)
class Happly(Tm):
    path: Tm
    arg: Tm


@dataclass(frozen=True)
class Inv(Tm):
    path: Tm


@dataclass(frozen=True)
class Comp(Tm):
    p: Tm
    q: Tm


def map_children(node: Tm, f: Callable[[Tm, int], Tm], annotations: bool = True) -> Tm:
    changes = {}
    for fl in fields(node):
        v = getattr(node, fl.name)
        if isinstance(v, Tm):
            if not annotations and not fl.compare:
                changes[fl.name] = None
                continue
            nv = f(v, node._binds.get(fl.name, 0))
            if nv is not v:
                changes[fl.name] = nv
    if not changes:
        return node
    vals = {fl.name: getattr(node, fl.name) for fl in fields(node)}
    vals.update(changes)
    return type(node)(**vals)


def children(node: Tm):
    for fl in fields(node):
        v = getattr(node, fl.name)
        if isinstance(v, Tm):
            yield v, node._binds.get(fl.name, 0)


def binder_name(node: Tm) -> str | None:
    return getattr(node, "name", None) if node._binds else None


def free_names(t: Tm) -> set[str]:
    out: set[str] = set()

    def go(n: Tm, bound: frozenset[str]) -> None:
        if isinstance(n, V):
            if n.name not in bound:
                out.add(n.name)
            return
        b = binder_name(n)
        for ch, k in children(n):
            go(ch, bound | {b} if k and b is not None else bound)

    go(t, frozenset())
    return out


def erase(t: Tm) -> Tm:
    """Drop annotations, which the printer does not show."""
    return map_children(t, lambda ch, _k: erase(ch), annotations=False)


# definitions and emitted units


@dataclass(frozen=True)
class Param:
    name: str
    ty: Tm
    fields: tuple[str, ...] | None = None  # display as a tuple pattern of these names


@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple[Param, ...]
    result: Tm
    body: Tm | None  # None for a postulate

    def full_type(self) -> Tm:
        t = self.result
        for p in reversed(self.params):
            t = Pi(p.name, p.ty, t)
        return t

    def full_body(self) -> Tm | None:
        if self.body is None:
            return None
        t = self.body
        for p in reversed(self.params):
            t = Lam(p.name, t, p.ty)
        return t


@dataclass(frozen=True)
class EmitUnit:
    signature: str
    profile: str
    source_hash: str
    decls: tuple[Definition, ...]

    def lookup(self, name: str) -> Definition:
        for d in self.decls:
            if d.name == name:
                return d
        raise KeyError(name)
