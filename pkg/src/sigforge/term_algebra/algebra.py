"""Integer algebras over simple signatures, given as JSON.

Each entry gets an arithmetic expression over its arguments: integer
literals, `x0 .. x(k-1)`, `ih0 .. ih(k-1)` (displayed algebras only),
`+ - *`, unary minus, `min(a, b)` and `max(a, b)`. Expressions compile to
a small postfix bytecode run by the evaluation kernel.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from ..diagnostics import fail
from ..elab import Signature
from .terms import arities

CONST, X, IH, ADD, SUB, MUL, MIN, MAX, NEG = range(9)
INT64_MIN, INT64_MAX = -(2 ** 63), 2 ** 63 - 1

_TOKEN = re.compile(r"\s*(?:(\d+)|(ih\d+|x\d+|min|max)|([-+*(),]))")


@dataclass(frozen=True)
class Expr:
    source: str
    code: tuple[int, ...]  # (op, arg) pairs, flattened
    stack: int  # stack slots needed
    uses_ih: bool


def _tokens(src: str) -> list[str]:
    out, pos = [], 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise fail("E_ARITY", f"bad expression {src!r} at column {pos + 1}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Compiler:
    def __init__(self, src: str, arity: int, allow_ih: bool):
        self.src = src
        self.toks = _tokens(src)
        self.i = 0
        self.arity = arity
        self.allow_ih = allow_ih
        self.code: list[int] = []
        self.depth = 0
        self.max_depth = 0
        self.uses_ih = False

    def err(self, msg: str):
        return fail("E_ARITY", f"{msg} in expression {self.src!r}")

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise self.err(f"expected {want or 'a term'}")
        self.i += 1
        return t

    def emit(self, op: int, arg: int = 0, push: int = 0) -> None:
        self.code += [op, arg]
        self.depth += push
        self.max_depth = max(self.max_depth, self.depth)

    def compile(self) -> Expr:
        self.sum()
        if self.peek() is not None:
            raise self.err(f"unexpected {self.peek()!r}")
        return Expr(self.src, tuple(self.code), self.max_depth, self.uses_ih)

    def sum(self) -> None:
        self.product()
        while self.peek() in ("+", "-"):
            op = ADD if self.take() == "+" else SUB
            self.product()
            self.emit(op, push=-1)

    def product(self) -> None:
        self.unary()
        while self.peek() == "*":
            self.take()
            self.unary()
            self.emit(MUL, push=-1)

    def unary(self) -> None:
        if self.peek() == "-":
            self.take()
            self.unary()
            self.emit(NEG)
            return
        self.atom()

    def atom(self) -> None:
        t = self.take()
        if t.isdigit():
            v = int(t)
            if v > INT64_MAX:
                raise fail("E_OVERFLOW", f"literal {t} does not fit in 64 bits")
            self.emit(CONST, v, push=1)
        elif t in ("min", "max"):
            self.take("(")
            self.sum()
            self.take(",")
            self.sum()
            self.take(")")
            self.emit(MIN if t == "min" else MAX, push=-1)
        elif t == "(":
            self.sum()
            self.take(")")
        elif t.startswith("ih"):
            if not self.allow_ih:
                raise self.err(f"{t} is only available in displayed algebra methods")
            j = int(t[2:])
            if j >= self.arity:
                raise self.err(f"{t} out of range for an entry with {self.arity} arguments")
            self.uses_ih = True
            self.emit(IH, j, push=1)
        elif t.startswith("x"):
            j = int(t[1:])
            if j >= self.arity:
                raise self.err(f"{t} out of range for an entry with {self.arity} arguments")
            self.emit(X, j, push=1)
        else:
            raise self.err(f"unexpected {t!r}")


def compile_expr(src: str, arity: int, allow_ih: bool = False) -> Expr:
    return _Compiler(str(src), arity, allow_ih).compile()


def _compile_table(sig: Signature, table, what: str, allow_ih: bool) -> tuple[Expr, ...]:
    if not isinstance(table, dict):
        raise fail("E_ARITY", f"{what} must map entry names to expressions")
    names = [n for n, _ in sig.entries]
    missing = [n for n in names if n not in table]
    extra = [n for n in table if n not in names]
    if missing or extra:
        parts = []
        if missing:
            parts.append("missing " + ", ".join(missing))
        if extra:
            parts.append("unknown " + ", ".join(extra))
        raise fail("E_ARITY", f"{what} does not match signature {sig.name}: " + "; ".join(parts))
    return tuple(compile_expr(table[n], k, allow_ih) for n, k in zip(names, arities(sig)))


def _check_carrier(doc: dict) -> None:
    if doc.get("carrier", "int64") != "int64":
        raise fail("E_ARITY", f"unsupported carrier {doc.get('carrier')!r}; only int64")


@dataclass(frozen=True)
class AlgebraSpec:
    exprs: tuple[Expr, ...]

    @classmethod
    def from_json(cls, sig: Signature, doc) -> "AlgebraSpec":
        if not isinstance(doc, dict) or "ops" not in doc:
            raise fail("E_ARITY", "algebra document needs an \"ops\" table")
        _check_carrier(doc)
        return cls(_compile_table(sig, doc["ops"], "ops", False))

    @classmethod
    def constant(cls, sig: Signature, value: int = 0) -> "AlgebraSpec":
        return cls(tuple(compile_expr(str(value), k) for k in arities(sig)))


@dataclass(frozen=True)
class DispAlgebraSpec:
    """Methods see `xi`, the companion algebra's value of argument i, and
    `ihi`, the eliminator's value of argument i."""
    companion: AlgebraSpec | None
    methods: tuple[Expr, ...]

    @classmethod
    def from_json(cls, sig: Signature, doc) -> "DispAlgebraSpec":
        if not isinstance(doc, dict) or "methods" not in doc:
            raise fail("E_ARITY", "displayed algebra document needs a \"methods\" table")
        _check_carrier(doc)
        comp = None
        if "algebra" in doc:
            comp = AlgebraSpec(_compile_table(sig, doc["algebra"], "algebra", False))
        methods = _compile_table(sig, doc["methods"], "methods", True)
        if comp is None and any(X in m.code[0::2] for m in methods):
            raise fail("E_ARITY", "methods use x arguments but no companion \"algebra\" is given")
        return cls(comp, methods)


def load_json(path: str | Path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise fail("E_IO", f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise fail("E_ARITY", f"{path}: invalid JSON ({e.msg} at line {e.lineno})")
