"""Recursors and eliminators of simple signatures, by evaluation.

A term is flattened once into postorder arrays (shared subterms are
visited once), then every node is evaluated by the kernel in order, so
no host recursion depth is ever involved.
"""
from __future__ import annotations

import os
from array import array
from dataclasses import dataclass

from ..diagnostics import fail
from ..elab import Signature
from . import _kernel_py
from .algebra import AlgebraSpec, DispAlgebraSpec, Expr
from .terms import TermValue, arities

try:
    if os.environ.get("SIGFORGE_PURE") == "1":
        raise ImportError("pure kernel requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

kernel = _compiled or _kernel_py
MAX_NODES = 10 ** 6


def implementations() -> list:
    """Every kernel available in this installation, compiled first."""
    return [k for k in (_compiled, _kernel_py) if k is not None]


@dataclass(frozen=True)
class Flat:
    heads: array
    arg_ptr: array
    args: array
    root: int

    def __len__(self) -> int:
        return len(self.heads)


def flatten(t: TermValue, max_nodes: int = MAX_NODES) -> Flat:
    heads, arg_ptr, args = array("q"), array("q", [0]), array("q")
    index: dict[int, int] = {}
    stack: list[tuple[TermValue, bool]] = [(t, False)]
    while stack:
        node, ready = stack.pop()
        if id(node) in index:
            continue
        if not ready:
            stack.append((node, True))
            stack.extend((a, False) for a in reversed(node.args) if id(a) not in index)
            continue
        if len(heads) >= max_nodes:
            raise fail("E_OVERFLOW", f"term has more than {max_nodes} distinct nodes")
        for a in node.args:
            args.append(index[id(a)])
        heads.append(node.head)
        arg_ptr.append(len(args))
        index[id(node)] = len(heads) - 1
    return Flat(heads, arg_ptr, args, index[id(t)])


def _program(exprs: tuple[Expr, ...]) -> tuple[array, array, int]:
    prog, ptr = array("q"), array("q", [0])
    for e in exprs:
        prog.extend(e.code)
        ptr.append(len(prog))
    return prog, ptr, max((e.stack for e in exprs), default=1)


def _run(flat: Flat, exprs: tuple[Expr, ...], xs, ihs, impl) -> array:
    prog, ptr, depth = _program(exprs)
    out = array("q", bytes(8 * len(flat)))
    bad = (impl or kernel).run(flat.heads, flat.arg_ptr, flat.args, prog, ptr, depth, xs, ihs, out)
    if bad >= 0:
        raise fail("E_OVERFLOW", f"64-bit overflow evaluating {exprs[flat.heads[bad]].source!r}")
    return out


def _check_arity(sig: Signature, exprs: tuple[Expr, ...]) -> None:
    if len(exprs) != len(arities(sig)):
        raise fail("E_ARITY", "algebra does not match the signature")


def recursor_values(sig: Signature, alg: AlgebraSpec, flat: Flat, impl=None) -> array:
    _check_arity(sig, alg.exprs)
    return _run(flat, alg.exprs, None, None, impl)


def eval_recursor(sig: Signature, alg: AlgebraSpec, t: TermValue, impl=None) -> int:
    flat = flatten(t)
    return recursor_values(sig, alg, flat, impl)[flat.root]


def eval_eliminator(sig: Signature, dalg: DispAlgebraSpec, t: TermValue, impl=None) -> int:
    _check_arity(sig, dalg.methods)
    flat = flatten(t)
    xs = None
    if dalg.companion is not None:
        xs = recursor_values(sig, dalg.companion, flat, impl)
    else:
        xs = array("q", bytes(8 * len(flat)))
    return _run(flat, dalg.methods, xs, None, impl)[flat.root]


def apply_expr(e: Expr, xs: list[int], ihs: list[int] | None = None, impl=None) -> int:
    """Evaluate one expression on explicit argument values."""
    k = len(xs)
    args = array("q", range(k))
    out = array("q", [0])
    prog, ptr = array("q", e.code), array("q", [0, len(e.code)])
    bad = (impl or kernel).run(array("q", [0]), array("q", [0, k]), args, prog, ptr, e.stack,
                               array("q", xs), array("q", ihs or [0] * k), out)
    if bad >= 0:
        raise fail("E_OVERFLOW", f"64-bit overflow evaluating {e.source!r}")
    return out[0]
