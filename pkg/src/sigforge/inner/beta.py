"""Named capture-avoiding substitution and β/projection normalization.

Emitted telescopes are built compositionally, which leaves administrative
redexes such as `(\\p -> ap f p) e`. `beta` contracts them so the printed
output reads like hand-written types.
"""
from __future__ import annotations

from dataclasses import replace

from . import syntax as I


def _fresh(base: str, avoid: set[str]) -> str:
    k = 2
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def subst(t: I.Tm, sigma: dict[str, I.Tm]) -> I.Tm:
    if not sigma:
        return t
    fv: set[str] = set()
    for v in sigma.values():
        fv |= I.free_names(v)
    return _subst(t, sigma, fv)


def _subst(t: I.Tm, sigma: dict[str, I.Tm], fv: set[str]) -> I.Tm:
    if isinstance(t, I.V):
        return sigma.get(t.name, t)
    b = I.binder_name(t)
    if b is None or b == "_":
        return I.map_children(t, lambda ch, k: _subst(ch, sigma, fv))
    inner = {k: v for k, v in sigma.items() if k != b}
    if b in fv:
        nb = _fresh(b, fv | I.free_names(t) | set(sigma))
        inner[b] = I.V(nb)
        t = replace(t, name=nb)
        fv2 = fv | {nb}
    else:
        fv2 = fv
    return I.map_children(t, lambda ch, k: _subst(ch, inner if k else sigma, fv2 if k else fv))


def beta(t: I.Tm) -> I.Tm:
    t = I.map_children(t, lambda ch, k: beta(ch))
    match t:
        case I.App(I.Lam(name, body), arg):
            return beta(subst(body, {name: arg}))
        case I.Proj1(I.Pair(x, _)):
            return x
        case I.Proj2(I.Pair(_, y)):
            return y
    return t
