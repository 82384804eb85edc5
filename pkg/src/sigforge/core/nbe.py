"""Normalization by evaluation for the core, with profile-dependent rules.

Values use de Bruijn levels. Eliminations that a profile does not compute
are kept as neutrals over a stuck head, so readback is total.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..profile import Profile
from . import syntax as C
from .subst import mentions, unshift


@dataclass(frozen=True)
class Rules:
    pi_beta: bool
    sg_beta: bool
    pis_beta: bool
    jl_beta: bool
    pi_eta: bool
    sg_eta: bool
    pis_eta: bool
    pie_eta: bool


@lru_cache(maxsize=None)
def rules_for(profile: Profile) -> Rules:
    strict = profile in (Profile.FQII, Profile.HIIT_STRICT)
    hs = profile is Profile.HIIT_STRICT
    return Rules(
        pi_beta=strict,
        sg_beta=hs,
        pis_beta=hs,
        jl_beta=profile is Profile.HIIT_WEAK,
        pi_eta=strict,
        sg_eta=hs,
        pis_eta=hs,
        pie_eta=profile is not Profile.SIMPLE,
    )


class Val:
    pass


@dataclass(frozen=True)
class Clo:
    env: tuple
    body: C.Node


@dataclass(frozen=True)
class VIota(Val):
    pass


@dataclass(frozen=True)
class VSArr(Val):
    cod: Val


@dataclass(frozen=True)
class VU(Val):
    pass


@dataclass(frozen=True)
class VEl(Val):
    a: Val


@dataclass(frozen=True)
class VPi(Val):
    name: str
    a: Val
    b: Clo


@dataclass(frozen=True)
class VPiExt(Val):
    name: str
    ix: C.ExtType
    b: Clo


@dataclass(frozen=True)
class VIdL(Val):
    A: Val
    t: Val
    u: Val


@dataclass(frozen=True)
class VIDL(Val):
    A: Val
    t: Val
    u: Val


@dataclass(frozen=True)
class VExtT(Val):
    ix: C.ExtType


@dataclass(frozen=True)
class VLam(Val):
    name: str
    a: Val
    body: Clo


@dataclass(frozen=True)
class VLamE(Val):
    name: str
    ix: C.ExtType
    body: Clo


@dataclass(frozen=True)
class VLamS(Val):
    name: str
    ix: C.ExtType
    body: Clo


@dataclass(frozen=True)
class VTop(Val):
    pass


@dataclass(frozen=True)
class VTt(Val):
    pass


@dataclass(frozen=True)
class VSg(Val):
    name: str
    a: Val
    b: Clo


@dataclass(frozen=True)
class VPair(Val):
    a: Val
    b: Clo
    fst: Val
    snd: Val


@dataclass(frozen=True)
class VIdS(Val):
    a: Val
    t: Val
    u: Val


@dataclass(frozen=True)
class VRefl(Val):
    A: Val
    t: Val


@dataclass(frozen=True)
class VReflL(Val):
    A: Val
    t: Val


@dataclass(frozen=True)
class VPiS(Val):
    name: str
    ix: C.ExtType
    b: Clo


# neutral heads and spine frames


@dataclass(frozen=True)
class HVar:
    level: int


@dataclass(frozen=True)
class HConst:
    name: str


@dataclass(frozen=True)
class HStuck:
    val: Val


@dataclass(frozen=True)
class FApp:
    arg: Val


@dataclass(frozen=True)
class FAppE:
    arg: Val


@dataclass(frozen=True)
class FAppS:
    arg: Val


@dataclass(frozen=True)
class FEApp:
    arg: Val


@dataclass(frozen=True)
class FProj1:
    pass


@dataclass(frozen=True)
class FProj2:
    pass


@dataclass(frozen=True)
class FJ:
    large: bool
    x: str
    p: str
    motive: Clo
    pr: Val


@dataclass(frozen=True)
class VNe(Val):
    head: object
    spine: tuple = ()


def var(level: int) -> VNe:
    return VNe(HVar(level))


class NbE:
    def __init__(self, profile: Profile):
        self.profile = profile
        self.rules = rules_for(profile)

    # evaluation

    def apply(self, clo: Clo, *args: Val) -> Val:
        return self.eval(clo.body, clo.env + args)

    def _elim(self, head: Val, frame) -> Val:
        if isinstance(head, VNe):
            return VNe(head.head, head.spine + (frame,))
        return VNe(HStuck(head), (frame,))

    def vapp(self, f: Val, a: Val) -> Val:
        if isinstance(f, VLam) and self.rules.pi_beta:
            return self.apply(f.body, a)
        return self._elim(f, FApp(a))

    def vappe(self, f: Val, a: Val) -> Val:
        if isinstance(f, VLamE):
            return self.apply(f.body, a)
        return self._elim(f, FAppE(a))

    def vapps(self, f: Val, a: Val) -> Val:
        if isinstance(f, VLamS) and self.rules.pis_beta:
            return self.apply(f.body, a)
        return self._elim(f, FAppS(a))

    def vproj1(self, t: Val) -> Val:
        if isinstance(t, VPair) and self.rules.sg_beta:
            return t.fst
        return self._elim(t, FProj1())

    def vproj2(self, t: Val) -> Val:
        if isinstance(t, VPair) and self.rules.sg_beta:
            return t.snd
        return self._elim(t, FProj2())

    def vj(self, large: bool, x: str, p: str, motive: Clo, pr: Val, path: Val) -> Val:
        if large and isinstance(path, VReflL) and self.rules.jl_beta:
            return pr
        return self._elim(path, FJ(large, x, p, motive, pr))

    def eval(self, t: C.Node, env: tuple) -> Val:
        ev = self.eval
        match t:
            case C.Var(ix):
                return env[-1 - ix]
            case C.App(f, a):
                return self.vapp(ev(f, env), ev(a, env))
            case C.AppE(f, a):
                return self.vappe(ev(f, env), ev(a, env))
            case C.AppS(f, a):
                return self.vapps(ev(f, env), ev(a, env))
            case C.EApp(f, a):
                return self._elim(ev(f, env), FEApp(ev(a, env)))
            case C.EConst(name):
                return VNe(HConst(name))
            case C.Proj1(x):
                return self.vproj1(ev(x, env))
            case C.Proj2(x):
                return self.vproj2(ev(x, env))
            case C.Lam(a, body, name):
                return VLam(name, ev(a, env), Clo(env, body))
            case C.LamE(ix, body, name):
                return VLamE(name, ix, Clo(env, body))
            case C.LamS(ix, body, name):
                return VLamS(name, ix, Clo(env, body))
            case C.Top():
                return VTop()
            case C.Tt():
                return VTt()
            case C.Sg(a, b, name):
                return VSg(name, ev(a, env), Clo(env, b))
            case C.Pair(a, b, x, y):
                return VPair(ev(a, env), Clo(env, b), ev(x, env), ev(y, env))
            case C.IdS(a, x, y):
                return VIdS(ev(a, env), ev(x, env), ev(y, env))
            case C.Refl(A, x):
                return VRefl(ev(A, env), ev(x, env))
            case C.ReflL(A, x):
                return VReflL(ev(A, env), ev(x, env))
            case C.PiS(ix, b, name):
                return VPiS(name, ix, Clo(env, b))
            case C.JS(motive, pr, path, x, p):
                return self.vj(False, x, p, Clo(env, motive), ev(pr, env), ev(path, env))
            case C.JL(motive, pr, path, x, p):
                return self.vj(True, x, p, Clo(env, motive), ev(pr, env), ev(path, env))
            case C.TIota():
                return VIota()
            case C.TSArr(cod):
                return VSArr(ev(cod, env))
            case C.TU():
                return VU()
            case C.TEl(a):
                return VEl(ev(a, env))
            case C.TPi(a, b, name):
                return VPi(name, ev(a, env), Clo(env, b))
            case C.TPiExt(ix, b, name):
                return VPiExt(name, ix, Clo(env, b))
            case C.TIdL(A, x, y):
                return VIdL(ev(A, env), ev(x, env), ev(y, env))
            case C.TIDL(A, x, y):
                return VIDL(ev(A, env), ev(x, env), ev(y, env))
            case C.TExt(ix):
                return VExtT(ix)
        raise TypeError(f"cannot evaluate {t!r}")

    # readback

    def quote(self, v: Val, n: int) -> C.Node:
        q = self.quote
        r = self.rules
        match v:
            case VNe(head, spine):
                match head:
                    case HVar(level):
                        acc: C.Node = C.Var(n - 1 - level)
                    case HConst(name):
                        acc = C.EConst(name)
                    case HStuck(val):
                        acc = q(val, n)
                for fr in spine:
                    acc = self._quote_frame(acc, fr, n)
                return acc
            case VLam(name, a, body):
                b = q(self.apply(body, var(n)), n + 1)
                if r.pi_eta and isinstance(b, C.App) and b.arg == C.Var(0) and not mentions(b.fn, 0):
                    return unshift(b.fn)
                return C.Lam(q(a, n), b, name)
            case VLamE(name, ix, body):
                b = q(self.apply(body, var(n)), n + 1)
                if r.pie_eta and isinstance(b, C.AppE) and b.arg == C.Var(0) and not mentions(b.fn, 0):
                    return unshift(b.fn)
                return C.LamE(ix, b, name)
            case VLamS(name, ix, body):
                b = q(self.apply(body, var(n)), n + 1)
                if r.pis_eta and isinstance(b, C.AppS) and b.arg == C.Var(0) and not mentions(b.fn, 0):
                    return unshift(b.fn)
                return C.LamS(ix, b, name)
            case VPair(a, b, x, y):
                qx, qy = q(x, n), q(y, n)
                if r.sg_eta and isinstance(qx, C.Proj1) and isinstance(qy, C.Proj2) and qx.t == qy.t:
                    return qx.t
                return C.Pair(q(a, n), q(self.apply(b, var(n)), n + 1), qx, qy)
            case VTop():
                return C.Top()
            case VTt():
                return C.Tt()
            case VSg(name, a, b):
                return C.Sg(q(a, n), q(self.apply(b, var(n)), n + 1), name)
            case VIdS(a, x, y):
                return C.IdS(q(a, n), q(x, n), q(y, n))
            case VRefl(A, x):
                return C.Refl(q(A, n), q(x, n))
            case VReflL(A, x):
                return C.ReflL(q(A, n), q(x, n))
            case VPiS(name, ix, b):
                return C.PiS(ix, q(self.apply(b, var(n)), n + 1), name)
            case VIota():
                return C.TIota()
            case VSArr(cod):
                return C.TSArr(q(cod, n))
            case VU():
                return C.TU()
            case VEl(a):
                return C.TEl(q(a, n))
            case VPi(name, a, b):
                return C.TPi(q(a, n), q(self.apply(b, var(n)), n + 1), name)
            case VPiExt(name, ix, b):
                return C.TPiExt(ix, q(self.apply(b, var(n)), n + 1), name)
            case VIdL(A, x, y):
                return C.TIdL(q(A, n), q(x, n), q(y, n))
            case VIDL(A, x, y):
                return C.TIDL(q(A, n), q(x, n), q(y, n))
            case VExtT(ix):
                return C.TExt(ix)
        raise TypeError(f"cannot quote {v!r}")

    def _quote_frame(self, acc: C.Node, fr, n: int) -> C.Node:
        match fr:
            case FApp(a):
                return C.App(acc, self.quote(a, n))
            case FAppE(a):
                return C.AppE(acc, self.quote(a, n))
            case FAppS(a):
                return C.AppS(acc, self.quote(a, n))
            case FEApp(a):
                return C.EApp(acc, self.quote(a, n))
            case FProj1():
                return C.Proj1(acc)
            case FProj2():
                return C.Proj2(acc)
            case FJ(large, x, p, motive, pr):
                m = self.quote(self.apply(motive, var(n), var(n + 1)), n + 2)
                cls = C.JL if large else C.JS
                return cls(m, self.quote(pr, n), acc, x, p)
        raise TypeError(fr)

    # entry points

    def env(self, n: int) -> tuple:
        return tuple(var(i) for i in range(n))

    def normalize(self, n: int, t: C.Node) -> C.Node:
        return self.quote(self.eval(t, self.env(n)), n)

    def conv(self, n: int, t: C.Node, u: C.Node) -> bool:
        return t == u or self.normalize(n, t) == self.normalize(n, u)


def normalize(profile: Profile, n: int, t: C.Node) -> C.Node:
    return NbE(profile).normalize(n, t)


def conv(profile: Profile, n: int, t: C.Node, u: C.Node) -> bool:
    return NbE(profile).conv(n, t, u)
