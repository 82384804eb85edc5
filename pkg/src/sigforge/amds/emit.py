"""Assembly of emitted units: algebras, morphisms, displayed algebras,
sections and the induction and recursion principles of a signature."""
from __future__ import annotations

from ..core import syntax as C
from ..core.check import CoreCtx
from ..elab import Signature
from ..inner import syntax as I
from ..inner.beta import beta
from ..inner.check import check_unit
from ..inner.pretty import field_path
from ..profile import Profile
from .interp import Carrier, Interp, Slot, ext_slot

WHAT = ("a", "m", "d", "s", "ind", "rec")
NEEDS = {"a": (), "m": ("a",), "d": ("a",), "s": ("a", "d"),
         "ind": ("a", "d", "s"), "rec": ("a", "m")}
CARRIER = "X"


def base_name(sig_name: str) -> str:
    if sig_name.endswith("Sig") and len(sig_name) > 3:
        return sig_name[:-3]
    return sig_name


def sigma_telescope(fields: list[tuple[str, I.Tm]]) -> I.Tm:
    """Right-nested Σ; a single field is its own type, no fields is ⊤."""
    if not fields:
        return I.Unit()
    if len(fields) == 1:
        return fields[0][1]
    (name, ty), rest = fields[0], fields[1:]
    return I.Sigma(name, ty, sigma_telescope(rest))


class Emitter:
    def __init__(self, sig: Signature):
        self.sig = sig
        self.profile = sig.profile
        self.simple = self.profile is Profile.SIMPLE
        self.base = base_name(sig.name)
        self.names = [n for n, _ in sig.entries]
        self.field_names = ([CARRIER] if self.simple else []) + self.names
        self.n = len(self.field_names)

    def dname(self, role: str) -> str:
        return self.base + role

    def _interp(self) -> Interp:
        it = Interp(self.profile)
        for f in self.field_names:
            it.reserve(f, f + "@0", f + "@1", f + "@M", f + "@D", f + "@S")
        it.reserve("gamma", "gamma@0", "gamma@1", "gamma@D", *(n for n, _ in self.sig.externs))
        return it

    def _run(self, it: Interp, slot_for, field_ty, role: str) -> list[tuple[str, I.Tm]]:
        """Walk the signature, building one telescope field per entry."""
        fields = []
        off = 1 if self.simple else 0
        ctx = CoreCtx(self.profile, (), self.sig.externs)
        env: tuple = ()
        for k, (name, A) in enumerate(self.sig.entries):
            fname = name + role
            fields.append((fname, field_ty(A, ctx, env, k + off)))
            env = env + (slot_for(k + off, I.V(fname)),)
            ctx = ctx.extend(name, A)
        return fields

    def _path(self, var: str, k: int) -> I.Tm:
        return field_path(I.V(var), k, self.n)

    # telescopes

    def alg(self) -> I.Tm:
        it = self._interp()
        if self.simple:
            it.carrier = Carrier(I.V(CARRIER))
        fields = self._run(it, lambda k, v: Slot(v, v),
                           lambda A, ctx, env, k: it.tyA(A, ctx, env), "")
        if self.simple:
            fields.insert(0, (CARRIER, I.Sort("Set")))
        return beta(sigma_telescope(fields))

    def mor(self, g0: str, g1: str) -> I.Tm:
        it = self._interp()
        if self.simple:
            xm = CARRIER + "@M"
            it.carrier = Carrier(self._path(g0, 0), self._path(g1, 0), m=I.V(xm))
        p0 = lambda k: self._path(g0, k)  # noqa: E731
        p1 = lambda k: self._path(g1, k)  # noqa: E731
        fields = self._run(it, lambda k, v: Slot(p0(k), p1(k), m=v),
                           lambda A, ctx, env, k: it.tyM(A, ctx, env, p0(k), p1(k)), "@M")
        if self.simple:
            fields.insert(0, (CARRIER + "@M", I.Pi("_", p0(0), p1(0))))
        return beta(sigma_telescope(fields))

    def disp(self, g: str) -> I.Tm:
        it = self._interp()
        if self.simple:
            it.carrier = Carrier(self._path(g, 0), d=I.V(CARRIER + "@D"))
        p = lambda k: self._path(g, k)  # noqa: E731
        fields = self._run(it, lambda k, v: Slot(p(k), d=v),
                           lambda A, ctx, env, k: it.tyD(A, ctx, env, p(k)), "@D")
        if self.simple:
            fields.insert(0, (CARRIER + "@D", I.Pi("_", p(0), I.Sort("Set"))))
        return beta(sigma_telescope(fields))

    def section(self, g: str, gd: str) -> I.Tm:
        it = self._interp()
        p = lambda k: self._path(g, k)  # noqa: E731
        pd = lambda k: self._path(gd, k)  # noqa: E731
        if self.simple:
            it.carrier = Carrier(p(0), d=pd(0), s=I.V(CARRIER + "@S"))
        fields = self._run(it, lambda k, v: Slot(p(k), d=pd(k), s=v),
                           lambda A, ctx, env, k: it.tyS(A, ctx, env, p(k), pd(k)), "@S")
        if self.simple:
            x = "x"
            fields.insert(0, (CARRIER + "@S", I.Pi(x, p(0), I.App(pd(0), I.V(x)))))
        return beta(sigma_telescope(fields))

    def induction(self) -> I.Tm:
        return I.Pi("gamma", self.alg(),
                    I.Pi("gamma@D", self.disp("gamma"), self.section("gamma", "gamma@D")))

    def recursion(self) -> I.Tm:
        return I.Pi("gamma@0", self.alg(), I.Pi("gamma@1", self.alg(), self.mor("gamma@0", "gamma@1")))

    # units

    def top(self) -> I.Tm:
        return I.Sort("U1" if self.profile is Profile.HIIT_WEAK else "Set1")

    def _fields(self, role: str) -> tuple[str, ...]:
        return tuple(f + role for f in self.field_names)

    def definitions(self, what: tuple[str, ...] = WHAT) -> tuple[I.Definition, ...]:
        want = set()
        for w in what:
            want.add(w)
            want.update(NEEDS[w])
        top = self.top()
        alg = I.Const(self.dname("Alg"))
        decls: list[I.Definition] = []
        for name, ext in self.sig.externs:
            if ext is None:
                decls.append(I.Definition(name, (), I.Sort("Set"), None))
            else:
                decls.append(I.Definition(name, (), Interp(self.profile).ext_ty(ext), None))
        if "a" in want:
            decls.append(I.Definition(self.dname("Alg"), (), top, self.alg()))
        if "m" in want:
            ps = (I.Param("gamma@0", alg, self._fields("@0")), I.Param("gamma@1", alg, self._fields("@1")))
            decls.append(I.Definition(self.dname("Mor"), ps, top, self.mor("gamma@0", "gamma@1")))
        if "d" in want:
            ps = (I.Param("gamma", alg, self._fields("")),)
            decls.append(I.Definition(self.dname("DispAlg"), ps, top, self.disp("gamma")))
        if "s" in want:
            ps = (I.Param("gamma", alg, self._fields("")),
                  I.Param("gamma@D", I.App(I.Const(self.dname("DispAlg")), I.V("gamma")), self._fields("@D")))
            decls.append(I.Definition(self.dname("Section"), ps, top, self.section("gamma", "gamma@D")))
        if "ind" in want:
            decls.append(I.Definition(self.dname("Induction"), (), top, self.induction()))
        if "rec" in want:
            decls.append(I.Definition(self.dname("Recursion"), (), top, self.recursion()))
        return tuple(decls)

    def unit(self, what: tuple[str, ...] = WHAT, check: bool = True) -> I.EmitUnit:
        u = I.EmitUnit(self.sig.name, self.profile.value, self.sig.source_hash, self.definitions(what))
        if check:
            check_unit(u)
        return u


def emit(sig: Signature, what: tuple[str, ...] = WHAT, check: bool = True) -> I.EmitUnit:
    return Emitter(sig).unit(what, check)
