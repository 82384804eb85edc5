"""Randomized law checks shared by the test suite and `sigforge selfcheck`."""
from __future__ import annotations

import random

from .amds.interp import Carrier, Interp, Slot
from .core import syntax as C
from .core.check import Checker, CoreCtx
from .core.gen import Gen, base_contexts
from .core.nbe import NbE
from .core.printer import show_core, show_signature
from .core.subst import CoreSub, mentions, subst
from .elab import Signature
from .inner import syntax as I
from .inner.beta import beta
from .inner.check import Checker as InnerChecker, Ctx, to_db
from .profile import Profile


def sample_setup(profile: Profile, rng: random.Random, depth: int = 3):
    """(Delta, Gamma, Theta, sigma : Gamma -> Delta, delta : Theta -> Gamma, gen)."""
    gen = Gen(rng, profile, depth)
    delta_ctx = rng.choice(base_contexts(profile))
    k1, k2 = rng.randint(0, 2), rng.randint(0, 2)
    gamma = gen.extend_ctx(delta_ctx, k1)
    theta = gen.extend_ctx(gamma, k2)
    sigma = gen.sub(gamma, delta_ctx, CoreSub.wk(len(delta_ctx), k1))
    dl = gen.sub(theta, gamma, CoreSub.wk(len(gamma), k2))
    return delta_ctx, gamma, theta, sigma, dl, gen


def substitution_laws(profile: Profile, seed: int, samples: int) -> tuple[int, list[str]]:
    """t[id] = t and t[sigma o delta] = t[sigma][delta], up to normalization.

    A failing term is shrunk to a smallest failing subterm before it is reported.
    """
    rng = random.Random(seed)
    nbe = NbE(profile)
    bad: list[str] = []
    for _ in range(samples):
        dctx, gamma, theta, sigma, dl, gen = sample_setup(profile, rng)
        Checker(gamma).check_sub(gamma, sigma, dctx)
        Checker(theta).check_sub(theta, dl, gamma)
        got = gen.any_term(dctx)
        if got is None:
            continue
        t, A = got
        Checker(dctx).check(dctx, t, A)

        def violations(t: C.Tm, A: C.Ty) -> list[str]:
            return _violations(nbe, dctx, theta, sigma, dl, t, A)

        if violations(t, A):
            bad += _minimized(nbe, dctx, theta, sigma, dl, t, A)
    return samples, bad


def _minimized(nbe: NbE, dctx: CoreCtx, theta: CoreCtx, sigma: CoreSub, dl: CoreSub,
               t: C.Tm, A: C.Ty) -> list[str]:
    """Shrink a failing sample over entry count, then term depth, and render it."""
    def fails(ctx, sg, u, B):
        return bool(_violations(nbe, ctx, theta, sg, dl, u, B))

    dctx, sigma, t, A = shrink_entries(dctx, sigma, t, A, fails)
    t, A = shrink(dctx, t, A, lambda u, B: fails(dctx, sigma, u, B))
    where = show_signature(Signature("Counterexample", dctx, ""))
    term = show_core(t, dctx.names)
    return [f"{v}\n  term: {term}\n  over:\n    " + where.strip().replace("\n", "\n    ")
            for v in _violations(nbe, dctx, theta, sigma, dl, t, A)]


def _strengthening(m: int, lvl: int) -> CoreSub:
    """From a prefix of length m without entry lvl back to the full prefix.

    The dropped entry maps to a placeholder, so this is only applied to
    nodes that do not mention it."""
    terms = []
    for i in range(m):
        if i < lvl:
            terms.append(C.Var(m - 2 - i))
        elif i == lvl:
            terms.append(C.Var(0))
        else:
            terms.append(C.Var(m - 1 - i))
    return CoreSub(m - 1, tuple(terms))


def drop_entry(ctx: CoreCtx, lvl: int, nodes: tuple[C.Node, ...]):
    """Remove entry lvl from ctx when neither later entries nor nodes use it."""
    n = len(ctx)
    for j in range(lvl + 1, n):
        if mentions(ctx.entries[j][1], j - 1 - lvl):
            return None
    if any(mentions(x, n - 1 - lvl) for x in nodes):
        return None
    entries = list(ctx.entries[:lvl])
    for j in range(lvl + 1, n):
        name, ty = ctx.entries[j]
        entries.append((name, subst(ty, _strengthening(j, lvl))))
    rho = _strengthening(n, lvl)
    return CoreCtx(ctx.profile, tuple(entries), ctx.externs), tuple(subst(x, rho) for x in nodes)


def shrink_entries(ctx: CoreCtx, sigma: CoreSub, t: C.Tm, A: C.Ty, fails):
    """Greedily drop context entries (and their images under sigma) while the sample fails."""
    lvl = len(ctx) - 1
    while lvl >= 0:
        got = drop_entry(ctx, lvl, (t, A))
        if got is not None:
            ctx2, (t2, A2) = got
            sigma2 = CoreSub(sigma.src, sigma.terms[:lvl] + sigma.terms[lvl + 1:])
            if fails(ctx2, sigma2, t2, A2):
                ctx, sigma, t, A = ctx2, sigma2, t2, A2
        lvl -= 1
    return ctx, sigma, t, A


def _violations(nbe: NbE, dctx: CoreCtx, theta: CoreCtx, sigma: CoreSub, dl: CoreSub,
                t: C.Tm, A: C.Ty) -> list[str]:
    out = []
    n, m = len(dctx), len(theta)
    if nbe.normalize(n, subst(t, CoreSub.id(n))) != nbe.normalize(n, t):
        out.append(f"t[id] != t for {t!r}")
    lhs = subst(t, sigma.comp(dl))
    rhs = subst(subst(t, sigma), dl)
    Checker(theta).check(theta, rhs, subst(subst(A, sigma), dl))
    if nbe.normalize(m, lhs) != nbe.normalize(m, rhs):
        out.append(f"t[sigma o delta] != t[sigma][delta] for {t!r}")
    if nbe.normalize(m, subst(A, sigma.comp(dl))) != nbe.normalize(m, subst(subst(A, sigma), dl)):
        out.append(f"A[sigma o delta] != A[sigma][delta] for {A!r}")
    return out


def shrink(ctx: CoreCtx, t: C.Tm, A: C.Ty, fails) -> tuple[C.Tm, C.Ty]:
    """Greedily replace t by a well-typed subterm (not under a binder) that still fails."""
    ch = Checker(ctx)
    progress = True
    while progress:
        progress = False
        for sub, k in C.children(t):
            if k or not isinstance(sub, C.Tm):
                continue
            try:
                B = ch.infer(ctx, sub)
            except Exception:
                continue
            if fails(sub, B):
                t, A, progress = sub, B, True
                break
    return t, A


KINDS = ("A", "M", "D", "S")


def kind_env(ctx: CoreCtx, kind: str) -> tuple:
    out = []
    for k in range(len(ctx)):
        g = f"g{k}"
        if kind == "A":
            out.append(Slot(I.V(g), I.V(g)))
        elif kind == "M":
            out.append(Slot(I.V(g + "@0"), I.V(g + "@1"), m=I.V(g + "@M")))
        elif kind == "D":
            out.append(Slot(I.V(g), d=I.V(g + "@D")))
        else:
            out.append(Slot(I.V(g), d=I.V(g + "@D"), s=I.V(g + "@S")))
    return tuple(out)


def _sub_env(it: Interp, sigma: CoreSub, gamma: CoreCtx, env: tuple, kind: str) -> tuple:
    out = []
    for t in sigma.terms:
        a0 = it.tmA(t, gamma, env, 0)
        if kind == "M":
            out.append(Slot(a0, it.tmA(t, gamma, env, 1), m=it.tmM(t, gamma, env)))
        elif kind == "D":
            out.append(Slot(a0, d=it.tmD(t, gamma, env)))
        elif kind == "S":
            out.append(Slot(a0, d=it.tmD(t, gamma, env), s=it.tmS(t, gamma, env)))
        else:
            out.append(Slot(a0, a0))
    return tuple(out)


def interpret(it: Interp, kind: str, x: C.Node, ctx: CoreCtx, env: tuple) -> I.Tm:
    w0, w1 = I.V("w@0"), I.V("w@1")
    if isinstance(x, C.Ty):
        return {"A": lambda: it.tyA(x, ctx, env),
                "M": lambda: it.tyM(x, ctx, env, w0, w1),
                "D": lambda: it.tyD(x, ctx, env, w0),
                "S": lambda: it.tyS(x, ctx, env, w0, w1)}[kind]()
    return {"A": lambda: it.tmA(x, ctx, env),
            "M": lambda: it.tmM(x, ctx, env),
            "D": lambda: it.tmD(x, ctx, env),
            "S": lambda: it.tmS(x, ctx, env)}[kind]()


def alpha_normal(t: I.Tm, externs: set[str]) -> I.Tm:
    """Beta normal de Bruijn form, with free names as outer variables."""
    t = beta(t)
    scope = sorted(I.free_names(t))
    db = to_db(t, scope, externs)
    return InnerChecker().nf(db, Ctx(tuple(I.Unit() for _ in scope)))


def commutes(profile: Profile, kind: str, x: C.Node, sigma: CoreSub, gamma: CoreCtx,
             delta: CoreCtx) -> bool:
    """Is (x[sigma])^kind equal to x^kind over the interpreted substitution?"""
    carrier = Carrier(I.V("X@0"), I.V("X@1"), m=I.V("X@M"), d=I.V("X@D"), s=I.V("X@S"))
    it = Interp(profile, carrier if profile is Profile.SIMPLE else None)
    env_g = kind_env(gamma, kind)
    lhs = interpret(it, kind, subst(x, sigma), gamma, env_g)
    env_d = _sub_env(it, sigma, gamma, env_g, kind)
    rhs = interpret(it, kind, x, delta, env_d)
    ext = {n for n, _ in gamma.externs}
    return _scoped_eq(lhs, rhs, ext)


def _scoped_eq(a: I.Tm, b: I.Tm, ext: set[str]) -> bool:
    a, b = beta(a), beta(b)
    scope = sorted(I.free_names(a) | I.free_names(b))
    ctx = Ctx(tuple(I.Unit() for _ in scope))
    ch = InnerChecker()
    return ch.nf(to_db(a, scope, ext), ctx) == ch.nf(to_db(b, scope, ext), ctx)


def amds_commutation(profile: Profile, seed: int, samples: int) -> tuple[int, list[str]]:
    rng = random.Random(seed)
    bad: list[str] = []
    for _ in range(samples):
        dctx, gamma, _, sigma, _, gen = sample_setup(profile, rng)
        got = gen.any_term(dctx)
        if got is None:
            continue
        t, A = got
        kind = rng.choice(KINDS)
        for x in (A, t):
            if not commutes(profile, kind, x, sigma, gamma, dctx):
                bad.append(f"{kind}: interpretation does not commute with substitution for {x!r}")
    return samples, bad


def selfcheck(seed: int, samples: int) -> list[str]:
    """One summary line per law and profile, with any counterexamples."""
    lines = []
    for profile in Profile:
        n, bad = substitution_laws(profile, seed, samples)
        lines.append(f"{profile.value}: {n} substitution samples, {len(bad)} failures")
        lines += [f"  counterexample: {b}" for b in bad[:3]]
    for profile in (Profile.SIMPLE, Profile.FQII):
        n, bad = amds_commutation(profile, seed, samples // 2)
        lines.append(f"{profile.value}: {n} commutation samples, {len(bad)} failures")
        lines += [f"  counterexample: {b}" for b in bad[:3]]
    return lines
