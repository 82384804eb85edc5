"""One test per acceptance criterion, each under its time budget.

Every test appends a PASS/FAIL line to LINES; conftest prints them in
the terminal summary.
"""
import random
from contextlib import contextmanager
from time import perf_counter

import pytest

from sigforge import load
from sigforge.amds import emit
from sigforge.core import check_ctx, conv, normalize, shift, small_j_beta
from sigforge.core import syntax as C
from sigforge.core.check import Checker, CoreCtx
from sigforge.diagnostics import SigforgeError
from sigforge.inner import ASCII, check_unit, show_unit
from sigforge.laws import amds_commutation, substitution_laws
from sigforge.profile import Profile
from sigforge.term_algebra import (AlgebraSpec, DispAlgebraSpec, apply_expr, enumerate_terms,
                                   eval_eliminator, eval_recursor, load_json, parse_term,
                                   random_term)

import oracles
from conftest import CORPUS, GOLDEN, corpus, sig
from test_elab import GATING

LINES: list[str] = []
SEED = 0


@contextmanager
def criterion(n: int, title: str, budget: float):
    t0 = perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = perf_counter() - t0
        status = "PASS" if ok and dt < budget else "FAIL"
        LINES.append(f"{status} criterion {n}: {title} ({dt:.2f} s of {budget:g} s)")
    assert dt < budget, f"criterion {n} took {dt:.2f} s, budget {budget} s"


def test_1_golden_equivalence():
    with criterion(1, "Nat A/M/D/S and circle A/D/S goldens", 1):
        nat = show_unit(emit(corpus("nat.sig"), ("a", "m", "d", "s")), ASCII)
        assert nat == (GOLDEN / "nat_amds.txt").read_text()
        assert "NatAlg = (X : Set) * (zero : X) * (X -> X)" in nat
        assert "XM (suc0 x) = suc1 (XM x)" in nat
        assert "XS (suc x) = sucD x (XS x)" in nat
        s1 = show_unit(emit(corpus("s1.sig"), ("a", "d", "s")), ASCII)
        assert s1 == (GOLDEN / "s1_ads.txt").read_text()
        assert "tr S1D loop baseD = baseD" in s1
        assert "apd S1S loop == loopD" in s1


def test_2_profile_gating():
    with criterion(2, "12 gating negatives and the torus", 1):
        assert len(GATING) == 12
        for profile, body, ext in GATING.values():
            with pytest.raises(SigforgeError) as info:
                sig(profile, body, ext)
            assert info.value.code == "E_PROFILE"
        src = (CORPUS / "torus.sig").read_text()
        assert len(load(src).ctx) == 5
        with pytest.raises(SigforgeError) as info:
            load(src.replace("profile hiit-weak", "profile hiit-strict"))
        assert info.value.code == "E_PROFILE"


ALL = ("a", "m", "d", "s", "ind", "rec")


def test_3_corpus_rechecks():
    with criterion(3, "every derivable interpretation of the corpus inner-checks", 10):
        files = sorted(p.relative_to(CORPUS).as_posix() for p in CORPUS.rglob("*.sig"))
        assert len(files) >= 12
        names = {corpus(f).name for f in files}
        assert {"CatSig", "VecSig"} <= names
        assert {"idl", "idr", "assoc"} <= set(corpus("cat.sig").ctx.names)
        assert corpus("vec.sig").ctx.externs
        for f in files:
            s = corpus(f)
            check_ctx(s.ctx)
            derivable = []
            for w in ALL:
                try:
                    emit(s, (w,), check=False)
                except SigforgeError as e:
                    assert e.code == "E_UNSUPPORTED", (f, w, e)
                    continue
                derivable.append(w)
            assert set(derivable) >= {"a", "d"}
            check_unit(emit(s, tuple(derivable), check=False))


def test_4_substitution_laws():
    with criterion(4, "1000 substitution samples per profile, 500 commutation samples", 60):
        for profile in Profile:
            n, bad = substitution_laws(profile, SEED, 1000)
            assert n == 1000 and bad == [], bad[:3]
        for profile in (Profile.SIMPLE, Profile.FQII):
            n, bad = amds_commutation(profile, SEED, 250)
            assert n == 250 and bad == [], bad[:3]


def test_5_executable_semantics():
    with criterion(5, "Nat and Tree recursors and eliminators", 5):
        nat, tree = corpus("nat.sig"), corpus("tree.sig")
        terms = enumerate_terms(nat, 11)  # zero up to ten applications of suc
        assert len(terms) == 11 == oracles.count_terms((0, 1), 11)
        rng = random.Random(SEED)
        trees = [random_term(tree, rng, 8) for _ in range(200)]
        cases = [
            (nat, terms, {"zero": "0", "suc": "x0 + 1"},
             {"zero": "1", "suc": "ih0 * 2 + x0"}),
            (tree, trees, {"leaf": "1", "node": "x0 + x1"},
             {"leaf": "0", "node": "max(ih0, ih1) + 1 + min(x0, x1)"}),
        ]
        for s, ts, ops, methods in cases:
            r = AlgebraSpec.from_json(s, {"ops": ops})
            e = DispAlgebraSpec.from_json(s, {"algebra": ops, "methods": methods})
            for t in ts:
                xs = [eval_recursor(s, r, a) for a in t.args]
                assert eval_recursor(s, r, t) == apply_expr(r.exprs[t.head], xs)
                ihs = [eval_eliminator(s, e, a) for a in t.args]
                assert eval_eliminator(s, e, t) == apply_expr(e.methods[t.head], xs, ihs)
        two = parse_term(nat, "suc (suc zero)")
        count = AlgebraSpec.from_json(nat, load_json(CORPUS / "algebras/nat_count.json"))
        assert eval_recursor(nat, count, two) == 2
        tri = DispAlgebraSpec.from_json(nat, load_json(CORPUS / "algebras/nat_triangular.json"))
        assert eval_eliminator(nat, tri, two) == 3 == oracles.triangular(2)
        for n, t in enumerate(terms):
            assert eval_eliminator(nat, tri, t) == oracles.triangular(n)


def test_6_divergence_witness():
    with criterion(6, "FQII and strict morphisms of one equation differ", 1):
        texts = {}
        for name, golden in (("pt_eq_fqii", "pt_eq_fqii_m.txt"),
                             ("pt_eq_strict", "pt_eq_strict_m.txt")):
            text = show_unit(emit(corpus(f"witness/{name}.sig"), ("m",)), ASCII)
            assert text == (GOLDEN / golden).read_text()
            texts[name] = text.splitlines()[-1]
        assert texts["pt_eq_fqii"].endswith("* aM == bM")
        assert texts["pt_eq_strict"].endswith("* ap AM e0 == e1")
        assert texts["pt_eq_fqii"] != texts["pt_eq_strict"]


def test_7_strict_j_beta():
    with criterion(7, "J computes on refl for ID only", 1):
        weak = Profile.HIIT_WEAK
        ctx = CoreCtx(weak, (("A", C.TU()), ("a", C.TEl(C.Var(0)))))
        A, a = C.TEl(C.Var(1)), C.Var(0)
        large = C.JL(shift(A, 2), a, C.ReflL(A, a))
        assert normalize(weak, 2, large) == a
        small = C.JS(shift(A, 2), a, C.Refl(A, a))
        nf = normalize(weak, 2, small)
        assert isinstance(nf, C.JS) and not conv(weak, 2, small, a)
        beta = small_j_beta(ctx, small)
        assert beta == C.TIDL(A, small, a)
        Checker(ctx).check_ty(ctx, beta)
