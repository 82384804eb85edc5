from dataclasses import fields

import pytest

from sigforge.amds import Emitter, emit
from sigforge.amds.interp import Carrier, Interp
from sigforge.core import syntax as C
from sigforge.core.check import Checker
from sigforge.core.gating import ALLOWED
from sigforge.diagnostics import SigforgeError
from sigforge.inner import AGDA, ASCII, check_unit, show_unit
from sigforge.inner import syntax as I
from sigforge.laws import KINDS, interpret, kind_env
from sigforge.profile import Profile

from conftest import CORPUS, GOLDEN, corpus, sig

GOLDENS = {
    "nat_amds.txt": ("nat.sig", ("a", "m", "d", "s")),
    "s1_ads.txt": ("s1.sig", ("a", "d", "s")),
    "pt_eq_fqii_m.txt": ("witness/pt_eq_fqii.sig", ("m",)),
    "pt_eq_strict_m.txt": ("witness/pt_eq_strict.sig", ("m",)),
}


@pytest.mark.parametrize("golden", sorted(GOLDENS))
def test_goldens(golden):
    path, what = GOLDENS[golden]
    got = show_unit(emit(corpus(path), what), ASCII)
    assert got == (GOLDEN / golden).read_text()


def _lines(golden: str) -> list[str]:
    return (GOLDEN / golden).read_text().splitlines()


def test_nat_algebra_telescope():
    assert "NatAlg = (X : Set) * (zero : X) * (X -> X)" in _lines("nat_amds.txt")


def test_nat_morphism_commutes_with_suc():
    mor = next(ln for ln in _lines("nat_amds.txt") if ln.startswith("NatMor ("))
    assert mor.endswith("(zeroM : XM zero0 = zero1) * ((x : X0) -> XM (suc0 x) = suc1 (XM x))")


def test_nat_section_in_agda_style():
    text = show_unit(emit(corpus("nat.sig"), ("s",)), AGDA)
    assert "Xˢ (suc x) = sucᴰ x (Xˢ x)" in text


def test_circle_shapes():
    text = (GOLDEN / "s1_ads.txt").read_text()
    assert "tr S1D loop baseD = baseD" in text
    assert "apd S1S loop == loopD" in text


# divergence between the strict profiles


def test_divergence_witness():
    fqii = _lines("pt_eq_fqii_m.txt")[-1]
    strict = _lines("pt_eq_strict_m.txt")[-1]
    assert fqii.endswith("* aM == bM")
    assert strict.endswith("* ap AM e0 == e1")
    assert fqii != strict


def test_witness_signatures_differ_only_in_profile():
    a = (CORPUS / "witness/pt_eq_fqii.sig").read_text().splitlines()
    b = (CORPUS / "witness/pt_eq_strict.sig").read_text().splitlines()
    assert [x for x, y in zip(a, b) if x != y] == ["profile fqii"]


# exhaustiveness: every former of every profile, under every kind

EXT = "extern N : Type\nextern z : N\nextern s : N -> N\n"
COMMON = """A : U
 a : El A
 f : (x : A) -> El A
 V : N *> U
 v : El (V z)
 w : El (V (s z))"""
STRICT_BODY = COMMON + """
 g : El ((i : N) ~> A)
 ga : El (Id (g z) a)
 p : El (Sg (x : A) (Id x x))
 pp : El (Id p (a , refl))
 p1 : El (Id (proj1 p) a)
 p2 : El (Id (proj2 p) (proj2 p))
 u : El Top
 t : El (Id tt u)"""
WITNESS_SIGS = {
    Profile.SIMPLE: ("zero : iota\n suc : iota -> iota\n two : iota -> iota -> iota", ""),
    Profile.FQII: (COMMON + "\n q : Id (f a) a\n r : Id a a\n rr : Id r refl", EXT),
    Profile.HIIT_STRICT: (STRICT_BODY, EXT),
    Profile.HIIT_WEAK: (STRICT_BODY + """
 e : El (Id a a)
 E : ID a a
 EE : ID E refl
 k : El (Id (J (y r. El A) a e) a)
 kk : El (Id (J (y r. El A) a E) a)""", EXT),
}


def _formers(x: C.Node) -> set[type]:
    out = {type(x)}
    for fl in fields(x):
        v = getattr(x, fl.name)
        if isinstance(v, C.Node):
            out |= _formers(v)
    return out


def _witnesses(profile: Profile):
    """(context, node) pairs that between them use every admitted former."""
    s = sig(profile.value, *WITNESS_SIGS[profile])
    out = []
    ctx = s.ctx.__class__(profile, (), s.ctx.externs)
    for name, A in s.ctx.entries:
        out.append((ctx, A))
        ctx = ctx.extend(name, A)
    n, N = len(ctx), C.ExtBase("N")
    if profile is Profile.SIMPLE:
        out.append((ctx, C.App(C.App(C.Var(0), C.Var(2)), C.App(C.Var(1), C.Var(2)))))
        return out
    A, a = C.Var(n - 1), C.Var(n - 2)
    out.append((ctx, C.App(C.Lam(A, C.Var(0), "x"), a)))
    out.append((ctx, C.AppE(C.LamE(N, C.Var(n - 1), "i"), C.EConst("z"))))
    out.append((ctx, C.TExt(N)))
    if profile in (Profile.HIIT_STRICT, Profile.HIIT_WEAK):
        out.append((ctx, C.AppS(C.LamS(N, C.Var(n - 1), "i"), C.EConst("z"))))
    return out


def _status(profile: Profile, ctx, x, kind: str) -> str:
    carrier = Carrier(I.V("X@0"), I.V("X@1"), m=I.V("X@M"), d=I.V("X@D"), s=I.V("X@S"))
    it = Interp(profile, carrier if profile is Profile.SIMPLE else None)
    try:
        out = interpret(it, kind, x, ctx, kind_env(ctx, kind))
    except SigforgeError as e:
        return e.code
    assert isinstance(out, I.Tm)
    return "ok"


def _grid() -> dict[tuple[str, str, str], str]:
    grid: dict[tuple[str, str, str], set[str]] = {}
    for profile in Profile:
        for ctx, x in _witnesses(profile):
            ch = Checker(ctx)
            if isinstance(x, C.Ty):
                ch.check_ty(ctx, x)
            else:
                ch.infer(ctx, x)
            for kind in KINDS:
                st = _status(profile, ctx, x, kind)
                for cls in _formers(x):
                    grid.setdefault((cls.__name__, profile.value, kind), set()).add(st)
    # a cell is covered when some witness using the former interprets
    return {k: "ok" if "ok" in v else min(v) for k, v in grid.items()}


GRID = _grid()


def test_every_admitted_former_has_a_witness():
    want = {(cls.__name__, p.value) for cls, ps in ALLOWED.items() for p in ps}
    # Var and App only occur in simple terms, which the witnesses include
    have = {(f, p) for f, p, _ in GRID}
    assert want <= have


def test_every_cell_has_a_clause_but_one():
    bad = {k: v for k, v in GRID.items() if v != "ok"}
    assert bad == {("JS", "hiit-weak", "M"): "E_UNSUPPORTED",
                   ("JS", "hiit-weak", "S"): "E_UNSUPPORTED"}


def test_no_witness_uses_an_excluded_former():
    for f, p, _ in GRID:
        cls = getattr(C, f)
        assert Profile(p) in ALLOWED[cls]


# the corpus re-checks


CORPUS_FILES = sorted(p.relative_to(CORPUS).as_posix() for p in CORPUS.rglob("*.sig"))


@pytest.mark.parametrize("path", CORPUS_FILES)
def test_corpus_emits_and_rechecks(path):
    s = corpus(path)
    what = ("a", "d") if path == "torus.sig" else ("a", "m", "d", "s", "ind", "rec")
    unit = emit(s, what, check=False)
    check_unit(unit)


@pytest.mark.parametrize("kind", ["m", "s", "ind", "rec"])
def test_torus_morphisms_and_sections_are_unsupported(kind):
    with pytest.raises(SigforgeError) as info:
        emit(corpus("torus.sig"), (kind,))
    assert info.value.code == "E_UNSUPPORTED"
    assert info.value.diag.profile == "hiit-weak"


def test_torus_algebra_keeps_the_composites():
    last = show_unit(emit(corpus("torus.sig"), ("a",)), ASCII).splitlines()[-1]
    assert last.endswith("* J (\\z -> \\r -> b = z) p q = J (\\z2 -> \\r2 -> b = z2) q p")


def test_category_has_its_laws():
    names = [n for n, _ in corpus("cat.sig").entries]
    assert {"idl", "idr", "assoc"} <= set(names)


def test_emission_is_idempotent():
    for path in ("cat.sig", "s1.sig", "vec.sig"):
        a = show_unit(emit(corpus(path)), AGDA)
        b = show_unit(emit(corpus(path)), AGDA)
        assert a == b


def test_dependency_order_pulls_in_prerequisites():
    names = [d.name for d in emit(corpus("nat.sig"), ("s",)).decls]
    assert names == ["NatAlg", "NatDispAlg", "NatSection"]
    names = [d.name for d in emit(corpus("nat.sig"), ("rec",)).decls]
    assert names == ["NatAlg", "NatMor", "NatRecursion"]


# induction and recursion principles


def test_empty_induction_is_trivial():
    em = Emitter(corpus("empty.sig"))
    assert em.induction() == I.Pi("gamma", I.Unit(), I.Pi("gamma@D", I.Unit(), I.Unit()))
    assert em.recursion() == I.Pi("gamma@0", I.Unit(), I.Pi("gamma@1", I.Unit(), I.Unit()))


def test_nat_induction_is_the_usual_one():
    text = show_unit(emit(corpus("nat.sig"), ("ind",)), ASCII)
    line = next(ln for ln in text.splitlines() if ln.startswith("NatInduction ="))
    # the motive, the two methods, then the section with both computation rules
    assert "(gammaD : (XD : proj1 gamma -> Set) * (zeroD : XD (proj1 (proj2 gamma)))" in line
    assert line.endswith("XS (proj2 (proj2 gamma) x) = proj2 (proj2 gammaD) x (XS x))")


def test_circle_induction_has_a_strict_path_rule():
    text = show_unit(emit(corpus("s1.sig"), ("ind",)), ASCII)
    line = next(ln for ln in text.splitlines() if ln.startswith("S1Induction ="))
    assert line.endswith("apd S1S (proj2 (proj2 gamma)) == proj2 (proj2 gammaD)")


def test_weak_circle_uses_paths_throughout():
    text = show_unit(emit(corpus("s1_weak.sig"), ("s",)), ASCII)
    last = text.splitlines()[-1]
    # without strict equations the path rule is a composite around apd
    assert "==" not in last
    assert last.endswith("* comp (comp (ap (\\z -> tr S1D loop z) (inv baseS)) (apd S1S loop)) "
                         "baseS = loopD")


def test_emitted_units_name_the_profile():
    unit = emit(corpus("int.sig"), ("a",))
    assert unit.profile == "hiit-weak"
    assert show_unit(unit, ASCII).splitlines()[0].endswith("(profile hiit-weak)")
