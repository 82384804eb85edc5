import pytest
from hypothesis import given, settings, strategies as st

from sigforge.amds import emit
from sigforge.diagnostics import SigforgeError
from sigforge.inner import (AGDA, ASCII, InnerTypeError, ReadError, canonical, check_term,
                            check_unit, read_term, show_term, show_unit)
from sigforge.inner import syntax as I
from sigforge.inner.beta import beta, subst

from conftest import CORPUS, corpus

SET = I.Sort("Set")


def post(name, ty):
    return I.Definition(name, (), ty, None)


N, Z, S = I.Const("N"), I.Const("z"), I.Const("s")
NAT = (post("N", SET), post("z", N), post("s", I.Pi("_", N, N)))


def test_sigma_telescope_is_a_type():
    t = I.Sigma("X", SET, I.Sigma("_", I.V("X"), I.Pi("_", I.V("X"), I.V("X"))))
    check_term(t, I.Sort("Set1"))


def test_transport_in_the_wrong_direction_is_rejected():
    decls = NAT + (
        post("P", I.Pi("_", N, SET)),
        post("a", N), post("b", N),
        post("p", I.Path(N, I.Const("a"), I.Const("b"))),
        post("xb", I.App(I.Const("P"), I.Const("b"))),
        post("xa", I.App(I.Const("P"), I.Const("a"))),
    )
    fwd = I.Tr(I.Const("P"), I.Const("p"), I.Const("xa"))
    check_term(fwd, I.App(I.Const("P"), I.Const("b")), decls)
    with pytest.raises(InnerTypeError):
        check_term(I.Tr(I.Const("P"), I.Const("p"), I.Const("xb")),
                   I.App(I.Const("P"), I.Const("a")), decls)


def test_refl_between_distinct_numerals_is_rejected():
    with pytest.raises(InnerTypeError):
        check_term(I.Refl(), I.Path(N, Z, I.App(S, Z)), NAT)
    check_term(I.Refl(), I.Path(N, I.App(S, Z), I.App(S, Z)), NAT)


def test_strict_equality_is_proof_irrelevant():
    decls = NAT + (
        post("a", N), post("b", N),
        post("p", I.SEq(N, I.Const("a"), I.Const("b"))),
        post("q", I.SEq(N, I.Const("a"), I.Const("b"))),
        post("P", I.Pi("_", I.SEq(N, I.Const("a"), I.Const("b")), SET)),
        post("x", I.App(I.Const("P"), I.Const("p"))),
    )
    # x : P p is accepted at P q
    check_term(I.Const("x"), I.App(I.Const("P"), I.Const("q")), decls)


def test_paths_are_proof_relevant():
    decls = NAT + (
        post("a", N), post("b", N),
        post("p", I.Path(N, I.Const("a"), I.Const("b"))),
        post("q", I.Path(N, I.Const("a"), I.Const("b"))),
        post("P", I.Pi("_", I.Path(N, I.Const("a"), I.Const("b")), SET)),
        post("x", I.App(I.Const("P"), I.Const("p"))),
    )
    with pytest.raises(InnerTypeError):
        check_term(I.Const("x"), I.App(I.Const("P"), I.Const("q")), decls)


def test_unit_errors_name_the_definition_and_subterm():
    bad = I.Definition("bad", (), I.Sigma("x", N, I.Path(N, I.V("x"), I.V("x"))),
                       I.Pair(Z, I.TT()))
    with pytest.raises(SigforgeError) as info:
        check_unit(I.EmitUnit("T", "simple", "", NAT + (bad,)))
    assert info.value.code == "E_INNER_TYPE"
    assert "'bad'" in info.value.diag.message
    assert "body.snd" in info.value.diag.message


def test_circle_section_rechecks():
    unit = emit(corpus("s1.sig"), ("a", "d", "s"))
    check_unit(unit)
    assert "apd S1S loop == loopD" in show_unit(unit, ASCII)
    assert "apd S1ˢ loop ≡ loopᴰ" in show_unit(unit, AGDA)


# printing


def test_nat_algebra_in_agda_style():
    text = show_unit(emit(corpus("nat.sig"), ("a",)), AGDA)
    assert "NatAlg = Σ Set λ X → Σ X λ zero → (X → X)" in text.splitlines()


def test_empty_signature_algebra_is_unit():
    text = show_unit(emit(corpus("empty.sig"), ("a",)), AGDA)
    assert "EmptyAlg = ⊤" in text.splitlines()


def test_circle_displayed_algebra_text():
    text = show_unit(emit(corpus("s1.sig"), ("a", "d")), ASCII)
    assert "tr S1D loop baseD = baseD" in text


def test_printing_is_deterministic():
    a = show_unit(emit(corpus("cat.sig")), ASCII)
    b = show_unit(emit(corpus("cat.sig")), ASCII)
    assert a == b


def test_binders_never_print_as_keywords():
    # `comp` is a field of the category signature and a printer keyword
    text = show_unit(emit(corpus("cat.sig"), ("a",)), ASCII)
    assert "(comp :" not in text and "(comp2 :" in text


def test_printed_names_never_capture():
    t = I.Lam("x", I.Lam("x@0", I.App(I.V("x"), I.V("x@0"))))
    # x and x@0 display as x and x0; a free x0 must stay distinct
    u = I.Lam("x", I.App(I.V("x"), I.V("x@0")))
    assert canonical(read_term(show_term(t))) == canonical(t)
    assert canonical(read_term(show_term(u))) == canonical(u)


def _emitted_terms():
    out = []
    for p in sorted(CORPUS.rglob("*.sig")):
        s = corpus(p.relative_to(CORPUS).as_posix())
        try:
            unit = emit(s)
        except SigforgeError:
            unit = emit(s, ("a", "d"))
        for d in unit.decls:
            out += [t for t in (d.full_type(), d.full_body()) if t is not None]
    return out


EMITTED = _emitted_terms()


def test_print_then_read_is_injective_on_emitted_terms():
    seen: dict[str, object] = {}
    for t in EMITTED:
        text = show_term(t, ASCII)
        assert canonical(read_term(text)) == canonical(t), text
        if text in seen:
            assert seen[text] == canonical(t)
        seen[text] = canonical(t)


def test_reader_rejects_garbage():
    for bad in ("(x : A", "tr", "a = = b", "x $"):
        with pytest.raises(ReadError):
            read_term(bad)


NAMES = st.sampled_from(["a", "b", "f", "x", "y", "zero@M", "X@0"])


def _terms():
    leaves = st.one_of(NAMES.map(I.V), st.just(I.Unit()), st.just(I.TT()), st.just(I.Refl()),
                       st.sampled_from(["Set", "U0", "Ty0"]).map(I.Sort))

    def grow(sub):
        binder = st.sampled_from(["x", "y", "a"])
        return st.one_of(
            st.builds(lambda n, a, b: I.Pi(n, a, b), binder, sub, sub),
            st.builds(lambda n, a, b: I.Pi(n, a, b, True), binder, sub, sub),
            st.builds(lambda n, a, b: I.Sigma(n, a, b), binder, sub, sub),
            st.builds(lambda n, b: I.Lam(n, b), binder, sub),
            st.builds(lambda f, a: I.App(f, a), sub, sub),
            st.builds(lambda f, a: I.App(f, a, True), sub, sub),
            st.builds(lambda a, b: I.Pair(a, b), sub, sub),
            st.builds(I.Proj1, sub), st.builds(I.Proj2, sub),
            st.builds(lambda a, b: I.Path(None, a, b), sub, sub),
            st.builds(lambda a, b: I.SEq(None, a, b), sub, sub),
            st.builds(I.Tr, sub, sub, sub), st.builds(I.Ap, sub, sub), st.builds(I.Apd, sub, sub),
            st.builds(I.JIn, sub, sub, sub), st.builds(lambda h: I.Funext(h), sub),
            st.builds(I.Happly, sub, sub), st.builds(I.Inv, sub), st.builds(I.Comp, sub, sub),
        )

    return st.recursive(leaves, grow, max_leaves=10)


@settings(max_examples=400, deadline=None)
@given(_terms(), _terms())
def test_printing_is_injective_on_random_terms(a, b):
    ta, tb = show_term(a), show_term(b)
    assert canonical(read_term(ta)) == canonical(a)
    if ta == tb:
        assert canonical(a) == canonical(b)


# beta reduction and named substitution


def test_beta_reduces_redexes_and_projections():
    t = I.App(I.Lam("x", I.Pair(I.V("x"), I.V("y"))), I.V("a"))
    assert beta(I.Proj1(t)) == I.V("a")
    assert beta(I.Proj2(t)) == I.V("y")


def test_named_substitution_avoids_capture():
    t = I.Lam("y", I.App(I.V("x"), I.V("y")))
    out = subst(t, {"x": I.V("y")})
    assert isinstance(out, I.Lam) and out.name != "y"
    assert canonical(out) == canonical(I.Lam("z", I.App(I.V("y"), I.V("z"))))
