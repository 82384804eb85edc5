from dataclasses import fields

import pytest
from hypothesis import given, settings, strategies as st

from sigforge.diagnostics import SigforgeError
from sigforge.profile import Profile
from sigforge.surface import parse, parse_expr, show, show_file
from sigforge.surface import syntax as S

from conftest import CORPUS


def test_nat_file():
    sf = parse("profile simple\nsignature Nat where\n zero : iota\n suc : iota -> iota")
    assert sf.profile is Profile.SIMPLE
    assert [e.name for e in sf.entries] == ["zero", "suc"]
    assert sf.entries[0].type == S.Iota()
    assert sf.entries[1].type == S.SArr(S.Iota())


def test_unicode_iota_is_accepted():
    sf = parse("profile simple\nsignature Nat where\n zero : ι\n suc : ι -> ι")
    assert sf.entries[1].type == S.SArr(S.Iota())


def test_circle_file():
    sf = parse("profile hiit-strict\nsignature S1 where\n S1 : U\n base : El S1\n"
               " loop : El (Id base base)")
    assert len(sf.entries) == 3
    assert sf.entries[2].type == S.El(S.Id(S.Var("base"), S.Var("base")))


def test_empty_file():
    sf = parse("profile fqii\nsignature Empty where")
    assert sf.entries == ()


def test_comments_are_skipped():
    sf = parse("-- header\nprofile simple -- simple\nsignature N where\n z : iota -- zero\n")
    assert [e.name for e in sf.entries] == ["z"]


def test_sugar_for_arrows():
    e = parse_expr("El A -> B")
    assert e == S.PiInt("_", S.El(S.Var("A")), S.Var("B"))
    assert parse_expr("(x : A) *> B") == S.PiExt("x", S.Var("A"), S.Var("B"))
    assert parse_expr("A ~> b") == S.PiSmallExt("_", S.Var("A"), S.Var("b"))


def test_j_syntax():
    e = parse_expr("J (x p. El (Id a x)) refl q")
    assert isinstance(e, S.J) and (e.x, e.p) == ("x", "p")


@pytest.mark.parametrize("src, code", [
    ("signature N where\n z : iota", "E_PROFILE_MISSING"),
    ("profile simple\nsignature N where\n z : iota\n z : iota", "E_DUPNAME"),
    ("profile simple\nextern z : Type\nsignature N where\n z : iota", "E_DUPNAME"),
    ("profile simple\nsignature N where\n z : iota $", "E_LEX"),
    ("profile simple\nsignature N where\n z : (iota", "E_PARSE"),
    ("profile nope\nsignature N where", "E_PROFILE_MISSING"),
])
def test_parse_errors(src, code):
    with pytest.raises(SigforgeError) as info:
        parse(src)
    assert info.value.code == code
    assert info.value.diag.span.line >= 1


def test_parse_is_deterministic():
    src = (CORPUS / "cat.sig").read_text()
    assert parse(src) == parse(src)


def _spans(node):
    if isinstance(node, S.RawExpr):
        yield node.span
    for fl in fields(node):
        v = getattr(node, fl.name)
        if isinstance(v, (S.RawExpr, S.Entry)):
            yield from _spans(v)


@pytest.mark.parametrize("path", sorted(p.name for p in CORPUS.glob("*.sig")))
def test_spans_lie_within_the_file(path):
    src = (CORPUS / path).read_text()
    lines = src.splitlines()
    for entry in parse(src).entries:
        for sp in _spans(entry):
            assert 1 <= sp.line <= len(lines)
            assert (sp.end_line, sp.end_col) > (sp.line, sp.col) or sp.end_line > sp.line
            assert sp.end_line <= len(lines)


@pytest.mark.parametrize("path", sorted(p.relative_to(CORPUS).as_posix()
                                        for p in CORPUS.rglob("*.sig")))
def test_corpus_round_trip(path):
    sf = parse((CORPUS / path).read_text())
    again = parse(show_file(sf))
    assert again == sf
    assert show_file(again) == show_file(sf)


# random raw expressions print and parse back


NAMES = st.sampled_from(["a", "b", "x", "f", "A", "Nat0"])
BINDERS = st.sampled_from(["x", "y", "_"])


def _exprs():
    leaves = st.one_of(NAMES.map(S.Var), st.just(S.U()), st.just(S.Iota()), st.just(S.Refl()),
                       st.just(S.Top()), st.just(S.Tt()))

    def grow(sub):
        return st.one_of(
            st.builds(S.El, sub),
            st.builds(S.SArr, sub),
            st.builds(S.PiInt, BINDERS, sub, sub),
            st.builds(S.PiExt, BINDERS, NAMES.map(S.Var), sub),
            st.builds(S.PiSmallExt, BINDERS, NAMES.map(S.Var), sub),
            st.builds(S.Id, sub, sub),
            st.builds(S.IDLarge, sub, sub),
            st.builds(S.J, st.just("x"), st.just("p"), sub, sub, sub),
            st.builds(S.Sg, BINDERS, sub, sub),
            st.builds(S.Pair, sub, sub),
            st.builds(S.Proj1, sub),
            st.builds(S.Proj2, sub),
            st.builds(S.App, sub, sub),
        )

    return st.recursive(leaves, grow, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(_exprs())
def test_print_parse_round_trip(e):
    text = show(e)
    back = parse_expr(text)
    assert show(back) == text
    assert parse_expr(show(back)) == back
