import pytest

from sigforge import load
from sigforge.core import check_ctx
from sigforge.core import syntax as C
from sigforge.core.printer import show_signature
from sigforge.diagnostics import SigforgeError

from conftest import CORPUS, corpus, sig

# One targeted negative per excluded (former, profile) cell.
GATING = {
    "reflect in fqii": ("fqii", "A : U\n a : El A\n e : Id a a\n r : Id (reflect e) (reflect e)", ""),
    "reflect in hiit-strict": ("hiit-strict",
                               "A : U\n a : El A\n e : El (Id a a)\n r : El (Id (reflect e) a)", ""),
    "J in hiit-strict": ("hiit-strict", "A : U\n a : El A\n p : El (Id a a)\n"
                                        " q : El (J (z r. El A) a p)", ""),
    "J in fqii": ("fqii", "A : U\n a : El A\n q : El (J (z r. El A) a a)", ""),
    "ID in hiit-strict": ("hiit-strict", "A : U\n e : ID A A", ""),
    "ID in fqii": ("fqii", "A : U\n e : ID A A", ""),
    "Top in fqii": ("fqii", "A : El Top", ""),
    "Sg in fqii": ("fqii", "A : U\n B : El (Sg (x : A) A)", ""),
    "small ext product in fqii": ("fqii", "A : U\n f : El ((n : N) ~> A)", "extern N : Type\n"),
    "small Id in fqii": ("fqii", "A : U\n a : El A\n B : U\n f : El (Id a a) -> El B", ""),
    "large Id in simple": ("simple", "z : iota\n e : Id z z", ""),
    "iota in fqii": ("fqii", "z : iota", ""),
}


@pytest.mark.parametrize("case", sorted(GATING))
def test_gating_matrix(case):
    profile, body, ext = GATING[case]
    with pytest.raises(SigforgeError) as info:
        sig(profile, body, ext)
    assert info.value.code == "E_PROFILE"
    assert info.value.diag.profile == profile


def test_gating_matrix_has_twelve_cells():
    assert len(GATING) == 12


def test_iota_outside_simple_in_every_other_profile():
    for profile in ("fqii", "hiit-strict", "hiit-weak"):
        with pytest.raises(SigforgeError, match="iota"):
            sig(profile, "z : iota")


def test_torus_is_weak_only():
    src = (CORPUS / "torus.sig").read_text()
    assert len(load(src).ctx) == 5
    with pytest.raises(SigforgeError) as info:
        load(src.replace("profile hiit-weak", "profile hiit-strict"))
    assert info.value.code == "E_PROFILE"
    assert info.value.diag.span.line == 8  # the composite in `t`


def test_fqii_nat_elaborates_to_de_bruijn():
    s = sig("fqii", "N : U\n zero : El N\n suc : (n : N) -> El N")
    assert [ty for _, ty in s.ctx.entries] == [
        C.TU(), C.TEl(C.Var(0)), C.TPi(C.Var(1), C.TEl(C.Var(2))),
    ]


def test_refl_checks_against_a_loop():
    s = corpus("s1.sig")
    assert s.ctx.entries[2][1] == C.TEl(C.IdS(C.Var(1), C.Var(0), C.Var(0)))
    s2 = sig("hiit-strict", "S : U\n b : El S\n l : El (Id b b)\n r : El (Id l refl)")
    check_ctx(s2.ctx)


def test_vec_uses_external_products():
    s = corpus("vec.sig")
    names = [n for n, _ in s.ctx.entries]
    assert names == ["Vec", "nil", "cons"]
    assert isinstance(s.ctx.entries[0][1], C.TPiExt)
    assert isinstance(s.ctx.entries[2][1], C.TPiExt)


@pytest.mark.parametrize("body, ext, code", [
    ("N : U\n zero : El N\n bad : El zero", "", "E_TYPE"),
    ("zero : El N", "", "E_SCOPE"),
    ("N : U\n f : (x : A) -> El N", "extern A : Type\n", "E_EXTERN"),
    ("N : U\n zero : El N\n bad : El (zero N)", "", "E_TYPE"),
    ("T : U\n L : U\n node : El (L T) -> El T", "", "E_TYPE"),  # no nested induction
])
def test_elaboration_errors(body, ext, code):
    with pytest.raises(SigforgeError) as info:
        sig("fqii", body, ext)
    assert info.value.code == code
    assert info.value.diag.span.line > 0


def test_type_errors_report_expected_and_actual():
    with pytest.raises(SigforgeError) as info:
        sig("fqii", "N : U\n zero : El N\n bad : El zero")
    d = info.value.diag
    assert d.expected and d.actual


def test_elaboration_records_the_file_name(tmp_path):
    from sigforge import load_file
    p = tmp_path / "bad.sig"
    p.write_text("profile fqii\nsignature T where\n zero : El N\n")
    with pytest.raises(SigforgeError) as info:
        load_file(str(p))
    assert info.value.diag.file == str(p)


def test_missing_file_is_an_io_error(tmp_path):
    from sigforge import load_file
    with pytest.raises(SigforgeError) as info:
        load_file(str(tmp_path / "nope.sig"))
    assert info.value.code == "E_IO"


@pytest.mark.parametrize("path", sorted(p.relative_to(CORPUS).as_posix()
                                        for p in CORPUS.rglob("*.sig")))
def test_printed_core_re_elaborates_to_the_same_core(path):
    s = corpus(path)
    again = load(show_signature(s))
    assert again.ctx.entries == s.ctx.entries
    assert again.profile is s.profile


def test_elaboration_is_deterministic():
    src = (CORPUS / "cat.sig").read_text()
    assert load(src).ctx == load(src).ctx


def test_corpus_size():
    assert len(list(CORPUS.rglob("*.sig"))) >= 12
