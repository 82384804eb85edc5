import random
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from sigforge.core import check_ctx
from sigforge.core import syntax as C
from sigforge.core.check import Checker
from sigforge.diagnostics import SigforgeError
from sigforge.term_algebra import (AlgebraSpec, DispAlgebraSpec, TermValue, apply_expr,
                                   compile_expr, count_terms, enumerate_terms, eval_eliminator,
                                   eval_recursor, flatten, implementations, kernel, load_json,
                                   parse_term, random_term)
from sigforge.term_algebra.algebra import INT64_MAX, INT64_MIN

from sigforge import load

import oracles
from conftest import CORPUS, corpus, sig

ALGEBRAS = CORPUS / "algebras"
KERNELS = implementations()


def alg(s, **ops):
    return AlgebraSpec.from_json(s, {"carrier": "int64", "ops": ops})


def dalg(s, methods, algebra=None):
    doc = {"methods": methods}
    if algebra is not None:
        doc["algebra"] = algebra
    return DispAlgebraSpec.from_json(s, doc)


# enumeration


def test_nat_to_depth_three(nat):
    names = [n for n, _ in nat.entries]
    assert [t.show(names) for t in enumerate_terms(nat, 3)] == [
        "zero", "suc zero", "suc (suc zero)"]


def test_empty_signature_has_no_terms():
    s = load("profile simple\nsignature Empty where\n")
    assert all(enumerate_terms(s, d) == [] for d in range(6))


def test_tree_to_depth_two(tree):
    names = [n for n, _ in tree.entries]
    assert [t.show(names) for t in enumerate_terms(tree, 2)] == ["leaf", "node leaf leaf"]


def test_depth_zero_is_empty(nat):
    assert enumerate_terms(nat, 0) == []


@pytest.mark.parametrize("body", [
    "zero : iota\n suc : iota -> iota",
    "leaf : iota\n node : iota -> iota -> iota",
    "nil : iota\n a : iota -> iota\n b : iota -> iota",
    "e : iota\n u : iota\n t : iota -> iota -> iota -> iota",
    "f : iota -> iota",
])
def test_counts_match_the_oracle(body):
    s = sig("simple", body)
    ar = tuple(_arity(A) for _, A in s.ctx.entries)
    for d in range(4):
        want = oracles.count_terms(ar, d)
        got = enumerate_terms(s, d)
        assert len(got) == want == count_terms(s, d)
        assert len(set(got)) == len(got)


def _arity(A):
    k = 0
    while isinstance(A, C.TSArr):
        k, A = k + 1, A.cod
    return k


def test_enumeration_is_deterministic(tree):
    assert enumerate_terms(tree, 4) == enumerate_terms(tree, 4)


def test_enumerated_terms_typecheck(tree):
    ch = Checker(tree.ctx)
    n = len(tree.ctx)
    for t in enumerate_terms(tree, 4):
        ch.check(tree.ctx, t.core(n), C.TIota())


def test_enumerated_terms_have_bounded_depth(tree):
    terms = enumerate_terms(tree, 4)
    assert max(t.depth for t in terms) == 4
    assert [t.depth for t in terms] == sorted(t.depth for t in terms)


def test_enumeration_needs_a_simple_signature():
    with pytest.raises(SigforgeError) as info:
        enumerate_terms(corpus("nat_fqii.sig"), 2)
    assert info.value.code == "E_PROFILE"


# recursors


def test_nat_counts(nat):
    spec = AlgebraSpec.from_json(nat, load_json(ALGEBRAS / "nat_count.json"))
    assert eval_recursor(nat, spec, parse_term(nat, "suc (suc zero)")) == 2


def test_tree_leaves(tree):
    spec = AlgebraSpec.from_json(tree, load_json(ALGEBRAS / "tree_leaves.json"))
    assert eval_recursor(tree, spec, parse_term(tree, "node leaf leaf")) == 2


def test_constant_algebra_is_zero(tree):
    spec = AlgebraSpec.constant(tree)
    assert all(eval_recursor(tree, spec, t) == 0 for t in enumerate_terms(tree, 4))


def test_nat_numerals_agree_with_the_text(nat):
    spec = alg(nat, zero="0", suc="x0 + 1")
    names = [n for n, _ in nat.entries]
    for t in enumerate_terms(nat, 11):
        assert eval_recursor(nat, spec, t) == oracles.nat_value(t.show(names))


def _morphism_law(s, spec, t):
    """The recursor commutes with the constructor at the root of t."""
    here = eval_recursor(s, spec, t)
    xs = [eval_recursor(s, spec, a) for a in t.args]
    return here == apply_expr(spec.exprs[t.head], xs)


def test_recursor_is_a_morphism_on_nat(nat):
    spec = alg(nat, zero="3", suc="2 * x0 - 1")
    assert all(_morphism_law(nat, spec, t) for t in enumerate_terms(nat, 11))


def test_recursor_is_a_morphism_on_random_trees(tree):
    rng = random.Random(0)
    spec = alg(tree, leaf="1", node="x0 * 3 + max(x1, 2) - min(x0, x1)")
    for _ in range(200):
        assert _morphism_law(tree, spec, random_term(tree, rng, 8))


# eliminators


def test_triangular_numbers(nat):
    spec = DispAlgebraSpec.from_json(nat, load_json(ALGEBRAS / "nat_triangular.json"))
    assert eval_eliminator(nat, spec, parse_term(nat, "suc (suc zero)")) == 3
    for n, t in enumerate(enumerate_terms(nat, 11)):
        assert eval_eliminator(nat, spec, t) == oracles.triangular(n)


def test_tree_height(tree):
    spec = dalg(tree, {"leaf": "0", "node": "max(ih0, ih1) + 1"})
    assert eval_eliminator(tree, spec, parse_term(tree, "node leaf leaf")) == 1
    assert eval_eliminator(tree, spec, parse_term(tree, "node (node leaf leaf) leaf")) == 2


def test_zero_methods_give_zero(tree):
    spec = dalg(tree, {"leaf": "0", "node": "0"})
    assert all(eval_eliminator(tree, spec, t) == 0 for t in enumerate_terms(tree, 4))


def _beta_law(s, spec, t):
    here = eval_eliminator(s, spec, t)
    ihs = [eval_eliminator(s, spec, a) for a in t.args]
    xs = ([eval_recursor(s, spec.companion, a) for a in t.args] if spec.companion
          else [0] * len(t.args))
    return here == apply_expr(spec.methods[t.head], xs, ihs)


def test_eliminator_beta_on_nat(nat):
    spec = dalg(nat, {"zero": "5", "suc": "ih0 * x0 + 1"}, {"zero": "0", "suc": "x0 + 1"})
    assert all(_beta_law(nat, spec, t) for t in enumerate_terms(nat, 11))


def test_eliminator_beta_on_random_trees(tree):
    rng = random.Random(1)
    spec = dalg(tree, {"leaf": "1", "node": "ih0 + ih1 + x0 * x1"},
                {"leaf": "1", "node": "x0 + x1"})
    for _ in range(200):
        assert _beta_law(tree, spec, random_term(tree, rng, 8))


def test_non_dependent_eliminator_is_the_recursor(tree):
    ops = {"leaf": "2", "node": "x0 * x1 + 1"}
    methods = {"leaf": "2", "node": "ih0 * ih1 + 1"}
    r, e = alg(tree, **ops), dalg(tree, methods)
    assert all(eval_recursor(tree, r, t) == eval_eliminator(tree, e, t)
               for t in enumerate_terms(tree, 4))


# errors


@pytest.mark.parametrize("ops", [
    {"zero": "x0", "suc": "x0 + 1"},       # zero has no arguments
    {"zero": "0"},                        # suc missing
    {"zero": "0", "suc": "x0", "one": "1"},
    {"zero": "0", "suc": "ih0"},          # ih only in displayed algebras
    {"zero": "0", "suc": "x0 +"},
])
def test_malformed_algebras(nat, ops):
    with pytest.raises(SigforgeError) as info:
        alg(nat, **ops)
    assert info.value.code == "E_ARITY"


def test_methods_using_x_need_a_companion(nat):
    with pytest.raises(SigforgeError) as info:
        dalg(nat, {"zero": "0", "suc": "x0"})
    assert info.value.code == "E_ARITY"


def test_other_carriers_are_rejected(nat):
    with pytest.raises(SigforgeError):
        AlgebraSpec.from_json(nat, {"carrier": "float", "ops": {"zero": "0", "suc": "x0"}})


def _numeral(n: int) -> str:
    return "suc (" * n + "zero" + ")" * n


@pytest.mark.parametrize("impl", KERNELS, ids=lambda k: k.IMPLEMENTATION)
def test_overflow_is_reported(nat, impl):
    spec = alg(nat, zero="2", suc="x0 * x0")
    t = parse_term(nat, _numeral(6))
    with pytest.raises(SigforgeError) as info:
        eval_recursor(nat, spec, t, impl)
    assert info.value.code == "E_OVERFLOW"
    assert eval_recursor(nat, spec, parse_term(nat, _numeral(5)), impl) == 2 ** 32


def test_node_cap_is_reported(nat):
    t = parse_term(nat, "suc (suc (suc zero))")
    with pytest.raises(SigforgeError) as info:
        flatten(t, max_nodes=3)
    assert info.value.code == "E_OVERFLOW"


def test_deep_terms_do_not_use_the_host_stack(nat):
    t = TermValue(0)
    for _ in range(100_000):
        t = TermValue(1, (t,))
    assert eval_recursor(nat, alg(nat, zero="0", suc="x0 + 1"), t) == 100_000


def test_ill_typed_terms_are_rejected(tree):
    with pytest.raises(SigforgeError):
        parse_term(tree, "node leaf")


# kernels


def test_a_compiled_kernel_is_built():
    assert KERNELS[0].IMPLEMENTATION == "cython"
    assert kernel is KERNELS[0]


def test_pure_fallback_is_selected_by_the_environment():
    code = "from sigforge.term_algebra import kernel; print(kernel.IMPLEMENTATION)"
    out = subprocess.run([sys.executable, "-c", code], env={"SIGFORGE_PURE": "1"},
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_kernels_agree_on_trees(tree):
    rng = random.Random(2)
    r = alg(tree, leaf="7", node="min(x0, x1) * 3 - max(x0, -x1)")
    e = dalg(tree, {"leaf": "1", "node": "ih0 - ih1 + x0"}, {"leaf": "1", "node": "x0 + x1"})
    for _ in range(50):
        t = random_term(tree, rng, 10)
        assert len({eval_recursor(tree, r, t, k) for k in KERNELS}) == 1
        assert len({eval_eliminator(tree, e, t, k) for k in KERNELS}) == 1


# random expressions against Python integers


def _python_value(src: str, xs: list[int]) -> int:
    env = {f"x{i}": v for i, v in enumerate(xs)}
    return eval(src, {"__builtins__": {}, "min": min, "max": max}, env)


def _exprs(k: int):
    leaves = st.one_of(st.integers(0, 1000).map(str), st.sampled_from([f"x{i}" for i in range(k)]))

    def grow(sub):
        return st.one_of(
            st.builds(lambda a, b, op: f"({a} {op} {b})", sub, sub, st.sampled_from("+-*")),
            st.builds(lambda a, b, f: f"{f}({a}, {b})", sub, sub, st.sampled_from(["min", "max"])),
            st.builds(lambda a: f"-({a})", sub),
        )

    return st.recursive(leaves, grow, max_leaves=8)


@settings(max_examples=300, deadline=None)
@given(_exprs(2), st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=2, max_size=2))
def test_expressions_match_python_arithmetic(src, xs):
    want = _python_value(src, xs)
    e = compile_expr(src, 2)
    for impl in KERNELS:
        if INT64_MIN <= want <= INT64_MAX:
            assert apply_expr(e, xs, impl=impl) == want


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 9))
def test_recursor_agrees_with_a_direct_fold(seed, depth):
    s = _TREE
    t = random_term(s, random.Random(seed), depth)

    def fold(u):
        return 1 if u.head == 0 else fold(u.args[0]) + 2 * fold(u.args[1])

    assert eval_recursor(s, alg(s, leaf="1", node="x0 + 2 * x1"), t) == fold(t)


_TREE = corpus("tree.sig")


def test_corpus_simple_signatures_recheck():
    for name in ("nat.sig", "tree.sig", "list.sig"):
        check_ctx(corpus(name).ctx)
