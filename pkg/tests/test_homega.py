import pytest
from hypothesis import given, strategies as st

from kocalab import config
from kocalab import homega as H
from kocalab.cli import default_space
from kocalab.combterm import App, E, K, S, Var as TVar, app, lambda_star
from kocalab.errors import DerivationError, EvaluationError, KindError, ParseError, ResourceError
from kocalab.homega.adequacy import rule_preservation, substitution_check
from kocalab.homega.derivations import depth
from kocalab.homega.syntax import BOT, Apply, Forall, Implies, Lam, Var, free_vars
from kocalab.koca import boolean, heyting_chain


def signature():
    sig = H.pa_signature()
    sig.variables.update({"y": H.Arrow(H.I, H.O), "P": H.O, "z": H.I})
    return sig


SIG = signature()


def p(text, scope=None):
    return H.parse_expr(text, SIG, scope)


def der(text):
    return H.parse_derivation(text, SIG)


# syntax

def test_parse_and_show():
    e = p("forall x:I. (y x => y x)")
    assert isinstance(e, Forall) and e.var_kind == H.I
    assert isinstance(e.body, Implies)
    assert H.show(e) == "forall x:I. y x => y x"
    assert p("P => P => P") == Implies(p("P"), Implies(p("P"), p("P")))
    assert H.parse_kind("I -> I -> o", SIG) == H.Arrow(H.I, H.Arrow(H.I, H.O))


def test_kind_error_carries_position():
    with pytest.raises(KindError) as exc:
        p("forall x:I. x x")
    assert exc.value.pos == 14
    with pytest.raises(KindError):
        p("P => z")
    with pytest.raises(KindError):
        p("succ = 0")


def test_parse_errors():
    for bad in ("forall x:I y x", "(P", "P =>", "q", "forall x:J. P", "P $ P"):
        with pytest.raises(ParseError):
            p(bad)


def test_equality_is_leibniz():
    eq = p("succ 0 = 0")
    assert H.show(eq) == "forall p:(I -> o). p (succ 0) => p 0"
    assert H.alpha_eq(eq, H.leibniz_eq(p("succ 0"), p("0")))
    # the bound predicate variable avoids names already used
    eq2 = H.leibniz_eq(Var("p", H.I), Var("p", H.I))
    assert eq2.var == "p1"


def test_alpha_equivalence_and_substitution():
    assert H.alpha_eq(p("forall x:I. y x"), p("forall w:I. y w"))
    assert not H.alpha_eq(p("forall x:I. y x"), p("forall x:I. y z"))
    # capture avoidance: substituting x for z under a binder of x
    body = p("forall x:I. y z")
    out = H.substitute(body, "z", Var("x", H.I))
    assert out.var != "x"
    assert free_vars(out) == {"y": H.Arrow(H.I, H.O), "x": H.I}
    assert H.substitute(body, "x", p("0")) == body


def test_signature_documents():
    text = "kind I\nconst 0 : I\nvar q : I -> o  # a predicate\nforall x:I. q x => q 0\n"
    sig, e = H.parse_homega(text)
    assert sig.consts["0"] == H.I and sig.variables["q"] == H.Arrow(H.I, H.O)
    assert H.show(e) == "forall x:I. q x => q 0"
    assert H.parse_homega("kind I\n")[1] is None
    with pytest.raises(ParseError):
        H.parse_signature("const c I\n")


def _terms():
    leaf = st.sampled_from([p("0"), p("z")])
    return st.recursive(leaf, lambda t: t.map(lambda a: Apply(SIG.const("succ"), a)), max_leaves=3)


def _formulas():
    atoms = st.one_of(st.just(p("P")), st.just(BOT), _terms().map(lambda t: Apply(SIG.var("y"), t)))

    def extend(sub):
        return st.one_of(
            st.builds(Implies, sub, sub),
            sub.map(lambda b: Forall("x", H.I, H.substitute(b, "z", Var("x", H.I)))),
            sub.map(lambda b: Forall("Q", H.O, Implies(Var("Q", H.O), b))),
            sub.map(lambda b: Apply(Lam("w", H.O, Implies(Var("w", H.O), b)), p("P"))),
        )

    return st.recursive(atoms, extend, max_leaves=5)


@given(_formulas())
def test_show_parse_round_trip(f):
    assert H.alpha_eq(p(H.show(f)), f)


@given(_formulas(), _terms())
def test_substitution_removes_the_variable(f, t):
    out = H.substitute(f, "z", t)
    assert "z" not in free_vars(out) or "z" in free_vars(t)
    assert out.kind == f.kind


# derivations

def test_axiom_and_identity_realizers():
    ctx = (("h", p("P")),)
    seq = H.check_derivation(der("ax(h)"), ctx)
    assert seq.realizer == TVar("h") and seq.formula == p("P")
    seq = H.check_derivation(der("imp_i(h : P, ax(h))"))
    assert seq.realizer == App(E, lambda_star("h", TVar("h")))
    assert seq.realizer == App(E, app(S, K, K))
    assert H.alpha_eq(seq.formula, p("P => P"))


def test_rules_and_their_realizers():
    ctx = (("f", p("P => y 0")), ("a", p("P")), ("g", p("forall x:I. y x")))
    seq = H.check_derivation(der("imp_e(ax(f), ax(a))"), ctx)
    assert seq.realizer == App(TVar("f"), TVar("a"))
    assert seq.formula == p("y 0")
    seq = H.check_derivation(der("forall_e(ax(g), succ z)"), ctx)
    assert seq.realizer == TVar("g")
    assert seq.formula == p("y (succ z)")
    seq = H.check_derivation(der("forall_i(w : I, forall_e(ax(g), w))"), ctx)
    assert H.alpha_eq(seq.formula, p("forall x:I. y x"))


def test_derivation_errors():
    ctx = (("h", p("y z")), ("a", p("P")))
    with pytest.raises(DerivationError):
        H.check_derivation(der("forall_i(z : I, ax(h))"), ctx)
    with pytest.raises(DerivationError):
        H.check_derivation(der("ax(nope)"), ctx)
    with pytest.raises(DerivationError):
        H.check_derivation(der("imp_e(ax(a), ax(a))"), ctx)
    with pytest.raises(DerivationError):
        H.check_derivation(der("forall_e(ax(a), 0)"), ctx)
    with pytest.raises(DerivationError):
        H.check_derivation(der("imp_i(a : P, ax(a))"), ctx)
    with pytest.raises(DerivationError):
        H.check_derivation(der("ax(s)"), (("s", p("P")),))
    with pytest.raises(ParseError):
        der("imp_x(ax(h))")
    with pytest.raises(ParseError):
        der("ax(h) trailing")


def test_derivation_show_parse_round_trip():
    text = "forall_i(w : I, imp_i(h : y w, imp_e(imp_i(u : y w, ax(u)), ax(h))))"
    d = der(text)
    assert H.show_derivation(d) == text
    assert depth(d) == 5


def test_derivation_file():
    text = ("kind I\nconst 0 : I\nvar q : I -> o\n"
            "hyp h : forall x:I. q x\n"
            "forall_e(ax(h),\n  0)\n")
    sig, ctx, d = H.parse_derivation_file(text)
    seq = H.check_derivation(d, ctx)
    assert H.show(seq.formula) == "q 0"
    with pytest.raises(ParseError):
        H.parse_derivation_file("kind I\n")


# semantics

def test_interpretation_encodes_functions():
    x = boolean(1)
    interp = H.zmod_model(x, 3)
    succ = interp.consts["succ"]
    assert [interp.call(H.II, succ, v) for v in range(3)] == [1, 2, 0]
    add = interp.consts["add"]
    assert interp.call(H.II, interp.call(H.III, add, 2), 2) == 1
    assert interp.size(H.Arrow(H.I, H.O)) == 8
    assert H.interpret(p("succ (succ 0)"), interp) == 2
    with pytest.raises(EvaluationError):
        H.interpret(p("y 0"), interp)


def test_formulas_denote_in_the_carrier():
    x = boolean(1)
    interp = H.truncated_model(x, 3)
    top, bot = x.top, x.bottom
    assert H.interpret(p("P => P"), interp, {"P": bot}) == top
    assert H.interpret(p("forall Q:o. Q"), interp) == bot
    assert H.interpret(p("succ 0 = 0"), interp) == bot
    assert H.interpret(p("succ (succ 0) = succ (succ (succ 0))"), interp) == top


def test_satisfies_and_counterexample():
    x = boolean(2)
    interp = H.truncated_model(x, 3)
    seq = H.check_derivation(der("imp_i(h : P, ax(h))"))
    assert H.satisfies(x, interp, seq)
    # a realizer that is too strong for the formula is caught
    bad = H.Sequent((), K, p("P => bot"))
    w = H.counterexample(x, interp, bad)
    assert w is not None and w["bound"] != w["value"]


def test_a_corrupted_realizer_is_found():
    x = boolean(2)
    interp = H.truncated_model(x, 3)
    seq = H.check_derivation(der("imp_e(ax(f), ax(a))"), (("f", p("P => y 0")), ("a", p("P"))))
    assert H.satisfies(x, interp, seq)
    corrupted = H.Sequent(seq.context, TVar("a"), seq.formula)
    assert not H.satisfies(x, interp, corrupted)


@pytest.mark.parametrize("x", [boolean(1), boolean(2), heyting_chain(3)], ids=["b1", "b2", "chain3"])
def test_adequacy_suite(x):
    interp = H.truncated_model(x, 3)
    rep = H.adequacy_suite(x, interp, default_space(), 3)
    assert rep.passed
    assert rep.meta["derivations"] == 39
    assert rep.meta["rules"] == {"ax": 2, "imp_i": 29, "imp_e": 3, "forall_i": 2, "forall_e": 3}
    assert H.adequacy_suite(x, interp, default_space(), 1).meta["derivations"] == 2


def test_enumeration_respects_the_cap():
    space = default_space()
    space.max_per_level = 3
    assert len(H.enumerate_derivations(space, 3)) == 3


def test_substitution_check():
    interp = H.zmod_model(boolean(1), 3)
    formulas = [p("y z"), p("forall x:I. y (succ z) => y x"), p("z = succ z")]
    terms = [p("0"), p("succ z"), p("z")]
    rep = substitution_check(interp, formulas, terms)
    assert rep.passed and rep.checks[0].count > 0


def test_rule_preservation_on_each_rule():
    x = boolean(2)
    interp = H.truncated_model(x, 3)
    ctx = (("f", p("P => y 0")), ("a", p("P")), ("g", p("forall x:I. y x")))
    for text in ("ax(a)", "imp_e(ax(f), ax(a))", "imp_i(h : y 0, ax(h))",
                 "forall_e(ax(g), succ 0)", "forall_i(w : I, forall_e(ax(g), w))"):
        prem, concl = rule_preservation(x, interp, der(text), ctx)
        assert concl or not prem


def test_function_space_guard():
    interp = H.truncated_model(boolean(1), 3)
    old = config.MAX_FUNCTION_SPACE
    config.MAX_FUNCTION_SPACE = 4
    try:
        with pytest.raises(ResourceError):
            H.interpret(p("forall q:I -> o. q 0"), interp)
    finally:
        config.MAX_FUNCTION_SPACE = old


# arithmetic

def test_leibniz_check_and_skip():
    x = boolean(2)
    interp = H.zmod_model(x, 3)
    rep = H.leibniz_check(x, interp, p("succ (succ (succ 0))"), p("0"))
    assert rep.passed and not rep.checks[0].skipped
    rep = H.leibniz_check(x, interp, p("succ 0"), p("0"))
    assert rep.checks[0].skipped


def test_pa_on_the_truncated_model_passes():
    for x in (boolean(1), boolean(2), heyting_chain(3)):
        assert H.pa_axioms_check(x, H.truncated_model(x, 3)).passed


def test_pa_on_zmod_fails_only_at_succ_not_zero():
    # succ 2 = 0 in Z/3, so the premise of succ x = 0 => bot is top at x = 2
    x = boolean(2)
    rep = H.pa_axioms_check(x, H.zmod_model(x, 3))
    failed = [c.name for c in rep.failures()]
    assert failed == ["succ-not-zero"]
    assert rep["succ-not-zero"].witness == {"realizer": "b11", "value": "b00"}


def test_nat_formula_is_realized_at_numerals():
    x = boolean(1)
    interp = H.truncated_model(x, 3)
    for k in range(3):
        numeral = H.parse_expr(" ".join(["succ ("] * k + ["0"] + [")"] * k), SIG)
        assert H.interpret(H.nat_formula(numeral), interp) == x.top


def test_theory_member():
    for x in (boolean(1), boolean(2), heyting_chain(3)):
        interp = H.truncated_model(x, 3)
        assert H.theory_member(x, interp, p("bot => bot")) is not None
        assert H.theory_member(x, interp, p("forall Q:o. Q")) is None
