import pytest
from hypothesis import given, strategies as st

from kocalab.combterm import (
    App, Comb, Const, K, S, Var, app, free_vars, lambda_star, lambda_stars, leaves,
    parse_term, size, substitute,
)
from kocalab.errors import EvaluationError, ParseError
from kocalab.koca import boolean, heyting_chain
from kocalab.oca import eval_term

INSTANCES = [boolean(0), boolean(1), boolean(2), heyting_chain(3), heyting_chain(4)]


def terms(names, variables=("x", "y", "z"), max_leaves=5):
    options = [st.sampled_from([Const(n) for n in names]), st.sampled_from([K, S])]
    if variables:
        options.append(st.sampled_from([Var(v) for v in variables]))
    leaf = st.one_of(*options)
    return st.recursive(leaf, lambda sub: st.builds(App, sub, sub), max_leaves=max_leaves)


def closed_terms(names, max_leaves=5):
    return terms(names, variables=(), max_leaves=max_leaves)


def test_lambda_star_base_cases():
    assert lambda_star("y", Var("y")) == app(S, K, K)
    assert lambda_star("y", Var("x")) == App(K, Var("x"))
    assert lambda_star("y", Const("a")) == App(K, Const("a"))
    assert lambda_star("y", App(Var("x"), Var("y"))) == app(S, App(K, Var("x")), app(S, K, K))


def test_lambda_stars_order():
    assert lambda_stars(["x", "y"], Var("x")) == lambda_star("x", lambda_star("y", Var("x")))


def test_term_utilities():
    t = app(Var("x"), Const("a"), app(S, Var("y")))
    assert size(t) == 3
    assert free_vars(t) == {"x", "y"}
    assert [str(v) for v in leaves(t)] == ["x", "a", "s", "y"]
    assert substitute(t, {"x": K}) == app(K, Const("a"), app(S, Var("y")))
    assert str(t) == "x a (s y)"


def test_parse_term():
    assert parse_term("s k k") == app(S, K, K)
    assert parse_term("x (y z)") == App(Var("x"), App(Var("y"), Var("z")))
    assert parse_term("b0 k", constants=["b0"]) == App(Const("b0"), K)
    with pytest.raises(ParseError):
        parse_term("(s k")
    with pytest.raises(ParseError):
        parse_term("q", variables=set())
    with pytest.raises(ParseError):
        parse_term("")
    with pytest.raises(ValueError):
        Comb("z")


def test_eval_skk_top_on_two_element_boolean():
    x = boolean(1)
    assert eval_term(x, app(S, K, K, Const("b1"))) == x.index("b1")


def test_eval_errors():
    x = boolean(1)
    with pytest.raises(EvaluationError):
        eval_term(x, Var("x"))
    with pytest.raises(EvaluationError):
        eval_term(x, Const("nope"))
    with pytest.raises(EvaluationError):
        eval_term(x, App(K, Var("q")))


@given(terms(["a", "b"]), st.sampled_from(["x", "y", "z"]))
def test_lambda_star_removes_the_variable(t, v):
    assert v not in free_vars(lambda_star(v, t))
    assert free_vars(lambda_star(v, t)) == free_vars(t) - {v}


@given(terms(["a", "b"]), st.sampled_from(["x", "y"]))
def test_lambda_star_constants_come_from_t_or_k_s(t, v):
    allowed = {leaf for leaf in leaves(t) if not isinstance(leaf, Var)} | {K, S}
    assert all(leaf in allowed for leaf in leaves(lambda_star(v, t)) if not isinstance(leaf, Var))


@pytest.mark.parametrize("x", INSTANCES, ids=lambda x: f"{x.n}-{x.carrier[0]}")
@given(data=st.data())
def test_beta_inequality(x, data):
    names = list(x.carrier)
    t = data.draw(terms(names, variables=("y",)))
    u = data.draw(closed_terms(names))
    lhs = eval_term(x, App(lambda_star("y", t), u))
    rhs = eval_term(x, substitute(t, {"y": u}))
    assert x.le(lhs, rhs)
