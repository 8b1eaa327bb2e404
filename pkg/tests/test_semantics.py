import pytest
from hypothesis import given

from conftest import ATOMS, seqs
from dafocus.calculus import prove_all
from dafocus.config import parse_sequent
from dafocus.focus import prove_focused
from dafocus.formula import parse_formula
from dafocus.semantics import (
    App, Case, Fun, Inj, Lam, Pair, Prod, Sum, TermSyntaxError, Var, alpha_equal,
    canonical, commute, context_types, default_env, eta_normal, extract, free_vars, has_type,
    normalize, parse_term, readings, sem_type, subst, term_text, type_text,
)

QUANT = r"(S/(N\S))/CN, CN, (N\S)/N, N => S"


def t(text):
    return parse_term(text)


def test_beta_proj_case():
    assert normalize(t(r"((\x.(f x)) a)")) == t("(f a)")
    assert normalize(t("p1 (a, b)")) == Var("a")
    assert normalize(t("p2 (a, b)")) == Var("b")
    assert normalize(t("case i2 a of x.(f x) | y.(g y)")) == t("(g a)")
    assert normalize(t(r"case i1 ((\z.z) a) of x.x | y.b")) == Var("a")


def test_substitution_avoids_capture():
    out = subst(t(r"\y.(x y)"), "x", Var("y"))
    assert isinstance(out, Lam) and out.var != "y"
    assert free_vars(out) == {"y"}
    assert alpha_equal(normalize(t(r"((\x.\y.(x y)) y)")), out)


def test_alpha():
    assert alpha_equal(t(r"\x.(f x)"), t(r"\y.(f y)"))
    assert not alpha_equal(t(r"\x.(f x)"), t(r"\y.(g y)"))
    assert alpha_equal(t("case z of a.a | b.b"), t("case z of u.u | v.v"))
    assert canonical(t(r"\q.\r.(q r)")) == canonical(t(r"\m.\n.(m n)"))


def test_parse_print():
    for text in [r"\x.((f x) y)", "case z of a.(i1 a) | b.(i2 b)", "(p1 z, p2 z)", "unit",
                 r"((x1 x2) \x.((x3 x4) x))"]:
        assert alpha_equal(parse_term(term_text(parse_term(text))), parse_term(text))
    with pytest.raises(TermSyntaxError):
        parse_term(r"\x (f x)")
    with pytest.raises(TermSyntaxError):
        parse_term("(f x")


def test_types():
    assert sem_type(parse_formula(r"(N\S)/N")) == Fun(sem_type(parse_formula("N")),
                                                       Fun(sem_type(parse_formula("N")), sem_type(parse_formula("S"))))
    assert isinstance(sem_type(parse_formula("N & CN")), Prod)
    assert isinstance(sem_type(parse_formula("N + CN")), Sum)
    assert type_text(sem_type(parse_formula(r"N\S"))) == "(N -> S)"
    ctx = {"f": sem_type(parse_formula(r"N\S")), "n": sem_type(parse_formula("N"))}
    assert has_type(t("(f n)"), ctx, sem_type(parse_formula("S")))
    assert not has_type(t("(n f)"), ctx, sem_type(parse_formula("S")))


def test_quantifier_reading():
    s = parse_sequent(QUANT)
    names = ["x_Q", "x_CN", "x_TV", "x_N"]
    env = {p: Var(n) for (p, v), n in zip(default_env(s).items(), names)}
    rs = readings(s, prove_all(s).derivations, env)
    assert len(rs) == 1
    assert alpha_equal(rs[0], t(r"((x_Q x_CN) \x.((x_TV x_N) x))"))
    assert rs == readings(s, prove_focused(s).derivations, env)


def test_extract_application():
    s = parse_sequent(r"N, N\S => S")
    [d] = prove_all(s).derivations
    assert extract(d) == App(Var("x2"), Var("x1"))


def test_commute_lifts_case():
    a = t("i1 (case z of x.x | y.y)")
    b = t("case z of x.(i1 x) | y.(i1 y)")
    assert not alpha_equal(normalize(a), normalize(b))
    assert alpha_equal(commute(a), commute(b))
    a = t("(case z of x.x | y.y, case z of u.u | v.v)")
    b = t("case z of x.(x, x) | y.(y, y)")
    assert alpha_equal(commute(a), commute(b))


def test_commute_drops_redundant_case():
    assert commute(t("case z of x.w | y.w")) == Var("w")
    # a case whose branches use the variables stays
    assert isinstance(commute(t("case z of x.x | y.y")), Case)


def test_commute_innermost_first():
    a = t("case (f (case z of x.x | y.y)) of u.u | v.v")
    b = t("case z of x.(case (f x) of u.u | v.v) | y.(case (f y) of u.u | v.v)")
    assert alpha_equal(commute(a), commute(b))


def test_commute_keeps_bound_scrutinee():
    a = t(r"\z.case z of x.x | y.y")
    assert alpha_equal(commute(a), a)


def test_eta():
    assert eta_normal(t(r"\x.(f x)")) == Var("f")
    assert isinstance(eta_normal(t(r"\x.((f x) x)")), Lam)
    assert eta_normal(t("(p1 z, p2 z)")) == Var("z")
    assert eta_normal(t("case z of x.i1 x | y.i2 y")) == Var("z")
    # context form: the same context around both injections
    assert alpha_equal(eta_normal(t("case (g a) of x.((f (i1 x)) b) | y.((f (i2 y)) b)")),
                       t("((f (g a)) b)"))
    assert isinstance(eta_normal(t("case z of x.(f (i1 x)) | y.(g (i2 y))")), Case)
    assert isinstance(eta_normal(t("case z of x.(i1 x) | y.(i1 y)")), Case)


@given(seqs(4, ATOMS))
def test_readings_typed(s):
    res = prove_all(s, max_proofs=20, node_budget=20000)
    ctx = context_types(s)
    want = sem_type(s.succedent)
    for d in res.derivations:
        r = normalize(extract(d))
        assert has_type(r, ctx, want)
        assert free_vars(r) <= set(ctx)
        c = commute(r)
        assert has_type(c, ctx, want)
        assert alpha_equal(commute(c), c)
        e = eta_normal(r)
        assert has_type(e, ctx, want)
        assert alpha_equal(normalize(e), e)


@given(seqs(4, ATOMS))
def test_reading_text_round_trip(s):
    for r in readings(s, prove_all(s, max_proofs=5, node_budget=20000).derivations):
        assert alpha_equal(parse_term(term_text(r)), r)


def test_inj_and_pair_round_trip():
    for x in [Inj(1, Var("a")), Pair(Var("a"), Inj(2, Var("b")))]:
        assert parse_term(term_text(x)) == x
