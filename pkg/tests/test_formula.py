import pytest
from hypothesis import given

from conftest import formulas
from dafocus.formula import (
    ANTECEDENT, SUCCEDENT, At, Atom, Bias, Circum, FormulaSyntaxError, I, Infix, J, Over,
    Plus, Polarity, Signature, SortError, Under, With, WrapProd, is_async, parse_declaration,
    parse_formula, polarity_of, sort_of, to_text,
)

S, N, CN = (At(Atom(x)) for x in ("S", "N", "CN"))


def test_sorts_of_units_and_atoms():
    assert sort_of(I) == 0
    assert sort_of(J) == 1
    assert sort_of(N) == 0


def test_nested_circumfix_sort():
    inner = Circum(1, S, N)
    assert sort_of(inner) == 1
    assert sort_of(Circum(2, inner, N)) == 2


def test_sort_violations_rejected():
    with pytest.raises(SortError):
        Circum(2, S, N)
    with pytest.raises(SortError):
        Over(N, Circum(1, S, N))
    with pytest.raises(SortError):
        Infix(1, N, S)
    with pytest.raises(SortError):
        WrapProd(1, N, N)
    with pytest.raises(SortError):
        With(N, J)


def test_polarity_table():
    nd = Under(N, S)
    assert polarity_of(nd, ANTECEDENT) is Polarity.POS_INPUT
    assert polarity_of(nd, SUCCEDENT) is Polarity.NEG_OUTPUT
    assert polarity_of(Plus(N, N), ANTECEDENT) is Polarity.NEG_INPUT
    assert polarity_of(S, ANTECEDENT) is Polarity.POS_INPUT
    pos = At(Atom("p", 0, Bias.POS))
    assert polarity_of(pos, SUCCEDENT) is Polarity.POS_OUTPUT
    assert polarity_of(pos, ANTECEDENT) is Polarity.NEG_INPUT
    assert not is_async(pos, ANTECEDENT)


def test_parse_examples():
    assert parse_formula(r"(S/(N\S))/CN") == Over(Over(S, Under(N, S)), CN)
    assert parse_formula("(S up N) dn S") == Infix(1, Circum(1, S, N), S)
    assert parse_formula("(S ↑ N) ↓ S") == Infix(1, Circum(1, S, N), S)
    with pytest.raises(SortError):
        parse_formula("A up_2 B")


def test_precedence_and_non_associativity():
    assert parse_formula(r"(N\S)/N*(CN/CN)") == parse_formula(r"(N\S)/(N*(CN/CN))")
    with pytest.raises(FormulaSyntaxError):
        parse_formula("A/B/C")


def test_syntax_error_has_position():
    with pytest.raises(FormulaSyntaxError) as e:
        parse_formula("N\\")
    assert e.value.pos == 2


def test_declarations_set_bias_and_sort():
    sig = Signature()
    parse_declaration("atom p bias +", sig)
    parse_declaration("atom W sort 1", sig)
    assert parse_formula("p", sig).atom.bias is Bias.POS
    assert parse_formula("W", sig).sort == 1
    assert parse_formula("q", sig).atom.bias is Bias.NEG


@given(formulas(5))
def test_print_parse_round_trip(f):
    sig = Signature({a.name: a for a in _atoms(f)})
    assert parse_formula(to_text(f), sig) == f


@given(formulas(5))
def test_polarity_partitions(f):
    ant, suc = polarity_of(f, ANTECEDENT), polarity_of(f, SUCCEDENT)
    assert ant in (Polarity.POS_INPUT, Polarity.NEG_INPUT)
    assert suc in (Polarity.POS_OUTPUT, Polarity.NEG_OUTPUT)
    # the same formula is synchronous on exactly one side
    assert (ant is Polarity.NEG_INPUT) == (suc is Polarity.POS_OUTPUT)


def _atoms(f):
    if isinstance(f, At):
        yield f.atom
    for c in f.children():
        yield from _atoms(c)
