from importlib.resources import files

import pytest
from hypothesis import given, strategies as st

from dafocus.calculus import provable
from dafocus.config import sequent_text
from dafocus.focus import focused_provable
from dafocus.formula import Bias, parse_formula
from dafocus.lexicon import (
    LexiconError, UnknownTokens, entry_env, goals, load_lexicon, parse_entry,
)


@pytest.fixture(scope="module")
def lex():
    return load_lexicon(files("dafocus").joinpath("data/base.lex").read_text())


def goal_texts(lex, sentence, goal="S"):
    g = goals(lex, sentence.split(), parse_formula(goal, lex.signature))
    return [sequent_text(c.sequent) for c in g.candidates]


def test_load(lex):
    assert len(lex.entries) >= 20
    e = next(e for e in lex.entries if e.phonology[0] == "gives")
    assert e.formula.sort == 1
    assert e.parts == [("gives",), ("the", "cold", "shoulder")]
    assert e.term == "shun"


def test_separator_mismatch():
    with pytest.raises(LexiconError) as err:
        load_lexicon("atom N\nfoo 1 bar := N")
    assert err.value.line == 2
    with pytest.raises(LexiconError):
        load_lexicon("atom N\nfoo := N\\")
    with pytest.raises(LexiconError):
        load_lexicon("atom N\n1 foo := N up N")


def test_undeclared_atom_defaults():
    [e] = load_lexicon("atom N sort 0 bias +\nfoo := M/N").entries
    assert e.formula.sort == 0
    assert e.formula.c.atom.bias == Bias.NEG
    assert e.formula.b.atom.bias == Bias.POS


def test_comments_and_terms():
    lex = load_lexicon("# a comment\natom N  # trailing\n\nbob := N : b\n")
    [e] = lex.entries
    assert e.term == "b" and e.text() == "bob := N : b"


def test_simple_goals(lex):
    assert goal_texts(lex, "John sings") == ["N, N\\S => S"]
    assert goal_texts(lex, "John loves Mary") == ["N, (N\\S)/N, N => S"]
    assert goal_texts(lex, "the rice grows") == ["N/CN, N & CN, N\\S => S"]


def test_discontinuous_goal(lex):
    assert goal_texts(lex, "Mary gives the man the cold shoulder") == [
        "N, ((N\\S) up N){N/CN, CN} => S"]


def test_goals_provable(lex):
    for sentence in ["John sings", "Mary gives the man the cold shoulder", "the rice grows",
                     "John is the man", "everyone sings", "John considers Mary socialist"]:
        g = goals(lex, sentence.split(), parse_formula("S", lex.signature))
        assert any(provable(c.sequent) and focused_provable(c.sequent) for c in g.candidates), sentence


def test_rice_in_subject_and_object(lex):
    g = goals(lex, "John likes rice".split(), parse_formula("S", lex.signature))
    assert any(provable(c.sequent) for c in g.candidates)


def test_unknown_tokens(lex):
    with pytest.raises(UnknownTokens) as err:
        goals(lex, "John snores loudly".split(), parse_formula("S", lex.signature))
    assert err.value.tokens == ["snores", "loudly"]
    with pytest.raises(ValueError):
        goals(lex, [], parse_formula("S", lex.signature))


def test_cap(lex):
    amb = load_lexicon("atom N\na := N\na := N/N\na := N\\N\n")
    g = goals(amb, ["a"] * 8, parse_formula("N", amb.signature), cap=5)
    assert g.truncated and len(g.candidates) == 5


def test_entry_env(lex):
    [c] = goals(lex, "John sings".split(), parse_formula("S", lex.signature)).candidates
    assert [v.name for v in entry_env(c).values()] == ["j", "sing"]


def test_parse_entry_without_term(lex):
    e = parse_entry("Bill := N", lex.signature)
    assert e.term is None and e.parts == [("Bill",)]


WORDS = ["John", "Mary", "sings", "loves", "the", "man", "rice", "gives", "the", "cold", "shoulder"]


@given(st.lists(st.sampled_from(WORDS), min_size=1, max_size=6))
def test_candidates_yield_the_sentence(tokens):
    lex = load_lexicon(files("dafocus").joinpath("data/base.lex").read_text())
    for goal in ("S", "N"):
        for c in goals(lex, tokens, parse_formula(goal, lex.signature)).candidates:
            assert c.yield_tokens() == tokens
