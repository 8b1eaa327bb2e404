from hypothesis import given, settings

from conftest import ATOMS_NEG, seqs
from dafocus.calculus import DA, DA_FOC, has_complex_async, prove_all, provable, replay
from dafocus.config import figure, parse_sequent, sequent_text
from dafocus.focus import (
    async_step, focus_choices, focused_provable, prove_focused, sync_step, to_unfocused,
)
from dafocus.formula import Signature, parse_declaration
from dafocus.oracle import bias_variants

QUANT = r"(S/(N\S))/CN, CN, (N\S)/N, N => S"


def sig(*decls):
    s = Signature()
    for d in decls:
        parse_declaration(d, s)
    return s


def test_async_right_division():
    s = parse_sequent(r"b, c => a\d")
    ins = async_step(s)
    assert ins.rule == "\\R"
    [p] = ins.premises
    assert p.antecedent[:1] == figure(s.succedent.a)
    assert str(p) == "a, b, c => d"


def test_async_plus_left():
    ins = async_step(parse_sequent("c, a + b => c"))
    assert ins.rule == "+L"
    assert [str(p) for p in ins.premises] == ["c, a => c", "c, b => c"]


def test_async_exhausted_and_choices():
    s = parse_sequent(r"N, N\S => S")
    assert async_step(s) is None
    assert [p.focus for p in focus_choices(s)] == [(0,), (1,)]
    assert [p.focus for p in focus_choices(parse_sequent("=> I"))] == ["succedent"]
    assert focus_choices(parse_sequent("a + b => a + b")) == []


def test_sync_examples():
    g = sig("atom b bias +")
    found = [[str(p) for p in i.premises] for i in sync_step(parse_sequent("<<a/b>>, b => a", g))]
    # one instance per choice of the argument material
    assert ["b => <<b>>", "<<a>> => a"] in found
    assert ["=> <<b>>", "<<a>>, b => a"] in found
    [ins] = sync_step(parse_sequent("1 => <<J>>"))
    assert ins.rule == "JR" and ins.premises == ()
    ins = sync_step(parse_sequent(r"a\a => <<(a\a) + b>>"))
    got = [(i.rule, [str(p) for p in i.premises]) for i in ins]
    assert got == [("+R1", [r"a\a => a\a"]), ("+R2", ["a\\a => b"])]
    assert sync_step(parse_sequent(r"<<q>>, q\s => s")) == []


def test_focused_examples():
    res = prove_focused(parse_sequent(QUANT))
    assert len(res.derivations) == 1
    assert prove_focused(parse_sequent(r"N, (N\S)/(N + CN/CN), N => S")).provable
    [d] = prove_focused(parse_sequent("a => a")).derivations
    assert d.rule == "foc" and d.premises[0].rule == "Id"
    assert d.premises[0].conclusion.focus == (0,)


@settings(max_examples=120)
@given(seqs(5))
def test_completeness_and_soundness(s):
    assert focused_provable(s) == provable(s)


@given(seqs(4, atoms=ATOMS_NEG))
def test_bias_invariance(s):
    verdicts = {focused_provable(v) for v in bias_variants(s)}
    assert len(verdicts) == 1


@given(seqs(4))
def test_erasure_and_phase_discipline(s):
    res = prove_focused(s, max_proofs=20)
    for d in res.derivations:
        assert replay(d, DA_FOC) == s
        assert replay(to_unfocused(d), DA) == s
        for n in d.nodes():
            c = n.conclusion
            assert not (c.has_focus() and has_complex_async(c))


@given(seqs(4))
def test_focused_count_at_most_unfocused(s):
    u = prove_all(s, max_proofs=500)
    f = prove_focused(s, max_proofs=500)
    if not (u.truncated or f.truncated):
        assert len(f.derivations) <= len(u.derivations)


def test_quantifier_strict_reduction():
    s = parse_sequent(QUANT)
    assert len(prove_focused(s).derivations) < len(prove_all(s).derivations)
    assert sequent_text(s) == QUANT
