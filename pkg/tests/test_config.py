import pytest
from hypothesis import given

from conftest import seqs
from dafocus.config import (
    ONE, SEP, ArityError, Leaf, Node, Sequent, figure, fold, item_paths, occurrences,
    parse_config, parse_sequent, plug, sequent_text, sort_config, wrap,
)
from dafocus.formula import At, Atom, Circum, SortError, Under, parse_formula

S, N, CN = (At(Atom(x)) for x in ("S", "N", "CN"))
A, B = At(Atom("A")), At(Atom("B"))


def test_figures():
    assert figure(N) == (Leaf(N),)
    sn = Circum(1, S, N)
    assert figure(sn) == (Node(sn, ((SEP,),)),)
    assert sort_config(figure(Circum(2, sn, N))) == 2


def test_fold_examples():
    assert fold(ONE, [(Leaf(N),)]) == (Leaf(N),)
    assert fold((Leaf(A), SEP, SEP), [(Leaf(B),), ()]) == (Leaf(A), Leaf(B))
    sn = Circum(1, S, N)
    assert fold(figure(sn), [(Leaf(N),)]) == (Node(sn, ((Leaf(N),),)),)
    with pytest.raises(ArityError):
        fold(ONE, [])


def test_wrap_examples():
    assert wrap(ONE, 1, (Leaf(N),)) == (Leaf(N),)
    d = (Leaf(A), SEP, Leaf(B), SEP)
    assert wrap(d, 2, ONE) == d
    shoulder = Circum(1, Under(N, S), N)
    the_man = (Leaf(parse_formula("N/CN")), Leaf(CN))
    assert wrap(figure(shoulder), 1, the_man) == (Node(shoulder, (the_man,)),)
    with pytest.raises(ArityError):
        wrap(d, 3, ONE)


def test_occurrences_examples():
    nd = Under(N, S)
    [(path, ctx, x)] = occurrences((Leaf(N), Leaf(nd)), lambda f: f == nd)
    assert path == (1,) and ctx.fillers == ()
    sa = Circum(1, S, N)
    c = (Node(sa, ((Leaf(B),),)),)
    [(path, ctx, x)] = occurrences(c, lambda f: f == sa)
    assert ctx.fillers == ((Leaf(B),),)
    assert plug(ctx, figure(sa)) == c


@given(seqs(5))
def test_plug_inverts_occurrences(s):
    for path, ctx, x in occurrences(s.antecedent, lambda f: True):
        assert plug(ctx, figure(x.formula)) == s.antecedent


@given(seqs(5))
def test_sort_bookkeeping(s):
    c = s.antecedent
    assert sort_config(c) == s.succedent.sort
    n = sort_config(c)
    fillers = [figure(S)] * n
    assert sort_config(fold(c, fillers)) == 0
    assert fold(c, [ONE] * n) == c
    for k in range(1, n + 1):
        assert sort_config(wrap(c, k, (Leaf(N),))) == n - 1


def test_sequent_rejects_sort_mismatch():
    with pytest.raises(SortError):
        Sequent((Leaf(N),), Circum(1, S, N))
    with pytest.raises(SortError):
        Sequent((Leaf(N, True),), S, True)


def test_ill_formed_textbook_configuration_is_rejected():
    # a sort-1 type written without its brace arguments
    with pytest.raises(SortError):
        parse_config("(S up N) up_2 N{N, 1 : S up N, S}, 1, N, 1")


def test_config_syntax():
    s = parse_sequent(r"N, (N\S) up N{N/CN, CN} => S")
    assert sequent_text(s) == r"N, ((N\S) up N){N/CN, CN} => S"
    assert parse_sequent("() => I").antecedent == ()
    assert sort_config(parse_sequent("1 => J").antecedent) == 1
    f = parse_sequent("<<N>>, N\\S => S")
    assert f.focus == (0,)
    assert parse_sequent("=> <<I>>").focus == "succedent"


@given(seqs(5))
def test_sequent_text_round_trip(s):
    from dafocus.formula import Signature
    sig = Signature()
    for _, x in item_paths(s.antecedent):
        for a in _atoms(x.formula):
            sig.atoms[a.name] = a
    for a in _atoms(s.succedent):
        sig.atoms[a.name] = a
    assert parse_sequent(sequent_text(s), sig) == s


def _atoms(f):
    if isinstance(f, At):
        yield f.atom
    for c in f.children():
        yield from _atoms(c)
