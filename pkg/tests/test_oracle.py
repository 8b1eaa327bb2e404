from hypothesis import given

from conftest import ATOMS_NEG, seqs
from dafocus import oracle
from dafocus.config import parse_sequent, sequent_text
from dafocus.formula import Bias, atoms_of
from dafocus.oracle import (
    OracleConfig, OracleReport, bias_variants, check_sequent, minimise, rebias, run_oracle,
)


def test_bias_variants():
    s = parse_sequent(r"a, a\b => b")
    vs = bias_variants(s)
    assert len(vs) == 4
    assert len({v for v in vs}) == 4
    assert all(v.unfocused() == v for v in vs)
    pos = rebias(s, {"a": Bias.POS})
    assert {a.bias for a in atoms_of(pos.succedent)} == {Bias.NEG}
    assert {a.bias for a in atoms_of(pos.antecedent[0].formula)} == {Bias.POS}


def test_clean_sequents():
    cfg = OracleConfig()
    for text in [r"a, a\b => b", r"a + b => b + a", r"a & b => a", r"b/a, a => b"]:
        rep = OracleReport()
        assert check_sequent(parse_sequent(text), cfg, rep) == []
    assert rep.checked == 1


def test_strict_mismatch_is_recorded():
    rep = OracleReport()
    s = parse_sequent(r"a + a, a\(a + a) => a")
    assert check_sequent(s, OracleConfig(), rep) == []
    assert rep.strict_mismatches


def test_small_run():
    rep = run_oracle(OracleConfig(max_connectives=1, max_antecedent=2, samples=20, sample_connectives=4))
    assert rep.ok, [v.text() for v in rep.violations]
    assert rep.checked > 20 and rep.provable > 0


@given(seqs(5, ATOMS_NEG))
def test_no_violations(s):
    assert check_sequent(s, OracleConfig(readings=False)) == []


def test_minimise_shrinks(monkeypatch):
    # pretend the focused engine is wrong whenever a sum occurs
    real = oracle.FocusedEngine.provable

    def broken(self, s):
        return False if "+" in sequent_text(s) else real(self, s)

    monkeypatch.setattr(oracle.FocusedEngine, "provable", broken)
    big = parse_sequent(r"b, (a + b)\(a & b), c => (a & b) * c")
    vs = check_sequent(big, OracleConfig(readings=False))
    assert any(v.kind == "verdict" for v in vs)
    small = minimise(big, OracleConfig(readings=False), "verdict")
    assert "+" in sequent_text(small)
    assert len(sequent_text(small)) < len(sequent_text(big))
    assert any(v.kind == "verdict" for v in check_sequent(small, OracleConfig(readings=False)))
