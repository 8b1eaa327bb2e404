import io
import json
import subprocess
import sys

from dafocus.calculus import DA, DA_FOC, DAF, Derivation, count_cuts, dumps, from_json, prove_all, replay
from dafocus.cli import compare, main
from dafocus.config import Sequent, figure, parse_sequent
from dafocus.formula import parse_formula
from dafocus.transform import embed_da, eta_expand, make_cut

QUANT = r"(S/(N\S))/CN, CN, (N\S)/N, N => S"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_prove_exit_codes(capsys):
    assert run(capsys, "prove", r"N, N\S => S")[0] == 0
    assert run(capsys, "prove", r"N\S, N => S")[0] == 1
    code, _, err = run(capsys, "prove", r"N, N\ => S")
    assert code == 2 and err.startswith("error:")


def test_prove_sort_error(capsys):
    code, _, err = run(capsys, "prove", "N up N => N")
    assert code == 2 and "error" in err


def test_prove_all_quantifier(capsys):
    code, out, _ = run(capsys, "prove", QUANT, "--unfocused", "--all")
    assert code == 0
    assert "unfocused: provable, 4 proof(s)" in out
    assert out.count("-- unfocused derivation") == 4


def test_prove_json_round_trip(capsys):
    code, out, _ = run(capsys, "prove", QUANT, "--json", "--all")
    rep = json.loads(out)
    assert rep["engines"]["focused"]["proofs"] == 1
    for engine, system in [("unfocused", DA), ("focused", DA_FOC)]:
        for obj in rep["engines"][engine]["derivations"]:
            d, sys_ = from_json(obj)
            assert sys_ == system
            assert replay(d, system) == parse_sequent(QUANT)


def test_prove_deterministic(capsys):
    a = run(capsys, "prove", QUANT, "--json", "--all")[1]
    b = run(capsys, "prove", QUANT, "--json", "--all")[1]
    assert a == b


def test_prove_latex(capsys):
    code, out, _ = run(capsys, "prove", r"N, N\S => S", "--focused", "--latex")
    assert code == 0 and r"\begin{prooftree}" in out and r"\backslash" in out


def test_prove_declare(capsys):
    code, out, _ = run(capsys, "prove", "a => a", "--focused", "--json", "--declare", "a bias +")
    rep = json.loads(out)
    [d] = rep["engines"]["focused"]["derivations"]
    assert code == 0 and d["system"] == DA_FOC


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "Mary gives the man the cold shoulder", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["readings"]
    assert "shun" in rep["readings"][0]
    code, out, _ = run(capsys, "parse", "the rice grows", "--json")
    rep = json.loads(out)
    assert rep["readings"] == ["(grow (iota (p2 rice)))"]
    assert rep["parses"][0]["rules"].count("&L2") == 1


def test_parse_failures(capsys):
    assert run(capsys, "parse", "sings John")[0] == 1
    code, _, err = run(capsys, "parse", "John snores")
    assert code == 2 and "snores" in err
    assert run(capsys, "parse", "John sings", "-l", "/no/such.lex")[0] == 2


def test_compare(capsys):
    rep = compare(parse_sequent(QUANT))
    assert (rep.unfocused_proofs, rep.focused_proofs, rep.reading_count) == (4, 1, 1)
    assert rep.readings_equal
    code, out, _ = run(capsys, "compare", QUANT, "--json")
    assert code == 0 and json.loads(out)["focused_proofs"] == 1


def test_focalise_and_cutelim(capsys, tmp_path):
    _, out, _ = run(capsys, "prove", QUANT, "--unfocused", "--json")
    src = tmp_path / "d.json"
    src.write_text(json.dumps(json.loads(out)["engines"]["unfocused"]["derivations"][0]))
    code, out, _ = run(capsys, "focalise", str(src))
    d, system = from_json(json.loads(out))
    assert code == 0 and system == DA_FOC and replay(d, DA_FOC) == parse_sequent(QUANT)
    code, out, _ = run(capsys, "cutelim", str(src))
    d, system = from_json(json.loads(out))
    assert code == 0 and system == DAF and count_cuts(d) == 0
    assert run(capsys, "focalise", str(tmp_path / "missing.json"))[0] == 2


def test_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "cutelim", str(p))
    assert code == 2 and "invalid JSON" in err
    p.write_text(json.dumps({"system": "DA", "root": {"rule": "Id"}}))
    assert run(capsys, "focalise", str(p))[0] == 2


def test_selftest_small(capsys):
    code, out, _ = run(capsys, "selftest", "--max-connectives", "1", "--max-antecedent", "2")
    assert code == 0 and "violations=0" in out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dafocus", "prove", r"N, N\S => S", "--focused"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "focused: provable" in res.stdout


def test_cutelim_stdin_with_cut(capsys, monkeypatch):
    a = parse_formula(r"N\S")
    left = Derivation(Sequent(figure(a), a), "foc", (eta_expand(a),))
    right = embed_da(prove_all(parse_sequent(r"N, N\S => S")).derivations[0])
    d = make_cut(left, right, (1,))
    monkeypatch.setattr(sys, "stdin", io.StringIO(dumps(d, DAF)))
    code, out, _ = run(capsys, "cutelim")
    out_d, system = from_json(json.loads(out))
    assert code == 0 and system == DAF
    assert count_cuts(out_d) == 0 and replay(out_d, DAF) == d.conclusion


def test_both_engines_and_unit(capsys):
    code, out, _ = run(capsys, "prove", r"N, N\S => S", "--both")
    assert "unfocused: provable, 1 proof(s)" in out and "focused: provable, 1 proof(s)" in out
    code, out, _ = run(capsys, "prove", "=> I", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["engines"]["unfocused"]["derivations"][0]["root"]["rule"] == "IR"


def test_unicode_input(capsys):
    code, out, _ = run(capsys, "prove", "(S ↑ N) ↓ S, N\\S ⇒ S", "--focused")
    assert code == 0 and "sequent: (S up N) dn S, N\\S => S" in out


def test_node_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("DF_NODE_BUDGET", "2")
    code, out, _ = run(capsys, "prove", QUANT, "--unfocused")
    assert code == 1 and "node budget exhausted" in out
