"""Unfocused sequent calculus: rule instances, exhaustive search, replay.

Derivations of all three systems share one tree type.  `replay` rebuilds
every conclusion forwards from the premises and the instantiation record,
which is a separate route from the backward instance generators used by
search.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from . import rules as R
from .config import (
    ONE, SEP, Leaf, Node, Sequent, count_focus, fold, get_item, get_seq, item_paths,
    make_item, parse_sequent, replace_item, replace_run, retype, seps_before,
    sequent_text, wrap,
)
from .formula import (
    Bias, Circum, ContProd, Formula, Infix, Over, Plus, Signature, Under,
    With, WrapProd, I, J, is_async, is_positive, parse_formula,
    to_text, ANTECEDENT, SUCCEDENT,
)

DA, DAF, DA_FOC = "DA", "DAf", "DA_Foc"
SYSTEMS = (DA, DAF, DA_FOC)
DEFAULT_NODE_BUDGET = 10**6


def default_budget() -> int:
    try:
        return int(os.environ.get("DF_NODE_BUDGET", DEFAULT_NODE_BUDGET))
    except ValueError:
        return DEFAULT_NODE_BUDGET


class InvalidInference(ValueError):
    def __init__(self, rule: str, conclusion, message: str):
        super().__init__(f"invalid {rule} inference at {conclusion}: {message}")
        self.rule = rule
        self.conclusion = conclusion


class BudgetExceeded(RuntimeError):
    """Search explored more sequents than its budget allows."""


@dataclass(frozen=True)
class Derivation:
    conclusion: Sequent
    rule: str
    premises: tuple = ()
    inst: tuple = ()

    def get(self, key, default=None):
        for k, v in self.inst:
            if k == key:
                return v
        return default

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def nodes(self) -> Iterator["Derivation"]:
        yield self
        for p in self.premises:
            yield from p.nodes()

    def rules_used(self) -> list[str]:
        return [n.rule for n in self.nodes()]


class Instance(NamedTuple):
    rule: str
    inst: tuple
    premises: tuple  # Sequents


# ------------------------------------------------------------- expansions

def plain_premises(raw: R.Raw) -> tuple:
    return tuple(Sequent(a, s, sf, check=False) for a, s, sf, _ in raw.premises)


def expansions(s: Sequent) -> list[Instance]:
    """Every backward rule instance of the unfocused system with conclusion s."""
    if s.has_focus():
        raise ValueError("expansions expects an unfocused sequent")
    out = []
    ant, succ = s.antecedent, s.succedent
    if R.identity_holds(ant, succ):
        out.append(Instance("Id", (), ()))
    for raw in R.right_raw(ant, succ):
        out.append(Instance(raw.rule, raw.inst, plain_premises(raw)))
    for path, item in item_paths(ant):
        for raw in R.left_raw(ant, succ, False, path, item):
            out.append(Instance(raw.rule, raw.inst, plain_premises(raw)))
    return out


# ----------------------------------------------------------------- search

class SearchResult(NamedTuple):
    derivations: list
    truncated: bool
    budget_exceeded: bool
    nodes: int

    @property
    def provable(self) -> bool:
        return bool(self.derivations)


class _Engine:
    """Memoised backward search over an instance generator."""

    def __init__(self, node_budget: int | None = None, max_proofs: int | None = None):
        self.budget = default_budget() if node_budget is None else node_budget
        self.max_proofs = max_proofs
        self.nodes = 0
        self.truncated = False
        self._inst: dict = {}
        self._prov: dict = {}
        self._all: dict = {}

    def instances(self, s: Sequent) -> list[Instance]:
        raise NotImplementedError

    def _instances(self, s: Sequent) -> list[Instance]:
        got = self._inst.get(s)
        if got is None:
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(f"node budget {self.budget} exhausted")
            got = self.instances(s)
            self._inst[s] = got
        return got

    def provable(self, s: Sequent) -> bool:
        got = self._prov.get(s)
        if got is None:
            got = any(all(self.provable(p) for p in ins.premises) for ins in self._instances(s))
            self._prov[s] = got
        return got

    def derivations(self, s: Sequent) -> list[Derivation]:
        got = self._all.get(s)
        if got is not None:
            return got
        out: list[Derivation] = []
        if self.provable(s):
            cap = self.max_proofs
            for ins in self._instances(s):
                if not all(self.provable(p) for p in ins.premises):
                    continue
                subs = [self.derivations(p) for p in ins.premises]
                for combo in itertools.product(*subs):
                    if cap is not None and len(out) >= cap:
                        self.truncated = True
                        break
                    out.append(Derivation(s, ins.rule, tuple(combo), ins.inst))
        self._all[s] = out
        return out

    def run(self, s: Sequent) -> SearchResult:
        try:
            ds = self.derivations(s)
            return SearchResult(ds, self.truncated, False, self.nodes)
        except BudgetExceeded:
            return SearchResult([], True, True, self.nodes)


class UnfocusedEngine(_Engine):
    def instances(self, s: Sequent) -> list[Instance]:
        return expansions(s)


def prove_all(s: Sequent, max_proofs: int | None = None, node_budget: int | None = None) -> SearchResult:
    if s.has_focus():
        raise ValueError("prove_all expects an unfocused sequent")
    return UnfocusedEngine(node_budget, max_proofs).run(s)


def provable(s: Sequent, node_budget: int | None = None) -> bool:
    return UnfocusedEngine(node_budget).provable(s)


# ------------------------------------------------------------ forward replay

class Forward(NamedTuple):
    ant: tuple
    succ: Formula
    succ_focus: bool
    principal: object  # "succ", an item path, or None
    actives: tuple     # per premise: "succ", an item path, or None


def _need(cond: bool, rule: str, where, msg):
    # msg may be a callable so that costly messages are only built on failure
    if not cond:
        raise InvalidInference(rule, where, msg() if callable(msg) else msg)


def _is_figure_item(x) -> bool:
    return x is not SEP and all(a == ONE for a in x.args)


def forward(rule: str, inst: dict, prem: list[Sequent]) -> Forward:
    """Conclusion of a logical rule or cut computed from its premises."""
    n = {"Id": 0, "IR": 0, "JR": 0, "&R": 2, "+L": 2, "*R": 2, "odotR": 2,
         "/L": 2, "\\L": 2, "upL": 2, "dnL": 2}.get(rule, 2 if rule in R.CUT_RULES else 1)
    _need(len(prem) == n, rule, prem, f"expected {n} premises, got {len(prem)}")
    if rule == "IR":
        return Forward((), I, False, "succ", ())
    if rule == "JR":
        return Forward(ONE, J, False, "succ", ())
    if rule in ("/R", "\\R"):
        p = prem[0]
        _need(len(p.antecedent) >= 1, rule, p, "empty antecedent")
        idx = len(p.antecedent) - 1 if rule == "/R" else 0
        x = p.antecedent[idx]
        _need(_is_figure_item(x), rule, p, "argument is not a figure")
        rest = p.antecedent[:-1] if rule == "/R" else p.antecedent[1:]
        f = Over(p.succedent, x.formula) if rule == "/R" else Under(x.formula, p.succedent)
        _need(not p.succ_focus, rule, p, "focused succedent")
        return Forward(rest, f, False, "succ", ((idx,),))
    if rule == "upR":
        p = prem[0]
        at = tuple(inst["at"])
        x = get_item(p.antecedent, at)
        _need(_is_figure_item(x), rule, p, "argument is not a figure")
        ant = replace_item(p.antecedent, at, (SEP,))
        k = seps_before(ant, at[:-1], at[-1]) + 1
        _need(k == inst.get("k", k), rule, p, "wrap index mismatch")
        _need(not p.succ_focus, rule, p, "focused succedent")
        return Forward(ant, Circum(k, p.succedent, x.formula), False, "succ", (at,))
    if rule == "dnR":
        p = prem[0]
        k = inst["k"]
        _need(len(p.antecedent) == 1 and p.antecedent[0] is not SEP, rule, p, "antecedent is not one occurrence")
        x = p.antecedent[0]
        _need(1 <= k <= len(x.args), rule, p, "bad index")
        _need(all(a == ONE for j, a in enumerate(x.args) if j != k - 1), rule, p, "not a figure")
        _need(not p.succ_focus, rule, p, "focused succedent")
        return Forward(x.args[k - 1], Infix(k, x.formula, p.succedent), False, "succ", ((0,),))
    if rule == "*R":
        a, b = prem
        return Forward(a.antecedent + b.antecedent, ContProd(a.succedent, b.succedent), False,
                       "succ", ("succ", "succ"))
    if rule == "odotR":
        a, b = prem
        k = inst["k"]
        return Forward(wrap(a.antecedent, k, b.antecedent), WrapProd(k, a.succedent, b.succedent),
                       False, "succ", ("succ", "succ"))
    if rule == "&R":
        a, b = prem
        _need(a.antecedent == b.antecedent, rule, prem, "premise contexts differ")
        _need(_same_focus_marks(a.antecedent, b.antecedent), rule, prem, "premise focus differs")
        return Forward(a.antecedent, With(a.succedent, b.succedent), False, "succ", ("succ", "succ"))
    if rule in ("+R1", "+R2"):
        p = prem[0]
        other = inst["other"]
        f = Plus(p.succedent, other) if rule == "+R1" else Plus(other, p.succedent)
        return Forward(p.antecedent, f, False, "succ", ("succ",))
    if rule in ("/L", "\\L", "upL", "dnL"):
        return _forward_left_division(rule, inst, prem)
    if rule == "*L":
        p = prem[0]
        at = tuple(inst["at"])
        seq = get_seq(p.antecedent, at[:-1])
        _need(at[-1] + 1 < len(seq), rule, p, "missing second component")
        a, b = seq[at[-1]], seq[at[-1] + 1]
        _need(a is not SEP and b is not SEP, rule, p, "component is a separator")
        new = make_item(ContProd(a.formula, b.formula), a.args + b.args)
        ant = replace_run(p.antecedent, at[:-1], at[-1], at[-1] + 2, (new,))
        return Forward(ant, p.succedent, p.succ_focus, at, (at,))
    if rule == "odotL":
        p = prem[0]
        at = tuple(inst["at"])
        k = inst["k"]
        a = get_item(p.antecedent, at)
        _need(a is not SEP and 1 <= k <= len(a.args), rule, p, "bad wrap index")
        inner = a.args[k - 1]
        _need(len(inner) == 1 and inner[0] is not SEP, rule, p, "k-th argument is not one occurrence")
        b = inner[0]
        new = make_item(WrapProd(k, a.formula, b.formula), a.args[:k - 1] + b.args + a.args[k:])
        return Forward(replace_item(p.antecedent, at, (new,)), p.succedent, p.succ_focus, at, (at,))
    if rule == "IL":
        p = prem[0]
        at = tuple(inst["at"])
        ant = replace_run(p.antecedent, at[:-1], at[-1], at[-1], (Leaf(I),))
        return Forward(ant, p.succedent, p.succ_focus, at, (None,))
    if rule == "JL":
        p = prem[0]
        at = tuple(inst["at"])
        seq = get_seq(p.antecedent, at[:-1])
        body = seq[at[-1]:at[-1] + inst["len"]]
        _need(len(body) == inst["len"], rule, p, "run out of range")
        ant = replace_run(p.antecedent, at[:-1], at[-1], at[-1] + inst["len"], (Node(J, (body,)),))
        return Forward(ant, p.succedent, p.succ_focus, at, (None,))
    if rule in ("&L1", "&L2"):
        p = prem[0]
        at = tuple(inst["at"])
        x = get_item(p.antecedent, at)
        other = inst["other"]
        f = With(x.formula, other) if rule == "&L1" else With(other, x.formula)
        return Forward(replace_item(p.antecedent, at, (retype(x, f, False),)), p.succedent,
                       p.succ_focus, at, (at,))
    if rule == "+L":
        a, b = prem
        at = tuple(inst["at"])
        xa, xb = get_item(a.antecedent, at), get_item(b.antecedent, at)
        f = Plus(xa.formula, xb.formula)
        ant_a = replace_item(a.antecedent, at, (retype(xa, f, False),))
        ant_b = replace_item(b.antecedent, at, (retype(xb, f, False),))
        _need(ant_a == ant_b and _same_focus_marks(ant_a, ant_b), rule, prem, "premise contexts differ")
        _need(a.succedent == b.succedent and a.succ_focus == b.succ_focus, rule, prem, "succedents differ")
        return Forward(ant_a, a.succedent, a.succ_focus, at, (at, at))
    if rule in R.CUT_RULES:
        left, right = prem
        at = tuple(inst["at"])
        x = get_item(right.antecedent, at)
        _need(x is not SEP and x.formula == left.succedent, rule, prem, "cut formulas differ")
        ant = replace_item(right.antecedent, at, fold(left.antecedent, x.args))
        return Forward(ant, right.succedent, right.succ_focus, None, ("succ", at))
    raise InvalidInference(rule, prem, "unknown rule")


def _same_focus_marks(a, b) -> bool:
    return [p for p, x in item_paths(a) if x.focus] == [p for p, x in item_paths(b) if x.focus]


def _forward_left_division(rule, inst, prem) -> Forward:
    side, main = prem
    at = tuple(inst["at"])
    x = get_item(main.antecedent, at)
    _need(x is not SEP, rule, prem, "active position is a separator")
    cf, fill = x.formula, x.args
    arg = side.succedent
    gam = side.antecedent
    sp, i = at[:-1], at[-1]
    try:
        if rule == "/L":
            f = Over(cf, arg)
            m = f.sort
            new = make_item(f, fill[:m])
            items = (new,) + fold(gam, fill[m:])
            principal = at
        elif rule == "\\L":
            f = Under(arg, cf)
            sa = arg.sort
            g = fold(gam, fill[:sa])
            items = g + (make_item(f, fill[sa:]),)
            principal = sp + (i + len(g),)
        elif rule == "upL":
            k = inst["k"]
            f = Circum(k, cf, arg)
            sb = arg.sort
            args = fill[:k - 1] + (fold(gam, fill[k - 1:k - 1 + sb]),) + fill[k - 1 + sb:]
            items = (make_item(f, args),)
            principal = at
        else:
            k = inst["k"]
            f = Infix(k, arg, cf)
            m = f.sort
            node = make_item(f, fill[k - 1:k - 1 + m])
            items = fold(gam, fill[:k - 1] + ((node,),) + fill[k - 1 + m:])
            rel = next(p for p, y in item_paths(items) if y is node)
            principal = sp + (i + rel[0],) + rel[1:]
    except (ValueError, IndexError) as e:
        raise InvalidInference(rule, prem, str(e)) from None
    ant = replace_run(main.antecedent, sp, i, i + 1, items)
    return Forward(ant, main.succedent, main.succ_focus, principal, ("succ", at))


# -------------------------------------------------------- occurrences

_TAG_STRIDE = 10**6


def _tag_config(c, base, counter):
    out = []
    for x in c:
        if x is SEP:
            out.append(x)
            continue
        tag = base + next(counter)
        out.append(make_item(x.formula, tuple(_tag_config(a, base, counter) for a in x.args), x.focus, tag))
    return tuple(out)


def _tagged(s: Sequent, idx: int) -> Sequent:
    return Sequent(_tag_config(s.antecedent, (idx + 1) * _TAG_STRIDE, itertools.count(1)),
                   s.succedent, s.succ_focus, check=False)


def occurrence_map(d: Derivation):
    """For each premise, a dict from its item paths to conclusion item paths.

    Context occurrences are traced through the forward replay by tagging the
    premises; the rule's own new occurrences are absent from the maps.
    """
    prem = [_tagged(p.conclusion, i) for i, p in enumerate(d.premises)]
    if d.rule == "foc":
        paths = {path: path for path, _ in item_paths(prem[0].antecedent)}
        return None, [paths]
    fw = forward(d.rule, dict(d.inst), prem)
    by_tag = {}
    for i, q in enumerate(prem):
        for path, x in item_paths(q.antecedent):
            by_tag[x.tag] = (i, path)
    maps = [dict() for _ in prem]
    for path, x in item_paths(fw.ant):
        hit = by_tag.get(x.tag)
        if hit is not None:
            maps[hit[0]][hit[1]] = path
    # premises sharing the conclusion context (&R, +L) map by position
    if d.rule in ("&R", "+L"):
        maps[1] = dict(maps[0])
    return fw, maps



def trace(d: Derivation, premise: int, path: tuple):
    """Conclusion path of an occurrence in one of d's premises, or None."""
    return occurrence_map(d)[1][premise].get(tuple(path))


def sources(d: Derivation, path: tuple) -> list:
    """(premise index, premise path) pairs of a conclusion occurrence."""
    out = []
    for i, m in enumerate(occurrence_map(d)[1]):
        for pp, cp in m.items():
            if cp == tuple(path):
                out.append((i, pp))
    return out


# --------------------------------------------------------- system checking

def _item_sync(f: Formula) -> bool:
    return not is_positive(f)


def _succ_sync(f: Formula) -> bool:
    return is_positive(f)


def has_complex_async(s: Sequent) -> bool:
    if is_async(s.succedent, SUCCEDENT):
        return True
    return any(is_async(x.formula, ANTECEDENT) for _, x in item_paths(s.antecedent))


def focus_count(s: Sequent) -> int:
    return count_focus(s.antecedent) + int(s.succ_focus)


def _expected_focus(active, component_sync: bool):
    if active == "succ":
        return "succedent" if component_sync else None
    return tuple(active) if component_sync else None


def check_node(d: Derivation, system: str, general_identity: bool = False) -> None:
    """Raise InvalidInference unless d's last step is a valid rule instance."""
    s = d.conclusion
    rule = d.rule
    prem = [p.conclusion for p in d.premises]
    inst = dict(d.inst)
    if system == DA:
        for q in [s] + prem:
            _need(not q.has_focus(), rule, s, "focus marker in an unfocused derivation")
    if system == DA_FOC:
        _need(not (s.has_focus() and has_complex_async(s)), rule, s,
              "focused sequent with a complex asynchronous formula")
    if rule == "Id":
        _need(not prem, rule, s, "axiom with premises")
        ant, succ = s.antecedent, s.succedent
        if system == DA:
            if general_identity and len(ant) == 1 and ant[0] is not SEP:
                _need(ant[0].formula == succ and _is_figure_item(ant[0]), rule, s, "not an identity")
                return
            _need(R.identity_holds(ant, succ), rule, s, "not an atomic identity")
            return
        _need(R.identity_holds(ant, succ), rule, s, "not an atomic identity")
        if is_positive(succ):
            _need(s.succ_focus and not ant[0].focus, rule, s, "positive atom needs the succedent focused")
        else:
            _need(ant[0].focus and not s.succ_focus, rule, s, "negative atom needs the antecedent focused")
        return
    if rule == "foc":
        _need(system != DA, rule, s, "foc outside a focused system")
        _need(len(prem) == 1, rule, s, "foc takes one premise")
        p = prem[0]
        loc = p.focus
        _need(loc is not None, rule, s, "premise has no focus")
        _need(not s.has_focus(), rule, s, "conclusion keeps a focus")
        _need(p.unfocused() == s, rule, s, "premise differs from the conclusion")
        if loc == "succedent":
            _need(_succ_sync(p.succedent), rule, s, "focused succedent is not synchronous")
        else:
            _need(_item_sync(get_item(p.antecedent, loc).formula), rule, s,
                  "focused antecedent occurrence is not synchronous")
        return
    if rule in R.CUT_RULES:
        _need(system == DAF, rule, s, "cut outside the weak focused system")
        _check_cut(d, inst, prem)
        return
    _need(rule in R.LOGICAL_RULES, rule, s, "unknown rule")
    fw = forward(rule, inst, prem)
    if system == DA or rule in R.ASYNC_RULES:
        expect = Sequent(fw.ant, fw.succ, fw.succ_focus, check=False)
        _need(expect == s, rule, s, lambda: f"replayed conclusion is {expect}")
        if system == DA_FOC:
            for q in [s] + prem:
                _need(not q.has_focus(), rule, s, "asynchronous rule applied under focus")
        if system != DA and rule in R.ASYNC_RULES:
            # a new occurrence built by the rule never carries a focus, so a
            # focused active occurrence would vanish from the conclusion
            for q in prem:
                _need(focus_count(q) == focus_count(s), rule, s, "asynchronous rule consumed a focus")
        return
    # synchronous rule in a focused system: the principal is focused
    if fw.principal == "succ":
        expect = Sequent(fw.ant, fw.succ, True, check=False)
    else:
        x = get_item(fw.ant, fw.principal)
        expect = Sequent(replace_item(fw.ant, fw.principal, (make_item(x.formula, x.args, True),)),
                         fw.succ, False, check=False)
    _need(expect == s, rule, s, lambda: f"replayed conclusion is {expect}")
    for q, act in zip(prem, fw.actives):
        if act == "succ":
            want = _expected_focus(act, _succ_sync(q.succedent))
        else:
            want = _expected_focus(act, _item_sync(get_item(q.antecedent, act).formula))
        _need(q.focus == want, rule, s, lambda: f"premise {q} should have focus {want}")


def _check_cut(d: Derivation, inst: dict, prem) -> None:
    rule, s = d.rule, d.conclusion
    left, right = prem
    at = tuple(inst["at"])
    x = get_item(right.antecedent, at)
    a = left.succedent
    pos = is_positive(a)
    if rule == "pcut1":
        _need(pos and left.succ_focus, rule, s, "left premise must focus a positive succedent")
        _need(not x.focus, rule, s, "cut occurrence must be unfocused")
    elif rule == "pcut2":
        _need(not pos and not left.succ_focus, rule, s, "left premise must end in an unfocused negative type")
        _need(x.focus and right.focus == at, rule, s, "cut occurrence must be the only focus")
    elif rule == "ncut1":
        _need(pos and not left.succ_focus, rule, s, "left premise must end in an unfocused positive type")
        _need(not right.has_focus(), rule, s, "right premise must be unfocused")
    else:
        _need(not pos and not left.has_focus(), rule, s, "left premise must be unfocused and negative")
        _need(not x.focus, rule, s, "cut occurrence must be unfocused")
    fw = forward(rule, inst, prem)
    expect = Sequent(fw.ant, fw.succ, fw.succ_focus, check=False)
    _need(expect == s, rule, s, lambda: f"replayed conclusion is {expect}")
    _need(focus_count(s) <= 1, rule, s, "more than one focus")


def replay(d: Derivation, system: str = DA, general_identity: bool = False) -> Sequent:
    """Check every node bottom-up and return the end-sequent."""
    for p in d.premises:
        replay(p, system, general_identity)
    check_node(d, system, general_identity)
    return d.conclusion


def is_valid(d: Derivation, system: str = DA) -> bool:
    try:
        replay(d, system)
        return True
    except InvalidInference:
        return False


def count_cuts(d: Derivation) -> int:
    return sum(1 for n in d.nodes() if n.rule in R.CUT_RULES)


def erase_focus(d: Derivation) -> Derivation:
    """Drop focus markers and foc steps, giving an unfocused derivation."""
    if d.rule == "foc":
        return erase_focus(d.premises[0])
    return Derivation(d.conclusion.unfocused(), d.rule,
                      tuple(erase_focus(p) for p in d.premises), d.inst)


# ------------------------------------------------------------------- JSON

def _inst_to_json(inst: tuple) -> dict:
    out = {}
    for k, v in inst:
        out[k] = to_text(v) if isinstance(v, Formula) else _listify(v)
    return out


def _listify(v):
    if isinstance(v, tuple):
        return [_listify(x) for x in v]
    return v


def _tuplify(v):
    if isinstance(v, list):
        return tuple(_tuplify(x) for x in v)
    return v


def _inst_from_json(obj: dict, sig: Signature) -> tuple:
    items = []
    for k, v in obj.items():
        if k == "other":
            items.append((k, parse_formula(v, sig)))
        else:
            items.append((k, _tuplify(v)))
    return tuple(sorted(items))


def _signature_of(d: Derivation) -> list[dict]:
    from .formula import atoms_of
    seen = {}
    for n in d.nodes():
        s = n.conclusion
        fs = [s.succedent] + [x.formula for _, x in item_paths(s.antecedent)]
        for k, v in n.inst:
            if isinstance(v, Formula):
                fs.append(v)
        for f in fs:
            for a in atoms_of(f):
                seen.setdefault(a.name, a)
    return [{"name": a.name, "sort": a.sort, "bias": a.bias.value} for a in seen.values()]


def node_to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule,
        "conclusion": sequent_text(d.conclusion),
        "instantiation": _inst_to_json(d.inst),
        "premises": [node_to_json(p) for p in d.premises],
    }


def to_json(d: Derivation, system: str) -> dict:
    return {"system": system, "atoms": _signature_of(d), "root": node_to_json(d)}


def dumps(d: Derivation, system: str) -> str:
    return json.dumps(to_json(d, system), indent=2, ensure_ascii=False)


def from_json(obj: dict) -> tuple[Derivation, str]:
    sig = Signature()
    for a in obj.get("atoms", []):
        sig.declare(a["name"], a.get("sort", 0), Bias(a.get("bias", "-")))

    def node(o: dict) -> Derivation:
        return Derivation(parse_sequent(o["conclusion"], sig), o["rule"],
                          tuple(node(p) for p in o.get("premises", [])),
                          _inst_from_json(o.get("instantiation", {}), sig))

    system = obj.get("system", DA)
    if system not in SYSTEMS:
        raise ValueError(f"unknown system {system!r}")
    return node(obj["root"]), system


def loads(text: str) -> tuple[Derivation, str]:
    return from_json(json.loads(text))
