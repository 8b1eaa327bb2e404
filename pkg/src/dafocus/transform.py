"""Weakly focused derivations: embedding, eta-expansion, cut elimination.

The weak system keeps the focused rules but lets invertible rules fire
under a focus and adds four cut rules distinguished by the focus pattern
of their premises.  Unfocused derivations embed into it; cuts are then
removed by local rewriting of a top-most cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import rules as R
from .calculus import (
    DA, DAF, Derivation, Instance, InvalidInference, check_node, forward,
    replay, sources, trace,
)
from .config import Sequent, figure, get_item, item_paths
from .focus import focus_choices, prove_focused, set_focus, sync_step
from .formula import ANTECEDENT, SUCCEDENT, Formula, is_async, is_atomic, is_positive

ASYNC_LEFT = frozenset({"*L", "odotL", "IL", "JL", "+L"})
ASYNC_RIGHT = frozenset({"/R", "\\R", "upR", "dnR", "&R"})
SYNC_RIGHT = frozenset({"*R", "odotR", "IR", "JR", "+R1", "+R2"})
SYNC_LEFT = frozenset({"/L", "\\L", "upL", "dnL", "&L1", "&L2"})
# premise holding the succedent of the conclusion in a synchronous left rule
_MAIN = {"/L": 1, "\\L": 1, "upL": 1, "dnL": 1, "&L1": 0, "&L2": 0}


class NoMatchingCase(RuntimeError):
    """A rewrite found no applicable conversion; never expected on valid input."""


class FuelExhausted(RuntimeError):
    def __init__(self, msg, trace_log):
        super().__init__(msg)
        self.trace_log = trace_log


class CompletenessViolation(RuntimeError):
    """Focused search failed on a sequent with a valid unfocused proof."""


# ------------------------------------------------------------ weak system

def daf_expansions(s: Sequent) -> list[Instance]:
    """Backward instances of the weakly focused system (cuts excluded)."""
    out = []
    ant, succ = s.antecedent, s.succedent
    if s.has_focus():
        out.extend(sync_step(s, strong=False))
    else:
        out.extend(Instance("foc", (), (p,)) for p in focus_choices(s, strict=False))
    if is_async(succ, SUCCEDENT):
        for raw in R.right_raw(ant, succ):
            out.append(Instance(raw.rule, raw.inst, tuple(Sequent(a, c, f) for a, c, f, _ in raw.premises)))
    for path, x in item_paths(ant):
        if is_async(x.formula, ANTECEDENT):
            for raw in R.left_raw(ant, succ, s.succ_focus, path, x):
                out.append(Instance(raw.rule, raw.inst, tuple(Sequent(a, c, f) for a, c, f, _ in raw.premises)))
    return out


def rebuild(rule: str, conclusion: Sequent, premises) -> Derivation:
    """The weak-system node with this rule, conclusion and premise derivations."""
    want = tuple(p.conclusion for p in premises)
    for ins in daf_expansions(conclusion):
        if ins.rule == rule and ins.premises == want:
            return Derivation(conclusion, rule, tuple(premises), ins.inst)
    raise NoMatchingCase(f"no {rule} instance concludes {conclusion} from {list(map(str, want))}")


def cut_kind(left: Sequent, right: Sequent, at) -> str:
    """The cut rule whose premise focus pattern fits these premises."""
    a = left.succedent
    x = get_item(right.antecedent, at)
    if is_positive(a):
        return "pcut1" if left.succ_focus else "ncut1"
    return "pcut2" if x.focus else "ncut2"


def make_cut(left: Derivation, right: Derivation, at, rule: str | None = None) -> Derivation:
    at = tuple(at)
    rule = rule or cut_kind(left.conclusion, right.conclusion, at)
    inst = R.mkinst(at=at)
    fw = forward(rule, dict(inst), [left.conclusion, right.conclusion])
    d = Derivation(Sequent(fw.ant, fw.succ, fw.succ_focus), rule, (left, right), inst)
    check_node(d, DAF)
    return d


# --------------------------------------------------------- eta expansion

def identity_sequent(a: Formula) -> Sequent:
    """The focused identity: figure(P) => [P] or [figure(N)] => N."""
    if is_positive(a):
        return Sequent(figure(a), a, True)
    return set_focus(figure(a), a, (0,))


def _component(a: Formula, focused: bool) -> Derivation:
    d = eta_expand(a)
    return d if focused else Derivation(d.conclusion.unfocused(), "foc", (d,))


def _identity_shaped(s: Sequent) -> bool:
    return s.unfocused() == Sequent(figure(s.succedent), s.succedent)


def _close_identities(s: Sequent, rules: frozenset) -> Derivation:
    """Apply the rule from `rules` whose premises are all identity sequents."""
    for ins in daf_expansions(s):
        if ins.rule in rules and all(_identity_shaped(p) for p in ins.premises):
            prems = tuple(_component(p.succedent, p.has_focus()) for p in ins.premises)
            if all(q.conclusion == p for q, p in zip(prems, ins.premises)):
                return Derivation(s, ins.rule, prems, ins.inst)
    raise NoMatchingCase(f"no identity-closing step for {s}")


@lru_cache(maxsize=8192)
def eta_expand(a: Formula) -> Derivation:
    """Cut-free weak derivation of the focused identity sequent of a."""
    goal = identity_sequent(a)
    if is_atomic(a):
        return Derivation(goal, "Id")
    if is_positive(a):
        ins = next(i for i in daf_expansions(goal) if i.rule in ASYNC_LEFT)
        prems = tuple(_close_identities(p, SYNC_RIGHT) for p in ins.premises)
        return Derivation(goal, ins.rule, prems, ins.inst)
    ins = next(i for i in daf_expansions(goal) if i.rule in ASYNC_RIGHT)
    prems = tuple(_close_identities(p, SYNC_LEFT) for p in ins.premises)
    return Derivation(goal, ins.rule, prems, ins.inst)


# ------------------------------------------------------------- embedding

def embed_da(d: Derivation) -> Derivation:
    """Weak focused derivation of the same end-sequent as an unfocused one."""
    try:
        replay(d, DA, general_identity=True)
    except InvalidInference as e:
        raise ValueError(f"not a valid unfocused derivation: {e}") from None
    return _embed(d)


def _unfocus(d: Derivation) -> Derivation:
    return Derivation(d.conclusion.unfocused(), "foc", (d,))


def _embed(d: Derivation) -> Derivation:
    s = d.conclusion
    if d.rule == "Id":
        return _unfocus(eta_expand(s.succedent))
    if d.rule in ("IR", "JR"):
        return _unfocus(Derivation(Sequent(s.antecedent, s.succedent, True), d.rule))
    prems = tuple(_embed(p) for p in d.premises)
    if d.rule in R.ASYNC_RULES:
        return Derivation(s, d.rule, prems, d.inst)
    return _embed_sync(d, prems)


def _embed_sync(d: Derivation, prems) -> Derivation:
    """A synchronous step as a figure-level core with the premises cut in."""
    rule = d.rule
    inst = dict(d.inst)
    src = [p.conclusion for p in d.premises]
    fw = forward(rule, inst, src)
    # components of the rule at figure level
    comps = []
    for q, act in zip(src, fw.actives):
        f = q.succedent if act == "succ" else get_item(q.antecedent, act).formula
        comps.append((f, act))
    core_prems = []
    for f, act in comps:
        focused = is_positive(f) if act == "succ" else not is_positive(f)
        core_prems.append(_component(f, focused))
    core_inst = dict(inst)
    if "at" in core_inst:
        core_inst["at"] = (0,)
    cfw = forward(rule, core_inst, [p.conclusion for p in core_prems])
    if cfw.principal == "succ":
        concl = Sequent(cfw.ant, cfw.succ, True)
    else:
        concl = set_focus(cfw.ant, cfw.succ, cfw.principal)
    core = rebuild(rule, concl, core_prems)
    out = _unfocus(core)
    if rule in SYNC_RIGHT:
        # cut each premise into the figure occurrence of its component
        places = [trace(core, i, (0,)) for i in range(len(prems))]
        for i, p in enumerate(prems):
            cut = make_cut(p, out, places[i])
            for j in range(i + 1, len(prems)):
                places[j] = trace(cut, 1, places[j])
            out = cut
        return out
    # left rule: the side premise replaces the argument figure, then the
    # result is cut into the main premise at the component occurrence
    main = _MAIN[rule]
    if rule in ("/L", "\\L", "upL", "dnL"):
        side_place = trace(core, 0, (0,))
        out = make_cut(prems[0], out, side_place)
    return make_cut(out, prems[main], fw.actives[main])


# ------------------------------------------------------- cut elimination

def measure(d: Derivation) -> tuple:
    """(size of the cut formula, combined height of the premises)."""
    left, right = d.premises
    return (left.conclusion.succedent.size, left.height() + right.height())


@dataclass
class Rewrite:
    rule: str
    case: str
    measure: tuple
    created: list = field(default_factory=list)

    def decreasing(self) -> bool:
        return all(m < self.measure for m in self.created)


class CutEliminator:
    def __init__(self, fuel: int = 100000):
        self.fuel = fuel
        self.log: list[Rewrite] = []
        self._stack: list[Rewrite] = []

    def eliminate(self, d: Derivation) -> Derivation:
        prems = tuple(self.eliminate(p) for p in d.premises)
        if d.rule in R.CUT_RULES:
            return self._reduce(Derivation(d.conclusion, d.rule, prems, d.inst))
        if prems == d.premises:
            return d
        return Derivation(d.conclusion, d.rule, prems, d.inst)

    def _cut(self, left, right, at) -> Derivation:
        """Create a new cut below the current rewrite and eliminate it."""
        c = make_cut(left, right, at)
        if self._stack:
            self._stack[-1].created.append(measure(c))
        return self._reduce(c)

    def _reduce(self, c: Derivation) -> Derivation:
        self.fuel -= 1
        if self.fuel < 0:
            raise FuelExhausted("cut elimination ran out of fuel", self.log[-20:])
        step = Rewrite(c.rule, "", measure(c))
        self.log.append(step)
        self._stack.append(step)
        try:
            out = self._convert(c, step)
        finally:
            self._stack.pop()
        if out.conclusion != c.conclusion:
            raise NoMatchingCase(f"{step.case} changed {c.conclusion} into {out.conclusion}")
        return out

    def _convert(self, c: Derivation, step: Rewrite) -> Derivation:
        left, right = c.premises
        at = tuple(dict(c.inst)["at"])
        rule = c.rule
        if rule == "pcut1":
            if left.rule == "Id":
                step.case = "id-left"
                return right
            if right.rule == "Id":
                step.case = "id-right"
                return left
            if left.rule in ASYNC_LEFT:
                step.case = "left-commute"
                return self._left_commute(c, range(len(left.premises)))
            if right.rule in ASYNC_LEFT and trace_principal(right) == at:
                step.case = "principal"
                return self._principal_pos(c)
            step.case = "right-commute"
            return self._right_commute(c)
        if rule == "pcut2":
            if right.rule == "Id":
                step.case = "id-right"
                return left
            if left.rule == "Id":
                step.case = "id-left"
                return right
            if right.rule not in SYNC_LEFT:
                step.case = "right-commute"
                return self._right_commute(c)
            if left.rule in ASYNC_RIGHT:
                step.case = "principal"
                return self._principal_neg(c)
            step.case = "left-commute"
            return self._left_commute(c, self._main_premises(left))
        if rule == "ncut1":
            if left.rule == "foc" and left.premises[0].conclusion.succ_focus:
                step.case = "foc"
                return self._cut(left.premises[0], right, at)
            step.case = "left-commute"
            return self._left_commute(c, self._main_premises(left))
        if rule == "ncut2":
            if right.rule == "foc" and right.premises[0].conclusion.focus == at:
                step.case = "foc"
                return self._cut(left, right.premises[0], at)
            step.case = "right-commute"
            return self._right_commute(c)
        raise NoMatchingCase(f"not a cut: {rule}")

    @staticmethod
    def _main_premises(d: Derivation):
        if d.rule in _MAIN:
            return [_MAIN[d.rule]]
        return range(len(d.premises))

    def _left_commute(self, c: Derivation, which) -> Derivation:
        left, right = c.premises
        at = tuple(dict(c.inst)["at"])
        prems = list(left.premises)
        for i in which:
            prems[i] = self._cut(prems[i], right, at)
        return rebuild(left.rule, c.conclusion, prems)

    def _right_commute(self, c: Derivation) -> Derivation:
        left, right = c.premises
        at = tuple(dict(c.inst)["at"])
        srcs = sources(right, at)
        if not srcs:
            raise NoMatchingCase(f"cut occurrence vanishes above {right.rule} in {right.conclusion}")
        prems = list(right.premises)
        for i, path in srcs:
            prems[i] = self._cut(left, prems[i], path)
        return rebuild(right.rule, c.conclusion, prems)

    def _principal_pos(self, c: Derivation) -> Derivation:
        left, right = c.premises
        lr, rr = left.rule, right.rule
        _, rfw = _forward_of(right)
        if lr in ("IR", "JR"):
            return right.premises[0]
        if lr in ("+R1", "+R2"):
            i = 0 if lr == "+R1" else 1
            return self._cut(left.premises[0], right.premises[i], rfw.actives[i])
        r1 = right.premises[0]
        at = rfw.actives[0]
        second = at[:-1] + (at[-1] + 1,) if rr == "*L" else at + (dict(right.inst)["k"] - 1, 0)
        first = make_cut(left.premises[0], r1, at)
        self._stack[-1].created.append(measure(first))
        place = trace(first, 1, second)
        done = self._reduce(first)
        return self._cut(left.premises[1], done, place)

    def _principal_neg(self, c: Derivation) -> Derivation:
        left, right = c.premises
        lr, rr = left.rule, right.rule
        _, lfw = _forward_of(left)
        _, rfw = _forward_of(right)
        if lr == "&R":
            i = 0 if rr == "&L1" else 1
            return self._cut(left.premises[i], right.premises[0], rfw.actives[0])
        # argument first, then the result into the main premise
        x = self._cut(right.premises[0], left.premises[0], lfw.actives[0])
        return self._cut(x, right.premises[1], rfw.actives[1])


def _forward_of(d: Derivation):
    fw = forward(d.rule, dict(d.inst), [p.conclusion for p in d.premises])
    return d, fw


def trace_principal(d: Derivation):
    """Conclusion path of the principal occurrence of d's last rule."""
    if d.rule in ("Id", "foc") or d.rule in R.CUT_RULES:
        return None
    return _forward_of(d)[1].principal


def cut_eliminate(d: Derivation, fuel: int = 100000, log: list | None = None) -> Derivation:
    """Cut-free weak derivation of the same end-sequent.

    If `log` is given the Rewrite records are appended to it.
    """
    el = CutEliminator(fuel)
    out = el.eliminate(d)
    if log is not None:
        log.extend(el.log)
    return out


# ------------------------------------------------------------ focalise

def focalise(s: Sequent, witness: Derivation) -> Derivation:
    """A strongly focused derivation of s, given an unfocused proof of it."""
    try:
        end = replay(witness, DA, general_identity=True)
    except InvalidInference as e:
        raise ValueError(f"witness does not replay: {e}") from None
    if end != s:
        raise ValueError(f"witness proves {end}, not {s}")
    res = prove_focused(s, max_proofs=1)
    if not res.derivations:
        raise CompletenessViolation(f"no focused proof of provable {s}")
    return res.derivations[0]
