"""Dual-engine oracle: focused and unfocused search must agree.

Each sequent is proved by the unfocused engine once and by the focused
engine under every bias assignment of its atoms.  Provability must not
depend on the engine or the biases, focused proofs must erase to valid
proofs, and when both engines enumerate completely they must produce the
same set of normalised readings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .calculus import DA, BudgetExceeded, UnfocusedEngine, erase_focus, replay
from .config import Leaf, Node, Sequent, make_item, map_items, retype, sequent_text
from .focus import FocusedEngine
from .formula import At, Bias, atoms_of, with_bias
from .generate import atoms_for, bias_assignments, random_sequent, sequents
from .semantics import readings


@dataclass
class Violation:
    kind: str  # verdict | bias | erasure | readings | count
    sequent: Sequent
    detail: str = ""

    def text(self) -> str:
        return f"{self.kind}: {sequent_text(self.sequent)}  {self.detail}".rstrip()


@dataclass
class OracleConfig:
    max_connectives: int = 2
    atoms: tuple = ("a", "b")
    max_antecedent: int = 3
    samples: int = 0
    sample_connectives: int = 6
    sample_antecedent: int = 4
    seed: int = 0
    # every other sample leans towards discontinuous connectives with this weight
    disc: float = 0.8
    readings: bool = True
    max_proofs: int = 200
    node_budget: int = 20000


@dataclass
class OracleReport:
    checked: int = 0
    provable: int = 0
    undecided: int = 0
    readings_compared: int = 0
    violations: list = field(default_factory=list)
    # sequents whose reading sets differ in strict beta/proj/case normal form
    # but agree once case commuting conversions are applied
    strict_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (f"checked={self.checked} provable={self.provable} undecided={self.undecided} "
                f"readings_compared={self.readings_compared} strict_mismatches={len(self.strict_mismatches)} "
                f"violations={len(self.violations)}")


def rebias(s: Sequent, bias: dict) -> Sequent:
    ant = map_items(s.antecedent,
                    lambda x, args: make_item(with_bias(x.formula, bias), args, x.focus, x.tag))
    return Sequent(ant, with_bias(s.succedent, bias), s.succ_focus)


def atom_names(s: Sequent) -> list[str]:
    names = set(a.name for a in atoms_of(s.succedent))
    stack = list(s.antecedent)
    while stack:
        x = stack.pop()
        if hasattr(x, "formula"):
            names.update(a.name for a in atoms_of(x.formula))
            for arg in x.args:
                stack.extend(arg)
    return sorted(names)


def bias_variants(s: Sequent) -> list[Sequent]:
    names = atom_names(s)
    return [rebias(s, dict(zip(names, bs))) for bs in bias_assignments(names)]


def check_sequent(s: Sequent, cfg: OracleConfig, report: OracleReport | None = None) -> list[Violation]:
    """All oracle violations for one sequent (biases are varied here)."""
    report = report if report is not None else OracleReport()
    report.checked += 1
    out = []
    try:
        u = UnfocusedEngine(cfg.node_budget).provable(s)
        variants = bias_variants(s)
        engines = [FocusedEngine(cfg.node_budget) for _ in variants]
        fs = [e.provable(v) for e, v in zip(engines, variants)]
    except BudgetExceeded:
        report.undecided += 1
        return out
    if len(set(fs)) > 1:
        out.append(Violation("bias", s, f"focused verdicts per bias {fs}"))
    for v, f in zip(variants, fs):
        if f != u:
            out.append(Violation("verdict", v, f"unfocused={u} focused={f}"))
    if u:
        report.provable += 1
    if u and all(fs):
        for e, v in zip(engines, variants):
            d = e.derivations(v)[0] if e.derivations(v) else None
            try:
                if d is None or replay(erase_focus(d), DA) != v:
                    raise ValueError("end-sequent changed")
            except ValueError as err:
                out.append(Violation("erasure", v, str(err)))
        if cfg.readings:
            out.extend(_compare_readings(s, variants, cfg, report))
    report.violations.extend(out)
    return out


def _compare_readings(s, variants, cfg, report) -> list[Violation]:
    ur = UnfocusedEngine(cfg.node_budget, cfg.max_proofs).run(s)
    if ur.truncated:
        return []
    want = set(readings(s, ur.derivations))
    want_c = None
    out = []
    for v in variants:
        fr = FocusedEngine(cfg.node_budget, cfg.max_proofs).run(v)
        if fr.truncated:
            continue
        report.readings_compared += 1
        got = set(readings(v, fr.derivations))
        if got != want:
            if want_c is None:
                want_c = set(readings(s, ur.derivations, commuting=True))
            got_c = set(readings(v, fr.derivations, commuting=True))
            if got_c == want_c:
                report.strict_mismatches.append(v)
            else:
                out.append(Violation("readings", v, f"unfocused {len(want_c)} focused {len(got_c)}"))
        if len(fr.derivations) > len(ur.derivations):
            out.append(Violation("count", v, f"focused {len(fr.derivations)} > unfocused {len(ur.derivations)}"))
    return out


def corpus(cfg: OracleConfig):
    """Exhaustive sequents up to the bound, then seeded random ones."""
    atoms = atoms_for(cfg.atoms, (Bias.NEG,) * len(cfg.atoms))
    yield from sequents(cfg.max_connectives, atoms, cfg.max_antecedent)
    rng = random.Random(cfg.seed)
    for i in range(cfg.samples):
        yield random_sequent(rng, cfg.sample_connectives, atoms, cfg.sample_antecedent,
                             disc=cfg.disc if i % 2 else 0.0)


def run_oracle(cfg: OracleConfig, stop_on_first: bool = False) -> OracleReport:
    report = OracleReport()
    for s in corpus(cfg):
        if check_sequent(s, cfg, report) and stop_on_first:
            break
    return report


# ------------------------------------------------------------ minimising

def _smaller(s: Sequent):
    """Candidate simplifications: drop a sort-0 antecedent figure, or
    replace a sort-0 subformula by an atom."""
    ant = s.antecedent
    for i, x in enumerate(ant):
        if isinstance(x, Leaf):
            yield Sequent(ant[:i] + ant[i + 1:], s.succedent)
    atoms = sorted({a for a in _all_atoms(s)}, key=lambda a: a.name)
    for a in atoms:
        at = At(a)
        for f in _shrunk(s.succedent, at):
            yield Sequent(ant, f)
        for i, x in enumerate(ant):
            if isinstance(x, (Leaf, Node)):
                for f in _shrunk(x.formula, at):
                    yield Sequent(ant[:i] + (retype(x, f),) + ant[i + 1:], s.succedent)


def _all_atoms(s: Sequent):
    yield from atoms_of(s.succedent)
    for x in s.antecedent:
        if hasattr(x, "formula"):
            yield from atoms_of(x.formula)


def _shrunk(f, at):
    """Formulas obtained by replacing one proper sort-0 subformula of f by at."""
    kids = f.children()
    for i, c in enumerate(kids):
        if c.sort == 0 and c != at and c.size > 0:
            yield _rebuild(f, i, at)
        for c2 in _shrunk(c, at):
            yield _rebuild(f, i, c2)


def _rebuild(f, i, new):
    kids = list(f.children())
    kids[i] = new
    try:
        if hasattr(f, "k"):
            return type(f)(f.k, *kids)
        return type(f)(*kids)
    except ValueError:
        return f


def minimise(s: Sequent, cfg: OracleConfig, kind: str) -> Sequent:
    """Greedy shrink of a counterexample while it keeps violating `kind`."""
    cur = s
    improved = True
    while improved:
        improved = False
        for t in _smaller(cur):
            if t == cur:
                continue
            try:
                vs = check_sequent(t, cfg)
            except ValueError:
                continue
            if any(v.kind == kind for v in vs):
                cur, improved = t, True
                break
    return cur
