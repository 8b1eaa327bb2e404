"""Strongly focused proof search.

Unfocused sequents are decomposed eagerly: the leftmost invertible formula
(succedent first) is the only rule applied.  When none is left a single
synchronous occurrence is chosen and decomposed, keeping the focus on
components of the same polarity until atoms or invertible formulas appear.
"""

from __future__ import annotations

from . import rules as R
from .calculus import (
    DA_FOC, Derivation, Instance, SearchResult, _Engine, erase_focus,
    has_complex_async,
)
from .config import Sequent, get_item, item_paths, replace_item, with_focus
from .formula import (
    ANTECEDENT, SUCCEDENT, At, is_async, is_positive,
)


def set_focus(ant, succ, active) -> Sequent:
    if active == "succ":
        return Sequent(ant, succ, True)
    x = get_item(ant, active)
    return Sequent(replace_item(ant, active, (with_focus(x, True),)), succ, False)


def _component_focused(ant, succ, active) -> bool:
    if active == "succ":
        return is_positive(succ)
    return not is_positive(get_item(ant, active).formula)


def _premise(ant, succ, active) -> Sequent:
    if active is not None and _component_focused(ant, succ, active):
        return set_focus(ant, succ, active)
    return Sequent(ant, succ, False)


def async_target(s: Sequent):
    """Where the next invertible rule applies: "succ", an item path, or None."""
    if is_async(s.succedent, SUCCEDENT):
        return "succ"
    for path, x in item_paths(s.antecedent):
        if is_async(x.formula, ANTECEDENT):
            return path
    return None


def async_step(s: Sequent) -> Instance | None:
    target = async_target(s)
    if target is None:
        return None
    ant, succ = s.antecedent, s.succedent
    if target == "succ":
        raws = list(R.right_raw(ant, succ))
    else:
        raws = list(R.left_raw(ant, succ, False, target, get_item(ant, target)))
    assert len(raws) == 1, raws
    raw = raws[0]
    return Instance(raw.rule, raw.inst, tuple(Sequent(a, c, False) for a, c, _, _ in raw.premises))


def focus_locations(s: Sequent, strict: bool = True) -> list:
    """Occurrences that may be focused in an unfocused sequent.

    With strict=True nothing is offered while an invertible formula remains;
    the weak system passes strict=False.
    """
    if strict and async_target(s) is not None:
        return []
    out = [path for path, x in item_paths(s.antecedent) if not is_positive(x.formula)]
    if is_positive(s.succedent):
        out.append("succ")
    return out


def focus_choices(s: Sequent, strict: bool = True) -> list[Sequent]:
    return [set_focus(s.antecedent, s.succedent, c) for c in focus_locations(s, strict)]


def sync_step(s: Sequent, strong: bool = True) -> list[Instance]:
    """Instances decomposing the focused occurrence of s.

    With strong=False focused premises may keep invertible formulas, as in
    the weakly focused system.
    """
    loc = s.focus
    ant, succ = s.antecedent, s.succedent
    out = []
    if loc == "succedent":
        if isinstance(succ, At):
            if R.identity_holds(ant, succ):
                out.append(Instance("Id", (), ()))
            return out
        raws = R.right_raw(ant, succ)
    else:
        x = get_item(ant, loc)
        if isinstance(x.formula, At):
            if R.identity_holds(ant, succ):
                out.append(Instance("Id", (), ()))
            return out
        raws = R.left_raw(ant, succ, False, loc, x)
    for raw in raws:
        if raw.rule not in R.SYNC_RULES:
            continue
        prems = tuple(_premise(a, c, act) for a, c, _, act in raw.premises)
        if strong and any(p.has_focus() and has_complex_async(p) for p in prems):
            continue
        out.append(Instance(raw.rule, raw.inst, prems))
    return out


def focused_instances(s: Sequent) -> list[Instance]:
    if s.has_focus():
        return sync_step(s)
    step = async_step(s)
    if step is not None:
        return [step]
    return [Instance("foc", (), (p,)) for p in focus_choices(s)]


class FocusedEngine(_Engine):
    def instances(self, s: Sequent) -> list[Instance]:
        return focused_instances(s)


def prove_focused(s: Sequent, max_proofs: int | None = None, node_budget: int | None = None) -> SearchResult:
    if s.has_focus():
        raise ValueError("prove_focused expects an unfocused sequent")
    return FocusedEngine(node_budget, max_proofs).run(s)


def focused_provable(s: Sequent, node_budget: int | None = None) -> bool:
    return FocusedEngine(node_budget).provable(s)


def to_unfocused(d: Derivation) -> Derivation:
    """The unfocused derivation obtained by erasing focus markers and foc steps."""
    return erase_focus(d)


__all__ = [
    "DA_FOC", "async_step", "async_target", "focus_choices", "focus_locations", "sync_step",
    "focused_instances", "FocusedEngine", "prove_focused", "focused_provable",
    "to_unfocused", "set_focus",
]
