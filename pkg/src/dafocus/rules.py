"""Backward rule instances shared by the unfocused, focused and weak systems.

Each generator yields `Raw` instances: the rule name, an instantiation record
and the premises as (antecedent, succedent, succedent-focus, active) tuples.
`active` locates the subformula occurrence introduced by the rule in that
premise: "succ", an item path, or None.  Focus decisions are left to the
caller; new occurrences are always built unfocused and context occurrences
are copied with their markers.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .config import (
    ONE, SEP, Leaf, Node, figure, get_seq, make_item, replace_item,
    replace_run, retype, seq_paths, seps_before, sort_config,
)
from .formula import (
    At, Circum, ContProd, Formula, Infix, Over, Plus, Under, UnitI, UnitJ,
    With, WrapProd,
)

ASYNC_RULES = frozenset({"/R", "\\R", "upR", "dnR", "*L", "odotL", "IL", "JL", "&R", "+L"})
SYNC_RULES = frozenset({"/L", "\\L", "upL", "dnL", "&L1", "&L2", "*R", "odotR", "+R1", "+R2", "IR", "JR"})
CUT_RULES = frozenset({"pcut1", "pcut2", "ncut1", "ncut2"})
LOGICAL_RULES = ASYNC_RULES | SYNC_RULES
RULE_NAMES = ("Id",) + tuple(sorted(LOGICAL_RULES)) + ("foc",) + tuple(sorted(CUT_RULES))

_HEAD_RIGHT = {Over: "/R", Under: "\\R", Circum: "upR", Infix: "dnR", ContProd: "*R",
               WrapProd: "odotR", UnitI: "IR", UnitJ: "JR", With: "&R", Plus: "+R"}
_HEAD_LEFT = {Over: "/L", Under: "\\L", Circum: "upL", Infix: "dnL", ContProd: "*L",
              WrapProd: "odotL", UnitI: "IL", UnitJ: "JL", With: "&L", Plus: "+L"}


def right_rule_name(f: Formula) -> str | None:
    return _HEAD_RIGHT.get(type(f))


def left_rule_name(f: Formula) -> str | None:
    return _HEAD_LEFT.get(type(f))


class Raw(NamedTuple):
    rule: str
    inst: tuple
    premises: tuple  # of (antecedent, succedent, succ_focus, active)


def mkinst(**kw) -> tuple:
    return tuple(sorted(kw.items()))


# --------------------------------------------------------------- unfolding

class _Mark:
    __slots__ = ()

    def __repr__(self):
        return "MARK"


MARK = _Mark()


def _has_mark(items) -> bool:
    for x in items:
        if x is MARK:
            return True
        if isinstance(x, Node) and any(_has_mark(a) for a in x.args):
            return True
    return False


def _unfold_seq(seq, i, budget, prefix):
    if i == len(seq):
        yield (), [], [], 0
    if budget > 0:
        for e in range(i, len(seq) + 1):
            run = seq[i:e]
            if _has_mark(run):
                break
            for g, f, r, u in _unfold_seq(seq, e, budget - 1, prefix):
                yield (SEP,) + g, [run] + f, [(prefix, i, e)] + r, u + 1
    if i < len(seq):
        x = seq[i]
        if x is SEP:
            return
        if x is MARK:
            if budget > 0:
                for g, f, r, u in _unfold_seq(seq, i + 1, budget - 1, prefix):
                    yield (SEP,) + g, [None] + f, [None] + r, u + 1
            return
        if isinstance(x, Leaf):
            for g, f, r, u in _unfold_seq(seq, i + 1, budget, prefix):
                yield (x,) + g, f, r, u
            return
        for args, f1, r1, u1 in _unfold_args(x.args, 0, budget, prefix + (i,)):
            node = Node(x.formula, args, x.focus, x.tag)
            for g, f, r, u in _unfold_seq(seq, i + 1, budget - u1, prefix):
                yield (node,) + g, f1 + f, r1 + r, u1 + u


def _unfold_args(args, j, budget, prefix):
    if j == len(args):
        yield (), [], [], 0
        return
    for g, f, r, u in _unfold_seq(args[j], 0, budget, prefix + (j,)):
        for rest, f2, r2, u2 in _unfold_args(args, j + 1, budget - u, prefix):
            yield (g,) + rest, f + f2, r + r2, u + u2


def unfoldings(x, n: int):
    """All (gamma, fillers, runs) with sort(gamma) = n and fold(gamma, fillers) = x.

    Every separator of x must fall inside a filler.  A MARK item becomes a
    separator of gamma whose filler is reported as None.
    """
    for g, f, r, u in _unfold_seq(tuple(x), 0, n, ()):
        if u == n:
            yield g, f, tuple(r)


# ------------------------------------------------------------ right rules

def _kth_separator(c, k):
    """(seq_path, index) of the k-th separator in depth-first order."""
    seen = 0

    def go(seq, prefix):
        nonlocal seen
        for i, x in enumerate(seq):
            if x is SEP:
                seen += 1
                if seen == k:
                    return prefix, i
            elif isinstance(x, Node):
                for j, a in enumerate(x.args):
                    hit = go(a, prefix + (i, j))
                    if hit is not None:
                        return hit
        return None
    return go(c, ())


def identity_holds(ant, succ: Formula) -> bool:
    """Antecedent is the figure of the atomic succedent (focus markers ignored)."""
    if not isinstance(succ, At) or len(ant) != 1:
        return False
    x = ant[0]
    if x is SEP or x.formula != succ:
        return False
    return all(a == ONE for a in x.args)


def right_raw(ant, succ: Formula) -> Iterator[Raw]:
    f = succ
    if isinstance(f, Over):
        yield Raw("/R", (), ((ant + figure(f.b), f.c, False, (len(ant),)),))
    elif isinstance(f, Under):
        yield Raw("\\R", (), ((figure(f.a) + ant, f.c, False, (0,)),))
    elif isinstance(f, Circum):
        sp, idx = _kth_separator(ant, f.k)
        prem = replace_run(ant, sp, idx, idx + 1, figure(f.b))
        yield Raw("upR", mkinst(at=sp + (idx,), k=f.k), ((prem, f.c, False, sp + (idx,)),))
    elif isinstance(f, Infix):
        args = [ONE] * f.a.sort
        args[f.k - 1] = ant
        yield Raw("dnR", mkinst(k=f.k), (((make_item(f.a, args),), f.c, False, (0,)),))
    elif isinstance(f, ContProd):
        for i in range(len(ant) + 1):
            left = ant[:i]
            if sort_config(left) == f.a.sort:
                yield Raw("*R", mkinst(split=i),
                          ((left, f.a, False, "succ"), (ant[i:], f.b, False, "succ")))
    elif isinstance(f, WrapProd):
        for sp in seq_paths(ant):
            seq = get_seq(ant, sp)
            for s in range(len(seq) + 1):
                if seps_before(ant, sp, s) != f.k - 1:
                    continue
                for e in range(s, len(seq) + 1):
                    run = seq[s:e]
                    if sort_config(run) != f.b.sort:
                        continue
                    g1 = replace_run(ant, sp, s, e, (SEP,))
                    yield Raw("odotR", mkinst(k=f.k, run=(sp, s, e)),
                              ((g1, f.a, False, "succ"), (run, f.b, False, "succ")))
    elif isinstance(f, UnitI):
        if ant == ():
            yield Raw("IR", (), ())
    elif isinstance(f, UnitJ):
        if ant == ONE:
            yield Raw("JR", (), ())
    elif isinstance(f, With):
        yield Raw("&R", (), ((ant, f.a, False, "succ"), (ant, f.b, False, "succ")))
    elif isinstance(f, Plus):
        yield Raw("+R1", mkinst(other=f.b), ((ant, f.a, False, "succ"),))
        yield Raw("+R2", mkinst(other=f.a), ((ant, f.b, False, "succ"),))


# ------------------------------------------------------------- left rules

def left_raw(ant, succ: Formula, sf: bool, path: tuple, item) -> Iterator[Raw]:
    """Instances whose principal occurrence is the item at `path`."""
    f = item.formula
    sp, i = path[:-1], path[-1]
    if isinstance(f, Over):
        seq = get_seq(ant, sp)
        m = f.sort
        for e in range(i + 1, len(seq) + 1):
            for gamma, fill, runs in unfoldings(seq[i + 1:e], f.b.sort):
                new = make_item(f.c, item.args[:m] + tuple(fill))
                prem = replace_run(ant, sp, i, e, (new,))
                yield Raw("/L", mkinst(at=path, end=e, runs=runs),
                          ((gamma, f.b, False, "succ"), (prem, succ, sf, path)))
    elif isinstance(f, Under):
        seq = get_seq(ant, sp)
        for s in range(i, -1, -1):
            for gamma, fill, runs in unfoldings(seq[s:i], f.a.sort):
                new = make_item(f.c, tuple(fill) + item.args)
                prem = replace_run(ant, sp, s, i + 1, (new,))
                yield Raw("\\L", mkinst(at=sp + (s,), runs=runs, start=s),
                          ((gamma, f.a, False, "succ"), (prem, succ, sf, sp + (s,))))
    elif isinstance(f, Circum):
        k, sb = f.k, f.b.sort
        for gamma, fill, runs in unfoldings(item.args[k - 1], sb):
            new = make_item(f.c, item.args[:k - 1] + tuple(fill) + item.args[k:])
            prem = replace_item(ant, path, (new,))
            yield Raw("upL", mkinst(at=path, k=k, runs=runs),
                      ((gamma, f.b, False, "succ"), (prem, succ, sf, path)))
    elif isinstance(f, Infix):
        yield from _infix_left(ant, succ, sf, path, item)
    elif isinstance(f, ContProd):
        sa = f.a.sort
        a = make_item(f.a, item.args[:sa])
        b = make_item(f.b, item.args[sa:])
        yield Raw("*L", mkinst(at=path), ((replace_item(ant, path, (a, b)), succ, sf, path),))
    elif isinstance(f, WrapProd):
        k, sb = f.k, f.b.sort
        b = make_item(f.b, item.args[k - 1:k - 1 + sb])
        a = make_item(f.a, item.args[:k - 1] + ((b,),) + item.args[k - 1 + sb:])
        yield Raw("odotL", mkinst(at=path, k=k), ((replace_item(ant, path, (a,)), succ, sf, path),))
    elif isinstance(f, UnitI):
        yield Raw("IL", mkinst(at=path), ((replace_item(ant, path, ()), succ, sf, None),))
    elif isinstance(f, UnitJ):
        body = item.args[0]
        yield Raw("JL", mkinst(at=path, len=len(body)), ((replace_item(ant, path, body), succ, sf, None),))
    elif isinstance(f, With):
        yield Raw("&L1", mkinst(at=path, other=f.b),
                  ((replace_item(ant, path, (retype(item, f.a, False),)), succ, sf, path),))
        yield Raw("&L2", mkinst(at=path, other=f.a),
                  ((replace_item(ant, path, (retype(item, f.b, False),)), succ, sf, path),))
    elif isinstance(f, Plus):
        yield Raw("+L", mkinst(at=path), (
            (replace_item(ant, path, (retype(item, f.a, False),)), succ, sf, path),
            (replace_item(ant, path, (retype(item, f.b, False),)), succ, sf, path)))


def _infix_left(ant, succ, sf, path, item):
    f = item.formula
    k, sa = f.k, f.a.sort
    for level in range(len(path) // 2, -1, -1):
        sp = path[:2 * level]
        a = path[2 * level]
        rel_tail = path[2 * level + 1:]
        seq = get_seq(ant, sp)
        for s in range(a, -1, -1):
            for e in range(a + 1, len(seq) + 1):
                x = replace_item(seq[s:e], (a - s,) + rel_tail, (MARK,))
                for gamma, fill, runs in unfoldings(x, sa):
                    if fill.index(None) != k - 1:
                        continue
                    new_fill = tuple(fill[:k - 1]) + item.args + tuple(fill[k:])
                    new = make_item(f.c, new_fill)
                    prem = replace_run(ant, sp, s, e, (new,))
                    at = sp + (s,)
                    yield Raw("dnL", mkinst(at=at, k=k, run=(sp, s, e), runs=runs),
                              ((gamma, f.a, False, "succ"), (prem, succ, sf, at)))
