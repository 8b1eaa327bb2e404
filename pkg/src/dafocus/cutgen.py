"""Seeded compositions of cut-free weak derivations by a single cut.

A pool of cut-free derivations is grown from focused proofs, cut-free
embeddings of unfocused proofs, their subderivations and eta-expansions.
A composition for a given cut rule picks a right derivation and an
occurrence in its antecedent, then a left derivation whose succedent is
that occurrence's type with the focus pattern the rule demands.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .calculus import DAF, Derivation, count_cuts, prove_all, replay
from .config import Sequent, item_paths
from .focus import prove_focused
from .formula import Bias, is_positive
from .generate import atoms_for, random_sequent
from .transform import Rewrite, cut_eliminate, embed_da, eta_expand, make_cut

CUTS = ("pcut1", "pcut2", "ncut1", "ncut2")


def _unfocus(d: Derivation) -> Derivation:
    return Derivation(d.conclusion.unfocused(), "foc", (d,))


class Pool:
    """Cut-free weak derivations indexed by succedent and focus pattern."""

    def __init__(self):
        self.items: list[Derivation] = []
        self._seen: set = set()
        self.by_succ: dict = {}

    def add(self, d: Derivation) -> None:
        for n in d.nodes():
            key = (n.conclusion, n.rule, tuple(p.conclusion for p in n.premises))
            if key in self._seen:
                continue
            self._seen.add(key)
            self.items.append(n)
            self.by_succ.setdefault(n.conclusion.succedent, []).append(n)

    def add_eta(self, f) -> None:
        d = eta_expand(f)
        self.add(d)
        self.add(_unfocus(d))


def build_pool(seed: int = 0, sequents=(), samples: int = 150, max_connectives: int = 4) -> Pool:
    pool = Pool()
    rng = random.Random(seed)
    atoms = atoms_for("ab", (Bias.NEG, Bias.POS))
    corpus = list(sequents)
    tries = 0
    while len(corpus) < len(sequents) + samples and tries < 50 * samples:
        tries += 1
        s = random_sequent(rng, max_connectives, atoms, 3)
        if prove_focused(s, max_proofs=1, node_budget=20000).provable:
            corpus.append(s)
    for s in corpus:
        for d in prove_focused(s, max_proofs=3, node_budget=50000).derivations:
            pool.add(d)
        u = prove_all(s, max_proofs=1, node_budget=50000).derivations
        if u:
            pool.add(cut_eliminate(embed_da(u[0])))
    for d in list(pool.items):
        for _, x in item_paths(d.conclusion.antecedent):
            if x.formula not in pool.by_succ or rng.random() < 0.1:
                pool.add_eta(x.formula)
    return pool


def _left_ok(rule: str, left: Sequent) -> bool:
    a = left.succedent
    if rule == "pcut1":
        return is_positive(a) and left.succ_focus
    if rule == "ncut1":
        return is_positive(a) and not left.succ_focus
    if rule == "pcut2":
        return not is_positive(a) and not left.succ_focus
    return not is_positive(a) and not left.has_focus()


def _right_sites(rule: str, right: Sequent):
    for path, x in item_paths(right.antecedent):
        pos = is_positive(x.formula)
        if rule == "pcut1" and pos and not x.focus:
            yield path, x
        elif rule == "ncut1" and pos and not right.has_focus():
            yield path, x
        elif rule == "pcut2" and not pos and x.focus:
            yield path, x
        elif rule == "ncut2" and not pos and not x.focus:
            yield path, x


def compose(rng: random.Random, pool: Pool, rule: str, attempts: int = 2000) -> Derivation:
    """A random derivation ending in one cut of the given kind."""
    for _ in range(attempts):
        right = rng.choice(pool.items)
        sites = list(_right_sites(rule, right.conclusion))
        if not sites:
            continue
        path, x = rng.choice(sites)
        lefts = [d for d in pool.by_succ.get(x.formula, ()) if _left_ok(rule, d.conclusion)]
        if not lefts:
            pool.add_eta(x.formula)
            lefts = [d for d in pool.by_succ.get(x.formula, ()) if _left_ok(rule, d.conclusion)]
        if not lefts:
            continue
        left = rng.choice(lefts)
        if left.conclusion.has_focus() and right.conclusion.has_focus() and not (
                rule == "pcut2" or (rule == "pcut1" and left.conclusion.succ_focus)):
            continue
        try:
            return make_cut(left, right, path, rule)
        except ValueError:
            continue
    raise RuntimeError(f"could not compose a {rule} instance")


@dataclass
class CutCheck:
    rule: str
    ok: bool
    cuts_left: int
    decreasing: bool
    rewrites: int
    detail: str = ""


def check_composition(d: Derivation, fuel: int = 200000) -> CutCheck:
    """Eliminate the cuts of d and check the result and the rewrite measure."""
    log: list[Rewrite] = []
    try:
        out = cut_eliminate(d, fuel, log)
        end = replay(out, DAF)
    except Exception as e:  # reported, not raised: the caller tallies failures
        return CutCheck(d.rule, False, -1, False, len(log), f"{type(e).__name__}: {e}")
    cuts = count_cuts(out)
    dec = all(r.decreasing() for r in log)
    ok = cuts == 0 and end == d.conclusion and dec
    return CutCheck(d.rule, ok, cuts, dec, len(log), "" if ok else f"end={end}")
