"""Enumeration and sampling of well-sorted test sequents."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .config import Sequent, figure
from .formula import (
    At, Atom, Bias, Circum, ContProd, Infix, Over, Plus, Under, With, WrapProd,
    I, J, atoms_of,
)


def atoms_for(names, biases) -> tuple:
    return tuple(At(Atom(n, 0, b)) for n, b in zip(names, biases))


def bias_assignments(names) -> list[tuple]:
    return list(itertools.product((Bias.NEG, Bias.POS), repeat=len(names)))


def _binary(a, b):
    """Every well-sorted type built from a and b by one binary connective."""
    sa, sb = a.sort, b.sort
    yield Over(a, b) if sa >= sb else None
    yield Under(a, b) if sb >= sa else None
    yield ContProd(a, b)
    if sa >= sb:
        for k in range(1, sa - sb + 2):
            yield Circum(k, a, b)
    if sa >= 1 and sb - sa + 1 >= 0:
        for k in range(1, sa + 1):
            yield Infix(k, a, b)
    if sa >= 1:
        for k in range(1, sa + 1):
            yield WrapProd(k, a, b)
    if sa == sb:
        yield With(a, b)
        yield Plus(a, b)


@lru_cache(maxsize=None)
def formulas(n: int, atoms: tuple) -> tuple:
    """All types with exactly n connectives over the given atoms."""
    if n == 0:
        return atoms
    out = []
    if n == 1:
        out += [I, J]
    for n1 in range(n):
        for a in formulas(n1, atoms):
            for b in formulas(n - 1 - n1, atoms):
                out.extend(f for f in _binary(a, b) if f is not None)
    return tuple(out)


def first_use_ordered(f, atoms: tuple) -> bool:
    """True if f's distinct atoms, in order of first occurrence, are a prefix
    of `atoms`.  When all atoms share sort and bias every type is a renaming
    of exactly one such type, so these suffice for renaming-invariant checks."""
    seen = []
    for a in atoms_of(f):
        if a.name not in seen:
            seen.append(a.name)
    return seen == [a.atom.name for a in atoms[:len(seen)]]


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def sequents(max_connectives: int, atoms: tuple, max_antecedent: int = 3):
    """Sequents whose antecedent is a sequence of figures, in a fixed order."""
    for total in range(max_connectives + 1):
        for length in range(max_antecedent + 1):
            for split in _compositions(total, length + 1):
                pools = [formulas(k, atoms) for k in split]
                for combo in itertools.product(*pools):
                    succ, ants = combo[0], combo[1:]
                    if sum(a.sort for a in ants) != succ.sort:
                        continue
                    yield Sequent(tuple(x for a in ants for x in figure(a)), succ)


def random_formula(rng: random.Random, n: int, atoms: tuple, max_k: int = 2, disc: float = 0.0):
    """A random well-sorted type with exactly n connectives, or None.

    With probability `disc` a step prefers J among the units and the highest
    available intercalation index among the connectives, which makes sorts
    of 2 and above (and hence index-2 connectives) reasonably common.
    """
    if n == 0:
        return rng.choice(atoms)
    for _ in range(50):
        if n == 1 and rng.random() < 0.1 + disc / 2:
            return J if rng.random() < disc else rng.choice((I, J))
        n1 = rng.randrange(n)
        a = random_formula(rng, n1, atoms, max_k, disc)
        b = random_formula(rng, n - 1 - n1, atoms, max_k, disc)
        if a is None or b is None:
            continue
        opts = [f for f in _binary(a, b) if f is not None and getattr(f, "k", 1) <= max_k]
        if opts and rng.random() < disc:
            top = max(getattr(f, "k", 0) for f in opts)
            if top > 1:
                opts = [f for f in opts if getattr(f, "k", 0) == top]
        if opts:
            return rng.choice(opts)
    return None


def random_sequent(rng: random.Random, max_connectives: int, atoms: tuple, max_antecedent: int = 4,
                   disc: float = 0.0):
    """A random well-sorted sequent with at most max_connectives connectives."""
    while True:
        total = rng.randint(max_connectives // 2 if disc else 0, max_connectives)
        length = rng.randint(1, max_antecedent)
        cuts = sorted(rng.randint(0, total) for _ in range(length))
        split = [b - a for a, b in zip([0] + cuts, cuts + [total])]
        if disc:
            fs = _sort_matched(rng, split, atoms, disc)
        else:
            fs = [random_formula(rng, k, atoms) for k in split]
        if fs is None or any(f is None for f in fs):
            continue
        succ, ants = fs[0], fs[1:]
        if sum(a.sort for a in ants) != succ.sort:
            continue
        return Sequent(tuple(x for a in ants for x in figure(a)), succ)


def _sort_matched(rng, split, atoms, disc, tries=200):
    """Succedent first, then antecedent types drawn until their sorts add up."""
    succ = random_formula(rng, split[0], atoms, disc=disc)
    if succ is None:
        return None
    out, left = [succ], succ.sort
    for i, k in enumerate(split[1:]):
        last = i == len(split) - 2
        for _ in range(tries):
            f = random_formula(rng, k, atoms, disc=disc)
            if f is not None and (f.sort == left if last else f.sort <= left):
                break
        else:
            return None
        out.append(f)
        left -= f.sort
    return out
