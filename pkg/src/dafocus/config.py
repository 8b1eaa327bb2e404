"""Configurations, figures, fold, wrap, contexts and sequents.

A configuration is a plain tuple of items.  Items are the separator `SEP`,
`Leaf` (a sort-0 type) and `Node` (a type of sort n with n argument
configurations).  A focus marker lives on the item itself, so it travels
with the occurrence when contexts are rebuilt.  The `tag` field is a
bookkeeping label that never takes part in equality.

Positions are integer tuples.  A sequence path alternates item and argument
indices, (i0, j0, i1, j1, ...), and addresses a nested configuration; an
item path is a sequence path followed by one item index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .formula import (
    Formula, FormulaSyntaxError, Signature, SortError, parse_formula, to_text,
)


class ArityError(ValueError):
    """Wrong number of fillers for a fold or a wrap."""


class _Separator:
    __slots__ = ()

    def __repr__(self):
        return "SEP"

    def __reduce__(self):
        return (_separator, ())


def _separator():
    return SEP


SEP = _Separator()


@dataclass(frozen=True)
class Leaf:
    formula: Formula
    focus: bool = False
    tag: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.formula.sort != 0:
            raise SortError(f"leaf needs a sort-0 type, got {to_text(self.formula)}")

    @property
    def args(self) -> tuple:
        return ()


@dataclass(frozen=True)
class Node:
    formula: Formula
    args: tuple
    focus: bool = False
    tag: int = field(default=0, compare=False)

    def __post_init__(self):
        if self.formula.sort == 0 or len(self.args) != self.formula.sort:
            raise SortError(
                f"{to_text(self.formula)} of sort {self.formula.sort} "
                f"given {len(self.args)} arguments")


def _item_hash(self):
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((self.formula, self.args, self.focus))
        object.__setattr__(self, "_hash", h)
    return h


Leaf.__hash__ = _item_hash
Node.__hash__ = _item_hash


@dataclass(frozen=True)
class Hole:
    """Placeholder for the distinguished occurrence of a context."""


HOLE = Hole()
Config = tuple
EMPTY: Config = ()
ONE: Config = (SEP,)


def is_type_item(x) -> bool:
    return isinstance(x, (Leaf, Node))


def make_item(f: Formula, args: Sequence[Config] = (), focus: bool = False, tag: int = 0):
    if f.sort == 0:
        if args:
            raise SortError(f"sort-0 type {to_text(f)} given arguments")
        return Leaf(f, focus, tag)
    return Node(f, tuple(args), focus, tag)


def retype(item, f: Formula, focus: bool | None = None):
    """Same occurrence with a different type of equal sort."""
    foc = item.focus if focus is None else focus
    return make_item(f, item.args, foc, item.tag)


def with_focus(item, focus: bool):
    return make_item(item.formula, item.args, focus, item.tag)


def figure(a: Formula) -> Config:
    if a.sort == 0:
        return (Leaf(a),)
    return (Node(a, (ONE,) * a.sort),)


def sort_config(c: Config) -> int:
    n = 0
    for x in c:
        if x is SEP:
            n += 1
        elif isinstance(x, Node):
            for a in x.args:
                n += sort_config(a)
    return n


def size_config(c: Config) -> int:
    """Total connective count of the types in c."""
    n = 0
    for x in c:
        if x is SEP or isinstance(x, Hole):
            continue
        n += x.formula.size
        for a in x.args:
            n += size_config(a)
    return n


def fold(g: Config, deltas: Sequence[Config]) -> Config:
    deltas = list(deltas)
    if len(deltas) != sort_config(g):
        raise ArityError(f"fold of a sort-{sort_config(g)} configuration given {len(deltas)} fillers")
    it = iter(deltas)

    def go(seq: Config) -> Config:
        out = []
        for x in seq:
            if x is SEP:
                out.extend(next(it))
            elif isinstance(x, Node):
                out.append(Node(x.formula, tuple(go(a) for a in x.args), x.focus, x.tag))
            else:
                out.append(x)
        return tuple(out)

    return go(g)


def wrap(d: Config, k: int, g: Config) -> Config:
    i = sort_config(d)
    if not 1 <= k <= i:
        raise ArityError(f"wrap position {k} outside 1..{i}")
    return fold(d, [ONE] * (k - 1) + [g] + [ONE] * (i - k))


# ------------------------------------------------------------- positions

def get_seq(c: Config, seq_path: Sequence[int]) -> Config:
    for n in range(0, len(seq_path), 2):
        c = c[seq_path[n]].args[seq_path[n + 1]]
    return c


def get_item(c: Config, path: Sequence[int]):
    return get_seq(c, path[:-1])[path[-1]]


def replace_run(c: Config, seq_path: Sequence[int], start: int, end: int, items: Sequence) -> Config:
    if not seq_path:
        return c[:start] + tuple(items) + c[end:]
    i, j = seq_path[0], seq_path[1]
    x = c[i]
    args = list(x.args)
    args[j] = replace_run(args[j], seq_path[2:], start, end, items)
    return c[:i] + (Node(x.formula, tuple(args), x.focus, x.tag),) + c[i + 1:]


def replace_item(c: Config, path: Sequence[int], items: Sequence) -> Config:
    return replace_run(c, path[:-1], path[-1], path[-1] + 1, items)


def item_paths(c: Config, prefix: tuple = ()) -> Iterator[tuple[tuple, object]]:
    """Every type occurrence in pre-order, left to right."""
    for i, x in enumerate(c):
        if x is SEP:
            continue
        yield prefix + (i,), x
        for j, a in enumerate(x.args):
            yield from item_paths(a, prefix + (i, j))


def seq_paths(c: Config, prefix: tuple = ()) -> Iterator[tuple]:
    """Every nested configuration, the whole one first."""
    yield prefix
    for i, x in enumerate(c):
        if isinstance(x, Node):
            for j, a in enumerate(x.args):
                yield from seq_paths(a, prefix + (i, j))


def seps_before(c: Config, seq_path: Sequence[int], index: int) -> int:
    """Separators preceding position `index` of the addressed sequence, depth first."""
    n = 0
    seq = c
    for step in range(0, len(seq_path), 2):
        i, j = seq_path[step], seq_path[step + 1]
        n += sort_config(seq[:i])
        x = seq[i]
        for a in x.args[:j]:
            n += sort_config(a)
        seq = x.args[j]
    return n + sort_config(seq[:index])


def focus_path(c: Config, prefix: tuple = ()):
    for path, x in item_paths(c, prefix):
        if x.focus:
            return path
    return None


def count_focus(c: Config) -> int:
    return sum(1 for _, x in item_paths(c) if x.focus)


def strip_focus(c: Config) -> Config:
    out = []
    for x in c:
        if x is SEP:
            out.append(x)
        else:
            out.append(make_item(x.formula, tuple(strip_focus(a) for a in x.args), False, x.tag))
    return tuple(out)


def map_items(c: Config, fn: Callable) -> Config:
    """Rebuild c bottom-up, applying fn(item, new_args) to every type occurrence."""
    out = []
    for x in c:
        if x is SEP:
            out.append(x)
        else:
            out.append(fn(x, tuple(map_items(a, fn) for a in x.args)))
    return tuple(out)


# --------------------------------------------------------------- contexts

@dataclass(frozen=True)
class Context:
    """Outer configuration with one HOLE plus the fillers of the plugged figure."""

    outer: Config
    fillers: tuple

    def plug(self, g: Config) -> Config:
        return plug(self, g)


def plug(ctx: Context, g: Config) -> Config:
    body = fold(g, ctx.fillers)
    for sp in seq_paths(ctx.outer):
        seq = get_seq(ctx.outer, sp)
        for i, x in enumerate(seq):
            if x is HOLE:
                return replace_run(ctx.outer, sp, i, i + 1, body)
    raise ValueError("context has no hole")


def occurrences(c: Config, predicate: Callable[[Formula], bool]):
    """(path, Context, item) for every type occurrence satisfying predicate."""
    for path, x in item_paths(c):
        if predicate(x.formula):
            outer = replace_item(c, path, (HOLE,))
            yield path, Context(outer, tuple(x.args)), x


# ---------------------------------------------------------------- sequents

class Sequent:
    """Antecedent configuration, succedent type and at most one focus."""

    __slots__ = ("antecedent", "succedent", "succ_focus", "_hash")

    def __init__(self, antecedent: Config, succedent: Formula, succ_focus: bool = False, check: bool = True):
        self.antecedent = tuple(antecedent)
        self.succedent = succedent
        self.succ_focus = succ_focus
        self._hash = None
        if check:
            sa, ss = sort_config(self.antecedent), succedent.sort
            if sa != ss:
                raise SortError(f"antecedent sort {sa} differs from succedent sort {ss}")
            if count_focus(self.antecedent) + int(succ_focus) > 1:
                raise SortError("more than one focus")

    def __eq__(self, other):
        return (isinstance(other, Sequent) and self.succ_focus == other.succ_focus
                and self.succedent == other.succedent and self.antecedent == other.antecedent)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.antecedent, self.succedent, self.succ_focus))
        return self._hash

    def __repr__(self):
        return f"Sequent({sequent_text(self)!r})"

    def __str__(self):
        return sequent_text(self)

    @property
    def focus(self):
        """None, "succedent", or the item path of the focused occurrence."""
        if self.succ_focus:
            return "succedent"
        return focus_path(self.antecedent)

    def has_focus(self) -> bool:
        return self.succ_focus or focus_path(self.antecedent) is not None

    def unfocused(self) -> "Sequent":
        return Sequent(strip_focus(self.antecedent), self.succedent, False, check=False)

    def size(self) -> int:
        return size_config(self.antecedent) + self.succedent.size


# ------------------------------------------------------------------- text

def item_text(x) -> str:
    if x is SEP:
        return "1"
    if isinstance(x, Hole):
        return "[]"
    s = to_text(x.formula)
    if isinstance(x, Node):
        if any(op in s for op in (" ", "/", "\\", "*")) and not (s.startswith("(") and s.endswith(")")):
            s = f"({s})"
        s += "{" + " : ".join(config_text(a) or "()" for a in x.args) + "}"
    return f"<<{s}>>" if x.focus else s


def config_text(c: Config) -> str:
    return ", ".join(item_text(x) for x in c)


def sequent_text(s: Sequent) -> str:
    succ = to_text(s.succedent)
    if s.succ_focus:
        succ = f"<<{succ}>>"
    ant = config_text(s.antecedent)
    return f"{ant} => {succ}" if ant else f"=> {succ}"


def _split_top(text: str, seps: str, offset: int) -> list[tuple[str, int]]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "({<":
            depth += 1
        elif ch in ")}>":
            depth -= 1
            if depth < 0:
                raise FormulaSyntaxError(f"unbalanced {ch!r}", offset + i)
        elif ch in seps and depth == 0:
            parts.append((text[start:i], offset + start))
            start = i + 1
    if depth != 0:
        raise FormulaSyntaxError("unbalanced brackets", offset + len(text))
    parts.append((text[start:], offset + start))
    return parts


def _parse_item(text: str, offset: int, sig: Signature):
    raw = text
    text = text.strip()
    offset += len(raw) - len(raw.lstrip())
    if text == "1":
        return SEP
    focus = False
    if text.startswith("<<"):
        if not text.endswith(">>"):
            raise FormulaSyntaxError("unterminated focus marker", offset)
        focus, text, offset = True, text[2:-2].strip(), offset + 2
    depth = 0
    brace = -1
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "{" and depth == 0:
            brace = i
            break
    if brace < 0:
        f = _formula_at(text, offset, sig)
        return make_item(f, (), focus)
    if not text.endswith("}"):
        raise FormulaSyntaxError("expected '}' closing the argument list", offset + len(text))
    f = _formula_at(text[:brace], offset, sig)
    inner = text[brace + 1:-1]
    args = tuple(parse_config(t, sig, o) for t, o in _split_top(inner, ":", offset + brace + 1))
    try:
        return make_item(f, args, focus)
    except SortError as e:
        raise SortError(f"{e} at position {offset}") from None


def _formula_at(text: str, offset: int, sig: Signature) -> Formula:
    try:
        return parse_formula(text, sig)
    except FormulaSyntaxError as e:
        raise FormulaSyntaxError(str(e).rsplit(" at position", 1)[0], offset + e.pos) from None


def parse_config(text: str, sig: Signature | None = None, offset: int = 0) -> Config:
    sig = sig if sig is not None else Signature()
    if text.strip() in ("", "()"):
        return EMPTY
    return tuple(_parse_item(t, o, sig) for t, o in _split_top(text, ",", offset))


def parse_sequent(text: str, sig: Signature | None = None) -> Sequent:
    sig = sig if sig is not None else Signature()
    text = text.replace("⇒", "=>")
    if text.count("=>") != 1:
        raise FormulaSyntaxError("a sequent needs exactly one '=>'", 0)
    left, right = text.split("=>")
    ant = parse_config(left, sig)
    right_stripped = right.strip()
    succ_focus = False
    off = len(left) + 2 + len(right) - len(right.lstrip())
    if right_stripped.startswith("<<") and right_stripped.endswith(">>"):
        succ_focus, right_stripped, off = True, right_stripped[2:-2], off + 2
    succ = _formula_at(right_stripped, off, sig)
    return Sequent(ant, succ, succ_focus)
