"""Sorted types of the displacement calculus with additives.

Types are immutable trees.  Every constructor checks its sort arithmetic,
so an object that exists is well-sorted.  Atoms carry a declared sort and
a bias which decides their polarity.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, fields
from typing import Iterator, Mapping


class SortError(ValueError):
    """A type violates a sort constraint."""


class FormulaSyntaxError(ValueError):
    """Malformed type text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class Bias(enum.Enum):
    POS = "+"
    NEG = "-"


class Polarity(enum.Enum):
    POS_OUTPUT = "P"
    POS_INPUT = "Q"
    NEG_OUTPUT = "N"
    NEG_INPUT = "M"


ANTECEDENT = "antecedent"
SUCCEDENT = "succedent"


@dataclass(frozen=True)
class Atom:
    name: str
    sort: int = 0
    bias: Bias = Bias.NEG

    def __post_init__(self):
        if not self.name:
            raise SortError("atom name must be nonempty")
        if self.sort < 0:
            raise SortError(f"atom {self.name} has negative sort")
        if not isinstance(self.bias, Bias):
            raise SortError(f"atom {self.name} has no valid bias")


class Formula:
    """Base class of all types; `sort` and `size` are computed once."""

    sort: int
    size: int

    def __str__(self) -> str:
        return to_text(self)

    def children(self) -> tuple["Formula", ...]:
        return ()


def _seal(obj, sort: int, size: int) -> None:
    object.__setattr__(obj, "sort", sort)
    object.__setattr__(obj, "size", size)


def _check_k(k: int, bound: int, what: str, f) -> None:
    if not isinstance(k, int) or k < 1:
        raise SortError(f"index k={k} must be a positive integer in {to_text(f)}")
    if k > bound:
        raise SortError(f"k={k} exceeds {what} {bound} in {to_text(f)}")


@dataclass(frozen=True)
class At(Formula):
    atom: Atom
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _seal(self, self.atom.sort, 0)

    @property
    def name(self) -> str:
        return self.atom.name


@dataclass(frozen=True)
class Over(Formula):
    """C/B"""

    c: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        s = self.c.sort - self.b.sort
        if s < 0:
            raise SortError(f"negative sort {s} in {to_text(self)}")
        _seal(self, s, 1 + self.c.size + self.b.size)

    def children(self):
        return (self.c, self.b)


@dataclass(frozen=True)
class Under(Formula):
    """A\\C"""

    a: Formula
    c: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        s = self.c.sort - self.a.sort
        if s < 0:
            raise SortError(f"negative sort {s} in {to_text(self)}")
        _seal(self, s, 1 + self.a.size + self.c.size)

    def children(self):
        return (self.a, self.c)


@dataclass(frozen=True)
class ContProd(Formula):
    """A*B"""

    a: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _seal(self, self.a.sort + self.b.sort, 1 + self.a.size + self.b.size)

    def children(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class UnitI(Formula):
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _seal(self, 0, 1)


@dataclass(frozen=True)
class UnitJ(Formula):
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        _seal(self, 1, 1)


@dataclass(frozen=True)
class Circum(Formula):
    """C up_k B"""

    k: int
    c: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        s = self.c.sort - self.b.sort + 1
        if s < 1:
            raise SortError(f"sort {s} below 1 in {to_text(self)}")
        _check_k(self.k, s, "result sort", self)
        _seal(self, s, 1 + self.c.size + self.b.size)

    def children(self):
        return (self.c, self.b)


@dataclass(frozen=True)
class Infix(Formula):
    """A dn_k C"""

    k: int
    a: Formula
    c: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.a.sort < 1:
            raise SortError(f"infixed type needs sort >= 1 in {to_text(self)}")
        s = self.c.sort - self.a.sort + 1
        if s < 0:
            raise SortError(f"negative sort {s} in {to_text(self)}")
        _check_k(self.k, self.a.sort, "sort of the wrapping type", self)
        _seal(self, s, 1 + self.a.size + self.c.size)

    def children(self):
        return (self.a, self.c)


@dataclass(frozen=True)
class WrapProd(Formula):
    """A odot_k B"""

    k: int
    a: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.a.sort < 1:
            raise SortError(f"wrapping type needs sort >= 1 in {to_text(self)}")
        _check_k(self.k, self.a.sort, "sort of the wrapping type", self)
        _seal(self, self.a.sort + self.b.sort - 1, 1 + self.a.size + self.b.size)

    def children(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class With(Formula):
    """A&B"""

    a: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.a.sort != self.b.sort:
            raise SortError(f"additive operands differ in sort in {to_text(self)}")
        _seal(self, self.a.sort, 1 + self.a.size + self.b.size)

    def children(self):
        return (self.a, self.b)


@dataclass(frozen=True)
class Plus(Formula):
    """A+B"""

    a: Formula
    b: Formula
    sort: int = field(init=False, compare=False, repr=False)
    size: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.a.sort != self.b.sort:
            raise SortError(f"additive operands differ in sort in {to_text(self)}")
        _seal(self, self.a.sort, 1 + self.a.size + self.b.size)

    def children(self):
        return (self.a, self.b)


I = UnitI()
J = UnitJ()

POSITIVE_HEADS = (ContProd, UnitI, WrapProd, UnitJ, Plus)
NEGATIVE_HEADS = (Over, Under, Circum, Infix, With)


def sort_of(f: Formula) -> int:
    return f.sort


def is_atomic(f: Formula) -> bool:
    return isinstance(f, At)


def is_positive(f: Formula) -> bool:
    """True for synchronous-on-the-right types: P in succedent, M in antecedent."""
    if isinstance(f, At):
        return f.atom.bias is Bias.POS
    return isinstance(f, POSITIVE_HEADS)


def polarity_of(f: Formula, position: str) -> Polarity:
    if position == SUCCEDENT:
        return Polarity.POS_OUTPUT if is_positive(f) else Polarity.NEG_OUTPUT
    if position == ANTECEDENT:
        return Polarity.NEG_INPUT if is_positive(f) else Polarity.POS_INPUT
    raise ValueError(f"unknown position {position!r}")


def is_async(f: Formula, position: str) -> bool:
    """Complex formula whose rule at this position is invertible."""
    if isinstance(f, At):
        return False
    pol = polarity_of(f, position)
    return pol in (Polarity.NEG_OUTPUT, Polarity.NEG_INPUT)


def atoms_of(f: Formula) -> Iterator[Atom]:
    if isinstance(f, At):
        yield f.atom
    for c in f.children():
        yield from atoms_of(c)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    for c in f.children():
        yield from subformulas(c)


def with_bias(f: Formula, bias: Mapping[str, Bias]) -> Formula:
    """Copy of f with atom biases replaced where `bias` names the atom."""
    if isinstance(f, At):
        b = bias.get(f.atom.name)
        return f if b is None else At(Atom(f.atom.name, f.atom.sort, b))
    if isinstance(f, (UnitI, UnitJ)):
        return f
    kids = [with_bias(c, bias) for c in f.children()]
    if isinstance(f, (Circum, Infix, WrapProd)):
        return type(f)(f.k, *kids)
    return type(f)(*kids)


def rename_atoms(f: Formula, names: Mapping[str, str]) -> Formula:
    """Copy of f with atoms renamed (sort and bias kept)."""
    if isinstance(f, At):
        n = names.get(f.atom.name)
        return f if n is None else At(Atom(n, f.atom.sort, f.atom.bias))
    if isinstance(f, (UnitI, UnitJ)):
        return f
    kids = [rename_atoms(c, names) for c in f.children()]
    if isinstance(f, (Circum, Infix, WrapProd)):
        return type(f)(f.k, *kids)
    return type(f)(*kids)


# ---------------------------------------------------------------- printing

_LEVEL = {
    ContProd: 3, WrapProd: 3,
    Over: 2, Under: 2, Circum: 2, Infix: 2,
    With: 1, Plus: 1,
}


def _op(f: Formula) -> str:
    if isinstance(f, Over):
        return "/"
    if isinstance(f, Under):
        return "\\"
    if isinstance(f, ContProd):
        return "*"
    if isinstance(f, With):
        return " & "
    if isinstance(f, Plus):
        return " + "
    name = {Circum: "up", Infix: "dn", WrapProd: "odot"}[type(f)]
    return f" {name} " if f.k == 1 else f" {name}_{f.k} "


def to_text(f: Formula) -> str:
    if isinstance(f, At):
        return f.atom.name
    if isinstance(f, UnitI):
        return "I"
    if isinstance(f, UnitJ):
        return "J"
    level = _LEVEL[type(f)]
    left, right = f.children()

    def wrap(g: Formula) -> str:
        s = to_text(g)
        if type(g) in _LEVEL and _LEVEL[type(g)] <= level:
            return f"({s})"
        return s

    return wrap(left) + _op(f) + wrap(right)


# ----------------------------------------------------------------- parsing

_WORD_OP = re.compile(r"^(up|dn|odot)(?:_(\d+))?$")
_TOKEN = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z][A-Za-z0-9_']*)"
    r"|(?P<uni>[↑↓⊙])(?:_?(?P<unik>\d+|[₁₂₃₄₅₆₇₈₉]))?"
    r"|(?P<sym>[/\\*•&+⊕()]))"
)
_SUBSCRIPT = str.maketrans("₁₂₃₄₅₆₇₈₉", "123456789")
_UNI_NAME = {"↑": "up", "↓": "dn", "⊙": "odot"}
_SYM_NAME = {"/": "/", "\\": "\\", "*": "*", "•": "*", "&": "&", "+": "+", "⊕": "+"}
_OP_LEVEL = {"&": 1, "+": 1, "/": 2, "\\": 2, "up": 2, "dn": 2, "*": 3, "odot": 3}


class Signature:
    """Declared atoms plus the default bias for undeclared ones."""

    def __init__(self, atoms: Mapping[str, Atom] | None = None, default_bias: Bias = Bias.NEG):
        self.atoms: dict[str, Atom] = dict(atoms or {})
        self.default_bias = default_bias

    def atom(self, name: str) -> Atom:
        if name not in self.atoms:
            self.atoms[name] = Atom(name, 0, self.default_bias)
        return self.atoms[name]

    def declare(self, name: str, sort: int = 0, bias: Bias | None = None) -> Atom:
        a = Atom(name, sort, self.default_bias if bias is None else bias)
        self.atoms[name] = a
        return a

    def declaration_lines(self) -> list[str]:
        return [f"atom {a.name} sort {a.sort} bias {a.bias.value}" for a in self.atoms.values()]

    def copy(self) -> "Signature":
        return Signature(self.atoms, self.default_bias)


_DECL = re.compile(r"^\s*atom\s+([A-Za-z][A-Za-z0-9_']*)(?:\s+sort\s+(\d+))?(?:\s+bias\s+([+-]))?\s*$")


def parse_declaration(line: str, sig: Signature) -> Atom:
    m = _DECL.match(line)
    if not m:
        raise FormulaSyntaxError(f"bad atom declaration {line.strip()!r}", 0)
    name, sort, bias = m.groups()
    if name in ("I", "J") or _WORD_OP.match(name):
        raise FormulaSyntaxError(f"reserved name {name!r}", 0)
    return sig.declare(name, int(sort or 0), Bias(bias) if bias else None)


def _tokens(text: str) -> list[tuple[str, object, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("ident"):
            word = m.group("ident")
            w = _WORD_OP.match(word)
            if w:
                out.append(("op", (w.group(1), int(w.group(2) or 1)), start))
            elif word == "I":
                out.append(("unit", I, start))
            elif word == "J":
                out.append(("unit", J, start))
            else:
                out.append(("atom", word, start))
        elif m.group("uni"):
            k = m.group("unik")
            k = int(k.translate(_SUBSCRIPT)) if k else 1
            out.append(("op", (_UNI_NAME[m.group("uni")], k), start))
        else:
            sym = m.group("sym")
            if sym in "()":
                out.append((sym, None, start))
            else:
                out.append(("op", (_SYM_NAME[sym], 1), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _build(op: str, k: int, left: Formula, right: Formula) -> Formula:
    if op == "/":
        return Over(left, right)
    if op == "\\":
        return Under(left, right)
    if op == "*":
        return ContProd(left, right)
    if op == "&":
        return With(left, right)
    if op == "+":
        return Plus(left, right)
    if op == "up":
        return Circum(k, left, right)
    if op == "dn":
        return Infix(k, left, right)
    return WrapProd(k, left, right)


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.toks = _tokens(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def level(self, lv: int) -> Formula:
        if lv > 3:
            return self.primary()
        left = self.level(lv + 1)
        kind, val, pos = self.peek()
        if kind == "op" and _OP_LEVEL[val[0]] == lv:
            self.take()
            right = self.level(lv + 1)
            try:
                left = _build(val[0], val[1], left, right)
            except SortError as e:
                raise SortError(f"{e} (operator at position {pos})") from None
            kind2, val2, pos2 = self.peek()
            if kind2 == "op" and _OP_LEVEL[val2[0]] == lv:
                raise FormulaSyntaxError("operators of equal precedence need parentheses", pos2)
        return left

    def primary(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "atom":
            return At(self.sig.atom(val))
        if kind == "unit":
            return val
        if kind == "(":
            f = self.level(1)
            kind2, _, pos2 = self.take()
            if kind2 != ")":
                raise FormulaSyntaxError("expected ')'", pos2)
            return f
        raise FormulaSyntaxError(f"unexpected {kind} token", pos)


def parse_formula(text: str, sig: Signature | None = None) -> Formula:
    p = _Parser(text, sig if sig is not None else Signature())
    f = p.level(1)
    kind, _, pos = p.peek()
    if kind != "end":
        raise FormulaSyntaxError("trailing input", pos)
    return f


def _install_cached_hash(cls) -> None:
    """Memoise the structural hash; types are immutable and hashed often."""
    names = tuple(f.name for f in fields(cls) if f.compare)

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((cls.__name__,) + tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_hash", h)
        return h
    cls.__hash__ = __hash__


for _cls in (At, Over, Under, ContProd, UnitI, UnitJ, Circum, Infix, WrapProd, With, Plus):
    _install_cached_hash(_cls)
