"""Lexicons and sentence-to-sequent goal construction.

An entry's phonology is a token sequence in which the symbol `1` marks a
separator; discontinuous entries wrap around the material between their
parts, which becomes the argument configurations of the occurrence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .config import Leaf, Node, Sequent
from .formula import Formula, FormulaSyntaxError, Signature, parse_declaration, parse_formula, to_text

SEPARATOR = "1"
DEFAULT_CAP = 10**4


class LexiconError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


class UnknownTokens(ValueError):
    def __init__(self, tokens):
        super().__init__("no lexical entry covers: " + " ".join(tokens))
        self.tokens = list(tokens)


@dataclass(frozen=True)
class LexEntry:
    phonology: tuple
    formula: Formula
    term: str | None = None

    @property
    def parts(self) -> list[tuple]:
        """Token runs between separators (len = sort + 1)."""
        out, cur = [], []
        for t in self.phonology:
            if t == SEPARATOR:
                out.append(tuple(cur))
                cur = []
            else:
                cur.append(t)
        out.append(tuple(cur))
        return out

    def text(self) -> str:
        s = " ".join(self.phonology) + " := " + to_text(self.formula)
        return s + (f" : {self.term}" if self.term else "")


@dataclass
class Lexicon:
    signature: Signature
    entries: list = field(default_factory=list)

    def by_first_token(self) -> dict:
        out: dict = {}
        for e in self.entries:
            out.setdefault(e.phonology[0], []).append(e)
        return out


_TOKEN_OK = re.compile(r"^\S+$")


def load_lexicon(text: str, signature: Signature | None = None) -> Lexicon:
    """Parse lexicon text: comments, atom declarations, then entries."""
    sig = signature.copy() if signature else Signature()
    lines = []
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((n, line))
    for n, line in lines:
        if line.startswith("atom "):
            try:
                parse_declaration(line, sig)
            except FormulaSyntaxError as e:
                raise LexiconError(str(e), n) from None
    lex = Lexicon(sig)
    for n, line in lines:
        if line.startswith("atom "):
            continue
        lex.entries.append(parse_entry(line, sig, n))
    return lex


def parse_entry(line: str, sig: Signature, n: int | None = None) -> LexEntry:
    if ":=" not in line:
        raise LexiconError(f"expected 'phonology := type' in {line!r}", n)
    phon, rhs = line.split(":=", 1)
    toks = tuple(phon.split())
    if not toks:
        raise LexiconError("empty phonology", n)
    if toks[0] == SEPARATOR:
        raise LexiconError("phonology must start with a word", n)
    term = None
    if ":" in rhs:
        rhs, term = rhs.rsplit(":", 1)
        term = term.strip() or None
    try:
        f = parse_formula(rhs.strip(), sig)
    except (FormulaSyntaxError, ValueError) as e:
        raise LexiconError(f"in entry {toks[0]!r}: {e}", n) from None
    seps = toks.count(SEPARATOR)
    if seps != f.sort:
        raise LexiconError(
            f"entry {' '.join(toks)!r} has {seps} separators but its type {to_text(f)} has sort {f.sort}", n)
    return LexEntry(toks, f, term)


def read_lexicon(path: str | Path) -> Lexicon:
    return load_lexicon(Path(path).read_text(encoding="utf-8"))


# ------------------------------------------------------------------ goals

@dataclass(frozen=True)
class Candidate:
    sequent: Sequent
    words: tuple  # LexEntry per antecedent occurrence, in pre-order

    def yield_tokens(self) -> list[str]:
        it = iter(self.words)

        def go(seq):
            out = []
            for x in seq:
                e = next(it)
                parts = e.parts
                out.extend(parts[0])
                for arg, part in zip(x.args, parts[1:]):
                    out.extend(go(arg))
                    out.extend(part)
            return out
        return go(self.sequent.antecedent)


@dataclass
class GoalSet:
    tokens: tuple
    goal: Formula
    candidates: list
    truncated: bool = False


def goals(lex: Lexicon, tokens, goal: Formula, cap: int = DEFAULT_CAP) -> GoalSet:
    """Every tiling of the tokens by lexical entries, as candidate sequents."""
    tokens = tuple(tokens)
    if not tokens:
        raise ValueError("empty sentence")
    known = {t for e in lex.entries for t in e.phonology if t != SEPARATOR}
    missing = [t for t in tokens if t not in known]
    if missing:
        raise UnknownTokens(missing)
    index = lex.by_first_token()
    truncated = False

    def match_parts(parts, i, j):
        """End positions and gap spans for matching the parts from i within j."""
        first = parts[0]
        if tokens[i:i + len(first)] != first:
            return
        yield from _rest(parts, 1, i + len(first), j, ())

    def _rest(parts, p, pos, j, gaps):
        if p == len(parts):
            yield pos, gaps
            return
        part = parts[p]
        last = p == len(parts) - 1
        for g in range(pos, j + 1):
            end = g + len(part)
            if end > j:
                break
            if tokens[g:end] == part:
                if last and not part:
                    # trailing separator: the gap may end anywhere
                    for e in range(pos, j + 1):
                        yield e, gaps + ((pos, e),)
                    return
                yield from _rest(parts, p + 1, end, j, gaps + ((pos, g),))

    @lru_cache(maxsize=None)
    def tile(i, j):
        """All (config, words) tilings of tokens[i:j]."""
        nonlocal truncated
        if i == j:
            return (((), ()),)
        out = []
        for e in index.get(tokens[i], ()):
            for end, gaps in match_parts(e.parts, i, j):
                if end == i:
                    continue
                for args in _args(gaps):
                    if e.formula.sort == 0:
                        item = Leaf(e.formula)
                    else:
                        item = Node(e.formula, tuple(a[0] for a in args))
                    words = (e,) + tuple(w for a in args for w in a[1])
                    for rest, rw in tile(end, j):
                        out.append(((item,) + rest, words + rw))
                        if len(out) >= cap:
                            truncated = True
                            return tuple(out)
        return tuple(out)

    def _args(gaps):
        if not gaps:
            yield ()
            return
        (a, b), rest = gaps[0], gaps[1:]
        for first in tile(a, b):
            for more in _args(rest):
                yield (first,) + more

    cands = []
    for cfg, words in tile(0, len(tokens)):
        if len(cands) >= cap:
            truncated = True
            break
        cands.append(Candidate(Sequent(cfg, goal), words))
    return GoalSet(tokens, goal, cands, truncated)


def entry_env(c: Candidate):
    """Semantic constants for a candidate's occurrences, where entries have them."""
    from .config import item_paths
    from .semantics import Var
    env = {}
    for i, ((path, _), e) in enumerate(zip(item_paths(c.sequent.antecedent), c.words), 1):
        env[path] = Var(e.term or f"{e.phonology[0]}{i}")
    return env
