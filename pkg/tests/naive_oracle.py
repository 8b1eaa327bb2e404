"""Independent proof counter for the continuous fragment.

Types are nested tuples and antecedents flat tuples; every rule is applied
by slicing, with no configuration machinery.  Covers /, \\, *, I, & and +
over sort-0 atoms, which is enough to cross-check counts and verdicts of
the main engine on that fragment.
"""

import re
from functools import lru_cache

_TOK = re.compile(r"\s*(=>|[A-Za-z][A-Za-z0-9_']*|[()/\\*&+,])")


def tokenize(text):
    out, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m:
            raise ValueError(f"bad input at {pos}: {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


_LEVEL = {"&": 1, "+": 1, "/": 2, "\\": 2, "*": 3}


class _P:
    def __init__(self, toks):
        self.toks, self.i = toks, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def expr(self, level=1):
        if level > 3:
            return self.atom()
        left = self.expr(level + 1)
        op = self.peek()
        if op in _LEVEL and _LEVEL[op] == level:
            self.i += 1
            right = self.expr(level + 1)
            if self.peek() in _LEVEL and _LEVEL[self.peek()] == level:
                raise ValueError("ambiguous chain; add brackets")
            return (op, left, right)
        return left

    def atom(self):
        t = self.peek()
        self.i += 1
        if t == "(":
            e = self.expr()
            assert self.peek() == ")", self.toks
            self.i += 1
            return e
        if t == "I":
            return ("I",)
        if t is None or not t[0].isalpha() or t == "J":
            raise ValueError(f"unexpected {t!r}")
        return ("at", t)


def parse_type(text):
    p = _P(tokenize(text))
    e = p.expr()
    if p.peek() is not None:
        raise ValueError("trailing input")
    return e


def parse(text):
    """'A, B => C' as (antecedent tuple, succedent)."""
    left, right = text.split("=>")
    ant = tuple(parse_type(x) for x in _split_commas(left)) if left.strip() else ()
    return ant, parse_type(right)


def _split_commas(s):
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return out


@lru_cache(maxsize=None)
def count(ant, succ):
    """Number of distinct cut-free derivations (atomic axioms only)."""
    n = 0
    if len(ant) == 1 and ant[0] == succ and succ[0] == "at":
        n += 1
    # right rules
    op = succ[0]
    if op == "/":
        n += count(ant + (succ[2],), succ[1])
    elif op == "\\":
        n += count((succ[1],) + ant, succ[2])
    elif op == "*":
        for i in range(len(ant) + 1):
            n += count(ant[:i], succ[1]) * count(ant[i:], succ[2])
    elif op == "I":
        n += 1 if not ant else 0
    elif op == "&":
        n += count(ant, succ[1]) * count(ant, succ[2])
    elif op == "+":
        n += count(ant, succ[1]) + count(ant, succ[2])
    # left rules
    for p, t in enumerate(ant):
        pre, post = ant[:p], ant[p + 1:]
        op = t[0]
        if op == "/":
            c, b = t[1], t[2]
            for j in range(len(post) + 1):
                n += count(post[:j], b) * count(pre + (c,) + post[j:], succ)
        elif op == "\\":
            a, c = t[1], t[2]
            for i in range(len(pre) + 1):
                n += count(pre[i:], a) * count(pre[:i] + (c,) + post, succ)
        elif op == "*":
            n += count(pre + (t[1], t[2]) + post, succ)
        elif op == "I":
            n += count(pre + post, succ)
        elif op == "&":
            n += count(pre + (t[1],) + post, succ) + count(pre + (t[2],) + post, succ)
        elif op == "+":
            n += count(pre + (t[1],) + post, succ) * count(pre + (t[2],) + post, succ)
    return n


def provable(text):
    ant, succ = parse(text)
    return count(ant, succ) > 0


def proof_count(text):
    ant, succ = parse(text)
    return count(ant, succ)
