"""Semantic terms read off derivations, and their normal forms.

Every rule contributes a fixed term operation: left implications apply,
right implications abstract, products pair and project, sums inject and
case, units are `unit`, and cut substitutes.  Readings are compared in
beta/projection/case normal form up to renaming of bound variables.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .calculus import Derivation, occurrence_map
from .config import Sequent, item_paths
from .formula import At, Circum, ContProd, Formula, Infix, Over, Plus, Under, With, WrapProd
from . import rules as R


# ------------------------------------------------------------------ types

@dataclass(frozen=True)
class Base:
    name: str


@dataclass(frozen=True)
class Fun:
    a: object
    b: object


@dataclass(frozen=True)
class Prod:
    a: object
    b: object


@dataclass(frozen=True)
class Sum:
    a: object
    b: object


@dataclass(frozen=True)
class UnitT:
    pass


def sem_type(f: Formula):
    """The semantic type of a syntactic type."""
    if isinstance(f, At):
        return Base(f.atom.name)
    if isinstance(f, Over):
        return Fun(sem_type(f.b), sem_type(f.c))
    if isinstance(f, Under):
        return Fun(sem_type(f.a), sem_type(f.c))
    if isinstance(f, Circum):
        return Fun(sem_type(f.b), sem_type(f.c))
    if isinstance(f, Infix):
        return Fun(sem_type(f.a), sem_type(f.c))
    if isinstance(f, (ContProd, WrapProd, With)):
        return Prod(sem_type(f.a), sem_type(f.b))
    if isinstance(f, Plus):
        return Sum(sem_type(f.a), sem_type(f.b))
    return UnitT()


def type_text(t) -> str:
    if isinstance(t, Base):
        return t.name
    if isinstance(t, UnitT):
        return "1"
    op = {Fun: "->", Prod: "*", Sum: "+"}[type(t)]
    return f"({type_text(t.a)} {op} {type_text(t.b)})"


# ------------------------------------------------------------------ terms

class SemTerm:
    __slots__ = ()

    def __str__(self):
        return term_text(self)


@dataclass(frozen=True)
class Var(SemTerm):
    name: str


@dataclass(frozen=True)
class Lam(SemTerm):
    var: str
    body: SemTerm


@dataclass(frozen=True)
class App(SemTerm):
    fun: SemTerm
    arg: SemTerm


@dataclass(frozen=True)
class Pair(SemTerm):
    fst: SemTerm
    snd: SemTerm


@dataclass(frozen=True)
class Proj(SemTerm):
    i: int
    t: SemTerm


@dataclass(frozen=True)
class Inj(SemTerm):
    i: int
    t: SemTerm


@dataclass(frozen=True)
class Case(SemTerm):
    t: SemTerm
    x: str
    left: SemTerm
    y: str
    right: SemTerm


@dataclass(frozen=True)
class Unit(SemTerm):
    pass


UNIT = Unit()


def Proj1(t):
    return Proj(1, t)


def Proj2(t):
    return Proj(2, t)


def Inj1(t):
    return Inj(1, t)


def Inj2(t):
    return Inj(2, t)


class TypeError_(ValueError):
    pass


def type_of(t: SemTerm, ctx: dict, hint=None):
    """Type of t given a context of free variables.

    Injections cannot be typed bottom-up, so a hint carrying the expected
    sum type may be supplied; otherwise TypeError_ is raised for them.
    """
    if isinstance(t, Var):
        if t.name not in ctx:
            raise TypeError_(f"unbound variable {t.name}")
        return ctx[t.name]
    if isinstance(t, Unit):
        return UnitT()
    if isinstance(t, Lam):
        if not isinstance(hint, Fun):
            raise TypeError_("abstraction needs an expected function type")
        body = type_of(t.body, {**ctx, t.var: hint.a}, hint.b)
        return Fun(hint.a, body)
    if isinstance(t, App):
        ft = type_of(t.fun, ctx)
        if not isinstance(ft, Fun):
            raise TypeError_(f"applying a non-function in {term_text(t)}")
        at = type_of(t.arg, ctx, ft.a)
        if at != ft.a:
            raise TypeError_(f"argument type mismatch in {term_text(t)}")
        return ft.b
    if isinstance(t, Pair):
        ha = hint.a if isinstance(hint, Prod) else None
        hb = hint.b if isinstance(hint, Prod) else None
        return Prod(type_of(t.fst, ctx, ha), type_of(t.snd, ctx, hb))
    if isinstance(t, Proj):
        pt = type_of(t.t, ctx)
        if not isinstance(pt, Prod):
            raise TypeError_(f"projection from a non-pair in {term_text(t)}")
        return pt.a if t.i == 1 else pt.b
    if isinstance(t, Inj):
        if not isinstance(hint, Sum):
            raise TypeError_("injection needs an expected sum type")
        inner = type_of(t.t, ctx, hint.a if t.i == 1 else hint.b)
        if inner != (hint.a if t.i == 1 else hint.b):
            raise TypeError_(f"injection mismatch in {term_text(t)}")
        return hint
    if isinstance(t, Case):
        st = type_of(t.t, ctx)
        if not isinstance(st, Sum):
            raise TypeError_(f"case on a non-sum in {term_text(t)}")
        l = type_of(t.left, {**ctx, t.x: st.a}, hint)
        r = type_of(t.right, {**ctx, t.y: st.b}, hint)
        if l != r:
            raise TypeError_(f"case branches differ in {term_text(t)}")
        return l
    raise TypeError_(f"not a term: {t!r}")


def has_type(t: SemTerm, ctx: dict, ty) -> bool:
    try:
        return type_of(t, ctx, ty) == ty
    except TypeError_:
        return False


# ------------------------------------------------------- substitution

def free_vars(t: SemTerm) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Unit):
        return set()
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.var}
    if isinstance(t, (App, Pair)):
        a, b = (t.fun, t.arg) if isinstance(t, App) else (t.fst, t.snd)
        return free_vars(a) | free_vars(b)
    if isinstance(t, (Proj, Inj)):
        return free_vars(t.t)
    return free_vars(t.t) | (free_vars(t.left) - {t.x}) | (free_vars(t.right) - {t.y})


_fresh = itertools.count()


def fresh(base: str = "v") -> str:
    return f"_{base}{next(_fresh)}"


def subst(t: SemTerm, x: str, u: SemTerm) -> SemTerm:
    """t with u substituted for free x, renaming binders to avoid capture."""
    if isinstance(t, Var):
        return u if t.name == x else t
    if isinstance(t, Unit):
        return t
    if isinstance(t, App):
        return App(subst(t.fun, x, u), subst(t.arg, x, u))
    if isinstance(t, Pair):
        return Pair(subst(t.fst, x, u), subst(t.snd, x, u))
    if isinstance(t, Proj):
        return Proj(t.i, subst(t.t, x, u))
    if isinstance(t, Inj):
        return Inj(t.i, subst(t.t, x, u))
    fv = free_vars(u)
    if isinstance(t, Lam):
        v, body = _under(t.var, t.body, x, u, fv)
        return Lam(v, body)
    v1, l = _under(t.x, t.left, x, u, fv)
    v2, r = _under(t.y, t.right, x, u, fv)
    return Case(subst(t.t, x, u), v1, l, v2, r)


def _under(v, body, x, u, fv):
    if v == x:
        return v, body
    if v in fv:
        w = fresh()
        body = subst(body, v, Var(w))
        v = w
    return v, subst(body, x, u)


def normalize(t: SemTerm) -> SemTerm:
    """Normal form under beta, projection and case reduction."""
    if isinstance(t, (Var, Unit)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, normalize(t.body))
    if isinstance(t, App):
        f = normalize(t.fun)
        a = normalize(t.arg)
        if isinstance(f, Lam):
            return normalize(subst(f.body, f.var, a))
        return App(f, a)
    if isinstance(t, Pair):
        return Pair(normalize(t.fst), normalize(t.snd))
    if isinstance(t, Proj):
        p = normalize(t.t)
        if isinstance(p, Pair):
            return p.fst if t.i == 1 else p.snd
        return Proj(t.i, p)
    if isinstance(t, Inj):
        return Inj(t.i, normalize(t.t))
    s = normalize(t.t)
    if isinstance(s, Inj):
        v, body = (t.x, t.left) if s.i == 1 else (t.y, t.right)
        return normalize(subst(body, v, s.t))
    return Case(s, t.x, normalize(t.left), t.y, normalize(t.right))


def commute(t: SemTerm) -> SemTerm:
    """Normal form that also applies the commuting conversions for case.

    Every case whose scrutinee is not bound locally is lifted to the
    outside (innermost, then smallest scrutinee first), nested cases on an already
    analysed scrutinee are resolved to the matching branch, and a case
    whose branches agree and ignore their variables is dropped.  This
    identifies terms that differ only in where a sum was analysed.
    """
    return _lift(normalize(t))


def _scrutinees(t, bound=frozenset()):
    if isinstance(t, (Var, Unit)):
        return []
    if isinstance(t, Lam):
        return _scrutinees(t.body, bound | {t.var})
    if isinstance(t, App):
        return _scrutinees(t.fun, bound) + _scrutinees(t.arg, bound)
    if isinstance(t, Pair):
        return _scrutinees(t.fst, bound) + _scrutinees(t.snd, bound)
    if isinstance(t, (Proj, Inj)):
        return _scrutinees(t.t, bound)
    out = [] if free_vars(t.t) & bound else [t.t]
    return (out + _scrutinees(t.t, bound) + _scrutinees(t.left, bound | {t.x})
            + _scrutinees(t.right, bound | {t.y}))


def _select(t, s, i, v, bound=frozenset()):
    """t with every free case on s replaced by its i-th branch, bound to v."""
    if isinstance(t, (Var, Unit)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, _select(t.body, s, i, v, bound | {t.var}))
    if isinstance(t, App):
        return App(_select(t.fun, s, i, v, bound), _select(t.arg, s, i, v, bound))
    if isinstance(t, Pair):
        return Pair(_select(t.fst, s, i, v, bound), _select(t.snd, s, i, v, bound))
    if isinstance(t, Proj):
        return Proj(t.i, _select(t.t, s, i, v, bound))
    if isinstance(t, Inj):
        return Inj(t.i, _select(t.t, s, i, v, bound))
    if not (free_vars(t.t) & bound) and alpha_equal(t.t, s):
        x, body = (t.x, t.left) if i == 1 else (t.y, t.right)
        return _select(subst(body, x, Var(v)), s, i, v, bound)
    return Case(_select(t.t, s, i, v, bound),
                t.x, _select(t.left, s, i, v, bound | {t.x}),
                t.y, _select(t.right, s, i, v, bound | {t.y}))


def _lift(t: SemTerm) -> SemTerm:
    # innermost scrutinees first, so that no case is left inside a scrutinee
    found = [u for u in _scrutinees(t) if not _scrutinees(u)]
    if found:
        s = min(found, key=lambda u: repr(_debruijn(u, [])))
        x, y = fresh("c"), fresh("c")
        left = _lift(normalize(_select(t, s, 1, x)))
        right = _lift(normalize(_select(t, s, 2, y)))
        if x not in free_vars(left) and y not in free_vars(right) and alpha_equal(left, right):
            return left
        return Case(s, x, left, y, right)
    if isinstance(t, (Var, Unit)):
        return t
    if isinstance(t, Lam):
        return Lam(t.var, _lift(t.body))
    if isinstance(t, App):
        return App(_lift(t.fun), _lift(t.arg))
    if isinstance(t, Pair):
        return Pair(_lift(t.fst), _lift(t.snd))
    return type(t)(t.i, _lift(t.t))


def eta_normal(t: SemTerm) -> SemTerm:
    """Eta contraction for functions, pairs and sums, bottom-up.

    The sum law is used in its context form: a case whose branches are the
    same context around i1 x and i2 y collapses to that context around the
    scrutinee.  Applied to beta normal terms the result stays beta normal.
    """
    if isinstance(t, (Var, Unit)):
        return t
    if isinstance(t, Lam):
        body = eta_normal(t.body)
        if isinstance(body, App) and body.arg == Var(t.var) and t.var not in free_vars(body.fun):
            return body.fun
        return Lam(t.var, body)
    if isinstance(t, App):
        return App(eta_normal(t.fun), eta_normal(t.arg))
    if isinstance(t, Pair):
        a, b = eta_normal(t.fst), eta_normal(t.snd)
        if isinstance(a, Proj) and isinstance(b, Proj) and (a.i, b.i) == (1, 2) and a.t == b.t:
            return a.t
        return Pair(a, b)
    if isinstance(t, (Proj, Inj)):
        return type(t)(t.i, eta_normal(t.t))
    scrut = eta_normal(t.t)
    left, right = eta_normal(t.left), eta_normal(t.right)
    h = fresh("h")
    l2 = _replace(left, Inj(1, Var(t.x)), Var(h))
    r2 = _replace(right, Inj(2, Var(t.y)), Var(h))
    if t.x not in free_vars(l2) and t.y not in free_vars(r2) and alpha_equal(l2, r2):
        return subst(l2, h, scrut)
    return Case(scrut, t.x, left, t.y, right)


def _replace(t, old, new):
    """t with every occurrence of old (free in t) replaced by new."""
    if t == old:
        return new
    if isinstance(t, (Var, Unit)):
        return t
    if isinstance(t, Lam):
        if t.var in free_vars(old):
            return t
        return Lam(t.var, _replace(t.body, old, new))
    if isinstance(t, App):
        return App(_replace(t.fun, old, new), _replace(t.arg, old, new))
    if isinstance(t, Pair):
        return Pair(_replace(t.fst, old, new), _replace(t.snd, old, new))
    if isinstance(t, (Proj, Inj)):
        return type(t)(t.i, _replace(t.t, old, new))
    fo = free_vars(old)
    return Case(_replace(t.t, old, new),
                t.x, t.left if t.x in fo else _replace(t.left, old, new),
                t.y, t.right if t.y in fo else _replace(t.right, old, new))


def canonical(t: SemTerm) -> SemTerm:
    """Rename bound variables to b0, b1, ... in binding order."""
    counter = itertools.count()

    def go(t, ren):
        if isinstance(t, Var):
            return Var(ren.get(t.name, t.name))
        if isinstance(t, Unit):
            return t
        if isinstance(t, Lam):
            v = f"b{next(counter)}"
            return Lam(v, go(t.body, {**ren, t.var: v}))
        if isinstance(t, App):
            return App(go(t.fun, ren), go(t.arg, ren))
        if isinstance(t, Pair):
            return Pair(go(t.fst, ren), go(t.snd, ren))
        if isinstance(t, Proj):
            return Proj(t.i, go(t.t, ren))
        if isinstance(t, Inj):
            return Inj(t.i, go(t.t, ren))
        s = go(t.t, ren)
        v1 = f"b{next(counter)}"
        l = go(t.left, {**ren, t.x: v1})
        v2 = f"b{next(counter)}"
        r = go(t.right, {**ren, t.y: v2})
        return Case(s, v1, l, v2, r)
    return go(t, {})


def alpha_equal(a: SemTerm, b: SemTerm) -> bool:
    return _debruijn(a, []) == _debruijn(b, [])


def _debruijn(t, stack):
    if isinstance(t, Var):
        for i in range(len(stack) - 1, -1, -1):
            if stack[i] == t.name:
                return ("bv", len(stack) - 1 - i)
        return ("fv", t.name)
    if isinstance(t, Unit):
        return ("unit",)
    if isinstance(t, Lam):
        return ("lam", _debruijn(t.body, stack + [t.var]))
    if isinstance(t, App):
        return ("app", _debruijn(t.fun, stack), _debruijn(t.arg, stack))
    if isinstance(t, Pair):
        return ("pair", _debruijn(t.fst, stack), _debruijn(t.snd, stack))
    if isinstance(t, Proj):
        return ("proj", t.i, _debruijn(t.t, stack))
    if isinstance(t, Inj):
        return ("inj", t.i, _debruijn(t.t, stack))
    return ("case", _debruijn(t.t, stack), _debruijn(t.left, stack + [t.x]),
            _debruijn(t.right, stack + [t.y]))


# ----------------------------------------------------------- text syntax

_PREFIX = (Lam, Case, Proj, Inj)


def term_text(t: SemTerm) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Unit):
        return "unit"
    if isinstance(t, Lam):
        return f"\\{t.var}.{term_text(t.body)}"
    if isinstance(t, App):
        return f"({_wrap(t.fun)} {_wrap(t.arg)})"
    if isinstance(t, Pair):
        return f"({term_text(t.fst)}, {term_text(t.snd)})"
    if isinstance(t, Proj):
        return f"p{t.i} {_wrap(t.t)}"
    if isinstance(t, Inj):
        return f"i{t.i} {_wrap(t.t)}"
    return (f"case {term_text(t.t)} of {t.x}.{_wrap_branch(t.left)}"
            f" | {t.y}.{_wrap_branch(t.right)}")


def _wrap(t):
    s = term_text(t)
    return f"({s})" if isinstance(t, _PREFIX) else s


def _wrap_branch(t):
    s = term_text(t)
    return f"({s})" if isinstance(t, (Lam, Case)) else s


_TOKEN = re.compile(r"\s*(?:(\\|λ|\.|\(|\)|,|\|)|([A-Za-z_][\w'\-]*))")
_KEYWORDS = {"case", "of", "unit", "p1", "p2", "i1", "i2"}


class TermSyntaxError(ValueError):
    pass


def parse_term(text: str) -> SemTerm:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        toks.append(m.group(1) or m.group(2))
        pos = m.end()
    toks = ["\\" if t == "λ" else t for t in toks]
    p = _TermParser(toks)
    t = p.term()
    if p.i != len(toks):
        raise TermSyntaxError(f"trailing input at token {p.i}: {toks[p.i]!r}")
    return t


class _TermParser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise TermSyntaxError(f"expected {want or 'a token'} at token {self.i}, got {t!r}")
        self.i += 1
        return t

    def name(self):
        t = self.take()
        if t in _KEYWORDS or not re.match(r"[A-Za-z_]", t):
            raise TermSyntaxError(f"expected a variable at token {self.i - 1}, got {t!r}")
        return t

    def term(self):
        t = self.peek()
        if t == "\\":
            self.take()
            v = self.name()
            self.take(".")
            return Lam(v, self.term())
        if t == "case":
            self.take()
            s = self.term()
            self.take("of")
            x = self.name()
            self.take(".")
            left = self.term()
            self.take("|")
            y = self.name()
            self.take(".")
            return Case(s, x, left, y, self.term())
        if t in ("p1", "p2", "i1", "i2"):
            self.take()
            arg = self.atom()
            return (Proj if t[0] == "p" else Inj)(int(t[1]), arg)
        return self.atom()

    def atom(self):
        t = self.peek()
        if t == "(":
            self.take()
            first = self.term()
            if self.peek() == ")":
                self.take()
                return first
            if self.peek() == ",":
                self.take()
                second = self.term()
                self.take(")")
                return Pair(first, second)
            out = first
            while self.peek() != ")":
                out = App(out, self.term())
            self.take(")")
            return out
        if t in ("p1", "p2", "i1", "i2", "\\", "case"):
            return self.term()
        if t == "unit":
            self.take()
            return UNIT
        return Var(self.name())


# ------------------------------------------------------------- extraction

class ExtractionError(ValueError):
    pass


def default_env(s: Sequent, prefix: str = "x") -> dict:
    """One free variable per antecedent occurrence, numbered in pre-order."""
    return {path: Var(f"{prefix}{i}") for i, (path, _) in enumerate(item_paths(s.antecedent), 1)}


def extract(d: Derivation, env: dict | None = None) -> SemTerm:
    """The term of d given terms for its conclusion's antecedent occurrences."""
    if env is None:
        env = default_env(d.conclusion)
    return _extract(d, env)


def _premise_env(env, mapping):
    return {pp: env[cp] for pp, cp in mapping.items() if cp in env}


def _extract(d: Derivation, env: dict) -> SemTerm:
    rule = d.rule
    if rule == "Id":
        if len(d.conclusion.antecedent) != 1:
            raise ExtractionError("identity with a compound antecedent")
        return env[(0,)]
    if rule in ("IR", "JR"):
        return UNIT
    if rule == "foc":
        return _extract(d.premises[0], env)
    try:
        fw, maps = occurrence_map(d)
    except ValueError as e:
        raise ExtractionError(str(e)) from None
    envs = [_premise_env(env, m) for m in maps]
    inst = dict(d.inst)
    if rule in R.CUT_RULES:
        left, right = d.premises
        at = tuple(inst["at"])
        envs[1][at] = _extract(left, envs[0])
        return _extract(right, envs[1])
    if rule in ("/R", "\\R", "upR", "dnR"):
        v = fresh("x")
        envs[0][fw.actives[0]] = Var(v)
        return Lam(v, _extract(d.premises[0], envs[0]))
    if rule in ("*R", "odotR", "&R"):
        return Pair(_extract(d.premises[0], envs[0]), _extract(d.premises[1], envs[1]))
    if rule in ("+R1", "+R2"):
        return Inj(1 if rule == "+R1" else 2, _extract(d.premises[0], envs[0]))
    z = env[fw.principal]
    if rule in ("/L", "\\L", "upL", "dnL"):
        arg = _extract(d.premises[0], envs[0])
        envs[1][fw.actives[1]] = App(z, arg)
        return _extract(d.premises[1], envs[1])
    if rule == "*L":
        at = fw.actives[0]
        envs[0][at] = Proj1(z)
        envs[0][at[:-1] + (at[-1] + 1,)] = Proj2(z)
        return _extract(d.premises[0], envs[0])
    if rule == "odotL":
        at = fw.actives[0]
        envs[0][at] = Proj1(z)
        envs[0][at + (inst["k"] - 1, 0)] = Proj2(z)
        return _extract(d.premises[0], envs[0])
    if rule in ("IL", "JL"):
        return _extract(d.premises[0], envs[0])
    if rule in ("&L1", "&L2"):
        envs[0][fw.actives[0]] = Proj(1 if rule == "&L1" else 2, z)
        return _extract(d.premises[0], envs[0])
    if rule == "+L":
        x, y = fresh("x"), fresh("y")
        envs[0][fw.actives[0]] = Var(x)
        envs[1][fw.actives[1]] = Var(y)
        return Case(z, x, _extract(d.premises[0], envs[0]), y, _extract(d.premises[1], envs[1]))
    raise ExtractionError(f"no term operation for rule {rule}")


def reading(d: Derivation, env: dict | None = None, commuting: bool = False,
            eta: bool = False) -> SemTerm:
    """Normalised reading; with commuting=True case conversions are applied
    too, and with eta=True the result is also eta contracted."""
    t = extract(d, env)
    t = commute(t) if commuting else normalize(t)
    return canonical(eta_normal(t) if eta else t)


def readings(s: Sequent, proofs, env: dict | None = None, commuting: bool = False,
             eta: bool = False) -> list[SemTerm]:
    """Distinct normalised readings of the proofs, in first-seen order."""
    if env is None:
        env = default_env(s)
    out, seen = [], set()
    for d in proofs:
        t = reading(d, env, commuting, eta)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def context_types(s: Sequent, env: dict | None = None) -> dict:
    """Typing context for the free variables of default_env(s)."""
    if env is None:
        env = default_env(s)
    ctx = {}
    for path, x in item_paths(s.antecedent):
        v = env.get(path)
        if isinstance(v, Var):
            ctx[v.name] = sem_type(x.formula)
    return ctx
