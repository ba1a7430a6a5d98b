"""First-order formulas over binary structures: parsing, prenex form and a brute-force
evaluator.

Grammar::

    formula := quant | disj
    quant   := ("E" | "A") var formula          (scope extends to the right)
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "!" unary | quant | "(" formula ")" | atom
    atom    := var "=" var | "E(" var "," var ")" | Rname(var, var) | Uname(var)

``E(x,y)`` is the relation named ``E`` (the edge relation of a graph), ``Rfoo`` the
relation ``foo`` and ``Ufoo`` the unary relation ``foo``.
"""

import re
from collections import namedtuple

from ..config import CapExceeded, cap

Eq = namedtuple("Eq", "a b")
Rel = namedtuple("Rel", "name a b")
Un = namedtuple("Un", "name a")
Not = namedtuple("Not", "f")
And = namedtuple("And", "fs")
Or = namedtuple("Or", "fs")
Quant = namedtuple("Quant", "q var body")


class FormulaError(ValueError):
    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
        self.pos = pos


class PrenexFormula(namedtuple("PrenexFormula", "quantifiers body")):
    """``quantifiers`` is a tuple of ``(q, var)`` with q in {"E", "A"}."""

    @property
    def length(self):
        return len(self.quantifiers)

    @property
    def variables(self):
        return tuple(v for _, v in self.quantifiers)

    def __str__(self):
        head = " ".join(f"{q} {v}" for q, v in self.quantifiers)
        return f"{head} {format_formula(self.body)}".strip()


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            out.append(("id", m.group(1), start))
        elif m.group(2) in "()&|!=,":
            out.append(("sym", m.group(2), start))
        else:
            raise FormulaError(f"unexpected character {m.group(2)!r}", start)
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            got = tok[1] if tok[1] is not None else "end of input"
            raise FormulaError(f"expected {want!r}, got {got!r}", tok[2])
        self.i += 1
        return tok

    def formula(self):
        if self._at_quantifier():
            return self.quant()
        return self.disj()

    def _at_quantifier(self):
        tok, nxt = self.peek(), self.peek(1)
        return tok[0] == "id" and tok[1] in ("E", "A") and nxt[0] == "id"

    def quant(self):
        q = self.take("id")[1]
        var = self.take("id")[1]
        return Quant(q, var, self.formula())

    def disj(self):
        fs = [self.conj()]
        while self.peek()[1] == "|" and self.peek()[0] == "sym":
            self.take()
            fs.append(self.conj())
        return fs[0] if len(fs) == 1 else Or(tuple(fs))

    def conj(self):
        fs = [self.unary()]
        while self.peek()[1] == "&" and self.peek()[0] == "sym":
            self.take()
            fs.append(self.unary())
        return fs[0] if len(fs) == 1 else And(tuple(fs))

    def unary(self):
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "!":
            self.take()
            return Not(self.unary())
        if self._at_quantifier():
            return self.quant()
        if tok[0] == "sym" and tok[1] == "(":
            self.take()
            f = self.formula()
            self.take("sym", ")")
            return f
        return self.atom()

    def atom(self):
        tok = self.take("id")
        name, pos = tok[1], tok[2]
        if self.peek()[1] == "=" and self.peek()[0] == "sym":
            self.take()
            return Eq(name, self.take("id")[1])
        if self.peek()[1] != "(":
            raise FormulaError(f"expected an atom, got {name!r}", pos)
        self.take("sym", "(")
        a = self.take("id")[1]
        if name.startswith("U") and len(name) > 1:
            self.take("sym", ")")
            return Un(name[1:], a)
        self.take("sym", ",")
        b = self.take("id")[1]
        self.take("sym", ")")
        if name == "E":
            return Rel("E", a, b)
        if name.startswith("R") and len(name) > 1:
            return Rel(name[1:], a, b)
        raise FormulaError(f"unknown relation symbol {name!r}", pos)


def parse(text):
    """Parse an arbitrary formula into an AST."""
    p = _Parser(text)
    f = p.formula()
    tok = p.peek()
    if tok[0] != "end":
        raise FormulaError(f"unexpected {tok[1]!r}", tok[2])
    return f


def free_variables(f, bound=()):
    """Free variables in order of first occurrence."""
    out = []

    def walk(g, bound):
        if isinstance(g, Eq):
            names = (g.a, g.b)
        elif isinstance(g, Rel):
            names = (g.a, g.b)
        elif isinstance(g, Un):
            names = (g.a,)
        elif isinstance(g, Not):
            walk(g.f, bound)
            return
        elif isinstance(g, (And, Or)):
            for h in g.fs:
                walk(h, bound)
            return
        else:
            walk(g.body, bound | {g.var})
            return
        for x in names:
            if x not in bound and x not in out:
                out.append(x)

    walk(f, frozenset(bound))
    return out


def bound_variables(f):
    out = []

    def walk(g):
        if isinstance(g, Not):
            walk(g.f)
        elif isinstance(g, (And, Or)):
            for h in g.fs:
                walk(h)
        elif isinstance(g, Quant):
            out.append(g.var)
            walk(g.body)

    walk(f)
    return out


def _check_names(f, free=()):
    names = bound_variables(f)
    seen = set(free)
    for v in names:
        if v in seen:
            raise FormulaError(f"variable {v!r} is quantified twice or shadows a free one")
        seen.add(v)


def _nnf(f, neg=False):
    if isinstance(f, Not):
        return _nnf(f.f, not neg)
    if isinstance(f, (And, Or)):
        parts = tuple(_nnf(g, neg) for g in f.fs)
        flip = isinstance(f, And) == neg
        return Or(parts) if flip else And(parts)
    if isinstance(f, Quant):
        q = {"E": "A", "A": "E"}[f.q] if neg else f.q
        return Quant(q, f.var, _nnf(f.body, neg))
    return Not(f) if neg else f


def _pull(f):
    """Prefix and matrix of a formula in negation normal form."""
    if isinstance(f, Quant):
        prefix, body = _pull(f.body)
        return ((f.q, f.var),) + prefix, body
    if isinstance(f, (And, Or)):
        prefix, parts = (), []
        for g in f.fs:
            p, b = _pull(g)
            prefix += p
            parts.append(b)
        return prefix, type(f)(tuple(parts))
    return (), f


def _has_quantifier(f):
    if isinstance(f, Quant):
        return True
    if isinstance(f, Not):
        return _has_quantifier(f.f)
    if isinstance(f, (And, Or)):
        return any(_has_quantifier(g) for g in f.fs)
    return False


def _strip_prefix(f):
    prefix = []
    while isinstance(f, Quant):
        prefix.append((f.q, f.var))
        f = f.body
    return tuple(prefix), f


def to_prenex(f, free=()):
    """Prenex form of a formula with pairwise distinct bound variables (none of them
    equal to a free variable).  Already prenex inputs are returned unchanged."""
    _check_names(f, free)
    prefix, body = _strip_prefix(f)
    if not _has_quantifier(body):
        return PrenexFormula(prefix, body)
    prefix, body = _pull(_nnf(f))
    return PrenexFormula(prefix, body)


def parse_formula(text, free=None):
    """Parse a prenex (or prenexable) formula.  ``free`` lists the allowed free
    variables; ``None`` means a sentence is required."""
    f = parse(text)
    fv = free_variables(f)
    allowed = tuple(free or ())
    extra = [v for v in fv if v not in allowed]
    if extra:
        raise FormulaError(f"free variable {extra[0]!r}")
    return to_prenex(f, allowed)


def format_formula(f):
    if isinstance(f, Eq):
        return f"{f.a}={f.b}"
    if isinstance(f, Rel):
        head = "E" if f.name == "E" else "R" + f.name
        return f"{head}({f.a},{f.b})"
    if isinstance(f, Un):
        return f"U{f.name}({f.a})"
    if isinstance(f, Not):
        return "!" + format_formula(f.f)
    if isinstance(f, (And, Or)):
        sep = " & " if isinstance(f, And) else " | "
        return "(" + sep.join(format_formula(g) for g in f.fs) + ")"
    return f"({f.q} {f.var} {format_formula(f.body)})"


# ---------------------------------------------------------------- evaluation


def _check_symbols(S, f):
    if isinstance(f, Rel) and f.name not in S.relations:
        raise FormulaError(f"structure has no relation {f.name!r}")
    if isinstance(f, Un) and f.name not in S.unary:
        raise FormulaError(f"structure has no unary relation {f.name!r}")
    if isinstance(f, Not):
        _check_symbols(S, f.f)
    elif isinstance(f, (And, Or)):
        for g in f.fs:
            _check_symbols(S, g)
    elif isinstance(f, Quant):
        _check_symbols(S, f.body)


def compile_body(S, body, variables):
    """Quantifier-free ``body`` as a predicate on a tuple of vertices, position i of the
    tuple holding ``variables[i]``."""
    _check_symbols(S, body)
    index = {v: i for i, v in enumerate(variables)}

    def comp(f):
        if isinstance(f, Eq):
            i, j = index[f.a], index[f.b]
            return lambda t: t[i] == t[j]
        if isinstance(f, Rel):
            i, j = index[f.a], index[f.b]
            out = S.out[f.name]
            return lambda t: t[j] in out[t[i]]
        if isinstance(f, Un):
            i = index[f.a]
            members = S.unary[f.name]
            return lambda t: t[i] in members
        if isinstance(f, Not):
            g = comp(f.f)
            return lambda t: not g(t)
        if isinstance(f, And):
            gs = [comp(h) for h in f.fs]
            return lambda t: all(g(t) for g in gs)
        if isinstance(f, Or):
            gs = [comp(h) for h in f.fs]
            return lambda t: any(g(t) for g in gs)
        raise FormulaError("quantifier inside a quantifier-free body")

    return comp(body)


def evaluate(S, f, env=None):
    """Truth of an arbitrary formula under the assignment ``env``."""
    env = dict(env or {})
    _check_symbols(S, f)

    def ev(g):
        if isinstance(g, Eq):
            return env[g.a] == env[g.b]
        if isinstance(g, Rel):
            return env[g.b] in S.out[g.name][env[g.a]]
        if isinstance(g, Un):
            return env[g.a] in S.unary[g.name]
        if isinstance(g, Not):
            return not ev(g.f)
        if isinstance(g, And):
            return all(ev(h) for h in g.fs)
        if isinstance(g, Or):
            return any(ev(h) for h in g.fs)
        had, old = g.var in env, env.get(g.var)
        want = g.q == "E"
        result = not want
        for v in range(S.n):
            env[g.var] = v
            if ev(g.body) == want:
                result = want
                break
        if had:
            env[g.var] = old
        else:
            del env[g.var]
        return result

    return ev(f)


def brute_force_check(S, phi, assignment=None):
    """Recursive quantifier expansion over the whole domain.  ``assignment`` pins free
    variables (name -> vertex)."""
    if isinstance(phi, str):
        phi = parse_formula(phi, tuple(assignment or ()))
    if not isinstance(phi, PrenexFormula):
        phi = to_prenex(phi, tuple(assignment or ()))
    if S.n ** phi.length > cap("brute"):
        raise CapExceeded(f"brute force over {S.n}^{phi.length} assignments exceeds the cap")
    free = tuple(assignment or ())
    variables = free + phi.variables
    body = compile_body(S, phi.body, variables)
    qs = [q for q, _ in phi.quantifiers]
    ell = len(qs)
    n = S.n
    t = [assignment[v] for v in free] + [0] * ell
    base = len(free)

    def rec(i):
        if i == ell:
            return body(t)
        pos = base + i
        if qs[i] == "E":
            for v in range(n):
                t[pos] = v
                if rec(i + 1):
                    return True
            return False
        for v in range(n):
            t[pos] = v
            if not rec(i + 1):
                return False
        return True

    return rec(0)
