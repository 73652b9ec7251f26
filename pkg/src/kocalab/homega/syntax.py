"""Kinds, kind-annotated expressions and their surface syntax.

Surface syntax (ASCII)::

    kind I
    const 0 : I
    const succ : I -> I
    var y : I -> o

    forall x:I. (y x => y (succ x))
    \\x:I. y x
    M = N                      (Leibniz equality at the kind of M)

Kind arrows and ``=>`` associate to the right, application to the left.
``bot`` is always available as a constant of kind ``o``.
"""

from dataclasses import dataclass, field
import itertools
import re

from ..errors import KindError, ParseError


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Arrow:
    src: object
    tgt: object

    def __str__(self):
        src = f"({self.src})" if isinstance(self.src, Arrow) else str(self.src)
        return f"{src} -> {self.tgt}"


O = Base("o")


def arrow(*kinds):
    out = kinds[-1]
    for k in reversed(kinds[:-1]):
        out = Arrow(k, out)
    return out


@dataclass(frozen=True)
class Var:
    name: str
    kind: object


@dataclass(frozen=True)
class Const:
    name: str
    kind: object


@dataclass(frozen=True)
class Lam:
    var: str
    var_kind: object
    body: object

    @property
    def kind(self):
        return Arrow(self.var_kind, self.body.kind)


@dataclass(frozen=True)
class Apply:
    fn: object
    arg: object

    @property
    def kind(self):
        return self.fn.kind.tgt


@dataclass(frozen=True)
class Implies:
    left: object
    right: object
    kind = O


@dataclass(frozen=True)
class Forall:
    var: str
    var_kind: object
    body: object
    kind = O


BOT = Const("bot", O)


def mk_apply(fn, arg, pos=None):
    """Kind-checked application."""
    if not isinstance(fn.kind, Arrow):
        raise KindError(f"cannot apply an expression of kind {fn.kind}", pos)
    if fn.kind.src != arg.kind:
        raise KindError(f"argument of kind {arg.kind} where {fn.kind.src} is expected", pos)
    return Apply(fn, arg)


def apply(fn, *args):
    for a in args:
        fn = mk_apply(fn, a)
    return fn


def mk_implies(a, b, pos=None):
    for side in (a, b):
        if side.kind != O:
            raise KindError(f"=> needs formulas, got kind {side.kind}", pos)
    return Implies(a, b)


def mk_forall(var, kind, body, pos=None):
    if body.kind != O:
        raise KindError(f"forall body has kind {body.kind}, expected o", pos)
    return Forall(var, kind, body)


def implies(*fs):
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = mk_implies(f, out)
    return out


def free_vars(e):
    """Free variables as a dict name -> kind."""
    if isinstance(e, Var):
        return {e.name: e.kind}
    if isinstance(e, Const):
        return {}
    if isinstance(e, (Lam, Forall)):
        out = free_vars(e.body)
        out.pop(e.var, None)
        return out
    if isinstance(e, Apply):
        return free_vars(e.fn) | free_vars(e.arg)
    if isinstance(e, Implies):
        return free_vars(e.left) | free_vars(e.right)
    raise TypeError(f"not an expression: {e!r}")


def all_names(e):
    if isinstance(e, (Var, Const)):
        return {e.name}
    if isinstance(e, (Lam, Forall)):
        return {e.var} | all_names(e.body)
    if isinstance(e, Apply):
        return all_names(e.fn) | all_names(e.arg)
    return all_names(e.left) | all_names(e.right)


def fresh(base, avoid):
    if base not in avoid:
        return base
    for i in itertools.count(1):
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand


def substitute(e, name, M):
    """Capture-avoiding ``e{name := M}``."""
    if isinstance(e, Var):
        return M if e.name == name else e
    if isinstance(e, Const):
        return e
    if isinstance(e, Apply):
        return Apply(substitute(e.fn, name, M), substitute(e.arg, name, M))
    if isinstance(e, Implies):
        return Implies(substitute(e.left, name, M), substitute(e.right, name, M))
    if e.var == name or name not in free_vars(e.body):
        return e
    var, body = e.var, e.body
    fv = free_vars(M)
    if var in fv:
        new = fresh(var, set(fv) | all_names(body) | {name})
        body = substitute(body, var, Var(new, e.var_kind))
        var = new
    return type(e)(var, e.var_kind, substitute(body, name, M))


def alpha_eq(a, b):
    return _debruijn(a, ()) == _debruijn(b, ())


def _debruijn(e, scope):
    if isinstance(e, Var):
        for depth, v in enumerate(reversed(scope)):
            if v == e.name:
                return ("bound", depth, e.kind)
        return ("free", e.name, e.kind)
    if isinstance(e, Const):
        return ("const", e.name, e.kind)
    if isinstance(e, Apply):
        return ("app", _debruijn(e.fn, scope), _debruijn(e.arg, scope))
    if isinstance(e, Implies):
        return ("imp", _debruijn(e.left, scope), _debruijn(e.right, scope))
    tag = "lam" if isinstance(e, Lam) else "all"
    return (tag, e.var_kind, _debruijn(e.body, scope + (e.var,)))


def leibniz_eq(M, N, var="p"):
    """``forall p:(k -> o). p M => p N`` with ``p`` fresh for M and N."""
    if M.kind != N.kind:
        raise KindError(f"equality between kinds {M.kind} and {N.kind}")
    p = fresh(var, all_names(M) | all_names(N))
    pv = Var(p, Arrow(M.kind, O))
    return Forall(p, pv.kind, Implies(Apply(pv, M), Apply(pv, N)))


def show(e):
    """Surface syntax that parses back to an alpha-equal expression."""
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, Apply):
        arg = show(e.arg)
        if not isinstance(e.arg, (Var, Const)):
            arg = f"({arg})"
        fn = show(e.fn)
        if isinstance(e.fn, (Lam, Forall, Implies)):
            fn = f"({fn})"
        return f"{fn} {arg}"
    if isinstance(e, Implies):
        left = show(e.left)
        if isinstance(e.left, (Implies, Lam, Forall)):
            left = f"({left})"
        return f"{left} => {show(e.right)}"
    binder = "\\" if isinstance(e, Lam) else "forall "
    return f"{binder}{e.var}:{_show_kind(e.var_kind)}. {show(e.body)}"


def _show_kind(k):
    s = str(k)
    return f"({s})" if isinstance(k, Arrow) else s


@dataclass
class Signature:
    """Base kinds, typed constants and declared free variables."""

    kinds: set = field(default_factory=lambda: {"o"})
    consts: dict = field(default_factory=dict)
    variables: dict = field(default_factory=dict)

    def __post_init__(self):
        self.kinds = set(self.kinds) | {"o"}
        self.consts.setdefault("bot", O)

    def const(self, name):
        return Const(name, self.consts[name])

    def var(self, name):
        return Var(name, self.variables[name])


_TOKEN = re.compile(r"\s*(?:(=>|->|[\\().:=,])|([A-Za-z0-9_']+))")
KEYWORDS = {"forall", "kind", "const", "var"}


def tokenize(text):
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[pos + stripped]!r}", pos + stripped)
        tok = m.group(1) or m.group(2)
        tokens.append((tok, m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, sig):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.sig = sig

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self, expected=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of input, expected {expected or 'a token'}", self.pos())
        tok, p = self.toks[self.i]
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}", p)
        self.i += 1
        return tok

    def ident(self):
        p = self.pos()
        if self.peek() is None:
            raise ParseError("unexpected end of input, expected an identifier", p)
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z0-9_']+", tok) or tok in KEYWORDS:
            raise ParseError(f"expected an identifier, got {tok!r}", p)
        return tok

    def kind(self):
        p = self.pos()
        if self.peek() == "(":
            self.take("(")
            src = self.kind()
            self.take(")")
        else:
            name = self.ident()
            if name not in self.sig.kinds:
                raise KindError(f"unknown kind {name!r}", p)
            src = Base(name)
        if self.peek() == "->":
            self.take("->")
            return Arrow(src, self.kind())
        return src

    def expr(self, scope):
        p = self.pos()
        tok = self.peek()
        if tok in ("forall", "\\"):
            self.take()
            var = self.ident()
            self.take(":")
            k = self.kind()
            self.take(".")
            body = self.expr({**scope, var: k})
            if tok == "forall":
                return mk_forall(var, k, body, p)
            return Lam(var, k, body)
        left = self.equality(scope)
        if self.peek() == "=>":
            op = self.pos()
            self.take("=>")
            return mk_implies(left, self.expr(scope), op)
        return left

    def equality(self, scope):
        left = self.application(scope)
        if self.peek() == "=":
            op = self.pos()
            self.take("=")
            right = self.application(scope)
            if left.kind != right.kind:
                raise KindError(f"equality between kinds {left.kind} and {right.kind}", op)
            return leibniz_eq(left, right)
        return left

    def application(self, scope):
        e = self.atom(scope)
        while self.peek() is not None and self.peek() not in (")", "=>", "=", ",", ".", ":"):
            p = self.pos()
            if self.peek() in ("forall", "\\"):
                arg = self.expr(scope)
            else:
                arg = self.atom(scope)
            e = mk_apply(e, arg, p)
        return e

    def atom(self, scope):
        p = self.pos()
        if self.peek() == "(":
            self.take("(")
            e = self.expr(scope)
            self.take(")")
            return e
        name = self.ident()
        if name in scope:
            return Var(name, scope[name])
        if name in self.sig.consts:
            return Const(name, self.sig.consts[name])
        if name in self.sig.variables:
            return Var(name, self.sig.variables[name])
        raise ParseError(f"unbound identifier {name!r}", p)

    def done(self):
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.peek()!r}", self.pos())


def parse_kind(text, sig=None):
    ps = _Parser(text, sig or Signature())
    k = ps.kind()
    ps.done()
    return k


def parse_expr(text, sig=None, scope=None):
    ps = _Parser(text, sig or Signature())
    e = ps.expr(dict(scope or {}))
    ps.done()
    return e


def parse_signature(text, sig=None):
    """Read ``kind``/``const``/``var`` declarations, one per line.

    Blank lines and ``#`` comments are ignored.  Returns the signature and
    the remaining (non-declaration) lines with their line numbers.
    """
    sig = sig or Signature()
    rest = []
    offset = 0
    for lineno, raw in enumerate(text.splitlines(keepends=True), 1):
        line = raw.split("#", 1)[0]
        words = line.split(None, 1)
        if not words:
            offset += len(raw)
            continue
        head = words[0]
        if head == "kind":
            names = line.split()[1:]
            if not names:
                raise ParseError("kind declaration without a name", offset)
            for n in names:
                if not re.fullmatch(r"[A-Za-z0-9_']+", n):
                    raise ParseError(f"bad kind name {n!r}", offset)
                sig.kinds.add(n)
        elif head in ("const", "var"):
            body = line[line.index(head) + len(head):]
            if ":" not in body:
                raise ParseError(f"{head} declaration needs 'name : kind'", offset)
            name, kind_text = body.split(":", 1)
            name = name.strip()
            if not re.fullmatch(r"[A-Za-z0-9_']+", name):
                raise ParseError(f"bad {head} name {name!r}", offset)
            try:
                k = parse_kind(kind_text, sig)
            except ParseError as err:
                raise type(err)(str(err).split(" at position")[0],
                                offset + line.index(":") + 1 + (err.pos or 0)) from None
            (sig.consts if head == "const" else sig.variables)[name] = k
        else:
            rest.append((lineno, line.strip()))
        offset += len(raw)
    return sig, rest


def parse_homega(text, sig=None):
    """Parse a document: declarations followed by at most one expression.

    Returns ``(signature, expr_or_None)``.
    """
    sig, rest = parse_signature(text, sig)
    body = " ".join(line for _, line in rest)
    if not body:
        return sig, None
    return sig, parse_expr(body, sig)
