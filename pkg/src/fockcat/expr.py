"""A small textual language for Fock-space morphisms.

``f ; g`` means *first f, then g* (the composite ``g ∘ f``), ``f * g`` is the
tensor product and ``f + g`` the sum.  Precedence from loosest to tightest is
``;``, ``+``, ``*``; the function-style forms (``dag(...)``, ``scale(...)``,
...) are atoms.  All three binary operators associate to the left.

Builtins refer to an ambient Fock context ``F = F(C^d)`` truncated at ``N``,
set on the :class:`Environment` and overridable with ``with(d=.., N=..){..}``::

    d        F -> F ⊗ F           d[M]   same at cutoff M
    e        F -> I               eps    F -> C^d
    vac      I -> F               eta    C^d -> F  (unit at the copying comonoid)
    id       F -> F               swap   F ⊗ F -> F ⊗ F
    zeta     I -> F ⊗ F*          theta  F* ⊗ F -> I
    raise(x), lower(x)  F -> F    coh(x) I -> F     (x a bound state of C^d)
    sym(n)   (C^d)^⊗n -> S_n      proj(n) F -> S_n  inj(n) S_n -> F
    name(f)  I -> cod ⊗ dom*      fock(f) F(dom) -> F(cod)
    dag(f)   cod -> dom           scale(re, im, f)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Optional

from . import fock as fk
from .algebraic import diagonal_comonoid
from .errors import ExprSyntaxError, ExprTypeError
from .symtensor import sym_projection
from .tensorlinalg import (
    UNIT,
    Morphism,
    SpaceObject,
    base,
    cast,
    dual_obj,
    duality_pair,
    fock_obj,
    identity,
    name_of,
    swap,
    sym_obj,
    tensor,
    tensor_obj,
    tensor_power_obj,
)

# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Expr:
    # filled in by typecheck; ignored by equality
    dom: Optional[SpaceObject] = field(default=None, compare=False, kw_only=True)
    cod: Optional[SpaceObject] = field(default=None, compare=False, kw_only=True)


@dataclass(frozen=True)
class Ident(Expr):
    name: str


@dataclass(frozen=True)
class Builtin(Expr):
    """Nullary builtin; ``index`` is the cutoff of ``d[M]``."""

    name: str
    index: Optional[int] = None


@dataclass(frozen=True)
class StateOp(Expr):
    op: str        # raise | lower | coh
    arg: str


@dataclass(frozen=True)
class IndexOp(Expr):
    op: str        # sym | proj | inj
    n: int


@dataclass(frozen=True)
class Unary(Expr):
    op: str        # dag | name | fock
    body: Expr


@dataclass(frozen=True)
class Scale(Expr):
    re: float
    im: float
    body: Expr


@dataclass(frozen=True)
class Binary(Expr):
    op: str        # ; | + | *
    left: Expr
    right: Expr


@dataclass(frozen=True)
class With(Expr):
    settings: tuple    # sorted (key, value) pairs
    body: Expr


NULLARY = ("d", "e", "eps", "eta", "vac", "swap", "zeta", "theta", "id")
STATE_OPS = ("raise", "lower", "coh")
INDEX_OPS = ("sym", "proj", "inj")
UNARY_OPS = ("dag", "name", "fock")
RESERVED = frozenset(NULLARY + STATE_OPS + INDEX_OPS + UNARY_OPS + ("scale", "with"))

# ---------------------------------------------------------------- lexer

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(\d+\.\d*|\.\d+|\d+)([eE][-+]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\]{},;*+=-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str      # num | ident | punct | eof
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            for i, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        pos += len(chunk)
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, what, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ExprSyntaxError(f"expected {what}, found {found}", tok.line, tok.column)

    def accept(self, text):
        if self.tok.kind == "punct" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            self.fail(repr(text))

    def ident(self):
        if self.tok.kind != "ident":
            self.fail("identifier")
        t = self.tok
        self.i += 1
        return t.text

    def integer(self):
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self.fail("non-negative integer")
        self.i += 1
        return int(t.text)

    def number(self):
        sign = -1.0 if self.accept("-") else 1.0
        if sign > 0:
            self.accept("+")
        t = self.tok
        if t.kind != "num":
            self.fail("number")
        self.i += 1
        return sign * float(t.text)

    def parse(self):
        e = self.seq()
        if self.tok.kind != "eof":
            self.fail("';', '+', '*' or end of input")
        return e

    def seq(self):
        e = self.sum()
        while self.accept(";"):
            e = Binary(";", e, self.sum())
        return e

    def sum(self):
        e = self.prod()
        while self.accept("+"):
            e = Binary("+", e, self.prod())
        return e

    def prod(self):
        e = self.atom()
        while self.accept("*"):
            e = Binary("*", e, self.atom())
        return e

    def atom(self):
        if self.accept("("):
            e = self.seq()
            self.expect(")")
            return e
        if self.tok.kind != "ident":
            self.fail("expression")
        name = self.ident()
        if name == "d":
            if self.accept("["):
                n = self.integer()
                self.expect("]")
                return Builtin("d", n)
            return Builtin("d")
        if name in NULLARY:
            return Builtin(name)
        if name in STATE_OPS:
            self.expect("(")
            arg = self.ident()
            if arg in RESERVED:
                self.fail("state identifier", self.tokens[self.i - 1])
            self.expect(")")
            return StateOp(name, arg)
        if name in INDEX_OPS:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return IndexOp(name, n)
        if name in UNARY_OPS:
            self.expect("(")
            body = self.seq()
            self.expect(")")
            return Unary(name, body)
        if name == "scale":
            self.expect("(")
            re_ = self.number()
            self.expect(",")
            im = self.number()
            self.expect(",")
            body = self.seq()
            self.expect(")")
            return Scale(re_, im, body)
        if name == "with":
            return self.with_block()
        return Ident(name)

    def with_block(self):
        self.expect("(")
        settings = {}
        while True:
            key_tok = self.tok
            key = self.ident()
            if key not in ("d", "N"):
                self.fail("'d' or 'N'", key_tok)
            if key in settings:
                raise ExprSyntaxError(f"duplicate setting {key!r}", key_tok.line, key_tok.column)
            self.expect("=")
            settings[key] = self.integer()
            if not self.accept(","):
                break
        self.expect(")")
        self.expect("{")
        body = self.seq()
        self.expect("}")
        return With(tuple(sorted(settings.items())), body)


def parse_expr(text: str) -> Expr:
    """Parse expression text; raises :class:`ExprSyntaxError` with a 1-based position."""
    return _Parser(text).parse()


# ---------------------------------------------------------------- printer

_PREC = {";": 1, "+": 2, "*": 3}


def _num(x: float) -> str:
    return repr(float(x))


def pretty(e: Expr) -> str:
    """Canonical text: single spaces round binary operators, minimal parentheses."""
    if isinstance(e, Binary):
        p = _PREC[e.op]
        left = pretty(e.left)
        right = pretty(e.right)
        if isinstance(e.left, Binary) and _PREC[e.left.op] < p:
            left = f"({left})"
        # operators associate left, so an equal-precedence right child keeps its parentheses
        if isinstance(e.right, Binary) and _PREC[e.right.op] <= p:
            right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, Ident):
        return e.name
    if isinstance(e, Builtin):
        return e.name if e.index is None else f"{e.name}[{e.index}]"
    if isinstance(e, StateOp):
        return f"{e.op}({e.arg})"
    if isinstance(e, IndexOp):
        return f"{e.op}({e.n})"
    if isinstance(e, Unary):
        return f"{e.op}({pretty(e.body)})"
    if isinstance(e, Scale):
        return f"scale({_num(e.re)}, {_num(e.im)}, {pretty(e.body)})"
    if isinstance(e, With):
        inner = ", ".join(f"{k}={v}" for k, v in e.settings)
        return f"with({inner}){{{pretty(e.body)}}}"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------- environment


@dataclass(frozen=True)
class Environment:
    """Named morphisms plus the ambient Fock context ``(dim, cutoff)``."""

    bindings: Mapping[str, Morphism] = field(default_factory=dict)
    dim: int = 2
    cutoff: int = 3

    def __post_init__(self):
        for k, v in self.bindings.items():
            if k in RESERVED:
                raise ValueError(f"{k!r} is a builtin and cannot be bound")
            if not isinstance(v, Morphism):
                raise TypeError(f"binding {k!r} is not a Morphism")
        if self.dim < 0 or self.cutoff < 0:
            raise ValueError("dim and cutoff must be non-negative")
        object.__setattr__(self, "bindings", MappingProxyType(dict(self.bindings)))

    def bind(self, **values) -> "Environment":
        merged = dict(self.bindings)
        merged.update(values)
        return Environment(merged, self.dim, self.cutoff)

    def with_context(self, dim=None, cutoff=None) -> "Environment":
        return Environment(self.bindings,
                           self.dim if dim is None else dim,
                           self.cutoff if cutoff is None else cutoff)

    @property
    def single(self) -> SpaceObject:
        return base(self.dim)

    @property
    def fock_object(self) -> SpaceObject:
        return fock_obj(self.single, self.cutoff)

    @property
    def fock(self) -> fk.FockSpace:
        return fk.fock_space(self.single, self.cutoff)


# ---------------------------------------------------------------- typing


def _type_error(e: Expr, msg: str, left=None, right=None):
    detail = msg
    if left is not None or right is not None:
        detail += f": {left} vs {right}"
    raise ExprTypeError(f"in '{pretty(e)}': {detail}", pretty(e), left, right)


def _state_binding(e: StateOp, env: Environment) -> Morphism:
    if e.arg not in env.bindings:
        _type_error(e, f"unbound identifier {e.arg!r}")
    phi = env.bindings[e.arg]
    A = env.single
    if phi.dom != UNIT or phi.cod.dim != A.dim:
        _type_error(e, f"{e.arg!r} must be a state I -> {A}", f"{phi.dom} -> {phi.cod}", f"I -> {A}")
    return cast(phi, cod=A)


def typecheck(e: Expr, env: Environment) -> Expr:
    """Return a copy of ``e`` whose every node carries its inferred ``dom``/``cod``."""
    Fo, A = env.fock_object, env.single
    if isinstance(e, Ident):
        if e.name not in env.bindings:
            _type_error(e, f"unbound identifier {e.name!r}")
        f = env.bindings[e.name]
        return replace(e, dom=f.dom, cod=f.cod)
    if isinstance(e, Builtin):
        n = e.name
        if n == "d":
            G = fock_obj(A, env.cutoff if e.index is None else e.index)
            dom, cod = G, tensor_obj(G, G)
        elif n == "e":
            dom, cod = Fo, UNIT
        elif n == "eps":
            if env.cutoff < 1:
                _type_error(e, "eps needs cutoff N >= 1")
            dom, cod = Fo, A
        elif n == "eta":
            dom, cod = A, Fo
        elif n == "vac":
            dom, cod = UNIT, Fo
        elif n == "id":
            dom = cod = Fo
        elif n == "swap":
            dom = cod = tensor_obj(Fo, Fo)
        elif n == "zeta":
            dom, cod = UNIT, tensor_obj(Fo, dual_obj(Fo))
        else:  # theta
            dom, cod = tensor_obj(dual_obj(Fo), Fo), UNIT
        return replace(e, dom=dom, cod=cod)
    if isinstance(e, StateOp):
        _state_binding(e, env)
        if e.op == "coh":
            return replace(e, dom=UNIT, cod=Fo)
        return replace(e, dom=Fo, cod=Fo)
    if isinstance(e, IndexOp):
        if e.op == "sym":
            return replace(e, dom=tensor_power_obj(A, e.n), cod=sym_obj(A, e.n))
        if e.n > env.cutoff:
            _type_error(e, f"sector {e.n} is above the cutoff {env.cutoff}")
        S = sym_obj(A, e.n)
        return replace(e, dom=Fo, cod=S) if e.op == "proj" else replace(e, dom=S, cod=Fo)
    if isinstance(e, Unary):
        body = typecheck(e.body, env)
        if e.op == "dag":
            return replace(e, body=body, dom=body.cod, cod=body.dom)
        if e.op == "name":
            return replace(e, body=body, dom=UNIT, cod=tensor_obj(body.cod, dual_obj(body.dom)))
        return replace(e, body=body, dom=fock_obj(body.dom, env.cutoff), cod=fock_obj(body.cod, env.cutoff))
    if isinstance(e, Scale):
        body = typecheck(e.body, env)
        return replace(e, body=body, dom=body.dom, cod=body.cod)
    if isinstance(e, With):
        s = dict(e.settings)
        body = typecheck(e.body, env.with_context(s.get("d"), s.get("N")))
        return replace(e, body=body, dom=body.dom, cod=body.cod)
    if isinstance(e, Binary):
        left, right = typecheck(e.left, env), typecheck(e.right, env)
        if e.op == ";":
            if left.cod != right.dom:
                _type_error(e, "codomain of the first stage does not match the domain of the second",
                            left.cod, right.dom)
            dom, cod = left.dom, right.cod
        elif e.op == "+":
            if (left.dom, left.cod) != (right.dom, right.cod):
                _type_error(e, "summands have different types",
                            f"{left.dom} -> {left.cod}", f"{right.dom} -> {right.cod}")
            dom, cod = left.dom, left.cod
        else:
            dom, cod = tensor_obj(left.dom, right.dom), tensor_obj(left.cod, right.cod)
        return replace(e, left=left, right=right, dom=dom, cod=cod)
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------- evaluation


def _eval(e: Expr, env: Environment) -> Morphism:
    F = env.fock
    if isinstance(e, Ident):
        return env.bindings[e.name]
    if isinstance(e, Builtin):
        n = e.name
        if n == "d":
            return fk.comultiplication(F if e.index is None else fk.fock_space(env.single, e.index))
        if n == "e":
            return fk.counit_e(F)
        if n == "eps":
            return fk.epsilon_single(F)
        if n == "eta":
            return fk.eta_comonoid(diagonal_comonoid(env.dim), env.cutoff, check=False)
        if n == "vac":
            return fk.vacuum_state(F)
        if n == "id":
            return identity(F.object)
        if n == "swap":
            return swap(F.object, F.object)
        zeta, theta = duality_pair(F.object)
        return zeta if n == "zeta" else theta
    if isinstance(e, StateOp):
        phi = _state_binding(e, env)
        return {"raise": fk.raising, "lower": fk.lowering, "coh": fk.coherent_state}[e.op](F, phi)
    if isinstance(e, IndexOp):
        if e.op == "sym":
            return sym_projection(env.single, e.n)
        if e.op == "proj":
            return fk.sector_projection(F, e.n)
        return fk.sector_injection(F, e.n)
    if isinstance(e, Unary):
        body = _eval(e.body, env)
        if e.op == "dag":
            return body.dag
        if e.op == "name":
            return name_of(body)
        return fk.fmap(body, env.cutoff)
    if isinstance(e, Scale):
        return complex(e.re, e.im) * _eval(e.body, env)
    if isinstance(e, With):
        s = dict(e.settings)
        return _eval(e.body, env.with_context(s.get("d"), s.get("N")))
    left, right = _eval(e.left, env), _eval(e.right, env)
    if e.op == ";":
        return right @ left
    if e.op == "+":
        return left + right
    return tensor(left, right)


def eval_expr(e, env: Environment) -> Morphism:
    """Typecheck then evaluate; ``e`` may be an :class:`Expr` or source text."""
    if isinstance(e, str):
        e = parse_expr(e)
    typed = typecheck(e, env)
    out = _eval(typed, env)
    if (out.dom, out.cod) != (typed.dom, typed.cod):
        out = cast(out, dom=typed.dom, cod=typed.cod)
    return out
