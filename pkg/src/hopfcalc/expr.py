"""A small language for composing linear maps.

    expr   := term (";" term)*
    term   := factor ("*" factor)*
    factor := IDENT | "id" "[" IDENT "]" | "swap" "[" IDENT "," IDENT "]"
            | "braid" "[" IDENT "," IDENT "]" | "(" expr ")"

";" composes top to bottom (the left map applies first) and "*" is the
tensor product. id, swap and braid are reserved words, which keeps the
grammar LL(1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .hopf import HopfData, make_duality
from .linalg import LinMap, Space, compose, identity, shape_str, swap, tensor
from .qt import QTElement, adjoint_action, module_braiding


class ExprSyntaxError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.col = line, col


class ExprEvalError(ValueError):
    pass


# --- tokens -----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[;*()\[\],]))")
_KEYWORDS = {"id", "swap", "braid"}


@dataclass(frozen=True)
class Token:
    kind: str      # IDENT, KEYWORD, a punctuation character, or EOF
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    line, line_start = 1, 0
    n = len(text)
    while True:
        # skip whitespace and keep the line count
        while pos < n and text[pos].isspace():
            if text[pos] == "\n":
                line += 1
                line_start = pos + 1
            pos += 1
        if pos >= n:
            out.append(Token("EOF", "", line, pos - line_start + 1))
            return out
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        if m.group("ident"):
            word = m.group("ident")
            out.append(Token("KEYWORD" if word in _KEYWORDS else "IDENT", word, line, col))
        else:
            p = m.group("punct")
            out.append(Token(p, p, line, col))
        pos = m.end()


# --- syntax tree ------------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    line: int = dc_field(default=0, compare=False)
    col: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Name(Node):
    ident: str = ""


@dataclass(frozen=True)
class Id(Node):
    space: str = ""


@dataclass(frozen=True)
class Swap(Node):
    left: str = ""
    right: str = ""


@dataclass(frozen=True)
class Braid(Node):
    left: str = ""
    right: str = ""


@dataclass(frozen=True)
class Compose(Node):
    parts: tuple = ()


@dataclass(frozen=True)
class Tensor(Node):
    parts: tuple = ()


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def fail(self, what):
        t = self.tok
        found = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ExprSyntaxError(f"expected {what}, found {found}", t.line, t.col)

    def expect(self, kind, what=None):
        if self.tok.kind != kind:
            self.fail(what or repr(kind))
        t = self.tok
        self.i += 1
        return t

    def expr(self):
        first = self.tok
        parts = [self.term()]
        while self.tok.kind == ";":
            self.i += 1
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Compose(first.line, first.col, tuple(parts))

    def term(self):
        first = self.tok
        parts = [self.factor()]
        while self.tok.kind == "*":
            self.i += 1
            parts.append(self.factor())
        return parts[0] if len(parts) == 1 else Tensor(first.line, first.col, tuple(parts))

    def factor(self):
        t = self.tok
        if t.kind == "IDENT":
            self.i += 1
            return Name(t.line, t.col, t.text)
        if t.kind == "KEYWORD":
            self.i += 1
            self.expect("[", "'['")
            a = self.expect("IDENT", "a space name").text
            if t.text == "id":
                self.expect("]", "']'")
                return Id(t.line, t.col, a)
            self.expect(",", "','")
            b = self.expect("IDENT", "a space name").text
            self.expect("]", "']'")
            return (Swap if t.text == "swap" else Braid)(t.line, t.col, a, b)
        if t.kind == "(":
            self.i += 1
            e = self.expr()
            self.expect(")", "')'")
            return e
        self.fail("a map name, id[...], swap[...], braid[...] or '('")


def parse(text: str) -> Node:
    p = _Parser(text)
    ast = p.expr()
    if p.tok.kind != "EOF":
        p.fail("';', '*' or end of input")
    return ast


def to_text(node: Node) -> str:
    """Canonical text; parse(to_text(a)) == a."""
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Id):
        return f"id[{node.space}]"
    if isinstance(node, Swap):
        return f"swap[{node.left},{node.right}]"
    if isinstance(node, Braid):
        return f"braid[{node.left},{node.right}]"
    if isinstance(node, Tensor):
        return " * ".join(f"({to_text(p)})" if isinstance(p, (Compose, Tensor)) else to_text(p)
                          for p in node.parts)
    if isinstance(node, Compose):
        return " ; ".join(f"({to_text(p)})" if isinstance(p, Compose) else to_text(p)
                          for p in node.parts)
    raise TypeError(node)


# --- evaluation -------------------------------------------------------------------------

@dataclass
class Environment:
    maps: dict = dc_field(default_factory=dict)
    spaces: dict = dc_field(default_factory=dict)
    modules: dict = dc_field(default_factory=dict)   # space name -> action
    ambient: tuple | None = None                      # (HopfData, R) for braid[...]
    field: object = None

    def bind(self, name, value):
        if name in self.maps or name in self.spaces:
            raise ExprEvalError(f"name {name!r} is already bound")
        if isinstance(value, Space):
            self.spaces[name] = value
        else:
            self.maps[name] = value
        return self

    @classmethod
    def for_algebra(cls, h: HopfData, space_name="H", r=None, module_name="V") -> "Environment":
        """m, cm, u, cu, S, Sinv, ev, coev, ad and the spaces H, Hdual.

        With an R-matrix the regular module is bound as V, so braid[V,V]
        is its module braiding.
        """
        env = cls(field=h.field)
        d = make_duality(h)
        env.bind(space_name, h.space)
        env.bind(space_name + "dual", d.dual)
        env.bind("m", h.m).bind("cm", h.cm).bind("u", h.unit).bind("cu", h.counit)
        env.bind("ev", d.ev).bind("coev", d.coev)
        if h.antipode is not None:
            env.bind("S", h.antipode)
            env.bind("Sinv", h.antipode_inverse)
            env.bind("ad", adjoint_action(h))
        if r is not None:
            env.ambient = (h, r)
            env.bind(module_name, h.space)
            env.modules[module_name] = h.m
            env.modules[space_name] = h.m
        return env

    def space(self, name, node):
        if name not in self.spaces:
            raise ExprEvalError(f"unbound space {name!r} at line {node.line}, column {node.col}")
        return self.spaces[name]


def evaluate(ast, env: Environment) -> LinMap:
    if isinstance(ast, str):
        ast = parse(ast)
    return _eval(ast, env)


def _eval(node, env: Environment) -> LinMap:
    f = env.field
    if isinstance(node, Name):
        if node.ident not in env.maps:
            raise ExprEvalError(f"unbound name {node.ident!r} at line {node.line}, column {node.col}")
        return env.maps[node.ident]
    if isinstance(node, Id):
        return identity(env.space(node.space, node), f)
    if isinstance(node, Swap):
        return swap(env.space(node.left, node), env.space(node.right, node), f)
    if isinstance(node, Braid):
        if env.ambient is None:
            raise ExprEvalError(f"braid at line {node.line}, column {node.col} needs a "
                                "quasitriangular algebra in scope")
        h, r = env.ambient
        for nm in (node.left, node.right):
            env.space(nm, node)
            if nm not in env.modules:
                raise ExprEvalError(f"space {nm!r} carries no module structure")
        return module_braiding(h, r, env.modules[node.left], env.modules[node.right], check=False)
    if isinstance(node, Tensor):
        out = _eval(node.parts[0], env)
        for p in node.parts[1:]:
            out = tensor(out, _eval(p, env))
        return out
    if isinstance(node, Compose):
        out = _eval(node.parts[0], env)
        for p in node.parts[1:]:
            nxt = _eval(p, env)
            if out.cod != nxt.dom:
                raise ExprEvalError(
                    f"shape mismatch at {to_text(p)!r} (line {p.line}, column {p.col}): "
                    f"{shape_str(out.cod)} does not match its domain {shape_str(nxt.dom)}")
            out = compose(out, nxt)
        return out
    raise TypeError(node)


def dump(f: LinMap) -> str:
    """One line per nonzero entry, in sorted order: 'out <- in : coeff'."""
    from .hopf import label_of
    fmt = getattr(f.field, "fmt", str)
    lines = [f"{shape_str(f.dom)} -> {shape_str(f.cod)}"]
    for out, inp, v in f.entries():
        lines.append(f"{label_of(f.cod, out)} <- {label_of(f.dom, inp)} : {fmt(v)}")
    return "\n".join(lines)
