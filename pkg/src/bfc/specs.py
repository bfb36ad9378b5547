"""Textual function specs.

    spec := "tt:" N ":" HEX
          | "zoo:" NAME ( (":" | ",") KEY "=" INT )*
          | "compose(" spec "," spec ")"
          | "negate(" spec ")"          inputs negated: g(x) = f(not x)
          | "complement(" spec ")"      output negated: g(x) = not f(x)
          | "restrict(" spec ( "," "x" I "=" BIT )+ ")"

Parsing then printing yields a canonical string that parses back to the same
tree.  Errors carry the 0-based offset of the offending character.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import zoo
from .config import Limits, default_limits
from .core import (BitVector, Block, PointFunction, TruthTable, compose, hex_digits,
                   negate_inputs, restrict)
from .errors import DomainError, LimitExceeded, SpecError


@dataclass(frozen=True)
class TT:
    n: int
    bits: int

    def __str__(self):
        return TruthTable(self.n, self.bits).to_hex()


@dataclass(frozen=True)
class Zoo:
    name: str
    params: tuple  # (key, value) pairs sorted by key

    def __str__(self):
        return "zoo:" + ":".join([self.name] + [f"{k}={v}" for k, v in self.params])


@dataclass(frozen=True)
class Compose:
    outer: object
    inner: object

    def __str__(self):
        return f"compose({self.outer},{self.inner})"


@dataclass(frozen=True)
class Negate:
    arg: object

    def __str__(self):
        return f"negate({self.arg})"


@dataclass(frozen=True)
class Complement:
    arg: object

    def __str__(self):
        return f"complement({self.arg})"


@dataclass(frozen=True)
class Restrict:
    arg: object
    assignments: tuple  # sorted (variable, bit) pairs, variables 1-indexed

    def __str__(self):
        return f"restrict({self.arg}," + ",".join(f"x{i}={b}" for i, b in self.assignments) + ")"


FunctionSpec = TT | Zoo | Compose | Negate | Complement | Restrict

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"\d+")
_HEX = re.compile(r"[0-9A-Fa-f]+")
_PARAM = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)=(\d+)")
_ASSIGN = re.compile(r"x?(\d+)=([01])")


class _Parser:
    def __init__(self, text: str, limits: Limits):
        self.text = text
        self.pos = 0
        self.limits = limits

    def fail(self, message, pos=None):
        raise SpecError(message, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def take(self, literal):
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def match(self, regex, what):
        self.skip_ws()
        m = regex.match(self.text, self.pos)
        if not m:
            self.fail(f"expected {what}")
        self.pos = m.end()
        return m

    def peek(self, literal):
        self.skip_ws()
        return self.text.startswith(literal, self.pos)

    def parse(self):
        node = self.spec()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing text")
        return node

    def spec(self):
        self.skip_ws()
        start = self.pos
        for head, fn in (("tt:", self.tt), ("zoo:", self.zoo), ("compose(", self.compose),
                         ("negate(", self.negate), ("complement(", self.complement),
                         ("restrict(", self.restrict)):
            if self.text.startswith(head, self.pos):
                self.pos += len(head)
                return fn(start)
        self.fail("expected tt:, zoo:, compose(, negate(, complement( or restrict(")

    def tt(self, start):
        npos = self.pos
        n = int(self.match(_INT, "an arity").group())
        if n > self.limits.dense:
            self.fail(f"arity {n} overflows the dense limit {self.limits.dense}", npos)
        self.take(":")
        hpos = self.pos
        digits = self.match(_HEX, "hex digits").group()
        if len(digits) != hex_digits(n):
            self.fail(f"tt:{n} needs exactly {hex_digits(n)} hex digits, got {len(digits)}", hpos)
        bits = int(digits, 16)
        if bits >> (1 << n):
            self.fail(f"hex value has bits beyond the 2^{n} table entries", hpos)
        return TT(n, bits)

    def zoo(self, start):
        npos = self.pos
        name = self.match(_NAME, "a zoo name").group()
        if name not in zoo.ZOO:
            self.fail(f"unknown zoo function {name!r}; known: {', '.join(sorted(zoo.ZOO))}", npos)
        params = []
        while self.pos < len(self.text) and self.text[self.pos] in ":,":
            m = _PARAM.match(self.text, self.pos + 1)
            if self.text[self.pos] == ",":
                if not m or m.group(1) not in zoo.ZOO[name].params:
                    break  # a comma that belongs to an enclosing form
            elif not m:
                self.fail("expected key=value", self.pos + 1)
            params.append((m.group(1), int(m.group(2)), self.pos + 1))
            self.pos = m.end()
        seen = set()
        for key, _, ppos in params:
            if key in seen:
                self.fail(f"parameter {key} given twice", ppos)
            if key not in zoo.ZOO[name].params:
                self.fail(f"{name} has no parameter {key}", ppos)
            seen.add(key)
        node = Zoo(name, tuple(sorted((k, v) for k, v, _ in params)))
        try:
            zoo.get(name).resolve(dict(node.params))
        except DomainError as exc:
            self.fail(str(exc), start)
        return node

    def compose(self, start):
        outer = self.spec()
        self.take(",")
        inner = self.spec()
        self.take(")")
        return Compose(outer, inner)

    def negate(self, start):
        arg = self.spec()
        self.take(")")
        return Negate(arg)

    def complement(self, start):
        arg = self.spec()
        self.take(")")
        return Complement(arg)

    def restrict(self, start):
        arg = self.spec()
        n = arity(arg)
        pairs = {}
        while self.peek(","):
            self.take(",")
            self.skip_ws()
            apos = self.pos
            m = self.match(_ASSIGN, "an assignment like x2=1")
            i, b = int(m.group(1)), int(m.group(2))
            if not 1 <= i <= n:
                self.fail(f"variable x{i} outside [1, {n}]", apos)
            if i in pairs:
                self.fail(f"variable x{i} assigned twice", apos)
            pairs[i] = b
        if not pairs:
            self.fail("restrict needs at least one assignment")
        self.take(")")
        return Restrict(arg, tuple(sorted(pairs.items())))


def parse_spec(text: str, limits: Limits | None = None) -> FunctionSpec:
    return _Parser(text, limits or default_limits()).parse()


def format_spec(node: FunctionSpec) -> str:
    return str(node)


def arity(node: FunctionSpec) -> int:
    """Number of variables, computed without generating anything."""
    if isinstance(node, TT):
        return node.n
    if isinstance(node, Zoo):
        entry = zoo.get(node.name)
        return entry.arity(entry.resolve(dict(node.params)))
    if isinstance(node, Compose):
        return arity(node.outer) * arity(node.inner)
    if isinstance(node, (Negate, Complement)):
        return arity(node.arg)
    if isinstance(node, Restrict):
        return arity(node.arg) - len(node.assignments)
    raise TypeError(f"not a spec node: {node!r}")


def _dense(f, what):
    if not isinstance(f, TruthTable):
        raise LimitExceeded(f"{what} needs a dense table; operand has {f.n} variables")
    return f


def build(node: FunctionSpec, limits: Limits | None = None):
    """Materialize a spec as a TruthTable, or a PointFunction above the dense limit."""
    limits = limits or default_limits()
    if isinstance(node, TT):
        return TruthTable(node.n, node.bits)
    if isinstance(node, Zoo):
        return zoo.get(node.name).make(dict(node.params), limits)
    if isinstance(node, Compose):
        f = _dense(build(node.outer, limits), "compose")
        g = _dense(build(node.inner, limits), "compose")
        return compose(f, g, limits.dense)
    if isinstance(node, Negate):
        f = build(node.arg, limits)
        if isinstance(f, PointFunction):
            full = (1 << f.n) - 1
            return PointFunction(f.n, lambda w, fn=f: fn(w ^ full), f"negate({f.name})")
        return negate_inputs(f)
    if isinstance(node, Complement):
        f = build(node.arg, limits)
        if isinstance(f, PointFunction):
            return PointFunction(f.n, lambda w, fn=f: 1 - fn(w), f"complement({f.name})")
        return f.complement()
    if isinstance(node, Restrict):
        f = _dense(build(node.arg, limits), "restrict")
        fixed = Block.from_members(f.n, [i for i, _ in node.assignments])
        word = sum(1 << (i - 1) for i, b in node.assignments if b)
        return restrict(f, fixed, BitVector(f.n, word))
    raise TypeError(f"not a spec node: {node!r}")


def load(text: str, limits: Limits | None = None):
    return build(parse_spec(text, limits), limits)
