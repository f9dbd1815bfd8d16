"""The term language: parsing, printing and evaluation of set expressions.

    term := '{' [term (',' term)*] '}' | NAT | 'V' NAT | '(' term ',' term ')' | ident

NAT is a von Neumann numeral, ``V n`` the n-th cumulative level and
``(a,b)`` a Kuratowski pair.  Identifiers name session bindings.
"""
from __future__ import annotations

import dataclasses
import re
from typing import Mapping, Union

from ..encodings import kpair
from ..errors import HFError, TermParseError
from ..hfset import SetTerm, as_numeral, canon, numeral, to_braces, vn


@dataclasses.dataclass(frozen=True)
class SetLit:
    items: tuple


@dataclasses.dataclass(frozen=True)
class Nat:
    n: int


@dataclasses.dataclass(frozen=True)
class VLevel:
    n: int


@dataclasses.dataclass(frozen=True)
class Pair:
    first: object
    second: object


@dataclasses.dataclass(frozen=True)
class Name:
    ident: str


Expr = Union[SetLit, Nat, VLevel, Pair, Name]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


class UnboundName(HFError, KeyError):
    def __str__(self):
        return f"unbound name {self.args[0]!r}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            kind = "nat" if m.group(1) else "ident" if m.group(2) else "sym"
            self.toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def fail(self, msg, pos=None):
        raise TermParseError(msg, self.text, self.peek()[2] if pos is None else pos)

    def expect(self, sym):
        kind, val, pos = self.peek()
        if kind != "sym" or val != sym:
            self.fail(f"expected {sym!r}, found {val!r}" if val else f"expected {sym!r}")
        self.i += 1

    def term(self) -> Expr:
        kind, val, pos = self.peek()
        if kind == "nat":
            self.i += 1
            return Nat(int(val))
        if kind == "ident":
            self.i += 1
            if re.fullmatch(r"V\d+", val):
                return VLevel(int(val[1:]))
            return Name(val)
        if val == "{":
            self.i += 1
            items = []
            if self.peek()[1] != "}":
                items.append(self.term())
                while self.peek()[1] == ",":
                    self.i += 1
                    items.append(self.term())
            self.expect("}")
            return SetLit(tuple(items))
        if val == "(":
            self.i += 1
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return Pair(a, b)
        self.fail("unexpected end of input" if kind == "end" else f"unexpected {val!r}")

    def whole(self) -> Expr:
        e = self.term()
        if self.peek()[0] != "end":
            self.fail(f"trailing input {self.peek()[1]!r}")
        return e


def parse_term(s: str) -> Expr:
    return _Parser(s).whole()


def pretty(e: Expr) -> str:
    if isinstance(e, SetLit):
        return "{" + ",".join(pretty(x) for x in e.items) + "}"
    if isinstance(e, Nat):
        return str(e.n)
    if isinstance(e, VLevel):
        return f"V{e.n}"
    if isinstance(e, Pair):
        return f"({pretty(e.first)},{pretty(e.second)})"
    return e.ident


def evaluate(e: Expr, env: Mapping[str, SetTerm] | None = None) -> SetTerm:
    if isinstance(e, SetLit):
        return canon(evaluate(x, env) for x in e.items)
    if isinstance(e, Nat):
        return numeral(e.n)
    if isinstance(e, VLevel):
        return vn(e.n)
    if isinstance(e, Pair):
        return kpair(evaluate(e.first, env), evaluate(e.second, env))
    if env is None or e.ident not in env:
        raise UnboundName(e.ident)
    return env[e.ident]


def read_term(s: str, env: Mapping[str, SetTerm] | None = None) -> SetTerm:
    return evaluate(parse_term(s), env)


def quote(t: SetTerm) -> Expr:
    """The literal expression for a term (no sugar)."""
    return SetLit(tuple(quote(c) for c in t.children))


def _printed_length(t: SetTerm, sugar: bool, memo: dict) -> int:
    n = memo.get(t)
    if n is None:
        k = as_numeral(t) if sugar else None
        if k is not None:
            n = len(str(k))
        else:
            n = 2 + max(0, len(t.children) - 1) + sum(_printed_length(c, sugar, memo)
                                                       for c in t.children)
        memo[t] = n
    return n


def show(t: SetTerm, sugar: bool = False, limit: int = 4096) -> str:
    """Braces form of a term; numerals collapse to digits when ``sugar`` is set.

    Terms whose printed form would exceed ``limit`` characters are summarised.
    """
    if _printed_length(t, sugar, {}) > limit:
        return f"<term of rank {t.rank}>"
    if not sugar:
        return to_braces(t)
    memo: dict = {}

    def go(x):
        s = memo.get(x)
        if s is None:
            n = as_numeral(x)
            s = memo[x] = str(n) if n is not None else "{" + ",".join(go(c) for c in x.children) + "}"
        return s
    return go(t)


def split_args(line: str) -> list[str]:
    """Whitespace-separated words, keeping bracketed terms together."""
    out, cur, depth = [], [], 0
    for i, ch in enumerate(line):
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth -= 1
            if depth < 0:
                raise TermParseError("unbalanced bracket", line, i)
        if ch.isspace() and depth == 0:
            if cur:
                out.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if depth:
        raise TermParseError("unclosed bracket", line, len(line))
    if cur:
        out.append("".join(cur))
    return out


def split_top(s: str, sep: str) -> tuple[str, str] | None:
    """Split at the first ``sep`` outside brackets."""
    depth = 0
    for i, ch in enumerate(s):
        if ch in "{(":
            depth += 1
        elif ch in "})":
            depth -= 1
        elif ch == sep and depth == 0:
            return s[:i], s[i + 1:]
    return None
