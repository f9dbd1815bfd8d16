"""Hereditarily finite sets as interned, canonically ordered terms.

Every set is built through :func:`canon`, which deduplicates its elements,
sorts them in Ackermann order and returns the unique stored node for that
child sequence.  Structural equality is therefore object identity.

The interning table is a plain dict updated with ``setdefault``, which is
atomic under CPython's GIL, so terms may be created from several threads.
"""
from __future__ import annotations

import functools
from typing import Iterable, Iterator

from .config import budget
from .errors import ResourceError

__all__ = [
    "SetTerm", "EMPTY", "canon", "ack_less", "ack_cmp", "rank", "ack_encode",
    "ack_decode", "powerset", "numeral", "as_numeral", "vn", "terms_below_rank",
    "union", "to_braces", "interned_count",
]


class SetTerm:
    __slots__ = ("children", "rank", "_hash", "_code", "_members", "__weakref__")

    children: tuple[SetTerm, ...]
    rank: int

    def __new__(cls, *args, **kwargs):
        raise TypeError("SetTerm values are built with canon()")

    def __hash__(self):
        return self._hash

    # identity is structural equality because of interning
    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __lt__(self, other):
        return ack_cmp(self, other) < 0

    def __le__(self, other):
        return ack_cmp(self, other) <= 0

    def __gt__(self, other):
        return ack_cmp(self, other) > 0

    def __ge__(self, other):
        return ack_cmp(self, other) >= 0

    def __len__(self):
        return len(self.children)

    def __iter__(self) -> Iterator[SetTerm]:
        return iter(self.children)

    def __bool__(self):
        return bool(self.children)

    def __contains__(self, item):
        if len(self.children) <= 8:
            return any(c is item for c in self.children)
        members = self._members
        if members is None:
            members = self._members = frozenset(self.children)
        return item in members

    def issubset(self, other: SetTerm) -> bool:
        return all(c in other for c in self.children)

    def __repr__(self):
        return f"SetTerm({to_braces(self)!r})"

    def __str__(self):
        return to_braces(self)

    def __reduce__(self):
        return (canon, (self.children,))


_store: dict[tuple, SetTerm] = {}


def _intern(children: tuple[SetTerm, ...]) -> SetTerm:
    """Intern a child tuple that is already duplicate-free and sorted."""
    node = _store.get(children)
    if node is not None:
        return node
    node = object.__new__(SetTerm)
    node.children = children
    node.rank = 1 + max(c.rank for c in children) if children else 0
    node._hash = hash(children)
    node._code = None
    node._members = None
    return _store.setdefault(children, node)


def interned_count() -> int:
    return len(_store)


def ack_cmp(x: SetTerm, y: SetTerm) -> int:
    """Three-way comparison of Ackermann codes, computed structurally.

    Codes are compared at their highest differing bit, i.e. at the largest
    element in which the two sets differ.  Higher rank always means a larger
    code because V_n is exactly the code interval [0, |V_n|).
    """
    if x is y:
        return 0
    if x.rank != y.rank:
        return -1 if x.rank < y.rank else 1
    xs, ys = x.children, y.children
    i, j = len(xs) - 1, len(ys) - 1
    while i >= 0 and j >= 0:
        a, b = xs[i], ys[j]
        if a is not b:
            return ack_cmp(a, b)
        i -= 1
        j -= 1
    return (i >= 0) - (j >= 0)


def ack_less(x: SetTerm, y: SetTerm) -> bool:
    return ack_cmp(x, y) < 0


_ack_key = functools.cmp_to_key(ack_cmp)


def canon(elements: Iterable[SetTerm] = ()) -> SetTerm:
    distinct = set(elements)
    if len(distinct) > budget().max_children:
        raise ResourceError(f"set with {len(distinct)} elements exceeds max_children")
    return _intern(tuple(sorted(distinct, key=_ack_key)))


EMPTY = _intern(())


def rank(x: SetTerm) -> int:
    return x.rank


def union(x: SetTerm) -> SetTerm:
    return canon(y for z in x for y in z)


def ack_encode(x: SetTerm) -> int:
    code = x._code
    if code is None:
        limit = budget().max_code_bits
        code = 0
        for child in x.children:
            c = ack_encode(child)
            if c >= limit:
                raise ResourceError(f"Ackermann code exceeds {limit} bits")
            code |= 1 << c
        x._code = code
    return code


_decode_memo: dict[int, SetTerm] = {}


def ack_decode(n: int) -> SetTerm:
    if n < 0:
        raise ValueError("Ackermann codes are non-negative")
    hit = _decode_memo.get(n)
    if hit is not None:
        return hit
    if n.bit_length() > budget().max_code_bits:
        raise ResourceError(f"code with {n.bit_length()} bits exceeds max_code_bits")
    children = []
    bit, rest = 0, n
    while rest:
        if rest & 1:
            children.append(ack_decode(bit))
        rest >>= 1
        bit += 1
    # bit positions ascend, so children are already in Ackermann order
    term = _intern(tuple(children))
    term._code = n
    if n < (1 << 17):
        _decode_memo[n] = term
    return term


def powerset(x: SetTerm) -> SetTerm:
    n = len(x.children)
    if n >= 63 or (1 << n) > budget().max_children:
        raise ResourceError(f"powerset of a {n}-element set exceeds max_children")
    elems = x.children
    # elements are in Ackermann order, so mask order is code order of subsets
    subsets = [_intern(tuple(e for i, e in enumerate(elems) if mask >> i & 1))
               for mask in range(1 << n)]
    return _intern(tuple(subsets))


_numerals: list[SetTerm] = [EMPTY]


def numeral(n: int) -> SetTerm:
    """Von Neumann numeral: 0 = {}, n+1 = n | {n}."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    while len(_numerals) <= n:
        _numerals.append(_intern(tuple(_numerals)))
    return _numerals[n]


def as_numeral(x: SetTerm) -> int | None:
    """Return n if x is the von Neumann numeral n, else None."""
    n = len(x.children)
    if x.rank == n and numeral(n) is x:
        return n
    return None


def terms_below_rank(n: int) -> tuple[SetTerm, ...]:
    """All terms of rank < n (the elements of V_n), in Ackermann order."""
    return vn(n).children


_vn: list[SetTerm] = [EMPTY]


def vn(n: int) -> SetTerm:
    """V_n as a term: all sets of rank < n."""
    if n > budget().max_rank:
        raise ResourceError(f"V_{n} exceeds max_rank")
    while len(_vn) <= n:
        _vn.append(powerset(_vn[-1]))
    return _vn[n]


def to_braces(x: SetTerm) -> str:
    memo: dict[SetTerm, str] = {}

    def go(t: SetTerm) -> str:
        s = memo.get(t)
        if s is None:
            s = memo[t] = "{" + ",".join(go(c) for c in t.children) + "}"
        return s

    return go(x)
