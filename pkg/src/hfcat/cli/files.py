"""Category presentation files and well-powering files.

Category file::

    category <name>
    let <ident> = <term>
    objects: <term> <term> ...
    hom <a> <b>: <f> <g> ...
    id <a> = <f>
    comp <g> <f> = <h>            # resolved when g, f have unique types
    comp <a> <b> <c>: <g> <f> = <h>

Well-powering file::

    wellpowering | cowellpowering
    at <c>:
    index <term> object <term> via <morphism>

Blank lines and ``#`` comments are ignored.  Composites with identities are
filled in; everything else must be listed.
"""
from __future__ import annotations

from typing import Mapping

from ..cats.category import FinCat, make_category
from ..errors import HFError, TermParseError
from ..hfset import SetTerm
from ..subobjects import WellPowering, WPEntry
from .terms import read_term, split_args, split_top


class FileFormatError(HFError, ValueError):
    def __init__(self, message, line_no=0, line=""):
        self.line_no = line_no
        if line_no:
            message = f"line {line_no}: {message}: {line.strip()!r}"
        super().__init__(message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_category(text: str, env: Mapping[str, SetTerm] | None = None) -> FinCat:
    env = dict(env or {})
    name, objects, arrows, ident, comp_lines = "", [], [], {}, []
    seen_header = False

    def term(s, no, line):
        try:
            return read_term(s.strip(), env)
        except (TermParseError, KeyError) as e:
            raise FileFormatError(str(e), no, line) from None

    for no, line in _lines(text):
        word, _, rest = line.partition(" ")
        if word == "category":
            seen_header, name = True, rest.strip()
        elif word == "let":
            parts = split_top(rest, "=")
            if parts is None:
                raise FileFormatError("expected 'let name = term'", no, line)
            env[parts[0].strip()] = term(parts[1], no, line)
        elif word in ("objects:", "objects"):
            body = rest if word.endswith(":") else (split_top(rest, ":") or ("", rest))[1]
            objects.extend(term(w, no, line) for w in split_args(body))
        elif word == "hom":
            parts = split_top(rest, ":")
            ends = split_args(parts[0]) if parts else []
            if len(ends) != 2:
                raise FileFormatError("expected 'hom a b: f g ...'", no, line)
            a, b = (term(w, no, line) for w in ends)
            arrows.extend((a, b, term(w, no, line)) for w in split_args(parts[1]))
        elif word == "id":
            parts = split_top(rest, "=")
            if parts is None:
                raise FileFormatError("expected 'id a = f'", no, line)
            ident[term(parts[0], no, line)] = term(parts[1], no, line)
        elif word == "comp":
            comp_lines.append((no, line, rest))
        else:
            raise FileFormatError(f"unknown directive {word!r}", no, line)
    if not seen_header:
        raise FileFormatError("missing 'category' header")

    typed: dict[SetTerm, list[tuple[SetTerm, SetTerm]]] = {}
    for a, b, t in arrows:
        typed.setdefault(t, []).append((a, b))
    comp = {}
    for no, line, rest in comp_lines:
        parts = split_top(rest, "=")
        if parts is None:
            raise FileFormatError("expected 'comp g f = h'", no, line)
        lhs, h = parts
        typing = split_top(lhs, ":")
        if typing is not None:
            objs = [term(w, no, line) for w in split_args(typing[0])]
            gf = [term(w, no, line) for w in split_args(typing[1])]
            if len(objs) != 3 or len(gf) != 2:
                raise FileFormatError("expected 'comp a b c: g f = h'", no, line)
            a, b, c = objs
        else:
            gf = [term(w, no, line) for w in split_args(lhs)]
            if len(gf) != 2:
                raise FileFormatError("expected 'comp g f = h'", no, line)
            cands = [(fa, fb, gb) for fa, fb in typed.get(gf[1], [])
                     for ga, gb in typed.get(gf[0], []) if ga == fb]
            if len(cands) != 1:
                raise FileFormatError(f"cannot type the composite ({len(cands)} readings); "
                                      "use 'comp a b c: g f = h'", no, line)
            a, b, c = cands[0]
        comp[(a, b, c, gf[0], gf[1])] = term(h, no, line)
    return make_category(objects, arrows, ident, comp, name=name)


def parse_wellpowering(text: str, C: FinCat, env: Mapping[str, SetTerm] | None = None) -> WellPowering:
    env = dict(env or {})
    dual = None
    families: dict[SetTerm, list[WPEntry]] = {}
    current = None

    def term(s, no, line):
        try:
            return read_term(s.strip(), env)
        except (TermParseError, KeyError) as e:
            raise FileFormatError(str(e), no, line) from None

    for no, line in _lines(text):
        words = split_args(line)
        if words[0] in ("wellpowering", "cowellpowering"):
            dual = words[0] == "cowellpowering"
        elif words[0] == "let":
            parts = split_top(line[3:], "=")
            if parts is None:
                raise FileFormatError("expected 'let name = term'", no, line)
            env[parts[0].strip()] = term(parts[1], no, line)
        elif words[0] == "at":
            body = line[2:].strip().rstrip(":")
            current = term(body, no, line)
            families.setdefault(current, [])
        elif words[0] == "index":
            if current is None:
                raise FileFormatError("'index' before any 'at'", no, line)
            if len(words) != 6 or words[2] != "object" or words[4] != "via":
                raise FileFormatError("expected 'index U object a via s'", no, line)
            families[current].append(WPEntry(term(words[1], no, line), term(words[3], no, line),
                                             term(words[5], no, line)))
        else:
            raise FileFormatError(f"unknown directive {words[0]!r}", no, line)
    if dual is None:
        raise FileFormatError("missing 'wellpowering' or 'cowellpowering' header")
    return WellPowering(C, families, dual=dual)
