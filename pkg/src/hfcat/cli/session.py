"""Command dispatch for the REPL and batch modes."""
from __future__ import annotations

import dataclasses
import json
import os
from typing import Callable

from ..cats.category import (FinCat, chain, decode_category, discrete, encode_category,
                             validate_category, walking_arrow)
from ..cats.finset import finset_full, finset_quotients, finset_subsets
from ..cats.size import classify_category
from ..cats.yoneda import Probe, all_presheaves, yoneda_check, yoneda_object
from ..config import budget, budget_scope
from ..encodings import (EquivRelation, ThetaMode, kpair, quotient_star, star_pair,
                         star_unpair, theta)
from ..errors import HFError, LawError, ResourceError, TermParseError
from ..hfset import SetTerm, ack_decode, ack_encode, numeral, powerset
from ..hierarchy import hierarchy_for, psi_member
from ..subobjects import (canonical_cowp_finset, canonical_wp_finset, classifier_check,
                          epis_of, monos_of, subs_star, validate_well_powering)
from ..universes import V, UniverseSpec, check_universe_axioms, is_class, is_small
from .files import parse_category, parse_wellpowering
from .terms import read_term, show, split_args

OK, FAIL, USAGE = 0, 1, 2


class UsageError(HFError):
    pass


@dataclasses.dataclass
class Report:
    command: str
    status: int = OK
    fields: list = dataclasses.field(default_factory=list)   # (key, value) in print order
    fmt: str = "text"

    def add(self, key, value):
        self.fields.append((key, value))
        return self

    def render(self, fmt: str | None = None) -> str:
        if (fmt or self.fmt) == "doc":
            doc = {"command": self.command,
                   "status": {OK: "ok", FAIL: "fail", USAGE: "error"}[self.status]}
            for k, v in self.fields:
                doc[k] = v
            return json.dumps(doc, sort_keys=False)
        lines = []
        for k, v in self.fields:
            if k == "value":
                lines.append(_text(v))
            elif isinstance(v, list):
                lines.append(f"{k}:")
                lines.extend(f"  {_text(x)}" for x in v)
            else:
                lines.append(f"{k}: {_text(v)}")
        return "\n".join(lines)


def _text(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "none"
    return str(v)


@dataclasses.dataclass
class Options:
    universe: UniverseSpec = dataclasses.field(default_factory=UniverseSpec)
    theta: ThetaMode = ThetaMode.SCOTT
    max_k: int = 3
    budget: int | None = None
    format: str = "text"


_FLAGS = {"--universe": "universe", "--theta": "theta", "--max-k": "max_k",
          "--budget": "budget", "--format": "format"}


def apply_flag(opts: Options, name: str, value: str) -> None:
    try:
        if name == "universe":
            opts.universe = UniverseSpec.parse(value)
        elif name == "theta":
            opts.theta = ThetaMode.parse(value)
        elif name in ("max_k", "budget"):
            n = int(value)
            if n < 0:
                raise ValueError(value)
            setattr(opts, name, n)
        elif name == "format":
            if value not in ("text", "doc"):
                raise ValueError(value)
            opts.format = value
        else:
            raise UsageError(f"unknown setting {name!r}")
    except ValueError:
        raise UsageError(f"bad value {value!r} for {name}") from None


class Session:
    def __init__(self, opts: Options | None = None, base_dir: str = "."):
        self.opts = opts or Options()
        self.env: dict[str, SetTerm] = {}
        self.cats: dict[str, FinCat] = {}
        self.current: str | None = None
        self.base_dir = base_dir

    # -- plumbing --------------------------------------------------------------

    def term(self, s: str) -> SetTerm:
        return read_term(s, self.env)

    def path(self, p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(self.base_dir, p)

    def category(self, ref: str | None) -> FinCat:
        if ref is None:
            if self.current is None:
                raise UsageError("no category loaded")
            return self.cats[self.current]
        if ref in self.cats:
            return self.cats[ref]
        if ref.startswith("@"):
            return builtin_category(ref[1:])
        with open(self.path(ref)) as fh:
            return parse_category(fh.read(), self.env)

    def run(self, line: str) -> Report:
        """Run one command line; errors become reports with a nonzero status."""
        fmt = self.opts.format
        try:
            words = split_args(line)
        except TermParseError as e:
            return Report(line.split()[0] if line.split() else "", USAGE, fmt=fmt).add("error", str(e))
        if not words:
            return Report("", OK, fmt=fmt)
        cmd = words[0]
        try:
            args, opts, extra = self._flags(words[1:])
            fmt = opts.format
            handler = COMMANDS.get(cmd)
            if handler is None:
                raise UsageError(f"unknown command {cmd!r}")
            scope = {} if opts.budget is None else {"max_search": opts.budget}
            with budget_scope(**scope):
                return handler(self, Report(cmd, fmt=fmt), args, opts, extra)
        except (UsageError, TermParseError, KeyError) as e:
            return Report(cmd, USAGE, fmt=fmt).add("error", _msg(e))
        except (LawError, ResourceError, HFError, ValueError, OSError) as e:
            return Report(cmd, FAIL, fmt=fmt).add("error", _msg(e))

    def _flags(self, words):
        opts = dataclasses.replace(self.opts)
        args, extra, i = [], {}, 0
        while i < len(words):
            w = words[i]
            if w.startswith("-") and not w.lstrip("-").isdigit():
                if i + 1 >= len(words):
                    raise UsageError(f"flag {w} needs a value")
                if w in _FLAGS:
                    apply_flag(opts, _FLAGS[w], words[i + 1])
                else:
                    extra[w.lstrip("-")] = words[i + 1]
                i += 2
            else:
                args.append(w)
                i += 1
        return args, opts, extra


def _msg(e: Exception) -> str:
    return str(e) if not isinstance(e, KeyError) or isinstance(e, HFError) else f"unknown key {e}"


def _need(args, n, usage):
    if len(args) != n:
        raise UsageError(f"usage: {usage}")
    return args


def builtin_category(spec: str) -> FinCat:
    """Named categories: arrow, chain:n, finset:m, subsets:m, quotients:m, discrete:n."""
    name, _, arg = spec.partition(":")
    try:
        n = int(arg) if arg else None
    except ValueError:
        raise UsageError(f"bad builtin argument {arg!r}") from None
    makers: dict[str, Callable[[], FinCat]] = {
        "arrow": walking_arrow,
        "chain": lambda: chain(3 if n is None else n),
        "finset": lambda: finset_full(2 if n is None else n),
        "subsets": lambda: finset_subsets(2 if n is None else n),
        "quotients": lambda: finset_quotients(2 if n is None else n),
        "discrete": lambda: discrete([numeral(i) for i in range(1 if n is None else n)],
                                     name=f"discrete{n}"),
    }
    if name not in makers:
        raise UsageError(f"unknown builtin category {name!r}")
    return makers[name]()


# -- commands -------------------------------------------------------------------

def cmd_rank(s, r, args, o, x):
    (t,) = _need(args, 1, "rank <term>")
    return r.add("value", s.term(t).rank)


def cmd_ack(s, r, args, o, x):
    (t,) = _need(args, 1, "ack <term>")
    return r.add("value", ack_encode(s.term(t)))


def cmd_unack(s, r, args, o, x):
    (n,) = _need(args, 1, "unack <natural>")
    if not n.isdigit():
        raise UsageError(f"not a natural number: {n!r}")
    return r.add("value", show(ack_decode(int(n))))


def cmd_pow(s, r, args, o, x):
    (t,) = _need(args, 1, "pow <term>")
    return r.add("value", show(powerset(s.term(t))))


def cmd_pair(s, r, args, o, x):
    a, b = _need(args, 2, "pair <term> <term>")
    return r.add("value", show(kpair(s.term(a), s.term(b))))


def cmd_spair(s, r, args, o, x):
    a, b = _need(args, 2, "spair <term> <term>")
    return r.add("value", show(star_pair(s.term(a), s.term(b))))


def cmd_sunpair(s, r, args, o, x):
    (t,) = _need(args, 1, "sunpair <term>")
    res = star_unpair(s.term(t))
    if res is None:
        return r.add("value", "not a star pair")
    return r.add("first", show(res[0])).add("second", show(res[1]))


def cmd_theta(s, r, args, o, x):
    (t,) = _need(args, 1, "theta <term> [--theta scott|choice]")
    X = s.term(t)
    if not X.children:
        raise UsageError("theta needs a nonempty set")
    return r.add("value", show(theta(X, o.theta)))


def cmd_quot(s, r, args, o, x):
    a, rel = _need(args, 2, "quot <carrier> <relation>")
    A = s.term(a)
    R = EquivRelation(A, s.term(rel))
    Q = quotient_star(A, R, o.theta)
    return r.add("value", show(Q)).add("blocks", len(R.blocks())).add("theta", o.theta.value)


def cmd_psi(s, r, args, o, x):
    t, A = _need(args, 2, "psi <term> <set of index sets>")
    return r.add("value", psi_member(s.term(t), s.term(A), o.universe)) \
        .add("universe", str(o.universe))


def cmd_classify(s, r, args, o, x):
    (t,) = _need(args, 1, "classify <term> [--universe U] [--max-k n]")
    z = s.term(t)
    h = hierarchy_for(o.universe)
    r.add("universe", str(o.universe)).add("rank", z.rank)
    r.add("small", is_small(z, o.universe)).add("class", is_class(z, o.universe))
    r.add("least_k_class", h.least_k_class(z, o.max_k))
    r.add("least_k_entity", h.least_k_entity(z, o.max_k))
    r.add("max_k", o.max_k)
    if o.universe.is_hf:
        r.add("note", "every term is small in HF, so all predicates hold at k = 0")
    return r


def cmd_axioms(s, r, args, o, x):
    _need(args, 0, "axioms [--universe U]")
    rep = check_universe_axioms(o.universe)
    r.add("universe", str(o.universe))
    for c in rep.clauses:
        line = c.status
        if c.witness:
            line += " witness " + " ".join(show(w) for w in c.witness)
        if c.status == "pass" and c.checked:
            line += f" (checked {c.checked})"
        r.add(c.clause, line)
    r.status = OK if rep.ok else FAIL
    return r


def cmd_cat(s, r, args, o, x):
    if not args:
        raise UsageError("usage: cat load|validate|classify|encode ...")
    sub, rest = args[0], args[1:]
    r.command = f"cat {sub}"
    if sub == "load":
        if len(rest) == 3 and rest[1] == "as":
            src, name = rest[0], rest[2]
        elif len(rest) == 1:
            src, name = rest[0], None
        else:
            raise UsageError("usage: cat load <file|@builtin> [as <name>]")
        C = s.category(src)
        name = name or C.name or "C"
        s.cats[name] = C
        s.current = name
        return r.add("name", name).add("objects", len(C.objects)) \
            .add("arrows", sum(1 for _ in C.all_arrows()))
    if len(rest) > 1:
        raise UsageError(f"usage: cat {sub} [<name>]")
    C = s.category(rest[0] if rest else None)
    r.add("category", C.name or "C")
    if sub == "validate":
        v = validate_category(C)
        if v is None:
            return r.add("result", "ok")
        r.status = FAIL
        return r.add("result", "violation").add("law", v.law).add("detail", v.message)
    if sub == "classify":
        v = classify_category(C, o.universe, o.max_k)
        r.add("universe", str(o.universe))
        r.add("small", v.small).add("light", v.light).add("moderate", v.moderate)
        r.add("least_k_moderate", v.least_k).add("consistent", v.consistent())
        if v.witnesses:
            r.add("witnesses", [f"{k}: {w}" for k, w in v.witnesses.items()])
        return r
    if sub == "encode":
        z = encode_category(C)
        back = decode_category(z)
        r.add("rank", z.rank).add("roundtrip", back == C)
        r.add("value", show(z))
        r.status = OK if back == C else FAIL
        return r
    raise UsageError(f"unknown cat subcommand {sub!r}")


def cmd_yoneda(s, r, args, o, x):
    if len(args) > 1:
        raise UsageError("usage: yoneda [<category>] [--probes n] [--universe U]")
    C = s.category(args[0] if args else None)
    U = V(6) if o.universe.is_hf else o.universe
    n = int(x.get("probes", 10))
    reps = [yoneda_object(C, d) for d in C.objects]
    extra = [F for F in all_presheaves(C, [numeral(i) for i in range(3)])
             if not any(F == R for R in reps)]
    sheaves = reps + extra[:max(0, n - len(reps))]
    probes = [Probe(c, F) for F in sheaves for c in C.objects]
    for i, F in enumerate(sheaves):
        F.name = f"Y{show(C.objects[i], sugar=True)}" if i < len(reps) else f"P{i - len(reps) + 1}"
    rep = yoneda_check(C, probes, U)
    r.add("category", C.name or "C").add("universe", str(U)).add("presheaves", len(sheaves))
    r.add("probes", [f"c={show(p.c, sugar=True)} F={p.presheaf} |Fc|={p.size_Fc} "
                     f"|Nat|={p.size_nat} squares={p.c_squares + p.f_squares} "
                     f"{'ok' if p.ok else 'FAIL'}" for p in rep.probes])
    r.add("result", "ok" if rep.ok else "fail")
    r.status = OK if rep.ok else FAIL
    return r


def cmd_subobjects(s, r, args, o, x):
    if len(args) > 1 or "c" not in x:
        raise UsageError("usage: subobjects <category> -c <object> [--theta m]")
    C = s.category(args[0] if args else None)
    c = s.term(x["c"])
    if c not in C.objects:
        raise UsageError(f"{show(c)} is not an object")
    P = subs_star(C, monos_of(C), c, o.theta)
    idx = {t: i for i, t in enumerate(P.elements)}
    r.add("object", show(c)).add("theta", o.theta.value).add("pairs", len(P.slice.pairs))
    r.add("size", len(P.elements))
    r.add("elements", [f"{i}: {show(t)}" for t, i in idx.items()])
    r.add("order", [f"{idx[a]} <= {idx[b]}" for a, b in sorted(P.leq, key=lambda p: (idx[p[0]], idx[p[1]]))
                    if a is not b])
    r.add("antisymmetric", P.antisymmetric())
    if P.slice.anomalies:
        r.add("anomalies", P.slice.anomalies)
        r.status = FAIL
    return r


def cmd_wp_validate(s, r, args, o, x):
    if len(args) != 2:
        raise UsageError("usage: wp-validate <category> <wpfile|@canonical|@cocanonical>")
    C = s.category(args[0])
    src = args[1]
    if src in ("@canonical", "@cocanonical"):
        m = max((len(c) for c in C.objects), default=0)
        W = canonical_wp_finset(m) if src == "@canonical" else canonical_cowp_finset(m)
        if W.cat != C:
            raise UsageError(f"{src} is defined on the builtin "
                             f"{'subsets' if src == '@canonical' else 'quotients'} categories only")
        C = W.cat
    else:
        with open(s.path(src)) as fh:
            W = parse_wellpowering(fh.read(), C, s.env)
    M = epis_of(C) if W.dual else monos_of(C)
    rep = validate_well_powering(C, M, W, o.universe)
    r.add("kind", "co-well-powering" if W.dual else "well-powering")
    r.add("universe", str(o.universe)).add("checked_pairs", rep.checked_pairs)
    if rep.ok:
        r.add("result", "ok")
    else:
        r.status = FAIL
        r.add("result", "violation").add("law", rep.violation.law).add("detail", rep.violation.message)
    r.add("small_indices", all(rep.index_small.values()))
    return r


def cmd_classifier(s, r, args, o, x):
    if len(args) > 1:
        raise UsageError("usage: classifier [m] [--theta m]")
    m = int(args[0]) if args else 2
    if m > budget().max_finset:
        raise ResourceError(f"m = {m} exceeds max_finset")
    rep = classifier_check(m, o.theta)
    r.add("m", m).add("theta", o.theta.value)
    r.add("omega", show(rep.omega)).add("size", len(rep.omega)).add("true", show(rep.true))
    r.add("monos", rep.monos).add("classified_uniquely", rep.unique)
    r.add("stable", rep.stable)
    r.add("result", "ok" if rep.ok else "fail")
    r.status = OK if rep.ok else FAIL
    return r


def cmd_let(s, r, args, o, x):
    if len(args) == 3 and args[1] == "=":
        name, t = args[0], args[2]
    elif len(args) == 2:
        name, t = args
    else:
        raise UsageError("usage: let <name> = <term>")
    if not name.isidentifier() or (name[0] == "V" and name[1:].isdigit()):
        raise UsageError(f"bad name {name!r}")
    s.env[name] = s.term(t)
    return r.add(name, show(s.env[name]))


def cmd_set(s, r, args, o, x):
    name, value = _need(args, 2, "set universe|theta|max-k|budget|format <value>")
    apply_flag(s.opts, name.replace("-", "_"), value)
    return r.add(name, value)


def cmd_help(s, r, args, o, x):
    return r.add("commands", sorted(COMMANDS))


COMMANDS = {
    "rank": cmd_rank, "ack": cmd_ack, "unack": cmd_unack, "pow": cmd_pow,
    "pair": cmd_pair, "spair": cmd_spair, "sunpair": cmd_sunpair, "theta": cmd_theta,
    "quot": cmd_quot, "psi": cmd_psi, "classify": cmd_classify, "axioms": cmd_axioms,
    "cat": cmd_cat, "yoneda": cmd_yoneda, "subobjects": cmd_subobjects,
    "wp-validate": cmd_wp_validate, "classifier": cmd_classifier,
    "let": cmd_let, "set": cmd_set, "help": cmd_help,
}


def run_command(line: str, session: Session) -> str:
    return session.run(line).render()
