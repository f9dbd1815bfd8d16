"""hfcat: command line front end.

    hfcat [flags] <command> [args...]     run one command
    hfcat [flags] -f script.hf            run a script, one command per line
    hfcat [flags]                         interactive session (or read stdin)
"""
from __future__ import annotations

import argparse
import os
import sys

from .session import USAGE, Options, Session, UsageError, apply_flag


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hfcat", description="Hereditarily finite sets and size-aware finite categories.")
    p.add_argument("--universe", default="HF", help="HF or V<n> (default HF)")
    p.add_argument("--theta", default="scott", help="scott or choice")
    p.add_argument("--max-k", default="3", help="largest k tried by classify")
    p.add_argument("--budget", default=None, help="enumeration budget (max search size)")
    p.add_argument("--format", default="text", help="text or doc (JSON lines)")
    p.add_argument("-f", "--file", help="script to run in batch mode")
    p.add_argument("--echo", action="store_true", help="echo each command before its report")
    p.add_argument("command", nargs=argparse.REMAINDER)
    return p


def run_lines(session: Session, lines, out, echo=False) -> int:
    worst = 0
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if echo:
            print(f"> {line}", file=out)
        rep = session.run(line)
        text = rep.render()
        if text:
            print(text, file=out)
        worst = max(worst, rep.status)
    return worst


def repl(session: Session) -> int:
    worst = 0
    while True:
        try:
            line = input("hf> ")
        except EOFError:
            print()
            return worst
        if line.strip() in ("quit", "exit"):
            return worst
        worst = max(worst, run_lines(session, [line], sys.stdout))


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = Options()
    try:
        for name in ("universe", "theta", "max_k", "format"):
            apply_flag(opts, name, getattr(args, name))
        if args.budget is not None:
            apply_flag(opts, "budget", args.budget)
    except UsageError as e:
        print(f"hfcat: {e}", file=sys.stderr)
        return USAGE
    if args.file:
        base = os.path.dirname(os.path.abspath(args.file))
        session = Session(opts, base_dir=base)
        try:
            with open(args.file) as fh:
                lines = fh.readlines()
        except OSError as e:
            print(f"hfcat: {e}", file=sys.stderr)
            return USAGE
        return run_lines(session, lines, sys.stdout, args.echo)
    session = Session(opts)
    if args.command:
        return run_lines(session, [" ".join(args.command)], sys.stdout, args.echo)
    if sys.stdin.isatty():
        return repl(session)
    return run_lines(session, sys.stdin, sys.stdout, args.echo)


if __name__ == "__main__":
    sys.exit(main())
