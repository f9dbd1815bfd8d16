from .session import Options, Report, Session, run_command
from .terms import evaluate, parse_term, pretty, read_term, show, split_args

__all__ = ["Options", "Report", "Session", "run_command", "evaluate", "parse_term",
           "pretty", "read_term", "show", "split_args"]
