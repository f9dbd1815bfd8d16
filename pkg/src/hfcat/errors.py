class HFError(Exception):
    pass


class ResourceError(HFError):
    """A configured budget would be exceeded; not a mathematical failure."""


class LawError(HFError, ValueError):
    """An input violates the algebraic laws its type requires."""


class TermParseError(HFError, ValueError):
    def __init__(self, message, text=None, pos=0):
        self.text = text
        self.pos = pos
        if text is not None:
            message = f"{message} at column {pos + 1}: {text!r}"
        super().__init__(message)
