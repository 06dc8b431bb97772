"""
Diagnostics shared by the frontend, the checker and the driver.
"""

from dataclasses import dataclass
from typing import Optional


__all__ = [
    "ERROR",
    "WARNING",
    "E_UNBOUND",
    "E_MISMATCH",
    "E_NOTFN",
    "E_NOTPAIR",
    "E_UNIVERSE",
    "E_NOINFER",
    "E_DUP",
    "E_ASSERT",
    "E_LEX",
    "E_PARSE",
    "E_ARITY",
    "E_IO",
    "E_IMPORT",
    "Diagnostic",
    "HitKernelError",
    "InternalError",
]


ERROR = "error"
WARNING = "warning"

E_UNBOUND = "E-UNBOUND"
E_MISMATCH = "E-MISMATCH"
E_NOTFN = "E-NOTFN"
E_NOTPAIR = "E-NOTPAIR"
E_UNIVERSE = "E-UNIVERSE"
E_NOINFER = "E-NOINFER"
E_DUP = "E-DUP"
E_ASSERT = "E-ASSERT"
E_LEX = "E-LEX"
E_PARSE = "E-PARSE"
E_ARITY = "E-ARITY"
E_IO = "E-IO"
E_IMPORT = "E-IMPORT"


@dataclass(frozen=True)
class Diagnostic:
    """A positioned, coded message.

    Parameters
    ----------
    severity : str
        :data:`ERROR` or :data:`WARNING`.
    code : str
        A stable short code such as ``"E-MISMATCH"``.
    message : str
        Human readable explanation.
    span : :class:`hitkernel.syntax.Span` or None
        Source location, if the offending term came from a file.
    """
    severity: str
    code: str
    message: str
    span: Optional[object] = None

    def as_dict(self):
        span = self.span
        return {
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "file": span.file if span is not None else None,
            "line": span.line if span is not None else None,
            "col": span.col if span is not None else None,
        }

    def __str__(self):
        if self.span is None:
            where = "<unknown>"
        else:
            where = "%s:%d:%d" % (self.span.file or "<input>",
                                  self.span.line, self.span.col)
        return "%s: %s %s: %s" % (where, self.severity, self.code,
                                  self.message)


class HitKernelError(Exception):
    """Raised for every user-facing failure; carries a :class:`Diagnostic`.
    """
    def __init__(self, code, message, span=None):
        self.diagnostic = Diagnostic(ERROR, code, message, span)
        super(HitKernelError, self).__init__(str(self.diagnostic))

    @property
    def code(self):
        return self.diagnostic.code

    @property
    def span(self):
        return self.diagnostic.span

    def with_span(self, span):
        """Return a copy located at `span` unless a location is known."""
        if self.diagnostic.span is not None or span is None:
            return self
        return HitKernelError(self.code, self.diagnostic.message, span)


class InternalError(RuntimeError):
    """A broken kernel invariant; never caused by user input alone."""
