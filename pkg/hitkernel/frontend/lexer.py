"""
Tokenizer for ``.hk`` source text.

>>> [t.text for t in lex("def two : Nat := 2 -- a numeral")]
['def', 'two', ':', 'Nat', ':=', '2']
"""

import re
from dataclasses import dataclass

from ..diagnostics import HitKernelError, E_LEX
from ..syntax import Span


__all__ = [
    "IDENT",
    "KEYWORD",
    "SYMBOL",
    "NAT",
    "DIRECTIVE",
    "ERROR",
    "EOF",
    "KEYWORDS",
    "DIRECTIVES",
    "Token",
    "lex",
    "lex_error",
]


IDENT = "ident"
KEYWORD = "keyword"
SYMBOL = "symbol"
NAT = "nat"
DIRECTIVE = "directive"
ERROR = "error"
EOF = "eof"

KEYWORDS = frozenset(["def", "axiom", "import", "fun", "let", "in"])
DIRECTIVES = frozenset(["#check", "#normalize", "#assert_defeq",
                        "#assert_type"])

_TOKEN_RE = re.compile(r"""
    (?P<newline>\n)
  | (?P<space>[ \t\r\f]+)
  | (?P<comment>--[^\n]*)
  | (?P<symbol>->|=>|:=|[():,*])
  | (?P<nat>[0-9]+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<directive>\#[A-Za-z_]+)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token(object):
    kind: str
    text: str
    span: Span

    def is_symbol(self, text):
        return self.kind == SYMBOL and self.text == text

    def is_keyword(self, text):
        return self.kind == KEYWORD and self.text == text


def lex(source, file=None, strict=False):
    """Split `source` into tokens.

    Whitespace and ``--`` comments are dropped. A character that starts no
    token, or an unknown ``#`` directive, becomes a single :data:`ERROR`
    token, which the parser reports.

    Parameters
    ----------
    source : str
    file : str, optional
        Recorded in the spans.
    strict : bool
        Raise E-LEX at the first error token instead of returning it.

    Returns
    -------
    list of :class:`Token`
        Without a trailing :data:`EOF` token.

    Raises
    ------
    HitKernelError
        E-LEX, only when `strict` is set.
    """
    tokens = _scan(source, file)
    if strict:
        for token in tokens:
            if token.kind == ERROR:
                raise lex_error(token)
    return tokens


def lex_error(token):
    """The E-LEX error for an :data:`ERROR` token."""
    if token.text.startswith("#"):
        message = "unknown directive %s" % token.text
    else:
        message = "unexpected character %r" % token.text
    return HitKernelError(E_LEX, message, token.span)


def _scan(source, file):
    tokens = []
    line, line_start = 1, 0
    pos = 0
    while pos < len(source):
        col = pos - line_start + 1
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            span = Span(file, line, col, line, col)
            tokens.append(Token(ERROR, source[pos], span))
            pos += 1
            continue
        kind, text = match.lastgroup, match.group()
        end = match.end()
        if kind == "newline":
            line, line_start = line + 1, end
        elif kind not in ("space", "comment"):
            span = Span(file, line, col, line, col + len(text) - 1)
            if kind == "ident" and text in KEYWORDS:
                kind = KEYWORD
            elif kind == "directive" and text not in DIRECTIVES:
                kind = ERROR
            tokens.append(Token(kind, text, span))
        pos = end
    return tokens
