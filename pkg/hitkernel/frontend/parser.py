"""
Recursive-descent parser for ``.hk`` files.

The grammar, from loosest to tightest binding::

    module  ::= ('import' IDENT)* decl*
    decl    ::= 'def' IDENT group* ':' term ':=' term
              | 'axiom' IDENT group* ':' term
              | '#check' group* term
              | '#normalize' group* term
              | '#assert_defeq' group* atom atom ':' term
              | '#assert_type' group* term ':' term
    term    ::= 'fun' lbinder+ '=>' term
              | 'let' IDENT ':' term ':=' term 'in' term
              | group+ '->' term
              | prod ('->' term)?
    prod    ::= group '*' prod
              | app ('*' prod)?
    app     ::= atom+
    atom    ::= IDENT | NAT | '(' term ')' | '(' term ',' term ')'
    group   ::= '(' IDENT+ ':' term ')'
    lbinder ::= IDENT | group

Every surface node records its span.
"""

from dataclasses import dataclass
from typing import Optional

from ..diagnostics import HitKernelError, E_PARSE
from ..syntax import Span
from .lexer import DIRECTIVE, EOF, ERROR, IDENT, NAT, Token, lex, lex_error


__all__ = [
    "SurfaceTerm",
    "SName",
    "SNum",
    "SApp",
    "SLam",
    "SLet",
    "SPi",
    "SArrow",
    "SSigma",
    "SProduct",
    "SPair",
    "Binder",
    "SurfaceDecl",
    "SDef",
    "SAxiom",
    "SCheck",
    "SNormalize",
    "SAssertDefeq",
    "SAssertType",
    "Import",
    "Module",
    "parse",
    "parse_source",
    "parse_term",
]


class SurfaceTerm(object):
    __slots__ = ()


@dataclass(frozen=True)
class SName(SurfaceTerm):
    name: str
    span: Span


@dataclass(frozen=True)
class SNum(SurfaceTerm):
    value: int
    span: Span


@dataclass(frozen=True)
class SApp(SurfaceTerm):
    fn: SurfaceTerm
    arg: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class Binder(object):
    """Names sharing one optional type, as in ``(x y : A)``."""
    names: tuple
    type: Optional[SurfaceTerm]
    span: Span


@dataclass(frozen=True)
class SLam(SurfaceTerm):
    binders: tuple
    body: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SLet(SurfaceTerm):
    name: str
    type: SurfaceTerm
    value: SurfaceTerm
    body: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SPi(SurfaceTerm):
    binders: tuple
    codomain: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SArrow(SurfaceTerm):
    domain: SurfaceTerm
    codomain: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SSigma(SurfaceTerm):
    binders: tuple
    second: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SProduct(SurfaceTerm):
    first: SurfaceTerm
    second: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SPair(SurfaceTerm):
    first: SurfaceTerm
    second: SurfaceTerm
    span: Span


class SurfaceDecl(object):
    __slots__ = ()


@dataclass(frozen=True)
class SDef(SurfaceDecl):
    name: str
    binders: tuple
    type: SurfaceTerm
    body: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SAxiom(SurfaceDecl):
    name: str
    binders: tuple
    type: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SCheck(SurfaceDecl):
    telescope: tuple
    term: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SNormalize(SurfaceDecl):
    telescope: tuple
    term: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SAssertDefeq(SurfaceDecl):
    telescope: tuple
    lhs: SurfaceTerm
    rhs: SurfaceTerm
    type: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class SAssertType(SurfaceDecl):
    telescope: tuple
    term: SurfaceTerm
    type: SurfaceTerm
    span: Span


@dataclass(frozen=True)
class Import(object):
    name: str
    span: Span


@dataclass(frozen=True)
class Module(object):
    imports: tuple
    declarations: tuple


def _end_span(tokens, file):
    if not tokens:
        return Span(file, 1, 1, 1, 1)
    last = tokens[-1].span
    return Span(last.file, last.end_line, last.end_col + 1,
                last.end_line, last.end_col + 1)


def _describe(token):
    if token.kind == EOF:
        return "end of input"
    return repr(token.text)


class Parser(object):
    """Parser state over a token list terminated by :data:`EOF`."""

    def __init__(self, tokens, file=None):
        tokens = list(tokens)
        if tokens:
            file = tokens[0].span.file
        for token in tokens:
            if token.kind == ERROR:
                raise lex_error(token)
        tokens.append(Token(EOF, "", _end_span(tokens, file)))
        self.tokens = tokens
        self.pos = 0

    # token helpers

    def peek(self, offset=0):
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self):
        token = self.peek()
        if token.kind != EOF:
            self.pos += 1
        return token

    def error(self, expected, token=None):
        token = token or self.peek()
        return HitKernelError(E_PARSE, "expected %s, found %s"
                              % (expected, _describe(token)), token.span)

    def expect_symbol(self, text):
        token = self.peek()
        if not token.is_symbol(text):
            raise self.error(repr(text))
        return self.advance()

    def expect_keyword(self, text):
        token = self.peek()
        if not token.is_keyword(text):
            raise self.error(repr(text))
        return self.advance()

    def expect_ident(self):
        token = self.peek()
        if token.kind != IDENT:
            raise self.error("a name")
        return self.advance()

    def at_group(self):
        """Whether a binder group ``( IDENT+ :`` starts here."""
        if not self.peek().is_symbol("("):
            return False
        offset = 1
        while self.peek(offset).kind == IDENT:
            offset += 1
        return offset > 1 and self.peek(offset).is_symbol(":")

    def at_atom(self):
        token = self.peek()
        return token.kind in (IDENT, NAT) or token.is_symbol("(")

    # modules and declarations

    def parse_module(self):
        imports = []
        while self.peek().is_keyword("import"):
            start = self.advance()
            name = self.expect_ident()
            imports.append(Import(name.text, start.span.to(name.span)))
        declarations = []
        while self.peek().kind != EOF:
            declarations.append(self.parse_declaration())
        return Module(tuple(imports), tuple(declarations))

    def parse_declaration(self):
        token = self.peek()
        if token.is_keyword("def"):
            self.advance()
            name = self.expect_ident().text
            binders = self.parse_groups()
            self.expect_symbol(":")
            type = self.parse_term()
            self.expect_symbol(":=")
            body = self.parse_term()
            return SDef(name, binders, type, body, token.span.to(body.span))
        if token.is_keyword("axiom"):
            self.advance()
            name = self.expect_ident().text
            binders = self.parse_groups()
            self.expect_symbol(":")
            type = self.parse_term()
            return SAxiom(name, binders, type, token.span.to(type.span))
        if token.kind == DIRECTIVE:
            return self.parse_directive()
        if token.is_keyword("import"):
            raise HitKernelError(E_PARSE, "imports must precede all "
                                 "declarations", token.span)
        raise self.error("a declaration")

    def parse_directive(self):
        token = self.advance()
        telescope = self.parse_telescope()
        if token.text == "#assert_defeq":
            lhs = self.parse_atom()
            rhs = self.parse_atom()
            self.expect_symbol(":")
            type = self.parse_term()
            return SAssertDefeq(telescope, lhs, rhs, type,
                                token.span.to(type.span))
        term = self.parse_term()
        if token.text == "#assert_type":
            self.expect_symbol(":")
            type = self.parse_term()
            return SAssertType(telescope, term, type,
                               token.span.to(type.span))
        cls = SCheck if token.text == "#check" else SNormalize
        return cls(telescope, term, token.span.to(term.span))

    def parse_telescope(self):
        start = self.pos
        telescope = self.parse_groups()
        token = self.peek()
        if telescope and (token.is_symbol("->") or token.is_symbol("*")):
            # the groups began a Pi or Sigma type
            self.pos = start
            return ()
        return telescope

    # binders

    def parse_group(self):
        start = self.expect_symbol("(")
        names = []
        while self.peek().kind == IDENT:
            names.append(self.advance().text)
        if not names:
            raise self.error("a name")
        self.expect_symbol(":")
        type = self.parse_term()
        end = self.expect_symbol(")")
        return Binder(tuple(names), type, start.span.to(end.span))

    def parse_groups(self):
        groups = []
        while self.at_group():
            groups.append(self.parse_group())
        return tuple(groups)

    # terms

    def parse_term(self):
        token = self.peek()
        if token.is_keyword("fun"):
            return self.parse_lambda()
        if token.is_keyword("let"):
            return self.parse_let()
        if self.at_group():
            groups = self.parse_groups()
            if self.peek().is_symbol("->"):
                self.advance()
                codomain = self.parse_term()
                return SPi(groups, codomain, token.span.to(codomain.span))
            if len(groups) == 1 and self.peek().is_symbol("*"):
                self.advance()
                second = self.parse_prod()
                sigma = SSigma(groups, second, token.span.to(second.span))
                return self.parse_arrow_tail(sigma)
            raise self.error("'->' after binders")
        return self.parse_arrow_tail(self.parse_prod())

    def parse_arrow_tail(self, domain):
        if not self.peek().is_symbol("->"):
            return domain
        self.advance()
        codomain = self.parse_term()
        return SArrow(domain, codomain, domain.span.to(codomain.span))

    def parse_prod(self):
        token = self.peek()
        if self.at_group():
            group = self.parse_group()
            self.expect_symbol("*")
            second = self.parse_prod()
            return SSigma((group,), second, token.span.to(second.span))
        first = self.parse_app()
        if not self.peek().is_symbol("*"):
            return first
        self.advance()
        second = self.parse_prod()
        return SProduct(first, second, first.span.to(second.span))

    def parse_app(self):
        term = self.parse_atom()
        while self.at_atom():
            arg = self.parse_atom()
            term = SApp(term, arg, term.span.to(arg.span))
        return term

    def parse_atom(self):
        token = self.peek()
        if token.kind == IDENT:
            self.advance()
            return SName(token.text, token.span)
        if token.kind == NAT:
            self.advance()
            return SNum(int(token.text), token.span)
        if token.is_symbol("("):
            self.advance()
            inner = self.parse_term()
            if self.peek().is_symbol(","):
                self.advance()
                second = self.parse_term()
                end = self.expect_symbol(")")
                return SPair(inner, second, token.span.to(end.span))
            self.expect_symbol(")")
            return inner
        raise self.error("a term")

    def parse_lambda(self):
        start = self.expect_keyword("fun")
        binders = []
        while True:
            if self.at_group():
                binders.append(self.parse_group())
            elif self.peek().kind == IDENT:
                name = self.advance()
                binders.append(Binder((name.text,), None, name.span))
            else:
                break
        if not binders:
            raise self.error("a binder")
        self.expect_symbol("=>")
        body = self.parse_term()
        return SLam(tuple(binders), body, start.span.to(body.span))

    def parse_let(self):
        start = self.expect_keyword("let")
        name = self.expect_ident().text
        self.expect_symbol(":")
        type = self.parse_term()
        self.expect_symbol(":=")
        value = self.parse_term()
        self.expect_keyword("in")
        body = self.parse_term()
        return SLet(name, type, value, body, start.span.to(body.span))

    def finish(self):
        if self.peek().kind != EOF:
            raise self.error("end of input")


def parse(tokens):
    """Parse a whole file.

    Parameters
    ----------
    tokens : list of :class:`~hitkernel.frontend.lexer.Token`
        As produced by :func:`~hitkernel.frontend.lexer.lex`.

    Returns
    -------
    :class:`Module`

    Raises
    ------
    HitKernelError
        E-LEX for an error token, E-PARSE otherwise.
    """
    parser = Parser(tokens)
    module = parser.parse_module()
    parser.finish()
    return module


def parse_term(tokens):
    """Parse a single term spanning all of `tokens`."""
    parser = Parser(tokens)
    term = parser.parse_term()
    parser.finish()
    return term


def parse_source(source, file=None):
    """Lex and parse the text of a file.

    >>> module = parse_source("import prelude\\ndef two : Nat := 2")
    >>> [i.name for i in module.imports], module.declarations[0].name
    (['prelude'], 'two')
    """
    return parse(lex(source, file))
