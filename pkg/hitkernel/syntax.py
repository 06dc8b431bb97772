"""
The kernel term language.

Terms use nameless binding: ``Var(i)`` refers to the binder ``i`` levels up.
Binders keep a display-name hint that takes no part in equality, so
alpha-equivalence is plain structural equality:

>>> alpha_eq(Lam(None, Var(0), name="x"), Lam(None, Var(0), name="y"))
True
>>> instantiate(App(Var(0), Var(0)), [Succ(Zero())])
App(fn=Succ(pred=Zero()), arg=Succ(pred=Zero()))

Primitive eliminators carry all of their arguments. Fields that bind
variables are listed in ``_scopes`` together with the number of binders they
introduce; :func:`map_children` walks terms generically through that table.
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .diagnostics import InternalError


__all__ = [
    "Span",
    "CoreTerm",
    "Var",
    "Universe",
    "Pi",
    "Lam",
    "App",
    "Sigma",
    "Pair",
    "Fst",
    "Snd",
    "Nat",
    "Zero",
    "Succ",
    "NatRec",
    "Unit",
    "Star",
    "Id",
    "Refl",
    "J",
    "Quot",
    "QMk",
    "QPath",
    "QElim",
    "Ref",
    "Declaration",
    "Definition",
    "Axiom",
    "Directive",
    "CheckDirective",
    "NormalizeDirective",
    "AssertDefeq",
    "AssertType",
    "map_children",
    "shift",
    "instantiate",
    "alpha_eq",
    "is_well_scoped",
    "has_free_var",
    "free_refs",
    "numeral",
    "numeral_value",
]


def _hint(default):
    return field(default=default, compare=False)


def _span():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Span(object):
    """A region of a source file, 1-based and inclusive of both ends."""
    file: Optional[str]
    line: int
    col: int
    end_line: int
    end_col: int

    def __post_init__(self):
        if (self.end_line, self.end_col) < (self.line, self.col):
            raise ValueError("span ends before it starts: %d:%d-%d:%d"
                             % (self.line, self.col,
                                self.end_line, self.end_col))

    def to(self, other):
        """The span from the start of `self` to the end of `other`."""
        if other is None:
            return self
        return Span(self.file, self.line, self.col,
                    other.end_line, other.end_col)


class CoreTerm(object):
    """Base class of kernel terms."""
    __slots__ = ()
    _scopes = ()

    def binder_offsets(self):
        """Binder depth of every flattened binder of this node."""
        return tuple(i for _, count in self._scopes for i in range(count))


@dataclass(frozen=True)
class Var(CoreTerm):
    index: int
    hint: str = _hint("x")
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Universe(CoreTerm):
    level: int
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Pi(CoreTerm):
    domain: CoreTerm
    codomain: CoreTerm
    name: str = _hint("x")
    span: Optional[Span] = _span()
    _scopes = (("domain", 0), ("codomain", 1))


@dataclass(frozen=True)
class Lam(CoreTerm):
    annotation: Optional[CoreTerm]
    body: CoreTerm
    name: str = _hint("x")
    span: Optional[Span] = _span()
    _scopes = (("annotation", 0), ("body", 1))


@dataclass(frozen=True)
class App(CoreTerm):
    fn: CoreTerm
    arg: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("fn", 0), ("arg", 0))


@dataclass(frozen=True)
class Sigma(CoreTerm):
    first: CoreTerm
    second: CoreTerm
    name: str = _hint("x")
    span: Optional[Span] = _span()
    _scopes = (("first", 0), ("second", 1))


@dataclass(frozen=True)
class Pair(CoreTerm):
    first: CoreTerm
    second: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("first", 0), ("second", 0))


@dataclass(frozen=True)
class Fst(CoreTerm):
    pair: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("pair", 0),)


@dataclass(frozen=True)
class Snd(CoreTerm):
    pair: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("pair", 0),)


@dataclass(frozen=True)
class Nat(CoreTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Zero(CoreTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Succ(CoreTerm):
    pred: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("pred", 0),)


@dataclass(frozen=True)
class NatRec(CoreTerm):
    """``natrec (n. motive) zcase (k r. scase) scrutinee``."""
    motive: CoreTerm
    zcase: CoreTerm
    scase: CoreTerm
    scrutinee: CoreTerm
    names: Tuple[str, ...] = _hint(("n", "k", "r"))
    annotations: tuple = _hint((None, None, None))
    span: Optional[Span] = _span()
    _scopes = (("motive", 1), ("zcase", 0), ("scase", 2),
               ("scrutinee", 0))


@dataclass(frozen=True)
class Unit(CoreTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Star(CoreTerm):
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Id(CoreTerm):
    type: CoreTerm
    lhs: CoreTerm
    rhs: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("type", 0), ("lhs", 0), ("rhs", 0))


@dataclass(frozen=True)
class Refl(CoreTerm):
    type: CoreTerm
    point: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("type", 0), ("point", 0))


@dataclass(frozen=True)
class J(CoreTerm):
    """Path induction ``J A a (y p. motive) refl_case b path``."""
    type: CoreTerm
    base: CoreTerm
    motive: CoreTerm
    refl_case: CoreTerm
    endpoint: CoreTerm
    path: CoreTerm
    names: Tuple[str, ...] = _hint(("y", "p"))
    annotations: tuple = _hint((None, None))
    span: Optional[Span] = _span()
    _scopes = (("type", 0), ("base", 0), ("motive", 2), ("refl_case", 0),
               ("endpoint", 0), ("path", 0))


@dataclass(frozen=True)
class Quot(CoreTerm):
    carrier: CoreTerm
    relation: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("carrier", 0), ("relation", 0))


@dataclass(frozen=True)
class QMk(CoreTerm):
    carrier: CoreTerm
    relation: CoreTerm
    point: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("carrier", 0), ("relation", 0), ("point", 0))


@dataclass(frozen=True)
class QPath(CoreTerm):
    carrier: CoreTerm
    relation: CoreTerm
    lhs: CoreTerm
    rhs: CoreTerm
    witness: CoreTerm
    span: Optional[Span] = _span()
    _scopes = (("carrier", 0), ("relation", 0), ("lhs", 0), ("rhs", 0),
               ("witness", 0))


@dataclass(frozen=True)
class QElim(CoreTerm):
    """Quotient induction; ``coh_case`` binds ``a b r`` with ``r : R a b``.
    """
    carrier: CoreTerm
    relation: CoreTerm
    motive: CoreTerm
    point_case: CoreTerm
    coh_case: CoreTerm
    scrutinee: CoreTerm
    names: Tuple[str, ...] = _hint(("x", "a", "a", "b", "r"))
    annotations: tuple = _hint((None, None, None, None, None))
    span: Optional[Span] = _span()
    _scopes = (("carrier", 0), ("relation", 0), ("motive", 1),
               ("point_case", 1), ("coh_case", 3), ("scrutinee", 0))


@dataclass(frozen=True)
class Ref(CoreTerm):
    name: str
    span: Optional[Span] = _span()


class Declaration(object):
    """Base class of checked top-level items."""
    __slots__ = ()


@dataclass(frozen=True)
class Definition(Declaration):
    name: str
    type: CoreTerm
    body: CoreTerm
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class Axiom(Declaration):
    name: str
    type: CoreTerm
    span: Optional[Span] = _span()


class Directive(Declaration):
    """A checking directive; ``telescope`` lists ``(name, type)`` pairs
    that are assumed while the directive's terms are checked."""
    __slots__ = ()


@dataclass(frozen=True)
class CheckDirective(Directive):
    term: CoreTerm
    telescope: tuple = ()
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class NormalizeDirective(Directive):
    term: CoreTerm
    telescope: tuple = ()
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class AssertDefeq(Directive):
    lhs: CoreTerm
    rhs: CoreTerm
    type: CoreTerm
    telescope: tuple = ()
    span: Optional[Span] = _span()


@dataclass(frozen=True)
class AssertType(Directive):
    term: CoreTerm
    type: CoreTerm
    telescope: tuple = ()
    span: Optional[Span] = _span()


def map_children(term, fn):
    """Rebuild `term` with ``fn(child, binders)`` applied to each child.

    ``binders`` is the number of variables the child's position binds.
    Primitive binder annotations are mapped too, each at its own depth.
    """
    changes = {}
    for name, binders in term._scopes:
        child = getattr(term, name)
        if child is not None:
            changes[name] = fn(child, binders)
    annotations = getattr(term, "annotations", None)
    if annotations and any(a is not None for a in annotations):
        changes["annotations"] = tuple(
            None if a is None else fn(a, offset)
            for a, offset in zip(annotations, term.binder_offsets()))
    if not changes:
        return term
    return dataclasses.replace(term, **changes)


def iter_children(term):
    """Yield ``(child, binders)`` for every non-empty child of `term`."""
    for name, binders in term._scopes:
        child = getattr(term, name)
        if child is not None:
            yield child, binders


def shift(term, amount, cutoff=0):
    """Add `amount` to every variable index at or above `cutoff`.

    Parameters
    ----------
    term : CoreTerm
    amount : int
        May be negative as long as no index drops below `cutoff`.
    cutoff : int
        Indices below this many binders are left alone.

    Returns
    -------
    CoreTerm
    """
    if amount == 0:
        return term

    def go(t, depth):
        if isinstance(t, Var):
            if t.index < depth:
                return t
            index = t.index + amount
            if index < depth:
                raise InternalError("shift by %d captures Var(%d)"
                                    % (amount, t.index))
            return dataclasses.replace(t, index=index)
        return map_children(t, lambda child, b: go(child, depth + b))

    return go(term, cutoff)


def instantiate(body, arguments):
    """Substitute `arguments` for the binders of `body`.

    `body` binds ``len(arguments)`` variables; the first argument replaces
    the outermost binder. Arguments are shifted as they move under binders,
    so no variable is captured.

    Parameters
    ----------
    body : CoreTerm
    arguments : sequence of CoreTerm

    Returns
    -------
    CoreTerm
        The substituted term, scoped in the ambient context of `arguments`.
    """
    arguments = tuple(arguments)
    count = len(arguments)
    if count == 0:
        return body

    def go(t, depth):
        if isinstance(t, Var):
            if t.index < depth:
                return t
            offset = t.index - depth
            if offset < count:
                return shift(arguments[count - 1 - offset], depth)
            return dataclasses.replace(t, index=t.index - count)
        return map_children(t, lambda child, b: go(child, depth + b))

    return go(body, 0)


def alpha_eq(t, u):
    """Whether `t` and `u` are identical up to display-name hints."""
    return t == u


def is_well_scoped(term, depth=0):
    """Whether every variable of `term` is bound within `depth` binders."""
    if isinstance(term, Var):
        return 0 <= term.index < depth
    for child, binders in iter_children(term):
        if not is_well_scoped(child, depth + binders):
            return False
    annotations = getattr(term, "annotations", None) or ()
    for annotation, offset in zip(annotations, term.binder_offsets()):
        if annotation is not None and \
                not is_well_scoped(annotation, depth + offset):
            return False
    return True


def has_free_var(term, index=0):
    """Whether ``Var(index)`` occurs free in `term` or its annotations."""
    if isinstance(term, Var):
        return term.index == index
    if any(has_free_var(child, index + binders)
           for child, binders in iter_children(term)):
        return True
    annotations = getattr(term, "annotations", None) or ()
    return any(annotation is not None and
               has_free_var(annotation, index + offset)
               for annotation, offset in zip(annotations,
                                             term.binder_offsets()))


def free_refs(term):
    """The set of global names referenced by `term`."""
    found = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Ref):
            found.add(t.name)
            continue
        stack.extend(child for child, _ in iter_children(t))
        for annotation in getattr(t, "annotations", None) or ():
            if annotation is not None:
                stack.append(annotation)
    return frozenset(found)


def numeral(n, span=None):
    """The term ``succ (... (succ zero))`` with `n` successors."""
    term = Zero(span=span)
    for _ in range(n):
        term = Succ(term, span=span)
    return term


def numeral_value(term):
    """The integer a closed numeral denotes, or None for other terms."""
    count = 0
    while isinstance(term, Succ):
        count += 1
        term = term.pred
    if isinstance(term, Zero):
        return count
    return None
