"""
Translation of surface syntax into kernel terms.

Names resolve to the innermost local binder first, then to the primitives,
then to checked globals. Sugar (numerals, arrows, products, binder groups,
``let``) is expanded, and primitive heads are arity-checked: a primitive
applied to more arguments than its arity is applied to the rest.

Arguments in binding positions of ``natrec``, ``J`` and ``qelim`` are
written as lambdas; their binders become the binders of the primitive. An
argument with too few binders is eta-expanded.
"""

import re

from .. import syntax as S
from ..diagnostics import HitKernelError, E_ARITY, E_DUP, E_UNBOUND
from . import parser as P


__all__ = [
    "PRIMITIVES",
    "CONSTANTS",
    "is_reserved",
    "Elaborator",
    "elaborate",
    "elaborate_term",
]


def _natrec(args, span):
    (motive, m_names, m_anns), zcase, (scase, s_names, s_anns), n = args
    return S.NatRec(motive, zcase, scase, n, names=m_names + s_names,
                    annotations=m_anns + s_anns, span=span)


def _j(args, span):
    A, a, (motive, names, anns), d, b, p = args
    return S.J(A, a, motive, d, b, p, names=names, annotations=anns,
               span=span)


def _qelim(args, span):
    A, R, (motive, m_names, m_anns), (pc, p_names, p_anns), \
        (coh, c_names, c_anns), q = args
    return S.QElim(A, R, motive, pc, coh, q,
                   names=m_names + p_names + c_names,
                   annotations=m_anns + p_anns + c_anns, span=span)


# name -> (arity, {argument position: (binder count, default names)},
# builder)
PRIMITIVES = {
    "succ": (1, {}, lambda a, span: S.Succ(a[0], span=span)),
    "fst": (1, {}, lambda a, span: S.Fst(a[0], span=span)),
    "snd": (1, {}, lambda a, span: S.Snd(a[0], span=span)),
    "natrec": (4, {0: (1, ("n",)), 2: (2, ("k", "r"))}, _natrec),
    "Id": (3, {}, lambda a, span: S.Id(*a, span=span)),
    "refl": (2, {}, lambda a, span: S.Refl(*a, span=span)),
    "J": (6, {2: (2, ("y", "p"))}, _j),
    "quot": (2, {}, lambda a, span: S.Quot(*a, span=span)),
    "qmk": (3, {}, lambda a, span: S.QMk(*a, span=span)),
    "qpath": (5, {}, lambda a, span: S.QPath(*a, span=span)),
    "qelim": (6, {2: (1, ("x",)), 3: (1, ("a",)),
                  4: (3, ("a", "b", "r"))}, _qelim),
}

CONSTANTS = {
    "Nat": S.Nat,
    "zero": S.Zero,
    "Unit": S.Unit,
    "star": S.Star,
}

_UNIVERSE_RE = re.compile(r"Type(0|[1-9][0-9]*)$")


def is_reserved(name):
    """Whether `name` denotes a primitive and cannot name a global."""
    return (name in PRIMITIVES or name in CONSTANTS or
            _UNIVERSE_RE.match(name) is not None)


def _lookup(scope, name):
    if name == "_":
        return None
    for index, bound in enumerate(reversed(scope)):
        if bound == name:
            return index
    return None


class Elaborator(object):
    """
    Elaborates surface terms against a fixed set of global names.

    Parameters
    ----------
    globals : container of str
        Anything supporting ``in``, typically a
        :class:`hitkernel.normalizer.GlobalEnv`.
    """
    def __init__(self, globals=()):
        self.globals = globals

    def term(self, t, scope):
        """Elaborate `t` under the local names `scope`, innermost last."""
        if isinstance(t, (P.SName, P.SApp)):
            return self.application(t, scope)
        if isinstance(t, P.SNum):
            return S.numeral(t.value, t.span)
        if isinstance(t, P.SLam):
            binders, inner = self.binders(t.binders, scope)
            body = self.term(t.body, inner)
            return self._wrap(S.Lam, binders, body, t.span)
        if isinstance(t, P.SPi):
            binders, inner = self.binders(t.binders, scope)
            return self._wrap(S.Pi, binders, self.term(t.codomain, inner),
                              t.span)
        if isinstance(t, P.SSigma):
            binders, inner = self.binders(t.binders, scope)
            return self._wrap(S.Sigma, binders, self.term(t.second, inner),
                              t.span)
        if isinstance(t, P.SArrow):
            return S.Pi(self.term(t.domain, scope),
                        S.shift(self.term(t.codomain, scope), 1), "_",
                        span=t.span)
        if isinstance(t, P.SProduct):
            return S.Sigma(self.term(t.first, scope),
                           S.shift(self.term(t.second, scope), 1), "_",
                           span=t.span)
        if isinstance(t, P.SPair):
            return S.Pair(self.term(t.first, scope),
                          self.term(t.second, scope), span=t.span)
        if isinstance(t, P.SLet):
            # (fun (_ : T) => body[value]) value: the value is checked
            # against T and stays transparent in the body
            annotation = self.term(t.type, scope)
            value = self.term(t.value, scope)
            body = self.term(t.body, scope + (t.name,))
            substituted = S.shift(S.instantiate(body, [value]), 1)
            return S.App(S.Lam(annotation, substituted, t.name, span=t.span),
                         value, span=t.span)
        raise TypeError("not a surface term: %r" % (t,))

    def binders(self, groups, scope):
        """Flatten binder groups into ``(name, annotation, span)`` triples.

        Each annotation is elaborated once per group and weakened for the
        later names of the group. Returns the triples and the inner scope.
        """
        flat = []
        inner = scope
        for group in groups:
            annotation = None
            if group.type is not None:
                annotation = self.term(group.type, inner)
            for offset, name in enumerate(group.names):
                if annotation is not None and offset:
                    shifted = S.shift(annotation, offset)
                else:
                    shifted = annotation
                flat.append((name, shifted, group.span))
                inner = inner + (name,)
        return flat, inner

    @staticmethod
    def _wrap(cls, binders, body, span):
        """Nest `body` under `binders`; the outermost node gets `span`."""
        count = len(binders)
        for i, (name, annotation, group_span) in enumerate(reversed(binders)):
            outer = span if i == count - 1 and span is not None \
                else group_span
            body = cls(annotation, body, name, span=outer)
        return body

    def resolve(self, t, scope):
        name = t.name
        index = _lookup(scope, name)
        if index is not None:
            return S.Var(index, name, span=t.span)
        if name in CONSTANTS:
            return CONSTANTS[name](span=t.span)
        match = _UNIVERSE_RE.match(name)
        if match is not None:
            return S.Universe(int(match.group(1)), span=t.span)
        if name in PRIMITIVES:
            arity = PRIMITIVES[name][0]
            raise HitKernelError(E_ARITY, "%s expects %d argument%s, got 0"
                                 % (name, arity, "s" if arity > 1 else ""),
                                 t.span)
        if name in self.globals:
            return S.Ref(name, span=t.span)
        raise HitKernelError(E_UNBOUND, "unknown name %s" % name, t.span)

    def application(self, t, scope):
        args = []
        head = t
        while isinstance(head, P.SApp):
            args.append(head.arg)
            head = head.fn
        args.reverse()
        if not args:
            return self.resolve(head, scope)
        primitive = (isinstance(head, P.SName) and
                     head.name in PRIMITIVES and
                     _lookup(scope, head.name) is None)
        if primitive:
            arity, binding, build = PRIMITIVES[head.name]
            if len(args) < arity:
                raise HitKernelError(
                    E_ARITY, "%s expects %d argument%s, got %d"
                    % (head.name, arity, "s" if arity > 1 else "",
                       len(args)), t.span)
            core_args = []
            for position, arg in enumerate(args[:arity]):
                if position in binding:
                    count, defaults = binding[position]
                    core_args.append(self.binding_argument(
                        arg, scope, count, defaults))
                else:
                    core_args.append(self.term(arg, scope))
            span = head.span.to(args[arity - 1].span)
            result = build(core_args, span)
            rest = args[arity:]
        else:
            result = self.term(head, scope)
            rest = args
        for arg in rest:
            result = S.App(result, self.term(arg, scope),
                           span=head.span.to(arg.span))
        return result

    def binding_argument(self, arg, scope, count, defaults):
        """Elaborate `arg` as a body under `count` primitive binders.

        Returns ``(body, names, annotations)``.
        """
        binders = []
        inner = scope
        body = arg
        while len(binders) < count and isinstance(body, P.SLam):
            more, inner = self.binders(body.binders, inner)
            binders.extend(more)
            body = body.body
        core = self.term(body, inner)
        if len(binders) > count:
            extra = binders[count:]
            binders = binders[:count]
            core = self._wrap(S.Lam, extra, core, None)
        missing = count - len(binders)
        if missing:
            core = S.shift(core, missing)
            for i in range(missing):
                name = defaults[len(binders) + i]
                core = S.App(core, S.Var(missing - 1 - i, name))
        names = tuple(name for name, _, _ in binders) + \
            tuple(defaults[len(binders):])
        annotations = tuple(annotation for _, annotation, _ in binders) + \
            (None,) * missing
        return core, names, annotations

    def telescope(self, groups):
        binders, inner = self.binders(groups, ())
        return tuple((name, annotation)
                     for name, annotation, _ in binders), inner

    def declaration(self, decl):
        """Elaborate one surface declaration into a kernel declaration."""
        if isinstance(decl, (P.SDef, P.SAxiom)):
            if is_reserved(decl.name):
                raise HitKernelError(E_DUP, "%s is a primitive and cannot be "
                                     "redefined" % decl.name, decl.span)
            binders, inner = self.binders(decl.binders, ())
            type = self._wrap(S.Pi, binders, self.term(decl.type, inner),
                              None)
            if isinstance(decl, P.SAxiom):
                return S.Axiom(decl.name, type, span=decl.span)
            body = self._wrap(S.Lam, binders, self.term(decl.body, inner),
                              None)
            return S.Definition(decl.name, type, body, span=decl.span)
        telescope, inner = self.telescope(decl.telescope)
        if isinstance(decl, P.SCheck):
            return S.CheckDirective(self.term(decl.term, inner), telescope,
                                    span=decl.span)
        if isinstance(decl, P.SNormalize):
            return S.NormalizeDirective(self.term(decl.term, inner),
                                        telescope, span=decl.span)
        if isinstance(decl, P.SAssertDefeq):
            return S.AssertDefeq(self.term(decl.lhs, inner),
                                 self.term(decl.rhs, inner),
                                 self.term(decl.type, inner), telescope,
                                 span=decl.span)
        if isinstance(decl, P.SAssertType):
            return S.AssertType(self.term(decl.term, inner),
                                self.term(decl.type, inner), telescope,
                                span=decl.span)
        raise TypeError("not a surface declaration: %r" % (decl,))


def elaborate(decl, globals=()):
    """Elaborate a surface declaration.

    Parameters
    ----------
    decl : :class:`~hitkernel.frontend.parser.SurfaceDecl`
    globals : container of str
        Names of the checked globals in scope.

    Returns
    -------
    :class:`hitkernel.syntax.Declaration`

    Raises
    ------
    HitKernelError
        E-UNBOUND for an unknown name, E-ARITY for an under-applied
        primitive, E-DUP for a declaration named like a primitive.
    """
    return Elaborator(globals).declaration(decl)


def elaborate_term(term, globals=(), scope=()):
    """Elaborate a surface term under local names `scope`.

    >>> from hitkernel.frontend.lexer import lex
    >>> from hitkernel.frontend.parser import parse_term
    >>> elaborate_term(parse_term(lex("fun (x : Nat) => succ x")))
    Lam(annotation=Nat(), body=Succ(pred=Var(index=0, hint='x')), name='x')
    """
    return Elaborator(globals).term(term, tuple(scope))
