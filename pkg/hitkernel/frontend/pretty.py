"""
Printing kernel terms back to surface syntax.

The output re-parses and re-elaborates to an alpha-equal term. Binder names
are taken from the hints, renamed where they would capture a variable in
scope, a referenced global or a primitive.

>>> from hitkernel.syntax import Pi, Nat, Succ, Zero
>>> pretty(Pi(Nat(), Nat(), "_"))
'Nat -> Nat'
>>> pretty(Succ(Succ(Zero())))
'2'
>>> pretty(Succ(Succ(Zero())), numerals=False)
'succ (succ zero)'
"""

from .. import syntax as S
from .elaborator import is_reserved
from .lexer import KEYWORDS


__all__ = [
    "pretty",
    "pretty_declaration",
]


TERM, PROD, APP, ATOM = range(4)


class Printer(object):
    def __init__(self, avoid, numerals=True):
        self.avoid = frozenset(avoid)
        self.numerals = numerals

    def fresh(self, hint, scope, used=True):
        """A binder name that shadows nothing in `scope`."""
        base = hint if hint and hint != "_" else "x"
        if not used:
            return "_"
        if base.isdigit() or base[0].isdigit():
            base = "x"
        taken = set(scope) | self.avoid
        name = base
        counter = 0
        while name in taken or is_reserved(name) or name in KEYWORDS:
            counter += 1
            name = "%s%d" % (base, counter)
        return name

    def show(self, t, scope, prec=TERM):
        text, level = self.render(t, scope)
        if level < prec:
            return "(%s)" % text
        return text

    def render(self, t, scope):
        """Returns the text of `t` and the precedence it prints at."""
        if isinstance(t, S.Var):
            if 0 <= t.index < len(scope):
                return scope[len(scope) - 1 - t.index], ATOM
            return "%s?%d" % (t.hint, t.index), ATOM
        if isinstance(t, S.Ref):
            return t.name, ATOM
        if isinstance(t, S.Universe):
            return "Type%d" % t.level, ATOM
        if isinstance(t, S.Nat):
            return "Nat", ATOM
        if isinstance(t, S.Unit):
            return "Unit", ATOM
        if isinstance(t, S.Star):
            return "star", ATOM
        if isinstance(t, (S.Zero, S.Succ)):
            value = S.numeral_value(t)
            if self.numerals and value is not None:
                return str(value), ATOM
            if isinstance(t, S.Zero):
                return "zero", ATOM
            return self.apply("succ", [t.pred], scope)
        if isinstance(t, S.Lam):
            return self.render_lam(t, scope)
        if isinstance(t, S.Pi):
            return self.render_pi(t, scope)
        if isinstance(t, S.Sigma):
            return self.render_sigma(t, scope)
        if isinstance(t, S.App):
            args = []
            head = t
            while isinstance(head, S.App):
                args.append(head.arg)
                head = head.fn
            args.reverse()
            return " ".join([self.show(head, scope, APP)] +
                            [self.show(a, scope, ATOM) for a in args]), APP
        if isinstance(t, S.Pair):
            return "(%s, %s)" % (self.show(t.first, scope),
                                 self.show(t.second, scope)), ATOM
        if isinstance(t, S.Fst):
            return self.apply("fst", [t.pair], scope)
        if isinstance(t, S.Snd):
            return self.apply("snd", [t.pair], scope)
        if isinstance(t, S.Id):
            return self.apply("Id", [t.type, t.lhs, t.rhs], scope)
        if isinstance(t, S.Refl):
            return self.apply("refl", [t.type, t.point], scope)
        if isinstance(t, S.Quot):
            return self.apply("quot", [t.carrier, t.relation], scope)
        if isinstance(t, S.QMk):
            return self.apply("qmk", [t.carrier, t.relation, t.point], scope)
        if isinstance(t, S.QPath):
            return self.apply("qpath", [t.carrier, t.relation, t.lhs, t.rhs,
                                        t.witness], scope)
        if isinstance(t, S.NatRec):
            n, k, r = t.names
            an, ak, ar = t.annotations
            parts = ["natrec",
                     self.binding([(n, an)], t.motive, scope),
                     self.show(t.zcase, scope, ATOM),
                     self.binding([(k, ak), (r, ar)], t.scase, scope),
                     self.show(t.scrutinee, scope, ATOM)]
            return " ".join(parts), APP
        if isinstance(t, S.J):
            parts = ["J", self.show(t.type, scope, ATOM),
                     self.show(t.base, scope, ATOM),
                     self.binding(list(zip(t.names, t.annotations)),
                                  t.motive, scope),
                     self.show(t.refl_case, scope, ATOM),
                     self.show(t.endpoint, scope, ATOM),
                     self.show(t.path, scope, ATOM)]
            return " ".join(parts), APP
        if isinstance(t, S.QElim):
            binders = list(zip(t.names, t.annotations))
            parts = ["qelim", self.show(t.carrier, scope, ATOM),
                     self.show(t.relation, scope, ATOM),
                     self.binding(binders[0:1], t.motive, scope),
                     self.binding(binders[1:2], t.point_case, scope),
                     self.binding(binders[2:5], t.coh_case, scope),
                     self.show(t.scrutinee, scope, ATOM)]
            return " ".join(parts), APP
        raise TypeError("cannot print %r" % (t,))

    def apply(self, head, args, scope):
        return " ".join([head] + [self.show(a, scope, ATOM)
                                  for a in args]), APP

    def binding(self, binders, body, scope):
        """A primitive's binding argument, printed as a lambda."""
        inner = scope
        parts = []
        count = len(binders)
        for i, (hint, annotation) in enumerate(binders):
            used = S.has_free_var(body, count - 1 - i) or \
                annotation is not None or \
                any(later is not None and S.has_free_var(later, j - 1 - i)
                    for j, (_, later) in enumerate(binders)
                    if j > i)
            name = self.fresh(hint, inner, used)
            if annotation is None:
                parts.append(name)
            else:
                parts.append("(%s : %s)" % (name,
                                            self.show(annotation, inner)))
            inner = inner + (name,)
        return "(fun %s => %s)" % (" ".join(parts), self.show(body, inner))

    def render_lam(self, t, scope):
        parts = []
        inner = scope
        while isinstance(t, S.Lam):
            name = self.fresh(t.name, inner, S.has_free_var(t.body, 0))
            if t.annotation is None:
                parts.append(name)
            else:
                parts.append("(%s : %s)" % (name,
                                            self.show(t.annotation, inner)))
            inner = inner + (name,)
            t = t.body
        return "fun %s => %s" % (" ".join(parts), self.show(t, inner)), TERM

    def render_pi(self, t, scope):
        if not S.has_free_var(t.codomain, 0):
            return "%s -> %s" % (self.show(t.domain, scope, PROD),
                                 self.show(t.codomain, scope + ("_",))), TERM
        name = self.fresh(t.name, scope)
        return "(%s : %s) -> %s" % (name, self.show(t.domain, scope),
                                    self.show(t.codomain,
                                              scope + (name,))), TERM

    def render_sigma(self, t, scope):
        if not S.has_free_var(t.second, 0):
            return "%s * %s" % (self.show(t.first, scope, APP),
                                self.show(t.second, scope + ("_",),
                                          PROD)), PROD
        name = self.fresh(t.name, scope)
        return "(%s : %s) * %s" % (name, self.show(t.first, scope),
                                   self.show(t.second, scope + (name,),
                                             PROD)), PROD


def _avoid(*terms):
    names = set()
    for term in terms:
        if term is not None:
            names |= S.free_refs(term)
    return names


def pretty(term, names=(), numerals=True):
    """Print `term` as surface syntax.

    Parameters
    ----------
    term : :class:`hitkernel.syntax.CoreTerm`
    names : sequence of str
        Names of the free local variables, outermost first.
    numerals : bool
        Print closed numerals as digits rather than ``succ`` chains.

    Returns
    -------
    str
    """
    printer = Printer(_avoid(term), numerals)
    return printer.show(term, tuple(names))


def pretty_declaration(decl, numerals=True):
    """Print a kernel declaration; directives print their telescopes."""
    if isinstance(decl, S.Definition):
        printer = Printer(_avoid(decl.type, decl.body) | {decl.name},
                          numerals)
        return "def %s : %s := %s" % (decl.name, printer.show(decl.type, ()),
                                      printer.show(decl.body, ()))
    if isinstance(decl, S.Axiom):
        printer = Printer(_avoid(decl.type) | {decl.name}, numerals)
        return "axiom %s : %s" % (decl.name, printer.show(decl.type, ()))
    terms = [getattr(decl, field, None)
             for field in ("term", "lhs", "rhs", "type")]
    terms += [type for _, type in decl.telescope]
    printer = Printer(_avoid(*terms), numerals)
    groups = []
    scope = ()
    for name, type in decl.telescope:
        fresh = printer.fresh(name, scope)
        groups.append("(%s : %s)" % (fresh, printer.show(type, scope)))
        scope = scope + (fresh,)
    prefix = " ".join(groups)

    def leading(term):
        text = printer.show(term, scope)
        if prefix and text.startswith("("):
            # would read as one more binder group
            text = "(%s)" % text
        return text

    if isinstance(decl, S.CheckDirective):
        body = leading(decl.term)
        keyword = "#check"
    elif isinstance(decl, S.NormalizeDirective):
        body = leading(decl.term)
        keyword = "#normalize"
    elif isinstance(decl, S.AssertDefeq):
        body = "%s %s : %s" % (printer.show(decl.lhs, scope, ATOM),
                               printer.show(decl.rhs, scope, ATOM),
                               printer.show(decl.type, scope))
        keyword = "#assert_defeq"
    elif isinstance(decl, S.AssertType):
        body = "%s : %s" % (leading(decl.term),
                            printer.show(decl.type, scope))
        keyword = "#assert_type"
    else:
        raise TypeError("not a declaration: %r" % (decl,))
    return " ".join(part for part in (keyword, prefix, body) if part)
