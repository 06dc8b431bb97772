"""
Random well-typed kernel terms for the property suites.

Types are drawn from ``Nat``, ``Unit``, the quotient of ``Nat`` by the
total relation, identity types between equal numerals, and non-dependent
functions and pairs over them. Terms at a type are built from introduction
forms, variables in scope, redexes (beta, projections of pairs, ``natrec``
on numerals, ``J`` on ``refl``, ``qelim`` on ``qmk``) so that normalization
has work to do, and eliminations stuck on a variable: applications, ``J``
on a path variable and ``qelim`` on a quotient variable.

>>> from hitkernel.random import seeded
>>> gen = TermGenerator(seeded(3))
>>> from hitkernel.syntax import is_well_scoped
>>> is_well_scoped(gen.term(gen.type(2), (), 3))
True
"""

from . import syntax as S
from .random import get_rng


__all__ = [
    "OPEN_SCOPE",
    "TermGenerator",
    "nat_program",
    "typed_terms",
]


NAT = S.Nat()
UNIT = S.Unit()

# relation of a quotient that glues every two numbers
TOTAL = S.Lam(NAT, S.Lam(NAT, UNIT, "b"), "a")
QUOT = S.Quot(NAT, TOTAL)

# free variables for open terms: a number, a quotient point and a loop
OPEN_SCOPE = (NAT, QUOT, S.Id(NAT, S.numeral(1), S.numeral(1)))


def _arrow(domain, codomain):
    return S.Pi(domain, codomain, "_")


def _product(first, second):
    return S.Sigma(first, second, "_")


class TermGenerator(object):
    """
    Draws types and terms from a :class:`numpy.random.RandomState`.

    Parameters
    ----------
    rng : :class:`numpy.random.RandomState`, optional
        Defaults to :func:`hitkernel.random.get_rng`.
    max_numeral : int
        Largest literal numeral produced.
    """
    def __init__(self, rng=None, max_numeral=3):
        self.rng = rng if rng is not None else get_rng()
        self.max_numeral = max_numeral

    def choice(self, options):
        return options[self.rng.randint(len(options))]

    def base_type(self):
        roll = self.rng.rand()
        if roll < 0.6:
            return NAT
        if roll < 0.75:
            return UNIT
        if roll < 0.9:
            return QUOT
        point = S.numeral(self.rng.randint(self.max_numeral + 1))
        return S.Id(NAT, point, point)

    def type(self, depth):
        """A closed, non-dependent type of at most `depth` constructors."""
        if depth <= 0 or self.rng.rand() < 0.4:
            return self.base_type()
        if self.rng.rand() < 0.6:
            return _arrow(self.type(depth - 1), self.type(depth - 1))
        return _product(self.type(depth - 1), self.type(depth - 1))

    def variables(self, scope, type):
        """Indices of the variables in `scope` of type `type`."""
        count = len(scope)
        return [count - 1 - level for level, t in enumerate(scope)
                if t == type]

    def term(self, type, scope, depth):
        """A term of `type` in a context whose variable types are `scope`.

        Parameters
        ----------
        type : :class:`hitkernel.syntax.CoreTerm`
            A type built by :meth:`type`.
        scope : tuple of CoreTerm
            Types of the local variables, outermost first.
        depth : int
            Bound on the nesting of redexes.
        """
        candidates = self.variables(scope, type)
        if candidates and self.rng.rand() < 0.3:
            return S.Var(self.choice(candidates))
        if depth > 0 and self.rng.rand() < 0.45:
            return self.redex(type, scope, depth - 1)
        return self.intro(type, scope, depth)

    def intro(self, type, scope, depth):
        if isinstance(type, S.Nat):
            if depth > 0 and self.rng.rand() < 0.3:
                return S.Succ(self.term(NAT, scope, depth - 1))
            return S.numeral(self.rng.randint(self.max_numeral + 1))
        if isinstance(type, S.Unit):
            return S.Star()
        if isinstance(type, S.Quot):
            return S.QMk(type.carrier, type.relation,
                         self.term(type.carrier, scope, depth))
        if isinstance(type, S.Id):
            return S.Refl(type.type, type.lhs)
        if isinstance(type, S.Pi):
            body = self.term(type.codomain, scope + (type.domain,), depth)
            return S.Lam(type.domain, body, "x%d" % len(scope))
        if isinstance(type, S.Sigma):
            return S.Pair(self.term(type.first, scope, depth),
                          self.term(type.second, scope, depth))
        raise TypeError("no generator for %r" % (type,))

    def redex(self, type, scope, depth):
        """A term of `type` whose head is an elimination."""
        kind = self.choice(("beta", "fst", "snd", "natrec", "j", "qelim",
                            "neutral"))
        if kind == "beta":
            domain = self.type(1)
            body = self.term(type, scope + (domain,), depth)
            return S.App(S.Lam(domain, body, "y%d" % len(scope)),
                         self.term(domain, scope, depth))
        if kind == "fst":
            other = self.type(1)
            return S.Fst(S.Pair(self.term(type, scope, depth),
                                self.term(other, scope, depth)))
        if kind == "snd":
            other = self.type(1)
            return S.Snd(S.Pair(self.term(other, scope, depth),
                                self.term(type, scope, depth)))
        if kind == "natrec":
            scrutinee = self.term(NAT, scope, depth)
            step = self.term(type, scope + (NAT, type), depth)
            return S.NatRec(type, self.term(type, scope, depth), step,
                            scrutinee)
        if kind == "j":
            point = self.term(NAT, scope, depth)
            return S.J(NAT, point, type, self.term(type, scope, depth),
                       point, S.Refl(NAT, point))
        if kind == "qelim" and isinstance(type, S.Unit):
            # every family of Unit types is coherent by refl
            point = self.term(NAT, scope, depth)
            return S.QElim(NAT, TOTAL, UNIT,
                           self.term(UNIT, scope + (NAT,), depth),
                           S.Refl(UNIT, S.Star()), S.QMk(NAT, TOTAL, point))
        spine = self.spine(type, scope, depth)
        if spine is not None:
            return spine
        return self.intro(type, scope, depth)

    def spine(self, type, scope, depth):
        """An elimination of `type` stuck on a variable, or None."""
        count = len(scope)
        heads = []
        for level, t in enumerate(scope):
            index = count - 1 - level
            if isinstance(t, S.Pi) and t.codomain == type:
                heads.append(("app", index, t))
            elif isinstance(t, S.Id):
                heads.append(("j", index, t))
            elif isinstance(t, S.Quot) and isinstance(type, S.Unit):
                heads.append(("qelim", index, t))
        if not heads:
            return None
        kind, index, t = self.choice(heads)
        if kind == "app":
            return S.App(S.Var(index), self.term(t.domain, scope, depth))
        if kind == "j":
            # constant motive
            return S.J(t.type, t.lhs, type, self.term(type, scope, depth),
                       t.rhs, S.Var(index))
        return S.QElim(t.carrier, t.relation, UNIT,
                       self.term(UNIT, scope + (t.carrier,), depth),
                       S.Refl(UNIT, S.Star()), S.Var(index))


def nat_program(rng=None, depth=3):
    """A closed term of type ``Nat``."""
    return TermGenerator(rng).term(NAT, (), depth)


def typed_terms(count, rng=None, depth=3, type_depth=2, scope=()):
    """Yield `count` ``(term, type)`` pairs, closed unless `scope` is given.

    Parameters
    ----------
    count : int
    rng : :class:`numpy.random.RandomState`, optional
    depth : int
        Redex nesting bound passed to :meth:`TermGenerator.term`.
    type_depth : int
        Size bound passed to :meth:`TermGenerator.type`.
    scope : tuple of CoreTerm
        Types of the free variables, outermost first.
    """
    gen = TermGenerator(rng)
    for _ in range(count):
        type = gen.type(type_depth)
        yield gen.term(type, tuple(scope), depth), type
