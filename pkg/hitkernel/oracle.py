"""
A reference evaluator that works by substitution on kernel terms.

It shares nothing with :mod:`hitkernel.normalizer` except the term
representation: no environments, closures or values. The self-test compares
the two on closed programs of type ``Nat``.

>>> from hitkernel.syntax import NatRec, Nat, Succ, Var, numeral
>>> add_two = NatRec(Nat(), numeral(3), Succ(Var(0)), numeral(2))
>>> nat_value(add_two)
5
"""

from . import syntax as S
from .diagnostics import InternalError


__all__ = [
    "whnf",
    "nat_value",
]


def whnf(term):
    """Reduce a closed term until its head is a constructor."""
    while True:
        if isinstance(term, S.App):
            fn = whnf(term.fn)
            if not isinstance(fn, S.Lam):
                raise InternalError("applying a non-function: %r" % (fn,))
            term = S.instantiate(fn.body, [term.arg])
        elif isinstance(term, (S.Fst, S.Snd)):
            pair = whnf(term.pair)
            if not isinstance(pair, S.Pair):
                raise InternalError("projecting from a non-pair: %r"
                                    % (pair,))
            term = pair.first if isinstance(term, S.Fst) else pair.second
        elif isinstance(term, S.NatRec):
            n = whnf(term.scrutinee)
            if isinstance(n, S.Zero):
                term = term.zcase
            elif isinstance(n, S.Succ):
                rec = S.NatRec(term.motive, term.zcase, term.scase, n.pred)
                term = S.instantiate(term.scase, [n.pred, rec])
            else:
                raise InternalError("natrec on a non-numeral: %r" % (n,))
        elif isinstance(term, S.J):
            path = whnf(term.path)
            if not isinstance(path, S.Refl):
                raise InternalError("J on a non-refl path: %r" % (path,))
            term = term.refl_case
        elif isinstance(term, S.QElim):
            point = whnf(term.scrutinee)
            if not isinstance(point, S.QMk):
                raise InternalError("qelim on a non-qmk: %r" % (point,))
            term = S.instantiate(term.point_case, [point.point])
        else:
            return term


def nat_value(term):
    """The number a closed term of type ``Nat`` computes."""
    count = 0
    term = whnf(term)
    while isinstance(term, S.Succ):
        count += 1
        term = whnf(term.pred)
    if not isinstance(term, S.Zero):
        raise InternalError("not a natural number: %r" % (term,))
    return count
