"""
Bidirectional type checking of kernel terms.

:func:`infer` synthesizes the type of a term and :func:`check` checks a term
against an expected type, switching to inference and subsumption for
everything that is not an introduction form. Types are handled as
:mod:`~hitkernel.normalizer` values throughout.
"""

import logging

from . import syntax as S
from .config import get_max_level
from .diagnostics import (HitKernelError, E_ASSERT, E_DUP, E_MISMATCH,
                          E_NOINFER, E_NOTFN, E_NOTPAIR, E_UNBOUND,
                          E_UNIVERSE)
from .frontend.pretty import pretty
from .normalizer import (AXIOM, DEFINITION, Closure, Environment,
                         GlobalEntry, GlobalEnv, VId, VNat, VPi, VQMk,
                         VQuot, VRefl, VSigma, VSucc, VUnit, VUniverse,
                         VZero, apply_value, coherence_type, constant_closure,
                         convertible, convertible_types, do_fst, evaluate,
                         fresh, normalize, reify, reify_type, relation_type,
                         subtype)


__all__ = [
    "Context",
    "infer",
    "show_inferred",
    "check",
    "check_type",
    "check_declaration",
    "axiom_audit",
]


logger = logging.getLogger(__name__)


class Context(object):
    """
    A telescope of local assumptions over a global environment.

    Parameters
    ----------
    globals : :class:`hitkernel.normalizer.GlobalEnv`, optional
        The checked declarations in scope.
    names, types, values : tuple
        Display names, type values and values of the local variables,
        outermost first. Values of assumptions are fresh neutrals.

    Notes
    -----
    Contexts are immutable; :meth:`bind` returns a new one.
    """
    def __init__(self, globals=None, names=(), types=(), values=()):
        self.globals = GlobalEnv() if globals is None else globals
        self.names = tuple(names)
        self.types = tuple(types)
        self.values = tuple(values)

    def __len__(self):
        return len(self.types)

    def bind(self, name, type):
        """Assume a fresh variable `name` of type value `type`."""
        value = fresh(len(self.types), name)
        return Context(self.globals, self.names + (name,),
                       self.types + (type,), self.values + (value,))

    def environment(self):
        return Environment(self.values, self.globals)

    def eval(self, term):
        return evaluate(self.environment(), term)

    def show(self, term):
        return pretty(term, self.names)

    def show_type(self, type):
        return pretty(reify_type(self, type), self.names)


def _error(code, message, term):
    return HitKernelError(code, message, getattr(term, "span", None))


def _mismatch(ctx, term, expected, actual):
    return _error(E_MISMATCH, "%s has type %s but %s was expected"
                  % (ctx.show(term), ctx.show_type(actual),
                     ctx.show_type(expected)), term)


def infer(ctx, term):
    """Infer the type of `term`.

    Parameters
    ----------
    ctx : :class:`Context`
    term : :class:`hitkernel.syntax.CoreTerm`
        Scoped in ``len(ctx)`` local variables.

    Returns
    -------
    :class:`hitkernel.normalizer.Value`
        The type of `term`.

    Raises
    ------
    HitKernelError
        With code E-UNBOUND, E-UNIVERSE, E-NOTFN, E-NOTPAIR, E-MISMATCH or
        E-NOINFER.
    """
    try:
        rule = _INFER_RULES[type(term)]
    except KeyError:
        raise _error(E_NOINFER, "cannot infer a type for %s"
                     % ctx.show(term), term)
    try:
        return rule(ctx, term)
    except HitKernelError as exc:
        if exc.span is None and term.span is not None:
            raise exc.with_span(term.span)
        raise


def show_inferred(ctx, term):
    """The inferred type of `term` as surface text.

    A global prints with its type as declared rather than unfolded.
    """
    type = infer(ctx, term)
    if isinstance(term, S.Ref):
        return ctx.show(ctx.globals[term.name].type_term)
    return ctx.show_type(type)


def check(ctx, term, expected):
    """Check that `term` inhabits the type value `expected`.

    Unannotated lambdas check against Pi types, pairs against Sigma types
    and ``let`` redexes by checking their body; every other term is inferred
    and compared by :func:`subtype`.
    """
    try:
        _check(ctx, term, expected)
    except HitKernelError as exc:
        if exc.span is None and term.span is not None:
            raise exc.with_span(term.span)
        raise


def _check(ctx, term, expected):
    if isinstance(term, S.Lam):
        if not isinstance(expected, VPi):
            raise _error(E_MISMATCH, "the function %s was given type %s"
                         % (ctx.show(term), ctx.show_type(expected)), term)
        if term.annotation is not None:
            _check_annotation(ctx, term.annotation, expected.domain)
        inner = ctx.bind(term.name, expected.domain)
        x = inner.values[-1]
        check(inner, term.body, expected.codomain.apply(x))
        return
    if _is_unused_redex(term):
        # a local definition: only the argument needs the annotation
        fn = term.fn
        check_type(ctx, fn.annotation)
        domain = ctx.eval(fn.annotation)
        check(ctx, term.arg, domain)
        check(ctx.bind(fn.name, domain), fn.body, expected)
        return
    if isinstance(term, S.Pair) and isinstance(expected, VSigma):
        check(ctx, term.first, expected.first)
        first = ctx.eval(term.first)
        check(ctx, term.second, expected.second.apply(first))
        return
    actual = infer(ctx, term)
    if not subtype(ctx, actual, expected):
        raise _mismatch(ctx, term, expected, actual)


def _is_unused_redex(term):
    """``(fun (x : A) => b) a`` where `b` does not mention ``x``."""
    return (isinstance(term, S.App) and isinstance(term.fn, S.Lam) and
            term.fn.annotation is not None and
            not S.has_free_var(term.fn.body))


def check_type(ctx, term):
    """Check that `term` is a type; returns its universe level."""
    ty = infer(ctx, term)
    if not isinstance(ty, VUniverse):
        raise _error(E_MISMATCH, "%s is not a type; it has type %s"
                     % (ctx.show(term), ctx.show_type(ty)), term)
    return ty.level


def _check_annotation(ctx, annotation, determined):
    check_type(ctx, annotation)
    stated = ctx.eval(annotation)
    if not convertible_types(ctx, stated, determined):
        raise _error(E_MISMATCH, "binder annotated %s but it has type %s"
                     % (ctx.show(annotation), ctx.show_type(determined)),
                     annotation)


def _universe(level, term):
    if level > get_max_level():
        raise _error(E_UNIVERSE, "universe level %d exceeds the maximum %d"
                     % (level, get_max_level()), term)
    return VUniverse(level)


def _infer_var(ctx, t):
    level = len(ctx) - 1 - t.index
    if t.index < 0 or level < 0:
        raise _error(E_UNBOUND, "variable %s is out of scope" % t.hint, t)
    return ctx.types[level]


def _infer_ref(ctx, t):
    entry = ctx.globals.get(t.name)
    if entry is None:
        raise _error(E_UNBOUND, "unknown name %s" % t.name, t)
    return entry.type


def _infer_universe(ctx, t):
    return VUniverse(_universe(t.level, t).level + 1)


def _infer_pi(ctx, t):
    i = check_type(ctx, t.domain)
    j = check_type(ctx.bind(t.name, ctx.eval(t.domain)), t.codomain)
    return VUniverse(max(i, j))


def _infer_sigma(ctx, t):
    i = check_type(ctx, t.first)
    j = check_type(ctx.bind(t.name, ctx.eval(t.first)), t.second)
    return VUniverse(max(i, j))


def _infer_lam(ctx, t):
    if t.annotation is None:
        raise _error(E_NOINFER, "cannot infer the type of %s; annotate the "
                     "binder" % ctx.show(t), t)
    check_type(ctx, t.annotation)
    domain = ctx.eval(t.annotation)
    inner = ctx.bind(t.name, domain)
    body_type = reify_type(inner, infer(inner, t.body))
    return VPi(domain, Closure(ctx.environment(), body_type), t.name)


def _infer_app(ctx, t):
    fn_type = infer(ctx, t.fn)
    if not isinstance(fn_type, VPi):
        raise _error(E_NOTFN, "%s is applied to an argument but has type %s"
                     % (ctx.show(t.fn), ctx.show_type(fn_type)), t.fn)
    check(ctx, t.arg, fn_type.domain)
    return fn_type.codomain.apply(ctx.eval(t.arg))


def _infer_pair(ctx, t):
    first = infer(ctx, t.first)
    second = infer(ctx, t.second)
    return VSigma(first, constant_closure(second, ctx.globals), "_")


def _infer_sigma_of(ctx, pair):
    ty = infer(ctx, pair)
    if not isinstance(ty, VSigma):
        raise _error(E_NOTPAIR, "%s is projected but has type %s"
                     % (ctx.show(pair), ctx.show_type(ty)), pair)
    return ty


def _infer_fst(ctx, t):
    return _infer_sigma_of(ctx, t.pair).first


def _infer_snd(ctx, t):
    ty = _infer_sigma_of(ctx, t.pair)
    return ty.second.apply(do_fst(ctx.eval(t.pair)))


def _infer_succ(ctx, t):
    check(ctx, t.pred, VNat())
    return VNat()


def _infer_natrec(ctx, t):
    n_name, k_name, r_name = t.names
    n_ann, k_ann, r_ann = t.annotations
    if n_ann is not None:
        _check_annotation(ctx, n_ann, VNat())
    check_type(ctx.bind(n_name, VNat()), t.motive)
    motive = Closure(ctx.environment(), t.motive)
    check(ctx, t.zcase, motive.apply(VZero()))
    if k_ann is not None:
        _check_annotation(ctx, k_ann, VNat())
    inner = ctx.bind(k_name, VNat())
    k = inner.values[-1]
    if r_ann is not None:
        _check_annotation(inner, r_ann, motive.apply(k))
    inner = inner.bind(r_name, motive.apply(k))
    check(inner, t.scase, motive.apply(VSucc(k)))
    check(ctx, t.scrutinee, VNat())
    return motive.apply(ctx.eval(t.scrutinee))


def _infer_id(ctx, t):
    level = check_type(ctx, t.type)
    carrier = ctx.eval(t.type)
    check(ctx, t.lhs, carrier)
    check(ctx, t.rhs, carrier)
    return VUniverse(level)


def _infer_refl(ctx, t):
    check_type(ctx, t.type)
    carrier = ctx.eval(t.type)
    check(ctx, t.point, carrier)
    point = ctx.eval(t.point)
    return VId(carrier, point, point)


def _infer_j(ctx, t):
    y_name, p_name = t.names
    y_ann, p_ann = t.annotations
    check_type(ctx, t.type)
    carrier = ctx.eval(t.type)
    check(ctx, t.base, carrier)
    base = ctx.eval(t.base)
    if y_ann is not None:
        _check_annotation(ctx, y_ann, carrier)
    inner = ctx.bind(y_name, carrier)
    path_type = VId(carrier, base, inner.values[-1])
    if p_ann is not None:
        _check_annotation(inner, p_ann, path_type)
    check_type(inner.bind(p_name, path_type), t.motive)
    motive = Closure(ctx.environment(), t.motive)
    check(ctx, t.refl_case, motive.apply(base, VRefl(carrier, base)))
    check(ctx, t.endpoint, carrier)
    endpoint = ctx.eval(t.endpoint)
    check(ctx, t.path, VId(carrier, base, endpoint))
    return motive.apply(endpoint, ctx.eval(t.path))


def _quotient_data(ctx, t):
    """Check a quotient's carrier and relation; returns both and the level.
    """
    level = check_type(ctx, t.carrier)
    carrier = ctx.eval(t.carrier)
    check(ctx, t.relation, relation_type(carrier, ctx.globals))
    return carrier, ctx.eval(t.relation), level


def _infer_quot(ctx, t):
    _, _, level = _quotient_data(ctx, t)
    return VUniverse(level)


def _infer_qmk(ctx, t):
    carrier, relation, _ = _quotient_data(ctx, t)
    check(ctx, t.point, carrier)
    return VQuot(carrier, relation)


def _infer_qpath(ctx, t):
    carrier, relation, _ = _quotient_data(ctx, t)
    check(ctx, t.lhs, carrier)
    check(ctx, t.rhs, carrier)
    lhs, rhs = ctx.eval(t.lhs), ctx.eval(t.rhs)
    check(ctx, t.witness, apply_value(apply_value(relation, lhs), rhs))
    return VId(VQuot(carrier, relation), VQMk(carrier, relation, lhs),
               VQMk(carrier, relation, rhs))


def _infer_qelim(ctx, t):
    x_name, a0_name, a_name, b_name, r_name = t.names
    x_ann, a0_ann, a_ann, b_ann, r_ann = t.annotations
    carrier, relation, _ = _quotient_data(ctx, t)
    quotient = VQuot(carrier, relation)
    if x_ann is not None:
        _check_annotation(ctx, x_ann, quotient)
    check_type(ctx.bind(x_name, quotient), t.motive)
    motive = Closure(ctx.environment(), t.motive)

    if a0_ann is not None:
        _check_annotation(ctx, a0_ann, carrier)
    inner = ctx.bind(a0_name, carrier)
    a = inner.values[-1]
    check(inner, t.point_case, motive.apply(VQMk(carrier, relation, a)))
    point_case = Closure(ctx.environment(), t.point_case)

    for annotation in (a_ann, b_ann):
        if annotation is not None:
            _check_annotation(ctx, annotation, carrier)
    inner = ctx.bind(a_name, carrier).bind(b_name, carrier)
    a, b = inner.values[-2:]
    witness_type = apply_value(apply_value(relation, a), b)
    if r_ann is not None:
        _check_annotation(inner, r_ann, witness_type)
    inner = inner.bind(r_name, witness_type)
    r = inner.values[-1]
    check(inner, t.coh_case, coherence_type(carrier, relation, motive,
                                            point_case, a, b, r))

    check(ctx, t.scrutinee, quotient)
    return motive.apply(ctx.eval(t.scrutinee))


_INFER_RULES = {
    S.Var: _infer_var,
    S.Ref: _infer_ref,
    S.Universe: _infer_universe,
    S.Pi: _infer_pi,
    S.Lam: _infer_lam,
    S.App: _infer_app,
    S.Sigma: _infer_sigma,
    S.Pair: _infer_pair,
    S.Fst: _infer_fst,
    S.Snd: _infer_snd,
    S.Nat: lambda ctx, t: VUniverse(0),
    S.Zero: lambda ctx, t: VNat(),
    S.Succ: _infer_succ,
    S.NatRec: _infer_natrec,
    S.Unit: lambda ctx, t: VUniverse(0),
    S.Star: lambda ctx, t: VUnit(),
    S.Id: _infer_id,
    S.Refl: _infer_refl,
    S.J: _infer_j,
    S.Quot: _infer_quot,
    S.QMk: _infer_qmk,
    S.QPath: _infer_qpath,
    S.QElim: _infer_qelim,
}


# Declarations

def _axioms_of(env, *terms):
    used = set()
    for term in terms:
        for name in S.free_refs(term):
            entry = env.get(name)
            if entry is not None:
                used.update(entry.axioms)
    return frozenset(used)


def axiom_audit(env, name):
    """The axioms the checked declaration `name` depends on.

    Parameters
    ----------
    env : :class:`hitkernel.normalizer.GlobalEnv`
    name : str

    Returns
    -------
    frozenset of str
        Every axiom reachable through the declaration's type and body; an
        axiom's own name is included.
    """
    entry = env.get(name)
    if entry is None:
        raise HitKernelError(E_UNBOUND, "unknown name %s" % name)
    return entry.axioms


def _telescope_context(env, telescope):
    ctx = Context(env)
    for name, type in telescope:
        check_type(ctx, type)
        ctx = ctx.bind(name, ctx.eval(type))
    return ctx


def check_declaration(env, decl):
    """Check one declaration and install it.

    Parameters
    ----------
    env : :class:`hitkernel.normalizer.GlobalEnv`
    decl : :class:`hitkernel.syntax.Declaration`

    Returns
    -------
    tuple
        ``(env, output)``. Definitions and axioms return the extended
        environment and ``None``; directives leave the environment alone and
        return the text they report (``None`` for passing assertions).

    Raises
    ------
    HitKernelError
        E-DUP for a name already in `env`, E-ASSERT for a failed assertion,
        or any code raised by :func:`infer` and :func:`check`.
    """
    if isinstance(decl, (S.Definition, S.Axiom)):
        return _install(env, decl), None
    if isinstance(decl, S.Directive):
        try:
            return env, _run_directive(env, decl)
        except HitKernelError as exc:
            raise exc.with_span(decl.span)
    raise TypeError("not a declaration: %r" % (decl,))


def _install(env, decl):
    if decl.name in env:
        raise HitKernelError(E_DUP, "%s is already defined" % decl.name,
                             decl.span)
    ctx = Context(env)
    try:
        check_type(ctx, decl.type)
        type = ctx.eval(decl.type)
        if isinstance(decl, S.Definition):
            check(ctx, decl.body, type)
            entry = GlobalEntry(decl.name, DEFINITION, decl.type, type,
                                body_term=decl.body,
                                value=ctx.eval(decl.body),
                                axioms=_axioms_of(env, decl.type, decl.body),
                                span=decl.span)
        else:
            axioms = _axioms_of(env, decl.type) | {decl.name}
            entry = GlobalEntry(decl.name, AXIOM, decl.type, type,
                                axioms=axioms, span=decl.span)
    except HitKernelError as exc:
        raise exc.with_span(decl.span)
    logger.debug("installed %s %s", entry.kind, entry.name)
    return env.extend(entry)


def _run_directive(env, decl):
    ctx = _telescope_context(env, decl.telescope)
    if isinstance(decl, S.CheckDirective):
        return "%s : %s" % (ctx.show(decl.term),
                             show_inferred(ctx, decl.term))
    if isinstance(decl, S.NormalizeDirective):
        type = infer(ctx, decl.term)
        return ctx.show(normalize(ctx, decl.term, type))
    if isinstance(decl, S.AssertDefeq):
        check_type(ctx, decl.type)
        type = ctx.eval(decl.type)
        check(ctx, decl.lhs, type)
        check(ctx, decl.rhs, type)
        lhs, rhs = ctx.eval(decl.lhs), ctx.eval(decl.rhs)
        if not convertible(ctx, lhs, rhs, type):
            raise HitKernelError(
                E_ASSERT, "%s and %s are not definitionally equal: their "
                "normal forms are %s and %s"
                % (ctx.show(decl.lhs), ctx.show(decl.rhs),
                   ctx.show(reify(ctx, lhs, type)),
                   ctx.show(reify(ctx, rhs, type))), decl.span)
        return None
    if isinstance(decl, S.AssertType):
        check_type(ctx, decl.type)
        try:
            check(ctx, decl.term, ctx.eval(decl.type))
        except HitKernelError as exc:
            if exc.code != E_MISMATCH:
                raise
            raise HitKernelError(E_ASSERT, "type assertion failed: %s"
                                 % exc.diagnostic.message,
                                 exc.span or decl.span)
        return None
    raise TypeError("not a directive: %r" % (decl,))
