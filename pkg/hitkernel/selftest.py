"""
Property suites run by ``hitkernel selftest``.

Each suite draws terms from :mod:`hitkernel.generators` and returns a
:class:`GroupResult`. The suites are

* ``idempotence``: normalizing a normal form changes nothing, for closed
  terms and for terms over free variables of number, quotient and path type;
* ``oracle``: the normalizer agrees with the substitution evaluator of
  :mod:`hitkernel.oracle` on closed programs of type ``Nat``;
* ``subject reduction``: normal forms check against the original type, for
  the same generated terms and for the definitions of the bundled library,
  whose normal forms must also print and read back unchanged;
* ``defeq laws``: conversion is an equivalence relation and includes eta;
* ``computation rules``: ``J`` on ``refl`` and ``qelim`` on ``qmk`` reduce.
"""

import logging
from dataclasses import dataclass, field

from . import stdlib
from . import syntax as S
from .diagnostics import HitKernelError, InternalError
from .frontend import elaborate_term, lex, parse_term, pretty
from .generators import (NAT, OPEN_SCOPE, TOTAL, TermGenerator, nat_program,
                         typed_terms)
from .loader import load_environment
from .normalizer import DEFINITION, VNat, convertible, normalize, reify
from .oracle import nat_value
from .random import get_rng, seeded
from .typechecker import Context, check, check_type


__all__ = [
    "GroupResult",
    "idempotence",
    "oracle_agreement",
    "subject_reduction",
    "defeq_laws",
    "computation_rules",
    "run_selftest",
]


logger = logging.getLogger(__name__)


# library definitions whose normal forms are too large to build
LIBRARY_EXCLUDED = ("glue_square", "to_eq_coh", "trunc_center",
                    "is_hprop_truncX")

_FAILURES = (HitKernelError, InternalError, RecursionError)


@dataclass
class GroupResult(object):
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def fail(self, message):
        logger.debug("%s: %s", self.name, message)
        self.failures.append(message)

    def __str__(self):
        if self.ok:
            return "PASS %s (%d checked)" % (self.name, self.checked)
        return "FAIL %s (%d of %d failed)" % (self.name, len(self.failures),
                                             self.checked)


def _open_context():
    ctx = Context()
    for i, type in enumerate(OPEN_SCOPE):
        ctx = ctx.bind("v%d" % i, ctx.eval(type))
    return ctx


def _checked_pairs(count, rng):
    """Generated terms with their type values: half closed, half over the
    variables of :data:`hitkernel.generators.OPEN_SCOPE`."""
    closed = count // 2
    ctx = Context()
    for term, type in typed_terms(closed, rng):
        yield ctx, term, ctx.eval(type)
    ctx = _open_context()
    for term, type in typed_terms(count - closed, rng, scope=OPEN_SCOPE):
        yield ctx, term, ctx.eval(type)


def idempotence(count, rng=None):
    result = GroupResult("idempotence")
    for ctx, term, type in _checked_pairs(count, rng):
        result.checked += 1
        try:
            once = normalize(ctx, term, type)
            twice = normalize(ctx, once, type)
        except _FAILURES as exc:
            result.fail("%s: %s" % (ctx.show(term), exc))
            continue
        if not S.alpha_eq(once, twice):
            result.fail("%s normalizes to %s, then to %s"
                        % (ctx.show(term), ctx.show(once), ctx.show(twice)))
    return result


def oracle_agreement(count, rng=None):
    result = GroupResult("oracle")
    ctx = Context()
    for _ in range(count):
        program = nat_program(rng)
        result.checked += 1
        try:
            expected = nat_value(program)
            normal = normalize(ctx, program, VNat())
        except _FAILURES as exc:
            result.fail("%s: %s" % (pretty(program), exc))
            continue
        if S.numeral_value(normal) != expected:
            result.fail("%s normalizes to %s, the oracle says %d"
                        % (pretty(program), pretty(normal), expected))
    return result


def _library_definition(ctx, env, entry):
    """Normal form of a library definition, rechecked, renormalized and
    printed back through the front end."""
    normal = reify(ctx, entry.value, entry.type)
    check(ctx, normal, entry.type)
    again = normalize(ctx, normal, entry.type)
    if not S.alpha_eq(normal, again):
        return "normal form of %s is not stable" % entry.name
    text = pretty(normal)
    reread = elaborate_term(parse_term(lex(text)), env)
    if not S.alpha_eq(normal, reread):
        return "normal form of %s prints as %s, which reads back " \
            "differently" % (entry.name, text)
    return None


def subject_reduction(count, rng=None, env=None, exclude=LIBRARY_EXCLUDED):
    result = GroupResult("subject reduction")
    for ctx, term, type in _checked_pairs(count, rng):
        result.checked += 1
        try:
            check(ctx, term, type)
            check(ctx, normalize(ctx, term, type), type)
        except _FAILURES as exc:
            result.fail("%s: %s" % (ctx.show(term), exc))
    if env is None:
        return result
    ctx = Context(env)
    for entry in env:
        if entry.kind != DEFINITION or entry.name in exclude:
            continue
        result.checked += 1
        try:
            failure = _library_definition(ctx, env, entry)
        except _FAILURES as exc:
            failure = "normal form of %s: %s" % (entry.name, exc)
        if failure is not None:
            result.fail(failure)
    return result


def defeq_laws(count, rng=None):
    result = GroupResult("defeq laws")
    rng = rng if rng is not None else get_rng()
    gen = TermGenerator(rng)
    ctx = Context()
    for _ in range(count):
        type = gen.type(2)
        t, u, s = [gen.term(type, (), 2) for _ in range(3)]
        ty = ctx.eval(type)
        v, w, x = ctx.eval(t), ctx.eval(u), ctx.eval(s)
        result.checked += 1
        try:
            laws = [("reflexivity", convertible(ctx, v, v, ty)),
                    ("symmetry", convertible(ctx, v, w, ty) ==
                     convertible(ctx, w, v, ty)),
                    ("transitivity", not (convertible(ctx, v, w, ty) and
                                          convertible(ctx, w, x, ty)) or
                     convertible(ctx, v, x, ty)),
                    ("normal form", convertible(
                        ctx, v, ctx.eval(normalize(ctx, t, ty)), ty))]
            if isinstance(type, S.Pi):
                expanded = S.Lam(type.domain,
                                 S.App(S.shift(t, 1), S.Var(0)), "x")
                laws.append(("function eta",
                             convertible(ctx, v, ctx.eval(expanded), ty)))
            if isinstance(type, S.Sigma):
                expanded = S.Pair(S.Fst(t), S.Snd(t))
                laws.append(("pair eta",
                             convertible(ctx, v, ctx.eval(expanded), ty)))
            if isinstance(type, S.Unit):
                laws.append(("unit eta",
                             convertible(ctx, v, ctx.eval(S.Star()), ty)))
        except _FAILURES as exc:
            result.fail("%s: %s" % (pretty(t), exc))
            continue
        for law, holds in laws:
            if not holds:
                result.fail("%s fails for %s and %s"
                            % (law, pretty(t), pretty(u)))
    return result


def _coherence_hypothesis(point_case):
    """The type of ``e`` in ``qelim Nat total (_. Nat) pc (a b r. e a b r)``.
    """
    def pc(x):
        return S.instantiate(point_case, [x])

    quot = S.Quot(NAT, TOTAL)
    transported = S.J(quot, S.QMk(NAT, TOTAL, S.Var(2)), NAT, pc(S.Var(2)),
                      S.QMk(NAT, TOTAL, S.Var(1)),
                      S.QPath(NAT, TOTAL, S.Var(2), S.Var(1), S.Var(0)))
    relation = S.App(S.App(TOTAL, S.Var(1)), S.Var(0))
    return S.Pi(NAT, S.Pi(NAT, S.Pi(relation,
                                    S.Id(NAT, transported, pc(S.Var(1))),
                                    "r"), "b"), "a")


def computation_rules(count, rng=None):
    result = GroupResult("computation rules")
    rng = rng if rng is not None else get_rng()
    gen = TermGenerator(rng)
    for _ in range(count):
        ctx = Context()
        result.checked += 1
        carrier = gen.type(1)
        point = gen.term(carrier, (), 2)
        motive = gen.type(1)
        refl_case = gen.term(motive, (), 2)
        constant = S.J(carrier, point, motive, refl_case, point,
                       S.Refl(carrier, point))
        dependent = S.J(carrier, point,
                        S.Id(carrier, point, S.Var(1)),
                        S.Refl(carrier, point), point,
                        S.Refl(carrier, point))
        point_case = gen.term(NAT, (NAT,), 2)
        scrutinee = gen.term(NAT, (), 2)
        try:
            motive_value = ctx.eval(motive)
            check(ctx, constant, motive_value)
            rules = [("J on refl", convertible(
                ctx, ctx.eval(constant), ctx.eval(refl_case), motive_value))]
            path_type = ctx.eval(S.Id(carrier, point, point))
            check(ctx, dependent, path_type)
            rules.append(("J on refl, dependent motive", convertible(
                ctx, ctx.eval(dependent), ctx.eval(S.Refl(carrier, point)),
                path_type)))
            hypothesis = _coherence_hypothesis(point_case)
            check_type(ctx, hypothesis)
            inner = ctx.bind("e", ctx.eval(hypothesis))
            coh = S.App(S.App(S.App(S.Var(3), S.Var(2)), S.Var(1)), S.Var(0))
            elim = S.QElim(NAT, TOTAL, NAT, point_case, coh,
                           S.QMk(NAT, TOTAL, scrutinee))
            check(inner, elim, VNat())
            rules.append(("qelim on qmk", convertible(
                inner, inner.eval(elim),
                inner.eval(S.instantiate(point_case, [scrutinee])), VNat())))
        except _FAILURES as exc:
            result.fail("%s: %s" % (pretty(point), exc))
            continue
        for rule, holds in rules:
            if not holds:
                result.fail("%s does not reduce for %s"
                            % (rule, pretty(point)))
    return result


def run_selftest(terms=500, programs=50, seed=0, library=True):
    """Run every suite.

    Parameters
    ----------
    terms : int
        Generated terms per term-based suite.
    programs : int
        Generated programs for the oracle comparison.
    seed : int
        Seed for :func:`hitkernel.random.seeded`.
    library : bool
        Also check normal forms of the bundled library definitions, except
        those in :data:`LIBRARY_EXCLUDED`.

    Returns
    -------
    list of :class:`GroupResult`
    """
    rng = seeded(seed)
    env = None
    if library:
        env = load_environment([stdlib.path("corollaries")])
    results = [idempotence(terms, rng),
               oracle_agreement(programs, rng),
               subject_reduction(terms, rng, env),
               defeq_laws(terms, rng),
               computation_rules(max(1, terms // 10), rng)]
    for result in results:
        logger.info("%s", result)
    return results
