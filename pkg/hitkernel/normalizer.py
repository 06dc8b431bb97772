"""
Normalization by evaluation.

Terms are evaluated into :class:`Value` objects, where every redex has been
contracted, and read back into normal terms. Closures are defunctionalized:
a :class:`Closure` is an environment paired with the term it will evaluate.

Local variables are represented in values by de Bruijn *levels*, so values
never need shifting. Elimination forms applied to a variable, an axiom or a
quotient path pile up in the spine of a :class:`VNeutral`.

Conversion is type directed, which gives eta for functions, pairs and the
unit type. There is no eta for ``Nat``, identity types or quotients.
"""

from dataclasses import dataclass, field
from typing import Optional

from . import syntax as S
from .config import get_max_level
from .diagnostics import InternalError


__all__ = [
    "Value",
    "VUniverse",
    "VPi",
    "VLam",
    "VSigma",
    "VPair",
    "VNat",
    "VZero",
    "VSucc",
    "VUnit",
    "VStar",
    "VId",
    "VRefl",
    "VQuot",
    "VQMk",
    "VQPath",
    "VNeutral",
    "HVar",
    "HAxiom",
    "HStuckPath",
    "FApp",
    "FFst",
    "FSnd",
    "FNatRec",
    "FJ",
    "FQElim",
    "Closure",
    "Environment",
    "GlobalEntry",
    "GlobalEnv",
    "DEFINITION",
    "AXIOM",
    "fresh",
    "evaluate",
    "apply_value",
    "do_fst",
    "do_snd",
    "do_natrec",
    "do_j",
    "do_qelim",
    "kernel_transport",
    "coherence_type",
    "relation_type",
    "arrow",
    "constant_closure",
    "readback",
    "reify",
    "reify_type",
    "convertible",
    "convertible_types",
    "subtype",
    "normalize",
]


DEFINITION = "definition"
AXIOM = "axiom"


class Value(object):
    """Base class of semantic values."""
    __slots__ = ()


@dataclass(frozen=True, eq=False)
class VUniverse(Value):
    level: int


@dataclass(frozen=True, eq=False)
class VPi(Value):
    domain: Value
    codomain: "Closure"
    name: str = "x"


@dataclass(frozen=True, eq=False)
class VLam(Value):
    body: "Closure"
    name: str = "x"


@dataclass(frozen=True, eq=False)
class VSigma(Value):
    first: Value
    second: "Closure"
    name: str = "x"


@dataclass(frozen=True, eq=False)
class VPair(Value):
    first: Value
    second: Value


@dataclass(frozen=True, eq=False)
class VNat(Value):
    pass


@dataclass(frozen=True, eq=False)
class VZero(Value):
    pass


@dataclass(frozen=True, eq=False)
class VSucc(Value):
    pred: Value


@dataclass(frozen=True, eq=False)
class VUnit(Value):
    pass


@dataclass(frozen=True, eq=False)
class VStar(Value):
    pass


@dataclass(frozen=True, eq=False)
class VId(Value):
    type: Value
    lhs: Value
    rhs: Value


@dataclass(frozen=True, eq=False)
class VRefl(Value):
    type: Value
    point: Value


@dataclass(frozen=True, eq=False)
class VQuot(Value):
    carrier: Value
    relation: Value


@dataclass(frozen=True, eq=False)
class VQMk(Value):
    carrier: Value
    relation: Value
    point: Value


@dataclass(frozen=True, eq=False)
class VQPath(Value):
    carrier: Value
    relation: Value
    lhs: Value
    rhs: Value
    witness: Value


@dataclass(frozen=True, eq=False)
class HVar(object):
    level: int
    name: str = "x"


@dataclass(frozen=True, eq=False)
class HAxiom(object):
    name: str


@dataclass(frozen=True, eq=False)
class HStuckPath(object):
    """A quotient path under an eliminator; paths have no computation rule.
    """
    path: VQPath


@dataclass(frozen=True, eq=False)
class VNeutral(Value):
    head: object
    spine: tuple = ()

    def push(self, frame):
        return VNeutral(self.head, self.spine + (frame,))


@dataclass(frozen=True, eq=False)
class FApp(object):
    arg: Value


@dataclass(frozen=True, eq=False)
class FFst(object):
    pass


@dataclass(frozen=True, eq=False)
class FSnd(object):
    pass


@dataclass(frozen=True, eq=False)
class FNatRec(object):
    motive: "Closure"
    zcase: Value
    scase: "Closure"
    names: tuple = ("n", "k", "r")


@dataclass(frozen=True, eq=False)
class FJ(object):
    type: Value
    base: Value
    motive: "Closure"
    refl_case: Value
    endpoint: Value
    names: tuple = ("y", "p")


@dataclass(frozen=True, eq=False)
class FQElim(object):
    carrier: Value
    relation: Value
    motive: "Closure"
    point_case: "Closure"
    coh_case: "Closure"
    names: tuple = ("x", "a", "a", "b", "r")


@dataclass(frozen=True, eq=False)
class GlobalEntry(object):
    """A checked global: its type, and its value unless it is an axiom.

    ``axioms`` is the set of axioms the declaration depends on, itself
    included when it is one.
    """
    name: str
    kind: str
    type_term: S.CoreTerm
    type: Value
    body_term: Optional[S.CoreTerm] = None
    value: Optional[Value] = None
    axioms: frozenset = frozenset()
    span: Optional[S.Span] = field(default=None, repr=False)


class GlobalEnv(object):
    """An append-only table of checked globals.

    :meth:`extend` returns a new table and leaves the receiver untouched, so
    closures built against an earlier table stay valid.
    """
    def __init__(self, entries=()):
        self._entries = dict((entry.name, entry) for entry in entries)

    def __contains__(self, name):
        return name in self._entries

    def __getitem__(self, name):
        return self._entries[name]

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries.values())

    def get(self, name, default=None):
        return self._entries.get(name, default)

    def names(self):
        return list(self._entries)

    def extend(self, entry):
        if entry.name in self._entries:
            raise InternalError("global %r installed twice" % entry.name)
        new = GlobalEnv()
        new._entries = dict(self._entries)
        new._entries[entry.name] = entry
        return new


@dataclass(frozen=True, eq=False)
class Environment(object):
    """Values of the enclosing binders, innermost last."""
    values: tuple
    globals: GlobalEnv

    def extend(self, values):
        return Environment(self.values + tuple(values), self.globals)

    def lookup(self, index):
        try:
            return self.values[-1 - index]
        except IndexError:
            raise InternalError("Var(%d) escapes an environment of %d values"
                                % (index, len(self.values)))


@dataclass(frozen=True, eq=False)
class Closure(object):
    env: Environment
    body: S.CoreTerm

    def apply(self, *args):
        return evaluate(self.env.extend(args), self.body)


def fresh(level, name="x"):
    """The neutral value of the local variable at de Bruijn `level`."""
    return VNeutral(HVar(level, name))


def constant_closure(value, globals, arity=1):
    """A closure over `arity` variables that ignores them."""
    return Closure(Environment((value,), globals), S.Var(arity))


def arrow(domain, codomain, globals):
    """The non-dependent function type ``domain -> codomain``."""
    return VPi(domain, constant_closure(codomain, globals), "_")


def relation_type(carrier, globals):
    """``carrier -> carrier -> Type`` at the largest level."""
    universe = VUniverse(get_max_level())
    return arrow(carrier, arrow(carrier, universe, globals), globals)


# Evaluation

def evaluate(env, term):
    """Evaluate `term` in `env`.

    Fires beta for functions and pairs, ``natrec`` on numerals, ``J`` on
    ``refl``, ``qelim`` on ``qmk``, and unfolds definitions. Axioms evaluate
    to neutral values.

    Parameters
    ----------
    env : :class:`Environment`
    term : :class:`hitkernel.syntax.CoreTerm`
        Scoped in ``len(env.values)`` binders.

    Returns
    -------
    :class:`Value`
    """
    try:
        rule = _EVAL_RULES[type(term)]
    except KeyError:
        raise InternalError("cannot evaluate %r" % (term,))
    return rule(env, term)


def _eval_ref(env, term):
    entry = env.globals.get(term.name)
    if entry is None:
        raise InternalError("unknown global %r reached evaluation"
                            % term.name)
    if entry.kind == AXIOM:
        return VNeutral(HAxiom(entry.name))
    return entry.value


def _eval_natrec(env, t):
    return do_natrec(Closure(env, t.motive), evaluate(env, t.zcase),
                     Closure(env, t.scase), evaluate(env, t.scrutinee),
                     t.names)


def _eval_j(env, t):
    return do_j(evaluate(env, t.type), evaluate(env, t.base),
                Closure(env, t.motive), evaluate(env, t.refl_case),
                evaluate(env, t.endpoint), evaluate(env, t.path), t.names)


def _eval_qelim(env, t):
    return do_qelim(evaluate(env, t.carrier), evaluate(env, t.relation),
                    Closure(env, t.motive), Closure(env, t.point_case),
                    Closure(env, t.coh_case), evaluate(env, t.scrutinee),
                    t.names)


def _eval_succ(env, t):
    depth = 0
    while isinstance(t, S.Succ):
        depth += 1
        t = t.pred
    value = evaluate(env, t)
    for _ in range(depth):
        value = VSucc(value)
    return value


_EVAL_RULES = {
    S.Var: lambda env, t: env.lookup(t.index),
    S.Universe: lambda env, t: VUniverse(t.level),
    S.Pi: lambda env, t: VPi(evaluate(env, t.domain),
                             Closure(env, t.codomain), t.name),
    S.Lam: lambda env, t: VLam(Closure(env, t.body), t.name),
    S.App: lambda env, t: apply_value(evaluate(env, t.fn),
                                      evaluate(env, t.arg)),
    S.Sigma: lambda env, t: VSigma(evaluate(env, t.first),
                                   Closure(env, t.second), t.name),
    S.Pair: lambda env, t: VPair(evaluate(env, t.first),
                                 evaluate(env, t.second)),
    S.Fst: lambda env, t: do_fst(evaluate(env, t.pair)),
    S.Snd: lambda env, t: do_snd(evaluate(env, t.pair)),
    S.Nat: lambda env, t: VNat(),
    S.Zero: lambda env, t: VZero(),
    S.Succ: _eval_succ,
    S.NatRec: _eval_natrec,
    S.Unit: lambda env, t: VUnit(),
    S.Star: lambda env, t: VStar(),
    S.Id: lambda env, t: VId(evaluate(env, t.type), evaluate(env, t.lhs),
                             evaluate(env, t.rhs)),
    S.Refl: lambda env, t: VRefl(evaluate(env, t.type),
                                 evaluate(env, t.point)),
    S.J: _eval_j,
    S.Quot: lambda env, t: VQuot(evaluate(env, t.carrier),
                                 evaluate(env, t.relation)),
    S.QMk: lambda env, t: VQMk(evaluate(env, t.carrier),
                               evaluate(env, t.relation),
                               evaluate(env, t.point)),
    S.QPath: lambda env, t: VQPath(evaluate(env, t.carrier),
                                   evaluate(env, t.relation),
                                   evaluate(env, t.lhs),
                                   evaluate(env, t.rhs),
                                   evaluate(env, t.witness)),
    S.QElim: _eval_qelim,
    S.Ref: _eval_ref,
}


def apply_value(fn, arg):
    if isinstance(fn, VLam):
        return fn.body.apply(arg)
    if isinstance(fn, VNeutral):
        return fn.push(FApp(arg))
    raise InternalError("cannot apply %s" % type(fn).__name__)


def do_fst(pair):
    if isinstance(pair, VPair):
        return pair.first
    if isinstance(pair, VNeutral):
        return pair.push(FFst())
    raise InternalError("cannot project from %s" % type(pair).__name__)


def do_snd(pair):
    if isinstance(pair, VPair):
        return pair.second
    if isinstance(pair, VNeutral):
        return pair.push(FSnd())
    raise InternalError("cannot project from %s" % type(pair).__name__)


def do_natrec(motive, zcase, scase, scrutinee, names=("n", "k", "r")):
    preds = []
    while isinstance(scrutinee, VSucc):
        preds.append(scrutinee.pred)
        scrutinee = scrutinee.pred
    if isinstance(scrutinee, VZero):
        result = zcase
    elif isinstance(scrutinee, VNeutral):
        result = scrutinee.push(FNatRec(motive, zcase, scase, names))
    else:
        raise InternalError("natrec on %s" % type(scrutinee).__name__)
    for pred in reversed(preds):
        result = scase.apply(pred, result)
    return result


def do_j(type, base, motive, refl_case, endpoint, path, names=("y", "p")):
    if isinstance(path, VRefl):
        return refl_case
    frame = FJ(type, base, motive, refl_case, endpoint, names)
    if isinstance(path, VNeutral):
        return path.push(frame)
    if isinstance(path, VQPath):
        return VNeutral(HStuckPath(path), (frame,))
    raise InternalError("J on %s" % path.__class__.__name__)


def do_qelim(carrier, relation, motive, point_case, coh_case, scrutinee,
             names=("x", "a", "a", "b", "r")):
    if isinstance(scrutinee, VQMk):
        return point_case.apply(scrutinee.point)
    if isinstance(scrutinee, VNeutral):
        return scrutinee.push(FQElim(carrier, relation, motive, point_case,
                                     coh_case, names))
    raise InternalError("qelim on %s" % type(scrutinee).__name__)


def kernel_transport(carrier, relation, motive, value, lhs, rhs, path):
    """Transport `value` along `path` in the quotient family `motive`.

    This is the fixed expansion ``J (quot A R) (qmk a) (y p. P y) value
    (qmk b) path`` used in the type of a quotient eliminator's coherence
    case. `motive` binds one variable; it is weakened to bind ``y p``.
    """
    family = Closure(motive.env, S.shift(motive.body, 1))
    return do_j(VQuot(carrier, relation), VQMk(carrier, relation, lhs),
                family, value, VQMk(carrier, relation, rhs), path)


def coherence_type(carrier, relation, motive, point_case, a, b, r):
    """The type a quotient eliminator's coherence case has at ``a b r``."""
    path = VQPath(carrier, relation, a, b, r)
    moved = kernel_transport(carrier, relation, motive, point_case.apply(a),
                             a, b, path)
    return VId(motive.apply(VQMk(carrier, relation, b)), moved,
               point_case.apply(b))


def _relation_at(relation, lhs, rhs):
    return apply_value(apply_value(relation, lhs), rhs)


# Untyped readback

def readback(depth, value):
    """Read `value` back into a beta-normal term under `depth` binders.

    Lambdas come back unannotated and neutrals are not eta-expanded; see
    :func:`reify` for the type-directed, eta-long variant.
    """
    v = value
    if isinstance(v, VNeutral):
        return _readback_neutral(depth, v)
    if isinstance(v, VUniverse):
        return S.Universe(v.level)
    if isinstance(v, VPi):
        x = fresh(depth, v.name)
        return S.Pi(readback(depth, v.domain),
                    readback(depth + 1, v.codomain.apply(x)), v.name)
    if isinstance(v, VLam):
        x = fresh(depth, v.name)
        return S.Lam(None, readback(depth + 1, v.body.apply(x)), v.name)
    if isinstance(v, VSigma):
        x = fresh(depth, v.name)
        return S.Sigma(readback(depth, v.first),
                       readback(depth + 1, v.second.apply(x)), v.name)
    if isinstance(v, VPair):
        return S.Pair(readback(depth, v.first), readback(depth, v.second))
    if isinstance(v, VNat):
        return S.Nat()
    if isinstance(v, VZero):
        return S.Zero()
    if isinstance(v, VSucc):
        count = 0
        while isinstance(v, VSucc):
            count += 1
            v = v.pred
        term = readback(depth, v)
        for _ in range(count):
            term = S.Succ(term)
        return term
    if isinstance(v, VUnit):
        return S.Unit()
    if isinstance(v, VStar):
        return S.Star()
    if isinstance(v, VId):
        return S.Id(readback(depth, v.type), readback(depth, v.lhs),
                    readback(depth, v.rhs))
    if isinstance(v, VRefl):
        return S.Refl(readback(depth, v.type), readback(depth, v.point))
    if isinstance(v, VQuot):
        return S.Quot(readback(depth, v.carrier),
                      readback(depth, v.relation))
    if isinstance(v, VQMk):
        return S.QMk(readback(depth, v.carrier), readback(depth, v.relation),
                     readback(depth, v.point))
    if isinstance(v, VQPath):
        return S.QPath(readback(depth, v.carrier),
                       readback(depth, v.relation),
                       readback(depth, v.lhs), readback(depth, v.rhs),
                       readback(depth, v.witness))
    raise InternalError("cannot read back %r" % (v,))


def _readback_head(depth, head):
    if isinstance(head, HVar):
        return S.Var(depth - 1 - head.level, head.name)
    if isinstance(head, HAxiom):
        return S.Ref(head.name)
    return readback(depth, head.path)


def _readback_neutral(depth, neutral):
    term = _readback_head(depth, neutral.head)
    for frame in neutral.spine:
        if isinstance(frame, FApp):
            term = S.App(term, readback(depth, frame.arg))
        elif isinstance(frame, FFst):
            term = S.Fst(term)
        elif isinstance(frame, FSnd):
            term = S.Snd(term)
        elif isinstance(frame, FNatRec):
            n, k, r = frame.names
            term = S.NatRec(
                readback(depth + 1, frame.motive.apply(fresh(depth, n))),
                readback(depth, frame.zcase),
                readback(depth + 2, frame.scase.apply(
                    fresh(depth, k), fresh(depth + 1, r))),
                term, frame.names)
        elif isinstance(frame, FJ):
            y, p = frame.names
            term = S.J(
                readback(depth, frame.type), readback(depth, frame.base),
                readback(depth + 2, frame.motive.apply(
                    fresh(depth, y), fresh(depth + 1, p))),
                readback(depth, frame.refl_case),
                readback(depth, frame.endpoint), term, frame.names)
        elif isinstance(frame, FQElim):
            x, a0, a, b, r = frame.names
            term = S.QElim(
                readback(depth, frame.carrier),
                readback(depth, frame.relation),
                readback(depth + 1, frame.motive.apply(fresh(depth, x))),
                readback(depth + 1,
                         frame.point_case.apply(fresh(depth, a0))),
                readback(depth + 3, frame.coh_case.apply(
                    fresh(depth, a), fresh(depth + 1, b),
                    fresh(depth + 2, r))),
                term, frame.names)
        else:
            raise InternalError("unknown frame %r" % (frame,))
    return term


# Type-directed readback

def reify(ctx, value, type):
    """Read `value` back as an eta-long normal inhabitant of `type`.

    Parameters
    ----------
    ctx : context
        Anything with ``globals`` and ``types`` (the types of the local
        variables, outermost first), such as
        :class:`hitkernel.typechecker.Context`.
    value, type : :class:`Value`

    Returns
    -------
    :class:`hitkernel.syntax.CoreTerm`
    """
    return _reify(ctx.globals, tuple(ctx.types), value, type)


def reify_type(ctx, value):
    """Read back a type value; components are reified at their types."""
    return _reify_type(ctx.globals, tuple(ctx.types), value)


def _reify(gl, types, v, ty):
    if isinstance(ty, VPi):
        name = v.name if isinstance(v, VLam) else ty.name
        x = fresh(len(types), name)
        body = _reify(gl, types + (ty.domain,), apply_value(v, x),
                      ty.codomain.apply(x))
        return S.Lam(_reify_type(gl, types, ty.domain), body, name)
    if isinstance(ty, VSigma):
        first = do_fst(v)
        return S.Pair(_reify(gl, types, first, ty.first),
                      _reify(gl, types, do_snd(v), ty.second.apply(first)))
    if isinstance(ty, VUnit):
        return S.Star()
    if isinstance(ty, VUniverse):
        return _reify_type(gl, types, v)
    if isinstance(v, VNeutral):
        return _reify_neutral(gl, types, v)[0]
    if isinstance(ty, VNat):
        count = 0
        while isinstance(v, VSucc):
            count += 1
            v = v.pred
        term = _reify(gl, types, v, ty) if count else readback(len(types), v)
        for _ in range(count):
            term = S.Succ(term)
        return term
    if isinstance(ty, VId):
        if isinstance(v, VRefl):
            return S.Refl(_reify_type(gl, types, v.type),
                          _reify(gl, types, v.point, v.type))
        if isinstance(v, VQPath):
            return _reify_qpath(gl, types, v)
    if isinstance(ty, VQuot) and isinstance(v, VQMk):
        return S.QMk(_reify_type(gl, types, v.carrier),
                     _reify(gl, types, v.relation,
                            relation_type(v.carrier, gl)),
                     _reify(gl, types, v.point, v.carrier))
    return readback(len(types), v)


def _reify_qpath(gl, types, p):
    return S.QPath(_reify_type(gl, types, p.carrier),
                   _reify(gl, types, p.relation,
                          relation_type(p.carrier, gl)),
                   _reify(gl, types, p.lhs, p.carrier),
                   _reify(gl, types, p.rhs, p.carrier),
                   _reify(gl, types, p.witness,
                          _relation_at(p.relation, p.lhs, p.rhs)))


def _reify_type(gl, types, v):
    if isinstance(v, VUniverse):
        return S.Universe(v.level)
    if isinstance(v, VPi):
        x = fresh(len(types), v.name)
        return S.Pi(_reify_type(gl, types, v.domain),
                    _reify_type(gl, types + (v.domain,), v.codomain.apply(x)),
                    v.name)
    if isinstance(v, VSigma):
        x = fresh(len(types), v.name)
        return S.Sigma(_reify_type(gl, types, v.first),
                       _reify_type(gl, types + (v.first,),
                                   v.second.apply(x)),
                       v.name)
    if isinstance(v, VNat):
        return S.Nat()
    if isinstance(v, VUnit):
        return S.Unit()
    if isinstance(v, VId):
        return S.Id(_reify_type(gl, types, v.type),
                    _reify(gl, types, v.lhs, v.type),
                    _reify(gl, types, v.rhs, v.type))
    if isinstance(v, VQuot):
        return S.Quot(_reify_type(gl, types, v.carrier),
                      _reify(gl, types, v.relation,
                             relation_type(v.carrier, gl)))
    if isinstance(v, VNeutral):
        return _reify_neutral(gl, types, v)[0]
    return readback(len(types), v)


def _head_type(gl, types, head):
    if isinstance(head, HVar):
        return types[head.level]
    if isinstance(head, HAxiom):
        return gl[head.name].type
    p = head.path
    return VId(VQuot(p.carrier, p.relation),
               VQMk(p.carrier, p.relation, p.lhs),
               VQMk(p.carrier, p.relation, p.rhs))


def _reify_neutral(gl, types, neutral):
    """Reify a neutral value; also returns its type."""
    depth = len(types)
    head = neutral.head
    if isinstance(head, HStuckPath):
        term = _reify_qpath(gl, types, head.path)
    else:
        term = _readback_head(depth, head)
    ty = _head_type(gl, types, head)
    for i, frame in enumerate(neutral.spine):
        current = VNeutral(head, neutral.spine[:i])
        if isinstance(frame, FApp):
            if not isinstance(ty, VPi):
                raise InternalError("application frame at a non-function")
            term = S.App(term, _reify(gl, types, frame.arg, ty.domain))
            ty = ty.codomain.apply(frame.arg)
        elif isinstance(frame, FFst):
            if not isinstance(ty, VSigma):
                raise InternalError("projection frame at a non-pair")
            term = S.Fst(term)
            ty = ty.first
        elif isinstance(frame, FSnd):
            if not isinstance(ty, VSigma):
                raise InternalError("projection frame at a non-pair")
            term = S.Snd(term)
            ty = ty.second.apply(do_fst(current))
        elif isinstance(frame, FNatRec):
            term = S.NatRec(*_reify_natrec_cases(gl, types, frame),
                            scrutinee=term, names=frame.names)
            ty = frame.motive.apply(current)
        elif isinstance(frame, FJ):
            term = S.J(*_reify_j_cases(gl, types, frame), path=term,
                       names=frame.names)
            ty = frame.motive.apply(frame.endpoint, current)
        elif isinstance(frame, FQElim):
            term = S.QElim(*_reify_qelim_cases(gl, types, frame),
                           scrutinee=term, names=frame.names)
            ty = frame.motive.apply(current)
        else:
            raise InternalError("unknown frame %r" % (frame,))
    return term, ty


def _reify_natrec_cases(gl, types, frame):
    depth = len(types)
    n, k, r = frame.names
    motive = frame.motive
    x = fresh(depth, n)
    motive_body = _reify_type(gl, types + (VNat(),), motive.apply(x))
    zcase = _reify(gl, types, frame.zcase, motive.apply(VZero()))
    kv, rv = fresh(depth, k), fresh(depth + 1, r)
    scase = _reify(gl, types + (VNat(), motive.apply(kv)),
                   frame.scase.apply(kv, rv), motive.apply(VSucc(kv)))
    return motive_body, zcase, scase


def _reify_j_cases(gl, types, frame):
    depth = len(types)
    y, p = frame.names
    A, base = frame.type, frame.base
    yv, pv = fresh(depth, y), fresh(depth + 1, p)
    motive_body = _reify_type(gl, types + (A, VId(A, base, yv)),
                              frame.motive.apply(yv, pv))
    refl_case = _reify(gl, types, frame.refl_case,
                       frame.motive.apply(base, VRefl(A, base)))
    return (_reify_type(gl, types, A), _reify(gl, types, base, A),
            motive_body, refl_case, _reify(gl, types, frame.endpoint, A))


def _reify_qelim_cases(gl, types, frame):
    depth = len(types)
    x, a0, a, b, r = frame.names
    A, R, P = frame.carrier, frame.relation, frame.motive
    xv = fresh(depth, x)
    motive_body = _reify_type(gl, types + (VQuot(A, R),), P.apply(xv))
    av = fresh(depth, a0)
    point_case = _reify(gl, types + (A,), frame.point_case.apply(av),
                        P.apply(VQMk(A, R, av)))
    av, bv, rv = fresh(depth, a), fresh(depth + 1, b), fresh(depth + 2, r)
    coh_types = types + (A, A, _relation_at(R, av, bv))
    coh_case = _reify(gl, coh_types, frame.coh_case.apply(av, bv, rv),
                      coherence_type(A, R, P, frame.point_case, av, bv, rv))
    return (_reify_type(gl, types, A),
            _reify(gl, types, R, relation_type(A, gl)),
            motive_body, point_case, coh_case)


# Conversion

def convertible(ctx, v, w, at_type):
    """Decide whether `v` and `w` are definitionally equal at `at_type`.

    Parameters
    ----------
    ctx : context
        Anything with ``globals`` and ``types``.
    v, w : :class:`Value`
        Both inhabit `at_type` in `ctx`.
    at_type : :class:`Value`

    Returns
    -------
    bool
    """
    return _conv(ctx.globals, tuple(ctx.types), v, w, at_type)


def convertible_types(ctx, a, b):
    """Decide whether two type values are definitionally equal."""
    return _conv_type(ctx.globals, tuple(ctx.types), a, b)


def subtype(ctx, a, b):
    """Whether type `a` is accepted where `b` is expected.

    Universes are cumulative, Pi types are covariant in their codomain and
    Sigma types in both components; otherwise this is conversion.
    """
    return _subtype(ctx.globals, tuple(ctx.types), a, b)


def _subtype(gl, types, a, b):
    if isinstance(a, VUniverse) and isinstance(b, VUniverse):
        return a.level <= b.level
    if isinstance(a, VPi) and isinstance(b, VPi):
        if not _conv_type(gl, types, a.domain, b.domain):
            return False
        x = fresh(len(types), a.name)
        return _subtype(gl, types + (a.domain,), a.codomain.apply(x),
                        b.codomain.apply(x))
    if isinstance(a, VSigma) and isinstance(b, VSigma):
        if not _subtype(gl, types, a.first, b.first):
            return False
        x = fresh(len(types), a.name)
        return _subtype(gl, types + (a.first,), a.second.apply(x),
                        b.second.apply(x))
    return _conv_type(gl, types, a, b)


def _conv(gl, types, v, w, ty):
    if isinstance(ty, VPi):
        x = fresh(len(types), ty.name)
        return _conv(gl, types + (ty.domain,), apply_value(v, x),
                     apply_value(w, x), ty.codomain.apply(x))
    if isinstance(ty, VSigma):
        v1, w1 = do_fst(v), do_fst(w)
        return (_conv(gl, types, v1, w1, ty.first) and
                _conv(gl, types, do_snd(v), do_snd(w), ty.second.apply(v1)))
    if isinstance(ty, VUnit):
        return True
    if isinstance(ty, VUniverse):
        return _conv_type(gl, types, v, w)
    if isinstance(v, VNeutral) and isinstance(w, VNeutral):
        return _conv_neutral(gl, types, v, w) is not None
    if isinstance(ty, VNat):
        while isinstance(v, VSucc) and isinstance(w, VSucc):
            v, w = v.pred, w.pred
        if isinstance(v, VZero) and isinstance(w, VZero):
            return True
        if isinstance(v, VNeutral) and isinstance(w, VNeutral):
            return _conv_neutral(gl, types, v, w) is not None
        return False
    if isinstance(ty, VId):
        if isinstance(v, VRefl) and isinstance(w, VRefl):
            return True
        if isinstance(v, VQPath) and isinstance(w, VQPath):
            return _conv_qpath(gl, types, v, w)
        return False
    if isinstance(ty, VQuot):
        if isinstance(v, VQMk) and isinstance(w, VQMk):
            return _conv(gl, types, v.point, w.point, ty.carrier)
        return False
    if isinstance(v, VNeutral) or isinstance(w, VNeutral):
        return False
    depth = len(types)
    return readback(depth, v) == readback(depth, w)


def _conv_qpath(gl, types, p, q):
    return (_conv_type(gl, types, p.carrier, q.carrier) and
            _conv(gl, types, p.relation, q.relation,
                  relation_type(p.carrier, gl)) and
            _conv(gl, types, p.lhs, q.lhs, p.carrier) and
            _conv(gl, types, p.rhs, q.rhs, p.carrier) and
            _conv(gl, types, p.witness, q.witness,
                  _relation_at(p.relation, p.lhs, p.rhs)))


def _conv_type(gl, types, a, b):
    if isinstance(a, VNeutral) and isinstance(b, VNeutral):
        return _conv_neutral(gl, types, a, b) is not None
    if type(a) is not type(b):
        return False
    if isinstance(a, VUniverse):
        return a.level == b.level
    if isinstance(a, (VNat, VUnit)):
        return True
    if isinstance(a, VPi):
        if not _conv_type(gl, types, a.domain, b.domain):
            return False
        x = fresh(len(types), a.name)
        return _conv_type(gl, types + (a.domain,), a.codomain.apply(x),
                          b.codomain.apply(x))
    if isinstance(a, VSigma):
        if not _conv_type(gl, types, a.first, b.first):
            return False
        x = fresh(len(types), a.name)
        return _conv_type(gl, types + (a.first,), a.second.apply(x),
                          b.second.apply(x))
    if isinstance(a, VId):
        return (_conv_type(gl, types, a.type, b.type) and
                _conv(gl, types, a.lhs, b.lhs, a.type) and
                _conv(gl, types, a.rhs, b.rhs, a.type))
    if isinstance(a, VQuot):
        return (_conv_type(gl, types, a.carrier, b.carrier) and
                _conv(gl, types, a.relation, b.relation,
                      relation_type(a.carrier, gl)))
    return False


def _conv_heads(gl, types, h1, h2):
    """The type of two equal heads, or None."""
    if isinstance(h1, HVar) and isinstance(h2, HVar):
        if h1.level == h2.level:
            return types[h1.level]
        return None
    if isinstance(h1, HAxiom) and isinstance(h2, HAxiom):
        if h1.name == h2.name:
            return gl[h1.name].type
        return None
    if isinstance(h1, HStuckPath) and isinstance(h2, HStuckPath):
        if _conv_qpath(gl, types, h1.path, h2.path):
            return _head_type(gl, types, h1)
    return None


def _conv_neutral(gl, types, n1, n2):
    """Compare two neutrals; returns their common type, or None."""
    if len(n1.spine) != len(n2.spine):
        return None
    ty = _conv_heads(gl, types, n1.head, n2.head)
    if ty is None:
        return None
    depth = len(types)
    for i, (f1, f2) in enumerate(zip(n1.spine, n2.spine)):
        current = VNeutral(n1.head, n1.spine[:i])
        if type(f1) is not type(f2):
            return None
        if isinstance(f1, FApp):
            if not isinstance(ty, VPi):
                raise InternalError("application frame at a non-function")
            if not _conv(gl, types, f1.arg, f2.arg, ty.domain):
                return None
            ty = ty.codomain.apply(f1.arg)
        elif isinstance(f1, FFst):
            ty = ty.first
        elif isinstance(f1, FSnd):
            ty = ty.second.apply(do_fst(current))
        elif isinstance(f1, FNatRec):
            m1, m2 = f1.motive, f2.motive
            x = fresh(depth)
            if not _conv_type(gl, types + (VNat(),), m1.apply(x),
                              m2.apply(x)):
                return None
            if not _conv(gl, types, f1.zcase, f2.zcase, m1.apply(VZero())):
                return None
            k, r = fresh(depth), fresh(depth + 1)
            if not _conv(gl, types + (VNat(), m1.apply(k)),
                         f1.scase.apply(k, r), f2.scase.apply(k, r),
                         m1.apply(VSucc(k))):
                return None
            ty = m1.apply(current)
        elif isinstance(f1, FJ):
            A, base = f1.type, f1.base
            if not (_conv_type(gl, types, A, f2.type) and
                    _conv(gl, types, base, f2.base, A)):
                return None
            y, p = fresh(depth), fresh(depth + 1)
            if not _conv_type(gl, types + (A, VId(A, base, y)),
                              f1.motive.apply(y, p), f2.motive.apply(y, p)):
                return None
            if not _conv(gl, types, f1.refl_case, f2.refl_case,
                         f1.motive.apply(base, VRefl(A, base))):
                return None
            if not _conv(gl, types, f1.endpoint, f2.endpoint, A):
                return None
            ty = f1.motive.apply(f1.endpoint, current)
        elif isinstance(f1, FQElim):
            if not _conv_qelim_frames(gl, types, f1, f2):
                return None
            ty = f1.motive.apply(current)
        else:
            raise InternalError("unknown frame %r" % (f1,))
    return ty


def _conv_qelim_frames(gl, types, f1, f2):
    depth = len(types)
    A, R, P = f1.carrier, f1.relation, f1.motive
    if not (_conv_type(gl, types, A, f2.carrier) and
            _conv(gl, types, R, f2.relation, relation_type(A, gl))):
        return False
    x = fresh(depth)
    if not _conv_type(gl, types + (VQuot(A, R),), P.apply(x),
                      f2.motive.apply(x)):
        return False
    a = fresh(depth)
    if not _conv(gl, types + (A,), f1.point_case.apply(a),
                 f2.point_case.apply(a), P.apply(VQMk(A, R, a))):
        return False
    a, b, r = fresh(depth), fresh(depth + 1), fresh(depth + 2)
    return _conv(gl, types + (A, A, _relation_at(R, a, b)),
                 f1.coh_case.apply(a, b, r), f2.coh_case.apply(a, b, r),
                 coherence_type(A, R, P, f1.point_case, a, b, r))


def normalize(ctx, term, type=None):
    """Normalize a checked term: evaluate it and reify at its type.

    Parameters
    ----------
    ctx : :class:`hitkernel.typechecker.Context`
    term : :class:`hitkernel.syntax.CoreTerm`
        A term that checks in `ctx`.
    type : :class:`Value`, optional
        The type of `term`; inferred when omitted.

    Returns
    -------
    :class:`hitkernel.syntax.CoreTerm`
        The beta-normal, eta-long form of `term`.
    """
    if type is None:
        from .typechecker import infer
        type = infer(ctx, term)
    value = evaluate(ctx.environment(), term)
    return reify(ctx, value, type)
