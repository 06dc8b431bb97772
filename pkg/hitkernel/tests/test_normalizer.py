import pytest

from hitkernel import syntax as S


NAT = S.Nat()
UNIT = S.Unit()
TOTAL = S.Lam(NAT, S.Lam(NAT, UNIT, "b"), "a")


def _globals(source=""):
    """The environment built by checking `source`."""
    from hitkernel.frontend import elaborate, parse_source
    from hitkernel.normalizer import GlobalEnv
    from hitkernel.typechecker import check_declaration
    env = GlobalEnv()
    for decl in parse_source(source).declarations:
        env, _ = check_declaration(env, elaborate(decl, env))
    return env


def _term(text, env=(), scope=()):
    from hitkernel.frontend import elaborate_term, lex, parse_term
    return elaborate_term(parse_term(lex(text)), env, scope)


def _ctx(env=None, **assumptions):
    """A context assuming each keyword, in order, at a type given as text."""
    from hitkernel.typechecker import Context
    ctx = Context(env)
    for name, text in assumptions.items():
        ctx = ctx.bind(name, ctx.eval(_term(text, ctx.globals, ctx.names)))
    return ctx


class TestNormalize:
    def test_beta(self):
        from hitkernel.normalizer import normalize
        from hitkernel.typechecker import Context
        term = S.App(S.Lam(NAT, S.Succ(S.Var(0))), S.numeral(2))
        assert normalize(Context(), term) == S.numeral(3)

    def test_natrec_on_numeral(self):
        from hitkernel.normalizer import normalize
        env = _globals("def add : Nat -> Nat -> Nat := "
                       "fun m n => natrec (fun _ => Nat) m "
                       "(fun _ r => succ r) n")
        ctx = _ctx(env)
        assert normalize(ctx, _term("add 2 3", env)) == S.numeral(5)

    def test_natrec_on_variable_is_stuck(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(n="Nat")
        result = normalize(ctx, _term(
            "natrec (fun _ => Nat) zero (fun _ r => succ r) (succ n)",
            scope=ctx.names))
        assert isinstance(result, S.Succ)
        assert isinstance(result.pred, S.NatRec)
        assert result.pred.scrutinee == S.Var(0)

    def test_definitions_unfold(self):
        from hitkernel.normalizer import normalize
        env = _globals("def two : Nat := 2\n"
                       "def four : Nat := succ (succ two)")
        assert normalize(_ctx(env), S.Ref("four")) == S.numeral(4)

    def test_axioms_stay_neutral(self):
        from hitkernel.normalizer import normalize
        env = _globals("axiom k : Nat")
        assert normalize(_ctx(env), _term("succ k", env)) == \
            S.Succ(S.Ref("k"))

    def test_function_eta(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(f="Nat -> Nat")
        assert normalize(ctx, S.Var(0)) == \
            S.Lam(NAT, S.App(S.Var(1), S.Var(0)))

    def test_pair_eta(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(p="Nat * Nat")
        assert normalize(ctx, S.Var(0)) == \
            S.Pair(S.Fst(S.Var(0)), S.Snd(S.Var(0)))

    def test_unit_eta(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(u="Unit")
        assert normalize(ctx, S.Var(0)) == S.Star()

    def test_j_on_refl(self):
        from hitkernel.normalizer import normalize
        from hitkernel.typechecker import Context
        term = S.J(NAT, S.Zero(), NAT, S.numeral(7), S.Zero(),
                   S.Refl(NAT, S.Zero()))
        assert normalize(Context(), term) == S.numeral(7)

    def test_j_on_variable_is_stuck(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(b="Nat", p="Id Nat zero b")
        term = S.J(NAT, S.Zero(), NAT, S.numeral(7), S.Var(1), S.Var(0))
        result = normalize(ctx, term)
        assert isinstance(result, S.J)
        assert result.path == S.Var(0)

    def test_qelim_on_qmk(self):
        from hitkernel.normalizer import normalize
        from hitkernel.typechecker import Context
        term = S.QElim(NAT, TOTAL, UNIT, S.Star(), S.Refl(UNIT, S.Star()),
                       S.QMk(NAT, TOTAL, S.numeral(2)))
        assert normalize(Context(), term) == S.Star()

    def test_j_on_quotient_path_is_stuck(self):
        from hitkernel.normalizer import normalize
        from hitkernel.typechecker import Context
        quot = S.Quot(NAT, TOTAL)
        path = S.QPath(NAT, TOTAL, S.Zero(), S.numeral(1), S.Star())
        term = S.J(quot, S.QMk(NAT, TOTAL, S.Zero()), NAT, S.numeral(5),
                   S.QMk(NAT, TOTAL, S.numeral(1)), path)
        result = normalize(Context(), term)
        assert isinstance(result, S.J)
        assert result.path == path

    def test_idempotent(self):
        from hitkernel.normalizer import normalize
        ctx = _ctx(f="Nat -> Nat * Unit")
        once = normalize(ctx, S.Var(0))
        assert normalize(ctx, once) == once


class TestConvertible:
    def test_numerals(self):
        from hitkernel.normalizer import VNat, convertible
        ctx = _ctx()
        assert convertible(ctx, ctx.eval(S.numeral(2)),
                           ctx.eval(S.numeral(2)), VNat())
        assert not convertible(ctx, ctx.eval(S.numeral(2)),
                               ctx.eval(S.numeral(3)), VNat())

    def test_distinct_variables(self):
        from hitkernel.normalizer import VNat, convertible
        ctx = _ctx(m="Nat", n="Nat")
        m, n = ctx.values
        assert convertible(ctx, m, m, VNat())
        assert not convertible(ctx, m, n, VNat())

    def test_eta_for_functions(self):
        from hitkernel.normalizer import convertible
        ctx = _ctx(f="Nat -> Nat")
        expanded = ctx.eval(S.Lam(None, S.App(S.Var(1), S.Var(0))))
        assert convertible(ctx, ctx.values[0], expanded, ctx.types[0])

    def test_eta_for_pairs(self):
        from hitkernel.normalizer import convertible
        ctx = _ctx(p="Nat * Nat")
        expanded = ctx.eval(S.Pair(S.Fst(S.Var(0)), S.Snd(S.Var(0))))
        assert convertible(ctx, expanded, ctx.values[0], ctx.types[0])

    def test_unit_values_are_equal(self):
        from hitkernel.normalizer import VStar, VUnit, convertible
        ctx = _ctx(u="Unit", v="Unit")
        u, v = ctx.values
        assert convertible(ctx, u, v, VUnit())
        assert convertible(ctx, u, VStar(), VUnit())

    def test_no_eta_for_identity_types(self):
        from hitkernel.normalizer import convertible
        ctx = _ctx(p="Id Nat zero zero")
        refl = ctx.eval(S.Refl(NAT, S.Zero()))
        assert not convertible(ctx, ctx.values[0], refl, ctx.types[0])

    def test_quotient_paths_compare_componentwise(self):
        from hitkernel.normalizer import convertible
        ctx = _ctx()
        p = S.QPath(NAT, TOTAL, S.Zero(), S.numeral(1), S.Star())
        q = S.QPath(NAT, TOTAL, S.Zero(), S.numeral(2), S.Star())
        path_type = ctx.eval(S.Id(S.Quot(NAT, TOTAL),
                                  S.QMk(NAT, TOTAL, S.Zero()),
                                  S.QMk(NAT, TOTAL, S.numeral(1))))
        assert convertible(ctx, ctx.eval(p), ctx.eval(p), path_type)
        assert not convertible(ctx, ctx.eval(p), ctx.eval(q), path_type)

    def test_kernel_transport_is_j(self):
        from hitkernel.normalizer import (Closure, VNat, convertible,
                                          kernel_transport)
        ctx = _ctx()
        path = S.QPath(NAT, TOTAL, S.Zero(), S.numeral(1), S.Star())
        j = S.J(S.Quot(NAT, TOTAL), S.QMk(NAT, TOTAL, S.Zero()), NAT,
                S.numeral(4), S.QMk(NAT, TOTAL, S.numeral(1)), path)
        moved = kernel_transport(
            VNat(), ctx.eval(TOTAL), Closure(ctx.environment(), NAT),
            ctx.eval(S.numeral(4)), ctx.eval(S.Zero()),
            ctx.eval(S.numeral(1)), ctx.eval(path))
        assert convertible(ctx, moved, ctx.eval(j), VNat())

    def test_stuck_eliminators_compare_by_spine(self):
        from hitkernel.normalizer import VNat, convertible
        ctx = _ctx(n="Nat")

        def rec(step):
            return ctx.eval(S.NatRec(NAT, S.Zero(), step, S.Var(0)))
        assert convertible(ctx, rec(S.Succ(S.Var(0))),
                           rec(S.Succ(S.Var(0))), VNat())
        assert not convertible(ctx, rec(S.Succ(S.Var(0))),
                               rec(S.Var(0)), VNat())


class TestTypes:
    def test_universes_are_cumulative(self):
        from hitkernel.normalizer import VUniverse, subtype
        ctx = _ctx()
        assert subtype(ctx, VUniverse(0), VUniverse(1))
        assert not subtype(ctx, VUniverse(1), VUniverse(0))

    def test_pi_codomain_is_covariant(self):
        from hitkernel.normalizer import subtype
        ctx = _ctx()
        small = ctx.eval(_term("Nat -> Type0"))
        large = ctx.eval(_term("Nat -> Type1"))
        assert subtype(ctx, small, large)
        assert not subtype(ctx, large, small)

    def test_convertible_types(self):
        from hitkernel.normalizer import convertible_types
        env = _globals("def N : Type0 := Nat")
        ctx = _ctx(env)
        assert convertible_types(ctx, ctx.eval(S.Ref("N")), ctx.eval(NAT))
        assert not convertible_types(ctx, ctx.eval(UNIT), ctx.eval(NAT))

    def test_reify_type_of_pi(self):
        from hitkernel.normalizer import reify_type
        ctx = _ctx()
        assert reify_type(ctx, ctx.eval(_term("(n : Nat) -> Id Nat n n"))) \
            == S.Pi(NAT, S.Id(NAT, S.Var(0), S.Var(0)))


class TestGlobalEnv:
    def test_extend_is_persistent(self):
        from hitkernel.normalizer import (AXIOM, GlobalEntry, GlobalEnv,
                                          VNat)
        env = GlobalEnv()
        entry = GlobalEntry("k", AXIOM, NAT, VNat())
        extended = env.extend(entry)
        assert "k" in extended and "k" not in env
        assert extended["k"] is entry
        assert len(extended) == 1 and extended.names() == ["k"]

    def test_extend_twice_raises(self):
        from hitkernel.diagnostics import InternalError
        from hitkernel.normalizer import (AXIOM, GlobalEntry, GlobalEnv,
                                          VNat)
        entry = GlobalEntry("k", AXIOM, NAT, VNat())
        with pytest.raises(InternalError):
            GlobalEnv().extend(entry).extend(entry)


def test_readback_leaves_lambdas_unannotated():
    from hitkernel.normalizer import readback
    ctx = _ctx()
    value = ctx.eval(S.Lam(NAT, S.Succ(S.Var(0))))
    assert readback(0, value) == S.Lam(None, S.Succ(S.Var(0)))


def test_evaluate_unknown_term_raises():
    from hitkernel.diagnostics import InternalError
    from hitkernel.normalizer import Environment, GlobalEnv, evaluate
    with pytest.raises(InternalError):
        evaluate(Environment((), GlobalEnv()), object())
