import pytest
from hypothesis import given, settings, strategies as st

from hitkernel import syntax as S


ADD = ("def add : Nat -> Nat -> Nat := "
       "fun m n => natrec (fun _ => Nat) m (fun _ r => succ r) n\n")

UNIT_QUOT = "quot Nat (fun _ _ => Unit)"

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def run(source):
    """Check `source` declaration by declaration.

    Returns the final environment and the outputs of the directives.
    """
    from hitkernel.frontend import elaborate, parse_source
    from hitkernel.normalizer import GlobalEnv
    from hitkernel.typechecker import check_declaration
    env = GlobalEnv()
    outputs = []
    for decl in parse_source(source, "test.hk").declarations:
        env, output = check_declaration(env, elaborate(decl, env))
        if output is not None:
            outputs.append(output)
    return env, outputs


def error_code(source):
    from hitkernel.diagnostics import HitKernelError
    with pytest.raises(HitKernelError) as excinfo:
        run(source)
    return excinfo.value.code


class TestDirectives:
    def test_check_reports_type(self):
        _, outputs = run("def two : Nat := 2\n#check two")
        assert outputs == ["two : Nat"]

    def test_check_shows_declared_type_of_globals(self):
        _, outputs = run("def Pred : Type1 := Nat -> Type0\n"
                         "def Even : Pred := fun n => Unit\n"
                         "#check Even\n"
                         "#check Even 2")
        assert outputs == ["Even : Pred", "Even 2 : Type0"]

    def test_check_universe(self):
        _, outputs = run("#check Type0")
        assert outputs == ["Type0 : Type1"]

    def test_normalize(self):
        _, outputs = run(ADD + "#normalize add 2 2")
        assert outputs == ["4"]

    def test_assert_defeq_passes(self):
        env, outputs = run(ADD + "#assert_defeq (add 2 2) 4 : Nat")
        assert outputs == []
        assert "add" in env

    def test_assert_defeq_with_telescope(self):
        run("#assert_defeq (f : Nat -> Nat) f (fun x => f x) : Nat -> Nat")

    def test_assert_defeq_fails(self):
        from hitkernel.diagnostics import E_ASSERT
        assert error_code(ADD + "#assert_defeq (add 2 2) 5 : Nat") == \
            E_ASSERT

    def test_assert_type_failure_is_assert(self):
        from hitkernel.diagnostics import E_ASSERT
        assert error_code("#assert_type star : Nat") == E_ASSERT

    def test_assert_type_keeps_other_codes(self):
        from hitkernel.diagnostics import E_NOTPAIR
        assert error_code("#assert_type fst 2 : Nat") == E_NOTPAIR

    def test_assert_type_quotient_path(self):
        run("#assert_type qpath Nat (fun _ _ => Unit) 0 1 star : "
            "Id (%s) (qmk Nat (fun _ _ => Unit) 0) "
            "(qmk Nat (fun _ _ => Unit) 1)" % UNIT_QUOT)

    def test_directives_do_not_extend_environment(self):
        env, _ = run("#check (x : Nat) x")
        assert len(env) == 0

    def test_error_location_is_the_directive(self):
        from hitkernel.diagnostics import HitKernelError
        with pytest.raises(HitKernelError) as excinfo:
            run("def two : Nat := 2\n\n#assert_defeq two 3 : Nat")
        assert excinfo.value.span.line == 3
        assert excinfo.value.span.file == "test.hk"


@pytest.mark.parametrize("source, code", [
    ("def x : Nat := y", "E-UNBOUND"),
    ("def x : Nat := star", "E-MISMATCH"),
    ("def f : Nat := 2\n#check f 1", "E-NOTFN"),
    ("#check fst 2", "E-NOTPAIR"),
    ("#check fun x => x", "E-NOINFER"),
    ("def x : Nat := 1\ndef x : Nat := 2", "E-DUP"),
    ("#check Type5", "E-UNIVERSE"),
    ("def T : Type0 := Type0", "E-MISMATCH"),
    ("def f : Nat -> Nat := fun (x : Unit) => 0", "E-MISMATCH"),
    ("#check refl Nat star", "E-MISMATCH"),
    ("#check J Nat 0 (fun _ _ => Nat) 1 1 (refl Nat 0)", "E-MISMATCH"),
    ("#check qmk Nat (fun _ => Unit) 0", "E-MISMATCH"),
    ("def x : Nat := let y : Unit := fst 2 in 0", "E-NOTPAIR"),
    ("def x : Nat := let y : Unit := 3 in 0", "E-MISMATCH"),
    ("#check let y : Type0 := star in 0", "E-MISMATCH"),
])
def test_errors(source, code):
    assert error_code(source) == code


def test_let_values_stay_transparent():
    _, outputs = run("def p : Id Nat 2 2 := let x : Nat := 2 in refl Nat x\n"
                     "#check let x : Nat := 1 in succ x\n"
                     "#normalize let x : Nat := 1 in succ x")
    assert outputs[0].endswith(" : Nat")
    assert outputs[1] == "2"


def test_universe_cumulativity():
    run("def T : Type1 := Nat\n"
        "def F : Type0 -> Type1 := fun A => A")


def test_sigma_and_projections():
    env, outputs = run("def p : (n : Nat) * Id Nat n n := (3, refl Nat 3)\n"
                       "#normalize fst p\n"
                       "#assert_type snd p : Id Nat 3 3")
    assert outputs == ["3"]


def test_dependent_natrec():
    run(ADD +
        "def add_zero : (n : Nat) -> Id Nat (add 0 n) n := fun n => "
        "natrec (fun k => Id Nat (add 0 k) k) (refl Nat 0) "
        "(fun k r => J Nat (add 0 k) (fun y _ => Id Nat (succ (add 0 k)) "
        "(succ y)) (refl Nat (succ (add 0 k))) k r) n")


def test_j_checks_motive_at_refl():
    run("def sym : (A : Type0) (a b : A) -> Id A a b -> Id A b a := "
        "fun A a b p => J A a (fun y _ => Id A y a) (refl A a) b p")


def test_qelim_into_unit_family():
    run("def f : %s -> Unit := fun q => qelim Nat (fun _ _ => Unit) "
        "(fun _ => Unit) (fun _ => star) (fun _ _ _ => refl Unit star) q"
        % UNIT_QUOT)


def test_qelim_rejects_incoherent_family():
    from hitkernel.diagnostics import E_MISMATCH
    assert error_code(
        "def f : %s -> Nat := fun q => qelim Nat (fun _ _ => Unit) "
        "(fun _ => Nat) (fun a => a) (fun a b r => refl Nat a) q"
        % UNIT_QUOT) == E_MISMATCH


def test_qelim_accepts_assumed_coherence():
    rel = "(fun _ _ => Unit)"
    run("axiom e : (a b : Nat) (r : Unit) -> Id Nat "
        "(J (%s) (qmk Nat %s a) (fun _ _ => Nat) 0 (qmk Nat %s b) "
        "(qpath Nat %s a b r)) 0\n"
        "def f : %s -> Nat := fun q => qelim Nat %s (fun _ => Nat) "
        "(fun _ => 0) (fun a b r => e a b r) q\n"
        "#assert_defeq (f (qmk Nat %s 5)) 0 : Nat"
        % ((UNIT_QUOT,) + (rel,) * 3 + (UNIT_QUOT,) + (rel,) * 2))


class TestAxiomAudit:
    source = ("axiom ax : Nat\n"
              "def d : Nat := succ ax\n"
              "def d2 : Nat := succ d\n"
              "def e : Nat := 3\n")

    def test_definitions(self):
        from hitkernel.typechecker import axiom_audit
        env, _ = run(self.source)
        assert axiom_audit(env, "d") == frozenset(["ax"])
        assert axiom_audit(env, "d2") == frozenset(["ax"])
        assert axiom_audit(env, "e") == frozenset()

    def test_axiom_includes_itself(self):
        from hitkernel.typechecker import axiom_audit
        env, _ = run(self.source)
        assert axiom_audit(env, "ax") == frozenset(["ax"])

    def test_unknown_name(self):
        from hitkernel.diagnostics import HitKernelError, E_UNBOUND
        from hitkernel.typechecker import axiom_audit
        env, _ = run(self.source)
        with pytest.raises(HitKernelError) as excinfo:
            axiom_audit(env, "missing")
        assert excinfo.value.code == E_UNBOUND


class TestContext:
    def test_bind_is_persistent(self):
        from hitkernel.normalizer import VNat
        from hitkernel.typechecker import Context
        ctx = Context()
        inner = ctx.bind("n", VNat())
        assert len(ctx) == 0 and len(inner) == 1
        assert inner.names == ("n",)

    def test_show_uses_names(self):
        from hitkernel.normalizer import VNat
        from hitkernel.typechecker import Context
        ctx = Context().bind("n", VNat())
        assert ctx.show(S.Succ(S.Var(0))) == "succ n"

    def test_infer_variable(self):
        from hitkernel.normalizer import VNat
        from hitkernel.typechecker import Context, infer
        ctx = Context().bind("n", VNat())
        assert isinstance(infer(ctx, S.Var(0)), VNat)

    def test_check_lambda_against_non_function(self):
        from hitkernel.diagnostics import HitKernelError, E_MISMATCH
        from hitkernel.normalizer import VNat
        from hitkernel.typechecker import Context, check
        with pytest.raises(HitKernelError) as excinfo:
            check(Context(), S.Lam(None, S.Var(0)), VNat())
        assert excinfo.value.code == E_MISMATCH

    def test_check_type_rejects_terms(self):
        from hitkernel.diagnostics import HitKernelError, E_MISMATCH
        from hitkernel.typechecker import Context, check_type
        with pytest.raises(HitKernelError) as excinfo:
            check_type(Context(), S.Zero())
        assert excinfo.value.code == E_MISMATCH


def _open_context():
    from hitkernel.generators import OPEN_SCOPE
    from hitkernel.typechecker import Context
    ctx = Context()
    for i, type in enumerate(OPEN_SCOPE):
        ctx = ctx.bind("v%d" % i, ctx.eval(type))
    return ctx


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_substitution_preserves_types(seed):
    from hitkernel.generators import OPEN_SCOPE, TermGenerator
    from hitkernel.random import seeded
    from hitkernel.typechecker import Context, check
    gen = TermGenerator(seeded(seed))
    type = gen.type(2)
    term = gen.term(type, OPEN_SCOPE, 3)
    value = gen.term(OPEN_SCOPE[-1], OPEN_SCOPE[:-1], 2)
    outer = Context()
    for i, t in enumerate(OPEN_SCOPE[:-1]):
        outer = outer.bind("v%d" % i, outer.eval(t))
    check(_open_context(), term, outer.eval(type))
    check(outer, S.instantiate(term, [value]), outer.eval(type))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_infer_is_deterministic(seed):
    from hitkernel.generators import OPEN_SCOPE, TermGenerator
    from hitkernel.normalizer import reify_type
    from hitkernel.random import seeded
    from hitkernel.typechecker import infer
    gen = TermGenerator(seeded(seed))
    type = gen.type(2)
    # an annotated identity makes any generated term inferable
    term = S.App(S.Lam(type, S.Var(0), "x"),
                 gen.term(type, OPEN_SCOPE, 3))
    ctx = _open_context()
    first = reify_type(ctx, infer(ctx, term))
    second = reify_type(ctx, infer(ctx, term))
    assert first == second == type
    assert reify_type(ctx, infer(ctx, type)) == \
        reify_type(ctx, infer(ctx, type)) == S.Universe(0)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_types_checked_in_a_universe_check_in_larger_ones(seed):
    from hitkernel.diagnostics import HitKernelError
    from hitkernel.generators import TermGenerator
    from hitkernel.normalizer import VUniverse
    from hitkernel.random import seeded
    from hitkernel.typechecker import Context, check
    gen = TermGenerator(seeded(seed))
    type = gen.type(3)
    ctx = Context()
    for level in range(3):
        check(ctx, type, VUniverse(level))
    family = S.Pi(type, S.Universe(0), "_")
    check(ctx, family, VUniverse(1))
    check(ctx, family, VUniverse(2))
    with pytest.raises(HitKernelError):
        check(ctx, family, VUniverse(0))
    # a family of types at Type0 is also one at Type1
    code = S.Lam(type, S.Nat(), "x")
    check(ctx, code, ctx.eval(family))
    check(ctx, code, ctx.eval(S.Pi(type, S.Universe(1), "_")))
