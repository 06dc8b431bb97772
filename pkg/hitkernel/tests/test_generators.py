from hypothesis import given, settings, strategies as st


seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_terms_check_against_their_types(seed):
    from hitkernel.generators import typed_terms
    from hitkernel.random import seeded
    from hitkernel.typechecker import Context, check, check_type
    ctx = Context()
    for term, type in typed_terms(5, seeded(seed)):
        check_type(ctx, type)
        check(ctx, term, ctx.eval(type))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_open_terms_check_against_their_types(seed):
    from hitkernel.generators import OPEN_SCOPE, typed_terms
    from hitkernel.random import seeded
    from hitkernel.syntax import is_well_scoped
    from hitkernel.typechecker import Context, check
    ctx = Context()
    for i, type in enumerate(OPEN_SCOPE):
        ctx = ctx.bind("v%d" % i, ctx.eval(type))
    for term, type in typed_terms(5, seeded(seed), scope=OPEN_SCOPE):
        assert is_well_scoped(term, len(OPEN_SCOPE))
        check(ctx, term, ctx.eval(type))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_programs_are_closed_numbers(seed):
    from hitkernel.generators import nat_program
    from hitkernel.normalizer import VNat
    from hitkernel.random import seeded
    from hitkernel.syntax import is_well_scoped
    from hitkernel.typechecker import Context, infer
    program = nat_program(seeded(seed))
    assert is_well_scoped(program)
    assert isinstance(infer(Context(), program), VNat)


def _simple(t):
    from hitkernel import syntax as S
    if isinstance(t, S.Pi):
        return (not S.has_free_var(t.codomain) and _simple(t.domain) and
                _simple(t.codomain))
    if isinstance(t, S.Sigma):
        return (not S.has_free_var(t.second) and _simple(t.first) and
                _simple(t.second))
    if isinstance(t, S.Id):
        return t.lhs == t.rhs and S.numeral_value(t.lhs) is not None
    return isinstance(t, (S.Nat, S.Unit, S.Quot))


def test_types_are_simple():
    from hitkernel.generators import TermGenerator
    from hitkernel.random import seeded
    gen = TermGenerator(seeded(0))
    assert all(_simple(gen.type(3)) for _ in range(50))


def test_same_seed_same_terms():
    from hitkernel.generators import typed_terms
    from hitkernel.random import seeded
    assert list(typed_terms(10, seeded(5))) == \
        list(typed_terms(10, seeded(5)))


def test_uses_variables_in_scope():
    from hitkernel import syntax as S
    from hitkernel.generators import NAT, TermGenerator
    from hitkernel.random import seeded
    gen = TermGenerator(seeded(1))
    variables = [gen.term(NAT, (NAT, S.Unit(), NAT), 0) for _ in range(100)]
    indices = set(v.index for v in variables if isinstance(v, S.Var))
    assert indices == {0, 2}


def test_draws_quotient_and_path_types():
    from hitkernel import syntax as S
    from hitkernel.generators import QUOT, TermGenerator
    from hitkernel.random import seeded
    gen = TermGenerator(seeded(0))
    types = [gen.base_type() for _ in range(200)]
    assert QUOT in types
    assert any(isinstance(t, S.Id) for t in types)


def test_introduces_quotient_points_and_loops():
    from hitkernel import syntax as S
    from hitkernel.generators import QUOT, TermGenerator
    from hitkernel.random import seeded
    gen = TermGenerator(seeded(0))
    assert isinstance(gen.intro(QUOT, (), 1), S.QMk)
    loop = S.Id(S.Nat(), S.numeral(2), S.numeral(2))
    assert gen.intro(loop, (), 1) == S.Refl(S.Nat(), S.numeral(2))


def test_stuck_eliminations():
    from hitkernel import syntax as S
    from hitkernel.generators import OPEN_SCOPE, TermGenerator
    from hitkernel.random import seeded
    gen = TermGenerator(seeded(3))
    spines = [gen.spine(S.Unit(), OPEN_SCOPE, 1) for _ in range(50)]
    assert {type(s) for s in spines} == {S.J, S.QElim}
    assert all(s.path == S.Var(0) for s in spines if isinstance(s, S.J))
    assert all(s.scrutinee == S.Var(1) for s in spines
               if isinstance(s, S.QElim))
    assert gen.spine(S.Nat(), (S.Nat(),), 1) is None
