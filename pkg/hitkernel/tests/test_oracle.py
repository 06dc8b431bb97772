import pytest


def _term(text):
    from hitkernel.frontend import elaborate_term, lex, parse_term
    return elaborate_term(parse_term(lex(text)))


@pytest.mark.parametrize("text, expected", [
    ("0", 0),
    ("succ (succ 1)", 3),
    ("(fun (x : Nat) => succ x) 2", 3),
    ("natrec (fun _ => Nat) 2 (fun _ r => succ (succ r)) 3", 8),
    ("J Nat 1 (fun _ _ => Nat) 4 1 (refl Nat 1)", 4),
    ("qelim Nat (fun _ _ => Unit) (fun _ => Nat) (fun n => succ n) "
     "(fun _ _ _ => refl Nat 0) (qmk Nat (fun _ _ => Unit) 6)", 7),
])
def test_nat_value(text, expected):
    from hitkernel.oracle import nat_value
    assert nat_value(_term(text)) == expected


def test_whnf_stops_at_constructors():
    from hitkernel import syntax as S
    from hitkernel.oracle import whnf
    term = _term("(fun (x : Nat) => succ ((fun (y : Nat) => y) x)) 0")
    result = whnf(term)
    assert isinstance(result, S.Succ)
    assert isinstance(result.pred, S.App)


def test_projections():
    from hitkernel import syntax as S
    from hitkernel.oracle import whnf
    pair = S.Pair(S.numeral(1), S.Star())
    assert whnf(S.Fst(pair)) == S.numeral(1)
    assert whnf(S.Snd(pair)) == S.Star()


@pytest.mark.parametrize("term", [
    "star",
    "fun (x : Nat) => x",
])
def test_rejects_non_numbers(term):
    from hitkernel.diagnostics import InternalError
    from hitkernel.oracle import nat_value
    with pytest.raises(InternalError):
        nat_value(_term(term))


def test_rejects_stuck_terms():
    from hitkernel import syntax as S
    from hitkernel.diagnostics import InternalError
    from hitkernel.oracle import whnf
    with pytest.raises(InternalError):
        whnf(S.App(S.Star(), S.Zero()))
    with pytest.raises(InternalError):
        whnf(S.NatRec(S.Nat(), S.Zero(), S.Zero(), S.Star()))
