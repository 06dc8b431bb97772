import io

import pytest

from hitkernel import syntax as S


NAT = S.Nat()


@pytest.mark.parametrize("term, names, expected", [
    (S.Pi(NAT, NAT), (), "Nat -> Nat"),
    (S.Pi(S.Pi(NAT, NAT), NAT), (), "(Nat -> Nat) -> Nat"),
    (S.Pi(S.Universe(0), S.Pi(S.Var(0), S.Var(1)), "A"), (),
     "(A : Type0) -> A -> A"),
    (S.Sigma(NAT, S.Sigma(NAT, NAT)), (), "Nat * Nat * Nat"),
    (S.Sigma(NAT, S.Pi(NAT, NAT)), (), "Nat * (Nat -> Nat)"),
    (S.Lam(NAT, S.Succ(S.Var(0)), "n"), (), "fun (n : Nat) => succ n"),
    (S.Lam(None, S.Zero(), "n"), (), "fun _ => 0"),
    (S.App(S.Var(0), S.App(S.Var(1), S.Star())), ("g", "f"),
     "f (g star)"),
    (S.Pair(S.Zero(), S.Star()), (), "(0, star)"),
    (S.Fst(S.Var(0)), ("p",), "fst p"),
    (S.Refl(NAT, S.numeral(2)), (), "refl Nat 2"),
    (S.Ref("concat"), (), "concat"),
])
def test_pretty(term, names, expected):
    from hitkernel.frontend import pretty
    assert pretty(term, names) == expected


def test_binders_avoid_capture():
    from hitkernel.frontend import pretty
    # the body mentions the outer x
    term = S.Lam(NAT, S.App(S.Var(1), S.Var(0)), "x")
    assert pretty(term, ("x",)) == "fun (x1 : Nat) => x x1"


def test_binders_avoid_referenced_globals():
    from hitkernel.frontend import pretty
    term = S.Lam(None, S.App(S.Ref("x"), S.Var(0)), "x")
    assert pretty(term) == "fun x1 => x x1"


def test_binders_avoid_reserved_names():
    from hitkernel.frontend import pretty
    term = S.Lam(None, S.Var(0), "succ")
    assert pretty(term) == "fun succ1 => succ1"


def test_eliminators_print_binding_arguments():
    from hitkernel.frontend import pretty
    term = S.NatRec(NAT, S.Zero(), S.Succ(S.Var(0)), S.Var(0))
    assert pretty(term, ("m",)) == \
        "natrec (fun _ => Nat) 0 (fun _ r => succ r) m"


def test_unbound_variables_are_marked():
    from hitkernel.frontend import pretty
    assert pretty(S.Var(3, "z")) == "z?3"


def test_pretty_declaration():
    from hitkernel.frontend import pretty_declaration
    decl = S.Definition("two", NAT, S.numeral(2))
    assert pretty_declaration(decl) == "def two : Nat := 2"
    directive = S.AssertDefeq(S.Var(0), S.Var(0), NAT, (("n", NAT),))
    assert pretty_declaration(directive) == "#assert_defeq (n : Nat) n n : Nat"


@pytest.mark.parametrize("text", [
    "fun (B : Type0) (a : Nat) => J Nat a "
    "(fun (y : (fun (T : Type0) => Nat) B) _ => Unit) star a (refl Nat a)",
    "fun (a : Nat) => J Nat a (fun y (p : Id Nat a y) => Unit) star a "
    "(refl Nat a)",
    "fun (B : Type0) => natrec (fun (n : (fun (_ : Type0) => Nat) B) => Nat) "
    "0 (fun _ r => r) 2",
    "let T : Type0 := Nat in fun (x : T) => x",
])
def test_names_used_only_in_annotations_round_trip(text):
    from hitkernel.frontend import elaborate_term, lex, parse_term, pretty
    term = elaborate_term(parse_term(lex(text)))
    printed = pretty(term)
    assert elaborate_term(parse_term(lex(printed))) == term, printed


def test_annotation_uses_count_as_free():
    from hitkernel.frontend import elaborate_term, lex, parse_term
    term = elaborate_term(parse_term(lex(
        "J Nat 0 (fun (y : B) _ => Unit) star 0 (refl Nat 0)")), (), ("B",))
    assert S.has_free_var(term, 0)
    assert not S.has_free_var(term, 1)


def _stdlib_declarations():
    from hitkernel import stdlib
    from hitkernel.frontend import parse_source
    for name in stdlib.MODULES:
        with io.open(stdlib.path(name), encoding="utf-8") as f:
            yield name, parse_source(f.read()).declarations


def test_stdlib_round_trips():
    from hitkernel.frontend import (SAxiom, SDef, elaborate,
                                    parse_source, pretty_declaration)
    names = set()
    for module, declarations in _stdlib_declarations():
        for surface in declarations:
            if not isinstance(surface, (SDef, SAxiom)):
                continue
            decl = elaborate(surface, names)
            text = pretty_declaration(decl)
            again = elaborate(parse_source(text).declarations[0], names)
            assert again == decl, (module, text)
            names.add(decl.name)
