import pytest


def test_diagnostic_str_with_span():
    from hitkernel.diagnostics import Diagnostic, ERROR
    from hitkernel.syntax import Span
    diagnostic = Diagnostic(ERROR, "E-MISMATCH", "nope",
                            Span("a.hk", 3, 7, 3, 9))
    assert str(diagnostic) == "a.hk:3:7: error E-MISMATCH: nope"


def test_diagnostic_str_without_span():
    from hitkernel.diagnostics import Diagnostic, ERROR
    assert str(Diagnostic(ERROR, "E-IO", "gone")) == \
        "<unknown>: error E-IO: gone"


def test_diagnostic_as_dict():
    from hitkernel.diagnostics import Diagnostic, ERROR
    from hitkernel.syntax import Span
    data = Diagnostic(ERROR, "E-PARSE", "bad", Span(None, 1, 2, 1, 2)) \
        .as_dict()
    assert data == {"severity": "error", "code": "E-PARSE",
                    "message": "bad", "file": None, "line": 1, "col": 2}


def test_error_carries_diagnostic():
    from hitkernel.diagnostics import HitKernelError, E_UNBOUND
    with pytest.raises(HitKernelError) as excinfo:
        raise HitKernelError(E_UNBOUND, "unknown name x")
    assert excinfo.value.code == E_UNBOUND
    assert "unknown name x" in str(excinfo.value)


def test_with_span_keeps_known_location():
    from hitkernel.diagnostics import HitKernelError, E_ASSERT
    from hitkernel.syntax import Span
    inner, outer = Span("f", 2, 1, 2, 3), Span("f", 1, 1, 4, 1)
    located = HitKernelError(E_ASSERT, "x", inner)
    assert located.with_span(outer) is located
    moved = HitKernelError(E_ASSERT, "x").with_span(outer)
    assert moved.span == outer
    assert moved.code == E_ASSERT
