import pytest

from planarskein.expr import ExprError, parse, parse_poly, to_string
from planarskein.ncpoly import Generator, NCPoly, gen
from planarskein.ring import ALPHA, BETA, Q

try:
    from hypothesis import given, settings, strategies as st
except ImportError:  # pragma: no cover
    given = None


def test_two_terms():
    p = parse_poly("s13*s24 - q^2*s12*s34")
    assert len(p.terms) == 2


def test_bracket_indices():
    p = parse_poly("s[1,3]*s[2,13]")
    assert p.max_index() == 13
    assert Generator("s", (2, 13)) in p.generators()


@pytest.mark.parametrize("bad", ["s1", "s[3,2]", "t[]", "s13 +", "x1", "(s12", "s12^-1", "s[1,1,2]"])
def test_errors(bad):
    with pytest.raises(ExprError):
        parse_poly(bad)


def test_error_has_position():
    with pytest.raises(ExprError) as exc:
        parse_poly("s12 + s1")
    assert "6" in str(exc.value)


def test_scalars():
    assert parse_poly("a*B") == NCPoly.const(1)
    assert parse_poly("q + qb") == NCPoly.const(ALPHA)
    assert parse_poly("v^2") == NCPoly.const(Q)
    assert parse_poly("v^-4*q^2") == NCPoly.const(1)


def test_sii_expansion():
    assert parse_poly("s22") == NCPoly.const(ALPHA) - NCPoly.const(BETA) * gen("t", [2]) ** 2


@pytest.mark.parametrize("text", ["-(t1 + s[2,10])^2", "s13*s24 - q^2*s12*s34 - qb^2*s23*s14",
                                  "(q - qb)^2*B*t1*(s13 + 2)", "-3*t123^2"])
def test_roundtrip(text):
    ast = parse(text)
    assert parse(to_string(ast)) == ast


def test_poly_repr_parses_back():
    p = parse_poly("q*s23*s12 - qb*s12*s23 + (q - qb)*(s22*s13 + t2*s123)")
    assert parse_poly(repr(p)) == p


if given is not None:
    gens = st.sampled_from(["t1", "t2", "s12", "s13", "s[2,11]", "s123", "q", "qb", "B", "a", "v", "3"])

    @st.composite
    def exprs(draw, depth=0):
        if depth > 2 or draw(st.booleans()):
            return draw(gens)
        op = draw(st.sampled_from(["+", "-", "*", "^"]))
        a = draw(exprs(depth=depth + 1))
        if op == "^":
            return f"({a})^{draw(st.integers(0, 3))}"
        b = draw(exprs(depth=depth + 1))
        return f"({a}) {op} {b}"

    @given(exprs())
    @settings(max_examples=150, deadline=None)
    def test_roundtrip_random(text):
        ast = parse(text)
        assert parse(to_string(ast)) == ast
        assert parse_poly(to_string(ast)) == parse_poly(text)
