from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgwa.errors import ParseError, SemanticError
from qgwa.exactfield import FieldElement
from qgwa.polynomials import BaseKind, FactoredPoly, expand
from qgwa.request import (
    AnalysisRequest,
    Options,
    format_request,
    parse_defining,
    parse_field,
    parse_request,
)

from support import fe, zeta

F = Fraction

EXAMPLE_ONE = """\
[algebra]
conductor = 3
base = "laurent"
q = 1/2
a = (h^2-1)*(h^2-4)

[automorphism]
gamma = -1
mu = z
"""


def test_example_one_request():
    req = parse_request(EXAMPLE_ONE)
    assert req.conductor == 3 and req.base_kind is BaseKind.LAURENT
    assert req.q == fe(F(1, 2), 3)
    assert sorted(r.to_fraction() for r in req.a.root_multiset()) == [-2, -1, 1, 2]
    assert req.gamma == fe(-1, 3) and req.mu == zeta(3)
    assert req.options == Options()


def test_example_two_request():
    req = parse_request("[algebra]\nbase = poly\nq = 3\na = h^2\n"
                        "[automorphism]\ngamma = -1\nmu = 1\n")
    assert req.a == FactoredPoly(1, 2, ())
    assert req.conductor == 1


def test_field_expressions():
    assert parse_field("3/5*z^2", 5) == fe(F(3, 5), 5) * zeta(5, 2)
    assert parse_field("(1 + z)*(1 + z^2)", 3) == fe(1, 3)
    assert parse_field("-(2/3)^2", 1) == fe(F(-4, 9))
    assert parse_field("2^-1", 1) == fe(F(1, 2))


def test_defining_expressions():
    f = parse_defining("3*h^2*(h - 1/2)^2*(h+2)", 1)
    assert f.unit == fe(3) and f.h_power == 2
    assert dict((r.to_fraction(), m) for r, m in f.roots) == {F(1, 2): 2, F(-2): 1}
    g = parse_defining("(h^3 - 8)", 3)
    assert expand(g) == expand(FactoredPoly.from_roots([2 * zeta(3, k) for k in range(3)],
                                                      fe(1, 3)))
    assert parse_defining("h^-2*(h-1)", 1).h_power == -2


def test_unclosed_paren_points_at_open_paren():
    text = "[algebra]\nbase = poly\nq = 2\na = (h-\n[automorphism]\ngamma = 1\nmu = 1\n"
    with pytest.raises(ParseError) as e:
        parse_request(text)
    assert (e.value.line, e.value.column) == (4, 5)


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as e:
        parse_field("2 * * 3", 1)
    assert e.value.expected
    assert "column" in str(e.value)


def test_semantic_errors():
    with pytest.raises(SemanticError):
        parse_field("z", 1)
    with pytest.raises(SemanticError):
        parse_request("[algebra]\nbase = poly\nq = 2\n")
    with pytest.raises(SemanticError):
        parse_defining("(h^2 - 2)", 1)   # roots +-sqrt(2) are not in Q
    with pytest.raises(SemanticError):
        parse_request(EXAMPLE_ONE.replace("mu = z", "mu = 0"))
    with pytest.raises(ParseError):
        parse_request(EXAMPLE_ONE.replace('"laurent"', "torus"))


def test_comments_and_options():
    text = EXAMPLE_ONE + "# trailing comment\n[options]\nverify = true  # check\ngrade_bound = 6\nh_bound = 8\n"
    req = parse_request(text)
    assert req.options.verify and req.options.grade_bound == 6 and req.options.h_degree_bound == 8


def test_round_trip_example():
    req = parse_request(EXAMPLE_ONE)
    assert parse_request(format_request(req)) == req


@st.composite
def requests(draw):
    N = draw(st.sampled_from([1, 3, 4, 5, 6, 12]))
    rational = st.fractions(min_value=-4, max_value=4, max_denominator=5).filter(bool)
    unit_power = st.integers(0, max(N, 2) - 1)

    def elem(allow_zeta=True):
        c = fe(draw(rational), N)
        if allow_zeta and N > 2:
            c = c * zeta(N, draw(unit_power))
        return c

    q = elem()
    if q.is_one():
        q = fe(2, N)
    roots = tuple((elem(), draw(st.integers(1, 2))) for _ in range(draw(st.integers(0, 3))))
    hp = draw(st.integers(0, 2))
    if not roots and not hp:
        hp = 1
    a = FactoredPoly(elem(), hp, roots)
    opts = Options(draw(st.integers(1, 12)), draw(st.integers(1, 24)), draw(st.integers(1, 200)),
                   draw(st.booleans()), draw(st.booleans()))
    i0 = draw(st.none() | st.integers(0, 5))
    return AnalysisRequest(N, draw(st.sampled_from(list(BaseKind))), q, a, elem(), elem(),
                           draw(st.integers(-2, 2)), draw(st.booleans()), i0, opts)


@settings(max_examples=80, deadline=None)
@given(requests())
def test_round_trip_property(req):
    assert parse_request(format_request(req)) == req
