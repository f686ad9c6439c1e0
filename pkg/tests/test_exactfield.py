import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgwa.errors import DivisionByZero, InvalidGaloisIndex, ZeroInput
from qgwa.exactfield import (
    FieldElement,
    cyclotomic_polynomial,
    embed_complex,
    euler_phi,
    field_arith,
    nth_roots,
    roots_of_unity,
    torsion_order,
)

CONDUCTORS = [1, 3, 4, 5, 6, 8, 12]

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def field_tuples(draw, size=3):
    n = draw(st.sampled_from(CONDUCTORS))
    d = euler_phi(n)
    return [FieldElement.from_coords(draw(st.lists(small, min_size=d, max_size=d)), n)
            for _ in range(size)]


def test_rational_sum():
    assert field_arith(FieldElement.rational(Fraction(1, 2)), FieldElement.rational(Fraction(1, 3)),
                       "add") == FieldElement.rational(Fraction(5, 6))


def test_zeta4_squared():
    i = FieldElement.zeta(4)
    assert field_arith(i, i, "mul") == FieldElement.rational(-1, 4)


def test_one_plus_zeta3_norm():
    # oracle: numerically (1 + w)(1 + w^2) = |1 + w|^2 = 1 for w = exp(2 pi i / 3)
    w = cmath.exp(2j * math.pi / 3)
    assert abs((1 + w) * (1 + w * w) - 1) < 1e-12
    z = FieldElement.zeta(3)
    one = FieldElement.rational(1, 3)
    assert (one + z) * (one + z * z) == one


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        field_arith(FieldElement.rational(1), FieldElement.rational(0), "div")


def test_cyclotomic_polynomials():
    assert list(cyclotomic_polynomial(1)) == [-1, 1]
    assert list(cyclotomic_polynomial(3)) == [1, 1, 1]
    assert list(cyclotomic_polynomial(4)) == [1, 0, 1]
    assert list(cyclotomic_polynomial(12)) == [1, 0, -1, 0, 1]
    assert [euler_phi(n) for n in (1, 2, 5, 12, 15)] == [1, 1, 4, 4, 8]


@pytest.mark.parametrize("x, expected", [
    (FieldElement.rational(-1), 2),
    (FieldElement.zeta(6), 6),
    (FieldElement.rational(Fraction(1, 2)), None),
    (FieldElement.rational(1), 1),
    (FieldElement.zeta(5) ** 2, 5),
    (-FieldElement.zeta(5), 10),
    (FieldElement.zeta(12) ** 3, 4),
])
def test_torsion_order(x, expected):
    assert torsion_order(x) == expected


def test_torsion_order_of_unit_modulus_non_root():
    # (3 + 4i)/5 has modulus 1 but is not a root of unity
    x = FieldElement.from_coords([Fraction(3, 5), Fraction(4, 5)], 4)
    assert torsion_order(x) is None


def test_torsion_order_zero():
    with pytest.raises(ZeroInput):
        torsion_order(FieldElement.rational(0))


def test_embeddings():
    v, r = embed_complex(FieldElement.rational(Fraction(1, 2)), 1)
    assert abs(v - 0.5) <= r
    v, r = embed_complex(FieldElement.zeta(4), 1)
    assert abs(v - 1j) <= r + 1e-15
    v, r = embed_complex(FieldElement.zeta(4), 3)
    assert abs(v + 1j) <= r + 1e-15
    x = FieldElement.rational(1, 3) + FieldElement.zeta(3)
    v, r = embed_complex(x, 1)
    assert abs(v - complex(0.5, math.sqrt(3) / 2)) <= r + 1e-15
    hp, hr = embed_complex(x, 1, prec=200)
    assert abs(hp - v) <= r + hr


def test_embedding_bad_index():
    with pytest.raises(InvalidGaloisIndex):
        embed_complex(FieldElement.zeta(6), 2)


def test_roots_of_unity_and_nth_roots():
    assert len(roots_of_unity(3)) == 6
    assert len(roots_of_unity(4)) == 4
    assert len(roots_of_unity(1)) == 2
    sixteen = FieldElement.rational(16, 4)
    roots = nth_roots(sixteen, 4)
    assert len(roots) == 4
    assert all(r ** 4 == sixteen for r in roots)
    # the 4th roots of 4 are +-sqrt(2), +-i sqrt(2), none of them in Q(i)
    assert nth_roots(FieldElement.rational(4, 4), 4) == []
    assert nth_roots(FieldElement.rational(2), 2) == []


def test_display():
    z = FieldElement.zeta(3)
    assert str(FieldElement.rational(Fraction(-3, 5))) == "-3/5"
    assert str(z) == "z"
    assert str(z * z) == "-z - 1"


def test_immutable():
    with pytest.raises(AttributeError):
        FieldElement.rational(1).den = 3


@settings(max_examples=60, deadline=None)
@given(field_tuples())
def test_field_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if not a.is_zero():
        assert a * a.inverse() == FieldElement.rational(1, a.conductor)
        assert (b / a) * a == b


@settings(max_examples=40, deadline=None)
@given(field_tuples(size=2))
def test_embedding_is_a_ring_map(t):
    a, b = t
    for j in (1, 7 if math.gcd(7, a.conductor) == 1 else 1):
        va, ra = embed_complex(a, j)
        vb, rb = embed_complex(b, j)
        vab, rab = embed_complex(a * b, j)
        vs, rs = embed_complex(a + b, j)
        assert abs(vab - va * vb) <= rab + ra * abs(vb) + rb * abs(va) + ra * rb
        assert abs(vs - (va + vb)) <= rs + ra + rb


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONDUCTORS), st.integers(0, 23), st.booleans())
def test_torsion_order_is_minimal(n, k, negate):
    x = FieldElement.zeta(n) ** k if n > 1 else FieldElement.rational(1)
    if negate:
        x = -x
    e = torsion_order(x)
    assert e is not None
    assert (x ** e).is_one()
    assert all(not (x ** d).is_one() for d in range(1, e) if e % d == 0)
