from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgwa.autogroup import (
    Automorphism,
    classify_subgroup,
    compose,
    congruence_gap,
    detect_symmetric,
    inverse,
    order_of,
    power,
    relation_defects,
    validate,
)
from qgwa.errors import (
    GammaNotInCg,
    InfiniteOrderGenerator,
    InvalidAutomorphism,
    InvalidI0,
    LaurentMuInPolyBase,
    OmegaRequiresQMinusOne,
    SymmetricDefiningPolynomial,
)
from qgwa.gwacore import apply_automorphism
from qgwa.polynomials import FactoredPoly, LaurentPoly

from support import algebra, fe, zeta

F = Fraction


def lp(mapping):
    return LaurentPoly({e: fe(c) for e, c in mapping.items()})


def acts_alike(f, g, R):
    return all(apply_automorphism(f, u) == apply_automorphism(g, u)
               for u in (R.x(), R.y(), R.h()))


def test_congruence_gap():
    assert congruence_gap(lp({4: 1, 2: -5, 0: 4})) == (2, False)
    assert congruence_gap(lp({1: 1, 0: -1})) == (1, False)
    assert congruence_gap(lp({3: 1})).monomial


def test_validate_examples():
    N = 3
    R = algebra("laurent", F(1, 2), (1, -1, 2, -2), conductor=N)
    phi = validate(Automorphism.eta(-1, zeta(N)), R)
    assert phi.i0 == 0
    R1 = algebra("laurent", 2, (1,), conductor=4)
    with pytest.raises(GammaNotInCg):
        validate(Automorphism.eta(zeta(4), 1), R1)
    mono = algebra("poly", 2, (), h_power=3)
    assert validate(Automorphism.eta(F(1, 2), 1), mono).i0 == 3


def test_validate_errors():
    R = algebra("poly", 2, (1,))
    with pytest.raises(OmegaRequiresQMinusOne):
        validate(Automorphism.Omega(), R)
    with pytest.raises(LaurentMuInPolyBase):
        validate(Automorphism.eta(1, 1, 1), R)
    with pytest.raises(InvalidI0):
        validate(Automorphism.eta(1, 1, i0=5), R)
    with pytest.raises(InvalidAutomorphism):
        Automorphism.eta(0, 1)


def test_i0_choice_does_not_matter():
    R = algebra("poly", 3, (1, -1, 2, -2))
    a = validate(Automorphism.eta(-1, F(1, 2), i0=0), R)
    b = validate(Automorphism.eta(-1, F(1, 2), i0=4), R)
    assert a == b and acts_alike(a, b, R)


def test_compose_scalar_examples():
    R = algebra("poly", F(1, 2), (1, -1))
    g, m = validate(Automorphism.eta(-1, 3), R), validate(Automorphism.eta(-1, F(1, 5)), R)
    c = compose(g, m)
    assert c == Automorphism.eta(1, F(3, 5))
    assert compose(g, inverse(g)).is_identity()


def test_omega_conjugation():
    R = algebra("poly", -1, (1, -1, 3, -3), conductor=4)
    om = validate(Automorphism.Omega(), R)
    eta = validate(Automorphism.eta(-1, zeta(4)), R)
    c = compose(compose(om, eta), om)
    expected = Automorphism.eta(-1, eta.gamma_i0() * zeta(4).inverse())
    assert c == expected
    assert acts_alike(c, validate(expected, R), R)


def test_inverse_examples():
    eta = Automorphism.eta(-1, F(2, 3), i0=0)
    assert inverse(eta) == Automorphism.eta(-1, F(3, 2))
    assert inverse(Automorphism.identity()).is_identity()
    om = Automorphism.Omega(i0=1)
    assert inverse(om) == om
    assert compose(om, om).is_identity()


def test_order_examples():
    assert order_of(Automorphism.eta(zeta(6), -1)) == 6
    assert order_of(Automorphism.eta(1, 1, 1)) is None
    assert order_of(Automorphism(True, 1, 1, 0, 1)) == 2
    assert order_of(Automorphism.eta(2, 1)) is None
    assert power(Automorphism.eta(zeta(6), -1), 6).is_identity()


def test_classify_cyclic_diagonal():
    N = 3
    R = algebra("poly", 2, (2, 2 * zeta(N), 2 * zeta(N, 2)), conductor=N)
    c = classify_subgroup([Automorphism.eta(zeta(N), -1)], R)
    assert (c.case, c.order, c.cyclic) == (1, 6, True)


def test_classify_omega_cases():
    R = algebra("poly", -1, (1,))
    c = classify_subgroup([Automorphism.Omega()], R)
    assert (c.case, c.order) == (2, 2)
    R2 = algebra("poly", -1, (2, -2))
    c = classify_subgroup([Automorphism.Omega(), Automorphism.eta(-1, 1)], R2)
    assert c.case == 3 and c.order == 4 and not c.cyclic


def test_classify_non_cyclic_diagonal():
    R = algebra("poly", 3, (2, -2))
    c = classify_subgroup([Automorphism.eta(-1, 1), Automorphism.eta(1, -1)], R)
    assert (c.case, c.order, c.cyclic) == (1, 4, False)


def test_classify_refusals():
    R = algebra("laurent", 3, (2, F(1, 2)))
    with pytest.raises(SymmetricDefiningPolynomial):
        classify_subgroup([Automorphism.eta(1, -1)], R)
    with pytest.raises(InfiniteOrderGenerator):
        classify_subgroup([Automorphism.eta(1, 2)], algebra("poly", 3, (1,)))


def test_detect_symmetric_examples():
    w = detect_symmetric(FactoredPoly.from_roots([2, F(1, 2)]), "laurent")
    assert w is not None and w.lam == fe(1)
    w = detect_symmetric(FactoredPoly.from_roots([1]), "laurent")
    assert w is not None and w.lam == fe(1)
    # a(h) = -h a(1/h) for a = h - 1
    assert (w.l, w.delta) == (1, fe(-1))
    assert detect_symmetric(FactoredPoly.from_roots([1, 2, 3]), "laurent") is None
    assert detect_symmetric(FactoredPoly.from_roots([1]), "poly") is None


def test_example_one_is_symmetric():
    w = detect_symmetric(FactoredPoly.from_roots([1, -1, 2, -2]), "laurent")
    assert w is not None and w.lam == fe(2)


def test_nakayama_relations():
    R = algebra("poly", F(2, 3), (1, 5))
    nu = validate(Automorphism.eta(1, R.q.inverse()), R)
    assert relation_defects(nu, R) == []
    assert apply_automorphism(nu, R.x()) == R.q * R.x()
    assert apply_automorphism(nu, R.y()) == R.q.inverse() * R.y()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["poly", "laurent"]), st.sampled_from([1, -1, zeta(4)]),
       st.sampled_from([1, F(1, 2), -3, zeta(4, 3)]), st.integers(-2, 2))
def test_valid_maps_preserve_relations(base, gamma, mu, s):
    if base == "poly":
        s = 0
    R = algebra(base, F(3, 2), (2, -2, 2 * zeta(4), -2 * zeta(4)), conductor=4)
    phi = validate(Automorphism.eta(gamma, mu, s), R)
    assert relation_defects(phi, R) == []
    assert acts_alike(compose(phi, inverse(phi)), validate(Automorphism.identity(), R), R)
