import dataclasses
from fractions import Fraction

import pytest

from qgwa.autogroup import Automorphism
from qgwa.errors import (
    HypothesisViolated,
    InfiniteOrder,
    InvalidAutomorphism,
    InvalidGamma,
    RequiresQMinusOne,
    VerificationFailed,
)
from qgwa.fixedring import (
    PresentationKind,
    fixed_ring,
    fixed_ring_diagonal,
    fixed_ring_omega,
    probe_gcd_failure,
    relation_values,
    verify_fixed_ring,
)
from qgwa.polynomials import FactoredPoly, LaurentPoly, expand

from support import algebra, example1, example2, fe, zeta

F = Fraction


def test_example_one():
    R, phi = example1()
    p = fixed_ring_diagonal(R, phi)
    assert p.kind is PresentationKind.DIAGONAL
    assert (p.n, p.m) == (2, 3)
    assert p.q_prime == fe(F(1, 64))
    expected = FactoredPoly(4096, 0, ((1, 2), (4, 1), (F(1, 4), 2), (F(1, 16), 1)))
    assert p.A_expanded == expand(expected)
    assert p.A_factored.to_string() == "4096*(H-1)^2*(H-4)*(H-1/4)^2*(H-1/16)"
    assert expand(p.A_factored) == p.A_expanded
    assert p.A_expanded.degree() == 6
    assert set(p.generators) == {"X", "Y", "H", "H^-1"}
    assert p.generators["X"] == R.x() ** 3
    assert p.warnings


def test_example_two():
    R, phi = example2()
    p = fixed_ring_diagonal(R, phi)
    assert p.A_expanded == LaurentPoly.monomial(1)
    assert p.q_prime == fe(9)
    assert p.relations == ("XH=q'HX", "YH=q'^-1HY", "YX=A", "XY=sigma'(A)")


def test_identity_gives_same_algebra():
    R = algebra("poly", F(2, 3), (1, 4))
    p = fixed_ring_diagonal(R, Automorphism.identity())
    assert p.A_expanded == R.a_poly and p.q_prime == R.q
    assert verify_fixed_ring(R, Automorphism.identity(), p, 4, 6).passed


@pytest.mark.parametrize("q", [F(1, 2), F(-1)])
def test_three_step_product_for_h_minus_one(q):
    N = 3
    R = algebra("laurent", q, (1,), conductor=N)
    p = fixed_ring_diagonal(R, Automorphism.eta(1, zeta(N)))
    qq = fe(q, N)
    target = expand(FactoredPoly.from_roots([1, qq, qq * qq], fe(1, N)))
    lead = p.A_expanded.coefficient(3)
    assert p.A_expanded == target * lead


def test_hypothesis_errors():
    N = 4
    R = algebra("poly", 3, (1, -1, 2, -2), conductor=N)
    with pytest.raises(HypothesisViolated) as e:
        fixed_ring_diagonal(R, Automorphism.eta(-1, -1))
    assert e.value.reason == "gcd"
    with pytest.raises(InfiniteOrder):
        fixed_ring_diagonal(R, Automorphism.eta(-1, 2))
    with pytest.raises(InvalidAutomorphism):
        fixed_ring_diagonal(algebra("poly", -1, (1,)), Automorphism.Omega())
    odd = algebra("poly", 3, (1, -1), h_power=1)   # exponents 1 and 3
    with pytest.raises(HypothesisViolated) as e:
        fixed_ring_diagonal(odd, Automorphism.eta(-1, 1))
    assert e.value.reason == "i0"
    torsion = algebra("poly", -1, (1, -1))
    with pytest.raises(HypothesisViolated) as e:
        fixed_ring_diagonal(torsion, Automorphism.eta(-1, 1))
    assert e.value.reason == "q-prime"


def test_omega_plus_one_example():
    R = algebra("poly", -1, (1,))
    p = fixed_ring_omega(R, Automorphism.Omega())
    assert p.kind is PresentationKind.OMEGA_PLUS_ONE
    assert p.A_expanded == LaurentPoly.monomial(1, fe(-4))
    assert p.B_expanded == LaurentPoly.constant(fe(-4))
    assert set(p.generators) == {"X", "Y^2", "YH", "H^2"}
    assert all(v.is_zero() for v in relation_values(p).values())
    assert verify_fixed_ring(R, Automorphism.Omega(), p, 6, 8).passed


def test_omega_even_polynomial_gives_zero_A():
    R = algebra("laurent", -1, (2, -2, 3, -3))
    p = fixed_ring_omega(R, Automorphism(True, 1, F(1, 2)))
    assert p.A_expanded.is_zero()


def test_omega_minus_one():
    for base in ("poly", "laurent"):
        R = algebra(base, -1, (2, -2, 3, -3))
        phi = Automorphism(True, -1, 3)
        p = fixed_ring(R, phi)
        assert p.kind is PresentationKind.OMEGA_MINUS_ONE
        assert p.generators["u"] == 3 * R.x() + R.y()
        assert p.generators["v"] == R.h()
        assert ("v^-1" in p.generators) == (base == "laurent")
        assert verify_fixed_ring(R, phi, p, 5, 6).passed


def test_omega_errors():
    with pytest.raises((RequiresQMinusOne, InvalidAutomorphism)):
        fixed_ring_omega(algebra("poly", 2, (1,)), Automorphism.Omega())
    mono = algebra("poly", -1, (), h_power=2, conductor=4)
    with pytest.raises(InvalidGamma):
        fixed_ring_omega(mono, Automorphism(True, zeta(4), 1))


def test_verify_examples():
    for R, phi in (example1(), example2()):
        p = fixed_ring_diagonal(R, phi)
        rep = verify_fixed_ring(R, phi, p, 12, 24)
        assert rep.passed and rep.failure is None
        assert all(rep.relations.values())


def test_verify_catches_corrupted_A():
    R, phi = example2()
    p = fixed_ring_diagonal(R, phi)
    bad = dataclasses.replace(p, A_expanded=p.A_expanded + LaurentPoly.constant(1))
    with pytest.raises(VerificationFailed, match="YX=A"):
        verify_fixed_ring(R, phi, bad, 4, 4)
    rep = verify_fixed_ring(R, phi, bad, 4, 4, raise_on_failure=False)
    assert not rep.passed and "YX=A" in rep.failure


def test_verify_catches_missing_generator():
    R, phi = example2()
    p = fixed_ring_diagonal(R, phi)
    # pretend the fixed ring were generated by x^2 instead of x
    gens = dict(p.generators, X=R.x() ** 2, Y=R.y() ** 2)
    bad = dataclasses.replace(p, generators=gens, relations=())
    with pytest.raises(VerificationFailed):
        verify_fixed_ring(R, phi, bad, 4, 4)


def test_probe_gcd_failure_example():
    N = 12
    roots = [zeta(N, 2 * i) for i in range(6)]
    R = algebra("poly", fe(F(1, 3), N), roots, conductor=N)
    rep = probe_gcd_failure(R, Automorphism.eta(zeta(N, 2), zeta(N, 3)))
    names = [str(g) for g in rep.generators]
    assert rep.exceeds_three and rep.experimental
    assert {"h^6", "x^4", "y^4", "x^2*h^3", "y^2*h^3"} <= set(names)


def test_probe_coprime_and_trivial():
    N = 3
    R = algebra("laurent", F(1, 2), (1, -1), conductor=N)
    rep = probe_gcd_failure(algebra("poly", F(1, 2), (1, -1), conductor=N),
                            Automorphism.eta(-1, zeta(N)), 9, 8)
    assert sorted(str(g) for g in rep.generators) == ["h^2", "x^3", "y^3"]
    rep = probe_gcd_failure(R, Automorphism.identity(), 3, 3)
    assert sorted(str(g) for g in rep.generators) == ["h", "h^-1", "x", "y"]
    rep = probe_gcd_failure(algebra("poly", 2, (1,)), Automorphism.identity(), 3, 3)
    assert sorted(str(g) for g in rep.generators) == ["h", "x", "y"]
