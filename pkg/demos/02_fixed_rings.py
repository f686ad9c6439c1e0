"""
Fixed rings of diagonal automorphisms
=====================================

A diagonal map eta sends x to mu x, y to mu^-1 y and h to gamma h.  When
gamma has order n, mu^n has order m and gcd(m, n) = 1, the fixed ring is
again a quantum GWA, generated by x^m, y^m and h^n.
"""
from fractions import Fraction

from qgwa import (Automorphism, FactoredPoly, FieldElement, QuantumGwa, fixed_ring_diagonal,
                  gldim, gldim_fixed, rigidity, verify_fixed_ring)

N = 3
one = FieldElement.rational(1, N)
roots = [FieldElement.rational(v, N) for v in (1, -1, 2, -2)]
R = QuantumGwa.create("laurent", FieldElement.rational(Fraction(1, 2), N),
                      FactoredPoly.from_roots(roots, one))
phi = Automorphism.eta(FieldElement.rational(-1, N), FieldElement.zeta(N))

p = fixed_ring_diagonal(R, phi)
print("n, m =", p.n, p.m)
print("q' =", p.q_prime)
print("A(H) =", p.A_factored.to_string())

# # Checking the presentation
#
# The fixed space is computed by brute force up to a grade and h-degree
# bound, then compared with the span of the claimed generators.

rep = verify_fixed_ring(R, phi, p, 8, 12)
print("verified:", rep.passed)

# # Homological invariants
#
# The algebra has global dimension 2 but the fixed ring does not have finite
# global dimension: A picks up repeated roots.

print("gldim R =", gldim(R).value)
print("gldim R^G =", gldim_fixed(R, phi).value)
print("fixed ring not isomorphic to R:", rigidity(R, phi).non_isomorphic)
