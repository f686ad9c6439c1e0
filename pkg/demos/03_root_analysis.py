"""
Roots, congruences and multiplicity
===================================

Most structural questions reduce to which roots of a differ by a power of q.
"""
from fractions import Fraction

from qgwa import (FactoredPoly, FieldElement, QuantumGwa, analyze_roots,
                  classify_A_multiplicity, congruent_pairs, find_power_of_q, is_simple,
                  twisted_calabi_yau)


def build(base, q, roots, N=1):
    els = [FieldElement.rational(r, N) for r in roots]
    return QuantumGwa.create(base, FieldElement.rational(q, N),
                             FactoredPoly.from_roots(els, FieldElement.rational(1, N)))


# Is 8 a power of 1/2?

half = FieldElement.rational(Fraction(1, 2), 1)
print(find_power_of_q(FieldElement.rational(8, 1), half))

# Roots 1 and 8 are congruent: 1 = (1/2)^3 * 8.

R = build("laurent", Fraction(1, 2), [1, 8])
an = analyze_roots(R)
print(congruent_pairs(an).pairs)
print("simple:", is_simple(R))

# For the fixed ring with n = 1, m = 4 the pair forces a double root in A.

an = analyze_roots(R, 1, 4)
print(classify_A_multiplicity(an))

# With distinct, non-congruent roots over k[h] the algebra is twisted
# Calabi-Yau and the Nakayama map scales x by q.

cy = twisted_calabi_yau(build("poly", 2, [1, 3]))
print(cy.twisted_cy, cy.nakayama)
