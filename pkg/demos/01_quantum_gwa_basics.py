"""
Working in a quantum GWA
========================

Elements are kept in the normal form sum_k Z^k d_k, where Z^k is x^k for
k > 0 and y^-k for k < 0, and each d_k is a Laurent polynomial in h.
"""
from fractions import Fraction

from qgwa import FactoredPoly, FieldElement, QuantumGwa, gwa_mul

# # The algebra
#
# Coefficients live in Q(zeta_N); conductor 1 means plain rationals.
# Here a = (h - 1)(h - 2) over k[h] with q = 1/2.

N = 1
q = FieldElement.rational(Fraction(1, 2), N)
a = FactoredPoly.from_roots([FieldElement.rational(1, N), FieldElement.rational(2, N)],
                            FieldElement.rational(1, N))
R = QuantumGwa.create("poly", q, a)
x, y, h = R.x(), R.y(), R.h()
print(R)

# # Defining relations
#
# yx = a(h) and xy = a(qh), while h skews past x and y.

print("y*x =", gwa_mul(y, x))
print("x*y =", gwa_mul(x, y))
print("x*h - q*h*x =", gwa_mul(x, h) - q * gwa_mul(h, x))

# # Powers
#
# y^m x^m collapses to a product of shifted copies of a.

for m in range(1, 4):
    print(f"y^{m} x^{m} =", gwa_mul(y ** m, x ** m))

# A mixed product stays in normal form.

print(gwa_mul(x * 2 + h, y - h ** 2))
