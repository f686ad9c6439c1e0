"""Builders and seeded random configurations shared by the test modules."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from qgwa.autogroup import Automorphism
from qgwa.exactfield import FieldElement
from qgwa.gwacore import QuantumGwa
from qgwa.polynomials import FactoredPoly

SMALL_RATIONALS = [Fraction(v) for v in (2, 3, -2, -3, 5)] + [
    Fraction(1, 2), Fraction(-1, 3), Fraction(3, 2), Fraction(2, 5), Fraction(-5, 4)]
NONTORSION_Q = [Fraction(1, 2), Fraction(2), Fraction(-3), Fraction(2, 3), Fraction(-1, 5)]


def fe(value, conductor=1):
    return FieldElement.rational(Fraction(value), conductor)


def zeta(conductor, power=1):
    return FieldElement.zeta(conductor) ** power


def algebra(base, q, roots=(), h_power=0, unit=1, conductor=1):
    """QuantumGwa with a = unit * h^h_power * prod (h - r)."""
    roots = tuple((r if isinstance(r, FieldElement) else fe(r, conductor), 1) for r in roots)
    a = FactoredPoly(fe(unit, conductor) if not isinstance(unit, FieldElement) else unit,
                     h_power, roots)
    if not isinstance(q, FieldElement):
        q = fe(q, conductor)
    return QuantumGwa.create(base, q, a)


def example1():
    N = 3
    R = algebra("laurent", Fraction(1, 2), (1, -1, 2, -2), conductor=N)
    return R, Automorphism.eta(-1, zeta(N))


def example2():
    R = algebra("poly", 3, (), h_power=2)
    return R, Automorphism.eta(-1, 1)


@dataclass
class DiagonalConfig:
    R: QuantumGwa
    phi: Automorphism
    n: int
    m: int
    label: str


def _primitive_root(conductor, order, rng):
    units = [u for u in range(1, order + 1) if math.gcd(u, order) == 1]
    return zeta(conductor, (conductor // order) * rng.choice(units))


def random_diagonal_config(rng, base=None, torsion=None):
    """A random (R, eta) satisfying the fixed-ring hypothesis.

    a is a product of full orbits {w c : w^n = 1} (plus h^(kn) over k[h]),
    so a lies in k[h^n] and every exponent of a is divisible by n.
    """
    while True:
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        if math.gcd(n, m) == 1 and n * m > 1:
            break
    base = base or rng.choice(["poly", "laurent"])
    torsion = rng.random() < 0.4 if torsion is None else torsion
    N = math.lcm(n, m)
    if torsion and N <= 2:
        N = math.lcm(N, rng.choice([3, 4, 6]))
    units_n = [zeta(N, (N // n) * t) for t in range(n)]
    roots = []
    budget = 8
    h_power = 0
    if base == "poly" and n <= 4 and rng.random() < 0.3:
        h_power = n
        budget -= n
    orbits = rng.randint(1, max(1, budget // n))
    used = set()
    for _ in range(orbits):
        while True:
            c = rng.choice(SMALL_RATIONALS)
            if c not in used:
                used.add(c)
                break
        for w in units_n:
            roots.append(w * fe(c, N))
    if torsion:
        k = rng.choice([t for t in range(1, N) if t])
        q = zeta(N, k) if rng.random() < 0.7 else fe(-1, N)
    else:
        q = fe(rng.choice(NONTORSION_Q), N)
    if (q ** (n * m)).is_one():
        return random_diagonal_config(rng, base, torsion)
    R = algebra(base, q, roots, h_power=h_power, conductor=N)
    phi = Automorphism.eta(_primitive_root(N, n, rng), _primitive_root(N, m, rng))
    label = f"{base} n={n} m={m} N={N} q={q} a={R.a}"
    return DiagonalConfig(R, phi, n, m, label)


def diagonal_suite(count=25, seed=20240611):
    """Deterministic random suite covering both bases and both kinds of q."""
    rng = random.Random(seed)
    kinds = [("poly", False), ("poly", True), ("laurent", False), ("laurent", True)]
    return [random_diagonal_config(rng, *kinds[i % 4]) for i in range(count)]


def random_rational_poly(rng, degree, conductor=1):
    roots = [fe(rng.choice(SMALL_RATIONALS), conductor) for _ in range(degree)]
    return roots
