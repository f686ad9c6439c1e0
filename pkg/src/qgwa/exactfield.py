"""Exact arithmetic in Q and in cyclotomic fields Q(z), z = exp(2*pi*i/N).

Elements are stored in the power basis 1, z, ..., z^(d-1), d = phi(N), as
integer numerators over one common positive denominator.  Rationals mix
freely with any conductor; two genuinely cyclotomic elements must share
their conductor.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import mpmath

from .errors import DivisionByZero, InvalidGaloisIndex, ZeroInput

__all__ = [
    "FieldElement",
    "cyclotomic_polynomial",
    "euler_phi",
    "field_arith",
    "torsion_order",
    "embed_complex",
    "roots_of_unity",
    "nth_roots",
    "as_field",
]


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n):
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _int_polydiv_exact(num, den):
    """Exact quotient of integer polynomials (low degree first), den monic."""
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num), "non-exact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n):
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _int_polydiv_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce(coeffs, n):
    """Reduce an integer polynomial modulo the n-th cyclotomic polynomial."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, d - 1, -1):
        t = c[i]
        if t:
            base = i - d
            for j in range(d):
                if phi[j]:
                    c[base + j] -= t * phi[j]
    c = c[:d]
    if len(c) < d:
        c.extend([0] * (d - len(c)))
    return c


def _normalize(num, den):
    if den < 0:
        num = [-v for v in num]
        den = -den
    g = den
    for v in num:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                break
    if g != 1:
        num = [v // g for v in num]
        den //= g
    return tuple(num), den


class FieldElement:
    """Immutable element of Q(z_N)."""

    __slots__ = ("conductor", "num", "den")

    def __init__(self, num, den=1, conductor=1):
        d = euler_phi(conductor)
        num = list(num)
        if len(num) > d:
            num = _reduce(num, conductor)
        elif len(num) < d:
            num.extend([0] * (d - len(num)))
        if den == 0:
            raise DivisionByZero("zero denominator")
        num, den = _normalize(num, den)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @classmethod
    def _raw(cls, num, den, conductor):
        self = object.__new__(cls)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    # -- constructors -----------------------------------------------------
    @classmethod
    def rational(cls, value, conductor=1):
        value = Fraction(value)
        d = euler_phi(conductor)
        return cls._raw((value.numerator,) + (0,) * (d - 1), value.denominator, conductor)

    @classmethod
    def zeta(cls, conductor):
        """The primitive root z = exp(2 pi i / N) as an element of Q(z_N)."""
        if conductor <= 2:
            return cls.rational(1 if conductor == 1 else -1, conductor)
        return cls([0, 1], 1, conductor)

    @classmethod
    def from_coords(cls, coords, conductor=1):
        fr = [Fraction(c) for c in coords]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return cls([int(c * den) for c in fr], den, conductor)

    # -- basic queries ----------------------------------------------------
    @property
    def coords(self):
        return tuple(Fraction(v, self.den) for v in self.num)

    @property
    def degree(self):
        return len(self.num)

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def is_rational(self):
        return not any(self.num[1:])

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def with_conductor(self, conductor):
        """Promote a rational element to conductor ``conductor``."""
        if conductor == self.conductor:
            return self
        if not self.is_rational():
            raise ValueError(
                f"cannot move {self} from conductor {self.conductor} to {conductor}")
        d = euler_phi(conductor)
        return FieldElement._raw((self.num[0],) + (0,) * (d - 1), self.den, conductor)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.conductor == self.conductor:
                return self, other
            if other.is_rational():
                return self, other.with_conductor(self.conductor)
            if self.is_rational():
                return self.with_conductor(other.conductor), other
            raise ValueError(
                f"conductor mismatch: {self.conductor} vs {other.conductor}")
        if isinstance(other, (int, Rational)):
            return self, FieldElement.rational(other, self.conductor)
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if a.den == b.den:
            num, den = [x + y for x, y in zip(a.num, b.num)], a.den
        else:
            num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
            den = a.den * b.den
        n, d = _normalize(num, den)
        return FieldElement._raw(n, d, a.conductor)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement._raw(tuple(-v for v in self.num), self.den, self.conductor)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if b.is_rational():
            a, b = b, a
        if a.is_rational():
            s = a.num[0]
            if s == 0:
                return FieldElement._raw((0,) * len(b.num), 1, b.conductor)
            n, d = _normalize([s * v for v in b.num], a.den * b.den)
            return FieldElement._raw(n, d, b.conductor)
        la, lb = len(a.num), len(b.num)
        prod = [0] * (la + lb - 1)
        for i, x in enumerate(a.num):
            if x:
                for j, y in enumerate(b.num):
                    if y:
                        prod[i + j] += x * y
        n, d = _normalize(_reduce(prod, a.conductor), a.den * b.den)
        return FieldElement._raw(n, d, a.conductor)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            n, d = _normalize([self.den] + [0] * (len(self.num) - 1), self.num[0])
            return FieldElement._raw(n, d, self.conductor)
        # extended Euclid in Q[t]: s*f + t*phi = 1
        f = _trim([Fraction(v) for v in self.num])
        g = [Fraction(v) for v in cyclotomic_polynomial(self.conductor)]
        s0, s1 = [Fraction(1)], [Fraction(0)]
        r0, r1 = f, g
        while any(r1):
            qt, rem = _qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_qpoly_sub(s0, _qpoly_mul(qt, s1)))
        lead = r0[-1]
        inv = [c / lead for c in s0]
        res = FieldElement.from_coords(inv, self.conductor)
        return res * self.den

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if b.is_zero():
            raise DivisionByZero("division by zero")
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = FieldElement.rational(1, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparisons / hashing ---------------------------------------------
    def __eq__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a.den == b.den and a.num == b.num

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash((self.conductor, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- printing -----------------------------------------------------------
    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.num[0], self.den))
        terms = []
        for k in range(len(self.num) - 1, -1, -1):
            c = Fraction(self.num[k], self.den)
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"FieldElement({self}, N={self.conductor})"

    def is_atomic_str(self):
        """True when str(self) needs no parentheses inside a product."""
        return self.is_rational() or sum(1 for v in self.num if v) == 1 and self.num[0] == 0


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _qpoly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _qpoly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = r[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, y in enumerate(b):
                r[i + j] -= c * y
    r = _trim(r[: len(b) - 1] or [Fraction(0)])
    return q, r


def as_field(value, conductor=1):
    """Coerce ints, Fractions and FieldElements to a FieldElement."""
    if isinstance(value, FieldElement):
        if value.conductor != conductor and value.is_rational():
            return value.with_conductor(conductor)
        return value
    return FieldElement.rational(value, conductor)


def field_arith(lhs, rhs, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two field elements."""
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def torsion_order(x):
    """Multiplicative order of ``x`` if it is a root of unity, else None.

    Torsion in Q(z_N)^x has order dividing lcm(2, N), so only those divisors
    are tested.
    """
    if x.is_zero():
        raise ZeroInput("torsion order of zero")
    if x.is_rational():
        v = x.to_fraction()
        return 1 if v == 1 else 2 if v == -1 else None
    bound = math.lcm(2, x.conductor)
    # a unit-modulus check at one embedding rules out most non-torsion input
    z, rad = embed_complex(x, 1)
    if abs(abs(z) - 1) > rad + 1e-9:
        return None
    for d in _divisors(bound):
        if (x ** d).is_one():
            return d
    return None


def embed_complex(x, galois_index=1, prec=53):
    """Image of ``x`` under z -> exp(2 pi i k / N), k = galois_index.

    Returns ``(value, radius)``; the exact image lies within ``radius`` of
    ``value``.  ``prec`` is the working precision in bits; above 53 the sum
    is evaluated with mpmath and rounded to a Python complex at the end.
    """
    n = x.conductor
    if math.gcd(galois_index, n) != 1:
        raise InvalidGaloisIndex(f"index {galois_index} not coprime to {n}")
    coeffs = [Fraction(v, x.den) for v in x.num]
    scale = sum(abs(c) for c in coeffs)
    if prec <= 53:
        total = 0j
        for k, c in enumerate(coeffs):
            if c:
                total += float(c) * cmath.exp(2j * math.pi * ((k * galois_index) % n) / n)
        eps = 2.0 ** -50
        return total, float(scale) * eps * (len(coeffs) + 2) + abs(total) * eps
    with mpmath.workprec(prec + 10):
        total = mpmath.mpc(0)
        for k, c in enumerate(coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(
                    mpmath.mpf(2 * ((k * galois_index) % n)) / n)
        value = complex(total)
    # rounding to a double dominates the error
    return value, float(scale) * 2.0 ** -(prec - 4) + abs(value) * 2.0 ** -52


def roots_of_unity(conductor):
    """All roots of unity in Q(z_N), as powers of a generator of the torsion group."""
    order = math.lcm(2, conductor)
    if conductor <= 2:
        gen = FieldElement.rational(-1, conductor)
    elif conductor % 2 == 0:
        gen = FieldElement.zeta(conductor)
    else:
        gen = -FieldElement.zeta(conductor)
    out = [FieldElement.rational(1, conductor)]
    for _ in range(order - 1):
        out.append(out[-1] * gen)
    return out


def _iroot(n, e):
    """Exact integer e-th root of n >= 0, or None."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // e + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** e
        if p == n:
            return mid
        if p < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _rational_root(r, e):
    if r <= 0:
        return None
    a, b = _iroot(r.numerator, e), _iroot(r.denominator, e)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def nth_roots(d, e):
    """All ``c`` in the field of ``d`` with c**e == d.

    Only roots of the shape (root of unity) * (positive rational) are found;
    this covers every defining polynomial whose roots are scaled roots of
    unity.
    """
    if e < 1:
        raise ValueError("root index must be positive")
    if d.is_zero():
        return [d]
    out = []
    for u in roots_of_unity(d.conductor):
        ratio = d / (u ** e)
        if not ratio.is_rational():
            continue
        rho = _rational_root(ratio.to_fraction(), e)
        if rho is not None:
            out.append(u * rho)
    return out
