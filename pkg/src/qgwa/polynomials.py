"""Univariate (Laurent) polynomials over Q(z_N), expanded and root-factored."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .errors import IncompleteOrbit, InvalidParameter, NotInSubring, ZeroPolynomial
from .exactfield import FieldElement, as_field, nth_roots

__all__ = [
    "BaseKind",
    "LaurentPoly",
    "FactoredPoly",
    "Normalization",
    "expand",
    "sigma_apply",
    "is_in_h_power_subring",
    "descend_to_b",
    "normalize",
    "format_coefficient",
]


class BaseKind(str, Enum):
    POLY = "poly"
    LAURENT = "laurent"


def _coef(c):
    return c if isinstance(c, FieldElement) else FieldElement.rational(c)


def format_coefficient(c):
    """String for ``c`` suitable as a product factor."""
    s = str(c)
    return s if c.is_atomic_str() and not s.startswith("-") else f"({s})"


class LaurentPoly:
    """Finite sum of c_j h^j, j in Z, stored sparsely as {j: c_j}.

    Instances are treated as immutable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _coef(v)
                if not v.is_zero():
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _wrap(cls, c):
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value):
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls({exponent: coeff})

    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return self._c.items()

    def coefficient(self, e):
        return self._c.get(e, FieldElement.rational(0))

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_monomial(self):
        return len(self._c) == 1

    def degree(self):
        if not self._c:
            raise ZeroPolynomial("degree of zero polynomial")
        return max(self._c)

    def valuation(self):
        if not self._c:
            raise ZeroPolynomial("valuation of zero polynomial")
        return min(self._c)

    def exponents(self):
        return sorted(self._c)

    def is_polynomial(self):
        return not self._c or min(self._c) >= 0

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        out = dict(self._c)
        for e, v in other._c.items():
            s = out.get(e)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            s = _coef(other)
            if s.is_zero():
                return LaurentPoly._wrap({})
            return LaurentPoly._wrap({e: v * s for e, v in self._c.items()})
        out = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                p = v1 * v2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return LaurentPoly._wrap({e: v for e, v in out.items() if not v.is_zero()})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are units")
            ((e, v),) = self._c.items()
            return LaurentPoly._wrap({e * k: v ** k})
        result = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by h^k."""
        return LaurentPoly._wrap({e + k: v for e, v in self._c.items()})

    def scale_variable(self, s):
        """Substitute h -> s*h."""
        s = _coef(s)
        out = {}
        for e, v in self._c.items():
            out[e] = v * (s ** e)
        return LaurentPoly._wrap(out)

    def inflate(self, n):
        """Substitute H -> h^n."""
        return LaurentPoly._wrap({e * n: v for e, v in self._c.items()})

    def deflate(self, n):
        """Rewrite an element of k[h^n] as a polynomial in H = h^n."""
        if not is_in_h_power_subring(self, n):
            raise NotInSubring(f"not a polynomial in h^{n}")
        return LaurentPoly._wrap({e // n: v for e, v in self._c.items()})

    def __call__(self, value):
        value = _coef(value)
        total = FieldElement.rational(0)
        for e, v in self._c.items():
            total = total + v * value ** e
        return total

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction, FieldElement)):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def to_string(self, var="h"):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            c = self._c[e]
            neg = c.is_rational() and c.to_fraction() < 0
            mag = -c if neg else c
            if e == 0:
                body = format_coefficient(mag) if not mag.is_rational() else str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag.is_one() else f"{format_coefficient(mag)}*{mono}"
            parts.append(("-" if neg else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self})"


def _merge_roots(pairs):
    merged = []
    for root, mult in pairs:
        root = _coef(root)
        if mult == 0:
            continue
        for item in merged:
            if item[0] == root:
                item[1] += mult
                break
        else:
            merged.append([root, mult])
    return tuple((r, m) for r, m in merged if m)


@dataclass(frozen=True)
class FactoredPoly:
    """unit * h^h_power * prod (h - c)^m with every root c nonzero.

    Root order is insertion order (first appearance) and is kept for display.
    """

    unit: FieldElement
    h_power: int = 0
    roots: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "unit", _coef(self.unit))
        pairs = []
        for r, m in self.roots:
            r = _coef(r)
            if r.is_zero():
                raise ValueError("zero roots belong in h_power")
            if m < 0:
                raise ValueError("negative root multiplicity")
            pairs.append((r, m))
        object.__setattr__(self, "roots", _merge_roots(pairs))

    @classmethod
    def from_roots(cls, roots, unit=1, h_power=0):
        return cls(unit, h_power, tuple((r, 1) for r in roots))

    @property
    def root_count(self):
        """Number of nonzero roots counted with multiplicity."""
        return sum(m for _, m in self.roots)

    @property
    def total_roots(self):
        return self.root_count + max(self.h_power, 0)

    def root_multiset(self):
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out

    def is_zero(self):
        return self.unit.is_zero()

    def times(self, other):
        return FactoredPoly(self.unit * other.unit, self.h_power + other.h_power,
                            self.roots + other.roots)

    def to_string(self, var="H"):
        factors = []
        if self.h_power:
            factors.append(var if self.h_power == 1 else f"{var}^{self.h_power}")
        for r, m in self.roots:
            if r.is_rational():
                v = r.to_fraction()
                lin = f"({var}-{v})" if v > 0 else f"({var}+{-v})"
            else:
                lin = f"({var}-({r}))"
            factors.append(lin if m == 1 else f"{lin}^{m}")
        body = "*".join(factors)
        u = self.unit
        if not body:
            return str(u)
        if u.is_one():
            return body
        if u == -1:
            return "-" + body
        if u.is_rational():
            return f"{u}*{body}"
        return f"({u})*{body}"

    def __str__(self):
        return self.to_string("h")


@dataclass(frozen=True)
class Normalization:
    """Record of the rescaling applied by :func:`normalize`."""

    scale: FieldElement
    shift: int


def expand(f):
    """Expanded form unit * h^h_power * prod (h - c)^m."""
    out = LaurentPoly({f.h_power: f.unit})
    for r, m in f.roots:
        lin = LaurentPoly({1: 1, 0: -r})
        out = out * lin ** m
    return out


def sigma_apply(f, q, power=1):
    """Apply sigma^power, sigma(h) = q h: coefficient of h^j gains q^(power*j)."""
    q = _coef(q)
    if q.is_zero() or q.is_one():
        raise InvalidParameter("q must not be 0 or 1")
    if power == 0:
        return f
    return f.scale_variable(q ** power)


def is_in_h_power_subring(f, n):
    if n < 1:
        raise ValueError("n must be positive")
    return all(e % n == 0 for e in f._c)


def _roots_of_unity_of_order(n, conductor):
    return nth_roots(FieldElement.rational(1, conductor), n)


def descend_to_b(f, n):
    """Rewrite f in k[h^n] as b(H), H = h^n, grouping roots into z_n-orbits.

    Each orbit {w c : w^n = 1} contributes the root d = c^n of b with the
    multiplicity shared by the orbit.
    """
    if n == 1:
        return f
    if not is_in_h_power_subring(expand(f), n) or f.h_power % n:
        raise NotInSubring(f"polynomial is not in k[h^{n}]")
    remaining = [[r, m] for r, m in f.roots]
    if not remaining:
        return FactoredPoly(f.unit, f.h_power // n, ())
    conductor = remaining[0][0].conductor
    for r, _ in remaining:
        if not r.is_rational():
            conductor = r.conductor
    units = _roots_of_unity_of_order(n, conductor)
    if len(units) != n:
        raise IncompleteOrbit(f"the {n}-th roots of unity are not in the field")
    b_roots = []
    while remaining:
        c, mult = remaining[0]
        for w in units:
            target = w * c
            for item in remaining:
                if item[0] == target:
                    if item[1] < mult:
                        raise IncompleteOrbit(f"orbit of {c} has unequal multiplicities")
                    item[1] -= mult
                    break
            else:
                raise IncompleteOrbit(f"orbit of {c} under {n}-th roots of unity is incomplete")
        remaining = [item for item in remaining if item[1]]
        b_roots.append((c ** n, mult))
    return FactoredPoly(f.unit, f.h_power // n, tuple(b_roots))


def normalize(f, base_kind):
    """Scale to a monic polynomial; for a Laurent base also drop the h-power.

    Returns ``(normalized, Normalization)``.
    """
    base_kind = BaseKind(base_kind)
    if f.is_zero():
        raise ZeroPolynomial("defining polynomial is zero")
    shift = 0
    h_power = f.h_power
    if base_kind is BaseKind.LAURENT:
        shift, h_power = -f.h_power, 0
    elif f.h_power < 0:
        raise InvalidParameter("negative power of h over a polynomial base")
    scale = f.unit.inverse()
    return FactoredPoly(as_field(1, f.unit.conductor), h_power, f.roots), Normalization(scale, shift)
