"""Quantum generalized Weyl algebras D(sigma, a) and their normal-form elements.

D is k[h] or k[h^{+-1}], sigma(h) = q h.  Every element is written uniquely
as sum_k Z^k d_k with Z^k = x^k for k > 0, Z^k = y^(-k) for k < 0, Z^0 = 1
and d_k in D, which is the grading by deg x = 1, deg y = -1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import InfiniteOrder, InvalidParameter, MismatchedAlgebra, ZeroPolynomial
from .exactfield import FieldElement, as_field
from .linalg import kernel
from .polynomials import BaseKind, FactoredPoly, LaurentPoly, expand, format_coefficient, normalize

__all__ = [
    "QuantumGwa",
    "GwaElement",
    "gwa_mul",
    "gwa_mul_pairwise",
    "power_product_identity",
    "apply_automorphism",
    "fixed_space",
    "monomial_basis",
    "DEFAULT_GRADE_BOUND",
    "DEFAULT_H_DEGREE_BOUND",
]

DEFAULT_GRADE_BOUND = 12
DEFAULT_H_DEGREE_BOUND = 24


@dataclass(frozen=True)
class QuantumGwa:
    """The algebra D(sigma, a) with sigma(h) = q h.

    ``a`` is kept exactly as given; use :meth:`normalized` for the monic
    (and, over a Laurent base, h-power free) representative.
    """

    base_kind: BaseKind
    q: FieldElement
    a: FactoredPoly

    def __post_init__(self):
        object.__setattr__(self, "base_kind", BaseKind(self.base_kind))
        q = as_field(self.q)
        object.__setattr__(self, "q", q)
        if q.is_zero() or q.is_one():
            raise InvalidParameter("q must not be 0 or 1")
        if self.a.is_zero():
            raise ZeroPolynomial("defining polynomial is zero")
        if self.base_kind is BaseKind.POLY and self.a.h_power < 0:
            raise InvalidParameter("negative power of h over a polynomial base")
        object.__setattr__(self, "_cache", {"yx": [LaurentPoly.constant(1)],
                                            "xy": [LaurentPoly.constant(1)],
                                            "qpow": {}})

    @classmethod
    def create(cls, base_kind, q, a, normalize_a=True):
        alg = cls(base_kind, q, a)
        return alg.normalized()[0] if normalize_a else alg

    def normalized(self):
        a, record = normalize(self.a, self.base_kind)
        return QuantumGwa(self.base_kind, self.q, a), record

    @property
    def is_laurent(self):
        return self.base_kind is BaseKind.LAURENT

    @property
    def conductor(self):
        cands = [self.q.conductor, self.a.unit.conductor] + [r.conductor for r, _ in self.a.roots]
        return max(cands)

    @cached_property
    def a_poly(self):
        return expand(self.a)

    def q_power(self, p):
        cache = self._cache["qpow"]
        if p not in cache:
            cache[p] = self.q ** p
        return cache[p]

    def sigma(self, d, power=1):
        """sigma^power(d) for d in D."""
        if power == 0:
            return d
        return d.scale_variable(self.q_power(power))

    def prod_yx(self, m):
        """y^m x^m = prod_{i=0}^{m-1} sigma^{-i}(a)."""
        cache = self._cache["yx"]
        while len(cache) <= m:
            i = len(cache) - 1
            cache.append(cache[-1] * self.sigma(self.a_poly, -i))
        return cache[m]

    def prod_xy(self, m):
        """x^m y^m = prod_{i=1}^{m} sigma^{i}(a)."""
        cache = self._cache["xy"]
        while len(cache) <= m:
            i = len(cache)
            cache.append(cache[-1] * self.sigma(self.a_poly, i))
        return cache[m]

    def contraction(self, i, j):
        """The d in D with Z^i Z^j = Z^(i+j) d."""
        if i >= 0 and j >= 0 or i <= 0 and j <= 0:
            return None
        if i > 0:
            ell = -j
            if i >= ell:
                return self.prod_xy(ell)
            return self.sigma(self.prod_xy(i), ell - i)
        ell = -i
        if ell >= j:
            return self.prod_yx(j)
        return self.sigma(self.prod_yx(ell), -(j - ell))

    # -- element constructors -------------------------------------------------
    def element(self, components):
        return GwaElement(self, components)

    def zero(self):
        return GwaElement(self, {})

    def one(self):
        return self.base(LaurentPoly.constant(1))

    def base(self, d):
        if not isinstance(d, LaurentPoly):
            d = LaurentPoly.constant(d)
        return GwaElement(self, {0: d})

    def x(self):
        return GwaElement(self, {1: LaurentPoly.constant(1)})

    def y(self):
        return GwaElement(self, {-1: LaurentPoly.constant(1)})

    def h(self, power=1):
        if power < 0 and not self.is_laurent:
            raise InvalidParameter("h is not invertible over a polynomial base")
        return self.base(LaurentPoly.monomial(power))

    def monomial(self, grade, h_exp, coeff=1):
        """Z^grade h^h_exp."""
        return GwaElement(self, {grade: LaurentPoly.monomial(h_exp, coeff)})

    def __str__(self):
        kind = "k[h^{+-1}]" if self.is_laurent else "k[h]"
        return f"{kind}(sigma, a), q = {self.q}, a = {self.a}"


def _clean(components):
    return {k: d for k, d in components.items() if not d.is_zero()}


class GwaElement:
    """Normal-form element sum_k Z^k d_k; treated as immutable."""

    __slots__ = ("parent", "components")

    def __init__(self, parent, components):
        self.parent = parent
        self.components = _clean(components)

    def _check(self, other):
        if other.parent is not self.parent and other.parent != self.parent:
            raise MismatchedAlgebra("elements belong to different algebras")

    def _lift(self, other):
        if isinstance(other, GwaElement):
            self._check(other)
            return other
        return self.parent.base(other)

    def grades(self):
        return sorted(self.components)

    def component(self, k):
        return self.components.get(k, LaurentPoly())

    def is_zero(self):
        return not self.components

    def __bool__(self):
        return bool(self.components)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.components)
        for k, d in other.components.items():
            out[k] = out[k] + d if k in out else d
        return GwaElement(self.parent, out)

    __radd__ = __add__

    def __neg__(self):
        return GwaElement(self.parent, {k: -d for k, d in self.components.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, GwaElement):
            return gwa_mul(self, other)
        if isinstance(other, LaurentPoly):
            return gwa_mul(self, self.parent.base(other))
        s = as_field(other)
        return GwaElement(self.parent, {k: d * s for k, d in self.components.items()})

    def __rmul__(self, other):
        if isinstance(other, LaurentPoly):
            return gwa_mul(self.parent.base(other), self)
        s = as_field(other)
        return GwaElement(self.parent, {k: d * s for k, d in self.components.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = self.parent.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def right_shift(self, s):
        """self * h^s, computed directly on the normal form."""
        return GwaElement(self.parent, {k: d.shift(s) for k, d in self.components.items()})

    def __eq__(self, other):
        if isinstance(other, GwaElement):
            return self.parent == other.parent and self.components == other.components
        if isinstance(other, (int, LaurentPoly, FieldElement)):
            return self == self.parent.base(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def to_vector(self):
        """Coordinates in the monomial basis {(grade, h exponent): coefficient}."""
        return {(k, e): c for k, d in self.components.items() for e, c in d.items()}

    @classmethod
    def from_vector(cls, parent, vec):
        comps = {}
        for (k, e), c in vec.items():
            comps.setdefault(k, {})[e] = c
        return cls(parent, {k: LaurentPoly(v) for k, v in comps.items()})

    def __str__(self):
        if not self.components:
            return "0"
        terms = []
        for k in sorted(self.components, reverse=True):
            d = self.components[k]
            gen = "" if k == 0 else ("x" if k > 0 else "y")
            z = gen if abs(k) <= 1 else f"{gen}^{abs(k)}"
            if d.is_monomial():
                ((e, c),) = d.items()
                neg = c.is_rational() and c.to_fraction() < 0
                mag = -c if neg else c
                factors = [] if mag.is_one() else [format_coefficient(mag)]
                if z:
                    factors.append(z)
                if e:
                    factors.append("h" if e == 1 else f"h^{e}")
                terms.append((neg, "*".join(factors) or "1"))
            else:
                terms.append((False, f"{z}*({d})" if z else f"({d})"))
        neg, body = terms[0]
        out = ("-" if neg else "") + body
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"GwaElement({self})"


def gwa_mul(u, v):
    """Normal form of u*v using d Z^j = Z^j sigma^{-j}(d) and the closed
    forms for x^i y^j and y^i x^j."""
    u._check(v)
    R = u.parent
    out = {}
    for j, e in v.components.items():
        for i, d in u.components.items():
            term = R.sigma(d, -j) * e
            c = R.contraction(i, j)
            if c is not None:
                term = c * term
            k = i + j
            out[k] = out[k] + term if k in out else term
    return GwaElement(R, out)


def _times_x(R, comps):
    out = {}
    for k, d in comps.items():
        term = R.sigma(d, -1)
        if k < 0:
            term = R.a_poly * term
        out[k + 1] = out[k + 1] + term if k + 1 in out else term
    return _clean(out)


def _times_y(R, comps):
    out = {}
    for k, d in comps.items():
        term = R.sigma(d, 1)
        if k > 0:
            term = R.sigma(R.a_poly, 1) * term
        out[k - 1] = out[k - 1] + term if k - 1 in out else term
    return _clean(out)


def gwa_mul_pairwise(u, v):
    """Reference product: multiply by one generator at a time, contracting
    only yx = a and xy = sigma(a).  Used as an oracle for :func:`gwa_mul`."""
    u._check(v)
    R = u.parent
    total = {}
    for j, e in v.components.items():
        comps = dict(u.components)
        step = _times_x if j > 0 else _times_y
        for _ in range(abs(j)):
            comps = step(R, comps)
        for k, d in comps.items():
            t = d * e
            total[k] = total[k] + t if k in total else t
    return GwaElement(R, total)


def power_product_identity(R, m, side):
    """Closed form of y^m x^m (side 'yx') or x^m y^m (side 'xy')."""
    if side == "yx":
        return R.prod_yx(m)
    if side == "xy":
        return R.prod_xy(m)
    raise ValueError("side must be 'yx' or 'xy'")


# -- automorphisms acting on elements ------------------------------------------

def _omega_flip(R, comps):
    """Omega: x <-> y, h -> -h, on a normal form."""
    return {-k: d.scale_variable(-1) for k, d in comps.items()}


@lru_cache(maxsize=4096)
def _eta_generator_power(R, gamma, mu_scalar, mu_hpower, gamma_i0, k):
    """eta(Z^k) as a normal form, eta(y) = y mu, eta(x) = mu^{-1} gamma^{i0} x."""
    if k == 0:
        return R.one().components
    if mu_hpower == 0:
        s = (mu_scalar.inverse() * gamma_i0) ** k if k > 0 else mu_scalar ** (-k)
        return {k: LaurentPoly.constant(s)}
    if k > 0:
        gen = R.base(LaurentPoly.monomial(-mu_hpower, mu_scalar.inverse() * gamma_i0)) * R.x()
    else:
        gen = R.y() * R.base(LaurentPoly.monomial(mu_hpower, mu_scalar))
    prev = GwaElement(R, _eta_generator_power(R, gamma, mu_scalar, mu_hpower, gamma_i0,
                                              k - 1 if k > 0 else k + 1))
    return (prev * gen).components


def apply_automorphism(phi, u):
    """Image of u under phi = Omega^omega o eta_{gamma, mu}."""
    R = u.parent
    gamma = phi.gamma
    gamma_i0 = phi.gamma_i0()
    out = {}
    for k, d in u.components.items():
        img = _eta_generator_power(R, gamma, phi.mu_scalar, phi.mu_hpower, gamma_i0, k)
        dd = d.scale_variable(gamma)
        if len(img) == 1 and k in img:
            term = {k: img[k] * dd}
        else:
            term = gwa_mul(GwaElement(R, img), R.base(dd)).components
        for kk, v in term.items():
            out[kk] = out[kk] + v if kk in out else v
    out = _clean(out)
    if phi.omega:
        out = _omega_flip(R, out)
    return GwaElement(R, out)


def monomial_basis(R, grade_bound, h_degree_bound):
    """Truncated monomial basis keys (grade, h exponent)."""
    lo = -h_degree_bound if R.is_laurent else 0
    return [(k, j) for k in range(-grade_bound, grade_bound + 1)
            for j in range(lo, h_degree_bound + 1)]


def fixed_space(R, phi, grade_bound=DEFAULT_GRADE_BOUND, h_degree_bound=DEFAULT_H_DEGREE_BOUND):
    """Exact basis of the phi-fixed vectors in the truncated monomial span.

    Diagonal maps are handled grade by grade; maps involving Omega pair
    grade k with grade -k.
    """
    from .autogroup import order_of

    if order_of(phi, R) is None:
        raise InfiniteOrder("fixed space requested for an automorphism of infinite order")
    keys = monomial_basis(R, grade_bound, h_degree_bound)
    blocks = {}
    for key in keys:
        k = key[0]
        block = abs(k) if phi.omega else k
        blocks.setdefault(block, []).append(key)
    one = as_field(1, R.conductor)
    basis = []
    for block in sorted(blocks, key=lambda b: (abs(b), b)):
        bkeys = blocks[block]
        images = []
        for k, j in bkeys:
            m = R.monomial(k, j)
            images.append((apply_automorphism(phi, m) - m).to_vector())
        for combo in kernel(images, one):
            vec = {bkeys[i]: c for i, c in combo.items()}
            basis.append(GwaElement.from_vector(R, vec))
    return basis
