"""Automorphisms eta_{gamma,mu} and Omega of a quantum GWA.

An :class:`Automorphism` is the map Omega^omega o eta_{gamma,mu} with
mu = mu_scalar * h^mu_hpower.  On generators::

    eta(h) = gamma h,   eta(y) = y mu,   eta(x) = mu^{-1} gamma^{i0} x
    Omega(h) = -h,      Omega(y) = x,    Omega(x) = y        (q = -1 only)
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import reduce
from typing import NamedTuple, Optional

from .errors import (
    GammaNotInCg,
    InfiniteOrderGenerator,
    InvalidAutomorphism,
    InvalidI0,
    LaurentMuInPolyBase,
    OmegaRequiresQMinusOne,
    SymmetricDefiningPolynomial,
    ZeroPolynomial,
)
from .exactfield import FieldElement, as_field, torsion_order
from .gwacore import apply_automorphism
from .polynomials import BaseKind, LaurentPoly, expand

__all__ = [
    "Automorphism",
    "SymmetryWitness",
    "Gap",
    "SubgroupClassification",
    "default_i0",
    "congruence_gap",
    "validate",
    "compose",
    "inverse",
    "power",
    "order_of",
    "classify_subgroup",
    "detect_symmetric",
    "relation_defects",
]


@dataclass(frozen=True)
class Automorphism:
    omega: bool
    gamma: FieldElement
    mu_scalar: FieldElement
    mu_hpower: int = 0
    # the action does not depend on the choice of i0 for valid maps;
    # None means "not chosen yet", filled in by validate()
    i0: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_field(self.gamma))
        object.__setattr__(self, "mu_scalar", as_field(self.mu_scalar))
        if self.gamma.is_zero() or self.mu_scalar.is_zero():
            raise InvalidAutomorphism("gamma and mu must be nonzero")

    @classmethod
    def eta(cls, gamma, mu, mu_hpower=0, i0=None):
        return cls(False, gamma, mu, mu_hpower, i0)

    @classmethod
    def identity(cls, i0=None):
        return cls(False, 1, 1, 0, i0)

    @classmethod
    def Omega(cls, i0=None):
        return cls(True, 1, 1, 0, i0)

    def gamma_i0(self):
        """gamma^i0; needs i0 unless gamma = 1."""
        if self.i0 is None:
            if self.gamma.is_one():
                return self.gamma
            raise InvalidAutomorphism("i0 not chosen; validate against an algebra first")
        return self.gamma ** self.i0

    def is_identity(self):
        return not self.omega and self.gamma.is_one() and self.mu_scalar.is_one() \
            and self.mu_hpower == 0

    @property
    def mu_is_scalar(self):
        return self.mu_hpower == 0

    def __str__(self):
        mu = str(self.mu_scalar)
        if self.mu_hpower:
            mu = f"{mu}*h^{self.mu_hpower}"
        eta = f"eta[gamma={self.gamma}, mu={mu}]"
        return f"Omega o {eta}" if self.omega else eta


@dataclass(frozen=True)
class SymmetryWitness:
    """a(h) = delta * h^l * a(lam / h)."""

    l: int
    delta: FieldElement
    lam: FieldElement


class Gap(NamedTuple):
    g: int
    monomial: bool


@dataclass(frozen=True)
class SubgroupClassification:
    case: int
    generators: tuple
    order: int
    cyclic: bool


def default_i0(R):
    """Largest exponent of a over k[h], smallest over k[h^{+-1}]."""
    exps = R.a_poly.exponents()
    return exps[-1] if R.base_kind is BaseKind.POLY else exps[0]


def congruence_gap(a):
    """gcd of the pairwise exponent differences of ``a`` (a LaurentPoly)."""
    if a.is_zero():
        raise ZeroPolynomial("congruence gap of zero")
    exps = a.exponents()
    if len(exps) == 1:
        return Gap(0, True)
    return Gap(reduce(math.gcd, (e - exps[0] for e in exps[1:])), False)


def validate(phi, R):
    """Check that phi defines an automorphism of R; fill in a default i0."""
    exps = R.a_poly.exponents()
    if phi.i0 is None:
        phi = replace(phi, i0=default_i0(R))
    elif phi.i0 not in exps:
        raise InvalidI0(f"i0 = {phi.i0} is not an exponent of a")
    if phi.omega and R.q != -1:
        raise OmegaRequiresQMinusOne("Omega exists only for q = -1")
    if phi.mu_hpower and R.base_kind is BaseKind.POLY:
        raise LaurentMuInPolyBase("mu must be a scalar over k[h]")
    gap = congruence_gap(R.a_poly)
    if not gap.monomial and not (phi.gamma ** gap.g).is_one():
        raise GammaNotInCg(f"gamma = {phi.gamma} is not a {gap.g}-th root of unity")
    ref = phi.gamma ** phi.i0
    for j0 in exps:
        # independence of the chosen index
        assert phi.gamma ** j0 == ref
    return phi


def _eta_compose(outer, inner):
    g2, c2, s2 = outer
    g1, c1, s1 = inner
    return (g2 * g1, (g2 ** s1) * c2 * c1, s2 + s1)


def _eta_past_omega(eta, gamma_i0):
    """eta_{gamma,nu} o Omega = Omega o eta_{gamma, gamma^i0 nu^{-1}}."""
    g, c, s = eta
    return (g, gamma_i0 * c.inverse(), -s)


def compose(outer, inner):
    """outer o inner, in the canonical form Omega^eps o eta."""
    i0 = outer.i0 if outer.i0 is not None else inner.i0
    e1 = (outer.gamma, outer.mu_scalar, outer.mu_hpower)
    e2 = (inner.gamma, inner.mu_scalar, inner.mu_hpower)
    if inner.omega:
        e1 = _eta_past_omega(e1, outer.gamma_i0() if outer.i0 is not None
                             else replace(outer, i0=i0).gamma_i0())
        omega = not outer.omega
    else:
        omega = outer.omega
    g, c, s = _eta_compose(e1, e2)
    return Automorphism(omega, g, c, s, i0)


def inverse(phi):
    g, c, s = phi.gamma, phi.mu_scalar, phi.mu_hpower
    eta_inv = Automorphism(False, g.inverse(), (g ** s) * c.inverse(), -s, phi.i0)
    if not phi.omega:
        return eta_inv
    return compose(eta_inv, Automorphism.Omega(phi.i0))


def power(phi, e):
    result = Automorphism.identity(phi.i0)
    base = phi if e >= 0 else inverse(phi)
    for _ in range(abs(e)):
        result = compose(base, result)
    return result


def order_of(phi, R=None):
    """Order of phi, or None when it is infinite."""
    if phi.omega:
        inner = order_of(compose(phi, phi))
        return None if inner is None else 2 * inner
    if phi.mu_hpower:
        return None
    og = torsion_order(phi.gamma)
    om = torsion_order(phi.mu_scalar)
    if og is None or om is None:
        return None
    return math.lcm(og, om)


def _closure(generators):
    ident = Automorphism.identity(generators[0].i0)
    seen = {ident: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for el in frontier:
            for g in generators:
                p = compose(g, el)
                if p not in seen:
                    seen[p] = p
                    nxt.append(p)
        frontier = nxt
    return list(seen.values())


def classify_subgroup(generators, R):
    """Identify the finite subgroup generated by ``generators``.

    Case 1: <eta>, Case 2: <Omega o eta>, Case 3: <Omega o eta, eta'>.
    """
    generators = [validate(g, R) for g in generators]
    for g in generators:
        if order_of(g) is None:
            raise InfiniteOrderGenerator(f"{g} has infinite order")
    if detect_symmetric(R.a, R.base_kind) is not None:
        raise SymmetricDefiningPolynomial("classification requires a non-symmetric a")
    elements = _closure(generators)
    size = len(elements)
    has_omega = any(e.omega for e in elements)
    gens = [e for e in elements if order_of(e) == size]
    if gens:
        # prefer Omega-type generators, then the earliest input generator
        gens.sort(key=lambda e: (not e.omega, e not in generators))
        return SubgroupClassification(2 if has_omega else 1, (gens[0],), size, True)
    if not has_omega:
        return SubgroupClassification(1, tuple(generators), size, False)
    diag = [e for e in elements if not e.omega]
    omega_el = next(e for e in generators if e.omega) if any(g.omega for g in generators) \
        else next(e for e in elements if e.omega)
    kgens = [e for e in diag if order_of(e) == len(diag)]
    second = kgens[0] if kgens else next(e for e in diag if not e.is_identity())
    return SubgroupClassification(3, (omega_el, second), size, False)


def detect_symmetric(a, base_kind):
    """Witness (l, delta, lam) with a(h) = delta h^l a(lam/h), or None.

    Only meaningful over a Laurent base.
    """
    if BaseKind(base_kind) is BaseKind.POLY:
        return None
    roots = a.roots
    if not roots:
        return None
    mults = {r: m for r, m in roots}
    first = roots[0][0]
    total = a.root_count
    tried = []
    for cj, _ in roots:
        lam = first * cj
        if lam in tried:
            continue
        tried.append(lam)
        image = {}
        for r, m in roots:
            t = lam / r
            image[t] = image.get(t, 0) + m
        if image != mults:
            continue
        prod = FieldElement.rational(1, lam.conductor)
        for r, m in roots:
            prod = prod * (-r) ** m
        p = a.h_power
        delta = ((lam ** p) * prod).inverse()
        ell = 2 * p + total
        witness = SymmetryWitness(ell, delta, lam)
        if _witness_holds(a, witness):
            return witness
    return None


def _witness_holds(a, w):
    ap = expand(a)
    flipped = LaurentPoly({-e: c * (w.lam ** e) for e, c in ap.items()})
    return ap == flipped.shift(w.l) * w.delta


def relation_defects(phi, R):
    """Names of defining relations of R not preserved by phi (empty when phi is
    an algebra map)."""
    X = apply_automorphism(phi, R.x())
    Y = apply_automorphism(phi, R.y())
    H = apply_automorphism(phi, R.h())
    a_img = apply_automorphism(phi, R.base(R.a_poly))
    sa_img = apply_automorphism(phi, R.base(R.sigma(R.a_poly, 1)))
    checks = {
        "xh=qhx": X * H - R.q * (H * X),
        "yh=q^-1hy": Y * H - R.q.inverse() * (H * Y),
        "yx=a": Y * X - a_img,
        "xy=sigma(a)": X * Y - sa_img,
    }
    if R.is_laurent:
        Hinv = apply_automorphism(phi, R.h(-1))
        checks["h*h^-1=1"] = H * Hinv - R.one()
    return [name for name, val in checks.items() if not val.is_zero()]
