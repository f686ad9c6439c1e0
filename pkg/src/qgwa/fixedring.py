"""Fixed rings of finite cyclic automorphism groups of a quantum GWA.

Diagonal case: for phi = eta_{gamma,mu} with n = ord(gamma), m = ord(mu) and
gcd(m, n) = 1 the fixed ring is again a quantum GWA on X = x^m, Y = y^m,
H = h^n with q' = q^{mn} and A(H) = prod_{i<m} a(q^{-i} h).

Omega case (q = -1): phi = Omega o eta_{gamma,mu} with gamma = +-1.  With
X = mu x + y, Y = mu x - y one has YX - XY = A(H), X^2 - Y^2 = B(H), where
A = 2 mu (a(-h) - a(h)) and B = 2 mu (a(h) + a(-h)).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .autogroup import detect_symmetric, validate
from .errors import (
    CrossCheckMismatch,
    HypothesisViolated,
    InfiniteOrder,
    InvalidAutomorphism,
    InvalidGamma,
    RequiresQMinusOne,
    VerificationFailed,
)
from .exactfield import torsion_order
from .gwacore import (
    DEFAULT_GRADE_BOUND,
    DEFAULT_H_DEGREE_BOUND,
    QuantumGwa,
    fixed_space,
)
from .linalg import Echelon, same_span
from .polynomials import LaurentPoly, expand
from .rootprops import analyze_roots

__all__ = [
    "PresentationKind",
    "FixedRingPresentation",
    "VerificationReport",
    "ProbeReport",
    "fixed_ring_diagonal",
    "fixed_ring_omega",
    "fixed_ring",
    "relation_values",
    "verify_fixed_ring",
    "probe_gcd_failure",
]


class PresentationKind(str, Enum):
    DIAGONAL = "DiagonalGwa"
    OMEGA_MINUS_ONE = "OmegaMinusOne"
    OMEGA_PLUS_ONE = "OmegaPlusOne"


@dataclass(frozen=True)
class FixedRingPresentation:
    kind: PresentationKind
    parent: QuantumGwa
    phi: object
    n: int
    m: int
    generators: dict
    relations: tuple
    A_expanded: LaurentPoly
    A_factored: object = None
    B_expanded: Optional[LaurentPoly] = None
    q_prime: object = None
    algebra: Optional[QuantumGwa] = None
    analysis: object = None
    warnings: tuple = field(default_factory=tuple)

    @property
    def base_kind(self):
        return self.parent.base_kind

    def A_in_parent(self):
        """A(H) as an element of the parent algebra."""
        step = self.n if self.kind is PresentationKind.DIAGONAL else 1
        return self.parent.base(self.A_expanded.inflate(step))


def _symmetric_warning(R):
    w = detect_symmetric(R.a, R.base_kind)
    if w is None:
        return ()
    return (f"a is symmetric (l={w.l}, delta={w.delta}, lambda={w.lam}); "
            "the automorphism group is larger than the diagonal and Omega maps",)


def fixed_ring_diagonal(R, phi):
    """Presentation of the fixed ring of a diagonal automorphism of finite order."""
    if phi.omega:
        raise InvalidAutomorphism("expected a diagonal automorphism")
    phi = validate(phi, R)
    if phi.mu_hpower:
        raise InfiniteOrder("mu is not a scalar, so eta has infinite order")
    n = torsion_order(phi.gamma)
    m = torsion_order(phi.mu_scalar)
    if n is None or m is None:
        raise InfiniteOrder("gamma and mu must be roots of unity")
    if math.gcd(m, n) != 1:
        raise HypothesisViolated("gcd", f"gcd(m, n) = gcd({m}, {n}) != 1")
    if phi.i0 % n:
        raise HypothesisViolated("i0", f"n = {n} does not divide i0 = {phi.i0}")
    if any(e % n for e in R.a_poly.exponents()) or R.a.h_power % n:
        raise HypothesisViolated("subring", f"a is not a polynomial in h^{n}")

    if (R.q ** (m * n)).is_one():
        raise HypothesisViolated("q-prime", f"q^(mn) = 1 for m = {m}, n = {n}; the fixed ring is not quantum")

    analysis = analyze_roots(R, n, m)
    A_expanded = R.prod_yx(m).deflate(n)
    A_factored = analysis.A_factored()
    if expand(A_factored) != A_expanded:
        raise CrossCheckMismatch("root formula for A disagrees with the expanded product")
    q_prime = R.q ** (m * n)
    algebra = QuantumGwa(R.base_kind, q_prime, A_factored)

    gens = {"X": R.x() ** m, "Y": R.y() ** m, "H": R.h(n)}
    relations = ["XH=q'HX", "YH=q'^-1HY", "YX=A", "XY=sigma'(A)"]
    if R.is_laurent:
        gens["H^-1"] = R.h(-n)
        relations.append("H*H^-1=1")
    return FixedRingPresentation(
        PresentationKind.DIAGONAL, R, phi, n, m, gens, tuple(relations), A_expanded,
        A_factored, None, q_prime, algebra, analysis, _symmetric_warning(R))


def fixed_ring_omega(R, phi):
    """Presentation of the fixed ring of Omega o eta_{gamma,mu}, q = -1."""
    if R.q != -1:
        raise RequiresQMinusOne("the Omega case needs q = -1")
    if not phi.omega:
        raise InvalidAutomorphism("expected an automorphism involving Omega")
    if phi.gamma != 1 and phi.gamma != -1:
        raise InvalidGamma("gamma must be 1 or -1")
    if phi.mu_hpower:
        raise HypothesisViolated("mu-scalar", "mu must be a scalar")
    phi = validate(phi, R)
    if not phi.gamma_i0().is_one():
        raise HypothesisViolated("i0", "gamma^i0 must be 1")

    mu = phi.mu_scalar
    a = R.a_poly
    a_neg = a.scale_variable(-1)
    A = (a_neg - a) * (2 * mu)
    B = (a + a_neg) * (2 * mu)
    X = mu * R.x() + R.y()
    Y = mu * R.x() - R.y()
    H = R.h()
    if phi.gamma == -1:
        kind = PresentationKind.OMEGA_MINUS_ONE
        gens = {"u": X, "v": H}
        relations = ["uv+vu=0", "YX-XY=A(H)", "X^2-Y^2=B(H)"]
        if R.is_laurent:
            gens["v^-1"] = R.h(-1)
            relations.append("v*v^-1=1")
    else:
        kind = PresentationKind.OMEGA_PLUS_ONE
        gens = {"X": X, "Y^2": Y * Y, "YH": Y * H, "H^2": H * H}
        relations = ["YX-XY=A(H)", "X^2-Y^2=B(H)", "Y(YH)+(YH)Y=0", "Y^2X-XY^2=0",
                     "X(YH)+(YH)X+A(H)H=0", "H^2X=XH^2", "H^2Y=YH^2"]
        if R.is_laurent:
            gens["H^-2"] = R.h(-2)
            relations.append("H^2*H^-2=1")
    return FixedRingPresentation(
        kind, R, phi, 2, 1, gens, tuple(relations), A, None, B, R.q, None, None,
        _symmetric_warning(R))


def fixed_ring(R, phi):
    return fixed_ring_omega(R, phi) if phi.omega else fixed_ring_diagonal(R, phi)


def relation_values(pres):
    """Each presented relation as an element of the parent that must vanish."""
    R = pres.parent
    g = pres.generators
    A = pres.A_in_parent()
    out = {}
    if pres.kind is PresentationKind.DIAGONAL:
        X, Y, H = g["X"], g["Y"], g["H"]
        qp = pres.q_prime
        sA = R.base(pres.A_expanded.scale_variable(qp).inflate(pres.n))
        out["XH=q'HX"] = X * H - qp * (H * X)
        out["YH=q'^-1HY"] = Y * H - qp.inverse() * (H * Y)
        out["YX=A"] = Y * X - A
        out["XY=sigma'(A)"] = X * Y - sA
        if "H^-1" in g:
            out["H*H^-1=1"] = H * g["H^-1"] - R.one()
        return out
    mu = pres.phi.mu_scalar
    X = mu * R.x() + R.y()
    Y = mu * R.x() - R.y()
    B = R.base(pres.B_expanded)
    H = R.h()
    out["YX-XY=A(H)"] = Y * X - X * Y - A
    out["X^2-Y^2=B(H)"] = X * X - Y * Y - B
    if pres.kind is PresentationKind.OMEGA_MINUS_ONE:
        u, v = g["u"], g["v"]
        out["uv+vu=0"] = u * v + v * u
        if "v^-1" in g:
            out["v*v^-1=1"] = v * g["v^-1"] - R.one()
        return out
    Y2, YH, H2 = g["Y^2"], g["YH"], g["H^2"]
    out["Y(YH)+(YH)Y=0"] = Y * YH + YH * Y
    out["Y^2X-XY^2=0"] = Y2 * X - X * Y2
    out["X(YH)+(YH)X+A(H)H=0"] = X * YH + YH * X + A * H
    out["H^2X=XH^2"] = H2 * X - X * H2
    out["H^2Y=YH^2"] = H2 * Y - Y * H2
    if "H^-2" in g:
        out["H^2*H^-2=1"] = H2 * g["H^-2"] - R.one()
    return out


@dataclass
class VerificationReport:
    passed: bool
    relations: dict
    grades: list  # (grade or |grade|, dim of fixed space, dim of presented span)
    grade_bound: int
    h_degree_bound: int
    failure: Optional[str] = None


def _in_box(vec, grade_bound, lo, hi):
    return all(abs(k) <= grade_bound and lo <= j <= hi for k, j in vec)


def _fail(report, message, counterexample, raise_on_failure):
    report.passed = False
    report.failure = message
    if raise_on_failure:
        raise VerificationFailed(message, counterexample)
    return report


def verify_fixed_ring(R, phi, pres, grade_bound=DEFAULT_GRADE_BOUND,
                      h_degree_bound=DEFAULT_H_DEGREE_BOUND, raise_on_failure=True):
    """Brute-force check of a presentation.

    Relations are evaluated with the generator map, then the truncated fixed
    space is compared with the span of the presentation's monomials.
    """
    report = VerificationReport(True, {}, [], grade_bound, h_degree_bound)
    values = relation_values(pres)
    for name in pres.relations:
        report.relations[name] = values[name].is_zero()
    for name in pres.relations:
        if not report.relations[name]:
            return _fail(report, f"relation {name} fails", values[name], raise_on_failure)

    phi = validate(phi, R)
    lo = -h_degree_bound if R.is_laurent else 0
    fixed = fixed_space(R, phi, grade_bound, h_degree_bound)
    if pres.kind is PresentationKind.DIAGONAL:
        return _verify_diagonal(R, pres, fixed, report, lo, raise_on_failure)
    return _verify_omega(R, pres, fixed, report, lo, raise_on_failure)


def _verify_diagonal(R, pres, fixed, report, lo, raise_on_failure):
    G, hb = report.grade_bound, report.h_degree_bound
    m, n = pres.m, pres.n
    by_grade = {}
    for f in fixed:
        (k,) = f.grades()
        by_grade.setdefault(k, []).append(f.to_vector())
    X, Y, H = pres.generators["X"], pres.generators["Y"], pres.generators["H"]
    Hinv = pres.generators.get("H^-1")
    words = {}
    for i in range(0, G // m + 1):
        for side, Z in ((1, X), (-1, Y)):
            if i == 0 and side < 0:
                continue
            Zi = Z ** i
            for j in range(-(-lo // n), hb // n + 1):
                Hj = H ** j if j >= 0 else Hinv ** (-j)
                words.setdefault(side * i * m, []).append((Zi * Hj).to_vector())
    for k in range(-G, G + 1):
        fk, wk = by_grade.get(k, []), words.get(k, [])
        report.grades.append((k, len(fk), len(wk)))
        if len(fk) != len(wk) or not same_span(fk, wk):
            return _fail(report, f"fixed space and presented span differ in grade {k}",
                         (k, len(fk), len(wk)), raise_on_failure)
    return report


def _verify_omega(R, pres, fixed, report, lo, raise_on_failure):
    G, hb = report.grade_bound, report.h_degree_bound
    phi = pres.phi
    mu = phi.mu_scalar
    X = mu * R.x() + R.y()
    Y = mu * R.x() - R.y()
    span_a = R.a_poly.degree() - R.a_poly.valuation()
    hi = hb + ((G + 1) // 2) * span_a
    plus = pres.kind is PresentationKind.OMEGA_PLUS_ONE
    Xp = [R.one()]
    for _ in range(G):
        Xp.append(Xp[-1] * X)
    ext = Echelon()
    inside = []
    for i in range(G + 1):
        for eps in ((0, 1) if plus else (0,)):
            if i + eps > G:
                continue
            base = Xp[i] * Y if eps else Xp[i]
            for j in range(lo, hi + 1):
                if plus and (eps + j) % 2:
                    continue
                vec = base.right_shift(j).to_vector()
                ext.add(vec)
                if _in_box(vec, G, lo, hb):
                    inside.append(vec)
    fixed_ech = Echelon()
    blocks = {}
    for f in fixed:
        vec = f.to_vector()
        fixed_ech.add(vec)
        b = max(abs(k) for k in f.grades())
        blocks[b] = blocks.get(b, 0) + 1
        if not ext.contains(vec):
            return _fail(report, "a fixed element is outside the presented span", f,
                         raise_on_failure)
    for vec in inside:
        if not fixed_ech.contains(vec):
            return _fail(report, "a presented word is not fixed",
                         vec, raise_on_failure)
    report.grades = [(b, blocks.get(b, 0), None) for b in range(G + 1)]
    return report


@dataclass
class ProbeReport:
    generators: list
    exceeds_three: bool
    grade_bound: int
    h_degree_bound: int
    fixed_dimension: int
    experimental: bool = True

    @property
    def count(self):
        return len(self.generators)


def probe_gcd_failure(R, phi, grade_bound=DEFAULT_GRADE_BOUND,
                      h_degree_bound=DEFAULT_H_DEGREE_BOUND):
    """Greedy minimal generating set of the truncated fixed subalgebra.

    Candidates are the fixed basis elements ordered by |grade|, then |h exponent|;
    a candidate becomes a generator when it is not in the subalgebra
    generated so far.  Products leaving the truncation are dropped, so the
    result only speaks about the truncation.
    """
    if phi.omega:
        raise InvalidAutomorphism("the probe handles diagonal automorphisms")
    phi = validate(phi, R)
    lo = -h_degree_bound if R.is_laurent else 0
    fixed = fixed_space(R, phi, grade_bound, h_degree_bound)

    def weight(f):
        vec = f.to_vector()
        return min((abs(k), abs(j), -k, j) for k, j in vec)

    candidates = sorted(fixed, key=weight)
    span = Echelon()
    members = []
    gens = []

    def insert(el):
        vec = el.to_vector()
        if not _in_box(vec, grade_bound, lo, h_degree_bound):
            return False
        if span.add(vec):
            members.append(el)
            return True
        return False

    insert(R.one())
    for c in candidates:
        if span.contains(c.to_vector()):
            continue
        gens.append(c)
        queue = [c * v for v in list(members)]
        while queue:
            el = queue.pop()
            if insert(el):
                queue.extend(g * el for g in gens)
    return ProbeReport(gens, len(gens) > 3, grade_bound, h_degree_bound, len(fixed))
