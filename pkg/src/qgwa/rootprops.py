"""Root congruences of a(h), b(H) and A(H), and the classifiers built on them.

Roots c, c' are congruent when c = q^k c' for some integer k.  Two equal
occurrences (a multiple root) count as congruent with k = 0.

Congruence search is exact.  For q a root of unity every k modulo ord(q) is
tried.  Otherwise a complex embedding with |q| != 1 pins down the only
possible k, which is then checked exactly.  When every embedding has
|q| = 1 the search falls back to |k| <= k_bound and the answer is marked
incomplete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .autogroup import Automorphism, relation_defects, validate
from .errors import CrossCheckMismatch, InvalidParameter, LaurentBaseUnsupported, ZeroInput
from .exactfield import embed_complex, torsion_order
from .polynomials import BaseKind, FactoredPoly, descend_to_b

__all__ = [
    "DEFAULT_K_BOUND",
    "INFINITE",
    "PowerResult",
    "RootAnalysis",
    "CongruencePair",
    "CongruenceSearch",
    "MultiplicityVerdict",
    "GldimResult",
    "GldimFixedResult",
    "CalabiYauResult",
    "SimplicityResult",
    "SimplicityTransfer",
    "RigidityResult",
    "find_power_of_q",
    "analyze_roots",
    "congruent_pairs",
    "classify_A_multiplicity",
    "gldim_from_roots",
    "gldim",
    "gldim_fixed",
    "twisted_calabi_yau",
    "simple_from_roots",
    "is_simple",
    "simplicity_transfer",
    "rigidity",
]

DEFAULT_K_BOUND = 128
INFINITE = math.inf


class PowerResult(NamedTuple):
    k: Optional[int]
    complete: bool


def _galois_indices(n):
    return [j for j in range(1, max(n, 2)) if math.gcd(j, n) == 1] or [1]


def find_power_of_q(ratio, q, k_bound=DEFAULT_K_BOUND):
    """Some k with ratio = q^k, or None.

    For torsion q the returned k lies in [0, ord(q)).
    """
    if ratio.is_zero():
        raise ZeroInput("ratio must be nonzero")
    if q.is_zero() or q.is_one():
        raise InvalidParameter("q must not be 0 or 1")
    if ratio.is_one():
        return PowerResult(0, True)
    e = torsion_order(q)
    if e is not None:
        p = q
        for k in range(1, e):
            if p == ratio:
                return PowerResult(k, True)
            p = p * q
        return PowerResult(None, True)
    n = max(q.conductor, ratio.conductor)
    for j in _galois_indices(n):
        zq, rq = embed_complex(q, j)
        aq = abs(zq)
        if abs(aq - 1) <= 1e-6 + rq:
            continue
        zr, _ = embed_complex(ratio, j)
        if abs(zr) == 0.0:
            continue
        k = round(math.log(abs(zr)) / math.log(aq))
        for cand in (k - 1, k, k + 1):
            if q ** cand == ratio:
                return PowerResult(cand, True)
        return PowerResult(None, True)
    # every embedding of q lies on the unit circle
    for k in range(1, k_bound + 1):
        if q ** k == ratio:
            return PowerResult(k, True)
        if q ** (-k) == ratio:
            return PowerResult(-k, True)
    return PowerResult(None, False)


@dataclass(frozen=True)
class RootAnalysis:
    """Roots of a, of b (a(h) = b(h^n)) and of A(H) = prod_i sigma^{-i}(a)."""

    base_kind: BaseKind
    q: object
    n: int
    m: int
    roots_a: tuple
    zero_mult: int
    roots_b: tuple
    roots_A: tuple
    A_unit: object
    A_h_power: int
    ord_q: Optional[int]

    @property
    def q_prime(self):
        return self.q ** (self.m * self.n)

    @property
    def n_a(self):
        return self.zero_mult + sum(mu for _, mu in self.roots_a)

    def A_factored(self):
        return FactoredPoly(self.A_unit, self.A_h_power, self.roots_A)


def analyze_roots(R, n=1, m=1):
    """Root data of R.a together with b and A for given n = ord(gamma), m = ord(mu)."""
    a = R.a
    b = descend_to_b(a, n)
    q = R.q
    qn = q ** n
    roots_A = []
    unit = a.unit ** m
    nb = b.root_count
    kb = b.h_power
    for i in range(m):
        # sigma^{-i}(b(h^n)) = b(q^{-in} H)
        s = qn ** i
        unit = unit * s.inverse() ** (kb + nb)
        roots_A.extend((s * d, mult) for d, mult in b.roots)
    merged = FactoredPoly(unit, m * kb, tuple(roots_A))
    zero = a.h_power if R.base_kind is BaseKind.POLY else 0
    return RootAnalysis(R.base_kind, q, n, m, a.roots, zero, b.roots, merged.roots,
                        merged.unit, merged.h_power, torsion_order(q))


@dataclass(frozen=True)
class CongruencePair:
    root_i: object
    root_j: object
    k: int

    def holds(self, q):
        return self.root_i == (q ** self.k) * self.root_j


class CongruenceSearch(NamedTuple):
    pairs: list
    complete: bool


def _pairs(roots, q, k_range, k_bound):
    lo, hi = k_range if k_range is not None else (None, None)
    pairs = []
    complete = True
    if k_range is None or lo <= 0 <= hi:
        pairs.extend(CongruencePair(r, r, 0) for r, mult in roots if mult >= 2)
    e = torsion_order(q)
    values = [r for r, _ in roots]
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            ri, rj = values[i], values[j]
            res = find_power_of_q(ri / rj, q, k_bound)
            complete = complete and res.complete
            if res.k is None:
                continue
            k = res.k
            if e is not None:
                k, back = k % e, (-k) % e
                pair = CongruencePair(ri, rj, k) if k <= back else CongruencePair(rj, ri, back)
            else:
                pair = CongruencePair(ri, rj, k) if k > 0 else CongruencePair(rj, ri, -k)
            if k_range is None or lo <= pair.k <= hi:
                pairs.append(pair)
    return CongruenceSearch(pairs, complete)


def congruent_pairs(analysis, k_range=None, which="a", k_bound=DEFAULT_K_BOUND):
    """Congruent pairs among the nonzero roots of a, b or A.

    ``k_range`` is None (all k) or an inclusive pair (lo, hi).  Pairs are
    oriented so that k is the smallest nonnegative exponent available.
    Roots of b are compared with q^n and roots of A with q' = q^{mn}.
    """
    roots = {"a": analysis.roots_a, "b": analysis.roots_b, "A": analysis.roots_A}[which]
    q = {"a": analysis.q, "b": analysis.q ** analysis.n, "A": analysis.q_prime}[which]
    return _pairs(roots, q, k_range, k_bound)


class MultiplicityVerdict(NamedTuple):
    multiple: bool
    cause: str
    complete: bool


def _direct_multiple(analysis):
    zero_A = analysis.A_h_power if analysis.base_kind is BaseKind.POLY else 0
    return zero_A >= 2 or any(mult >= 2 for _, mult in analysis.roots_A)


def _lemma_multiple(analysis, k_bound):
    n, m = analysis.n, analysis.m
    prefix = ""
    if analysis.zero_mult > 0:
        if m > 1:
            return MultiplicityVerdict(True, "zero-root:m>1", True)
        if analysis.zero_mult > n:
            return MultiplicityVerdict(True, "zero-root:k>n", True)
        prefix = "zero-root:p:"
    if any(mult >= 2 for _, mult in analysis.roots_a):
        return MultiplicityVerdict(True, prefix + "multiple-root-of-a", True)
    e = analysis.ord_q
    if e is not None and any((n * k) % e == 0 for k in range(1, m)):
        return MultiplicityVerdict(True, prefix + "ord(q)-divides-nk", True)
    search = congruent_pairs(analysis, (1, m - 1), "a", k_bound) if m > 1 \
        else CongruenceSearch([], True)
    if search.pairs:
        return MultiplicityVerdict(True, prefix + "congruent-pair-k<=m-1", True)
    return MultiplicityVerdict(False, "none", search.complete)


def classify_A_multiplicity(analysis, k_bound=DEFAULT_K_BOUND):
    """Whether A(H) has a multiple root, with the condition that forces it.

    The lemma-based answer is always compared with a direct count of the
    multiplicities in ``analysis.roots_A``.
    """
    verdict = _lemma_multiple(analysis, k_bound)
    direct = _direct_multiple(analysis)
    if verdict.multiple != direct and verdict.complete:
        raise CrossCheckMismatch(
            f"root lemmas say multiple={verdict.multiple} ({verdict.cause}), "
            f"direct count says {direct}")
    return verdict


class GldimResult(NamedTuple):
    value: float
    cause: str
    complete: bool


def gldim_from_roots(base_kind, q, roots, zero_mult=0, k_bound=DEFAULT_K_BOUND):
    """Global dimension (1, 2 or INFINITE) of the quantum GWA with these data."""
    base_kind = BaseKind(base_kind)
    if base_kind is BaseKind.LAURENT:
        zero_mult = 0
    if zero_mult >= 2 or any(mult >= 2 for _, mult in roots):
        return GldimResult(INFINITE, "multiple-roots", True)
    if base_kind is BaseKind.POLY:
        return GldimResult(2, "polynomial-base", True)
    if torsion_order(q) is not None:
        return GldimResult(2, "q-root-of-unity", True)
    search = _pairs(roots, q, None, k_bound)
    if any(p.k != 0 for p in search.pairs):
        return GldimResult(2, "congruent-roots", True)
    return GldimResult(1, "none", search.complete)


def gldim(R, k_bound=DEFAULT_K_BOUND):
    zero = R.a.h_power if R.base_kind is BaseKind.POLY else 0
    return gldim_from_roots(R.base_kind, R.q, R.a.roots, zero, k_bound)


class GldimFixedResult(NamedTuple):
    value: float
    case: int
    cause: str
    direct: float
    complete: bool


def gldim_fixed(R, phi, k_bound=DEFAULT_K_BOUND):
    """Global dimension of the fixed ring of a diagonal phi.

    The case analysis on R (cases 1 to 4) is compared with the global
    dimension read off the fixed ring's own data (q', A).
    """
    from .fixedring import fixed_ring_diagonal

    pres = fixed_ring_diagonal(R, phi)
    an = pres.analysis
    g = gldim(R, k_bound)
    complete = g.complete
    if g.value == 1:
        case, value, cause = 1, 1, "gldim(R)=1"
    elif g.value == 2:
        case = 3 if an.ord_q is not None else 2
        mv = classify_A_multiplicity(an, k_bound)
        complete = complete and mv.complete
        value, cause = (INFINITE, mv.cause) if mv.multiple else (2, "A-simple-roots")
    else:
        case = 4
        simple_nonzero = all(mult == 1 for _, mult in an.roots_a)
        if an.m == 1 and an.zero_mult == an.n and simple_nonzero:
            value, cause = 2, "m=1-and-zero-root-of-multiplicity-n"
        else:
            value, cause = INFINITE, "A-multiple-roots"
    direct = gldim_from_roots(pres.base_kind, pres.q_prime, an.roots_A, an.A_h_power, k_bound)
    complete = complete and direct.complete
    if complete and direct.value != value:
        raise CrossCheckMismatch(
            f"gldim of the fixed ring: case {case} gives {value}, direct gives {direct.value}")
    return GldimFixedResult(value, case, cause, direct.value, complete)


class CalabiYauResult(NamedTuple):
    twisted_cy: bool
    nakayama: Optional[Automorphism]
    reason: str


def twisted_calabi_yau(R):
    """Twisted Calabi-Yau test for a polynomial base, with the Nakayama map."""
    if R.base_kind is not BaseKind.POLY:
        raise LaurentBaseUnsupported("the Calabi-Yau criterion is only available over k[h]")
    if R.a.h_power >= 2 or any(mult >= 2 for _, mult in R.a.roots):
        return CalabiYauResult(False, None, "a has a multiple root")
    nu = validate(Automorphism.eta(1, R.q.inverse()), R)
    defects = relation_defects(nu, R)
    if defects:
        raise CrossCheckMismatch(f"Nakayama map breaks relations {defects}")
    return CalabiYauResult(True, nu, "a has simple roots")


class SimplicityResult(NamedTuple):
    simple: bool
    reasons: list
    complete: bool


def simple_from_roots(base_kind, q, roots, k_bound=DEFAULT_K_BOUND):
    reasons = []
    complete = True
    if BaseKind(base_kind) is BaseKind.POLY:
        reasons.append("polynomial base")
    if torsion_order(q) is not None:
        reasons.append("q is a root of unity")
    else:
        search = _pairs(roots, q, None, k_bound)
        complete = search.complete
        if any(p.k != 0 for p in search.pairs):
            reasons.append("a has congruent roots")
    return SimplicityResult(not reasons, reasons, complete)


def is_simple(R, k_bound=DEFAULT_K_BOUND):
    return simple_from_roots(R.base_kind, R.q, R.a.roots, k_bound)


class SimplicityTransfer(NamedTuple):
    algebra: SimplicityResult
    fixed: SimplicityResult


def simplicity_transfer(R, phi, k_bound=DEFAULT_K_BOUND):
    """Simplicity of R and of its fixed ring, computed independently."""
    from .fixedring import fixed_ring_diagonal

    pres = fixed_ring_diagonal(R, phi)
    mine = is_simple(R, k_bound)
    theirs = simple_from_roots(pres.base_kind, pres.q_prime, pres.analysis.roots_A, k_bound)
    if mine.complete and theirs.complete and mine.simple != theirs.simple:
        raise CrossCheckMismatch(
            f"R simple = {mine.simple} but fixed ring simple = {theirs.simple}")
    return SimplicityTransfer(mine, theirs)


class RigidityResult(NamedTuple):
    non_isomorphic: bool
    deg_A: int
    expected_deg_A: object
    n_a: int


def rigidity(R, phi):
    """Whether the fixed ring differs from R, with the degree comparison
    deg_H A = N_a m / n against N_a."""
    from fractions import Fraction

    from .fixedring import fixed_ring_diagonal

    pres = fixed_ring_diagonal(R, phi)
    an = pres.analysis
    A = pres.A_expanded
    deg_A = A.degree() - (A.valuation() if R.base_kind is BaseKind.LAURENT else 0)
    n_a = an.n_a
    expected = Fraction(n_a * an.m, an.n)
    if deg_A != expected:
        raise CrossCheckMismatch(f"deg A = {deg_A}, expected {expected}")
    return RigidityResult(not phi.is_identity(), deg_A, expected, n_a)
