"""The analysis pipeline behind ``qgwa analyze`` and its report formats.

Stages run in order; an error in one stage is recorded in the report and
the stages that do not depend on it still run.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .autogroup import Automorphism, classify_subgroup, detect_symmetric, order_of, validate
from .errors import (
    CrossCheckMismatch,
    HypothesisViolated,
    InfiniteOrder,
    InvalidAutomorphism,
    QgwaError,
    SymmetricDefiningPolynomial,
    VerificationFailed,
)
from .fixedring import PresentationKind, fixed_ring, probe_gcd_failure, verify_fixed_ring
from .gwacore import QuantumGwa
from .polynomials import BaseKind
from .rootprops import (
    INFINITE,
    analyze_roots,
    classify_A_multiplicity,
    congruent_pairs,
    gldim,
    gldim_fixed,
    is_simple,
    rigidity,
    simplicity_transfer,
    twisted_calabi_yau,
)

__all__ = ["AnalysisReport", "run_analysis", "emit_report", "report_schema", "SCHEMA_VERSION"]

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_PARSE = 3
EXIT_INTERNAL = 4

# errors meaning "the mathematics does not apply to this input"
_USER_MATH_ERRORS = (HypothesisViolated, InvalidAutomorphism, InfiniteOrder,
                     SymmetricDefiningPolynomial)


# -- serialization of exact values ---------------------------------------------

def _elem(x):
    return {
        "conductor": x.conductor,
        "coords": [str(c) for c in x.coords],
        "display": str(x),
    }


def _poly(p, var="h"):
    return {
        "terms": [{"exponent": e, "coefficient": _elem(p.coefficient(e))} for e in p.exponents()],
        "display": p.to_string(var),
    }


def _factored(f, var="h"):
    return {
        "unit": _elem(f.unit),
        "h_power": f.h_power,
        "roots": [{"root": _elem(r), "multiplicity": m} for r, m in f.roots],
        "display": f.to_string(var),
    }


def _dim(v):
    return "infinite" if v == INFINITE else int(v)


def _automorphism(phi):
    return {
        "omega": phi.omega,
        "gamma": _elem(phi.gamma),
        "mu": _elem(phi.mu_scalar),
        "mu_hpower": phi.mu_hpower,
        "i0": phi.i0,
        "display": str(phi),
    }


@dataclass
class AnalysisReport:
    """Structured result of :func:`run_analysis`; every value is JSON-ready."""

    algebra: dict = None
    automorphism: dict = None
    classification: dict = None
    symmetric: dict = None
    fixed_ring: dict = None
    roots: dict = None
    gldim: dict = None
    calabi_yau: dict = None
    simplicity: dict = None
    rigidity: dict = None
    verification: dict = None
    probe: dict = None
    complete: bool = True
    warnings: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def record(self, stage, exc):
        if isinstance(exc, (CrossCheckMismatch, VerificationFailed)):
            code = EXIT_INTERNAL
        elif isinstance(exc, _USER_MATH_ERRORS):
            code = EXIT_HYPOTHESIS
        else:
            code = EXIT_INTERNAL
        entry = {"stage": stage, "type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, HypothesisViolated):
            entry["reason"] = exc.reason
        self.errors.append(entry)
        self.exit_code = max(self.exit_code, code)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "algebra": self.algebra,
            "automorphism": self.automorphism,
            "classification": self.classification,
            "symmetric": self.symmetric,
            "fixed_ring": self.fixed_ring,
            "roots": self.roots,
            "gldim": self.gldim,
            "calabi_yau": self.calabi_yau,
            "simplicity": self.simplicity,
            "rigidity": self.rigidity,
            "verification": self.verification,
            "probe": self.probe,
            "complete": self.complete,
            "warnings": list(self.warnings),
            "errors": list(self.errors),
            "exit_code": self.exit_code,
        }


class _Stage:
    """Context manager that records QgwaErrors for a named stage."""

    def __init__(self, report, name):
        self.report, self.name = report, name
        self.ok = False

    def __enter__(self):
        return self

    def __exit__(self, kind, exc, tb):
        if exc is None:
            self.ok = True
            return False
        if isinstance(exc, QgwaError):
            self.report.record(self.name, exc)
            return True
        return False


def _presentation_dict(pres):
    out = {
        "kind": pres.kind.value,
        "generators": {name: str(el) for name, el in pres.generators.items()},
        "relations": list(pres.relations),
        "q_prime": _elem(pres.q_prime) if pres.q_prime is not None else None,
        "A": _poly(pres.A_expanded, "H"),
        "A_factored": _factored(pres.A_factored, "H") if pres.A_factored is not None else None,
        "B": _poly(pres.B_expanded, "H") if pres.B_expanded is not None else None,
        "n": pres.n if pres.kind is PresentationKind.DIAGONAL else None,
        "m": pres.m if pres.kind is PresentationKind.DIAGONAL else None,
    }
    if pres.kind is not PresentationKind.DIAGONAL:
        out["A"] = _poly(pres.A_expanded, "h")
        out["B"] = _poly(pres.B_expanded, "h")
    return out


def _pairs_list(search):
    return [{"root_i": _elem(p.root_i), "root_j": _elem(p.root_j), "k": p.k}
            for p in search.pairs]


def run_analysis(req):
    """Run every stage for ``req`` and collect the results."""
    rep = AnalysisReport()
    opts = req.options
    kb = opts.k_bound

    with _Stage(rep, "normalize") as st:
        R, norm = QuantumGwa(req.base_kind, req.q, req.a).normalized()
        rep.algebra = {
            "base": R.base_kind.value,
            "conductor": req.conductor,
            "q": _elem(R.q),
            "a_input": _factored(req.a),
            "a": _factored(R.a),
            "a_expanded": _poly(R.a_poly),
            "normalization": {"scale": _elem(norm.scale), "shift": norm.shift},
            "display": str(R),
        }
    if not st.ok:
        return rep

    phi = None
    with _Stage(rep, "validate"):
        phi = validate(Automorphism(req.omega, req.gamma, req.mu, req.mu_hpower, req.i0), R)
        rep.automorphism = _automorphism(phi)
        rep.automorphism["order"] = order_of(phi, R)

    with _Stage(rep, "symmetric"):
        w = detect_symmetric(R.a, R.base_kind)
        rep.symmetric = {"symmetric": w is not None}
        if w is not None:
            rep.symmetric.update({"l": w.l, "delta": _elem(w.delta), "lambda": _elem(w.lam)})
            rep.warnings.append(
                "a is symmetric: the automorphism group has maps outside the diagonal "
                "and Omega families, so classification and fixed-ring results are conjectural")

    if phi is not None:
        try:
            cls = classify_subgroup([phi], R)
            rep.classification = {
                "case": cls.case,
                "order": cls.order,
                "cyclic": cls.cyclic,
                "generators": [str(g) for g in cls.generators],
            }
        except SymmetricDefiningPolynomial as exc:
            rep.classification = None
            rep.warnings.append(f"classification skipped: {exc}")
        except QgwaError as exc:
            rep.record("classify", exc)

    pres = None
    if phi is not None:
        with _Stage(rep, "fixed_ring"):
            pres = fixed_ring(R, phi)
            rep.fixed_ring = _presentation_dict(pres)

    diagonal = pres is not None and pres.kind is PresentationKind.DIAGONAL
    with _Stage(rep, "roots"):
        an = pres.analysis if diagonal else analyze_roots(R, 1, 1)
        pairs = congruent_pairs(an, None, "a", kb)
        rep.complete = rep.complete and pairs.complete
        rep.roots = {
            "roots_a": [{"root": _elem(r), "multiplicity": m} for r, m in an.roots_a],
            "zero_multiplicity": an.zero_mult,
            "ord_q": an.ord_q,
            "congruent_pairs_a": _pairs_list(pairs),
            "search_complete": pairs.complete,
        }
        if diagonal:
            rep.roots["roots_b"] = [{"root": _elem(r), "multiplicity": m} for r, m in an.roots_b]
            rep.roots["roots_A"] = [{"root": _elem(r), "multiplicity": m} for r, m in an.roots_A]
            verdict = classify_A_multiplicity(an, kb)
            rep.roots["A_multiple_roots"] = {"multiple": verdict.multiple, "cause": verdict.cause,
                                             "complete": verdict.complete}
            rep.complete = rep.complete and verdict.complete

    with _Stage(rep, "gldim"):
        g = gldim(R, kb)
        rep.gldim = {"algebra": _dim(g.value), "algebra_cause": g.cause, "fixed": None}
        rep.complete = rep.complete and g.complete
        if diagonal:
            gf = gldim_fixed(R, phi, kb)
            rep.gldim.update({"fixed": _dim(gf.value), "fixed_case": gf.case,
                              "fixed_cause": gf.cause, "fixed_direct": _dim(gf.direct)})
            rep.complete = rep.complete and gf.complete

    with _Stage(rep, "calabi_yau"):
        if R.base_kind is BaseKind.POLY:
            cy = twisted_calabi_yau(R)
            rep.calabi_yau = {"supported": True, "algebra": cy.twisted_cy, "reason": cy.reason,
                              "nakayama": _automorphism(cy.nakayama) if cy.nakayama else None}
            if diagonal:
                cyf = twisted_calabi_yau(pres.algebra)
                rep.calabi_yau["fixed"] = cyf.twisted_cy
        else:
            rep.calabi_yau = {"supported": False, "reason": "criterion only available over k[h]"}

    with _Stage(rep, "simplicity"):
        if diagonal:
            st_ = simplicity_transfer(R, phi, kb)
            mine, theirs = st_.algebra, st_.fixed
            rep.simplicity = {"algebra": mine.simple, "algebra_reasons": mine.reasons,
                              "fixed": theirs.simple, "fixed_reasons": theirs.reasons}
            rep.complete = rep.complete and mine.complete and theirs.complete
        else:
            mine = is_simple(R, kb)
            rep.simplicity = {"algebra": mine.simple, "algebra_reasons": mine.reasons,
                              "fixed": None, "fixed_reasons": []}
            rep.complete = rep.complete and mine.complete

    if diagonal:
        with _Stage(rep, "rigidity"):
            rg = rigidity(R, phi)
            rep.rigidity = {"isomorphic": not rg.non_isomorphic, "deg_A": rg.deg_A,
                            "expected_deg_A": str(rg.expected_deg_A), "n_a": rg.n_a,
                            "display": "isomorphic" if not rg.non_isomorphic
                            else "not isomorphic"}

    if opts.verify and pres is not None:
        with _Stage(rep, "verify"):
            vr = verify_fixed_ring(R, phi, pres, opts.grade_bound, opts.h_degree_bound,
                                   raise_on_failure=False)
            rep.verification = {
                "passed": vr.passed,
                "relations": vr.relations,
                "grades": [{"grade": k, "fixed_dim": f, "presented_dim": p}
                           for k, f, p in vr.grades],
                "grade_bound": vr.grade_bound,
                "h_degree_bound": vr.h_degree_bound,
                "failure": vr.failure,
            }
            if not vr.passed:
                rep.record("verify", VerificationFailed(vr.failure))

    if opts.probe and phi is not None and not phi.omega:
        with _Stage(rep, "probe"):
            pr = probe_gcd_failure(R, phi, opts.grade_bound, opts.h_degree_bound)
            rep.probe = {
                "experimental": True,
                "generators": [str(g) for g in pr.generators],
                "count": pr.count,
                "exceeds_three": pr.exceeds_three,
                "fixed_dimension": pr.fixed_dimension,
                "grade_bound": pr.grade_bound,
                "h_degree_bound": pr.h_degree_bound,
            }
    return rep


def report_schema():
    """The JSON schema shipped with the package."""
    text = resources.files("qgwa").joinpath("report_schema.json").read_text()
    return json.loads(text)


def _text_lines(d):
    lines = []
    alg = d["algebra"]
    if alg:
        lines.append(f"algebra: {alg['display']}")
        lines.append(f"a(h) = {alg['a_expanded']['display']}")
    aut = d["automorphism"]
    if aut:
        order = aut["order"] if aut["order"] is not None else "infinite"
        lines.append(f"automorphism: {aut['display']} (i0 = {aut['i0']}, order {order})")
    cls = d["classification"]
    if cls:
        kind = "cyclic" if cls["cyclic"] else "not cyclic"
        lines.append(f"classification: case {cls['case']}, order {cls['order']}, {kind}, "
                     f"generators {', '.join(cls['generators'])}")
    sym = d["symmetric"]
    if sym:
        if sym["symmetric"]:
            lines.append(f"symmetric: yes (l = {sym['l']}, delta = {sym['delta']['display']}, "
                         f"lambda = {sym['lambda']['display']})")
        else:
            lines.append("symmetric: no")
    fr = d["fixed_ring"]
    if fr:
        lines.append(f"fixed ring: {fr['kind']}")
        gens = ", ".join(f"{k} = {v}" for k, v in fr["generators"].items())
        lines.append(f"generators: {gens}")
        if fr["q_prime"] is not None and fr["kind"] == "DiagonalGwa":
            lines.append(f"q' = {fr['q_prime']['display']}")
        if fr["A_factored"] is not None:
            lines.append(f"A(H) = {fr['A_factored']['display']}")
            lines.append(f"A(H) expanded = {fr['A']['display']}")
        else:
            lines.append(f"A(H) = {fr['A']['display']}")
        if fr["B"] is not None:
            lines.append(f"B(H) = {fr['B']['display']}")
        lines.append(f"relations: {', '.join(fr['relations'])}")
    roots = d["roots"]
    if roots:
        pairs = ", ".join(f"({p['root_i']['display']}, {p['root_j']['display']}, k={p['k']})"
                          for p in roots["congruent_pairs_a"]) or "none"
        lines.append(f"congruent pairs of a: {pairs}")
        if "A_multiple_roots" in roots:
            v = roots["A_multiple_roots"]
            lines.append(f"A(H) has multiple roots: {'yes' if v['multiple'] else 'no'} "
                         f"({v['cause']})")
    g = d["gldim"]
    if g:
        lines.append(f"gldim(R) = {g['algebra']} ({g['algebra_cause']})")
        if g["fixed"] is not None:
            lines.append(f"gldim(R^phi) = {g['fixed']} (case {g['fixed_case']}, "
                         f"{g['fixed_cause']}; direct {g['fixed_direct']})")
    cy = d["calabi_yau"]
    if cy:
        if cy["supported"]:
            nak = f", Nakayama {cy['nakayama']['display']}" if cy["nakayama"] else ""
            line = f"twisted Calabi-Yau: {'yes' if cy['algebra'] else 'no'}{nak}"
            if "fixed" in cy:
                line += f"; fixed ring: {'yes' if cy['fixed'] else 'no'}"
            lines.append(line)
        else:
            lines.append(f"twisted Calabi-Yau: not decided ({cy['reason']})")
    s = d["simplicity"]
    if s:
        why = f" ({'; '.join(s['algebra_reasons'])})" if s["algebra_reasons"] else ""
        lines.append(f"R simple: {'yes' if s['algebra'] else 'no'}{why}")
        if s["fixed"] is not None:
            lines.append(f"R^phi simple: {'yes' if s['fixed'] else 'no'}")
    r = d["rigidity"]
    if r:
        lines.append(f"rigidity: {r['display']} (deg_H A = {r['deg_A']}, N_a = {r['n_a']})")
    v = d["verification"]
    if v:
        status = "passed" if v["passed"] else f"FAILED: {v['failure']}"
        lines.append(f"verification ({v['grade_bound']}/{v['h_degree_bound']}): {status}")
    p = d["probe"]
    if p:
        lines.append(f"probe (experimental, bounds {p['grade_bound']}/{p['h_degree_bound']}): "
                     f"{p['count']} generators: {', '.join(p['generators'])}")
    lines.append(f"complete: {'true' if d['complete'] else 'false'}")
    lines.append(f"warnings: {json.dumps(d['warnings'])}")
    lines.append(f"errors: {json.dumps([e['type'] + ': ' + e['message'] for e in d['errors']])}")
    return lines


def emit_report(report, fmt="json"):
    """Render a report as deterministic JSON or as text."""
    d = report.to_dict() if isinstance(report, AnalysisReport) else report
    if fmt == "json":
        return json.dumps(d, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return "\n".join(_text_lines(d)) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
