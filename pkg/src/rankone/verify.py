"""Predictions from the rank-one perturbation theorems, checked against computation.

Each check produces a :class:`TheoremReport`.  Exact checks pass on
equality; float checks compare against a tolerance from the run config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg as sla

from . import operators as ops
from . import spectral as sp
from .config import RunConfig
from .errors import InconclusiveGap, InconclusiveVerdict, PreconditionViolation, RankOneError
from .operators import RankOneShift
from .series import (
    ONE,
    ZERO,
    ComplexRational,
    PowerSeries,
    as_series,
    build_h0,
    format_poly,
    poly_eval,
    pretty_poly,
)
from .space import MembershipVerdict, Status, WeightSequence, membership, resolvent_membership


class Branch(str, Enum):
    ZERO_AT_ORIGIN = "ZeroAtOrigin"
    H0_NON_MEMBER = "H0NonMember"
    H0_MEMBER = "H0Member"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class AnalyticityVerdict:
    analytic: Optional[bool]
    branch: Branch
    h0: Optional[PowerSeries] = None
    membership: Optional[MembershipVerdict] = None
    reason: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.branch is Branch.INCONCLUSIVE


def _gamma(g) -> ComplexRational:
    g = as_series(g)
    if not (g.is_polynomial and g.degree <= 0):
        raise PreconditionViolation("g must be a constant multiple of 1 (the kernel of M_z*)")
    return g.coeff(0)


def analyticity_verdict(f, space: WeightSequence, g=1) -> AnalyticityVerdict:
    """Decide whether ``M_z + f (x) g`` is analytic, for constant ``g = gamma``.

    With ``mu = <f, g> = f(0) conj(gamma)``: ``mu = 0`` gives an analytic
    operator; otherwise the operator fails to be analytic exactly when the
    series ``h0 = sum_j (sum_i f^(j-i) / mu^i) z^j`` lies in the space.  For
    polynomial ``f`` that happens when ``f(mu) = 0`` (``h0`` is a polynomial) or
    when ``1/(mu - z)`` is in the space.
    """
    f = as_series(f)
    if not f.is_polynomial:
        raise PreconditionViolation("analyticity_verdict needs a polynomial f")
    mu = f.coeff(0) * _gamma(g).conjugate()
    if not mu:
        return AnalyticityVerdict(True, Branch.ZERO_AT_ORIGIN, reason="<f,g> = 0")
    h0 = build_h0(f, mu, max(f.degree, 0))
    if not poly_eval(f, mu):
        verdict = membership(h0, space)
        return AnalyticityVerdict(False, Branch.H0_MEMBER, h0, verdict, f"f({mu}) = 0, h0 is a polynomial")
    res = resolvent_membership(mu, space)
    if res.status is Status.INCONCLUSIVE:
        return AnalyticityVerdict(None, Branch.INCONCLUSIVE, None, res, res.reason)
    if res.status is Status.MEMBER:
        return AnalyticityVerdict(False, Branch.H0_MEMBER, h0, membership(h0, space), f"1/({mu} - z) is in {space.name}")
    return AnalyticityVerdict(True, Branch.H0_NON_MEMBER, None, res, f"1/({mu} - z) is not in {space.name}")


def predict_point_spectrum(f, g, space: WeightSequence) -> dict:
    """Eigenvalues of ``M_z + f (x) gamma`` mapped to eigenvectors.

    * ``mu = <f,g> != 0``: ``{mu: h0}`` when ``h0`` is in the space, else empty.
    * ``mu = 0``: ``S h = 0`` forces ``z h = -conj(gamma) h(0) f``, solvable with
      ``h(0) != 0`` iff ``f(0) = 0`` and ``f'(0) conj(gamma) = -1``; then
      ``h = f/z`` normalized to ``h(0) = 1``.  No nonzero eigenvalue exists.
    """
    f = as_series(f)
    gamma = _gamma(g)
    mu = f.coeff(0) * gamma.conjugate()
    if mu:
        verdict = analyticity_verdict(f, space, g)
        if verdict.inconclusive:
            raise InconclusiveVerdict(verdict.reason)
        return {} if verdict.analytic else {mu: verdict.h0}
    if not gamma or f.coeff(0):
        return {}
    if f.coeff(1) * gamma.conjugate() != -ONE:
        return {}
    quotient = PowerSeries.poly(f.prefix[1:])
    return {ZERO: quotient.scale(ONE / quotient.coeff(0))}


@dataclass
class PredictedMask:
    mask: np.ndarray
    extra_point: Optional[tuple]
    description: str


def predict_left_spectrum(f, g, space: WeightSequence, base_scan: sp.SpectralScan) -> PredictedMask:
    """Base mask, plus the grid point nearest ``<f,g>`` when it is an eigenvalue."""
    f = as_series(f)
    spectrum = predict_point_spectrum(f, g, space)
    mu = f.coeff(0) * _gamma(g).conjugate()
    mask = base_scan.mask.copy()
    if mu in spectrum:
        ij = base_scan.grid.nearest(complex(mu))
        mask[ij] = True
        return PredictedMask(mask, ij, f"sigma_l(M_z) union {{{mu}}}")
    return PredictedMask(mask, None, "sigma_l(M_z)")


def predict_spectral_radius(f, g, space: WeightSequence, r_base: float) -> float:
    mu = as_series(f).coeff(0) * _gamma(g).conjugate()
    return max(r_base, abs(complex(mu)))


def predict_adjoint_kernel(f, g, space: WeightSequence) -> list:
    """Basis of ``ker S*`` as series.

    ``S* h = M_z* h + <h, f> gamma`` is constant, so ``h`` lies in
    ``span{e_0, e_1}`` (``e_0 = 1``, ``e_1 = a_1 z``, ``M_z* e_1 = e_0``).  For
    ``h = s e_0 + t e_1`` the condition is
    ``t (1 + gamma conj(f'(0))) + s gamma conj(f(0)) = 0``.
    """
    f = as_series(f)
    gamma = _gamma(g)
    e0 = ops.basis_vector(space, 0)
    e1 = ops.basis_vector(space, 1)
    p = ONE + gamma * f.coeff(1).conjugate()
    q = gamma * f.coeff(0).conjugate()
    if not p and not q:
        return [e0, e1]
    h = [a + b for a, b in zip(e0.scale(p).coeffs(2), e1.scale(-q).coeffs(2))]
    lead = next(c for c in h if c)
    return [PowerSeries.poly([c / lead for c in h])]


@dataclass(frozen=True)
class LinearExampleExpectation:
    branch: str
    analytic: Optional[bool]
    extra_point: Optional[ComplexRational]
    sigma_l: str
    radius: str

    def radius_value(self, r_base: float) -> Optional[float]:
        if self.analytic is None:
            return None
        if self.extra_point is None or not self.extra_point:
            return r_base
        return max(r_base, abs(complex(self.extra_point)))


def linear_example_classify(a, b, space: WeightSequence) -> LinearExampleExpectation:
    """Expected behaviour of ``M_z + (a z + b) (x) 1`` by the linear-``f`` example."""
    a = ComplexRational.coerce(a)
    b = ComplexRational.coerce(b)
    if not b:
        if a == -ONE:
            return LinearExampleExpectation("b=0", True, ZERO, "sigma_l(M_z) disjoint union {0}", "r(M_z)")
        return LinearExampleExpectation("b=0", True, None, "sigma_l(M_z)", "r(M_z)")
    if a == -ONE:
        return LinearExampleExpectation("Unclassified", None, None, "", "")
    res = resolvent_membership(b, space)
    if res.status is Status.MEMBER:
        return LinearExampleExpectation("resolvent-member", False, b, f"sigma_l(M_z) union {{{b}}}", f"max(r(M_z), |{b}|)")
    if res.status is Status.NON_MEMBER:
        return LinearExampleExpectation("resolvent-non-member", True, None, "sigma_l(M_z)", "r(M_z)")
    return LinearExampleExpectation("Unclassified", None, None, "", "")


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (ComplexRational, PowerSeries)):
        return str(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, complex):
        return [_jsonable(x.real), _jsonable(x.imag)]
    if isinstance(x, Enum):
        return x.value
    return x if x is None or isinstance(x, str) else str(x)


@dataclass
class TheoremReport:
    theorem_id: str
    instance: dict
    predicted: object
    observed: object
    tolerance: object
    passed: bool
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "instance": _jsonable(self.instance),
            "predicted": _jsonable(self.predicted),
            "observed": _jsonable(self.observed),
            "tolerance": _jsonable(self.tolerance),
            "pass": bool(self.passed),
            "diagnostics": _jsonable(self.diagnostics),
        }


def _failure(theorem_id, instance, exc, predicted=None) -> TheoremReport:
    return TheoremReport(theorem_id, instance, predicted, None, None, False,
                         {"error": type(exc).__name__, "message": str(exc)})


def _instance(space, f=None, g=None, **extra) -> dict:
    out = {"space": space.name}
    if f is not None:
        out["f"] = pretty_poly(as_series(f))
    if g is not None:
        out["g"] = pretty_poly(as_series(g))
    out.update(extra)
    return out


# exact checks ------------------------------------------------------------


def check_power_lemma(space, f, g, n_max: int, N: int) -> TheoremReport:
    inst = _instance(space, f, g, N=N, n_max=n_max)
    try:
        bad = []
        for n in range(1, n_max + 1):
            lhs = ops.power_via_lemma(space, f, g, n, N)
            rhs = ops.direct_power(space, f, g, n, N)
            if not (lhs - rhs).is_zero():
                bad.append(n)
    except PreconditionViolation as exc:
        return _failure("power-lemma", inst, exc, "zero residual")
    return TheoremReport("power-lemma", inst, "zero residual", {"nonzero_at_n": bad}, "exact", not bad)


def check_two_cyclic(space, f, g, n_max: int, N: int) -> TheoremReport:
    inst = _instance(space, f, g, N=N, n_max=n_max, xi=["1", "z + z^2"])
    try:
        bad = []
        for xi in (PowerSeries.poly([1]), PowerSeries.poly([0, 1, 1])):
            for n in range(1, n_max + 1):
                if any(ops.two_cyclic_identity(xi, f, g, space, n, N)):
                    bad.append((pretty_poly(xi), n))
    except PreconditionViolation as exc:
        return _failure("two-cyclic", inst, exc, "zero residual")
    return TheoremReport("two-cyclic", inst, "zero residual", {"nonzero_at": bad}, "exact", not bad)


def check_cauchy_dual(space, N: int = 32) -> list:
    reports = []
    for gc in ([0], [1], [0, 1], [1, ComplexRational(1, 0) / 2]):
        g = PowerSeries.poly(gc)
        inst = _instance(space, 1, g, N=N, block=f"0..{N - 4}")
        try:
            lhs = ops.cauchy_dual_perturbed(space, 1, g, N)
            rhs = ops.cauchy_dual_direct(space, 1, g, N)
        except RankOneError as exc:
            reports.append(_failure("cauchy-dual", inst, exc))
            continue
        m = N - 3
        diff = [(i, j) for i in range(m) for j in range(m) if lhs[i, j] != rhs[i, j]]
        reports.append(TheoremReport("cauchy-dual", inst, "formula equals S(S*S)^-1", {"mismatches": diff[:10]},
                                     "exact", not diff))
    return reports


# numeric checks ------------------------------------------------------------


def check_analyticity(space, f, g, N: int, K: int, gap: float) -> TheoremReport:
    inst = _instance(space, f, g, N=N, K=K, gap=gap)
    verdict = analyticity_verdict(f, space, g)
    predicted = {"analytic": verdict.analytic, "branch": verdict.branch, "reason": verdict.reason}
    if verdict.inconclusive:
        return TheoremReport("analyticity", inst, predicted, None, None, False, {"error": "inconclusive verdict"})
    try:
        est = sp.hyper_range(RankOneShift(space, f, g), N, K, gap)
    except InconclusiveGap as exc:
        return _failure("analyticity", inst, exc, predicted)
    observed = {"hyper_range_dim": est.dimension, "gap_ratio": est.gap_ratio}
    ok = verdict.analytic == (est.dimension == 0)
    diag = {"singular_values": est.singular_values}
    if verdict.h0 is not None and est.dimension == 1:
        x = sp.orthonormal_coords(verdict.h0, space, N)
        angle = float(sla.subspace_angles(est.basis, x[:, None])[0])
        diag["angle_to_h0"] = angle
    return TheoremReport("analyticity", inst, predicted, observed, {"gap": gap}, ok, diag)


def check_eigen(space, f, g, N: int, tol: float) -> Optional[TheoremReport]:
    inst = _instance(space, f, g, N=N)
    try:
        spectrum = predict_point_spectrum(f, g, space)
    except RankOneError as exc:
        return _failure("eigenvalue", inst, exc)
    if not spectrum:
        return None
    (lam, h), = spectrum.items()
    check = sp.eigen_check(RankOneShift(space, f, g), complex(lam), h, N)
    diag = {"eigenvector": pretty_poly(h) if h.is_polynomial else str(h), "tail_norm": check.tail_norm}
    return TheoremReport("eigenvalue", inst, {"eigenvalue": lam}, {"residual": check.residual}, tol,
                         check.residual <= tol, diag)


def check_left_spectrum(space, f, g, base: sp.SpectralScan, threads: int, exclusion_steps: float) -> TheoremReport:
    inst = _instance(space, f, g, N=base.N, tau=base.tau, grid=base.grid.to_dict())
    op = RankOneShift(space, f, g)
    try:
        pred = predict_left_spectrum(f, g, space, base)
    except RankOneError as exc:
        return _failure("left-spectrum", inst, exc)
    scan = sp.left_spectrum_scan(op, base.grid, base.N, base.tau, threads=threads)
    mu = complex(op.mu)
    far = np.abs(base.grid.points() - mu) > exclusion_steps * base.grid.step
    disagree = (scan.mask != pred.mask) & far
    point_ok = True
    if pred.extra_point is not None:
        point_ok = bool(scan.mask[pred.extra_point])
    observed = {
        "disagreements_off_mu": int(disagree.sum()),
        "extra_points": int((scan.mask & ~base.mask).sum()),
        "lost_points": int((base.mask & ~scan.mask).sum()),
        "mu_marked": bool(scan.mask[base.grid.nearest(mu)]),
    }
    if disagree.any():
        d = np.abs(base.grid.points() - mu)[disagree]
        observed["farthest_disagreement_steps"] = float(d.max() / base.grid.step)
    return TheoremReport("left-spectrum", inst, pred.description, observed,
                         {"exclusion_steps": exclusion_steps}, (not disagree.any()) and point_ok)


def check_radius(space, f, g, N: int, n_max: int, r_base: float, tol: float) -> TheoremReport:
    inst = _instance(space, f, g, N=N, n_max=n_max)
    est = sp.spectral_radius_gelfand(RankOneShift(space, f, g), N, n_max)
    pred = predict_spectral_radius(f, g, space, r_base)
    rel = abs(est.value - pred) / pred if pred else abs(est.value)
    return TheoremReport("spectral-radius", inst, pred, est.value, tol, rel <= tol,
                         {"relative_error": rel, "r_base": r_base, "sequence_tail": est.sequence[-4:]})


def check_adjoint_kernel(space, f, g, N: int, gap: float, tol: float) -> TheoremReport:
    inst = _instance(space, f, g, N=N, gap=gap)
    pred = predict_adjoint_kernel(f, g, space)
    pred_desc = [pretty_poly(h) for h in pred]
    try:
        est = sp.adjoint_kernel(RankOneShift(space, f, g), N, gap)
    except RankOneError as exc:
        return _failure("adjoint-kernel", inst, exc, pred_desc)
    P = np.stack([sp.orthonormal_coords(h, space, N) for h in pred], axis=1)
    observed = {"dimension": est.dimension, "gap_ratio": est.gap_ratio}
    ok = est.dimension == len(pred)
    if ok:
        angles = sla.subspace_angles(est.basis, P)
        observed["max_angle"] = float(np.max(angles))
        ok = observed["max_angle"] < tol
    return TheoremReport("adjoint-kernel", inst, pred_desc, observed, tol, ok)


def check_wandering(space, N: int, gap: float, tol: float, control_tol: float) -> list:
    reports = []
    ok, image = ops.kernel_condition_check(space)
    reports.append(TheoremReport("kernel-condition", _instance(space), "M_z* M_z 1 in span{1}",
                                 {"image_of_1": image}, "exact", ok))
    for f in ([0], [1]):
        op = RankOneShift(space, f, 1)
        inst = _instance(space, f, 1, N=N)
        try:
            w = sp.wandering_subspace_check(op, N, gap=gap)
        except RankOneError as exc:
            reports.append(_failure("wandering-subspace", inst, exc))
            continue
        reports.append(TheoremReport("wandering-subspace", inst, "span{S^n ker S*} is everything",
                                     {"max_residual": w.max_residual}, tol, w.max_residual <= tol))
    op = RankOneShift(space, [2, -1], 1)
    inst = _instance(space, [2, -1], 1, N=N, role="negative control")
    try:
        w = sp.wandering_subspace_check(op, N, gap=gap)
        reports.append(TheoremReport("wandering-negative-control", inst, "u_0 not reached",
                                     {"residual_u0": float(w.residuals[0])}, control_tol,
                                     w.residuals[0] > control_tol))
    except RankOneError as exc:
        reports.append(_failure("wandering-negative-control", inst, exc))
    return reports


LINEAR_EXAMPLE_VALUES = ("0", "1", "-1", "1/2", "-1/2", "2")


def check_linear_example(space) -> TheoremReport:
    """Linear ``f = a z + b`` over a small grid: verdict against the worked example."""
    rows, mismatches = [], []
    for a_txt in LINEAR_EXAMPLE_VALUES:
        for b_txt in LINEAR_EXAMPLE_VALUES:
            a, b = ComplexRational.coerce(a_txt), ComplexRational.coerce(b_txt)
            f = PowerSeries.poly([b, a])
            exp = linear_example_classify(a, b, space)
            verdict = analyticity_verdict(f, space)
            spectrum = predict_point_spectrum(f, 1, space)
            row = {"a": a_txt, "b": b_txt, "branch": exp.branch, "expected": exp.analytic, "verdict": verdict.analytic}
            rows.append(row)
            if exp.analytic is None:
                continue
            extra = next(iter(spectrum), None)
            if verdict.analytic != exp.analytic or extra != exp.extra_point:
                mismatches.append(row)
    return TheoremReport("linear-example", _instance(space), "classification by the a z + b example",
                         {"cells": len(rows), "mismatches": mismatches}, "exact", not mismatches)


# suite ---------------------------------------------------------------------------


def suite_grid(cfg: RunConfig, r_base: float) -> sp.GridSpec:
    """One grid shared by the base scan and every perturbed scan of a space.

    Half-width ``numeric.radius`` if set, else ``max(r_base, |<f,g>|) + 0.5``
    over all configured perturbations.
    """
    if cfg.radius is not None:
        return sp.GridSpec.square(cfg.radius, cfg.grid)
    g0 = cfg.g.coeff(0).conjugate()
    mus = [abs(complex(f.coeff(0) * g0)) for f in cfg.perturbations]
    return sp.GridSpec.square(max([r_base] + mus) + 0.5, cfg.grid)


def run_suite(cfg: RunConfig, progress=None) -> list:
    """All checks for every (space, perturbation) pair, in a fixed order."""
    reports = []
    tol = cfg.tolerances
    g = cfg.g
    g_constant = g.is_polynomial and g.degree <= 0

    def note(msg):
        if progress is not None:
            progress(msg)

    for space in cfg.spaces:
        note(f"{space.name}: base operator")
        r_base = sp.spectral_radius_gelfand(RankOneShift(space, 0, 0), cfg.N, cfg.n_max).value
        base = None
        for f in cfg.perturbations:
            note(f"{space.name}: f = {pretty_poly(f)}")
            reports.append(check_power_lemma(space, f, g, cfg.lemma_n, cfg.exact_N))
            reports.append(check_two_cyclic(space, f, g, cfg.lemma_n, cfg.exact_N))
            if not g_constant:
                # the remaining predictions all assume g in ker M_z*
                reports.append(_failure("predictions", _instance(space, f, g),
                                        PreconditionViolation("g is not constant")))
                continue
            reports.append(check_analyticity(space, f, g, cfg.N, cfg.K, cfg.gap))
            eig = check_eigen(space, f, g, cfg.N, tol["eigen"])
            if eig is not None:
                reports.append(eig)
            if base is None:
                base = sp.left_spectrum_scan(RankOneShift(space, 0, 0), suite_grid(cfg, r_base), cfg.N,
                                             cfg.effective_tau, threads=cfg.threads)
            reports.append(check_left_spectrum(space, f, g, base, cfg.threads, tol["mask_exclusion"]))
            reports.append(check_radius(space, f, g, cfg.N, cfg.n_max, r_base, tol["radius"]))
            reports.append(check_adjoint_kernel(space, f, g, cfg.N, cfg.gap, tol["angle"]))
        note(f"{space.name}: per-space checks")
        reports.extend(check_cauchy_dual(space, cfg.exact_N))
        reports.extend(check_wandering(space, cfg.N, cfg.gap, tol["wandering"], tol["negative_control"]))
        reports.append(check_linear_example(space))
    return reports


def run_oracles(cfg: RunConfig) -> list:
    """Brute-force cross-checks only: direct powers and the direct Cauchy dual."""
    reports = []
    for space in cfg.spaces:
        for f in cfg.perturbations:
            reports.append(check_power_lemma(space, f, cfg.g, cfg.lemma_n, cfg.exact_N))
        reports.extend(check_cauchy_dual(space, cfg.exact_N))
    return reports


def summarize(f, g, space: WeightSequence) -> dict:
    """Predictions for one operator, as used by the ``analyze`` command."""
    f = as_series(f)
    out = {"space": space.name, "f": pretty_poly(f), "g": pretty_poly(as_series(g))}
    verdict = analyticity_verdict(f, space, g)
    mu = f.coeff(0) * _gamma(g).conjugate()
    out["mu"] = str(mu)
    out["analytic"] = verdict.analytic
    out["branch"] = verdict.branch.value
    out["reason"] = verdict.reason
    if verdict.inconclusive:
        out["summary"] = f"INCONCLUSIVE ({verdict.reason})"
        return out
    spectrum = predict_point_spectrum(f, g, space)
    if verdict.h0 is not None:
        out["h0"] = str(verdict.h0)
    out["eigenvalues"] = {str(k): (pretty_poly(v) if v.is_polynomial else str(v)) for k, v in spectrum.items()}
    out["adjoint_kernel"] = [pretty_poly(h) for h in predict_adjoint_kernel(f, g, space)]
    r_base = 1.0 if space.named else None  # r(M_z) = 1 on the named spaces
    if spectrum:
        (lam,) = spectrum
        joiner = "disjoint union" if not lam else "union"
        out["left_spectrum"] = f"sigma_l(M_z) {joiner} {{{lam}}}"
        mod = abs(complex(lam))
        if r_base is None:
            out["radius"] = f"max(r(M_z), {mod:.6g})"
        elif mod > r_base:
            out["radius"] = f"{mod:.6g}"
        else:
            out["radius"] = "r(M_z)"
    else:
        out["left_spectrum"] = "sigma_l(M_z)"
        out["radius"] = "r(M_z)"
    head = "analytic" if verdict.analytic else "NOT analytic"
    if verdict.branch is Branch.ZERO_AT_ORIGIN:
        head += " (f(0)=0)" if not f.coeff(0) else " (<f,g>=0)"
    parts = [head]
    if spectrum:
        parts.append(f"eigenvalue {next(iter(spectrum))} (simple)")
        parts.append(f"sigma_l = {out['left_spectrum']}")
        parts.append("r unchanged" if out["radius"] == "r(M_z)" else f"r = {out['radius']}")
    else:
        parts.append("sigma_l unchanged")
        parts.append("r unchanged")
    out["summary"] = "; ".join(parts)
    return out


__all__ = [
    "AnalyticityVerdict",
    "Branch",
    "PredictedMask",
    "LinearExampleExpectation",
    "TheoremReport",
    "analyticity_verdict",
    "predict_adjoint_kernel",
    "predict_left_spectrum",
    "predict_point_spectrum",
    "predict_spectral_radius",
    "run_oracles",
    "run_suite",
    "linear_example_classify",
    "suite_grid",
    "summarize",
]
