"""Inequality-verification harness.

Each ``verify_*`` function computes both sides of one norm inequality on
every applicable corpus entry and reports the ratios; the maximum ratio is
the *empirical constant* — a lower bound on the best constant over the finite
corpus and ball family, never a proof.  Degenerate entries (vanishing
denominators, hypotheses that fail for the entry) are skipped with a flag
rather than failed: the inequalities are vacuous there.

Cost model: the homotopy image Tu is expensive to evaluate pointwise, so the
context materializes it once per entry as a cubic interpolant on the domain
grid and runs every norm against the interpolant.  Under the doubled-grid
stability rerun the y-quadrature that *defines* the discrete operator stays
fixed while the sampling grid and all norm quadratures double; the stability
check therefore measures convergence of the norms, not drift of the operator.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import CorpusEntry
from .errors import InvalidInputError, RejectedPairError
from .forms import DifferentialForm, codifferential
from .geometry import Ball, Box, Domain, ball_family
from .homotopy import apply_T, closed_part, materialize
from .weights import Weight, check_a_class, check_phi_dominated
from .young import (YoungFunction, check_g_class, check_wrh, luxemburg_norm,
                    lp_norm, oscillation_profile)

__all__ = [
    "HarnessContext", "VerificationReport", "VERIFIER_NAMES",
    "verify_lemma_T_bound", "verify_lemma_closedpart_bound",
    "verify_sobolev_poincare", "verify_oscillation_lower_bound",
    "verify_thm_lipschitz", "verify_thm_bmo", "verify_thm_bmo_le_lip",
    "verify_conjugate_pair", "verify_weighted_lipschitz",
    "run_suite", "suite_passed", "reports_to_json", "reports_to_csv",
]

VERIFIER_NAMES = (
    "lemma_T_bound", "lemma_closed_part_bound", "sobolev_poincare",
    "oscillation_lower_bound", "thm_lipschitz", "thm_bmo", "thm_bmo_le_lip",
    "conjugate_pair", "weighted_lipschitz",
)

STABILITY_TOLERANCE = 0.10
_EPS = 1e-13


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


@dataclass
class VerificationReport:
    inequality: str
    config: dict
    entries: list
    empirical_constant: float | None
    argmax: str | None
    status: str = "ok"
    stability: dict | None = None
    notes: tuple = ("empirical constant is a lower bound over a finite corpus "
                    "and ball family",)

    @property
    def ok(self) -> bool:
        return not self.status.startswith("fail")

    def to_dict(self) -> dict:
        return _jsonable({
            "inequality": self.inequality,
            "config": self.config,
            "entries": self.entries,
            "empirical_constant": self.empirical_constant,
            "argmax": self.argmax,
            "status": self.status,
            "stability": self.stability,
            "notes": list(self.notes),
        })


def _collect(inequality: str, config: dict, entries: list) -> VerificationReport:
    """Assemble a report: empirical constant = max ratio over unflagged entries."""
    best, arg = None, None
    for e in entries:
        if e.get("flags"):
            continue
        r = e["ratio"]
        if best is None or r > best:
            best, arg = r, e["id"]
    status = "ok"
    if best is not None and not math.isfinite(best):
        status = "fail:nonfinite-ratio"
    return VerificationReport(inequality, config, entries, best, arg, status)


class HarnessContext:
    """Shared geometry, corpus, and caches for the verifier battery.

    ``scale`` arguments on the accessors multiply the norm-quadrature and
    materialization resolutions (the stability rerun passes 2); the ball
    family and the y-quadrature behind T never change with scale.
    """

    def __init__(self, domain: Domain, corpus: list, *, grid_resolution: int = 51,
                 ball_resolution: int = 15, ball_count: int = 24, t_nodes: int = 32,
                 sigma: float = 1.1, rho: float | None = None, k: float = 0.5,
                 radius_fraction: float = 0.25, fd_scale: float = 1e-4):
        if not sigma > 1:
            raise InvalidInputError(f"sigma must exceed 1, got {sigma}")
        if not 0 < k < 1:
            raise InvalidInputError(f"k must lie in (0, 1), got {k}")
        self.domain = domain
        self.dims = domain.dims
        self.corpus = list(corpus)
        self.grid_resolution = grid_resolution
        self.ball_resolution = ball_resolution
        self.ball_count = ball_count
        self.t_nodes = t_nodes
        self.sigma = sigma
        self.rho = sigma if rho is None else rho
        self.k = k
        self.radius_fraction = radius_fraction
        self.fd_scale = fd_scale
        self._balls: tuple | None = None
        self._tu: dict = {}
        self._closed: dict = {}
        self._profiles: dict = {}

    # -- geometry ---------------------------------------------------------
    def grid_res(self, scale: int = 1) -> int:
        return self.grid_resolution * scale

    def ball_res(self, scale: int = 1) -> int:
        return self.ball_resolution * scale

    def balls(self) -> tuple:
        if self._balls is None:
            self._balls = tuple(ball_family(self.domain, self.ball_count,
                                            self.radius_fraction,
                                            expansion=self.sigma))
        return self._balls

    def ball_volumes(self) -> np.ndarray:
        return np.array([b.volume() for b in self.balls()])

    def echo(self, **extra) -> dict:
        base = {"dims": self.dims, "grid_resolution": self.grid_resolution,
                "ball_resolution": self.ball_resolution,
                "ball_count": self.ball_count, "t_nodes": self.t_nodes,
                "sigma": self.sigma, "rho": self.rho, "k": self.k,
                "radius_fraction": self.radius_fraction}
        base.update(extra)
        return base

    # -- cached fields ----------------------------------------------------
    def form_entries(self, min_degree: int = 0, max_degree: int | None = None) -> list:
        hi = self.dims if max_degree is None else max_degree
        return [e for e in self.corpus
                if e.form is not None and min_degree <= e.degree <= hi]

    def pair_entries(self) -> list:
        return [e for e in self.corpus if e.pair is not None]

    def Tu(self, entry: CorpusEntry, scale: int = 1) -> DifferentialForm:
        """Materialized homotopy image of the entry on the domain grid."""
        key = (entry.id, scale)
        if key not in self._tu:
            if not isinstance(self.domain, Box):
                raise InvalidInputError(
                    "homotopy-image verifiers require a box domain")
            tu = apply_T(entry.form, self.domain, resolution=self.grid_resolution,
                         t_nodes=self.t_nodes)
            self._tu[key] = materialize(tu, self.domain,
                                        resolution=self.grid_res(scale))
        return self._tu[key]

    def closed_part_global(self, entry: CorpusEntry, scale: int = 1) -> DifferentialForm:
        """u_Omega: d(Tu) for degree >= 1, the mean for 0-forms."""
        key = (entry.id, scale)
        if key not in self._closed:
            if entry.degree == 0:
                self._closed[key] = closed_part(entry.form, self.domain,
                                                resolution=self.grid_res(scale),
                                                t_nodes=self.t_nodes)
            else:
                step = self.fd_scale * self.domain.diameter()
                self._closed[key] = self.Tu(entry, scale).d(fd_step=step)
        return self._closed[key]

    def profile(self, form_key: str, form: DifferentialForm, phi: YoungFunction,
                weight: Weight | None, scale: int = 1) -> np.ndarray:
        """Per-ball oscillation profile ||form - form_B||_{phi, B} over balls().

        Shared between the BMO and Lipschitz seminorms so their comparison is
        exact to rounding.
        """
        wkey = None if weight is None else weight.describe()
        key = (form_key, phi.describe(), wkey, scale)
        if key not in self._profiles:
            self._profiles[key] = oscillation_profile(
                form, list(self.balls()), phi, weight,
                ball_resolution=self.ball_res(scale), t_nodes=self.t_nodes,
                fd_scale=self.fd_scale)
        return self._profiles[key]

    def oscillation(self, form_key: str, form: DifferentialForm, phi: YoungFunction,
                    kind: str, weight: Weight | None = None, scale: int = 1):
        """(value, argmax ball) of the BMO (e=-1) or Lipschitz (e=-(n+k)/n) sup."""
        prof = self.profile(form_key, form, phi, weight, scale)
        e = -1.0 if kind == "bmo" else -(self.dims + self.k) / self.dims
        vals = self.ball_volumes() ** e * prof
        i = int(np.argmax(vals))
        return float(vals[i]), self.balls()[i]


def _ball_dict(ball: Ball) -> dict:
    return {"center": [float(c) for c in ball.center], "radius": float(ball.radius)}


def _ratio_entry(eid: str, lhs: float, rhs: float, **extra) -> dict:
    entry = {"id": eid, "lhs": float(lhs), "rhs": float(rhs),
             "ratio": math.nan, "flags": []}
    if rhs <= _EPS * (1.0 + abs(lhs)):
        entry["flags"].append("zero-denominator")
    else:
        entry["ratio"] = float(lhs / rhs)
    entry.update(extra)
    return entry


# ---------------------------------------------------------------------------
# verifiers


def verify_lemma_T_bound(ctx: HarnessContext, t: float, scale: int = 1) -> VerificationReport:
    """||Tu||_t <= C |domain| diam(domain) ||u||_t over entries of degree >= 1."""
    if not t > 1:
        raise InvalidInputError(f"exponent t must exceed 1, got {t}")
    dom = ctx.domain
    geom = dom.volume() * dom.diameter()
    entries = []
    for e in ctx.form_entries(min_degree=1):
        lhs = lp_norm(ctx.Tu(e, scale), dom, t, resolution=ctx.grid_res(scale))
        rhs = geom * lp_norm(e.form, dom, t, resolution=ctx.grid_res(scale))
        entries.append(_ratio_entry(e.id, lhs, rhs))
    return _collect("lemma_T_bound", ctx.echo(t=t, scale=scale), entries)


def verify_lemma_closedpart_bound(ctx: HarnessContext, t: float,
                                  scale: int = 1) -> VerificationReport:
    """||u_Omega||_t <= C |domain| ||u||_t (mean for 0-forms, d(Tu) above)."""
    if not t > 1:
        raise InvalidInputError(f"exponent t must exceed 1, got {t}")
    dom = ctx.domain
    entries = []
    for e in ctx.form_entries():
        u_omega = ctx.closed_part_global(e, scale)
        lhs = lp_norm(u_omega, dom, t, resolution=ctx.grid_res(scale))
        rhs = dom.volume() * lp_norm(e.form, dom, t, resolution=ctx.grid_res(scale))
        entries.append(_ratio_entry(e.id, lhs, rhs))
    return _collect("lemma_closed_part_bound", ctx.echo(t=t, scale=scale), entries)


def verify_sobolev_poincare(ctx: HarnessContext, t: float,
                            scale: int = 1) -> VerificationReport:
    """||u - u_Omega||_{nt/(n-t)} <= C ||du||_t, for 1 < t < n.

    Closed entries make both sides vanish and are skip-flagged.
    """
    n = ctx.dims
    if not 1 < t < n:
        raise InvalidInputError(f"need 1 < t < dims={n}, got t={t}")
    s = n * t / (n - t)
    dom = ctx.domain
    entries = []
    for e in ctx.form_entries(max_degree=n - 1):
        try:
            du = e.form.d()
        except InvalidInputError:
            du = e.form.d(fd_step=ctx.fd_scale * dom.diameter())
        rhs = lp_norm(du, dom, t, resolution=ctx.grid_res(scale))
        diff = e.form - ctx.closed_part_global(e, scale)
        lhs = lp_norm(diff, dom, s, resolution=ctx.grid_res(scale))
        entries.append(_ratio_entry(e.id, lhs, rhs))
    return _collect("sobolev_poincare", ctx.echo(t=t, target_exponent=s, scale=scale),
                    entries)


def verify_oscillation_lower_bound(ctx: HarnessContext, psi: YoungFunction,
                                   a_values=(0.5, 1.0, 2.0),
                                   weight: Weight | None = None,
                                   scale: int = 1) -> VerificationReport:
    """integral psi(a|u|) dmu <= C integral psi(2a|u - u_Omega|) dmu.

    The hypothesis requires |u - u_Omega| > 0 on a set of positive measure;
    entries violating it on the grid are skip-flagged.
    """
    dom = ctx.domain
    quad = dom.quadrature(ctx.grid_res(scale))
    w = quad.weights if weight is None else quad.weights * weight(quad.points)
    entries = []
    for e in ctx.form_entries():
        mod_u = e.form.modulus_values(quad.points)
        diff = e.form - ctx.closed_part_global(e, scale)
        mod_d = diff.modulus_values(quad.points)
        # the hypothesis needs |u - u_Omega| > 0 on positive measure; below
        # the decomposition gate the oscillation is indistinguishable from
        # operator error (closed entries land at ~1e-5), so flag it
        degenerate = float(np.max(mod_d)) <= 1e-3 * (1.0 + float(np.max(mod_u)))
        for a in a_values:
            lhs = float(np.sum(w * psi(a * mod_u)))
            rhs = float(np.sum(w * psi(2.0 * a * mod_d)))
            entry = _ratio_entry(f"{e.id}[a={a:g}]", lhs, rhs, a=float(a))
            if degenerate:
                entry["flags"].append("degenerate-hypothesis")
                entry["ratio"] = math.nan
            entries.append(entry)
    wdesc = None if weight is None else weight.describe()
    return _collect("oscillation_lower_bound",
                    ctx.echo(psi=psi.describe(), a_values=list(a_values),
                             weight=wdesc, scale=scale), entries)


def _require_g_class(phi: YoungFunction, p: float, q: float, c: float | None):
    rep = check_g_class(phi, p, q, c)
    if not rep.member:
        raise InvalidInputError(
            "Young function fails the G(p,q,c) sandwich: " + "; ".join(rep.violations))
    return rep


def verify_thm_lipschitz(ctx: HarnessContext, phi: YoungFunction, p: float,
                         q: float, c: float | None = None,
                         scale: int = 1) -> VerificationReport:
    """||Tu||_{phi locLip_k} <= C ||u||_phi for entries passing the weak
    reverse Hoelder check with s=q, t=p on rho-dilated balls."""
    _require_g_class(phi, p, q, c)
    dom = ctx.domain
    wrh_balls = list(ctx.balls()) if ctx.rho == ctx.sigma else None
    entries = []
    for e in ctx.form_entries(min_degree=1):
        wrh = check_wrh(e.form, dom, s=q, t=p, rho=ctx.rho, balls=wrh_balls,
                        ball_count=ctx.ball_count,
                        radius_fraction=ctx.radius_fraction,
                        resolution=ctx.ball_res(scale))
        lhs, arg = ctx.oscillation(("Tu", e.id), ctx.Tu(e, scale), phi,
                                   "lipschitz", scale=scale)
        rhs = luxemburg_norm(e.form, dom, phi, resolution=ctx.grid_res(scale))
        entry = _ratio_entry(e.id, lhs, rhs, argmax_ball=_ball_dict(arg),
                             wrh_constant=wrh.constant)
        if not wrh.ok:
            entry["flags"].append("wrh-degenerate")
            entry["ratio"] = math.nan
        entries.append(entry)
    return _collect("thm_lipschitz",
                    ctx.echo(phi=phi.describe(), p=p, q=q, c=c, scale=scale),
                    entries)


def verify_thm_bmo(ctx: HarnessContext, phi: YoungFunction, p: float, q: float,
                   c: float | None = None, scale: int = 1) -> VerificationReport:
    """||Tu||_{phi*} <= C ||u||_phi under the exponent gate q(n-p) < np.

    No reverse-Hoelder hypothesis here; the gate on (p, q) replaces it.
    """
    n = ctx.dims
    if not 1 < p < q:
        raise InvalidInputError(f"need 1 < p < q, got p={p}, q={q}")
    if not q * (n - p) < n * p:
        raise InvalidInputError(
            f"exponent gate q(n-p) < np fails: {q}*({n}-{p}) = {q * (n - p)} "
            f">= {n * p}")
    _require_g_class(phi, p, q, c)
    dom = ctx.domain
    entries = []
    for e in ctx.form_entries(min_degree=1):
        lhs, arg = ctx.oscillation(("Tu", e.id), ctx.Tu(e, scale), phi, "bmo",
                                   scale=scale)
        rhs = luxemburg_norm(e.form, dom, phi, resolution=ctx.grid_res(scale))
        entries.append(_ratio_entry(e.id, lhs, rhs, argmax_ball=_ball_dict(arg)))
    return _collect("thm_bmo", ctx.echo(phi=phi.describe(), p=p, q=q, c=c,
                                        gate=f"{q}*({n}-{p}) < {n}*{p}",
                                        scale=scale), entries)


def verify_thm_bmo_le_lip(ctx: HarnessContext, phi: YoungFunction,
                          scale: int = 1) -> VerificationReport:
    """||u||_{phi*} <= |domain|^{k/n} ||u||_{phi locLip_k} with the explicit
    proof constant; per-entry breaches fail the report."""
    n = ctx.dims
    constant = ctx.domain.volume() ** (ctx.k / n)
    entries = []
    failed = False
    for e in ctx.form_entries():
        bmo, _ = ctx.oscillation(e.id, e.form, phi, "bmo", scale=scale)
        lip, _ = ctx.oscillation(e.id, e.form, phi, "lipschitz", scale=scale)
        entry = _ratio_entry(e.id, bmo, constant * lip,
                             bmo=bmo, lipschitz=lip,
                             margin=float(constant * lip - bmo))
        if bmo > constant * lip + 1e-9:
            entry["flags"].append("bound-breached")
            failed = True
        entries.append(entry)
    report = _collect("thm_bmo_le_lip",
                      ctx.echo(phi=phi.describe(), proof_constant=constant,
                               scale=scale), entries)
    if failed:
        report.status = "fail:inequality"
    return report


def verify_conjugate_pair(ctx: HarnessContext, phi: YoungFunction, p: float,
                          q: float, A=None, scale: int = 1) -> VerificationReport:
    """BMO comparison for a conjugate pair: ||u||_{phi*} vs |B|^beta ||v||_{phi*}.

    Structural gate: A(du) must equal the codifferential of v on the grid
    (residual <= 1e-4, else the pair is rejected); the pointwise bound
    |du|^q <= |d star v|^p must hold at every quadrature node.  The |B|^beta
    factor is reported per ball in the family, max over balls.

    The right-hand oscillation is computed on the Hodge dual of v: the bound's
    derivation pivots through star(v) - star(theta) with theta a closed form,
    and a constant-coefficient top form is closed, so the dual's mean is an
    admissible theta.  Taken literally on v itself the right side vanishes
    identically whenever v has top degree (every top form is its own closed
    part), which would make the comparison vacuous.
    """
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise InvalidInputError(f"conjugate exponents need 1/p + 1/q = 1, "
                                f"got p={p}, q={q}")
    # conjugacy forces p <= 2 <= q; the sandwich class is defined for p < q
    # only, so the boundary case p = q = 2 skips the membership gate
    if p < q:
        _require_g_class(phi, p, q, None)
    beta = 1.0 + 1.0 / ctx.dims - p / (ctx.dims * q)
    quad = ctx.domain.quadrature(ctx.grid_res(scale))
    entries = []
    structural = []
    failed = False
    for e in ctx.pair_entries():
        u, v = e.pair
        du = u.d()
        dsv = codifferential(v)
        lhs_form = du if A is None else A(du)
        resid = float(np.max((lhs_form - dsv).modulus_values(quad.points)))
        if resid > 1e-4:
            raise RejectedPairError(
                f"pair {e.id}: A(du) differs from the codifferential of v by "
                f"{resid:.3e} > 1e-4 on the grid")
        du_mod = du.modulus_values(quad.points)
        dsv_mod = v.star().d().modulus_values(quad.points)
        margin = float(np.min(dsv_mod ** p - du_mod ** q))
        pointwise_ok = bool(np.all(du_mod ** q <= dsv_mod ** p + 1e-12))
        structural.append({"id": e.id, "residual": resid,
                           "pointwise_ok": pointwise_ok,
                           "pointwise_margin": margin})
        if not pointwise_ok:
            failed = True
        bmo_u, _ = ctx.oscillation(("pair-u", e.id), u, phi, "bmo", scale=scale)
        bmo_v, _ = ctx.oscillation(("pair-v", e.id), v.star(), phi, "bmo",
                                   scale=scale)
        for i, b in enumerate(ctx.balls()):
            entries.append(_ratio_entry(
                f"{e.id}[ball{i}]", bmo_u, b.volume() ** beta * bmo_v,
                ball=_ball_dict(b)))
    report = _collect("conjugate_pair",
                      ctx.echo(phi=phi.describe(), p=p, q=q, beta=beta,
                               structural=structural, scale=scale), entries)
    if failed:
        report.status = "fail:pointwise"
    return report


def verify_weighted_lipschitz(ctx: HarnessContext, phi: YoungFunction, p: float,
                              q: float, alpha: float, s: float, weight: Weight,
                              scale: int = 1) -> VerificationReport:
    """Weighted comparison ||u||_{phi locLip_k, w} <= C ||u||_{p, w} under the
    exponent gate alpha*p - p - alpha*q > 0 and the ball-average weight class.
    """
    gate = alpha * p - p - alpha * q
    if not alpha > 1:
        raise InvalidInputError(f"alpha must exceed 1, got {alpha}")
    if not gate > 0:
        raise InvalidInputError(
            f"exponent gate alpha*p - p - alpha*q > 0 fails: {alpha}*{p} - {p} "
            f"- {alpha}*{q} = {gate}")
    if not 1 <= s < q:
        raise InvalidInputError(f"need 1 <= s < q, got s={s}, q={q}")
    dom_rep = check_phi_dominated(phi, s)
    if not dom_rep.ok:
        raise InvalidInputError(
            f"Young function is not dominated by t^{s}: ratio "
            f"{dom_rep.worst_ratio:.6g} at t={dom_rep.worst_t:.3g}")
    beta = alpha * q / gate
    gamma = alpha * q / p
    a_rep = check_a_class(weight, alpha, beta, gamma, list(ctx.balls()),
                          resolution=ctx.ball_res(scale))
    entries = []
    for e in ctx.form_entries(min_degree=1):
        lhs, arg = ctx.oscillation(e.id, e.form, phi, "lipschitz",
                                   weight=weight, scale=scale)
        rhs = lp_norm(e.form, ctx.domain, p, weight=weight,
                      resolution=ctx.grid_res(scale))
        entry = _ratio_entry(e.id, lhs, rhs, argmax_ball=_ball_dict(arg))
        if not a_rep.finite:
            entry["flags"].append("weight-not-in-class")
            entry["ratio"] = math.nan
        entries.append(entry)
    return _collect("weighted_lipschitz",
                    ctx.echo(phi=phi.describe(), p=p, q=q, alpha=alpha, s=s,
                             beta=beta, gamma=gamma, weight=weight.describe(),
                             weight_class_supremum=a_rep.supremum,
                             scale=scale), entries)


# ---------------------------------------------------------------------------
# suite driver


def _with_stability(run, stability: bool) -> VerificationReport:
    base = run(1)
    if not stability:
        return base
    doubled = run(2)
    b, d = base.empirical_constant, doubled.empirical_constant
    if b is None or d is None:
        info = {"base": b, "doubled": d, "drift": None, "ok": True}
    else:
        drift = abs(d - b) / max(abs(b), _EPS)
        info = {"base": b, "doubled": d, "drift": drift,
                "ok": drift <= STABILITY_TOLERANCE}
        if not info["ok"] and base.ok:
            base.status = "fail:stability"
    base.stability = info
    return base


def run_suite(config) -> list:
    """Run every enabled verifier against the configured corpus.

    ``config`` is a RunConfig; reports come back in the fixed registry order,
    with one weighted report per configured weight.  Deterministic for a
    fixed config: the corpus, ball family, and all quadratures involve no
    unseeded randomness.
    """
    from .corpus import build_corpus  # local import keeps module load light

    domain = config.build_domain()
    corpus = build_corpus(domain, config.dims, admit=True,
                          resolution=config.grid_resolution,
                          t_nodes=config.t_nodes)
    ctx = HarnessContext(
        domain, corpus, grid_resolution=config.grid_resolution,
        ball_resolution=config.ball_resolution, ball_count=config.ball_count,
        t_nodes=config.t_nodes, sigma=config.sigma, rho=config.rho,
        k=config.k, radius_fraction=config.radius_fraction)
    phi = config.build_young()
    weights = config.build_weights()
    enabled = config.enabled_verifiers()
    g = config.g_class
    wt = config.weighted
    stability = config.stability_check

    reports = []
    if "lemma_T_bound" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_lemma_T_bound(ctx, config.lemma_exponent_t, sc),
            stability))
    if "lemma_closed_part_bound" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_lemma_closedpart_bound(ctx, config.lemma_exponent_t, sc),
            stability))
    if "sobolev_poincare" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_sobolev_poincare(ctx, config.sobolev_t, sc),
            stability))
    if "oscillation_lower_bound" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_oscillation_lower_bound(
                ctx, phi, tuple(config.osc_a_values), None, sc), stability))
    if "thm_lipschitz" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_thm_lipschitz(ctx, phi, g["p"], g["q"], g["c"], sc),
            stability))
    if "thm_bmo" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_thm_bmo(ctx, phi, g["p"], g["q"], g["c"], sc),
            stability))
    if "thm_bmo_le_lip" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_thm_bmo_le_lip(ctx, phi, sc), stability))
    if "conjugate_pair" in enabled:
        reports.append(_with_stability(
            lambda sc: verify_conjugate_pair(
                ctx, phi, config.conjugate["p"], config.conjugate["q"], None, sc),
            stability))
    if "weighted_lipschitz" in enabled:
        phi_s = config.build_weighted_young()
        for w in weights:
            reports.append(_with_stability(
                lambda sc, w=w: verify_weighted_lipschitz(
                    ctx, phi_s, wt["p"], wt["q"], wt["alpha"], wt["s"], w, sc),
                stability))
    return reports


def suite_passed(reports: list) -> bool:
    return all(r.ok for r in reports)


def reports_to_json(reports: list, config=None) -> str:
    payload = {"reports": [r.to_dict() for r in reports]}
    if config is not None:
        payload["config"] = _jsonable(config.to_dict())
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def reports_to_csv(reports: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["inequality", "entry", "lhs", "rhs", "ratio", "flags"])
    for r in reports:
        for e in r.entries:
            writer.writerow([r.inequality, e["id"], repr(e["lhs"]), repr(e["rhs"]),
                             repr(e["ratio"]), "|".join(e["flags"])])
    return buf.getvalue()
