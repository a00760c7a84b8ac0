"""Acceptance gate: one test per criterion, one printed line per criterion.

Each test prints ``[criterion N] name: PASS/FAIL`` on the live terminal
(bypassing capture) so a full ``pytest -v`` run shows the scorecard, and then
asserts, so a red criterion is also a red test.  Tolerances are fixed here and
are not tuned per machine: every quantity checked is deterministic.
"""
import json
import math
import time

import numpy as np
import pytest

from orliczforms import (Box, ConfigError, DifferentialForm, ball_family,
                         build_corpus, check_phi_dominated, codifferential,
                         custom_young, decomposition_residual, default_domain,
                         load_config, lp_norm, luxemburg_norm, named_form,
                         oscillation_norm, oscillation_profile, power,
                         run_suite, suite_passed, OscillationNormSpec)
from orliczforms import exterior
from orliczforms.cli import main
from orliczforms.corpus import RESIDUAL_GATE
from orliczforms.errors import OrliczFormsError
from orliczforms.expressions import parse, substitute
from orliczforms.forms import CallableField, ExprField


def report(capfd, num, name, ok, detail=""):
    with capfd.disabled():
        print(f"[criterion {num}] {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


@pytest.fixture(scope="module")
def corpora():
    # admitted at the default resolutions; residuals recorded on the entries
    return {2: build_corpus(dims=2), 3: build_corpus(dims=3)}


# -------------------------------------------------------------- criterion 1

def test_criterion_1_exact_identity_battery(capfd, corpora):
    t0 = time.time()
    rng = np.random.default_rng(20240817)
    worst_sign = worst_mod = 0.0
    covectors = 0
    for n in (2, 3):
        for l in range(n + 1):
            for _ in range(150):
                a = exterior.CovectorValue(
                    n, l, rng.standard_normal(exterior.num_components(n, l)))
                sign = -1.0 if (l * (n - l)) % 2 else 1.0
                ss = exterior.hodge_star(exterior.hodge_star(a))
                worst_sign = max(worst_sign, float(
                    np.max(np.abs(ss.coeffs - sign * a.coeffs))))
                via = exterior.hodge_star(
                    exterior.wedge(a, exterior.hodge_star(a)))
                worst_mod = max(worst_mod, abs(
                    float(via.coeffs[0]) - exterior.modulus(a) ** 2))
                covectors += 1

    worst_analytic = worst_fd = 0.0
    for n in (2, 3):
        domain = default_domain(n)
        c = np.asarray(domain.centroid())
        spread = rng.random((200, n)) - 0.5
        for entry in corpora[n]:
            if entry.form is None or entry.degree > n - 2:
                continue
            pts = c + 0.8 * spread
            center = entry.provenance.get("center")
            if center is not None:
                # keep finite-difference stencils away from the radial cusp
                keep = np.linalg.norm(pts - np.asarray(center), axis=1) >= 0.15
                pts = pts[keep]
            try:
                dd_exact = entry.form.d().d()
                worst_analytic = max(worst_analytic, float(
                    np.max(dd_exact.modulus_values(pts))))
            except OrliczFormsError:
                pass
            dd_fd = entry.form.d(fd_step=1e-4).d(fd_step=1e-4)
            worst_fd = max(worst_fd, float(np.max(dd_fd.modulus_values(pts))))

    elapsed = time.time() - t0
    ok = (covectors >= 1000 and worst_sign <= 1e-12 and worst_mod <= 1e-12
          and worst_analytic <= 1e-12 and worst_fd <= 1e-6 and elapsed < 10.0)
    report(capfd, 1, "exact identities", ok,
           f"covectors={covectors} star={worst_sign:.1e} mod={worst_mod:.1e} "
           f"dd_analytic={worst_analytic:.1e} dd_fd={worst_fd:.1e} "
           f"t={elapsed:.1f}s")


# -------------------------------------------------------------- criterion 2

def test_criterion_2_decomposition_identity(capfd, corpora):
    t0 = time.time()
    worst = -1.0
    decreased = total = 0
    for n, base in ((2, 51), (3, 15)):
        domain = default_domain(n)
        for entry in corpora[n]:
            if entry.residual is None:
                continue
            assert entry.residual <= RESIDUAL_GATE
            worst = max(worst, entry.residual)
            fine = decomposition_residual(entry.form, domain,
                                          resolution=2 * base)
            total += 1
            decreased += int(fine < entry.residual)
    elapsed = time.time() - t0
    ok = worst <= 1e-3 and decreased == total and total >= 10 and elapsed < 300
    report(capfd, 2, "decomposition identity", ok,
           f"worst={worst:.2e} decreased={decreased}/{total} t={elapsed:.0f}s")


# -------------------------------------------------------------- criterion 3

def test_criterion_3_luxemburg_lp_oracle(capfd, corpora):
    domain = default_domain(2)
    pool = []
    for entry in corpora[2]:
        if entry.form is not None:
            pool.extend(entry.form.components)
    rng = np.random.default_rng(7)
    worst = 0.0
    fields = 0
    for _ in range(100):
        picks = rng.choice(len(pool), size=3, replace=False)
        coeffs = rng.uniform(0.25, 2.0, size=3) * rng.choice([-1.0, 1.0], 3)
        chosen = [pool[i] for i in picks]

        def combo(pts, cs=coeffs, fs=chosen):
            return sum(c * np.asarray(f(pts), dtype=float)
                       for c, f in zip(cs, fs))

        f = CallableField(combo, 2)
        fields += 1
        for p in (1.5, 2.0, 3.0):
            ref = lp_norm(f, domain, p, resolution=33)
            lux = luxemburg_norm(f, domain, power(p), resolution=33)
            if ref > 0:
                worst = max(worst, abs(lux - ref) / ref)
    ok = fields == 100 and worst <= 1e-6
    report(capfd, 3, "Luxemburg/Lp oracle", ok,
           f"fields={fields} worst_rel={worst:.2e}")


# -------------------------------------------------------------- criterion 4

def test_criterion_4_closed_form_collapse(capfd, corpora):
    worst = -1.0
    checked = 0
    for n, bres in ((2, 11), (3, 9)):
        domain = default_domain(n)
        for entry in corpora[n]:
            if entry.form is None or not entry.has("closed"):
                continue
            for kind in ("bmo", "lipschitz"):
                res = oscillation_norm(
                    entry.form, domain, power(2.0),
                    OscillationNormSpec(kind=kind, ball_count=12),
                    ball_resolution=bres)
                worst = max(worst, res.value)
            checked += 1
    ok = checked >= 6 and worst <= 1e-6
    report(capfd, 4, "closed-form collapse", ok,
           f"forms={checked} worst_norm={worst:.2e}")


# -------------------------------------------------------------- criterion 5

def test_criterion_5_bmo_lipschitz_proof_constant(capfd, corpora):
    k = 0.5
    worst_excess = -math.inf
    entries = 0
    for n, bres, count in ((2, 11, 16), (3, 9, 12)):
        dom = default_domain(n)
        fam = ball_family(dom, count, expansion=1.1)
        factor = dom.volume() ** (k / n)
        for entry in corpora[n]:
            if entry.form is None:
                continue
            prof = oscillation_profile(entry.form, fam, power(2.0),
                                       ball_resolution=bres)
            spec = dict(ball_count=count)
            bmo = oscillation_norm(entry.form, dom, power(2.0),
                                   OscillationNormSpec(kind="bmo", **spec),
                                   balls=fam, profile=prof).value
            lip = oscillation_norm(entry.form, dom, power(2.0),
                                   OscillationNormSpec(kind="lipschitz", k=k,
                                                       **spec),
                                   balls=fam, profile=prof).value
            worst_excess = max(worst_excess, bmo - factor * lip)
            entries += 1
    assert entries >= 17
    domain = default_domain(2)

    # the same construction on the side-2 square scales the constant by 2^k:
    # compare sup(bmo)/sup(lip) across the two domains for a rescaled field
    big = Box([0.0, 0.0], [2.0, 2.0])
    u_unit = named_form("corpus:poly-0form", 2)
    src = u_unit.components[0].node
    half = {f"x{i}": parse(f"(x{i}/2)") for i in (1, 2)}
    u_big = DifferentialForm.scalar(2, ExprField(substitute(src, half), 2))

    def ratio(u, dom):
        fam = ball_family(dom, 16, expansion=1.1)
        prof = oscillation_profile(u, fam, power(2.0), ball_resolution=11)
        spec = dict(ball_count=16)
        b = oscillation_norm(u, dom, power(2.0),
                             OscillationNormSpec(kind="bmo", **spec),
                             balls=fam, profile=prof).value
        l = oscillation_norm(u, dom, power(2.0),
                             OscillationNormSpec(kind="lipschitz", k=k, **spec),
                             balls=fam, profile=prof).value
        return b / l

    scale_factor = ratio(u_big, big) / ratio(u_unit, domain)
    scale_err = abs(scale_factor - 2.0 ** k) / 2.0 ** k
    ok = worst_excess <= 1e-9 and scale_err <= 1e-6
    report(capfd, 5, "oscillation-norm comparison constant", ok,
           f"max(bmo - |D|^(k/n) lip)={worst_excess:.2e} "
           f"side-2 factor={scale_factor:.9f} rel_err={scale_err:.2e}")


# -------------------------------------------------------------- criterion 6

def test_criterion_6_orlicz_below_lp_constant_one(capfd, corpora):
    domain = default_domain(2)
    balls = ball_family(domain, 50, expansion=1.1)
    weights = load_config().build_weights()
    pairs = [(power(2.0), 2.0), (power(3.0), 3.0),
             (custom_young("t^2/(1+t)"), 2.0)]
    worst_excess = -math.inf
    checked = 0
    for phi, p in pairs:
        assert check_phi_dominated(phi, p).ok
        for entry in corpora[2]:
            if entry.form is None:
                continue
            for w in weights:
                for ball in balls:
                    lux = luxemburg_norm(entry.form, ball, phi, weight=w,
                                         resolution=9)
                    ref = lp_norm(entry.form, ball, p, weight=w, resolution=9)
                    worst_excess = max(worst_excess, lux - ref)
                    checked += 1
    ok = checked == 3 * 11 * 3 * 50 and worst_excess <= 1e-8
    report(capfd, 6, "Orlicz norm below Lp at constant one", ok,
           f"checks={checked} max(lux - lp)={worst_excess:.2e}")


# -------------------------------------------------------------- criterion 7

def test_criterion_7_boundedness_reports(capfd):
    t0 = time.time()
    cfg = load_config(overrides={"grid_resolution": 27, "ball_resolution": 9,
                                 "ball_count": 12, "stability_check": True})
    reports = run_suite(cfg)
    elapsed = time.time() - t0
    finite = all(r.empirical_constant is not None
                 and math.isfinite(r.empirical_constant)
                 and r.empirical_constant > 0 for r in reports)
    drifts = [r.stability["drift"] for r in reports]
    stable = all(d <= 0.10 for d in drifts)
    names = {r.inequality for r in reports}
    covered = names >= {"lemma_T_bound", "lemma_closed_part_bound",
                        "sobolev_poincare", "oscillation_lower_bound",
                        "thm_lipschitz", "thm_bmo", "thm_bmo_le_lip",
                        "conjugate_pair", "weighted_lipschitz"}

    # parameter gates: the run above is the admitted configuration for all
    # three; each must also reject a bad configuration
    rejected = 0
    for bad in ({"dims": 3, "g_class": {"p": 1.2, "q": 4.0, "c": 1.0}},
                {"weighted": {"p": 2.0, "q": 2.0, "alpha": 2.0, "s": 1.2,
                              "young": {"name": "power", "p": 1.2}}},
                {"conjugate": {"p": 2.0, "q": 3.0}}):
        try:
            load_config(overrides=bad)
        except ConfigError:
            rejected += 1

    ok = (suite_passed(reports) and finite and stable and covered
          and rejected == 3)
    report(capfd, 7, "boundedness reports", ok,
           f"reports={len(reports)} max_drift={max(drifts):.3f} "
           f"gates_rejected={rejected}/3 t={elapsed:.0f}s")


# -------------------------------------------------------------- criterion 8

def test_criterion_8_conjugate_pair_structure(capfd, corpora):
    domain = default_domain(2)
    entry = next(e for e in corpora[2] if e.pair is not None)
    u, v = entry.pair
    du = u.d()
    dv = codifferential(v)
    quad = domain.quadrature(51)
    du_mod = du.modulus_values(quad.points)
    dsv_mod = v.star().d().modulus_values(quad.points)
    # structural identity A(x, du) = (codifferential of v), A = identity here
    diff = np.stack([du.value_at(x).coeffs - dv.value_at(x).coeffs
                     for x in quad.points[::7]])
    residual = float(np.max(np.abs(diff)))
    # pointwise growth coupling with p = q = 2
    worst_violation = float(np.max(du_mod ** 2 - dsv_mod ** 2))
    ok = residual <= 1e-4 and worst_violation <= 1e-12
    report(capfd, 8, "conjugate-pair structure", ok,
           f"residual={residual:.2e} max(|du|^q - |*dv|^p)={worst_violation:.2e} "
           f"nodes={len(quad.points)}")


# -------------------------------------------------------------- criterion 9

def test_criterion_9_determinism(capfd, tmp_path):
    cfg = {"grid_resolution": 21, "ball_resolution": 9, "ball_count": 8,
           "stability_check": False}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    outputs = []
    for i in (0, 1):
        target = tmp_path / f"run{i}.json"
        code = main(["verify", "--config", str(path), "--out", str(target)])
        assert code == 0
        outputs.append(target.read_bytes())
    capfd.readouterr()
    identical = outputs[0] == outputs[1]
    ok = identical and len(outputs[0]) > 1000
    report(capfd, 9, "byte-identical reruns", ok,
           f"bytes={len(outputs[0])} identical={identical}")
