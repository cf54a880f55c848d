"""Curated invariant suite behind the selftest CLI command.

Each check returns (name, passed, detail). Quick mode shrinks the Monte
Carlo sizes so the whole matrix runs in seconds.
"""
from __future__ import annotations

import numpy as np

from .crofton import (
    global_residual,
    lemma_2i_report,
    localized_lhs_quadrature,
    localized_rhs,
    verify_fary_milnor,
    verify_fenchel,
)
from .curves import reparametrize_arclength, total_curvature
from .desitter import adapted_frame, tangent_indicatrix
from .gallery import (
    circle,
    clam_shell,
    equator,
    quad_perturb,
    trefoil_spacelike,
    wobble,
)
from .hyperbolic import choose_radius, sample_disk
from .lorentz import minkowski_inner


def _gallery_spherical(quick):
    curves = [
        equator(),
        wobble(0.2, 3, 1),
        wobble(0.3, 2, 2),
        quad_perturb(0.5),
        tangent_indicatrix(reparametrize_arclength(clam_shell(0.5))),
    ]
    if not quick:
        curves.append(tangent_indicatrix(
            reparametrize_arclength(trefoil_spacelike(0.05))))
    return curves


def _frame_gram_defect(g, n_samples=64):
    s = np.linspace(0.0, g.length, n_samples, endpoint=False)
    fr = adapted_frame(g, s)
    vecs = (fr.e1, fr.e2, fr.e3)
    target = np.diag([1.0, 1.0, -1.0])
    worst = 0.0
    for i in range(3):
        for j in range(3):
            defect = minkowski_inner(vecs[i], vecs[j]) - target[i, j]
            worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def run_selftest(quick: bool = False, seed: int = 0):
    results = []
    curves = _gallery_spherical(quick)
    n_mc = 1_000 if quick else 20_000
    n_lemma = 40 if quick else 200

    worst = max(_frame_gram_defect(g) for g in curves)
    results.append(("frame_orthonormality", worst < 1e-8, f"max defect {worst:.2e}"))

    # structure equation for e1 by central differences in arc length
    worst = 0.0
    h = 1e-4
    for g in curves:
        s = np.linspace(0.0, g.length, 24, endpoint=False) + 0.123
        e1p, _, _ = g.frame(s + h)
        e1m, _, _ = g.frame(s - h)
        fd = (e1p - e1m) / (2.0 * h)
        _, e2, e3 = g.frame(s)
        rhs = (np.cosh(g.phi(s)) * g.theta_prime(s))[:, None] * e2 \
            + g.phi_prime(s)[:, None] * e3
        worst = max(worst, float(np.max(np.abs(fd - rhs))))
    results.append(("structure_equations_fd", worst < 1e-5, f"max defect {worst:.2e}"))

    worst = max(g.unit_speed_residual for g in curves)
    results.append(("unit_speed_identity", worst < 1e-7, f"max residual {worst:.2e}"))

    ok = True
    exceptions = []
    for g in curves:
        rep = lemma_2i_report(g, n_each=n_lemma, seed=seed)
        ok = ok and rep.passed
        exceptions.append(str(rep.details["exceptions"]))
    results.append(("lemma_constant_count", ok, "exceptions " + ",".join(exceptions)))

    worst = 0.0
    for g in curves:
        for safety in (1.5, 2.0, 4.0):
            r = choose_radius(g, safety)
            lhs = localized_lhs_quadrature(g, r, n_s=1024)
            rhs = localized_rhs(g, r)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    results.append(("crofton_localized_quadrature", worst < 1e-6,
                    f"max rel residual {worst:.2e}"))

    ok = True
    worst = 0.0
    for g in curves:
        rep = global_residual(g, n_mc, seed)
        ok = ok and rep.passed
        worst = max(worst, rep.abs_residual)
    results.append(("crofton_global_mc", ok, f"max |residual| {worst:.2e}"))

    n_area = 50_000 if quick else 1_000_000
    pts = sample_disk(1.0, n_area, seed)
    inner = float(np.mean(pts[:, 2] <= np.cosh(0.5)))
    p_true = (np.cosh(0.5) - 1.0) / (np.cosh(1.0) - 1.0)
    se = np.sqrt(p_true * (1.0 - p_true) / n_area)
    results.append(("disk_sampler_radial_law", abs(inner - p_true) < 3.0 * se,
                    f"|{inner:.5f} - {p_true:.5f}| vs 3se {3.0 * se:.5f}"))

    rep = verify_fenchel(reparametrize_arclength(circle(1.0)))
    results.append(("fenchel_circle_equality",
                    rep.passed and rep.details["planar_equality_case"],
                    f"total curvature {rep.lhs:.12f}"))
    if not quick:
        rep = verify_fary_milnor(
            reparametrize_arclength(trefoil_spacelike(0.05)), knotted=True,
            n_poles=4000, seed=seed)
        results.append(("fary_milnor_trefoil", rep.passed,
                        f"TC {rep.lhs:.6f} < 4pi, count-2 poles "
                        f"{rep.details['count_two_poles']}"))

    eps_grid = (0.3, 0.6) if quick else (0.2, 0.4, 0.6, 0.8)
    ok = True
    prev = 0.0
    for eps in eps_grid:
        tc = total_curvature(reparametrize_arclength(clam_shell(eps)))
        bound = 2.0 * np.pi / np.sqrt(1.0 - eps ** 2)
        ok = ok and tc >= bound - 1e-6 and tc > prev
        prev = tc
    results.append(("clam_shell_bound", ok, f"grid {eps_grid}"))

    return results
