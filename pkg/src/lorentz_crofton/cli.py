"""Command-line driver: load curves, run verifications, emit reports and data.

Exit codes: 0 all checks passed, 1 a check failed its tolerance, 2 input or
spec error, 3 precondition violation (wrong index, curve not strong
spacelike, radius below the support bounds). Reports are written even when
a check fails. The default Monte Carlo seed comes from the CROFTON_SEED
environment variable.
"""
from __future__ import annotations

import csv
import json
import os
import sys
import time
from pathlib import Path

import click
import numpy as np

from . import __version__
from .crofton import (
    VerificationReport,
    global_residual,
    lemma_2i_report,
    localized_report,
    verify_fary_milnor,
    verify_fenchel,
)
from .curves import (
    ClosedCurve,
    certify_strong_spacelike,
    reparametrize_arclength,
    total_curvature,
    winding_index,
)
from .desitter import SphericalCurve, tangent_indicatrix
from .errors import (
    BadParameter,
    GeometryError,
    NonIntegerWinding,
    NotOnDeSitter,
    NotSpacelike,
    NotStrongSpacelike,
    RadiusTooSmall,
    WrongIndex,
)
from .gallery import (
    FAMILIES,
    clam_shell,
    clam_shell_bound,
    clam_shell_height,
)
from .hyperbolic import choose_radius
from .specfile import load_curve

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_PRECONDITION = 3

_PRECONDITION_ERRORS = (NotSpacelike, NotStrongSpacelike, WrongIndex,
                        RadiusTooSmall, NotOnDeSitter, NonIntegerWinding)

CHECK_NAMES = ["crofton-local", "crofton-global", "fenchel", "fary-milnor",
               "lemma-2i", "all"]


def _default_seed(seed):
    if seed is not None:
        return int(seed)
    return int(os.environ.get("CROFTON_SEED", "0"))


def _write_report(out, payload):
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    click.echo(text)


def _report_payload(invocation, seed, curve_name, reports, extra=None):
    payload = {
        "tool": "lorentz-crofton",
        "version": __version__,
        "invocation": invocation,
        "seed": seed,
        "curve": curve_name,
        "all_passed": all(r["passed"] for r in reports) if reports else False,
        "reports": reports,
    }
    if extra:
        payload.update(extra)
    return payload


class _Prepared:
    """Curve plus derived objects shared by the individual checks."""

    def __init__(self, curve):
        self.source = curve
        if isinstance(curve, SphericalCurve):
            self.spherical = curve
            self.arc = None
            self.index = curve.index
            self.certification = None
        else:
            arc = reparametrize_arclength(curve)
            cert = certify_strong_spacelike(arc)
            self.certification = cert
            if not cert.verdict:
                raise NotStrongSpacelike(
                    "curve failed strong-spacelike certification")
            index = winding_index(arc)
            if index < 0:
                arc = reparametrize_arclength(curve.reversed())
                index = winding_index(arc)
            self.arc = arc
            self.index = index
            self.spherical = tangent_indicatrix(arc)

    @property
    def name(self):
        return getattr(self.source, "name", "") or "curve"


def _resolve_radius(spherical, radius, safety):
    if radius == "auto":
        return choose_radius(spherical, safety)
    try:
        return float(radius)
    except ValueError:
        raise BadParameter(f"--radius must be 'auto' or a number, got {radius!r}")


@click.group()
@click.version_option(__version__, prog_name="lorentz-crofton")
def main():
    """Verification toolkit for closed spacelike curves in the Lorentz 3-space."""


@main.command("verify")
@click.option("--curve", "curve_address", required=True,
              help="Curve spec file or builtin:NAME?key=value,...")
@click.option("--check", "check", default="all", type=click.Choice(CHECK_NAMES),
              show_default=True)
@click.option("--method", default="both",
              type=click.Choice(["quadrature", "mc", "both"]), show_default=True,
              help="Evaluation route for the localized identity.")
@click.option("--samples", default=100_000, type=int, show_default=True,
              help="Monte Carlo sample count.")
@click.option("--radius", default="auto", show_default=True,
              help="Disk radius for the localized identity ('auto' delegates "
                   "to the support bounds).")
@click.option("--safety", default=2.0, type=float, show_default=True,
              help="Safety factor applied to the support bounds.")
@click.option("--seed", default=None, type=int,
              help="Monte Carlo seed [default: CROFTON_SEED or 0].")
@click.option("--tol", default=1e-6, type=float, show_default=True,
              help="Relative tolerance for quadrature identities.")
@click.option("--knotted/--unknotted", default=False,
              help="Caller-supplied knottedness for the Fary-Milnor check.")
@click.option("--threads", default=1, type=int, show_default=True,
              help="Worker threads for Monte Carlo pole counting.")
@click.option("--out", default=None, type=click.Path(dir_okay=False),
              help="Write the report JSON here as well as to stdout.")
@click.pass_context
def cmd_verify(ctx, curve_address, check, method, samples, radius, safety, seed,
               tol, knotted, threads, out):
    """Run the requested identity checks against one curve."""
    seed = _default_seed(seed)
    invocation = ["verify", "--curve", curve_address, "--check", check,
                  "--method", method, "--samples", str(samples),
                  "--radius", str(radius), "--safety", str(safety),
                  "--seed", str(seed), "--tol", str(tol)]

    try:
        curve = load_curve(curve_address)
    except BadParameter as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    try:
        prepared = _Prepared(curve)
    except NotStrongSpacelike as exc:
        cert = None
        try:
            arc = reparametrize_arclength(curve)
            cert = certify_strong_spacelike(arc)
        except GeometryError:
            pass
        payload = _report_payload(invocation, seed, getattr(curve, "name", ""), [],
                                  extra={"error": str(exc)})
        if cert is not None:
            payload["certification"] = {
                "verdict": cert.verdict,
                "min_tangent_norm": cert.min_tangent_norm,
                "min_plane_margin": cert.min_plane_margin,
                "min_curvature": cert.min_curvature,
                "worst_location": cert.worst_location,
            }
        _write_report(out, payload)
        ctx.exit(EXIT_PRECONDITION)
    except _PRECONDITION_ERRORS as exc:
        _write_report(out, _report_payload(invocation, seed,
                                           getattr(curve, "name", ""), [],
                                           extra={"error": str(exc)}))
        ctx.exit(EXIT_PRECONDITION)
    except BadParameter as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    checks = _select_checks(check, prepared)
    reports: list[VerificationReport] = []
    try:
        for name in checks:
            reports.extend(_run_check(name, prepared, method=method, n=samples,
                                      radius=radius, safety=safety, seed=seed,
                                      tol=tol, knotted=knotted, threads=threads))
    except _PRECONDITION_ERRORS as exc:
        payload = _report_payload(invocation, seed, prepared.name,
                                  [r.to_dict() for r in reports],
                                  extra={"error": str(exc)})
        _write_report(out, payload)
        ctx.exit(EXIT_PRECONDITION)
    except BadParameter as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    payload = _report_payload(invocation, seed, prepared.name,
                              [r.to_dict() for r in reports])
    _write_report(out, payload)
    ctx.exit(EXIT_OK if payload["all_passed"] else EXIT_CHECK_FAILED)


def _select_checks(check, prepared):
    if check != "all":
        return [check]
    checks = ["crofton-local", "crofton-global", "lemma-2i"]
    if prepared.arc is not None:
        if prepared.index == 1:
            checks.append("fenchel")
        elif prepared.index == 2:
            checks.append("fary-milnor")
    return checks


def _run_check(name, prepared, *, method, n, radius, safety, seed, tol,
               knotted, threads):
    g = prepared.spherical
    if name == "crofton-local":
        r = _resolve_radius(g, radius, safety)
        methods = ["quadrature", "mc"] if method == "both" else [method]
        return [localized_report(g, r, method=m, n=n, seed=seed, rel_tol=tol,
                                 threads=threads)
                for m in methods]
    if name == "crofton-global":
        return [global_residual(g, n, seed, safety=safety, threads=threads)]
    if name == "lemma-2i":
        return [lemma_2i_report(g, seed=seed)]
    if name == "fenchel":
        if prepared.arc is None:
            raise WrongIndex("the Fenchel check needs a space curve, not a "
                             "spherical curve")
        return [verify_fenchel(prepared.arc)]
    if name == "fary-milnor":
        if prepared.arc is None:
            raise WrongIndex("the Fary-Milnor check needs a space curve, not "
                             "a spherical curve")
        return [verify_fary_milnor(prepared.arc, knotted,
                                   n_poles=min(n, 20_000), seed=seed)]
    raise BadParameter(f"unknown check {name!r}")


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(x)) for x in row])


@main.command("gallery")
@click.option("--family", required=True, help="Builtin family name.")
@click.option("--params", default="", help="Comma separated key=value pairs.")
@click.option("--emit", required=True,
              type=click.Choice(["curve-csv", "indicatrix-csv", "hprime-csv",
                                 "sweep-csv"]))
@click.option("--n", "n_rows", default=2048, type=int, show_default=True)
@click.option("--out", "out_dir", required=True,
              type=click.Path(file_okay=False))
@click.pass_context
def cmd_gallery(ctx, family, params, emit, n_rows, out_dir):
    """Emit plot-ready CSV tables for a builtin curve family."""
    try:
        raw = {}
        if params:
            for item in params.split(","):
                if "=" not in item:
                    raise BadParameter(f"expected key=value, got {item!r}")
                key, value = item.split("=", 1)
                raw[key.strip()] = value.strip()
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / f"{family}_{emit.replace('-', '_')}.csv"

        if emit == "hprime-csv":
            if family != "clam_shell":
                raise BadParameter("hprime-csv is only defined for clam_shell")
            eps = float(raw.get("epsilon", 0.5))
            theta = np.linspace(0.0, 4.0 * np.pi, n_rows, endpoint=False)
            rows = np.column_stack([theta, clam_shell_height(theta, eps, 1)])
            _write_csv(path, ["theta", "hprime"], rows)
        elif emit == "sweep-csv":
            if family != "clam_shell":
                raise BadParameter("sweep-csv is only defined for clam_shell")
            eps_grid = np.arange(float(raw.get("eps_min", 0.1)),
                                 float(raw.get("eps_max", 0.9)) + 1e-12,
                                 float(raw.get("eps_step", 0.1)))
            rows = []
            for eps in eps_grid:
                tc = total_curvature(reparametrize_arclength(clam_shell(eps)))
                rows.append([eps, tc, clam_shell_bound(eps)])
            _write_csv(path, ["epsilon", "total_curvature", "bound"], rows)
        else:
            if family not in FAMILIES:
                raise BadParameter(f"unknown family {family!r}")
            curve = load_curve(f"builtin:{family}" + ("?" + params if params else ""))
            if emit == "curve-csv":
                if isinstance(curve, SphericalCurve):
                    s = np.linspace(0.0, curve.length, n_rows, endpoint=False)
                    pts = curve.point(s)
                    rows = np.column_stack([s, pts])
                    _write_csv(path, ["s", "x1", "x2", "x3"], rows)
                else:
                    t = np.linspace(0.0, curve.period, n_rows, endpoint=False)
                    rows = np.column_stack([t, curve.point(t)])
                    _write_csv(path, ["t", "x1", "x2", "x3"], rows)
            else:  # indicatrix-csv
                if isinstance(curve, SphericalCurve):
                    g = curve
                else:
                    g = tangent_indicatrix(reparametrize_arclength(curve))
                s = np.linspace(0.0, g.length, n_rows, endpoint=False)
                pts = g.point(s)
                rows = np.column_stack([s, g.theta(s), g.phi(s), pts])
                _write_csv(path, ["s", "theta", "phi", "x1", "x2", "x3"], rows)
    except (BadParameter, NotSpacelike, NotStrongSpacelike, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)
    click.echo(str(path))
    ctx.exit(EXIT_OK)


@main.command("selftest")
@click.option("--quick", is_flag=True, help="Smaller sample sizes, a few seconds.")
@click.option("--seed", default=None, type=int)
@click.pass_context
def cmd_selftest(ctx, quick, seed):
    """Run the invariant suite on the builtin gallery and print a pass/fail matrix."""
    from .selftest import run_selftest

    seed = _default_seed(seed)
    results = run_selftest(quick=quick, seed=seed)
    width = max(len(name) for name, _, _ in results)
    failures = 0
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        click.echo(f"[{status}] {name.ljust(width)}  {detail}")
        failures += 0 if ok else 1
    click.echo(f"{len(results) - failures}/{len(results)} checks passed")
    ctx.exit(EXIT_OK if failures == 0 else EXIT_CHECK_FAILED)


if __name__ == "__main__":
    main()
