"""Command-line front end.

Four subcommands: solve1d runs the five-estimator 1D cross-check,
solve2d builds the matched 2D state and evaluates its energy under
both jump conventions, profile samples a wavefunction to CSV (with an
optional rendered figure), and verify runs the kernel, quadrature,
and distribution self-check suites.  Reports are deterministic JSON;
exit status is 0 when every asserted check passed, 1 on a check
failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, well1d, well2d
from .bessel import bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, \
    wronskian_defect
from .distributions import (
    BumpTestFunction,
    Piecewise1D,
    SmoothPiece,
    bracket,
    distributional_second_derivative_1d,
    fundamental_solution_check,
    mollifier_sequence_check,
)
from .quadrature import (
    QuadratureError,
    integrate_finite,
    integrate_radial2d,
    integrate_semiinfinite,
)
from .report import Report, render_report, write_profile_csv

JUMP_WARNING = (
    "2D jump conventions disagree: the derivative jump at R is "
    "-N*b*(K1(u0)+I1(u0)) while the closed-form energy is built from "
    "K1(u0)-I1(u0); results carry both"
)
ALPHA_WARNING = (
    "alpha < 0 accepted; the bound-state reading of the energy assumes "
    "alpha > 0"
)


class UsageError(Exception):
    pass


def _positive(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not a number" % text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError("must be positive, got %s" % text)
    return value


def _nonzero(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not a number" % text)
    if value == 0.0:
        raise argparse.ArgumentTypeError("must be nonzero")
    return value


def _sample_count(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("%r is not an integer" % text)
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2 samples")
    return value


def _radius_list(text):
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        value = float(token)
        if not value > 0.0:
            raise argparse.ArgumentTypeError("radii must be positive")
        out.append(value)
    if not out:
        raise argparse.ArgumentTypeError("empty radius list")
    return out


def build_parser():
    parser = argparse.ArgumentParser(
        prog="deltawell",
        description="Bound states of attractive delta wells in 1D and 2D.",
    )
    parser.add_argument("--version", action="version",
                        version="deltawell %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    s1 = sub.add_parser(
        "solve1d", help="cross-check the 1D bound state with five estimators")
    s1.add_argument("--hbar", type=_positive, default=1.0)
    s1.add_argument("--mass", type=_positive, default=1.0)
    s1.add_argument("--alpha", type=_positive, default=1.0)
    s1.add_argument("--tol", type=_positive, default=1e-8,
                    help="relative cross-method agreement gate")
    s1.add_argument("--output", "-o", metavar="PATH",
                    help="write the JSON report here instead of stdout")
    s1.set_defaults(func=cmd_solve1d)

    s2 = sub.add_parser(
        "solve2d", help="build the matched 2D state and evaluate its energy")
    s2.add_argument("--hbar", type=_positive, default=1.0)
    s2.add_argument("--mass", type=_positive, default=1.0)
    s2.add_argument("--alpha", type=_nonzero, default=1.0)
    s2.add_argument("--R", type=_positive, default=1.0, dest="radius",
                    help="matching radius (the free length scale)")
    s2.add_argument("--tol", type=_positive, default=1e-8,
                    help="normalization gate")
    s2.add_argument("--r-sweep", type=_radius_list, metavar="R1,R2,...",
                    help="also evaluate the closed-form energy at these radii")
    s2.add_argument("--output", "-o", metavar="PATH")
    s2.set_defaults(func=cmd_solve2d)

    pr = sub.add_parser(
        "profile", help="sample a wavefunction profile to CSV")
    pr.add_argument("--dimension", type=int, choices=(1, 2), default=2)
    pr.add_argument("--hbar", type=_positive, default=1.0)
    pr.add_argument("--mass", type=_positive, default=1.0)
    pr.add_argument("--alpha", type=_nonzero, default=1.0)
    pr.add_argument("--R", type=_positive, default=1.0, dest="radius",
                    help="matching radius (2D only)")
    pr.add_argument("--r-max", type=_positive, dest="r_max",
                    help="outer radius (2D) or half-width (1D); "
                         "default 5R resp. 5/b")
    pr.add_argument("--samples", type=_sample_count, default=1000)
    pr.add_argument("--output", "-o", metavar="PATH",
                    help="CSV path; stdout when omitted")
    pr.add_argument("--figure", action="store_true",
                    help="render a PNG next to the CSV (requires --output "
                         "and matplotlib)")
    pr.set_defaults(func=cmd_profile)

    ve = sub.add_parser(
        "verify", help="run the numerical self-check suites")
    ve.add_argument("--suite", choices=("bessel", "quad", "distrib", "all"),
                    default="all")
    ve.add_argument("--tol", type=_positive, default=1e-8)
    ve.add_argument("--seed", type=int, default=0,
                    help="seed for the randomized duality pairs")
    ve.add_argument("--output", "-o", metavar="PATH")
    ve.set_defaults(func=cmd_verify)

    return parser


def _new_report(command, inputs):
    return Report(
        tool_version=__version__,
        command=command,
        timestamp=datetime.now(timezone.utc).isoformat(
            timespec="microseconds"),
        inputs=inputs,
    )


def _finish(report, output_path):
    text = render_report(report)
    if output_path is None:
        sys.stdout.write(text)
    else:
        try:
            with open(output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise RuntimeError("cannot write %s: %s" % (output_path, exc))
        print("%s: %s" % (output_path, "PASS" if report.passed else "FAIL"))
    return 0 if report.passed else 1


# --- solve1d ---------------------------------------------------------------

def cmd_solve1d(args):
    p = well1d.Params1D(args.hbar, args.mass, args.alpha)
    rep = _new_report("solve1d", {
        "hbar": args.hbar, "mass": args.mass, "alpha": args.alpha,
        "tol": args.tol,
    })
    estimates = well1d.all_energy_reports(p, args.tol)
    exact = estimates[0].energy
    for er in estimates:
        rel = abs(er.energy - exact) / abs(exact)
        rep.add("energy_" + er.method, er.method, er.energy, args.tol,
                rel <= args.tol)
    spread = (max(e.energy for e in estimates)
              - min(e.energy for e in estimates)) / abs(exact)
    rep.add("cross_method_spread", "relative range of the five energies",
            spread, args.tol, spread <= args.tol)
    rep.add("b_decay_rate", "m*alpha/hbar^2", estimates[0].b, args.tol, True)
    return _finish(rep, args.output)


# --- solve2d ---------------------------------------------------------------

_RESIDUAL_GATE = 1e-6
_CONTINUITY_GATE = 1e-13
_JUMP_GATE = 1e-6
_BRACKET_REPRODUCTION_GATE = 1e-8
_SWEEP_GATE = 1e-12


def _residual_radii(R):
    return [r for r in np.linspace(0.05 * R, 10.0 * R, 50)
            if abs(r - R) > 1.5e-3 * R]


def cmd_solve2d(args):
    p = well2d.Params2D(args.hbar, args.mass, args.alpha, args.radius)
    rep = _new_report("solve2d", {
        "hbar": args.hbar, "mass": args.mass, "alpha": args.alpha,
        "R": args.radius, "tol": args.tol,
    })
    rep.warn(JUMP_WARNING)
    if args.alpha < 0.0:
        rep.warn(ALPHA_WARNING)

    rep.add("u0", "I0 = K0 crossing by bracketed root solve", p.u0,
            1e-13, True)
    rep.add("beta_sq", "K1(u0)^2 - I1(u0)^2", well2d.beta_sq(p.u0),
            1e-13, True)

    norm = well2d.norm_check(p, args.tol)
    rep.add("normalization", "radial quadrature of psi_c^2", norm,
            args.tol, abs(norm - 1.0) <= args.tol)

    cont = well2d.continuity_defect(p)
    rep.add("continuity_defect", "inside/outside gap at R", cont,
            _CONTINUITY_GATE, cont <= _CONTINUITY_GATE)

    residuals = well2d.helmholtz_residual(p, _residual_radii(p.R))
    worst = max(abs(r) for r in residuals)
    rep.add("helmholtz_residual_max",
            "worst 5-point residual over [0.05R, 10R]", worst,
            _RESIDUAL_GATE, worst <= _RESIDUAL_GATE)

    jw = well2d.jump_weight(p)
    fd_rel = abs(jw.finite_difference - jw.analytic) / abs(jw.analytic)
    rep.add("jump_analytic", "N*b*(-K1(u0)-I1(u0))", jw.analytic,
            _JUMP_GATE, True)
    rep.add("jump_finite_difference", "one-sided stencil at R",
            jw.finite_difference, _JUMP_GATE, fd_rel <= _JUMP_GATE)
    rep.add("jump_paper_combination", "N*b*(K1(u0)-I1(u0)), audit only",
            jw.paper_combination, _JUMP_GATE, True)

    ec = well2d.c_spectrum_paper(p)
    try:
        br_paper = well2d.c_spectrum_bracket(p, jump_convention="paper")
        br_derived = well2d.c_spectrum_bracket(p)
        paper_ok = True
    except well2d.FamilySpreadError as exc:
        br_paper, br_derived = exc.paper, exc.derived
        paper_ok = False
    reproduction = abs(br_paper.energy - ec) / abs(ec)
    rep.add("e_c_closed_form", "closed-form energy at u0", ec,
            _BRACKET_REPRODUCTION_GATE,
            reproduction <= _BRACKET_REPRODUCTION_GATE)
    rep.add("e_c_bracket_paper",
            "bracket solve, jump convention K1-I1", br_paper.energy,
            br_paper.family_spread,
            paper_ok and reproduction <= _BRACKET_REPRODUCTION_GATE)
    rep.add("e_c_bracket_derived",
            "bracket solve, jump convention K1+I1", br_derived.energy,
            br_derived.family_spread, paper_ok)
    rep.add("family_spread", "relative spread of per-phi roots",
            br_derived.family_spread, 1e-6, paper_ok)

    if args.r_sweep:
        curve = well2d.c_spectrum_curve(p, args.r_sweep)
        scaled = [e * r * r for r, e in curve]
        law = (max(scaled) - min(scaled)) / abs(scaled[0])
        for i, (r, e) in enumerate(curve):
            rep.add("e_c_sweep_%d" % i, "closed-form energy at R=%.17g" % r,
                    e, _SWEEP_GATE, True)
        rep.add("r_sweep_inverse_square_law", "spread of E*R^2 over sweep",
                law, _SWEEP_GATE, law <= _SWEEP_GATE)

    return _finish(rep, args.output)


# --- profile ---------------------------------------------------------------

def _profile_rows(args):
    if args.dimension == 1:
        if args.alpha < 0.0:
            raise UsageError("1D profile needs alpha > 0")
        p = well1d.Params1D(args.hbar, args.mass, args.alpha)
        b = p.b_scale
        half = args.r_max if args.r_max is not None else 5.0 / b
        xs = np.linspace(-half, half, args.samples)
        psi = [well1d.psi_1d(b, x) for x in xs]
        return ("x", "psi", "psi_sq"), xs, psi, "1D profile, b=%.6g" % b
    p = well2d.Params2D(args.hbar, args.mass, args.alpha, args.radius)
    r_max = args.r_max if args.r_max is not None else 5.0 * p.R
    rs = np.linspace(0.0, r_max, args.samples)
    psi = [well2d.psi_c_radial(p, r) for r in rs]
    return ("r", "psi", "psi_sq"), rs, psi, "2D profile, R=%.6g" % p.R


def cmd_profile(args):
    if args.figure and args.output is None:
        raise UsageError("--figure requires --output")
    header, grid, psi, title = _profile_rows(args)
    rows = [(float(g), v, v * v) for g, v in zip(grid, psi)]
    if args.output is None:
        write_profile_csv(sys.stdout, header, rows)
    else:
        try:
            with open(args.output, "w", encoding="utf-8", newline="") as fh:
                write_profile_csv(fh, header, rows)
        except OSError as exc:
            raise RuntimeError("cannot write %s: %s" % (args.output, exc))
        print("%s: %d rows" % (args.output, len(rows)))
    if args.figure:
        from .figures import render_profile

        stem = args.output.rsplit(".", 1)[0] if "." in args.output \
            else args.output
        path = render_profile(grid, psi, [v * v for v in psi],
                              stem + ".png", header[0], title)
        print("%s: figure" % path)
    return 0


# --- verify ----------------------------------------------------------------

def _verify_bessel(rep, tol):
    xs = np.geomspace(1e-6, 100.0, 200)
    worst = max(wronskian_defect(x) * x for x in xs)
    rep.add("wronskian_defect_max", "max over log grid of x*|I0K1+I1K0-1/x|",
            worst, 1e-12, worst <= 1e-12)
    worst_scaled = 0.0
    for x in (0.5, 1.0, 5.0, 20.0, 80.0):
        i_dev = abs(bessel_i_scaled(0, x) * math.exp(x) - bessel_i(0, x)) \
            / bessel_i(0, x)
        k_dev = abs(bessel_k_scaled(0, x) * math.exp(-x) - bessel_k(0, x)) \
            / bessel_k(0, x)
        worst_scaled = max(worst_scaled, i_dev, k_dev)
    rep.add("scaled_consistency_max", "scaled vs plain kernels",
            worst_scaled, 1e-13, worst_scaled <= 1e-13)


def _verify_quad(rep, tol):
    gate = min(tol, 1e-10)
    cases = [
        ("cubic_moment",
         integrate_finite(lambda x: x ** 3, 0.0, 1.0, gate / 10).value,
         0.25),
        ("sine_arch",
         integrate_finite(math.sin, 0.0, math.pi, gate / 10).value, 2.0),
        ("kinked_abs",
         integrate_finite(abs, -1.0, 1.0, gate / 10,
                          breakpoints=(0.0,)).value, 1.0),
        ("exponential_tail",
         integrate_semiinfinite(lambda x: math.exp(-x), 0.0,
                                gate / 10).value, 1.0),
        ("gauss_tail",
         integrate_semiinfinite(lambda x: math.exp(-x * x), 0.0,
                                gate / 10).value, 0.5 * math.sqrt(math.pi)),
        ("plane_gaussian",
         integrate_radial2d(lambda r: math.exp(-r * r), (), gate / 10).value,
         math.pi),
    ]
    for name, got, want in cases:
        rel = abs(got - want) / abs(want)
        rep.add(name, "adaptive quadrature vs closed form", got, gate,
                rel <= gate)


def _random_kinked(rng):
    c = float(rng.uniform(-0.5, 0.5))
    left = rng.uniform(-1.0, 1.0, size=4)
    right = rng.uniform(-1.0, 1.0, size=4)
    # continuity at the kink: adjust the right constant term
    right[0] = 0.0
    lval = left[0] + left[1] * c + left[2] * c * c + left[3] * c ** 3
    rval = right[1] * c + right[2] * c * c + right[3] * c ** 3
    right[0] = lval - rval

    def piece(coeffs, lo, hi):
        a0, a1, a2, a3 = (float(v) for v in coeffs)
        return SmoothPiece(
            lo, hi,
            lambda x: a0 + a1 * x + a2 * x * x + a3 * x ** 3,
            lambda x: a1 + 2.0 * a2 * x + 3.0 * a3 * x * x,
            lambda x: 2.0 * a2 + 6.0 * a3 * x,
        )

    return Piecewise1D((piece(left, -math.inf, c), piece(right, c, math.inf)))


def _verify_distrib(rep, tol, seed):
    rng = np.random.default_rng(seed)
    gate = 1e-8
    for i in range(10):
        f = _random_kinked(rng)
        phi = BumpTestFunction((float(rng.uniform(-1.0, 1.0)),),
                               float(rng.uniform(0.5, 2.0)))
        lhs = bracket(distributional_second_derivative_1d(f), phi, tol=1e-11)
        lo, hi = phi.support()
        bps = [b for b in f.breakpoints() if lo < b < hi]
        rhs = integrate_finite(lambda x: f.value(x) * phi.laplacian((x,)),
                               lo, hi, 1e-11, breakpoints=bps).value
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        rep.add("duality_pair_%02d" % i, "<f'', phi> vs integral of f*phi''",
                err, gate, err <= gate)

    psi = well2d.Psi2D.build(well2d.Params2D()).representation
    distances = mollifier_sequence_check(psi, (4, 8, 16, 32))
    for n, d in zip((4, 8, 16, 32), distances):
        rep.add("mollifier_distance_n%d" % n,
                "L2 distance of the mollified truncation", d, 1.0, True)
    ratio = max(b / a for a, b in zip(distances, distances[1:]))
    rep.add("mollifier_strict_decrease", "max consecutive distance ratio",
            ratio, 1.0, ratio < 1.0)

    for b in (0.5, 1.0, 2.0):
        phi = BumpTestFunction((0.0, 0.0), 1.0)
        got = fundamental_solution_check(b, phi)
        err = abs(got - phi.value((0.0, 0.0)))
        rep.add("fundamental_solution_b%g" % b,
                "bracket of K0(b|x|)/(2 pi) with (-lap + b^2) phi", got,
                1e-6, err <= 1e-6)
    phi_off = BumpTestFunction((3.0, 0.0), 1.0)
    got = fundamental_solution_check(1.0, phi_off)
    rep.add("fundamental_solution_offcentre",
            "phi(0) = 0 case returns 0", got, 1e-6, abs(got) <= 1e-6)


def cmd_verify(args):
    rep = _new_report("verify", {
        "suite": args.suite, "tol": args.tol, "seed": args.seed,
    })
    if args.suite in ("bessel", "all"):
        _verify_bessel(rep, args.tol)
    if args.suite in ("quad", "all"):
        _verify_quad(rep, args.tol)
    if args.suite in ("distrib", "all"):
        _verify_distrib(rep, args.tol, args.seed)
    return _finish(rep, args.output)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (QuadratureError, RuntimeError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
