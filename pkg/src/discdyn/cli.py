"""Command-line front end writing plot-ready CSV.

Exit codes: 0 success, 1 runtime failure (one ``error: <kind>: <reason>``
line on stderr), 2 usage error.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from typing import Iterable, Sequence

import numpy as np

from . import escape, henon, logistic, lorenz, poincare
from .core import DynamicsError, Point2
from .integrator import DEFAULT_DT


def _precision(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 6 <= p <= 17:
        raise argparse.ArgumentTypeError("precision must be in 6..17")
    return p


class CsvWriter:
    """Locale-free CSV: comma separated, '.' decimal, LF endings."""

    def __init__(self, stream, precision: int):
        self.stream = stream
        self.fmt = f".{precision}g"

    def cell(self, v) -> str:
        if isinstance(v, (bool, np.bool_)):
            return "true" if v else "false"
        if isinstance(v, (int, np.integer)):
            return str(int(v))
        if isinstance(v, (float, np.floating)):
            return format(float(v), self.fmt)
        return str(v)

    def row(self, values: Iterable) -> None:
        self.stream.write(",".join(self.cell(v) for v in values) + "\n")

    def rows(self, header: Sequence[str], rows: Iterable[Iterable]) -> None:
        self.row(header)
        for r in rows:
            self.row(r)


def _emit(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- argument groups -------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-o", "--output", help="output file (default: standard output)")
    p.add_argument("--precision", type=_precision, default=17,
                   help="significant digits for floats, 6..17 (default 17)")


def _lorenz_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sigma", type=float, default=10.0, help="Prandtl number sigma (default 10)")
    p.add_argument("--r", type=float, default=28.0, help="Rayleigh ratio r (default 28)")
    p.add_argument("--b", type=float, default=8.0 / 3.0, help="geometric factor b (default 8/3)")


def _lorenz_run(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x0", type=float, default=0.0, help="initial X (default 0)")
    p.add_argument("--y0", type=float, default=1.0, help="initial Y (default 1)")
    p.add_argument("--z0", type=float, default=0.0, help="initial Z (default 0)")
    p.add_argument("--dt", type=float, default=DEFAULT_DT, help=f"time step (default {DEFAULT_DT})")
    p.add_argument("--steps", type=int, default=10_000, help="number of steps (default 10000)")
    p.add_argument("--t0", type=float, default=0.0, help="initial time (default 0)")


def _henon_params(p: argparse.ArgumentParser, a_default=True) -> None:
    if a_default:
        p.add_argument("--a", type=float, default=1.4, help="bend parameter a (default 1.4)")
    p.add_argument("--b", type=float, default=0.3, help="contraction parameter b (default 0.3)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # lorenz [analyze]
    p = sub.add_parser("lorenz", help="integrate a Lorenz orbit (CSV t,x,y,z)",
                       description="Integrate the Lorenz system with the double-approximation "
                                   "scheme and write t,x,y,z.")
    _lorenz_params(p)
    _lorenz_run(p)
    _common(p)
    lsub = p.add_subparsers(dest="action", metavar="ACTION")
    q = lsub.add_parser("analyze", help="equilibria, characteristic polynomials, critical r (JSON)",
                        description="Report equilibria, characteristic polynomials and the "
                                    "critical r as JSON.")
    _lorenz_params(q)
    _common(q)

    p = sub.add_parser("poincare", help="section a Lorenz orbit (CSV index,t,x,y,z)",
                       description="Integrate a Lorenz orbit and intersect it with the plane "
                                   "normal . s = offset.")
    _lorenz_params(p)
    _lorenz_run(p)
    p.set_defaults(steps=100_000)
    p.add_argument("--normal", type=float, nargs=3, default=[0.0, 0.0, 1.0],
                   metavar=("NX", "NY", "NZ"), help="plane normal, rescaled to unit (default 0 0 1)")
    p.add_argument("--offset", type=float, default=27.0,
                   help="plane offset along the given normal (default 27)")
    p.add_argument("--direction", choices=[d.value for d in poincare.Direction],
                   default="positive", help="which crossings count (default positive)")
    _common(p)

    # henon [fixed-points | regimes]
    p = sub.add_parser("henon", help="Henon attractor cloud (CSV i,x,y)",
                       description="Iterate the Henon map and write the post-transient cloud.")
    _henon_params(p)
    p.add_argument("--x0", type=float, default=henon.CLOUD_START.x, help="initial x")
    p.add_argument("--y0", type=float, default=henon.CLOUD_START.y, help="initial y")
    p.add_argument("--transient", type=int, default=0, help="iterates to discard (default 0)")
    p.add_argument("--n", type=int, default=10_000, help="iterates to keep (default 10000)")
    _common(p)
    hsub = p.add_subparsers(dest="action", metavar="ACTION")
    q = hsub.add_parser("fixed-points", help="fixed points, eigenvalues, slopes (CSV)",
                        description="Both fixed points with eigenvalues, eigenvector slopes "
                                    "and stability.")
    _henon_params(q)
    _common(q)
    q = hsub.add_parser("regimes", help="regime sweep over a (CSV a,label,a0,a1)",
                        description="Classify the long-run behaviour on a uniform a-grid.")
    _henon_params(q, a_default=False)
    q.add_argument("--a-min", type=float, default=0.1, help="first a (default 0.1)")
    q.add_argument("--a-max", type=float, default=1.6, help="last a (default 1.6)")
    q.add_argument("--num", type=int, default=16, help="grid size (default 16)")
    q.add_argument("--x0", type=float, default=0.0, help="initial x (default 0)")
    q.add_argument("--y0", type=float, default=0.0, help="initial y (default 0)")
    q.add_argument("--transient", type=int, default=1000, help="transient iterates (default 1000)")
    q.add_argument("--probe", type=int, default=10_000, help="probe iterates (default 10000)")
    _common(q)

    # logistic diagram | cascade | orbits
    p = sub.add_parser("logistic", help="logistic map experiments",
                       description="Logistic map x -> a x (1 - x).")
    lsub = p.add_subparsers(dest="action", required=True, metavar="ACTION")
    q = lsub.add_parser("diagram", help="bifurcation diagram (CSV a,x)",
                        description="Post-transient iterates for each a on a uniform grid.")
    q.add_argument("--a-min", type=float, default=2.8, help="first a (default 2.8)")
    q.add_argument("--a-max", type=float, default=4.0, help="last a (default 4)")
    q.add_argument("--num", type=int, default=600, help="grid size (default 600)")
    q.add_argument("--transient", type=int, default=1000, help="transient iterates (default 1000)")
    q.add_argument("--keep", type=int, default=200, help="iterates kept per a (default 200)")
    q.add_argument("--x0", type=float, default=logistic.DEFAULT_X0, help="seed (default 0.5)")
    _common(q)
    q = lsub.add_parser("cascade", help="period-doubling onsets (CSV k,period,a_onset)",
                        description="Parameter values where the period-2^k cycle flips.")
    q.add_argument("--a-lo", type=float, default=2.5, help="scan start (default 2.5)")
    q.add_argument("--a-hi", type=float, default=3.57, help="scan end (default 3.57)")
    q.add_argument("--k-max", type=int, default=6, help="number of flips, 1..6 (default 6)")
    _common(q)
    q = lsub.add_parser("orbits", help="prime-period cycles (CSV cycle,period,x,multiplier,stability)",
                        description="All cycles of a given prime period in [0, 1].")
    q.add_argument("--a", type=float, required=True, help="parameter a in (0, 4]")
    q.add_argument("--period", type=int, required=True, help="prime period, 1..12")
    _common(q)

    # cantor [check]
    p = sub.add_parser("cantor", help="escape-set levels for a > 4 (CSV level,lo,hi)",
                       description="Intervals surviving n + 1 iterations, for levels 0..depth.")
    p.add_argument("--a", type=float, default=5.0, help="parameter a > 4 (default 5)")
    p.add_argument("--depth", type=int, default=6,
                   help=f"deepest level, 0..{escape.MAX_DEPTH} (default 6)")
    _common(p)
    csub = p.add_subparsers(dest="action", metavar="ACTION")
    q = csub.add_parser("check", help="expansion condition (CSV a,min_derivative,holds)",
                        description="Whether |f'| > 1 off the escape interval.")
    q.add_argument("--a", type=float, default=5.0, help="parameter a > 4 (default 5)")
    _common(q)
    return parser


# -- commands --------------------------------------------------------------

def _lp(args) -> lorenz.LorenzParams:
    return lorenz.LorenzParams(args.sigma, args.r, args.b)


def _run_lorenz(args, w: CsvWriter) -> None:
    orbit = lorenz.lorenz_orbit(_lp(args), (args.x0, args.y0, args.z0), args.dt, args.steps, args.t0)
    w.rows(["t", "x", "y", "z"], ([t, *s] for t, s in zip(orbit.times, orbit.samples)))


def _complex_json(z) -> list:
    return [float(z.real), float(z.imag)]


def _run_lorenz_analyze(args, w: CsvWriter) -> None:
    p = _lp(args)
    origin = lorenz.char_poly_origin(p)
    report = {
        "params": {"sigma": p.sigma, "r": p.r, "b": p.b},
        "equilibria": [
            {
                "location": list(e.location),
                "char_coeffs": list(e.char_coeffs),
                "eigenvalues": [_complex_json(z) for z in e.eigenvalues],
            }
            for e in lorenz.equilibria(p)
        ],
        "origin": {
            "linear_root": origin.linear_root,
            "quadratic": list(origin.quadratic),
            "discriminant": origin.discriminant,
            "all_real": origin.all_real,
            "has_positive_root": origin.has_positive_root,
        },
        "nontrivial_cubic": list(lorenz.char_poly_nontrivial(p)) if p.r > 1 else None,
        "critical_r": lorenz.critical_r(p),
    }
    w.stream.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _run_poincare(args, w: CsvWriter) -> None:
    orbit = lorenz.lorenz_orbit(_lp(args), (args.x0, args.y0, args.z0), args.dt, args.steps, args.t0)
    plane = poincare.SectionPlane.through(args.normal, args.offset, args.direction)
    pts = poincare.section(orbit, plane)
    w.rows(["index", "t", "x", "y", "z"], ([p.index, p.t, *p.location] for p in pts))


def _run_henon(args, w: CsvWriter) -> None:
    cloud = henon.attractor_cloud(henon.HenonParams(args.a, args.b), Point2(args.x0, args.y0),
                                  args.transient, args.n)
    w.rows(["i", "x", "y"], ([i, *pt] for i, pt in enumerate(cloud)))


def _run_henon_fixed(args, w: CsvWriter) -> None:
    rows = []
    for fp in henon.fixed_points(henon.HenonParams(args.a, args.b)):
        l1, l2 = fp.eigenvalues
        p1, p2 = fp.slopes if fp.slopes is not None else ("", "")
        rows.append([fp.location.x, fp.location.y, l1, l2, p1, p2, fp.stability.value])
    w.rows(["x", "y", "lambda1", "lambda2", "p1", "p2", "stability"], rows)


def _run_henon_regimes(args, w: CsvWriter) -> None:
    grid = np.linspace(args.a_min, args.a_max, args.num)
    sweep = henon.regime_sweep(args.b, grid, Point2(args.x0, args.y0), args.transient, args.probe)
    w.rows(["a", "label", "a0", "a1"], ([a, r.label.value, r.a0, r.a1] for a, r in sweep))


def _run_diagram(args, w: CsvWriter) -> None:
    cols = logistic.bifurcation_diagram(args.a_min, args.a_max, args.num, args.transient,
                                        args.keep, args.x0)
    w.rows(["a", "x"], ([a, x] for a, xs in cols for x in xs))


def _run_cascade(args, w: CsvWriter) -> None:
    rec = logistic.cascade_scan(args.a_lo, args.a_hi, args.k_max)
    w.rows(["k", "period", "a_onset"], ([k, per, a] for k, (per, a) in enumerate(rec.onsets)))


def _run_orbits(args, w: CsvWriter) -> None:
    cycles = logistic.find_periodic_orbits(args.a, args.period)
    w.rows(["cycle", "period", "x", "multiplier", "stability"],
           ([i, c.period, x, c.multiplier, c.stability.value]
            for i, c in enumerate(cycles) for x in c.points))


def _run_cantor(args, w: CsvWriter) -> None:
    levels = escape.cantor_levels(args.a, args.depth)
    w.rows(["level", "lo", "hi"],
           ([n, lo, hi] for n, lvl in enumerate(levels) for lo, hi in zip(lvl.lo, lvl.hi)))


def _run_cantor_check(args, w: CsvWriter) -> None:
    res = escape.expansion_check(args.a)
    w.rows(["a", "min_derivative", "holds"], [[args.a, res.min_derivative, res.holds]])


COMMANDS = {
    ("lorenz", None): _run_lorenz,
    ("lorenz", "analyze"): _run_lorenz_analyze,
    ("poincare", None): _run_poincare,
    ("henon", None): _run_henon,
    ("henon", "fixed-points"): _run_henon_fixed,
    ("henon", "regimes"): _run_henon_regimes,
    ("logistic", "diagram"): _run_diagram,
    ("logistic", "cascade"): _run_cascade,
    ("logistic", "orbits"): _run_orbits,
    ("cantor", None): _run_cantor,
    ("cantor", "check"): _run_cantor_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return int(exc.code or 0)
    handler = COMMANDS[(args.command, getattr(args, "action", None))]
    buf = io.StringIO()
    try:
        handler(args, CsvWriter(buf, args.precision))
        _emit(args.output, buf.getvalue())
    except DynamicsError as err:
        print(f"error: {err.kind}: {' '.join(str(err).split())}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: io: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
