"""Batch command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 numerical failure, 4 inadmissible chart parameter.  Errors are reported
as a JSON object on stderr; output files are written atomically, so a
failed run leaves no partial output behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from fractions import Fraction
from typing import Optional

import numpy as np

from . import verification
from .discrete_string import (
    DiscreteString, PeakonState, dirichlet_spectrum, from_peakons, mixed_spectrum,
    neumann_spectrum, to_peakons, weyl_e0, weyl_omega0,
)
from .errors import (
    CollisionError, InadmissibleParameterError, InputError, NumericalError, PeakonFlowError,
)
from .herglotz import RationalHerglotz, evaluate, format_number
from .inverse_spectral import E0, OMEGA0, from_chart, reconstruct
from .peakon_ode import IntegrationControls, integrate
from .spectral_flow import DIRECT_SPECS, HamiltonianSpec, SpectralChart, chart, evolve

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERICAL, EXIT_INADMISSIBLE = 0, 1, 2, 3, 4


class VerificationFailed(Exception):
    def __init__(self, payload: str):
        super().__init__("verification failed")
        self.payload = payload


# --- input / output ---------------------------------------------------------

def _load_json(args) -> dict:
    if args.inline is not None:
        text = args.inline
    elif args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise InputError("give --input PATH or --inline JSON")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _exact_string(data: dict) -> DiscreteString:
    # decimal literals are taken at face value: "0.5" -> 1/2
    try:
        return DiscreteString(tuple(Fraction(str(v)) for v in data["gaps"]),
                              tuple(Fraction(str(v)) for v in data["masses"]))
    except (KeyError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed string: {exc}") from exc


def _load_string(args) -> tuple[DiscreteString, Optional[PeakonState]]:
    data = _load_json(args)
    if "gaps" in data:
        return (_exact_string(data) if args.exact else DiscreteString.from_json(data)), None
    if "q" in data:
        if args.exact:
            raise InputError("--exact needs string input (gaps/masses), not peakons")
        state = PeakonState.from_json(data)
        return from_peakons(state), state
    raise InputError("input must be a peakon state {q, p} or a string {gaps, masses}")


def _load_state(args) -> PeakonState:
    data = _load_json(args)
    if "q" in data:
        return PeakonState.from_json(data)
    if "gaps" in data:
        return to_peakons(DiscreteString.from_json(data))
    raise InputError("input must be a peakon state {q, p} or a string {gaps, masses}")


def _atomic_write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(x)) if isinstance(x, float) else x for x in row])
    return buf.getvalue()


def _emit(args, obj, header=None, rows=None) -> None:
    if args.format == "csv" and header is not None:
        _atomic_write(args.output, _csv_text(header, rows))
    else:
        _atomic_write(args.output, _json_text(obj))


def _times(args, t0: float) -> list:
    if args.times:
        try:
            return [float(x) for x in args.times.split(",")]
        except ValueError as exc:
            raise InputError(f"bad --times: {exc}") from exc
    if args.t_final is None:
        raise InputError("give --times or --t-final")
    if args.steps < 1:
        raise InputError("--steps must be at least 1")
    return [float(x) for x in np.linspace(t0, args.t_final, args.steps + 1)]


# --- plot data --------------------------------------------------------------

def plot_samples(f: RationalHerglotz, n_grid: int = 401) -> list:
    """``(x, f(x))`` pairs on a grid covering all poles, with points
    clustered on both sides of each pole."""
    poles = [float(g) for g in f.poles]
    lo = min(poles + [0.0])
    hi = max(poles + [1.0])
    pad = 0.5 * (hi - lo) + 1.0
    xs = set(float(x) for x in np.linspace(lo - pad, hi + pad, n_grid))
    for g in poles:
        scale = max(abs(g), 1.0)
        for k in range(1, 7):
            d = scale * 10.0 ** (-k / 1.5)
            xs.update((g - d, g + d))
    xs = sorted(x for x in xs if x not in poles)
    return [(x, float(evaluate(f, x))) for x in xs]


def _write_plot_data(path: str, functions: dict) -> None:
    rows = [(name, x, y) for name, f in functions.items() for x, y in plot_samples(f)]
    _atomic_write(path, _csv_text(["function", "x", "y"], rows))


# --- commands ---------------------------------------------------------------

def cmd_spectrum(args) -> int:
    string, _ = _load_string(args)
    a, b = args.boundary
    eig = mixed_spectrum(string, Fraction(a) if args.exact else a,
                         Fraction(b) if args.exact else b)
    out = {"boundary": [a, b], "eigenvalues": eig,
           "dirichlet": dirichlet_spectrum(string), "neumann": neumann_spectrum(string)}
    _emit(args, out, ["index", "eigenvalue"], [(k + 1, x) for k, x in enumerate(eig)])
    return EXIT_OK


def cmd_weyl(args) -> int:
    string, _ = _load_string(args)
    functions = {"omega0": weyl_omega0(string), "e0": weyl_e0(string)}
    rows = []
    for name, f in functions.items():
        rows.append((name, "constant", "", format_number(f.alpha)))
        rows += [(name, k + 1, format_number(g), format_number(n))
                 for k, (g, n) in enumerate(zip(f.poles, f.residues))]
    if args.plot_data:
        _write_plot_data(args.plot_data, functions)
    _emit(args, {name: f.to_json() for name, f in functions.items()},
          ["function", "index", "pole", "residue"], rows)
    return EXIT_OK


def cmd_chart(args) -> int:
    string, _ = _load_string(args)
    ch = chart(string, args.kind, args.parameter)
    _emit(args, ch.to_json(), ["n", "root", "action", "angle", "residue"], ch.rows())
    return EXIT_OK


def _hamiltonian(args) -> HamiltonianSpec:
    if args.coeffs:
        try:
            coeffs = {int(m): float(c) for m, c in json.loads(args.coeffs).items()}
        except (json.JSONDecodeError, AttributeError, ValueError) as exc:
            raise InputError(f"bad --coeffs: {exc}") from exc
        return HamiltonianSpec(args.kind, args.parameter, coeffs)
    spec = DIRECT_SPECS[args.hamiltonian](args.parameter)
    if spec.kind != args.kind:
        raise InputError(f"{args.hamiltonian} lives on the {spec.kind}-chart, not {args.kind}")
    return spec


def cmd_evolve(args) -> int:
    string, state = _load_string(args)
    t0 = state.t if state is not None else 0.0
    spec = _hamiltonian(args)
    ch = chart(string, spec.kind, spec.parameter)
    times = _times(args, t0)
    states = [to_peakons(from_chart(evolve(ch, spec, t - t0)), t) if t != t0
              else to_peakons(string, t) for t in times]
    deviation = None
    if args.compare_ode:
        ode = integrate(to_peakons(string, t0), max(times), t_eval=times)
        deviation = [max((abs(a - b) for a, b in zip(s.q, ode.q[k])), default=0.0)
                     for k, s in enumerate(states)]
    n = string.n
    header = (["t"] + [f"q{k + 1}" for k in range(n)] + [f"p{k + 1}" for k in range(n)]
              + (["deviation"] if deviation is not None else []))
    rows = [[s.t, *s.q, *s.p] + ([deviation[k]] if deviation is not None else [])
            for k, s in enumerate(states)]
    out = {"chart": ch.to_json(), "hamiltonian": spec.to_json(),
           "trajectory": [s.to_json() for s in states]}
    if deviation is not None:
        out["deviation"] = deviation
    _emit(args, out, header, rows)
    return EXIT_OK


def cmd_simulate(args) -> int:
    state = _load_state(args)
    controls = IntegrationControls()
    if args.controls:
        try:
            controls = IntegrationControls.from_json(json.loads(args.controls))
        except (json.JSONDecodeError, AttributeError, ValueError) as exc:
            raise InputError(f"bad --controls: {exc}") from exc
    times = _times(args, state.t)
    traj = integrate(state, times[-1], controls, t_eval=times)
    out = {"header": traj.header(), "rows": traj.rows(), "drift": traj.max_relative_drift()}
    _emit(args, out, traj.header(), traj.rows())
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    data = _load_json(args)
    if "kind" in data:
        string = from_chart(SpectralChart.from_json(data))
    else:
        flavor = data.get("flavor", OMEGA0)
        if flavor not in (OMEGA0, E0):
            raise InputError(f"flavor must be {OMEGA0!r} or {E0!r}")
        f = RationalHerglotz.from_json(data, signed=True)
        if args.exact and not f.exact:
            raise InputError("--exact needs rational Weyl data")
        string = reconstruct(f, flavor)
    out = {"string": string.to_json()}
    if string.positive:
        out["peakons"] = to_peakons(string).to_json()
    rows = [(k + 1, format_number(x), format_number(m))
            for k, (x, m) in enumerate(zip(string.positions, string.masses))]
    _emit(args, out, ["index", "position", "mass"], rows)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = []
    if args.input is not None or args.inline is not None:
        data = _load_json(args)
        records = data if isinstance(data, list) else [data]
        tol = 1e-12 if args.tol is None else args.tol
        for rec in records:
            try:
                f = RationalHerglotz.from_json(rec["function"], signed=True)
                level = float(rec["level"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"malformed verification record: {exc}") from exc
            if "roots" in rec:
                checks += verification.boole_from_roots(f, level, rec["roots"], tol)
            else:
                checks += verification.boole_checks(f, level, tol, {"level": level})
    else:
        names = args.suite or list(verification.SUITES)
        unknown = [s for s in names if s not in verification.SUITES]
        if unknown:
            raise InputError(f"unknown suite(s) {unknown}; choose from {list(verification.SUITES)}")
        checks = verification.run_suites(names, args.seed, args.tol)
    passed = all(c.passed for c in checks)
    report = {"seed": args.seed, "passed": passed, "n_checks": len(checks),
              "n_failed": sum(not c.passed for c in checks),
              "checks": [c.to_json() for c in checks]}
    text = _json_text(report)
    _atomic_write(args.output, text)
    if not passed:
        failing = [c.to_json() for c in checks if not c.passed]
        raise VerificationFailed(json.dumps({"error": "VerificationFailed",
                                             "failed": failing[:20]}, default=str))
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="JSON input file")
    src.add_argument("--inline", metavar="JSON", help="JSON input given on the command line")
    p.add_argument("--output", metavar="PATH", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    p.add_argument("--tol", type=float, default=None, help="override check tolerances")


def _chart_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=("C", "F"), default="C")
    p.add_argument("--parameter", type=float, default=0.0)


def _time_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--times", help="comma-separated output times")
    p.add_argument("--t-final", type=float, dest="t_final")
    p.add_argument("--steps", type=int, default=10)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peakonflow",
        description="Spectral data, action-angle charts and dynamics of peakon systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues for boundary data (a, b)")
    _common(p)
    p.add_argument("--boundary", nargs=2, type=float, default=(0.0, 1.0), metavar=("A", "B"))
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("weyl", help="Weyl functions Omega_0 and E_0")
    _common(p)
    p.add_argument("--plot-data", metavar="PATH", help="write (x, y) samples for plotting")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("chart", help="action-angle chart")
    _common(p)
    _chart_args(p)
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("evolve", help="spectral evolution with reconstruction")
    _common(p)
    _chart_args(p)
    _time_args(p)
    p.add_argument("--hamiltonian", choices=sorted(DIRECT_SPECS), default="H2")
    p.add_argument("--coeffs", help='JSON {power: coefficient}, overrides --hamiltonian')
    p.add_argument("--compare-ode", action="store_true", help="add deviation from direct ODE")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("simulate", help="direct integration of the peakon ODE")
    _common(p)
    _time_args(p)
    p.add_argument("--controls", help="JSON {rtol, atol, max_step, collision_eps}")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="string and peakons from Weyl data or a chart")
    _common(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    p.set_defaults(func=cmd_verify)
    return parser


def _error(code: int, exc: BaseException, extra: Optional[dict] = None) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    if extra:
        payload.update(extra)
    sys.stderr.write(json.dumps(payload, default=str) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.tol is not None and not (args.tol >= 0 and math.isfinite(args.tol)):
        return _error(EXIT_INPUT, InputError("--tol must be finite and non-negative"))
    try:
        return args.func(args)
    except VerificationFailed as exc:
        sys.stderr.write(exc.payload + "\n")
        return EXIT_VERIFY
    except InadmissibleParameterError as exc:
        return _error(EXIT_INADMISSIBLE, exc)
    except CollisionError as exc:
        traj = exc.trajectory
        extra = {"collision_time": traj.collision_time} if traj is not None else None
        return _error(EXIT_NUMERICAL, exc, extra)
    except (InputError, OSError) as exc:
        return _error(EXIT_INPUT, exc)
    except (NumericalError, PeakonFlowError, ArithmeticError) as exc:
        return _error(EXIT_NUMERICAL, exc)


if __name__ == "__main__":
    sys.exit(main())
