"""Command line front end.

Four subcommands cover the workflows the library supports:

* ``coverage``   one scenario, analytic or simulated, one CSV row
* ``sweep``      one parameter axis, one CSV row per grid point
* ``validate``   analytic vs Monte Carlo z-scores over a small grid
* ``insights``   decay rate, density profile, improvement diagnostics

Scenario parameters come from flags, from a ``key = value`` config file
(``--config``), or both; flags win.  Results are CSV on stdout (or
``--out``); everything else goes to stderr.  Exit codes: 0 success,
2 bad usage or invalid parameters, 3 numerical failure, 4 statistical
disagreement in ``validate``.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from . import analytic, insights, model, montecarlo
from .errors import MimocovError, NumericalError, StatisticalError, ValidationError

_BASE_HEADER = ["kind", "tau_db", "lambda", "alpha", "r0", "noise", "M",
                "theta", "kappa", "beta"]
_POINT_HEADER = _BASE_HEADER + ["method", "p_c", "ci_halfwidth", "trials", "seed"]
_VALIDATE_HEADER = _BASE_HEADER + ["analytic", "mc", "ci_halfwidth", "z", "trials", "seed"]
_Z_LIMIT = 4.0


def _num(x) -> str:
    return format(float(x), ".12g")


def _build_parser() -> argparse.ArgumentParser:
    scen = argparse.ArgumentParser(add_help=False)
    grp = scen.add_argument_group("scenario")
    grp.add_argument("--config", metavar="PATH", help="key = value parameter file")
    grp.add_argument("--kind", choices=(model.CELLULAR, model.ADHOC))
    grp.add_argument("--lambda", dest="lam", type=float, metavar="DENSITY",
                     help="transmitter density (per unit area)")
    grp.add_argument("--alpha", type=float, help="path loss exponent, must exceed 2")
    grp.add_argument("--r0", type=float, help="dipole distance (ad hoc only)")
    grp.add_argument("--noise", type=float, help="noise power (default 0)")
    grp.add_argument("--tau-db", type=float, help="SIR threshold in dB")
    grp.add_argument("--tau", type=float, help="SIR threshold, linear (overrides --tau-db)")
    grp.add_argument("--m", type=int, help="antenna count (default 1)")
    grp.add_argument("--theta", type=float, help="signal gain scale (default 1)")
    grp.add_argument("--kappa", type=float, help="interferer gamma shape (default 1)")
    grp.add_argument("--beta", type=float, help="interferer gamma scale (default 1)")
    run = scen.add_argument_group("run")
    run.add_argument("--seed", type=int, default=0, help="simulation seed (default 0)")
    run.add_argument("--trials", type=int, default=100_000,
                     help="simulation trials (default 100000)")
    run.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")

    top = argparse.ArgumentParser(
        prog="mimocov",
        description="Coverage probability of multi-antenna Poisson networks.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    cov = sub.add_parser("coverage", parents=[scen],
                         help="evaluate one scenario")
    cov.add_argument("--method", choices=("analytic", "mc"), default="analytic")
    cov.add_argument("--path", choices=(model.METHOD_RECURSION, model.METHOD_MATRIX),
                     default=model.METHOD_RECURSION,
                     help="analytic evaluation route (default finite-sum)")
    cov.add_argument("--window", type=float, help="simulation disc radius (mc only)")

    sw = sub.add_parser("sweep", parents=[scen],
                        help="evaluate along one parameter axis")
    sw.add_argument("--axis", choices=("tau_db", "lambda", "antennas", "r0"), required=True)
    sw.add_argument("--start", type=float, required=True)
    sw.add_argument("--stop", type=float, required=True)
    sw.add_argument("--points", type=int, default=25)
    sw.add_argument("--scale", choices=("linear", "log"), default="linear")
    sw.add_argument("--method", choices=("analytic", "mc"), default="analytic")
    sw.add_argument("--path", choices=(model.METHOD_RECURSION, model.METHOD_MATRIX),
                    default=model.METHOD_RECURSION)
    sw.add_argument("--window", type=float)

    va = sub.add_parser("validate", parents=[scen],
                        help="compare analytic and Monte Carlo values on a grid")
    va.add_argument("--m-list", default="1,2,4,8", metavar="LIST",
                    help="comma separated antenna counts (default 1,2,4,8)")
    va.add_argument("--tau-db-list", default="-5,0,5,10", metavar="LIST",
                    help="comma separated thresholds in dB (default -5,0,5,10)")
    va.add_argument("--path", choices=(model.METHOD_RECURSION, model.METHOD_MATRIX),
                    default=model.METHOD_RECURSION)
    va.add_argument("--window", type=float)

    ins = sub.add_parser("insights", parents=[scen],
                         help="structural diagnostics of a scenario")
    ins.add_argument("--rc", action="store_true",
                     help="per-antenna outage decay rate (cellular)")
    ins.add_argument("--ratios", type=int, metavar="N",
                     help="improvement ratios up to order N")
    ins.add_argument("--peak-bound", action="store_true",
                     help="bound on the best-improvement index (ad hoc)")
    ins.add_argument("--density-profile", action="store_true",
                     help="coverage-vs-density coefficients (ad hoc)")
    ins.add_argument("--derivative", action="store_true",
                     help="d coverage / d density (ad hoc)")
    ins.add_argument("--at-lambda", type=float, metavar="DENSITY",
                     help="density at which to take the derivative (default: scenario density)")
    return top


def _collect_params(args) -> dict:
    params = model.load_config(args.config) if args.config else {}
    flags = {}
    for key, attr in (("kind", "kind"), ("lambda", "lam"), ("alpha", "alpha"),
                      ("r0", "r0"), ("noise", "noise"), ("tau", "tau"),
                      ("tau_db", "tau_db"), ("m", "m"), ("theta", "theta"),
                      ("kappa", "kappa"), ("beta", "beta")):
        value = getattr(args, attr, None)
        if value is not None:
            flags[key] = value
    if "tau" in flags or "tau_db" in flags:
        # an explicit threshold flag replaces any threshold from the file
        params.pop("tau", None)
        params.pop("tau_db", None)
    params.update(flags)
    return params


def _scenario_fields(bundle: model.ScenarioBundle) -> list:
    sc = bundle.scenario
    law = bundle.interferer
    return [
        sc.kind,
        _num(10.0 * math.log10(sc.threshold)),
        _num(sc.lam),
        _num(sc.alpha),
        "" if sc.r0 is None else _num(sc.r0),
        _num(sc.noise),
        str(bundle.signal.shape),
        _num(bundle.signal.scale),
        "" if law.kappa is None else _num(law.kappa),
        "" if law.beta is None else _num(law.beta),
    ]


def _point_row(bundle, est, seed) -> list:
    return _scenario_fields(bundle) + [
        est.method, _num(est.value), _num(est.ci_halfwidth), str(est.trials), str(seed),
    ]


def _evaluate(bundle, args, seed) -> model.CoverageEstimate:
    if args.method == "analytic":
        return analytic.coverage(bundle, args.path)
    cfg = montecarlo.SimConfig(trials=args.trials, seed=seed,
                               window_radius=getattr(args, "window", None))
    return montecarlo.simulate(bundle, cfg)


def _cmd_coverage(args):
    bundle = model.bundle_from_params(_collect_params(args))
    est = _evaluate(bundle, args, args.seed)
    return _POINT_HEADER, [_point_row(bundle, est, args.seed)], 0


def _axis_values(args) -> list:
    if args.axis == "antennas":
        lo, hi = int(args.start), int(args.stop)
        if lo < 1 or hi < lo:
            raise ValidationError("antenna sweep needs 1 <= start <= stop")
        return list(range(lo, hi + 1))
    if args.points < 1:
        raise ValidationError("points must be at least 1")
    if args.points == 1:
        return [args.start]
    if args.scale == "log":
        if args.start <= 0.0 or args.stop <= 0.0:
            raise ValidationError("log scale needs positive start and stop")
        return list(np.geomspace(args.start, args.stop, args.points))
    return list(np.linspace(args.start, args.stop, args.points))


def _cmd_sweep(args):
    base = _collect_params(args)
    values = _axis_values(args)
    antenna_axis = args.axis == "antennas"
    header = _POINT_HEADER + (["delta_p"] if antenna_axis else [])
    rows = []
    prev_pc = 0.0
    noted_flat = False
    for i, v in enumerate(values):
        params = dict(base)
        if args.axis == "tau_db":
            params.pop("tau", None)
            params["tau_db"] = v
        elif args.axis == "lambda":
            params["lambda"] = v
        elif args.axis == "r0":
            params["r0"] = v
        else:
            params["m"] = int(v)
        bundle = model.bundle_from_params(params)
        if args.axis == "lambda" and bundle.scenario.kind == model.CELLULAR and not noted_flat:
            print("note: cellular coverage does not depend on the density; "
                  "expect a flat sweep", file=sys.stderr)
            noted_flat = True
        seed = args.seed + i
        est = _evaluate(bundle, args, seed)
        row = _point_row(bundle, est, seed)
        if antenna_axis:
            row.append(_num(est.value - prev_pc))
            prev_pc = est.value
        rows.append(row)
    return header, rows, 0


def _parse_list(text: str, caster, what: str) -> list:
    try:
        return [caster(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValidationError(f"could not parse {what} list {text!r}") from None


def _cmd_validate(args):
    base = _collect_params(args)
    m_values = _parse_list(args.m_list, int, "antenna")
    tau_values = _parse_list(args.tau_db_list, float, "threshold")
    if not m_values or not tau_values:
        raise ValidationError("validate needs at least one antenna count and one threshold")
    rows = []
    worst = 0.0
    i = 0
    for m in m_values:
        for tau_db in tau_values:
            params = dict(base)
            params.pop("tau", None)
            params["tau_db"] = tau_db
            params["m"] = m
            bundle = model.bundle_from_params(params)
            seed = args.seed + i
            i += 1
            cfg = montecarlo.SimConfig(trials=args.trials, seed=seed,
                                       window_radius=args.window)
            mc = montecarlo.simulate(bundle, cfg)
            cellular_noise = (bundle.scenario.kind == model.CELLULAR
                              and bundle.scenario.noise > 0.0)
            if cellular_noise:
                exact_field, z_field = "n/a", ""
            else:
                exact = analytic.coverage(bundle, args.path).value
                se = mc.ci_halfwidth / 1.96
                z = (mc.value - exact) / se if se > 0.0 else math.inf
                worst = max(worst, abs(z))
                exact_field, z_field = _num(exact), _num(z)
            rows.append(_scenario_fields(bundle) + [
                exact_field, _num(mc.value), _num(mc.ci_halfwidth), z_field,
                str(mc.trials), str(seed),
            ])
    print(f"validate: {len(rows)} grid points, max |z| = {worst:.3g} "
          f"(limit {_Z_LIMIT:g})", file=sys.stderr)
    code = 0 if worst <= _Z_LIMIT else 4
    return _VALIDATE_HEADER, rows, code


def _cmd_insights(args):
    picked = any((args.rc, args.ratios is not None, args.peak_bound,
                  args.density_profile, args.derivative))
    if not picked:
        raise ValidationError("pick at least one insight: --rc, --ratios, "
                              "--peak-bound, --density-profile, --derivative")
    bundle = model.bundle_from_params(_collect_params(args))
    rows = []
    if args.rc:
        rows.append(["decay_rate", _num(insights.cellular_decay_rate(bundle))])
    if args.ratios is not None:
        diag = insights.outage_decay_check(bundle, order=args.ratios)
        for n, r in enumerate(diag.ratios):
            rows.append([f"improvement_ratio_{n}", _num(r)])
        if diag.truncated:
            print("note: ratios truncated where the coefficients underflowed",
                  file=sys.stderr)
    if args.peak_bound:
        pk = insights.adhoc_peak_bound(bundle)
        rows.append(["peak_mu", _num(pk.mu)])
        rows.append(["peak_index_bound", str(pk.index_bound)])
        rows.append(["peak_monotone", "1" if pk.monotone else "0"])
    if args.density_profile or args.derivative:
        profile = insights.density_profile(bundle)
        if args.density_profile:
            rows.append(["density_head", _num(profile.head)])
            for n, b in enumerate(profile.betas):
                rows.append([f"density_beta_{n}", _num(b)])
        if args.derivative:
            at = args.at_lambda if args.at_lambda is not None else bundle.scenario.lam
            rows.append(["dcoverage_dlambda", _num(profile.derivative_at(at))])
    return ["quantity", "value"], rows, 0


_COMMANDS = {
    "coverage": _cmd_coverage,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
    "insights": _cmd_insights,
}


def _emit(header, rows, out_path) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        header, rows, code = _COMMANDS[args.command](args)
    except StatisticalError as exc:
        print(f"statistical error: {exc}", file=sys.stderr)
        return 4
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3
    except MimocovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(header, rows, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
