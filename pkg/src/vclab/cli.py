"""Command-line interface: ``vclab <subcommand> ...``.

Exit codes: 0 success, 1 failed verdict or numerical error, 2 usage error.
Precision comes from ``--precision``, else a ``--config`` file, else the
``VCLAB_PRECISION`` environment variable, else 50 digits.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Sequence

from mpmath import mp, mpc, mpf

from . import asymlab, bundle, charvar, checkpoints, geom, skein
from .cjones import KnotTag, UnsupportedKnotError, jsequence
from .numeric import DEFAULT_DPS, check_dps, env_precision

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MIN_NMAX = 8


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    precision_digits: int = DEFAULT_DPS
    nmax: int | None = None
    # csv or json for the tabular subcommands; None keeps each one's default
    format: str | None = None
    seed_re: float | None = None
    seed_im: float = 0.0
    crossing_limit: int = skein.DEFAULT_CROSSING_LIMIT

    def validate(self) -> None:
        check_dps(self.precision_digits)
        if self.nmax is not None and self.nmax < MIN_NMAX:
            raise UsageError(f"nmax must be at least {MIN_NMAX}")
        if self.format not in (None, "csv", "json"):
            raise UsageError("format must be csv or json")


def read_config(path: str) -> dict[str, str]:
    """key=value lines; blank lines and # comments are skipped."""
    values = {}
    for number, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{number}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(precision_digits=env_precision())
    if args.config:
        known = {f.name for f in fields(RunConfig)}
        for key, raw in read_config(args.config).items():
            if key not in known:
                raise UsageError(f"unknown config key {key!r}")
            setattr(config, key, raw if key == "format" else _number(raw, key))
    if args.precision is not None:
        config.precision_digits = args.precision
    if getattr(args, "output_format", None):
        config.format = args.output_format
    config.validate()
    return config


def _number(raw: str, key: str):
    try:
        return int(raw)
    except ValueError:
        try:
            return float(raw)
        except ValueError:
            raise UsageError(f"config key {key!r}: {raw!r} is not a number") from None


# ---------------------------------------------------------------- output

def _digits() -> int:
    return max(10, mp.dps - 5)


def num(x) -> str:
    return mp.nstr(mpf(x), _digits())


def cnum(z) -> dict[str, str]:
    z = mpc(z)
    return {"re": num(mp.re(z)), "im": num(mp.im(z))}


def meta(extra: dict[str, Any] | None = None) -> dict[str, Any]:
    out = {"precision_digits": mp.dps}
    out.update(extra or {})
    return out


def emit_json(payload: dict[str, Any]) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    sys.stdout.write(f"# precision_digits={mp.dps}\n")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _emit_table(config: RunConfig, header, rows, info: dict[str, Any]) -> None:
    if config.format == "json":
        emit_json(meta(dict(info, columns=list(header), rows=rows)))
    else:
        emit_csv(header, rows)


def _real(text: str) -> str:
    try:
        mpf(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return text


def _complex_arg(values: Sequence[str]) -> mpc:
    re_part, im_part = values
    return mpc(mpf(re_part), mpf(im_part))


# ---------------------------------------------------------------- subcommands

def _diagram(args) -> skein.Diagram:
    if args.pd is not None:
        return skein.parse_pd(args.pd)
    return skein.parse_pd({"trefoil": skein.TREFOIL_PD, "fig8": skein.FIGURE_EIGHT_PD}[args.knot])


def cmd_bracket(args, config: RunConfig) -> int:
    d = _diagram(args)
    print(skein.kauffman_bracket(d, limit=config.crossing_limit).canonical())
    return EXIT_OK


def cmd_jones(args, config: RunConfig) -> int:
    d = _diagram(args)
    poly = skein.jones_V(d, config.crossing_limit) if args.which == "V" else skein.jones_J2(d, config.crossing_limit)
    print(poly.canonical())
    return EXIT_OK


def cmd_cjones(args, config: RunConfig) -> int:
    nmax = args.nmax or config.nmax or 100
    if nmax < MIN_NMAX:
        raise UsageError(f"--nmax must be at least {MIN_NMAX}")
    seq = jsequence(KnotTag.parse(args.knot), _complex_arg(args.theta), args.nmin, nmax, args.stride)
    rows = []
    for n, value in seq.points:
        rows.append([n, num(mp.re(value)), num(mp.im(value)),
                     num(mp.log(abs(value))) if value != 0 else "-inf", num(mp.arg(value))])
    _emit_table(config, ["N", "re", "im", "log_abs", "arg"], rows, {"knot": args.knot, "theta": cnum(seq.theta)})
    return EXIT_OK


def cmd_charvar(args, config: RunConfig) -> int:
    p = charvar.presentation(args.knot)
    payload = meta({
        "knot": p.name,
        "omega": charvar.word_str(p.omega),
        "riley_F": str(charvar.riley_F(p).as_expr()),
        "char_variety_poly": str(charvar.char_variety_poly(p).as_expr()),
        "alexander": charvar.fox_alexander(p).canonical(),
    })
    if args.word:
        payload["trace"] = {"word": args.word, "poly": str(charvar.trace_poly(args.word).as_expr())}
    emit_json(payload)
    return EXIT_OK


def cmd_hfunc(args, config: RunConfig) -> int:
    if args.knot != "fig8":
        raise UsageError("hfunc is available for --knot fig8")
    u = _complex_arg(args.u)
    point = geom.holonomy_point(u, args.branch)
    m = mp.exp(u)
    half = mp.exp(point.v / 2)
    emit_json(meta({
        "u": cnum(u),
        "branch": args.branch,
        "phi": cnum(point.phi),
        "H": cnum(point.H),
        "dH": cnum((point.v + 2j * mp.pi) / 2),
        "v": cnum(point.v),
        "f": cnum(point.f),
        "vol": num(geom.vol_cone_fig8(u)),
        "exp_v_half": cnum(half),
        "ell_check": num(abs(half + geom.ell_geometric(m))),
    }))
    return EXIT_OK


def cmd_surgery(args, config: RunConfig) -> int:
    seed = None
    if args.seed is not None:
        seed = _complex_arg(args.seed)
    elif config.seed_re is not None:
        seed = mpc(config.seed_re, config.seed_im)
    u = geom.surgery_solve(args.p, args.q, seed=seed)
    residual = abs(geom.surgery_residual(u, args.p, args.q))
    poly = charvar.surgery_polynomial(args.p, args.q)
    payload = meta({
        "p": args.p,
        "q": args.q,
        "u": cnum(u),
        "residual": num(residual),
        "e_u_poly": str(poly.as_expr()),
        "e_u_poly_residual": num(abs(charvar.eval_poly_m(poly, mp.exp(u)))),
        "vol": num(geom.vol_cone_fig8(u)),
        "cs": None,
        "cs_over_2pi2": None,
    })
    on_ray = abs(mp.re(u)) > geom.cusp_edge() and abs(mp.im(u)) < mpf(10) ** (-mp.dps // 2)
    if on_ray and args.q == 1:
        cs = geom.cs_cone_fig8(mp.re(u), geom.SurgeryCoeff.default(args.p))
        payload["cs"] = num(cs)
        payload["cs_over_2pi2"] = num(cs / (2 * mp.pi**2))
    emit_json(payload)
    return EXIT_OK


def _element(e: bundle.CSBundleElement) -> dict[str, Any]:
    return {"alpha": cnum(e.alpha), "beta": cnum(e.beta), "z": cnum(e.z),
            "psl_shift": str(e.psl_shift)}


def cmd_bundle(args, config: RunConfig) -> int:
    u = _complex_arg(args.u)
    if args.knot == "fig8":
        emit_json(meta({"knot": "fig8", "u": cnum(u), "element": _element(bundle.cs_kk_fig8(u))}))
        return EXIT_OK
    if args.a is None or args.b is None:
        raise UsageError("--knot torus needs --a and --b")
    c, d = bundle.torus_cd(args.a, args.b)
    element = bundle.torus_cs_bundle(args.a, args.b, c, d, args.k, args.l, u, args.eps)
    ftilde = bundle.torus_ftilde(args.a, args.b, args.k, args.l, u)
    f_plus_h0 = bundle.torus_f(args.a, args.b, u)
    emit_json(meta({
        "knot": f"torus({args.a},{args.b})",
        "a": args.a, "b": args.b, "c": c, "d": d, "k": args.k, "l": args.l, "eps": args.eps,
        "u": cnum(u),
        "element": _element(element),
        "normalized": _element(bundle.normalize(element)),
        "ftilde": cnum(ftilde),
        "f_plus_H0": cnum(f_plus_h0),
        "difference_over_pi2": cnum((f_plus_h0 - ftilde) / mp.pi**2),
    }))
    return EXIT_OK


def _plot_value(what: str, u: mpf) -> mpf:
    if what == "imH":
        return mp.im(geom.H_fig8(u))
    if what == "vol":
        return geom.vol_cone_fig8(u)
    return geom.cs_cone_fig8(u) / (2 * mp.pi**2)


def cmd_plotdata(args, config: RunConfig) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    start, stop = mpf(args.start), mpf(args.stop)
    us = [start + (stop - start) * k / (args.steps - 1) for k in range(args.steps)]
    values = [_plot_value(args.what, u) for u in us]
    # branch changes shift Im H and the volume by multiples of 2 pi, CS/(2 pi^2) by 1/2
    quantum = mpf(1) / 2 if args.what == "cs" else 2 * mp.pi
    geom.audit_continuity(values, quantum / 2, order=2)
    _emit_table(config, ["u", "value"], [[num(u), num(v)] for u, v in zip(us, values)], {"what": args.what})
    return EXIT_OK


def _window(args):
    return tuple(args.window) if args.window else None


def cmd_fit(args, config: RunConfig) -> int:
    nmax = args.nmax or config.nmax or 300
    theta = _complex_arg(args.theta)
    window = _window(args)
    nmin = window[0] if window else max(2, nmax - nmax // 3)
    seq = jsequence(KnotTag.parse(args.knot), theta, nmin, nmax, args.stride)
    fit = asymlab.fit_growth(seq, window)
    payload = meta({"knot": args.knot, "theta": cnum(theta), "nmax": nmax})
    payload.update(fit.to_dict(_digits()))
    emit_json(payload)
    return EXIT_OK


def _default_theta(conjecture: str, knot: KnotTag) -> mpc:
    if conjecture in ("vc", "cvc"):
        return mpc(0, 2 * mp.pi)
    if conjecture == "param":
        return mpc("0.2", 2 * mp.pi) if knot.kind == "fig8" else mpc("-0.8", "0.8")
    if conjecture == "limit":
        return mpc("0.5") if knot.kind == "fig8" else mpc("0.8", "0.8")
    return mpc(geom.cusp_edge()) if knot.kind == "fig8" else mpc(0, 2 * mp.pi / 6)


def cmd_verify(args, config: RunConfig) -> int:
    knot = KnotTag.parse(args.knot)
    theta = _complex_arg(args.theta) if args.theta else _default_theta(args.conjecture, knot)
    nmax = args.nmax or config.nmax
    tol = args.tol
    if args.conjecture == "vc":
        if args.theta:
            raise UsageError("vc is evaluated at theta = 2 pi i; use param for other theta")
        reports = [asymlab.check_volume_conjecture(knot, n_max=nmax or 500, tol=tol or 1e-3)]
    elif args.conjecture in ("cvc", "param"):
        reports = [asymlab.check_exp_regime(knot, theta, n_max=nmax or 500, tol=tol or 1e-3)]
    elif args.conjecture == "limit":
        reports = [asymlab.check_limit_regime(knot, theta, n_max=nmax or 2000, tol=tol or 1e-4)]
    else:
        reports = asymlab.check_poly_regime(knot, theta, n_max=nmax or 3000, tol=tol or 2e-2)
    verdict = all(r.verdict for r in reports)
    emit_json(meta({
        "conjecture": args.conjecture,
        "verdict": "pass" if verdict else "fail",
        "reports": [r.to_dict(_digits()) for r in reports],
    }))
    return EXIT_OK if verdict else EXIT_FAIL


def _run_one(number: int, dps: int) -> checkpoints.CheckpointResult:
    return checkpoints.run_checkpoint(number, dps)


def cmd_verify_all(args, config: RunConfig) -> int:
    numbers = args.only or sorted(checkpoints.CHECKPOINTS)
    unknown = [n for n in numbers if n not in checkpoints.CHECKPOINTS]
    if unknown:
        raise UsageError(f"no checkpoint numbered {unknown}")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, numbers, [mp.dps] * len(numbers)))
    else:
        results = [_run_one(n, mp.dps) for n in numbers]
    if args.format == "json":
        emit_json(meta({
            "checkpoints": [
                {"number": r.number, "title": r.title, "passed": r.passed,
                 "seconds": round(r.seconds, 3), "budget_seconds": r.budget,
                 "clauses": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.clauses]}
                for r in results
            ],
            "passed": all(r.passed for r in results),
        }))
    else:
        print(f"precision_digits={mp.dps}")
        for r in results:
            print(r.line())
            for c in r.clauses:
                print(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vclab", description="Colored Jones asymptotics and figure-eight geometry.")
    parser.add_argument("--precision", type=int, help="working precision in decimal digits")
    parser.add_argument("--config", help="key=value configuration file")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def diagram_args(p):
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--pd", help="PD code, e.g. 'X+[1,5,2,4] X+[3,1,4,6] X+[5,3,6,2]'")
        group.add_argument("--knot", choices=["trefoil", "fig8"])

    p = sub.add_parser("bracket", help="Kauffman bracket of a PD diagram")
    diagram_args(p)
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("jones", help="Jones polynomial V or J2 of a PD diagram")
    diagram_args(p)
    p.add_argument("--which", choices=["V", "J2"], default="J2")
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("cjones", help="CSV of J_N(K; exp(theta/N))")
    p.add_argument("--knot", required=True)
    p.add_argument("--theta", nargs=2, required=True, metavar=("RE", "IM"))
    p.add_argument("--nmax", type=int)
    p.add_argument("--nmin", type=int, default=2)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--format", dest="output_format", choices=["csv", "json"])
    p.set_defaults(func=cmd_cjones)

    p = sub.add_parser("charvar", help="Riley polynomial, character variety, Alexander polynomial")
    p.add_argument("--knot", required=True, choices=sorted(charvar.PRESENTATIONS))
    p.add_argument("--word", help="also print the trace polynomial of this word, e.g. xYXy")
    p.set_defaults(func=cmd_charvar)

    p = sub.add_parser("hfunc", help="H, v, f and holonomy data at u")
    p.add_argument("--knot", default="fig8")
    p.add_argument("--u", nargs=2, required=True, metavar=("RE", "IM"))
    p.add_argument("--branch", choices=geom.BRANCHES, default="vc")
    p.set_defaults(func=cmd_hfunc)

    p = sub.add_parser("surgery", help="solve p u + q v(u) = 2 pi i")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--seed", nargs=2, metavar=("RE", "IM"))
    p.set_defaults(func=cmd_surgery)

    p = sub.add_parser("bundle", help="Chern-Simons bundle element")
    p.add_argument("--knot", choices=["torus", "fig8"], required=True)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--l", type=int, default=1)
    p.add_argument("--eps", type=int, choices=[1, -1], default=1)
    p.add_argument("--u", nargs=2, required=True, metavar=("RE", "IM"))
    p.set_defaults(func=cmd_bundle)

    p = sub.add_parser("plotdata", help="CSV data for Im H, cone volume or CS")
    p.add_argument("--what", choices=["imH", "vol", "cs"], required=True)
    p.add_argument("--from", dest="start", type=_real, required=True)
    p.add_argument("--to", dest="stop", type=_real, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--format", dest="output_format", choices=["csv", "json"])
    p.set_defaults(func=cmd_plotdata)

    p = sub.add_parser("fit", help="growth fit of log J_N")
    p.add_argument("--knot", required=True)
    p.add_argument("--theta", nargs=2, required=True, metavar=("RE", "IM"))
    p.add_argument("--nmax", type=int)
    p.add_argument("--window", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--stride", type=int, default=1)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("verify", help="check one conjecture or regime")
    p.add_argument("--conjecture", choices=["vc", "cvc", "param", "limit", "poly"], required=True)
    p.add_argument("--knot", default="fig8")
    p.add_argument("--theta", nargs=2, metavar=("RE", "IM"))
    p.add_argument("--nmax", type=int)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-all", help="run the acceptance checkpoints")
    p.add_argument("--only", type=int, nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_verify_all)
    return parser


def dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = build_config(args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    try:
        with mp.workdps(config.precision_digits):
            return args.func(args, config)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (skein.PDError, UnsupportedKnotError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
