"""Asymptotic data from colored Jones sequences and comparison with geometry.

The fit model is ``log J_N ~ Lambda N + rho log N + c`` with complex
``Lambda`` and ``c`` and real ``rho``. Logarithms are unwound in N before
fitting, so the imaginary part of ``Lambda`` is only defined modulo
``2 pi / stride``; the exponential-regime check picks the alias nearest the
prediction and reports the shift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from mpmath import mp, mpc, mpf

from . import bundle, geom
from .charvar import fox_alexander
from .cjones import FIG8, JSequence, KnotTag, UnsupportedKnotError, eval_at_theta, jsequence
from .numeric import big

MIN_FIT_POINTS = 6


class FitError(ArithmeticError):
    pass


@dataclass(frozen=True)
class GrowthFit:
    Lambda: mpc
    rho: mpf
    c: mpc
    residual: mpf
    window: tuple[int, int]
    n_points: int

    def to_dict(self, digits: int = 15) -> dict[str, Any]:
        return {
            "Lambda": [mp.nstr(mp.re(self.Lambda), digits), mp.nstr(mp.im(self.Lambda), digits)],
            "rho": mp.nstr(self.rho, digits),
            "c": [mp.nstr(mp.re(self.c), digits), mp.nstr(mp.im(self.c), digits)],
            "residual": mp.nstr(self.residual, 5),
            "window": list(self.window),
            "n_points": self.n_points,
        }


@dataclass(frozen=True)
class ConjectureReport:
    knot: str
    theta: mpc
    quantity: str
    predicted: mpc
    measured: mpc
    abs_error: mpf
    tolerance: float
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return bool(self.abs_error <= self.tolerance)

    def to_dict(self, digits: int = 15) -> dict[str, Any]:
        def pair(z):
            z = big(z)
            return [mp.nstr(mp.re(z), digits), mp.nstr(mp.im(z), digits)]

        return {
            "knot": self.knot,
            "theta": pair(self.theta),
            "quantity": self.quantity,
            "predicted": pair(self.predicted),
            "measured": pair(self.measured),
            "abs_error": mp.nstr(self.abs_error, 6),
            "tolerance": self.tolerance,
            "verdict": "pass" if self.verdict else "fail",
            "details": {k: _plain(v, digits) for k, v in self.details.items()},
        }


def _plain(value, digits: int):
    if isinstance(value, (mpf, mpc)):
        if isinstance(value, mpc) and mp.im(value) != 0:
            return [mp.nstr(mp.re(value), digits), mp.nstr(mp.im(value), digits)]
        return mp.nstr(mp.re(value), digits)
    if isinstance(value, tuple):
        return [_plain(v, digits) for v in value]
    return value


def unwound_logs(values) -> list[mpc]:
    """Complex logs with the argument continued so consecutive jumps are < pi."""
    out: list[mpc] = []
    two_pi = 2 * mp.pi
    for v in values:
        v = big(v)
        if v == 0:
            raise FitError("zero value in fit window")
        lg = mp.log(v)
        if out:
            turns = mp.nint((mp.im(out[-1]) - mp.im(lg)) / two_pi)
            lg += 1j * two_pi * turns
        out.append(lg)
    return out


def _lstsq(rows: list[list[mpf]], rhs: list[mpf]) -> tuple[list[mpf], mpf]:
    a = mp.matrix(rows)
    _, r = mp.qr(a)
    diag = [abs(r[i, i]) for i in range(a.cols)]
    if min(diag) <= mp.mpf(10) ** (-mp.dps // 2) * max(diag):
        raise FitError("rank-deficient design matrix")
    x, res = mp.qr_solve(a, mp.matrix(rhs))
    return [x[i] for i in range(a.cols)], res


def default_window(ns: list[int]) -> tuple[int, int]:
    """Top third of the N range."""
    lo, hi = ns[0], ns[-1]
    return hi - (hi - lo) // 3, hi


def fit_growth(seq: JSequence, window: tuple[int, int] | None = None,
               fixed_lambda=None) -> GrowthFit:
    """Least-squares fit of the unwound log J_N on a window.

    With ``fixed_lambda`` the exponential rate is held at that value and only
    rho and c are fitted.
    """
    if window is None:
        window = default_window(seq.ns)
    lo, hi = window
    if lo > hi or lo < seq.ns[0] or hi > seq.ns[-1]:
        raise FitError(f"window {window} outside sequence range [{seq.ns[0]}, {seq.ns[-1]}]")
    points = [(n, v) for n, v in seq.points if lo <= n <= hi]
    if len(points) < MIN_FIT_POINTS:
        raise FitError(f"need at least {MIN_FIT_POINTS} points in the window, got {len(points)}")
    ns = [n for n, _ in points]
    logs = unwound_logs([v for _, v in points])

    if fixed_lambda is None:
        (lam_re, rho, c_re), res_re = _lstsq(
            [[mpf(n), mp.log(n), mpf(1)] for n in ns], [mp.re(l) for l in logs])
        (lam_im, c_im), res_im = _lstsq([[mpf(n), mpf(1)] for n in ns], [mp.im(l) for l in logs])
        lam = mpc(lam_re, lam_im)
    else:
        lam = big(fixed_lambda)
        shifted = [l - lam * n for n, l in zip(ns, logs)]
        (rho, c_re), res_re = _lstsq([[mp.log(n), mpf(1)] for n in ns], [mp.re(s) for s in shifted])
        # a constant-only fit of the phase is its mean
        mean = mp.fsum(mp.im(s) for s in shifted) / len(shifted)
        c_im = mean
        res_im = mp.sqrt(mp.fsum((mp.im(s) - mean) ** 2 for s in shifted))
    rms = mp.sqrt((res_re**2 + res_im**2) / len(ns))
    return GrowthFit(lam, rho, mpc(c_re, c_im), rms, (ns[0], ns[-1]), len(ns))


def gamma_fn(z) -> mpc:
    z = big(z)
    if mp.im(z) == 0 and mp.re(z) <= 0 and mp.re(z) == mp.floor(mp.re(z)):
        raise ValueError(f"gamma has a pole at {mp.nstr(mp.re(z), 10)}")
    return big(mp.gamma(z))


# ------------------------------------------------------------- predictions

def _knot(knot: KnotTag | str) -> KnotTag:
    return KnotTag.parse(knot) if isinstance(knot, str) else knot


def predicted_H(knot: KnotTag | str, theta) -> mpc:
    """The potential whose quotient by theta is the predicted growth rate.

    Figure-eight: H(theta - 2 pi i), or H~(theta) on the real rays beyond
    arccosh(3/2). Torus knots: the quadratic of :func:`vclab.bundle.torus_H`.
    """
    knot = _knot(knot)
    theta = big(theta)
    if knot.kind == "fig8":
        if mp.im(theta) == 0 and abs(mp.re(theta)) >= geom.cusp_edge():
            return geom.Htilde_fig8(theta)
        return geom.H_fig8(theta - 2j * mp.pi)
    params = knot.torus_params
    return bundle.torus_H(params[0], params[1], theta - 2j * mp.pi)


def _alexander_at(knot: KnotTag, t) -> mpc:
    if knot.kind == "fig8":
        return fox_alexander("fig8").evaluate(t)
    if knot.torus_params == (2, 3):
        return fox_alexander("trefoil").evaluate(t)
    if knot.torus_params == (2, 5):
        return fox_alexander("cinquefoil").evaluate(t)
    raise UnsupportedKnotError(f"no Alexander polynomial available for {knot}")


def _poly_prediction(knot: KnotTag, theta: mpc) -> tuple[mpf, mpf, mpf | None]:
    """(exponent, modulus constant, phase or None) at a regime-(iv) point."""
    tol = mp.mpf(10) ** (-mp.dps // 2)
    if knot.kind == "fig8":
        edge = geom.cusp_edge()
        if abs(mp.im(theta)) > tol or abs(abs(mp.re(theta)) - edge) > tol:
            raise ValueError("figure-eight polynomial regime needs theta = +-arccosh(3/2)")
        constant = gamma_fn(mpf(1) / 3) / (3 * edge) ** (mpf(2) / 3)
        return mpf(2) / 3, abs(constant), None
    a, b = knot.torus_params
    point = 2 * mp.pi / (a * b)
    if abs(mp.re(theta)) > tol or abs(abs(mp.im(theta)) - point) > tol:
        raise ValueError(f"torus polynomial regime needs theta = +-2 pi i/{a * b}")
    sign = 1 if mp.im(theta) > 0 else -1
    constant = mp.sin(mp.pi / a) * mp.sin(mp.pi / b) / (mp.sqrt(2) * mp.sin(mp.pi / (a * b)))
    return mpf(1) / 2, constant, -sign * mp.pi / 4


# ----------------------------------------------------------------- checks

def growth_sequence(knot: KnotTag, theta, n_max: int, window=None, stride: int = 1) -> JSequence:
    lo = (window or (n_max - n_max // 3, n_max))[0]
    return jsequence(knot, theta, max(2, lo), n_max, stride)


def check_exp_regime(knot: KnotTag | str, theta, predicted: mpc | None = None,
                     n_max: int = 500, tol: float = 1e-3, window=None) -> ConjectureReport:
    """Compare theta * Lambda with the predicted potential value."""
    knot = _knot(knot)
    theta = big(theta)
    if predicted is None:
        predicted = predicted_H(knot, theta)
    seq = growth_sequence(knot, theta, n_max, window)
    fit = fit_growth(seq, window)
    # Im Lambda is only known modulo 2 pi with stride 1
    target = predicted / theta
    turns = int(mp.nint(mp.im(target - fit.Lambda) / (2 * mp.pi)))
    lam = fit.Lambda + 2j * mp.pi * turns
    measured = theta * lam
    return ConjectureReport(
        str(knot), theta, "theta*Lambda", predicted, measured, abs(measured - predicted), tol,
        {"Lambda": lam, "alias_turns": turns, "rho": fit.rho, "residual": fit.residual,
         "window": fit.window, "two_pi_re_Lambda": 2 * mp.pi * mp.re(lam)},
    )


def check_volume_conjecture(knot: KnotTag | str = FIG8, n_max: int = 500,
                            tol: float = 1e-3, window=None) -> ConjectureReport:
    """2 pi Re Lambda at theta = 2 pi i against the hyperbolic volume."""
    knot = _knot(knot)
    if knot.kind != "fig8":
        raise UnsupportedKnotError("the volume conjecture check is implemented for fig8")
    theta = mpc(0, 2 * mp.pi)
    seq = growth_sequence(knot, theta, n_max, window)
    fit = fit_growth(seq, window)
    measured = 2 * mp.pi * mp.re(fit.Lambda)
    predicted = geom.volume_fig8()
    return ConjectureReport(
        str(knot), theta, "2*pi*Re(Lambda)", predicted, measured, abs(measured - predicted), tol,
        {"Lambda": fit.Lambda, "rho": fit.rho, "residual": fit.residual, "window": fit.window},
    )


def check_limit_regime(knot: KnotTag | str, theta, n_max: int = 2000, tol: float = 1e-4) -> ConjectureReport:
    """J_Nmax against 1/Delta(K; e^theta)."""
    knot = _knot(knot)
    theta = big(theta)
    delta = _alexander_at(knot, mp.exp(theta))
    if abs(delta) <= mp.mpf(10) ** (-mp.dps // 2):
        raise ArithmeticError("Delta(K; e^theta) = 0: limit undefined at this theta")
    predicted = 1 / delta
    measured = eval_at_theta(knot, n_max, theta)
    return ConjectureReport(
        str(knot), theta, "J_Nmax", predicted, measured, abs(measured - predicted), tol,
        {"n_max": n_max, "alexander": delta},
    )


def check_poly_regime(knot: KnotTag | str, theta, n_max: int = 3000,
                      tol: float = 2e-2, constant_rtol: float = 2e-2,
                      phase_tol: float = 2e-2, n_points: int = 41) -> list[ConjectureReport]:
    """Exponent, constant and (torus knots) phase of J_N ~ C N^rho.

    The exponent is fitted on the top third with Lambda held at 0. The
    constant is J_Nmax / Nmax^rho with the theoretical rho, compared
    relatively; fitting the constant together with rho would couple its
    error to the exponent's.
    """
    knot = _knot(knot)
    theta = big(theta)
    rho_pred, const_pred, phase_pred = _poly_prediction(knot, theta)
    lo = n_max - n_max // 3
    stride = max(1, (n_max - lo) // (n_points - 1))
    lo = n_max - stride * (n_points - 1)
    seq = jsequence(knot, theta, lo, n_max, stride)
    fit = fit_growth(seq, (lo, n_max), fixed_lambda=0)
    scaled = seq.values[-1] / mp.power(n_max, rho_pred)
    name = str(knot)
    common = {"window": fit.window, "stride": stride, "residual": fit.residual}
    reports = [
        ConjectureReport(name, theta, "exponent", rho_pred, fit.rho, abs(fit.rho - rho_pred), tol, dict(common)),
        ConjectureReport(name, theta, "constant_ratio", mpf(1), abs(scaled) / const_pred,
                         abs(abs(scaled) / const_pred - 1), constant_rtol,
                         dict(common, constant=const_pred, measured_modulus=abs(scaled))),
    ]
    if phase_pred is not None:
        phase = mp.arg(scaled)
        reports.append(ConjectureReport(name, theta, "phase", phase_pred, phase,
                                        abs(phase - phase_pred), phase_tol, dict(common)))
    return reports


def regime_growth_rates(theta_values, n_max: int = 300) -> list[tuple[mpc, mpc]]:
    """Fitted Lambda for fig8 at each theta (subexponential regimes give ~0)."""
    out = []
    for theta in theta_values:
        fit = fit_growth(growth_sequence(FIG8, theta, n_max))
        out.append((big(theta), fit.Lambda))
    return out

