"""The nine acceptance checkpoints, shared by ``vclab verify-all`` and the tests.

Each checkpoint returns a list of :class:`Clause` results; a checkpoint passes
when every clause does. Tolerances are the stated ones and are not adjusted
here.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpc, mpf

from . import asymlab, bundle, charvar, geom, skein
from .cjones import FIG8, TREFOIL, cjones_fig8, cjones_trefoil, eval_at_theta
from .corpus import MOVE_CORPUS, SKEIN_CORPUS
from .dilog import li2
from .laurent import LaurentPoly
from .numeric import DEFAULT_DPS, precision

SEED = 20240229


@dataclass(frozen=True)
class Clause:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class CheckpointResult:
    number: int
    title: str
    clauses: tuple[Clause, ...]
    seconds: float
    budget: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        failed = [c.name for c in self.clauses if not c.passed]
        extra = f" (failed: {'; '.join(failed)})" if failed else ""
        return f"[{status}] {self.number}. {self.title} in {self.seconds:.1f}s{extra}"


def _clause(name: str, err, tol, what: str = "err") -> Clause:
    return Clause(name, bool(err <= tol), f"{what} {mp.nstr(err, 3)} vs tol {mp.nstr(mpf(tol), 3)}")


def _report_clause(name: str, report: asymlab.ConjectureReport) -> Clause:
    return Clause(name, report.verdict,
                  f"measured {mp.nstr(report.measured, 10)} predicted {mp.nstr(report.predicted, 10)} "
                  f"err {mp.nstr(report.abs_error, 3)} vs tol {report.tolerance}")


def disk_grid(radius: float = 0.4) -> list[mpc]:
    """21 points: the origin and ten angles on each of two circles."""
    points = [mpc(0)]
    for r in (radius / 2, radius):
        points += [r * mp.expjpi(mpf(2 * k) / 10) for k in range(10)]
    return points


def line_grid() -> list[mpc]:
    """21 points on a slanted segment through the origin."""
    return [mpc(-0.5 + k / 20, 0.3 * (-0.5 + k / 20)) for k in range(21)]


# ------------------------------------------------------------------ 1

def check_volume_conjecture() -> list[Clause]:
    report = asymlab.check_volume_conjecture(FIG8, n_max=500, tol=1e-3)
    measured = report.measured
    return [Clause("2 pi Lambda vs 2.0298832128",
                   bool(abs(measured - mpf("2.0298832128")) <= 1e-3),
                   f"2 pi Lambda = {mp.nstr(measured, 12)}, window {report.details['window']}")]


# ------------------------------------------------------------------ 2

def check_h_identities() -> list[Clause]:
    h0 = geom.H_fig8(0)
    clauses = [_clause("H(0) = 2.0298832128 i", abs(h0 - mpc(0, "2.0298832128")), 1e-8)]
    im_edge = mp.im(geom.H_fig8(geom.cusp_edge()))
    clauses.append(_clause("Im H(arccosh 3/2) = 6.0470861377", abs(im_edge - mpf("6.0470861377")), 1e-8))
    h = mpf(10) ** -10
    worst = mpf(0)
    for u in line_grid():
        fd = (geom.H_fig8(u + h) - geom.H_fig8(u - h)) / (2 * h)
        worst = max(worst, abs(fd - geom.dH_fig8(u)) / max(1, abs(fd)))
    clauses.append(_clause("dH vs finite differences, 21 points", worst, 1e-15, "rel err"))
    return clauses


# ------------------------------------------------------------------ 3

SURGERY_EXPECTED = {
    (1, 1): ("0.9839865622", Fraction(1, 84)),
    (2, 1): ("1.061275062", Fraction(1, 40)),
    (3, 1): ("1.265948638", Fraction(1, 24)),
}


def check_surgery() -> list[Clause]:
    clauses = []
    for (p, q), (u_text, cs_frac) in SURGERY_EXPECTED.items():
        u = geom.surgery_solve(p, q)
        clauses.append(_clause(f"u({p},{q}) = {u_text}", abs(u - mpf(u_text)), 1e-8))
        coeffs = geom.SurgeryCoeff.default(p)
        cs = geom.cs_cone_fig8(mp.re(u), coeffs) / (2 * mp.pi**2)
        target = mpf(cs_frac.numerator) / cs_frac.denominator
        clauses.append(_clause(f"CS/(2 pi^2) at ({p},{q}) = {cs_frac}", abs(cs - target), 1e-6))
        if (p, q) == (1, 1):
            x = mp.exp(u)
            residual = x**6 - 4 * x**4 - 7 * x**3 - 4 * x**2 + 1
            clauses.append(_clause("x^6-4x^4-7x^3-4x^2+1 at x = e^u", abs(residual), 1e-20))
    return clauses


# ------------------------------------------------------------------ 4

def check_representation_matching() -> list[Clause]:
    worst_match = mpf(0)
    worst_apoly = mpf(0)
    pairing = set()
    for u in disk_grid():
        m = mp.exp(u)
        half = mp.exp(geom.v_fig8(u) / 2)
        # branch-matched: whichever Riley branch carries this longitude eigenvalue
        errs = {b: abs(half + charvar.fig8_longitude_eigen(m, b)) for b in "+-"}
        branch = min(errs, key=errs.get)
        pairing.add(branch)
        worst_match = max(worst_match, errs[branch], abs(half + geom.ell_geometric(m)))
        worst_apoly = max(worst_apoly, abs(charvar.apoly_residual(mp.exp(geom.v_fig8(u) / 2 + 1j * mp.pi), m)))
    return [
        _clause(f"exp(v/2) = -l(e^u) on 21 points (branches {''.join(sorted(pairing))})", worst_match, 1e-20),
        _clause("A-polynomial residual on 21 points", worst_apoly, 1e-20),
    ]


# ------------------------------------------------------------------ 5

def check_charvar_goldens() -> list[Clause]:
    xi, eta = charvar.XI, charvar.ETA
    expected = {
        "trefoil": eta - 1,
        "fig8": eta**2 - eta + 2 * xi**2 - xi**2 * eta - 1,
        "cinquefoil": eta**2 - eta - 1,
    }
    clauses = []
    for name, expr in expected.items():
        got = charvar.riley_F(name)
        clauses.append(Clause(f"riley_F({name})", got == charvar.as_poly(expr), str(got.as_expr())))
    trace = charvar.trace_poly(charvar.FIG8_PRESENTATION.omega)
    clauses.append(Clause("trace_poly(omega_fig8)",
                          trace == charvar.as_poly(eta**2 - xi**2 * eta + 2 * xi**2 - 2),
                          str(trace.as_expr())))
    # torus component traces, formula against the Riley representations
    m = mpc("0.7", "0.3")
    cases = [
        ("trefoil", 2, 3, 1, 1, charvar.trefoil_rep(m), (0, 1)),
        ("cinquefoil", 2, 5, 1, 1, charvar.cinquefoil_rep(m, "+"), (0, 2 * mp.cos(mp.pi / 5))),
        ("cinquefoil", 2, 5, 1, 3, charvar.cinquefoil_rep(m, "-"), (0, 2 * mp.cos(3 * mp.pi / 5))),
    ]
    for name, a, b, k, l, params, (tg, th) in cases:
        formula = charvar.torus_component_traces(a, b, k, l)
        xmat, ymat = charvar.riley_rep(params)
        g, h = charvar.TORUS_WORDS[name]
        rep = (charvar.trace2(charvar.eval_word(xmat, ymat, g)), charvar.trace2(charvar.eval_word(xmat, ymat, h)))
        err = max(abs(formula[0] - tg), abs(formula[1] - th), abs(rep[0] - tg), abs(rep[1] - th))
        clauses.append(_clause(f"torus traces ({a},{b}) (k,l)=({k},{l})", err, 1e-20))
    return clauses


# ------------------------------------------------------------------ 6

def check_skein() -> list[Clause]:
    q = lambda e: LaurentPoly.monomial(Fraction(e), 1, "q")
    trefoil = skein.jones_J2(skein.parse_pd(skein.TREFOIL_PD))
    fig8 = skein.jones_J2(skein.parse_pd(skein.FIGURE_EIGHT_PD))
    clauses = [
        Clause("J2(trefoil) = q^-1 + q^-3 - q^-4", trefoil == q(-1) + q(-3) - q(-4), str(trefoil)),
        Clause("J2(fig8) = q^2 - q + 1 - q^-1 + q^-2", fig8 == q(2) - q(1) + 1 - q(-1) + q(-2), str(fig8)),
    ]
    bad = []
    for pair in MOVE_CORPUS:
        before, after = pair.diagrams()
        if pair.move == "R1":
            same = skein.jones_V(before) == skein.jones_V(after)
        else:
            same = skein.kauffman_bracket(before) == skein.kauffman_bracket(after)
        if not same:
            bad.append(pair.name)
    clauses.append(Clause(f"Reidemeister corpus ({len(MOVE_CORPUS)} pairs)", not bad, ", ".join(bad) or "all equal"))
    bad = []
    for triple in SKEIN_CORPUS:
        plus, minus, zero = (skein.jones_J2(d) for d in triple.diagrams())
        if q(1) * plus - q(-1) * minus != (q(Fraction(1, 2)) - q(Fraction(-1, 2))) * zero:
            bad.append(triple.name)
    clauses.append(Clause(f"skein relation ({len(SKEIN_CORPUS)} triples)", not bad, ", ".join(bad) or "all hold"))
    return clauses


# ------------------------------------------------------------------ 7

def check_regimes_fig8() -> list[Clause]:
    limit = asymlab.check_limit_regime(FIG8, mpf("0.5"), n_max=2000, tol=1e-4)
    clauses = [_report_clause("limit at theta = 0.5 vs 1/(3 - 2 cosh 0.5)", limit)]
    exponent, constant = asymlab.check_poly_regime(FIG8, geom.cusp_edge(), n_max=3000,
                                                   tol=2e-2, constant_rtol=2e-2)
    clauses.append(_report_clause("exponent 2/3 at theta = arccosh(3/2)", exponent))
    clauses.append(_report_clause("constant Gamma(1/3)/(3 arccosh(3/2))^(2/3), ratio", constant))
    return clauses


# ------------------------------------------------------------------ 8

TORUS_FTILDE_CASES = ((2, 3), (2, 5), (3, 4), (3, 5))


def check_torus() -> list[Clause]:
    growth = asymlab.check_exp_regime(TREFOIL, mpc("0.8", "-0.8"), n_max=1000, tol=1e-3)
    clauses = [_report_clause("trefoil growth at theta = 0.8-0.8i", growth)]
    worst = mpf(0)
    grid = [mpc("0.3", "-0.2"), mpc("-0.5", "0.7"), mpc(0), mpc("1.1", "0.4")]
    for a, b in TORUS_FTILDE_CASES:
        for u in grid:
            diff = (bundle.torus_f(a, b, u) - bundle.torus_ftilde(a, b, 1, 1, u)) / mp.pi**2
            worst = max(worst, abs(diff - mp.nint(mp.re(diff))))
    clauses.append(_clause("(f + H(0)) - f~ in pi^2 Z", worst * mp.pi**2, 1e-20))
    eps_ok = True
    for a, b in TORUS_FTILDE_CASES:
        c, d = bundle.torus_cd(a, b)
        for k in range(1, a):
            for l in range(1, b):
                if (k - l) % 2:
                    continue
                for u in grid:
                    plus = bundle.torus_cs_bundle(a, b, c, d, k, l, u, 1)
                    minus = bundle.torus_cs_bundle(a, b, c, d, k, l, u, -1)
                    eps_ok &= bundle.bundle_eq(plus, minus)
    clauses.append(Clause("eps-independence of torus_cs_bundle", eps_ok, "bundle_eq on all (k,l) and grid"))
    for report in asymlab.check_poly_regime(TREFOIL, 2j * mp.pi / 6, n_max=3000,
                                            tol=2e-2, constant_rtol=2e-2, phase_tol=2e-2):
        clauses.append(_report_clause(f"N^(1/2) regime {report.quantity}", report))
    return clauses


# ------------------------------------------------------------------ 9

def check_properties(instances: int = 20) -> list[Clause]:
    rng = random.Random(SEED)
    tol = mpf(10) ** -(mp.dps - 10)

    def rand_c(scale=1.0):
        return mpc(rng.uniform(-scale, scale), rng.uniform(-scale, scale))

    worst = mpf(0)
    for _ in range(instances):
        z = rand_c(1.5)
        if abs(mp.im(z)) < 1e-3:
            continue
        lhs = li2(z) + li2(1 - z)
        rhs = mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z)
        worst = max(worst, abs(lhs - rhs))
    clauses = [_clause("Li2 reflection", worst, tol)]

    worst = mpf(0)
    for _ in range(instances):
        e = bundle.CSBundleElement.of(rand_c(), rand_c(), mp.exp(rand_c()))
        pairs = [(bundle.act_word(w, e), e) for w in ("bxbx", "byby", "bb", "xyXY")]
        pairs.append((bundle.act_word("xy", e), bundle.act_word("yx", e)))
        for image, target in pairs:
            worst = max(worst, abs(image.z - target.z) / abs(target.z),
                        abs(image.alpha - target.alpha), abs(image.beta - target.beta))
    clauses.append(_clause("G-action relations", worst, tol))

    worst = mpf(0)
    for _ in range(instances):
        z = rand_c(3)
        worst = max(worst, abs(asymlab.gamma_fn(z + 1) - z * asymlab.gamma_fn(z)) / abs(asymlab.gamma_fn(z + 1)))
        reflection = asymlab.gamma_fn(z) * asymlab.gamma_fn(1 - z) * mp.sin(mp.pi * z)
        worst = max(worst, abs(reflection - mp.pi) / mp.pi)
    clauses.append(_clause("gamma recurrence and reflection", worst, tol, "rel err"))

    dps = mp.dps
    worst = mpf(0)
    for _ in range(instances // 4):
        n = rng.randint(5, 60)
        qv = mp.exp(rand_c(0.5))
        theta = rand_c(3)
        for evaluate in (lambda: cjones_fig8(n, qv), lambda: cjones_trefoil(n, qv),
                         lambda: eval_at_theta(FIG8, n, theta), lambda: geom.H_fig8(theta / 3)):
            low = evaluate()
            with mp.workdps(2 * dps):
                high = evaluate()
            worst = max(worst, abs(low - high) / abs(high))
    clauses.append(_clause("precision doubling", worst, mpf(10) ** -(dps - 5), "rel err"))
    return clauses


CHECKPOINTS: dict[int, tuple[str, Callable[[], list[Clause]], float]] = {
    1: ("volume conjecture, fig8", check_volume_conjecture, 60),
    2: ("H-function identities", check_h_identities, 5),
    3: ("surgery triple", check_surgery, 10),
    4: ("representation matching", check_representation_matching, 5),
    5: ("character-variety goldens", check_charvar_goldens, 2),
    6: ("skein suite", check_skein, 10),
    7: ("regimes (iii)/(iv), fig8", check_regimes_fig8, 300),
    8: ("torus suite", check_torus, 300),
    9: ("property suites", check_properties, 60),
}


def run_checkpoint(number: int, dps: int = DEFAULT_DPS) -> CheckpointResult:
    title, fn, budget = CHECKPOINTS[number]
    start = time.perf_counter()
    with precision(dps):
        try:
            clauses = tuple(fn())
        except Exception as exc:  # a crash is reported as a failing clause
            clauses = (Clause("raised", False, f"{type(exc).__name__}: {exc}"),)
    elapsed = time.perf_counter() - start
    return CheckpointResult(number, title, clauses, elapsed, budget)
