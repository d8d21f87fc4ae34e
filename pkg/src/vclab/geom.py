"""Deformed hyperbolic structures on the figure-eight knot complement.

Everything is expressed through the potential ``H(u)`` built from Li2. Two
branches of arccosh are used: ``vc`` is the log-form branch
``log(x - i sqrt(1-x^2)) + 2 pi i`` (continuous near u = 0), ``std`` is the
principal arccosh (positive on x > 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from mpmath import mp, mpc, mpf

from .dilog import li2
from .numeric import big, tolerance

BRANCHES = ("vc", "std")


class BranchJumpError(ArithmeticError):
    pass


class ConvergenceError(ArithmeticError):
    pass


def _tag(branch_tag: str) -> str:
    if branch_tag not in BRANCHES:
        raise ValueError(f"branch_tag must be one of {BRANCHES}, got {branch_tag!r}")
    return branch_tag


def arccosh_vc(x) -> mpc:
    x = big(x)
    return mp.log(x - 1j * mp.sqrt(1 - x * x)) + 2j * mp.pi


def arccosh_std(x) -> mpc:
    return big(mp.acosh(big(x)))


def cusp_edge() -> mpf:
    """arccosh(3/2), where the complete structure degenerates."""
    return mp.acosh(mpf(3) / 2)


def phi(u, branch_tag: str = "vc") -> mpc:
    x = mp.cosh(big(u)) - mpf(1) / 2
    return arccosh_vc(x) if _tag(branch_tag) == "vc" else arccosh_std(x)


def _potential(u: mpc, p: mpc) -> mpc:
    return li2(mp.exp(-p - u)) - li2(mp.exp(p - u)) + u * p


def H_fig8(u) -> mpc:
    u = big(u)
    return _potential(u, phi(u, "vc"))


def Htilde_fig8(theta) -> mpc:
    theta = big(theta)
    return _potential(theta, phi(theta, "std"))


def dH_fig8(u) -> mpc:
    u = big(u)
    p = phi(u, "vc")
    return 2 * mp.log(1 - mp.exp(-p - u)) + p + u


def v_fig8(u) -> mpc:
    return 2 * dH_fig8(u) - 2j * mp.pi


def dv_fig8(u) -> mpc:
    """Closed-form derivative of v, used as the Newton Jacobian."""
    u = big(u)
    p = phi(u, "vc")
    dp = mp.sinh(u) / mp.sinh(p)
    e = mp.exp(-p - u)
    return 4 * e * (dp + 1) / (1 - e) + 2 * dp + 2


def H0_fig8() -> mpc:
    return H_fig8(0)


def volume_fig8() -> mpf:
    return mp.im(H0_fig8())


def f_fig8(u) -> mpc:
    u = big(u)
    return H_fig8(u) - H0_fig8() - 1j * mp.pi * u - u * v_fig8(u) / 4


def vol_cone_fig8(u) -> mpf:
    u = big(u)
    return mp.im(H_fig8(u)) - mp.pi * mp.re(u) - mp.re(u) * mp.im(v_fig8(u)) / 2


@dataclass(frozen=True)
class SurgeryCoeff:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if math.gcd(self.p, self.q) != 1:
            raise ValueError(f"gcd({self.p}, {self.q}) != 1")
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError(f"ps - qr = {self.p * self.s - self.q * self.r}, must be 1")

    @classmethod
    def default(cls, p: int) -> SurgeryCoeff:
        """(p, 1) surgery with (r, s) = (-1, 0)."""
        return cls(p, 1, -1, 0)


def reduce_cs(value) -> mpf:
    """Representative in [0, pi^2)."""
    period = mp.pi**2
    x = mp.re(big(value))
    r = x - period * mp.floor(x / period)
    return mpf(0) if r >= period else r


def cs_cone_fig8(u, coeffs: SurgeryCoeff | None = None) -> mpf:
    """-Re f(u) + (pi/2) Im(r u + s v(u)) at real u, reduced to [0, pi^2).

    The value is taken on the real axis itself. At the boundary value from
    Im u > 0 (where :func:`surgery_solve` finds the (p, 1) roots) the same
    expression changes sign; see :func:`cs_cone_fig8_mirror`.
    """
    u = big(u)
    if abs(mp.im(u)) > tolerance() or abs(mp.re(u)) <= cusp_edge():
        raise ValueError("u must be real with |u| > arccosh(3/2)")
    # evaluated exactly on the real axis, i.e. with the principal square root
    u = mpc(mp.re(u))
    coeffs = coeffs or SurgeryCoeff.default(1)
    v = v_fig8(u)
    raw = -mp.re(f_fig8(u)) + mp.pi / 2 * mp.im(coeffs.r * u + coeffs.s * v)
    return reduce_cs(raw)


def cs_cone_fig8_mirror(u, coeffs: SurgeryCoeff | None = None) -> mpf:
    """Same expression evaluated at the boundary value from Im u > 0."""
    u = big(u)
    if abs(mp.im(u)) > tolerance() or abs(mp.re(u)) <= cusp_edge():
        raise ValueError("u must be real with |u| > arccosh(3/2)")
    coeffs = coeffs or SurgeryCoeff.default(1)
    w = off_cut(mp.re(u), 1)
    raw = -mp.re(f_fig8(w)) + mp.pi / 2 * mp.im(coeffs.r * w + coeffs.s * v_fig8(w))
    return reduce_cs(raw)


def surgery_residual(u, p: int, q: int) -> mpc:
    return p * big(u) + q * v_fig8(u) - 2j * mp.pi


def off_cut(u, side: int = 1) -> mpc:
    """Move a real u beyond the cusp edge infinitesimally to Im u of sign ``side``.

    For real |u| > arccosh(3/2) the square root inside the vc branch sits on
    its cut, and the two boundary values describe mirror-image structures.
    The offset 10^(-2 dps) is far below working precision in every printed
    digit but fixes which boundary value is used.
    """
    u = big(u)
    if side and abs(mp.re(u)) > cusp_edge() and abs(mp.im(u)) < mpf(10) ** (-(mp.dps // 2)):
        return mpc(mp.re(u), side * mpf(10) ** (-2 * mp.dps))
    return u


def surgery_solve(p: int, q: int, seed=None, max_iter: int = 100, side: int = 1) -> mpc:
    """Solve p u + q v(u) = 2 pi i by damped Newton iteration.

    ``p = 0`` gives the cone-manifold family v(u) = 2 pi i / q. Real-ray
    iterates are kept on the Im u > 0 side of the cut (see :func:`off_cut`),
    where the (p, 1) equations with p > 0 have their roots.
    """
    if p != 0 and math.gcd(p, q) != 1:
        raise ValueError(f"gcd({p}, {q}) != 1")
    if p == 0 and q < 1:
        raise ValueError("cone-manifold family needs q >= 1")
    u = off_cut(1.0 if seed is None else seed, side)
    target = tolerance()
    g = surgery_residual(u, p, q)
    for _ in range(max_iter):
        if abs(g) < target:
            return u
        jac = p + q * dv_fig8(u)
        if abs(jac) < mpf(10) ** -30:
            raise ConvergenceError(f"Jacobian vanished at u = {mp.nstr(u, 15)}")
        step = g / jac
        for _ in range(60):
            trial = off_cut(u - step, side)
            g_trial = surgery_residual(trial, p, q)
            if abs(g_trial) < abs(g):
                break
            step /= 2
        else:
            raise ConvergenceError(f"no descent from u = {mp.nstr(u, 15)}")
        u, g = trial, g_trial
    if abs(g) < target:
        return u
    raise ConvergenceError(f"no convergence in {max_iter} iterations (|g| = {mp.nstr(abs(g), 5)})")


class CoreGeodesic(NamedTuple):
    length: mpf
    torsion_combination: mpc


def core_geodesic(u, coeffs: SurgeryCoeff) -> CoreGeodesic:
    """Length -Im(u conj v)/2 pi and -r u - s v reduced mod 2 pi i."""
    u = big(u)
    v = v_fig8(u)
    length = -mp.im(u * mp.conj(v)) / (2 * mp.pi)
    combo = -coeffs.r * u - coeffs.s * v
    turns = mp.nint(mp.im(combo) / (2 * mp.pi))
    return CoreGeodesic(length, combo - 2j * mp.pi * turns)


@dataclass(frozen=True)
class HolonomyPoint:
    u: mpc
    phi: mpc
    H: mpc
    v: mpc
    f: mpc
    branch_tag: str


def holonomy_point(u, branch_tag: str = "vc") -> HolonomyPoint:
    u = big(u)
    if _tag(branch_tag) == "vc":
        return HolonomyPoint(u, phi(u, "vc"), H_fig8(u), v_fig8(u), f_fig8(u), "vc")
    p = phi(u, "std")
    dh = 2 * mp.log(1 - mp.exp(-p - u)) + p + u
    v = 2 * dh - 2j * mp.pi
    h = Htilde_fig8(u)
    f = h - H0_fig8() - 1j * mp.pi * u - u * v / 4
    return HolonomyPoint(u, p, h, v, f, "std")


def ell_geometric(m) -> mpc:
    """-exp(v/2) written in m = e^u; continuous through m = 1."""
    m = big(m)
    s = m + 1 / m
    middle = m * m - m - 2 - 1 / m + 1 / (m * m)
    return middle / 2 - 1j * (m - 1 / m) / 2 * mp.sqrt((s + 1) * (3 - s))


def audit_continuity(values: Sequence, max_jump, order: int = 1) -> None:
    """Reject grids where a value departs from its neighbours by more than ``max_jump``.

    ``order=1`` compares adjacent values; ``order=2`` compares each value with
    the linear extrapolation of the previous two, which tolerates steep but
    smooth data.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    vals = [big(v) for v in values]
    for i in range(order, len(vals)):
        guess = vals[i - 1] if order == 1 else 2 * vals[i - 1] - vals[i - 2]
        jump = abs(vals[i] - guess)
        if jump > max_jump:
            raise BranchJumpError(f"jump of {mp.nstr(jump, 6)} at grid point {i}; refine the grid or check the branch")
