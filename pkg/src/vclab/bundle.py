"""Chern-Simons bundle over the boundary character variety, and torus knots.

Elements are triples ``[alpha, beta; z]`` taken modulo the group
``G = <x, y, b | xyx^-1y^-1 = bxbx = byby = b^2 = 1>`` acting by

* ``x . [a, b; z] = [a + 1, b; z exp(2 pi i b)]``
* ``y . [a, b; z] = [a, b + 1; z exp(-2 pi i a)]``
* ``b . [a, b; z] = [-a, -b; z]``
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, mpc, mpf

from .geom import f_fig8, v_fig8
from .numeric import big, tolerance


@dataclass(frozen=True)
class CSBundleElement:
    alpha: mpc
    beta: mpc
    z: mpc
    # half-integer translation applied to beta to pass from SL(2,C) to PSL(2,C)
    psl_shift: Fraction = field(default=Fraction(0), compare=False)

    def __post_init__(self):
        if self.z == 0:
            raise ValueError("z must be nonzero")

    @classmethod
    def of(cls, alpha, beta, z) -> CSBundleElement:
        return cls(big(alpha), big(beta), big(z))


def _e(x) -> mpc:
    return mp.expjpi(2 * big(x))


def translate(e: CSBundleElement, m, n) -> CSBundleElement:
    """x^m y^n . e; also defined for non-integer m, n as a formal shift."""
    alpha, beta = e.alpha, e.beta
    z = e.z * _e(-n * alpha) * _e(m * (beta + n))
    return CSBundleElement(alpha + m, beta + n, z, e.psl_shift)


def bundle_act(g: str, e: CSBundleElement) -> CSBundleElement:
    """Apply a generator ``x``, ``y``, ``b`` or an inverse ``X``, ``Y``."""
    if g == "x":
        return translate(e, 1, 0)
    if g == "X":
        return translate(e, -1, 0)
    if g == "y":
        return translate(e, 0, 1)
    if g == "Y":
        return translate(e, 0, -1)
    if g == "b":
        return CSBundleElement(-e.alpha, -e.beta, e.z, e.psl_shift)
    raise ValueError(f"unknown generator {g!r}")


def act_word(w: str, e: CSBundleElement) -> CSBundleElement:
    """Apply a word; the rightmost letter acts first."""
    for g in reversed(w):
        e = bundle_act(g, e)
    return e


def _integer_offset(d: mpc, tol) -> int | None:
    n = mp.nint(mp.re(d))
    if abs(d - n) <= tol:
        return int(n)
    return None


def _match(e1: CSBundleElement, e2: CSBundleElement, tol):
    """A G-image of e1 with the same (alpha, beta) as e2, or None."""
    for start in (e1, bundle_act("b", e1)):
        m = _integer_offset(e2.alpha - start.alpha, tol)
        n = _integer_offset(e2.beta - start.beta, tol)
        if m is not None and n is not None:
            yield translate(start, m, n)


def bundle_eq(e1: CSBundleElement, e2: CSBundleElement, rtol=None) -> bool:
    """True when some element of G maps e1 to e2 (z compared relatively)."""
    tol = tolerance() if rtol is None else rtol
    for image in _match(e1, e2, tol):
        if abs(image.z - e2.z) <= tol * abs(e2.z):
            return True
    return False


def normalize(e: CSBundleElement) -> CSBundleElement:
    """Representative with Re alpha, Re beta in [0, 1)."""
    m = -int(mp.floor(mp.re(e.alpha)))
    n = -int(mp.floor(mp.re(e.beta)))
    return translate(e, m, n)


def cs_glue(e1: CSBundleElement, e2: CSBundleElement) -> mpc:
    """Product of z-slots after bringing e2 to e1's boundary character."""
    tol = tolerance()
    for image in _match(e2, e1, tol):
        return e1.z * image.z
    raise ValueError("boundary characters differ beyond the G-orbit")


def cs_kk_fig8(u) -> CSBundleElement:
    u = big(u)
    four_pi_i = 4j * mp.pi
    return CSBundleElement(
        u / four_pi_i, v_fig8(u) / four_pi_i, mp.exp(1j / (2 * mp.pi) * f_fig8(u))
    )


# ---------------------------------------------------------------- torus knots

def _check_torus(a: int, b: int) -> None:
    if a < 2 or b < 2 or math.gcd(a, b) != 1:
        raise ValueError(f"torus({a},{b}): parameters must be coprime and > 1")


def torus_H(a: int, b: int, u) -> mpc:
    """-(ab(u + 2 pi i) - 2 pi i)^2 / 4ab."""
    _check_torus(a, b)
    u = big(u)
    bracket = a * b * (u + 2j * mp.pi) - 2j * mp.pi
    return -bracket**2 / (4 * a * b)


def torus_growth(a: int, b: int, theta) -> mpc:
    """Predicted lim log J_N / N at q = exp(theta/N), i.e. H / theta."""
    _check_torus(a, b)
    theta = big(theta)
    ab = a * b
    return (1 - 1j * mp.pi / (ab * theta) - ab * theta / (4j * mp.pi)) * 1j * mp.pi


def torus_v(a: int, b: int, u) -> mpc:
    _check_torus(a, b)
    return -a * b * (big(u) + 2j * mp.pi)


def torus_f(a: int, b: int, u) -> mpc:
    """f(u) + H(0): the constant H(0) is left out."""
    _check_torus(a, b)
    ab = a * b
    pi = mp.pi
    return -2 * pi**2 + pi**2 / ab + ab * pi**2 - ab * big(u) * pi * 1j / 2


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with a s + b t = g."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    return old_r, old_s, old_t


def torus_cd(a: int, b: int) -> tuple[int, int]:
    """(c, d) with ad - bc = 1 from the extended gcd."""
    _check_torus(a, b)
    _, s, t = egcd(a, b)
    return -t, s


def _check_kl(a: int, b: int, k: int, l: int) -> None:
    if not (1 <= k <= a - 1 and 1 <= l <= b - 1 and (k - l) % 2 == 0):
        raise ValueError(f"(k, l) = ({k}, {l}) violates 1<=k<a, 1<=l<b, k = l mod 2")


def _check_abcd(a: int, b: int, c: int, d: int) -> None:
    _check_torus(a, b)
    if a * d - b * c != 1:
        raise ValueError(f"ad - bc = {a * d - b * c}, must be 1")


def torus_cs_raw(a: int, b: int, c: int, d: int, k: int, l: int, u, eps: int) -> CSBundleElement:
    """[u/4 pi i, 1/2 - ab u/4 pi i; exp(2 pi i (L^2/4ab - u/8 pi i))], L = lad + eps kbc."""
    _check_abcd(a, b, c, d)
    _check_kl(a, b, k, l)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    u = big(u)
    four_pi_i = 4j * mp.pi
    L = l * a * d + eps * k * b * c
    z = mp.exp(2j * mp.pi * (mpf(L * L) / (4 * a * b) - u / (8j * mp.pi)))
    return CSBundleElement(u / four_pi_i, mpf(1) / 2 - a * b * u / four_pi_i, z)


def torus_cs_bundle(a: int, b: int, c: int, d: int, k: int, l: int, u, eps: int = 1) -> CSBundleElement:
    """[u/4 pi i, v(u)/4 pi i; exp(pi i L^2/2ab + ab u/4)].

    This is the raw element translated by y^(-(ab+1)/2); the half-integer
    shift is recorded in ``psl_shift``.
    """
    raw = torus_cs_raw(a, b, c, d, k, l, u, eps)
    u = big(u)
    L = l * a * d + eps * k * b * c
    z = mp.exp(1j * mp.pi * mpf(L * L) / (2 * a * b) + a * b * u / 4)
    shift = -Fraction(a * b + 1, 2)
    return CSBundleElement(raw.alpha, torus_v(a, b, u) / (4j * mp.pi), z, shift)


def torus_ftilde(a: int, b: int, k: int, l: int, u) -> mpc:
    """(2 pi / i) log z of the normalized element, log taken with the
    quadratic phase reduced into [0, 2 pi)."""
    c, d = torus_cd(a, b)
    _check_kl(a, b, k, l)
    L = l * a * d + k * b * c
    phase = Fraction(L * L, 2 * a * b) % 2
    return 2 * mp.pi**2 * mpf(phase.numerator) / phase.denominator - a * b * big(u) * mp.pi * 1j / 2
