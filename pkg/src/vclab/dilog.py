"""Complex dilogarithm Li2 at arbitrary precision.

Region map:

* ``|z| > 1``: inversion ``Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2``.
  On the cut ``(1, inf)`` the principal ``log(-z)`` equals ``log z + i pi``,
  which is the limit from below the cut.
* ``|z| <= 1/2``: Maclaurin series ``sum z^k / k^2``.
* ``|1 - z| <= 1/2``: reflection ``Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)``.
* otherwise: Bernoulli series in ``u = -log(1 - z)``, where ``|u| < 1.8``.
"""

from __future__ import annotations

from mpmath import mp, mpc

from .numeric import big

_GUARD = 10


def _maclaurin(z: mpc) -> mpc:
    eps = mp.eps
    total = mpc(0)
    power = z
    k = 1
    while True:
        term = power / (k * k)
        total += term
        if abs(term) <= eps * abs(total):
            return total
        k += 1
        power *= z


def _bernoulli_series(z: mpc) -> mpc:
    u = -mp.log(1 - z)
    eps = mp.eps
    total = u - u * u / 4
    u2 = u * u
    power = u  # u^(2k+1) / (2k+1)!
    k = 1
    while True:
        power = power * u2 / ((2 * k) * (2 * k + 1))
        term = mp.bernoulli(2 * k) * power
        total += term
        if abs(term) <= eps * abs(total):
            return total
        k += 1


def _li2_unit_disk(z: mpc) -> mpc:
    if abs(z) <= 0.5:
        return _maclaurin(z)
    w = 1 - z
    if abs(w) <= 0.5:
        return mp.pi**2 / 6 - mp.log(z) * mp.log(w) - _maclaurin(w)
    return _bernoulli_series(z)


def li2(z) -> mpc:
    """Principal-branch dilogarithm; on the cut (1, inf) the value below the cut."""
    z = big(z)
    if z == 0:
        return mpc(0)
    if z == 1:
        return mpc(mp.pi**2 / 6)
    with mp.extradps(_GUARD):
        if abs(z) > 1:
            log_minus = mp.log(-z)
            value = -_li2_unit_disk(1 / z) - mp.pi**2 / 6 - log_minus**2 / 2
        else:
            value = _li2_unit_disk(z)
    return +value
