"""Arbitrary-precision complex numbers shared by the numerical modules.

All evaluations use mpmath's ``mpc`` type, which has a configurable decimal
precision and an unbounded exponent range.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from typing import Iterator, Union

from mpmath import mp, mpc, mpf

BigComplex = mpc

DEFAULT_DPS = 50
MIN_DPS = 15
PRECISION_ENV = "VCLAB_PRECISION"

Number = Union[int, float, complex, str, mpf, mpc]


def big(value: Number, imag: Number = 0) -> mpc:
    """Convert ``value`` (+ ``imag``·i) to an mpc at the current precision."""
    if isinstance(value, str):
        value = mp.mpmathify(value)
    if isinstance(imag, str):
        imag = mp.mpmathify(imag)
    return mpc(value) + mpc(0, 1) * mpf(imag) if imag else mpc(value)


def tolerance(slack: int = 10) -> mpf:
    """Default comparison tolerance ``10^-(dps - slack)``."""
    return mpf(10) ** (-(mp.dps - slack))


def check_dps(dps: int) -> int:
    if int(dps) != dps or dps < MIN_DPS:
        raise ValueError(f"precision must be an integer >= {MIN_DPS}, got {dps!r}")
    return int(dps)


@contextmanager
def precision(dps: int) -> Iterator[None]:
    """Temporarily set the working precision in decimal digits."""
    with mp.workdps(check_dps(dps)):
        yield


def env_precision(default: int = DEFAULT_DPS) -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        return check_dps(int(raw))
    except ValueError as exc:
        raise ValueError(f"{PRECISION_ENV}={raw!r}: {exc}") from None


def fmt(x: Number, digits: int | None = None) -> str:
    """Format a real or complex number with ``digits`` significant digits."""
    if digits is None:
        digits = mp.dps
    return mp.nstr(x, digits, min_fixed=-4, max_fixed=6)


def real_str(x: Number, digits: int | None = None) -> str:
    return fmt(mp.re(x), digits)


def imag_str(x: Number, digits: int | None = None) -> str:
    return fmt(mp.im(x), digits)
