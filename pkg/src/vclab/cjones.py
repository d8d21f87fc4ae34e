"""Closed-form colored Jones sums for the figure-eight knot and the trefoil."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

from mpmath import mp, mpc

from .numeric import big


class UnsupportedKnotError(ValueError):
    pass


@dataclass(frozen=True)
class KnotTag:
    """``fig8``, ``trefoil`` or ``torus`` with coprime parameters a, b > 1."""

    kind: str
    a: int | None = None
    b: int | None = None

    def __post_init__(self):
        if self.kind == "torus":
            if self.a is None or self.b is None:
                raise ValueError("torus knot needs both parameters")
            if self.a < 2 or self.b < 2 or math.gcd(self.a, self.b) != 1:
                raise ValueError(f"torus({self.a},{self.b}): parameters must be coprime and > 1")
        elif self.kind in ("fig8", "trefoil"):
            if self.a is not None or self.b is not None:
                raise ValueError(f"{self.kind} takes no parameters")
        else:
            raise ValueError(f"unknown knot {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> KnotTag:
        text = text.strip().lower()
        match = re.fullmatch(r"(?:torus|t)\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        if match:
            return cls("torus", int(match.group(1)), int(match.group(2)))
        aliases = {"fig8": "fig8", "figure-eight": "fig8", "4_1": "fig8",
                   "trefoil": "trefoil", "3_1": "trefoil"}
        if text not in aliases:
            raise ValueError(f"unknown knot {text!r}")
        return cls(aliases[text])

    @property
    def torus_params(self) -> tuple[int, int] | None:
        if self.kind == "trefoil":
            return 2, 3
        if self.kind == "torus":
            return self.a, self.b
        return None

    def __str__(self) -> str:
        return f"torus({self.a},{self.b})" if self.kind == "torus" else self.kind


FIG8 = KnotTag("fig8")
TREFOIL = KnotTag("trefoil")


@dataclass(frozen=True)
class JSequence:
    knot: KnotTag
    theta: mpc
    points: tuple[tuple[int, mpc], ...]

    def __post_init__(self):
        ns = [n for n, _ in self.points]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("N must be strictly increasing")
        if any(n < 2 for n in ns):
            raise ValueError("N must be at least 2")
        if not all(mp.isfinite(v) for _, v in self.points):
            raise ValueError("sequence values must be finite")

    @property
    def ns(self) -> list[int]:
        return [n for n, _ in self.points]

    @property
    def values(self) -> list[mpc]:
        return [v for _, v in self.points]

    def __len__(self) -> int:
        return len(self.points)


def _check_n(N: int, minimum: int = 1) -> None:
    if int(N) != N or N < minimum:
        raise ValueError(f"N must be an integer >= {minimum}, got {N!r}")


def _fig8_sum(N: int, pair_sum: Callable[[int], mpc], c_n: mpc) -> mpc:
    # The j-th factor pair (q^((N-j)/2) - q^(-(N-j)/2))(q^((N+j)/2) - q^(-(N+j)/2))
    # multiplies out to q^N + q^-N - q^j - q^-j, so no half powers are needed.
    total = mpc(1)
    term = mpc(1)
    for j in range(1, N):
        term *= c_n - pair_sum(j)
        total += term
    return total


def cjones_fig8(N: int, q) -> mpc:
    """J_N of the figure-eight knot at q, summed with a running product."""
    _check_n(N)
    q = big(q)
    if q == 0:
        raise ZeroDivisionError("q = 0")
    q_inv = 1 / q
    c_n = mp.power(q, N) + mp.power(q_inv, N)
    return _fig8_sum(N, lambda j: mp.power(q, j) + mp.power(q_inv, j), c_n)


def _trefoil_sum(N: int, power: Callable[[int], mpc]) -> mpc:
    # power(k) returns q^k for any integer k.
    step = power(-N)
    total = mpc(1)
    term = mpc(1)
    shift = mpc(1)
    for k in range(1, N):
        term *= 1 - power(k - N)
        shift *= step
        total += shift * term
    return power(1 - N) * total


def cjones_trefoil(N: int, q) -> mpc:
    """J_N of the right-handed trefoil at q."""
    _check_n(N)
    q = big(q)
    if q == 0:
        raise ZeroDivisionError("q = 0")
    return _trefoil_sum(N, lambda k: mp.power(q, k))


def working_dps(N: int, theta, base: int | None = None) -> int:
    """Digits needed so terms of size e^(N |Re theta|) keep relative accuracy."""
    if base is None:
        base = mp.dps
    growth = 0.7 * N * abs(float(mp.re(big(theta)))) / math.log(10)
    return base + math.ceil(growth)


def eval_at_theta(knot: KnotTag | str, N: int, theta) -> mpc:
    """J_N(K; exp(theta/N)) with the precision raised for large |Re theta|."""
    if isinstance(knot, str):
        knot = KnotTag.parse(knot)
    _check_n(N, 2)
    theta = big(theta)
    if knot.kind == "fig8":
        evaluate = _fig8_theta
    elif knot.torus_params == (2, 3):
        evaluate = _trefoil_theta
    else:
        raise UnsupportedKnotError(f"no closed-form colored Jones sum for {knot}")
    with mp.workdps(working_dps(N, theta)):
        value = evaluate(N, theta)
    return +value


def _fig8_theta(N: int, theta: mpc) -> mpc:
    step = theta / N
    c_n = 2 * mp.cosh(theta)
    return _fig8_sum(N, lambda j: 2 * mp.cosh(j * step), c_n)


def _trefoil_theta(N: int, theta: mpc) -> mpc:
    step = theta / N
    return _trefoil_sum(N, lambda k: mp.exp(k * step))


def jsequence(knot: KnotTag | str, theta, n_min: int, n_max: int, stride: int = 1) -> JSequence:
    if isinstance(knot, str):
        knot = KnotTag.parse(knot)
    if stride < 1:
        raise ValueError("stride must be positive")
    if not 2 <= n_min < n_max:
        raise ValueError(f"need 2 <= N_min < N_max, got [{n_min}, {n_max}]")
    theta = big(theta)
    points = tuple((n, eval_at_theta(knot, n, theta)) for n in range(n_min, n_max + 1, stride))
    return JSequence(knot, theta, points)
