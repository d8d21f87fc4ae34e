"""Exact Laurent polynomials with quarter-integer exponents."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from mpmath import mp, mpc

VARIABLES = ("A", "t", "q")

# Exponents are stored as integers scaled by this factor.
SCALE = 4


def _scaled(exponent: int | Fraction) -> int:
    scaled = Fraction(exponent) * SCALE
    if scaled.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/{SCALE}")
    return int(scaled)


class LaurentPoly:
    """Integer-coefficient Laurent polynomial in one variable.

    Coefficients are keyed by ``4 * exponent``; zero coefficients are never
    stored. The variable name is metadata: equality and hashing look only at
    the terms.
    """

    __slots__ = ("_terms", "var")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "t"):
        if var not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}, got {var!r}")
        clean: dict[int, int] = {}
        for key, coeff in (terms or {}).items():
            if int(key) != key or int(coeff) != coeff:
                raise TypeError("scaled exponents and coefficients must be integers")
            if coeff:
                clean[int(key)] = int(coeff)
        self._terms = dict(sorted(clean.items()))
        self.var = var

    @classmethod
    def from_exponents(cls, terms: Mapping[int | Fraction, int], var: str = "t") -> LaurentPoly:
        """Build from a map of true (unscaled) exponents to coefficients."""
        out: dict[int, int] = {}
        for exponent, coeff in terms.items():
            key = _scaled(exponent)
            out[key] = out.get(key, 0) + coeff
        return cls(out, var)

    @classmethod
    def monomial(cls, exponent: int | Fraction = 0, coeff: int = 1, var: str = "t") -> LaurentPoly:
        return cls({_scaled(exponent): coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "t") -> LaurentPoly:
        return cls({0: c}, var)

    @property
    def scaled_terms(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> Iterator[tuple[Fraction, int]]:
        """Yield (exponent, coefficient) pairs in ascending exponent order."""
        for key, coeff in self._terms.items():
            yield Fraction(key, SCALE), coeff

    def coefficient(self, exponent: int | Fraction) -> int:
        return self._terms.get(_scaled(exponent), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def min_exponent(self) -> Fraction:
        return Fraction(min(self._terms), SCALE)

    def max_exponent(self) -> Fraction:
        return Fraction(max(self._terms), SCALE)

    def _coerce(self, other: object) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other, self.var)
        return None

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._terms == rhs._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: object) -> LaurentPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in rhs._terms.items():
            out[key] = out.get(key, 0) + coeff
        return LaurentPoly(out, self.var)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -c for k, c in self._terms.items()}, self.var)

    def __sub__(self, other: object) -> LaurentPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: object) -> LaurentPoly:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in rhs._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((key, coeff),) = self._terms.items()
            if coeff not in (1, -1):
                raise ValueError("inverse of a monomial needs a unit coefficient")
            return LaurentPoly({-key * -n: coeff ** (-n)}, self.var)
        result = LaurentPoly.constant(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute(self, scale: int | Fraction, var: str | None = None) -> LaurentPoly:
        """Substitute ``x -> y^scale``: every exponent e becomes e*scale."""
        out: dict[int, int] = {}
        for key, coeff in self._terms.items():
            new = Fraction(key) * Fraction(scale)
            if new.denominator != 1:
                raise ValueError(f"substitution by power {scale} leaves a non-quarter exponent")
            out[int(new)] = coeff
        return LaurentPoly(out, var or self.var)

    def mirror(self) -> LaurentPoly:
        """The image under x <-> 1/x."""
        return self.substitute(-1)

    def shift(self, exponent: int | Fraction) -> LaurentPoly:
        """Multiply by x^exponent."""
        d = _scaled(exponent)
        return LaurentPoly({k + d: c for k, c in self._terms.items()}, self.var)

    def with_var(self, var: str) -> LaurentPoly:
        return LaurentPoly(self._terms, var)

    def is_palindromic(self) -> bool:
        return self == self.mirror()

    def evaluate(self, x) -> mpc:
        """Numerical value at x; fractional powers use the principal branch."""
        x = mp.mpmathify(x)
        if x == 0 and self._terms and min(self._terms) < 0:
            raise ZeroDivisionError("negative powers at x = 0")
        total = mpc(0)
        log_x = None
        for key, coeff in self._terms.items():
            if key % SCALE == 0:
                total += coeff * mp.power(x, key // SCALE)
            else:
                if log_x is None:
                    log_x = mp.log(x)
                total += coeff * mp.exp(log_x * key / SCALE)
        return total

    def __call__(self, x) -> mpc:
        return self.evaluate(x)

    def canonical(self) -> str:
        """Ascending ``c*t^(n/4)`` terms joined by `` + ``."""
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*{self.var}^({k}/{SCALE})" for k, c in self._terms.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exponent, coeff in self.terms():
            if exponent == 0:
                body = str(abs(coeff))
            else:
                e = str(exponent) if exponent.denominator == 1 else f"({exponent})"
                power = self.var if exponent == 1 else f"{self.var}^{e}"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}*{power}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r}, var={self.var!r})"


def lsum(polys: Iterable[LaurentPoly], var: str = "t") -> LaurentPoly:
    total = LaurentPoly({}, var)
    for p in polys:
        total = total + p
    return total
