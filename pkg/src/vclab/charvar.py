"""SL(2,C) character varieties of two-bridge knots and torus knots.

Group words are tuples over the letters 1 = x, -1 = x^-1, 2 = y, -2 = y^-1
and are always freely reduced. Trace polynomials are sympy polynomials with
integer coefficients in ``xi`` = tr x and ``eta`` = tr xy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import sympy
from mpmath import mp, mpc

from .laurent import LaurentPoly
from .numeric import big, tolerance

XI, ETA = sympy.symbols("xi eta")

GroupWord = tuple[int, ...]
TracePoly = sympy.Poly

_LETTERS = {"x": 1, "X": -1, "y": 2, "Y": -2}
_NAMES = {v: k for k, v in _LETTERS.items()}
_SWAP = {1: 2, -1: -2, 2: 1, -2: -1}


class UnimodularityError(ValueError):
    pass


# ---------------------------------------------------------------- words

def reduce_word(letters: Sequence[int]) -> GroupWord:
    out: list[int] = []
    for a in letters:
        if a not in (1, -1, 2, -2):
            raise ValueError(f"bad letter {a!r}")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def word(text: str | Sequence[int]) -> GroupWord:
    """Parse ``"xYXy"`` or ``"x y^-1 x^-2 y"`` (or a letter tuple) into a reduced word."""
    if not isinstance(text, str):
        return reduce_word(text)
    letters: list[int] = []
    for token in re.finditer(r"\s*([xyXY])(?:\^\{?(-?\d+)\}?)?", text):
        base = _LETTERS[token.group(1)]
        power = int(token.group(2)) if token.group(2) else 1
        letters.extend([base if power > 0 else -base] * abs(power))
    residue = re.sub(r"\s*([xyXY])(?:\^\{?(-?\d+)\}?)?", "", text).strip()
    if residue:
        raise ValueError(f"cannot parse word {text!r}")
    return reduce_word(letters)


def word_str(w: GroupWord) -> str:
    return "".join(_NAMES[a] for a in w) or "1"


def inverse(w: GroupWord) -> GroupWord:
    return tuple(-a for a in reversed(w))


def _cyclic_reduce(w: GroupWord) -> GroupWord:
    w = reduce_word(w)
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


def _canonical(w: GroupWord) -> GroupWord:
    """Representative of all words sharing tr w: rotations, inverse, x <-> y."""
    w = _cyclic_reduce(w)
    if not w:
        return w
    swapped = tuple(_SWAP[a] for a in w)
    candidates = []
    for v in (w, inverse(w), swapped, inverse(swapped)):
        candidates.extend(v[i:] + v[:i] for i in range(len(v)))
    return min(candidates)


# ---------------------------------------------------------------- traces

def _chebyshev(n: int, t: sympy.Expr) -> sympy.Expr:
    """tr(A^n) as a polynomial in tr A."""
    n = abs(n)
    prev, cur = sympy.Integer(2), t
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, sympy.expand(t * cur - prev)
    return cur


def _syllables(w: GroupWord) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for a in w:
        gen, sign = abs(a), (1 if a > 0 else -1)
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + sign)
        else:
            out.append((gen, sign))
    return out


def _expand(syllables: list[tuple[int, int]]) -> GroupWord:
    return tuple(g if e > 0 else -g for g, e in syllables for _ in range(abs(e)))


@lru_cache(maxsize=None)
def _trace_canonical(w: GroupWord) -> sympy.Expr:
    if not w:
        return sympy.Integer(2)
    gens = {abs(a) for a in w}
    if len(gens) == 1:
        return _chebyshev(len(w), XI)

    syl = _syllables(w)
    if syl[0][0] == syl[-1][0]:
        # cyclically merge the wrap-around syllable
        g, e = syl.pop()
        syl[0] = (g, syl[0][1] + e)

    # tr(g^n W) = tr(g) tr(g^(n-1) W) - tr(g^(n-2) W)
    for i, (g, e) in enumerate(syl):
        if abs(e) >= 2:
            rest = syl[i + 1:] + syl[:i]
            step = 1 if e > 0 else -1
            shorter = _expand([(g, e - step)] + rest)
            shortest = _expand([(g, e - 2 * step)] + rest)
            return sympy.expand(XI * trace_expr(shorter) - trace_expr(shortest))

    # tr(g^-1 W) = tr(g) tr(W) - tr(g W), applied to whichever of w and its
    # inverse has fewer inverse letters so that the count keeps dropping
    if 2 * sum(1 for _, e in syl if e < 0) > len(syl):
        syl = [(g, -e) for g, e in reversed(syl)]
    for i, (g, e) in enumerate(syl):
        if e < 0:
            rest = _expand(syl[i + 1:] + syl[:i])
            return sympy.expand(XI * trace_expr(rest) - trace_expr((g,) + rest))

    # what is left is (xy)^n
    return _chebyshev(len(w) // 2, ETA)


def trace_expr(w: Sequence[int]) -> sympy.Expr:
    return _trace_canonical(_canonical(reduce_word(w)))


def trace_poly(w: GroupWord | str) -> TracePoly:
    """P_w(xi, eta) with tr rho(w) = P_w(tr rho(x), tr rho(xy)) for every rho."""
    return sympy.Poly(trace_expr(word(w)), XI, ETA, domain="ZZ")


def as_poly(expr: sympy.Expr | str) -> TracePoly:
    if isinstance(expr, str):
        expr = sympy.sympify(expr, locals={"xi": XI, "eta": ETA})
    return sympy.Poly(expr, XI, ETA, domain="ZZ")


def eval_trace_poly(p: TracePoly, xi, eta) -> mpc:
    xi, eta = big(xi), big(eta)
    total = mpc(0)
    for (i, j), c in p.terms():
        total += int(c) * xi**i * eta**j
    return total


# ---------------------------------------------------------------- two-bridge

@dataclass(frozen=True)
class TwoBridgePresentation:
    """<x, y | omega x = y omega> with the longitude as a word."""

    name: str
    omega: GroupWord
    longitude: GroupWord

    def __post_init__(self):
        w = self.omega
        if len(w) % 2 or any(abs(a) != (1 if i % 2 == 0 else 2) for i, a in enumerate(w)):
            raise ValueError(f"omega {word_str(w)} must alternate x^(+-1) y^(+-1)")

    @property
    def relator(self) -> GroupWord:
        return reduce_word(self.omega + (1,) + inverse(self.omega) + (-2,))


FIG8_PRESENTATION = TwoBridgePresentation("fig8", word("xYXy"), word("xYxyXXyxYX"))
TREFOIL_PRESENTATION = TwoBridgePresentation("trefoil", word("xy"), word("yxxyXXXX"))
CINQUEFOIL_PRESENTATION = TwoBridgePresentation(
    "cinquefoil", word("xyxy"), word("yxyxYxyxyXXXXXXX")
)
PRESENTATIONS = {p.name: p for p in (FIG8_PRESENTATION, TREFOIL_PRESENTATION, CINQUEFOIL_PRESENTATION)}


def presentation(name: str | TwoBridgePresentation) -> TwoBridgePresentation:
    if isinstance(name, TwoBridgePresentation):
        return name
    try:
        return PRESENTATIONS[name]
    except KeyError:
        raise ValueError(f"no curated presentation for {name!r}") from None


def riley_F(p: TwoBridgePresentation | str) -> TracePoly:
    """Alternating sum of trace polynomials of omega with i letters trimmed per end."""
    p = presentation(p)
    w = p.omega
    total = sympy.Integer(0)
    for i in range(len(w) // 2 + 1):
        inner = w[i:len(w) - i]
        total += (-1) ** i * (trace_expr(inner) if inner else 1)
    return sympy.Poly(sympy.expand(total), XI, ETA, domain="ZZ")


def char_variety_poly(p: TwoBridgePresentation | str) -> TracePoly:
    abelian = sympy.Poly(2 + ETA - XI**2, XI, ETA, domain="ZZ")
    return abelian * riley_F(p)


# ---------------------------------------------------------------- matrices

def identity() -> mp.matrix:
    return mp.matrix([[1, 0], [0, 1]])


def det2(a: mp.matrix) -> mpc:
    return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]


def inv2(a: mp.matrix) -> mp.matrix:
    """Inverse of a unimodular matrix via the adjugate."""
    return mp.matrix([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]])


def trace2(a: mp.matrix) -> mpc:
    return a[0, 0] + a[1, 1]


def mat_distance(a: mp.matrix, b: mp.matrix) -> mp.mpf:
    return max(abs(a[i, j] - b[i, j]) for i in range(2) for j in range(2))


def _check_unimodular(a: mp.matrix, name: str) -> None:
    err = abs(det2(a) - 1)
    if err > tolerance():
        raise UnimodularityError(f"{name} has |det - 1| = {mp.nstr(err, 5)}")


def eval_word(xmat: mp.matrix, ymat: mp.matrix, w: GroupWord | str) -> mp.matrix:
    _check_unimodular(xmat, "x image")
    _check_unimodular(ymat, "y image")
    images = {1: xmat, -1: inv2(xmat), 2: ymat, -2: inv2(ymat)}
    out = identity()
    for a in word(w):
        out = out * images[a]
    return out


def _branch_sign(branch) -> int:
    if branch in ("+", 1, "plus"):
        return 1
    if branch in ("-", -1, "minus"):
        return -1
    raise ValueError(f"branch must be '+' or '-', got {branch!r}")


@dataclass(frozen=True)
class RepParams:
    m: mpc
    d: mpc
    branch: int = 1

    def __post_init__(self):
        if self.m == 0:
            raise ValueError("m must be nonzero")


def riley_rep(params: RepParams) -> tuple[mp.matrix, mp.matrix]:
    m = big(params.m)
    if m == 0:
        raise ValueError("m must be nonzero")
    r = mp.sqrt(m)
    x = mp.matrix([[r, 1], [0, 1 / r]])
    y = mp.matrix([[r, 0], [-big(params.d), 1 / r]])
    return x, y


def xi_eta(params: RepParams) -> tuple[mpc, mpc]:
    m = big(params.m)
    return mp.sqrt(m) + 1 / mp.sqrt(m), m + 1 / m - big(params.d)


# ---------------------------------------------------------------- figure-eight

def fig8_d_residual(m, d) -> mpc:
    s = 3 - m - 1 / m
    return d * d + d * s + s


def fig8_d(m, branch="+") -> mpc:
    """Root of d^2 + d(3 - m - 1/m) + 3 - m - 1/m = 0 on the chosen branch."""
    m = big(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    p = m + 1 / m
    return (p - 3 + _branch_sign(branch) * mp.sqrt((p + 1) * (p - 3))) / 2


def fig8_rep(m, branch="+") -> RepParams:
    return RepParams(big(m), fig8_d(m, branch), _branch_sign(branch))


def _fig8_middle(m: mpc) -> mpc:
    return m * m - m - 2 - 1 / m + 1 / (m * m)


def fig8_longitude_eigen(m, branch="+") -> mpc:
    """Upper-left entry of rho(lambda) for the representation on ``branch``.

    The '+' branch gives the principal-root formula l(m); the '-' branch
    gives its inverse.
    """
    m = big(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    p = m + 1 / m
    root = mp.sqrt((p + 1) * (p - 3))
    return _fig8_middle(m) / 2 + _branch_sign(branch) * (m - 1 / m) / 2 * root


def fig8_longitude_corner(m, branch="+") -> mpc:
    m = big(m)
    p = m + 1 / m
    r = mp.sqrt(m)
    return _branch_sign(branch) * (r + 1 / r) * mp.sqrt((p + 1) * (p - 3))


def apoly_residual(ell, m) -> mpc:
    """l + 1/l - (m^2 - m - 2 - 1/m + 1/m^2); zero on the figure-eight curve."""
    ell, m = big(ell), big(m)
    if ell == 0 or m == 0:
        raise ValueError("ell and m must be nonzero")
    return ell + 1 / ell - _fig8_middle(m)


M_SYM, L_SYM = sympy.symbols("m l")


@lru_cache(maxsize=None)
def surgery_polynomial(p: int, q: int) -> sympy.Poly:
    """Polynomial in m = e^u vanishing at (p, q) surgery points of the figure-eight.

    The resultant in l of the A-polynomial and m^p l^(2q) = 1, where
    l = -exp(v/2); powers of m are divided out.
    """
    m, l = M_SYM, L_SYM
    apoly = m**2 * (l**2 + 1) - l * (m**4 - m**3 - 2 * m**2 - m + 1)
    lhs = m ** max(p, 0) * l ** max(2 * q, 0)
    rhs = m ** max(-p, 0) * l ** max(-2 * q, 0)
    res = sympy.Poly(sympy.resultant(lhs - rhs, apoly, l), m)
    if res.is_zero:
        raise ValueError(f"degenerate surgery coefficients ({p}, {q})")
    low = min(mono[0] for mono in res.monoms())
    return sympy.Poly(sympy.expand(res.as_expr() / m**low), m).primitive()[1]


def eval_poly_m(poly: sympy.Poly, m) -> mpc:
    m = big(m)
    total = mpc(0)
    for c in poly.all_coeffs():
        total = total * m + int(c)
    return total


# ---------------------------------------------------------------- torus knots

def trefoil_rep(m) -> RepParams:
    m = big(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    return RepParams(m, m + 1 / m - 1, 1)


def cinquefoil_d_residual(m, d) -> mpc:
    return d * d - (2 * m + 2 / m - 1) * d + m * m - m + 1 - 1 / m + 1 / (m * m)


def cinquefoil_rep(m, branch="+") -> RepParams:
    """d = m + 1/m - (1 +- sqrt 5)/2."""
    m = big(m)
    if m == 0:
        raise ValueError("m must be nonzero")
    s = _branch_sign(branch)
    return RepParams(m, m + 1 / m - (1 + s * mp.sqrt(5)) / 2, s)


TORUS_WORDS = {
    # (g, h) generating the centre-free quotient <g, h | g^a = h^b>
    "trefoil": (word("yxy"), word("xy")),
    "cinquefoil": (word("yxyxy"), word("xy")),
}


def torus_component_traces(a: int, b: int, k: int, l: int) -> tuple[mpc, mpc]:
    """(tr g, tr h) = (2 cos(k pi/a), 2 cos(l pi/b)) on the component rho_{k,l}."""
    if a < 2 or b < 2 or math.gcd(a, b) != 1:
        raise ValueError(f"torus({a},{b}): parameters must be coprime and > 1")
    if not (1 <= k <= a - 1 and 1 <= l <= b - 1 and (k - l) % 2 == 0):
        raise ValueError(f"(k, l) = ({k}, {l}) violates 1<=k<a, 1<=l<b, k = l mod 2")
    return big(2 * mp.cos(k * mp.pi / a)), big(2 * mp.cos(l * mp.pi / b))


# ---------------------------------------------------------------- Fox calculus

def fox_alexander(p: TwoBridgePresentation | str) -> LaurentPoly:
    """Alexander polynomial from the abelianized Fox derivative of the relator.

    Normalized to be palindromic with value 1 at t = 1.
    """
    p = presentation(p)
    r = p.relator
    terms: dict[int, int] = {}
    degree = 0
    for a in r:
        if a == 1:
            terms[degree] = terms.get(degree, 0) + 1
        elif a == -1:
            terms[degree - 1] = terms.get(degree - 1, 0) - 1
        degree += 1 if a > 0 else -1
    poly = LaurentPoly.from_exponents(terms, "t")
    if poly.is_zero():
        raise ValueError("zero Fox determinant: degenerate presentation")
    centre = (poly.min_exponent() + poly.max_exponent()) / 2
    poly = poly.shift(-centre)
    value = sum(c for _, c in poly.terms())
    if value not in (1, -1):
        raise ValueError(f"Fox derivative evaluates to {value} at t=1; not a knot presentation")
    return poly * value
