import random

import pytest
import sympy
from mpmath import mp, mpc

from vclab import charvar
from vclab.charvar import ETA, XI
from vclab.laurent import LaurentPoly

M = mpc("0.7", "0.3")


def t(e, c=1):
    return LaurentPoly.monomial(e, c, "t")


def test_basic_traces():
    assert charvar.trace_poly("x").as_expr() == XI
    assert charvar.trace_poly("xy").as_expr() == ETA
    assert charvar.trace_poly("xY").as_expr() == XI**2 - ETA
    assert charvar.trace_poly("xYXy").as_expr() == ETA**2 - XI**2 * ETA + 2 * XI**2 - 2


def test_word_parsing():
    assert charvar.word("x^-2y") == (-1, -1, 2)
    assert charvar.word("xXy") == (2,)
    assert charvar.word_str(charvar.inverse(charvar.word("xY"))) == "yX"


def test_traces_match_matrices_on_random_words():
    rng = random.Random(1)
    for _ in range(10):
        params = charvar.RepParams(mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)),
                                   mpc(rng.uniform(-2, 2), rng.uniform(-2, 2)))
        xmat, ymat = charvar.riley_rep(params)
        xi, eta = charvar.xi_eta(params)
        for _ in range(5):
            w = charvar.reduce_word([rng.choice([1, -1, 2, -2]) for _ in range(rng.randint(1, 14))])
            if not w:
                continue
            direct = charvar.trace2(charvar.eval_word(xmat, ymat, w))
            poly = charvar.eval_trace_poly(charvar.trace_poly(w), xi, eta)
            assert abs(direct - poly) < 1e-30 * (1 + abs(direct))


def test_riley_goldens():
    assert charvar.riley_F("trefoil").as_expr() == ETA - 1
    assert charvar.riley_F("fig8").as_expr() == sympy.expand(ETA**2 - ETA + 2 * XI**2 - XI**2 * ETA - 1)
    assert charvar.riley_F("cinquefoil").as_expr() == ETA**2 - ETA - 1


def test_char_variety_contains_riley_factor():
    for name in ("trefoil", "fig8", "cinquefoil"):
        full = charvar.char_variety_poly(name)
        assert sympy.rem(full.as_expr(), charvar.riley_F(name).as_expr(), ETA) == 0


def test_presentation_validation():
    with pytest.raises(ValueError):
        charvar.TwoBridgePresentation("bad", charvar.word("xxy"), charvar.word("xy"))


@pytest.mark.parametrize("branch", ["+", "-"])
def test_fig8_representation(branch):
    params = charvar.fig8_rep(M, branch)
    assert abs(charvar.fig8_d_residual(M, params.d)) < 1e-45
    xmat, ymat = charvar.riley_rep(params)
    relation = charvar.mat_distance(charvar.eval_word(xmat, ymat, "xYXyx"),
                                    charvar.eval_word(xmat, ymat, "yxYXy"))
    assert relation < 1e-45
    longitude = charvar.eval_word(xmat, ymat, charvar.FIG8_PRESENTATION.longitude)
    assert abs(longitude[0, 0] - charvar.fig8_longitude_eigen(M, branch)) < 1e-45
    assert abs(longitude[0, 1] - charvar.fig8_longitude_corner(M, branch)) < 1e-45
    assert abs(longitude[1, 0]) < 1e-45
    assert abs(charvar.apoly_residual(longitude[0, 0], M)) < 1e-45


def test_branches_are_inverse():
    plus = charvar.fig8_longitude_eigen(M, "+")
    minus = charvar.fig8_longitude_eigen(M, "-")
    assert abs(plus * minus - 1) < 1e-45


def test_unimodularity_checked():
    bad = mp.matrix([[2, 0], [0, 1]])
    with pytest.raises(charvar.UnimodularityError):
        charvar.eval_word(bad, charvar.identity(), "xy")


def test_torus_representations():
    xmat, ymat = charvar.riley_rep(charvar.trefoil_rep(M))
    longitude = charvar.eval_word(xmat, ymat, charvar.TREFOIL_PRESENTATION.longitude)
    assert abs(longitude[0, 0] + M**-3) < 1e-45
    for branch, l in (("+", 1), ("-", 3)):
        params = charvar.cinquefoil_rep(M, branch)
        assert abs(charvar.cinquefoil_d_residual(M, params.d)) < 1e-45
        xmat, ymat = charvar.riley_rep(params)
        g, h = charvar.TORUS_WORDS["cinquefoil"]
        tg, th = charvar.torus_component_traces(2, 5, 1, l)
        assert abs(charvar.trace2(charvar.eval_word(xmat, ymat, g)) - tg) < 1e-40
        assert abs(charvar.trace2(charvar.eval_word(xmat, ymat, h)) - th) < 1e-40


def test_torus_trace_constraints():
    assert charvar.torus_component_traces(2, 3, 1, 1) == (pytest.approx(0, abs=1e-40), pytest.approx(1))
    with pytest.raises(ValueError):
        charvar.torus_component_traces(2, 5, 1, 2)
    with pytest.raises(ValueError):
        charvar.torus_component_traces(2, 4, 1, 1)


def test_fox_alexander():
    assert charvar.fox_alexander("trefoil") == t(-1) - 1 + t(1)
    assert charvar.fox_alexander("fig8") == -t(-1) + 3 - t(1)
    assert charvar.fox_alexander("cinquefoil") == t(-2) - t(-1) + 1 - t(1) + t(2)
    for name in ("trefoil", "fig8", "cinquefoil"):
        delta = charvar.fox_alexander(name)
        assert delta.is_palindromic()
        assert delta.evaluate(1) == 1


def test_surgery_polynomial_contains_known_factor():
    poly = charvar.surgery_polynomial(1, 1)
    m = charvar.M_SYM
    assert sympy.rem(poly.as_expr(), m**6 - 4 * m**4 - 7 * m**3 - 4 * m**2 + 1, m) == 0
