from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc

from vclab import asymlab, bundle, geom
from vclab.bundle import CSBundleElement
from vclab.cjones import FIG8, cjones_fig8, cjones_trefoil, eval_at_theta
from vclab.dilog import li2

coord = st.floats(min_value=-1.5, max_value=1.5, allow_nan=False)
small = st.floats(min_value=-0.45, max_value=0.45, allow_nan=False)
complexes = st.builds(mpc, coord, coord)


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_li2_reflection(z):
    if abs(mp.im(z)) < 1e-3:
        return
    with mp.workdps(50):
        rhs = mp.pi**2 / 6 - mp.log(z) * mp.log(1 - z)
        assert abs(li2(z) + li2(1 - z) - rhs) < 1e-40


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_li2_matches_polylog(z):
    with mp.workdps(50):
        assert abs(li2(z) - mp.polylog(2, z)) < 1e-40


@settings(max_examples=30, deadline=None)
@given(complexes, complexes, complexes, st.sampled_from(["bxbx", "byby", "bb", "xyXY", "XYxy"]))
def test_group_relations(alpha, beta, logz, w):
    with mp.workdps(50):
        e = CSBundleElement.of(alpha, beta, mp.exp(logz))
        image = bundle.act_word(w, e)
        assert abs(image.alpha - e.alpha) < 1e-45 and abs(image.beta - e.beta) < 1e-45
        assert abs(image.z - e.z) < 1e-40 * abs(e.z)


@settings(max_examples=30, deadline=None)
@given(st.builds(mpc, st.floats(-3, 3), st.floats(-3, 3)))
def test_gamma_recurrence(z):
    with mp.workdps(50):
        if abs(z - mp.nint(mp.re(z))) < 1e-6 and mp.re(z) < 0.5:
            return
        lhs = asymlab.gamma_fn(z + 1)
        assert abs(lhs - z * asymlab.gamma_fn(z)) < 1e-40 * abs(lhs)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 40), st.builds(mpc, small, small))
def test_fig8_amphichiral(n, log_q):
    with mp.workdps(50):
        q = mp.exp(log_q)
        assert abs(cjones_fig8(n, q) - cjones_fig8(n, 1 / q)) < 1e-35 * abs(cjones_fig8(n, q))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 30), st.builds(mpc, small, small))
def test_unit_at_q_one_and_conjugation(n, log_q):
    with mp.workdps(50):
        assert abs(cjones_trefoil(n, 1) - 1) < 1e-40
        q = mp.exp(log_q)
        assert abs(mp.conj(cjones_trefoil(n, q)) - cjones_trefoil(n, mp.conj(q))) < 1e-35 * abs(cjones_trefoil(n, q))


@settings(max_examples=10, deadline=None)
@given(st.integers(5, 60), st.builds(mpc, st.floats(-3, 3), st.floats(-3, 3)))
def test_precision_doubling(n, theta):
    with mp.workdps(40):
        low = eval_at_theta(FIG8, n, theta)
        h_low = geom.H_fig8(theta / 3)
    with mp.workdps(80):
        high = eval_at_theta(FIG8, n, theta)
        h_high = geom.H_fig8(theta / 3)
        assert abs(low - high) < 1e-30 * abs(high)
        assert abs(h_low - h_high) < 1e-35 * max(1, abs(h_high))
