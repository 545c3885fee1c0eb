"""Stationary-point location on both branches, real and complex."""

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from wavezones.dispersion import group_velocity
from wavezones.model import DEFAULT_PARAMS, crossing_point, dispersion_D
from wavezones.saddle import (
    crossing_partner_index,
    doi_interval,
    find_complex_saddles,
    find_real_saddles,
    neighbors_overlap,
    phase_difference,
    phase_g,
)

V_WINDOW = (1.4427260773697537, 1.4979219866980635)  # slow/fast velocity extrema


def test_two_saddles_below_window_frozen():
    rs = find_real_saddles(1.0, DEFAULT_PARAMS)
    assert [r.index for r in rs] == [1, 2]
    sp1, sp2 = rs
    assert sp1.branch == 1 and sp2.branch == 2
    assert sp1.omega_star == pytest.approx(4.2068270192139074, abs=1e-10)
    assert sp1.k_star == pytest.approx(1.2825219343357082, abs=1e-10)
    assert sp1.g == pytest.approx(-2.924305084878199, abs=1e-10)
    assert sp1.alpha == pytest.approx(-0.5622070312177716, abs=1e-9)
    assert sp2.omega_star == pytest.approx(3.4536559426444717, abs=1e-10)
    assert sp2.g == pytest.approx(-2.5850230105378262, abs=1e-10)
    assert all(r.is_real and r.passed_by_contour for r in rs)


def test_four_saddles_inside_window():
    rs = find_real_saddles(1.45, DEFAULT_PARAMS)
    assert [r.index for r in rs] == [1, 2, 3, 4]
    assert [r.branch for r in rs] == [1, 2, 2, 2]
    # the three slow-branch stationary points are frequency ordered
    w = [r.omega_star.real for r in rs[1:]]
    assert w[0] < w[1] < w[2]


def test_count_ladder_across_regimes():
    expected = {0.5: 2, 1.3: 2, 1.45: 4, 1.47: 4, 1.55: 2, 1.9: 1, 2.0: 0, 2.5: 0}
    for V, n in expected.items():
        assert len(find_real_saddles(V, DEFAULT_PARAMS)) == n, V


def test_complex_partner_below_window_frozen():
    cs = find_complex_saddles(1.0, DEFAULT_PARAMS)
    assert len(cs) == 1
    c = cs[0]
    assert c.index == 6 and c.branch == 2 and not c.is_real
    assert c.omega_star == pytest.approx(5.135578225530515 - 0.47158967046585354j, abs=1e-9)
    assert complex(c.g).imag == pytest.approx(0.14202141474426644, abs=1e-9)


def test_complex_partner_above_window():
    cs = find_complex_saddles(1.55, DEFAULT_PARAMS)
    assert [c.index for c in cs] == [5]
    assert complex(cs[0].g).imag > 0.0


def test_partner_index_tracks_regime():
    assert crossing_partner_index(1.0, DEFAULT_PARAMS) == 6
    assert crossing_partner_index(1.45, DEFAULT_PARAMS) == 3
    assert crossing_partner_index(1.55, DEFAULT_PARAMS) == 5


@given(st.floats(min_value=0.2, max_value=1.95))
def test_real_saddles_sit_where_group_velocity_equals_ray_speed(V):
    assume(abs(V - V_WINDOW[0]) > 1e-3 and abs(V - V_WINDOW[1]) > 1e-3)
    for r in find_real_saddles(V, DEFAULT_PARAMS):
        vg = group_velocity(r.branch, r.omega_star.real, DEFAULT_PARAMS)
        assert abs(vg - V) < 1e-8
        # and the point actually lies on the branch
        scale = max(1.0, abs(r.omega_star) ** 4)
        assert abs(dispersion_D(r.omega_star.real, r.k_star.real, DEFAULT_PARAMS)) < 1e-8 * scale


@given(st.floats(min_value=0.2, max_value=1.95))
def test_complex_saddles_decay(V):
    assume(not (V_WINDOW[0] - 1e-3 < V < V_WINDOW[1] + 1e-3))
    for c in find_complex_saddles(V, DEFAULT_PARAMS):
        assert not c.is_real
        # upper half phase: the exponential must shrink with distance
        assert complex(c.g).imag > 0.0
        # saddle condition holds off the real axis too
        scale = max(1.0, abs(c.omega_star) ** 4)
        assert abs(dispersion_D(c.omega_star, c.k_star, DEFAULT_PARAMS)) < 1e-7 * scale


def test_phase_g_matches_saddle_record():
    rs = find_real_saddles(1.0, DEFAULT_PARAMS)
    for r in rs:
        assert phase_g(r.branch, r.omega_star, 1.0, DEFAULT_PARAMS) == pytest.approx(r.g, abs=1e-12)
        # g is the per-distance phase k - omega/V
        assert r.g == pytest.approx(r.k_star - r.omega_star / 1.0, abs=1e-12)


def test_isolation_grows_with_distance():
    rs = find_real_saddles(1.45, DEFAULT_PARAMS)
    sp2, sp3 = rs[1], rs[2]
    x_small, x_large = 10.0, 400.0
    d_small = phase_difference(sp2, sp3, x_small * 1.45, x_small)
    d_large = phase_difference(sp2, sp3, x_large * 1.45, x_large)
    assert d_large > d_small
    assert neighbors_overlap(sp2, sp3, x_small * 1.45, x_small, S=d_large + 1.0)
    assert not neighbors_overlap(sp2, sp3, x_large * 1.45, x_large, S=3.0)


def test_doi_interval_brackets_the_saddle():
    rs = find_real_saddles(1.45, DEFAULT_PARAMS)
    for r in rs:
        lo, hi = doi_interval(r, 100.0)
        assert lo < r.omega_star.real < hi


def test_velocity_attribute_recorded():
    for V in (0.7, 1.45, 1.9):
        for r in find_real_saddles(V, DEFAULT_PARAMS):
            assert r.V == V
            assert r.params == DEFAULT_PARAMS
