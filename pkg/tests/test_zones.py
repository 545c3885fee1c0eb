"""Zone classifier, hierarchy, diagram sampler, single-layer reference map."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from wavezones.errors import UnknownLabel
from wavezones.model import DEFAULT_PARAMS
from wavezones.zones import (
    ZoneDiagram,
    classify,
    parent_of,
    scalar_zone_classify,
    zone_diagram,
)

V_MIN_EXT = 1.4427260773697537


def _kinds(descs):
    return [(d.kind, d.saddles) for d in descs]


def test_silent_quadrants():
    for t, V in ((-3.0, 1.0), (0.0, 0.7), (20.0, 2.0), (20.0, 2.5)):
        lab, descs = classify(t, V, DEFAULT_PARAMS)
        assert lab.primary == "zero"
        assert descs == [] or len(descs) == 0


def test_near_source_blob():
    lab, descs = classify(3.0, 1.0, DEFAULT_PARAMS)
    assert lab.primary == "B"
    assert _kinds(descs) == [("B", (1, 2, 6))]


def test_separated_slow_ray():
    lab, descs = classify(20.0, 0.8, DEFAULT_PARAMS)
    assert lab.primary == "SP"
    assert lab.sp_count == 3
    assert _kinds(descs) == [("SP", (1,)), ("SP", (2,)), ("SPe", (6,))]


def test_fast_ray_with_evanescent_partner():
    lab, descs = classify(40.0, 1.9, DEFAULT_PARAMS)
    assert lab.primary == "SP"
    assert _kinds(descs) == [("SP", (1,)), ("SPe", (5,))]


def test_wedge_center_pocket():
    # mid-wedge at moderate range: the three clustered stationary points are
    # not separable and stay wrapped in a composite descriptor
    lab, descs = classify(60.0, 1.465141, DEFAULT_PARAMS)
    assert lab.primary == "Q"
    assert _kinds(descs) == [("Q", (1, 2, 3)), ("SP", (4,))]


def test_pulse_band_classification():
    lab, descs = classify(75.0 / 1.38, 1.38, DEFAULT_PARAMS)
    assert lab.primary == "J"
    assert _kinds(descs) == [("J", (1,)), ("SP", (2,)), ("Ai", (6,))]


def test_extremum_ray_unresolved_pair():
    lab, descs = classify(277.25, V_MIN_EXT, DEFAULT_PARAMS)
    assert lab.primary == "Ai"
    assert descs[-1].kind == "Ai"
    assert descs[-1].extremum is not None
    assert descs[-1].extremum.kind == "min"


def test_extremum_neighborhood_pair_listed():
    lab, descs = classify(300.0, 1.47, DEFAULT_PARAMS)
    assert lab.primary == "Ai"
    ai = next(d for d in descs if d.kind == "Ai")
    assert ai.saddles == (2, 3)
    assert ai.extremum.kind == "max"


def test_parent_chain_terminates():
    assert parent_of("SPe") == "Ai"
    assert parent_of("Ai") == "Q"
    assert parent_of("Q") == "B"
    assert parent_of("B") is None
    assert parent_of("far") == "bessel"
    assert parent_of("near") == "bessel"
    assert parent_of("bessel") is None
    with pytest.raises(UnknownLabel):
        parent_of("nonsense")


@given(
    st.floats(min_value=-50.0, max_value=0.0),
    st.floats(min_value=0.1, max_value=3.0),
)
def test_nothing_before_switch_on(t, V):
    lab, _ = classify(t, V, DEFAULT_PARAMS)
    assert lab.primary == "zero"


@given(
    st.floats(min_value=1.0, max_value=500.0),
    st.floats(min_value=2.0, max_value=4.0),
)
def test_nothing_beyond_fast_front(t, V):
    lab, _ = classify(t, V, DEFAULT_PARAMS)
    assert lab.primary == "zero"


@given(st.floats(min_value=1.0, max_value=400.0))
def test_descriptor_cover_is_exact(t):
    # every stationary point appears in exactly one descriptor
    for V in (0.8, 1.38, 1.465141, 1.55, 1.9):
        _, descs = classify(t, V, DEFAULT_PARAMS)
        seen = [i for d in descs for i in d.saddles]
        assert len(seen) == len(set(seen))


def test_isolation_is_eventual_along_each_ray():
    # far enough out every ray below the window resolves into singletons
    for V in (0.6, 1.0, 1.3):
        lab, descs = classify(4000.0, V, DEFAULT_PARAMS)
        assert lab.primary == "SP"
        assert all(len(d.saddles) == 1 for d in descs)


def test_precedence_weakens_with_time():
    # along a fixed ray the severity never increases: once B hands over to a
    # lighter treatment it does not come back
    order = {"B": 0, "Q": 1, "J": 2, "Ai": 3, "SP": 4, "SPe": 4, "zero": -1}
    for V in (0.8, 1.38, 1.465141, 1.9):
        ranks = []
        for t in np.geomspace(1.0, 5000.0, 36):
            lab, _ = classify(float(t), V, DEFAULT_PARAMS)
            if lab.primary != "zero":
                ranks.append(order[lab.primary])
        assert ranks == sorted(ranks), V


def test_diagram_structure():
    dg = zone_diagram(DEFAULT_PARAMS, (1.0, 120.0), (0.5, 2.2), shape=(24, 16))
    assert isinstance(dg, ZoneDiagram)
    assert len(dg.t_grid) == 24 and len(dg.v_grid) == 16
    assert len(dg.labels) == 16 and len(dg.labels[0]) == 24
    assert dg.monotone
    for key, pts in dg.boundaries.items():
        assert all(pts[i][1] <= pts[i + 1][1] for i in range(len(pts) - 1)), key
    flat = {lab for row in dg.labels for lab in row}
    assert "B" in flat and "SP" in flat and "zero" in flat


def test_scalar_zones_cone_and_bands():
    c, Om = 2.0, 3.0
    assert scalar_zone_classify(-1.0, 10.0, c, Om).kind == "zero"
    assert scalar_zone_classify(30.0, 75.0, c, Om).kind == "zero"
    assert scalar_zone_classify(30.0, 59.7, c, Om).kind == "far"
    # z = Om*sqrt(t^2 - (x/c)^2) picks the band
    x = 10.0
    t_near = np.sqrt((x / c) ** 2 + (0.2 / Om) ** 2)
    t_mid = np.sqrt((x / c) ** 2 + (1.0 / Om) ** 2)
    t_far = np.sqrt((x / c) ** 2 + (9.0 / Om) ** 2)
    assert scalar_zone_classify(float(t_near), x, c, Om).kind == "near"
    assert scalar_zone_classify(float(t_mid), x, c, Om).kind == "bessel"
    assert scalar_zone_classify(float(t_far), x, c, Om).kind == "far"
    with pytest.raises(ValueError):
        scalar_zone_classify(1.0, 1.0, c, Om, S=0.0)


def test_threshold_knob_moves_boundaries():
    # stricter separation requirement keeps composite labels alive longer
    t = 22.0
    lab_loose, _ = classify(t, 0.8, DEFAULT_PARAMS, S=0.5)
    lab_strict, _ = classify(t, 0.8, DEFAULT_PARAMS, S=40.0)
    order = {"B": 0, "Q": 1, "J": 2, "Ai": 3, "SP": 4, "SPe": 4}
    assert order[lab_strict.primary] <= order[lab_loose.primary]
