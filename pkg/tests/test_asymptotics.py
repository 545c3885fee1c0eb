"""Closed-form field pieces and their assembly against the quadrature solver.

Frozen complex values were produced by this package and cross-checked against
the quadrature oracle during development; they pin the normalisation
(prefactors, branch of the square root, sign of the phase) rather than the
underlying physics, which the relative-error tests at the bottom cover.
"""

import math

import numpy as np
import pytest

from wavezones.asymptotics import (
    airy_term,
    assemble_field,
    j_parameters,
    j_term,
    q_function,
    sp_term,
)
from wavezones.dispersion import group_velocity_extrema
from wavezones.model import DEFAULT_PARAMS
from wavezones.oracle import field_modal_integral, j_int_quadrature
from wavezones.saddle import find_real_saddles
from wavezones.special import bessel_j0


def test_sp_term_frozen_below_window():
    rs = {r.index: r for r in find_real_saddles(1.0, DEFAULT_PARAMS)}
    s1 = sp_term(rs[1], 60.0, 60.0, DEFAULT_PARAMS)
    s2 = sp_term(rs[2], 60.0, 60.0, DEFAULT_PARAMS)
    assert s1[0] == pytest.approx(-0.0001333263457676699 - 0.0004098406423270674j, abs=1e-12)
    assert s1[1] == pytest.approx(0.000564755340495607 + 0.0017360386664290288j, abs=1e-12)
    assert s2[0] == pytest.approx(0.007252336293823595 - 0.0028793869343086186j, abs=1e-12)
    assert s2[1] == pytest.approx(0.001310545219333801 - 0.0005203242966799683j, abs=1e-12)


def test_sp_term_frozen_fast_ray():
    rs = find_real_saddles(1.9, DEFAULT_PARAMS)
    s1 = sp_term(rs[0], 40.0, 76.0, DEFAULT_PARAMS)
    assert s1[0] == pytest.approx(-0.009077553290719477 - 0.01334604421222582j, abs=1e-12)
    assert s1[1] == pytest.approx(0.0003565848765440463 + 0.000524259938262586j, abs=1e-12)


def test_sp_term_inverse_sqrt_spreading():
    r = find_real_saddles(1.0, DEFAULT_PARAMS)[0]
    near = sp_term(r, 60.0, 60.0, DEFAULT_PARAMS)
    far = sp_term(r, 240.0, 240.0, DEFAULT_PARAMS)
    assert np.abs(near) / np.abs(far) == pytest.approx([2.0, 2.0], rel=1e-9)


def test_j_term_frozen_and_polarised():
    j = j_term(40.0, 58.0, DEFAULT_PARAMS)
    # crossing amplitude has no first component
    assert abs(j[0]) < 1e-14
    assert j[1] == pytest.approx(-3.6598214718266192e-3 - 1.5019919196806101e-3j, abs=1e-12)


def test_j_parameters_frozen():
    jp = j_parameters(40.0, 58.0, DEFAULT_PARAMS)
    assert jp.b == pytest.approx(1.9476960106415722, abs=1e-10)
    assert jp.scale == pytest.approx(1.9477383577758527, abs=1e-10)
    assert jp.drift == pytest.approx(-0.012843694261244333, abs=1e-10)


def test_j_term_nodes_follow_bessel_zero():
    # along a fixed ray the pulse magnitude vanishes where b hits the first
    # J0 zero, 2.404825557695773
    V = 1.465141
    lo, hi = 60.0, 80.0
    f = lambda x: j_parameters(x / V, x, DEFAULT_PARAMS).b - 2.404825557695773
    assert f(lo) < 0.0 < f(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)
    mag = np.abs(j_term(x0 / V, x0, DEFAULT_PARAMS)[1])
    side = np.abs(j_term((x0 - 8.0) / V, x0 - 8.0, DEFAULT_PARAMS)[1])
    assert mag < 1e-3 * side


def test_j_term_matches_its_quadrature():
    x = 58.0
    t = x / 1.465141
    jq = j_int_quadrature(t, x, DEFAULT_PARAMS)
    jt = j_term(t, x, DEFAULT_PARAMS)
    assert np.max(np.abs(jq - jt)) < 1e-6


def test_q_function_frozen():
    assert q_function(0.5, 0.5) == pytest.approx(0.119783978241098 + 5.404946286703325j, abs=1e-9)
    q0 = q_function(0.0, 0.3)
    assert abs(q0.real) < 1e-12
    assert q0.imag == pytest.approx(4.933033087031669, abs=1e-9)


@pytest.mark.parametrize("z", [0.0, 0.3, 0.6, 0.9, 1.0])
def test_q_function_bessel_identity(z):
    # zero drift collapses the loop integral onto the circular average
    ref = 2j * math.pi * bessel_j0(math.sqrt(max(0.0, 1.0 - z * z)))
    assert q_function(0.0, z) == pytest.approx(ref, abs=1e-9)


def test_airy_term_frozen_on_min_ray():
    e_min = next(e for e in group_velocity_extrema(DEFAULT_PARAMS) if e.kind == "min")
    x = 400.0
    at = airy_term(e_min, x / e_min.v_e, x, DEFAULT_PARAMS)
    assert at[0] == pytest.approx(0.0010132918121078 - 0.0002758084742917j, abs=1e-10)
    assert at[1] == pytest.approx(0.0022878425317837 - 0.0006227291591336j, abs=1e-10)


def test_assembly_is_twice_real_part_of_terms():
    fv = assemble_field(60.0, 60.0, DEFAULT_PARAMS)
    tot = sum(tm.value for tm in fv.terms)
    assert np.allclose(fv.u, 2.0 * np.real(tot), atol=0.0)
    assert not fv.used_oracle


@pytest.mark.parametrize(
    "t, V, tol",
    [
        (40.0, 1.9, 0.02),
        (60.0, 1.0, 0.01),
        (100.0, 0.5, 1e-3),
        (94.0, 1.33, 0.06),
    ],
)
def test_assembly_against_oracle(t, V, tol):
    x = V * t
    fv = assemble_field(t, x, DEFAULT_PARAMS)
    u = field_modal_integral(t, x, DEFAULT_PARAMS)
    rel = np.max(np.abs(fv.u - u)) / np.max(np.abs(u))
    assert rel < tol


def test_assembly_silent_zones():
    for t, x in ((-5.0, 30.0), (10.0, 25.0)):
        fv = assemble_field(t, x, DEFAULT_PARAMS)
        assert fv.zone.primary == "zero"
        assert fv.terms == [] or len(fv.terms) == 0
        assert np.all(fv.u == 0.0)


def test_assembly_delegates_near_source():
    fv = assemble_field(3.0, 3.0, DEFAULT_PARAMS)
    assert fv.zone.primary == "B"
    assert fv.used_oracle
    u = field_modal_integral(3.0, 3.0, DEFAULT_PARAMS)
    assert np.allclose(fv.u, u, rtol=1e-6, atol=1e-12)
