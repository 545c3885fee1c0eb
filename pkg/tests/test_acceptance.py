"""Acceptance gate: one test per shipped criterion.

Each test prints the criterion's own summary line (run pytest with -s or -rP
to see them) and fails iff the criterion fails. The measured numbers live in
the acceptance module itself so the CLI `compare` subcommand and this suite
cannot drift apart.
"""

import pytest

from wavezones import acceptance


def _check(fn):
    res = fn()
    print(res.line())
    assert res.passed, res.line()


def test_c01_decoupled_limit_matches_closed_form():
    _check(acceptance.criterion_01)


def test_c02_saddle_census_transitions():
    _check(acceptance.criterion_02)


def test_c03_separated_rays_converge_like_inverse_sqrt():
    _check(acceptance.criterion_03)


def test_c04_extremum_ray_airy_form_and_handoff():
    _check(acceptance.criterion_04)


def test_c05_pulse_closed_form_vs_loop_quadrature():
    _check(acceptance.criterion_05)


def test_c06_pulse_band_composition():
    _check(acceptance.criterion_06)


def test_c07_special_functions_vs_reference():
    _check(acceptance.criterion_07)


def test_c08_group_velocity_consistency():
    _check(acceptance.criterion_08)


def test_c09_crossing_and_branch_point_residuals():
    _check(acceptance.criterion_09)


def test_c10_isolation_monotone_in_time():
    _check(acceptance.criterion_10)


def test_c11_loop_integral_self_consistency():
    _check(acceptance.criterion_11)


def test_c12_silence_outside_support():
    _check(acceptance.criterion_12)
