"""Asymptotic term families of the transient field.

Every term here is a right-half-plane contribution: the physical field is

    u(t, x) = 2 Re [ sum of terms ],

and each evaluator folds in the i/(2 pi) inversion prefactor so the terms
of one point can be summed directly.  Families:

  * stationary-point terms, real or complex saddle (x^{-1/2} spreading);
  * Airy terms near a group-velocity extremum, in a locally-uniform
    two-saddle calibration that degrades gracefully to the classical
    one-point form at the merge;
  * the exchange pulse (Bessel J0 carrier at the crossing frequency)
    inside its wedge;
  * the cut-encircling special function q_function used by the
    quasi-intersection regime.

assemble_field ties these to the zone classifier and is the public
entry point for evaluating the field at one (t, x).
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .dispersion import derivatives_at, group_velocity_extrema
from .errors import DegenerateCurvature, NoConvergence, OutsideWedge, WrongSignCurvature
from .model import WaveguideParams, amplitude_A, crossing_point
from .saddle import SaddlePoint, find_complex_saddles, find_real_saddles
from .special import airy_ai, airy_ai_prime, bessel_j0

__all__ = [
    "TermDescriptor",
    "FieldValue",
    "JParameters",
    "sp_term",
    "airy_term",
    "j_term",
    "j_parameters",
    "branch_near_crossing",
    "q_function",
    "assemble_field",
]

_TWO_PI = 2.0 * math.pi


@dataclasses.dataclass
class TermDescriptor:
    """One asymptotic contribution at a (t, x) point.

    kind is one of SP, SPe, Ai, J, Q, B; saddles lists the family indices
    involved; value (complex pair) is filled by assemble_field; note
    records what triggered the descriptor.
    """

    kind: str
    saddles: tuple[int, ...] = ()
    value: np.ndarray | None = None
    note: str = ""
    extremum: object | None = None


@dataclasses.dataclass
class FieldValue:
    """Assembled field at one point: u = 2 Re(sum of term values)."""

    u: np.ndarray
    zone: object
    terms: list[TermDescriptor]
    used_oracle: bool


@dataclasses.dataclass(frozen=True)
class JParameters:
    """Stretched coordinates of the exchange pulse at one (t, x)."""

    xi: float        # time stretch of the pulse envelope
    b: float         # Bessel argument, >= 0 inside the wedge
    drift: float     # centered time in stretch units
    scale: float     # loop-integral second parameter

    @property
    def inside(self) -> bool:
        return bool(np.isfinite(self.b))


def _h_vector(omega, k, params: WaveguideParams):
    """Modal weight A / d_k D at a point of the dispersion variety."""
    c1s, c2s = params.c1**2, params.c2**2
    P = omega**2 - params.omega1**2 - c1s * k**2
    Q = omega**2 - params.omega2**2 - c2s * k**2
    Dk = -2.0 * k * (c1s * Q + c2s * P)
    return amplitude_A(omega, k, params) / Dk


def sp_term(sp: SaddlePoint, t: float, x: float, params: WaveguideParams) -> np.ndarray:
    """Stationary-point contribution of one saddle (real or complex).

    (i / 2 pi) * h * sqrt(2 pi / (-i alpha x)) * exp(i (k* x - omega* t))
    with the principal square root; for real saddles this reproduces the
    classical form with phase offset sign(alpha) * pi/4, for complex ones
    the exponential decays.  Requires x > 0 and a nondegenerate curvature.
    """
    if x <= 0.0:
        raise ValueError("stationary-point term needs x > 0")
    if abs(sp.alpha) < 1e-12:
        raise DegenerateCurvature(f"curvature {sp.alpha!r} too small for an isolated-saddle form")
    h = _h_vector(sp.omega_star, sp.k_star, params)
    root = np.sqrt(_TWO_PI / (-1j * sp.alpha * x))
    phase = np.exp(1j * (sp.k_star * x - sp.omega_star * t))
    return (1j / _TWO_PI) * h * root * phase


# ---------------------------------------------------------------------------
# Airy family


def _pair_calibrated(sp_a: SaddlePoint, sp_b: SaddlePoint, t, x, params) -> np.ndarray:
    """Two-real-saddle Airy calibration (oscillatory side of an extremum)."""
    if not (sp_a.alpha.real > 0) ^ (sp_b.alpha.real > 0):
        raise WrongSignCurvature("pair calibration needs opposite-curvature saddles")
    p, q = (sp_a, sp_b) if sp_a.alpha.real > 0 else (sp_b, sp_a)
    phi_p = p.k_star.real * x - p.omega_star.real * t
    phi_q = q.k_star.real * x - q.omega_star.real * t
    dphi = phi_q - phi_p
    xi = (0.75 * dphi) ** (2.0 / 3.0)
    sig_p = _h_vector(p.omega_star, p.k_star, params) * math.sqrt(_TWO_PI / (abs(p.alpha) * x))
    sig_q = _h_vector(q.omega_star, q.k_star, params) * math.sqrt(_TWO_PI / (abs(q.alpha) * x))
    carrier = np.exp(0.5j * (phi_p + phi_q))
    bracket = (sig_p + sig_q) * xi**0.25 * airy_ai(-xi) - 1j * (sig_p - sig_q) * airy_ai_prime(-xi) / xi**0.25
    return (1j / _TWO_PI) * math.sqrt(math.pi) * carrier * bracket


def _decay_calibrated(sp_c: SaddlePoint, t, x, params) -> np.ndarray:
    """Complex-saddle Airy calibration (shadow side of an extremum)."""
    g = sp_c.k_star - sp_c.omega_star / sp_c.V
    dphi = 2.0 * x * g.imag
    xi = (0.75 * dphi) ** (2.0 / 3.0)
    sig = _h_vector(sp_c.omega_star, sp_c.k_star, params) * np.sqrt(_TWO_PI / (-1j * sp_c.alpha * x))
    carrier = np.exp(1j * x * g.real)
    bracket = xi**0.25 * airy_ai(xi) - airy_ai_prime(xi) / xi**0.25
    return (1j / _TWO_PI) * math.sqrt(math.pi) * carrier * sig * bracket


def _local_airy(ext, t, x, params) -> np.ndarray:
    """Classical one-point Airy form, exact at V = v_e."""
    a = ext.cubic_coeff
    V = x / t
    s = math.copysign(1.0, a) * (x * x / abs(a)) ** (1.0 / 3.0) * (1.0 / V - 1.0 / ext.v_e)
    h = _h_vector(complex(ext.omega_e), complex(ext.k_e), params)
    carrier = np.exp(1j * (ext.k_e * x - ext.omega_e * t))
    return 1j * h * airy_ai(s) * carrier / (x * abs(a)) ** (1.0 / 3.0)


_AIRY_SWITCH = 0.5  # phase split below which the calibrated forms cancel badly


def airy_term(ext, t: float, x: float, params: WaveguideParams) -> np.ndarray:
    """Airy contribution of the group-velocity extremum ext at (t, x).

    Picks the oscillatory two-saddle calibration, the complex-saddle decay
    calibration, or the local merge form, by which side of v_e the ray V
    falls on and how separated the merging saddles are.  The extremum kind
    must match its curvature sign (WrongSignCurvature otherwise).
    """
    if x <= 0.0 or t <= 0.0:
        raise ValueError("Airy term needs t > 0 and x > 0")
    if (ext.kind == "min") != (ext.cubic_coeff > 0):
        raise WrongSignCurvature(f"extremum kind {ext.kind!r} contradicts cubic coefficient {ext.cubic_coeff:.3g}")
    V = x / t
    oscillatory = V > ext.v_e if ext.kind == "min" else V < ext.v_e
    pair_ids = (3, 4) if ext.kind == "min" else (2, 3)
    if oscillatory:
        got = {s.index: s for s in find_real_saddles(V, params)}
        if all(i in got for i in pair_ids):
            a, b = got[pair_ids[0]], got[pair_ids[1]]
            dphi = abs((b.k_star.real - a.k_star.real) * x - (b.omega_star.real - a.omega_star.real) * t)
            if dphi >= _AIRY_SWITCH:
                return _pair_calibrated(a, b, t, x, params)
        return _local_airy(ext, t, x, params)
    partner = 6 if ext.kind == "min" else 5
    got = {s.index: s for s in find_complex_saddles(V, params)}
    if partner in got:
        sp_c = got[partner]
        g = sp_c.k_star - sp_c.omega_star / sp_c.V
        if 2.0 * x * g.imag >= _AIRY_SWITCH:
            return _decay_calibrated(sp_c, t, x, params)
    return _local_airy(ext, t, x, params)


# ---------------------------------------------------------------------------
# exchange pulse


def j_parameters(t: float, x: float, params: WaveguideParams) -> JParameters:
    """Stretched coordinates of the exchange pulse; b is NaN outside the wedge."""
    cp = crossing_point(params)
    inv_gap = 1.0 / cp.v_slow - 1.0 / cp.v_fast
    xi = params.c1 * params.c2 * cp.k_c * inv_gap / params.mu if params.mu > 0 else math.inf
    drift = (t - 0.5 * x * (1.0 / cp.v_fast + 1.0 / cp.v_slow)) / xi if params.mu > 0 else 0.0
    scale = x * params.mu / (2.0 * params.c1 * params.c2 * cp.k_c)
    b2 = (t - x / cp.v_fast) * (x / cp.v_slow - t)
    b = params.mu * math.sqrt(b2) / (params.c1 * params.c2 * cp.k_c * inv_gap) if b2 >= 0.0 else math.nan
    return JParameters(xi=xi, b=b, drift=drift, scale=scale)


def j_term(t: float, x: float, params: WaveguideParams) -> np.ndarray:
    """Exchange-pulse contribution inside the wedge x/v_fast <= t <= x/v_slow.

    -A(omega_c, k_c) e^{i (k_c x - omega_c t)} J0(b) / (4 Cn) with
    Cn = c1^2 c2^2 k_c^2 (1/v_slow - 1/v_fast); lives in component 2 for
    excitation (1, 0) since the crossing amplitude is (0, -mu).
    """
    if params.mu <= 0.0:
        raise OutsideWedge("no exchange pulse without interlayer coupling")
    jp = j_parameters(t, x, params)
    if not jp.inside:
        cp = crossing_point(params)
        raise OutsideWedge(f"(t={t:.6g}, x={x:.6g}) outside [{x/cp.v_fast:.6g}, {x/cp.v_slow:.6g}]")
    cp = crossing_point(params)
    c_norm = (params.c1 * params.c2) ** 2 * cp.k_c**2 * (1.0 / cp.v_slow - 1.0 / cp.v_fast)
    amp = amplitude_A(complex(cp.omega_c), complex(cp.k_c), params)
    carrier = np.exp(1j * (cp.k_c * x - cp.omega_c * t))
    return -amp * carrier * bessel_j0(jp.b) / (4.0 * c_norm)


def branch_near_crossing(omega, params: WaveguideParams, sheet: int = +1):
    """Two-scale expansion of k(omega) near the branch crossing.

    k_c + (mean slowness) w' +/- sqrt((half slowness gap)^2 w'^2
    + mu^2 / (4 c1^2 c2^2 k_c^2)), w' = omega - omega_c.  sheet=+1 is the
    upper (slow, branch-1-like) sheet.  Accurate to O(w'^2, mu^2) near the
    crossing only.
    """
    if sheet not in (+1, -1):
        raise ValueError("sheet must be +1 or -1")
    cp = crossing_point(params)
    wp = np.asarray(omega, dtype=complex) - cp.omega_c
    mean = 0.5 * (1.0 / cp.v_fast + 1.0 / cp.v_slow)
    half_gap = 0.5 * (1.0 / cp.v_slow - 1.0 / cp.v_fast)
    root = np.sqrt(half_gap**2 * wp**2 + params.mu**2 / (4.0 * (params.c1 * params.c2 * cp.k_c) ** 2))
    out = cp.k_c + mean * wp + sheet * root
    return out if out.ndim else complex(out)


# ---------------------------------------------------------------------------
# the cut-encircling special function


def _w_odd(tau):
    """Odd square root of 1 + tau^2 with the finite cut [-i, i]."""
    return tau * np.sqrt(1.0 + 1.0 / tau**2)


def _q_loop(z: float, rel_tol: float) -> complex:
    """Closed-loop realization (the beta = 0 case): i * int_0^2pi e^{i cos - z sin}."""
    n = 64
    prev = None
    while n <= (1 << 20):
        theta = _TWO_PI * np.arange(n) / n
        cur = 1j * (_TWO_PI / n) * np.sum(np.exp(1j * np.cos(theta) - z * np.sin(theta)))
        if prev is not None and abs(cur - prev) <= max(rel_tol * abs(cur), 1e-13):
            return complex(cur)
        prev = cur
        n *= 2
    raise NoConvergence("loop quadrature for the cut integral did not settle", achieved=abs(cur - prev))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)


def _gl_path(f, a: complex, b: complex, n_panels: int) -> complex:
    """64-point Gauss-Legendre on n_panels equal panels of the segment [a, b]."""
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    total = 0.0 + 0.0j
    d = b - a
    for lo, hi in zip(edges[:-1], edges[1:]):
        mid = a + d * 0.5 * (lo + hi)
        half = d * 0.5 * (hi - lo)
        tau = mid + half * _GL_NODES
        total += half * np.sum(_GL_WEIGHTS * f(tau))
    return total


def q_function(beta: float, z: float, rel_tol: float = 1e-9, max_doublings: int = 8) -> complex:
    """The contour special function int_Gamma (1+tau^2)^{-1/2} e^{i(beta tau^2 + z tau + sqrt(1+tau^2))} dtau.

    beta = 0 uses the closed loop around the cut [-i, i]; beta > 0 uses an
    open path entering along e^{i 5pi/4}, passing right of the cut through
    -0.7-1.5i, 0.7-1.5i, 0.7+1.5i, and exiting along e^{i pi/4} (both rays
    in decay sectors of e^{i beta tau^2}).  Step halving drives the result
    below rel_tol; beyond z^2/(8 beta) ~ 30 the integral is intrinsically
    ill-conditioned in double precision (NoConvergence reports it).
    """
    if beta < 0.0:
        raise ValueError("beta must be nonnegative")
    if beta == 0.0:
        return _q_loop(z, rel_tol)

    def f(tau):
        w = _w_odd(tau)
        return np.exp(1j * (beta * tau**2 + z * tau + w)) / w

    # ray length: beta R^2 - 0.71 (1+|z|) R >= 34 kills the tail below 1e-14
    cz = 0.71 * (1.0 + abs(z))
    R = (cz + math.sqrt(cz * cz + 4.0 * beta * 34.0)) / (2.0 * beta)
    a1 = complex(-0.7, -1.5)
    a2 = complex(0.7, -1.5)
    a3 = complex(0.7, 1.5)
    nodes = [a1 + R * np.exp(1j * 1.25 * math.pi), a1, a2, a3, a3 + R * np.exp(1j * 0.25 * math.pi)]

    def whole(mult: int) -> complex:
        total = 0.0 + 0.0j
        for p, q in zip(nodes[:-1], nodes[1:]):
            length = abs(q - p)
            rate = max(2.0 * beta * max(abs(p), abs(q)) + abs(z) + 1.0, 1.0)
            panels = mult * max(1, math.ceil(length * rate / 6.0))
            total += _gl_path(f, p, q, panels)
        return total

    prev = whole(1)
    mult = 2
    diff = math.inf
    for _ in range(max_doublings):
        cur = whole(mult)
        diff = abs(cur - prev)
        if diff <= max(rel_tol * abs(cur), 1e-13):
            return complex(cur)
        prev = cur
        mult *= 2
    raise NoConvergence(
        f"open-contour quadrature did not settle at beta={beta:.3g}, z={z:.3g}",
        achieved=diff,
    )


# ---------------------------------------------------------------------------
# assembly


def assemble_field(t: float, x: float, params: WaveguideParams, S: float = 3.0) -> FieldValue:
    """Evaluate the field at (t, x) from the zone classification.

    Sums the active asymptotic terms as u = 2 Re(sum); in zones without a
    usable simplification (B, and the quasi-intersection zone Q whose
    closed form is not wired in) the direct quadrature value is returned
    and flagged via used_oracle.
    """
    from . import zones as _zones
    from .oracle import field_modal_integral

    if x <= 0.0:
        raise ValueError("assemble_field needs x > 0")
    V = x / t if t > 0.0 else math.inf
    label, descriptors = _zones.classify(t, V, params, S)

    if label.primary == "zero":
        return FieldValue(u=np.zeros(2), zone=label, terms=[], used_oracle=False)

    if label.primary in ("B", "Q"):
        u = field_modal_integral(t, x, params)
        half = (u / 2.0).astype(complex)
        for d in descriptors:
            d.value = half if d.kind in ("B", "Q") else np.zeros(2, dtype=complex)
        return FieldValue(u=np.asarray(u, dtype=float), zone=label, terms=descriptors, used_oracle=True)

    reals = {s.index: s for s in find_real_saddles(V, params)}
    complexes = {s.index: s for s in find_complex_saddles(V, params)}
    total = np.zeros(2, dtype=complex)
    for d in descriptors:
        if d.kind == "SP":
            d.value = sum((sp_term(reals[i], t, x, params) for i in d.saddles), np.zeros(2, dtype=complex))
        elif d.kind == "SPe":
            d.value = sum((sp_term(complexes[i], t, x, params) for i in d.saddles), np.zeros(2, dtype=complex))
        elif d.kind == "Ai":
            d.value = airy_term(d.extremum, t, x, params)
        elif d.kind == "J":
            # J marks saddles riding the exchange pulse.  The pulse is not an
            # extra additive piece: the closed form j_term is the two-wave
            # (uniform) rewrite of the same near-crossing saddle content, so
            # adding it on top of the saddle terms double counts.  Evaluate
            # the members by steepest descent; j_term stays available as the
            # pulse envelope diagnostic.
            d.value = sum(
                (sp_term(reals[i], t, x, params) for i in d.saddles), np.zeros(2, dtype=complex)
            )
        else:
            raise ValueError(f"unexpected term kind {d.kind!r} in zone {label.primary!r}")
        total += d.value
    return FieldValue(u=2.0 * np.real(total), zone=label, terms=descriptors, used_oracle=False)
