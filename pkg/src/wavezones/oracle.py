"""Reference evaluations no asymptotics: direct quadrature of the inversion integral.

The displacement is recovered from the shifted-line modal integral

    u(t, x) = 2 Re [ (i / 2 pi) * Integral_0^inf  sum_j A(w, k_j) / d_k D * e^{i (k_j x - w t)} dw ],

where the sum runs over the two k-roots with positive imaginary part and the
line is raised to Im w = eps > 0.  That shift is an exact contour deformation
(the integrand has no singularities above the real axis and conjugate
symmetry makes the half-line rewrite exact), so eps is a numerical knob:

  * interior points use a small eps (large eps would inflate e^{-i w t});
  * silent points (t <= 0 or x >= c1 t) use a large eps, which multiplies
    the whole integrand by e^{eps (t - x / v)} << 1 and lets causality and
    the supersonic silence emerge to near machine level.

Refinement is by doubling the sample density and comparing trapezoid sums
(Richardson estimate), reported through :class:`NoConvergence` on failure.

The module also carries the scalar one-layer references and the direct loop
quadrature of the exchange-pulse integral, used as oracles in the tests.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .dispersion import k_squared_roots
from .errors import NoConvergence, OutsideFarZone, OutsideWedge
from .model import WaveguideParams, crossing_point
from .special import bessel_j0

__all__ = [
    "QuadratureControls",
    "field_modal_integral",
    "scalar_kg_exact",
    "scalar_kg_far",
    "j_int_quadrature",
]


@dataclasses.dataclass
class QuadratureControls:
    """Tuning knobs of the modal quadrature.

    :param epsilon: contour height Im w; None picks the (t, x)-adaptive rule.
    :param omega_max: truncation frequency; None gives 50 * omega_c.
    :param points_per_unit: base sample density on the outer panel; None
        scales with the phase rate x/c2 + t.  The cutoff panel [0, w_split]
        is always sampled 4x denser.
    :param max_refinement: density doublings attempted before giving up.
    :param tol: relative Richardson target.
    :param abs_floor: absolute convergence floor (silent-zone values).
    :param chunk: maximum samples evaluated at once (memory bound).
    """

    epsilon: float | None = None
    omega_max: float | None = None
    points_per_unit: float | None = None
    max_refinement: int = 3
    tol: float = 3e-4
    abs_floor: float = 1e-8
    chunk: int = 400_000


def _auto_epsilon(t: float, x: float, c1: float) -> float:
    slack = x / c1 - t
    if t > 0.0 and slack < 0.0:
        return min(1e-3, 0.25 / max(t, 1.0))
    # silent region: push the contour up until e^{-eps * slack} is negligible
    if t <= 0.0:
        slack = abs(t) + x / c1
    return min(10.0, 30.0 / max(slack, 3.0))


def _sqrt_upper(r):
    s = np.sqrt(r)
    return np.where(s.imag < 0.0, -s, s)


def _modal_sum(omega, x, params: WaveguideParams):
    """sum over the two Im k > 0 roots of A / d_k D * e^{i k x}, shape (2, n)."""
    lo, hi = k_squared_roots(omega, params)
    c1s, c2s = params.c1**2, params.c2**2
    out = None
    for r in (lo, hi):
        k = _sqrt_upper(r)
        P = omega**2 - params.omega1**2 - c1s * k**2
        Q = omega**2 - params.omega2**2 - c2s * k**2
        Dk = -2.0 * k * (c1s * Q + c2s * P)
        phase = np.exp(1j * k * x)
        a1 = (Q * params.f1 - params.mu * params.f2) / Dk * phase
        a2 = (P * params.f2 - params.mu * params.f1) / Dk * phase
        term = np.stack([a1, a2])
        out = term if out is None else out + term
    return out


def _tail_correction(w_end, t, x, params: WaveguideParams):
    """Leading integration-by-parts tail of the truncated modal integral.

    integral_L^inf a e^{i phi} dw ~ i a(L) e^{i phi(L)} / phi'(L) per root,
    which removes the O(1/(L tau)) truncation error.  Roots whose phase is
    nearly stationary at the truncation point are skipped (the correction
    would be invalid there; refinement reporting covers that case).
    """
    lo, hi = k_squared_roots(w_end, params)
    c1s, c2s = params.c1**2, params.c2**2
    tail = np.zeros(2, dtype=complex)
    for r in (lo, hi):
        k = complex(_sqrt_upper(r))
        P = w_end**2 - params.omega1**2 - c1s * k**2
        Q = w_end**2 - params.omega2**2 - c2s * k**2
        Dk = -2.0 * k * (c1s * Q + c2s * P)
        Dw = 2.0 * w_end * (P + Q)
        rate = (-Dw / Dk) * x - t
        if abs(rate) < 0.1:
            continue
        f = np.array([Q * params.f1 - params.mu * params.f2, P * params.f2 - params.mu * params.f1], dtype=complex)
        tail += 1j * f / Dk * np.exp(1j * (k * x - w_end * t)) / rate
    return tail


def _panel_sum(t, x, lo, hi, n, eps, params, chunk):
    """Trapezoid of the modal integrand over [lo, hi] with n+1 samples."""
    h = (hi - lo) / n
    total = np.zeros(2, dtype=complex)
    for start in range(0, n + 1, chunk):
        stop = min(start + chunk, n + 1)
        xi = lo + h * np.arange(start, stop)
        w = xi + 1j * eps
        vals = _modal_sum(w, x, params) * np.exp(-1j * w * t)
        wgt = np.ones(stop - start)
        if start == 0:
            wgt[0] = 0.5
        if stop == n + 1:
            wgt[-1] = 0.5
        total += vals @ wgt
    return total * h


def field_modal_integral(t: float, x: float, params: WaveguideParams, controls: QuadratureControls | None = None, return_info: bool = False):
    """Displacement pair u(t, x) by direct quadrature (the numeric oracle).

    Returns a real length-2 array; with return_info=True also a dict holding
    the contour height, truncation, density, and Richardson estimate.
    Raises :class:`NoConvergence` when doubling the density never brings the
    Richardson estimate under tolerance.
    """
    if x < 0.0:
        raise ValueError("field is evaluated for x >= 0 (it is even in x)")
    c = controls or QuadratureControls()
    cp = crossing_point(params)
    eps = c.epsilon if c.epsilon is not None else _auto_epsilon(t, x, params.c1)
    w_split = max(8.0, 1.2 * cp.omega_c)
    w_max = c.omega_max if c.omega_max is not None else max(50.0 * cp.omega_c, w_split + 20.0)
    ppu = c.points_per_unit
    if ppu is None:
        ppu = max(600.0, 3.0 * (x / params.c2 + abs(t)))

    tail = _tail_correction(w_max + 1j * eps, t, x, params)

    def evaluate(density):
        n1 = max(64, int(4.0 * density * w_split))
        n2 = max(64, int(density * (w_max - w_split)))
        inner = _panel_sum(t, x, 0.0, w_split, n1, eps, params, c.chunk)
        outer = _panel_sum(t, x, w_split, w_max, n2, eps, params, c.chunk)
        raw = (inner + outer + tail) * (1j / (2.0 * math.pi))
        return 2.0 * np.real(raw)

    prev = evaluate(ppu)
    est = math.inf
    for _ in range(c.max_refinement):
        ppu *= 2.0
        cur = evaluate(ppu)
        est = float(np.max(np.abs(cur - prev))) / 3.0
        scale = float(np.max(np.abs(cur)))
        if est <= max(c.tol * scale, c.abs_floor):
            if return_info:
                return cur, {"epsilon": eps, "omega_max": w_max, "points_per_unit": ppu, "richardson": est}
            return cur
        prev = cur
    raise NoConvergence(
        f"modal quadrature not converged at t={t:.6g}, x={x:.6g} (density {ppu:.0f}/unit)",
        achieved=est,
    )


# ---------------------------------------------------------------------------
# scalar one-layer references


def scalar_kg_exact(t: float, x: float, c: float, Omega: float) -> float:
    """Impulse response of a single layer: -J0(Omega sqrt(t^2 - x^2/c^2))/(2c).

    Zero outside the cone |x| >= c t (and for t <= 0).
    """
    if t <= 0.0 or abs(x) >= c * t:
        return 0.0
    z = Omega * math.sqrt(t * t - (x / c) ** 2)
    return -bessel_j0(z) / (2.0 * c)


def scalar_kg_far(t: float, x: float, c: float, Omega: float, S: float = 3.0) -> float:
    """Large-argument form -cos(z - pi/4) / (c sqrt(2 pi z)), z = Omega tau.

    Valid in the far zone z > S; raises :class:`OutsideFarZone` elsewhere.
    """
    if t <= 0.0 or abs(x) >= c * t:
        raise OutsideFarZone("outside the propagation cone")
    z = Omega * math.sqrt(t * t - (x / c) ** 2)
    if z <= S:
        raise OutsideFarZone(f"phase argument z={z:.3g} not beyond S={S:.3g}")
    return -math.cos(z - 0.25 * math.pi) / (c * math.sqrt(2.0 * math.pi * z))


# ---------------------------------------------------------------------------
# exchange pulse by direct loop quadrature


def j_int_quadrature(t: float, x: float, params: WaveguideParams, controls: QuadratureControls | None = None):
    """Exchange-pulse contribution by quadrature of its loop integral.

    The closed-form term (Bessel J0) must agree with this to high accuracy;
    the loop is parametrized as tau = i sin(theta), where the integrand
    becomes i exp(P sin(theta) + i Q cos(theta)) and the periodic trapezoid
    converges geometrically.  Accuracy degrades once |P| is large enough
    that e^{|P|} swamps double precision; keep |P| moderate (< ~20).
    Only controls.tol and controls.max_refinement are consulted here; the
    trapezoid starts at 64 nodes, so the refinement depth is floored at 10.
    """
    rel_tol = 1e-10 if controls is None else controls.tol
    n_max = 64 << (10 if controls is None else max(10, controls.max_refinement))
    cp = crossing_point(params)
    if not (x / cp.v_fast <= t <= x / cp.v_slow):
        raise OutsideWedge(f"(t={t:.6g}, x={x:.6g}) outside [{x/cp.v_fast:.6g}, {x/cp.v_slow:.6g}]")
    mu = params.mu
    if mu == 0.0:
        return np.zeros(2, dtype=complex)
    xi = params.c1 * params.c2 * cp.k_c * (1.0 / cp.v_slow - 1.0 / cp.v_fast) / mu
    P = (t - 0.5 * x * (1.0 / cp.v_fast + 1.0 / cp.v_slow)) / xi
    Qc = x * mu / (2.0 * params.c1 * params.c2 * cp.k_c)
    amp = np.array([-mu * params.f2, -mu * params.f1], dtype=complex)
    c_norm = (params.c1 * params.c2) ** 2 * cp.k_c**2 * (1.0 / cp.v_slow - 1.0 / cp.v_fast)
    pref = 1j * amp * np.exp(1j * (cp.k_c * x - cp.omega_c * t)) / (8.0 * math.pi * c_norm)

    def loop(n):
        theta = 2.0 * math.pi * np.arange(n) / n
        f = np.exp(P * np.sin(theta) + 1j * Qc * np.cos(theta))
        return 1j * (2.0 * math.pi / n) * np.sum(f)

    n = 64
    prev = loop(n)
    while n < n_max:
        n *= 2
        cur = loop(n)
        if abs(cur - prev) <= rel_tol * max(abs(cur), 1e-300):
            return pref * cur
        prev = cur
    raise NoConvergence(
        f"exchange-pulse loop quadrature not converged (|P|={abs(P):.3g})",
        achieved=abs(cur - prev) / max(abs(cur), 1e-300),
    )
