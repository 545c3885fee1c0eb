"""Branch structure of the dispersion relation D(omega, k) = 0.

For fixed omega, D is a quadratic in k^2,

    A4 k^4 - B k^2 + C = 0,
    A4 = c1^2 c2^2,
    B  = c1^2 (omega^2 - omega2^2) + c2^2 (omega^2 - omega1^2),
    C  = (omega^2 - omega1^2)(omega^2 - omega2^2) - mu^2,

so the four k-roots come in +/- pairs built from two k^2 roots.  For real
omega and mu > 0 the discriminant is a sum of two squares and never vanishes:
the two k^2 roots stay real and distinct (avoided crossing), which makes the
branch labels globally well defined on the real axis:

    branch 1: smaller k^2 root; cuts on at the upper cutoff, k ~ omega/c1;
    branch 2: larger  k^2 root; cuts on at the lower cutoff, k ~ omega/c2.

At mu = 0 the branches reduce to the uncoupled layers, branch j being
sqrt(omega^2 - omega_j^2)/c_j.

All omega-derivatives of k along a branch are evaluated from exact implicit
differentiation of D (no finite differences), up to third order; that is what
the saddle, Airy, and curvature machinery downstream consumes.
"""

from __future__ import annotations

import dataclasses
import functools
import math

import numpy as np

from .errors import (
    BranchPointProximity,
    BranchTrackingFailure,
    ExtremumNotFound,
    OverstrongCoupling,
)
from .model import WaveguideParams, crossing_point

__all__ = [
    "k_squared_roots",
    "roots_k",
    "branch_k",
    "group_velocity",
    "derivatives_at",
    "DispersionDerivatives",
    "cutoff_frequencies",
    "exchange_branch_points",
    "GroupVelocityExtremum",
    "group_velocity_extrema",
    "BranchFunction",
    "sample_diagram",
    "bisect_root",
]


def _pq_coeffs(omega, params: WaveguideParams):
    w2 = np.asarray(omega) ** 2
    A4 = (params.c1 * params.c2) ** 2
    B = params.c1**2 * (w2 - params.omega2**2) + params.c2**2 * (w2 - params.omega1**2)
    C = (w2 - params.omega1**2) * (w2 - params.omega2**2) - params.mu**2
    return A4, B, C


def k_squared_roots(omega, params: WaveguideParams):
    """Both k^2 roots at given omega, ordered by real part (small, large).

    Uses the Vieta product for the far root to avoid cancellation near the
    cutoffs where C ~ 0.  Accepts real or complex omega, scalar or array.
    """
    A4, B, C = _pq_coeffs(omega, params)
    B = np.asarray(B, dtype=complex)
    C = np.asarray(C, dtype=complex)
    disc = np.sqrt(B * B - 4.0 * A4 * C)
    # pick the sqrt aligned with B so B + disc never cancels
    disc = np.where(np.real(np.conj(B) * disc) >= 0.0, disc, -disc)
    r_far = (B + disc) / (2.0 * A4)
    safe = np.where(r_far == 0.0, 1.0, r_far)
    r_near = np.where(r_far == 0.0, B / (2.0 * A4), C / (A4 * safe))
    lo = np.where(np.real(r_near) <= np.real(r_far), r_near, r_far)
    hi = np.where(np.real(r_near) <= np.real(r_far), r_far, r_near)
    return lo, hi


def roots_k(omega, params: WaveguideParams):
    """All four k-roots of D(omega, .) = 0, grouped as (+k1, -k1, +k2, -k2).

    +k_j is the principal square root of the j-th k^2 root (nonnegative real
    part; nonnegative imaginary part on the negative real cut), so branch 1
    leads the group.
    """
    lo, hi = k_squared_roots(omega, params)
    k1 = np.sqrt(lo)
    k2 = np.sqrt(hi)
    return np.stack(np.broadcast_arrays(k1, -k1, k2, -k2))


def branch_k(branch: int, omega, params: WaveguideParams):
    """k(omega) on the labeled branch; complex below cutoff (evanescent).

    branch 1 is the upper curve (asymptote omega/c1), branch 2 the lower
    (asymptote omega/c2).  At mu = 0 the closed uncoupled forms are used, so
    branch j equals sqrt(omega^2 - omega_j^2)/c_j exactly.
    """
    if branch not in (1, 2):
        raise ValueError(f"branch must be 1 or 2, got {branch!r}")
    omega = np.asarray(omega)
    if params.mu == 0.0:
        Om = params.omega1 if branch == 1 else params.omega2
        c = params.c1 if branch == 1 else params.c2
        out = np.sqrt((omega.astype(complex)) ** 2 - Om**2) / c
    else:
        lo, hi = k_squared_roots(omega, params)
        out = np.sqrt(lo if branch == 1 else hi)
    return out if out.ndim else complex(out)


@dataclasses.dataclass(frozen=True)
class DispersionDerivatives:
    """Exact local data of D at a point (omega, k) on (or off) a branch.

    kp, kpp, kppp are d k/d omega and higher along the implicit branch
    through the point; vg = 1/kp is the group velocity.
    """

    P: complex
    Q: complex
    D: complex
    Dk: complex
    Dw: complex
    kp: complex
    kpp: complex
    kppp: complex
    vg: complex


def derivatives_at(omega, k, params: WaveguideParams) -> DispersionDerivatives:
    """Implicit derivatives of k(omega) at (omega, k), through third order.

    Vectorized: array inputs give array fields and never raise; scalar
    inputs raise :class:`BranchPointProximity` where d_k D degenerates
    (branch point or cutoff) and the implicit derivatives blow up.
    """
    c1s, c2s = params.c1**2, params.c2**2
    P = omega**2 - params.omega1**2 - c1s * k**2
    Q = omega**2 - params.omega2**2 - c2s * k**2
    D = P * Q - params.mu**2
    A4 = c1s * c2s
    Dk = -2.0 * k * (c1s * Q + c2s * P)
    Dw = 2.0 * omega * (P + Q)
    Dkk = -2.0 * (c1s * Q + c2s * P) + 8.0 * A4 * k**2
    Dww = 2.0 * (P + Q) + 8.0 * omega**2
    Dwk = -4.0 * omega * k * (c1s + c2s)
    Dwww = 24.0 * omega
    Dwwk = -4.0 * k * (c1s + c2s)
    Dwkk = -4.0 * omega * (c1s + c2s)
    Dkkk = 24.0 * A4 * k
    scalar = np.ndim(omega) == 0 and np.ndim(k) == 0
    if scalar and abs(Dk) == 0.0:
        raise BranchPointProximity(f"d_k D vanishes at omega={omega}, k={k}")
    with np.errstate(divide="ignore", invalid="ignore"):
        kp = -Dw / Dk
        kpp = -(Dww + 2.0 * Dwk * kp + Dkk * kp**2) / Dk
        kppp = -(
            Dwww
            + 3.0 * Dwwk * kp
            + 3.0 * Dwkk * kp**2
            + Dkkk * kp**3
            + 3.0 * kpp * (Dwk + Dkk * kp)
        ) / Dk
        vg = -Dk / Dw
    if scalar and not (np.isfinite(abs(kp)) and np.isfinite(abs(kpp)) and np.isfinite(abs(kppp))):
        raise BranchPointProximity(
            f"implicit derivatives degenerate at omega={omega}, k={k} (|Dk|={abs(Dk):.3e})"
        )
    return DispersionDerivatives(P=P, Q=Q, D=D, Dk=Dk, Dw=Dw, kp=kp, kpp=kpp, kppp=kppp, vg=vg)


def group_velocity(branch: int, omega, params: WaveguideParams):
    """d omega / d k on the labeled branch, real above the branch cutoff."""
    k = branch_k(branch, omega, params)
    d = derivatives_at(np.asarray(omega, dtype=complex), np.asarray(k, dtype=complex), params)
    vg = d.vg
    return vg if np.ndim(vg) else complex(vg)


def cutoff_frequencies(params: WaveguideParams):
    """The two k = 0 frequencies (lower, upper) of the coupled system.

    Roots of (w^2 - omega1^2)(w^2 - omega2^2) = mu^2; the coupling pushes
    them apart, below omega1 and above omega2.
    """
    s = params.omega1**2 + params.omega2**2
    d = params.omega2**2 - params.omega1**2
    disc = math.sqrt(d * d + 4.0 * params.mu**2)
    y_lo = 0.5 * (s - disc)
    y_hi = 0.5 * (s + disc)
    if y_lo <= 0.0:
        raise OverstrongCoupling("lower cutoff not real: mu >= omega1*omega2")
    return math.sqrt(y_lo), math.sqrt(y_hi)


def exchange_branch_points(params: WaveguideParams):
    """Complex omega where the two k^2 roots coincide (D = d_k D = 0, k != 0).

    Closed form: omega^2 = omega_c^2 +/- 2i c1 c2 mu / (c1^2 - c2^2), four
    points counting both omega signs, in conjugate pairs off the real axis.
    Empty for mu = 0.  The k = 0 cutoff degeneracies are not included.
    """
    if params.mu == 0.0:
        return []
    cp = crossing_point(params)
    gamma = 2.0 * params.c1 * params.c2 * params.mu / (params.c1**2 - params.c2**2)
    pts = []
    for sgn_im in (+1.0, -1.0):
        w = np.sqrt(complex(cp.omega_c**2, sgn_im * gamma))
        pts.extend([w, -w])
    pts.sort(key=lambda w: (round(w.real, 12), round(w.imag, 12)))
    return pts


def bisect_root(fn, lo: float, hi: float, xtol: float = 1e-13, max_iter: int = 200) -> float:
    """Plain bisection for a sign change of fn on [lo, hi].

    Deterministic and derivative-free; xtol is absolute in the argument.
    """
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo < xtol:
            return mid
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# group-velocity extrema


@dataclasses.dataclass(frozen=True)
class GroupVelocityExtremum:
    """Interior extremum of the group velocity along one branch.

    :param omega_e: frequency of the extremum.
    :param k_e: wavenumber on the branch there.
    :param v_e: extremal group velocity.
    :param kind: "max" or "min".
    :param branch: branch label carrying the extremum.
    :param cubic_coeff: -k'''(omega_e)/2, the curvature coefficient of the
        phase difference that controls the Airy transition at the extremum
        (negative at a velocity maximum, positive at a minimum).
    """

    omega_e: float
    k_e: float
    v_e: float
    kind: str
    branch: int
    cubic_coeff: float


def _kpp_on_branch(branch: int, omega, params: WaveguideParams):
    k = branch_k(branch, omega, params)
    return derivatives_at(np.asarray(omega, dtype=complex), np.asarray(k, dtype=complex), params).kpp


@functools.lru_cache(maxsize=128)
@functools.lru_cache(maxsize=64)
def group_velocity_extrema(params: WaveguideParams):
    """Locate all group-velocity extrema of both branches near the crossing.

    Scans k''(omega) for sign changes on a window spanning the avoided
    crossing (from just above the upper cutoff to 1.5 omega_c, 2001 points
    per branch) and polishes each by bisection to ~1e-12.  Returns a tuple
    sorted by omega_e; raises :class:`ExtremumNotFound` when there are none
    (e.g. mu = 0).
    """
    cp = crossing_point(params)
    _, w_hi_cut = cutoff_frequencies(params)
    lo = max(w_hi_cut * (1.0 + 1e-9), 0.5 * cp.omega_c)
    hi = 1.5 * cp.omega_c
    found = []
    for branch in (1, 2):
        grid = np.linspace(lo, hi, 2001)
        kpp = np.real(_kpp_on_branch(branch, grid, params))
        sign = np.sign(kpp)
        flips = np.nonzero(sign[:-1] * sign[1:] < 0.0)[0]
        for i in flips:
            f = lambda w: float(np.real(_kpp_on_branch(branch, w, params)))
            w_e = bisect_root(f, float(grid[i]), float(grid[i + 1]), xtol=1e-12)
            k_e = branch_k(branch, w_e, params)
            d = derivatives_at(complex(w_e), k_e, params)
            coeff = -0.5 * float(np.real(d.kppp))
            found.append(
                GroupVelocityExtremum(
                    omega_e=w_e,
                    k_e=float(np.real(k_e)),
                    v_e=float(np.real(d.vg)),
                    kind="min" if coeff > 0.0 else "max",
                    branch=branch,
                    cubic_coeff=coeff,
                )
            )
    if not found:
        raise ExtremumNotFound(
            f"no group-velocity extremum on either branch in [{lo:.6g}, {hi:.6g}]"
        )
    found.sort(key=lambda e: e.omega_e)
    return tuple(found)


# ---------------------------------------------------------------------------
# branch continuation off the real axis


class BranchFunction:
    """Track one k^2 root of D along a path of complex omega.

    The real-axis labels extend off-axis by continuity, not by any global
    ordering; this helper follows the nearest root step by step, halving the
    step whenever the two roots get close enough to make "nearest" ambiguous.

    :param branch: real-axis label (1 or 2) used to seed the anchor.
    :param params: waveguide constants.
    :param anchor_omega: real frequency above the upper cutoff at which the
        label is taken from the k^2 ordering; default 2 * omega_c.
    """

    #: relative closeness of the competing root that triggers step halving
    AMBIGUITY = 0.35
    #: total step-halvings allowed per call
    MAX_DEPTH = 512

    def __init__(self, branch: int, params: WaveguideParams, anchor_omega: float | None = None):
        if anchor_omega is None:
            anchor_omega = 2.0 * crossing_point(params).omega_c
        self.branch = branch
        self.params = params
        self._omega = complex(anchor_omega)
        lo, hi = k_squared_roots(self._omega, params)
        self._k2 = complex(lo if branch == 1 else hi)

    def __call__(self, omega: complex) -> complex:
        """k at omega on the tracked branch (principal sqrt of the k^2 root)."""
        target = complex(omega)
        k2 = self._k2
        stack = [(self._omega, target)]
        halvings = 0
        while stack:
            a, b = stack.pop()
            lo, hi = k_squared_roots(b, self.params)
            cand = (complex(lo), complex(hi))
            d0 = abs(cand[0] - k2)
            d1 = abs(cand[1] - k2)
            if d0 <= d1:
                sel, d_sel, d_other = cand[0], d0, d1
            else:
                sel, d_sel, d_other = cand[1], d1, d0
            # ambiguous when the step lands nearly midway between the roots
            if d_sel > self.AMBIGUITY * d_other:
                halvings += 1
                if halvings > self.MAX_DEPTH or abs(b - a) < 1e-14 * (1.0 + abs(b)):
                    raise BranchTrackingFailure(
                        f"cannot disambiguate roots near omega={b:.6g} (tracked from {a:.6g})"
                    )
                mid = 0.5 * (a + b)
                stack.append((mid, b))
                stack.append((a, mid))
                continue
            k2 = sel
        self._omega, self._k2 = target, k2
        return np.sqrt(complex(k2))


def sample_diagram(params: WaveguideParams, omega_min: float, omega_max: float, num: int):
    """Tabulate both branches on a frequency grid.

    Returns a structured array with fields omega, k1, k2, vg1, vg2; entries
    are NaN where a branch is evanescent (below its cutoff).
    """
    if not (omega_max > omega_min > 0.0) or num < 2:
        raise ValueError("need 0 < omega_min < omega_max and num >= 2")
    grid = np.linspace(omega_min, omega_max, num)
    out = np.zeros(num, dtype=[(n, float) for n in ("omega", "k1", "k2", "vg1", "vg2")])
    out["omega"] = grid
    for branch in (1, 2):
        k = np.atleast_1d(branch_k(branch, grid, params))
        propagating = np.abs(k.imag) <= 1e-9 * (1.0 + np.abs(k.real))
        d = derivatives_at(grid.astype(complex), k, params)
        vg = np.real(d.vg)
        out[f"k{branch}"] = np.where(propagating, k.real, np.nan)
        out[f"vg{branch}"] = np.where(propagating, vg, np.nan)
    return out
