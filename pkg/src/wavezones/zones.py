"""Zone classification of the (t, V) half plane.

A point is classified by which saddle-point domains of influence overlap
at (t, x = V t).  Overlapping families cluster (union-find over links);
each cluster is then read as a letter:

    B   every present family in one cluster, or an unrecognized pattern
        (includes all near-front and near-field points): no simplification,
        evaluate the integral directly;
    Q   crossing cluster {1,3} joined by one more branch-2 family;
    J   crossing cluster alone (families 1 and, when present, 3): the
        exchange pulse replaces their stationary-point terms;
    Ai  a merging pair at a group-velocity extremum, or the complex
        partner still close to its extremum;
    SP  / SPe: an isolated real / complex stationary point.

Links use the phase difference for adjacent real families, the pulse
argument b for the crossing pair, and the decay exponent for complex
saddles; all compared against the same dimensionless threshold S.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .asymptotics import TermDescriptor, j_parameters
from .dispersion import group_velocity_extrema
from .errors import ExtremumNotFound, UnknownLabel
from .model import WaveguideParams, crossing_point
from .saddle import find_complex_saddles, find_real_saddles, phase_difference

__all__ = [
    "ZoneLabel",
    "ScalarZoneLabel",
    "ZoneDiagram",
    "classify",
    "zone_diagram",
    "scalar_zone_classify",
    "parent_of",
]

_PRECEDENCE = ("B", "Q", "J", "Ai", "SP", "SPe")

_PARENT = {
    "SP": "Ai",
    "SPe": "Ai",
    "Ai": "Q",
    "Q": "B",
    "J": "B",
    "B": None,
    "far": "bessel",
    "near": "bessel",
    "bessel": None,
    "zero": None,
}


@dataclasses.dataclass(frozen=True)
class ZoneLabel:
    """Zone of one (t, V) point: dominant letter, full letter set, SP count."""

    primary: str
    letters: tuple[str, ...]
    sp_count: int
    parent: str | None


@dataclasses.dataclass(frozen=True)
class ScalarZoneLabel:
    """Zone of the single-layer reference diagram (far / bessel / near / zero)."""

    kind: str
    S: float


def parent_of(label: str) -> str | None:
    """Static parent map of the zone hierarchy (B and bessel are roots)."""
    try:
        return _PARENT[label]
    except KeyError:
        raise UnknownLabel(f"no such zone label: {label!r}") from None


class _UnionFind:
    def __init__(self, items):
        self._up = {i: i for i in items}

    def find(self, i):
        while self._up[i] != i:
            self._up[i] = self._up[self._up[i]]
            i = self._up[i]
        return i

    def union(self, a, b):
        self._up[self.find(a)] = self.find(b)

    def clusters(self):
        groups = {}
        for i in self._up:
            groups.setdefault(self.find(i), set()).add(i)
        return list(groups.values())


def classify(t: float, V: float, params: WaveguideParams, S: float = 3.0):
    """Classify the point (t, x = V t); returns (ZoneLabel, term descriptors).

    The descriptors carry structure only (kind, saddle families, extremum
    record); values are filled by asymptotics.assemble_field.
    """
    if S <= 0.0:
        raise ValueError("threshold S must be positive")
    if t <= 0.0 or V >= params.c1:
        return ZoneLabel("zero", (), 0, None), []
    x = V * t

    reals = {s.index: s for s in find_real_saddles(V, params)}
    complexes = {s.index: s for s in find_complex_saddles(V, params)}
    try:
        extrema = group_velocity_extrema(params)
    except ExtremumNotFound:
        extrema = ()
    ext_by_pair = {}
    for e in extrema:
        ext_by_pair[(3, 4) if e.kind == "min" else (2, 3)] = e

    if not reals:
        return ZoneLabel("zero", (), 0, None), []

    # crossing link: families 1 and 3 share the exchange-pulse region when
    # the point is strictly inside the wedge and the pulse argument is small
    cp = crossing_point(params)
    in_wedge = x / cp.v_fast < t < x / cp.v_slow
    crossing_linked = False
    if params.mu > 0.0 and in_wedge and 1 in reals:
        crossing_linked = j_parameters(t, x, params).b < S

    uf = _UnionFind(reals.keys())
    ordered = sorted(reals.values(), key=lambda s: s.omega_star.real)
    for a, b in zip(ordered[:-1], ordered[1:]):
        if {a.index, b.index} == {1, 3}:
            continue  # the crossing pair is linked by b, never by phase
        if phase_difference(a, b, t, x) < S:
            uf.union(a.index, b.index)
    if crossing_linked and 3 in reals:
        uf.union(1, 3)

    clusters = sorted(uf.clusters(), key=min)
    all_ids = set(reals.keys())

    # Airy pocket of each extremum, from the local cubic model: the merge
    # phase is (4/3)|s|^{3/2} with s the scaled Airy argument.  This metric
    # needs no saddles, so it still fires at V = v_e exactly, where the
    # double root defeats the saddle finder.
    pocket = {}
    for pair, e in ext_by_pair.items():
        s_abs = (x * x / abs(e.cubic_coeff)) ** (1.0 / 3.0) * abs(1.0 / V - 1.0 / e.v_e)
        pocket[pair] = (4.0 / 3.0) * s_abs**1.5 < S

    # pocket-active extrema whose pair collapsed (neither member resolved,
    # or a lone deduped double root) get their Airy node directly
    forced_ai: dict[int, object] = {}
    loose_ai: list[object] = []
    for pair, e in ext_by_pair.items():
        if not pocket[pair]:
            continue
        # only on the side of v_e where this extremum's pair leaves the real
        # axis; elsewhere a missing member is another transition's doing
        if e.kind == "min" and V > e.v_e:
            continue
        if e.kind == "max" and V < e.v_e:
            continue
        partner = 6 if e.kind == "min" else 5
        present = [i for i in pair if i in reals]
        if len(present) == 2 or partner in complexes:
            continue  # handled through clusters / complex branch below
        if present:
            forced_ai[present[0]] = e
        else:
            loose_ai.append(e)

    descriptors: list[TermDescriptor] = []
    letters: set[str] = set()
    bail_to_b = False

    for cl in clusters:
        ids = tuple(sorted(cl))
        if len(cl) >= 2 and cl == all_ids:
            bail_to_b = True
            break
        if len(cl) == 1:
            i = ids[0]
            if crossing_linked and i == 1:
                descriptors.append(TermDescriptor("J", saddles=(1,), note="crossing ghost"))
                letters.add("J")
            elif i in forced_ai:
                descriptors.append(TermDescriptor("Ai", saddles=ids, extremum=forced_ai[i], note="collapsed pair"))
                letters.add("Ai")
            else:
                descriptors.append(TermDescriptor("SP", saddles=ids))
                letters.add("SP")
        elif ids in ((1, 3),):
            descriptors.append(TermDescriptor("J", saddles=ids))
            letters.add("J")
        elif ids in ((1, 2, 3), (1, 3, 4)) and crossing_linked:
            descriptors.append(TermDescriptor("Q", saddles=ids))
            letters.add("Q")
        elif ids in ((2, 3), (3, 4)) and ids in ext_by_pair:
            descriptors.append(TermDescriptor("Ai", saddles=ids, extremum=ext_by_pair[ids]))
            letters.add("Ai")
        else:
            bail_to_b = True
            break

    for e in loose_ai:
        if not bail_to_b:
            descriptors.append(TermDescriptor("Ai", saddles=(), extremum=e, note="unresolved pair"))
            letters.add("Ai")

    if bail_to_b:
        label = ZoneLabel("B", ("B",), 0, _PARENT["B"])
        ids = tuple(sorted(all_ids)) + tuple(sorted(complexes))
        return label, [TermDescriptor("B", saddles=ids, note="no usable simplification")]

    # complex saddles: near their extremum they belong to the Airy
    # neighborhood, far from it they are exponentially small SPe terms
    for i, sc in sorted(complexes.items()):
        g = sc.k_star - sc.omega_star / sc.V
        decay = 2.0 * x * g.imag
        e = next((e for e in extrema if (6 if e.kind == "min" else 5) == i), None)
        if e is not None and decay < S:
            descriptors.append(TermDescriptor("Ai", saddles=(i,), extremum=e, note="shadow side"))
            letters.add("Ai")
        else:
            descriptors.append(TermDescriptor("SPe", saddles=(i,)))
            letters.add("SPe")

    if "Q" in letters:
        primary = "Q"
    else:
        primary = next(k for k in _PRECEDENCE if k in letters)
    ordered_letters = tuple(k for k in _PRECEDENCE if k in letters)
    sp_count = sum(len(d.saddles) for d in descriptors if d.kind in ("SP", "SPe"))
    return ZoneLabel(primary, ordered_letters, sp_count, _PARENT[primary]), descriptors


# ---------------------------------------------------------------------------
# diagrams


@dataclasses.dataclass
class ZoneDiagram:
    """Classified grid plus the label boundaries extracted per V row."""

    t_grid: np.ndarray
    v_grid: np.ndarray
    labels: list[list[str]]          # labels[i][j] at (v_grid[i], t_grid[j])
    boundaries: dict[tuple[str, str], list[tuple[float, float]]]
    monotone: bool                   # each boundary crossed at most once per row


def zone_diagram(params: WaveguideParams, t_range, v_range, shape=(60, 60), S: float = 3.0) -> ZoneDiagram:
    """Classify a (t, V) grid and locate zone boundaries along each V row.

    Boundary points are bisected to 1e-3 relative accuracy in t.  The
    monotone flag reports whether every (left,right) label transition
    occurs at most once per row, the structure the threshold metrics
    (all increasing in t at fixed V) imply.
    """
    nt, nv = shape
    t_lo, t_hi = t_range
    v_lo, v_hi = v_range
    if not (t_hi > t_lo > 0.0 and v_hi > v_lo > 0.0):
        raise ValueError("ranges must be positive and increasing")
    t_grid = np.linspace(t_lo, t_hi, nt)
    v_grid = np.linspace(v_lo, v_hi, nv)

    labels = []
    boundaries: dict[tuple[str, str], list[tuple[float, float]]] = {}
    monotone = True
    for V in v_grid:
        row = [classify(float(tt), float(V), params, S)[0].primary for tt in t_grid]
        labels.append(row)
        seen: set[tuple[str, str]] = set()
        for j in range(nt - 1):
            if row[j] == row[j + 1]:
                continue
            lo, hi = float(t_grid[j]), float(t_grid[j + 1])
            left = row[j]
            while (hi - lo) > 1e-3 * hi:
                mid = 0.5 * (lo + hi)
                if classify(mid, float(V), params, S)[0].primary == left:
                    lo = mid
                else:
                    hi = mid
            key = (row[j], row[j + 1])
            if key in seen:
                monotone = False
            seen.add(key)
            boundaries.setdefault(key, []).append((0.5 * (lo + hi), float(V)))
    for pts in boundaries.values():
        pts.sort(key=lambda p: p[1])
    return ZoneDiagram(t_grid=t_grid, v_grid=v_grid, labels=labels, boundaries=boundaries, monotone=monotone)


def scalar_zone_classify(t: float, x: float, c: float, Omega: float, S: float = 3.0) -> ScalarZoneLabel:
    """Single-layer diagram: far (z > S), near (z < 1/S), bessel between.

    z = Omega sqrt(t^2 - x^2/c^2); outside the cone the field is zero.
    """
    if S <= 0.0:
        raise ValueError("threshold S must be positive")
    if t <= 0.0 or abs(x) >= c * t:
        return ScalarZoneLabel("zero", S)
    z = Omega * math.sqrt(t * t - (x / c) ** 2)
    if z > S:
        return ScalarZoneLabel("far", S)
    if z < 1.0 / S:
        return ScalarZoneLabel("near", S)
    return ScalarZoneLabel("bessel", S)
