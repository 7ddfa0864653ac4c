"""Lifting circle divisions to higher-dimensional spheres.

A verified division of S^{d-3} by rotations a_1, ..., a_r lifts to a division
of S^{d-1}: act on the last two coordinates by powers of the order-r circle
rotation b, take B the arc of 1/r of a turn, and use the piece C = A' u B'
where A' = A x {(0,0)} is a null set and B' collects the points whose last two
coordinates, normalized, land in B.  Iterating from circle arc divisions gives
explicit measurable divisions of S^3, S^5, ...; a placeholder lower descriptor
stands in for a lower division that exists abstractly but has no evaluable
membership (its null part is reported as such).

Membership on the bulk is decided by the angle of the last two coordinates,
kept as an exact rational turn in polar form so the decisive arc tests never
round; only the lower-sphere direction is floating, and it never influences
the piece when the circle block is nonzero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .circle import ArcSet, verify_arcset

BOUNDARY_MARGIN = 1e-7
MEMBERSHIP_MARGIN = 1e-9
ANGLE_DENOMINATOR_SCALE = 10 ** 6


@dataclass
class BaseCircleDivision:
    """Arc division of the circle: translates of the arcs by the given rational
    turns partition [0, 1).  Verified exactly on construction unless ``verify``
    is disabled (for exercising the failure-reporting paths); lifting always
    re-verifies."""

    turns: tuple[Fraction, ...]
    arcs: ArcSet
    verify: bool = True

    def __post_init__(self):
        self.turns = tuple(Fraction(t) % 1 for t in self.turns)
        if self.verify and not verify_arcset(list(self.turns), self.arcs):
            raise ValueError("arc translates do not partition the circle")

    @property
    def r(self) -> int:
        return len(self.turns)

    @property
    def dimension(self) -> int:
        return 2

    def to_json(self) -> dict:
        return {"kind": "circle", "turns": [f"{t.numerator}/{t.denominator}" for t in self.turns],
                "arcs": self.arcs.to_json()}


@dataclass
class PlaceholderDivision:
    """Stands in for an abstract division of S^{dimension-1} whose pieces have
    no evaluable membership; every query returns the null-set flag."""

    dimension: int
    r: int

    def to_json(self) -> dict:
        return {"kind": "placeholder", "dimension": self.dimension, "r": self.r}


@dataclass
class LiftedDivision:
    lower: "DivisionDescriptor"
    r: int
    dimension: int

    def to_json(self) -> dict:
        return {"kind": "lifted", "dimension": self.dimension, "r": self.r,
                "lower": self.lower.to_json()}


DivisionDescriptor = BaseCircleDivision | PlaceholderDivision | LiftedDivision


def descriptor_from_json(data: dict) -> DivisionDescriptor:
    kind = data.get("kind")
    if kind == "circle":
        return BaseCircleDivision(tuple(Fraction(t) for t in data["turns"]),
                                  ArcSet.from_json(data["arcs"]))
    if kind == "placeholder":
        return PlaceholderDivision(dimension=data["dimension"], r=data["r"])
    if kind == "lifted":
        return LiftedDivision(lower=descriptor_from_json(data["lower"]),
                              r=data["r"], dimension=data["dimension"])
    raise ValueError(f"unknown descriptor kind {kind!r}")


@dataclass
class LiftedRotationTuple:
    """Block description of the lifted rotations: the i-th rotation acts by the
    lower tuple's i-th rotation on the first d-2 coordinates and by i/r of a
    turn on the last two."""

    r: int
    dimension: int
    lower: "DivisionDescriptor"

    def circle_turn(self, i: int) -> Fraction:
        return Fraction(i % self.r, self.r)

    def lower_float_matrices(self) -> list[np.ndarray]:
        return _lower_float_matrices(self.lower)

    def float_matrices(self) -> list[np.ndarray]:
        lowers = self.lower_float_matrices()
        out = []
        for i in range(1, self.r + 1):
            m = np.zeros((self.dimension, self.dimension))
            m[:-2, :-2] = lowers[i - 1]
            ang = 2.0 * math.pi * float(self.circle_turn(i))
            m[-2:, -2:] = [[math.cos(ang), -math.sin(ang)],
                           [math.sin(ang), math.cos(ang)]]
            out.append(m)
        return out


def _rotation_2x2(turn: Fraction) -> np.ndarray:
    ang = 2.0 * math.pi * float(turn)
    return np.array([[math.cos(ang), -math.sin(ang)],
                     [math.sin(ang), math.cos(ang)]])


def _lower_float_matrices(desc: DivisionDescriptor) -> list[np.ndarray]:
    if isinstance(desc, BaseCircleDivision):
        return [_rotation_2x2(t) for t in desc.turns]
    if isinstance(desc, LiftedDivision):
        return LiftedRotationTuple(desc.r, desc.dimension, desc.lower).float_matrices()
    raise ValueError("a placeholder division has no concrete rotations")


def lift(lower: DivisionDescriptor, r: int) -> tuple[LiftedDivision, LiftedRotationTuple]:
    """Lift a verified division two dimensions up with block rotations.

    The lower descriptor must carry exactly r pieces; BaseCircleDivision
    re-verifies its arc partition on construction, lifted descriptors were
    verified when built, and placeholders are accepted as declared.
    """
    if lower.r != r:
        raise ValueError(f"lower division has {lower.r} pieces, lift asked for {r}")
    if isinstance(lower, BaseCircleDivision) and not verify_arcset(list(lower.turns), lower.arcs):
        raise ValueError("lower circle division failed verification")
    lifted = LiftedDivision(lower=lower, r=r, dimension=lower.dimension + 2)
    return lifted, LiftedRotationTuple(r=r, dimension=lifted.dimension, lower=lower)


def lift_from_circle(turns, arcs: ArcSet, target_dimension: int):
    """Chain of lifts from a circle division up to the target dimension (even,
    >= 4); returns (descriptor, rotation description)."""
    if target_dimension < 4 or target_dimension % 2:
        raise ValueError("lifting a circle division reaches even dimensions >= 4")
    desc: DivisionDescriptor = BaseCircleDivision(tuple(Fraction(t) for t in turns), arcs)
    rot = None
    while desc.dimension < target_dimension:
        desc, rot = lift(desc, desc.r)
    return desc, rot


# -- membership ---------------------------------------------------------------


def membership_angle(desc: BaseCircleDivision, angle: Fraction) -> int | None:
    """Piece index i in [r] with angle - t_i inside the arcs; exact."""
    hits = [i + 1 for i, t in enumerate(desc.turns) if desc.arcs.contains(Fraction(angle) - t)]
    if len(hits) == 1:
        return hits[0]
    return None


def _circle_piece(turn_angle: Fraction, r: int) -> int:
    """Unique i in [r] with angle - i/r in [0, 1/r); exact on rational turns."""
    k = math.floor((Fraction(turn_angle) % 1) * r)
    return r if k == 0 else k


def membership(desc: DivisionDescriptor, point, margin: float = MEMBERSHIP_MARGIN):
    """Piece index of a point, or None for the null-set / boundary flag.

    Accepts Cartesian coordinates (floats, unit norm within 1e-9), an exact
    rational turn for circle descriptors, or (angle, lower_direction) pairs
    for lifted descriptors with an exact rational angle.
    """
    if isinstance(desc, PlaceholderDivision):
        return None
    if isinstance(desc, BaseCircleDivision):
        if isinstance(point, (Fraction, int)):
            return membership_angle(desc, Fraction(point))
        x, y = float(point[0]), float(point[1])
        _require_unit(x * x + y * y)
        turn = Fraction(math.atan2(y, x) / (2.0 * math.pi)) % 1
        if _near_arc_boundary(desc, turn, margin):
            return None
        return membership_angle(desc, turn)
    if isinstance(point, tuple) and len(point) == 2 and isinstance(point[0], (Fraction, int)):
        angle, lower_dir = point
        return _circle_piece(Fraction(angle), desc.r)
    coords = [float(c) for c in point]
    if len(coords) != desc.dimension:
        raise ValueError("point dimension mismatch")
    _require_unit(sum(c * c for c in coords))
    y = coords[-2:]
    y_norm = math.hypot(*y)
    if y_norm > margin:
        turn = Fraction(math.atan2(y[1], y[0]) / (2.0 * math.pi)) % 1
        if _near_cell_boundary(turn, desc.r, margin):
            return None
        return _circle_piece(turn, desc.r)
    x = coords[:-2]
    x_norm = math.sqrt(sum(c * c for c in x))
    if x_norm < margin:
        raise ValueError("point is off the sphere")
    return membership(desc.lower, [c / x_norm for c in x], margin)


def _require_unit(norm_sq: float) -> None:
    if abs(norm_sq - 1.0) > 1e-9:
        raise ValueError(f"point is off the sphere (|x|^2 = {norm_sq})")


def _near_arc_boundary(desc: BaseCircleDivision, turn: Fraction, margin: float) -> bool:
    ends = [e for t in desc.turns for arc in desc.arcs.translate(t).arcs for e in arc]
    x = float(turn)
    return any(min(abs(x - float(e)), 1.0 - abs(x - float(e))) < margin for e in ends)


def _near_cell_boundary(turn: Fraction, r: int, margin: float) -> bool:
    x = float(turn) * r
    frac = x - math.floor(x)
    return min(frac, 1.0 - frac) < margin * r


# -- randomized partition verification -----------------------------------------


@dataclass
class PartitionReport:
    samples_requested: int
    retained: int
    violations: list = field(default_factory=list)
    piece_counts: list[int] = field(default_factory=list)
    seed: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"samples_requested": self.samples_requested, "retained": self.retained,
                "violations": self.violations[:20],
                "violation_count": len(self.violations),
                "piece_counts": self.piece_counts, "seed": self.seed}


def verify_partition(desc: DivisionDescriptor, samples: int, seed: int = 0) -> PartitionReport:
    """Sample sphere points and check each lies in exactly one translated piece.

    The circle coordinate is drawn as a uniform rational with denominator
    10^6 * r so the decisive arc tests are exact; points too close to a piece
    boundary (margin 1e-7 of a turn) or with circle block below the margin are
    rejected, matching the null set the construction ignores.
    """
    rng = np.random.default_rng(seed)
    if isinstance(desc, PlaceholderDivision):
        raise ValueError("placeholder divisions have no evaluable membership")
    if isinstance(desc, BaseCircleDivision):
        return _verify_base(desc, samples, rng, seed)
    return _verify_lifted(desc, samples, rng, seed)


def _verify_base(desc: BaseCircleDivision, samples: int, rng, seed: int) -> PartitionReport:
    r = desc.r
    denom = ANGLE_DENOMINATOR_SCALE * r
    margin = Fraction(1, 10 ** 7)
    ends = sorted({(Fraction(e) + t) % 1
                   for t in desc.turns for arc in desc.arcs.arcs for e in arc})
    counts = [0] * r
    violations = []
    retained = 0
    ks = rng.integers(0, denom, size=samples)
    for k in ks:
        angle = Fraction(int(k), denom)
        if any(_circ_dist(angle, e) < margin for e in ends):
            continue
        retained += 1
        hits = [i + 1 for i, t in enumerate(desc.turns)
                if desc.arcs.contains(angle - t)]
        if len(hits) != 1:
            violations.append({"angle": str(angle), "pieces": hits})
        else:
            counts[hits[0] - 1] += 1
    return PartitionReport(samples_requested=samples, retained=retained,
                           violations=violations, piece_counts=counts, seed=seed)


def _verify_lifted(desc: LiftedDivision, samples: int, rng, seed: int) -> PartitionReport:
    r = desc.r
    d = desc.dimension
    denom = ANGLE_DENOMINATOR_SCALE * r
    cell = ANGLE_DENOMINATOR_SCALE  # integer width of one 1/r-turn cell
    margin_units = 10 ** -7 * denom
    counts = [0] * r
    violations = []
    retained = 0
    gauss = rng.normal(size=(samples, d))
    ks = rng.integers(0, denom, size=samples)
    for row, k in zip(gauss, ks):
        norm = float(np.linalg.norm(row))
        if norm < 1e-12:
            continue
        y_norm = math.hypot(row[-2], row[-1]) / norm
        if y_norm < BOUNDARY_MARGIN:
            continue
        k = int(k)
        dist_to_cut = min(k % cell, cell - (k % cell))
        if dist_to_cut < margin_units:
            continue
        retained += 1
        # g_i^{-1} shifts the circle angle by -i/r: membership in the piece C
        # holds iff the shifted angle lies in the base cell [0, 1/r).
        hits = [i for i in range(1, r + 1) if (k - i * cell) % denom < cell]
        if len(hits) != 1:
            violations.append({"angle": f"{k}/{denom}", "pieces": hits})
        else:
            counts[hits[0] - 1] += 1
    return PartitionReport(samples_requested=samples, retained=retained,
                           violations=violations, piece_counts=counts, seed=seed)


def _circ_dist(a: Fraction, b: Fraction) -> Fraction:
    d = (a - b) % 1
    return min(d, 1 - d)
