"""Determinant certificates against fractional divisions, degree by degree.

For a rotation tuple (g_1, ..., g_r) and harmonic degree n, form the N_n x N_n
matrix L_ij = (1/N_n) sum_s P_n(v_i . (g_s v_j)) over a rational zonal basis
v_1, ..., v_{N_n}.  A nonzero exact determinant certifies that every
square-integrable f with sum_i g_i.f = 1 a.e. has vanishing degree-n harmonic
component.  A zero determinant yields an explicit witness: a kernel vector c
gives F = sum_j c_j P_n(v_j . x) with sum_i g_i.F = 0, so f = 1/r + F is a
non-constant fractional division supported at degree n.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .cyclotomic import CycloNum
from .gegenbauer import evaluate, gegenbauer, harmonic_dimension
from .points import RotationTuple, validate_tuple
from .scalars import is_zero_scalar, scalar_to_float
from .zonal import ZonalBasis, build_zonal_basis, dot

FLOAT_SINGULAR_COEFF = 1e-8
WITNESS_RESIDUAL_TOL = 1e-9
WITNESS_SAMPLE_COUNT = 1000


def default_n_max(d: int) -> int:
    if d <= 3:
        return 8
    if d == 4:
        return 5
    return 3


def g_function(d: int, n: int, rotations: RotationTuple, v, x):
    """sum_i P_n((g_i^{-1} v) . x), the pairing kernel of the certificate."""
    poly = gegenbauer(d, n)
    total = None
    for i in range(rotations.r):
        gv = linalg.mat_vec(rotations.inverse_matrix(i), list(v))
        term = evaluate(poly, dot(gv, list(x)))
        total = term if total is None else total + term
    return total


def l_matrix(d: int, n: int, rotations: RotationTuple, basis: ZonalBasis):
    """Entry (i, j) = (1/N_n) sum_s P_n(v_i . (g_s v_j))."""
    nn = harmonic_dimension(d, n)
    poly = gegenbauer(d, n)
    pts = basis.points
    k = len(pts)
    if rotations.mode == "floating":
        mats = [np.array(m, dtype=float) for m in rotations.matrices]
        vecs = [np.array([float(c) for c in p]) for p in pts]
        out = np.zeros((k, k))
        for j in range(k):
            images = [m @ vecs[j] for m in mats]
            for i in range(k):
                out[i, j] = sum(float(evaluate(poly, float(vecs[i] @ w))) for w in images)
        return out / nn
    scale = Fraction(1, nn)
    rows = [[None] * k for _ in range(k)]
    for j in range(k):
        images = [linalg.mat_vec(m, list(pts[j])) for m in rotations.matrices]
        for i in range(k):
            acc = None
            for w in images:
                term = evaluate(poly, dot(list(pts[i]), w))
                acc = term if acc is None else acc + term
            rows[i][j] = scale * acc
    return rows


@dataclass
class DegreeCertificate:
    n: int
    status: str  # "obstructed" | "witness_exists"
    det_value: str | float
    det_float: float
    note: str = ""


@dataclass
class ObstructionReport:
    dimension: int
    r: int
    mode: str
    exact: bool
    n_max: int
    degrees: list[DegreeCertificate]
    disclaimer: str
    witness_degrees: list[int] = field(default_factory=list)

    @property
    def all_obstructed(self) -> bool:
        return not self.witness_degrees

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "r": self.r,
            "mode": self.mode,
            "exact": self.exact,
            "n_max": self.n_max,
            "degrees": [{"n": c.n, "status": c.status, "det": c.det_value,
                         "det_float": c.det_float, "note": c.note}
                        for c in self.degrees],
            "witness_degrees": self.witness_degrees,
            "disclaimer": self.disclaimer,
        }


def _certify_one(rotations: RotationTuple, n: int) -> DegreeCertificate:
    d = rotations.dimension
    basis = build_zonal_basis(d, n)
    lm = l_matrix(d, n, rotations, basis)
    if rotations.mode == "floating":
        detf = float(np.linalg.det(lm))
        # norm floored at 1: an all-tiny matrix is as singular as they come,
        # and a bound proportional to norm^size would underflow below the
        # determinant's own rounding noise
        norm = max(1.0, float(np.max(np.abs(lm))) if lm.size else 0.0)
        threshold = FLOAT_SINGULAR_COEFF * norm ** basis.size
        if abs(detf) <= threshold:
            return DegreeCertificate(n, "witness_exists", detf, detf,
                                     note="inexact - rerun in exact mode")
        return DegreeCertificate(n, "obstructed", detf, detf,
                                 note="inexact - rerun in exact mode")
    detv = linalg.det(lm)
    zero = is_zero_scalar(detv)
    det_float = 0.0 if zero else scalar_to_float(detv)
    status = "witness_exists" if zero else "obstructed"
    return DegreeCertificate(n, status, str(detv), det_float)


def certify_degrees(rotations: RotationTuple, n_max: int | None = None,
                    threads: int = 1) -> ObstructionReport:
    """Sweep degrees 1..n_max; exact-mode results are rigorous certificates."""
    report = validate_tuple(rotations)
    if not report.ok:
        raise ValueError("invalid rotation tuple: " + "; ".join(report.issues))
    if n_max is None:
        n_max = default_n_max(rotations.dimension)
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ns = list(range(1, n_max + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            degrees = list(pool.map(lambda n: _certify_one(rotations, n), ns))
    else:
        degrees = [_certify_one(rotations, n) for n in ns]
    degrees.sort(key=lambda c: c.n)
    witness_degrees = [c.n for c in degrees if c.status == "witness_exists"]
    if witness_degrees:
        disclaimer = (f"certificate covers harmonic degrees 1..{n_max} only; "
                      f"fractional-division witnesses exist at degrees {witness_degrees}")
    else:
        disclaimer = (f"no non-constant fractional division supported in degrees "
                      f"1..{n_max}; degrees above {n_max} are not covered by this "
                      f"certificate")
    if rotations.mode == "floating":
        disclaimer += " (floating-point run: not a rigorous certificate)"
    return ObstructionReport(
        dimension=rotations.dimension, r=rotations.r, mode=rotations.mode,
        exact=rotations.is_exact, n_max=n_max, degrees=degrees,
        disclaimer=disclaimer, witness_degrees=witness_degrees)


@dataclass
class FractionalWitness:
    degree: int
    r: int
    coefficients: list
    points: list[tuple[Fraction, ...]]
    max_residual: float

    def evaluate_fraction(self, x) -> float:
        """Float value of f = 1/r + sum_j c_j P_n(v_j . x) at a sphere point."""
        d = len(self.points[0])
        poly = gegenbauer(d, self.degree)
        val = 1.0 / self.r
        for c, v in zip(self.coefficients, self.points):
            vf = [float(t) for t in v]
            val += scalar_to_float(c) * float(evaluate(poly, sum(a * b for a, b in zip(vf, x))))
        return val

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "r": self.r,
            "coefficients": [str(c) for c in self.coefficients],
            "points": [[f"{c.numerator}/{c.denominator}" for c in p] for p in self.points],
            "max_residual": self.max_residual,
        }


def _cyclo_kernel_2x2(lm) -> list[CycloNum]:
    (a, b), (c, dd) = lm
    if not (a.is_zero() and b.is_zero()):
        return [-b, a]
    if not (c.is_zero() and dd.is_zero()):
        return [-dd, c]
    one = CycloNum.from_rational(a.order, 1)
    return [one, CycloNum(a.order)]


def extract_witness(rotations: RotationTuple, n: int,
                    samples: int = WITNESS_SAMPLE_COUNT, seed: int = 0) -> FractionalWitness:
    """Exact kernel witness at degree n; fails when the degree is obstructed.

    The returned coefficients satisfy sum_i g_i.F = 0 for
    F = sum_j c_j P_n(v_j . x); the packaged f = 1/r + F sums to 1 under the
    tuple.  Validated at ``samples`` random sphere points.
    """
    if not rotations.is_exact:
        raise ValueError("witness extraction requires an exact-mode tuple")
    if n < 1:
        raise ValueError("witnesses exist only at degrees n >= 1")
    d = rotations.dimension
    basis = build_zonal_basis(d, n)
    lm = l_matrix(d, n, rotations, basis)
    if rotations.mode == "circle":
        if not linalg.det(lm).is_zero():
            raise ValueError(f"degree {n} is obstructed: det L != 0, no witness exists")
        coeffs = _cyclo_kernel_2x2(lm)
    else:
        if not is_zero_scalar(linalg.det(lm)):
            raise ValueError(f"degree {n} is obstructed: det L != 0, no witness exists")
        coeffs = linalg.kernel_vector(lm)
        if coeffs is None:
            raise ValueError(f"degree {n} is obstructed: trivial kernel")
    witness = FractionalWitness(degree=n, r=rotations.r, coefficients=coeffs,
                                points=basis.points, max_residual=0.0)
    witness.max_residual = _validate_witness(rotations, witness, samples, seed)
    if witness.max_residual > WITNESS_RESIDUAL_TOL:
        raise ArithmeticError(
            f"witness residual {witness.max_residual:.3e} exceeds {WITNESS_RESIDUAL_TOL}")
    return witness


def _validate_witness(rotations: RotationTuple, witness: FractionalWitness,
                      samples: int, seed: int) -> float:
    d = rotations.dimension
    rng = np.random.default_rng(seed)
    xs = rng.normal(size=(samples, d))
    xs /= np.linalg.norm(xs, axis=1, keepdims=True)
    inv_mats = [np.array([[scalar_to_float(x) for x in row] for row in rotations.inverse_matrix(i)])
                for i in range(rotations.r)]
    worst = 0.0
    for x in xs:
        total = sum(witness.evaluate_fraction(m @ x) for m in inv_mats)
        worst = max(worst, abs(total - 1.0))
    return worst
