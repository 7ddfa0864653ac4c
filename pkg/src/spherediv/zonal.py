"""Zonal harmonic machinery: Gram matrices and rational-point bases.

The function x |-> P_n(v . x) spans, over varying unit v, the whole space of
degree-n spherical harmonics.  This module greedily selects rational points
v_1, ..., v_{N_n} whose zonal functions are linearly independent, certified by
exact positivity of Schur complements of the Gram matrix
M_ij = P_n(v_i . v_j) / N_n.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .gegenbauer import evaluate, gegenbauer, harmonic_dimension
from .points import BudgetExceeded, enumerate_points

ENUMERATION_ORDER_VERSION = 1
DEFAULT_BUDGET_FACTOR = 10

_cache: dict[tuple[int, int], "ZonalBasis"] = {}
_cache_lock = threading.Lock()


def dot(u, v):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def zonal_evaluate(d: int, n: int, v, x):
    """P_n(v . x); exact for exact inputs."""
    return evaluate(gegenbauer(d, n), dot(v, x))


def gram_matrix(d: int, n: int, pts) -> list[list[Fraction]]:
    """Gram matrix of the zonal functions at pts: entry (i,j) = P_n(v_i.v_j)/N_n."""
    nn = harmonic_dimension(d, n)
    p = gegenbauer(d, n)
    k = len(pts)
    g = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        for j in range(i, k):
            val = evaluate(p, dot(pts[i], pts[j])) / nn
            g[i][j] = val
            g[j][i] = val
    return g


@dataclass
class ZonalBasis:
    d: int
    n: int
    points: list[tuple[Fraction, ...]]
    gram: list[list[Fraction]]
    gram_det: Fraction

    @property
    def size(self) -> int:
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "order_version": ENUMERATION_ORDER_VERSION,
            "points": [[f"{c.numerator}/{c.denominator}" for c in p] for p in self.points],
            "gram": [[f"{c.numerator}/{c.denominator}" for c in row] for row in self.gram],
            "gram_det": f"{self.gram_det.numerator}/{self.gram_det.denominator}",
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZonalBasis":
        return cls(
            d=data["d"], n=data["n"],
            points=[tuple(Fraction(c) for c in p) for p in data["points"]],
            gram=[[Fraction(c) for c in row] for row in data["gram"]],
            gram_det=Fraction(data["gram_det"]),
        )


def _greedy_select(d: int, n: int, candidates) -> ZonalBasis:
    nn = harmonic_dimension(d, n)
    poly = gegenbauer(d, n)
    accepted: list[tuple[Fraction, ...]] = []
    gram: list[list[Fraction]] = []
    inv: list[list[Fraction]] = []
    det = Fraction(1)
    g_diag = Fraction(1, nn)
    for v in candidates:
        if len(accepted) == nn:
            break
        w = [evaluate(poly, dot(v, u)) / nn for u in accepted]
        if accepted:
            kw = linalg.mat_vec(inv, w)
            schur = g_diag - sum((wi * ki for wi, ki in zip(w, kw)), Fraction(0))
        else:
            kw = []
            schur = g_diag
        if schur == 0:
            continue
        if schur < 0:
            raise ArithmeticError("Gram matrix lost positive semidefiniteness")
        # rank grows: extend the Gram matrix, its inverse and determinant
        k = len(accepted)
        new_inv = [[inv[i][j] + kw[i] * kw[j] / schur for j in range(k)] + [-kw[i] / schur]
                   for i in range(k)]
        new_inv.append([-kw[j] / schur for j in range(k)] + [Fraction(1) / schur])
        inv = new_inv
        for i in range(k):
            gram[i].append(w[i])
        gram.append(w + [g_diag])
        det *= schur
        accepted.append(v)
    if len(accepted) < nn:
        raise BudgetExceeded(
            f"point budget exhausted with {len(accepted)} of {nn} basis points "
            f"for (d={d}, n={n}); raise the budget factor")
    return ZonalBasis(d=d, n=n, points=accepted, gram=gram, gram_det=det)


def build_zonal_basis(d: int, n: int, points=None,
                      budget_factor: int = DEFAULT_BUDGET_FACTOR) -> ZonalBasis:
    """Greedy rational-point basis of the degree-n harmonics on S^{d-1}.

    Candidate points are accepted exactly when they strictly increase the rank
    of the zonal Gram matrix (positive exact Schur complement).  Results for
    the default enumeration are cached per (d, n), optionally persisted under
    $SPHEREDIV_CACHE_DIR.
    """
    if points is not None:
        return _greedy_select(d, n, points)
    key = (d, n)
    with _cache_lock:
        if key in _cache:
            return _cache[key]
    cached = _load_disk_cache(d, n)
    if cached is None:
        nn = harmonic_dimension(d, n)
        cached = _greedy_select(d, n, enumerate_points(d, budget_factor * nn))
        _store_disk_cache(cached)
    with _cache_lock:
        _cache.setdefault(key, cached)
        return _cache[key]


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _cache_path(d: int, n: int) -> str | None:
    root = os.environ.get("SPHEREDIV_CACHE_DIR")
    if not root:
        return None
    return os.path.join(root, f"zonal-basis-d{d}-n{n}-v{ENUMERATION_ORDER_VERSION}.json")


def _load_disk_cache(d: int, n: int) -> ZonalBasis | None:
    path = _cache_path(d, n)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if data.get("order_version") != ENUMERATION_ORDER_VERSION:
            return None
        return ZonalBasis.from_json(data)
    except (OSError, ValueError, KeyError):
        return None


def _store_disk_cache(basis: ZonalBasis) -> None:
    path = _cache_path(basis.d, basis.n)
    if not path:
        return
    try:
        os.makedirs(os.path.dirname(path), exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(basis.to_json(), fh, sort_keys=True)
    except OSError:
        pass
