"""Exact-cover tilings of the cyclic group Z_N by translates of one set.

Given shifts k_1, ..., k_r, decide whether some A subseteq Z_N makes
k_1 + A, ..., k_r + A a partition of Z_N ("k-divisibility").  The solver is a
complete canonical backtracking search: always branch on the smallest
uncovered residue, trying its candidate preimages in increasing order, so the
answer is deterministic and the first solution found is the canonical one.

For the four-shift family (k, k+m, m, 0) mod 4m with gcd(k, m) = 1 the module
also carries the closed-form decision (m even: always tileable; m odd:
tileable iff k = 2 mod 4) and the explicit constructions, used as mutually
checking implementations against the search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_NODE_BUDGET = 10 ** 7


@dataclass(frozen=True)
class TileInstance:
    modulus: int
    shifts: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        object.__setattr__(self, "shifts",
                           tuple(k % self.modulus for k in self.shifts))


@dataclass(frozen=True)
class TileSolution:
    modulus: int
    shifts: tuple[int, ...]
    members: tuple[int, ...]

    def is_valid(self) -> bool:
        return is_tiling(self.modulus, self.shifts, self.members)


def is_tiling(modulus: int, shifts, members) -> bool:
    """Exact check: every residue covered exactly once by {k_i + a}."""
    counts = [0] * modulus
    for a in members:
        for k in shifts:
            counts[(a + k) % modulus] += 1
    return all(c == 1 for c in counts)


class _TilingSearch:
    """Backtracking with unit propagation over the cyclic action structure.

    A residue a is a usable "row" iff none of its images a + k_i is covered;
    blocked[a] counts covered images, cand[y] counts usable rows covering y.
    Covering is O(r^3) incremental updates.  Branching always happens on the
    smallest uncovered residue with candidates in increasing order, so the
    first solution found is canonical; forced moves (cand = 1) are committed
    without branching, which leaves the solution order unchanged and detects
    the long forced chains of these instances without search.
    """

    def __init__(self, n: int, shifts: tuple[int, ...], node_budget: int):
        self.n = n
        self.shifts = shifts
        self.r = len(shifts)
        self.node_budget = node_budget
        self.nodes = 0
        self.covered = [False] * n
        self.blocked = [0] * n
        self.cand = [self.r] * n  # rows y - k_i are distinct while shifts are
        self.chosen: list[int] = []
        self.dead = False
        self.forced: list[int] = []

    def rows_of(self, y: int) -> list[int]:
        return [(y - k) % self.n for k in self.shifts]

    def images_of(self, a: int) -> list[int]:
        return [(a + k) % self.n for k in self.shifts]

    def unique_row(self, y: int) -> int:
        for a in self.rows_of(y):
            if self.blocked[a] == 0:
                return a
        raise AssertionError("no usable row despite positive candidate count")

    def commit(self, a: int) -> None:
        self.chosen.append(a)
        for p in self.images_of(a):
            self.covered[p] = True
        for p in self.images_of(a):
            for b in self.rows_of(p):
                self.blocked[b] += 1
                if self.blocked[b] == 1:
                    for y in self.images_of(b):
                        self.cand[y] -= 1
                        if not self.covered[y]:
                            if self.cand[y] == 0:
                                self.dead = True
                            elif self.cand[y] == 1:
                                self.forced.append(y)

    def retract(self, a: int) -> None:
        for p in reversed(self.images_of(a)):
            for b in self.rows_of(p):
                if self.blocked[b] == 1:
                    for y in self.images_of(b):
                        self.cand[y] += 1
                self.blocked[b] -= 1
        for p in self.images_of(a):
            self.covered[p] = False
        self.chosen.pop()
        self.dead = False

    def propagate(self) -> list[int]:
        committed = []
        while not self.dead and self.forced:
            y = self.forced.pop()
            if self.covered[y] or self.cand[y] != 1:
                continue  # stale queue entry
            a = self.unique_row(y)
            self.commit(a)
            committed.append(a)
        return committed

    def first_uncovered(self) -> int:
        for y in range(self.n):
            if not self.covered[y]:
                return y
        return -1

    def search(self) -> bool:
        committed = self.propagate()
        if not self.dead:
            y = self.first_uncovered()
            if y < 0:
                return True
            for a in sorted(b for b in self.rows_of(y) if self.blocked[b] == 0):
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise BudgetExceeded(
                        f"tiling search exceeded {self.node_budget} nodes")
                self.commit(a)
                if self.search():
                    return True
                self.forced = []
                self.retract(a)
        for a in reversed(committed):
            self.retract(a)
        self.forced = []
        return False


def solve(instance: TileInstance,
          node_budget: int = DEFAULT_NODE_BUDGET) -> TileSolution | None:
    """Complete search for a tiling; None is a proof that none exists.

    Raises BudgetExceeded (never a wrong answer) if the node budget runs out.
    Duplicate shifts make two translates of any nonempty set overlap, so such
    instances are immediately unsolvable, as are those with r not dividing N.
    """
    n = instance.modulus
    shifts = instance.shifts
    r = len(shifts)
    if r == 0 or n % r != 0:
        return None
    if len(set(shifts)) != r:
        return None
    engine = _TilingSearch(n, shifts, node_budget)
    if engine.search():
        return TileSolution(n, shifts, tuple(sorted(engine.chosen)))
    return None


def normalize_r4(modulus: int, shifts) -> tuple[int, int] | None:
    """Bring four shifts into the canonical form (k, k+m, m, 0) mod 4m.

    Allowed moves preserve divisibility: translating all shifts, negating all
    shifts, swapping within either pair, swapping the two pairs.  Returns the
    lexicographically smallest admissible (m, k), or None when no image has
    the canonical shape (flagged rather than guessed).
    """
    if modulus % 4:
        return None
    m = modulus // 4
    ks = [k % modulus for k in shifts]
    if len(ks) != 4:
        raise ValueError("normalize_r4 needs exactly four shifts")
    candidates = []
    for signed in (ks, [(-k) % modulus for k in ks]):
        for anchor in range(4):
            rest = [(signed[i] - signed[anchor]) % modulus
                    for i in range(4) if i != anchor]
            # try each of the remaining three as k_3 = m
            for pos3 in range(3):
                if rest[pos3] != m:
                    continue
                pair = [rest[i] for i in range(3) if i != pos3]
                for k1, k2 in (pair, pair[::-1]):
                    if (k1 + m) % modulus == k2:
                        candidates.append((m, k1))
    return min(candidates) if candidates else None


def closed_form_r4(m: int, k: int) -> bool:
    """Decision for shifts (k, k+m, m, 0) mod 4m with gcd(k, m) = 1:
    always tileable for even m; for odd m tileable iff k = 2 (mod 4)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    k %= 4 * m
    if math.gcd(k, m) != 1:
        raise ValueError(f"gcd(k, m) must be 1, got gcd({k}, {m})")
    if m % 2 == 0:
        return True
    return k % 4 == 2


def odd_m_construction(m: int, k: int) -> TileSolution:
    """Explicit tiling of Z_{4m} for odd m, gcd(k, m) = 1, k = 2 (mod 4):
    the elements -2ik for 0 <= i <= (m-1)/2 and -(2i+1)k + 2m for
    0 <= i <= (m-3)/2."""
    n = 4 * m
    k %= n
    if m % 2 == 0:
        raise ValueError("m must be odd")
    if math.gcd(k, m) != 1:
        raise ValueError(f"gcd(k, m) must be 1, got gcd({k}, {m})")
    if k % 4 != 2:
        raise ValueError("construction requires k = 2 (mod 4)")
    members = {(-2 * i * k) % n for i in range((m - 1) // 2 + 1)}
    members |= {(-(2 * i + 1) * k + 2 * m) % n for i in range((m - 3) // 2 + 1)}
    solution = TileSolution(n, ((k) % n, (k + m) % n, m % n, 0), tuple(sorted(members)))
    if len(members) != m or not solution.is_valid():
        raise ArithmeticError("explicit odd-m construction failed validity")
    return solution


def even_m_construction(m: int, k: int) -> TileSolution:
    """Explicit tiling of Z_{4m} for even m = 2s, gcd(k, m) = 1:
    A = S union (2m + S) with S = {2ik mod m : 0 <= i < s}."""
    n = 4 * m
    k %= n
    if m % 2:
        raise ValueError("m must be even")
    if math.gcd(k, m) != 1:
        raise ValueError(f"gcd(k, m) must be 1, got gcd({k}, {m})")
    s = m // 2
    base = {(2 * i * k) % m for i in range(s)}
    members = base | {x + 2 * m for x in base}
    solution = TileSolution(n, (k % n, (k + m) % n, m % n, 0), tuple(sorted(members)))
    if len(members) != m or not solution.is_valid():
        raise ArithmeticError("explicit even-m construction failed validity")
    return solution
