import math
import random
from fractions import Fraction

from spherediv.actions import (GroupWord, common_fixed_point_test,
                               divide_finite_orbit, enumerate_group,
                               evaluate_word, invariant_split, orbit,
                               orbit_size_bound_check, parse_word,
                               reduced_words)
from spherediv.linalg import identity_matrix, mat_vec
from spherediv.points import (cayley_rotation, exact_tuple, floating_tuple,
                              random_skew_matrix, z_axis_rotation_tuple)
from spherediv.scalars import is_zero_scalar
from oracles import stacked_kernel_intersection

F = Fraction


def signed_permutation_tuple():
    rz = [[F(0), F(-1), F(0)], [F(1), F(0), F(0)], [F(0), F(0), F(1)]]
    rx = [[F(1), F(0), F(0)], [F(0), F(0), F(-1)], [F(0), F(1), F(0)]]
    return exact_tuple([rz, rx])


def minus_identity(m):
    d = len(m)
    return [[m[i][j] - (1 if i == j else 0) for j in range(d)] for i in range(d)]


def test_word_reduction():
    w = GroupWord(((1, 1), (1, -1), (2, 1)))
    assert w.reduced().letters == ((2, 1),)
    assert GroupWord(((1, 1), (2, 1))).is_reduced
    assert not w.is_reduced


def test_parse_word():
    w = parse_word("g1 g2 g1^-1")
    assert w.letters == ((1, 1), (2, 1), (1, -1))
    assert parse_word("g2^2").letters == ((2, 1), (2, 1))


def test_evaluate_empty_word_is_identity():
    t = signed_permutation_tuple()
    assert evaluate_word(GroupWord(()), t) == identity_matrix(3)


def test_evaluate_unreduced_equals_reduced():
    rng = random.Random(2)
    t = exact_tuple([cayley_rotation(random_skew_matrix(rng, 3)) for _ in range(2)])
    w = GroupWord(((1, 1), (2, 1), (2, -1), (1, 1)))
    assert evaluate_word(w, t) == evaluate_word(w.reduced(), t)


def test_quarter_turn_fourth_power():
    q = [[F(0), F(-1)], [F(1), F(0)]]
    t = exact_tuple([q])
    w = GroupWord(((1, 1),) * 4)
    assert evaluate_word(w, t) == identity_matrix(2)


def test_common_fixed_point_coaxial():
    za = z_axis_rotation_tuple([F(1, 4)]).matrices[0]
    zb = z_axis_rotation_tuple([F(1, 2)]).matrices[0]
    found, witness = common_fixed_point_test([minus_identity(za), minus_identity(zb)])
    assert found
    assert witness[0] == 0 and witness[1] == 0 and witness[2] != 0


def test_common_fixed_point_zero_matrices():
    z = [[F(0)] * 3 for _ in range(3)]
    found, witness = common_fixed_point_test([z])
    assert found and any(x != 0 for x in witness)


def test_common_fixed_point_random_rotations_share_nothing():
    rng = random.Random(4)
    a = cayley_rotation(random_skew_matrix(rng, 3))
    b = cayley_rotation(random_skew_matrix(rng, 3))
    found, _ = common_fixed_point_test([minus_identity(a), minus_identity(b)])
    assert not found


def test_common_fixed_point_agrees_with_stacked_rank_oracle():
    rng = random.Random(12)
    for trial in range(100):
        d = rng.randint(2, 4)
        k = rng.randint(1, 3)
        mats = []
        plant = rng.random() < 0.5
        if plant:
            x = [F(rng.randint(-3, 3)) for _ in range(d)]
            if all(v == 0 for v in x):
                x[0] = F(1)
            for _ in range(k):
                # rows orthogonal to x: rank-deficient by construction
                rows = []
                for _ in range(d):
                    row = [F(rng.randint(-4, 4)) for _ in range(d)]
                    # project out the x-component against a coordinate where x is nonzero
                    pivot = next(i for i, v in enumerate(x) if v != 0)
                    dot = sum(a * b for a, b in zip(row, x))
                    row[pivot] -= dot / x[pivot]
                    rows.append(row)
                mats.append(rows)
        else:
            mats = [[[F(rng.randint(-4, 4)) for _ in range(d)] for _ in range(d)]
                    for _ in range(k)]
        found, witness = common_fixed_point_test(mats)
        assert found == stacked_kernel_intersection(mats), (trial, mats)
        if found:
            for m in mats:
                assert all(is_zero_scalar(v) for v in mat_vec(m, witness))


def test_common_fixed_point_floating():
    za = [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    found, witness = common_fixed_point_test(
        [minus_identity(za)], floating=True)
    assert found
    assert abs(abs(witness[2]) - 1.0) < 1e-6


def test_orbit_finite_exact():
    t = z_axis_rotation_tuple([F(1, 3), F(2, 3), F(0)])
    e1 = (F(1), F(0), F(0))
    rep = orbit(e1, t, cap=100)
    assert rep.finite and rep.size == 3
    e3 = (F(0), F(0), F(1))
    assert orbit(e3, t, cap=100).size == 1


def test_orbit_finite_floating():
    a = 2 * math.pi / 3
    m = [[math.cos(a), -math.sin(a), 0.0], [math.sin(a), math.cos(a), 0.0],
         [0.0, 0.0, 1.0]]
    rep = orbit((1.0, 0.0, 0.0), floating_tuple([m]), cap=100)
    assert rep.finite and rep.size == 3


def test_orbit_cap_exceeded_random_pair():
    rng = random.Random(6)
    t = exact_tuple([cayley_rotation(random_skew_matrix(rng, 3)) for _ in range(2)])
    rep = orbit((F(1), F(0), F(0)), t, cap=200)
    assert not rep.finite
    assert rep.size > 200


def test_orbit_closure_verified():
    t = signed_permutation_tuple()
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    assert rep.finite and rep.size == 6  # the six signed basis vectors
    pts = set(rep.points)
    for m in t.matrices:
        for p in rep.points:
            assert tuple(mat_vec(m, list(p))) in pts


def test_enumerate_group_cube():
    g = enumerate_group(signed_permutation_tuple(), cap=100)
    assert g.complete and g.order == 24


def test_enumerate_group_half_turn():
    h = [[F(-1), F(0)], [F(0), F(-1)]]
    g = enumerate_group(exact_tuple([h]), cap=10)
    assert g.complete and g.order == 2


def test_enumerate_group_cap_exceeded():
    rng = random.Random(8)
    t = exact_tuple([cayley_rotation(random_skew_matrix(rng, 3)) for _ in range(2)])
    g = enumerate_group(t, cap=50)
    assert not g.complete and g.order is None


def test_invariant_split_planar_orbit():
    t = z_axis_rotation_tuple([F(1, 3), F(2, 3), F(0)])
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    split = invariant_split(rep, t)
    assert split.span_dimension == 2
    assert len(split.complement_basis) == 1
    comp = split.complement_basis[0]
    assert comp[0] == 0 and comp[1] == 0 and comp[2] != 0
    for block in split.span_blocks:
        assert len(block) == 2 and len(block[0]) == 2
    for block in split.complement_blocks:
        assert len(block) == 1


def test_invariant_split_axis_orbit():
    t = z_axis_rotation_tuple([F(1, 3), F(2, 3), F(0)])
    rep = orbit((F(0), F(0), F(1)), t, cap=10)
    split = invariant_split(rep, t)
    assert split.span_dimension == 1
    assert len(split.complement_basis) == 2


def test_invariant_split_full_span():
    t = signed_permutation_tuple()
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    split = invariant_split(rep, t)
    assert split.span_dimension == 3
    assert split.complement_basis == []


def test_orbit_size_bound():
    t = z_axis_rotation_tuple([F(1, 3), F(2, 3), F(0)])
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    split = invariant_split(rep, t)
    check = orbit_size_bound_check(split, t, samples=10, seed=0)
    assert check.ok and check.bound == 6
    assert check.max_observed <= 6


def test_orbit_size_bound_cube():
    t = signed_permutation_tuple()
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    split = invariant_split(rep, t)
    check = orbit_size_bound_check(split, t, samples=5, seed=1)
    assert check.ok
    assert check.max_observed <= math.factorial(6)
    assert check.max_observed in (24, 48)  # generic orbits of the cube group


def test_divide_finite_orbit_thirds():
    t = z_axis_rotation_tuple([F(1, 3), F(2, 3), F(0)])
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    division = divide_finite_orbit(rep, t)
    assert division is not None and len(division) == 1
    chosen = division[0]
    images = {tuple(mat_vec(m, list(chosen))) for m in t.matrices}
    assert images == set(rep.points)


def test_divide_finite_orbit_odd_for_two():
    t = z_axis_rotation_tuple([F(1, 3), F(0)])
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    assert divide_finite_orbit(rep, t) is None


def test_divide_fixed_point_orbit_fails_for_r2():
    t = z_axis_rotation_tuple([F(1, 3), F(0)])
    rep = orbit((F(0), F(0), F(1)), t, cap=10)
    assert divide_finite_orbit(rep, t) is None


def test_divide_finite_orbit_cube_pair_refuted():
    # the two cube generators chain the six signed basis vectors into an odd
    # cycle, so the exhaustive search correctly proves no division exists
    t = signed_permutation_tuple()
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    assert divide_finite_orbit(rep, t) is None


def test_divide_finite_orbit_hexagon():
    t = z_axis_rotation_tuple([F(1, 6), F(1, 2), F(5, 6)])
    rep = orbit((F(1), F(0), F(0)), t, cap=100)
    assert rep.finite and rep.size == 6
    division = divide_finite_orbit(rep, t)
    assert division is not None and len(division) == 2
    seen = []
    for a in division:
        for m in t.matrices:
            seen.append(tuple(mat_vec(m, list(a))))
    assert sorted(seen) == sorted(rep.points)


def test_reduced_words_counts():
    words = list(reduced_words(2, 3))
    assert len(words) == 4 + 12 + 36
    assert all(w.is_reduced for w in words)


def test_free_word_spot_check_cayley():
    rng = random.Random(10)
    t = exact_tuple([cayley_rotation(random_skew_matrix(rng, 3)) for _ in range(2)])
    ident = identity_matrix(3)
    for w in reduced_words(2, 6):
        assert evaluate_word(w, t) != ident, str(w)
