import math
import random

import numpy as np
import pytest

from spherediv.points import (cayley_rotation, exact_tuple, identity_tuple,
                              random_skew_matrix, validate_tuple)
from spherediv.synthesis import (CompletionError, UpperEntries, complete_rows,
                                 draw_upper_entries, epsilon_schedule,
                                 genericity_diagnostics,
                                 identity_distance_target)


def test_schedule_values():
    delta = 1.0 / (2 ** 2 * math.factorial(2))
    assert epsilon_schedule(2) == [delta / 8]
    b = epsilon_schedule(3)
    assert len(b) == 2
    assert b[0] == pytest.approx(identity_distance_target(3) / 144)
    assert b[1] == pytest.approx(identity_distance_target(3) / 12)


def test_schedule_positive_decreasing_outward():
    for d in (2, 3, 4, 5):
        b = epsilon_schedule(d)
        assert all(x > 0 for x in b)
        # the outermost (first) row carries the tightest bound
        assert all(b[i] < b[i + 1] for i in range(len(b) - 1))


def test_zero_entries_give_exact_identities():
    d = 3
    upper = UpperEntries(d, [[[0.0] * (d - 1 - m) for m in range(d - 1)]
                             for _ in range(2)])
    result = complete_rows(upper)
    for m in result.rotations.matrices:
        assert m == np.eye(d).tolist()
    assert result.max_orthonormality_residual == 0.0


def test_random_draws_complete_within_tolerances():
    for d in (2, 3, 4):
        rng = np.random.default_rng(100 + d)
        for _ in range(50):
            upper = draw_upper_entries(rng, d, 2)
            assert upper.within_schedule()
            result = complete_rows(upper)
            assert result.max_orthonormality_residual <= 1e-12
            assert result.max_determinant_residual <= 1e-10
            assert max(result.identity_distances) < identity_distance_target(d)
            assert validate_tuple(result.rotations).ok


def test_halved_bounds_never_fail():
    d = 3
    rng = np.random.default_rng(9)
    bounds = [b / 2 for b in epsilon_schedule(d)]
    for _ in range(25):
        blocks = [[list(rng.uniform(-bounds[m], bounds[m], size=d - 1 - m))
                   for m in range(d - 1)] for _ in range(2)]
        result = complete_rows(UpperEntries(d, blocks))
        assert result.max_orthonormality_residual <= 1e-12


def test_completion_deterministic():
    rng = np.random.default_rng(5)
    upper = draw_upper_entries(rng, 4, 2)
    a = complete_rows(upper)
    b = complete_rows(upper)
    assert a.rotations.matrices == b.rotations.matrices


def test_large_entry_fails_with_row_diagnostics():
    with pytest.raises(CompletionError) as info:
        complete_rows(UpperEntries(2, [[[0.9]]]))
    assert info.value.row == 2 or info.value.row == 1
    with pytest.raises(ValueError):
        UpperEntries(2, [[[0.1, 0.2]]])  # wrong shape


def test_diagonal_roots_near_one():
    rng = np.random.default_rng(2)
    result = complete_rows(draw_upper_entries(rng, 4, 1))
    for roots in result.diagonal_roots:
        for z in roots:
            assert abs(z - 1.0) < 0.01


def test_identity_tuple_fails_word_check():
    report = genericity_diagnostics(identity_tuple(3, 2), word_length_cap=2,
                                    n_max=2)
    assert not report.word_check_pass
    assert report.failing_word == "g1"
    assert not report.generic_candidate


def test_cayley_tuple_passes_checks_but_never_generic_candidate():
    rng = random.Random(3)
    t = exact_tuple([cayley_rotation(random_skew_matrix(rng, 3))
                     for _ in range(2)])
    report = genericity_diagnostics(t, word_length_cap=3, n_max=3)
    assert report.word_check_pass
    assert report.min_word_margin > 0
    assert not report.fixed_point_failures
    assert report.obstruction.all_obstructed
    assert not report.generic_candidate
    assert any("never generic" in note for note in report.notes)


def test_synthesized_tuple_is_generic_candidate():
    rng = np.random.default_rng(7)
    result = complete_rows(draw_upper_entries(rng, 3, 2))
    report = genericity_diagnostics(result.rotations, word_length_cap=4, n_max=3)
    assert report.word_check_pass
    assert report.generic_candidate
    assert report.obstruction.all_obstructed
    assert any("necessary-style evidence" in note for note in report.notes)


def test_even_dimension_free_action_check():
    rng = np.random.default_rng(11)
    result = complete_rows(draw_upper_entries(rng, 2, 2))
    report = genericity_diagnostics(result.rotations, word_length_cap=3, n_max=2)
    assert report.word_check_pass
    assert not report.fixed_point_failures
    assert report.fixed_point_pairs_checked > 0
