import itertools
from fractions import Fraction

import pytest

from spherediv.circle import (Angle, ArcSet, cancellation_at, classify,
                              divide_r2, divide_r3, divide_r4, fractional_test,
                              necessary_degrees, parse_angle, verify_arcset)


F = Fraction


def test_parse_angle_forms():
    assert parse_angle("1/3") == Angle(F(1, 3))
    assert parse_angle("1/2 + tau") == Angle(F(1, 2), (("tau", F(1)),))
    a = parse_angle("3/4 - 2*tau1 + 1/2*tau2")
    assert a.turns == F(3, 4)
    assert dict(a.formal) == {"tau1": F(-2), "tau2": F(1, 2)}
    assert parse_angle("tau") == Angle(F(0), (("tau", F(1)),))
    with pytest.raises(ValueError):
        parse_angle("0.25")
    with pytest.raises(ValueError):
        parse_angle("")


def test_angle_arithmetic_mod_one():
    a = parse_angle("2/3 + tau")
    b = parse_angle("2/3 + tau")
    assert (a + b).turns == F(1, 3)
    assert not (a - b).formal
    assert (a - b).turns == 0


def test_arcset_invariants():
    arcs = ArcSet(((F(1, 2), F(3, 4)), (F(0), F(1, 4))))
    assert arcs.arcs[0] == (F(0), F(1, 4))  # sorted
    assert arcs.total_length == F(1, 2)
    with pytest.raises(ValueError):
        ArcSet(((F(0), F(1, 2)), (F(1, 4), F(3, 4))))  # overlap
    with pytest.raises(ValueError):
        ArcSet(((F(1, 2), F(5, 4)),))  # outside the unit turn


def test_arcset_translate_wraps():
    arcs = ArcSet(((F(3, 4), F(1)),))
    assert arcs.translate(F(1, 2)).arcs == ((F(1, 4), F(1, 2)),)
    # crossing the origin splits the arc
    assert arcs.translate(F(1, 8)).arcs == ((F(0), F(1, 8)), (F(7, 8), F(1)))


def test_fractional_test_examples():
    assert fractional_test(["1/2", "0"]) == 1
    assert fractional_test(["tau", "tau + 1/2", "1/2", "0"]) == 1
    assert fractional_test(["1/3", "0"]) is None
    assert fractional_test(["1/3", "2/3", "0"]) == 1
    assert fractional_test(["1/9", "2/9", "0"]) == 3


def test_fractional_test_singleton_group_blocks():
    assert fractional_test(["tau", "1/2", "0"]) is None


def test_necessary_degrees_periodic():
    degs = necessary_degrees([Angle(F(1, 3)), Angle(F(2, 3)), Angle(F(0))], 9)
    assert degs == {1, 2, 4, 5, 7, 8}
    assert cancellation_at([Angle(F(1, 2)), Angle(F(0))], 5)
    assert not cancellation_at([Angle(F(1, 2)), Angle(F(0))], 2)


def test_divide_r2_examples():
    assert divide_r2("1/2", "0").arcs == ((F(0), F(1, 2)),)
    assert divide_r2("1/4", "0").arcs == ((F(0), F(1, 4)), (F(1, 2), F(3, 4)))
    assert divide_r2("1/3", "0") is None
    assert divide_r2("tau", "0") is None
    assert divide_r2("0", "0") is None


def test_divide_r2_even_order_law():
    values = sorted({F(p, q) for q in range(1, 25) for p in range(q)})
    for t in values:
        arcs = divide_r2(t, F(0))
        even_order = t != 0 and t.denominator % 2 == 0
        assert (arcs is not None) == even_order, t
        if arcs is not None:
            assert verify_arcset([t, F(0)], arcs)
            n = t.denominator // 2
            assert len(arcs.arcs) == n
            assert all(b - a == F(1, 2 * n) for a, b in arcs.arcs)
            # the construction degree equals the smallest cancellation degree
            assert fractional_test([Angle(t), Angle(F(0))]) == n


def test_divide_r3_examples():
    assert divide_r3("1/3", "2/3", "0").arcs == ((F(0), F(1, 3)),)
    ninth = divide_r3("1/9", "2/9", "0")
    assert ninth.arcs == ((F(0), F(1, 9)), (F(1, 3), F(4, 9)), (F(2, 3), F(7, 9)))
    assert divide_r3("tau", "2*tau", "0") is None
    assert divide_r3("1/2", "1/4", "0") is None


def test_divide_r3_sweep_verifies():
    values = sorted({F(p, q) for q in range(1, 13) for p in range(q)})
    constructive = 0
    for t1, t2 in itertools.combinations_with_replacement(values, 2):
        arcs = divide_r3(t1, t2, F(0))
        n = fractional_test([Angle(t1), Angle(t2), Angle(F(0))])
        assert (arcs is not None) == (n is not None), (t1, t2)
        if arcs is not None:
            assert verify_arcset([t1, t2, F(0)], arcs)
            # n equally spaced arcs, n the smallest cancellation degree
            assert len(arcs.arcs) == n
            constructive += 1
    assert constructive > 0


def test_divide_r4_examples():
    c = divide_r4("1/2", "3/4", "1/4", "0")
    assert c.verdict == "constructive"
    assert c.arcs.arcs == ((F(0), F(1, 4)),)
    c = divide_r4("1/4", "1/2", "1/4", "0")
    assert c.verdict == "fractional_only"
    assert c.witness_degree == 2
    c = divide_r4("tau", "tau + 1/2", "1/2", "0")
    assert c.verdict == "fractional_only"
    assert c.witness_degree == 1
    c = divide_r4("1/5", "1/7", "1/11", "0")
    assert c.verdict == "not_fractional"


def test_divide_r4_group_order_not_multiple_of_four():
    c = divide_r4("1/2", "0", "1/2", "0")
    assert c.verdict == "fractional_only"
    assert c.group_order == 2


def test_divide_r4_smallest_degree_matches_fractional_test():
    values = sorted({F(p, q) for q in (1, 2, 3, 4, 6, 8) for p in range(q)})
    for t1, t2, t3 in itertools.combinations_with_replacement(values, 3):
        c = divide_r4(t1, t2, t3, F(0))
        n = fractional_test([Angle(t1), Angle(t2), Angle(t3), Angle(F(0))])
        assert c.witness_degree == n or (c.verdict == "not_fractional" and n is None)


def test_translation_invariance_with_formal_offset():
    base = ["1/2", "3/4", "1/4", "0"]
    shifted = [f"{t} + tau" for t in base]
    a = divide_r4(*base)
    b = divide_r4(*shifted)
    assert a.verdict == b.verdict == "constructive"
    assert a.arcs == b.arcs


def test_classify_r2_r3():
    c = classify(["1/3", "2/3", "0"])
    assert c.verdict == "constructive"
    assert verify_arcset(list(c.reduced_turns), c.arcs)
    assert c.witness_degree == 1
    c = classify(["1/3", "0"])
    assert c.verdict == "not_fractional"
    c = classify(["1/4", "0"])
    assert c.verdict == "constructive"


def test_classify_r5():
    c = classify(["0", "1/5", "2/5", "3/5", "4/5"])
    assert c.verdict == "constructive"
    assert c.arcs.arcs == ((F(0), F(1, 5)),)
    assert verify_arcset(list(c.reduced_turns), c.arcs)
    c = classify(["0", "1/5", "2/5", "3/5", "tau"])
    assert c.verdict == "heuristic_unknown"
    c = classify(["0", "1/7", "2/7", "3/7", "4/7"])
    assert c.verdict in ("fractional_only", "not_fractional")


def test_classify_common_formal_offset_reduces():
    c = classify(["tau + 1/3", "tau + 2/3", "tau"])
    assert c.verdict == "constructive"
    assert c.reduced_turns == (F(1, 3), F(2, 3), F(0))
    assert verify_arcset(list(c.reduced_turns), c.arcs)


def test_verify_arcset_examples():
    assert verify_arcset(["1/2", "0"], ArcSet(((F(0), F(1, 2)),)))
    assert verify_arcset(["1/3", "2/3", "0"], ArcSet(((F(0), F(1, 3)),)))
    assert not verify_arcset(["1/2", "0"], ArcSet(((F(0), F(1, 4)),)))
    with pytest.raises(ValueError):
        verify_arcset(["tau", "0"], ArcSet(((F(0), F(1, 2)),)))


def test_arcset_json_round_trip():
    arcs = divide_r3("1/9", "2/9", "0")
    assert ArcSet.from_json(arcs.to_json()) == arcs
