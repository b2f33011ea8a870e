import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagcalc.errors import DomainError, ParseError, RayDegeneracyError
from flagcalc.plane import (
    DEFAULT_BASE_POINTS,
    FlaggedLoop,
    FreeWord,
    Point,
    PuncturedPlane,
    connected_sum,
    connected_sum_auto,
    crossing_word,
    ensure_avoids,
    format_free_word,
    format_loop_literal,
    free_reduce,
    normalize_flag,
    parse_free_word,
    parse_loop_literal,
    parse_plane_file,
    sample_loops,
    verify_group_law,
    winding_number,
    winding_profile,
)

ORIGIN = Point.of(0, 0)
ONE_PUNCTURE = PuncturedPlane((ORIGIN,))
TWO_PUNCTURES = PuncturedPlane((ORIGIN, Point.of(10, 0)))

CCW_SQUARE = FlaggedLoop(
    (Point.of(1, -1), Point.of(1, 1), Point.of(-1, 1), Point.of(-1, -1)), 0
)
CW_SQUARE = FlaggedLoop(
    (Point.of(1, -1), Point.of(-1, -1), Point.of(-1, 1), Point.of(1, 1)), 0
)
FAR_SQUARE = FlaggedLoop(
    (Point.of(4, -1), Point.of(4, 1), Point.of(3, 1), Point.of(3, -1)), 0
)


def angle_sum_winding(loop: FlaggedLoop, puncture: Point) -> int:
    """Independent check: accumulate signed turn angles in floating point."""
    total = 0.0
    for a, b in loop.directed_edges():
        ax, ay = float(a.x - puncture.x), float(a.y - puncture.y)
        bx, by = float(b.x - puncture.x), float(b.y - puncture.y)
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    return round(total / math.tau)


class TestPoint:
    def test_of_coerces_to_fractions(self):
        p = Point.of(1, -2)
        assert p.x == Fraction(1) and p.y == Fraction(-2)
        assert Point.of(Fraction(1, 3), 0).x == Fraction(1, 3)


class TestPuncturedPlane:
    def test_rejects_duplicate_punctures(self):
        with pytest.raises(DomainError):
            PuncturedPlane((ORIGIN, ORIGIN))

    def test_rejects_shared_x_coordinates(self):
        with pytest.raises(DomainError):
            PuncturedPlane((ORIGIN, Point.of(0, 5)))

    def test_rejects_empty(self):
        with pytest.raises(DomainError):
            PuncturedPlane(())


class TestFlaggedLoop:
    def test_requires_three_vertices(self):
        with pytest.raises(DomainError):
            FlaggedLoop((ORIGIN, Point.of(1, 0)), 0)

    def test_flag_must_be_in_range(self):
        with pytest.raises(DomainError):
            FlaggedLoop(CCW_SQUARE.vertices, 4)

    def test_traversal_letter(self):
        with pytest.raises(DomainError):
            FlaggedLoop(CCW_SQUARE.vertices, 0, "X")

    def test_rejects_repeated_consecutive_vertices(self):
        with pytest.raises(DomainError):
            FlaggedLoop((ORIGIN, ORIGIN, Point.of(1, 1)), 0)

    def test_directed_vertices_rotate_to_flag(self):
        loop = FlaggedLoop(CCW_SQUARE.vertices, 2)
        walk = loop.directed_vertices()
        assert walk[0] == Point.of(-1, 1)
        assert len(walk) == 4

    def test_backward_traversal_keeps_flag_first(self):
        loop = FlaggedLoop(CCW_SQUARE.vertices, 1, "B")
        v = CCW_SQUARE.vertices
        assert loop.directed_vertices() == (v[1], v[0], v[3], v[2])

    def test_vertex_on_puncture_is_rejected(self):
        bad = FlaggedLoop((ORIGIN, Point.of(1, 1), Point.of(2, 0)), 0)
        with pytest.raises(DomainError):
            ensure_avoids(bad, ONE_PUNCTURE)

    def test_edge_through_puncture_is_rejected(self):
        bad = FlaggedLoop(
            (Point.of(-1, 0), Point.of(1, 0), Point.of(1, 2), Point.of(-1, 2)), 0
        )
        with pytest.raises(DomainError):
            ensure_avoids(bad, ONE_PUNCTURE)


class TestWindingNumber:
    def test_square_orientations(self):
        assert winding_number(CCW_SQUARE, ORIGIN) == 1
        assert winding_number(CW_SQUARE, ORIGIN) == -1
        assert winding_number(FAR_SQUARE, ORIGIN) == 0

    def test_puncture_on_edge_is_rejected(self):
        bad = FlaggedLoop(
            (Point.of(-1, 0), Point.of(1, 0), Point.of(1, 2), Point.of(-1, 2)), 0
        )
        with pytest.raises(DomainError):
            winding_number(bad, ORIGIN)

    def test_agrees_with_angle_sum_on_fixtures(self):
        for loop in (CCW_SQUARE, CW_SQUARE, FAR_SQUARE):
            assert winding_number(loop, ORIGIN) == angle_sum_winding(loop, ORIGIN)

    def test_agrees_with_angle_sum_on_sampled_loops(self):
        for loop in sample_loops(TWO_PUNCTURES, 40, seed=11):
            for p in TWO_PUNCTURES.punctures:
                assert winding_number(loop, p) == angle_sum_winding(loop, p)

    def test_reversal_negates(self):
        for loop in sample_loops(ONE_PUNCTURE, 20, seed=3):
            flipped = "B" if loop.traversal == "F" else "F"
            reverse = FlaggedLoop(loop.vertices, loop.flag_vertex, flipped)
            assert winding_number(reverse, ORIGIN) == -winding_number(loop, ORIGIN)

    def test_profile_orders_by_puncture(self):
        assert winding_profile(CCW_SQUARE, TWO_PUNCTURES) == (1, 0)


class TestNormalizeFlag:
    BASE = Point.of(Fraction(1, 3), -12)

    def test_preserves_windings(self):
        for loop in sample_loops(TWO_PUNCTURES, 25, seed=5):
            moved = normalize_flag(loop, self.BASE, TWO_PUNCTURES)
            assert winding_profile(moved, TWO_PUNCTURES) == winding_profile(
                loop, TWO_PUNCTURES
            )

    def test_result_is_based_and_forward(self):
        moved = normalize_flag(CCW_SQUARE, self.BASE, TWO_PUNCTURES)
        assert moved.flag_vertex == 0
        assert moved.traversal == "F"
        assert moved.vertices[0] == self.BASE

    def test_base_at_existing_flag_only_rotates(self):
        loop = FlaggedLoop(CCW_SQUARE.vertices, 2)
        moved = normalize_flag(loop, Point.of(-1, 1), TWO_PUNCTURES)
        assert moved.vertices[0] == Point.of(-1, 1)
        assert winding_profile(moved, TWO_PUNCTURES) == (1, 0)

    def test_base_on_puncture_is_rejected(self):
        with pytest.raises(DomainError):
            normalize_flag(CCW_SQUARE, ORIGIN, ONE_PUNCTURE)


class TestConnectedSum:
    L1 = CCW_SQUARE
    L2 = FlaggedLoop(
        (Point.of(11, -1), Point.of(11, 1), Point.of(9, 1), Point.of(9, -1)), 0
    )
    BASE = Point.of(Fraction(1, 3), -12)

    @pytest.mark.parametrize(
        "sigma,tau,expected",
        [(1, -1, (1, 1)), (1, 1, (1, -1)), (-1, 1, (-1, -1)), (-1, -1, (-1, 1))],
    )
    def test_signed_addition_on_squares(self, sigma, tau, expected):
        total = connected_sum(self.L1, sigma, tau, self.L2, self.BASE, TWO_PUNCTURES)
        w1 = winding_profile(self.L1, TWO_PUNCTURES)
        w2 = winding_profile(self.L2, TWO_PUNCTURES)
        law = tuple(sigma * a - tau * b for a, b in zip(w1, w2))
        assert winding_profile(total, TWO_PUNCTURES) == law == expected

    def test_signed_addition_on_sampled_loops(self):
        loops = sample_loops(ONE_PUNCTURE, 30, seed=9)
        for i in range(15):
            l1, l2 = loops[2 * i], loops[2 * i + 1]
            w1 = winding_number(l1, ORIGIN)
            w2 = winding_number(l2, ORIGIN)
            for sigma in (1, -1):
                for tau in (1, -1):
                    total = connected_sum_auto(l1, sigma, tau, l2, ONE_PUNCTURE)
                    assert winding_number(total, ORIGIN) == sigma * w1 - tau * w2


class TestCrossingWord:
    def test_square_crossings(self):
        assert format_free_word(crossing_word(CCW_SQUARE, ONE_PUNCTURE)) == "x1"
        assert format_free_word(crossing_word(CW_SQUARE, ONE_PUNCTURE)) == "x1^-1"
        assert crossing_word(FAR_SQUARE, ONE_PUNCTURE).is_identity

    def test_second_puncture_uses_its_own_letter(self):
        loop = TestConnectedSum.L2
        assert format_free_word(crossing_word(loop, TWO_PUNCTURES)) == "x2"

    def test_vertex_on_ray_is_rejected(self):
        loop = FlaggedLoop(
            (Point.of(0, -3), Point.of(2, -4), Point.of(2, -5), Point.of(-2, -5)), 0
        )
        with pytest.raises(RayDegeneracyError):
            crossing_word(loop, ONE_PUNCTURE)

    def test_exponent_sums_match_windings(self):
        for loop in sample_loops(TWO_PUNCTURES, 30, seed=21):
            word = crossing_word(loop, TWO_PUNCTURES)
            assert word.exponent_sums(2) == winding_profile(loop, TWO_PUNCTURES)

    def test_product_law_for_normalized_loops(self):
        loops = sample_loops(TWO_PUNCTURES, 30, seed=13)
        base = DEFAULT_BASE_POINTS[0]
        for i in range(15):
            n1 = normalize_flag(loops[2 * i], base, TWO_PUNCTURES)
            n2 = normalize_flag(loops[2 * i + 1], base, TWO_PUNCTURES)
            total = connected_sum(n1, 1, -1, n2, base, TWO_PUNCTURES)
            product = crossing_word(n1, TWO_PUNCTURES) * crossing_word(
                n2, TWO_PUNCTURES
            )
            assert crossing_word(total, TWO_PUNCTURES) == product


class TestFreeWord:
    def test_reduction(self):
        assert free_reduce([(0, 1), (0, -1)]) == ()
        assert free_reduce([(0, 1), (1, 1), (1, -1), (0, 1)]) == ((0, 1), (0, 1))

    def test_rejects_unreduced(self):
        with pytest.raises(DomainError):
            FreeWord(((0, 1), (0, -1)))
        with pytest.raises(DomainError):
            FreeWord(((0, 0),))
        with pytest.raises(DomainError):
            FreeWord(((0, 2),))

    def test_group_identities(self):
        x = FreeWord.from_letters([(0, 1), (1, -1), (1, -1)])
        assert (x * x.inverse()).is_identity
        assert x.inverse().inverse() == x

    @given(
        st.lists(
            st.tuples(st.integers(0, 1), st.sampled_from((1, -1))), max_size=8
        ),
        st.lists(
            st.tuples(st.integers(0, 1), st.sampled_from((1, -1))), max_size=8
        ),
    )
    def test_product_exponents_add(self, xs, ys):
        u = FreeWord.from_letters(xs)
        v = FreeWord.from_letters(ys)
        sums = tuple(
            a + b for a, b in zip(u.exponent_sums(2), v.exponent_sums(2))
        )
        assert (u * v).exponent_sums(2) == sums

    def test_text_round_trip(self):
        for text in ["", "x1", "x1^-1", "x1 x1 x2^-1"]:
            word = parse_free_word(text)
            assert format_free_word(word) == text

    def test_parse_reduces_its_input(self):
        assert parse_free_word("x1 x1^-1 x2").letters == ((1, 1),)

    def test_parse_rejects_malformed(self):
        for text in ["x0", "y1", "x1^0", "x1^"]:
            with pytest.raises(ParseError):
                parse_free_word(text)


class TestSampling:
    def test_same_seed_same_loops(self):
        assert sample_loops(ONE_PUNCTURE, 12, seed=4) == sample_loops(
            ONE_PUNCTURE, 12, seed=4
        )

    def test_all_samples_are_valid(self):
        for loop in sample_loops(TWO_PUNCTURES, 30, seed=2):
            ensure_avoids(loop, TWO_PUNCTURES)
            crossing_word(loop, TWO_PUNCTURES)

    def test_windings_stay_small(self):
        for loop in sample_loops(ONE_PUNCTURE, 50, seed=17):
            assert abs(winding_number(loop, ORIGIN)) <= 3


class TestGroupLawOracle:
    def test_passes_on_seeded_sweep(self):
        report = verify_group_law(ONE_PUNCTURE, samples=10, seed=6)
        assert report.passed
        assert not report.failures
        assert report.lines()[-1] == "result: PASS"
        assert any("addition" in line for line in report.lines())

    def test_requires_one_puncture(self):
        with pytest.raises(DomainError):
            verify_group_law(TWO_PUNCTURES, samples=5, seed=0)


class TestLoopText:
    def test_literal_round_trip(self):
        for loop in (CCW_SQUARE, FlaggedLoop(CCW_SQUARE.vertices, 2, "B")):
            assert parse_loop_literal(format_loop_literal(loop)) == loop

    def test_fractional_coordinates(self):
        loop = parse_loop_literal("loop 0 F (1/3,-12) (1,1) (-1,1)")
        assert loop.vertices[0] == Point.of(Fraction(1, 3), -12)

    def test_malformed_literals(self):
        for text in [
            "loop 0 (1,1) (2,2) (3,1)",
            "loop 9 F (1,1) (2,2) (3,1)",
            "loop 0 F (1,1) (2,2)",
            "walk 0 F (1,1) (2,2) (3,1)",
            "loop 0 F (1,1) (2,2) (3;1)",
        ]:
            with pytest.raises(ParseError):
                parse_loop_literal(text)

    def test_plane_file_round_trip(self):
        text = (
            "# fixture\n"
            "punctures: (0,0) (10,0)\n"
            "loop 0 F (1,-1) (1,1) (-1,1) (-1,-1)\n"
            "loop 0 F (11,-1) (11,1) (9,1) (9,-1)\n"
        )
        plane, loops = parse_plane_file(text)
        assert plane == TWO_PUNCTURES
        assert len(loops) == 2
        assert winding_profile(loops[1], plane) == (0, 1)

    def test_plane_file_rejects_loop_through_puncture(self):
        text = "punctures: (0,0)\nloop 0 F (-1,0) (1,0) (1,2) (-1,2)\n"
        with pytest.raises(ParseError):
            parse_plane_file(text)

    def test_plane_file_requires_punctures_first(self):
        with pytest.raises(ParseError):
            parse_plane_file("loop 0 F (1,1) (2,2) (3,1)\n")
