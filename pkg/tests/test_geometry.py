import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anonytope.errors import ContractViolation, IngestionError
from anonytope.geometry import (ROLE_QUASI, ROLE_SENSITIVE, Column,
                                NumericTable, balls_intersect,
                                min_enclosing_ball, normalize_dataset)

from oracles import dataset, meb_bruteforce

points_2d = st.lists(
    st.tuples(st.floats(0, 1, allow_nan=False), st.floats(0, 1, allow_nan=False)),
    min_size=1, max_size=10)


def make_table(values, roles=None):
    names = [f"c{i}" for i in range(len(values[0]) if values else 1)]
    roles = roles or [ROLE_QUASI] * len(names)
    cols = [Column(n, r) for n, r in zip(names, roles)]
    return NumericTable(columns=cols,
                        rows=[dict(zip(names, row)) for row in values])


class TestNormalize:
    def test_single_row_maps_to_origin(self):
        data = normalize_dataset(make_table([(25, 47677)]))
        assert np.allclose(data.points, [[0.0, 0.0]])
        assert data.scale_params == ((25.0, 25.0), (47677.0, 47677.0))

    def test_extreme_rows_hit_corners(self, sample_data):
        assert np.allclose(sample_data.point(2), [0.0, 0.0])
        assert np.allclose(sample_data.point(5), [1.0, 1.0])

    def test_interior_row_minmax(self, sample_data):
        assert np.allclose(sample_data.point(1),
                           [(25 - 22) / 30, (47677 - 47602) / 307])

    def test_non_quasi_columns_excluded(self, sample_data):
        assert sample_data.dim == 2
        assert sample_data.qi_names == ("Age", "ZIP")

    def test_denormalize_roundtrip(self, sample_table, sample_data):
        for rid in sample_data.row_ids:
            orig = [sample_table.rows[rid - 1]["Age"],
                    sample_table.rows[rid - 1]["ZIP"]]
            back = sample_data.denormalize(sample_data.point(rid))
            assert np.allclose(back, orig, atol=1e-12)

    def test_non_numeric_cell_names_row_and_column(self):
        with pytest.raises(IngestionError, match=r"row 2.*c0"):
            make_table([(1, 2), ("oops", 3)])

    def test_empty_table_rejected(self):
        with pytest.raises(IngestionError):
            make_table([])


class TestMinEnclosingBall:
    def test_single_point(self):
        ball = min_enclosing_ball([(3.0, 4.0)])
        assert ball.radius == 0.0
        assert np.allclose(ball.center, [3, 4])

    def test_two_points_diametral(self):
        ball = min_enclosing_ball([(0, 0), (1, 0)])
        assert ball.radius == pytest.approx(0.5, abs=1e-12)
        assert np.allclose(ball.center, [0.5, 0])

    def test_equilateral_circumradius(self):
        ball = min_enclosing_ball([(0, 0), (1, 0), (0.5, math.sqrt(3) / 2)])
        assert ball.radius == pytest.approx(1 / math.sqrt(3), rel=1e-9)

    def test_obtuse_triangle_uses_diametral_pair(self):
        ball = min_enclosing_ball([(0, 0), (2, 0), (1, 0.1)])
        assert ball.radius == pytest.approx(1.0, rel=1e-12)
        assert np.allclose(ball.center, [1, 0], atol=1e-9)

    def test_empty_input_rejected(self):
        with pytest.raises(ContractViolation):
            min_enclosing_ball(np.empty((0, 2)))

    def test_duplicate_points(self):
        ball = min_enclosing_ball([(1, 1)] * 4)
        assert ball.radius == 0.0

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_matches_bruteforce_oracle(self, d):
        rng = random.Random(17 * d)
        for _ in range(60):
            n = rng.randint(1, 10)
            pts = [[rng.random() for _ in range(d)] for _ in range(n)]
            got = min_enclosing_ball(pts).radius
            want = meb_bruteforce(pts)
            assert got == pytest.approx(want, rel=1e-9, abs=1e-12)

    @given(points_2d)
    @settings(max_examples=150, deadline=None)
    def test_containment_invariant(self, pts):
        ball = min_enclosing_ball(pts)
        for p in pts:
            assert np.linalg.norm(ball.center - np.array(p)) \
                <= ball.radius + 1e-9

    @given(points_2d, st.tuples(st.floats(0, 1), st.floats(0, 1)))
    @settings(max_examples=100, deadline=None)
    def test_adding_point_never_shrinks(self, pts, extra):
        before = min_enclosing_ball(pts).radius
        after = min_enclosing_ball(pts + [extra]).radius
        assert after >= before - 1e-9


class TestBallsIntersect:
    def test_single_point_at_zero(self):
        assert balls_intersect([(0.3, 0.7)], 0.0)

    def test_below_threshold(self):
        assert not balls_intersect([(0, 0), (1, 0)], 0.4)

    def test_closed_ball_boundary_counts(self):
        assert balls_intersect([(0, 0), (1, 0)], 0.5)

    def test_negative_eps_rejected(self):
        with pytest.raises(ContractViolation):
            balls_intersect([(0, 0)], -0.1)

    @given(points_2d, st.floats(0, 2), st.floats(0, 0.5))
    @settings(max_examples=100, deadline=None)
    def test_monotone_in_eps(self, pts, eps, bump):
        if balls_intersect(pts, eps):
            assert balls_intersect(pts, eps + bump)
