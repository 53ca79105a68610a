import math

import pytest

from tsplab import (
    Point,
    convex_hull,
    generate_convex,
    generate_grid,
    generate_with_inner,
    grid_angle_lower_bound,
    orient,
    read_instance,
    read_tour,
    validate,
    write_instance,
    write_tour,
)
from tsplab.errors import (
    CollinearTripleError,
    DuplicatePointError,
    GenerationExhaustedError,
    ParseError,
    TooSmallError,
)

from conftest import brute_hull


class TestValidate:
    def test_square(self):
        inst = validate([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert inst.n == 4
        assert inst.inner_count == 0
        assert inst.hull == (1, 2, 3, 4)

    def test_collinear_triple(self):
        with pytest.raises(CollinearTripleError) as err:
            validate([(0, 0), (1, 1), (2, 2), (0, 2)])
        assert err.value.labels == (1, 2, 3)

    def test_interior_point(self):
        inst = validate([(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])
        assert inst.inner_count == 1
        assert inst.inner_labels == (5,)

    def test_duplicate(self):
        with pytest.raises(DuplicatePointError) as err:
            validate([(0, 0), (3, 1), (0, 0), (1, 3)])
        assert err.value.labels == (1, 3)

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            validate([(0, 0), (1, 0)])

    def test_grid_range_enforced(self):
        with pytest.raises(ValueError):
            validate([(0, 0), (5, 1), (1, 5)], grid_size=4)

    def test_coordinate_magnitude_enforced(self):
        with pytest.raises(ValueError):
            validate([(0, 0), (2**31, 1), (1, 3)])

    def test_points_input_relabeled(self):
        inst = validate([Point(9, 0, 0), Point(9, 2, 0), Point(9, 1, 2)])
        assert [p.id for p in inst.points] == [1, 2, 3]


class TestGenerateGrid:
    def test_deterministic(self):
        a = generate_grid(10, 100, 1)
        b = generate_grid(10, 100, 1)
        assert a == b
        assert [(p.x, p.y) for p in a.points] == [(p.x, p.y) for p in b.points]

    def test_pigeonhole_exhaustion(self):
        with pytest.raises(GenerationExhaustedError):
            generate_grid(10, 3, 1)

    def test_output_valid_and_angle_bounded(self):
        inst = generate_grid(20, 64, 7)
        revalidated = validate([(p.x, p.y) for p in inst.points], grid_size=64)
        assert revalidated == inst
        assert inst.metrics.epsilon >= grid_angle_lower_bound(64)

    def test_coordinates_in_grid(self):
        inst = generate_grid(12, 16, 3)
        assert all(0 <= p.x < 16 and 0 <= p.y < 16 for p in inst.points)


class TestGenerateConvex:
    def test_all_points_on_hull(self):
        inst = generate_convex(8, 128, 3)
        assert inst.inner_count == 0
        # recompute the hull directly rather than trusting the instance
        assert set(convex_hull(inst.points)) == set(range(1, 9))

    def test_triangle(self):
        inst = generate_convex(3, 32, 0)
        assert inst.n == 3
        assert inst.inner_count == 0

    def test_deterministic(self):
        assert generate_convex(6, 64, 11) == generate_convex(6, 64, 11)

    def test_headroom_enforced(self):
        with pytest.raises(ValueError):
            generate_convex(10, 64, 0)


class TestGenerateWithInner:
    def test_counts(self):
        inst = generate_with_inner(6, 2, 256, 5)
        assert inst.n == 8
        assert len(inst.hull) == 6
        assert inst.inner_count == 2
        assert set(convex_hull(inst.points)) == set(inst.hull)

    def test_k_zero_matches_convex_family(self):
        inst = generate_with_inner(5, 0, 128, 2)
        assert inst.inner_count == 0

    def test_inner_points_strictly_inside(self):
        inst = generate_with_inner(7, 3, 256, 9)
        hull_pts = [inst.point(lbl) for lbl in inst.hull]
        h = len(hull_pts)
        for lbl in inst.inner_labels:
            p = inst.point(lbl)
            # hull winds strictly around p: every hull edge sees it left
            assert all(
                orient(hull_pts[i], hull_pts[(i + 1) % h], p) == 1 for i in range(h)
            )

    @pytest.mark.parametrize("h,k", [(3, 0), (5, 2), (8, 4), (12, 3), (9, 1)])
    def test_exact_hull_and_inner_counts(self, h, k):
        inst = generate_with_inner(h, k, 8 * h + 64, seed=h * 100 + k)
        assert len(inst.hull) == h
        assert inst.inner_count == k

    def test_hull_matches_half_plane_oracle(self):
        inst = generate_with_inner(6, 3, 256, 21)
        assert set(inst.hull) == brute_hull(inst.points)


class TestInstanceFiles:
    def test_round_trip(self, tmp_path):
        inst = generate_grid(9, 32, 13)
        path = tmp_path / "a.tsp"
        write_instance(inst, path)
        again = read_instance(path)
        assert again == inst
        assert again.grid_size == 32

    def test_free_form_round_trip(self, tmp_path):
        inst = validate([(0, 0), (7, 1), (3, 9)])
        path = tmp_path / "free.tsp"
        write_instance(inst, path)
        assert read_instance(path) == inst

    def test_row_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.tsp"
        path.write_text("3 0\n0 0\n1 0\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_instance(path)

    def test_collinear_file(self, tmp_path):
        path = tmp_path / "col.tsp"
        path.write_text("3 0\n0 0\n1 1\n2 2\n", encoding="utf-8")
        with pytest.raises(CollinearTripleError):
            read_instance(path)

    def test_out_of_range_coordinate(self, tmp_path):
        path = tmp_path / "range.tsp"
        path.write_text("3 4\n0 0\n9 1\n1 3\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_instance(path)

    def test_malformed_row(self, tmp_path):
        path = tmp_path / "row.tsp"
        path.write_text("3 0\n0 0\n1\n2 2\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_instance(path)

    def test_trailing_content_rejected(self, tmp_path):
        path = tmp_path / "trail.tsp"
        path.write_text("3 0\n0 0\n1 0\n0 1\nextra 1\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_instance(path)


class TestTourFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "t.tour"
        write_tour((3, 1, 4, 2, 5), path)
        assert read_tour(path) == (3, 1, 4, 2, 5)

    def test_not_a_permutation(self, tmp_path):
        path = tmp_path / "t.tour"
        path.write_text("1 2 2 4\n", encoding="utf-8")
        with pytest.raises(ParseError):
            read_tour(path)


class TestDistanceMatrix:
    def test_symmetric_and_exact(self):
        inst = generate_grid(8, 32, 5)
        n = inst.n
        d = inst.distance_matrix
        for i in range(n):
            assert d[i * n + i] == 0.0
            for j in range(n):
                assert d[i * n + j] == d[j * n + i]
                p, q = inst.points[i], inst.points[j]
                assert d[i * n + j] == math.sqrt((p.x - q.x) ** 2 + (p.y - q.y) ** 2)
