import numpy as np
import pytest

from intervalshift import (
    Collection,
    Interval,
    PropertySpec,
    UnitSquare,
    apply_shifts,
    build_intersection_graph,
    check_property,
    grid_search_lp,
    max_point_overlap,
    oracle_gathering,
    oracle_kclique_full,
    oracle_kclique_windows,
    oracle_squares,
    solve_property,
    total_moving_distance,
    total_square_moving_distance,
    verify_shifted_property,
)

from conftest import grid_centers, weighted_collection


class TestOracleGathering:
    def test_three_spread_intervals(self):
        coll = Collection.from_centers([0.0, 2.0, 4.0])
        assert oracle_gathering(coll) == (1.5, 3.0)

    def test_single_interval(self):
        coll = Collection([Interval(3.0, 2.0)])
        point, cost = oracle_gathering(coll)
        assert cost == 0.0
        assert point == 2.0  # smallest zero-cost endpoint

    def test_weighted_pair(self):
        coll = Collection([Interval(0.0, 1.0, 1.0), Interval(10.0, 1.0, 3.0)])
        assert oracle_gathering(coll) == (9.5, 9.0)

    def test_no_sampled_point_beats_the_oracle(self):
        rng = np.random.default_rng(51)
        coll = weighted_collection(rng, 15)
        _, best = oracle_gathering(coll)
        xs = rng.uniform(-40, 40, size=10_000)
        costs = [total_moving_distance(coll, float(x)) for x in xs]
        assert min(costs) >= best - 1e-12

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty instance"):
            oracle_gathering(Collection([]))


class TestOracleSquares:
    def test_two_squares(self):
        squares = [UnitSquare(0.0, 0.0), UnitSquare(3.0, 4.0)]
        point, cost = oracle_squares(squares)
        assert cost == 5.0
        # the optimum is a flat rectangle; any corner of it is a valid answer
        assert total_square_moving_distance(squares, point) == 5.0

    def test_single_square_free(self):
        _, cost = oracle_squares([UnitSquare(2.0, -1.0)])
        assert cost == 0.0


class TestOracleKClique:
    def test_full_matches_windows_on_unit_instances(self):
        rng = np.random.default_rng(52)
        for _ in range(30):
            n = int(rng.integers(2, 9))
            k = int(rng.integers(1, n + 1))
            coll = Collection.from_centers(grid_centers(rng, n).tolist())
            full_cost, subset, _ = oracle_kclique_full(coll, k)
            win_cost, _, _ = oracle_kclique_windows(coll, k)
            assert full_cost == pytest.approx(win_cost, abs=1e-12)
            assert len(subset) == k

    def test_pair_example(self):
        coll = Collection.from_centers([0.0, 3.0, 6.0, 9.0, 12.0])
        cost, start, point = oracle_kclique_windows(coll, 2)
        assert (cost, start, point) == (2.0, 1, 0.5)

    def test_k_one_is_free(self):
        coll = Collection.from_centers([0.0, 9.0])
        cost, _, _ = oracle_kclique_full(coll, 1)
        assert cost == 0.0

    def test_k_equals_n_gathers_everything(self):
        coll = Collection.from_centers([0.0, 3.0, 6.0])
        cost, subset, _ = oracle_kclique_full(coll, 3)
        assert subset == (0, 1, 2)
        assert cost == pytest.approx(oracle_gathering(coll)[1])

    def test_size_cap(self):
        coll = Collection.from_centers([float(i) for i in range(13)])
        with pytest.raises(ValueError, match="full oracle limited to 12"):
            oracle_kclique_full(coll, 2)


class TestMaxPointOverlap:
    def test_simple_stack(self):
        coll = Collection.from_centers([0.0, 0.2, 0.4, 5.0])
        count, point = max_point_overlap(coll)
        assert count == 3
        assert total_moving_distance(Collection(coll.items[:3]), point) == 0.0

    def test_empty(self):
        assert max_point_overlap(Collection([])) == (0, 0.0)

    def test_tolerance_widens_intervals(self):
        coll = Collection.from_centers([0.0, 1.2])
        assert max_point_overlap(coll)[0] == 1
        assert max_point_overlap(coll, tol=0.2)[0] == 2


class TestCheckProperty:
    def test_complete_iff_common_point(self):
        rng = np.random.default_rng(53)
        for _ in range(40):
            coll = weighted_collection(rng, int(rng.integers(1, 10)), span=6)
            has_common = max_point_overlap(coll)[0] == len(coll.items)
            assert check_property(coll, "complete").holds == has_common

    def test_edgeless_spread_instance(self):
        coll = Collection.from_centers([0.0, 2.0, 4.0])
        assert check_property(coll, "edgeless").holds
        report = check_property(Collection.from_centers([0.0, 0.5]), "edgeless")
        assert not report.holds
        assert report.witness == (0, 1)

    def test_acyclic_triangle_witness(self):
        coll = Collection.from_centers([0.0, 0.5, 1.0])
        report = check_property(coll, "acyclic")
        assert not report.holds
        assert set(report.witness) == {0, 1, 2}

    def test_acyclic_path(self):
        coll = Collection.from_centers([0.0, 0.9, 1.8])
        assert check_property(coll, "acyclic").holds

    def test_kclique_with_witness(self):
        coll = Collection.from_centers([0.0, 0.2, 0.4, 9.0])
        report = check_property(coll, "kclique", 3)
        assert report.holds
        assert report.witness == (0, 1, 2)
        assert check_property(coll, "no_kclique", 3).holds is False
        assert check_property(coll, "kclique", 4).holds is False

    def test_kconnected_path_spacing(self):
        coll = Collection.from_centers([0.0, 0.9, 1.8, 2.7])
        assert check_property(coll, "kconnected", 1).holds
        assert not check_property(coll, "kconnected", 2).holds

    def test_kconnected_needs_more_than_k_vertices(self):
        coll = Collection.from_centers([0.0, 0.1])
        report = check_property(coll, "kconnected", 2)
        assert not report.holds
        assert report.witness == ("needs_more_vertices",)

    def test_graph_input(self):
        coll = Collection.from_centers([0.0, 0.5, 4.0])
        graph = build_intersection_graph(coll)
        assert check_property(graph, "kclique", 2).holds
        assert not check_property(graph, "kclique", 3).holds

    def test_unknown_property(self):
        with pytest.raises(ValueError, match="unknown property"):
            check_property(Collection.from_centers([0.0]), "bipartite")

    def test_k_required(self):
        with pytest.raises(ValueError, match="needs a clique size"):
            check_property(Collection.from_centers([0.0]), "kclique")


class TestVerifyShiftedProperty:
    def test_accepts_lp_solutions(self):
        coll = Collection.from_centers([0.0, 0.0, 0.0])
        spec = PropertySpec("edgeless")
        sol = solve_property(coll, spec)
        assert verify_shifted_property(coll, spec, sol.displacements).holds

    def test_rejects_null_shift_when_property_fails(self):
        coll = Collection.from_centers([0.0, 0.0])
        spec = PropertySpec("edgeless")
        report = verify_shifted_property(coll, spec, (0.0, 0.0))
        assert not report.holds

    def test_half_eps_margin_is_enough(self):
        # displacement that separates by exactly 1 + eps passes the
        # eps/2-widened adjacency test
        eps = 1e-6
        coll = Collection.from_centers([0.0, 0.0])
        report = verify_shifted_property(
            coll, PropertySpec("edgeless", eps=eps), (0.0, 1.0 + eps)
        )
        assert report.holds
        barely = verify_shifted_property(
            coll, PropertySpec("edgeless", eps=eps), (0.0, 1.0 + eps / 4)
        )
        assert not barely.holds


class TestGridSearch:
    def test_edgeless_stacked_triple(self):
        coll = Collection.from_centers([0.0, 0.0, 0.0])
        got = grid_search_lp(coll, PropertySpec("edgeless"))
        assert got == pytest.approx(2.0, abs=1e-3)

    def test_edgeless_pair(self):
        # touching endpoints do not count as overlap here, so separating the
        # pair by exactly one unit is feasible and costs half a unit
        coll = Collection.from_centers([0.0, 0.5])
        got = grid_search_lp(coll, PropertySpec("edgeless"))
        assert got == pytest.approx(0.5, abs=1e-12)

    def test_no_kclique_pair(self):
        coll = Collection.from_centers([0.0, 0.0])
        got = grid_search_lp(coll, PropertySpec("no_kclique", k=2))
        assert got == pytest.approx(1.0, abs=1e-3)

    def test_kconnected_fixture(self):
        # strict overlap pushes the grid a fine step past the LP optimum of 2:
        # one step right for the first interval, 2 + one step left for the far one
        coll = Collection.from_centers([0.0, 1.0, 4.0])
        got = grid_search_lp(coll, PropertySpec("kconnected", k=1))
        assert got == pytest.approx(2.0625, abs=1e-9)

    def test_already_satisfied_costs_nothing(self):
        coll = Collection.from_centers([0.0, 5.0])
        assert grid_search_lp(coll, PropertySpec("edgeless")) == 0.0

    def test_never_below_lp_optimum(self):
        rng = np.random.default_rng(54)
        specs = [
            PropertySpec("edgeless"),
            PropertySpec("acyclic"),
            PropertySpec("no_kclique", k=2),
            PropertySpec("kconnected", k=1),
        ]
        for _ in range(12):
            n = int(rng.integers(2, 5))
            coll = Collection.from_centers(grid_centers(rng, n, span=3).tolist())
            for spec in specs:
                lp_cost = solve_property(coll, spec).total_cost
                grid_cost = grid_search_lp(coll, spec)
                assert grid_cost >= lp_cost - 1e-3

    def test_size_cap(self):
        coll = Collection.from_centers([0.0, 1.0, 2.0, 3.0, 4.0])
        with pytest.raises(ValueError, match="grid oracle limited to 4"):
            grid_search_lp(coll, PropertySpec("edgeless"))

    def test_mask_agrees_with_checker(self):
        # the vectorized feasibility mask and the single-point checker are
        # independent routes; sample both on random shift vectors
        from intervalshift.oracle import STRICT_TOL, _grid_feasible_mask

        rng = np.random.default_rng(55)
        specs = [
            ("edgeless", None),
            ("acyclic", None),
            ("no_kclique", 2),
            ("no_kclique", 3),
            ("kconnected", 1),
            ("kconnected", 2),
        ]
        for name, k in specs:
            n = 4
            coll = Collection.from_centers(grid_centers(rng, n, span=3).tolist())
            shifts = rng.integers(-6, 7, size=(60, n)) * 0.25
            centers = np.array([iv.center for iv in coll])
            halves = np.full(n, 0.5)
            mask = _grid_feasible_mask(centers[None, :] + shifts, halves, name, k)
            for row, ok in zip(shifts, mask):
                moved = apply_shifts(coll, row.tolist())
                assert check_property(moved, name, k, tol=STRICT_TOL).holds == ok
