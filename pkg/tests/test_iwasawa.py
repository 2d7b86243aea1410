import pytest

from conftest import load_fixture
from segtower.graph import RamificationData, build_graph
from segtower.iwasawa import (
    CharElement,
    InvariantTriple,
    TowerError,
    build_matrices,
    char_element,
    default_truncation,
    empirical_invariants,
    fit_orders,
    segment_growth_invariants,
    symbolic_invariants,
    tower_report,
    verify_char_factorization,
    verify_general_case,
    verify_partial_ramification,
    verify_theorem_A,
)
from segtower.linalg import IntPoly, LaurentPoly


class TestBuildMatrices:
    def test_glued_triangles_display(self):
        g, r, volt = load_fixture("glued_voltage_triangles.json")
        mats = build_matrices(g, r, volt)
        assert mats["D"] == [3, 3, 1, 1]
        A = mats["A"]
        gamma = LaurentPoly.gamma
        # ramified columns zero
        assert all(A[i][j].is_zero for i in range(4) for j in (2, 3))
        # row of B: entries from A and A2 into B
        assert A[2][0] == gamma(1) and A[2][1] == LaurentPoly.one()
        assert A[3][0] == LaurentPoly.const(2) and A[3][1] == LaurentPoly.one() + gamma(-1)

    def test_unramified_block_is_m(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        mats = build_matrices(g, r, {})
        M = mats["M"]
        assert len(M) == 3
        assert M[0][0] == LaurentPoly.const(2)
        # D' description: T symbol on ramified entries
        assert mats["Dprime"]["ramified"] == "T"

    def test_single_unramified_vertex(self):
        g, r, volt = load_fixture("voltage_triangle_a.json")
        mats = build_matrices(g, r, volt)
        assert mats["M"] == [[LaurentPoly.const(3)]]

    def test_no_unramified_rejected(self):
        g = build_graph(["a", "b"], [("a", "b")])
        r = RamificationData.totally_ramified(["a", "b"])
        with pytest.raises(Exception):
            build_matrices(g, r, {})


class TestCharElement:
    def test_motivating_placements(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        ce = char_element(g, r, {}, 2)
        assert ce.t_power == 2
        assert ce.body == IntPoly([4])
        g, r, _ = load_fixture("cycle5_ram25.json")
        ce = char_element(g, r, {}, 3)
        assert ce.t_power == 2
        assert ce.body == IntPoly([6])

    def test_glued_voltage_triangles(self):
        g, r, volt = load_fixture("glued_voltage_triangles.json")
        ce = char_element(g, r, volt, 3)
        assert ce.t_power == 2
        assert ce.body == IntPoly([9])

    def test_body_at_origin_matches_forest_product(self):
        # with trivial voltage, body(0) is the product of the segment counts
        from segtower.forests import forest_count_det
        from segtower.seal import decompose

        for name in ["cycle5_ram45.json", "cycle5_ram245.json", "three_segment.json"]:
            g, r, _ = load_fixture(name)
            ce = char_element(g, r, {}, 2)
            d = decompose(g, r)
            prod = 1
            for s in d.segments:
                prod *= forest_count_det(s.subgraph(g), list(s.ramified)).value
            assert ce.body[0] == prod, name

    def test_default_truncation(self):
        g, r, volt = load_fixture("voltage_segment.json")
        assert default_truncation(g, r, volt) == 2 * 1 + 8


class TestSymbolicInvariants:
    def test_examples(self):
        assert symbolic_invariants(CharElement(2, IntPoly([4]), LaurentPoly.const(4), 2)) == InvariantTriple(2, 1)
        assert symbolic_invariants(CharElement(2, IntPoly([9]), LaurentPoly.const(9), 3)) == InvariantTriple(2, 1)
        assert symbolic_invariants(CharElement(4, IntPoly([1]), LaurentPoly.one(), 5)) == InvariantTriple(0, 3)

    def test_zero_body_rejected(self):
        with pytest.raises(TowerError):
            symbolic_invariants(CharElement(1, IntPoly(), LaurentPoly.zero(), 2))


class TestEmpiricalInvariants:
    def test_motivating_p2(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        fit, levels, stable = empirical_invariants(g, r, {}, 2, 3)
        assert fit == InvariantTriple(2, 1, -2)
        assert stable
        assert [lv["kappa"] for lv in levels][:2] == [5, 5 * 2 * 4]

    def test_motivating_p3(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        fit, _, _ = empirical_invariants(g, r, {}, 3, 2)
        assert fit == InvariantTriple(0, 1, 0)

    def test_second_placement_p3(self):
        g, r, _ = load_fixture("cycle5_ram25.json")
        fit, _, _ = empirical_invariants(g, r, {}, 3, 3)
        assert fit == InvariantTriple(1, 1, -1)

    def test_matches_symbolic_for_trivial_voltage(self):
        for name, p in [("cycle5_ram45.json", 2), ("cycle5_ram245.json", 2), ("three_segment.json", 3)]:
            g, r, _ = load_fixture(name)
            sym = symbolic_invariants(char_element(g, r, {}, p))
            fit, levels, _ = empirical_invariants(g, r, {}, p)
            assert (sym.mu, sym.lam) == (fit.mu, fit.lam), name
            # the relation is exact at every level for trivial voltage
            from segtower.linalg import ord_p

            for lv in levels:
                assert ord_p(lv["kappa"], p) == fit.mu * p ** lv["n"] + fit.lam * lv["n"] + fit.nu

    def test_fit_orders_rejects_bad_data(self):
        # these points force lambda = -1, which is not a valid invariant
        assert fit_orders([(0, 0), (1, 0), (2, 1)], 2)[0] is None
        # and these force mu = 1/2 at p = 3
        assert fit_orders([(1, 0), (2, 1), (3, 8)], 3)[0] is None
        with pytest.raises(TowerError):
            fit_orders([(0, 1)], 2)


class TestVerdicts:
    def test_theorem_A_levels(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        for p, n, expected in [(3, 1, 240), (2, 1, 40), (2, 2, 1280), (3, 0, 5)]:
            v = verify_theorem_A(g, r, {}, p, n)
            assert v.ok and v.lhs == expected == v.rhs

    def test_theorem_A_needs_trivial_voltage(self):
        g, r, volt = load_fixture("voltage_segment.json")
        with pytest.raises(TowerError):
            verify_theorem_A(g, r, volt, 3, 1)

    def test_partial_ramification(self):
        g, r, _ = load_fixture("cycle5_partial.json")
        v = verify_partial_ramification(g, r, {}, 2, 2)
        assert v.ok and v.lhs == 1600
        assert v.detail["n0"] == 1 and v.detail["l_n0"] == 3
        v = verify_partial_ramification(g, r, {}, 3, 2)
        assert v.ok

    def test_partial_reduces_to_A_at_depth_zero(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        va = verify_theorem_A(g, r, {}, 2, 2)
        vp = verify_partial_ramification(g, r, {}, 2, 2, n0=0)
        assert vp.ok and vp.lhs == va.lhs and vp.rhs == va.rhs

    def test_general_case_voltage(self):
        g, r, volt = load_fixture("voltage_segment.json")
        v = verify_general_case(g, r, volt, 3, 1)
        assert v.ok
        assert v.detail["admissible_sets"] == [[0]]
        assert v.detail["segment_forests"] == [320]

    def test_general_matches_A_for_trivial_voltage(self):
        for name in ["cycle5_ram45.json", "cycle5_ram245.json", "three_segment.json"]:
            g, r, _ = load_fixture(name)
            va = verify_theorem_A(g, r, {}, 2, 1)
            vg = verify_general_case(g, r, {}, 2, 1)
            assert va.ok and vg.ok and va.lhs == vg.lhs, name

    def test_general_at_level_zero(self):
        g, r, _ = load_fixture("cycle5_ram245.json")
        v = verify_general_case(g, r, {}, 5, 0)
        assert v.ok and v.lhs == 5

    def test_char_factorization_glued(self):
        g, r, volt = load_fixture("glued_voltage_triangles.json")
        v = verify_char_factorization(g, r, volt, 3)
        assert v.ok
        assert v.lhs == {"mu": 2, "lambda": 1}
        assert [f["mu"] for f in v.detail["factors"]] == [1, 1]
        assert [f["lambda"] for f in v.detail["factors"]] == [0, 0]

    def test_char_factorization_single_segment(self):
        g, r, volt = load_fixture("voltage_segment.json")
        v = verify_char_factorization(g, r, volt, 3)
        assert v.ok and v.detail["factorization_exact"]


class TestSegmentGrowth:
    def test_trivial_voltage_exact(self):
        # lambda = 0 and mu = ord_p(F_t) for trivial voltage, at every level
        g = build_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("b", "c"), ("c", "d")])
        r = RamificationData.totally_ramified(["a", "d"])
        fit, sym, levels, stable = segment_growth_invariants(g, r, {}, 3, 2)
        assert sym.lam == 0
        assert fit.lam == 0 and fit.mu == sym.mu
        base = levels[0]["forest_count"]
        for lv in levels:
            assert lv["forest_count"] == base ** (3 ** lv["n"])

    def test_voltage_segment_growth(self):
        g, r, volt = load_fixture("voltage_segment.json")
        fit, sym, levels, stable = segment_growth_invariants(g, r, volt, 3, 2)
        assert [lv["forest_count"] for lv in levels][:2] == [5, 320]
        assert (fit.mu, fit.lam) == (sym.mu, sym.lam) == (0, 0)
        assert stable

    def test_voltage_triangles(self):
        for name in ["voltage_triangle_a.json", "voltage_triangle_b.json"]:
            g, r, volt = load_fixture(name)
            fit, sym, _, _ = segment_growth_invariants(g, r, volt, 3, 2)
            assert (sym.mu, sym.lam) == (1, 0), name
            assert (fit.mu, fit.lam) == (1, 0), name


class TestTowerReport:
    def test_report_fields(self):
        g, r, _ = load_fixture("cycle5_ram45.json")
        report = tower_report(g, r, {}, 2, 3)
        assert report["symbolic"] == {"mu": 2, "lambda": 1}
        assert report["empirical"] == {"mu": 2, "lambda": 1, "nu": -2}
        assert report["agreement"] is True
        assert report["fit_stable"] is True
        assert len(report["levels"]) == 4
