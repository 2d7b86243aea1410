import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segtower.linalg import (
    IntPoly,
    LaurentPoly,
    LinalgError,
    det_int,
    det_laurent,
    expand_at_gamma,
    laurent_exact_div,
    mu_lambda,
    ord_p,
)


def det_cofactor(m):
    """Independent oracle: Leibniz expansion."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        # count inversions for the sign
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if seen[i] > seen[j])
        sign = -1 if inv % 2 else 1
        prod = 1
        for i in range(n):
            prod *= m[i][perm[i]]
        total += sign * prod
    return total


class TestLaurentPoly:
    def test_constructors_and_zero(self):
        assert LaurentPoly.zero().is_zero
        assert LaurentPoly({0: 0, 1: 0}).is_zero
        assert LaurentPoly.gamma(3).coeffs == {3: 1}
        assert LaurentPoly.const(-2).coeffs == {0: -2}

    def test_arithmetic(self):
        g = LaurentPoly.gamma(1)
        gi = LaurentPoly.gamma(-1)
        assert g * gi == LaurentPoly.one()
        assert (g + gi) - g == gi
        assert g**3 == LaurentPoly.gamma(3)
        assert (g - g).is_zero
        assert 2 * g == LaurentPoly.gamma(1, 2)

    def test_shift_and_exponents(self):
        f = LaurentPoly({-2: 1, 3: 5})
        assert f.min_exp() == -2 and f.max_exp() == 3
        assert f.shift(2).min_exp() == 0
        assert f.at_one() == 6

    def test_exact_division(self):
        a = LaurentPoly({0: 1, 1: 2, 2: 1})  # (1+g)^2
        b = LaurentPoly({0: 1, 1: 1})
        assert laurent_exact_div(a, b) == b
        assert laurent_exact_div(a.shift(-3), b) == b.shift(-3)
        with pytest.raises(LinalgError):
            laurent_exact_div(LaurentPoly({0: 1, 1: 1}), LaurentPoly({0: 2}))

    def test_division_by_zero(self):
        with pytest.raises(LinalgError):
            laurent_exact_div(LaurentPoly.one(), LaurentPoly.zero())


class TestDetInt:
    def test_identity(self):
        m = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        assert det_int(m) == 1

    def test_level_one_cover_matrix(self):
        # doubled-edge path cover at level 1: minor with marked rows removed
        m = [
            [3, 0, 0, -1, -1, 0],
            [0, 3, 0, 0, -1, -1],
            [0, 0, 3, -1, 0, -1],
            [-1, 0, -1, 3, 0, 0],
            [-1, -1, 0, 0, 3, 0],
            [0, -1, -1, 0, 0, 3],
        ]
        assert det_int(m) == 320

    def test_against_cofactor_oracle(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert det_int(m) == det_cofactor(m)

    def test_repeated_row_is_zero(self):
        m = [[1, 2, 3], [1, 2, 3], [4, 5, 6]]
        assert det_int(m) == 0

    def test_block_diagonal_multiplicative(self):
        rng = random.Random(11)
        for _ in range(20):
            a = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            b = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
            m = [
                [a[0][0], a[0][1], 0, 0],
                [a[1][0], a[1][1], 0, 0],
                [0, 0, b[0][0], b[0][1]],
                [0, 0, b[1][0], b[1][1]],
            ]
            assert det_int(m) == det_int(a) * det_int(b)

    def test_non_square_rejected(self):
        with pytest.raises(LinalgError):
            det_int([[1, 2]])

    def test_empty_matrix(self):
        assert det_int([]) == 1


class TestDetLaurent:
    def test_unit_cancellation(self):
        g = LaurentPoly.gamma(1)
        gi = LaurentPoly.gamma(-1)
        z = LaurentPoly.zero()
        assert det_laurent([[g, z], [z, gi]]) == LaurentPoly.one()

    def test_voltage_triangle_determinants(self):
        # both placements of the voltage on a doubled triangle give constant 3
        g = LaurentPoly.gamma(1)
        gi = LaurentPoly.gamma(-1)
        one = LaurentPoly.one()
        # single unramified vertex of degree 3: the block is just [3]
        assert det_laurent([[LaurentPoly.const(3)]]) == LaurentPoly.const(3)
        # doubled path block with one voltage edge: det = 9 - (1+g)(1+g^-1)
        m = [
            [LaurentPoly.const(3), -(one + g)],
            [-(one + gi), LaurentPoly.const(3)],
        ]
        assert det_laurent(m) == LaurentPoly({0: 7, 1: -1, -1: -1})

    def test_against_2x2_oracle(self):
        rng = random.Random(3)
        pool = [LaurentPoly.gamma(-1), LaurentPoly.one(), LaurentPoly.gamma(1), LaurentPoly.gamma(1, 2)]
        for _ in range(40):
            a, b, c, d = (rng.choice(pool) for _ in range(4))
            assert det_laurent([[a, b], [c, d]]) == a * d - b * c

    def test_zero_column(self):
        z = LaurentPoly.zero()
        one = LaurentPoly.one()
        assert det_laurent([[z, one], [z, one]]).is_zero

    def test_pivot_swap(self):
        z = LaurentPoly.zero()
        one = LaurentPoly.one()
        assert det_laurent([[z, one], [one, z]]) == LaurentPoly.const(-1)

    def test_commutes_with_expansion(self):
        # det then expand equals expand entrywise then det over IntPoly,
        # for non-negative exponents
        rng = random.Random(5)
        for _ in range(25):
            m = [
                [LaurentPoly({e: rng.randint(-3, 3) for e in range(0, 3)}) for _ in range(3)]
                for _ in range(3)
            ]
            lhs = expand_at_gamma(det_laurent(m), 0)
            rows = [[expand_at_gamma(x, 0) for x in row] for row in m]
            # Leibniz over IntPoly
            total = IntPoly()
            for perm in permutations(range(3)):
                inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
                prod = IntPoly([1]) if inv % 2 == 0 else IntPoly([-1])
                for i in range(3):
                    prod = prod * rows[i][perm[i]]
                total = total + prod
            assert lhs == total


class TestExpandAtGamma:
    def test_gamma(self):
        assert expand_at_gamma(LaurentPoly.gamma(1), 0) == IntPoly([1, 1])

    def test_geometric_series(self):
        assert expand_at_gamma(LaurentPoly.gamma(-1), 3) == IntPoly([1, -1, 1, -1])

    def test_binomial_square(self):
        f = LaurentPoly({2: 1, 1: -2, 0: 1})  # (g-1)^2
        assert expand_at_gamma(f, 0) == IntPoly([0, 0, 1])

    def test_inverse_pair_truncates_consistently(self):
        f = LaurentPoly({1: 1, -1: 1, 0: -2})  # g + g^-1 - 2 = T^2/(1+T)
        got = expand_at_gamma(f, 5)
        assert got == IntPoly([0, 0, 1, -1, 1, -1])

    def test_zero(self):
        assert expand_at_gamma(LaurentPoly.zero(), 4).is_zero


class TestMuLambda:
    def test_examples(self):
        assert mu_lambda(IntPoly([0, 0, 4]), 2) == (2, 2)
        assert mu_lambda(IntPoly([0, 0, 6]), 3) == (1, 2)
        assert mu_lambda(IntPoly([0, 0, 9]), 3) == (2, 2)

    def test_least_index_rule(self):
        # coefficients 12, 2, 8 at p=2: orders 2, 1, 3 -> mu 1 at index 1
        assert mu_lambda(IntPoly([12, 2, 8]), 2) == (1, 1)

    def test_zero_rejected(self):
        with pytest.raises(LinalgError):
            mu_lambda(IntPoly(), 2)

    @given(
        st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(lambda cs: any(cs)),
        st.sampled_from([2, 3, 5]),
        st.integers(0, 3),
    )
    @settings(max_examples=60, deadline=None)
    def test_unit_multiplier_invariance(self, coeffs, p, k):
        # multiplying by the unit (1+T)^k changes neither mu nor lambda
        f = IntPoly(coeffs)
        unit = IntPoly([1, 1])
        fk = f
        for _ in range(k):
            fk = fk * unit
        assert mu_lambda(f, p) == mu_lambda(fk, p)


def test_ord_p():
    assert ord_p(0, 2) is None
    assert ord_p(320, 2) == 6
    assert ord_p(320, 3) == 0
    assert ord_p(-27, 3) == 3
