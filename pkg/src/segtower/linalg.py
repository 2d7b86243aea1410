"""Exact linear algebra over Z and over Z[g, g^-1].

Determinants use Bareiss fraction-free elimination, so everything stays in
exact integer (or integer-polynomial) arithmetic.  Laurent polynomials in the
deck-group generator g can be expanded at g = 1 + T, giving ordinary integer
polynomials whose p-adic coefficient data yield the mu/lambda invariants.
"""

from __future__ import annotations


class LinalgError(ValueError):
    pass


class LaurentPoly:
    """Laurent polynomial sum c_e * g^e with integer coefficients.

    Stored as a dict mapping exponent -> coefficient; zero coefficients are
    never stored, so the zero polynomial is the empty dict.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def gamma(cls, exponent, coeff=1):
        """coeff * g^exponent"""
        return cls({exponent: coeff})

    @property
    def is_zero(self):
        return not self.coeffs

    def min_exp(self):
        if self.is_zero:
            raise LinalgError("zero polynomial has no exponents")
        return min(self.coeffs)

    def max_exp(self):
        if self.is_zero:
            raise LinalgError("zero polynomial has no exponents")
        return max(self.coeffs)

    def shift(self, k):
        """Multiply by g^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def __add__(self, other):
        res = dict(self.coeffs)
        for e, c in other.coeffs.items():
            res[e] = res.get(e, 0) + c
        return LaurentPoly(res)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        res = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                res[e] = res.get(e, 0) + c1 * c2
        return LaurentPoly(res)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise LinalgError("negative power; use shift for monomials")
        res = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return res

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def at_one(self):
        """Evaluate at g = 1."""
        return sum(self.coeffs.values())

    def __repr__(self):
        if self.is_zero:
            return "LaurentPoly(0)"
        terms = " + ".join(f"{c}*g^{e}" for e, c in sorted(self.coeffs.items()))
        return f"LaurentPoly({terms})"


def laurent_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Divide a by b, requiring the quotient to lie in Z[g, g^-1].

    Used inside Bareiss elimination, where divisions are exact by construction;
    a non-exact division raises LinalgError.
    """
    if b.is_zero:
        raise LinalgError("division by zero polynomial")
    if a.is_zero:
        return LaurentPoly.zero()
    shift = a.min_exp() - b.min_exp()
    rem = {e - a.min_exp(): c for e, c in a.coeffs.items()}
    bb = {e - b.min_exp(): c for e, c in b.coeffs.items()}
    bmax = max(bb)
    blead = bb[bmax]
    quot = {}
    while rem:
        rmax = max(rem)
        if rmax < bmax:
            raise LinalgError("inexact polynomial division")
        c, r = divmod(rem[rmax], blead)
        if r != 0:
            raise LinalgError("inexact polynomial division")
        e = rmax - bmax
        quot[e] = c
        for be, bc in bb.items():
            k = be + e
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            elif k in rem:
                del rem[k]
    return LaurentPoly(quot).shift(shift)


class IntPoly:
    """Polynomial in T with integer coefficients, dense list lowest-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self):
        return not self.coeffs

    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] - other[i] for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly([c * other for c in self.coeffs])
        res = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return IntPoly(res)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPoly([other])
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"


def det_int(m) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(m)
    for row in m:
        if len(row) != n:
            raise LinalgError("matrix is not square")
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q, r = divmod(num, prev)
                assert r == 0, "Bareiss division must be exact"
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_laurent(m) -> LaurentPoly:
    """Exact determinant of a square matrix of LaurentPoly entries.

    Negative exponents are cleared row by row (multiply row i by g^{k_i}),
    elimination runs fraction-free over Z[g], and the result is shifted back
    by g^{-sum k_i}.
    """
    n = len(m)
    for row in m:
        if len(row) != n:
            raise LinalgError("matrix is not square")
    if n == 0:
        return LaurentPoly.one()
    a = [list(row) for row in m]
    total_shift = 0
    for i in range(n):
        mins = [x.min_exp() for x in a[i] if not x.is_zero]
        if mins and min(mins) < 0:
            k = -min(mins)
            a[i] = [x.shift(k) for x in a[i]]
            total_shift += k
    sign = 1
    prev = LaurentPoly.one()
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = laurent_exact_div(num, prev)
            a[i][k] = LaurentPoly.zero()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    if sign < 0:
        det = -det
    return det.shift(-total_shift)


def _binomial_power(exponent):
    """(1 + T)^exponent for exponent >= 0, exact."""
    res = [1]
    c = 1
    for i in range(1, exponent + 1):
        c = c * (exponent - i + 1) // i
        res.append(c)
    return res


def _truncated_mul(a, b, cap):
    res = [0] * min(len(a) + len(b) - 1, cap + 1)
    for i, x in enumerate(a):
        if x == 0 or i > cap:
            continue
        for j, y in enumerate(b):
            if i + j > cap:
                break
            res[i + j] += x * y
    return res


def expand_at_gamma(f: LaurentPoly, truncation_degree: int) -> IntPoly:
    """Substitute g = 1 + T.

    Non-negative powers expand exactly; negative powers use the geometric
    series (1+T)^-1 = sum (-T)^i truncated at truncation_degree.  When f has
    only non-negative exponents the result is exact and no truncation applies.
    """
    if truncation_degree < 0:
        raise LinalgError("truncation_degree must be non-negative")
    if f.is_zero:
        return IntPoly()
    has_negative = f.min_exp() < 0
    cap = truncation_degree if has_negative else max(f.max_exp(), 0)
    inv = [(-1) ** i for i in range(cap + 1)]  # (1+T)^-1 truncated
    total = [0] * (cap + 1)
    for e, c in sorted(f.coeffs.items()):
        if e >= 0:
            term = _binomial_power(e)
        else:
            term = [1]
            for _ in range(-e):
                term = _truncated_mul(term, inv, cap)
        for i, x in enumerate(term):
            if i > cap:
                break
            total[i] += c * x
    return IntPoly(total)


def ord_p(x: int, p: int):
    """p-adic valuation; None stands in for +infinity at x = 0."""
    if x == 0:
        return None
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def mu_lambda(f: IntPoly, p: int):
    """Weierstrass data of a nonzero integer polynomial.

    mu is the minimum p-adic valuation over the coefficients, lambda the least
    index attaining it.
    """
    if f.is_zero:
        raise LinalgError("mu_lambda of the zero polynomial")
    mu = None
    lam = None
    for i, c in enumerate(f.coeffs):
        v = ord_p(c, p)
        if v is None:
            continue
        if mu is None or v < mu:
            mu = v
            lam = i
    return mu, lam
