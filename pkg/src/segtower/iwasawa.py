"""Characteristic elements, Iwasawa invariants and theorem harnesses.

The characteristic element of a tower over (g, r, voltage) is T^l * f(T)
where l is the number of ramified vertices and f is det(M) expanded at
gamma = 1 + T, M the unramified block of the voltage Laplacian.  From f we
read off mu (minimal p-adic coefficient valuation) and lambda; the Jacobian
invariants are mu(f) and (l - 1) + lambda(f).

Empirically, ord_p of the spanning-tree count at level n is mu*p^n +
lambda*n + nu for n large (exactly for all n when the voltage is trivial);
we fit the triple exactly over the rationals from the last three levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cover import build_cover, segment_preimage
from .forests import forest_count_det, kappa
from .graph import GraphError, Multigraph, RamificationData, prune_tails
from .linalg import IntPoly, LaurentPoly, det_laurent, expand_at_gamma, mu_lambda, ord_p
from .seal import admissible_sets, decompose


class TowerError(ValueError):
    pass


class DisconnectedCover(TowerError):
    def __init__(self, level):
        self.level = level
        super().__init__(f"cover at level {level} is disconnected")


@dataclass(frozen=True)
class CharElement:
    t_power: int  # exponent l of the leading T^l factor
    body: IntPoly  # det(M) at gamma = 1 + T
    det_gamma: LaurentPoly  # det(M) as a Laurent polynomial in gamma
    p: int


@dataclass(frozen=True)
class InvariantTriple:
    mu: int
    lam: int
    nu: int | None = None  # empirical fits only


@dataclass(frozen=True)
class Verdict:
    ok: bool
    lhs: object
    rhs: object
    detail: dict

    def __bool__(self):
        return self.ok


def ordered_vertices(g: Multigraph, r: RamificationData):
    """Unramified vertices first (in graph order), then ramified."""
    unram = [v for v in g.vertices if not r.is_ramified(v)]
    ram = [v for v in g.vertices if r.is_ramified(v)]
    return unram, ram


def build_matrices(g: Multigraph, r: RamificationData, voltage):
    """Voltage matrices with vertices ordered unramified-first.

    Returns a dict with:
      order  -- vertex order (unramified block first)
      D      -- integer diagonal: degree on unramified, 1 on ramified
      Dprime -- description of D': same as D but the symbol T on ramified
      A      -- voltage adjacency over LaurentPoly; ramified columns are zero
      B      -- alias of A (identical by definition)
      M      -- unramified r x r block of D - A
    """
    voltage = voltage or {}
    unram, ram = ordered_vertices(g, r)
    if not unram:
        raise GraphError("need at least one unramified vertex")
    order = unram + ram
    index = {v: i for i, v in enumerate(order)}
    s = len(order)
    rr = len(unram)
    A = [[LaurentPoly.zero() for _ in range(s)] for _ in range(s)]
    for d in g.darts():
        j = index[d.origin]
        if j >= rr:  # ramified columns stay zero
            continue
        i = index[d.terminus]
        a = voltage.get(d.edge.id, 0)
        if not d.forward:
            a = -a
        A[i][j] = A[i][j] + LaurentPoly.gamma(a)
    D = [g.degree(v) if i < rr else 1 for i, v in enumerate(order)]
    M = [
        [LaurentPoly.const(D[i]) - A[i][j] if i == j else -A[i][j] for j in range(rr)]
        for i in range(rr)
    ]
    return {
        "order": order,
        "D": D,
        "Dprime": {"diagonal": D[:rr], "ramified": "T"},
        "A": A,
        "B": A,
        "M": M,
    }


def default_truncation(g, r, voltage) -> int:
    voltage = voltage or {}
    unram = sum(1 for v in g.vertices if not r.is_ramified(v))
    max_exp = max((abs(a) for a in voltage.values()), default=0)
    return unram * max_exp + 8


def char_element(g: Multigraph, r: RamificationData, voltage, p: int) -> CharElement:
    mats = build_matrices(g, r, voltage)
    det = det_laurent(mats["M"])
    body = expand_at_gamma(det, default_truncation(g, r, voltage))
    return CharElement(len(r.depths), body, det, p)


def symbolic_invariants(c: CharElement) -> InvariantTriple:
    """Jacobian mu/lambda from the characteristic element."""
    if c.body.is_zero:
        raise TowerError("characteristic body is zero (degenerate segment)")
    mu, lam = mu_lambda(c.body, c.p)
    return InvariantTriple(mu, (c.t_power - 1) + lam)


def default_n_max(p: int) -> int:
    if p == 2:
        return 3
    if p == 3:
        return 2
    return 1


def tower_kappas(g, r, voltage, p, n_max):
    """kappa(X_n) for n = 0..n_max; raises DisconnectedCover on failure."""
    out = []
    for n in range(n_max + 1):
        c = build_cover(g, r, voltage, p, n)
        if not c.graph.connected():
            raise DisconnectedCover(n)
        out.append(
            {
                "n": n,
                "vertices": len(c.graph.vertices),
                "edges": len(c.graph.edges),
                "kappa": kappa(c.graph).value,
            }
        )
    return out


def fit_orders(points, p):
    """Exact fit of ord = mu*p^n + lambda*n + nu through (n, ord) pairs.

    Uses the last three points; returns (InvariantTriple, stable) where
    stable reports whether the window shifted one level down (when
    available) gives the same triple.  Returns (None, False) when no exact
    integer fit exists.
    """
    if len(points) < 3:
        raise TowerError("need at least three tower levels for a fit")

    def solve(window):
        (n0, y0), (n1, y1), (n2, y2) = window
        # eliminate nu by differencing
        a1, b1, c1 = p**n1 - p**n0, n1 - n0, y1 - y0
        a2, b2, c2 = p**n2 - p**n1, n2 - n1, y2 - y1
        den = a1 * b2 - a2 * b1
        if den == 0:
            return None
        mu = Fraction(c1 * b2 - c2 * b1, den)
        lam = Fraction(a1 * c2 - a2 * c1, den)
        nu = Fraction(y0) - mu * p**n0 - lam * n0
        if mu.denominator != 1 or lam.denominator != 1 or nu.denominator != 1:
            return None
        if mu < 0 or lam < 0:
            return None
        return InvariantTriple(int(mu), int(lam), int(nu))

    fit = solve(points[-3:])
    if fit is None:
        return None, False
    stable = True
    if len(points) >= 4:
        prev = solve(points[-4:-1])
        stable = prev == fit
    return fit, stable


def empirical_invariants(g, r, voltage, p, n_max=None):
    """Fit (mu, lambda, nu) from tower spanning-tree counts.

    Returns (InvariantTriple, levels, stable); levels is the per-level data.
    """
    if n_max is None:
        n_max = default_n_max(p)
    min_needed = max(r.depths.values(), default=0) + 2
    if n_max < min_needed:
        n_max = min_needed
    levels = tower_kappas(g, r, voltage, p, n_max)
    points = [(lv["n"], ord_p(lv["kappa"], p)) for lv in levels]
    if any(y is None for _, y in points):
        raise TowerError("kappa vanished at some level; cover disconnected?")
    fit, stable = fit_orders(points, p)
    if fit is None:
        raise TowerError("no exact integer fit for the tower orders")
    return fit, levels, stable


def _decomposed(g, r, voltage):
    """Prune tails, then decompose; returns (graph, ramification, decomp)."""
    g2 = prune_tails(g, r)
    r2 = r.restrict(g2.vertices)
    return g2, r2, decompose(g2, r2)


def _segment_counts(g2, d):
    """F_{t_i}(S^i) for every segment, by determinant on the segment graph."""
    out = []
    for s in d.segments:
        sub = s.subgraph(g2)
        out.append(forest_count_det(sub, list(s.ramified)).value)
    return out


def verify_theorem_A(g, r, voltage, p, n) -> Verdict:
    """kappa(X_n) = kappa(X) * p^{n(l-1)} * prod F_{t_i}(S^i)^{p^n - 1}.

    Requires trivial voltage and totally ramified marks.
    """
    if any(a for a in (voltage or {}).values()):
        raise TowerError("the product formula requires trivial voltage")
    if any(k != 0 for k in r.depths.values()):
        raise TowerError("the product formula requires totally ramified vertices")
    g2, r2, d = _decomposed(g, r, voltage)
    counts = _segment_counts(g2, d)
    base = kappa(g2).value
    rhs = base * p ** (n * (d.l - 1))
    for f in counts:
        rhs *= f ** (p**n - 1)
    c = build_cover(g2, r2, voltage, p, n)
    if not c.graph.connected():
        raise DisconnectedCover(n)
    lhs = kappa(c.graph).value
    return Verdict(lhs == rhs, lhs, rhs, {"kappa_base": base, "segment_counts": counts, "l": d.l})


def verify_partial_ramification(g, r, voltage, p, n, n0=None) -> Verdict:
    """kappa(X_n) = kappa(X_{n0}) * p^{(n-n0)(l-1)} * prod F^{p^n - p^{n0}}
    where n0 = max depth and l is the ramified-vertex count at level n0."""
    if any(a for a in (voltage or {}).values()):
        raise TowerError("the partial-ramification formula requires trivial voltage")
    if not r.depths:
        raise TowerError("no ramified vertex")
    if 0 not in r.depths.values():
        raise TowerError("unsupported: no totally ramified vertex (covers may disconnect)")
    if n0 is None:
        n0 = max(r.depths.values())
    if n < n0:
        raise TowerError("n must be at least n0")
    g2 = prune_tails(g, r)
    r2 = r.restrict(g2.vertices)
    d = decompose(g2, r2)
    counts = _segment_counts(g2, d)
    c0 = build_cover(g2, r2, voltage, p, n0)
    if not c0.graph.connected():
        raise DisconnectedCover(n0)
    base = kappa(c0.graph).value
    l_n0 = sum(p ** min(n0, k) for k in r2.depths.values())
    rhs = base * p ** ((n - n0) * (l_n0 - 1))
    for f in counts:
        rhs *= f ** (p**n - p**n0)
    cn = build_cover(g2, r2, voltage, p, n)
    if not cn.graph.connected():
        raise DisconnectedCover(n)
    lhs = kappa(cn.graph).value
    return Verdict(
        lhs == rhs,
        lhs,
        rhs,
        {"n0": n0, "kappa_n0": base, "l_n0": l_n0, "segment_counts": counts},
    )


def verify_general_case(g, r, voltage, p, n) -> Verdict:
    """kappa(X_n) = sum over admissible I of
    prod_{i in I} kappa(S^i_n) * prod_{i not in I} F_{t_i}(S^i_n)."""
    if any(k != 0 for k in r.depths.values()):
        raise TowerError("the admissible-set formula requires totally ramified vertices")
    g2, r2, d = _decomposed(g, r, voltage)
    c = build_cover(g2, r2, voltage, p, n)
    if not c.graph.connected():
        raise DisconnectedCover(n)
    kappas = []
    forests = []
    for s in d.segments:
        sub, marks = segment_preimage(c, s)
        kappas.append(kappa(sub).value)
        forests.append(forest_count_det(sub, list(marks.depths)).value)
    sets = admissible_sets(d)
    rhs = 0
    for I in sets:
        term = 1
        for i in range(d.k):
            term *= kappas[i] if i in I else forests[i]
        rhs += term
    lhs = kappa(c.graph).value
    return Verdict(
        lhs == rhs,
        lhs,
        rhs,
        {
            "admissible_sets": [sorted(I) for I in sets],
            "segment_kappas": kappas,
            "segment_forests": forests,
        },
    )


def verify_char_factorization(g, r, voltage, p) -> Verdict:
    """det(M) factors as the product of the segment determinants, and the
    invariants are additive: mu = sum mu_i, lambda = sum lambda_i + l - 1."""
    g2, r2, d = _decomposed(g, r, voltage)
    ce = char_element(g2, r2, voltage, p)
    product = LaurentPoly.one()
    mu_sum = 0
    lam_sum = 0
    factors = []
    for s in d.segments:
        sub = s.subgraph(g2)
        sr = RamificationData.totally_ramified(s.ramified)
        if all(sr.is_ramified(w) for w in sub.vertices):
            # no unramified block: the determinant factor is empty, so 1
            factors.append({"segment": s.color, "mu": 0, "lambda": 0})
            continue
        sce = char_element(sub, sr, voltage, p)
        product = product * sce.det_gamma
        mu_i, lam_i = mu_lambda(sce.body, p)
        mu_sum += mu_i
        lam_sum += lam_i
        factors.append({"segment": s.color, "mu": mu_i, "lambda": lam_i})
    inv = symbolic_invariants(ce)
    factor_ok = product == ce.det_gamma
    additive_ok = inv.mu == mu_sum and inv.lam == lam_sum + d.l - 1
    return Verdict(
        factor_ok and additive_ok,
        {"mu": inv.mu, "lambda": inv.lam},
        {"mu": mu_sum, "lambda": lam_sum + d.l - 1},
        {"factorization_exact": factor_ok, "factors": factors, "l": d.l},
    )


def segment_growth_invariants(segment_graph, seg_ram, voltage, p, n_max=None):
    """Fit (mu, lambda, nu) for the forest counts of one segment's tower and
    compare with the symbolic values from det(M) of the segment.

    Returns (fit, symbolic, levels, stable).
    """
    if n_max is None:
        n_max = default_n_max(p)
    marked = list(seg_ram.depths)
    if len(marked) not in (1, 2) or any(k != 0 for k in seg_ram.depths.values()):
        raise TowerError("segment must have 1 or 2 totally ramified vertices")
    levels = []
    points = []
    for n in range(n_max + 1):
        c = build_cover(segment_graph, seg_ram, voltage, p, n)
        marks = [v for v in c.graph.vertices if seg_ram.is_ramified(c.vertex_projection[v])]
        f = forest_count_det(c.graph, marks).value
        levels.append({"n": n, "forest_count": f})
        points.append((n, ord_p(f, p)))
    if any(y is None for _, y in points):
        raise TowerError("forest count vanished at some level")
    fit, stable = fit_orders(points, p)
    ce = char_element(segment_graph, seg_ram, voltage, p)
    mu, lam = mu_lambda(ce.body, p)
    symbolic = InvariantTriple(mu, lam)
    return fit, symbolic, levels, stable


def tower_report(g, r, voltage, p, n_max=None, empirical=True, symbolic=True):
    """Combined report: per-level counts, empirical fit, symbolic invariants."""
    report = {"p": p}
    sym = None
    if symbolic:
        g2 = prune_tails(g, r)
        ce = char_element(g2, r.restrict(g2.vertices), voltage, p)
        sym = symbolic_invariants(ce)
        report["char_body"] = list(ce.body.coeffs)
        report["t_power"] = ce.t_power
        report["symbolic"] = {"mu": sym.mu, "lambda": sym.lam}
    if empirical:
        fit, levels, stable = empirical_invariants(g, r, voltage, p, n_max)
        report["levels"] = levels
        report["empirical"] = {"mu": fit.mu, "lambda": fit.lam, "nu": fit.nu}
        report["fit_stable"] = stable
        if sym is not None:
            report["agreement"] = sym.mu == fit.mu and sym.lam == fit.lam
    return report
