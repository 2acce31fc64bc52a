"""Projective point sets over F_q and their coordinate-ring data.

Values at points always use the D_+(L) convention: once a linear form L
that vanishes nowhere on the set is fixed, every point gets the unique
representative scaled so L(rep) = 1, and all evaluation matrices, Hilbert
functions, ideal pieces and separators are computed from those
representatives.  Changing L invalidates the caches, so L is part of the
PointSet state and is set once.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .code import LinearCode, is_projective, normalize_vec
from .errors import (
    Degenerate,
    DimensionMismatch,
    MissingL,
    BlockingSet,
    NotProjective,
    TooLarge,
)
from .gf import Field
from .linalg import Mat, kernel, rank, rref, solve
from .poly import (
    HomogPoly,
    basis_size,
    evaluate,
    linear_form,
    monomial_basis,
    monomial_index,
)


@dataclass
class HilbertData:
    hf: tuple[int, ...]  # HF(0..r)
    r: int
    delta: tuple[int, ...]  # first differences, delta[0] = 1

    def __eq__(self, other):
        return isinstance(other, HilbertData) and (self.hf, self.r) == (other.hf, other.r)


class PointSet:
    """n distinct points spanning P^{k-1}, stored first-nonzero-normalized."""

    def __init__(self, field: Field, k: int, points):
        self.field = field
        self.k = k
        norm = []
        seen = set()
        for p in points:
            v = normalize_vec(field, list(p))
            if v is None:
                raise Degenerate("zero vector is not a projective point")
            if v in seen:
                raise Degenerate(f"repeated projective point {v}")
            seen.add(v)
            norm.append(v)
        self.points = norm
        self.n = len(norm)
        coord = Mat(field, [list(p) for p in norm], k)
        if rank(coord) != k:
            raise Degenerate("points do not span the ambient projective space")
        self.L = None
        self.reps = None
        self._emat = {}
        self._hilbert = None
        self.cache = {}

    def point_set(self):
        return set(self.points)

    def set_L(self, L: HomogPoly):
        """Fix the affine chart; L must vanish at no point of the set."""
        if L.degree != 1 or L.k != self.k:
            raise DimensionMismatch("L must be a linear form in k variables")
        reps = []
        for p in self.points:
            val = evaluate(L, p)
            if val == 0:
                raise BlockingSet(f"form vanishes at {p}")
            s = self.field.inv(val)
            reps.append(tuple(self.field.mul(s, x) for x in p))
        self.L = L
        self.reps = reps
        self._emat = {}
        self._hilbert = None
        self.cache = {}

    def require_L(self):
        if self.L is None:
            raise MissingL("no linear form set; run find_nonvanishing_linear_form")

    def __repr__(self):
        return f"PointSet(n={self.n}, P^{self.k - 1} over {self.field})"


def from_code(C: LinearCode) -> PointSet:
    if not is_projective(C):
        raise NotProjective("projectivize the code first")
    return PointSet(C.field, C.k, [C.G.col(j) for j in range(C.n)])


def apply_map(A: Mat, X: PointSet) -> PointSet:
    """Image point set under the coordinate change p -> A p."""
    return PointSet(X.field, X.k, [A.matvec(list(p)) for p in X.points])


def find_nonvanishing_linear_form(X: PointSet, cap: int = 10**6) -> HomogPoly:
    """First linear form (in the fixed scan order) vanishing at no point.

    Candidates are the normalized coefficient tuples enumerated
    lexicographically; the count is (q^k - 1)/(q - 1).
    """
    q = X.field.q
    count = (q**X.k - 1) // (q - 1)
    if count > cap:
        raise TooLarge(f"{count} candidate forms exceed cap {cap}")
    for coeffs in product(range(q), repeat=X.k):
        nrm = normalize_vec(X.field, list(coeffs))
        if nrm is None or nrm != coeffs:
            continue
        L = linear_form(X.field, coeffs)
        if all(evaluate(L, p) for p in X.points):
            X.set_L(L)
            return L
    raise BlockingSet(
        "every linear form vanishes at some point (a blocking set); "
        "extend the base field to proceed"
    )


def admissible_forms(X: PointSet, cap: int = 10**6):
    """All normalized linear forms vanishing at no point, in scan order."""
    q = X.field.q
    count = (q**X.k - 1) // (q - 1)
    if count > cap:
        raise TooLarge(f"{count} candidate forms exceed cap {cap}")
    for coeffs in product(range(q), repeat=X.k):
        nrm = normalize_vec(X.field, list(coeffs))
        if nrm is None or nrm != coeffs:
            continue
        L = linear_form(X.field, coeffs)
        if all(evaluate(L, p) for p in X.points):
            yield L


def with_form(X: PointSet, L: HomogPoly) -> PointSet:
    """Fresh copy of the point set with the given chart form installed."""
    Y = PointSet(X.field, X.k, X.points)
    Y.set_L(L)
    return Y


def evaluation_matrix(X: PointSet, d: int) -> Mat:
    """n x dim(P_d) matrix of monomial values at the L-normalized reps."""
    X.require_L()
    if d in X._emat:
        return X._emat[d]
    F = X.field
    mul = F.mul
    basis = monomial_basis(X.k, d)
    rows = []
    for rep in X.reps:
        pows = [[1] * (d + 1) for _ in range(X.k)]
        for i, vi in enumerate(rep):
            for m in range(1, d + 1):
                pows[i][m] = mul(pows[i][m - 1], vi)
        row = []
        for exps in basis:
            val = 1
            for i, e in enumerate(exps):
                if e:
                    val = mul(val, pows[i][e])
            row.append(val)
        rows.append(row)
    M = Mat(F, rows, len(basis))
    X._emat[d] = M
    return M


def hilbert_function(X: PointSet) -> HilbertData:
    X.require_L()
    if X._hilbert is not None:
        return X._hilbert
    hf = [1]
    d = 0
    while hf[-1] < X.n:
        d += 1
        hf.append(rank(evaluation_matrix(X, d)))
    delta = tuple(hf[i] - (hf[i - 1] if i else 0) for i in range(len(hf)))
    X._hilbert = HilbertData(tuple(hf), d, delta)
    return X._hilbert


def ideal_piece(X: PointSet, d: int) -> list[HomogPoly]:
    """Basis of the degree-d piece of the vanishing ideal."""
    X.require_L()
    K = kernel(evaluation_matrix(X, d))
    return [HomogPoly(X.field, X.k, d, tuple(v)) for v in K.data]


def separators(X: PointSet) -> list[HomogPoly]:
    """Degree-r forms taking value 1 at one point and 0 at the others."""
    X.require_L()
    r = hilbert_function(X).r
    E = evaluation_matrix(X, r)
    out = []
    for i in range(X.n):
        e_i = [1 if j == i else 0 for j in range(X.n)]
        c = solve(E, e_i)
        if c is None:
            raise Degenerate("separator system unexpectedly inconsistent")
        out.append(HomogPoly(X.field, X.k, r, tuple(c)))
    return out


def sepdeg(X: PointSet, i: int) -> int:
    """Smallest degree of a separator of point i."""
    X.require_L()
    r = hilbert_function(X).r
    e_i = [1 if j == i else 0 for j in range(X.n)]
    for d in range(r + 1):
        E = evaluation_matrix(X, d)
        if solve(E, e_i) is not None:
            return d
    raise Degenerate("separator degree exceeded the regularity index")


def cayley_bacharach(X: PointSet) -> bool:
    """True when every point has separator degree exactly r."""
    r = hilbert_function(X).r
    return all(sepdeg(X, i) == r for i in range(X.n))


def _lt_ideal_divides(mingens, exps):
    for g in mingens:
        if all(a >= b for a, b in zip(exps, g)):
            return True
    return False


def buchberger_moller(X: PointSet):
    """Reduced degrevlex Groebner basis of the vanishing ideal, plus the
    n-monomial order ideal that represents a basis of the coordinate ring
    over the subring generated by the chart form.

    The basis is assembled degree by degree from evaluation-matrix kernels;
    the order ideal comes from the Artinian-reduction pieces.
    """
    X.require_L()
    hd = hilbert_function(X)
    r = hd.r
    gb = []  # (degree, coeff list) with pivot leading coefficient 1
    mingens = []  # leading exponent tuples of minimal generators
    d = 0
    cap = 2 * r + 4
    while True:
        d += 1
        if d > cap:
            raise Degenerate("Groebner scan exceeded its degree cap")
        piece = ideal_piece(X, d)
        fresh = False
        if piece:
            R, pivots, rk = rref(Mat(X.field, [list(f.coeffs) for f in piece], basis_size(X.k, d)))
            basis = monomial_basis(X.k, d)
            for row, pivot in zip(R.data[:rk], pivots):
                lt = basis[pivot]
                if not _lt_ideal_divides(mingens, lt):
                    mingens.append(lt)
                    gb.append((d, list(row)))
                    fresh = True
        if d >= r + 1 and not fresh:
            break
    groebner = _autoreduce(X.field, X.k, gb)
    order_ideal = _order_ideal(X, r, hd)
    return groebner, order_ideal


def _autoreduce(field, k, gb):
    """Inter-reduce tails so no term is divisible by another leading term."""
    from .poly import poly_mul, poly_scale, poly_add, monomial_poly

    polys = [HomogPoly(field, k, d, tuple(c)) for d, c in gb]
    lts = []
    for p in polys:
        basis = monomial_basis(k, p.degree)
        lt_idx = next(i for i, c in enumerate(p.coeffs) if c)
        lts.append(basis[lt_idx])
    changed = True
    while changed:
        changed = False
        for i, p in enumerate(polys):
            basis = monomial_basis(k, p.degree)
            for idx, c in enumerate(p.coeffs):
                if not c:
                    continue
                exps = basis[idx]
                for j, q in enumerate(polys):
                    if i == j or q.degree > p.degree:
                        continue
                    if exps != lts[i] and all(a >= b for a, b in zip(exps, lts[j])):
                        cof = tuple(a - b for a, b in zip(exps, lts[j]))
                        reducer = poly_mul(monomial_poly(field, k, cof), q)
                        polys[i] = poly_add(p, poly_scale(field.neg(c), reducer))
                        p = polys[i]
                        changed = True
                        break
                else:
                    continue
                break
    return polys


def _order_ideal(X: PointSet, r: int, hd: HilbertData):
    """Lift of the order ideal of the Artinian reduction: n monomials with
    per-degree counts equal to the first difference of the Hilbert function."""
    if X.k == 1:
        return [(0,)]  # single point on a projective line's chart
    pieces = artinian_ideal_pieces(X, r)
    pivot, nonpivot = _chart_split(X)
    out = []
    for d in range(r + 1):
        basis = monomial_basis(X.k - 1, d)
        piece = pieces[d]
        if piece:
            _, pivots, _ = rref(Mat(X.field, [list(f.coeffs) for f in piece], len(basis)))
        else:
            pivots = []
        pivset = set(pivots)
        selected = [basis[i] for i in range(len(basis)) if i not in pivset]
        expected = hd.delta[d] if d < len(hd.delta) else 0
        if len(selected) != expected:
            raise Degenerate("order ideal count disagrees with the Hilbert function")
        for exps in selected:
            full = [0] * X.k
            for var, e in zip(nonpivot, exps):
                full[var] = e
            out.append(tuple(full))
    return out


def _chart_split(X: PointSet):
    """Pivot variable eliminated by L, and the surviving variable indices."""
    X.require_L()
    lcoeffs = X.L.coeffs
    pivot = next(i for i, c in enumerate(lcoeffs) if c)
    nonpivot = [i for i in range(X.k) if i != pivot]
    return pivot, nonpivot


def chart_basis_matrix(X: PointSet) -> Mat:
    """Rows are the linear forms (L, y_1, ..., y_{k-1}) in the x basis."""
    pivot, nonpivot = _chart_split(X)
    rows = [list(X.L.coeffs)]
    for m in nonpivot:
        rows.append([1 if i == m else 0 for i in range(X.k)])
    return Mat(X.field, rows, X.k)


def eta(X: PointSet, f: HomogPoly) -> HomogPoly:
    """Image of f in F_q[y_1..y_{k-1}] under the chart map sending L to 0."""
    from .linalg import invert
    from .poly import _gl_act_unchecked

    if X.k < 2:
        raise DimensionMismatch("Artinian reduction needs k >= 2")
    S = chart_basis_matrix(X)
    g = _gl_act_unchecked(invert(S), f)  # rewrite in the (L, y) coordinates
    kbar = X.k - 1
    idx = monomial_index(kbar, f.degree)
    coeffs = [0] * basis_size(kbar, f.degree)
    basis = monomial_basis(X.k, f.degree)
    for i, c in enumerate(g.coeffs):
        if not c:
            continue
        exps = basis[i]
        if exps[0] == 0:  # kill every monomial containing the L coordinate
            coeffs[idx[exps[1:]]] = c
    return HomogPoly(X.field, kbar, f.degree, tuple(coeffs))


def artinian_ideal_pieces(X: PointSet, dmax: int) -> list[list[HomogPoly]]:
    """Bases of the Artinian-reduction ideal pieces for d = 0..dmax."""
    X.require_L()
    out = []
    for d in range(dmax + 1):
        images = [eta(X, f) for f in ideal_piece(X, d)]
        nontrivial = [f for f in images if not f.is_zero()]
        if nontrivial:
            M = Mat(X.field, [list(f.coeffs) for f in nontrivial], basis_size(X.k - 1, d))
            R, _, rk = rref(M)
            out.append([HomogPoly(X.field, X.k - 1, d, tuple(row)) for row in R.data[:rk]])
        else:
            out.append([])
    return out


def gale_transform(X: PointSet, D=None) -> PointSet:
    """Point set whose coordinate matrix spans the kernel of D G^T.

    Defined only up to a linear change of coordinates; raises Degenerate
    when the kernel columns give a repeated or zero point.
    """
    F = X.field
    n, k = X.n, X.k
    if n - k < 1:
        raise DimensionMismatch("need n > k for a Gale transform")
    if D is None:
        D = [1] * n
    if any(d == 0 for d in D):
        raise Degenerate("diagonal must be invertible")
    G = Mat(F, [list(p) for p in X.points], k).transpose()  # k x n
    GD = Mat(F, [[F.mul(G.data[i][j], D[j]) for j in range(n)] for i in range(k)], n)
    K = kernel(GD)  # rows span {v : G D v = 0}
    if K.rows != n - k:
        raise Degenerate("kernel has unexpected dimension")
    # defining identity: K . D . G^T = 0
    DGt = Mat(F, [[F.mul(D[i], G.data[j][i]) for j in range(k)] for i in range(n)], k)
    if not K.mul(DGt).is_zero():
        raise Degenerate("Gale relation failed")
    cols = [K.col(j) for j in range(n)]
    try:
        return PointSet(F, n - k, cols)
    except Degenerate as exc:
        raise Degenerate(f"Gale transform is not reduced: {exc}") from exc


def is_linearly_general_position(X: PointSet) -> bool:
    """Every k of the n points span the whole space."""
    for subset in combinations(range(X.n), X.k):
        M = Mat(X.field, [list(X.points[i]) for i in subset], X.k)
        if rank(M) != X.k:
            return False
    return True
