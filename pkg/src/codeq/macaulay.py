"""Macaulay inverse systems for the doubling and the Artinian reduction.

The inverse polynomial of a doubling is computed by the closed power-sum
formula: the coefficient of pi^[alpha] is the sum over the points of
rep^alpha at the chart-normalized representatives.  The dual-basis kernel
construction is kept only as a test oracle.  All inverse polynomials are
normalized so their first nonzero coefficient in canonical order is 1;
comparisons across coordinate changes are projective.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import artinian_reduction, doubling_ideal, ideal_piece_basis, iso_dual_profile
from .errors import CapExceeded, Degenerate, DualityViolation, NotIsoDualProfile
from .linalg import Mat, kernel, row_space_equal
from .points import PointSet, hilbert_function
from .poly import (
    DualPoly,
    HomogPoly,
    basis_size,
    monomial_basis,
    monomial_index,
    normalize_leading,
)

COEFF_CAP = 2_000_000


@dataclass
class InversePolynomial:
    phi: DualPoly
    kind: str  # "doubling" or "artinian_cubic"
    r: int

    def __post_init__(self):
        if self.phi.is_zero():
            raise Degenerate("inverse polynomial must be nonzero")


def inverse_polynomial(X: PointSet, shift: int = 0, coeff_cap: int = COEFF_CAP) -> InversePolynomial:
    """Inverse polynomial of the (shift-th) doubling via power sums."""
    X.require_L()
    if X.n < 2:
        raise Degenerate("need at least two points")
    r = hilbert_function(X).r
    d = 2 * r - 1 + shift
    if d < 1:
        raise Degenerate("socle degree is not positive")
    if basis_size(X.k, d) > coeff_cap:
        raise CapExceeded(f"{basis_size(X.k, d)} coefficients exceed cap {coeff_cap}")
    F = X.field
    mul, add = F.mul, F.add
    coeffs = []
    pows = []
    for rep in X.reps:
        prow = [[1] * (d + 1) for _ in range(X.k)]
        for i, vi in enumerate(rep):
            for m in range(1, d + 1):
                prow[i][m] = mul(prow[i][m - 1], vi)
        pows.append(prow)
    for exps in monomial_basis(X.k, d):
        acc = 0
        for prow in pows:
            val = 1
            for i, e in enumerate(exps):
                if e:
                    val = mul(val, prow[i][e])
            acc = add(acc, val)
        coeffs.append(acc)
    phi = DualPoly(F, X.k, d, tuple(coeffs))
    if phi.is_zero():
        raise Degenerate("power-sum coefficients all vanished")
    return InversePolynomial(normalize_leading(phi), "doubling", r)


def annihilator_piece(phi: DualPoly, a: int):
    """Basis of {f of degree a : f . phi = 0}, the apolar ideal piece."""
    F = phi.field
    d = phi.degree
    if a < 0:
        raise ValueError("degree must be nonnegative")
    if a > d:
        return [
            HomogPoly(F, phi.k, a, tuple(1 if i == j else 0 for i in range(basis_size(phi.k, a))))
            for j in range(basis_size(phi.k, a))
        ]
    rows_basis = monomial_basis(phi.k, d - a)
    cols_basis = monomial_basis(phi.k, a)
    idx = monomial_index(phi.k, d)
    data = [
        [phi.coeffs[idx[tuple(g + al for g, al in zip(gamma, alpha))]] for alpha in cols_basis]
        for gamma in rows_basis
    ]
    K = kernel(Mat(F, data, len(cols_basis)))
    return [HomogPoly(F, phi.k, a, tuple(v)) for v in K.data]


def inverse_cubic(X: PointSet) -> InversePolynomial:
    """Degree-3 dual generator of the Artinian reduction of an iso-dual
    profile point set, in k-1 variables."""
    if not iso_dual_profile(X):
        raise NotIsoDualProfile("requires differences (1, k-1, k-1, 1)")
    ar = artinian_reduction(X)
    F = X.field
    kbar = X.k - 1
    nbar = basis_size(kbar, 3)
    piece = ar.pieces[3]
    if piece:
        M = Mat(F, [list(f.coeffs) for f in piece], nbar)
    else:
        M = Mat(F, [], nbar)
    K = kernel(M) if M.rows else Mat.identity(F, nbar)
    if K.rows != 1:
        raise Degenerate("dual socle piece is not one-dimensional")
    phi = normalize_leading(DualPoly(F, kbar, 3, tuple(K.data[0])))
    for d in range(1, 4):
        ann = annihilator_piece(phi, d)
        got = Mat(F, [list(f.coeffs) for f in ann], basis_size(kbar, d))
        want = Mat(F, [list(f.coeffs) for f in ar.pieces[d]], basis_size(kbar, d))
        if not row_space_equal(got, want):
            raise DualityViolation(f"apolar piece differs in degree {d}")
    return InversePolynomial(phi, "artinian_cubic", 3)


def check_macaulay_duality(X: PointSet, i: int = 0):
    """Master self-test: the apolar ideal of the doubling's inverse
    polynomial must reproduce the doubling ideal in every degree up to the
    socle, with a one-dimensional socle.  Returns the per-degree report."""
    X.require_L()
    D = doubling_ideal(X, i)
    inv = inverse_polynomial(X, shift=i)
    phi = inv.phi
    report = []
    for d in range(D.socle_degree + 1):
        ann = annihilator_piece(phi, d)
        nd = basis_size(X.k, d)
        got = Mat(X.field, [list(f.coeffs) for f in ann], nd)
        want = ideal_piece_basis(X.field, X.k, D.generators, d)
        if not row_space_equal(got, want):
            raise DualityViolation(f"inverse system mismatch in degree {d}")
        report.append({"degree": d, "ideal_dim": want.rows, "quotient_dim": nd - want.rows})
    if report[-1]["quotient_dim"] != 1:
        raise DualityViolation("socle is not one-dimensional")
    above = annihilator_piece(phi, D.socle_degree + 1)
    if len(above) != basis_size(X.k, D.socle_degree + 1):
        raise DualityViolation("quotient does not vanish above the socle degree")
    return report
