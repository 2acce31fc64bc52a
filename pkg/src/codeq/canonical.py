"""Canonical ideal, doublings, Artinian reduction, and the Gorenstein /
indecomposability / iso-duality characterizations.

Everything here runs in the separator-coefficient model: in degrees >= r
the coordinate ring has the separators (times powers of the chart form) as
a basis, an element is the vector of its values at the normalized
representatives, and multiplication by a form g acts diagonally through
the values g(rep_i).  Canonical-ideal pieces become kernels of evaluation
matrices and every downstream computation reduces to spans of vectors in
F_q^n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Degenerate, MissingL, NotInPiece, NotIsoDualProfile
from .linalg import Mat, rank, row_basis, rref
from .points import (
    PointSet,
    artinian_ideal_pieces,
    cayley_bacharach,
    evaluation_matrix,
    hilbert_function,
    ideal_piece,
    separators,
)
from .poly import (
    HomogPoly,
    basis_size,
    monomial_basis,
    monomial_poly,
    poly_add,
    poly_mul,
    poly_scale,
    poly_pow,
)


@dataclass
class CanonicalPiece:
    """Degree r+j piece of the canonical ideal, as separator coefficients."""

    j: int
    r: int
    basis: Mat  # rows span V_j inside F_q^n

    @property
    def dim(self):
        return self.basis.rows


@dataclass
class DoublingIdeal:
    i: int
    r: int
    socle_degree: int
    generators: list


@dataclass
class ArtinianReduction:
    chart: Mat  # rows: the forms (L, y_1..y_{k-1}) in the x basis
    pieces: list  # pieces[d] = basis of the reduced ideal in degree d
    hf: tuple
    socle_degree: int


def canonical_piece(X: PointSet, j: int) -> CanonicalPiece:
    """V_j = {c : sum_i c_i g(rep_i) = 0 for all g of degree r-1-j}."""
    X.require_L()
    key = ("canonical_piece", j)
    if key in X.cache:
        return X.cache[key]
    r = hilbert_function(X).r
    if j >= r:
        basis = Mat.identity(X.field, X.n)
    else:
        E = evaluation_matrix(X, r - 1 - j)
        basis = row_basis(_left_kernel(E))
    piece = CanonicalPiece(j, r, basis)
    X.cache[key] = piece
    return piece


def _left_kernel(M: Mat) -> Mat:
    from .linalg import kernel

    return kernel(M.transpose())


def variable_values(X: PointSet, m: int):
    """Value vector of x_m at the normalized representatives."""
    X.require_L()
    return [rep[m] for rep in X.reps]


def _in_row_space(B: Mat, v) -> bool:
    if B.rows == 0:
        return not any(v)
    return rank(Mat(B.field, B.data + [list(v)], B.cols)) == rank(B)


def multiply_into_piece(X: PointSet, m: int, c, j: int):
    """Multiply an element of V_j by x_m: diagonal scaling by the values."""
    piece = canonical_piece(X, j)
    if not _in_row_space(piece.basis, c):
        raise NotInPiece(f"vector is not in the degree r+{j} canonical piece")
    F = X.field
    vals = variable_values(X, m)
    out = [F.mul(v, x) for v, x in zip(vals, c)]
    nxt = canonical_piece(X, j + 1)
    if not _in_row_space(nxt.basis, out):
        raise Degenerate("diagonal action left the next canonical piece")
    return out


def _minimal_generator_vectors(X: PointSet):
    """(j, coefficient vector) for a minimal generating set of the canonical
    ideal, degree by degree via the graded Nakayama count."""
    X.require_L()
    F = X.field
    r = hilbert_function(X).r
    val_vecs = [variable_values(X, m) for m in range(X.k)]
    gens = []
    prev = None
    for j in range(r + 1):
        piece = canonical_piece(X, j)
        images = []
        if prev is not None:
            for row in prev.basis.data:
                for vals in val_vecs:
                    images.append([F.mul(v, x) for v, x in zip(vals, row)])
        W = row_basis(Mat(F, images, X.n)) if images else Mat(F, [], X.n)
        if images and not all(_in_row_space(piece.basis, w) for w in W.data):
            raise Degenerate("variable action left the canonical piece")
        current = [list(row) for row in W.data]
        cur_rank = W.rows
        for cand in piece.basis.data:
            new_rank = rank(Mat(F, current + [list(cand)], X.n))
            if new_rank > cur_rank:
                gens.append((j, list(cand)))
                current.append(list(cand))
                cur_rank = new_rank
        prev = piece
    return gens, r


def omega_min_gen_degrees(X: PointSet):
    """Multiset of degrees of minimal generators of the canonical module."""
    gens, r = _minimal_generator_vectors(X)
    return sorted(-r + 1 + j for j, _ in gens)


def is_indecomposable(X: PointSet) -> bool:
    """True when the canonical module is generated in degrees <= -1."""
    return all(d <= -1 for d in omega_min_gen_degrees(X))


def is_arith_gorenstein(X: PointSet) -> bool:
    """Symmetric first-difference Hilbert function plus Cayley-Bacharach."""
    hd = hilbert_function(X)
    r = hd.r
    sym = all(hd.delta[i] == hd.delta[r - i] for i in range(r + 1))
    return sym and cayley_bacharach(X)


def iso_dual_profile(X: PointSet) -> bool:
    """n = 2k, arithmetically Gorenstein, differences (1, k-1, k-1, 1)."""
    if X.n != 2 * X.k:
        return False
    hd = hilbert_function(X)
    if hd.delta != (1, X.k - 1, X.k - 1, 1):
        return False
    return is_arith_gorenstein(X)


def canonical_ideal_generators(X: PointSet):
    """Minimal generators of the canonical ideal, lifted to polynomials.

    A generator vector c in degree r+j lifts to L^j (c_1 f_1 + ... + c_n f_n)
    through the degree-r separator lifts f_i.  The returned set is verified
    to regenerate every canonical piece through degree r + 1.
    """
    gens, r = _minimal_generator_vectors(X)
    F = X.field
    seps = separators(X)
    out = []
    for j, c in gens:
        combo = None
        for ci, f in zip(c, seps):
            if ci:
                term = poly_scale(ci, f)
                combo = term if combo is None else poly_add(combo, term)
        lifted = poly_mul(poly_pow(X.L, j), combo)
        out.append(lifted)
    _verify_generators(X, gens, r)
    return out


def _verify_generators(X, gens, r):
    F = X.field
    for jp in range(r + 2):
        vecs = []
        for j, c in gens:
            if j > jp:
                continue
            for exps in monomial_basis(X.k, jp - j):
                vals = [1] * X.n
                for m, e in enumerate(exps):
                    for _ in range(e):
                        vals = [F.mul(v, rep[m]) for v, rep in zip(vals, X.reps)]
                vecs.append([F.mul(v, x) for v, x in zip(vals, c)])
        got = rank(Mat(F, vecs, X.n)) if vecs else 0
        want = canonical_piece(X, jp).dim
        if got != want:
            raise Degenerate(
                f"generators span dimension {got} != {want} in degree r+{jp}"
            )


def iso_dual_canonical_generator(X: PointSet):
    """Degree-3 generator pi = f_1 + beta_2 f_2 + ... + beta_n f_n of the
    canonical ideal of an iso-dual-profile point set."""
    if not iso_dual_profile(X):
        raise NotIsoDualProfile("requires differences (1, k-1, k-1, 1)")
    F = X.field
    r = 3
    seps = separators(X)
    coords = _socle_coordinates(X, seps, r)
    if coords[0] == 0:
        raise Degenerate("first separator vanishes in the socle")
    inv0 = F.inv(coords[0])
    betas = [F.mul(inv0, c) for c in coords]
    if any(b == 0 for b in betas):
        raise Degenerate("a separator vanished in the socle")
    combo = None
    for b, f in zip(betas, seps):
        term = poly_scale(b, f)
        combo = term if combo is None else poly_add(combo, term)
    v0 = canonical_piece(X, 0)
    if v0.dim != 1 or not _in_row_space(v0.basis, betas):
        raise Degenerate("generator vector does not span the first piece")
    return combo, betas


def _socle_coordinates(X, seps, r):
    """Coordinate of each separator in the 1-dimensional top reduced piece."""
    from .points import eta

    pieces = artinian_ideal_pieces(X, r)
    piece = pieces[r]
    nbar = basis_size(X.k - 1, r)
    R, pivots, rk = (
        rref(Mat(X.field, [list(f.coeffs) for f in piece], nbar))
        if piece
        else (Mat(X.field, [], nbar), [], 0)
    )
    if nbar - rk != 1:
        raise Degenerate("top reduced piece is not one-dimensional")
    free = next(i for i in range(nbar) if i not in pivots)
    F = X.field
    coords = []
    for f in seps:
        vec = list(eta(X, f).coeffs)
        for row, pj in zip(R.data, pivots):
            c = vec[pj]
            if c:
                vec = [F.sub(a, F.mul(c, b)) for a, b in zip(vec, row)]
        coords.append(vec[free])
    return coords


def doubling_ideal(X: PointSet, i: int) -> DoublingIdeal:
    """Generators of the ideal defining the i-th doubling: the vanishing
    ideal through degree r+1 plus L^i times the canonical generators."""
    X.require_L()
    if i < 0:
        raise ValueError("doubling shift must be >= 0")
    r = hilbert_function(X).r
    gens = []
    for d in range(1, r + 2):
        gens.extend(ideal_piece(X, d))
    shift = poly_pow(X.L, i)
    for g in canonical_ideal_generators(X):
        gens.append(poly_mul(shift, g) if i else g)
    return DoublingIdeal(i, r, 2 * r - 1 + i, gens)


def ideal_span_dimension(field, k, gens, d):
    """dim of the degree-d piece of the ideal generated by gens."""
    rows = []
    for g in gens:
        if g.degree > d or g.is_zero():
            continue
        for exps in monomial_basis(k, d - g.degree):
            rows.append(list(poly_mul(monomial_poly(field, k, exps), g).coeffs))
    if not rows:
        return 0
    return rank(Mat(field, rows, basis_size(k, d)))


def ideal_piece_basis(field, k, gens, d):
    """RREF basis of the degree-d piece of the ideal generated by gens."""
    rows = []
    for g in gens:
        if g.degree > d or g.is_zero():
            continue
        for exps in monomial_basis(k, d - g.degree):
            rows.append(list(poly_mul(monomial_poly(field, k, exps), g).coeffs))
    if not rows:
        return Mat(field, [], basis_size(k, d))
    return row_basis(Mat(field, rows, basis_size(k, d)))


def doubling_hf(X: PointSet, i: int):
    """Hilbert function of the i-th doubling, checked against the closed
    formula HF(r+i+j) = HF_X(r-1-j)."""
    D = doubling_ideal(X, i)
    r = D.r
    hd = hilbert_function(X)
    hf_x = lambda d: 0 if d < 0 else (hd.hf[d] if d <= r else X.n)
    out = []
    for d in range(D.socle_degree + 1):
        dim_ideal = ideal_span_dimension(X.field, X.k, D.generators, d)
        out.append(basis_size(X.k, d) - dim_ideal)
    for d in range(D.socle_degree + 1):
        expect = hf_x(d) if d < r + i else hf_x(r - 1 - (d - r - i))
        if out[d] != expect:
            raise Degenerate(
                f"doubling Hilbert value {out[d]} at degree {d}, expected {expect}"
            )
    return tuple(out)


def artinian_reduction(X: PointSet) -> ArtinianReduction:
    """Per-degree bases of the reduced ideal in the chart coordinates,
    with the quotient Hilbert function checked against the differences."""
    from .points import chart_basis_matrix

    X.require_L()
    if X.k < 2:
        raise Degenerate("Artinian reduction needs an ambient dimension >= 1")
    hd = hilbert_function(X)
    r = hd.r
    pieces = artinian_ideal_pieces(X, r + 1)
    hf = []
    for d, piece in enumerate(pieces):
        dim = basis_size(X.k - 1, d) - len(piece)
        expect = hd.delta[d] if d < len(hd.delta) else 0
        if dim != expect:
            raise Degenerate(f"reduced Hilbert value {dim} at degree {d}")
        hf.append(dim)
    return ArtinianReduction(chart_basis_matrix(X), pieces, tuple(hf), r)
