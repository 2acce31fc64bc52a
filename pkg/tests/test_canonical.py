import random

import pytest

from codeq.canonical import (
    artinian_reduction,
    canonical_ideal_generators,
    canonical_piece,
    doubling_hf,
    doubling_ideal,
    ideal_span_dimension,
    is_arith_gorenstein,
    is_indecomposable,
    iso_dual_canonical_generator,
    iso_dual_profile,
    multiply_into_piece,
    omega_min_gen_degrees,
    variable_values,
)
from codeq.code import code_from_matrix, gen_random_projective, gen_self_dual
from codeq.errors import NotInPiece, NotIsoDualProfile
from codeq.gf import field_make
from codeq.linalg import Mat, rank, row_space_equal
from codeq.points import (
    PointSet,
    evaluation_matrix,
    find_nonvanishing_linear_form,
    from_code,
    hilbert_function,
)
from codeq.poly import evaluate, linear_form, monomial_basis, monomial_poly, poly_mul

from omega_oracle import omega_generator_degrees_oracle

F3 = field_make(3, 1)
F5 = field_make(5, 1)
F7 = field_make(7, 1)

WORKED = code_from_matrix(Mat(F5, [[1, 0, 1, 1], [0, 1, 1, 4]]))


def with_L(X):
    find_nonvanishing_linear_form(X)
    return X


def random_pointset(field, n, k, seed):
    return with_L(from_code(gen_random_projective(field, n, k, seed)))


def test_canonical_piece_sum_zero_layer():
    X = random_pointset(F5, 5, 2, 1)
    r = hilbert_function(X).r
    piece = canonical_piece(X, r - 1)
    assert piece.dim == X.n - 1
    for row in piece.basis.data:
        assert sum(row) % 5 == 0


def test_canonical_piece_dimensions():
    for seed in range(5):
        X = random_pointset(F5, 6, 3, seed)
        hd = hilbert_function(X)
        for j in range(hd.r + 2):
            d = hd.r - 1 - j
            expect = X.n - (hd.hf[d] if d >= 0 else 0)
            assert canonical_piece(X, j).dim == expect
        assert canonical_piece(X, hd.r).dim == X.n


def test_multiply_into_piece_diagonal_action():
    X = random_pointset(F5, 6, 3, 7)
    hd = hilbert_function(X)
    j = hd.r - 1
    c = list(canonical_piece(X, j).basis.data[0])
    # the chart form acts as the identity
    acc = [0] * X.n
    for m, lc in enumerate(X.L.coeffs):
        if lc:
            out = multiply_into_piece(X, m, c, j)
            acc = [F5.add(a, F5.mul(lc, o)) for a, o in zip(acc, out)]
    assert acc == c
    # diagonal actions commute
    a01 = multiply_into_piece(X, 1, multiply_into_piece(X, 0, c, j), j + 1)
    a10 = multiply_into_piece(X, 0, multiply_into_piece(X, 1, c, j), j + 1)
    assert a01 == a10
    # image vectors annihilate the next evaluation matrix layer
    X2 = random_pointset(F5, 5, 2, 3)
    hd2 = hilbert_function(X2)
    j2 = 0
    if hd2.r - 2 - j2 >= 0:
        c2 = list(canonical_piece(X2, j2).basis.data[0])
        out = multiply_into_piece(X2, 0, c2, j2)
        E = evaluation_matrix(X2, hd2.r - 2 - j2)
        for col in range(E.cols):
            acc = 0
            for i in range(X2.n):
                acc = F5.add(acc, F5.mul(out[i], E.data[i][col]))
            assert acc == 0


def test_multiply_into_piece_rejects_outsiders():
    X = random_pointset(F5, 5, 2, 2)
    bad = [1] + [0] * (X.n - 1)  # e_1 is never in V_0 for r >= 1
    with pytest.raises(NotInPiece):
        multiply_into_piece(X, 0, bad, 0)


def test_omega_degrees_match_hom_presentation_oracle():
    rng = random.Random(101)
    cases = []
    for _ in range(12):
        k = rng.choice([2, 3])
        n = rng.randrange(k + 1, 8 if k == 2 else 9)
        cases.append((F5, n, k, rng.randrange(10**6)))
    cases.append((F3, 4, 2, 5))
    cases.append((F7, 6, 3, 6))
    for field, n, k, seed in cases:
        try:
            X = random_pointset(field, n, k, seed)
        except Exception:
            continue
        assert omega_min_gen_degrees(X) == omega_generator_degrees_oracle(X)


def test_omega_two_points_on_a_line():
    X = with_L(PointSet(F5, 2, [(1, 0), (0, 1)]))
    degs = omega_min_gen_degrees(X)
    assert degs == omega_generator_degrees_oracle(X)
    assert len(degs) <= X.n


def test_omega_total_generators_bounded():
    for seed in range(4):
        X = random_pointset(F5, 6, 3, seed)
        assert len(omega_min_gen_degrees(X)) <= X.n


def test_is_indecomposable_examples():
    X = with_L(PointSet(F5, 2, [(1, 0), (0, 1)]))
    assert not is_indecomposable(X)
    C = gen_self_dual(F5, 3, 4)
    assert is_indecomposable(with_L(from_code(C)))


def test_single_point_edge_case():
    X = with_L(PointSet(F5, 1, [(1,)]))
    degs = omega_min_gen_degrees(X)
    assert degs == omega_generator_degrees_oracle(X) == [1]
    assert not is_indecomposable(X)


def test_is_arith_gorenstein():
    X = random_pointset(F5, 4, 2, 9)
    assert is_arith_gorenstein(X)  # any distinct points on a line
    Y = with_L(PointSet(F5, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
    assert hilbert_function(Y).delta == (1, 2)
    assert not is_arith_gorenstein(Y)


def test_arith_gorenstein_agrees_with_single_omega_generator():
    rng = random.Random(55)
    for _ in range(10):
        k = rng.choice([2, 3])
        n = rng.randrange(k + 1, 8)
        try:
            X = random_pointset(F5, n, k, rng.randrange(10**6))
        except Exception:
            continue
        degs = omega_min_gen_degrees(X)
        assert is_arith_gorenstein(X) == (len(degs) == 1)


def test_iso_dual_profile():
    X = with_L(from_code(WORKED))
    assert iso_dual_profile(X)
    C = gen_self_dual(F5, 3, 8)
    assert iso_dual_profile(with_L(from_code(C)))
    Y = random_pointset(F5, 5, 2, 3)
    assert not iso_dual_profile(Y)  # n != 2k


def test_canonical_ideal_generators_isodual_single_cubic():
    X = with_L(from_code(WORKED))
    gens = canonical_ideal_generators(X)
    assert len(gens) == 1 and gens[0].degree == 3


def test_canonical_generators_evaluate_into_pieces():
    for seed in (0, 1):
        X = random_pointset(F5, 6, 3, seed)
        r = hilbert_function(X).r
        for g in canonical_ideal_generators(X):
            j = g.degree - r
            vals = [evaluate(g, rep) for rep in X.reps]
            piece = canonical_piece(X, j)
            assert rank(Mat(F5, piece.basis.data + [vals], X.n)) == piece.dim


def test_iso_dual_canonical_generator():
    X = with_L(from_code(WORKED))
    pi, betas = iso_dual_canonical_generator(X)
    assert betas[0] == 1 and all(b != 0 for b in betas)
    assert pi.degree == 3
    assert [evaluate(pi, rep) for rep in X.reps] == betas
    # diagonal multiples of the generator close up each canonical piece
    r = 3
    for j in range(r + 1):
        vecs = []
        for exps in monomial_basis(X.k, j):
            vals = [evaluate(monomial_poly(F5, X.k, exps), rep) for rep in X.reps]
            vecs.append([F5.mul(v, b) for v, b in zip(vals, betas)])
        piece = canonical_piece(X, j)
        assert rank(Mat(F5, vecs, X.n)) == piece.dim
        assert row_space_equal(Mat(F5, vecs, X.n), piece.basis) or piece.dim == rank(
            Mat(F5, vecs + piece.basis.data, X.n)
        )
    with pytest.raises(NotIsoDualProfile):
        iso_dual_canonical_generator(random_pointset(F5, 5, 2, 1))


def test_doubling_hf_self_associated_k2():
    F9 = field_make(3, 2)
    X = with_L(from_code(gen_self_dual(F9, 2, 12)))
    hf = doubling_hf(X, 0)
    assert hf == (1, 2, 3, 3, 2, 1)
    assert sum(hf) == 12  # 6k for k = 2


def test_doubling_hf_palindromic_and_shifted():
    X = with_L(from_code(WORKED))
    hf0 = doubling_hf(X, 0)
    assert hf0 == tuple(reversed(hf0))
    hf1 = doubling_hf(X, 1)
    assert hf1 == tuple(reversed(hf1))
    r = hilbert_function(X).r
    assert hf1 == hf0[:r] + (X.n,) + hf0[r:]


def test_doubling_hf_random_instances():
    for seed in (3, 4):
        X = random_pointset(F5, 6, 3, seed)
        hf = doubling_hf(X, 0)  # raises on any mismatch with the formula
        assert hf[-1] == 1  # socle dimension


def test_shifted_embedding_pieces():
    # value vectors of the shifted doubling ideal reproduce the canonical
    # pieces: degree r+i+j elements evaluate into V_j
    X = random_pointset(F5, 5, 2, 21)
    r = hilbert_function(X).r
    i = 1
    D = doubling_ideal(X, i)
    for j in range(r):
        d = r + i + j
        vecs = []
        for g in D.generators:
            if g.degree > d:
                continue
            for exps in monomial_basis(X.k, d - g.degree):
                h = poly_mul(monomial_poly(F5, X.k, exps), g)
                vecs.append([evaluate(h, rep) for rep in X.reps])
        piece = canonical_piece(X, j)
        M = Mat(F5, vecs, X.n)
        assert rank(M) == piece.dim
        assert rank(Mat(F5, vecs + piece.basis.data, X.n)) == piece.dim


def test_change_of_chart_rescaled_pieces_agree():
    # second admissible form: rescaling by its values identifies the pieces
    X = random_pointset(F5, 4, 2, 31)
    r = hilbert_function(X).r
    candidates = []
    from itertools import product

    for coeffs in product(range(5), repeat=2):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1 or coeffs == tuple(X.L.coeffs):
            continue
        form = linear_form(F5, list(coeffs))
        if all(evaluate(form, p) for p in X.points):
            candidates.append(form)
    assert candidates
    Lp = candidates[0]
    Y = from_code(code_from_matrix(Mat(F5, [list(p) for p in X.points], 2).transpose()))
    Y.set_L(Lp)
    s = [evaluate(Lp, rep) for rep in X.reps]
    for j in range(r):
        vj = canonical_piece(X, j).basis
        vjp = canonical_piece(Y, j).basis
        scale = [F5.pow(si, r - 1 - j) for si in s]
        rescaled = Mat(F5, [[F5.mul(sc, x) for sc, x in zip(scale, row)] for row in vj.data], X.n)
        assert row_space_equal(rescaled, vjp)


def test_artinian_reduction_profiles():
    X = with_L(from_code(gen_self_dual(F5, 3, 14)))
    ar = artinian_reduction(X)
    assert ar.hf == (1, 2, 2, 1, 0)
    assert ar.socle_degree == 3
    X2 = with_L(from_code(WORKED))
    ar2 = artinian_reduction(X2)
    assert ar2.hf == (1, 1, 1, 1, 0)
    assert all(not ar2.pieces[d] for d in range(4))
    assert len(ar2.pieces[4]) == 1


def test_variable_values():
    X = random_pointset(F5, 4, 2, 41)
    for m in range(2):
        assert variable_values(X, m) == [rep[m] for rep in X.reps]
