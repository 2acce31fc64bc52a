import random

import pytest

from codeq.code import (
    apply_witness,
    code_from_matrix,
    gen_equivalent_pair,
    gen_random_projective,
    gen_self_dual,
    verify_witness,
)
from codeq.errors import CapExceeded
from codeq.gf import field_make
from codeq.linalg import Mat, is_invertible, random_witness
from codeq.oracle import (
    SearchCaps,
    brute_lce,
    brute_lce_direct,
    brute_pi,
    brute_pse,
    brute_pse_iter,
    gl_iter,
    gl_size,
    is_iso_dual,
    is_self_associated,
)
from codeq.points import PointSet, apply_map, from_code, find_nonvanishing_linear_form
from codeq.poly import (
    HomogPoly,
    basis_size,
    gl_act,
    monomial_poly,
    projective_equal,
)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F5 = field_make(5, 1)


def test_gl_iter_complete_and_invertible():
    mats = list(gl_iter(F3, 2))
    assert len(mats) == gl_size(3, 2) == 48
    assert len({tuple(tuple(r) for r in M.data) for M in mats}) == 48
    assert all(is_invertible(M) for M in mats)


def test_brute_pi_self_is_identity():
    f = HomogPoly(F5, 2, 3, (1, 2, 0, 3))  # asymmetric cubic
    A = brute_pi(f, f)
    assert A == Mat.identity(F5, 2)


def test_brute_pi_cube_swap():
    f = monomial_poly(F5, 2, (3, 0))
    g = monomial_poly(F5, 2, (0, 3))
    A = brute_pi(f, g)
    assert A == Mat(F5, [[0, 1], [1, 0]])


def test_brute_pi_inequivalent():
    f = monomial_poly(F3, 2, (3, 0))      # a cube of a linear form
    g = monomial_poly(F3, 2, (2, 1))      # squarefree-in-one-variable shape
    assert brute_pi(f, g) is None


def test_brute_pi_matches_planted_transform():
    rng = random.Random(5)
    for _ in range(10):
        f = HomogPoly(F3, 2, 3, tuple(F3.sample(rng) for _ in range(4)))
        if f.is_zero():
            continue
        from codeq.linalg import random_invertible

        B = random_invertible(F3, 2, rng)
        g = gl_act(B, f)
        A = brute_pi(f, g)
        assert A is not None
        assert projective_equal(gl_act(A, f), g) is not None


def test_brute_pi_cap():
    f = monomial_poly(F5, 3, (1, 1, 1))
    with pytest.raises(CapExceeded):
        brute_pi(f, f, SearchCaps(max_gl=10))


def pointset(field, pts):
    return PointSet(field, len(pts[0]), pts)


def test_brute_pse_self_and_sizes():
    X = pointset(F3, [(1, 0), (0, 1), (1, 1)])
    A = brute_pse(X, X)
    assert A is not None
    img = {tuple(A.matvec(list(p))) for p in X.points}
    Y = pointset(F3, [(1, 0), (0, 1)])
    assert brute_pse(X, Y) is None


def test_brute_pse_planted():
    rng = random.Random(8)
    for _ in range(20):
        C = gen_random_projective(F5, 5, 2, rng)
        X = from_code(C)
        from codeq.linalg import random_invertible

        B = random_invertible(F5, 2, rng)
        Y = apply_map(B, X)
        A = brute_pse(X, Y)
        assert A is not None
        assert apply_map(A, X).point_set() == Y.point_set()


def test_brute_pse_matches_full_gl_scan():
    # exhaustiveness: frame search and raw GL scan agree on the decision
    rng = random.Random(11)
    from codeq.code import gen_random_projective

    for trial in range(12):
        CX = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        CY = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        X, Y = from_code(CX), from_code(CY)
        frame_hit = brute_pse(X, Y) is not None
        gl_hit = False
        for A in gl_iter(F3, 2):
            if apply_map(A, X).point_set() == Y.point_set():
                gl_hit = True
                break
        assert frame_hit == gl_hit


def test_brute_pse_cap():
    X = pointset(F3, [(1, 0), (0, 1), (1, 1)])
    with pytest.raises(CapExceeded):
        brute_pse(X, X, SearchCaps(max_perm_words=2))


def test_brute_lce_self_and_planted():
    rng = random.Random(13)
    C = gen_random_projective(F5, 5, 2, rng)
    w = brute_lce(C, C)
    assert w is not None and verify_witness(C, C, w)
    for seed in range(15):
        C, Cp, _ = gen_equivalent_pair(F5, 6, 2, seed, dups=1, zeros=1)
        found = brute_lce(C, Cp)
        assert found is not None
        assert verify_witness(C, Cp, found)


def test_brute_lce_weight_distribution_screen():
    # [3,1] codes with different weight profiles cannot be equivalent
    C = code_from_matrix(Mat(F2, [[1, 1, 0]]))
    Cp = code_from_matrix(Mat(F2, [[1, 1, 1]]))
    assert brute_lce(C, Cp) is None


def test_brute_lce_agrees_with_direct_enumeration():
    rng = random.Random(17)
    small = SearchCaps(max_gl=10**6, max_perm_words=10**6)
    for trial in range(8):
        CX = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        CY = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        a = brute_lce(CX, CY, small)
        b = brute_lce_direct(CX, CY, small)
        assert (a is None) == (b is None)
        if a is not None:
            assert verify_witness(CX, CY, a) and verify_witness(CX, CY, b)


def test_decision_invariant_under_re_presentation():
    rng = random.Random(19)
    C, Cp, _ = gen_equivalent_pair(F3, 5, 2, 23, dups=1)
    w = random_witness(F3, 2, 5, rng)
    C2 = apply_witness(C, w)
    assert brute_lce(C, Cp) is not None
    assert brute_lce(C2, Cp) is not None
    other = gen_equivalent_pair(F3, 5, 2, 99, dups=2)[0]
    bit1 = brute_lce(C, other) is not None
    bit2 = brute_lce(C2, other) is not None
    assert bit1 == bit2


def test_self_dual_instances_are_iso_dual_and_self_associated():
    C = gen_self_dual(F5, 3, 2)
    assert is_iso_dual(C)
    X = from_code(C)
    assert is_self_associated(X)


def test_four_points_on_a_line_are_self_associated():
    C = gen_random_projective(F5, 4, 2, 31)
    X = from_code(C)
    assert is_self_associated(X)
    assert is_iso_dual(C)


def test_iso_dual_and_self_associated_agree_on_random_instances():
    rng = random.Random(37)
    agree = 0
    for _ in range(10):
        C = gen_random_projective(F5, 6, 3, rng.randrange(10**6))
        X = from_code(C)
        assert is_iso_dual(C) == is_self_associated(X)
        agree += 1
    assert agree == 10
