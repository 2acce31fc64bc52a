import random

import pytest

from codeq.canonical import iso_dual_profile
from codeq.code import (
    apply_witness,
    code_from_matrix,
    gen_equivalent_pair,
    gen_random_projective,
    gen_self_dual,
    verify_witness,
)
from codeq.errors import HFMismatch, NotIsoDualProfile, ProfileMismatch
from codeq.gf import field_make
from codeq.linalg import Mat, invert, random_invertible, random_witness
from codeq.oracle import SearchCaps, brute_lce, brute_pi, brute_pi_iter
from codeq.points import (
    PointSet,
    admissible_forms,
    apply_map,
    find_nonvanishing_linear_form,
    from_code,
    with_form,
)
from codeq.poly import gl_act, projective_equal
from codeq.reduce import (
    Certificate,
    end_to_end,
    isodual_to_pi3,
    lce_to_pse,
    pi_solution_to_pse,
    promote_cubic_solution,
    pse_to_pi,
    pse_witness_to_lce_witness,
)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F5 = field_make(5, 1)
F7 = field_make(7, 1)


def with_L(X):
    find_nonvanishing_linear_form(X)
    return X


def test_lce_to_pse_projective_inputs():
    C = gen_random_projective(F5, 5, 2, 1)
    X, Xp, maps, cert = lce_to_pse(C, C)
    assert X.n == 5 and cert.verified
    assert X.point_set() == from_code(C).point_set()


def test_lce_to_pse_equal_reduced_lengths():
    for seed in range(5):
        C, Cp, _ = gen_equivalent_pair(F5, 7, 2, seed, dups=2, zeros=1)
        X, Xp, maps, _ = lce_to_pse(C, Cp)
        assert X.n == Xp.n


def test_lce_to_pse_profile_mismatch():
    # multiplicity multiset (2,2) against (1,3): cannot be equivalent
    C = code_from_matrix(Mat(F5, [[1, 2, 0, 0], [0, 0, 1, 3]]))
    Cp = code_from_matrix(Mat(F5, [[1, 0, 0, 0], [0, 1, 2, 3]]))
    with pytest.raises(ProfileMismatch):
        lce_to_pse(C, Cp)
    # reduced lengths differ
    C2 = code_from_matrix(Mat(F5, [[1, 2, 0, 1], [0, 0, 1, 1]]))
    C3 = code_from_matrix(Mat(F5, [[1, 0, 1, 1], [0, 1, 1, 2]]))
    with pytest.raises(ProfileMismatch):
        lce_to_pse(C2, C3)


def test_pse_witness_to_lce_witness_round_trip():
    rng = random.Random(3)
    for trial in range(200):
        k = rng.choice([2, 3])
        q_field = rng.choice([F3, F5])
        nmax = (q_field.q**k - 1) // (q_field.q - 1)
        n0 = rng.randrange(k, min(nmax, 6) + 1)
        dups = rng.randrange(0, 3)
        zeros = rng.randrange(0, 2)
        try:
            C, Cp, w = gen_equivalent_pair(
                q_field, n0 + dups + zeros, k, rng.randrange(10**6), dups=dups, zeros=zeros
            )
        except Exception:
            continue
        X, Xp, maps, _ = lce_to_pse(C, Cp)
        lifted = pse_witness_to_lce_witness(C, Cp, maps, w.A)
        assert verify_witness(C, Cp, lifted)


def test_pse_witness_identity():
    C = gen_random_projective(F5, 5, 2, 9)
    X, Xp, maps, _ = lce_to_pse(C, C)
    w = pse_witness_to_lce_witness(C, C, maps, Mat.identity(F5, 2))
    assert verify_witness(C, C, w)


def test_pse_witness_rejects_non_witness():
    from codeq.errors import NotAWitness

    C = gen_random_projective(F5, 5, 2, 10)
    Cp = gen_random_projective(F5, 5, 2, 11)
    X, Xp, maps, _ = lce_to_pse(C, Cp)
    bad = Mat(F5, [[1, 1], [0, 1]])
    if apply_map(bad, X).point_set() != Xp.point_set():
        with pytest.raises(NotAWitness):
            pse_witness_to_lce_witness(C, Cp, maps, bad)


def test_pse_to_pi_identical_sides():
    C = gen_random_projective(F5, 5, 2, 13)
    X = with_L(from_code(C))
    Y = with_L(from_code(C))
    phi, php, cert = pse_to_pi(X, Y)
    assert phi.phi == php.phi
    assert cert.transcript["stage"] == "pse_to_pi"


def test_pse_to_pi_hf_mismatch_short_circuits():
    X = with_L(from_code(gen_random_projective(F5, 6, 3, 1)))
    Y = with_L(
        PointSet(F5, 3, [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0), (1, 3, 0), (0, 0, 1)])
    )
    if from_code(gen_random_projective(F5, 6, 3, 1)).point_set() != Y.point_set():
        from codeq.points import hilbert_function

        if hilbert_function(X) != hilbert_function(Y):
            with pytest.raises(HFMismatch):
                pse_to_pi(X, Y)


def test_pse_to_pi_solvable_with_transported_form():
    # with the right-hand form enumerated, the planted transform appears as
    # a dual solution and the arbiter accepts its lift
    rng = random.Random(17)
    for _ in range(10):
        C = gen_random_projective(F5, 4, 2, rng.randrange(10**6))
        X = with_L(from_code(C))
        A = random_invertible(F5, 2, rng)
        Xp = apply_map(A, X)
        found = False
        for Lp in admissible_forms(Xp):
            Xp_c = with_form(Xp, Lp)
            phi, php, _ = pse_to_pi(X, Xp_c)
            for B in brute_pi_iter(phi.phi, php.phi):
                if pi_solution_to_pse(X, Xp_c, B) is not None:
                    found = True
                    break
            if found:
                break
        assert found


def test_pi_solution_to_pse_arbiter():
    rng = random.Random(19)
    C = gen_random_projective(F5, 5, 2, 21)
    X = with_L(from_code(C))
    A = random_invertible(F5, 2, rng)
    Xp = apply_map(A, X)
    cert = pi_solution_to_pse(X, Xp, A)
    assert cert is not None and cert.verified and cert.claim == "pse"
    # random matrices fail the arbiter almost surely; count successes
    hits = 0
    for _ in range(30):
        R = random_invertible(F5, 2, rng)
        if pi_solution_to_pse(X, Xp, R) is not None:
            hits += 1
    assert hits <= 3


def test_isodual_to_pi3_requires_profile():
    X = with_L(from_code(gen_random_projective(F5, 5, 2, 23)))
    Y = with_L(from_code(gen_random_projective(F5, 5, 2, 24)))
    with pytest.raises(NotIsoDualProfile):
        isodual_to_pi3(X, Y)


def test_isodual_to_pi3_instance_shape():
    C = gen_self_dual(F5, 3, 31)
    w = random_witness(F5, 3, 6, 5)
    Cp = apply_witness(C, w)
    X = with_L(from_code(C))
    Xp = with_L(from_code(Cp))
    phi, php, cert = isodual_to_pi3(X, Xp)
    assert phi.phi.k == 2 and phi.phi.degree == 3
    assert cert.transcript["stage"] == "isodual_to_pi3"


def test_promote_cubic_solution_recovers_witness():
    # k = 2: the reduced instance is trivial and promotion does the work
    C = gen_self_dual(F7, 2, 7)
    w = random_witness(F7, 2, 4, 11)
    Cp = apply_witness(C, w)
    X = with_L(from_code(C))
    Xp = from_code(Cp)
    ok = False
    for Lp in admissible_forms(Xp):
        Xp_c = with_form(Xp, Lp)
        if not iso_dual_profile(Xp_c):
            continue
        B = Mat.identity(F7, 1)
        for cand in promote_cubic_solution(X, Xp_c, B):
            if pi_solution_to_pse(X, Xp_c, cand) is not None:
                ok = True
                break
        if ok:
            break
    assert ok


def run_pipeline(C, Cp, **kw):
    cert = end_to_end(C, Cp, **kw)
    if cert.result == "equivalent":
        assert cert.witness is not None
        assert verify_witness(C, Cp, cert.witness)
    return cert


def test_end_to_end_identity_pair():
    C = gen_random_projective(F5, 5, 2, 41)
    cert = run_pipeline(C, C)
    assert cert.result == "equivalent"


def test_end_to_end_planted_pairs_doubling_route():
    for seed in range(8):
        C, Cp, _ = gen_equivalent_pair(F5, 6, 2, seed, dups=1)
        cert = run_pipeline(C, Cp)
        assert cert.result == "equivalent"
        assert cert.transcript["route"] in ("cubic", "doubling")


def test_end_to_end_cubic_route_for_self_dual_pairs():
    F9 = field_make(3, 2)
    for seed, (field, k) in enumerate([(F5, 3), (F7, 2), (F9, 2)]):
        C = gen_self_dual(field, k, seed + 50)
        w = random_witness(field, k, 2 * k, seed)
        Cp = apply_witness(C, w)
        cert = run_pipeline(C, Cp)
        assert cert.result == "equivalent"
        assert cert.transcript["route"] == "cubic"
        assert cert.transcript.get("pi_degree") == 3


def test_end_to_end_inequivalent_by_invariants():
    C = code_from_matrix(Mat(F2, [[1, 1, 0], [0, 1, 1]]))
    Cp = code_from_matrix(Mat(F2, [[1, 0, 0], [0, 1, 1]]))
    cert = run_pipeline(C, Cp)
    assert cert.result == "inequivalent"
    C2 = code_from_matrix(Mat(F5, [[1, 0, 2, 0], [0, 1, 0, 0]]))
    C3 = code_from_matrix(Mat(F5, [[1, 0, 2, 2], [0, 1, 0, 0]]))
    cert = run_pipeline(C2, C3)
    assert cert.result == "inequivalent"
    assert "profile" in cert.transcript["reason"]


def test_end_to_end_inequivalent_by_search():
    # same parameters, same Hilbert data, but inequivalent point sets
    C = from_4pts = code_from_matrix(Mat(F7, [[1, 0, 1, 1], [0, 1, 1, 2]]))
    Cp = code_from_matrix(Mat(F7, [[1, 0, 1, 1], [0, 1, 1, 3]]))
    cert_direct = run_pipeline(C, Cp, route="direct")
    oracle_bit = brute_lce(C, Cp) is not None
    assert (cert_direct.result == "equivalent") == oracle_bit
    cert_auto = run_pipeline(C, Cp)
    assert cert_auto.result == cert_direct.result


def test_end_to_end_blocking_set_falls_back_to_direct():
    # all four points of the projective line over F_3 block every form
    C = code_from_matrix(Mat(F3, [[1, 0, 1, 1], [0, 1, 1, 2]]))
    w = random_witness(F3, 2, 4, 3)
    Cp = apply_witness(C, w)
    cert = run_pipeline(C, Cp)
    assert cert.result == "equivalent"
    assert cert.transcript.get("blocking_set") is True
    assert cert.transcript["route"] == "direct"


def test_end_to_end_transform_law_attached():
    C, Cp, _ = gen_equivalent_pair(F5, 5, 2, 77)
    cert = run_pipeline(C, Cp)
    assert cert.result == "equivalent"
    law = cert.transcript.get("transform_law")
    assert law is not None and law["scalar"] != 0


def test_end_to_end_agrees_with_oracle_on_forced_routes():
    rng = random.Random(83)
    for _ in range(6):
        Ca = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        Cb = gen_random_projective(F3, 4, 2, rng.randrange(10**6))
        bit = brute_lce(Ca, Cb) is not None
        for route in ("auto", "doubling", "direct"):
            cert = run_pipeline(Ca, Cb, route=route)
            assert (cert.result == "equivalent") == bit
