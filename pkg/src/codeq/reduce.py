"""Reduction pipelines and certificate logic: code equivalence to point set
equivalence, point set equivalence to polynomial isomorphism through the
inverse polynomial of the doubling, the degree-3 route for iso-dual
profiles, and witness lifting back to (A, D, P).

A polynomial-isomorphism solution is always a candidate, never a proof:
the direct point-set test is the arbiter, and every emitted witness is
re-verified by exact matrix algebra.  Because the inverse polynomials
depend on the chart forms, the solver stage enumerates the admissible
forms of the right-hand side; the transported form of any true
equivalence is among them, which makes exhaustion a sound inequivalence
proof at oracle scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .canonical import iso_dual_profile
from .code import (
    LinearCode,
    column_profile,
    lift_witness,
    min_distance,
    reduce_code,
    verify_witness,
    witness_from_pse_matrix,
)
from .errors import (
    BlockingSet,
    CapExceeded,
    HFMismatch,
    NotAWitness,
    NotIsoDualProfile,
    ProfileMismatch,
    TooLarge,
)
from .linalg import Mat, MonomialWitness, invert, is_invertible
from .macaulay import InversePolynomial, inverse_cubic, inverse_polynomial
from .oracle import DEFAULT_CAPS, SearchCaps, brute_pi_iter, brute_pse_iter, gl_size
from .points import (
    PointSet,
    admissible_forms,
    apply_map,
    chart_basis_matrix,
    find_nonvanishing_linear_form,
    from_code,
    hilbert_function,
    with_form,
)
from .poly import HomogPoly, basis_size, dual_gl_act, gl_act, normalize_leading, projective_equal

# Enumerating GL against a coefficient space only pays off while the
# product of the group size and the squared space dimension stays small;
# beyond that the frame search takes over as the solver stage.
PI_WORK_LIMIT = 400_000


def _pi_route_affordable(q, k, degree, caps):
    work = gl_size(q, k) * basis_size(k, degree) ** 2
    return gl_size(q, k) <= caps.max_gl and work <= PI_WORK_LIMIT


@dataclass
class Certificate:
    claim: str  # "lce" | "pse" | "pi" | "reduction"
    result: str  # "equivalent" | "inequivalent" | "inconclusive" | "reduced"
    inputs: dict = dc_field(default_factory=dict)
    witness: object = None  # MonomialWitness or Mat, per claim
    transcript: dict = dc_field(default_factory=dict)
    verified: bool = False


def _digest_codes(C, Cp):
    from . import serialize

    return {"left": serialize.digest(serialize.encode_code(C)),
            "right": serialize.digest(serialize.encode_code(Cp))}


def lce_to_pse(C: LinearCode, Cp: LinearCode):
    """Strip and projectivize both codes; fail fast on profile mismatches.

    Returns the two point sets, the projectivization maps needed for
    witness lifting, and a reduction certificate."""
    if (C.n, C.k) != (Cp.n, Cp.k) or C.field != Cp.field:
        raise ProfileMismatch("lengths, dimensions, or fields differ")
    Cr, m = reduce_code(C)
    Cpr, mp = reduce_code(Cp)
    if column_profile(m) != column_profile(mp):
        raise ProfileMismatch(
            f"column profiles {column_profile(m)} vs {column_profile(mp)}"
        )
    X = from_code(Cr)
    Xp = from_code(Cpr)
    cert = Certificate(
        claim="reduction",
        result="reduced",
        inputs=_digest_codes(C, Cp),
        transcript={
            "stage": "lce_to_pse",
            "profile": list(column_profile(m)[1]),
            "zero_columns": column_profile(m)[0],
            "reduced_length": X.n,
        },
        verified=True,
    )
    return X, Xp, (m, mp), cert


def pse_witness_to_lce_witness(C: LinearCode, Cp: LinearCode, maps, A: Mat) -> MonomialWitness:
    """Turn a point-set witness into a full (A, D, P) witness.

    The transformed points are normalized and matched, the diagonal comes
    from the scale factors, and the deleted columns are rebuilt from the
    projectivization hints; the result is checked exactly."""
    m, mp = maps
    Cr, m2 = reduce_code(C)
    Cpr, mp2 = reduce_code(Cp)
    if (m2.kept, mp2.kept) != (m.kept, mp.kept):
        raise ProfileMismatch("maps do not belong to these codes")
    wbar = witness_from_pse_matrix(Cr, Cpr, A)  # NotAWitness on failure
    return lift_witness(C, Cp, m, mp, wbar)


def pse_to_pi(X: PointSet, Xp: PointSet):
    """Inverse polynomials of the two doublings plus the transcript.

    Only point sets with equal Hilbert data can be equivalent, so that is
    screened first.  The two polynomials are computed against the sides'
    own chart forms; a solver must consider the transported forms of the
    right-hand side (see end_to_end), since the inverse polynomial is an
    invariant of the pair (points, form), not of the points alone."""
    X.require_L()
    Xp.require_L()
    if hilbert_function(X) != hilbert_function(Xp):
        raise HFMismatch("Hilbert data differ")
    phi = inverse_polynomial(X)
    php = inverse_polynomial(Xp)
    cert = Certificate(
        claim="reduction",
        result="reduced",
        transcript={
            "stage": "pse_to_pi",
            "r": phi.r,
            "degree": phi.phi.degree,
            "L": list(X.L.coeffs),
            "Lp": list(Xp.L.coeffs),
        },
        verified=True,
    )
    return phi, php, cert


def pi_solution_to_pse(X: PointSet, Xp: PointSet, A: Mat):
    """Direct arbiter: does the candidate map the point sets onto each
    other?  Returns a verified certificate, or None; a failed candidate is
    recorded by the caller, not an error."""
    if not is_invertible(A):
        return None
    if apply_map(A, X).point_set() != Xp.point_set():
        return None
    return Certificate(
        claim="pse",
        result="equivalent",
        witness=A,
        transcript={"stage": "pi_solution_to_pse"},
        verified=True,
    )


def isodual_to_pi3(X: PointSet, Xp: PointSet):
    """Degree-3 dual instance in k-1 variables for iso-dual profiles.

    The transcript records both chart completions so a solution in the
    reduced variables can be promoted to candidate coordinate changes."""
    if not (iso_dual_profile(X) and iso_dual_profile(Xp)):
        raise NotIsoDualProfile("both sides need differences (1, k-1, k-1, 1)")
    phi = inverse_cubic(X)
    php = inverse_cubic(Xp)
    cert = Certificate(
        claim="reduction",
        result="reduced",
        transcript={
            "stage": "isodual_to_pi3",
            "k": X.k,
            "L": list(X.L.coeffs),
            "Lp": list(Xp.L.coeffs),
            "chart": [row[:] for row in chart_basis_matrix(X).data],
            "chart_p": [row[:] for row in chart_basis_matrix(Xp).data],
        },
        verified=True,
    )
    return phi, php, cert


def promote_cubic_solution(X: PointSet, Xp: PointSet, B: Mat):
    """Candidate coordinate changes from a reduced-variable solution.

    In the chart coordinates a form-respecting equivalence is block lower
    triangular with the solved block in the corner; the unseen first
    column and the block scalar are enumerated."""
    F = X.field
    k = X.k
    S = chart_basis_matrix(X)
    Spinv = invert(chart_basis_matrix(Xp))
    from itertools import product as iproduct

    for z in range(1, F.q):
        block = [[F.mul(z, x) for x in row] for row in B.data]
        for v in iproduct(range(F.q), repeat=k - 1):
            rows = [[1] + [0] * (k - 1)]
            for i in range(k - 1):
                rows.append([v[i]] + block[i])
            M = Mat(F, rows, k)
            if not is_invertible(M):
                continue
            yield Spinv.mul(M).mul(S)


def _normalized_matrix_key(F, M):
    for row in M.data:
        for x in row:
            if x:
                s = F.inv(x)
                return tuple(tuple(F.mul(s, y) for y in row2) for row2 in M.data)
    return None


def _witness_search_cubic(C, Cp, X, Xp, maps, caps, transcript):
    """Degree-3 pipeline: reduced PI solve, promotion, lift filter."""
    F = X.field
    transcript["route"] = "cubic"
    transcript["failed_lifts"] = 0
    phi = inverse_cubic(X)
    seen_blocks = set()
    for Lp in admissible_forms(Xp):
        Xp_c = with_form(Xp, Lp)
        if not iso_dual_profile(Xp_c):
            continue
        php = inverse_cubic(Xp_c)
        seen_blocks.clear()
        for B in brute_pi_iter(phi.phi, php.phi, caps):
            key = _normalized_matrix_key(F, B)
            if key in seen_blocks:
                continue
            seen_blocks.add(key)
            for cand in promote_cubic_solution(X, Xp_c, B):
                cert = pi_solution_to_pse(X, Xp, cand)
                if cert is None:
                    continue
                try:
                    w = pse_witness_to_lce_witness(C, Cp, maps, cand)
                except (ProfileMismatch, NotAWitness):
                    transcript["failed_lifts"] += 1
                    continue
                transcript["Lp"] = list(Lp.coeffs)
                transcript["pi_degree"] = 3
                return w
    return None


def _witness_search_doubling(C, Cp, X, Xp, maps, caps, transcript):
    """General pipeline: doubling inverse polynomials and a PI solve."""
    transcript["route"] = "doubling"
    transcript["failed_lifts"] = 0
    phi = inverse_polynomial(X)
    for Lp in admissible_forms(Xp):
        Xp_c = with_form(Xp, Lp)
        if hilbert_function(Xp_c) != hilbert_function(X):
            continue
        php = inverse_polynomial(Xp_c)
        for B in brute_pi_iter(phi.phi, php.phi, caps):
            cert = pi_solution_to_pse(X, Xp, B)
            if cert is None:
                continue
            try:
                w = pse_witness_to_lce_witness(C, Cp, maps, B)
            except (ProfileMismatch, NotAWitness):
                transcript["failed_lifts"] += 1
                continue
            transcript["Lp"] = list(Lp.coeffs)
            transcript["pi_degree"] = phi.phi.degree
            return w
    return None


def _witness_search_direct(C, Cp, X, Xp, maps, caps, transcript):
    """Frame search on the point sets; used when no chart form exists or
    the PI enumeration is out of reach."""
    transcript["route"] = transcript.get("route", "direct")
    transcript["failed_lifts"] = 0
    for A in brute_pse_iter(X, Xp, caps):
        try:
            w = pse_witness_to_lce_witness(C, Cp, maps, A)
        except (ProfileMismatch, NotAWitness):
            transcript["failed_lifts"] += 1
            continue
        return w
    return None


def _attach_transform_check(X, Xp, w, transcript, coeff_cap=20_000):
    """Verify the inverse-polynomial transform law along a found witness
    and record it: with the transported form, the polynomial of the image
    side pulls back to the polynomial of the source."""
    if X.L is None:
        return
    A = w.A
    r = hilbert_function(X).r
    if basis_size(X.k, 2 * r - 1) > coeff_cap:
        return
    try:
        Lp = normalize_leading(gl_act(invert(A), X.L))
        Xp_m = with_form(Xp, Lp)
    except (BlockingSet, Exception):
        return
    phi = inverse_polynomial(X)
    php = inverse_polynomial(Xp_m)
    scalar = projective_equal(phi.phi, dual_gl_act(invert(A), php.phi))
    if scalar is None:
        raise NotAWitness("transform law failed along a verified witness")
    transcript["transform_law"] = {
        "Lp_matched": list(Lp.coeffs),
        "scalar": scalar,
        "degree": phi.phi.degree,
    }


def end_to_end(
    C: LinearCode,
    Cp: LinearCode,
    caps: SearchCaps = DEFAULT_CAPS,
    route: str = "auto",
    distance_cap: int = 10**5,
) -> Certificate:
    """Full chain: projectivize, screen invariants, reduce to a polynomial
    isomorphism instance, solve within caps, lift, and verify.

    Returns a verified equivalence certificate or a non-equivalence report;
    non-equivalence is only ever certified by an invariant mismatch or an
    exhausted search."""
    inputs = _digest_codes(C, Cp)
    transcript = {"caps": {"max_gl": caps.max_gl, "max_perm_words": caps.max_perm_words}}

    def inequivalent(reason):
        return Certificate(
            claim="lce",
            result="inequivalent",
            inputs=inputs,
            transcript=dict(transcript, reason=reason),
            verified=True,
        )

    if (C.n, C.k) != (Cp.n, Cp.k) or C.field != Cp.field:
        return inequivalent("dimension mismatch")
    try:
        X, Xp, maps, _ = lce_to_pse(C, Cp)
    except ProfileMismatch:
        return inequivalent("column profile mismatch")

    q, k = C.field.q, C.k
    if q**k <= distance_cap:
        d1, d2 = min_distance(C), min_distance(Cp)
        transcript["min_distance"] = [d1, d2]
        if d1 != d2:
            return inequivalent("minimum distance mismatch")

    have_forms = True
    try:
        find_nonvanishing_linear_form(X)
        find_nonvanishing_linear_form(Xp)
    except BlockingSet:
        have_forms = False
        transcript["blocking_set"] = True
    except TooLarge:
        have_forms = False
        transcript["form_scan_capped"] = True

    if have_forms:
        if hilbert_function(X) != hilbert_function(Xp):
            return inequivalent("Hilbert function mismatch")
        transcript["hilbert"] = list(hilbert_function(X).hf)
        transcript["L"] = list(X.L.coeffs)

    w = None
    if route not in ("auto", "cubic", "doubling", "direct"):
        raise ValueError(f"unknown route {route!r}")
    if route == "direct" or not have_forms:
        w = _witness_search_direct(C, Cp, X, Xp, maps, caps, transcript)
    else:
        isodual = iso_dual_profile(X) and iso_dual_profile(Xp)
        if route == "cubic" and not isodual:
            raise NotIsoDualProfile("cubic route needs iso-dual profiles")
        r = hilbert_function(X).r
        if (
            route in ("auto", "cubic")
            and isodual
            and k >= 2
            and _pi_route_affordable(q, k - 1, 3, caps)
        ):
            w = _witness_search_cubic(C, Cp, X, Xp, maps, caps, transcript)
            if w is None and route == "auto":
                transcript["cubic_exhausted"] = True
        if w is None and route != "cubic":
            if _pi_route_affordable(q, k, 2 * r - 1, caps):
                w = _witness_search_doubling(C, Cp, X, Xp, maps, caps, transcript)
            else:
                transcript["route"] = "direct"
                transcript["pi_route_skipped"] = "search space beyond the PI budget"
                w = _witness_search_direct(C, Cp, X, Xp, maps, caps, transcript)
        elif w is None and route == "cubic":
            return inequivalent("exhausted cubic search")

    if w is None:
        return inequivalent("exhausted search")
    if not verify_witness(C, Cp, w):
        raise NotAWitness("pipeline produced an invalid witness")
    if have_forms:
        _attach_transform_check(X, Xp, w, transcript)
    return Certificate(
        claim="lce",
        result="equivalent",
        inputs=inputs,
        witness=w,
        transcript=transcript,
        verified=True,
    )
