"""Exhaustive ground-truth solvers for LCE, PSE, and PI at tiny scale.

These are the arbiters behind every acceptance test: deterministic
enumerations whose exhaustion is accepted as a proof of non-equivalence.
The coordinate-change search for point sets runs over a complete
parametrization (images of a fixed frame plus one pinning point) instead
of all of GL_k, which is exhaustive for the same decision at a fraction
of the cost.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial

from .code import (
    LinearCode,
    column_profile,
    dual_code,
    lift_witness,
    normalize_vec,
    reduce_code,
    witness_from_pse_matrix,
)
from .errors import CapExceeded, Degenerate, DimensionMismatch, ProfileMismatch
from .gf import Field
from .linalg import Mat, invert, kernel, rank
from .points import PointSet, from_code, gale_transform
from .poly import DualPoly, HomogPoly, dual_gl_act, gl_act, projective_equal


@dataclass
class SearchCaps:
    max_gl: int = 10**7
    max_perm_words: int = 10**7

    def __post_init__(self):
        if self.max_gl <= 0 or self.max_perm_words <= 0:
            raise ValueError("caps must be positive")


DEFAULT_CAPS = SearchCaps()


def gl_size(q: int, k: int) -> int:
    size = 1
    for i in range(k):
        size *= q**k - q**i
    return size


def gl_iter(field: Field, k: int):
    """All of GL_k(F_q) by row-by-row construction outside the span of the
    previous rows, vectors in lexicographic order; deterministic and
    restartable."""
    q = field.q
    add, mul = field.add, field.mul
    vectors = list(product(range(q), repeat=k))

    def extend_span(span, v):
        out = set(span)
        for c in range(1, q):
            cv = tuple(mul(c, x) for x in v)
            for s in span:
                out.add(tuple(add(a, b) for a, b in zip(s, cv)))
        return out

    def rec(rows, span):
        if len(rows) == k:
            yield Mat(field, [list(r) for r in rows], k)
            return
        for v in vectors:
            if v in span:
                continue
            yield from rec(rows + [v], extend_span(span, v))

    zero = tuple([0] * k)
    yield from rec([], {zero})


def _act(A, f):
    if isinstance(f, DualPoly):
        return dual_gl_act(A, f)
    return gl_act(A, f)


def brute_pi_iter(f, g, caps: SearchCaps = DEFAULT_CAPS):
    """All A in GL_k with A * f projectively equal to g, enumeration order."""
    if (f.k, f.degree) != (g.k, g.degree) or type(f) is not type(g):
        return
    if f.field != g.field:
        return
    size = gl_size(f.field.q, f.k)
    if size > caps.max_gl:
        raise CapExceeded(f"|GL_{f.k}(F_{f.field.q})| = {size} exceeds cap {caps.max_gl}")
    for A in gl_iter(f.field, f.k):
        if projective_equal(_act(A, f), g) is not None:
            yield A


def brute_pi(f, g, caps: SearchCaps = DEFAULT_CAPS):
    """First GL element carrying f to g up to scalar; None proves there is
    none (so f and g are inequivalent up to scalar)."""
    for A in brute_pi_iter(f, g, caps):
        return A
    return None


def _frame_indices(X: PointSet):
    F = X.field
    rows = []
    frame = []
    for i, p in enumerate(X.points):
        trial = rows + [list(p)]
        if rank(Mat(F, trial, X.k)) == len(trial):
            rows = trial
            frame.append(i)
            if len(frame) == X.k:
                break
    return frame


def brute_pse_iter(X: PointSet, Xp: PointSet, caps: SearchCaps = DEFAULT_CAPS):
    """All coordinate changes with A X = X', enumerated over images of a
    fixed frame; complete, deterministic, and duplicate-free up to the
    harmless scalar on A."""
    if X.n != Xp.n or X.k != Xp.k or X.field != Xp.field:
        return
    F = X.field
    q = F.q
    k, n = X.k, X.n
    bound = n * factorial(n) // factorial(max(n - k, 0)) * (q - 1) ** k
    if bound > caps.max_perm_words:
        raise CapExceeded(f"{bound} frame candidates exceed cap {caps.max_perm_words}")
    frame = _frame_indices(X)
    Fmat = Mat(F, [[X.points[i][r] for i in frame] for r in range(k)], k)
    Finv = invert(Fmat)
    others = [i for i in range(n) if i not in frame]
    target_set = Xp.point_set()
    targets = list(Xp.points)

    if not others:
        # every assignment of the frame to an independent tuple works
        for tup in _independent_tuples(F, targets, k):
            W = Mat(F, [[targets[j][r] for j in tup] for r in range(k)], k)
            yield W.mul(Finv)
        return

    # pinning point: the one with the fewest zero coordinates in the frame basis
    best, best_u, best_nz = None, None, -1
    for i in others:
        u = Finv.matvec(list(X.points[i]))
        nz = sum(1 for x in u if x)
        if nz > best_nz:
            best, best_u, best_nz = i, u, nz
    u = best_u
    supp = [c for c in range(k) if u[c]]
    free = [c for c in range(k) if not u[c]]
    check_order = [i for i in others if i != best]

    for tup in _independent_tuples(F, targets, k):
        wcols = [targets[j] for j in tup]
        for y in targets:
            # solve sum_c lambda_c u_c w_c = mu y over the support columns
            cols = [[F.mul(u[c], wcols[c][r]) for c in supp] + [F.neg(y[r])] for r in range(k)]
            K = kernel(Mat(F, cols, len(supp) + 1))
            for lam_supp in _kernel_points(F, K):
                if any(x == 0 for x in lam_supp):
                    continue
                for lam_free in product(range(1, q), repeat=len(free)):
                    lam = [0] * k
                    for c, v in zip(supp, lam_supp[:-1]):
                        lam[c] = v
                    for c, v in zip(free, lam_free):
                        lam[c] = v
                    A = _assemble(F, wcols, lam, Finv)
                    if _maps_onto(F, A, X, best, y, check_order, target_set):
                        yield A


def _independent_tuples(F, targets, k):
    n = len(targets)

    def rec(chosen, rows):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for j in range(n):
            if j in chosen:
                continue
            trial = rows + [list(targets[j])]
            if rank(Mat(F, trial, len(targets[0]))) == len(trial):
                yield from rec(chosen + [j], trial)

    yield from rec([], [])


def _kernel_points(F, K):
    """Projective representatives of a kernel given by basis rows."""
    if K.rows == 0:
        return
    q = F.q
    dim = K.rows
    for coeffs in product(range(q), repeat=dim):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:
            continue
        vec = [0] * K.cols
        for c, row in zip(coeffs, K.data):
            if c:
                vec = [F.add(a, F.mul(c, b)) for a, b in zip(vec, row)]
        yield vec


def _assemble(F, wcols, lam, Finv):
    k = len(lam)
    W = Mat(F, [[F.mul(lam[c], wcols[c][r]) for c in range(k)] for r in range(k)], k)
    return W.mul(Finv)


def _maps_onto(F, A, X, pin_idx, pin_target, check_order, target_set):
    img = normalize_vec(F, A.matvec(list(X.points[pin_idx])))
    if img != pin_target:
        return False
    for i in check_order:
        if normalize_vec(F, A.matvec(list(X.points[i]))) not in target_set:
            return False
    # frame images were chosen inside the target set by construction
    return True


def brute_pse(X: PointSet, Xp: PointSet, caps: SearchCaps = DEFAULT_CAPS):
    """First A with A X = X'; None proves the sets are inequivalent."""
    for A in brute_pse_iter(X, Xp, caps):
        return A
    return None


def brute_lce_iter(C: LinearCode, Cp: LinearCode, caps: SearchCaps = DEFAULT_CAPS):
    """Verified witnesses, via the point-set search plus witness lifting."""
    if (C.n, C.k) != (Cp.n, Cp.k) or C.field != Cp.field:
        return
    Cr, m = reduce_code(C)
    Cpr, mp = reduce_code(Cp)
    if column_profile(m) != column_profile(mp):
        return
    X = from_code(Cr)
    Xp = from_code(Cpr)
    for A in brute_pse_iter(X, Xp, caps):
        wbar = witness_from_pse_matrix(Cr, Cpr, A)
        try:
            yield lift_witness(C, Cp, m, mp, wbar)
        except ProfileMismatch:
            continue


def brute_lce(C: LinearCode, Cp: LinearCode, caps: SearchCaps = DEFAULT_CAPS):
    for w in brute_lce_iter(C, Cp, caps):
        return w
    return None


def brute_lce_direct(C: LinearCode, Cp: LinearCode, caps: SearchCaps = DEFAULT_CAPS):
    """Monomial-map enumeration: all (D, P) words, with A recovered by
    solving.  Exponential in n; kept as a cross-check for corner cases."""
    from itertools import permutations

    from .linalg import row_space_equal, solve
    from .code import apply_witness, verify_witness
    from .linalg import MonomialWitness

    if (C.n, C.k) != (Cp.n, Cp.k) or C.field != Cp.field:
        return None
    F = C.field
    n, q = C.n, F.q
    words = factorial(n) * (q - 1) ** n
    if words > caps.max_perm_words:
        raise CapExceeded(f"{words} monomial words exceed cap {caps.max_perm_words}")
    for perm in permutations(range(n)):
        for diag in product(range(1, q), repeat=n):
            M = apply_witness(C, MonomialWitness(Mat.identity(F, C.k), list(diag), list(perm)))
            if not row_space_equal(M.G, Cp.G):
                continue
            Mt = M.G.transpose()
            rows = []
            ok = True
            for r in range(C.k):
                sol = solve(Mt, list(Cp.G.data[r]))
                if sol is None:
                    ok = False
                    break
                rows.append(sol)
            if not ok:
                continue
            w = MonomialWitness(Mat(F, rows, C.k), list(diag), list(perm))
            if verify_witness(C, Cp, w):
                return w
    return None


def is_self_associated(X: PointSet, caps: SearchCaps = DEFAULT_CAPS) -> bool:
    """Equal to its own Gale transform, decided by exhaustive search."""
    if X.n != 2 * X.k:
        raise DimensionMismatch("self-association needs n = 2k")
    try:
        Y = gale_transform(X)
    except Degenerate:
        return False
    return brute_pse(X, Y, caps) is not None


def is_iso_dual(C: LinearCode, caps: SearchCaps = DEFAULT_CAPS) -> bool:
    """Equivalent to its dual code, decided by exhaustive search."""
    if C.n != 2 * C.k:
        return False
    return brute_lce(C, dual_code(C), caps) is not None
