"""Linear codes over F_q: duals, monomial equivalence, projectivization,
witness lifting across deleted columns, and instance generators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .errors import (
    AllZero,
    DimensionMismatch,
    FullLength,
    NotAWitness,
    NotProjective,
    ProfileMismatch,
    TooLarge,
    Unsatisfiable,
    RetriesExhausted,
)
from .gf import Field
from .linalg import Mat, MonomialWitness, kernel, random_witness, rank, rref, row_space_equal


@dataclass
class LinearCode:
    field: Field
    n: int
    k: int
    G: Mat

    def __post_init__(self):
        if self.G.shape() != (self.k, self.n):
            raise DimensionMismatch("generator matrix shape does not match (k, n)")
        if not (1 <= self.k <= self.n):
            raise DimensionMismatch(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if rank(self.G) != self.k:
            raise DimensionMismatch("generator matrix must have rank k")

    def columns(self):
        return [self.G.col(j) for j in range(self.n)]

    def __eq__(self, other):
        return isinstance(other, LinearCode) and self.G == other.G


def code_from_matrix(G: Mat) -> LinearCode:
    return LinearCode(G.field, G.cols, G.rows, G)


def normalize_vec(field: Field, v):
    """Scale so the first nonzero entry is 1; None for the zero vector."""
    for x in v:
        if x:
            if x == 1:
                return tuple(v)
            s = field.inv(x)
            return tuple(field.mul(s, y) for y in v)
    return None


@dataclass
class ProjectivizationMap:
    """Bookkeeping for deleted columns.

    kept: original indices of surviving columns, increasing.
    zero_cols: original indices of deleted zero columns.
    dup: deleted nonzero column -> (anchor kept column, scalar s) with
         col_deleted = s * col_anchor.
    """

    kept: tuple[int, ...]
    zero_cols: tuple[int, ...] = ()
    dup: dict = dc_field(default_factory=dict)

    def multiplicity(self, anchor: int) -> int:
        return 1 + sum(1 for a, _ in self.dup.values() if a == anchor)

    def class_members(self, anchor: int):
        """Columns projectively equal to the anchor, with their scalars."""
        members = [(anchor, 1)]
        for j, (a, s) in self.dup.items():
            if a == anchor:
                members.append((j, s))
        members.sort()
        return members


def dual_code(C: LinearCode) -> LinearCode:
    if C.k == C.n:
        raise FullLength("dual of a full-length code is the zero code")
    K = kernel(C.G)
    return LinearCode(C.field, C.n, C.n - C.k, K)


def strip_zero_columns(C: LinearCode):
    """Drop zero columns; returns the shorter code and the kept indices."""
    kept = [j for j in range(C.n) if any(row[j] for row in C.G.data)]
    if not kept:
        raise AllZero("all columns are zero")
    if len(kept) == C.n:
        return C, tuple(range(C.n))
    G = Mat(C.field, [[row[j] for j in kept] for row in C.G.data], len(kept))
    return LinearCode(C.field, len(kept), C.k, G), tuple(kept)


def projectivize(C: LinearCode):
    """Left-to-right scan deleting scalar multiples of earlier kept columns.

    Requires no zero columns (strip first); the survivors are pairwise
    projectively distinct, so the associated point set has one point per
    remaining column.
    """
    F = C.field
    seen = {}
    kept = []
    dup = {}
    for j in range(C.n):
        col = C.G.col(j)
        nrm = normalize_vec(F, col)
        if nrm is None:
            raise NotProjective("zero column; run strip_zero_columns first")
        if nrm in seen:
            anchor = seen[nrm]
            acol = C.G.col(anchor)
            i0 = next(i for i, x in enumerate(acol) if x)
            s = F.div(col[i0], acol[i0])
            dup[j] = (anchor, s)
        else:
            seen[nrm] = j
            kept.append(j)
    pmap = ProjectivizationMap(tuple(kept), (), dup)
    if len(kept) == C.n:
        return C, pmap
    G = Mat(F, [[row[j] for j in kept] for row in C.G.data], len(kept))
    return LinearCode(F, len(kept), C.k, G), pmap


def reduce_code(C: LinearCode):
    """strip_zero_columns followed by projectivize, with original-index maps."""
    stripped, zkept = strip_zero_columns(C)
    proj, pmap = projectivize(stripped)
    zero_cols = tuple(j for j in range(C.n) if j not in zkept)
    kept = tuple(zkept[i] for i in pmap.kept)
    dup = {zkept[j]: (zkept[a], s) for j, (a, s) in pmap.dup.items()}
    return proj, ProjectivizationMap(kept, zero_cols, dup)


def column_profile(pmap: ProjectivizationMap):
    """Multiset of point multiplicities plus the zero-column count."""
    mults = sorted(pmap.multiplicity(a) for a in pmap.kept)
    return (len(pmap.zero_cols), tuple(mults))


def apply_witness(C: LinearCode, w: MonomialWitness) -> LinearCode:
    if w.A.cols != C.k or w.n() != C.n:
        raise DimensionMismatch("witness does not match code dimensions")
    F = C.field
    AG = w.A.mul(C.G)
    out = [[0] * C.n for _ in range(C.k)]
    for i in range(C.n):
        d = w.diag[i]
        t = w.perm[i]
        for r in range(C.k):
            out[r][t] = F.mul(d, AG.data[r][i])
    return LinearCode(F, C.n, C.k, Mat(F, out, C.n))


def verify_witness(C: LinearCode, Cp: LinearCode, w: MonomialWitness) -> bool:
    if (C.n, C.k) != (Cp.n, Cp.k):
        return False
    try:
        w.validate()
    except Exception:
        return False
    return apply_witness(C, w).G == Cp.G


def lift_witness(
    C: LinearCode,
    Cp: LinearCode,
    m: ProjectivizationMap,
    mp: ProjectivizationMap,
    wbar: MonomialWitness,
) -> MonomialWitness:
    """Extend a witness on the projectivized codes to the full-length pair.

    Deleted columns are matched class by class through the permutation of
    the reduced witness; the scale hints fix the new diagonal entries.
    Raises ProfileMismatch when the deleted-column profiles are not
    compatible with the reduced permutation.
    """
    F = C.field
    if len(m.kept) != len(mp.kept) or len(m.zero_cols) != len(mp.zero_cols):
        raise ProfileMismatch("reduced lengths or zero-column counts differ")
    if C.n != Cp.n:
        raise ProfileMismatch("code lengths differ")
    n = C.n
    diag = [1] * n
    perm = [0] * n
    for z, zp in zip(m.zero_cols, mp.zero_cols):
        perm[z] = zp
    for i, anchor in enumerate(m.kept):
        j = wbar.perm[i]
        anchor_p = mp.kept[j]
        members = m.class_members(anchor)
        members_p = mp.class_members(anchor_p)
        if len(members) != len(members_p):
            raise ProfileMismatch(
                f"multiplicity {len(members)} vs {len(members_p)} across the witness"
            )
        dbar = wbar.diag[i]
        for (t, s), (tp, sp) in zip(members, members_p):
            perm[t] = tp
            diag[t] = F.mul(sp, F.mul(dbar, F.inv(s)))
    w = MonomialWitness(wbar.A, diag, perm)
    if not verify_witness(C, Cp, w):
        raise NotAWitness("lifted witness failed the exact matrix check")
    return w


def witness_from_pse_matrix(C: LinearCode, Cp: LinearCode, A: Mat) -> MonomialWitness:
    """Assemble (A, D, P) for projective codes from a coordinate change that
    maps the column points of C onto those of Cp.

    Each transformed column is normalized and matched against the normalized
    target columns (at most n comparisons); the permutation comes from the
    matching and the diagonal from the two scale factors.
    """
    from .errors import NotAWitness as _NotAWitness

    F = C.field
    targets = {}
    for j in range(Cp.n):
        targets[normalize_vec(F, Cp.G.col(j))] = j
    diag = [1] * C.n
    perm = [0] * C.n
    for i in range(C.n):
        v = A.matvec(C.G.col(i))
        nrm = normalize_vec(F, v)
        if nrm is None or nrm not in targets:
            raise _NotAWitness("matrix does not map the point set onto the target")
        j = targets[nrm]
        perm[i] = j
        i0 = next(t for t, x in enumerate(v) if x)
        diag[i] = F.div(Cp.G.col(j)[i0], v[i0])
    w = MonomialWitness(A, diag, perm)
    if not verify_witness(C, Cp, w):
        raise _NotAWitness("assembled witness failed the exact matrix check")
    return w


def min_distance(C: LinearCode, cap: int = 10**6) -> int:
    """Exact minimum Hamming weight by exhausting all q^k - 1 codewords."""
    F = C.field
    q = F.q
    if q**C.k > cap:
        raise TooLarge(f"q^k = {q}^{C.k} exceeds cap {cap}")
    rows = C.G.data
    best = C.n
    msg = [0] * C.k
    word = [0] * C.n
    add, mul = F.add, F.mul
    for idx in range(1, q**C.k):
        # odometer increment, updating the codeword incrementally
        pos = 0
        t = idx
        while t % q == 0:
            t //= q
            pos += 1
        for r in range(pos):
            delta = F.neg(msg[r])
            if delta:
                grow = rows[r]
                for c in range(C.n):
                    if grow[c]:
                        word[c] = add(word[c], mul(delta, grow[c]))
            msg[r] = 0
        grow = rows[pos]
        for c in range(C.n):
            if grow[c]:
                word[c] = add(word[c], grow[c])
        msg[pos] = add(msg[pos], 1)
        wt = sum(1 for x in word if x)
        if wt < best:
            best = wt
            if best == 1:
                break
    return best


def gram_matrix(C: LinearCode) -> Mat:
    return C.G.mul(C.G.transpose())


def is_weakly_self_dual(C: LinearCode) -> bool:
    return gram_matrix(C).is_zero()


def is_self_dual(C: LinearCode) -> bool:
    if C.n != 2 * C.k:
        return False
    return row_space_equal(C.G, dual_code(C).G)


def is_projective(C: LinearCode) -> bool:
    seen = set()
    for j in range(C.n):
        nrm = normalize_vec(C.field, C.G.col(j))
        if nrm is None or nrm in seen:
            return False
        seen.add(nrm)
    return True


# -- instance generators (deterministic functions of their seed) --


def _as_rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def gen_random_projective(field: Field, n: int, k: int, seed) -> LinearCode:
    q = field.q
    if n < k or n > (q**k - 1) // (q - 1):
        raise Unsatisfiable(f"no projective [{n},{k}] code over F_{q}")
    rng = _as_rng(seed)
    for _ in range(500):
        seen = set()
        cols = []
        guard = 0
        while len(cols) < n and guard < 50 * n + 200:
            guard += 1
            v = [field.sample(rng) for _ in range(k)]
            nrm = normalize_vec(field, v)
            if nrm is None or nrm in seen:
                continue
            seen.add(nrm)
            cols.append(list(nrm))
        if len(cols) < n:
            continue
        G = Mat(field, [[cols[j][i] for j in range(n)] for i in range(k)], n)
        if rank(G) == k:
            return LinearCode(field, n, k, G)
    raise Unsatisfiable("random search failed to produce a projective code")


def gen_equivalent_pair(field: Field, n: int, k: int, seed, dups: int = 0, zeros: int = 0):
    """A code, an equivalent code, and the planted witness.

    dups/zeros insert that many scalar-duplicate and zero columns into the
    base projective code before the witness is applied; n is the final
    length.
    """
    rng = _as_rng(seed)
    n0 = n - dups - zeros
    base = gen_random_projective(field, n0, k, rng)
    cols = [list(base.G.col(j)) for j in range(n0)]
    for _ in range(dups):
        src = rng.randrange(len(cols))
        s = field.sample_nonzero(rng)
        if not any(cols[src]):
            cols.append([0] * k)
            continue
        cols.append([field.mul(s, x) for x in cols[src]])
    for _ in range(zeros):
        cols.append([0] * k)
    order = list(range(len(cols)))
    rng.shuffle(order)
    cols = [cols[i] for i in order]
    G = Mat(field, [[cols[j][i] for j in range(n)] for i in range(k)], n)
    C = LinearCode(field, n, k, G)
    w = random_witness(field, k, n, rng)
    return C, apply_witness(C, w), w


def gen_self_dual(field: Field, k: int, seed, retries: int = 400) -> LinearCode:
    """Projective, indecomposable self-dual [2k, k] code with G = [I | M].

    Searches for M with M M^T = -I row by row, then filters for
    projectivity, an admissible linear form, and indecomposability.
    Raises RetriesExhausted when the seeded search does not succeed.
    """
    from .points import find_nonvanishing_linear_form, from_code
    from .canonical import is_indecomposable
    from .errors import BlockingSet

    F = field
    rng = _as_rng(seed)
    target = F.neg(1)
    for _ in range(retries):
        rows = []
        ok = True
        for _ in range(k):
            found = None
            if rows:
                K = kernel(Mat(F, rows, k))
                basis = K.data
            else:
                basis = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
            for _ in range(60 * F.q):
                v = [0] * k
                for b in basis:
                    c = F.sample(rng)
                    if c:
                        v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
                dot = 0
                for x in v:
                    dot = F.add(dot, F.mul(x, x))
                if dot == target:
                    found = v
                    break
            if found is None:
                ok = False
                break
            rows.append(found)
        if not ok:
            continue
        M = Mat(F, rows, k)
        G = Mat(F, [
            [1 if i == j else 0 for j in range(k)] + M.data[i] for i in range(k)
        ], 2 * k)
        if rank(G) != k:
            continue
        C = LinearCode(F, 2 * k, k, G)
        if not is_projective(C) or not is_weakly_self_dual(C):
            continue
        X = from_code(C)
        try:
            find_nonvanishing_linear_form(X)
        except BlockingSet:
            continue
        if not is_indecomposable(X):
            continue
        return C
    raise RetriesExhausted(f"no self-dual [2k={2*k},{k}] instance found over F_{F.q}")
