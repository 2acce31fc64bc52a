"""Homogeneous polynomials over F_q and the divided-power dual.

Coefficient vectors are dense, indexed by the canonical monomial order of
each degree: descending degree-reverse-lexicographic, the single global
order used everywhere in this package.  Dual elements use the divided
power basis and the contraction action, never differentiation, so that
nothing breaks when the degree reaches the characteristic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DegreeMismatch, DimensionMismatch, Singular
from .gf import Field
from .linalg import Mat, is_invertible


@lru_cache(maxsize=None)
def monomial_basis(k: int, d: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors with |alpha| = d, descending degrevlex."""
    if k < 1 or d < 0:
        raise ValueError("need k >= 1, d >= 0")

    def gen(nvars, total):
        if nvars == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in gen(nvars - 1, total - first):
                yield (first,) + rest

    exps = list(gen(k, d))
    exps.sort(key=lambda a: tuple(reversed(a)))
    return tuple(exps)


@lru_cache(maxsize=None)
def monomial_index(k: int, d: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(k, d))}


def basis_size(k: int, d: int) -> int:
    return comb(d + k - 1, k - 1)


@lru_cache(maxsize=None)
def _mul_index_table(k: int, d1: int, d2: int):
    """table[i1][i2] = index of basis(d1)[i1] * basis(d2)[i2] in basis(d1+d2)."""
    b1 = monomial_basis(k, d1)
    b2 = monomial_basis(k, d2)
    idx = monomial_index(k, d1 + d2)
    return tuple(
        tuple(idx[tuple(a + b for a, b in zip(m1, m2))] for m2 in b2) for m1 in b1
    )


@dataclass(frozen=True)
class HomogPoly:
    """Homogeneous polynomial of fixed degree in k variables."""

    field: Field
    k: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != basis_size(self.k, self.degree):
            raise DimensionMismatch("coefficient vector has the wrong length")

    def is_zero(self):
        return not any(self.coeffs)

    def support(self):
        basis = monomial_basis(self.k, self.degree)
        return [(basis[i], c) for i, c in enumerate(self.coeffs) if c]


@dataclass(frozen=True)
class DualPoly:
    """Element of the divided-power dual in degree -d, basis {pi^[beta]}."""

    field: Field
    k: int
    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != basis_size(self.k, self.degree):
            raise DimensionMismatch("coefficient vector has the wrong length")

    def is_zero(self):
        return not any(self.coeffs)

    def support(self):
        basis = monomial_basis(self.k, self.degree)
        return [(basis[i], c) for i, c in enumerate(self.coeffs) if c]


def poly_zero(field, k, d, dual=False):
    cls = DualPoly if dual else HomogPoly
    return cls(field, k, d, (0,) * basis_size(k, d))


def poly_from_terms(field, k, d, terms, dual=False):
    """Build from sparse (exponent tuple, coefficient) pairs."""
    idx = monomial_index(k, d)
    coeffs = [0] * basis_size(k, d)
    for exps, c in terms:
        exps = tuple(exps)
        if sum(exps) != d:
            raise DegreeMismatch(f"term {exps} is not of degree {d}")
        coeffs[idx[exps]] = field.add(coeffs[idx[exps]], c % field.q)
    cls = DualPoly if dual else HomogPoly
    return cls(field, k, d, tuple(coeffs))


def monomial_poly(field, k, exps):
    return poly_from_terms(field, k, sum(exps), [(exps, 1)])


def linear_form(field, coeffs) -> HomogPoly:
    return HomogPoly(field, len(coeffs), 1, tuple(c % field.q for c in coeffs))


def poly_add(f, g):
    if (f.k, f.degree, f.field) != (g.k, g.degree, g.field) or type(f) is not type(g):
        raise DimensionMismatch("incompatible polynomials")
    add = f.field.add
    return type(f)(f.field, f.k, f.degree, tuple(add(a, b) for a, b in zip(f.coeffs, g.coeffs)))


def poly_scale(c, f):
    mul = f.field.mul
    return type(f)(f.field, f.k, f.degree, tuple(mul(c, a) for a in f.coeffs))


def poly_mul(f: HomogPoly, g: HomogPoly) -> HomogPoly:
    """Product of homogeneous polynomials; degrees add."""
    if f.k != g.k or f.field != g.field:
        raise DimensionMismatch("incompatible polynomials")
    F = f.field
    add, mul = F.add, F.mul
    table = _mul_index_table(f.k, f.degree, g.degree)
    out = [0] * basis_size(f.k, f.degree + g.degree)
    for i1, c1 in enumerate(f.coeffs):
        if c1:
            row = table[i1]
            for i2, c2 in enumerate(g.coeffs):
                if c2:
                    t = row[i2]
                    out[t] = add(out[t], mul(c1, c2))
    return HomogPoly(F, f.k, f.degree + g.degree, tuple(out))


def poly_pow(f: HomogPoly, m: int) -> HomogPoly:
    if m == 0:
        return HomogPoly(f.field, f.k, 0, (1,))
    out = f
    for _ in range(m - 1):
        out = poly_mul(out, f)
    return out


def evaluate(f: HomogPoly, v) -> int:
    """Exact evaluation at a coordinate tuple of length k."""
    if len(v) != f.k:
        raise DimensionMismatch("wrong number of coordinates")
    F = f.field
    add, mul = F.add, F.mul
    d = f.degree
    pows = [[1] * (d + 1) for _ in range(f.k)]
    for i, vi in enumerate(v):
        for m in range(1, d + 1):
            pows[i][m] = mul(pows[i][m - 1], vi)
    acc = 0
    basis = monomial_basis(f.k, d)
    for idx, c in enumerate(f.coeffs):
        if c:
            term = c
            for i, e in enumerate(basis[idx]):
                if e:
                    term = mul(term, pows[i][e])
            acc = add(acc, term)
    return acc


def gl_act(A: Mat, f: HomogPoly) -> HomogPoly:
    """Substitution action A * f = f(A x): x_i -> sum_j A[i][j] x_j.

    Satisfies evaluate(A * f, v) = evaluate(f, A v).
    """
    if A.rows != A.cols or A.rows != f.k:
        raise DimensionMismatch("matrix does not match the variable count")
    if not is_invertible(A):
        raise Singular("coordinate change must be invertible")
    return _gl_act_unchecked(A, f)


def _gl_act_unchecked(A: Mat, f: HomogPoly) -> HomogPoly:
    F = f.field
    k, d = f.k, f.degree
    if d == 0 or f.is_zero():
        return f
    basis = monomial_basis(k, d)
    max_exp = [0] * k
    for idx, c in enumerate(f.coeffs):
        if c:
            for i, e in enumerate(basis[idx]):
                if e > max_exp[i]:
                    max_exp[i] = e
    one = HomogPoly(F, k, 0, (1,))
    pows = []
    for i in range(k):
        li = HomogPoly(F, k, 1, tuple(A.data[i]))
        row = [one]
        for m in range(1, max_exp[i] + 1):
            row.append(poly_mul(row[-1], li))
        pows.append(row)
    add = F.add
    out = [0] * len(f.coeffs)
    for idx, c in enumerate(f.coeffs):
        if not c:
            continue
        term = None
        for i, e in enumerate(basis[idx]):
            if e:
                term = pows[i][e] if term is None else poly_mul(term, pows[i][e])
        if term is None:
            term = one
        scaled = poly_scale(c, term)
        out = [add(a, b) for a, b in zip(out, scaled.coeffs)]
    return HomogPoly(F, k, d, tuple(out))


def substitution_matrix(A: Mat, d: int) -> Mat:
    """Matrix M with coeffs(A * f) = M . coeffs(f) for every f of degree d."""
    F = A.field
    k = A.rows
    if A.rows != A.cols:
        raise DimensionMismatch("square matrix required")
    basis = monomial_basis(k, d)
    n = len(basis)
    cols = []
    for exps in basis:
        image = _gl_act_unchecked(A, monomial_poly(F, k, exps))
        cols.append(image.coeffs)
    return Mat(F, [[cols[j][i] for j in range(n)] for i in range(n)], n)


def contract(f: HomogPoly, phi: DualPoly):
    """Contraction f . phi; a field scalar when degrees match (the pairing)."""
    if f.k != phi.k or f.field != phi.field:
        raise DimensionMismatch("incompatible arguments")
    a, d = f.degree, phi.degree
    if a > d:
        raise DegreeMismatch(f"cannot contract degree {a} into degree {d}")
    F = f.field
    add, mul = F.add, F.mul
    if a == d:
        acc = 0
        for c, b in zip(f.coeffs, phi.coeffs):
            if c and b:
                acc = add(acc, mul(c, b))
        return acc
    fb = monomial_basis(f.k, a)
    pb = monomial_basis(f.k, d)
    idx = monomial_index(f.k, d - a)
    out = [0] * basis_size(f.k, d - a)
    for i, c in enumerate(f.coeffs):
        if not c:
            continue
        alpha = fb[i]
        for j, b in enumerate(phi.coeffs):
            if not b:
                continue
            beta = pb[j]
            diff = tuple(x - y for x, y in zip(beta, alpha))
            if min(diff) >= 0:
                t = idx[diff]
                out[t] = add(out[t], mul(c, b))
    return DualPoly(F, f.k, d - a, tuple(out))


def pairing(f: HomogPoly, phi: DualPoly) -> int:
    if f.degree != phi.degree:
        raise DegreeMismatch("pairing needs equal degrees")
    return contract(f, phi)


def dual_mul(phi: DualPoly, psi: DualPoly) -> DualPoly:
    """Divided-power product; multinomial coefficients reduce mod p."""
    if phi.k != psi.k or phi.field != psi.field:
        raise DimensionMismatch("incompatible arguments")
    F = phi.field
    p = F.p
    add, mul = F.add, F.mul
    b1 = monomial_basis(phi.k, phi.degree)
    b2 = monomial_basis(phi.k, psi.degree)
    idx = monomial_index(phi.k, phi.degree + psi.degree)
    out = [0] * basis_size(phi.k, phi.degree + psi.degree)
    for i, c1 in enumerate(phi.coeffs):
        if not c1:
            continue
        beta = b1[i]
        for j, c2 in enumerate(psi.coeffs):
            if not c2:
                continue
            gamma = b2[j]
            m = 1
            for bi, gi in zip(beta, gamma):
                m = (m * comb(bi + gi, bi)) % p
            if m:
                coef = mul(mul(c1, c2), m % F.q)
                t = idx[tuple(b + g for b, g in zip(beta, gamma))]
                out[t] = add(out[t], coef)
    return DualPoly(F, phi.k, phi.degree + psi.degree, tuple(out))


def dual_gl_act(A: Mat, phi: DualPoly) -> DualPoly:
    """Dual action: pairing(f, A * phi) = pairing(A * f, phi) for all f."""
    if A.rows != A.cols or A.rows != phi.k:
        raise DimensionMismatch("matrix does not match the variable count")
    if not is_invertible(A):
        raise Singular("coordinate change must be invertible")
    M = substitution_matrix(A, phi.degree)
    new = M.transpose().matvec(list(phi.coeffs))
    return DualPoly(phi.field, phi.k, phi.degree, tuple(new))


def projective_equal(phi, psi):
    """Scalar c != 0 with phi = c * psi, or None when no such scalar exists."""
    if (phi.k, phi.degree, phi.field) != (psi.k, psi.degree, psi.field):
        return None
    F = phi.field
    c = None
    for a, b in zip(phi.coeffs, psi.coeffs):
        if (a == 0) != (b == 0):
            return None
        if a and c is None:
            c = F.div(a, b)
    if c is None:
        return None  # both zero: no well-defined scalar
    for a, b in zip(phi.coeffs, psi.coeffs):
        if a != F.mul(c, b):
            return None
    return c


def normalize_leading(poly):
    """Rescale so the first nonzero coefficient in canonical order is 1."""
    for c in poly.coeffs:
        if c:
            if c == 1:
                return poly
            return poly_scale(poly.field.inv(c), poly)
    return poly
