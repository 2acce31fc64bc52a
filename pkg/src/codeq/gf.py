"""Exact arithmetic in finite fields F_q, q = p^e.

Elements are plain ints in range(q).  For e > 1 the int encodes the
coefficient vector of the residue-class representative in base p,
least-significant digit = constant coefficient.  All arithmetic is exact;
elements are canonically reduced at every operation.
"""

from __future__ import annotations

from .errors import DivisionByZero, NotIrreducible, NotPrime, Overflow

# Extension fields up to this size get full lookup tables.
_TABLE_CAP = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomial helpers over F_p (dense little-endian coefficient lists) --

def _ptrim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    return a


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for idx in range(p**d):
            g = []
            t = idx
            for _ in range(d):
                g.append(t % p)
                t //= p
            g.append(1)
            if not _ptrim(_pmod(m, g, p)):
                return False
    return True


def _first_irreducible(p, e):
    """Lexicographically first monic irreducible of degree e over F_p."""
    for idx in range(p**e):
        m = []
        t = idx
        for _ in range(e):
            m.append(t % p)
            t //= p
        m.append(1)
        if _is_irreducible(m, p):
            return tuple(m)
    raise NotIrreducible(f"no irreducible of degree {e} over F_{p}")  # unreachable


class Field:
    """The field F_q with q = p^e.  Immutable; safe to share between threads."""

    def __init__(self, p: int, e: int, modulus: tuple[int, ...]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = modulus  # ascending-degree coeffs, monic; () when e == 1
        self.zero = 0
        self.one = 1
        if e == 1:
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
            self.mul = lambda a, b: (a * b) % p
            self._inv = lambda a: pow(a, p - 2, p)
        elif self.q <= _TABLE_CAP:
            self._build_tables()
        else:
            self.add = self._add_generic
            self.sub = self._sub_generic
            self.neg = self._neg_generic
            self.mul = self._mul_generic
            self._inv = self._inv_generic

    # -- generic (table-free) extension arithmetic --

    def _digits(self, a):
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def _undigits(self, ds):
        a = 0
        for c in reversed(ds):
            a = a * self.p + (c % self.p)
        return a

    def _add_generic(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def _sub_generic(self, a, b):
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x - y) % self.p for x, y in zip(da, db)])

    def _neg_generic(self, a):
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def _mul_generic(self, a, b):
        prod = _pmul(_ptrim(self._digits(a)), _ptrim(self._digits(b)), self.p)
        return self._undigits(_pmod(prod, list(self.modulus), self.p) + [0] * self.e)

    def _inv_generic(self, a):
        return self.pow(a, self.q - 2)

    def _build_tables(self):
        q = self.q
        add_t = [[self._add_generic(a, b) for b in range(q)] for a in range(q)]
        mul_t = [[self._mul_generic(a, b) for b in range(q)] for a in range(q)]
        neg_t = [self._neg_generic(a) for a in range(q)]
        inv_t = [0] * q
        for a in range(1, q):
            inv_t[a] = mul_t[a].index(1)
        self.add = lambda a, b: add_t[a][b]
        self.sub = lambda a, b: add_t[a][neg_t[b]]
        self.neg = lambda a: neg_t[a]
        self.mul = lambda a, b: mul_t[a][b]
        self._inv = lambda a: inv_t[a]
        self._mul_table = mul_t

    # -- public operations --

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._inv(a)

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by zero")
        return self.mul(a, self._inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a = self.inv(a)
            n = -n
        result = 1
        base = a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def rep(self, a: int) -> tuple[int, ...]:
        """Coefficient vector of the residue-class representative (length e)."""
        return tuple(self._digits(a))

    def from_rep(self, coeffs) -> int:
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients, got {len(coeffs)}")
        return self._undigits(list(coeffs))

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def sample(self, rng) -> int:
        return rng.randrange(self.q)

    def sample_nonzero(self, rng) -> int:
        return rng.randrange(1, self.q)

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"F({self.p})"
        return f"F({self.p}^{self.e})"


def field_make(p: int, e: int, modulus=None) -> Field:
    """Build and validate F_{p^e}; searches for a modulus when none is given."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= 2**31:
        raise Overflow(f"p = {p} too large")
    if e < 1:
        raise ValueError("extension degree must be >= 1")
    if p**e >= 2**63:
        raise Overflow(f"p^e = {p}^{e} does not fit in 64 bits")
    if e == 1:
        if modulus:
            raise ValueError("prime fields take no modulus")
        return Field(p, 1, ())
    if modulus is None:
        modulus = _first_irreducible(p, e)
    else:
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise NotIrreducible(f"modulus must be monic of degree {e}")
        if not _is_irreducible(list(modulus), p):
            raise NotIrreducible(f"modulus {list(modulus)} is reducible over F_{p}")
    return Field(p, e, modulus)


def field_arith(F: Field, a: int, b, op: str) -> int:
    """Dispatch a single arithmetic operation; pow takes any integer exponent."""
    if op == "add":
        return F.add(a, b)
    if op == "sub":
        return F.sub(a, b)
    if op == "mul":
        return F.mul(a, b)
    if op == "div":
        return F.div(a, b)
    if op == "inv":
        return F.inv(a)
    if op == "pow":
        return F.pow(a, b)
    raise ValueError(f"unknown op {op!r}")
