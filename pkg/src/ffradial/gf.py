"""
Arithmetic in the finite field F_q, q = p^e.

Elements are plain integers in [0, q).  For e = 1 they are residues mod p;
for e >= 2 the integer holds the coefficients of a polynomial over F_p in
base p, constant term least significant, reduced modulo a fixed monic
irreducible polynomial of degree e.

Scalar operations (``add``, ``mul``, ...) are intended for small loops such
as row reduction.  Bulk work goes through the numpy tables ``add_table``,
``sub_table``, ``mul_table``, ``neg_table`` and ``inv_table``, which index
directly by element value.
"""

from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotPrimePower, Unsupported

DEFAULT_MAX_Q = 64


def _smallest_prime_factor(n):
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def factor_prime_power(q):
    """Return ``(p, e)`` with ``q == p**e``; raise NotPrimePower otherwise."""
    if q < 2:
        raise NotPrimePower(f"{q} is not a prime power")
    p = _smallest_prime_factor(q)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise NotPrimePower(f"{q} has at least two distinct prime factors")
    return p, e


# --- polynomials over F_p, coefficient lists with constant term first ---

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a modulo b over F_p (b nonzero)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _poly_trim(a)
    return a


def _digits(value, p, width):
    out = []
    for _ in range(width):
        out.append(value % p)
        value //= p
    return out


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg//2."""
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for low in range(p ** d):
            divisor = _digits(low, p, d) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def smallest_irreducible(p, e):
    """Lexicographically smallest monic irreducible of degree e over F_p.

    Candidates are ordered by the integer whose base-p digits are the lower
    coefficients, so the x^(e-1) coefficient is the most significant.
    """
    for low in range(p ** e):
        poly = _digits(low, p, e) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial exists for every degree")


class FieldSpec:
    """
    The finite field F_q together with its lookup tables.

    Instances are immutable; build them with :func:`field_new`.
    """

    def __init__(self, p, e, irreducible_poly=None):
        self.p = p
        self.e = e
        self.q = p ** e
        self.irreducible_poly = tuple(irreducible_poly) if e > 1 else None
        q = self.q
        if e == 1:
            a = np.arange(q, dtype=np.int64)
            add = (a[:, None] + a[None, :]) % q
            mul = (a[:, None] * a[None, :]) % q
            self.exp_table = None
            self.log_table = None
            self.generator = None
        else:
            add = self._extension_add_table()
            self.generator, self.exp_table, self.log_table = self._log_tables()
            mul = np.zeros((q, q), dtype=np.int64)
            logs = self.log_table[1:]
            mul[1:, 1:] = self.exp_table[logs[:, None] + logs[None, :]]
        neg = np.argmin(add, axis=1)      # the unique b with a + b == 0
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = np.argmax(mul[1:] == 1, axis=1)
        sub = add[np.arange(q)[:, None], neg[None, :]]

        dtype = np.uint8
        self.add_table = add.astype(dtype)
        self.sub_table = sub.astype(dtype)
        self.mul_table = mul.astype(dtype)
        self.neg_table = neg.astype(dtype)
        self.inv_table = inv.astype(dtype)
        for t in (self.add_table, self.sub_table, self.mul_table,
                  self.neg_table, self.inv_table):
            t.flags.writeable = False

    def _extension_add_table(self):
        p, q, e = self.p, self.q, self.e
        digits = np.array([_digits(v, p, e) for v in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        return summed @ weights

    def _poly_mulmod(self, a, b):
        p, e = self.p, self.e
        da, db = _digits(a, p, e), _digits(b, p, e)
        prod = [0] * (2 * e - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, self.irreducible_poly, p)
        return sum(c * p ** i for i, c in enumerate(rem))

    def _log_tables(self):
        q = self.q
        for g in range(2, q):
            powers = [1]
            x = g
            while x != 1:
                powers.append(x)
                x = self._poly_mulmod(x, g)
            if len(powers) == q - 1:
                break
        else:
            raise AssertionError("multiplicative group is cyclic")
        exp = np.array(powers + powers, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(powers)] = np.arange(q - 1)
        return g, exp, log

    # -- scalar arithmetic --------------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return int(self.add_table[a, b])

    def sub(self, a, b):
        if self.e == 1:
            return (a - b) % self.p
        return int(self.sub_table[a, b])

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return int(self.neg_table[a])

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no multiplicative inverse")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, k):
        result = 1
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def elements(self):
        return range(self.q)

    def __eq__(self, other):
        if not isinstance(other, FieldSpec):
            return NotImplemented
        return (self.p, self.e, self.irreducible_poly) == (
            other.p, other.e, other.irreducible_poly)

    def __hash__(self):
        return hash((self.p, self.e, self.irreducible_poly))

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.e}, poly={self.irreducible_poly})"


@lru_cache(maxsize=None)
def _cached_field(p, e):
    poly = smallest_irreducible(p, e) if e > 1 else None
    return FieldSpec(p, e, poly)


def field_new(q, max_q=DEFAULT_MAX_Q):
    """Build (or fetch the cached) field of order q.

    >>> field_new(4).irreducible_poly
    (1, 1, 1)
    """
    q = int(q)
    p, e = factor_prime_power(q)
    if q > max_q:
        raise Unsupported(f"q={q} exceeds the supported maximum {max_q}")
    return _cached_field(p, e)
