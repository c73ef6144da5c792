"""
Linear subspaces of F_q^n in reduced row echelon form.

Counting (Gaussian binomials), exhaustive enumeration by pivot pattern, and
uniform sampling by rejection on random matrices.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, InvalidRange, ParseError

DEFAULT_ENUMERATION_BUDGET = 10 ** 7


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n, exact."""
    if q < 2:
        raise InvalidRange(f"q must be at least 2, got {q}")
    if not 0 <= k <= n:
        raise InvalidRange(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** n - q ** i
        den *= q ** k - q ** i
    assert num % den == 0
    return num // den


def count_containing(n, k, l, q):
    """Number of k-dimensional subspaces containing a fixed l-dimensional one."""
    if not 0 <= l <= k <= n:
        raise InvalidRange(f"need 0 <= l <= k <= n, got n={n}, k={k}, l={l}")
    return gaussian_binomial(n - l, k - l, q)


def rref(field, rows):
    """Row-reduce a matrix over ``field``.

    Returns ``(reduced, pivots)`` where ``reduced`` holds only the nonzero
    rows, as lists of ints.
    """
    m = [[int(v) for v in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        s = field.inv(m[r][c])
        m[r] = [field.mul(s, v) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(field, rows):
    return len(rref(field, rows)[1])


def combine(field, coeffs, basis):
    """Rows of ``coeffs @ basis`` over the field, both uint8 arrays."""
    coeffs = np.asarray(coeffs, dtype=np.uint8)
    basis = np.asarray(basis, dtype=np.uint8)
    out = np.zeros((coeffs.shape[0], basis.shape[1]), dtype=np.uint8)
    for i in range(basis.shape[0]):
        out = field.add_table[out, field.mul_table[coeffs[:, i, None], basis[i][None, :]]]
    return out


def _mixed_radix(q, k):
    """All vectors of F_q^k, coordinate 0 least significant."""
    idx = np.arange(q ** k, dtype=np.int64)
    return ((idx[:, None] // (q ** np.arange(k, dtype=np.int64))[None, :]) % q).astype(np.uint8)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace given by its RREF basis; equal iff the bases match."""

    space: object
    basis: tuple

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.space.n:
                raise DimensionMismatch(f"basis rows must have {self.space.n} entries")

    @property
    def k(self):
        return len(self.basis)

    @property
    def pivots(self):
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.basis)

    @cached_property
    def basis_array(self):
        return np.array(self.basis, dtype=np.uint8).reshape(self.k, self.space.n)

    def span_coords(self):
        """All q^k points of the subspace, ordered by coefficient vector."""
        coeffs = _mixed_radix(self.space.q, self.k)
        return combine(self.space.field, coeffs, self.basis_array)

    def contains(self, x):
        if len(x) != self.space.n:
            raise DimensionMismatch(f"expected {self.space.n} coordinates")
        return rank(self.space.field, list(self.basis) + [list(x)]) == self.k

    def contains_subspace(self, other):
        return all(self.contains(row) for row in other.basis)

    def is_rref(self):
        reduced, pivots = rref(self.space.field, self.basis) if self.basis else ([], [])
        return [list(r) for r in self.basis] == reduced and len(pivots) == self.k

    def serialize(self):
        rows = ";".join(",".join(str(v) for v in row) for row in self.basis)
        return f"G({self.space.q},{self.space.n},{self.k}):{rows}"

    def __repr__(self):
        return f"Subspace({self.serialize()})"


def subspace_from_vectors(space, vectors):
    """The span of ``vectors`` as a canonical Subspace."""
    vectors = [list(v) for v in vectors]
    if not vectors:
        return Subspace(space, ())
    for v in vectors:
        if len(v) != space.n:
            raise DimensionMismatch(f"vectors must have {space.n} coordinates")
    reduced, _ = rref(space.field, vectors)
    return Subspace(space, tuple(tuple(r) for r in reduced))


def zero_subspace(space):
    return Subspace(space, ())


def full_subspace(space):
    return Subspace(space, tuple(tuple(int(i == j) for j in range(space.n))
                                 for i in range(space.n)))


def parse_subspace(space, text):
    """Inverse of :meth:`Subspace.serialize`; the result is re-canonicalized."""
    text = text.strip()
    try:
        head, body = text.split(":", 1)
        q, n, k = (int(v) for v in head.strip()[2:-1].split(","))
        if not head.startswith("G("):
            raise ValueError(head)
        rows = [[int(v) for v in r.split(",")] for r in body.split(";") if r.strip()]
    except ValueError as exc:
        raise ParseError(f"malformed subspace {text!r}") from exc
    if q != space.q or n != space.n:
        raise ParseError(f"subspace is over G({q},{n}), expected q={space.q}, n={space.n}")
    gamma = subspace_from_vectors(space, rows)
    if gamma.k != k:
        raise ParseError(f"rows span dimension {gamma.k}, header says {k}")
    return gamma


def enumerate_grassmannian(space, k, budget=DEFAULT_ENUMERATION_BUDGET):
    """Yield every k-dimensional subspace exactly once.

    Order: pivot patterns lexicographically, then free entries as a
    lexicographic tuple (row by row, left to right).
    """
    n, q = space.n, space.q
    if not 0 <= k <= n:
        raise InvalidRange(f"need 0 <= k <= n, got n={n}, k={k}")
    total = gaussian_binomial(n, k, q)
    if total > budget:
        raise BudgetExceeded(f"G({n},{k}) over GF({q}) has {total} members, budget {budget}")
    return _enumerate(space, k)


def _enumerate(space, k):
    n, q = space.n, space.q
    for pivots in combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots)
                for j in range(p + 1, n) if j not in pivot_set]
        for values in product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield Subspace(space, tuple(tuple(r) for r in rows))


def sample_uniform_subspace(space, k, rng):
    """A uniformly random k-dimensional subspace.

    Draws random k x n matrices until one has rank k.  Every subspace has
    the same number of spanning k-tuples, so the accepted span is uniform.
    """
    n, q = space.n, space.q
    if not 0 <= k <= n:
        raise InvalidRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0:
        return zero_subspace(space)
    while True:
        m = rng.integers(0, q, size=(k, n))
        reduced, pivots = rref(space.field, m.tolist())
        if len(pivots) == k:
            return Subspace(space, tuple(tuple(r) for r in reduced))


def extend_to_complement(gamma):
    """Standard basis vectors at the non-pivot columns of gamma.

    Together with gamma's basis they form a basis of the whole space.
    """
    n = gamma.space.n
    pivots = set(gamma.pivots)
    return tuple(tuple(int(i == j) for i in range(n)) for j in range(n) if j not in pivots)
