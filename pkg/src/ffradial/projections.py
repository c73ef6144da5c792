"""
Radial projections from a center and quotient projections by a subspace.

A direction is stored in canonical form: the nonzero vector scaled so its
first nonzero coordinate is 1.  Two points x, x' lie on the same line
through y exactly when x - y and x' - y have the same canonical form, so the
radial image of E from y is counted as the number of distinct canonical
directions of ``x - y`` for ``x in E``, ``x != y``.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .ambient import DIRECTION_TABLE_MAX_SIZE, AmbientSpace, PointSet
from .errors import DimensionMismatch
from .grassmann import _mixed_radix, combine, extend_to_complement

# upper bound on (centers x points x n) table lookups held in memory at once
_CHUNK_BUDGET = 1 << 22


def num_lines_through_point(q, n):
    return (q ** n - 1) // (q - 1)


def _canonicalize(field, diff):
    """Scale vectors along the last axis so the first nonzero entry is 1."""
    lead = np.zeros(diff.shape[:-1], dtype=np.uint8)
    for j in range(diff.shape[-1]):
        lead = np.where(lead == 0, diff[..., j], lead)
    return field.mul_table[field.inv_table[lead][..., None], diff]


def canonical_direction(field, v):
    """Canonical representative of the direction of a nonzero vector."""
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ValueError("the zero vector has no direction")
    s = field.inv(int(lead))
    return tuple(field.mul(s, int(c)) for c in v)


def canonical_direction_codes(space, points, center):
    """Index of canonical(x - center) for each row x; 0 where x == center."""
    diff = space.field.sub_table[points, np.asarray(center, dtype=np.uint8)[None, :]]
    return space.indices(_canonicalize(space.field, diff))


def _codes_block(space, e_coords, y_coords):
    field = space.field
    diff = field.sub_table[e_coords[None, :, :], y_coords[:, None, :]]
    canon = _canonicalize(field, diff).astype(np.int64)
    return canon @ space.powers


def _count_distinct_nonzero(codes):
    """Per row, the number of distinct nonzero values."""
    if codes.shape[1] == 0:
        return np.zeros(codes.shape[0], dtype=np.int64)
    s = np.sort(codes, axis=1)
    new = np.ones(s.shape, dtype=bool)
    new[:, 1:] = s[:, 1:] != s[:, :-1]
    return (new & (s != 0)).sum(axis=1)


@dataclass(frozen=True)
class RadialImage:
    center: tuple
    directions: frozenset

    @property
    def size(self):
        return len(self.directions)


def radial_projection(E, y):
    """The set of lines through y meeting E minus {y}, as canonical directions."""
    space = E.space
    if len(y) != space.n:
        raise DimensionMismatch(f"center must have {space.n} coordinates")
    y = tuple(int(c) for c in y)
    space.index(y)
    if len(E) == 0:
        return RadialImage(y, frozenset())
    diff = space.field.sub_table[E.coords(), np.asarray(y, dtype=np.uint8)[None, :]]
    diff = diff[np.any(diff != 0, axis=1)]
    canon = _canonicalize(space.field, diff)
    return RadialImage(y, frozenset(map(tuple, np.unique(canon, axis=0).tolist())))


def radial_sizes(E, centers=None, jobs=1):
    """|pi^y(E)| for each center index (all q^n centers by default).

    This is the sweep every theorem check runs.  Centers are processed in
    chunks; with ``jobs > 1`` the chunks run on a thread pool and are merged
    in index order, so the result does not depend on ``jobs``.
    """
    space = E.space
    if centers is None:
        centers = np.arange(space.size, dtype=np.int64)
    else:
        centers = np.asarray(centers, dtype=np.int64)
    e_idx = E.indices()
    m = len(e_idx)
    if m == 0 or len(centers) == 0:
        return np.zeros(len(centers), dtype=np.int64)

    if space.size <= DIRECTION_TABLE_MAX_SIZE:
        table = space.direction_table
        return _count_distinct_nonzero(table[centers[:, None], e_idx[None, :]])

    e_coords = space.coords(e_idx)
    step = max(1, _CHUNK_BUDGET // (m * max(space.n, 1)))
    bounds = [(s, min(s + step, len(centers))) for s in range(0, len(centers), step)]

    def work(bound):
        lo, hi = bound
        y_coords = space.coords(centers[lo:hi])
        return _count_distinct_nonzero(_codes_block(space, e_coords, y_coords))

    if jobs > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(work, bounds))
    else:
        parts = [work(b) for b in bounds]
    return np.concatenate(parts)


class QuotientMap:
    """
    The projection x -> x + gamma, with the cosets identified with F_q^t,
    t = n - dim(gamma).

    Writing x in the basis (gamma rows, completion vectors), the image is the
    vector of completion coefficients.  Because gamma is in RREF and the
    completion consists of unit vectors at the non-pivot columns, the gamma
    coefficients are just ``x[pivots]`` and the image is
    ``x[free] - sum_i x[pivot_i] * gamma_i[free]``.
    """

    def __init__(self, gamma):
        self.gamma = gamma
        self.source = gamma.space
        self.completion = extend_to_complement(gamma)
        self.target = AmbientSpace(self.source.field, self.source.n - gamma.k)
        pivots = set(gamma.pivots)
        self._free = np.array([j for j in range(self.source.n) if j not in pivots],
                              dtype=np.int64)

    @property
    def k(self):
        """The k with dim(gamma) = n - k - 1."""
        return self.target.n - 1

    def apply_coords(self, coords):
        field = self.source.field
        coords = np.asarray(coords, dtype=np.uint8).reshape(-1, self.source.n)
        out = coords[:, self._free]
        g = self.gamma.basis_array
        for i, p in enumerate(self.gamma.pivots):
            shift = field.mul_table[coords[:, p, None], g[i, self._free][None, :]]
            out = field.sub_table[out, shift]
        return out

    def apply_indices(self, indices):
        """Target indices of many source indices."""
        return self.target.indices(self.apply_coords(self.source.coords(indices)))

    def apply(self, x):
        if len(x) != self.source.n:
            raise DimensionMismatch(f"expected {self.source.n} coordinates")
        return tuple(int(v) for v in self.apply_coords([x])[0])

    def labels(self):
        """Target index of every source point, in source index order."""
        return self.target.indices(self.apply_coords(self.source.all_coords))

    def project_set(self, S):
        if S.space != self.source:
            raise DimensionMismatch("set lives in a different space")
        return PointSet.from_indices(self.target, self.apply_indices(S.indices()))

    def fiber(self, w):
        """All source points mapping to w: an affine plane of size q^dim(gamma)."""
        if len(w) != self.target.n:
            raise DimensionMismatch(f"expected {self.target.n} coordinates")
        field = self.source.field
        base = np.zeros(self.source.n, dtype=np.uint8)
        base[self._free] = np.asarray(w, dtype=np.uint8)
        span = combine(field, _mixed_radix(self.source.q, self.gamma.k), self.gamma.basis_array)
        pts = field.add_table[span, base[None, :]]
        return PointSet.from_indices(self.source, self.source.indices(pts))

    def fiber_counts(self, X):
        """Dense array: entry w is |X intersected with the fiber over w|."""
        if X.space != self.source:
            raise DimensionMismatch("set lives in a different space")
        return np.bincount(self.apply_indices(X.indices()), minlength=self.target.size)

    def collision_count(self, X):
        """Unordered pairs of distinct X-points in a common fiber."""
        counts = self.fiber_counts(X).astype(object)
        return int(sum(c * (c - 1) // 2 for c in counts if c > 1))

    def collision_counts_batch(self, masks):
        """collision_count for each row of a boolean (sets x q^n) membership matrix."""
        labels = self.labels()
        onehot = np.zeros((self.source.size, self.target.size), dtype=np.int64)
        onehot[np.arange(self.source.size), labels] = 1
        counts = np.asarray(masks, dtype=np.int64) @ onehot
        return (counts * (counts - 1) // 2).sum(axis=1)

    def __repr__(self):
        return f"QuotientMap({self.gamma.serialize()})"


def quotient_map_new(gamma):
    return QuotientMap(gamma)


def project_set(qm, S):
    return qm.project_set(S)


def fiber(qm, w):
    return qm.fiber(w)


def fiber_counts(qm, X):
    return qm.fiber_counts(X)


def collision_count(qm, X):
    return qm.collision_count(X)
