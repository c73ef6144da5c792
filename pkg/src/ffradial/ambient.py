"""
Points of F_q^n and dense point sets.

A point is a tuple of n field elements.  Points are indexed in mixed radix
base q with coordinate 0 least significant, so ``(2, 1)`` in F_3^2 has
index ``2 + 1*3 = 5``.  A :class:`PointSet` is a boolean array over all q^n
indices.
"""

from functools import cached_property

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, SizeTooLarge
from .gf import FieldSpec, field_new

DEFAULT_MAX_SIZE = 2 ** 24

# spaces at or below this size cache a q^n x q^n table of difference directions
DIRECTION_TABLE_MAX_SIZE = 1024


class AmbientSpace:
    """The vector space F_q^n with a memory cap on q^n."""

    def __init__(self, field, n, max_size=DEFAULT_MAX_SIZE):
        if not isinstance(field, FieldSpec):
            field = field_new(field)
        if n < 0:
            raise DimensionMismatch(f"dimension must be non-negative, got {n}")
        self.field = field
        self.n = n
        self.q = field.q
        self.size = self.q ** n
        if self.size > max_size:
            raise SizeTooLarge(f"q^n = {self.size} exceeds the memory budget {max_size}")
        self.powers = self.q ** np.arange(n, dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, AmbientSpace):
            return NotImplemented
        return self.field == other.field and self.n == other.n

    def __hash__(self):
        return hash((self.field, self.n))

    def __repr__(self):
        return f"AmbientSpace(q={self.q}, n={self.n})"

    def index(self, x):
        """Mixed-radix index of the point x."""
        if len(x) != self.n:
            raise DimensionMismatch(f"expected {self.n} coordinates, got {len(x)}")
        idx = 0
        for c in reversed(x):
            c = int(c)
            if not 0 <= c < self.q:
                raise DimensionMismatch(f"coordinate {c} is not an element of GF({self.q})")
            idx = idx * self.q + c
        return idx

    def point(self, i):
        """Inverse of :meth:`index`."""
        i = int(i)
        if not 0 <= i < self.size:
            raise IndexOutOfRange(f"index {i} outside [0, {self.size})")
        out = []
        for _ in range(self.n):
            out.append(i % self.q)
            i //= self.q
        return tuple(out)

    def coords(self, indices):
        """Coordinates of many indices as an ``(len, n)`` uint8 array."""
        indices = np.asarray(indices, dtype=np.int64)
        return ((indices[:, None] // self.powers[None, :]) % self.q).astype(np.uint8)

    def indices(self, coords):
        """Indices of the rows of a coordinate array."""
        coords = np.asarray(coords, dtype=np.int64)
        if coords.ndim != 2:
            coords = coords.reshape(-1, self.n)
        return coords @ self.powers

    @cached_property
    def all_coords(self):
        c = self.coords(np.arange(self.size))
        c.flags.writeable = False
        return c

    @cached_property
    def direction_table(self):
        """``table[y, x]`` = index of the canonical direction of x - y (0 when x == y).

        Only built for small spaces; see :data:`DIRECTION_TABLE_MAX_SIZE`.
        """
        from .projections import canonical_direction_codes
        pts = self.all_coords
        table = np.empty((self.size, self.size), dtype=np.int32)
        for y in range(self.size):
            table[y] = canonical_direction_codes(self, pts, pts[y])
        table.flags.writeable = False
        return table

    def zero(self):
        return (0,) * self.n


class PointSet:
    """A subset of an :class:`AmbientSpace` stored as a dense bit array."""

    __slots__ = ("space", "bits", "_count")

    def __init__(self, space, bits=None):
        self.space = space
        if bits is None:
            self.bits = np.zeros(space.size, dtype=bool)
            self._count = 0
        else:
            bits = np.asarray(bits, dtype=bool)
            if bits.shape != (space.size,):
                raise DimensionMismatch(f"bit array must have length {space.size}")
            self.bits = bits.copy()
            self._count = int(self.bits.sum())

    @classmethod
    def from_indices(cls, space, indices):
        s = cls(space)
        indices = np.asarray(indices, dtype=np.int64)
        if indices.size and (indices.min() < 0 or indices.max() >= space.size):
            raise IndexOutOfRange("point index out of range")
        s.bits[indices] = True
        s._count = int(s.bits.sum())
        return s

    @classmethod
    def from_points(cls, space, points):
        return cls.from_indices(space, [space.index(x) for x in points])

    @classmethod
    def full(cls, space):
        return cls(space, np.ones(space.size, dtype=bool))

    def add(self, x):
        self.add_index(self.space.index(x))

    def add_index(self, i):
        if not 0 <= i < self.space.size:
            raise IndexOutOfRange(f"index {i} outside [0, {self.space.size})")
        if not self.bits[i]:
            self.bits[i] = True
            self._count += 1

    def discard(self, x):
        i = self.space.index(x)
        if self.bits[i]:
            self.bits[i] = False
            self._count -= 1

    def contains_index(self, i):
        if not 0 <= i < self.space.size:
            raise IndexOutOfRange(f"index {i} outside [0, {self.space.size})")
        return bool(self.bits[i])

    def __contains__(self, x):
        return self.contains_index(self.space.index(x))

    def __len__(self):
        return self._count

    def __iter__(self):
        for i in self.indices():
            yield self.space.point(i)

    def indices(self):
        """Member indices in increasing order."""
        return np.flatnonzero(self.bits)

    def coords(self):
        return self.space.coords(self.indices())

    def copy(self):
        return PointSet(self.space, self.bits)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self.space == other.space and bool(np.array_equal(self.bits, other.bits))

    def __le__(self, other):
        return bool(np.all(other.bits[self.bits]))

    def __or__(self, other):
        return PointSet(self.space, self.bits | other.bits)

    def __and__(self, other):
        return PointSet(self.space, self.bits & other.bits)

    def __repr__(self):
        return f"PointSet(q={self.space.q}, n={self.space.n}, size={self._count})"


def _partial_fisher_yates(population, m, rng):
    """First m entries of a uniformly shuffled range(population), O(m) memory."""
    swapped = {}
    out = np.empty(m, dtype=np.int64)
    for i in range(m):
        j = int(rng.integers(i, population))
        out[i] = swapped.get(j, j)
        swapped[j] = swapped.get(i, i)
    return out


def random_subset(space, m, rng):
    """A uniformly random m-subset of the space."""
    if not 0 <= m <= space.size:
        raise SizeTooLarge(f"cannot draw {m} points from a space of {space.size}")
    return PointSet.from_indices(space, _partial_fisher_yates(space.size, m, rng))


def affine_plane_indices(gamma, translate):
    """Indices of the coset ``translate + gamma`` in span order."""
    space = gamma.space
    t = np.asarray(translate, dtype=np.int64)
    if t.shape != (space.n,):
        raise DimensionMismatch(f"translate must have {space.n} coordinates")
    pts = gamma.span_coords()
    shifted = space.field.add_table[pts, t.astype(np.uint8)[None, :]]
    return space.indices(shifted)


def plane_subset(space, gamma, translate, m, rng):
    """A uniformly random m-subset of the affine plane ``translate + gamma``."""
    if gamma.space != space:
        raise DimensionMismatch("subspace lives in a different space")
    plane = affine_plane_indices(gamma, translate)
    if not 0 <= m <= len(plane):
        raise SizeTooLarge(f"cannot draw {m} points from a plane of {len(plane)}")
    return PointSet.from_indices(space, plane[_partial_fisher_yates(len(plane), m, rng)])
