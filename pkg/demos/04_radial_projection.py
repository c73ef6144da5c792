# How many lines through y meet E?  Counted as distinct canonical directions.
import numpy as np
from ffradial.ambient import AmbientSpace, PointSet, random_subset
from ffradial.projections import num_lines_through_point, radial_projection, radial_sizes

space = AmbientSpace(3, 2)
axis = PointSet.from_points(space, [(0, 0), (1, 0), (2, 0)])

print(radial_projection(axis, (0, 1)).size)   # off the line: 3 directions
print(radial_projection(axis, (1, 0)).size)   # on the line: 1 direction
print(sorted(radial_projection(axis, (0, 1)).directions))

# the full sweep over all q^n centers at once
sizes = radial_sizes(axis)
print(sizes.reshape(3, 3))

big = AmbientSpace(7, 3)
E = random_subset(big, 60, np.random.default_rng(3))
sizes = radial_sizes(E, jobs=2)
print(sizes.min(), sizes.max(), num_lines_through_point(7, 3))
