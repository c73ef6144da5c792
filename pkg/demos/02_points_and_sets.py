# Points of F_q^n, their indices, and dense point sets.
import numpy as np
from ffradial.ambient import AmbientSpace, PointSet, random_subset

space = AmbientSpace(3, 2)
print(space, space.size)

# coordinate 0 is the least significant digit
print(space.index((2, 1)), space.point(5))

E = PointSet.from_points(space, [(0, 0), (1, 0), (2, 0)])
print(E, list(E))
print((1, 0) in E, (0, 1) in E)

E.add((1, 1))
print(len(E), E.indices())

rng = np.random.default_rng(0)
R = random_subset(AmbientSpace(5, 3), 10, rng)
print(R.coords())
