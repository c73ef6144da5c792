# Checking the exceptional-set bounds on concrete sets.
import numpy as np
from fractions import Fraction
from ffradial.ambient import AmbientSpace, random_subset
from ffradial.experiment import generate_set
from ffradial.theorems import (check_fullDim, check_largeESC, check_radial_conjecture,
                               check_weak_bound, exceptional_set)

rng = np.random.default_rng(5)

E = random_subset(AmbientSpace(7, 2), 20, rng)
print(check_weak_bound(E, Fraction(3, 2)).to_dict())

E = random_subset(AmbientSpace(8, 2), 48, rng)
r = check_largeESC(E, 2)
print(r.lhs, r.rhs, r.holds)

# a set packed into a 2-plane of F_9^3
space = AmbientSpace(9, 3)
E = generate_set(space, "plane_subset", 60, 2, rng)
r = check_radial_conjecture(E, 2)
print(r.lhs, r.rhs, r.holds)
print(len(exceptional_set(E, Fraction(len(E), 50), strict=True)))

# below q = 30 the full-dimensional bound has no admissible sets
print(check_fullDim(random_subset(AmbientSpace(7, 3), 40, rng), 1, 1).note)
E = random_subset(AmbientSpace(31, 2), 940, rng)
print(check_fullDim(E, 7, 1).to_dict())
