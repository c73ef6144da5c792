# Quotient maps x -> x + gamma and collision counts under random quotients.
import numpy as np
from ffradial.ambient import AmbientSpace, random_subset
from ffradial.grassmann import subspace_from_vectors
from ffradial.projections import QuotientMap
from ffradial.theorems import (check_expectation_identity, check_markov_fraction,
                               collision_expectation, find_good_subspace)

space = AmbientSpace(3, 2)
qm = QuotientMap(subspace_from_vectors(space, [(1, 0)]))
print(qm.apply((2, 1)), qm.apply((0, 1)))     # same coset, same image
print(qm.fiber((1,)).coords().tolist())

rng = np.random.default_rng(4)
s = AmbientSpace(3, 3)
X = random_subset(s, 10, rng)
print(check_expectation_identity(X, 1).to_dict())
print(collision_expectation(3, 1, 3, 10))
print(check_markov_fraction(X, 1).holds)

# a subspace whose quotient keeps a fifth of both sets
A = random_subset(s, 7, rng)
B = random_subset(s, 5, rng)
gamma, trials = find_good_subspace(A, B, 1, rng)
q2 = QuotientMap(gamma)
print(gamma.serialize(), trials, len(q2.project_set(A)), len(q2.project_set(B)))
