# Subspaces in reduced row echelon form: counting, listing, sampling.
import numpy as np
from ffradial.ambient import AmbientSpace
from ffradial.grassmann import (enumerate_grassmannian, gaussian_binomial, parse_subspace,
                                sample_uniform_subspace, subspace_from_vectors)

print(gaussian_binomial(3, 1, 3))   # 13 lines through the origin in F_3^3
print(gaussian_binomial(4, 2, 2))   # 35 planes in F_2^4

space = AmbientSpace(2, 2)
for g in enumerate_grassmannian(space, 1):
    print(g.serialize(), g.span_coords().tolist())

# any spanning set reduces to the same canonical basis
s3 = AmbientSpace(3, 3)
g = subspace_from_vectors(s3, [(2, 1, 0), (1, 1, 1), (0, 2, 1)])
print(g.k, g.basis, g.pivots)

rng = np.random.default_rng(1)
h = sample_uniform_subspace(s3, 2, rng)
text = h.serialize()
print(text, parse_subspace(s3, text) == h)
