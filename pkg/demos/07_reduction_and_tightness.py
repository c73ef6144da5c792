# The projection argument on a concrete set, and the k-plane example.
import json
import numpy as np
from ffradial.ambient import AmbientSpace
from ffradial.experiment import generate_set
from ffradial.grassmann import sample_uniform_subspace
from ffradial.theorems import Conjecture, FullDim, check_tightness, reduction_pipeline

rng = np.random.default_rng(6)

space = AmbientSpace(5, 3)
E = generate_set(space, "plane_subset", 20, 2, rng)
trace = reduction_pipeline(E, Conjecture(2), rng)
print(json.dumps(trace.to_dict(), indent=1))

# relaxed run at a small field: only the sampling step's size limit applies
E = generate_set(AmbientSpace(7, 3), "random", 40, 2, rng)
trace = reduction_pipeline(E, FullDim(1, 1), rng, check_preconditions=False)
print(trace.checks, trace.gamma)

# a full k-plane: every point of it sees only (q^k-1)/(q-1) directions
s = AmbientSpace(4, 4)
res = check_tightness(s, sample_uniform_subspace(s, 2, rng), (1, 2, 3, 0))
print(res.expected_size, set(res.in_plane_sizes), res.exceptional_count, res.holds)
