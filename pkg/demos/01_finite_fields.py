# Arithmetic in GF(q) through lookup tables.
import numpy as np
from ffradial.gf import field_new, smallest_irreducible

F = field_new(8)
print(F)                     # GF(2^3) built from x^3 + x + 1
print(F.irreducible_poly)              # low coefficients first, leading 1 last

# scalar ops
print(F.mul(3, 5), F.inv(3), F.div(6, 3))
print(F.power(2, 7))         # every nonzero element has order dividing q-1

# the same ops as numpy tables, handy for whole arrays at once
a = np.array([1, 2, 3, 4], dtype=np.uint8)
b = np.array([7, 7, 7, 7], dtype=np.uint8)
print(F.mul_table[a, b])
print(F.add_table[a, b])     # characteristic 2: addition is xor

# prime fields are plain modular arithmetic
F7 = field_new(7)
print([F7.inv(x) for x in range(1, 7)])

print(smallest_irreducible(3, 2))   # the modulus used for GF(9)
