"""
Irreducibility and block structure
==================================

A tuple is irreducible when no proper nonzero subspace is invariant under
every matrix.  Certificates come in two kinds: the matrices spanning all of
``M_d`` (Burnside) proves irreducibility, and an explicit invariant subspace
proves the opposite.
"""

from mixeq import (algebra_span_dim, block_triangularize, fixture, is_irreducible,
                   power_tuple)
from mixeq.mats import matrix_to_strings

A = fixture("prop4")
v = is_irreducible(A)
print(v.status, "by", v.method, "algebra dimension", algebra_span_dim(A))

# The squares share the first coordinate axis.
sq = power_tuple(A, 2)
v = is_irreducible(sq)
print(v.status, "invariant subspace", [[str(x) for x in b] for b in v.subspace.basis])

###############################################################################
# Block triangular form
# ---------------------
# Conjugating by X puts every product of length two into block upper
# triangular form with irreducible diagonal blocks.

form = block_triangularize(sq)
print("block dims", form.dims, "complete", form.complete)
print("X =", matrix_to_strings(form.X))
for m in form.conjugated(sq):
    print(matrix_to_strings(m))
assert form.check(sq)

###############################################################################
# The cubes equal 4 A, so they are irreducible again.

cube = power_tuple(A, 3)
print(is_irreducible(cube).status)
