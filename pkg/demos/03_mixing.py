"""
Mixing and equilibrium states
=============================

An irreducible invertible tuple that permutes a splitting
``R^d = U_1 + ... + U_ell`` cyclically is not mixing.  The classifier looks
for such a splitting, and when it finds one it also searches for a word whose
block products on two different pieces have different spectral radii.  That
word shows the equilibrium states built from the pieces are different.
"""

from mixeq import classify_mixing, cyclic_decomposition, fixture
from mixeq.mats import matrix_to_strings

t = fixture("cyclic2x2")
rep = classify_mixing(t, 1)
print(rep.verdict, "period", rep.ell)
cs = rep.cyclic
print("X =", matrix_to_strings(cs.X))
print("family 1:", [matrix_to_strings(m) for m in cs.families[0].matrices])
print("family 2:", [matrix_to_strings(m) for m in cs.families[1].matrices])
print("witness word", rep.witness.word, "radii", float(rep.witness.rho_a),
      float(rep.witness.rho_b))

# The verdict and the splitting do not depend on s.
print(classify_mixing(t, 2.5).structural_fields() == rep.structural_fields())

# Asking for period 2 directly gives the same splitting.
print([[[str(x) for x in b] for b in u.basis] for u in cyclic_decomposition(t, 2).chain])

###############################################################################
# Other verdicts
# --------------
# A pair of shears generates a Zariski dense group, so every power tuple is
# irreducible and the tuple is mixing.  The quarter-turn rotation and its
# inverse do permute the two coordinate axes, but both families have the same
# spectral data on short words, so the verdict stays Inconclusive.  The
# singular 3x3 pair falls outside the supported regime, and the notes record
# where its powers split.

for name in ("shears", "rotations", "prop4"):
    rep = classify_mixing(fixture(name), 1)
    print(f"{name:10s} {rep.verdict}")
    for note in rep.notes:
        print("   ", note)
