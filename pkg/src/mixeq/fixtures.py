"""Named tuples used by the tests, the demos and the CLI."""

from .mats import MatrixTuple, power_tuple

CYCLIC_2X2 = (
    [[0, 2], [1, 0]],
    [[0, 1], [2, 0]],
)

PROP4 = (
    [[0, 1, 2], [2, 0, 0], [1, 0, 0]],
    [[0, 2, 1], [1, 0, 0], [2, 0, 0]],
)

# B_ij and C_ij with A_i A_j = B_ij (+) C_ij, listed as (11, 12, 21, 22).
PROP4_B = ([[4]], [[5]], [[5]], [[4]])
PROP4_C = (
    [[2, 1], [4, 2]],
    [[4, 2], [2, 1]],
    [[1, 2], [2, 4]],
    [[2, 4], [1, 2]],
)

DIAG_REDUCIBLE = (
    [[1, 0], [0, 2]],
    [[3, 0], [0, 4]],
)

ROTATIONS = (
    [[0, -1], [1, 0]],
    [[0, 1], [-1, 0]],
)

# Upper and lower shears: generate all of M_2, so every power is irreducible.
SHEARS = (
    [[1, 1], [0, 1]],
    [[1, 0], [1, 1]],
)


def _build(name):
    if name == "prop4-squared":
        return MatrixTuple.exact(power_tuple(MatrixTuple.exact(PROP4), 2).matrices, name=name)
    table = {
        "cyclic2x2": CYCLIC_2X2,
        "prop4": PROP4,
        "prop4-B": PROP4_B,
        "prop4-C": PROP4_C,
        "diag-reducible": DIAG_REDUCIBLE,
        "rotations": ROTATIONS,
        "shears": SHEARS,
    }
    return MatrixTuple.exact(table[name], name=name)


FIXTURE_NAMES = ("cyclic2x2", "prop4", "prop4-squared", "prop4-B", "prop4-C",
                 "diag-reducible", "rotations", "shears")


def fixture(name):
    """Exact-mode tuple for a fixture name (see ``FIXTURE_NAMES``)."""
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    return _build(name)
