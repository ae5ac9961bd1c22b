from fractions import Fraction

import numpy as np
import pytest

from mixeq.errors import InputError, PartialResultError, UnsupportedRegimeError
from mixeq.fixtures import FIXTURE_NAMES, fixture, PROP4_C
from mixeq.mats import MatrixTuple, power_tuple, spectral_radius, word_product
from mixeq.oracle import invariant_subspaces_d_le_3
from mixeq.structure import (algebra_span_dim, block_triangularize, classify_mixing,
                             cyclic_decomposition, find_invariant_subspace,
                             minimal_invariant_subspaces, is_irreducible, _chain_from)
from mixeq.subspaces import Subspace

from conftest import conjugate_by, exact_array

HIDE = [[1, 2, 0, 1], [0, 1, 3, 0], [1, 0, 1, 1], [2, 1, 0, 3]]


def identity(d):
    return exact_array(np.eye(d, dtype=int))


def _cyclic_4x4(b1, b2):
    m = [[0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            m[2 + i][j] = b1[i][j]
            m[i][2 + j] = b2[i][j]
    return m


def _weighted_cycle(a, b, c, d):
    return [[0, 0, 0, d], [a, 0, 0, 0], [0, b, 0, 0], [0, 0, c, 0]]


# -- algebra span ---------------------------------------------------------------

@pytest.mark.parametrize("name, dim", [("cyclic2x2", 4), ("prop4", 9), ("prop4-C", 4),
                                       ("diag-reducible", 2), ("rotations", 2)])
def test_algebra_dims(name, dim):
    assert algebra_span_dim(fixture(name)) == dim


def test_identity_algebra():
    assert algebra_span_dim(MatrixTuple.exact([[[1, 0], [0, 1]]])) == 1


def test_partial_result_carries_bound():
    with pytest.raises(PartialResultError) as exc:
        algebra_span_dim(fixture("prop4"), max_len=1)
    assert exc.value.lower_bound == 3


# -- invariant subspaces ------------------------------------------------------------

def test_find_examples():
    assert find_invariant_subspace(fixture("prop4-squared")).basis == ((1, 0, 0),)
    assert find_invariant_subspace(fixture("cyclic2x2")) is None
    assert find_invariant_subspace(fixture("diag-reducible")).basis == ((1, 0),)


def test_hidden_block_is_found():
    a1 = [[1, 1, 5, 0], [0, 1, 1, 2], [0, 0, 1, 1], [0, 0, 0, 1]]
    a2 = [[1, 0, 0, 1], [1, 1, 3, 3], [0, 0, 1, 0], [0, 0, 1, 1]]
    t = conjugate_by([a1, a2], HIDE)
    u = find_invariant_subspace(t)
    assert u is not None and u.dim == 2 and u.is_invariant(t)
    v = is_irreducible(t)
    assert v.reducible and v.subspace.is_invariant(t)


def test_float_search():
    t = fixture("diag-reducible").to_float()
    u = find_invariant_subspace(t)
    assert u is not None and u.dim == 1 and u.is_invariant(t)
    v = is_irreducible(t)
    assert v.reducible and v.heuristic
    assert is_irreducible(fixture("shears").to_float()).irreducible


# -- irreducibility ------------------------------------------------------------------

@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_verdicts_match_oracle(name):
    t = fixture(name)
    v = is_irreducible(t)
    assert v.status != "Unknown"
    assert v.irreducible == (invariant_subspaces_d_le_3(t) == [])
    if v.reducible:
        assert v.subspace.is_invariant(t)


def test_named_verdicts():
    assert is_irreducible(fixture("prop4")).irreducible
    assert is_irreducible(fixture("prop4-C")).irreducible
    assert is_irreducible(power_tuple(fixture("prop4"), 3)).irreducible
    sq = is_irreducible(fixture("prop4-squared"))
    assert sq.reducible and sq.subspace.basis == ((1, 0, 0),)
    rot = is_irreducible(fixture("rotations"))
    assert rot.irreducible and rot.method == "exhaustive"


# -- block triangular form ------------------------------------------------------------

def test_square_splits_into_b_and_c():
    t = fixture("prop4-squared")
    form = block_triangularize(t)
    assert form.dims == (1, 2) and form.complete
    assert np.array_equal(form.X, identity(3))
    assert [m[0, 0] for m in form.diagonal_blocks[0].matrices] == [4, 5, 5, 4]
    got = {tuple(m.flat) for m in form.diagonal_blocks[1].matrices}
    assert got == {tuple(Fraction(x) for r in m for x in r) for m in PROP4_C}
    assert not any(np.any(m) for ms in form.strict_blocks.values() for m in ms)
    assert form.check(t)


def test_irreducible_input_is_one_block(cyclic2x2):
    form = block_triangularize(cyclic2x2)
    assert form.dims == (2,)
    assert np.array_equal(form.X, identity(2))


def test_diagonal_input():
    form = block_triangularize(fixture("diag-reducible"))
    assert form.dims == (1, 1)
    assert np.array_equal(form.X, identity(2))
    assert [[m[0, 0] for m in b.matrices] for b in form.diagonal_blocks] == [[1, 3], [2, 4]]


def test_hidden_flag():
    a1 = [[1, 1, 5, 0], [0, 1, 1, 2], [0, 0, 1, 1], [0, 0, 0, 1]]
    a2 = [[1, 0, 0, 1], [1, 1, 3, 3], [0, 0, 1, 0], [0, 0, 1, 1]]
    t = conjugate_by([a1, a2], HIDE)
    form = block_triangularize(t)
    assert form.dims == (2, 2) and form.complete and form.check(t)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_idempotent(name):
    t = fixture(name)
    form = block_triangularize(t)
    again = block_triangularize(MatrixTuple.exact(form.conjugated(t)))
    assert again.dims == form.dims
    assert form.check(t)


def test_triangular_nonsplit():
    t = fixture("shears")
    shear = MatrixTuple.exact([t[1], [[2, 7], [0, 3]]])
    form = block_triangularize(shear)
    assert form.dims == (1, 1) and form.check(shear)
    assert [m[0, 0] for m in form.strict_blocks[(0, 1)]] == [1, 7]


def test_irrational_lines_stay_one_block():
    t = MatrixTuple.exact([[[0, 2], [1, 0]]])
    assert is_irreducible(t).reducible
    form = block_triangularize(t)
    assert form.dims == (2,) and not form.complete
    assert form.notes


# -- cyclic structure ------------------------------------------------------------------

def test_cyclic_pair(cyclic2x2):
    cs = cyclic_decomposition(cyclic2x2, 2)
    assert (cs.ell, cs.k) == (2, 1)
    assert np.array_equal(cs.X, identity(2))
    assert [u.basis for u in cs.chain] == [((1, 0),), ((0, 1),)]
    assert [[b[0, 0] for b in per] for per in cs.blocks] == [[1, 2], [2, 1]]
    assert [[m[0, 0] for m in f.matrices] for f in cs.families] == [[2, 1, 4, 2], [2, 4, 1, 2]]
    assert cs.check(cyclic2x2)


def test_chain_depends_on_the_start_line():
    swap = MatrixTuple.exact([[[0, 1], [1, 0]]])
    # the swap alone is reducible, so the public entry point refuses it
    with pytest.raises(InputError):
        cyclic_decomposition(swap, 2)
    diagonal = Subspace.from_vectors([[1, 1]], 2)
    assert _chain_from(swap, diagonal) is None
    chain = _chain_from(swap, Subspace.from_vectors([[1, 0]], 2))
    assert [u.basis for u in chain] == [((1, 0),), ((0, 1),)]


def test_cyclic_preconditions(cyclic2x2):
    with pytest.raises(InputError, match="divide"):
        cyclic_decomposition(cyclic2x2, 3)
    with pytest.raises(InputError, match="reducible"):
        cyclic_decomposition(fixture("diag-reducible"), 2)
    with pytest.raises(UnsupportedRegimeError):
        cyclic_decomposition(fixture("prop4-C"), 2)
    with pytest.raises(InputError):
        cyclic_decomposition(cyclic2x2.to_float(), 2)


def test_no_structure_for_mixing_pair():
    assert cyclic_decomposition(fixture("shears"), 2) is None


def test_hidden_period_two_blocks():
    P, Q, R, S = [[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 1], [1, 1]], [[0, 1], [1, 0]]
    t = conjugate_by([_cyclic_4x4(P, Q), _cyclic_4x4(R, S)], HIDE)
    cs = cyclic_decomposition(t, 2)
    assert cs.k == 2 and cs.check(t)
    assert all(v.irreducible for v in cs.family_verdicts)


def test_period_four_and_its_coarsening():
    t = conjugate_by([_weighted_cycle(1, 2, 3, 4), _weighted_cycle(2, 1, 1, 1)], HIDE)
    four = cyclic_decomposition(t, 4)
    assert four.k == 1 and four.check(t)
    two = cyclic_decomposition(t, 2)
    assert two.k == 2 and two.check(t)


# -- classifier ------------------------------------------------------------------------

def test_classify_cyclic_pair(cyclic2x2):
    rep = classify_mixing(cyclic2x2, 1)
    assert rep.verdict == "NotMixing" and rep.ell == 2 and rep.cyclic.k == 1
    fa, fb = (rep.cyclic.families[j - 1] for j in rep.witness_pair)
    ra = spectral_radius(word_product(fa, rep.witness.word))
    rb = spectral_radius(word_product(fb, rep.witness.word))
    assert ra != rb and {float(ra), float(rb)} == {1.0, 4.0}


@pytest.mark.parametrize("name", ["cyclic2x2", "rotations", "shears", "prop4", "prop4-C"])
def test_s_independence(name):
    a, b = classify_mixing(fixture(name), 1), classify_mixing(fixture(name), 2.7)
    assert a.structural_fields() == b.structural_fields()


def test_classify_regimes():
    assert classify_mixing(fixture("prop4"), 1).verdict == "UnsupportedRegime"
    notes = classify_mixing(fixture("prop4"), 1).notes
    assert any("[1, 2]" in n for n in notes)
    assert classify_mixing(fixture("shears"), 1).verdict == "Mixing"
    rot = classify_mixing(fixture("rotations"), 1)
    assert rot.verdict == "Inconclusive" and rot.cyclic.check(fixture("rotations"))
    with pytest.raises(InputError):
        classify_mixing(fixture("diag-reducible"), 1)


def test_mixing_needs_every_power_certified():
    rep = classify_mixing(fixture("shears"), 1)
    assert rep.ell_tested == (2,)
    assert all(v.irreducible for v in rep.power_verdicts.values())


def test_classify_hidden_cycle():
    t = conjugate_by([_weighted_cycle(1, 2, 3, 4), _weighted_cycle(2, 1, 1, 1)], HIDE)
    rep = classify_mixing(t, 1)
    assert rep.verdict == "NotMixing" and rep.cyclic.check(t)


def test_scalar_tuple_is_mixing():
    assert classify_mixing(fixture("prop4-B"), 1).verdict == "Mixing"


def test_minimal_subspaces_are_sorted():
    found = minimal_invariant_subspaces(fixture("diag-reducible"))
    assert [u.basis for u in found] == [((1, 0),), ((0, 1),)]
