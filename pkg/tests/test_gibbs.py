from fractions import Fraction
import math
import random

import pytest
from hypothesis import given, strategies as st

from mixeq.errors import InputError
from mixeq.fixtures import fixture
from mixeq.gibbs import (BernoulliMeasure, distinctness_witness, gibbs_weights, lyapunov_upper,
                         variational_gap)
from mixeq.mats import MatrixTuple, spectral_radius, word_product
from mixeq.pressure import pressure_s2_exact

HALF = BernoulliMeasure((Fraction(1, 2), Fraction(1, 2)))


def test_scalar_weights_are_bernoulli():
    g = gibbs_weights(fixture("prop4-B"), 1, 1, math.log(18))
    assert [g.weights[(i,)] for i in range(1, 5)] == pytest.approx([4 / 18, 5 / 18, 5 / 18, 4 / 18])
    assert g.mass == pytest.approx(1.0, abs=1e-15)


def test_cyclic_pair_weights():
    g = gibbs_weights(fixture("cyclic2x2"), 1, 2, math.log(3))
    assert list(g.weights.values()) == pytest.approx([2 / 9, 4 / 9, 4 / 9, 2 / 9])
    assert g.mass == pytest.approx(12 / 9)
    lo, hi = g.ratio_bounds
    assert lo == pytest.approx(2 / 3) and hi == pytest.approx(4 / 3)


def test_empty_cylinder(any_fixture):
    g = gibbs_weights(any_fixture, 1, 0, 0.7)
    assert g.weights == {(): 1.0} and g.mass == 1.0


@pytest.mark.parametrize("name", ["cyclic2x2", "prop4", "prop4-C", "shears", "rotations"])
def test_gibbs_mass_stays_bounded(name):
    t = fixture(name)
    p = pressure_s2_exact(t)
    for n in range(1, 11):
        assert 0.1 <= gibbs_weights(t, 2, n, p).mass <= 10


def test_lyapunov_examples():
    t = fixture("cyclic2x2")
    assert lyapunov_upper(t, HALF, 1) == pytest.approx(math.log(2), abs=1e-15)
    assert lyapunov_upper(t, HALF, 2) == pytest.approx(0.75 * math.log(2), abs=1e-15)
    ident = MatrixTuple.exact([[[1, 0], [0, 1]], [[1, 0], [0, 1]]])
    for n in (1, 3, 5):
        assert lyapunov_upper(ident, BernoulliMeasure((Fraction(1, 3), Fraction(2, 3))), n) == 0


def test_zero_product_gives_minus_infinity():
    t = MatrixTuple.exact([[[0, 1], [0, 0]], [[1, 0], [0, 1]]])
    assert lyapunov_upper(t, HALF, 2) == -math.inf
    assert lyapunov_upper(t, BernoulliMeasure((0, 1)), 2) == 0


def test_variational_examples():
    t = fixture("cyclic2x2")
    assert abs(variational_gap(t, 1, HALF, 1)) < 1e-12
    assert variational_gap(t, 1, HALF, 2) == pytest.approx(
        0.5 * math.log(12) - 1.75 * math.log(2), abs=1e-12)
    point = BernoulliMeasure((1, 0))
    for name in ("cyclic2x2", "prop4"):
        assert variational_gap(fixture(name), 1, point, 1) >= 0


def test_measure_validation():
    with pytest.raises(InputError):
        BernoulliMeasure((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(InputError):
        BernoulliMeasure((-1, 2))
    with pytest.raises(InputError):
        lyapunov_upper(fixture("prop4-B"), HALF, 1)


measures = st.lists(st.integers(0, 9), min_size=2, max_size=2).filter(sum).map(
    lambda k: BernoulliMeasure(tuple(Fraction(x, sum(k)) for x in k)))


@given(st.sampled_from(["cyclic2x2", "prop4", "shears", "diag-reducible"]), measures,
       st.integers(1, 6), st.floats(0.2, 3))
def test_gap_is_nonnegative(name, nu, n, s):
    assert variational_gap(fixture(name), s, nu, n) >= -1e-9


@given(st.sampled_from(["cyclic2x2", "prop4", "shears"]), measures, st.integers(1, 3))
def test_lyapunov_truncations_decrease(name, nu, n):
    t = fixture(name)
    assert lyapunov_upper(t, nu, 2 * n) <= lyapunov_upper(t, nu, n) + 1e-9


# -- witnesses ---------------------------------------------------------------------

def test_b_and_c_are_distinguished():
    B, C = fixture("prop4-B"), fixture("prop4-C")
    w = distinctness_witness(B, C, 1, 3)
    assert w is not None and len(w.word) == 2
    assert w.rho_a != w.rho_b
    assert w.rho_a == spectral_radius(word_product(B, w.word))
    assert w.rho_b == spectral_radius(word_product(C, w.word))


def test_identical_tuples_have_no_witness(any_fixture):
    assert distinctness_witness(any_fixture, any_fixture, 1, 3) is None


def test_cyclic_families():
    fa = MatrixTuple.exact([[[2]], [[1]], [[4]], [[2]]])
    fb = MatrixTuple.exact([[[2]], [[4]], [[1]], [[2]]])
    w = distinctness_witness(fa, fb, 1, 3)
    assert w.word == (2,) and (w.rho_a, w.rho_b) == (1, 4)


def test_witness_symmetry():
    rng = random.Random(3)
    for _ in range(20):
        mats = lambda: [[[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)] for _ in range(2)]
        a, b = MatrixTuple.exact(mats() + [[[1, 0], [0, 1]]]), MatrixTuple.exact(mats() + [[[1, 0], [0, 1]]])
        wa, wb = distinctness_witness(a, b, 1, 2), distinctness_witness(b, a, 1, 2)
        assert (wa is None) == (wb is None)
        if wa is not None:
            assert wa.word == wb.word


def test_float_witness_tolerance():
    a = MatrixTuple.floating([[[1.0]], [[2.0]]])
    b = MatrixTuple.floating([[[1.0 + 1e-12]], [[2.5]]])
    assert distinctness_witness(a, b, 1, 2).word == (2,)


def test_witness_needs_matching_alphabets():
    with pytest.raises(InputError):
        distinctness_witness(fixture("prop4-B"), fixture("cyclic2x2"), 1, 2)
