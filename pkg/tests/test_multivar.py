import random

import pytest
from hypothesis import given, settings, strategies as st

from lacunary.errors import MonomialInputError, NotAPower
from lacunary.fields import PrimeField
from lacunary.generate import generate_multivariate, perturb
from lacunary.multivar import (MultiSparsePoly, canonical_sign, detect_multivariate,
                               kronecker_forward, kronecker_inverse, kronecker_root,
                               substitute_univariate)
from lacunary.poly import SparsePoly

x1 = MultiSparsePoly.variable(0, 2)
x2 = MultiSparsePoly.variable(1, 2)
X = SparsePoly.x()


def test_substitute_examples():
    assert substitute_univariate(x1 * x2 + 1, (1, 2)) == X ** 2 * 2 + 1
    assert substitute_univariate(x1 + x2, (1, -1)).is_zero()
    assert substitute_univariate(x1 ** 2 + x2 ** 3, (1, 1)) == X ** 2 + X ** 3


def test_detect_examples():
    f = (x1 * x2 + 1) ** 2
    for seed in range(10):
        rep = detect_multivariate(f, seed=seed)
        assert rep.verdict and rep.r_found == 2
    for seed in range(10):
        assert not detect_multivariate(x1 * x2 + 1, "2^-20", seed=seed).verdict
    with pytest.raises(MonomialInputError):
        detect_multivariate(x1 ** 2 * x2 ** 2)


def test_detect_homogeneous_and_restricted():
    f = (x1 ** 3 + x1 * x2 ** 2 * 5 - x2 ** 3) ** 3
    rep = detect_multivariate(f, seed=1)
    assert rep.verdict and rep.r_found == 3
    assert not detect_multivariate(f, seed=1, exponents=[2]).verdict
    assert not detect_multivariate(f + x1 ** 9, "2^-20", seed=1).verdict


def test_detect_over_field():
    F = PrimeField(1000003)
    y1 = MultiSparsePoly.variable(0, 2, F)
    y2 = MultiSparsePoly.variable(1, 2, F)
    h = y1 ** 2 * y2 + y2 * 3 + 7
    assert detect_multivariate(h ** 2, seed=0).r_found == 2
    small = PrimeField(101)          # sample set larger than the field: extension path
    z1 = MultiSparsePoly.variable(0, 2, small)
    z2 = MultiSparsePoly.variable(1, 2, small)
    g = z1 * z2 + z1 + 1
    assert detect_multivariate(g ** 2, seed=0).r_found == 2


def test_kronecker_examples():
    assert kronecker_root(x1 ** 2 + x1 * x2 * 2 + x2 ** 2, 2) == x1 + x2
    fhat = kronecker_forward(x1 ** 2 + x1 * x2 * 2 + x2 ** 2, [2, 2])
    assert fhat == X ** 2 + X ** 3 * 2 + X ** 4
    assert kronecker_root(x1 ** 2 * x2 ** 2, 2) == x1 * x2
    with pytest.raises(NotAPower):
        kronecker_root(x1 ** 3 + x2 ** 3, 3)
    with pytest.raises(NotAPower):
        kronecker_root(x1 ** 3 + x2 ** 2, 2)


exps3 = st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6))
mpoly = st.lists(st.tuples(st.integers(-9, 9).filter(bool), exps3), min_size=1,
                 max_size=5).map(lambda ts: MultiSparsePoly(3, ts))


@given(mpoly)
def test_kronecker_round_trip(h):
    radices = [d + 1 for d in h.partial_degrees()]
    assert kronecker_inverse(kronecker_forward(h, radices), radices, 3) == h


@given(mpoly, mpoly, st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_substitution_commutes_with_product(f, g, a):
    assert substitute_univariate(f * g, a) == substitute_univariate(f, a) * \
        substitute_univariate(g, a)


@settings(max_examples=40, deadline=None)
@given(mpoly, st.integers(2, 3))
def test_kronecker_root_inverse(h, r):
    h = canonical_sign(h, r)
    if h.is_zero():
        return
    assert kronecker_root(h ** r, r) == h


def test_generated_instances():
    rng = random.Random(3)
    for seed in range(8):
        nv = 2 + seed % 2
        r = [2, 3][seed % 2]
        inst = generate_multivariate(4, nv, 6, 50, r, seed=seed)
        rep = detect_multivariate(inst.f, seed=seed)
        assert rep.verdict and rep.r_found == r
        assert kronecker_root(inst.f, r) == inst.h
        bad = perturb(inst.f, rng)
        assert not detect_multivariate(bad, "2^-20", seed=seed).verdict
