import random

import pytest

from lacunary.dense import dense_newton_baseline, series_root
from lacunary.detect import is_perfect_rth_power_z
from lacunary.errors import NotAPower
from lacunary.generate import generate, perturb
from lacunary.newton import compute_root_newton
from lacunary.poly import SparsePoly

import numpy as np

X = SparsePoly.x()


def test_baseline_examples():
    ok, root = dense_newton_baseline((X + 1) ** 2, 2, rng=random.Random(0))
    assert ok and root == X + 1
    assert dense_newton_baseline(X ** 2 + 1, 2, "2^-20", random.Random(0)) == (False, None)


def test_guard():
    with pytest.raises(ValueError):
        dense_newton_baseline(SparsePoly.monomial(1, 10 ** 7) + 1, 2, guard=1000)


def test_series_root_mod_p():
    p = 1000003
    g = np.array([1, 4, 6, 4, 1], dtype=np.int64)        # (1 + x)^4
    h = series_root(g, 4, 2, p)
    assert list(h) == [1, 1]


def _sparse_rth_verdict(f, r, seed):
    try:
        return is_perfect_rth_power_z(f, r, "2^-20", seed=seed).verdict
    except ValueError:           # r does not divide deg f
        return False


def test_agrees_with_sparse_detector():
    rng = random.Random(17)
    for i in range(100):
        r = rng.choice([2, 3, 5])
        inst = generate(rng.randint(2, 5), 500 // r, 100, r, seed=i)
        f = inst.f if i % 2 == 0 else perturb(inst.f, rng)
        dense = dense_newton_baseline(f, r, "2^-20", random.Random(i))[0]
        assert dense == _sparse_rth_verdict(f, r, i)
        if i % 2 == 0:
            assert dense
        else:
            with pytest.raises(NotAPower):
                compute_root_newton(f, r)
