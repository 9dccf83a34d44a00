import random

import pytest

from lacunary.detect import (compute_gamma, compute_mu, exponent_bound_z,
                             exponent_candidates_gf, exponent_candidates_z, is_perfect_power,
                             is_perfect_power_gf, is_perfect_power_z, is_perfect_rth_power_gf,
                             is_perfect_rth_power_z)
from lacunary.errors import CharacteristicError, MonomialInputError
from lacunary.fields import PrimeField
from lacunary.generate import generate, perturb
from lacunary.poly import SparsePoly

from oracle import is_perfect_power as oracle_is_power

X = SparsePoly.x()
F101 = PrimeField(101)


def test_mu_examples():
    assert compute_mu(10, 1) == 34
    assert compute_mu(2, 1) == 8
    for n in (2, 5, 17, 300):
        for h in (1, 3, 1000, 2 ** 64):
            assert compute_mu(n, 2 * h) >= compute_mu(n, h)
    with pytest.raises(ValueError):
        compute_mu(1, 1)


def test_mu_exact_against_bit_lengths():
    # mu = ceil(ceil(log2 N) / floor(log2 4(n-1)^2)) with N computed exactly
    for n in (2, 3, 10, 57):
        for h in (1, 2, 7, 12345):
            N = 2 ** (2 * n * n) * (n + 1) ** (2 * n) * h ** (2 * n + 1)
            num = (N - 1).bit_length()              # ceil(log2 N) for N > 1
            den = (4 * (n - 1) ** 2).bit_length() - 1
            assert compute_mu(n, h) == -(-num // den)


def test_gamma_examples():
    assert compute_gamma(34, 10) == 2518
    assert compute_gamma(1, 5) == 226
    assert compute_gamma(1, 20) == 4 * 19 ** 2
    assert compute_gamma(8, 2) == 350


def test_gf_examples():
    f = SparsePoly([(1, 0), (2, 1), (1, 2)], F101)
    for seed in range(40):
        assert is_perfect_rth_power_gf(f, 2, "1/4", seed=seed).verdict
    g = SparsePoly([(1, 0), (1, 1), (1, 2)], F101)
    for seed in range(10):
        assert not is_perfect_rth_power_gf(g, 2, "2^-20", seed=seed).verdict


def test_gf_small_field_is_extended():
    F7 = PrimeField(7)
    h = SparsePoly([(1, 0), (3, 1), (2, 2), (1, 3)], F7)
    f = h * h
    rep = is_perfect_rth_power_gf(f, 2, "1/1024", seed=3)
    assert rep.verdict
    assert any(t.extension_degree and t.extension_degree > 1 for t in rep.trace)


def test_gf_errors():
    f = SparsePoly([(1, 0), (1, 3)], F101)
    with pytest.raises(ValueError):
        is_perfect_rth_power_gf(f, 2, "1/4", seed=0)
    F5 = PrimeField(5)
    with pytest.raises(CharacteristicError):
        is_perfect_rth_power_gf(SparsePoly([(1, 0), (1, 6)], F5), 2, "1/4", seed=0)


def test_z_examples():
    sq = (X + 1) ** 2
    for seed in range(20):
        assert is_perfect_rth_power_z(sq, 2, "1/4", seed=seed).verdict
    nonsq = X ** 2 + 1
    for seed in range(10):
        assert not is_perfect_rth_power_z(nonsq, 2, "2^-10", seed=seed).verdict
    big = (SparsePoly.monomial(1, 2 ** 30) + X * 3 + 1) ** 2
    assert is_perfect_rth_power_z(big, 2, "1/1024", seed=1).verdict


def test_z_bad_exponent():
    with pytest.raises(ValueError):
        is_perfect_rth_power_z(X ** 3 + 1, 2, "1/4", seed=0)


def test_candidate_examples():
    assert exponent_candidates_z(X ** 12 * 5 + X + 1) == [2, 3]
    assert exponent_candidates_z(X ** 17 + 1) == []
    assert exponent_candidates_gf(SparsePoly([(1, 0), (1, 8)], F101)) == [2]
    with pytest.raises(MonomialInputError):
        exponent_candidates_z(X ** 4)


def test_exponent_bound_examples():
    assert exponent_bound_z(X + 1) == 2
    assert exponent_bound_z(X * 14 + 1) == 7


def test_perfect_power_examples():
    f = (X ** 5 + X * 3 + 1) ** 3
    rep = is_perfect_power_z(f, seed=0)
    assert rep.verdict and rep.r_found == 3
    assert not is_perfect_power_z(X ** 2 + 1, seed=0).verdict
    rep = is_perfect_power_z(X ** 17 + 1, seed=0)
    assert not rep.verdict and rep.candidates == [] and rep.trace == []
    with pytest.raises(MonomialInputError):
        is_perfect_power_z(X ** 6, seed=0)


def test_perfect_power_gf_and_dispatch():
    h = SparsePoly([(3, 0), (1, 4), (7, 9)], F101)
    f = h ** 2
    rep = is_perfect_power_gf(f, seed=1)
    assert rep.verdict and rep.r_found == 2
    assert is_perfect_power(f, seed=1).verdict
    assert is_perfect_power((X + 2) ** 5, seed=1).r_found == 5


def test_content_and_sign_matter():
    h = X ** 3 + X * 2 + 5
    assert not is_perfect_power_z(h * h * 2, seed=0).verdict
    assert not is_perfect_power_z(-(h * h), seed=0).verdict
    assert is_perfect_power_z(-(h ** 3), seed=0).r_found == 3


def test_report_replayable():
    f = (X ** 40 * 7 + X ** 11 - 3) ** 2
    a = is_perfect_power_z(f, seed=42).to_dict()
    b = is_perfect_power_z(f, seed=42).to_dict()
    assert a == b
    g = f + X ** 5
    assert is_perfect_power_z(g, seed=9).to_json() == is_perfect_power_z(g, seed=9).to_json()


def test_trace_iteration_counts():
    g = SparsePoly([(1, 0), (1, 1), (1, 2)], F101)
    rep = is_perfect_rth_power_gf(g, 2, "1/4", seed=5)
    # m = ceil(2.5 (1 + ceil(log2 4))) = 8 planned trials; a rejection stops the loop
    (t,) = [t for t in rep.trace if t.stage == "gf"]
    assert t.iterations == 8 and 1 <= len(t.outcomes) <= 8
    assert not rep.verdict and t.outcomes[-1] is False and all(t.outcomes[:-1])
    g2 = SparsePoly([(1, 0), (2, 1), (1, 2)], F101)
    (t,) = is_perfect_rth_power_gf(g2, 2, "2^-10", seed=5).trace
    assert t.iterations == 28 and t.outcomes == [True] * 28


@pytest.mark.parametrize("r", [2, 3, 5, 7])
def test_generated_powers_always_accepted(r):
    for seed in range(15):
        inst = generate(4, 2 ** 35, 2 ** 20, r, seed=seed)
        assert r in exponent_candidates_z(inst.f)
        assert r <= exponent_bound_z(inst.f)
        assert is_perfect_rth_power_z(inst.f, r, "1/4", seed=seed).verdict


def test_generated_gf_powers_always_accepted():
    F = PrimeField(1000003)
    for seed in range(10):
        inst = generate(4, 300, 0, 3, ring=F, seed=seed)
        assert 3 in exponent_candidates_gf(inst.f)
        assert is_perfect_rth_power_gf(inst.f, 3, "1/4", seed=seed).verdict


def test_agrees_with_oracle_small():
    rng = random.Random(11)
    for i in range(30):
        r = rng.choice([2, 3])
        inst = generate(rng.randint(2, 4), 40, 20, r, seed=i)
        f = inst.f if i % 2 else perturb(inst.f, rng)
        assert is_perfect_power_z(f, "2^-20", seed=i).verdict == oracle_is_power(f)


def test_fast_path_accepts_powers():
    inst = generate(5, 2 ** 30, 1000, 3, seed=4)
    assert is_perfect_rth_power_z(inst.f, 3, "1/1024", seed=2, fast_path=True).verdict
    bad = perturb(inst.f, random.Random(1))
    assert not is_perfect_rth_power_z(bad, 3, "2^-20", seed=2, fast_path=True).verdict


def test_integer_ring_guard():
    with pytest.raises(TypeError):
        is_perfect_power_z(SparsePoly([(1, 0), (1, 2)], F101))
