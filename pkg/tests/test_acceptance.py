"""Acceptance suite: the ten criteria, each at its stated tolerance.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``. CSV and PNG
artifacts go to ``artifacts/acceptance/``.
"""

import random
import statistics
import sys
import time
from functools import lru_cache
from pathlib import Path

import gmpy2
import pytest

from lacunary import bench
from lacunary.detect import (exponent_bound_z, exponent_candidates_z, is_perfect_power_z,
                             is_perfect_rth_power_gf)
from lacunary.errors import NotAPower, SparsityCeilingExceeded
from lacunary.fields import PrimeField, evaluate_mod, rth_power_residue
from lacunary.generate import generate, generate_multivariate, perturb
from lacunary.multivar import detect_multivariate, kronecker_root
from lacunary.newton import compute_root_newton, conjecture_scan
from lacunary.poly import SparsePoly, norms, power, truncate

sys.path.insert(0, str(Path(__file__).parent))
from oracle import is_perfect_power as oracle_is_power  # noqa: E402

ARTIFACTS = Path(__file__).resolve().parent.parent / "artifacts" / "acceptance"
RESULTS = {}

# tau(h) caps per exponent: tau(h^r) grows like C(tau + r - 1, r), so the
# largest exponents get fewer terms (all within tau(h) <= 30)
TAU_CAP = {2: 30, 3: 10, 5: 5, 7: 4}
EXPONENTS = (2, 3, 5, 7)


def record(num, passed, detail):
    line = f"criterion {num:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    RESULTS[num] = (passed, line)
    print(line)
    return passed


@lru_cache(maxsize=None)
def power_corpus():
    """200 instances f = h^r over Z: deg h <= 2^40, |coeffs| <= 2^32."""
    rng = random.Random(20240101)
    out = []
    for i in range(200):
        r = EXPONENTS[i % 4]
        t = rng.randint(2, TAU_CAP[r])
        out.append(generate(t, 2 ** 40, 2 ** 32, r, seed=rng.getrandbits(40)))
    return tuple(out)


def _is_rth_power(f, r):
    try:
        return compute_root_newton(f, r).certified
    except (NotAPower, SparsityCeilingExceeded):
        return False


# --------------------------------------------------------------------------

def criterion_1():
    worst = 0.0
    failures = []
    runs = 0
    for idx, inst in enumerate(power_corpus()):
        for seed in range(10):
            t0 = time.perf_counter()
            rep = is_perfect_power_z(inst.f, seed=1000 * idx + seed)
            dt = time.perf_counter() - t0
            worst = max(worst, dt)
            runs += 1
            # a different r is only correct if f really is an r_found-th power
            ok = rep.verdict and (rep.r_found == inst.r or _is_rth_power(inst.f, rep.r_found))
            if not ok or dt >= 5:
                failures.append((idx, seed, rep.verdict, rep.r_found, round(dt, 3)))
    return record(1, not failures,
                  f"{runs} runs, {len(failures)} failures, slowest {worst:.2f}s (limit 5s)")


def _certified_nonpower(f):
    """Non-power check: dense oracle for small degree, certificate failure otherwise."""
    if f.degree() <= 500:
        return not oracle_is_power(f)
    for r in exponent_candidates_z(f):
        try:
            compute_root_newton(f, r)
            return False
        except NotAPower:
            continue
        except SparsityCeilingExceeded:
            return None
    return True


@lru_cache(maxsize=None)
def nonpower_corpus():
    rng = random.Random(77)
    out = []
    while len(out) < 200:
        r = EXPONENTS[len(out) % 4]
        small = len(out) % 2 == 0
        deg_bound = 500 // r if small else 2 ** 40
        t = rng.randint(2, min(TAU_CAP[r], 8))
        inst = generate(t, deg_bound, 2 ** 32 if not small else 1000, r,
                        seed=rng.getrandbits(40))
        if inst.f.sparsity() < 3:
            continue
        g = perturb(inst.f, rng, interior=True)
        if _certified_nonpower(g):
            out.append(g)
    return tuple(out)


def criterion_2():
    false_accepts = 0
    for idx, g in enumerate(nonpower_corpus()):
        if is_perfect_power_z(g, "2^-10", seed=idx).verdict:
            false_accepts += 1
    return record(2, false_accepts <= 1,
                  f"{false_accepts} false accepts over 200 perturbed non-powers at eps=2^-10 "
                  f"(allowed 1)")


def criterion_3():
    F = PrimeField(101)
    f = SparsePoly([(5, 0), (1, 1), (2, 3), (1, 6)], F)
    assert not oracle_is_power(SparsePoly([(5, 0), (1, 1), (2, 3), (1, 6)]))
    rejected = sum(not is_perfect_rth_power_gf(f, 2, "1/4", seed=s).verdict for s in range(400))
    # one residue evaluation per seed, for reference (expected catch rate >= 1/4)
    caught = 0
    for s in range(400):
        a = random.Random(s).randrange(101)
        v = evaluate_mod(f, a, F)
        caught += bool(v) and not rth_power_residue(F, v, 2)
    rate = rejected / 400
    return record(3, rate >= 0.70,
                  f"rejection rate {rate:.3f} at eps=1/4 over 400 seeds (need >= 0.70); "
                  f"single-evaluation catch rate {caught / 400:.3f}")


def criterion_4():
    worst = 0.0
    bad = []
    for idx, inst in enumerate(power_corpus()):
        t0 = time.perf_counter()
        try:
            res = compute_root_newton(inst.f, inst.r)
            ok = res.root == inst.h and res.certified
        except (NotAPower, SparsityCeilingExceeded):
            ok = False
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        if not ok or dt >= 10:
            bad.append(idx)
    return record(4, not bad, f"{200 - len(bad)}/200 roots exact and certified, "
                              f"slowest {worst:.2f}s (limit 10s)")


@lru_cache(maxsize=None)
def oracle_corpus():
    rng = random.Random(555)
    out = []
    for i in range(100):
        kind = i % 5
        r = rng.choice((2, 3, 5))
        t = rng.randint(2, 5)
        inst = generate(t, 500 // r, 50, r, seed=rng.getrandbits(32))
        if kind in (0, 1):                       # powers
            f = inst.f
        elif kind == 2:                          # perturbed powers
            f = perturb(inst.f, rng)
        elif kind == 3:                          # random sparse polynomials
            f = generate(rng.randint(2, 12), 500, 50, 1, seed=rng.getrandbits(32)).f
        else:                                    # near misses: c h^r, h^r g, -h^2
            h2 = inst.h
            choice = rng.randrange(3)
            if choice == 0:
                f = power(h2, r) * rng.choice((2, 3, 6, -4))
            elif choice == 1:
                g = SparsePoly([(1, 0), (rng.choice((-2, 3)), 1)])
                f = power(h2, r) * g if power(h2, r).degree() < 499 else power(h2, r) * 7
            else:
                f = -power(h2, 2)
        out.append(f)
    return tuple(out)


def criterion_5():
    mismatches = 0
    powers = 0
    for idx, f in enumerate(oracle_corpus()):
        want = oracle_is_power(f)
        powers += want
        got = is_perfect_power_z(f, "2^-20", seed=idx).verdict if f.sparsity() >= 2 else None
        mismatches += got != want
    return record(5, mismatches == 0,
                  f"{100 - mismatches}/100 verdicts match the squarefree-decomposition oracle "
                  f"({powers} powers, {100 - powers} non-powers, eps=2^-20)")


def _ceil_root(n, r):
    root, exact = gmpy2.iroot(gmpy2.mpz(n), r)
    return int(root) + (0 if exact else 1)


def criterion_6():
    violations = 0
    count = 0
    for inst in power_corpus():
        nf, nh = norms(inst.f), norms(inst.h)
        count += 1
        if inst.r > exponent_bound_z(inst.f):
            violations += 1
        if nh.two_norm_squared > _ceil_root(nf.one_norm ** 2, inst.r):
            violations += 1
    return record(6, violations == 0,
                  f"{violations} violations of r <= 2 log2 ||f||_1 and "
                  f"||h||_2^2 <= ceil(||f||_1^(2/r)) over {count} instances")


def criterion_7():
    ARTIFACTS.mkdir(parents=True, exist_ok=True)
    sparse = bench.sweep(bench.SPARSE_DETECT, [2 ** 20, 2 ** 30, 2 ** 40], tau_h=14, r=2,
                         coeff_bits=16, trials=20, seed=7)
    dense = bench.sweep(bench.DENSE_BASELINE, [2 ** 13, 2 ** 16], tau_h=14, r=2,
                        coeff_bits=16, trials=3, seed=7, eps="1/4")
    bench.write_csv(sparse, ARTIFACTS / "degree_sweep_sparse.csv")
    bench.write_csv(dense, ARTIFACTS / "degree_sweep_dense.csv")
    from lacunary.plotting import plot_bench
    plot_bench(sparse + dense, ARTIFACTS / "degree_sweep.png")
    med = bench.medians(sparse + dense)
    taus = statistics.median(rec.sparsity for rec in sparse)
    s20 = med[(bench.SPARSE_DETECT, 2 ** 20)]
    s40 = med[(bench.SPARSE_DETECT, 2 ** 40)]
    d13 = med[(bench.DENSE_BASELINE, 2 ** 13)]
    d16 = med[(bench.DENSE_BASELINE, 2 ** 16)]
    all_true = all(rec.verdict for rec in sparse + dense)
    ok = s40 / s20 <= 8 and d16 / d13 >= 4 and all_true
    return record(7, ok,
                  f"sparse median tau(f)={taus:.0f}: 2^20 {s20:.3f}s, 2^30 "
                  f"{med[(bench.SPARSE_DETECT, 2 ** 30)]:.3f}s, 2^40 {s40:.3f}s "
                  f"(ratio {s40 / s20:.2f} <= 8); dense 2^13 {d13:.2f}s, 2^16 {d16:.2f}s "
                  f"(ratio {d16 / d13:.1f} >= 4)")


def criterion_8():
    import csv
    from dataclasses import asdict, fields
    from lacunary.newton import ConjectureRecord
    from lacunary.plotting import plot_conjecture
    ARTIFACTS.mkdir(parents=True, exist_ok=True)
    notes = []
    total_viol = 0
    for ring in ("Z", "GF"):
        recs = conjecture_scan(1000, (2, 20), (1, 60), (2, 6), ring, seed=8)
        path = ARTIFACTS / f"conjecture_{ring}.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.DictWriter(fh, fieldnames=[f.name for f in fields(ConjectureRecord)])
            w.writeheader()
            for rec in recs:
                w.writerow(asdict(rec))
        plot_conjecture(recs, path.with_suffix(".png"))
        viol = [rec for rec in recs if rec.violated]
        total_viol += len(viol)
        for rec in viol:
            print(f"  conjecture violation ({ring}): trial {rec.trial} tau_h={rec.tau_h} "
                  f"deg_h={rec.deg_h} r={rec.r} i={rec.i} lhs={rec.lhs} rhs={rec.rhs}")
        lemma = {(rec.trial, rec.lemma_max_terms, rec.lemma_bound_plus, rec.lemma_bound_minus)
                 for rec in recs if rec.lemma_max_terms is not None}
        over_plus = sum(m > bp for _, m, bp, _ in lemma)
        over_minus = sum(m > bm for _, m, _, bm in lemma)
        notes.append(f"{ring}: {sum(not r.degenerate for r in recs)} comparisons, "
                     f"{len(viol)} violations, Newton peak > 2t(t+r) in {over_plus}/"
                     f"{len(lemma)}, > 2t(t-r) in {over_minus}/{len(lemma)}")
    return record(8, total_viol == 0, "; ".join(notes))


def criterion_9():
    rng = random.Random(909)
    bad = []
    for i in range(50):
        nv = 2 if i % 2 == 0 else 3
        r = (2, 3, 5)[i % 3]
        t = rng.randint(2, 5 if r < 5 else 3)
        inst = generate_multivariate(t, nv, 12, 2 ** 16, r, seed=rng.getrandbits(32))
        if inst.h.sparsity() < 2:
            continue
        rep = detect_multivariate(inst.f, seed=i)
        root = kronecker_root(inst.f, r)
        if not (rep.verdict and rep.r_found == r and root == inst.h):
            bad.append(i)
    return record(9, not bad, f"{50 - len(bad)}/50 multivariate instances detected with the "
                              f"right r and rooted exactly")


def criterion_10():
    checks = 0
    failures = 0
    for inst in power_corpus()[:50]:
        r = inst.r

        def audit(k, h, g):
            nonlocal checks, failures
            checks += 1
            if truncate(power(h, r, k), k) != truncate(g, k):
                failures += 1

        compute_root_newton(inst.f, r, on_iteration=audit)
    return record(10, failures == 0,
                  f"h^r = g mod x^k held at {checks - failures}/{checks} iteration heads "
                  f"over 50 instances")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10]


# --------------------------------------------------------------------------
# pytest entry points

@pytest.mark.acceptance
@pytest.mark.parametrize("num", range(1, 11))
def test_criterion(num):
    passed = CRITERIA[num - 1]()
    if num == 8:
        # violations are findings: surfaced in the report line, never a test failure
        assert (ARTIFACTS / "conjecture_Z.csv").exists()
        return
    assert passed, RESULTS[num][1]


def main():
    ok = True
    for fn in CRITERIA:
        ok &= bool(fn())
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
