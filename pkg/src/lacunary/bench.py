"""Timing sweeps: sparse detection, sparse roots and the dense baseline.

Every record carries the seed it was generated from; ``replay`` rebuilds
the instance and reruns the algorithm, which must give the same verdict.
"""

import csv
import random
import statistics
import time
from dataclasses import asdict, dataclass, fields

from .dense import dense_newton_baseline
from .detect import is_perfect_power_z
from .errors import NotAPower
from .generate import generate
from .newton import compute_root_newton

SPARSE_DETECT = "sparse-detect"
SPARSE_ROOT = "sparse-root"
DENSE_BASELINE = "dense-newton-baseline"


@dataclass
class BenchRecord:
    algorithm: str
    degree: int
    sparsity: int
    coeff_bits: int
    r: int
    seconds: float
    verdict: bool
    seed: int
    tau_h: int
    epsilon: str


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


def terms_for_sparsity(target, r):
    """tau(h) giving tau(h^r) close to ``target`` (upper estimate C(t + r - 1, r))."""
    from math import comb
    t = 2
    while comb(t + r, r) <= target:
        t += 1
    return t


def make_instance(degree, tau_h, r, coeff_bits, seed):
    """f = h^r with deg f = degree (rounded down to a multiple of r)."""
    return generate(tau_h, max(degree // r, tau_h), (1 << coeff_bits) - 1, r,
                    seed=seed, exact_degree=True)


def run_one(algorithm, degree, tau_h, r, coeff_bits, seed, eps="1/1024"):
    inst = make_instance(degree, tau_h, r, coeff_bits, seed)
    f = inst.f
    start = time.perf_counter()
    if algorithm == SPARSE_DETECT:
        verdict = is_perfect_power_z(f, eps, seed=seed).verdict
    elif algorithm == SPARSE_ROOT:
        try:
            verdict = compute_root_newton(f, r).certified
        except NotAPower:
            verdict = False
    elif algorithm == DENSE_BASELINE:
        verdict = dense_newton_baseline(f, r, eps, random.Random(seed))[0]
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    elapsed = time.perf_counter() - start
    return BenchRecord(algorithm, f.degree(), f.sparsity(), coeff_bits, r, elapsed, verdict,
                       seed, tau_h, str(eps))


def sweep(algorithm, degrees, *, tau_h=None, sparsity=100, r=2, coeff_bits=16, trials=3,
          seed=0, eps="1/1024"):
    """Time ``algorithm`` over degrees (fixed sparsity) with ``trials`` instances each."""
    if tau_h is None:
        tau_h = terms_for_sparsity(sparsity, r)
    master = random.Random(seed)
    out = []
    for d in degrees:
        for _ in range(trials):
            out.append(run_one(algorithm, d, tau_h, r, coeff_bits, master.getrandbits(32), eps))
    return out


def sparsity_sweep(algorithm, degree, taus, *, r=2, coeff_bits=16, trials=3, seed=0,
                   eps="1/1024"):
    master = random.Random(seed)
    out = []
    for t in taus:
        for _ in range(trials):
            out.append(run_one(algorithm, degree, t, r, coeff_bits, master.getrandbits(32), eps))
    return out


def replay(rec):
    """Rerun one record from its seed; returns the fresh record."""
    return run_one(rec.algorithm, rec.degree, rec.tau_h, rec.r, rec.coeff_bits, rec.seed,
                   rec.epsilon)


def medians(records, key="degree"):
    groups = {}
    for rec in records:
        groups.setdefault((rec.algorithm, getattr(rec, key)), []).append(rec.seconds)
    return {k: statistics.median(v) for k, v in sorted(groups.items())}


def write_csv(records, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for rec in records:
            w.writerow(asdict(rec))


def read_csv(path):
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(BenchRecord(
                row["algorithm"], int(row["degree"]), int(row["sparsity"]),
                int(row["coeff_bits"]), int(row["r"]), float(row["seconds"]),
                row["verdict"] == "True", int(row["seed"]), int(row["tau_h"]), row["epsilon"]))
    return out
