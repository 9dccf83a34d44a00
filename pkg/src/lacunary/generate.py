"""Random perfect-power instances (h, f = h^r) and perturbed non-powers."""

import random
from dataclasses import dataclass

from .fields import ZZ
from .multivar import MultiSparsePoly, canonical_sign
from .poly import SparsePoly, power


@dataclass
class Instance:
    h: object
    f: object
    r: int
    seed: int | None

    def metadata(self):
        meta = {
            "r": self.r,
            "seed": self.seed,
            "tau_h": self.h.sparsity(),
            "tau_f": self.f.sparsity(),
        }
        if isinstance(self.f, SparsePoly):
            meta["deg_h"] = self.h.degree()
            meta["deg_f"] = self.f.degree()
        else:
            meta["nvars"] = self.f.nvars
            meta["total_degree_f"] = self.f.total_degree()
        if self.f.ring is ZZ:
            nf = self.f.norms() if isinstance(self.f, SparsePoly) else None
            if nf is not None:
                meta["one_norm_bits_f"] = nf.one_norm.bit_length()
                meta["inf_norm_bits_f"] = nf.inf_norm.bit_length()
        return meta


def _random_coeff(rng, ring, coeff_bound):
    if ring is ZZ:
        c = 0
        while not c:
            c = rng.randint(-coeff_bound, coeff_bound)
        return c
    return ring.random_nonzero(rng)


def random_sparse(rng, t, degree, coeff_bound, ring=ZZ):
    """t-sparse polynomial with constant term and exact degree ``degree``."""
    if t == 1:
        return SparsePoly([(_random_coeff(rng, ring, coeff_bound), degree)], ring)
    if degree < t - 1:
        raise ValueError(f"degree {degree} too small for {t} terms")
    exps = {0, degree}
    while len(exps) < t:
        exps.add(rng.randint(1, degree - 1))
    return SparsePoly([(_random_coeff(rng, ring, coeff_bound), e) for e in exps], ring)


def generate(t, deg_bound, coeff_bound, r, ring=ZZ, seed=None, *, exact_degree=False):
    """Random t-sparse h (deg h <= deg_bound, |coeffs| <= coeff_bound) and f = h^r.

    Over Z with even r, h gets a positive leading coefficient, which is the
    sign convention of the root routines. ``t == 1`` yields a monomial pair,
    which the detectors refuse.
    """
    rng = random.Random(seed)
    lo = max(t - 1, 1)
    if deg_bound < lo:
        raise ValueError(f"degree bound {deg_bound} too small for {t} terms")
    degree = deg_bound if exact_degree else rng.randint(lo, deg_bound)
    h = random_sparse(rng, t, degree, coeff_bound, ring)
    if ring is ZZ and r % 2 == 0 and h.leading_coefficient() < 0:
        h = -h
    return Instance(h, power(h, r), r, seed)


def generate_multivariate(t, nvars, deg_bound, coeff_bound, r, ring=ZZ, seed=None):
    """Random multivariate h with t terms (partial degrees <= deg_bound) and h^r."""
    rng = random.Random(seed)
    seen = set()
    raw = []
    while len(raw) < t:
        e = tuple(rng.randint(0, deg_bound) for _ in range(nvars))
        if e in seen:
            continue
        seen.add(e)
        raw.append((_random_coeff(rng, ring, coeff_bound), e))
    h = canonical_sign(MultiSparsePoly(nvars, raw, ring), r)
    return Instance(h, h ** r, r, seed)


def perturb(f, rng, magnitude=None, *, interior=False):
    """Change one coefficient of f by a random nonzero amount (keeping it nonzero).

    With ``interior`` the lowest and highest terms are left alone, so the
    cheap trailing/leading-coefficient checks cannot spot the change.
    """
    R = f.ring
    terms = list(f.terms)
    if interior and len(terms) > 2:
        i = rng.randrange(1, len(terms) - 1)
    else:
        i = rng.randrange(len(terms))
    c, e = terms[i]
    while True:
        if R is ZZ:
            bound = magnitude or max(abs(c), 1)
            delta = rng.randint(1, bound) * rng.choice((-1, 1))
            new = c + delta
        else:
            new = R.add(c, R.random_nonzero(rng))
        if new:
            break
    terms[i] = (new, e)
    if isinstance(f, SparsePoly):
        return SparsePoly._make(tuple(terms), R)
    return MultiSparsePoly._make(f.nvars, tuple(terms), R)
