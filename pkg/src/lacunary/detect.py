"""Monte Carlo perfect-power detection for lacunary polynomials.

Two layers:

* ``is_perfect_rth_power_gf`` / ``is_perfect_rth_power_z`` decide whether f
  is an r-th power for one prime r. Perfect powers are always accepted;
  non-powers are rejected with probability at least 1 - eps.
* ``is_perfect_power_gf`` / ``is_perfect_power_z`` enumerate the admissible
  prime exponents and split the failure budget between them.

The finite-field test evaluates f at random points of an extension F_rho
(with r | rho - 1) and checks that each value is an r-th power residue.
Over the integers the same test runs on f mod p for random primes p drawn
from [gamma, 2 gamma].

Besides the randomized loops, cheap *sound* filters run first: they can
only ever reject inputs that are provably not r-th powers (content, sign and
trailing-term conditions, and a few residue trials in a prime field with
p = 1 mod r). They never affect completeness.
"""

import json
import math
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

from ._numeric import as_fraction, ceil_log2_recip, ceil_mul_ln, ceil_of_log_sum, floor_log2
from .errors import CharacteristicError, MonomialInputError, PrimeSamplingError
from .fields import (ZZ, ExtensionField, PrimeField, embedding, evaluate_mod, find_irreducible,
                     primes_up_to, random_prime)

DEFAULT_EPSILON = Fraction(1, 1024)
PREFILTER_TRIALS = 3


# --------------------------------------------------------------------------
# reports

@dataclass
class TraceEntry:
    """One step of a detection run.

    ``stage`` is one of ``precheck``, ``prefilter``, ``gf`` (a residue loop),
    ``prime`` (one iteration of the integer loop) or ``substitution``.
    ``outcomes`` holds one entry per random point: ``True`` (value was an
    r-th power), ``False`` (it was not; the input is rejected) or ``None``
    (the value was zero, which is an r-th power too).
    """
    stage: str
    r: int
    prime: int | None = None
    extension_degree: int | None = None
    iterations: int = 0
    outcomes: list = dc_field(default_factory=list)
    note: str = ""


@dataclass
class DetectionReport:
    verdict: bool
    r_found: int | None
    epsilon: Fraction
    candidates: list = dc_field(default_factory=list)
    trace: list = dc_field(default_factory=list)
    seed: int | None = None

    def to_dict(self):
        d = asdict(self)
        d["epsilon"] = str(self.epsilon)
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _rng_from(rng, seed):
    if rng is not None:
        return rng
    return random.Random(seed)


# --------------------------------------------------------------------------
# bounds

def compute_mu(n, h_inf=None, *, h_bits=None):
    """ceil( ceil(log2(2^(2n^2) (n+1)^(2n) H^(2n+1))) / floor(log2(4(n-1)^2)) ).

    H = ``h_inf``; alternatively pass ``h_bits`` to use the bound H = 2^h_bits
    (callers that only know an upper bound on the height use this).
    """
    if n < 2:
        raise ValueError("compute_mu needs n >= 2")
    if h_bits is not None:
        pairs = [(2 * n * n + (2 * n + 1) * h_bits, 2), (2 * n, n + 1)]
    else:
        if h_inf is None or h_inf < 1:
            raise ValueError("h_inf must be a positive integer")
        pairs = [(2 * n * n, 2), (2 * n, n + 1), (2 * n + 1, h_inf)]
    num = ceil_of_log_sum(pairs)
    den = floor_log2(4 * (n - 1) ** 2)
    return -(-num // den)


def compute_gamma(mu, n):
    """max(ceil(21 mu ln mu), 4(n-1)^2, 226)."""
    if mu < 1:
        raise ValueError("mu must be positive")
    return max(ceil_mul_ln(21 * mu, mu), 4 * (n - 1) ** 2, 226)


def exponent_bound_z(f):
    """floor(2 log2 ||f||_1): every r with f = h^r over Z is at most this."""
    one = f.norms().one_norm
    return (one * one).bit_length() - 1


def _prime_divisors_below(n, bound):
    return [r for r in primes_up_to(bound) if n % r == 0]


def exponent_candidates_z(f):
    """Primes r | deg f with r <= 2 log2(t ||f||_inf)."""
    t = f.sparsity()
    if t < 2:
        raise MonomialInputError("detection needs at least two terms")
    th = t * f.norms().inf_norm
    # r <= 2 log2(th)  <=>  2^r <= th^2
    bound = (th * th).bit_length() - 1
    return _prime_divisors_below(f.degree(), bound)


def exponent_candidates_gf(f):
    """Primes r | deg f with r <= t."""
    t = f.sparsity()
    if t < 2:
        raise MonomialInputError("detection needs at least two terms")
    return _prime_divisors_below(f.degree(), t)


def _is_prime_small(r):
    return r >= 2 and all(r % d for d in range(2, math.isqrt(r) + 1))


# --------------------------------------------------------------------------
# finite fields

def _extension_degree_for(q, n, r=None):
    """Degree E of the extension F_q^E used by the residue test.

    E is the smallest multiple of ord_r(q) (the least o with r | q^o - 1)
    such that q^E >= 4(n-1)^2. Without r, only the size condition applies.
    """
    target = 4 * (n - 1) ** 2
    o = 1
    if r is not None:
        qr = q % r
        acc = qr
        while acc != 1:
            acc = acc * qr % r
            o += 1
    E, size = o, q ** o
    while size < target:
        size *= q ** o
        E += o
    return E


def _residue_loop(f, r, big, embed, m, rng, outcomes):
    """m random residue trials of f in ``big``; False on the first non-residue."""
    e = (big.order - 1) // r
    for _ in range(m):
        alpha = big.random(rng)
        v = evaluate_mod(f, alpha, big, embed)
        if not v:
            outcomes.append(None)
            continue
        ok = big.pow(v, e) == 1
        outcomes.append(ok)
        if not ok:
            return False
    return True


def _field_scalar_is_rth_power(F, c, r):
    n = F.order - 1
    g = math.gcd(r, n)
    return F.pow(c, n // g) == 1


def _gf_core(f, r, eps, rng, trace):
    """The residue loop over F_q; returns the verdict and appends to ``trace``."""
    F = f.ring
    n = f.degree()
    p = F.characteristic
    d0 = F.degree
    q = F.order
    L = ceil_log2_recip(eps)
    m = math.ceil(Fraction(5, 2) * (1 + L))
    D = d0 * _extension_degree_for(q, n, r)
    entry = TraceEntry("gf", r, prime=p, extension_degree=D, iterations=m)
    trace.append(entry)
    if D == 1:
        big = F if d0 == 1 else PrimeField(p, check=False)
    else:
        modulus = find_irreducible(p, D, eps / 2, rng)
        if modulus is None:
            # no irreducible found within the cap: counted as a false accept
            entry.note = "irreducible search failed; accepted"
            return True
        big = ExtensionField(p, modulus, check=False)
    embed = None if d0 == 1 else embedding(F, big, rng)
    return _residue_loop(f, r, big, embed, m, rng, entry.outcomes)


def is_perfect_rth_power_gf(f, r, eps=DEFAULT_EPSILON, rng=None, *, seed=None):
    """Is f (over a finite field, char > deg f) a perfect r-th power?

    One-sided: a perfect power is always accepted.
    """
    eps = as_fraction(eps)
    rng = _rng_from(rng, seed)
    F = f.ring
    if F is ZZ:
        raise TypeError("use is_perfect_rth_power_z for integer polynomials")
    _check_gf_input(f, r)
    report = DetectionReport(False, None, eps, [r], seed=seed)
    trace = report.trace
    ok, note = _gf_prechecks(f, r)
    if not ok:
        trace.append(TraceEntry("precheck", r, note=note))
        return report
    ok = _gf_core(f, r, eps, rng, trace)
    if ok:
        report.verdict, report.r_found = True, r
    return report


def _check_gf_input(f, r):
    n = f.degree()
    if not _is_prime_small(r):
        raise ValueError(f"r = {r} is not prime")
    if n < 1 or n % r:
        raise ValueError(f"r = {r} does not divide deg f = {n}")
    if f.ring.characteristic <= n:
        raise CharacteristicError(
            f"characteristic {f.ring.characteristic} does not exceed deg f = {n}")


def _gf_prechecks(f, r):
    F = f.ring
    u = f.lowest_exponent()
    if u % r:
        return False, f"lowest exponent {u} not divisible by {r}"
    if not _field_scalar_is_rth_power(F, f.leading_coefficient(), r):
        return False, "leading coefficient is not an r-th power"
    if not _field_scalar_is_rth_power(F, f.trailing_coefficient(), r):
        return False, "trailing coefficient is not an r-th power"
    return True, ""


# --------------------------------------------------------------------------
# integers

class _IntegerSource:
    """An integer polynomial seen through its reductions mod p."""

    def __init__(self, f):
        self.f = f
        self.degree = f.degree()
        self.h_inf = f.norms().inf_norm
        self.h_bits = None

    def reduce(self, F):
        return self.f.reduce_mod(F)


def _z_prechecks(f, r):
    """Deterministic necessary conditions for f = h^r over Z."""
    from .newton import integer_rth_root
    u = f.lowest_exponent()
    if u % r:
        return False, f"lowest exponent {u} not divisible by {r}"
    lc = f.leading_coefficient()
    if r % 2 == 0 and lc < 0:
        return False, "negative leading coefficient for even r"
    c = f.content()
    if integer_rth_root(c, r) is None:
        return False, "content is not an r-th power"
    for label, a in (("leading", lc), ("trailing", f.trailing_coefficient())):
        if (a < 0 and r % 2 == 0) or integer_rth_root(abs(a), r) is None:
            return False, f"{label} coefficient is not an r-th power"
    return True, ""


def _prefilter(source, r, gamma, rng, trace, trials=PREFILTER_TRIALS):
    """Residue trials in F_p with p = 1 (mod r). Rejection is always correct."""
    try:
        p = random_prime(gamma, 2 * gamma, (r,), rng, congruent=(1, r))
    except PrimeSamplingError:
        return True
    F = PrimeField(p, check=False)
    fp = source.reduce(F)
    entry = TraceEntry("prefilter", r, prime=p, extension_degree=1, iterations=trials)
    trace.append(entry)
    return _residue_loop(fp, r, F, None, trials, rng, entry.outcomes)


def _rth_power_z_core(source, r, eps, rng, trace, *, prefilter=True, fast_path=False):
    n = source.degree
    if source.h_bits is not None:
        mu = compute_mu(n, h_bits=source.h_bits)
    else:
        mu = compute_mu(n, source.h_inf)
    gamma = compute_gamma(mu, n)
    if prefilter and not _prefilter(source, r, gamma, rng, trace):
        return False
    quarter = Fraction(1, 4)
    for _ in range(ceil_log2_recip(eps)):
        if fast_path:
            p = random_prime(gamma, 2 * gamma, (r,), rng, congruent=(1, r))
        else:
            p = random_prime(gamma, 2 * gamma, (r,), rng)
        F = PrimeField(p, check=False)
        fp = source.reduce(F)
        if fp.degree() != n:
            # p divides the leading coefficient: a bad prime, charged to the analysis
            trace.append(TraceEntry("prime", r, prime=p, note="degree dropped mod p; accepted"))
            continue
        trace.append(TraceEntry("prime", r, prime=p))
        if not _gf_core(fp, r, quarter, rng, trace):
            return False
    return True


def is_perfect_rth_power_z(f, r, eps=DEFAULT_EPSILON, rng=None, *, seed=None,
                           prefilter=True, fast_path=False):
    """Is the integer polynomial f a perfect r-th power (r prime)?

    Runs ceil(log2(1/eps)) iterations; each reduces f modulo a random prime
    from [gamma, 2 gamma] and runs the finite-field test at eps = 1/4.
    """
    eps = as_fraction(eps)
    rng = _rng_from(rng, seed)
    if f.ring is not ZZ:
        raise TypeError("expected an integer polynomial")
    n = f.degree()
    if not _is_prime_small(r):
        raise ValueError(f"r = {r} is not prime")
    if n < 2 or n % r:
        raise ValueError(f"r = {r} does not divide deg f = {n}")
    report = DetectionReport(False, None, eps, [r], seed=seed)
    if _rth_power_z(f, r, eps, rng, report.trace, prefilter=prefilter, fast_path=fast_path):
        report.verdict, report.r_found = True, r
    return report


def _rth_power_z(f, r, eps, rng, trace, **kw):
    ok, note = _z_prechecks(f, r)
    if not ok:
        trace.append(TraceEntry("precheck", r, note=note))
        return False
    return _rth_power_z_core(_IntegerSource(f), r, eps, rng, trace, **kw)


# --------------------------------------------------------------------------
# drivers

def is_perfect_power_z(f, eps=DEFAULT_EPSILON, rng=None, *, seed=None,
                       prefilter=True, fast_path=False):
    """Is f in Z[x] a perfect power h^r for some r >= 2?

    Each candidate prime r gets budget eps / #candidates; the first accepted
    r is reported.
    """
    eps = as_fraction(eps)
    rng = _rng_from(rng, seed)
    if f.ring is not ZZ:
        raise TypeError("expected an integer polynomial")
    cands = exponent_candidates_z(f)
    report = DetectionReport(False, None, eps, cands, seed=seed)
    if not cands:
        return report
    share = eps / len(cands)
    for r in cands:
        if _rth_power_z(f, r, share, rng, report.trace, prefilter=prefilter,
                        fast_path=fast_path):
            report.verdict, report.r_found = True, r
            break
    return report


def is_perfect_power_gf(f, eps=DEFAULT_EPSILON, rng=None, *, seed=None):
    """Is f over F_q (char > deg f) a perfect power?"""
    eps = as_fraction(eps)
    rng = _rng_from(rng, seed)
    if f.ring is ZZ:
        raise TypeError("use is_perfect_power_z for integer polynomials")
    cands = exponent_candidates_gf(f)
    n = f.degree()
    if f.ring.characteristic <= n:
        raise CharacteristicError(
            f"characteristic {f.ring.characteristic} does not exceed deg f = {n}")
    report = DetectionReport(False, None, eps, cands, seed=seed)
    if not cands:
        return report
    share = eps / len(cands)
    for r in cands:
        ok, note = _gf_prechecks(f, r)
        if not ok:
            report.trace.append(TraceEntry("precheck", r, note=note))
            continue
        if _gf_core(f, r, share, rng, report.trace):
            report.verdict, report.r_found = True, r
            break
    return report


def is_perfect_power(f, eps=DEFAULT_EPSILON, rng=None, *, seed=None, **kw):
    """Dispatch on the coefficient ring."""
    if f.ring is ZZ:
        return is_perfect_power_z(f, eps, rng, seed=seed, **kw)
    return is_perfect_power_gf(f, eps, rng, seed=seed)
