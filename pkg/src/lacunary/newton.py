"""Computing r-th roots of lacunary polynomials by sparse Newton iteration.

The iteration lifts h with h^r = g (mod x^k) to precision x^(k+l), where
g = f / x^u. Every product is truncated as it is formed, so the work depends
on the sparsity of the truncated powers of h rather than on deg f. The
result is always certified with the identity f' h = r h' f plus a leading
coefficient check, so a returned root is correct on *any* input.
"""

import random
from dataclasses import dataclass, field as dc_field

import gmpy2

from .errors import CharacteristicError, InexactDivisionError, NotAPower, SparsityCeilingExceeded
from .fields import ZZ, PrimeField, random_prime, rth_root_in_field
from .poly import (DENSE_GUARD, SparsePoly, derivative, power, series_inverse_quotient,
                   shift_div, sparse_mul, truncate)


@dataclass
class IterationRecord:
    k: int
    ell: int
    max_power_terms: int
    root_terms: int


@dataclass
class RootResult:
    root: SparsePoly
    certified: bool
    r: int
    u: int = 0
    iterations: list = dc_field(default_factory=list)
    ceiling: int | None = None
    ceiling_lifted: bool = False

    @property
    def max_intermediate_terms(self):
        return max((it.max_power_terms for it in self.iterations), default=0)

    def diagnostics(self):
        return {
            "r": self.r,
            "u": self.u,
            "iterations": [vars(it) for it in self.iterations],
            "max_intermediate_terms": self.max_intermediate_terms,
            "ceiling": self.ceiling,
            "ceiling_lifted": self.ceiling_lifted,
        }


def integer_rth_root(a, r):
    """Exact r-th root of the integer a, or None if a is not an r-th power.

    Negative a has a root only for odd r.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if a < 0:
        if r % 2 == 0:
            return None
        b = integer_rth_root(-a, r)
        return None if b is None else -b
    root, exact = gmpy2.iroot(gmpy2.mpz(a), r)
    return int(root) if exact else None


def _ring_pow(ring, a, e):
    return a ** e if ring is ZZ else ring.pow(a, e)


def verify_power(f, h, r):
    """Deterministic certificate that f = h^r.

    Checks deg f = r deg h, lc(f) = lc(h)^r and f' h = r h' f. In
    characteristic zero (or above deg f) these imply f = h^r.
    """
    if f.ring != h.ring:
        return False
    if f.is_zero() or h.is_zero():
        return f.is_zero() and h.is_zero()
    if f.degree() != r * h.degree():
        return False
    R = f.ring
    if f.leading_coefficient() != _ring_pow(R, h.leading_coefficient(), r):
        return False
    lhs = sparse_mul(derivative(f), h)
    rhs = sparse_mul(derivative(h), f) * r
    return lhs == rhs


def _base_root(f_u, r, ring, rng):
    if ring is ZZ:
        if f_u < 0 and r % 2 == 0:
            return None
        return integer_rth_root(f_u, r)
    return rth_root_in_field(ring, f_u, r, rng)


def default_ceiling(f, r):
    return 4 * (f.sparsity() + r) ** 2


def compute_root_newton(f, r, *, rng=None, ceiling="default", dense_guard=DENSE_GUARD,
                        on_iteration=None):
    """h with h^r = f, certified; raises :class:`NotAPower` otherwise.

    ``ceiling`` bounds the sparsity of intermediate truncated powers
    (default 4 (t + r)^2, None disables it). When it is exceeded and deg f is
    within ``dense_guard`` the iteration carries on without the ceiling;
    otherwise :class:`SparsityCeilingExceeded` is raised.

    ``on_iteration(k, h, g)`` is called at the head of every loop iteration,
    where h^r = g (mod x^k) is expected to hold.

    Over the integers an even-r root is returned with positive leading coefficient
    (for odd r the root is unique).
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    R = f.ring
    if f.is_zero():
        return RootResult(f, True, r)
    n = f.degree()
    if R is not ZZ and R.characteristic <= n:
        raise CharacteristicError(f"characteristic {R.characteristic} does not exceed deg f = {n}")
    u = f.lowest_exponent()
    if u % r:
        raise NotAPower(f"x^{u} divides f exactly, and {r} does not divide {u}")
    g = shift_div(f, u)
    if g.degree() % r:
        raise NotAPower(f"{r} does not divide deg g = {g.degree()}")
    s = g.degree() // r
    f_u = g.trailing_coefficient()
    rng = rng if rng is not None else random.Random(0)
    b = _base_root(f_u, r, R, rng)
    if b is None:
        raise NotAPower("trailing coefficient is not an r-th power")

    if ceiling == "default":
        ceiling = default_ceiling(f, r)
    result = RootResult(None, False, r, u=u, ceiling=ceiling)
    guard_state = {"limit": ceiling, "peak": 0}

    def watch(p):
        tau = p.sparsity()
        if tau > guard_state["peak"]:
            guard_state["peak"] = tau
        limit = guard_state["limit"]
        if limit is not None and tau > limit:
            if n <= dense_guard:
                guard_state["limit"] = None
                result.ceiling_lifted = True
            else:
                raise SparsityCeilingExceeded(tau, limit, result.diagnostics())

    # unnormalized iteration: h(0) = b, and each correction is
    # (h g - h^(r+1)) / (r g), which over Z is an exact division
    rg = g * r
    h = SparsePoly.constant(b, R)
    k = 1
    while k <= s:
        if on_iteration is not None:
            on_iteration(k, h, g)
        ell = min(k, s + 1 - k)
        bound = k + ell
        guard_state["peak"] = 0
        hp = power(h, r + 1, bound, on_product=watch)
        num = sparse_mul(h, g, bound) - hp
        if num.terms and num.terms[0][1] < k:
            raise NotAPower("Newton residual has low-order terms")
        a = shift_div(num, k)
        try:
            q = series_inverse_quotient(a, rg, ell)
        except InexactDivisionError as exc:
            raise NotAPower(f"non-integral Newton correction: {exc}") from None
        h = h + q.shift(k)
        result.iterations.append(IterationRecord(k, ell, guard_state["peak"], h.sparsity()))
        k += ell
    if on_iteration is not None:
        on_iteration(k, h, g)

    root = h.shift(u // r)
    if R is ZZ and r % 2 == 0 and root.leading_coefficient() < 0:
        root = -root
    if not verify_power(f, root, r):
        raise NotAPower("certificate f' h = r h' f failed", result.diagnostics())
    result.root = root
    result.certified = True
    return result


# --------------------------------------------------------------------------
# sparsity of truncated powers

@dataclass
class ConjectureRecord:
    trial: int
    ring: str
    tau_h: int
    deg_h: int
    r: int
    i: int
    lhs: int
    rhs: int
    violated: bool
    degenerate: bool = False
    lemma_max_terms: int | None = None
    lemma_bound_plus: int | None = None
    lemma_bound_minus: int | None = None


def random_sparse_poly(rng, terms, degree, ring=ZZ, coeff_bits=8, *, constant=True):
    """Random poly with ``terms`` terms, exact degree ``degree`` and (by default) h(0) != 0."""
    if terms < 1:
        raise ValueError("need at least one term")
    exps = {degree}
    if constant and degree > 0:
        exps.add(0)
    want = min(terms, degree + 1)
    lo = 1 if constant else 0
    while len(exps) < want:
        exps.add(rng.randint(lo, degree - 1))
    terms_out = []
    for e in sorted(exps):
        if ring is ZZ:
            c = 0
            while not c:
                c = rng.randint(-(1 << coeff_bits), 1 << coeff_bits)
        else:
            c = ring.random_nonzero(rng)
        terms_out.append((c, e))
    return SparsePoly(terms_out, ring)


def conjecture_records(h, r, trial=0, label="Z", *, lemma=True):
    """Records comparing tau(h^i mod x^2s) with tau(h^r mod x^2s) + r, i = 1..r-1.

    s = deg h; a constant or monomial h gives a single degenerate record.
    """
    s = h.degree()
    if s <= 0 or h.sparsity() < 2:
        return [ConjectureRecord(trial, label, h.sparsity(), max(s, 0), r, 0, 0, 0, False,
                                 degenerate=True)]
    bound = 2 * s
    powers = [truncate(h, bound)]
    for _ in range(r - 1):
        powers.append(sparse_mul(powers[-1], h, bound))
    rhs = powers[r - 1].sparsity() + r
    lemma_info = (None, None, None)
    if lemma:
        f = power(h, r)
        t = f.sparsity()
        try:
            res = compute_root_newton(f, r, ceiling=None)
            lemma_info = (res.max_intermediate_terms, 2 * t * (t + r), 2 * t * (t - r))
        except NotAPower:
            pass
    out = []
    for i in range(1, r):
        lhs = powers[i - 1].sparsity()
        out.append(ConjectureRecord(trial, label, h.sparsity(), s, r, i, lhs, rhs, lhs >= rhs,
                                    False, *lemma_info))
    return out


def conjecture_scan(trials, tau_range=(2, 20), deg_range=(1, 60), r_range=(2, 6), ring="Z",
                    rng=None, *, seed=None, lemma=True):
    """Check tau(h^i mod x^2s) < tau(h^r mod x^2s) + r on random h.

    ``ring`` is "Z" or "GF" (a random prime p > r s per trial). Each trial
    yields one record per i = 1..r-1; violations are recorded, never raised.
    With ``lemma`` the Newton iteration is run on h^r and its largest
    intermediate power is compared with 2t(t+r) and 2t(t-r), t = tau(h^r).
    """
    rng = rng if rng is not None else random.Random(seed)
    records = []
    for trial in range(trials):
        r = rng.randint(*r_range)
        s = rng.randint(*deg_range)
        tau = rng.randint(*tau_range)
        if ring == "Z":
            R = ZZ
            label = "Z"
        else:
            lo = max(r * s + 1, 3)
            p = random_prime(lo, max(2 * lo, 1 << 31), (), rng)
            R = PrimeField(p, check=False)
            label = f"GF({p})"
        h = random_sparse_poly(rng, tau, s, R)
        records.extend(conjecture_records(h, r, trial, label, lemma=lemma))
    return records
