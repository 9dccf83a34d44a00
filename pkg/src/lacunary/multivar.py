"""Multivariate lacunary polynomials: detection by random substitution and
root extraction by Kronecker substitution.

Detection maps f(x_1, ..., x_l) to f(a_1 x, ..., a_l x) for random nonzero
points a and runs the univariate test. A perfect power stays a perfect power
under every substitution; a non-power survives a random one with probability
at most 1/4 (sample set of size >= 8n^2 + 4n), so repeated rounds drive the
error down. A candidate exponent is reported only if every round accepts it.
"""

import math
import random
from fractions import Fraction

from ._numeric import as_fraction, ceil_log2_recip
from .detect import (DEFAULT_EPSILON, DetectionReport, TraceEntry, _gf_core, _gf_prechecks,
                     _rth_power_z, _rth_power_z_core, _prime_divisors_below)
from .errors import CharacteristicError, MonomialInputError, NotAPower
from .fields import ZZ, embedding, extension_of
from .newton import compute_root_newton, integer_rth_root, verify_power
from .poly import SparsePoly, normalize

EXPLICIT_SUBSTITUTION_BITS = 1 << 15
REDRAW_LIMIT = 64


class MultiSparsePoly:
    """Terms ``(coeff, exps)`` with exponent tuples in strictly increasing lex order."""

    __slots__ = ("nvars", "terms", "ring")

    def __init__(self, nvars, terms=(), ring=ZZ):
        self.nvars = nvars
        self.ring = ring
        self.terms = _normalize_multi(nvars, terms, ring)

    @classmethod
    def _make(cls, nvars, terms, ring):
        obj = cls.__new__(cls)
        obj.nvars, obj.terms, obj.ring = nvars, terms, ring
        return obj

    @classmethod
    def from_univariate(cls, f):
        return cls._make(1, tuple((c, (e,)) for c, e in f.terms), f.ring)

    @classmethod
    def variable(cls, i, nvars, ring=ZZ):
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, ((ring.one, tuple(e)),), ring)

    def to_univariate(self):
        if self.nvars != 1:
            raise ValueError("not a univariate polynomial")
        return SparsePoly._make(tuple((c, e[0]) for c, e in self.terms), self.ring)

    def sparsity(self):
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for _, e in self.terms), default=-1)

    def min_total_degree(self):
        return min((sum(e) for _, e in self.terms), default=-1)

    def partial_degrees(self):
        if not self.terms:
            return [-1] * self.nvars
        return [max(e[i] for _, e in self.terms) for i in range(self.nvars)]

    def partial_min_degrees(self):
        return [min(e[i] for _, e in self.terms) for i in range(self.nvars)]

    def is_homogeneous(self):
        return len({sum(e) for _, e in self.terms}) <= 1

    def leading_coefficient(self):
        """Coefficient of the lex-largest monomial."""
        return self.terms[-1][0] if self.terms else self.ring.zero

    def trailing_coefficient(self):
        return self.terms[0][0] if self.terms else self.ring.zero

    def content(self):
        g = 0
        for c, _ in self.terms:
            g = math.gcd(g, c)
        return g

    def norms(self):
        from .poly import norms
        return norms(SparsePoly._make(tuple((c, i) for i, (c, _) in enumerate(self.terms)), ZZ))

    def __eq__(self, other):
        return (isinstance(other, MultiSparsePoly) and self.nvars == other.nvars
                and self.ring == other.ring and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"MultiSparsePoly({self}, nvars={self.nvars}, ring={self.ring!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, e in reversed(self.terms):
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def _check(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            R = self.ring
            return MultiSparsePoly(self.nvars, [(R.from_int(other), (0,) * self.nvars)], R)
        if not isinstance(other, MultiSparsePoly):
            return NotImplemented
        if other.nvars != self.nvars or other.ring != self.ring:
            raise ValueError("incompatible multivariate operands")
        return other

    def __neg__(self):
        R = self.ring
        return MultiSparsePoly._make(self.nvars, tuple((R.neg(c), e) for c, e in self.terms), R)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return MultiSparsePoly(self.nvars, self.terms + other.terms, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            R = self.ring
            c = R.from_int(other)
            return MultiSparsePoly(self.nvars, [(R.mul(a, c), e) for a, e in self.terms], R)
        other = self._check(other)
        if other is NotImplemented:
            return other
        R = self.ring
        raw = []
        for a, ea in self.terms:
            for b, eb in other.terms:
                raw.append((R.mul(a, b), tuple(x + y for x, y in zip(ea, eb))))
        return MultiSparsePoly(self.nvars, raw, R)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = MultiSparsePoly._make(self.nvars, ((self.ring.one, (0,) * self.nvars),),
                                       self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def _normalize_multi(nvars, raw, ring):
    acc = {}
    for c, e in raw:
        e = tuple(e)
        if len(e) != nvars or any(x < 0 for x in e):
            raise ValueError(f"bad exponent vector {e}")
        if ring is ZZ:
            acc[e] = acc.get(e, 0) + c
        else:
            acc[e] = ring.add(acc[e], c) if e in acc else ring.add(0, c)
    return tuple((c, e) for e, c in sorted(acc.items()) if c)


# --------------------------------------------------------------------------
# substitution

def substitute_univariate(f, a, field=None, embed=None):
    """f(a_1 x, ..., a_l x) as a univariate polynomial.

    Over Z the coefficients c * prod(a_j^e_j) are computed exactly; pass a
    prime ``field`` to get the image mod p directly instead (the exact
    coefficients can be enormous). ``embed`` carries coefficients of an
    extension-field f into ``field``.
    """
    R = f.ring
    if field is None:
        if R is ZZ:
            return normalize(((c * math.prod(ai ** ei for ai, ei in zip(a, e)), sum(e))
                              for c, e in f.terms), ZZ)
        field = R
    F = field
    raw = []
    cm = embed if embed is not None else (F.from_int if R is ZZ else (lambda c: c))
    for c, e in f.terms:
        v = cm(c)
        for ai, ei in zip(a, e):
            if ei:
                v = F.mul(v, F.pow(ai, ei))
        raw.append((v, sum(e)))
    return normalize(raw, F)


class _LazySubstitution:
    """f(a x) over Z, only ever materialized modulo primes."""

    def __init__(self, f, a):
        self.f = f
        self.a = a
        self.degree = f.total_degree()
        self.h_inf = None
        one = sum(abs(c) for c, _ in f.terms)
        self.h_bits = one.bit_length() + self.degree * max(a).bit_length()

    def reduce(self, F):
        return substitute_univariate(self.f, [F.from_int(x) for x in self.a], F)


# --------------------------------------------------------------------------
# detection

def _multi_prechecks(f, r):
    """Sound necessary conditions for f = h^r."""
    if any(d % r for d in f.partial_degrees()) or any(d % r for d in f.partial_min_degrees()):
        return False, "partial degree not divisible by r"
    if f.total_degree() % r or f.min_total_degree() % r:
        return False, "total degree not divisible by r"
    R = f.ring
    for label, c in (("leading", f.leading_coefficient()), ("trailing", f.trailing_coefficient())):
        if R is ZZ:
            ok = not (c < 0 and r % 2 == 0) and integer_rth_root(abs(c), r) is not None
        else:
            n = R.order - 1
            ok = R.pow(c, n // math.gcd(n, r)) == 1
        if not ok:
            return False, f"{label} coefficient is not an r-th power"
    if R is ZZ and integer_rth_root(f.content(), r) is None:
        return False, "content is not an r-th power"
    return True, ""


def multivariate_candidates(f):
    """Primes r | total degree, bounded as in the univariate drivers."""
    n = f.total_degree()
    t = f.sparsity()
    if f.ring is ZZ:
        th = t * max(abs(c) for c, _ in f.terms)
        bound = (th * th).bit_length() - 1
    else:
        bound = t
    return _prime_divisors_below(n, bound)


def _dehomogenize(f):
    """(v, f1): f = x_l^v * f0 with f1 = f0(x_1, .., x_{l-1}, 1)."""
    v = min(e[-1] for _, e in f.terms)
    f1 = MultiSparsePoly(f.nvars - 1, [(c, e[:-1]) for c, e in f.terms], f.ring)
    return v, f1


def detect_multivariate(f, eps=DEFAULT_EPSILON, rng=None, *, seed=None, exponents=None):
    """Is the multivariate f a perfect power? Returns a DetectionReport.

    Perfect powers are always accepted. Each candidate r must survive
    K = ceil(log2(#candidates / eps)) independent substitution rounds.
    ``exponents`` restricts the candidate primes.
    """
    eps = as_fraction(eps)
    rng = rng if rng is not None else random.Random(seed)
    if f.sparsity() < 2:
        raise MonomialInputError("detection needs at least two terms")
    n = f.total_degree()
    if f.ring is not ZZ and f.ring.characteristic <= n:
        raise CharacteristicError(
            f"characteristic {f.ring.characteristic} does not exceed the total degree {n}")
    cands = multivariate_candidates(f)
    if exponents is not None:
        cands = [r for r in cands if r in set(exponents)]
    report = DetectionReport(False, None, eps, list(cands), seed=seed)
    alive = []
    for r in cands:
        ok, note = _multi_prechecks(f, r)
        if ok:
            alive.append(r)
        else:
            report.trace.append(TraceEntry("precheck", r, note=note))
    alive = _detect(f, alive, eps / max(len(cands), 1), rng, report.trace)
    if alive:
        report.verdict, report.r_found = True, min(alive)
    return report


def _detect(f, alive, eps, rng, trace):
    """Surviving candidates after the randomized tests (each at budget eps)."""
    while alive and f.nvars > 1 and f.is_homogeneous():
        v, f = _dehomogenize(f)
        trace.append(TraceEntry("substitution", 0, note=f"dehomogenized, stripped x^{v}"))
        alive = [r for r in alive if v % r == 0]
    if not alive:
        return alive
    if f.nvars == 1:
        g = f.to_univariate()
        out = []
        for r in alive:
            if g.degree() % r:
                continue
            if g.ring is ZZ:
                ok = _rth_power_z(g, r, eps, rng, trace)
            else:
                ok = _gf_prechecks(g, r)[0] and _gf_core(g, r, eps, rng, trace)
            if ok:
                out.append(r)
        return out
    n = f.total_degree()
    size = 8 * n * n + 4 * n
    rounds = max(ceil_log2_recip(eps), 1)
    setting = _gf_setting(f, size, rng) if f.ring is not ZZ else None
    for rnd in range(rounds):
        if not alive:
            break
        alive = _one_round(f, alive, size, rng, trace, rnd, setting)
    return alive


def _gf_setting(f, size, rng):
    """Field of size >= ``size`` containing the coefficients, and the embedding."""
    F = f.ring
    if F.order >= size:
        return F, None
    e = 1
    while F.order ** e < size:
        e += 1
    for _ in range(8):
        big = extension_of(F.characteristic, F.degree * e, rng, Fraction(1, 2 ** 20))
        if big is not None:
            return big, embedding(F, big, rng)
    raise RuntimeError("could not construct an extension for the sample set")


def _one_round(f, alive, size, rng, trace, rnd, setting):
    quarter = Fraction(1, 4)
    n = f.total_degree()
    if f.ring is ZZ:
        explicit = n * size.bit_length() <= EXPLICIT_SUBSTITUTION_BITS
        for _ in range(REDRAW_LIMIT):
            a = [rng.randint(1, size) for _ in range(f.nvars)]
            if not explicit:
                break
            g = substitute_univariate(f, a)
            if g.sparsity() >= 2:
                break
        else:
            raise RuntimeError("every substitution point was degenerate")
        trace.append(TraceEntry("substitution", 0, iterations=rnd, note=f"point {a}"))
        survivors = []
        for r in alive:
            if explicit:
                if g.degree() % r:
                    trace.append(TraceEntry("precheck", r, note="substituted degree not divisible"))
                    continue
                ok = _rth_power_z(g, r, quarter, rng, trace)
            else:
                ok = _rth_power_z_core(_LazySubstitution(f, a), r, quarter, rng, trace)
            if ok:
                survivors.append(r)
        return survivors
    big, embed = setting
    for _ in range(REDRAW_LIMIT):
        a = [big.random_nonzero(rng) for _ in range(f.nvars)]
        g = substitute_univariate(f, a, big, embed)
        if g.sparsity() >= 2:
            break
    else:
        raise RuntimeError("every substitution point was degenerate")
    trace.append(TraceEntry("substitution", 0, iterations=rnd, note=f"point {a}"))
    survivors = []
    for r in alive:
        if g.degree() % r or not _gf_prechecks(g, r)[0]:
            continue
        if _gf_core(g, r, quarter, rng, trace):
            survivors.append(r)
    return survivors


# --------------------------------------------------------------------------
# Kronecker substitution

def kronecker_forward(f, radices):
    """f(y, y^d1, y^(d1 d2), ...) (terms may merge)."""
    weights = [1]
    for d in radices[:-1]:
        weights.append(weights[-1] * d)
    return normalize(((c, sum(w * x for w, x in zip(weights, e))) for c, e in f.terms), f.ring)


def kronecker_inverse(fhat, radices, nvars):
    """Mixed-radix digit extraction; None if a digit is out of range."""
    out = []
    for c, e in fhat.terms:
        digits = []
        for i, d in enumerate(radices):
            if i == nvars - 1:
                digits.append(e)
                if e >= d:
                    return None
            else:
                e, rem = divmod(e, d)
                digits.append(rem)
        out.append((c, tuple(digits)))
    return MultiSparsePoly(nvars, out, fhat.ring)


def canonical_sign(h, r):
    """Over Z with even r, flip h so its Kronecker-leading term is positive."""
    if h.ring is not ZZ or r % 2 or not h.terms:
        return h
    c, _ = max(h.terms, key=lambda t: tuple(reversed(t[1])))
    return -h if c < 0 else h


def kronecker_root(f, r, **newton_kw):
    """h with h^r = f for multivariate f, or NotAPower."""
    if f.is_zero():
        return f
    degs = f.partial_degrees()
    for i, d in enumerate(degs):
        if d % r:
            raise NotAPower(f"deg in x{i + 1} is {d}, not divisible by {r}")
    radices = [d // r + 1 for d in degs]
    fhat = kronecker_forward(f, radices)
    R = f.ring
    if R is not ZZ and R.characteristic <= fhat.degree():
        raise CharacteristicError("characteristic does not exceed the substituted degree")
    hhat = compute_root_newton(fhat, r, **newton_kw).root
    h = kronecker_inverse(hhat, radices, f.nvars)
    if h is None:
        raise NotAPower("root exponents exceed the partial degree bounds")
    # certificate through an injective substitution (radix deg_i f + 1)
    wide = [d + 1 for d in degs]
    fwide = kronecker_forward(f, wide)
    if R is ZZ or R.characteristic > fwide.degree():
        ok = verify_power(fwide, kronecker_forward(h, wide), r)
    else:
        ok = h ** r == f
    if not ok:
        raise NotAPower("certificate failed")
    return canonical_sign(h, r)
