"""Lacunary univariate polynomials.

A :class:`SparsePoly` stores only its nonzero terms, as ``(coeff, exp)``
pairs in strictly increasing exponent order, together with the coefficient
ring (``ZZ`` or a finite field from :mod:`lacunary.fields`). Exponents are
Python ints, so degrees like 2**200 cost nothing extra. Every operation
returns normalized polynomials, which makes equality a tuple comparison.
"""

import heapq
from dataclasses import dataclass

from .errors import InexactDivisionError, RingMismatchError
from .fields import ZZ, PrimeField

DENSE_GUARD = 10 ** 6


@dataclass(frozen=True)
class Norms:
    one_norm: int
    inf_norm: int
    two_norm_squared: int


def _ring_kind(ring):
    if ring is ZZ:
        return "ZZ"
    if isinstance(ring, PrimeField):
        return "GFp"
    return "generic"


class SparsePoly:
    __slots__ = ("terms", "ring")

    def __init__(self, terms=(), ring=ZZ, *, _trusted=False):
        if _trusted:
            self.terms = terms
        else:
            self.terms = normalize(terms, ring).terms
        self.ring = ring

    # construction ------------------------------------------------------------
    @classmethod
    def _make(cls, terms, ring):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.ring = ring
        return obj

    @classmethod
    def from_dict(cls, mapping, ring=ZZ):
        return normalize(((c, e) for e, c in mapping.items()), ring)

    @classmethod
    def monomial(cls, coeff, exp, ring=ZZ):
        return normalize([(coeff, exp)], ring)

    @classmethod
    def constant(cls, c, ring=ZZ):
        return normalize([(c, 0)], ring)

    @classmethod
    def x(cls, ring=ZZ):
        return cls._make(((ring.one, 1),), ring)

    # basic queries --------------------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def sparsity(self):
        return len(self.terms)

    def degree(self):
        """Largest exponent, or -1 for the zero polynomial."""
        return self.terms[-1][1] if self.terms else -1

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lowest_exponent(self):
        return self.terms[0][1] if self.terms else None

    def leading_coefficient(self):
        return self.terms[-1][0] if self.terms else self.ring.zero

    def trailing_coefficient(self):
        return self.terms[0][0] if self.terms else self.ring.zero

    def coefficient(self, e):
        for c, ex in self.terms:
            if ex == e:
                return c
            if ex > e:
                break
        return self.ring.zero

    def exponents(self):
        return [e for _, e in self.terms]

    def coefficients(self):
        return [c for c, _ in self.terms]

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.terms == other.terms and self.ring == other.ring
        if isinstance(other, int):
            return self == SparsePoly.constant(other, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.terms, repr(self.ring)))

    def __repr__(self):
        return f"SparsePoly({format_poly(self)}, ring={self.ring!r})"

    def __str__(self):
        return format_poly(self)

    # arithmetic -----------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, int):
            return SparsePoly.constant(other, self.ring)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __neg__(self):
        R = self.ring
        return SparsePoly._make(tuple((R.neg(c), e) for c, e in self.terms), R)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _merge(self, other, negate=False)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _merge(self, other, negate=True)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return _merge(other, self, negate=True)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.scale(self.ring.from_int(other))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return sparse_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power")
        return power(self, e)

    def scale(self, c):
        """Multiply every coefficient by the ring element c."""
        R = self.ring
        if not c:
            return SparsePoly._make((), R)
        out = []
        for a, e in self.terms:
            v = R.mul(a, c)
            if v:
                out.append((v, e))
        return SparsePoly._make(tuple(out), R)

    def shift(self, k):
        """Multiply by x^k."""
        if k < 0:
            raise ValueError("negative shift")
        return SparsePoly._make(tuple((c, e + k) for c, e in self.terms), self.ring)

    def truncate(self, k):
        """Terms with exponent < k."""
        return truncate(self, k)

    def shift_div(self, k):
        return shift_div(self, k)

    def derivative(self):
        return derivative(self)

    def norms(self):
        return norms(self)

    def mul_truncated(self, other, bound):
        return sparse_mul(self, other, bound)

    def reduce_mod(self, field):
        """Image in field[x] of an integer polynomial (coefficients mod p)."""
        if self.ring is not ZZ:
            raise TypeError("reduce_mod expects an integer polynomial")
        out = []
        for c, e in self.terms:
            v = field.from_int(c)
            if v:
                out.append((v, e))
        return SparsePoly._make(tuple(out), field)

    def map_coefficients(self, fn, ring):
        return normalize(((fn(c), e) for c, e in self.terms), ring)

    def content(self):
        """gcd of the coefficients (integer polynomials only)."""
        from math import gcd
        g = 0
        for c, _ in self.terms:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def __call__(self, x):
        R = self.ring
        if R is ZZ:
            return sum(c * x ** e for c, e in self.terms)
        from .fields import evaluate_mod
        return evaluate_mod(self, x, R)


def normalize(raw_terms, ring=ZZ):
    """Merge equal exponents, drop zero coefficients, sort ascending."""
    acc = {}
    kind = _ring_kind(ring)
    for c, e in raw_terms:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if kind == "ZZ":
            acc[e] = acc.get(e, 0) + c
        elif kind == "GFp":
            acc[e] = (acc.get(e, 0) + c) % ring.p
        else:
            acc[e] = ring.add(acc[e], c) if e in acc else ring.add(0, c)
    terms = tuple((c, e) for e, c in sorted(acc.items()) if c)
    return SparsePoly._make(terms, ring)


def _merge(f, g, negate):
    R = f.ring
    kind = _ring_kind(R)
    a, b = f.terms, g.terms
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ca, ea = a[i]
        cb, eb = b[j]
        if ea < eb:
            out.append((ca, ea))
            i += 1
        elif eb < ea:
            out.append((R.neg(cb) if negate else cb, eb))
            j += 1
        else:
            if kind == "ZZ":
                v = ca - cb if negate else ca + cb
            else:
                v = R.sub(ca, cb) if negate else R.add(ca, cb)
            if v:
                out.append((v, ea))
            i += 1
            j += 1
    out.extend(a[i:])
    if negate:
        out.extend((R.neg(c), e) for c, e in b[j:])
    else:
        out.extend(b[j:])
    return SparsePoly._make(tuple(out), R)


def sparse_mul(f, g, bound=None):
    """Product f*g, keeping only exponents < bound when bound is given."""
    if f.ring != g.ring:
        raise RingMismatchError(f"{f.ring!r} vs {g.ring!r}")
    R = f.ring
    a, b = f.terms, g.terms
    if not a or not b:
        return SparsePoly._make((), R)
    if len(a) > len(b):
        a, b = b, a
    acc = {}
    get = acc.get
    kind = _ring_kind(R)
    if kind == "generic":
        mul, add = R.mul, R.add
        for ca, ea in a:
            for cb, eb in b:
                e = ea + eb
                if bound is not None and e >= bound:
                    break
                v = mul(ca, cb)
                acc[e] = add(acc[e], v) if e in acc else v
    else:
        for ca, ea in a:
            for cb, eb in b:
                e = ea + eb
                if bound is not None and e >= bound:
                    break
                acc[e] = get(e, 0) + ca * cb
    if kind == "GFp":
        p = R.p
        terms = tuple((c % p, e) for e, c in sorted(acc.items()) if c % p)
    else:
        terms = tuple((c, e) for e, c in sorted(acc.items()) if c)
    return SparsePoly._make(terms, R)


def power(f, e, bound=None, on_product=None):
    """f**e by repeated squaring, truncating every intermediate below x^bound.

    ``on_product`` (if given) sees every intermediate polynomial; it is how
    callers watch sparsity.
    """
    R = f.ring
    result = SparsePoly._make(((R.one, 0),), R)
    if bound is not None:
        result = truncate(result, bound)
        f = truncate(f, bound)
    if e == 0:
        return result
    base = f
    first = True
    while e:
        if e & 1:
            result = base if first else sparse_mul(result, base, bound)
            first = False
            if on_product is not None:
                on_product(result)
        e >>= 1
        if e:
            base = sparse_mul(base, base, bound)
            if on_product is not None:
                on_product(base)
    return result


def derivative(f):
    """Formal derivative; over a field the exponent is mapped into the field first."""
    R = f.ring
    out = []
    for c, e in f.terms:
        if e == 0:
            continue
        v = R.mul(c, R.from_int(e)) if R is not ZZ else c * e
        if v:
            out.append((v, e - 1))
    return SparsePoly._make(tuple(out), R)


def truncate(f, k):
    """f rem x^k."""
    terms = f.terms
    if not terms or terms[-1][1] < k:
        return f
    lo, hi = 0, len(terms)
    while lo < hi:
        mid = (lo + hi) // 2
        if terms[mid][1] < k:
            lo = mid + 1
        else:
            hi = mid
    return SparsePoly._make(terms[:lo], f.ring)


def shift_div(f, k):
    """Exact division by x^k."""
    if f.terms and f.terms[0][1] < k:
        raise InexactDivisionError(f"term x^{f.terms[0][1]} is not divisible by x^{k}")
    return SparsePoly._make(tuple((c, e - k) for c, e in f.terms), f.ring)


def norms(f):
    if f.ring is not ZZ:
        raise TypeError("norms are defined for integer polynomials only")
    one = inf = two = 0
    for c, _ in f.terms:
        a = abs(c)
        one += a
        two += a * a
        if a > inf:
            inf = a
    return Norms(one, inf, two)


def series_inverse_quotient(a, g, ell):
    """q with q*g = a (mod x^ell), computed term by term in sparse form.

    The lowest surviving term of the running remainder fixes the next
    quotient term; the work is proportional to tau(q) * tau(g). Over the
    integers each step must divide exactly, otherwise
    :class:`InexactDivisionError` is raised.
    """
    if a.ring != g.ring:
        raise RingMismatchError(f"{a.ring!r} vs {g.ring!r}")
    R = g.ring
    if not g.terms or g.terms[0][1] != 0:
        raise ZeroDivisionError("divisor needs a nonzero constant term")
    g0 = g.terms[0][0]
    gtail = [(c, e) for c, e in g.terms[1:] if e < ell]
    kind = _ring_kind(R)
    if kind == "GFp":
        p = R.p
        g0inv = pow(g0, -1, p)
    elif kind == "generic":
        g0inv = R.inv(g0)
    rem = {e: c for c, e in a.terms if e < ell}
    heap = list(rem)
    heapq.heapify(heap)
    quotient = []
    while heap:
        e = heapq.heappop(heap)
        c = rem.pop(e, None)
        if c is None:
            continue
        if kind == "ZZ":
            if not c:
                continue
            q, r = divmod(c, g0)
            if r:
                raise InexactDivisionError(f"{c} is not divisible by {g0}")
        elif kind == "GFp":
            c %= p
            if not c:
                continue
            q = c * g0inv % p
        else:
            if not c:
                continue
            q = R.mul(c, g0inv)
        quotient.append((q, e))
        for cg, eg in gtail:
            ee = e + eg
            if ee >= ell:
                break
            if kind == "generic":
                v = R.neg(R.mul(q, cg))
                old = rem.get(ee)
                if old is None:
                    rem[ee] = v
                    heapq.heappush(heap, ee)
                else:
                    rem[ee] = R.add(old, v)
            else:
                old = rem.get(ee)
                if old is None:
                    rem[ee] = -q * cg
                    heapq.heappush(heap, ee)
                else:
                    rem[ee] = old - q * cg
    if kind == "GFp":
        quotient = [(c % p, e) for c, e in quotient]
    return SparsePoly._make(tuple(quotient), R)


def dense_expand(f, guard=DENSE_GUARD):
    """Coefficient list [c_0, ..., c_deg] (empty for zero)."""
    n = f.degree()
    if n + 1 > guard:
        raise ValueError(f"degree {n} exceeds the dense guard {guard}")
    out = [f.ring.zero] * (n + 1)
    for c, e in f.terms:
        out[e] = c
    return out


def from_dense(coeffs, ring=ZZ):
    return normalize(((c, e) for e, c in enumerate(coeffs)), ring)


def format_poly(f, var="x"):
    if not f.terms:
        return "0"
    parts = []
    for c, e in reversed(f.terms):
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if mono and c == 1:
            parts.append(mono)
        elif mono and f.ring is ZZ and c == -1:
            parts.append(f"-{mono}")
        elif mono:
            parts.append(f"{c}*{mono}")
        else:
            parts.append(str(c))
    return " + ".join(parts).replace("+ -", "- ")
