"""Exact integer helpers for logarithmic bounds and failure budgets."""

from contextlib import contextmanager
from fractions import Fraction

import mpmath
from mpmath import iv


def as_fraction(eps):
    """Coerce a failure budget (float, int, str or Fraction) to a Fraction in (0, 1]."""
    if isinstance(eps, str):
        eps = eps.strip()
        if "^" in eps:
            # accepts "2^-20" style budgets
            base, exp = eps.split("^", 1)
            eps = Fraction(int(base)) ** int(exp)
    value = Fraction(eps)
    if not 0 < value <= 1:
        raise ValueError(f"failure probability must lie in (0, 1], got {eps!r}")
    return value


def ceil_log2_recip(eps):
    """Smallest integer L >= 0 with 2**L >= 1/eps."""
    eps = as_fraction(eps)
    num, den = eps.numerator, eps.denominator
    L = max(den.bit_length() - num.bit_length() - 1, 0)
    while (num << L) < den:
        L += 1
    return L


def floor_log2(n):
    if n <= 0:
        raise ValueError("floor_log2 of a non-positive number")
    return n.bit_length() - 1


def ceil_log2(n):
    if n <= 0:
        raise ValueError("ceil_log2 of a non-positive number")
    return (n - 1).bit_length()


@contextmanager
def _ivprec(prec):
    saved = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = saved


def _interval(x):
    return iv.mpf(x)


def ceil_of_log_sum(pairs, base=2, min_prec=64):
    """Exact ceiling of sum(a * log_base(b)) over integer pairs (a, b).

    The sum is enclosed with outward-rounded interval arithmetic; precision is
    raised until both interval endpoints share the same ceiling. When every
    ``b`` is an exact power of ``base`` the sum is computed in integers.
    """
    if base == 2 and all(b > 0 and b & (b - 1) == 0 for _, b in pairs):
        return sum(a * (b.bit_length() - 1) for a, b in pairs)
    magnitude = sum(abs(a).bit_length() + b.bit_length().bit_length() for a, b in pairs)
    prec = max(min_prec, 2 * magnitude + 32)
    for _ in range(12):
        with _ivprec(prec):
            total = _interval(0)
            for a, b in pairs:
                lg = iv.log(_interval(b))
                if base == 2:
                    lg = lg / iv.log(_interval(2))
                total += _interval(a) * lg
            lo = _ceil_mpf(total.a)
            hi = _ceil_mpf(total.b)
        if lo == hi:
            return hi
        prec *= 2
    # interval never tightened: the value sits on an integer; the upper ceiling is safe
    return hi


def _ceil_mpf(x):
    return int(mpmath.ceil(x))


def ceil_mul_ln(coef, x, min_prec=64):
    """Ceiling of coef * ln(x), rounded up when the enclosure straddles an integer."""
    if x == 1 or coef == 0:
        return 0
    prec = max(min_prec, 2 * (coef.bit_length() + x.bit_length()) + 32)
    with _ivprec(prec):
        val = _interval(coef) * iv.log(_interval(x))
        lo, hi = _ceil_mpf(val.a), _ceil_mpf(val.b)
    # overshooting by one is harmless (a few more candidate primes)
    return hi if lo != hi else lo
