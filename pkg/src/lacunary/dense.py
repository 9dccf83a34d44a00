"""Dense baseline: power-series r-th root modulo a random prime.

This is the classical approach the sparse algorithms are measured against.
f is expanded to a coefficient vector, a power-series r-th root is computed by
Newton iteration modulo a random ~20-bit prime, and the candidate is checked
by evaluating f - (b h x^(u/r))^r at a random point. Arithmetic is schoolbook
convolution on int64 arrays, so the cost grows quadratically with deg f.
"""

import random

import numpy as np

from ._numeric import as_fraction, ceil_log2_recip
from .fields import ZZ, random_prime
from .newton import integer_rth_root, verify_power
from .poly import DENSE_GUARD, dense_expand, from_dense

PRIME_LO = 1 << 20
PRIME_HI = 1 << 21


def _mul(a, b, k, p):
    """(a * b) mod x^k mod p; operands hold reduced int64 residues."""
    out = np.convolve(a[:k], b[:k])[:k]
    return out % p


def _inverse(g, k, p):
    """Power-series inverse of g (g[0] != 0) modulo x^k."""
    inv = np.zeros(1, dtype=np.int64)
    inv[0] = pow(int(g[0]), -1, p)
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        e = _mul(g, inv, prec, p)
        e = (-e) % p
        e[0] = (e[0] + 2) % p
        inv = _mul(inv, e, prec, p)
    return inv


def _pow_trunc(h, e, k, p):
    result = np.zeros(1, dtype=np.int64)
    result[0] = 1
    base = h[:k]
    while e:
        if e & 1:
            result = _mul(result, base, k, p)
        e >>= 1
        if e:
            base = _mul(base, base, k, p)
    return result


def series_root(g, r, k, p):
    """H with H(0) = 1 and H^r = g mod x^k (g[0] = 1), by Newton iteration."""
    ginv = _inverse(g, k, p)
    rinv = pow(r, -1, p)
    h = np.zeros(1, dtype=np.int64)
    h[0] = 1
    prec = 1
    while prec < k:
        prec = min(2 * prec, k)
        hr1 = _pow_trunc(h, r + 1, prec, p)
        num = _mul(h, g, prec, p) - _pad(hr1, prec)
        num %= p
        corr = _mul(num, ginv, prec, p) * rinv % p
        h = (_pad(h, prec) + corr) % p
    return h


def _pad(a, k):
    if len(a) >= k:
        return a[:k]
    out = np.zeros(k, dtype=np.int64)
    out[:len(a)] = a
    return out


def _eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + int(c)) % p
    return acc


def dense_newton_baseline(f, r, eps="1/1024", rng=None, *, guard=DENSE_GUARD):
    """(verdict, root or None) for an integer polynomial f and exponent r.

    One-sided like the sparse detector: true powers are always accepted.
    Each of ceil(log2(1/eps)) rounds picks a fresh prime and evaluation
    point. The root is returned (over Z, symmetric lift of the last image)
    only when it passes the exact certificate.
    """
    if f.ring is not ZZ:
        raise TypeError("the dense baseline works over the integers")
    if f.degree() + 1 > guard:
        raise ValueError(f"degree {f.degree()} exceeds the dense guard {guard}")
    rng = rng if rng is not None else random.Random()
    rounds = ceil_log2_recip(as_fraction(eps))
    coeffs = dense_expand(f, guard)
    n = len(coeffs) - 1
    u = next(i for i, c in enumerate(coeffs) if c)
    if u % r or (n - u) % r:
        return False, None
    f_u = coeffs[u]
    b = integer_rth_root(f_u, r)
    if b is None:
        return False, None
    s = (n - u) // r
    root_img = None
    for _ in range(max(rounds, 1)):
        p = random_prime(max(PRIME_LO, 2 * n + 3), max(PRIME_HI, 4 * n + 8), (r,), rng)
        while f_u % p == 0:
            p = random_prime(max(PRIME_LO, 2 * n + 3), max(PRIME_HI, 4 * n + 8), (r,), rng)
        g = np.array([c % p for c in coeffs[u:]], dtype=np.int64)
        g = g * pow(f_u % p, -1, p) % p
        h = series_root(g, r, s + 1, p)
        alpha = rng.randrange(p)
        lhs = _eval(coeffs, alpha, p)
        hv = b % p * _eval(h, alpha, p) % p * pow(alpha, u // r, p) % p
        if lhs != pow(hv, r, p):
            return False, None
        root_img = (h, p)
    h, p = root_img
    lifted = [(int(c) * b) % p for c in h]
    lifted = [c - p if c > p // 2 else c for c in lifted]
    cand = from_dense([0] * (u // r) + lifted)
    if r % 2 == 0 and cand.leading_coefficient() < 0:
        cand = -cand
    root = cand if verify_power(f, cand, r) else None
    return True, root
