"""Small dense univariate polynomial routines over a finite field.

Polynomials are lists of field elements, constant term first, with no
trailing zeros (the zero polynomial is ``[]``). Degrees here are tiny: the
modulus of an extension field, or y^r - a when extracting r-th roots.
"""


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def poly_sub(F, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    for i, c in enumerate(b):
        a[i] = F.sub(a[i], c)
    return trim(a)


def poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(out)


def poly_divmod(F, a, b):
    """Quotient and remainder of a by a nonzero b."""
    b = trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = F.mul(c, inv_lead)
        q[i - db] = c
        base = i - db
        for j in range(db):
            if b[j]:
                a[base + j] = F.sub(a[base + j], F.mul(c, b[j]))
        a[i] = 0
    return trim(q), trim(a[:db])


def poly_rem(F, a, b):
    return poly_divmod(F, a, b)[1]


def poly_monic(F, a):
    if not a:
        return []
    inv = F.inv(a[-1])
    return [F.mul(c, inv) for c in a]


def poly_gcd(F, a, b):
    """Monic gcd."""
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, poly_rem(F, a, b)
    return poly_monic(F, a)


def poly_mulmod(F, a, b, m):
    return poly_rem(F, poly_mul(F, a, b), m)


def poly_powmod(F, a, e, m):
    result = [1]
    a = poly_rem(F, a, m)
    while e:
        if e & 1:
            result = poly_mulmod(F, result, a, m)
        e >>= 1
        if e:
            a = poly_mulmod(F, a, a, m)
    return result


def poly_eval(F, a, x):
    acc = 0
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _split(F, g, rng):
    """A proper monic factor of g, a product of distinct linear factors."""
    d = len(g) - 1
    if F.characteristic == 2:
        k = F.order.bit_length() - 1
        while True:
            delta = F.random(rng)
            t = [0, delta]
            acc = list(t)
            for _ in range(k - 1):
                t = poly_mulmod(F, t, t, g)
                acc = poly_sub(F, acc, [F.neg(c) for c in t])
            h = poly_gcd(F, g, acc)
            if 0 < len(h) - 1 < d:
                return h
    half = (F.order - 1) // 2
    while True:
        delta = F.random(rng)
        t = poly_powmod(F, [delta, 1], half, g)
        h = poly_gcd(F, g, poly_sub(F, t, [1]))
        if 0 < len(h) - 1 < d:
            return h


def find_root(F, a, rng):
    """Some root of a in F, or None if a has none.

    gcd(a, y^q - y) isolates the product of the distinct linear factors;
    random equal-degree splitting (Cantor-Zassenhaus) then peels one off.
    """
    a = poly_monic(F, trim(list(a)))
    if len(a) < 2:
        return None
    if not a[0]:
        return 0
    yq = poly_powmod(F, [0, 1], F.order, a)
    g = poly_gcd(F, a, poly_sub(F, yq, [0, 1]))
    if len(g) < 2:
        return None
    while len(g) > 2:
        h = _split(F, g, rng)
        if 2 * (len(h) - 1) > len(g) - 1:
            h = poly_divmod(F, g, h)[0]
            h = poly_monic(F, h)
        g = h
    return F.neg(g[0])
