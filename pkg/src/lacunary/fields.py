"""Prime fields, extension fields F_p[z]/(gamma), random primes and r-th power machinery.

Every field element is a plain Python ``int``:

* in :class:`PrimeField` it is the residue in ``[0, p)``;
* in :class:`ExtensionField` it is the coefficient vector of the residue
  polynomial packed into one integer, one fixed-width slot per coefficient.

The packing turns a product of residues into a single big-integer multiply,
which is what keeps evaluation of a sparse polynomial at a point of
F_{p^d} cheap. In both cases ``0`` is the zero element and ``1`` the identity,
so truthiness tests for zero work everywhere.

Extension fields are always built directly over a prime field. A ground
field F_q with q = p^d0 is reached by building the big field over F_p and
embedding F_q through a root of its defining polynomial (see
:func:`embedding`), which avoids towers of extensions.
"""

import itertools
import math
import random

import gmpy2

from ._numeric import as_fraction, ceil_log2_recip
from .errors import PrimeSamplingError


class _IntegerRing:
    """The integers as a coefficient ring."""

    characteristic = 0
    zero = 0
    one = 1
    is_field = False

    def from_int(self, n):
        return n

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def exact_div(self, a, b):
        q, rem = divmod(a, b)
        if rem:
            from .errors import InexactDivisionError
            raise InexactDivisionError(f"{a} is not divisible by {b}")
        return q

    def __repr__(self):
        return "ZZ"

    def __reduce__(self):
        return (_integer_ring, ())


def _integer_ring():
    return ZZ


ZZ = _IntegerRing()


# --------------------------------------------------------------------------
# primality and random primes

def _small_primes(bound):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i, flag in enumerate(sieve) if flag]


_SMALL_PRIMES = _small_primes(1000)


def primes_up_to(bound):
    """All primes <= bound (a plain sieve; bounds here are tiny)."""
    if bound < 2:
        return []
    return _small_primes(int(bound))


def is_probable_prime(n, rounds=64):
    """Miller-Rabin with ``rounds`` random bases.

    The witnesses come from a generator seeded by ``n`` itself so that the
    answer is reproducible and callers' random streams are left untouched.
    """
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n == sp:
            return True
        if n % sp == 0:
            return False
    if n < 1_000_000:
        return True
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    rng = random.Random(n)
    for _ in range(rounds):
        x = pow(rng.randrange(2, n - 1), d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(lo, hi, exclude=(), rng=None, *, congruent=None, budget=None):
    """Uniformly sample a probable prime in ``[lo, hi]`` outside ``exclude``.

    ``congruent=(a, m)`` restricts the draw to primes p = a (mod m). Narrow
    ranges are enumerated exhaustively; wide ones use rejection sampling with
    a bounded number of candidates. Raises :class:`PrimeSamplingError` when
    nothing admissible turns up.
    """
    rng = rng if rng is not None else random.Random()
    exclude = frozenset(exclude)
    if congruent is None:
        residue, modulus = (1, 2) if lo > 2 else (0, 1)
    else:
        residue, modulus = congruent
        residue %= modulus
    if hi < lo:
        raise PrimeSamplingError(f"empty range [{lo}, {hi}]")
    kmin = -((residue - lo) // modulus)
    kmax = (hi - residue) // modulus
    if kmax < kmin:
        raise PrimeSamplingError(f"no candidates in [{lo}, {hi}]")
    count = kmax - kmin + 1
    if count <= 4096:
        pool = [residue + k * modulus for k in range(kmin, kmax + 1)]
        pool = [c for c in pool if c not in exclude and is_probable_prime(c)]
        if not pool:
            raise PrimeSamplingError(f"no admissible prime in [{lo}, {hi}]")
        return rng.choice(pool)
    if budget is None:
        budget = 200 * max(hi.bit_length(), 8)
    for _ in range(budget):
        c = residue + modulus * rng.randint(kmin, kmax)
        if c not in exclude and is_probable_prime(c):
            return c
    raise PrimeSamplingError(
        f"sampling budget of {budget} candidates exhausted in [{lo}, {hi}]")


# --------------------------------------------------------------------------
# fields

class FiniteField:
    """Behaviour shared by prime and extension fields."""

    is_field = True
    zero = 0
    one = 1

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if a:
                return a

    def is_rth_power(self, a, r):
        return rth_power_residue(self, a, r)

    def rth_root(self, a, r, rng=None):
        return rth_root_in_field(self, a, r, rng)

    def exact_div(self, a, b):
        return self.mul(a, self.inv(b))


class PrimeField(FiniteField):
    """F_p for an arbitrary-precision prime p."""

    degree = 1

    def __init__(self, p, check=True):
        if check and not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def scale(self, c, a):
        return c * a % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return range(self.p)

    def to_coeffs(self, a):
        return [a]

    def from_coeffs(self, coeffs):
        return coeffs[0] % self.p if coeffs else 0

    def encode(self, a):
        return a

    def decode(self, n):
        return n % self.p


class ExtensionField(FiniteField):
    """F_p[z]/(modulus) with packed-integer elements.

    ``modulus`` lists the coefficients of a monic polynomial from the constant
    term up. With ``check=False`` the irreducibility test is skipped and the
    object is merely the quotient ring, which :func:`is_irreducible` uses for
    its own powering.
    """

    def __init__(self, p, modulus, check=True):
        modulus = [c % p for c in modulus]
        while modulus and not modulus[-1]:
            modulus.pop()
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if check and not is_irreducible(p, modulus):
            raise ValueError(f"modulus {modulus} is reducible over GF({p})")
        d = len(modulus) - 1
        self.p = p
        self.characteristic = p
        self.modulus = tuple(modulus)
        self.degree = d
        self.order = p ** d
        width = 2 * p.bit_length() + 40
        self._width = width
        # the hot loops run on gmpy2 integers, which is markedly faster here
        self._pz = gmpy2.mpz(p)
        self._mask = gmpy2.mpz((1 << width) - 1)
        self._low = gmpy2.mpz((1 << (width * d)) - 1)
        self._top = width * d
        # z^k mod modulus for k = d .. 2d-2, packed
        rows = []
        cur = [0] * (d - 1) + [1]
        for _ in range(d, 2 * d - 1):
            top = cur[-1]
            cur = [0] + cur[:-1]
            cur = [(c - top * g) % p for c, g in zip(cur, modulus)]
            rows.append(self._pack(cur))
        self._rows = tuple(gmpy2.mpz(r) for r in rows)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.p == self.p
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("GF", self.p, self.modulus))

    # packing -------------------------------------------------------------
    def _pack(self, coeffs):
        w = self._width
        out = gmpy2.mpz(0)
        for i, c in enumerate(coeffs):
            if c:
                out |= gmpy2.mpz(c) << (w * i)
        return out

    def _normalize(self, x):
        w, mask, p = self._width, self._mask, self._pz
        out = 0
        shift = 0
        while x:
            c = (x & mask) % p
            if c:
                out |= c << shift
            x >>= w
            shift += w
        return out

    def to_coeffs(self, a):
        w, mask = self._width, self._mask
        return [int((a >> (w * i)) & mask) for i in range(self.degree)]

    def from_coeffs(self, coeffs):
        if len(coeffs) > self.degree:
            # reduce a longer polynomial modulo the modulus first
            from .densepoly import poly_divmod
            _, coeffs = poly_divmod(PrimeField(self.p, check=False),
                                    [c % self.p for c in coeffs], list(self.modulus))
        return self._pack([c % self.p for c in coeffs])

    def encode(self, a):
        """Integer encoding sum(c_j p^j), used by the text file format."""
        p = self.p
        out = 0
        for c in reversed(self.to_coeffs(a)):
            out = out * p + c
        return out

    def decode(self, n):
        if not 0 <= n < self.order:
            n %= self.order
        coeffs = []
        for _ in range(self.degree):
            n, c = divmod(n, self.p)
            coeffs.append(c)
        return self._pack(coeffs)

    # arithmetic ------------------------------------------------------------
    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return self._normalize(a + b)

    def neg(self, a):
        w, mask, p = self._width, self._mask, self._pz
        out = 0
        shift = 0
        while a:
            c = a & mask
            if c:
                out |= (p - c) << shift
            a >>= w
            shift += w
        return out

    def sub(self, a, b):
        return self._normalize(a + self.neg(b))

    def scale(self, c, a):
        """Multiply by an element of the prime subfield given as an int."""
        return self._normalize((c % self.p) * a)

    def mul(self, a, b):
        if not a or not b:
            return 0
        prod = a * b
        low = prod & self._low
        prod >>= self._top
        if prod:
            w, mask, p = self._width, self._mask, self._pz
            for row in self._rows:
                c = (prod & mask) % p
                if c:
                    low += c * row
                prod >>= w
                if not prod:
                    break
        return self._normalize(low)

    def _raw_pow(self, a, e):
        # left-to-right fixed-window exponentiation; valid in the quotient ring
        if e == 0:
            return 1
        w = 1 if e.bit_length() < 16 else 4
        table = [1, a]
        for _ in range((1 << w) - 2):
            table.append(self.mul(table[-1], a))
        digits = []
        mask = (1 << w) - 1
        while e:
            digits.append(e & mask)
            e >>= w
        acc = table[digits[-1]]
        for dgt in reversed(digits[:-1]):
            for _ in range(w):
                acc = self.mul(acc, acc)
            if dgt:
                acc = self.mul(acc, table[dgt])
        return acc

    def pow(self, a, e):
        if e == 0:
            return 1
        if not a:
            return 0
        e %= self.order - 1
        if e == 0:
            return 1
        return self._raw_pow(a, e)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._raw_pow(a, self.order - 2)

    def random(self, rng):
        p = self.p
        return self._pack([rng.randrange(p) for _ in range(self.degree)])

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.degree):
            yield self._pack(coeffs)

    def generator_z(self):
        """The class of z itself."""
        if self.degree == 1:
            return (-self.modulus[0]) % self.p
        return 1 << self._width


# --------------------------------------------------------------------------
# irreducible polynomials

def is_irreducible(p, modulus):
    """Ben-Or test: gcd(Gamma, z^(p^k) - z) = 1 for every k <= d/2."""
    from .densepoly import poly_gcd
    modulus = [c % p for c in modulus]
    while modulus and not modulus[-1]:
        modulus.pop()
    d = len(modulus) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if modulus[0] == 0:
        return False
    ring = ExtensionField(p, modulus, check=False)
    base = PrimeField(p, check=False)
    monic = [c * pow(modulus[-1], -1, p) % p for c in modulus]
    z = ring.generator_z()
    x = z
    for _ in range(d // 2):
        x = ring._raw_pow(x, p)
        diff = ring.to_coeffs(x)
        diff[1] = (diff[1] - 1) % p
        g = poly_gcd(base, monic, diff)
        if len(g) > 1:
            return False
    return True


def find_irreducible(q, d, eps_half=None, rng=None):
    """Random monic irreducible of degree d over F_q (q prime), or None.

    Candidates are drawn uniformly and certified with :func:`is_irreducible`.
    At most ``ceil(d * (1 + ceil(log2(1/eps_half))))`` candidates are tried,
    so the procedure always halts; ``None`` signals the (rare) failure.
    """
    p = q.p if isinstance(q, PrimeField) else q
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return [0, 1]
    rng = rng if rng is not None else random.Random()
    eps_half = as_fraction(eps_half if eps_half is not None else "1/4")
    cap = d * (1 + ceil_log2_recip(eps_half))
    for _ in range(cap):
        cand = [rng.randrange(p) for _ in range(d)] + [1]
        if is_irreducible(p, cand):
            return cand
    return None


# --------------------------------------------------------------------------
# r-th powers

def rth_power_residue(field, a, r):
    """True iff a is an r-th power in ``field``, via a^((order-1)/r) == 1."""
    n = field.order - 1
    if n % r:
        raise ValueError(f"{r} does not divide the group order {n}")
    if not a:
        raise ValueError("zero has no residue character")
    return field.pow(a, n // r) == 1


def rth_root_in_field(field, a, r, rng=None):
    """Some b with b^r == a, or None when a is not an r-th power.

    Uses a direct exponent when gcd(r, order-1) = 1, otherwise extracts a
    root of y^r - a by equal-degree splitting. Las Vegas: the returned value
    is always checked by powering.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if not a:
        return 0
    n = field.order - 1
    g = math.gcd(r, n)
    if g == 1:
        b = field.pow(a, pow(r, -1, n))
    else:
        if field.pow(a, n // g) != 1:
            return None
        from .densepoly import find_root
        rng = rng if rng is not None else random.Random(0x5EED ^ a)
        target = [field.neg(a)] + [0] * (r - 1) + [1]
        b = find_root(field, target, rng)
        if b is None:
            return None
    if field.pow(b, r) != a:
        raise AssertionError("root extraction produced a wrong value")
    return b


# --------------------------------------------------------------------------
# evaluation

def coefficient_map(source_ring, field, embed=None):
    """Function carrying coefficients of ``source_ring`` into ``field``."""
    if embed is not None:
        return embed
    if source_ring is ZZ or source_ring == field:
        return field.from_int if source_ring is ZZ else (lambda c: c)
    if isinstance(source_ring, PrimeField) and source_ring.p == field.characteristic:
        return lambda c: c
    raise TypeError(f"no coefficient map from {source_ring!r} to {field!r}")


def _window_width(bits, count):
    best, best_cost = 1, None
    for w in range(1, 9):
        cost = -(-bits // w) * ((1 << w) + count)
        if best_cost is None or cost < best_cost:
            best, best_cost = w, cost
    return best


def evaluate_mod(f, alpha, field, embed=None):
    """Evaluate a sparse polynomial at ``alpha`` in ``field``.

    Coefficients are reduced into the field (integers mod p, or through
    ``embed`` for a subfield); exponents are reduced modulo order - 1 when
    alpha is nonzero. Over extension fields all powers share one windowed
    table of alpha^(digit * 2^(w j)).
    """
    cmap = coefficient_map(f.ring, field, embed)
    terms = f.terms
    if not terms:
        return 0
    if not alpha:
        c, e = terms[0]
        return cmap(c) if e == 0 else 0
    n = field.order - 1
    if isinstance(field, PrimeField):
        p = field.p
        total = 0
        for c, e in terms:
            total += cmap(c) * pow(alpha, e % n, p)
        return total % p
    scalar = embed is None and (f.ring is ZZ or isinstance(f.ring, PrimeField))
    exps = [e % n for _, e in terms]
    bits = max(exps).bit_length()
    w = _window_width(bits, len(terms))
    mul = field.mul
    tables = []
    base = alpha
    for _ in range(-(-bits // w) or 1):
        row = [1, base]
        for _ in range((1 << w) - 2):
            row.append(mul(row[-1], base))
        tables.append(row)
        base = mul(row[-1], base)
    dmask = (1 << w) - 1
    acc = 0
    for (c, _), e in zip(terms, exps):
        v = None
        j = 0
        while e:
            dgt = e & dmask
            if dgt:
                v = tables[j][dgt] if v is None else mul(v, tables[j][dgt])
            e >>= w
            j += 1
        if v is None:
            v = 1
        c = cmap(c)
        acc += c * v if scalar else mul(c, v)
    return field._normalize(acc)


# --------------------------------------------------------------------------
# building and embedding fields

def extension_of(p, degree, rng, eps_half="1/4"):
    """A field of order p^degree with a freshly sampled modulus, or None on failure."""
    if degree == 1:
        return PrimeField(p, check=False)
    modulus = find_irreducible(p, degree, eps_half, rng)
    if modulus is None:
        return None
    return ExtensionField(p, modulus, check=False)


def embedding(src, dst, rng=None):
    """Field homomorphism src -> dst for src a subfield (by degree) of dst."""
    if src.characteristic != dst.characteristic or dst.degree % src.degree:
        raise ValueError(f"{src!r} does not embed in {dst!r}")
    if isinstance(src, PrimeField):
        return lambda c: c
    from .densepoly import find_root
    rng = rng if rng is not None else random.Random(0xE3BED)
    beta = find_root(dst, [dst.from_int(c) for c in src.modulus], rng)
    if beta is None:
        raise AssertionError("defining polynomial has no root in the extension")
    images = [1]
    for _ in range(src.degree - 1):
        images.append(dst.mul(images[-1], beta))

    def embed(c):
        acc = 0
        for coeff, img in zip(src.to_coeffs(c), images):
            if coeff:
                acc = dst.add(acc, dst.scale(coeff, img))
        return acc

    return embed
