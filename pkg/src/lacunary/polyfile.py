"""Plain-text polynomial files.

::

    #lacunary 1
    #ring Z                      (or: GF p   or: GF p^d g0 g1 ... gd)
    #vars 1
    #scale 6                     (optional; body = scale * original polynomial)
    1 0
    -3 5
    2 40

One term per line: the coefficient, then one exponent per variable. Terms are
listed in increasing exponent order (lexicographic for several variables),
with no zero coefficients and no repeated exponents. Extension-field
coefficients are written as integers sum(c_j p^j). Lines starting with "# "
are comments. Over Z the body may use rationals "a/b"; they are cleared to
integers and the multiplier is recorded in ``#scale``.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PolyFileError
from .fields import ZZ, ExtensionField, PrimeField
from .multivar import MultiSparsePoly
from .poly import SparsePoly

FORMAT_VERSION = 1


@dataclass
class PolyFile:
    poly: object                # SparsePoly or MultiSparsePoly
    scale: int = 1

    @property
    def nvars(self):
        return self.poly.nvars if isinstance(self.poly, MultiSparsePoly) else 1

    @property
    def ring(self):
        return self.poly.ring


def ring_descriptor(ring):
    if ring is ZZ:
        return "Z"
    if isinstance(ring, PrimeField):
        return f"GF {ring.p}"
    return f"GF {ring.p}^{ring.degree} " + " ".join(str(c) for c in ring.modulus)


def parse_ring(text, line=None):
    parts = text.split()
    try:
        if parts == ["Z"]:
            return ZZ
        if len(parts) >= 2 and parts[0] == "GF":
            if "^" in parts[1]:
                p, d = (int(x) for x in parts[1].split("^"))
                modulus = [int(x) for x in parts[2:]]
                if len(modulus) != d + 1:
                    raise PolyFileError(f"GF {p}^{d} needs {d + 1} modulus coefficients", line)
                return ExtensionField(p, modulus)
            if len(parts) != 2:
                raise PolyFileError("trailing data after the prime", line)
            return PrimeField(int(parts[1]))
        if len(parts) == 1 and parts[0].startswith("GF:"):
            return PrimeField(int(parts[0][3:]))
    except PolyFileError:
        raise
    except ValueError as exc:
        raise PolyFileError(f"bad ring descriptor {text!r}: {exc}", line) from None
    raise PolyFileError(f"unknown ring descriptor {text!r}", line)


def _decode_coeff(ring, token, lineno):
    if ring is ZZ:
        try:
            return Fraction(token) if "/" in token else int(token)
        except (ValueError, ZeroDivisionError):
            raise PolyFileError(f"bad coefficient {token!r}", lineno) from None
    try:
        v = int(token)
    except ValueError:
        raise PolyFileError(f"bad coefficient {token!r}", lineno) from None
    if not 0 <= v < ring.order:
        raise PolyFileError(f"coefficient {v} out of range [0, {ring.order})", lineno)
    return ring.decode(v)


def parses(text):
    """Parse file contents into a :class:`PolyFile`."""
    ring = ZZ
    nvars = None
    scale = 1
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("# ") or line == "#":
            continue
        if line.startswith("#"):
            key, _, rest = line[1:].partition(" ")
            rest = rest.strip()
            if body:
                raise PolyFileError("header line after the body", lineno)
            if key == "lacunary":
                if rest != str(FORMAT_VERSION):
                    raise PolyFileError(f"unsupported format version {rest!r}", lineno)
            elif key == "ring":
                ring = parse_ring(rest, lineno)
            elif key == "vars":
                try:
                    nvars = int(rest)
                except ValueError:
                    raise PolyFileError(f"bad variable count {rest!r}", lineno) from None
                if nvars < 1:
                    raise PolyFileError("variable count must be positive", lineno)
            elif key == "scale":
                try:
                    scale = int(rest)
                except ValueError:
                    raise PolyFileError(f"bad scale {rest!r}", lineno) from None
                if scale < 1:
                    raise PolyFileError("scale must be positive", lineno)
            else:
                raise PolyFileError(f"unknown header #{key}", lineno)
            continue
        fields = line.split()
        if nvars is None:
            nvars = len(fields) - 1
            if nvars < 1:
                raise PolyFileError("a term needs a coefficient and an exponent", lineno)
        if len(fields) != nvars + 1:
            raise PolyFileError(f"expected {nvars + 1} fields, got {len(fields)}", lineno)
        coeff = _decode_coeff(ring, fields[0], lineno)
        try:
            exps = tuple(int(x) for x in fields[1:])
        except ValueError:
            raise PolyFileError("exponents must be integers", lineno) from None
        if any(e < 0 for e in exps):
            raise PolyFileError("negative exponent", lineno)
        if not coeff:
            raise PolyFileError("zero coefficient", lineno)
        if body:
            prev = body[-1][1]
            if exps == prev:
                raise PolyFileError(f"duplicate exponent {exps}", lineno)
            if exps < prev:
                raise PolyFileError("terms are not in increasing exponent order", lineno)
        body.append((coeff, exps, lineno))
    if nvars is None:
        nvars = 1
    if ring is ZZ:
        denoms = [c.denominator for c, _, _ in body if isinstance(c, Fraction)]
        if denoms:
            mult = math.lcm(*denoms)
            scale *= mult
            body = [(int(c * mult), e, ln) for c, e, ln in body]
    terms = [(c, e) for c, e, _ in body]
    if nvars == 1:
        poly = SparsePoly._make(tuple((c, e[0]) for c, e in terms), ring)
    else:
        poly = MultiSparsePoly._make(nvars, tuple(terms), ring)
    return PolyFile(poly, scale)


def read(path):
    with open(path, encoding="utf-8") as fh:
        return parses(fh.read())


def dumps(pf):
    """Canonical text for a PolyFile (or a bare polynomial)."""
    if not isinstance(pf, PolyFile):
        pf = PolyFile(pf)
    poly = pf.poly
    ring = poly.ring
    lines = [f"#lacunary {FORMAT_VERSION}", f"#ring {ring_descriptor(ring)}", f"#vars {pf.nvars}"]
    if pf.scale != 1:
        lines.append(f"#scale {pf.scale}")
    enc = (lambda c: c) if ring is ZZ else ring.encode
    if isinstance(poly, MultiSparsePoly):
        for c, e in poly.terms:
            lines.append(" ".join([str(enc(c))] + [str(x) for x in e]))
    else:
        for c, e in poly.terms:
            lines.append(f"{enc(c)} {e}")
    return "\n".join(lines) + "\n"


def write(path, pf):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(pf))
