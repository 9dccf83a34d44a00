"""Command line interface.

Exit codes: 0 = perfect power / success, 1 = not a perfect power,
2 = error, 3 = ``root`` found the input is not an r-th power.
"""

import argparse
import csv
import json
import math
import os
import random
import sys
from dataclasses import asdict, fields
from pathlib import Path

from . import bench, polyfile
from ._numeric import as_fraction
from .detect import (DEFAULT_EPSILON, is_perfect_power_gf, is_perfect_power_z,
                     is_perfect_rth_power_gf, is_perfect_rth_power_z)
from .errors import LacunaryError, NotAPower
from .fields import ZZ, PrimeField
from .generate import generate, generate_multivariate
from .multivar import MultiSparsePoly, detect_multivariate, kronecker_root
from .poly import SparsePoly
from .newton import ConjectureRecord, compute_root_newton, conjecture_scan

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_NOT_A_POWER = 0, 1, 2, 3


def resolve_seed(seed):
    env = os.environ.get("LACUNARY_SEED")
    if env is not None and env.strip():
        return int(env)
    return seed


def _detect(pf, r, eps, seed, fast_path):
    f = pf.poly
    rng = random.Random(seed)
    if isinstance(f, MultiSparsePoly):
        return detect_multivariate(f, eps, rng, seed=seed,
                                   exponents=None if r is None else [r])
    if f.ring is ZZ:
        if r is None:
            return is_perfect_power_z(f, eps, rng, seed=seed, fast_path=fast_path)
        return is_perfect_rth_power_z(f, r, eps, rng, seed=seed, fast_path=fast_path)
    if r is None:
        return is_perfect_power_gf(f, eps, rng, seed=seed)
    return is_perfect_rth_power_gf(f, r, eps, rng, seed=seed)


def cmd_detect(args):
    pf = polyfile.read(args.file)
    seed = resolve_seed(args.seed)
    rep = _detect(pf, args.r, as_fraction(args.epsilon), seed, args.fast_path)
    if args.json:
        print(rep.to_json(indent=2 if args.pretty else None))
    else:
        if rep.verdict:
            print(f"perfect power: r = {rep.r_found} (eps = {rep.epsilon})")
        else:
            print(f"not a perfect power (eps = {rep.epsilon})")
    return EXIT_TRUE if rep.verdict else EXIT_FALSE


def _scaled_input(pf, r):
    """Integral polynomial whose r-th root is (scale * original root)."""
    f = pf.poly
    if pf.scale == 1:
        return f
    c = pf.scale ** (r - 1)
    return _map_terms(f, lambda a: a * c)


def _map_terms(f, fn):
    terms = tuple((fn(a), e) for a, e in f.terms)
    if isinstance(f, MultiSparsePoly):
        return MultiSparsePoly._make(f.nvars, terms, f.ring)
    return SparsePoly._make(terms, f.ring)


def cmd_root(args):
    pf = polyfile.read(args.file)
    seed = resolve_seed(args.seed)
    f = _scaled_input(pf, args.r)
    try:
        if isinstance(f, MultiSparsePoly):
            h = kronecker_root(f, args.r, rng=random.Random(seed))
            diag = {}
        else:
            res = compute_root_newton(f, args.r, rng=random.Random(seed))
            h, diag = res.root, res.diagnostics()
    except NotAPower as exc:
        print(f"not an r-th power: {exc.reason}", file=sys.stderr)
        return EXIT_NOT_A_POWER
    scale = pf.scale
    if scale != 1:
        # keep the output in lowest terms
        g = math.gcd(scale, h.content())
        if g > 1:
            h = _map_terms(h, lambda c: c // g)
            scale //= g
    text = polyfile.dumps(polyfile.PolyFile(h, scale))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    diag.pop("iterations", None)
    status = {"certified": True, "r": args.r, **diag}
    print(json.dumps(status), file=sys.stderr)
    return EXIT_TRUE


def _parse_ring(text):
    if text in ("Z", "ZZ"):
        return ZZ
    if text.upper().startswith("GF:"):
        return PrimeField(int(text[3:]))
    raise argparse.ArgumentTypeError(f"ring must be Z or GF:p, got {text!r}")


def cmd_gen(args):
    seed = resolve_seed(args.seed)
    ring = args.ring
    bound = (1 << args.coeff_bits) - 1
    if args.vars > 1:
        inst = generate_multivariate(args.terms, args.vars, args.degree, bound, args.power,
                                     ring, seed)
    else:
        inst = generate(args.terms, args.degree, bound, args.power, ring, seed,
                        exact_degree=args.exact_degree)
    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    polyfile.write(f"{prefix}.h.sp", inst.h)
    polyfile.write(f"{prefix}.f.sp", inst.f)
    meta = inst.metadata()
    meta["ring"] = polyfile.ring_descriptor(ring)
    Path(f"{prefix}.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    if inst.h.sparsity() == 1:
        print("warning: monomial instance; the detectors reject monomials", file=sys.stderr)
    print(f"{prefix}.f.sp: {meta['tau_f']} terms")
    return EXIT_TRUE


def _png_for(csv_path):
    return str(Path(csv_path).with_suffix(".png"))


def cmd_bench(args):
    seed = resolve_seed(args.seed)
    if seed is None:
        seed = 0
    alg = {"sparse": bench.SPARSE_DETECT, "dense": bench.DENSE_BASELINE,
           "root": bench.SPARSE_ROOT}[args.mode]
    if args.sweep == "degree":
        if args.degrees:
            degrees = [int(eval_pow(d)) for d in args.degrees]
        elif args.mode == "dense":
            degrees = [1 << k for k in range(10, 15)]
        else:
            degrees = [1 << k for k in range(20, 41, 5)]
        records = bench.sweep(alg, degrees, sparsity=args.sparsity, r=args.power,
                              coeff_bits=args.coeff_bits, trials=args.trials, seed=seed,
                              eps=args.epsilon)
        xkey = "degree"
    else:
        taus = args.taus or [2, 4, 6, 8, 10, 14]
        degree = eval_pow(args.degrees[0]) if args.degrees else (
            1 << 12 if args.mode == "dense" else 1 << 30)
        records = bench.sparsity_sweep(alg, degree, taus, r=args.power,
                                       coeff_bits=args.coeff_bits, trials=args.trials,
                                       seed=seed, eps=args.epsilon)
        xkey = "sparsity"
    bench.write_csv(records, args.csv)
    from .plotting import plot_bench
    plot_bench(records, _png_for(args.csv), xkey=xkey)
    for (name, x), t in bench.medians(records, xkey).items():
        print(f"{name}\t{xkey}={x}\tmedian={t:.4f}s")
    return EXIT_TRUE


def eval_pow(text):
    """Integer from '1048576' or '2^20'."""
    text = str(text)
    if "^" in text:
        b, e = text.split("^", 1)
        return int(b) ** int(e)
    return int(text)


CONJ_FIELDS = [f.name for f in fields(ConjectureRecord)]


def cmd_conjecture(args):
    seed = resolve_seed(args.seed)
    records = conjecture_scan(args.trials, (2, args.max_terms), (1, args.max_degree),
                              (2, args.max_power), args.ring, seed=seed,
                              lemma=not args.no_lemma)
    with open(args.csv, "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CONJ_FIELDS)
        w.writeheader()
        for rec in records:
            w.writerow(asdict(rec))
    from .plotting import plot_conjecture
    plot_conjecture(records, _png_for(args.csv))
    violations = [rec for rec in records if rec.violated]
    checked = sum(1 for rec in records if not rec.degenerate)
    print(f"{checked} comparisons, {len(violations)} violations")
    for rec in violations:
        print(f"violation: trial {rec.trial} r={rec.r} i={rec.i} lhs={rec.lhs} rhs={rec.rhs}")
    return EXIT_TRUE


def build_parser():
    ap = argparse.ArgumentParser(prog="lacunary",
                                 description="Perfect powers of lacunary polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="decide whether a polynomial file is a perfect power")
    p.add_argument("file")
    p.add_argument("--r", type=int, help="test only this prime exponent")
    p.add_argument("--epsilon", default=str(DEFAULT_EPSILON),
                   help="failure probability, e.g. 1/1024 or 2^-20")
    p.add_argument("--seed", type=int)
    p.add_argument("--json", action="store_true", help="print the full report as JSON")
    p.add_argument("--pretty", action="store_true", help="indent the JSON")
    p.add_argument("--fast-path", action="store_true",
                   help="over Z, draw primes p = 1 mod r and skip extension fields")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("root", help="compute and certify an r-th root")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="write the root here instead of stdout")
    p.set_defaults(func=cmd_root)

    p = sub.add_parser("gen", help="generate a random instance h, f = h^r")
    p.add_argument("--terms", type=int, required=True)
    p.add_argument("--degree", type=eval_pow, required=True, help="degree bound for h")
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--ring", type=_parse_ring, default=ZZ)
    p.add_argument("--coeff-bits", type=int, default=16)
    p.add_argument("--vars", type=int, default=1)
    p.add_argument("--exact-degree", action="store_true")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing sweep; writes CSV and a PNG next to it")
    p.add_argument("--mode", choices=["dense", "sparse", "root"], required=True)
    p.add_argument("--sweep", choices=["degree", "sparsity"], default="degree")
    p.add_argument("--csv", required=True)
    p.add_argument("--degrees", nargs="*", help="degrees, e.g. 2^20 2^30 2^40")
    p.add_argument("--taus", nargs="*", type=int, help="tau(h) values for the sparsity sweep")
    p.add_argument("--sparsity", type=int, default=50, help="target tau(f) for degree sweeps")
    p.add_argument("--power", type=int, default=2)
    p.add_argument("--coeff-bits", type=int, default=16)
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--epsilon", default=str(DEFAULT_EPSILON))
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("conjecture", help="scan sparsity of truncated powers")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--csv", required=True)
    p.add_argument("--ring", choices=["Z", "GF"], default="Z")
    p.add_argument("--max-terms", type=int, default=20)
    p.add_argument("--max-degree", type=int, default=60)
    p.add_argument("--max-power", type=int, default=6)
    p.add_argument("--no-lemma", action="store_true", help="skip the Newton-iteration diagnostic")
    p.set_defaults(func=cmd_conjecture)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LacunaryError, ValueError, TypeError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
