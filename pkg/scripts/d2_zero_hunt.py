#!/usr/bin/env python3
"""Hunt zeros of the connection coefficient d2(B) near stabilized
polynomial zeros.

The stabilized zeros of the degree-m coefficient polynomials are the
natural starting guesses: where a zero has stopped moving between two
degrees, d2 should vanish nearby.  This script runs the degree-(30,40)
stabilization report, then refines each stable zero by a secant search
on the scaled-tail estimate of d2, and prints how far the polynomial
zero sits from the refined d2 zero.

Examples
    python3 scripts/d2_zero_hunt.py                  # Lame, s = 1/100
    python3 scripts/d2_zero_hunt.py --family mathieu --q 2
"""

import argparse
import sys
import time

import mpmath as mp

from heunzeros.families import LameParams, MathieuParams, from_lame, from_mathieu
from heunzeros.scalars import format_scalar, working_precision
from heunzeros.tracking import convergence_report, d2_sequence, d2_zero_search


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=["lame", "mathieu"], default="lame")
    ap.add_argument("--n", default="2", help="Lame degree parameter")
    ap.add_argument("--s", default="1/100", help="Lame coupling")
    ap.add_argument("--q", default="2", help="Mathieu coupling")
    ap.add_argument("--m", default="30,40",
                    help="degrees for the stabilization report")
    ap.add_argument("--digits", type=int, default=10,
                    help="stability threshold in significant digits")
    ap.add_argument("--tol", default="1e-12", help="secant stop tolerance")
    ap.add_argument("--K", type=int, default=400,
                    help="initial tail length for the d2 estimate")
    ap.add_argument("--precision-bits", type=int, default=256)
    args = ap.parse_args(argv)

    if args.family == "lame":
        spec, _ = from_lame(LameParams(n=args.n, s=args.s))
        label = f"lame n={args.n} s={args.s}"
    else:
        spec, _ = from_mathieu(MathieuParams(q=args.q))
        label = f"mathieu q={args.q}"
    m_list = tuple(int(tok) for tok in args.m.split(","))

    t0 = time.monotonic()
    report = convergence_report(spec, m_list=m_list, digits=args.digits,
                                precision_bits=args.precision_bits)
    stable = report.stable_tracks()
    print(f"{label}: {len(stable)} zero(s) stable to {args.digits} digits "
          f"between c_{m_list[-2]} and c_{m_list[-1]} "
          f"[{time.monotonic() - t0:.1f}s]")
    print(f"{'k':>4}  {'polynomial zero':>24}  {'refined d2 zero':>24}  "
          f"{'|shift|':>10}  {'|d2| there':>10}  it")

    with working_precision(args.precision_bits):
        tol = mp.mpf(args.tol)
        for track in stable:
            b0 = track.value_at(m_list[-1])
            try:
                res = d2_zero_search(spec, b0, tol=tol, K=args.K,
                                     precision_bits=args.precision_bits)
            except Exception as exc:
                print(f"{track.label_k:>4}  {format_scalar(b0, 12):>24}  "
                      f"search failed: {exc}")
                continue
            at_b0 = d2_sequence(spec, b0, K=res.K_used,
                                precision_bits=args.precision_bits).estimate
            print(f"{track.label_k:>4}  {format_scalar(b0, 12):>24}  "
                  f"{format_scalar(res.B, 12):>24}  "
                  f"{mp.nstr(abs(res.B - b0), 3):>10}  "
                  f"{mp.nstr(abs(at_b0), 3):>10}  {res.iterations}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
