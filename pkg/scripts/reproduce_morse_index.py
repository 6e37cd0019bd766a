#!/usr/bin/env python3
"""Reproduce the headline computation: Morse index 12 at large p in the plane.

For each exponent on the ladder, solve the nodal radial problem, assemble the
weighted annulus eigenproblem, and print the eigenvalues, the per-mode ledger
and the total, with the stability diagnostics under annulus and grid
refinement.

Usage: python scripts/reproduce_morse_index.py [--p 50,100,200,400]
"""

import argparse
import time

from lanemorse import MorseConfig, morse_index, scales, solve_nodal


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", default="50,100,200,400")
    args = ap.parse_args()
    ps = [float(tok) for tok in args.p.split(",")]

    print(f"{'p':>6} {'beta1':>10} {'beta2':>12} {'m_rad':>6} "
          f"{'ledger':>22} {'total':>6} {'stable':>7} {'time':>7}")
    stabilized_at = None
    for p in ps:
        t0 = time.time()
        sol = solve_nodal(p)
        rep = morse_index(sol, MorseConfig(verify_stability=True))
        ledger = "+".join(str(m) for m in rep.contributions)
        print(f"{p:6g} {rep.beta1:10.4f} {rep.beta2:12.8f} {rep.m_rad:6d} "
              f"{ledger:>22} {rep.total:6d} {str(rep.stable):>7} "
              f"{time.time() - t0:6.1f}s")
        if rep.total == 12 and rep.stable and stabilized_at is None:
            stabilized_at = p
        if rep.total != 12:
            stabilized_at = None

    if stabilized_at is not None:
        print(f"\ntotal = 12 stabilizes from p = {stabilized_at:g} onward "
              f"(smallest tested exponent with a refinement-stable count)")
    ell = scales(solve_nodal(max(ps))).ell_hat
    print(f"scale ratio at p = {max(ps):g}: s_p/eps_minus = {ell:.4f} "
          f"(reference 7.1979)")


if __name__ == "__main__":
    main()
