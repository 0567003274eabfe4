#!/usr/bin/env python3
"""Scan the transformation sign across parameters and moduli.

At odd primes the fitted sign should be (-1)^l independently of n.  At
p = 2 the reported sign is the prefactor of the transformation formula,
and whether it can vary with n for a fixed parameter is an open question;
this scan makes the answer observable over a chosen range.

Usage: python3 scripts/sign_scan.py [max_n]
"""

import sys
from fractions import Fraction

from padichg import HGParams, check_dwork_transformation

PARAMS = [
    (Fraction(1), 2), (Fraction(1, 3), 2), (Fraction(1, 5), 2),
    (Fraction(3, 5), 2), (Fraction(1, 7), 2),
    (Fraction(1, 2), 3), (Fraction(2, 3), 5), (Fraction(2), 5),
    (Fraction(1, 4), 3), (Fraction(1, 4), 5),
]


def main() -> int:
    max_n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
    print(f"{'a':>6} {'p':>3} {'l':>3} " +
          " ".join(f"n={n}" for n in range(1, max_n + 1)))
    for a, p in PARAMS:
        P = HGParams.create(a, 1, p)
        signs = []
        for n in range(1, max_n + 1):
            rep = check_dwork_transformation(P, n)
            signs.append(f"{rep.sign:+d}" if rep.passed else "fail")
        print(f"{str(a):>6} {p:>3} {P.l:>3} " + " ".join(f"{s:>3}" for s in signs))
    return 0


if __name__ == "__main__":
    sys.exit(main())
