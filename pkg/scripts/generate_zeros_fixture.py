#!/usr/bin/env python3
"""Regenerate the bundled table of nontrivial-zero ordinates.

Computes the imaginary parts of the first 2704 zeros of zeta on the
critical line with mpmath and writes them, one per line with 12 fractional
digits, to src/zetabounds/data/zeros_2704.txt.  The file is committed; this
script only exists so the fixture can be rebuilt or extended.

Usage: python3 scripts/generate_zeros_fixture.py [count] [outfile]
"""

import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

COUNT = 2704
OUT = Path(__file__).resolve().parents[1] / "src" / "zetabounds" / "data" / "zeros_2704.txt"


def ordinate(n: int) -> str:
    import mpmath

    mpmath.mp.dps = 22
    gamma = mpmath.zetazero(n).imag
    return mpmath.nstr(gamma, 16, strip_zeros=False)


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else COUNT
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else OUT
    out.parent.mkdir(parents=True, exist_ok=True)
    with ProcessPoolExecutor() as pool:
        ordinates = list(pool.map(ordinate, range(1, count + 1), chunksize=32))
    lines = ["# ordinates of the first %d nontrivial zeta zeros" % count]
    lines += ["%.12f" % float(g) for g in ordinates]
    out.write_text("\n".join(lines) + "\n")
    print("wrote %d ordinates to %s" % (count, out))


if __name__ == "__main__":
    main()
