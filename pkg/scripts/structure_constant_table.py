"""Print GL_n Hecke structure constants as polynomials in q.

Each constant c_mu * c_lam -> c_nu comes from the Satake side (in v, q = v^2)
and, with --oracle, is also interpolated through lattice counts at several
prime powers so the two columns can be compared by eye.
"""

import argparse
import itertools

from motivic_satake.hecke import interpolate_structure_constant, structure_constants
from motivic_satake.root_datum import gl
from motivic_satake.verification import GL3_FUNDAMENTAL, entry_box


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2, choices=[2, 3])
    ap.add_argument("--max-entry", type=int, default=2)
    ap.add_argument("--oracle", action="store_true", help="also interpolate lattice counts")
    ap.add_argument("--qs", default="2,3,4,5", help="prime powers used for interpolation")
    args = ap.parse_args()

    d = gl(args.n)
    box = entry_box(2, 0, args.max_entry) if args.n == 2 else GL3_FUNDAMENTAL
    qs = [int(q) for q in args.qs.split(",")]
    for mu, lam in itertools.combinations_with_replacement(box, 2):
        prod = structure_constants(d, mu, lam)
        for nu, coeff in prod.items():
            line = f"{mu} * {lam} -> {nu}: {coeff.format('v')}"
            if args.oracle:
                poly = interpolate_structure_constant(args.n, mu, lam, nu, qs)
                line += f"   oracle: {poly.format('q')}"
            print(line)


if __name__ == "__main__":
    main()
