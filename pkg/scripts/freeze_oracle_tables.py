"""Regenerate tests/data/oracle_counts.json from the lattice-counting oracle.

The table is produced without touching the Satake code and is checked into
the repository so that later changes to the oracle itself are caught too.
"""

import argparse
import itertools
import json
from pathlib import Path

from motivic_satake.lattice_oracle import oracle_structure_constants
from motivic_satake.verification import GL3_FUNDAMENTAL, entry_box


def build(qs_gl2=(2, 3, 4), qs_gl3=(2, 3)):
    rows = []
    for n, box, qs in [(2, entry_box(2, 0, 2), qs_gl2), (3, GL3_FUNDAMENTAL, qs_gl3)]:
        for mu, lam in itertools.combinations_with_replacement(box, 2):
            for q in qs:
                counts = oracle_structure_constants(n, mu, lam, q)
                rows.append({"n": n, "mu": list(mu), "lam": list(lam), "q": q,
                             "counts": [[list(nu), c] for nu, c in counts.items()]})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests" / "data" / "oracle_counts.json"))
    args = ap.parse_args()
    rows = build()
    Path(args.out).write_text("[\n" + ",\n".join(json.dumps(r) for r in rows) + "\n]\n")
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
