"""Regenerate the large-degree benchmark fixtures in tests/data.

The moduli are binomials t^n - 2 over F_101; 2 is a primitive root mod 101
and 4 divides 100, so t^n - 2 is irreducible for every power of two n.
Finding a point needs square roots in a field of size 101^n, which is slow
in pure Python, so the points are computed once and stored.
"""

import json
import random
import sys
from pathlib import Path

from elltrace.curve import WeierstrassCurve
from elltrace.extfield import Extension
from elltrace.fields import PrimeField
from elltrace.oracle import random_point
from elltrace.poly import Polynomial

P = 101
CURVE = (0, 0, 0, 3, 7)
OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def build(n, seed):
    K = PrimeField(P)
    E = WeierstrassCurve(K, *CURVE)
    L = Extension(Polynomial(K, [-2] + [0] * (n - 1) + [1]))
    pt = random_point(E, L, random.Random(seed))
    return {
        "field": K.describe(),
        "curve": [str(c) for c in CURVE],
        "modulus": f"t^{n} - 2",
        "x": pt.x.polynomial().to_str("t"),
        "y": pt.y.polynomial().to_str("t"),
    }


def main(argv):
    for n in map(int, argv or ["256", "512"]):
        doc = build(n, seed=n)
        (OUT / f"bench_deg{n}.json").write_text(json.dumps(doc, indent=1) + "\n")
        print(f"wrote bench_deg{n}.json")


if __name__ == "__main__":
    main(sys.argv[1:])
