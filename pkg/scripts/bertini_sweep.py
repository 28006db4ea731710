"""Sweep random polynomials and tabulate how often f - lambda factors.

Composite f = p(h) should factor exactly when p - lambda has a rational root;
non-composite f should give irreducible f - lambda at random lambda.

    python3 scripts/bertini_sweep.py [--count 20] [--samples 10] [--seed 0]
"""

import argparse
import random
from collections import Counter

from freebert.decide import bertini_report
from freebert.ncpoly import NCPoly, compose_uni
from freebert.unipoly import UniPoly


def random_poly(rng, deg):
    terms = {}
    for k in range(deg + 1):
        for _ in range(2):
            w = tuple(rng.randint(1, 2) for _ in range(k))
            terms[w] = terms.get(w, 0) + rng.randint(-3, 3)
    terms[tuple(rng.randint(1, 2) for _ in range(deg))] = rng.choice([-2, -1, 1, 2])
    return NCPoly(2, terms)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    tally = {"composite": Counter(), "plain": Counter()}
    inconsistent = 0
    for i in range(args.count):
        h = random_poly(rng, rng.randint(1, 3))
        if h.degree < 1:
            continue
        f_comp = compose_uni(UniPoly([rng.randint(-3, 3), rng.randint(-3, 3), 1]), h)
        f_plain = random_poly(rng, rng.randint(2, 3))
        # half the composite lambdas are values of p, so p - lambda has a rational root
        p_vals = [rng.randint(-5, 5) for _ in range(args.samples // 2)]
        for kind, f in (("composite", f_comp), ("plain", f_plain)):
            rep = bertini_report(f, samples=args.samples, seed=args.seed + i)
            if kind == "composite" and rep.composite:
                p = rep.decomposition.p
                lams = [p(r) for r in p_vals] + [s.lam for s in rep.samples][: args.samples - len(p_vals)]
                rep = bertini_report(f, lambdas=lams)
                inconsistent += not rep.consistent
            tally["composite" if rep.composite else "plain"].update(s.status for s in rep.samples)
    for kind, counts in tally.items():
        print(f"{kind:9s}", dict(counts))
    print("inconsistent composite reports:", inconsistent)


if __name__ == "__main__":
    main()
