"""Eigenlevel equivalence of f = x1 + x2 + x1*x2^2 and g = x1 + x2 + x2^2*x1.

Prints the intertwiners, checks that none exist up to degree deg f, and compares
characteristic polynomials of f(X) and g(X) on a few random matrix tuples.

    python3 scripts/worked_example.py
"""

import random

from freebert import parse
from freebert.decide import intertwiner_space
from freebert.eigenlevel import char_poly, eig_equiv, evaluate, parametric_intertwiner, random_tuple

f = parse("x1 + x2 + x1*x2^2", 2)
g = parse("x1 + x2 + x2^2*x1", 2)

a = parse("1 + x1^2 + x1*x2 + x2*x1 + x1*x2^2*x1", 2)
print("f a == a g:", f * a == a * g)
print("f (1 + x2 x1) == (1 + x1 x2) g:", f * parse("1 + x2*x1", 2) == parse("1 + x1*x2", 2) * g)
print("intertwiners of degree <= 3:", intertwiner_space(f, g, 3))

A, B = parametric_intertwiner(f, g)
print("parametric intertwiner A(t):", A)
a2 = eig_equiv(f, g)
print("eig_equiv certificate:", a2)

rng = random.Random(0)
for n in (2, 3, 4):
    X = random_tuple(2, n, rng)
    print(f"n={n}: char polys equal:", char_poly(evaluate(f, X)) == char_poly(evaluate(g, X)))
