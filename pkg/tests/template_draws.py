"""Random parameter draws for the complete-field normal forms, biased towards acceptance."""

import math
import random

PAIRS = [(3, 2), (4, 3), (5, 2), (5, 3), (5, 4), (7, 3), (7, 4), (8, 5), (8, 3)]


def _poly(rng, max_deg, lo=-2, hi=2):
    return {k: rng.randint(lo, hi) for k in range(rng.randint(0, max_deg) + 1)}


def draw(case, rng: random.Random):
    if case == "2b":
        dq = rng.randint(1, 3)
        d = 4 * dq
        return d, 2 * dq + 1, {"a": rng.randint(-2, 2), "A": _poly(rng, 2)}
    d, e = rng.choice(PAIRS)
    ep = pow(e, -1, d)
    if case in ("1a", "1b"):
        return d, e, {"a": rng.randint(-3, 3), "A": _poly(rng, 2), "B": _poly(rng, 1)}
    if case == "2a":
        sols = [(m, n) for m in range(0, 3 * d) for n in range(0, 3 * d)
                if (m, n) != (0, 0) and (m + e * n) % d == 0 and math.gcd(m, n) == 1]
        m, n = rng.choice(sols)
        return d, e, {"a": rng.randint(-3, 3), "A": _poly(rng, 2), "m": m, "n": n}
    # cases 3a / 3b: l in the right residue class, p invariant of degree below l
    base = (-e) % d if case == "3a" else (-ep) % d
    l = base + d * rng.randint(0, 1)
    m = d * rng.randint(1, 3)
    n = rng.randint(1, 3)
    p = {0: rng.choice([1, 2, -1, 3])}
    for k in range(d, l, d):
        if rng.random() < 0.5:
            p[k] = rng.randint(-2, 2)
    A = _poly(rng, 2)
    if rng.random() < 0.6:
        a = A.get(0, 0) * m if len([k for k, c in p.items() if c]) == 1 else 0
        if a == 0:
            A[0] = 0
    else:
        a = rng.randint(-3, 3)
    return d, e, {"a": a, "A": A, "p": p, "l": l, "m": m, "n": n}
