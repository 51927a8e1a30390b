"""Shared helpers for the test suite."""

import random
from collections import defaultdict

from bicohom.abgroup import FpGroup, Morphism, make_morphism
from bicohom.complexes import Complex
from bicohom.snf import IntMatrix


def invariant_factors_oracle(orders):
    """Merge cyclic orders into invariant factors via prime powers.

    Independent of the Smith machinery: factor each order, collect the
    prime powers, and recombine them largest-first.
    """
    powers = defaultdict(list)
    for d in orders:
        n, p = d, 2
        while n > 1:
            if n % p == 0:
                e = 1
                n //= p
                while n % p == 0:
                    n //= p
                    e += 1
                powers[p].append(p ** e)
            p += 1
    for v in powers.values():
        v.sort(reverse=True)
    depth = max((len(v) for v in powers.values()), default=0)
    merged = []
    for idx in range(depth):
        f = 1
        for v in powers.values():
            if idx < len(v):
                f *= v[idx]
        merged.append(f)
    merged.reverse()
    return tuple(merged)


def periodic_strand(modulus, entries, convention="homological"):
    """Periodic rank-1 complex over Z/modulus whose differentials multiply
    by the given entries (entry j acts on the cell at degree j)."""
    period = len(entries)
    step = -1 if convention == "homological" else 1
    cells = [FpGroup(modulus, 1) for _ in range(period)]
    diffs = {j: make_morphism(cells[j], cells[(j + step) % period],
                              IntMatrix([[a]]))
             for j, a in enumerate(entries)}
    return Complex.periodic(convention, modulus, period, cells, diffs)


def disc_complex(modulus, factors, top, convention="homological"):
    """An exact two-cell complex: an identity map whose source sits at
    degree `top`."""
    g = FpGroup.from_factors(modulus, factors)
    lo, hi = (top - 1, top) if convention == "homological" else (top, top + 1)
    cells = {lo: g, hi: g}
    diffs = {top: Morphism.identity(g)}
    return Complex.window(convention, modulus, lo, hi, cells, diffs)


def random_matrix(rng, rows, cols, bound=9):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(cols)]
                      for _ in range(rows)], cols=cols)


def random_dims_matrix(rng, max_dim=8, bound=9):
    rows = rng.randint(1, max_dim)
    cols = rng.randint(1, max_dim)
    return random_matrix(rng, rows, cols, bound)


def random_unimodular(rng, n, steps=6):
    """Product of elementary operations, so the determinant is +-1."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += q * m[j][k]
    if n and rng.random() < 0.5:
        r = rng.randrange(n)
        for k in range(n):
            m[r][k] = -m[r][k]
    return IntMatrix(m, cols=n)


def scrambled_group(rng, modulus, factors):
    """A group isomorphic to the given cyclic-factor sum, but presented by a
    relation matrix conjugated with random unimodular factors."""
    n = len(factors)
    p = random_unimodular(rng, n)
    q = random_unimodular(rng, n)
    rel = p @ IntMatrix.diagonal(list(factors)) @ q
    return FpGroup(modulus, n, rel)


def seeded(seed):
    return random.Random(seed)
