"""Shared generators for random towers and polynomials."""

import random
from itertools import product

from bottfano.gbm import GeneralizedBottMatrix, TwoStageSpec
from bottfano.polynomial import IntPolynomial


def random_gbm(rng: random.Random, max_m=3, max_n=3, lo=-2, hi=2) -> GeneralizedBottMatrix:
    m = rng.randint(1, max_m)
    dims = tuple(rng.randint(1, max_n) for _ in range(m))
    coeffs = {
        (i, j): tuple(rng.randint(lo, hi) for _ in range(dims[i - 1]))
        for i in range(2, m + 1)
        for j in range(1, i)
    }
    return GeneralizedBottMatrix(dims, coeffs)


def random_poly(rng: random.Random, nvars: int, max_deg=5, nterms=6, coeff=9) -> IntPolynomial:
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        terms[exps] = rng.randint(-coeff, coeff)
    return IntPolynomial(terms, nvars)


def normalized_specs(max_dim, slack=0):
    """Every normalized two-stage spec with n1 + n2 <= max_dim and sum(a) <= n1 + slack."""
    for d in range(2, max_dim + 1):
        for n1 in range(1, d):
            n2 = d - n1
            for a in product(range(n1 + slack + 1), repeat=n2):
                if sum(a) <= n1 + slack:
                    yield TwoStageSpec(n1, a)


def leibniz_det(rows):
    from itertools import permutations

    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = -1 if inversions % 2 else 1
        for r, c in enumerate(perm):
            prod *= rows[r][c]
            if not prod:
                break
        total += prod
    return total
